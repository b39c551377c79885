"""Open games: games built from small pieces and wired together as diagrams.

Games are built from players, computations and counits with sequential
(``compose_seq``) and parallel (``tensor``) composition, or written as
``.og`` files and loaded with :func:`opengames.dsl.load_file`.  Closed games
are solved with :func:`equilibria` and checked with :func:`check_profile`.
"""
from .combinators import (
    ARGMAX,
    FIXPOINT,
    MATCH,
    Argmax,
    Fixpoint,
    MatchObservation,
    Permutation,
    Prefer,
    box,
    braid,
    compose_seq,
    const,
    copy,
    counit,
    delete,
    dual,
    identity,
    lift_contravariant,
    lift_covariant,
    lift_player,
    par,
    select,
    seq,
    swap,
    tensor,
)
from .core import (
    Continuation,
    EvalContext,
    Interface,
    NormalInterface,
    OpenGame,
    coplay,
    eq_member,
    play,
    reduce_interface,
    tabulate_continuation,
)
from .domains import (
    REAL,
    UNIT,
    BoundedList,
    Grid,
    IntRange,
    Labels,
    NumSet,
    Product,
    cardinality,
    enumerate_values,
)
from .equilibrium import (
    NormalFormSpec,
    SequentialSpec,
    check_profile,
    diagnose,
    equilibria,
    nash_oracle,
    spe_oracle,
)
from .errors import (
    BudgetExceeded,
    CompositionError,
    DomainError,
    NotClosedError,
    OpenGameError,
    ParseError,
    ProfileError,
    TypeCheckError,
    UnitBendError,
)
from .profiles import parse_profile, render_profile

__version__ = "0.1.0"
