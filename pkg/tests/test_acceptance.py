"""Acceptance criteria, one test each.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line with its timing; the lines are repeated in the pytest terminal summary.
Run directly (``python3 tests/test_acceptance.py``) to get only those lines.
"""
import json
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import lawcheck  # noqa: E402
from helpers import FIXTURES, checked, fixture  # noqa: E402
from opengames.cli import main  # noqa: E402
from opengames.core import leaf_tables  # noqa: E402
from opengames.domains import Labels, NumSet  # noqa: E402
from opengames.equilibrium import equilibria, nash_oracle, spe_oracle  # noqa: E402
from opengames.errors import UnitBendError  # noqa: E402
from opengames.profiles import render_profile  # noqa: E402
from opengames.stdgames import CournotParams, bimatrix, bimatrix_spec, stackelberg_spec, ultimatum_spec  # noqa: E402

RESULTS = []


def report(n, ok, what, elapsed, limit=None):
    timing = f"{elapsed:.2f} s" + (f" (limit {limit} s)" if limit is not None else "")
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {what} [{timing}]"
    RESULTS.append(line)
    print(line)
    return ok


def og(*argv, tmp=None):
    """Run the command line and return (exit code, parsed JSON report)."""
    out = Path(tmp) / "report.json"
    code = main([str(a) for a in argv] + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if code == 0 else None)


def og_eq(name, tmp, workers=1):
    code, r = og("eq", fixture(name), "--workers", workers, tmp=tmp)
    assert code == 0
    return r


def single_choices(report_):
    return {tuple(v[0][1] for v in e.values()) for e in report_["equilibria"]}


def leader_follower(report_):
    """(leader choice, follower table) pairs from an eq report of a two-player
    sequential game; the follower table is listed in observation order."""
    out = set()
    for e in report_["equilibria"]:
        (lead,), follow = e["P1"], e["P2"]
        out.add((lead[1], tuple(c for _, c in follow)))
    return out


# -- 1 ---------------------------------------------------------------------------


def test_criterion_1_meeting(tmp_path):
    t = time.perf_counter()
    r = og_eq("meeting_ny.og", tmp_path)
    got = single_choices(r)
    elapsed = time.perf_counter() - t
    ok = got == {("GCT", "GCT"), ("ES", "ES")} and r["count"] == 2 and elapsed < 1
    assert report(1, ok, f"Meeting in New York equilibria {sorted(got)}", elapsed, 1)


# -- 2 ---------------------------------------------------------------------------


def random_bimatrix(seed):
    rng = random.Random(seed)
    n1, n2 = rng.randint(2, 4), rng.randint(2, 4)
    y1 = Labels(tuple(f"r{i}" for i in range(n1)))
    y2 = Labels(tuple(f"c{i}" for i in range(n2)))
    t1 = {(a, b): rng.randint(-3, 3) for a in y1.values() for b in y2.values()}
    t2 = {(a, b): rng.randint(-3, 3) for a in y1.values() for b in y2.values()}
    return y1, y2, (lambda a, b: t1[a, b]), (lambda a, b: t2[a, b])


def bimatrix_reports(workers=1):
    out = []
    for seed in range(50):
        y1, y2, u1, u2 = random_bimatrix(seed)
        g = bimatrix(y1, y2, u1, u2)
        found = equilibria(g, workers=workers)
        out.append((g, found, nash_oracle(bimatrix_spec(y1, y2, u1, u2))))
    return out


def test_criterion_2_bimatrix_oracle():
    t = time.perf_counter()
    mismatches = 0
    for g, found, oracle in bimatrix_reports():
        got = {tuple(tab[0] for tab in leaf_tables(g.sigma, s)) for s in found}
        mismatches += got != set(oracle)
    elapsed = time.perf_counter() - t
    ok = mismatches == 0 and elapsed < 10
    assert report(2, ok, f"50 random bimatrix games vs Nash oracle, {mismatches} mismatches", elapsed, 10)


# -- 3 ---------------------------------------------------------------------------


def test_criterion_3_ultimatum(tmp_path):
    t = time.perf_counter()
    sep = leader_follower(og_eq("ultimatum_separate.og", tmp_path))
    comb = leader_follower(og_eq("ultimatum_combined.og", tmp_path))
    oracle = set(spe_oracle(ultimatum_spec(3)))
    elapsed = time.perf_counter() - t
    target = {(3, ("A", "A", "A", "A")), (2, ("A", "A", "A", "R"))}
    ok = sep == comb == oracle == target and elapsed < 1
    assert report(3, ok, f"ultimatum N=3 both variants {sorted(sep)}", elapsed, 1)


# -- 4 ---------------------------------------------------------------------------


def test_criterion_4_cournot(tmp_path):
    t = time.perf_counter()
    got = single_choices(og_eq("cournot_13_1_1.og", tmp_path))
    elapsed = time.perf_counter() - t
    # the integer grid admits (3, 5) and (5, 3) as well: against 5 the
    # other firm earns 12 at both 3 and 4, so neither deviates
    ok = got == {(4, 4)} and elapsed < 5
    assert report(4, ok, f"Cournot a=13 b=1 c=1 unique (4, 4); found {sorted(got)}", elapsed, 5)


# -- 5 ---------------------------------------------------------------------------


def test_criterion_5_stackelberg(tmp_path):
    t = time.perf_counter()
    got = leader_follower(og_eq("stackelberg.og", tmp_path))
    elapsed = time.perf_counter() - t
    grid = NumSet((0, 2, 3, 4, 6))
    oracle = set(spe_oracle(stackelberg_spec(CournotParams(13, 1, 1, grid))))
    at6 = grid.values().index(6)
    ok = (
        bool(got)
        and got == oracle
        and all(lead == 6 and table[at6] == 3 for lead, table in got)
        and elapsed < 30
    )
    assert report(5, ok, f"Stackelberg leader 6, follower 6->3, {len(got)} equilibria = oracle", elapsed, 30)


# -- 6 ---------------------------------------------------------------------------

PRICES = (0, 3, 6, 9, 12)
CANON = {0: 4, 3: 3, 6: 2, 9: 1, 12: 0}


def mono_profile(price=6, d1=CANON, d2=CANON):
    return {"M": price, "pi_M": {"D1": [[p, d1[p]] for p in PRICES], "D2": [[p, d2[p]] for p in PRICES]}}


def test_criterion_6_monopolist(tmp_path):
    t = time.perf_counter()
    f = fixture("monopolist_duopoly.og")
    code, r = og("verify", f, "--profile", json.dumps(mono_profile()), tmp=tmp_path)
    accepted = code == 0 and r["equilibrium"]
    perturbed = [
        mono_profile(price=3),
        mono_profile(price=9),
        mono_profile(price=12),
        mono_profile(d1={**CANON, 6: 3}),
        mono_profile(d2={**CANON, 0: 2}),
    ]
    rejected = []
    for prof in perturbed:
        code, r = og("verify", f, "--profile", json.dumps(prof), tmp=tmp_path)
        if code == 0 and not r["equilibrium"] and r["deviations"]:
            rejected.append(sorted({d["player"] for d in r["deviations"]}))
    elapsed = time.perf_counter() - t
    ok = accepted and len(rejected) == len(perturbed) and len(rejected) >= 3 and elapsed < 60
    assert report(6, ok, f"monopolist canonical accepted={accepted}, {len(rejected)} perturbations rejected naming {rejected}", elapsed, 60)


# -- 7 ---------------------------------------------------------------------------

MARKOV = {"stage": {"P1": 2, "P2": 2}, "stage#2": {"P1": 2, "P2": 2}}
DEVIATE = {"stage": {"P1": {"default": 2, "entries": [[[], 3]]}, "P2": 2}, "stage#2": {"P1": 2, "P2": 2}}


def test_criterion_7_repeated(tmp_path):
    t = time.perf_counter()
    outcomes = []
    for beta, name in (("0", "repeated_cournot_beta0.og"), ("0.5", "repeated_cournot_beta05.og"), ("1", "repeated_cournot_beta1.og")):
        _, good = og("verify", fixture(name), "--profile", json.dumps(MARKOV), tmp=tmp_path)
        _, bad = og("verify", fixture(name), "--profile", json.dumps(DEVIATE), tmp=tmp_path)
        outcomes.append((beta, good["equilibrium"], bad["equilibrium"]))
    elapsed = time.perf_counter() - t
    ok = all(g and not b for _, g, b in outcomes) and elapsed < 60
    desc = ", ".join(f"beta={b}: markov {'accepted' if g else 'REJECTED'}, deviation {'ACCEPTED' if d else 'rejected'}" for b, g, d in outcomes)
    assert report(7, ok, f"repeated Cournot {desc}", elapsed, 60)


# -- 8 ---------------------------------------------------------------------------


def test_criterion_8_laws():
    t = time.perf_counter()
    failures = {}
    for name, check in lawcheck.LAWS.items():
        bad = []
        for seed in range(20):
            try:
                check(random.Random(seed))
            except AssertionError:
                bad.append(seed)
        failures[name] = bad
    elapsed = time.perf_counter() - t
    broken = {k: v for k, v in failures.items() if v}
    ok = not broken and elapsed < 60
    detail = "all laws hold" if not broken else "; ".join(f"{k} fails at seeds {v}" for k, v in broken.items())
    assert report(8, ok, f"{len(failures)} laws x 20 instances: {detail}", elapsed, 60)


# -- 9 ---------------------------------------------------------------------------


def test_criterion_9_well_formedness():
    t = time.perf_counter()
    try:
        checked("invalid/yanking.og")
        bend = "accepted"
    except UnitBendError as exc:
        bend = "rejected" if "upward bend not permitted" in str(exc) else "wrong message"
    names = sorted(p.name for p in FIXTURES.glob("*.og"))
    bad = []
    for n in names:
        try:
            checked(n)
        except Exception:  # noqa: BLE001 - report any failure
            bad.append(n)
    elapsed = time.perf_counter() - t
    ok = bend == "rejected" and not bad and elapsed < 1
    assert report(9, ok, f"yanking fixture {bend}; {len(names) - len(bad)}/{len(names)} fixtures typecheck", elapsed, 1)


# -- 10 --------------------------------------------------------------------------


def _strip(r):
    r = dict(r)
    r.pop("elapsed_seconds", None)
    return json.dumps(r, indent=2)


def test_criterion_10_determinism(tmp_path):
    t = time.perf_counter()
    files = ["meeting_ny.og", "ultimatum_separate.og", "ultimatum_combined.og", "cournot_13_1_1.og", "stackelberg.og"]
    differing = []
    for name in files:
        outs = {_strip(og_eq(name, tmp_path, w)) for w in (1, 2, 8)}
        if len(outs) != 1:
            differing.append(name)
    # criterion 2 has no file; its reports are rendered the same way
    outs = set()
    for w in (1, 2, 8):
        outs.add(json.dumps([[render_profile(g.sigma, s) for s in found] for g, found, _ in bimatrix_reports(w)]))
    if len(outs) != 1:
        differing.append("random bimatrix games")
    elapsed = time.perf_counter() - t
    ok = not differing
    what = "identical JSON at 1, 2 and 8 workers" if ok else f"JSON differs for {differing}"
    assert report(10, ok, what, elapsed)


if __name__ == "__main__":
    import tempfile

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[2]))
    failed = 0
    for fn in tests:
        with tempfile.TemporaryDirectory() as d:
            try:
                fn(Path(d)) if fn.__code__.co_argcount else fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
