"""Pure-Python brute-force kernels for the equilibrium oracles.

Payoffs arrive as flat sequences of floats.  Profiles are numbered
lexicographically with the first player's choice most significant.
"""


def nash_mask(pay, shape, tol):
    """0/1 flags: is profile i a pure Nash equilibrium?

    ``pay`` is player-major: ``pay[p * n + i]`` is player p's payoff at i.
    """
    n_players = len(shape)
    n = 1
    for d in shape:
        n *= d
    strides = [1] * n_players
    for p in range(n_players - 2, -1, -1):
        strides[p] = strides[p + 1] * shape[p + 1]
    out = bytearray(n)
    for i in range(n):
        ok = True
        for p in range(n_players):
            base = p * n
            stride = strides[p]
            own = (i // stride) % shape[p]
            start = i - own * stride
            mine = pay[base + i]
            for a in range(shape[p]):
                if pay[base + start + a * stride] > mine + tol:
                    ok = False
                    break
            if not ok:
                break
        out[i] = ok
    return out


def spe_pairs(u1, u2, n1, n2, tol):
    """All (leader choice, follower table) pairs that are subgame perfect.

    ``u1[a * n2 + b]`` is the leader's payoff when the leader plays a and the
    follower b.  Every one of the n2**n1 follower tables is tried.
    """
    out = []
    table = [0] * n1
    n_tables = n2**n1
    for _ in range(n_tables):
        follower_ok = True
        for a in range(n1):
            mine = u2[a * n2 + table[a]]
            for b in range(n2):
                if u2[a * n2 + b] > mine + tol:
                    follower_ok = False
                    break
            if not follower_ok:
                break
        if follower_ok:
            vals = [u1[a * n2 + table[a]] for a in range(n1)]
            best = max(vals)
            for a in range(n1):
                if vals[a] >= best - tol:
                    out.append((a, tuple(table)))
        # next table, last entry least significant
        j = n1 - 1
        while j >= 0:
            table[j] += 1
            if table[j] < n2:
                break
            table[j] = 0
            j -= 1
    out.sort()
    return out
