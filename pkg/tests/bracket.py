"""Kauffman bracket by state sum, used only as an independent test invariant."""
from collections import Counter
from itertools import product


def bracket(d):
    """Bracket polynomial as a Counter {exponent of A: coefficient}."""
    n = d.n
    total = Counter()
    overs = [next(x for x in range(4 * c, 4 * c + 4) if d.over[x]) for c in range(n)]
    for state in product((0, 1), repeat=n):
        pair = {}
        for c, s in enumerate(state):
            o = overs[c]
            o2 = d.sigma[d.sigma[o]]
            if s == 0:  # A-smoothing
                u, u2 = d.sigma_inv[o2], d.sigma_inv[o]
            else:
                u, u2 = d.sigma[o2], d.sigma[o]
            pair[o], pair[u2] = u2, o
            pair[o2], pair[u] = u, o2
        seen = set()
        loops = 0
        for x in range(d.num_darts):
            if x in seen:
                continue
            loops += 1
            y = x
            while y not in seen:
                seen.add(y)
                z = pair[y]
                seen.add(z)
                y = d.alpha[z]
        loops += d.loops
        a = state.count(0) - state.count(1)
        # (-A^2 - A^-2)^(loops-1)
        poly = Counter({0: 1})
        for _ in range(loops - 1):
            nxt = Counter()
            for e, cf in poly.items():
                nxt[e + 2] -= cf
                nxt[e - 2] -= cf
            poly = nxt
        for e, cf in poly.items():
            total[e + a] += cf
    return Counter({e: c for e, c in total.items() if c})


def normalized_bracket(d):
    """Bracket up to sign and a power of A (writhe-free comparison)."""
    b = bracket(d)
    lo = min(b)
    sign = 1 if b[lo] > 0 else -1
    return tuple(sorted((e - lo, sign * c) for e, c in b.items()))
