"""Slow, independent reference implementations used as test oracles.

Nothing here imports the package: vectors are plain lists of 0/1 and GF(4)
elements are polynomials a*x + b over GF(2) reduced modulo x^2 + x + 1.
"""

from itertools import combinations, product

# GF(4) elements as (a, b) meaning a*x + b; x plays the role of w.
ZERO, ONE, W, WBAR = (0, 0), (0, 1), (1, 0), (1, 1)
SYMBOL = {"0": ZERO, "1": ONE, "w": W, "W": WBAR}


def gf4_add(u, v):
    return (u[0] ^ v[0], u[1] ^ v[1])


def gf4_mul(u, v):
    # (a x + b)(c x + d) = ac x^2 + (ad + bc) x + bd, and x^2 = x + 1
    a, b = u
    c, d = v
    ac = a & c
    return ((a & d) ^ (b & c) ^ ac, (b & d) ^ ac)


def parse_f4(s):
    return [SYMBOL[ch] for ch in s]


def f4_span(rows):
    """All GF(4)-linear combinations of the rows (lists of GF(4) pairs)."""
    n = len(rows[0])
    words = []
    for coeffs in product([ZERO, ONE, W, WBAR], repeat=len(rows)):
        w = [ZERO] * n
        for c, r in zip(coeffs, rows):
            w = [gf4_add(x, gf4_mul(c, y)) for x, y in zip(w, r)]
        words.append(w)
    return words


def f4_weight_distribution(rows):
    n = len(rows[0])
    counts = [0] * (n + 1)
    for w in f4_span(rows):
        counts[sum(1 for x in w if x != ZERO)] += 1
    return counts


def gf2_rank(rows):
    """Rank of a list of 0/1 lists by textbook elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                m[i] = [x ^ y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def binary_span(rows):
    n = len(rows[0])
    out = set()
    for coeffs in product([0, 1], repeat=len(rows)):
        w = [0] * n
        for c, r in zip(coeffs, rows):
            if c:
                w = [x ^ y for x, y in zip(w, r)]
        out.add(tuple(w))
    return out


def pair_weight(word):
    return sum(1 for i in range(0, len(word), 2) if word[i] or word[i + 1])


def additive_weight_distribution(rows):
    """Distribution of an additive code given by binary rows of length 2n."""
    n = len(rows[0]) // 2
    counts = [0] * (n + 1)
    for w in binary_span(rows):
        counts[pair_weight(w)] += 1
    return counts


def symplectic(u, v):
    """Sum over pairs of a_i d_i + b_i c_i."""
    s = 0
    for i in range(0, len(u), 2):
        s ^= (u[i] & v[i + 1]) ^ (u[i + 1] & v[i])
    return s


def strength(rows):
    """Largest t with every t coordinate pairs of full rank 2t, by brute force."""
    n = len(rows[0]) // 2
    r = len(rows)
    t = 0
    while t < n and 2 * (t + 1) <= r:
        ok = True
        for sub in combinations(range(n), t + 1):
            cols = [[row[2 * i + j] for row in rows] for i in sub for j in (0, 1)]
            if gf2_rank(cols) < len(cols):
                ok = False
                break
        if not ok:
            break
        t += 1
    return t


def griesmer(k, d, q):
    total = 0
    for i in range(k):
        total += (d + q ** i - 1) // q ** i
    return total


def projective_points(m):
    """Nonzero vectors of GF(2)^m as tuples."""
    return [v for v in product([0, 1], repeat=m) if any(v)]


def lines_pg(m):
    pts = projective_points(m)
    lines = set()
    for u, v in combinations(pts, 2):
        w = tuple(a ^ b for a, b in zip(u, v))
        lines.add(frozenset([u, v, w]))
    return lines


def det3_gf4(a, b, c):
    """Determinant of the 3x3 matrix with rows a, b, c over GF(4)."""
    def m(x, y):
        return gf4_mul(x, y)

    t1 = m(a[0], gf4_add(m(b[1], c[2]), m(b[2], c[1])))
    t2 = m(a[1], gf4_add(m(b[0], c[2]), m(b[2], c[0])))
    t3 = m(a[2], gf4_add(m(b[0], c[1]), m(b[1], c[0])))
    return gf4_add(gf4_add(t1, t2), t3)


def gf4_rank(vectors):
    """Rank over GF(4) by elimination; elements are (a, b) pairs."""
    inv = {ONE: ONE, W: WBAR, WBAR: W}
    m = [list(v) for v in vectors]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != ZERO), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        s = inv[m[rank][col]]
        m[rank] = [gf4_mul(s, x) for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != ZERO:
                f = m[i][col]
                m[i] = [gf4_add(x, gf4_mul(f, y)) for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank
