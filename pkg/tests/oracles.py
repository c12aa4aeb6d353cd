"""Independent brute-force oracles in plain integer arithmetic.

Nothing here touches the package's field or curve types: counts, group
laws and square tables are recomputed from scratch so the main code path
has something honest to be checked against.
"""

import itertools


def int_points(p, a, b):
    """Affine points of y^2 = x^3 + a x + b over F_p as int pairs."""
    return [
        (x, y)
        for x in range(p)
        for y in range(p)
        if (y * y - x * x * x - a * x - b) % p == 0
    ]


def int_add(p, a, P, Q):
    """Chord-tangent addition with None as the point at infinity."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        m = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        m = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (m * m - x1 - x2) % p
    y3 = (m * (x1 - x3) - y1) % p
    return (x3, y3)


def int_scalar(p, a, k, P):
    acc = None
    for _ in range(k):
        acc = int_add(p, a, acc, P)
    return acc


def int_order(p, a, P):
    acc = P
    n = 1
    while acc is not None:
        acc = int_add(p, a, acc, P)
        n += 1
    return n


def ext_mul(p, u, v):
    """Multiplication in F_p(i), i^2 = -1, elements as int pairs."""
    a, b = u
    c, d = v
    return ((a * c - b * d) % p, (a * d + b * c) % p)


def ext_points_x3_plus_x(p):
    """Affine points of y^2 = x^3 + x over F_p(i) as pairs of int pairs."""
    pts = []
    for xa, xb in itertools.product(range(p), repeat=2):
        x = (xa, xb)
        fx = ext_mul(p, ext_mul(p, x, x), x)
        fx = ((fx[0] + xa) % p, (fx[1] + xb) % p)
        for ya, yb in itertools.product(range(p), repeat=2):
            if ext_mul(p, (ya, yb), (ya, yb)) == fx:
                pts.append((x, (ya, yb)))
    return pts


def squares_mod(q_elements, mul):
    """The set of nonzero squares of an abstract field given its elements."""
    return {mul(e, e) for e in q_elements}


def int_squares(p):
    return {x * x % p for x in range(1, p)}


def orth_group_order_formula(n, q, disc_is_square_times_minus1=None):
    """Classical orders of orthogonal groups of the identity form over F_q.

    n = 1: {+-1}.  n = 2: 2(q-1) when -1 is a square (split type),
    2(q+1) otherwise.  n = 3: 2 q (q^2 - 1) for every regular form.
    """
    if n == 1:
        return 2
    if n == 2:
        minus_one_square = pow(q - 1, (q - 1) // 2, q) == 1
        return 2 * (q - 1) if minus_one_square else 2 * (q + 1)
    if n == 3:
        return 2 * q * (q * q - 1)
    raise ValueError("formula table covers n <= 3")
