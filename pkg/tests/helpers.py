"""Shared generators and brute-force oracles for the test suite.

Matrices here are plain (a, b, c, d) tuples so the oracles share no
code with the package under test.
"""

import random


def mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def det(m):
    return m[0] * m[3] - m[1] * m[2]


def trace(m):
    return m[0] + m[3]


def inverse(m):
    if det(m) != 1:
        raise ValueError("oracle inverse needs determinant 1")
    return (m[3], -m[1], -m[2], m[0])


def naive_pow(m, n):
    out = (1, 0, 0, 1)
    for _ in range(n):
        out = mul(out, m)
    return out


def random_unimodular(rng, steps=6):
    m = (1, 0, 0, 1)
    for _ in range(steps):
        k = rng.randint(-3, 3)
        if rng.random() < 0.5:
            m = mul(m, (1, k, 0, 1))
        else:
            m = mul(m, (1, 0, k, 1))
    if rng.random() < 0.5:
        m = mul(m, (0, 1, -1, 0))
    return m


def random_hyperbolic(rng, max_trace=50, blocks=3):
    """Random conjugate of a positive R/L word with trace in (2, max_trace]."""
    while True:
        w = (1, 0, 0, 1)
        for _ in range(rng.randint(1, blocks)):
            w = mul(w, (1, rng.randint(1, 4), 0, 1))
            w = mul(w, (1, 0, rng.randint(1, 4), 1))
        if not 2 < trace(w) <= max_trace:
            continue
        q = random_unimodular(rng)
        return mul(mul(q, w), inverse(q))


def hyperbolic_corpus(seed, count, max_trace=50):
    rng = random.Random(seed)
    return [random_hyperbolic(rng, max_trace) for _ in range(count)]


def squarefree_oracle(n):
    """Squarefree part by full trial division; fine for small n."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no squarefree part")
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
        p += 1
    return out * n


def replace_cert_field(cert, **changes):
    """Copy of a commensurability certificate with named fields swapped."""
    fields = {f: getattr(cert, f) for f in type(cert).__slots__}
    fields.update(changes)
    return type(cert)(**fields)


def string_leaves_only(node):
    """True when every scalar leaf of a JSON tree is a string."""
    if isinstance(node, dict):
        return all(string_leaves_only(v) for v in node.values())
    if isinstance(node, list):
        return all(string_leaves_only(v) for v in node)
    return isinstance(node, str)
