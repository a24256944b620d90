"""Conjugacy of hyperbolic matrices in SL2(Z) via cyclic RL-words.

Every matrix with det 1 and trace > 2 is conjugate to a product
R^r1 L^l1 ... R^rn L^ln with all exponents >= 1, where

    R = (1 1; 0 1),   L = (1 0; 1 1),

and the pair sequence is unique up to cyclic rotation. Two hyperbolic
matrices are conjugate in SL2(Z) exactly when their canonical
(lexicographically least) rotations agree, which turns the conjugacy
problem into word comparison. The monoid of nonnegative det-1
matrices is free on {R, L}, so factorization below is by peeling the
dominant row.
"""

from collections import deque
from operator import index as _as_int

from .errors import NotHyperbolic
from .linalg import Mat2, mat_mul

__all__ = [
    "R",
    "L",
    "RLWord",
    "EquivalenceVerdict",
    "rl_word",
    "evaluate_word",
    "canonical_form",
    "are_equivalent",
    "brute_force_conjugator",
]

R = Mat2(1, 1, 0, 1)
L = Mat2(1, 0, 1, 1)
_R_INV = Mat2(1, -1, 0, 1)
_L_INV = Mat2(1, 0, -1, 1)

# conjugation moves g, g^-1 used by the normalization search
_MOVES = ((R, _R_INV), (_R_INV, R), (L, _L_INV), (_L_INV, L))

_FALLBACK_DEPTH = 12
_FALLBACK_BUDGET = 200_000


class RLWord:
    """Positive word in R and L, stored as ((r1, l1), ..., (rn, ln))."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        pairs = tuple((_as_int(r), _as_int(l)) for r, l in pairs)
        if not pairs:
            raise ValueError("word must have at least one (r, l) pair")
        for r, l in pairs:
            if r < 1 or l < 1:
                raise ValueError(f"exponents must be >= 1, got ({r}, {l})")
        self.pairs = pairs

    def exponents(self):
        """Flat exponent tuple (r1, l1, r2, l2, ...)."""
        return tuple(e for pair in self.pairs for e in pair)

    def __eq__(self, other):
        if not isinstance(other, RLWord):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return f"RLWord{self.exponents()!r}"

    def __str__(self):
        return " ".join(f"R^{r} L^{l}" for r, l in self.pairs)


class EquivalenceVerdict:
    """Outcome of a conjugacy decision.

    If equivalent, `conjugator` Q has det 1 and Q^-1 A Q = B;
    otherwise conjugator is None and the canonical words differ.
    """

    __slots__ = ("equivalent", "conjugator", "canonical_a", "canonical_b")

    def __init__(self, equivalent, conjugator, canonical_a, canonical_b):
        self.equivalent = equivalent
        self.conjugator = conjugator
        self.canonical_a = canonical_a
        self.canonical_b = canonical_b

    def __repr__(self):
        return (
            f"EquivalenceVerdict(equivalent={self.equivalent}, "
            f"conjugator={self.conjugator!r})"
        )


def evaluate_word(word):
    """Matrix value of a word; always det 1, trace > 2, entries positive."""
    if not isinstance(word, RLWord):
        word = RLWord(word)
    result = Mat2.identity()
    for r, l in word.pairs:
        result = mat_mul(result, Mat2(1, r, 0, 1))
        result = mat_mul(result, Mat2(1, 0, l, 1))
    return result


def canonical_form(word):
    """Lexicographically least rotation of the pair sequence."""
    if not isinstance(word, RLWord):
        word = RLWord(word)
    pairs = word.pairs
    n = len(pairs)
    best = min(range(n), key=lambda k: pairs[k:] + pairs[:k])
    return RLWord(pairs[best:] + pairs[:best])


def _check_hyperbolic(m):
    if m.det() != 1:
        raise NotHyperbolic(f"determinant is {m.det()}, need 1")
    if m.trace() <= 2:
        raise NotHyperbolic(
            f"trace {m.trace()} is not > 2 (square negative-trace inputs first)"
        )


def _nonnegative_conjugate(m):
    """Some W with det 1 such that W^-1 m W is nonnegative.

    Greedy strict descent on the sum of absolute entries, then a
    bounded breadth-first search when the greedy step stalls (it does
    for matrices like (0 1; -1 t), where every single move grows the
    entry sum although a nonnegative conjugate is one move away).
    """
    witness = Mat2.identity()
    cur = m
    while not cur.is_nonnegative():
        best = None
        cur_sum = cur.abs_sum()
        for g, ginv in _MOVES:
            cand = mat_mul(ginv, mat_mul(cur, g))
            if cand.abs_sum() < cur_sum:
                best = (cand, g)
                break
        if best is None:
            break
        cand, g = best
        assert cand.abs_sum() < cur_sum  # loop variant
        cur = cand
        witness = mat_mul(witness, g)
    if cur.is_nonnegative():
        return witness, cur

    seen = {cur}
    queue = deque([(cur, witness, 0)])
    budget = _FALLBACK_BUDGET
    while queue:
        node, wit, depth = queue.popleft()
        if depth >= _FALLBACK_DEPTH:
            continue
        for g, ginv in _MOVES:
            cand = mat_mul(ginv, mat_mul(node, g))
            if cand in seen:
                continue
            wg = mat_mul(wit, g)
            if cand.is_nonnegative():
                return wg, cand
            seen.add(cand)
            queue.append((cand, wg, depth + 1))
            budget -= 1
            if budget <= 0:
                raise ArithmeticError(f"no nonnegative conjugate of {m!r} found")
    raise ArithmeticError(f"no nonnegative conjugate of {m!r} found")


def _peel_cycle(m0):
    """Letters of the peel-and-rotate orbit through a nonnegative matrix.

    Each step factors off the dominant-row letter X and replaces the
    matrix by X^-1 m X; the orbit of a nonnegative hyperbolic matrix
    is purely periodic and the letters over one period spell its word
    up to repetition.
    """
    letters = []
    cur = m0
    cap = m0.abs_sum() + 8
    while True:
        if cur.a >= cur.c and cur.b >= cur.d:
            letters.append("R")
            cur = mat_mul(_R_INV, mat_mul(cur, R))
        elif cur.c >= cur.a and cur.d >= cur.b:
            letters.append("L")
            cur = mat_mul(_L_INV, mat_mul(cur, L))
        else:
            raise ArithmeticError(f"no dominant row in {cur!r}; not a word matrix")
        if cur == m0:
            return letters
        if len(letters) > cap:
            raise ArithmeticError(f"peel did not cycle within {cap} steps")


def _letters_value(letters):
    out = Mat2.identity()
    for x in letters:
        out = mat_mul(out, R if x == "R" else L)
    return out


def _letters_to_pairs(letters):
    """Group a letter list starting with R and ending with L into pairs."""
    pairs = []
    i = 0
    n = len(letters)
    while i < n:
        r = 0
        while i < n and letters[i] == "R":
            r += 1
            i += 1
        l = 0
        while i < n and letters[i] == "L":
            l += 1
            i += 1
        pairs.append((r, l))
    return pairs


def rl_word(m):
    """Canonical cyclic RL-word of a hyperbolic matrix, with witness.

    Returns (word, witness) where witness has det 1 and
    witness^-1 m witness == evaluate_word(word). Raises NotHyperbolic
    for det != 1 or trace <= 2.
    """
    _check_hyperbolic(m)
    w0, m0 = _nonnegative_conjugate(m)
    cycle = _peel_cycle(m0)

    # the cycle is one primitive period; recover the repetition count
    value = _letters_value(cycle)
    reps = 1
    acc = value
    while acc != m0:
        acc = mat_mul(acc, value)
        reps += 1
        if reps > m0.abs_sum():
            raise ArithmeticError("cycle value does not divide the matrix")
    letters = cycle * reps

    # rotate to the boundary that yields the least pair sequence
    n = len(letters)
    starts = [k for k in range(n) if letters[k] == "R" and letters[k - 1] == "L"]
    if not starts:
        raise NotHyperbolic(f"{m!r} is conjugate to a one-letter power")
    best_pairs = None
    best_k = None
    for k in starts:
        pairs = tuple(_letters_to_pairs(letters[k:] + letters[:k]))
        if best_pairs is None or pairs < best_pairs:
            best_pairs = pairs
            best_k = k
    witness = mat_mul(w0, _letters_value(letters[:best_k]))
    return RLWord(best_pairs), witness


def are_equivalent(a, b):
    """Decide SL2(Z) conjugacy of two hyperbolic matrices.

    Positive verdicts carry an exact det-1 conjugator assembled from
    the two witnesses; equality of canonical words is the criterion.
    """
    word_a, wit_a = rl_word(a)
    word_b, wit_b = rl_word(b)
    if word_a.pairs != word_b.pairs:
        return EquivalenceVerdict(False, None, word_a, word_b)
    q = mat_mul(wit_a, wit_b.inverse())
    assert mat_mul(mat_mul(q.inverse(), a), q) == b
    return EquivalenceVerdict(True, q, word_a, word_b)


def _spiral(bound):
    yield 0
    for v in range(1, bound + 1):
        yield v
        yield -v


def _scan_conjugators(a, b, bound):
    """First det-1 Q with max|entry| <= bound and A Q = Q B, else None."""
    for qa in _spiral(bound):
        for qb in _spiral(bound):
            if qa == 0:
                # det reduces to -qb*qc = 1
                if qb not in (1, -1):
                    continue
                qc = -qb
                for qd in _spiral(bound):
                    q = Mat2(qa, qb, qc, qd)
                    if mat_mul(a, q) == mat_mul(q, b):
                        return q
                continue
            for qc in _spiral(bound):
                num = 1 + qb * qc
                if num % qa:
                    continue
                qd = num // qa
                if abs(qd) > bound:
                    continue
                q = Mat2(qa, qb, qc, qd)
                if mat_mul(a, q) == mat_mul(q, b):
                    return q
    return None


def brute_force_conjugator(a, b, bound):
    """Exhaustive conjugator search over entries in [-bound, bound].

    Test oracle: returns some Q with det 1 and Q^-1 A Q = B, or None
    if no such matrix exists within the bound. A quick small-bound
    pass runs first so easy positives return fast.
    """
    bound = _as_int(bound)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    quick = min(8, bound)
    found = _scan_conjugators(a, b, quick)
    if found is None and bound > quick:
        found = _scan_conjugators(a, b, bound)
    return found
