"""Commensurability of torus-automorphism suspensions, with certificates.

Two suspensions are commensurable exactly when some powers of their
monodromies share a trace. Power traces satisfy the second-order
recurrence t_{i+1} = t_1 t_i - t_{i-1} (t_0 = 2) and the discriminant
identity t_i^2 - 4 = (t_1^2 - 4) u_i^2, so the squarefree part of
t^2 - 4 is a complete commensurability invariant: equal parts
guarantee a common power trace, distinct parts rule one out. Positive
verdicts are backed by a CommensurabilityCertificate whose data (an
integer intertwiner, the sublattice it spans, covering indices) is
re-checkable from scratch by verify_certificate.
"""

from operator import index as _as_int

from .errors import (
    ExponentMismatch,
    NoNonsingularIntertwiner,
    NotHyperbolic,
    StepLimitExceeded,
)
from .factorint import (
    DEFAULT_RHO_BUDGET,
    DEFAULT_TRIAL_BOUND,
    squarefree_discriminant,
    squarefree_part,
)
from .linalg import (
    HyperbolicMatrix,
    Mat2,
    hnf,
    intertwiner_lattice,
    lattice_image,
    mat_mul,
    mat_pow,
)

__all__ = [
    "TraceSequence",
    "CommensurabilityCertificate",
    "CommensurabilityVerdict",
    "trace_power",
    "squarefree_part",
    "are_commensurable",
    "find_intertwiner",
    "stabilization_exponent",
    "build_certificate",
    "verify_certificate",
]

DEFAULT_MAX_STEPS = 10_000
DEFAULT_SEARCH_BOUND = 32
_SEARCH_BOUND_CAP = 1024


class TraceSequence:
    """Lazily extended traces of powers: t_0 = 2, t_1 = trace(A).

    Strictly increasing from index 1 on whenever t_1 > 2.
    """

    __slots__ = ("_values",)

    def __init__(self, base_trace):
        base_trace = _as_int(base_trace)
        if base_trace <= 2:
            raise ValueError(f"base trace must be > 2, got {base_trace}")
        self._values = [2, base_trace]

    def __getitem__(self, i):
        i = _as_int(i)
        if i < 0:
            raise IndexError("negative power")
        values = self._values
        while len(values) <= i:
            values.append(values[1] * values[-1] - values[-2])
        return values[i]


def trace_power(m, i):
    """trace(m**i) via the trace recurrence, without forming the power."""
    i = _as_int(i)
    if i < 0:
        raise ValueError("power must be >= 0")
    if i == 0:
        return 2
    t = m.trace()
    prev, cur = 2, t
    for _ in range(i - 1):
        prev, cur = cur, t * cur - prev
    return cur


class CommensurabilityCertificate:
    """Re-checkable witness that base_a**power_a and base_b**power_b
    generate a common finite cover.

    intertwiner P satisfies A1 P = P B1 (A1, B1 the stated powers);
    sublattice is the canonical form of the lattice P spans, fixed by
    A1**stabilization; the two indices describe the common cover over
    each suspension.
    """

    __slots__ = (
        "base_a",
        "base_b",
        "power_a",
        "power_b",
        "intertwiner",
        "intertwiner_det",
        "sublattice",
        "stabilization",
        "index_over_a",
        "index_over_b",
    )

    def __init__(
        self,
        base_a,
        base_b,
        power_a,
        power_b,
        intertwiner,
        intertwiner_det,
        sublattice,
        stabilization,
        index_over_a,
        index_over_b,
    ):
        self.base_a = base_a
        self.base_b = base_b
        self.power_a = _as_int(power_a)
        self.power_b = _as_int(power_b)
        self.intertwiner = intertwiner
        self.intertwiner_det = _as_int(intertwiner_det)
        self.sublattice = sublattice
        self.stabilization = _as_int(stabilization)
        self.index_over_a = _as_int(index_over_a)
        self.index_over_b = _as_int(index_over_b)

    def __eq__(self, other):
        if not isinstance(other, CommensurabilityCertificate):
            return NotImplemented
        return all(
            getattr(self, f) == getattr(other, f) for f in self.__slots__
        )

    def __repr__(self):
        return (
            f"CommensurabilityCertificate(powers=({self.power_a}, {self.power_b}), "
            f"det={self.intertwiner_det}, indices=({self.index_over_a}, "
            f"{self.index_over_b}))"
        )


class CommensurabilityVerdict:
    __slots__ = (
        "commensurable",
        "minimal_exponents",
        "squarefree_a",
        "squarefree_b",
        "certificate",
        "squared_a",
        "squared_b",
    )

    def __init__(
        self,
        commensurable,
        minimal_exponents,
        squarefree_a,
        squarefree_b,
        certificate,
        squared_a=False,
        squared_b=False,
    ):
        self.commensurable = commensurable
        self.minimal_exponents = minimal_exponents
        self.squarefree_a = squarefree_a
        self.squarefree_b = squarefree_b
        self.certificate = certificate
        self.squared_a = squared_a
        self.squared_b = squared_b

    def __repr__(self):
        return (
            f"CommensurabilityVerdict(commensurable={self.commensurable}, "
            f"minimal_exponents={self.minimal_exponents}, "
            f"squarefree=({self.squarefree_a}, {self.squarefree_b}))"
        )


def _normalize_input(m):
    """Hyperbolic matrix plus a squared? flag; trace < -2 is squared."""
    if m.det() != 1:
        raise NotHyperbolic(f"determinant is {m.det()}, need 1")
    t = m.trace()
    if t > 2:
        return HyperbolicMatrix.from_mat(m), False
    if t < -2:
        return HyperbolicMatrix.from_mat(mat_mul(m, m)), True
    raise NotHyperbolic(f"|trace| = {abs(t)} is not > 2")


def _sign_normalized(m):
    for e in m.entries():
        if e > 0:
            return m
        if e < 0:
            return -m
    return m


def find_intertwiner(a1, b1, search_bound=DEFAULT_SEARCH_BOUND):
    """Nonsingular integer P with a1 P = P b1 of least |det P|.

    Minimizes |det| over integer combinations x K1 + y K2 of the
    kernel basis with 0 < max(|x|, |y|) <= search_bound, doubling the
    bound up to 1024 if every combination in the box is singular.
    Ties are broken deterministically (least max-entry, then
    lexicographic, after sign normalization) so the result does not
    depend on the kernel basis the solver happened to produce.
    """
    k1, k2 = intertwiner_lattice(a1, b1)
    # det(x K1 + y K2) is the quadratic form alpha x^2 + beta xy + gamma y^2
    alpha = k1.det()
    gamma = k2.det()
    k12 = Mat2(k1.a + k2.a, k1.b + k2.b, k1.c + k2.c, k1.d + k2.d)
    beta = k12.det() - alpha - gamma

    bound = max(1, _as_int(search_bound))
    while True:
        best = None
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if x == 0 and y == 0:
                    continue
                det = alpha * x * x + beta * x * y + gamma * y * y
                if det == 0:
                    continue
                if best is None or abs(det) < abs(best[0]):
                    best = (det, [(x, y)])
                elif abs(det) == abs(best[0]):
                    best[1].append((x, y))
        if best is not None:
            break
        if bound >= _SEARCH_BOUND_CAP:
            raise NoNonsingularIntertwiner(
                f"all combinations up to bound {bound} are singular"
            )
        bound = min(2 * bound, _SEARCH_BOUND_CAP)

    candidates = set()
    for x, y in best[1]:
        p = Mat2(
            x * k1.a + y * k2.a,
            x * k1.b + y * k2.b,
            x * k1.c + y * k2.c,
            x * k1.d + y * k2.d,
        )
        candidates.add(_sign_normalized(p))

    def _rank(p):
        entries = p.entries()
        return (
            max(abs(e) for e in entries),
            sum(abs(e) for e in entries),
            tuple(abs(e) for e in entries),
            entries,
        )

    return min(candidates, key=_rank)


def stabilization_exponent(a1, lat, k_max):
    """Least k >= 1 with a1**k fixing the lattice (orbits are cycles,
    so iterating the image until it returns suffices). Precondition:
    k_max at least the number of index-n sublattices."""
    cur = lat
    for k in range(1, _as_int(k_max) + 1):
        cur = lattice_image(a1, cur)
        if cur == lat:
            return k
    raise ValueError(f"no return within k_max={k_max}; bound below the orbit size")


def _sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def build_certificate(a, b, power_a, power_b, search_bound=DEFAULT_SEARCH_BOUND):
    """Assemble the commensurability certificate for given exponents.

    Raises ExponentMismatch unless trace(a**power_a) == trace(b**power_b).
    The intertwiner makes the spanned lattice invariant under the
    power of a, so the stabilization exponent is 1 by construction;
    it is recomputed here rather than assumed.
    """
    a = a if isinstance(a, HyperbolicMatrix) else HyperbolicMatrix.from_mat(a)
    b = b if isinstance(b, HyperbolicMatrix) else HyperbolicMatrix.from_mat(b)
    power_a = _as_int(power_a)
    power_b = _as_int(power_b)
    if power_a < 1 or power_b < 1:
        raise ValueError("powers must be >= 1")
    if trace_power(a, power_a) != trace_power(b, power_b):
        raise ExponentMismatch(
            f"trace(a^{power_a}) = {trace_power(a, power_a)} != "
            f"trace(b^{power_b}) = {trace_power(b, power_b)}"
        )
    a1 = mat_pow(a, power_a)
    b1 = mat_pow(b, power_b)
    p = find_intertwiner(a1, b1, search_bound)
    lat = hnf(p)
    k = stabilization_exponent(a1, lat, _sigma(lat.index))
    det_p = p.det()
    return CommensurabilityCertificate(
        base_a=a,
        base_b=b,
        power_a=power_a,
        power_b=power_b,
        intertwiner=p,
        intertwiner_det=det_p,
        sublattice=lat,
        stabilization=k,
        index_over_a=power_a * k * abs(det_p),
        index_over_b=power_b * k,
    )


def are_commensurable(
    a,
    b,
    max_steps=DEFAULT_MAX_STEPS,
    *,
    search_bound=DEFAULT_SEARCH_BOUND,
    trial_bound=DEFAULT_TRIAL_BOUND,
    rho_budget=DEFAULT_RHO_BUDGET,
):
    """Decide commensurability of the suspensions of a and b.

    Inputs need det 1 and |trace| > 2; a trace < -2 input is replaced
    by its square (flagged in the verdict). Negative verdicts rest on
    distinct squarefree discriminant classes; positive ones merge the
    two increasing trace sequences to their first common value, which
    gives the unique componentwise-minimal exponent pair, and carry a
    full certificate.
    """
    a1, squared_a = _normalize_input(a)
    b1, squared_b = _normalize_input(b)
    sf_a = squarefree_discriminant(a1.trace(), trial_bound, rho_budget)
    sf_b = squarefree_discriminant(b1.trace(), trial_bound, rho_budget)
    if sf_a != sf_b:
        return CommensurabilityVerdict(
            False, None, sf_a, sf_b, None, squared_a, squared_b
        )
    seq_a = TraceSequence(a1.trace())
    seq_b = TraceSequence(b1.trace())
    i, j = 1, 1
    steps = 0
    while seq_a[i] != seq_b[j]:
        if seq_a[i] < seq_b[j]:
            i += 1
        else:
            j += 1
        steps += 1
        if steps > max_steps:
            raise StepLimitExceeded(
                f"no common power trace within {max_steps} merge steps",
                partial_a=tuple(seq_a[k] for k in range(1, i + 1)),
                partial_b=tuple(seq_b[k] for k in range(1, j + 1)),
            )
    certificate = build_certificate(a1, b1, i, j, search_bound)
    return CommensurabilityVerdict(
        True, (i, j), sf_a, sf_b, certificate, squared_a, squared_b
    )


_CLAUSES_OK = (True, "ok")


def verify_certificate(cert):
    """Re-check a certificate from scratch; (True, "ok") or (False, clause).

    Uses only the base matrix operations (powers, products, canonical
    lattice forms, lattice images), none of the search machinery that
    produced the certificate.
    """
    try:
        HyperbolicMatrix.from_mat(cert.base_a)
    except NotHyperbolic:
        return False, "base_a_hyperbolic"
    try:
        HyperbolicMatrix.from_mat(cert.base_b)
    except NotHyperbolic:
        return False, "base_b_hyperbolic"
    if cert.power_a < 1 or cert.power_b < 1:
        return False, "powers_positive"
    a1 = mat_pow(cert.base_a, cert.power_a)
    b1 = mat_pow(cert.base_b, cert.power_b)
    if a1.trace() != b1.trace():
        return False, "power_traces_equal"
    p = cert.intertwiner
    if mat_mul(a1, p) != mat_mul(p, b1):
        return False, "intertwining_identity"
    if p.det() == 0:
        return False, "intertwiner_nonsingular"
    if cert.intertwiner_det != p.det():
        return False, "intertwiner_det_matches"
    if cert.sublattice != hnf(p):
        return False, "sublattice_matches_intertwiner"
    if cert.stabilization < 1:
        return False, "stabilization_positive"
    cur = cert.sublattice
    for k in range(1, cert.stabilization + 1):
        cur = lattice_image(a1, cur)
        if cur == cert.sublattice and k < cert.stabilization:
            return False, "stabilization_minimal"
    if cur != cert.sublattice:
        return False, "lattice_stabilized"
    if cert.index_over_a != cert.power_a * cert.stabilization * abs(p.det()):
        return False, "index_over_a"
    if cert.index_over_b != cert.power_b * cert.stabilization:
        return False, "index_over_b"
    return _CLAUSES_OK
