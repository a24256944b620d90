"""Model flows and almost-commensurability chains between them.

Three families of models: suspensions of hyperbolic torus
automorphisms, geodesic flows on closed hyperbolic surfaces of genus
g >= 2, and geodesic flows on (2,3,n) triangle orbifolds with n >= 7.
Each geodesic model has a designated monodromy matrix; passing to the
suspension of that matrix is an almost-equivalence, recorded as a
citation-tagged link and never recomputed (the geometry behind the
tags is trusted, not rebuilt). Suspension-suspension links carry a
full commensurability certificate. Geodesic-geodesic links carry
common-cover degree and Euler-characteristic arithmetic; the
existence of the actual cover is likewise cited, the arithmetic is
what gets verified.

almost_commensurability_chain joins any two models: both endpoints
are normalized to suspensions, which either share a squarefree
discriminant class (one certificate link) or are bridged through
the trace-t model suspensions and their orbifolds.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from operator import index as _as_int

from .commensurability import (
    CommensurabilityCertificate,
    are_commensurable,
    build_certificate,
    verify_certificate,
)
from .errors import InvalidGenus, NotHyperbolic
from .factorint import squarefree_discriminant
from .linalg import HyperbolicMatrix, Mat2, mat_mul

__all__ = [
    "GHYS_HASHIGUCHI",
    "BIRKHOFF_SECTION_23N",
    "Suspension",
    "GeodesicSurface",
    "GeodesicOrbifold",
    "GeodesicCommonCover",
    "ChainLink",
    "ChainCertificate",
    "ALMOST_EQUIVALENCE",
    "COMMENSURABILITY",
    "orbifold_model_matrix",
    "genus_model_matrix",
    "orbifold_euler_characteristic",
    "common_cover_genus",
    "orbifold_common_cover",
    "almost_commensurability_chain",
    "verify_chain",
]

# Citation tags for the two almost-equivalence facts taken on trust.
GHYS_HASHIGUCHI = "GHYS_HASHIGUCHI"
BIRKHOFF_SECTION_23N = "BIRKHOFF_SECTION_23N"

ALMOST_EQUIVALENCE = "almost-equivalence"
COMMENSURABILITY = "commensurability"


@dataclass(frozen=True)
class Suspension:
    """Suspension flow of a hyperbolic torus automorphism."""

    monodromy: HyperbolicMatrix

    def __post_init__(self):
        if not isinstance(self.monodromy, HyperbolicMatrix):
            object.__setattr__(
                self, "monodromy", HyperbolicMatrix.from_mat(self.monodromy)
            )

    def euler_characteristic(self):
        raise TypeError("suspensions carry no base-orbifold Euler characteristic")


@dataclass(frozen=True)
class GeodesicSurface:
    """Geodesic flow on a closed hyperbolic surface."""

    genus: int

    def __post_init__(self):
        g = _as_int(self.genus)
        if g <= 1:
            raise InvalidGenus(f"genus must be >= 2, got {g}")
        object.__setattr__(self, "genus", g)

    def euler_characteristic(self):
        return Fraction(2 - 2 * self.genus)


@dataclass(frozen=True)
class GeodesicOrbifold:
    """Geodesic flow on the (2, 3, n) triangle orbifold, n >= 7."""

    n: int

    def __post_init__(self):
        n = _as_int(self.n)
        if n < 7:
            raise ValueError(f"cone order n must be >= 7 for hyperbolicity, got {n}")
        object.__setattr__(self, "n", n)

    @property
    def cone_orders(self):
        return (2, 3, self.n)

    def euler_characteristic(self):
        return orbifold_euler_characteristic(0, self.cone_orders)


@dataclass(frozen=True)
class GeodesicCommonCover:
    """Degree and Euler-characteristic arithmetic for a common cover of
    two geodesic models. Existence of the covering surface is cited;
    the recorded arithmetic (degree x chi = chi of cover, both sides)
    is the machine-checked part."""

    cover_genus: int
    degree_source: int
    degree_target: int
    euler_source: Fraction
    euler_target: Fraction
    euler_cover: Fraction


@dataclass(frozen=True)
class ChainLink:
    """One step of a chain. kind is ALMOST_EQUIVALENCE (evidence: a
    citation tag) or COMMENSURABILITY (evidence: a certificate between
    suspensions, or common-cover arithmetic between geodesic models)."""

    kind: str
    source: object
    target: object
    evidence: object


@dataclass(frozen=True)
class ChainCertificate:
    links: tuple
    endpoints: tuple

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        object.__setattr__(self, "endpoints", tuple(self.endpoints))


def orbifold_model_matrix(t):
    """First-return matrix ((0,1),(-1,t)) of the (2,3,t+4) orbifold's
    geodesic flow over its Birkhoff section; det 1, trace t."""
    t = _as_int(t)
    if t <= 2:
        raise NotHyperbolic(f"trace parameter must be >= 3, got {t}")
    return HyperbolicMatrix(0, 1, -1, t)


def genus_model_matrix(g):
    """Monodromy ((g,g+1),(g-1,g))^2 whose suspension is almost
    equivalent to the genus-g geodesic flow; det 1, trace 4g^2 - 2."""
    g = _as_int(g)
    if g <= 1:
        raise InvalidGenus(f"genus must be >= 2, got {g}")
    root = Mat2(g, g + 1, g - 1, g)
    return HyperbolicMatrix.from_mat(mat_mul(root, root))


def orbifold_euler_characteristic(genus, cone_orders):
    """chi = 2 - 2 genus - sum(1 - 1/n_i), exact."""
    genus = _as_int(genus)
    if genus < 0:
        raise ValueError(f"genus must be >= 0, got {genus}")
    chi = Fraction(2 - 2 * genus)
    for order in cone_orders:
        order = _as_int(order)
        if order < 2:
            raise ValueError(f"cone orders must be >= 2, got {order}")
        chi -= 1 - Fraction(1, order)
    return chi


def common_cover_genus(g1, g2):
    """Least common genus G = lcm(g1-1, g2-1) + 1 covering both
    surfaces, with covering degrees (G-1)/(g_i-1)."""
    g1 = _as_int(g1)
    g2 = _as_int(g2)
    if g1 <= 1 or g2 <= 1:
        raise InvalidGenus(f"genera must be >= 2, got {g1}, {g2}")
    shared = lcm(g1 - 1, g2 - 1)
    return shared + 1, shared // (g1 - 1), shared // (g2 - 1)


def orbifold_common_cover(source, target):
    """Common-cover arithmetic for two geodesic models of the same
    kind. The covering degree over a model with Euler characteristic
    chi must be (2 - 2G)/chi; G is the least genus making both
    degrees integral."""
    chi_s = source.euler_characteristic()
    chi_t = target.euler_characteristic()
    # degree = (G - 1) * ratio with ratio = -2/chi, so G - 1 must
    # clear both denominators
    ratio_s = Fraction(-2) / chi_s
    ratio_t = Fraction(-2) / chi_t
    sheets = lcm(ratio_s.denominator, ratio_t.denominator)
    genus = sheets + 1
    return GeodesicCommonCover(
        cover_genus=genus,
        degree_source=int(sheets * ratio_s),
        degree_target=int(sheets * ratio_t),
        euler_source=chi_s,
        euler_target=chi_t,
        euler_cover=Fraction(2 - 2 * genus),
    )


def _normalize_to_suspension(model):
    """Links (possibly empty) from the model to its suspension."""
    if isinstance(model, Suspension):
        return model, []
    if isinstance(model, GeodesicSurface):
        susp = Suspension(genus_model_matrix(model.genus))
        return susp, [ChainLink(ALMOST_EQUIVALENCE, model, susp, GHYS_HASHIGUCHI)]
    if isinstance(model, GeodesicOrbifold):
        susp = Suspension(orbifold_model_matrix(model.n - 4))
        return susp, [ChainLink(ALMOST_EQUIVALENCE, model, susp, BIRKHOFF_SECTION_23N)]
    raise TypeError(f"not a model: {model!r}")


def _reversed_links(links):
    return [
        ChainLink(link.kind, link.target, link.source, link.evidence)
        for link in reversed(links)
    ]


def _bridge_from(model, susp):
    """Links from the model to the (2,3,t+4) orbifold of its trace,
    reusing the model itself when it already is that orbifold."""
    t = susp.monodromy.trace()
    orbifold = GeodesicOrbifold(t + 4)
    if model == orbifold:
        return [], orbifold
    trace_susp = Suspension(orbifold_model_matrix(t))
    _, head = _normalize_to_suspension(model)
    links = list(head)
    if susp != trace_susp:
        cert = build_certificate(susp.monodromy, trace_susp.monodromy, 1, 1)
        links.append(ChainLink(COMMENSURABILITY, susp, trace_susp, cert))
    links.append(
        ChainLink(ALMOST_EQUIVALENCE, trace_susp, orbifold, BIRKHOFF_SECTION_23N)
    )
    return links, orbifold


def _bridge_to(model, susp):
    """Mirror of _bridge_from: links from the orbifold to the model.

    Certificates are direction-sensitive (base_a must be the link
    source), so this builds its certificate outward rather than
    reversing the one _bridge_from would build."""
    t = susp.monodromy.trace()
    orbifold = GeodesicOrbifold(t + 4)
    if model == orbifold:
        return [], orbifold
    trace_susp = Suspension(orbifold_model_matrix(t))
    links = [
        ChainLink(ALMOST_EQUIVALENCE, orbifold, trace_susp, BIRKHOFF_SECTION_23N)
    ]
    if susp != trace_susp:
        cert = build_certificate(trace_susp.monodromy, susp.monodromy, 1, 1)
        links.append(ChainLink(COMMENSURABILITY, trace_susp, susp, cert))
    _, head = _normalize_to_suspension(model)
    links.extend(_reversed_links(head))
    return links, orbifold


def almost_commensurability_chain(m1, m2):
    """Chain of verified links between any two models.

    Both endpoints normalize to suspensions. Equal squarefree
    discriminant classes admit a direct certificate link; distinct
    classes are bridged through the trace-t model suspensions and a
    common cover of their orbifolds (certificates cannot cross a
    discriminant class, the cover link is what does)."""
    susp1, head = _normalize_to_suspension(m1)
    susp2, tail = _normalize_to_suspension(m2)
    sf1 = squarefree_discriminant(susp1.monodromy.trace())
    sf2 = squarefree_discriminant(susp2.monodromy.trace())
    if sf1 == sf2:
        verdict = are_commensurable(susp1.monodromy, susp2.monodromy)
        middle = [ChainLink(COMMENSURABILITY, susp1, susp2, verdict.certificate)]
        links = head + middle + _reversed_links(tail)
    else:
        left, orb1 = _bridge_from(m1, susp1)
        right, orb2 = _bridge_to(m2, susp2)
        cover = ChainLink(
            COMMENSURABILITY, orb1, orb2, orbifold_common_cover(orb1, orb2)
        )
        links = left + [cover] + right
    return ChainCertificate(links=tuple(links), endpoints=(m1, m2))


def _is_sanctioned_pair(geodesic, suspension, tag):
    if isinstance(geodesic, GeodesicSurface):
        return tag == GHYS_HASHIGUCHI and suspension.monodromy == genus_model_matrix(
            geodesic.genus
        )
    if isinstance(geodesic, GeodesicOrbifold):
        return (
            tag == BIRKHOFF_SECTION_23N
            and suspension.monodromy == orbifold_model_matrix(geodesic.n - 4)
        )
    return False


def _verify_almost_equivalence(link):
    ends = (link.source, link.target)
    for geodesic, suspension in (ends, ends[::-1]):
        if isinstance(suspension, Suspension) and not isinstance(
            geodesic, Suspension
        ):
            if _is_sanctioned_pair(geodesic, suspension, link.evidence):
                return True, "ok"
            return False, "almost_equivalence_whitelist"
    return False, "almost_equivalence_endpoints"


def _verify_commensurability_link(link):
    source, target = link.source, link.target
    if isinstance(source, Suspension) and isinstance(target, Suspension):
        cert = link.evidence
        if not isinstance(cert, CommensurabilityCertificate):
            return False, "certificate_missing"
        if cert.base_a != source.monodromy or cert.base_b != target.monodromy:
            return False, "certificate_endpoints"
        ok, clause = verify_certificate(cert)
        if not ok:
            return False, f"certificate_invalid: {clause}"
        return True, "ok"
    if type(source) is type(target) and isinstance(
        source, (GeodesicSurface, GeodesicOrbifold)
    ):
        cover = link.evidence
        if not isinstance(cover, GeodesicCommonCover):
            return False, "cover_missing"
        if cover.cover_genus < 2:
            return False, "cover_genus"
        if cover.degree_source < 1 or cover.degree_target < 1:
            return False, "cover_degrees"
        if (
            cover.euler_source != source.euler_characteristic()
            or cover.euler_target != target.euler_characteristic()
        ):
            return False, "cover_euler_endpoints"
        if cover.euler_cover != Fraction(2 - 2 * cover.cover_genus):
            return False, "cover_euler_genus"
        if (
            cover.degree_source * cover.euler_source != cover.euler_cover
            or cover.degree_target * cover.euler_target != cover.euler_cover
        ):
            return False, "cover_arithmetic"
        return True, "ok"
    return False, "commensurability_endpoints"


def verify_chain(chain):
    """Re-check a chain from scratch; (True, "ok") or (False, clause).

    Endpoint continuity, the almost-equivalence whitelist, every
    certificate, and all cover arithmetic are verified; clause names
    are prefixed with the failing link's index."""
    links = chain.links
    if not links:
        return False, "chain_nonempty"
    if len(chain.endpoints) != 2:
        return False, "endpoints_shape"
    if links[0].source != chain.endpoints[0] or links[-1].target != chain.endpoints[1]:
        return False, "endpoints_match"
    for idx in range(len(links) - 1):
        if links[idx].target != links[idx + 1].source:
            return False, f"link {idx}: link_continuity"
    for idx, link in enumerate(links):
        if link.kind == ALMOST_EQUIVALENCE:
            ok, clause = _verify_almost_equivalence(link)
        elif link.kind == COMMENSURABILITY:
            ok, clause = _verify_commensurability_link(link)
        else:
            ok, clause = False, "link_kind"
        if not ok:
            return False, f"link {idx}: {clause}"
    return True, "ok"
