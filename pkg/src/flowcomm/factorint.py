"""Squarefree parts of large integers with an explicit effort budget.

The workload is discriminants t^2 - 4 = (t-2)(t+2) of power traces,
which are structurally (small factor) * (perfect square). The
pipeline exploits that: sieve-backed trial division, Miller-Rabin,
perfect-power parity shortcuts (an even power contributes nothing to
the squarefree part, so a giant square cofactor never needs to be
factored), then Pollard-Brent splitting under an iteration budget,
with one extended trial-division sweep before giving up. The answer
is always exact; FactorizationLimit is raised rather than ever
returning a guess.
"""

from math import gcd, isqrt

from .errors import FactorizationLimit

__all__ = ["squarefree_part", "squarefree_discriminant", "is_probable_prime"]

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 10**6

_SIEVE_BOUND = 10**4


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [p for p in range(limit + 1) if flags[p]]

_SMALL_PRIMES = _sieve(_SIEVE_BOUND)

# strong-pseudoprime bases: deterministic for n < 3.317e24, and no
# composite below 2^64 passes the first twelve
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59)


def is_probable_prime(n):
    if n < 2:
        return False
    # pre-divide by every base so no surviving n can reduce a base to 0
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _iroot(n, k):
    """Largest r with r**k <= n, by integer Newton iteration."""
    if n < 2:
        return n
    r = 1 << -(-n.bit_length() // k)
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def _perfect_power(n):
    """(e, m) with m**e == n for some prime e, else (1, n)."""
    bits = n.bit_length()
    for e in _SMALL_PRIMES:
        if e > bits:
            break
        m = isqrt(n) if e == 2 else _iroot(n, e)
        if m**e == n:
            return e, m
    return 1, n


def _pollard_brent(n, budget):
    """Nontrivial factor of odd composite n, or None within the budget.

    budget is a one-element list of remaining iterations, shared
    across the whole squarefree_part call.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, m = 2, 128
        r, q = 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
            budget[0] -= r
            if budget[0] <= 0:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                budget[0] -= 1
                if budget[0] <= 0:
                    return None
        if g != n:
            return g
    return None


def _coprime_refine(parts):
    """Rewrite a factor list as pairwise-coprime (base, exponent) pairs."""
    work = [(b, e) for b, e in parts if b != 1]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                g = gcd(work[i][0], work[j][0])
                if g > 1:
                    bi, ei = work[i]
                    bj, ej = work[j]
                    pieces = [(bi // g, ei), (bj // g, ej), (g, ei + ej)]
                    work[i : i + 1] = []
                    work[j - 1 : j] = []
                    work.extend((b, e) for b, e in pieces if b != 1)
                    changed = True
                    break
            if changed:
                break
    return work


def _split(n, budget, trial_bound):
    """Some nontrivial factor of composite n, or raise FactorizationLimit."""
    d = _pollard_brent(n, budget)
    if d is not None and 1 < d < n:
        return d
    # last resort: extend trial division past the sieve
    start = _SIEVE_BOUND + 1 if _SIEVE_BOUND % 2 == 0 else _SIEVE_BOUND + 2
    limit = min(trial_bound, isqrt(n))
    for cand in range(start, limit + 1, 2):
        if n % cand == 0:
            return cand
    raise FactorizationLimit(
        f"composite cofactor with {n.bit_length()} bits resisted the effort budget"
    )


def _sf_cofactor(n, budget, trial_bound):
    """Squarefree part of a cofactor coprime to the sieved primes."""
    if n == 1:
        return 1
    if is_probable_prime(n):
        return n
    e, m = _perfect_power(n)
    if e > 1:
        return 1 if e % 2 == 0 else _sf_cofactor(m, budget, trial_bound)
    d = _split(n, budget, trial_bound)
    out = 1
    for base, exp in _coprime_refine([(d, 1), (n // d, 1)]):
        if exp % 2:
            out *= _sf_cofactor(base, budget, trial_bound)
    return out


def squarefree_part(n, trial_bound=DEFAULT_TRIAL_BOUND, rho_budget=DEFAULT_RHO_BUDGET):
    """The squarefree s with |n| = s * m^2, computed exactly.

    Raises FactorizationLimit when a composite cofactor survives the
    configured effort (both knobs only raise or lower effort; the
    returned value is never approximate). n must be nonzero.
    """
    if n == 0:
        raise ValueError("squarefree part of 0 is undefined")
    n = abs(n)
    result = 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                result *= p
    if n > 1:
        if n <= _SIEVE_BOUND * _SIEVE_BOUND:
            result *= n  # no factor below its square root, so prime
        else:
            result *= _sf_cofactor(n, [rho_budget], trial_bound)
    return result


def squarefree_discriminant(t, trial_bound=DEFAULT_TRIAL_BOUND, rho_budget=DEFAULT_RHO_BUDGET):
    """Squarefree part of t^2 - 4 for a trace t > 2.

    Factors t - 2 and t + 2 separately (they share at most a factor
    of 4) and merges: sf(xy) = sf(x) sf(y) / gcd(sf(x), sf(y))^2.
    """
    if t <= 2:
        raise ValueError(f"trace must be > 2, got {t}")
    sf_lo = squarefree_part(t - 2, trial_bound, rho_budget)
    sf_hi = squarefree_part(t + 2, trial_bound, rho_budget)
    g = gcd(sf_lo, sf_hi)
    return sf_lo * sf_hi // (g * g)
