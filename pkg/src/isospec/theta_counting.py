"""Shell counting and theta series for congruence and code lattices.

The theta series of a lattice L in its family norm is

    theta_L(z) = sum_w z^{|w|}  =  sum_k N(k) z^k,

except for family A, whose one-norms on the zero-sum lattice are always
even; there coefficient k stores N(2k).  Three independent evaluation
routes are provided:

  * shell_count_box: direct enumeration of the box {|a_i| <= k} with a
    membership filter.  Semantically definitive, exponential in dimension.
  * shell_counts / theta_truncated: a per-coordinate dynamic program over
    (residue class mod q, norm), run in numpy int64 when the partial counts
    provably fit, and in exact Python integers otherwise.
  * zagier_theta: the closed-form average over the group of a product of
    quadratic factors with root-of-unity coefficients, evaluated exactly in
    the group ring Z[x]/(x^q - 1) and reduced modulo the q-th cyclotomic
    polynomial.

For homogeneous lattices (u = 0) the theta series is a rational function
(1 - z) p(z) / (1 - z^q)^(n+1) with a nonnegative integer numerator of
degree below (n+1)q; ehrhart_form recovers p from finitely many counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .weight_lattice import (
    CodeLattice,
    CongruenceLattice,
    Family,
    GcdViolation,
    GroupFamily,
    Lattice,
    NormKind,
    default_norm,
    membership,
    norm,
)


class AffineUnsupported(ValueError):
    """Rational-form recovery is only defined for homogeneous lattices (u = 0)."""


class NonIntegralCoefficient(ArithmeticError):
    """The closed-form average failed to produce an integer series coefficient."""


@dataclass(frozen=True)
class ThetaSeries:
    """Truncated theta series; coeffs[k] counts norm-k vectors (norm-2k for A)."""

    coeffs: tuple[int, ...]
    family: Optional[GroupFamily] = None

    @property
    def K(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class RationalForm:
    """Theta series written as (1 - z) * numerator(z) / (1 - z^q)^(rank+1)."""

    q: int
    rank: int
    numerator: tuple[int, ...]

    def theta_coefficients(self, K: int) -> tuple[int, ...]:
        """Expand the rational form back into its first K series coefficients."""
        top = [0] * (len(self.numerator) + 1)
        for i, h in enumerate(self.numerator):
            top[i] += h
            top[i + 1] -= h
        out = [0] * K
        for l in range((K - 1) // self.q + 1):
            c = math.comb(l + self.rank, self.rank)
            base = self.q * l
            for i, t in enumerate(top):
                if base + i >= K:
                    break
                out[base + i] += c * t
        return tuple(out)


def _resolve_norm(lattice: Lattice, which: Optional[NormKind]) -> NormKind:
    if which is not None:
        return which
    if isinstance(lattice, CodeLattice):
        return NormKind.ONE
    return default_norm(lattice.family)


# ---------------------------------------------------------------------------
# reference counter: box enumeration


def _box_iter(dim: int, bound: int, budget: int, which: NormKind) -> Iterator[tuple[int, ...]]:
    if dim == 0:
        yield ()
        return
    for a in range(-bound, bound + 1):
        if which is NormKind.ONE:
            rem = budget - abs(a)
            if rem < 0:
                continue
            for rest in _box_iter(dim - 1, min(bound, rem), rem, which):
                yield (a,) + rest
        elif which is NormKind.TWO:
            rem = budget - a * a
            if rem < 0:
                continue
            for rest in _box_iter(dim - 1, min(bound, math.isqrt(rem)), rem, which):
                yield (a,) + rest
        else:
            for rest in _box_iter(dim - 1, bound, budget, which):
                yield (a,) + rest


def shell_count_box(lattice: Lattice, k: int, which: Optional[NormKind] = None) -> int:
    """Count lattice vectors of norm exactly k by filtered box enumeration.

    The domain is the box {|a_i| <= k} in the ambient coordinates (for the
    two-norm, whose shell index is the squared length, |a_i| <= isqrt(k)
    already covers every candidate).  Definitive but exponential in the
    dimension; intended as a validation oracle at small k.
    """
    if k < 0:
        raise ValueError(f"shell index must be nonnegative, got {k}")
    w = _resolve_norm(lattice, which)
    dim = lattice.n if isinstance(lattice, CodeLattice) else lattice.ambient_dim
    bound = math.isqrt(k) if w is NormKind.TWO else k
    count = 0
    for point in _box_iter(dim, bound, k, w):
        if norm(point, w) == k and membership(lattice, point):
            count += 1
    return count


# ---------------------------------------------------------------------------
# production counters


def _strided_cumsums(T: np.ndarray, q: int) -> np.ndarray:
    # C[r, m] = sum_{i >= 0} T[r, m - i*q]
    C = T.copy()
    for m in range(q, C.shape[1]):
        C[:, m] += C[:, m - q]
    return C


def _one_norm_counts(q: int, s_mod: Sequence[int], u: int, kmax: int) -> list[int]:
    """One-norm shell counts of {w in Z^n : w . s == u mod q} for 0 <= k <= kmax.

    Coordinates are absorbed one at a time.  Splitting a new coordinate a by
    its residue class a0 = a mod q turns the transfer sum into two shifted
    copies of the strided cumulative sum C: the least |a| in the class is a0
    for positive a and q - a0 for negative a (q itself for the class of 0),
    and the deeper elements of the class are exactly what C accumulates.
    """
    width = kmax + 1
    if (2 * kmax + 1) ** len(s_mod) >= 2**62:
        return _generic_counts(q, s_mod, u, kmax, NormKind.ONE, False, False)
    T = np.zeros((q, width), dtype=np.int64)
    T[0, 0] = 1
    for d in s_mod:
        C = _strided_cumsums(T, q)
        new = np.zeros_like(T)
        for a0 in range(q):
            rolled = np.roll(C, (a0 * d) % q, axis=0)
            if a0 < width:
                new[:, a0:] += rolled[:, : width - a0] if a0 else rolled
            neg = q - a0
            if neg < width:
                new[:, neg:] += rolled[:, : width - neg]
        T = new
    return [int(x) for x in T[u % q]]


def _zero_sum_counts(q: int, s_mod: Sequence[int], u: int, kmax: int) -> list[int]:
    """One-norm shell counts on the zero-sum sublattice of Z^(n+1).

    Same residue-class decomposition as _one_norm_counts with an extra axis
    for the running coordinate sum, which must return to zero at the end.
    Members of a residue class shift (sum, norm) along diagonals, so the
    strided cumulative sums run diagonally: Dp accumulates steps (+q, +q)
    for positive coordinate values and Dn steps (-q, +q) for negative ones.
    """
    ncoords = len(s_mod)
    if (2 * kmax + 1) ** ncoords >= 2**62:
        return _generic_counts(q, s_mod, u, kmax, NormKind.ONE, False, True)
    width = kmax + 1
    tsize = 2 * kmax + 1
    off = kmax
    T = np.zeros((q, tsize, width), dtype=np.int64)
    T[0, off, 0] = 1
    for d in s_mod:
        Dp = T.copy()
        for m in range(q, width):
            Dp[:, q:, m] += Dp[:, :-q, m - q]
        Dn = T.copy()
        for m in range(q, width):
            Dn[:, :-q, m] += Dn[:, q:, m - q]
        new = T.copy()  # the a = 0 term
        for a0 in range(q):
            shift = (a0 * d) % q
            rp = np.roll(Dp, shift, axis=0)
            rn = np.roll(Dn, shift, axis=0)
            p = a0 if a0 >= 1 else q
            v = q - a0 if a0 >= 1 else q
            if p < width and p < tsize:
                new[:, p:, p:] += rp[:, : tsize - p, : width - p]
            if v < width and v < tsize:
                new[:, : tsize - v, v:] += rn[:, v:, : width - v]
        T = new
    return [int(x) for x in T[u % q, off, :]]


def _ring_counts(
    q: int, s_mod: Sequence[int], u: int, even: bool, kmax: int
) -> list[int]:
    # max-norm shells in Z^2 are square rings of 8k points; direct scan
    s1, s2 = s_mod

    def ok(a: int, b: int) -> bool:
        if even and (a + b) % 2:
            return False
        return (a * s1 + b * s2) % q == u

    out = [0] * (kmax + 1)
    if ok(0, 0):
        out[0] = 1
    for k in range(1, kmax + 1):
        c = 0
        for b in range(-k, k + 1):
            c += ok(k, b) + ok(-k, b)
        for a in range(-k + 1, k):
            c += ok(a, k) + ok(a, -k)
        out[k] = c
    return out


def _generic_counts(
    q: int,
    s_mod: Sequence[int],
    u: int,
    kmax: int,
    which: NormKind,
    even: bool,
    zero_sum: bool,
) -> list[int]:
    """Exact dict-based transfer DP covering every congruence-lattice case.

    State is (residue, coordinate-sum parity if even, partial sum if
    zero_sum) accumulated against the additive norm budget (squared budget
    for the two-norm).  Slow but allocation-light and overflow-free.
    """
    if which is NormKind.INF:
        # max-norm is not additive: take successive differences of cube counts
        out = []
        prev = 0
        for k in range(kmax + 1):
            cur = _cube_residue_count(q, s_mod, u, k, even, zero_sum)
            out.append(cur - prev)
            prev = cur
        return out
    state: dict[tuple, list[int]] = {(0, 0, 0): [1] + [0] * kmax}
    coord_bound = math.isqrt(kmax) if which is NormKind.TWO else kmax
    for d in s_mod:
        nxt: dict[tuple, list[int]] = {}
        for (r, par, t), row in state.items():
            for a in range(-coord_bound, coord_bound + 1):
                cost = a * a if which is NormKind.TWO else abs(a)
                if cost > kmax:
                    continue
                key = (
                    (r + a * d) % q,
                    (par + a) % 2 if even else 0,
                    t + a if zero_sum else 0,
                )
                dest = nxt.get(key)
                if dest is None:
                    dest = [0] * (kmax + 1)
                    nxt[key] = dest
                for m in range(kmax + 1 - cost):
                    if row[m]:
                        dest[m + cost] += row[m]
        state = nxt
    row = state.get((u % q, 0, 0))
    return list(row) if row is not None else [0] * (kmax + 1)


def _cube_residue_count(
    q: int, s_mod: Sequence[int], u: int, bound: int, even: bool, zero_sum: bool
) -> int:
    # members of the cube {|a_i| <= bound}, by transfer over residue classes
    state: dict[tuple, int] = {(0, 0, 0): 1}
    for d in s_mod:
        nxt: dict[tuple, int] = {}
        for (r, par, t), c in state.items():
            for a in range(-bound, bound + 1):
                key = (
                    (r + a * d) % q,
                    (par + a) % 2 if even else 0,
                    t + a if zero_sum else 0,
                )
                nxt[key] = nxt.get(key, 0) + c
        state = nxt
    return state.get((u % q, 0, 0), 0)


def _code_counts(code: CodeLattice, which: NormKind, kmax: int) -> list[int]:
    K = kmax + 1
    if which is NormKind.ONE:
        f0 = [1 if m == 0 else (2 if m % 2 == 0 else 0) for m in range(K)]
        f1 = [0 if m % 2 == 0 else 2 for m in range(K)]
    elif which is NormKind.TWO:
        f0, f1 = [0] * K, [0] * K
        f0[0] = 1
        m = 1
        while 4 * m * m < K:
            f0[4 * m * m] = 2
            m += 1
        m = 0
        while (2 * m + 1) ** 2 < K:
            f1[(2 * m + 1) ** 2] = 2
            m += 1
    else:
        raise ValueError("max-norm counts are not provided for code lattices")
    total = [0] * K
    for word in sorted(code.words()):
        prod = [1] + [0] * (kmax)
        for bit in word:
            prod = _poly_mul_trunc(prod, f1 if bit else f0, K)
        total = [a + b for a, b in zip(total, prod)]
    return total


def _poly_mul_trunc(a: Sequence[int], b: Sequence[int], K: int) -> list[int]:
    out = [0] * K
    for i, x in enumerate(a):
        if x == 0 or i >= K:
            continue
        for j, y in enumerate(b):
            if i + j >= K:
                break
            if y:
                out[i + j] += x * y
    return out


@lru_cache(maxsize=1024)
def _counts_cached(lattice: Lattice, which: NormKind, kmax: int) -> tuple[int, ...]:
    if isinstance(lattice, CodeLattice):
        return tuple(_code_counts(lattice, which, kmax))
    q, s, u = lattice.q, lattice.s, lattice.u
    fam = lattice.family
    if which is NormKind.INF and fam.ambient_dim == 2:
        return tuple(_ring_counts(q, s, u, lattice.even_sublattice, kmax))
    if which is NormKind.ONE and not lattice.even_sublattice:
        if fam.kind is Family.A:
            return tuple(_zero_sum_counts(q, s, u, kmax))
        return tuple(_one_norm_counts(q, s, u, kmax))
    return tuple(
        _generic_counts(
            q, s, u, kmax, which, lattice.even_sublattice, fam.kind is Family.A
        )
    )


def shell_counts(
    lattice: Lattice, count: int, which: Optional[NormKind] = None
) -> tuple[int, ...]:
    """The counts N(0), ..., N(count-1) of lattice vectors on each norm shell."""
    if count <= 0:
        return ()
    return _counts_cached(lattice, _resolve_norm(lattice, which), count - 1)


def shell_count(lattice: Lattice, k: int, which: Optional[NormKind] = None) -> int:
    """Number of lattice vectors of norm exactly k."""
    if k < 0:
        raise ValueError(f"shell index must be nonnegative, got {k}")
    return shell_counts(lattice, k + 1, which)[k]


def theta_truncated(lattice: Lattice, K: int) -> ThetaSeries:
    """First K theta coefficients in the family norm.

    Family A stores the count of norm-2k vectors at coefficient k, so that
    the series is a power series in z rather than z^2; every other family
    stores the norm-k count directly.
    """
    if K <= 0:
        raise ValueError(f"need a positive number of coefficients, got {K}")
    fam = lattice.family if isinstance(lattice, CongruenceLattice) else None
    if fam is not None and fam.kind is Family.A:
        counts = shell_counts(lattice, 2 * K - 1)
        coeffs = tuple(counts[2 * k] for k in range(K))
    else:
        coeffs = tuple(shell_counts(lattice, K))
    return ThetaSeries(coeffs=coeffs, family=fam)


# ---------------------------------------------------------------------------
# rational form for homogeneous lattices


def ehrhart_form(lattice: CongruenceLattice) -> RationalForm:
    """Recover the numerator of theta = (1 - z) p(z) / (1 - z^q)^(rank+1).

    Valid for homogeneous congruence lattices (u = 0), where the cumulative
    counts are a quasi-polynomial of degree rank and period dividing q; p is
    then determined by the first (rank+1)q theta coefficients.
    """
    if not isinstance(lattice, CongruenceLattice):
        raise TypeError("rational form is defined for congruence lattices")
    if lattice.u % lattice.q != 0:
        raise AffineUnsupported(
            f"u = {lattice.u} != 0: the affine case has no such closed form here"
        )
    q = lattice.q
    rank = lattice.family.n
    K = (rank + 1) * q
    coeffs = theta_truncated(lattice, K).coeffs
    phi = [0] * K  # cumulative counts in theta indexing
    run = 0
    for m, c in enumerate(coeffs):
        run += c
        phi[m] = run
    numerator = []
    for idx in range(K):
        k0, l0 = idx % q, idx // q
        h = sum(
            (-1) ** j * math.comb(rank + 1, j) * phi[k0 + q * (l0 - j)]
            for j in range(l0 + 1)
        )
        numerator.append(h)
    return RationalForm(q=q, rank=rank, numerator=tuple(numerator))


# ---------------------------------------------------------------------------
# closed-form evaluation via roots of unity


@lru_cache(maxsize=None)
def _cyclotomic(q: int) -> tuple[int, ...]:
    # coefficients of the q-th cyclotomic polynomial, low degree first
    poly = [-1] + [0] * (q - 1) + [1]
    for d in range(1, q):
        if q % d == 0:
            poly = _polydiv_exact(poly, list(_cyclotomic(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials with monic divisor
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dcoef in enumerate(den):
                rem[i + j] -= c * dcoef
    if any(rem):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def _reduce_mod_cyclotomic(row: Sequence[int], phi: Sequence[int]) -> Optional[int]:
    # remainder of the integer polynomial `row` mod phi; None unless constant
    r = list(row)
    dphi = len(phi) - 1
    for top in range(len(r) - 1, dphi - 1, -1):
        lead = r[top]
        if lead:
            off = top - dphi
            for i, c in enumerate(phi):
                r[off + i] -= lead * c
    rem = r[:dphi]
    if any(rem[1:]):
        return None
    return rem[0] if rem else 0


def _chebyshev_factor(e: int, q: int, K: int, dtype) -> np.ndarray:
    # series of 1/(1 - (x^e + x^-e) z + z^2) over Z[x]/(x^q - 1):
    # coefficient m is sum_{i=0..m} x^(e(m-2i))
    F = np.zeros((K, q), dtype=dtype)
    F[0, 0] = 1
    if K > 1:
        F[1, e % q] += 1
        F[1, (-e) % q] += 1
    for m in range(2, K):
        F[m] = F[m - 2]
        F[m, (e * m) % q] += 1
        F[m, (-e * m) % q] += 1
    return F


def _ring_series_mul(A: np.ndarray, B: np.ndarray, q: int, K: int) -> np.ndarray:
    # multiply two series with Z[x]/(x^q - 1) coefficients by flattening each
    # z-slot into a stripe of width 2q-1, so x-degrees never cross slots
    slot = 2 * q - 1
    fa = np.zeros(K * slot, dtype=A.dtype)
    fa.reshape(K, slot)[:, :q] = A
    fb = np.zeros(K * slot, dtype=B.dtype)
    fb.reshape(K, slot)[:, :q] = B
    conv = np.convolve(fa, fb)[: K * slot]
    view = conv.reshape(K, slot)
    out = view[:, :q].copy()
    if q > 1:
        out[:, : q - 1] += view[:, q:]
    return out


def zagier_theta(q: int, s: Sequence[int], K: int) -> ThetaSeries:
    """First K theta coefficients of {w in Z^n : w . s == 0 mod q}, closed form.

    Averages prod_j 1/((z - x^{l s_j})(z - x^{-l s_j})) over l mod q with x
    a primitive q-th root of unity, multiplies by (1 - z^2)^n, and checks
    that every coefficient collapses to an integer multiple of q after
    reduction modulo the q-th cyclotomic polynomial.
    """
    if q < 1:
        raise ValueError(f"group order must be a positive integer, got {q}")
    if K <= 0:
        raise ValueError(f"need a positive number of coefficients, got {K}")
    s = tuple(int(x) % q for x in s)
    if math.gcd(q, *s) != 1:
        raise GcdViolation(f"gcd({q}, {s}) != 1")
    n = len(s)
    # every intermediate entry is bounded by the total coefficient mass
    bound = q * (2**n) * (K + 1) * math.comb(K + 2 * n - 1, 2 * n - 1)
    dtype: type = np.int64 if bound < 2**62 else object
    total = np.zeros((K, q), dtype=dtype)
    for l in range(q):
        prod: Optional[np.ndarray] = None
        for sj in s:
            fac = _chebyshev_factor((l * sj) % q, q, K, dtype)
            prod = fac if prod is None else _ring_series_mul(prod, fac, q, K)
        total += prod
    combined = np.zeros_like(total)
    for t in range(n + 1):
        shift = 2 * t
        if shift >= K:
            break
        combined[shift:] += ((-1) ** t * math.comb(n, t)) * total[: K - shift]
    phi = list(_cyclotomic(q))
    coeffs = []
    for m in range(K):
        c = _reduce_mod_cyclotomic([int(x) for x in combined[m]], phi)
        if c is None or c % q != 0:
            raise NonIntegralCoefficient(
                f"coefficient {m} did not reduce to an integer multiple of {q}"
            )
        coeffs.append(c // q)
    return ThetaSeries(coeffs=tuple(coeffs), family=None)


if __name__ == "__main__":
    from .weight_lattice import Family, GroupFamily, make_lattice

    Z2 = make_lattice(GroupFamily(Family.D, 2), 1, (0, 0))
    print("Z^2 one-norm shells:", shell_counts(Z2, 6))
    L = make_lattice(GroupFamily(Family.D, 2), 7, (1, 2))
    print("theta of L_{7,(1,2)}:", theta_truncated(L, 8).coeffs)
    print("same via closed form:", zagier_theta(7, (1, 2), 8).coeffs)
    print("rational numerator:", ehrhart_form(L).numerator)
