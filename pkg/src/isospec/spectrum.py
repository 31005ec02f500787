"""Eigenvalues and multiplicities of twisted Laplace operators on cyclic quotients.

Each supported space is a compact rank-one symmetric space whose level-k
spherical representation has weights inside the family's coordinate lattice:

    cp:n     complex projective space    family A    lambda_k = k(k+n)
    s:2n     even sphere S^{2n}          family B    lambda_k = k(k+2n-1)
    hp1      quaternionic line           family C2   lambda_k = k(k+3)
    s:2n-1   odd sphere S^{2n-1}         family D    lambda_k = k(k+2n-2)

On the quotient by the cyclic subgroup (q, s), twisted by the character u,
the multiplicity of lambda_k is a finite binomial-weighted sum of shell
counts of the congruence lattice, and the generating function of the
multiplicities is the lattice theta series divided by an explicit product
of factors (1 - z^e).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .theta_counting import ehrhart_form, theta_truncated
from .weight_lattice import (
    CongruenceLattice,
    DimensionMismatch,
    Family,
    GroupFamily,
    make_lattice,
)


class FamilyMismatch(ValueError):
    """Lattice and space disagree on family, rank, or sublattice restriction."""


class SpaceTag(Enum):
    CPN = "cpn"
    EVEN_SPHERE = "even_sphere"
    HP1 = "hp1"
    ODD_SPHERE = "odd_sphere"


@dataclass(frozen=True)
class SpaceKind:
    tag: SpaceTag
    n: int

    def __post_init__(self) -> None:
        if self.tag is SpaceTag.CPN and self.n < 2:
            raise ValueError("complex projective space requires n >= 2 here")
        if self.tag is SpaceTag.ODD_SPHERE and self.n < 2:
            raise ValueError("odd spheres are parameterized by n >= 2 (S^3 and up)")
        if self.tag is SpaceTag.EVEN_SPHERE and self.n < 1:
            raise ValueError("even spheres are parameterized by n >= 1")
        if self.tag is SpaceTag.HP1 and self.n != 2:
            raise ValueError("the quaternionic line fixes n = 2")

    @property
    def family(self) -> GroupFamily:
        kind = {
            SpaceTag.CPN: Family.A,
            SpaceTag.EVEN_SPHERE: Family.B,
            SpaceTag.HP1: Family.C2,
            SpaceTag.ODD_SPHERE: Family.D,
        }[self.tag]
        return GroupFamily(kind, self.n)

    @property
    def dimension(self) -> int:
        if self.tag is SpaceTag.ODD_SPHERE:
            return 2 * self.n - 1
        if self.tag is SpaceTag.HP1:
            return 4
        return 2 * self.n

    @property
    def cli_name(self) -> str:
        if self.tag is SpaceTag.CPN:
            return f"cp:{self.n}"
        if self.tag is SpaceTag.EVEN_SPHERE:
            return f"s:{2 * self.n}"
        if self.tag is SpaceTag.HP1:
            return "hp1"
        return f"s:{2 * self.n - 1}"


def cpn(n: int) -> SpaceKind:
    return SpaceKind(SpaceTag.CPN, n)


def even_sphere(n: int) -> SpaceKind:
    return SpaceKind(SpaceTag.EVEN_SPHERE, n)


def odd_sphere(n: int) -> SpaceKind:
    return SpaceKind(SpaceTag.ODD_SPHERE, n)


def hp1() -> SpaceKind:
    return SpaceKind(SpaceTag.HP1, 2)


def space_lattice(space: SpaceKind, q: int, s: Sequence[int], u: int = 0) -> CongruenceLattice:
    """The congruence lattice whose shell counts drive the space's spectrum."""
    return make_lattice(
        space.family, q, s, u, even_sublattice=space.tag is SpaceTag.HP1
    )


@dataclass(frozen=True)
class SpectrumDescriptor:
    """Levels (k, lambda_k, multiplicity); zero multiplicities are retained."""

    space: SpaceKind
    entries: tuple[tuple[int, int, int], ...]


def eigenvalue(space: SpaceKind, k: int) -> int:
    """The k-th distinct Laplace eigenvalue of the covering space."""
    if k < 0:
        raise ValueError(f"level index must be nonnegative, got {k}")
    n = space.n
    if space.tag is SpaceTag.CPN:
        return k * (k + n)
    if space.tag is SpaceTag.EVEN_SPHERE:
        return k * (k + 2 * n - 1)
    if space.tag is SpaceTag.HP1:
        return k * (k + 3)
    return k * (k + 2 * n - 2)


def weight_multiplicity(family: GroupFamily, k: int, mu: Sequence[int]) -> int:
    """Multiplicity of the weight mu in the level-k spherical representation.

    Closed forms per family (zero outside the stated support):

        A:  C(k - |mu|_1/2 + n - 1, n - 1)     when k - |mu|_1/2 in Z>=0
        B:  C(floor((k - |mu|_1)/2) + n - 1, n - 1)  when k - |mu|_1 >= 0
        C2: floor((k - |mu|_inf)/2) + 1        when a1 + a2 even, k - |mu|_inf >= 0
        D:  C((k - |mu|_1)/2 + n - 2, n - 2)   when k - |mu|_1 in 2Z>=0
    """
    if k < 0:
        raise ValueError(f"level index must be nonnegative, got {k}")
    mu = tuple(int(x) for x in mu)
    if len(mu) != family.ambient_dim:
        raise DimensionMismatch(
            f"expected weight of length {family.ambient_dim}, got {len(mu)}"
        )
    n = family.n
    if family.kind is Family.A:
        if sum(mu) != 0:
            return 0
        t2 = 2 * k - sum(abs(x) for x in mu)
        if t2 < 0 or t2 % 2:
            return 0
        return math.comb(t2 // 2 + n - 1, n - 1)
    if family.kind is Family.B:
        t = k - sum(abs(x) for x in mu)
        if t < 0:
            return 0
        return math.comb(t // 2 + n - 1, n - 1)
    if family.kind is Family.C2:
        if (mu[0] + mu[1]) % 2:
            return 0
        t = k - max(abs(mu[0]), abs(mu[1]))
        if t < 0:
            return 0
        return t // 2 + 1
    t = k - sum(abs(x) for x in mu)
    if t < 0 or t % 2:
        return 0
    return math.comb(t // 2 + n - 2, n - 2)


def _check_compat(lattice: CongruenceLattice, space: SpaceKind) -> None:
    if not isinstance(lattice, CongruenceLattice):
        raise FamilyMismatch("spectrum computations need a congruence lattice")
    if lattice.family != space.family:
        raise FamilyMismatch(
            f"lattice family {lattice.family.kind.value}(n={lattice.family.n}) "
            f"does not match space {space.cli_name}"
        )
    if lattice.even_sublattice != (space.tag is SpaceTag.HP1):
        if space.tag is SpaceTag.HP1:
            raise FamilyMismatch(
                "hp1 reads the even-coordinate-sum sublattice; "
                "build the lattice with even_sublattice=True"
            )
        raise FamilyMismatch("even-sum sublattices belong to hp1 only")


def _mult_from_theta(space: SpaceKind, th: Sequence[int], k: int) -> int:
    n = space.n

    def N(j: int) -> int:
        return th[j] if j >= 0 else 0

    if space.tag is SpaceTag.CPN:
        # N(2k - 2r) sits at theta index k - r
        return sum(math.comb(r + n - 1, n - 1) * N(k - r) for r in range(k + 1))
    if space.tag is SpaceTag.EVEN_SPHERE:
        return sum(
            math.comb(r + n - 1, n - 1) * (N(k - 2 * r) + N(k - 1 - 2 * r))
            for r in range(k // 2 + 1)
        )
    if space.tag is SpaceTag.HP1:
        return sum(
            (r + 1) * (N(k - 2 * r) + N(k - 1 - 2 * r)) for r in range(k // 2 + 1)
        )
    return sum(math.comb(r + n - 2, n - 2) * N(k - 2 * r) for r in range(k // 2 + 1))


def multiplicity(lattice: CongruenceLattice, space: SpaceKind, k: int) -> int:
    """Multiplicity of lambda_k on the quotient, twisted by the lattice's u."""
    _check_compat(lattice, space)
    if k < 0:
        raise ValueError(f"level index must be nonnegative, got {k}")
    th = theta_truncated(lattice, k + 1).coeffs
    return _mult_from_theta(space, th, k)


def spectrum_table(lattice: CongruenceLattice, space: SpaceKind, K: int) -> SpectrumDescriptor:
    """Levels k = 0 .. K-1 with eigenvalues and exact multiplicities."""
    _check_compat(lattice, space)
    if K < 1:
        raise ValueError(f"need at least one level, got K={K}")
    th = theta_truncated(lattice, K).coeffs
    entries = tuple(
        (k, eigenvalue(space, k), _mult_from_theta(space, th, k)) for k in range(K)
    )
    return SpectrumDescriptor(space=space, entries=entries)


@dataclass(frozen=True)
class SpectralGenFun:
    """Generating function of eigenvalue multiplicities, sum_k mult(lambda_k) z^k.

    When the lattice is homogeneous (u = 0) the function is the rational
    numerator over prod (1 - z^e)^p with exact integer data; otherwise only
    truncated series extraction is available.
    """

    space: SpaceKind
    lattice: CongruenceLattice
    numerator: Optional[tuple[int, ...]]
    denominator: tuple[tuple[int, int], ...]

    def series(self, K: int) -> tuple[int, ...]:
        if K < 1:
            raise ValueError(f"need a positive number of coefficients, got {K}")
        if self.numerator is not None:
            out = list(self.numerator[:K])
            out += [0] * (K - len(out))
            for e, p in self.denominator:
                for _ in range(p):
                    for i in range(e, K):
                        out[i] += out[i - e]
            return tuple(out)
        th = theta_truncated(self.lattice, K).coeffs
        tag, n = self.space.tag, self.space.n
        if tag is SpaceTag.CPN:
            out = list(th)
            for _ in range(n):
                for i in range(1, K):
                    out[i] += out[i - 1]
        elif tag is SpaceTag.ODD_SPHERE:
            out = list(th)
            for _ in range(n - 1):
                for i in range(2, K):
                    out[i] += out[i - 2]
        else:
            # (1 + z) theta / (1 - z^2)^rank for even spheres and hp1
            out = [0] * K
            for i, c in enumerate(th):
                out[i] += c
                if i + 1 < K:
                    out[i + 1] += c
            for _ in range(n if tag is SpaceTag.EVEN_SPHERE else 2):
                for i in range(2, K):
                    out[i] += out[i - 2]
        return tuple(out)


def _mul_one_minus_z(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i] += c
        out[i + 1] -= c
    return tuple(out)


def spectral_generating_function(
    lattice: CongruenceLattice, space: SpaceKind
) -> SpectralGenFun:
    """Build the multiplicity generating function for the (lattice, space) pair.

    For u = 0 the theta numerator from ehrhart_form is folded with the
    space's composition factor, cancelling common (1 - z) or (1 - z^2)
    powers; the result is exact.  For u != 0 the returned object extracts
    truncated series on demand.
    """
    _check_compat(lattice, space)
    q, n = lattice.q, space.n
    if lattice.u % q != 0:
        return SpectralGenFun(
            space=space, lattice=lattice, numerator=None, denominator=()
        )
    p = ehrhart_form(lattice).numerator
    if space.tag is SpaceTag.CPN:
        num: tuple[int, ...] = tuple(p)
        den = ((q, n + 1), (1, n - 1))
    elif space.tag is SpaceTag.EVEN_SPHERE:
        num = tuple(p)
        den = ((q, n + 1), (2, n - 1))
    elif space.tag is SpaceTag.HP1:
        num = tuple(p)
        den = ((q, 3), (2, 1))
    else:
        num = _mul_one_minus_z(p)
        den = ((q, n + 1), (2, n - 1))
    den = tuple((e, pw) for e, pw in den if pw > 0)
    return SpectralGenFun(space=space, lattice=lattice, numerator=num, denominator=den)


def zeta_partial(
    lattice: CongruenceLattice,
    space: SpaceKind,
    exponent: Union[int, str, Fraction],
    K: int,
    precision: int = 50,
) -> Decimal:
    """Partial spectral zeta value sum_{k=1}^{K-1} mult(lambda_k) lambda_k^(-exponent).

    Purely diagnostic; computed in decimal arithmetic at the given precision
    so no binary-float artifacts enter rendered output.
    """
    _check_compat(lattice, space)
    if K < 2:
        raise ValueError(f"need K >= 2 so at least level 1 enters, got {K}")
    e = Fraction(exponent)
    th = theta_truncated(lattice, K).coeffs
    with localcontext() as ctx:
        ctx.prec = precision + 10
        ee = Decimal(e.numerator) / Decimal(e.denominator)
        total = Decimal(0)
        for k in range(1, K):
            m = _mult_from_theta(space, th, k)
            if m:
                total += Decimal(m) * Decimal(eigenvalue(space, k)) ** (-ee)
    with localcontext() as ctx:
        ctx.prec = precision
        return +total


# ---------------------------------------------------------------------------
# dimension oracle


def weyl_dimension(family: GroupFamily, k: int) -> int:
    """Dimension of the level-k spherical representation via the Weyl product.

    Root data: A_n has roots e_i - e_j with rho = (n, ..., 1, 0) and highest
    weight k(e_1 - e_{n+1}); B_n has e_i +- e_j and e_i with rho_i = n - i + 1/2
    and highest weight k e_1; C2 has e_1 +- e_2, 2e_1, 2e_2 with rho = (2, 1)
    and highest weight k(e_1 + e_2); D_n has e_i +- e_j with rho_i = n - i and
    highest weight k e_1.
    """
    if k < 0:
        raise ValueError(f"level index must be nonnegative, got {k}")
    n = family.n
    dim = Fraction(1)
    if family.kind is Family.A:
        lam = [k] + [0] * (n - 1) + [-k]
        rho = list(range(n, -1, -1))
        l = [a + b for a, b in zip(lam, rho)]
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                dim *= Fraction(l[i] - l[j], rho[i] - rho[j])
    elif family.kind is Family.B:
        rho = [Fraction(2 * (n - i) + 1, 2) for i in range(1, n + 1)]
        l = [rho[0] + k] + rho[1:]
        for i in range(n):
            for j in range(i + 1, n):
                dim *= (l[i] ** 2 - l[j] ** 2) / (rho[i] ** 2 - rho[j] ** 2)
            dim *= l[i] / rho[i]
    elif family.kind is Family.C2:
        rho = (2, 1)
        l = (k + 2, k + 1)
        dim *= Fraction(l[0] - l[1], rho[0] - rho[1])
        dim *= Fraction(l[0] + l[1], rho[0] + rho[1])
        dim *= Fraction(l[0], rho[0]) * Fraction(l[1], rho[1])
    else:
        rho = [n - i for i in range(1, n + 1)]
        l = [rho[0] + k] + rho[1:]
        for i in range(n):
            for j in range(i + 1, n):
                dim *= Fraction(l[i] ** 2 - l[j] ** 2, rho[i] ** 2 - rho[j] ** 2)
    if dim.denominator != 1:
        raise ArithmeticError(f"Weyl product did not come out integral: {dim}")
    return int(dim)


def _one_norm_ball(dim: int, budget: int) -> Iterator[tuple[int, ...]]:
    if dim == 0:
        yield ()
        return
    for a in range(-budget, budget + 1):
        for rest in _one_norm_ball(dim - 1, budget - abs(a)):
            yield (a,) + rest


def _zero_sum_ball(dim: int, budget: int) -> Iterator[tuple[int, ...]]:
    def rec(left: int, rem: int, ssum: int) -> Iterator[tuple[int, ...]]:
        if left == 1:
            if abs(ssum) <= rem:
                yield (-ssum,)
            return
        for a in range(-rem, rem + 1):
            yield from ((a,) + rest for rest in rec(left - 1, rem - abs(a), ssum + a))

    yield from rec(dim, budget, 0)


def full_lattice_dimension_check(family: GroupFamily, k: int) -> int:
    """Sum weight multiplicities over the full weight lattice; must equal Weyl.

    Returns the common value; raises ArithmeticError on disagreement.  The
    enumeration covers every weight in the representation's support (one-norm
    at most k, or 2k for family A, max-norm at most k for C2).
    """
    n = family.n
    if family.kind is Family.A:
        total = sum(
            weight_multiplicity(family, k, w) for w in _zero_sum_ball(n + 1, 2 * k)
        )
    elif family.kind is Family.C2:
        rng = range(-k, k + 1)
        total = sum(weight_multiplicity(family, k, (a, b)) for a in rng for b in rng)
    else:
        total = sum(weight_multiplicity(family, k, w) for w in _one_norm_ball(n, k))
    dim = weyl_dimension(family, k)
    if total != dim:
        raise ArithmeticError(
            f"weight-multiplicity sum {total} != Weyl dimension {dim} "
            f"for {family.kind.value}(n={n}), k={k}"
        )
    return dim


if __name__ == "__main__":
    space = odd_sphere(2)
    L = space_lattice(space, 1, (0, 0))
    print("S^3 levels:", spectrum_table(L, space, 5).entries)
    F = spectral_generating_function(L, space)
    print("S^3 genfun numerator:", F.numerator, "denominator:", F.denominator)
    print("series:", F.series(6))
    print("dim pi_1 for C2:", full_lattice_dimension_check(GroupFamily(Family.C2, 2), 1))
