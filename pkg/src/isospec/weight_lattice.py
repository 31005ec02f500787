"""Weight lattices of the classical families and their cyclic congruence sublattices.

Four families are supported, each fixing an ambient coordinate lattice and
the norm used for shell counting:

    A    SU(n+1)    zero-sum vectors in Z^(n+1), one-norm (always even)
    B    SO(2n+1)   Z^n, one-norm
    C2   Sp(2)      Z^2, max-norm
    D    SO(2n)     Z^n, one-norm

A cyclic subgroup of the maximal torus is described by the group order q and
a vector s of rotation exponents with gcd(q, s) = 1.  The character with
index u selects the congruence lattice

    L = { w : sum_i w_i * s_i  ==  u  (mod q) },

where for family A the sum runs over all n+1 coordinates of the zero-sum
vector.  Two parameter vectors s, s' describe conjugate subgroups exactly
when some unit l mod q maps the multiset of residues of s to that of s',
up to permutation (family A) or permutation and sign (B, C2, D).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement
from typing import Iterable, Sequence, Union


class Family(Enum):
    A = "A"
    B = "B"
    C2 = "C2"
    D = "D"


class NormKind(Enum):
    ONE = "one"
    TWO = "two"
    INF = "inf"


class GcdViolation(ValueError):
    """gcd(q, s) != 1, so the parameters do not define a subgroup of order q."""


class IllegalEvenSublattice(ValueError):
    """The even-coordinate-sum restriction only exists for family C2."""


class ZeroOrder(ValueError):
    """The group order q must be a positive integer."""


class DimensionMismatch(ValueError):
    """A weight vector does not live in the family's ambient lattice."""


@dataclass(frozen=True)
class GroupFamily:
    kind: Family
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"rank must be a positive integer, got {self.n}")
        if self.kind is Family.C2 and self.n != 2:
            raise ValueError("family C2 is Sp(2); its rank is fixed at 2")

    @property
    def ambient_dim(self) -> int:
        return self.n + 1 if self.kind is Family.A else self.n


@dataclass(frozen=True)
class CyclicParams:
    """Normalized cyclic-subgroup data: order q, exponents s, character u.

    For family A, s is the full zero-sum (n+1)-vector reduced mod q.
    Instances are produced by make_lattice; fields are already reduced.
    """

    q: int
    s: tuple[int, ...]
    u: int


@dataclass(frozen=True)
class CongruenceLattice:
    family: GroupFamily
    params: CyclicParams
    even_sublattice: bool = False

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def s(self) -> tuple[int, ...]:
        return self.params.s

    @property
    def u(self) -> int:
        return self.params.u

    @property
    def ambient_dim(self) -> int:
        return self.family.ambient_dim


@dataclass(frozen=True)
class CodeLattice:
    """Preimage in Z^n of a binary linear code under coordinatewise mod 2."""

    n: int
    generators: tuple[tuple[int, ...], ...]

    def words(self) -> frozenset[tuple[int, ...]]:
        return _code_span(self.generators, self.n)


_SPAN_CACHE: dict[tuple, frozenset] = {}


def _code_span(generators: tuple[tuple[int, ...], ...], n: int) -> frozenset[tuple[int, ...]]:
    key = (generators, n)
    cached = _SPAN_CACHE.get(key)
    if cached is not None:
        return cached
    span = {(0,) * n}
    for g in generators:
        span |= {tuple((a + b) % 2 for a, b in zip(w, g)) for w in span}
    result = frozenset(span)
    _SPAN_CACHE[key] = result
    return result


def make_code_lattice(generators: Iterable[Sequence[int] | str]) -> CodeLattice:
    rows = []
    for g in generators:
        if isinstance(g, str):
            row = tuple(int(c) for c in g)
        else:
            row = tuple(int(x) % 2 for x in g)
        rows.append(row)
    if not rows:
        raise ValueError("need at least one generator word")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("generator words have inconsistent length")
    if any(x not in (0, 1) for r in rows for x in r):
        raise ValueError("generator words must be binary")
    return CodeLattice(n=n, generators=tuple(rows))


Lattice = Union[CongruenceLattice, CodeLattice]


def _normalize_s(family: GroupFamily, q: int, s: Sequence[int]) -> tuple[int, ...]:
    """Reduce s mod q; for family A return the full zero-sum (n+1)-vector."""
    s = tuple(int(x) for x in s)
    n = family.n
    if family.kind is Family.A:
        if len(s) == n:
            s = s + (-sum(s),)
        elif len(s) == n + 1:
            if sum(s) % q != 0:
                raise DimensionMismatch(
                    "family A exponent vector of full length must sum to 0 mod q"
                )
        else:
            raise DimensionMismatch(
                f"family A expects {n} or {n + 1} exponents, got {len(s)}"
            )
    elif len(s) != n:
        raise DimensionMismatch(f"expected {n} exponents, got {len(s)}")
    return tuple(x % q for x in s)


def make_lattice(
    family: GroupFamily,
    q: int,
    s: Sequence[int],
    u: int = 0,
    even_sublattice: bool = False,
) -> CongruenceLattice:
    """Build the congruence lattice for the cyclic subgroup (q, s) and character u.

    Raises ZeroOrder for q < 1, GcdViolation when gcd(q, s) != 1, and
    IllegalEvenSublattice when even_sublattice is requested outside C2.
    """
    if not isinstance(q, int) or q < 1:
        raise ZeroOrder(f"group order must be a positive integer, got {q!r}")
    if even_sublattice and family.kind is not Family.C2:
        raise IllegalEvenSublattice(
            "even-coordinate-sum sublattice is only defined for family C2"
        )
    s = _normalize_s(family, q, s)
    if math.gcd(q, *s) != 1:
        raise GcdViolation(f"gcd({q}, {s}) != 1: subgroup order would drop below {q}")
    return CongruenceLattice(
        family=family,
        params=CyclicParams(q=q, s=s, u=u % q),
        even_sublattice=even_sublattice,
    )


def membership(lattice: Lattice, w: Sequence[int]) -> bool:
    """Whether the integer vector w lies in the lattice."""
    w = tuple(int(x) for x in w)
    if isinstance(lattice, CodeLattice):
        if len(w) != lattice.n:
            raise DimensionMismatch(f"expected length {lattice.n}, got {len(w)}")
        return tuple(x % 2 for x in w) in lattice.words()
    fam = lattice.family
    if len(w) != fam.ambient_dim:
        raise DimensionMismatch(
            f"expected length {fam.ambient_dim}, got {len(w)}"
        )
    if fam.kind is Family.A and sum(w) != 0:
        return False  # outside the zero-sum ambient lattice
    if lattice.even_sublattice and (w[0] + w[1]) % 2 != 0:
        return False
    total = sum(a * b for a, b in zip(w, lattice.s))
    return total % lattice.q == lattice.u


def norm(w: Sequence[int], which: NormKind) -> int:
    """One-norm, squared two-norm, or max-norm of an integer vector (exact int)."""
    w = tuple(int(x) for x in w)
    if which is NormKind.ONE:
        return sum(abs(x) for x in w)
    if which is NormKind.TWO:
        return sum(x * x for x in w)
    if which is NormKind.INF:
        return max((abs(x) for x in w), default=0)
    raise ValueError(f"unknown norm {which!r}")


def default_norm(family: GroupFamily) -> NormKind:
    return NormKind.INF if family.kind is Family.C2 else NormKind.ONE


def _units(q: int) -> tuple[int, ...]:
    # q == 1 yields (0,); l*s mod 1 is the zero vector either way.
    return tuple(l for l in range(q) if math.gcd(l, q) == 1)


def _fold(r: int, q: int) -> int:
    # distance of the residue r in [0, q) to the nearest multiple of q
    return min(r, q - r) if r else 0


def canonical_form(family: GroupFamily, q: int, s: Sequence[int]) -> tuple[int, ...]:
    """Lex-least representative of the conjugacy class of (q, s).

    Families B, C2, D: minimum over units l of the sorted folded residues
    min(r, q - r) of l*s mod q (sign changes fold residues, permutations
    sort them).  Family A: minimum over units l of the sorted residues of
    the full zero-sum vector l*s mod q.
    """
    if q < 1:
        raise ZeroOrder(f"group order must be a positive integer, got {q!r}")
    s = _normalize_s(family, q, s)
    if math.gcd(q, *s) != 1:
        raise GcdViolation(f"gcd({q}, {s}) != 1")
    if family.kind is Family.A:
        candidates = (
            tuple(sorted((l * x) % q for x in s)) for l in _units(q)
        )
    else:
        candidates = (
            tuple(sorted(_fold((l * x) % q, q) for x in s)) for l in _units(q)
        )
    return min(candidates)


def is_conjugate(
    family: GroupFamily, q: int, s1: Sequence[int], s2: Sequence[int]
) -> bool:
    """Whether (q, s1) and (q, s2) generate conjugate cyclic subgroups."""
    return canonical_form(family, q, s1) == canonical_form(family, q, s2)


def enumerate_representatives(family: GroupFamily, n: int, q: int) -> list[tuple[int, ...]]:
    """All conjugacy classes of order-q cyclic subgroups, one representative each.

    Output is lex-sorted and consists of canonical forms.  Candidates are the
    sorted tuples in the canonical range (folded residues for B/C2/D, plain
    residues with zero sum for A), which is exactly the image of
    canonical_form, so keeping its fixed points enumerates every class once.
    """
    fam = GroupFamily(family.kind, n) if family.n != n else family
    if q < 1:
        raise ZeroOrder(f"group order must be a positive integer, got {q!r}")
    reps: list[tuple[int, ...]] = []
    if fam.kind is Family.A:
        for cand in combinations_with_replacement(range(q), n + 1):
            if sum(cand) % q != 0:
                continue
            if math.gcd(q, *cand) != 1:
                continue
            if canonical_form(fam, q, cand) == cand:
                reps.append(cand)
    else:
        half = q // 2
        for cand in combinations_with_replacement(range(half + 1), n):
            if math.gcd(q, *cand) != 1:
                continue
            if canonical_form(fam, q, cand) == cand:
                reps.append(cand)
    return reps


def is_manifold(family: GroupFamily, q: int, s: Sequence[int]) -> bool:
    """Whether the quotient by the cyclic subgroup (q, s) is free of singular points.

    The action is free iff q == 1, or the family is D (odd spheres) and every
    exponent is coprime to q.
    """
    if q < 1:
        raise ZeroOrder(f"group order must be a positive integer, got {q!r}")
    if q == 1:
        return True
    s = _normalize_s(family, q, s)
    if family.kind is Family.D:
        return all(math.gcd(x, q) == 1 for x in s)
    return False


def singularity_profile(q: int, s: Sequence[int]) -> tuple[int, ...]:
    """Sorted multiset of gcd(s_i, q): the local isotropy orders of the quotient."""
    if q < 1:
        raise ZeroOrder(f"group order must be a positive integer, got {q!r}")
    return tuple(sorted(math.gcd(int(x) % q, q) for x in s))


if __name__ == "__main__":
    fam = GroupFamily(Family.D, 2)
    print("representatives of order-4 subgroups for D, n=2:",
          enumerate_representatives(fam, 2, 4))
    print("canonical form of (D, 7, (2, 4)):", canonical_form(GroupFamily(Family.D, 2), 7, (2, 4)))
    A2 = GroupFamily(Family.A, 2)
    L = make_lattice(A2, 6, (0, 1))
    print("(6, 0, -6) in L*_{6,(0,1,5)}:", membership(L, (6, 0, -6)))
