"""Exhaustive search for isospectral, non-isometric cyclic quotients.

Two quotients with the same space and group order are isospectral exactly
when their congruence lattices have identical shell counts in the family
norm, so the search reduces to grouping lattices by theta series.  For each
order q the conjugacy-class representatives are enumerated, paired with the
character range (u = 0 only, or 1 <= u <= floor(q/2) with u and q - u
identified), bucketed by a theta fingerprint of (n+1)q coefficients, and
confirmed by an exact comparison at a deeper truncation.  Emitted families
have at least two members; members are (canonical s, u) pairs, kept
distinct across different u even when the s parts coincide.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .spectrum import SpaceKind, space_lattice
from .theta_counting import shell_counts, theta_truncated
from .weight_lattice import (
    CongruenceLattice,
    Family,
    NormKind,
    default_norm,
    enumerate_representatives,
    is_manifold,
    make_code_lattice,
    singularity_profile,
)


class RankMismatch(ValueError):
    """Theta comparison across incompatible ambient lattices or norms."""


class UnknownFormat(ValueError):
    """Requested report format is not one of json, csv, md."""


class UMode(Enum):
    UNTWISTED_ONLY = "untwisted"
    TWISTED_RANGE = "twisted"


@dataclass(frozen=True)
class SearchConfig:
    space: SpaceKind
    q_range: tuple[int, int]
    u_mode: UMode = UMode.UNTWISTED_ONLY
    depth_factor: int = 2

    def __post_init__(self) -> None:
        lo, hi = self.q_range
        if lo < 1 or hi < lo:
            raise ValueError(f"bad q range {self.q_range}; need 1 <= lo <= hi")
        if self.depth_factor < 1:
            raise ValueError("depth factor must be a positive integer")


@dataclass(frozen=True)
class FamilyMember:
    s: tuple[int, ...]
    u: int


@dataclass(frozen=True)
class IsospectralFamily:
    space: SpaceKind
    q: int
    members: tuple[FamilyMember, ...]


def theta_equal(L1: CongruenceLattice, L2: CongruenceLattice, depth: int = 2) -> bool:
    """Whether two lattices share their first depth*(n+1)*q theta coefficients.

    Exact for homogeneous lattices already at depth 1, since (n+1)q
    coefficients determine the rational form; depth 2 is the conservative
    default for the affine case.  Lattices with different q are never
    isospectral (the order is itself a spectral invariant) and compare
    unequal without error.
    """
    if depth < 1:
        raise ValueError("comparison depth must be a positive integer")
    for L in (L1, L2):
        if not isinstance(L, CongruenceLattice):
            raise RankMismatch("theta comparison is defined for congruence lattices")
    f1, f2 = L1.family, L2.family
    if f1.ambient_dim != f2.ambient_dim:
        raise RankMismatch(
            f"ambient dimensions differ: {f1.ambient_dim} vs {f2.ambient_dim}"
        )
    if (f1.kind is Family.A) != (f2.kind is Family.A):
        raise RankMismatch("cannot compare zero-sum and full-rank lattices")
    if default_norm(f1) is not default_norm(f2):
        raise RankMismatch("lattices count shells in different norms")
    if L1.even_sublattice != L2.even_sublattice:
        raise RankMismatch("cannot compare a lattice with its even-sum sublattice")
    if L1.q != L2.q:
        return False
    count = depth * (f1.n + 1) * L1.q
    return theta_truncated(L1, count).coeffs == theta_truncated(L2, count).coeffs


def is_isospectral(
    space: SpaceKind,
    first: tuple[int, Sequence[int], int],
    second: tuple[int, Sequence[int], int],
    depth: int = 2,
) -> bool:
    """Whether the quotients given by (q, s, u) triples are isospectral."""
    q1, s1, u1 = first
    q2, s2, u2 = second
    return theta_equal(
        space_lattice(space, q1, s1, u1), space_lattice(space, q2, s2, u2), depth
    )


def _character_range(q: int, u_mode: UMode) -> tuple[int, ...]:
    if u_mode is UMode.UNTWISTED_ONLY:
        return (0,)
    return tuple(range(1, q // 2 + 1))  # u and q - u give equal theta


def _search_single_q(config: SearchConfig, q: int) -> list[IsospectralFamily]:
    space = config.space
    fam = space.family
    n = fam.n
    reps = enumerate_representatives(fam, n, q)
    us = _character_range(q, config.u_mode)
    fingerprint_depth = (n + 1) * q
    exact_depth = config.depth_factor * (n + 1) * q
    buckets: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
    for s in reps:
        for u in us:
            L = space_lattice(space, q, s, u)
            key = theta_truncated(L, fingerprint_depth).coeffs
            buckets.setdefault(key, []).append((s, u))
    families: list[IsospectralFamily] = []
    for key in sorted(buckets):
        group = buckets[key]
        if len(group) < 2:
            continue
        refined: dict[tuple[int, ...], list[tuple[tuple[int, ...], int]]] = {}
        for s, u in group:
            L = space_lattice(space, q, s, u)
            refined.setdefault(theta_truncated(L, exact_depth).coeffs, []).append((s, u))
        for subkey in sorted(refined):
            members = sorted(refined[subkey])
            if len(members) >= 2:
                families.append(
                    IsospectralFamily(
                        space=space,
                        q=q,
                        members=tuple(FamilyMember(s=s, u=u) for s, u in members),
                    )
                )
    families.sort(key=lambda f: tuple((m.s, m.u) for m in f.members))
    return families


def search(config: SearchConfig, threads: int = 1) -> tuple[IsospectralFamily, ...]:
    """All isospectral families in the configured range, ordered by q then lex."""
    qlo, qhi = config.q_range
    qs = range(qlo, qhi + 1)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda q: _search_single_q(config, q), qs))
    else:
        chunks = [_search_single_q(config, q) for q in qs]
    out: list[IsospectralFamily] = []
    for chunk in chunks:
        out.extend(chunk)
    return tuple(out)


def duality_check(
    even_families: Iterable[IsospectralFamily],
    odd_families: Iterable[IsospectralFamily],
) -> bool:
    """Whether two search results define the same family partition of (q, s, u).

    The even sphere S^{2n} and odd sphere S^{2n-1} read the same congruence
    lattices in the same norm, so their searches must agree exactly.
    """

    def key(families: Iterable[IsospectralFamily]) -> list:
        return sorted(
            (f.q, tuple((m.s, m.u) for m in f.members)) for f in families
        )

    return key(even_families) == key(odd_families)


# ---------------------------------------------------------------------------
# the fixed non-cyclic example: two almost-conjugate 8-element sign groups


_CODE_WORDS = ("110000", "001100", "000011")
_CODE_WORDS_PRIME = ("110000", "101000", "111111")

# element-by-element pairing realizing the almost-conjugacy
_PAIRING = (
    ("e", "e", "000000", "000000"),
    ("g1", "g1'", "110000", "110000"),
    ("g2", "g2'", "001100", "101000"),
    ("g3", "g1'g2'", "000011", "011000"),
    ("g1g2", "g2'g3'", "111100", "010111"),
    ("g1g3", "g1'g2'g3'", "110011", "100111"),
    ("g2g3", "g1'g3'", "001111", "001111"),
    ("g1g2g3", "g3'", "111111", "111111"),
)


@dataclass(frozen=True)
class NonCyclicReport:
    one_norm_depth: int
    one_norm_equal: bool
    two_norm_budget: int
    two_norm_equal: bool
    pairing: tuple[tuple[str, str, bool], ...]
    bijection_complete: bool

    @property
    def passed(self) -> bool:
        return (
            self.one_norm_equal
            and self.two_norm_equal
            and self.bijection_complete
            and all(ok for _, _, ok in self.pairing)
        )


def _sign_word_eigenvalues(word: str) -> tuple[int, int]:
    # a sign pattern on 6 planes acts on R^12; entry c_i = 1 contributes the
    # eigenvalue -1 twice, c_i = 0 contributes +1 twice
    weight = sum(int(c) for c in word)
    return (2 * weight, 12 - 2 * weight)  # (count of -1, count of +1)


def noncyclic_example_check(
    one_norm_depth: int = 60, two_norm_budget: int = 50
) -> NonCyclicReport:
    """Verify the fixed pair of non-cyclic sign groups in rank 6.

    Checks that the two code lattices are one-norm isospectral to the given
    depth, two-norm isospectral up to the given squared norm, and that the
    fixed element pairing matches eigenvalue multisets (almost-conjugacy).
    """
    LC = make_code_lattice(_CODE_WORDS)
    LCp = make_code_lattice(_CODE_WORDS_PRIME)
    one_equal = shell_counts(LC, one_norm_depth + 1, NormKind.ONE) == shell_counts(
        LCp, one_norm_depth + 1, NormKind.ONE
    )
    two_equal = shell_counts(LC, two_norm_budget + 1, NormKind.TWO) == shell_counts(
        LCp, two_norm_budget + 1, NormKind.TWO
    )
    pairing = tuple(
        (a, b, _sign_word_eigenvalues(wa) == _sign_word_eigenvalues(wb))
        for a, b, wa, wb in _PAIRING
    )
    lhs = sorted(tuple(int(c) for c in wa) for _, _, wa, _ in _PAIRING)
    rhs = sorted(tuple(int(c) for c in wb) for _, _, _, wb in _PAIRING)
    complete = lhs == sorted(LC.words()) and rhs == sorted(LCp.words())
    return NonCyclicReport(
        one_norm_depth=one_norm_depth,
        one_norm_equal=one_equal,
        two_norm_budget=two_norm_budget,
        two_norm_equal=two_equal,
        pairing=pairing,
        bijection_complete=complete,
    )


# ---------------------------------------------------------------------------
# report rendering


FAMILY_REPORT_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["space", "q", "families"],
        "additionalProperties": False,
        "properties": {
            "space": {"type": "string"},
            "q": {"type": "integer", "minimum": 1},
            "families": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["members"],
                    "additionalProperties": False,
                    "properties": {
                        "members": {
                            "type": "array",
                            "minItems": 2,
                            "items": {
                                "type": "object",
                                "required": [
                                    "s",
                                    "u",
                                    "manifold",
                                    "singularity_profile",
                                ],
                                "additionalProperties": False,
                                "properties": {
                                    "s": {
                                        "type": "array",
                                        "items": {"type": "integer"},
                                    },
                                    "u": {"type": "integer", "minimum": 0},
                                    "manifold": {"type": "boolean"},
                                    "singularity_profile": {
                                        "type": "array",
                                        "items": {"type": "integer", "minimum": 1},
                                    },
                                },
                            },
                        }
                    },
                },
            },
        },
    },
}


def _member_facts(family: IsospectralFamily, member: FamilyMember) -> tuple[bool, tuple[int, ...]]:
    fam = family.space.family
    return (
        is_manifold(fam, family.q, member.s),
        singularity_profile(family.q, member.s),
    )


def family_report(families: Sequence[IsospectralFamily], format: str = "md") -> str:
    """Render families as json, csv, or md; deterministic for a given input."""
    if format == "json":
        docs: list[dict] = []
        index: dict[tuple[str, int], int] = {}
        for fam in families:
            key = (fam.space.cli_name, fam.q)
            if key not in index:
                index[key] = len(docs)
                docs.append({"space": key[0], "q": key[1], "families": []})
            docs[index[key]]["families"].append(
                {
                    "members": [
                        {
                            "s": list(m.s),
                            "u": m.u,
                            "manifold": _member_facts(fam, m)[0],
                            "singularity_profile": list(_member_facts(fam, m)[1]),
                        }
                        for m in fam.members
                    ]
                }
            )
        return json.dumps(docs, indent=2)
    if format == "csv":
        lines = ["space,q,family,s,u,manifold,singularity_profile"]
        for i, fam in enumerate(families, 1):
            for m in fam.members:
                manifold, profile = _member_facts(fam, m)
                lines.append(
                    ",".join(
                        (
                            fam.space.cli_name,
                            str(fam.q),
                            str(i),
                            " ".join(map(str, m.s)),
                            str(m.u),
                            "true" if manifold else "false",
                            " ".join(map(str, profile)),
                        )
                    )
                )
        return "\n".join(lines)
    if format == "md":
        header = "| family | space | q | s | u | manifold | singularities |"
        rule = "|---:|:---|---:|:---|---:|:---|:---|"
        lines = [header, rule]
        for i, fam in enumerate(families, 1):
            for m in fam.members:
                manifold, profile = _member_facts(fam, m)
                lines.append(
                    "| {} | {} | {} | [{}] | {} | {} | [{}] |".format(
                        i,
                        fam.space.cli_name,
                        fam.q,
                        ", ".join(map(str, m.s)),
                        m.u,
                        "yes" if manifold else "no",
                        ", ".join(map(str, profile)),
                    )
                )
        return "\n".join(lines)
    raise UnknownFormat(f"unknown report format {format!r}; use json, csv, or md")


if __name__ == "__main__":
    from .spectrum import odd_sphere

    config = SearchConfig(
        space=odd_sphere(2), q_range=(1, 7), u_mode=UMode.TWISTED_RANGE
    )
    found = search(config)
    print(family_report(found, "md"))
    report = noncyclic_example_check()
    print("non-cyclic example passed:", report.passed)
