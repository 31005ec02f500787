"""Shell counts, theta series, the rational form, and the closed-form oracle.

Three routes to the same counts are cross-checked: box enumeration is the
reference semantics, the residue-class DP is the production path, and the
root-of-unity average is the independent closed form.
"""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isospec.theta_counting import (
    AffineUnsupported,
    RationalForm,
    ehrhart_form,
    shell_count,
    shell_count_box,
    shell_counts,
    theta_truncated,
    zagier_theta,
)
from isospec.weight_lattice import (
    Family,
    GcdViolation,
    GroupFamily,
    NormKind,
    make_code_lattice,
    make_lattice,
)

A2 = GroupFamily(Family.A, 2)
B2 = GroupFamily(Family.B, 2)
C2 = GroupFamily(Family.C2, 2)
D1 = GroupFamily(Family.D, 1)
D2 = GroupFamily(Family.D, 2)
D3 = GroupFamily(Family.D, 3)


def _random_s(rng: random.Random, q: int, n: int) -> tuple[int, ...]:
    while True:
        s = tuple(rng.randrange(q) for _ in range(n))
        if math.gcd(q, *s) == 1:
            return s


# ---------------------------------------------------------------------------
# frozen small oracles


def test_full_plane_diamond_shells():
    Z2 = make_lattice(D2, 1, (0, 0))
    assert shell_counts(Z2, 5) == (1, 4, 8, 12, 16)


def test_rank_one_harness():
    Z = make_lattice(D1, 1, (0,))
    assert shell_counts(Z, 5) == (1, 2, 2, 2, 2)
    even = make_lattice(D1, 2, (1,))
    assert shell_counts(even, 5) == (1, 0, 2, 0, 2)


def test_affine_line_shells():
    # {(a, b) : b == 1 mod 4}: one vector at norm 1, then 2, 3, 4, ...
    L = make_lattice(D2, 4, (0, 1), u=1)
    assert shell_count(L, 1) == 1
    assert shell_count(L, 2) == 2
    assert shell_counts(L, 6) == (0, 1, 2, 3, 4, 5)


def test_zero_shell_tracks_u():
    assert shell_counts(make_lattice(D2, 5, (1, 2)), 1) == (1,)
    assert shell_counts(make_lattice(D2, 5, (1, 2), u=2), 1) == (0,)


def test_max_norm_rings():
    # full Z^2 under the max norm: ring k has 8k points
    Z2 = make_lattice(C2, 1, (0, 0))
    assert shell_counts(Z2, 5, NormKind.INF) == (1, 8, 16, 24, 32)


def test_shell_count_argument_checks():
    L = make_lattice(D2, 5, (1, 2))
    with pytest.raises(ValueError):
        shell_count(L, -1)
    with pytest.raises(ValueError):
        shell_count_box(L, -2)
    assert shell_counts(L, 0) == ()
    with pytest.raises(ValueError):
        theta_truncated(L, 0)


# ---------------------------------------------------------------------------
# DP versus box enumeration


def test_dp_matches_box_enumeration():
    rng = random.Random(20260814)
    cases = []
    for q in (1, 2, 3, 4, 5, 6, 7):
        cases.append((D2, q, _random_s(rng, q, 2), rng.randrange(q), False))
        cases.append((B2, q, _random_s(rng, q, 2), 0, False))
        cases.append((D3, q, _random_s(rng, q, 3), rng.randrange(q), False))
        cases.append((A2, q, _random_s(rng, q, 2), rng.randrange(q), False))
        cases.append((C2, q, _random_s(rng, q, 2), rng.randrange(q), rng.random() < 0.5))
    for fam, q, s, u, even in cases:
        L = make_lattice(fam, q, s, u=u, even_sublattice=even)
        depth = 8
        got = shell_counts(L, depth)
        want = tuple(shell_count_box(L, k) for k in range(depth))
        assert got == want, (fam.kind, q, s, u, even)


def test_two_norm_counts_match_box():
    L = make_lattice(D2, 5, (1, 2), u=1)
    got = shell_counts(L, 12, NormKind.TWO)
    want = tuple(shell_count_box(L, k, NormKind.TWO) for k in range(12))
    assert got == want


def test_code_lattice_counts_match_box():
    code = make_code_lattice(("110000", "001100", "000011"))
    for which, depth in ((NormKind.ONE, 7), (NormKind.TWO, 10)):
        got = shell_counts(code, depth, which)
        want = tuple(shell_count_box(code, k, which) for k in range(depth))
        assert got == want


# ---------------------------------------------------------------------------
# theta indexing


def test_family_a_theta_uses_even_shells():
    L = make_lattice(A2, 6, (0, 1, 5))
    th = theta_truncated(L, 6).coeffs
    for k in range(6):
        assert th[k] == shell_count(L, 2 * k)
    # odd shells are empty on the zero-sum lattice
    assert all(shell_count(L, 2 * k + 1) == 0 for k in range(5))


def test_theta_leading_coefficient():
    assert theta_truncated(make_lattice(D2, 7, (1, 2)), 3).coeffs[0] == 1
    assert theta_truncated(make_lattice(D2, 7, (1, 2), u=3), 3).coeffs[0] == 0


def test_theta_of_permuted_lattice_pair():
    # same lattice up to a coordinate permutation, so identical series
    L1 = make_lattice(A2, 6, (0, 1, 5))
    L2 = make_lattice(A2, 6, (1, 2, 3))
    assert theta_truncated(L1, 24).coeffs == theta_truncated(L2, 24).coeffs


# ---------------------------------------------------------------------------
# rational form


def test_rank_one_rational_form():
    form = ehrhart_form(make_lattice(D1, 1, (0,)))
    assert (form.q, form.rank, form.numerator) == (1, 1, (1, 1))


def test_rational_form_frozen_numerators():
    form = ehrhart_form(make_lattice(D2, 4, (1, 2)))
    assert form.numerator == (1, 1, 3, 7, 8, 12, 12, 8, 7, 3, 1, 1)
    hp = ehrhart_form(make_lattice(C2, 3, (0, 1), even_sublattice=True))
    assert hp.numerator == (1, 1, 3, 8, 10, 8, 3, 1, 1)


def test_rational_form_round_trip():
    for L in (
        make_lattice(D2, 5, (1, 2)),
        make_lattice(D3, 4, (1, 2, 3)),
        make_lattice(A2, 6, (0, 1, 5)),
        make_lattice(C2, 4, (0, 1), even_sublattice=True),
    ):
        form = ehrhart_form(L)
        depth = 3 * (form.rank + 1) * form.q
        assert len(form.numerator) == (form.rank + 1) * form.q
        assert form.theta_coefficients(depth) == theta_truncated(L, depth).coeffs


def test_rational_form_rejects_affine():
    with pytest.raises(AffineUnsupported):
        ehrhart_form(make_lattice(D2, 4, (0, 1), u=1))
    with pytest.raises(TypeError):
        ehrhart_form(make_code_lattice(("11",)))


def test_numerator_mass_matches_ball_volume():
    # Phi(ql) ~ p(1) l^rank / rank! while the one-norm ball holds
    # 2^rank (ql)^rank / (rank! q) members, so p(1) = 2^rank q^rank
    for L in (make_lattice(D2, 4, (1, 2)), make_lattice(D2, 7, (1, 3))):
        form = ehrhart_form(L)
        assert sum(form.numerator) == (2 * L.q) ** form.rank


def test_cumulative_counts_are_quasipolynomial():
    for L in (
        make_lattice(D2, 5, (1, 2)),
        make_lattice(A2, 4, (0, 1, 3)),
        make_lattice(C2, 3, (1, 2), even_sublattice=True),
    ):
        rank = L.family.n
        q = L.q
        depth = (2 * rank + 4) * q
        coeffs = theta_truncated(L, depth).coeffs
        phi = []
        run = 0
        for c in coeffs:
            run += c
            phi.append(run)
        # degree-rank quasipolynomial: (rank+1)-st difference along each
        # residue class vanishes once the numerator degree is cleared
        for r in range(q):
            samples = [phi[r + q * j] for j in range(rank + 1, 2 * rank + 3) if r + q * j < depth]
            diff = samples
            for _ in range(rank + 1):
                diff = [b - a for a, b in zip(diff, diff[1:])]
            assert all(d == 0 for d in diff), (L.q, L.s, r)


# ---------------------------------------------------------------------------
# closed form


def test_zagier_rank_one():
    assert zagier_theta(1, (0,), 5).coeffs == (1, 2, 2, 2, 2)


def test_zagier_matches_dp():
    for q, s in ((4, (1, 2)), (7, (1, 2)), (5, (1, 2, 3)), (9, (1, 4))):
        n = len(s)
        L = make_lattice(GroupFamily(Family.D, n), q, s)
        K = 2 * (n + 1) * q
        assert zagier_theta(q, s, K).coeffs == theta_truncated(L, K).coeffs


def test_zagier_argument_checks():
    with pytest.raises(GcdViolation):
        zagier_theta(6, (2, 4), 5)
    with pytest.raises(ValueError):
        zagier_theta(0, (1,), 5)
    with pytest.raises(ValueError):
        zagier_theta(5, (1, 2), 0)


# ---------------------------------------------------------------------------
# properties


@st.composite
def _d_lattice(draw):
    n = draw(st.integers(1, 3))
    q = draw(st.integers(1, 9))
    s = draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n))
    if math.gcd(q, *s) != 1:
        s[0] = 1
    u = draw(st.integers(0, q - 1))
    return q, tuple(s), u


@given(_d_lattice())
def test_theta_symmetric_under_u_negation(params):
    q, s, u = params
    fam = GroupFamily(Family.D, len(s))
    t1 = theta_truncated(make_lattice(fam, q, s, u=u), 2 * q + 6).coeffs
    t2 = theta_truncated(make_lattice(fam, q, s, u=q - u), 2 * q + 6).coeffs
    assert t1 == t2


@given(_d_lattice(), st.data())
def test_theta_invariant_under_signed_permutations(params, data):
    q, s, u = params
    fam = GroupFamily(Family.D, len(s))
    perm = data.draw(st.permutations(range(len(s))))
    signs = data.draw(
        st.lists(st.sampled_from((1, -1)), min_size=len(s), max_size=len(s))
    )
    image = tuple((e * s[p]) % q for e, p in zip(signs, perm))
    t1 = theta_truncated(make_lattice(fam, q, s, u=u), 2 * q + 4).coeffs
    t2 = theta_truncated(make_lattice(fam, q, image, u=u), 2 * q + 4).coeffs
    assert t1 == t2


@given(_d_lattice())
def test_counts_are_nonnegative_and_start_correctly(params):
    q, s, u = params
    fam = GroupFamily(Family.D, len(s))
    L = make_lattice(fam, q, s, u=u)
    th = theta_truncated(L, q + 5)
    assert all(c >= 0 for c in th.coeffs)
    assert th.coeffs[0] == (1 if u % q == 0 else 0)


def test_rational_form_type_shape():
    form = ehrhart_form(make_lattice(D2, 3, (1, 2)))
    assert isinstance(form, RationalForm)
    assert form.theta_coefficients(1) == (1,)
