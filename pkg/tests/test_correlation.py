import random

import numpy as np
import pytest

from negaspec.constructions import bilinear_negabent, quadratic_negabent
from negaspec.core import GenFunction, ZqPoint, all_points, point_of
from negaspec.correlation import (
    complementary_nac,
    correlation_table,
    duality_check,
    is_negabent_via_nac,
    nac,
    nac_restriction_decomposition,
    nac_spectral_form,
    ncc,
    spectral_complement,
)
from negaspec.transforms import is_negabent


def _random_function(rng, q, n):
    return GenFunction(
        q, n, tuple(rng.randrange(2 * q) for _ in range(q**n))
    )


def _all_functions(q, n):
    m, npts = 2 * q, q**n
    for idx in range(m**npts):
        yield GenFunction(
            q, n, tuple((idx // m**k) % m for k in range(npts - 1, -1, -1))
        )


def test_autocorrelation_at_origin():
    rng = random.Random(1)
    for q, n in ((2, 1), (2, 2), (3, 1), (4, 2), (5, 1)):
        f = _random_function(rng, q, n)
        origin = ZqPoint((0,) * n, q)
        assert nac(f, origin, "exact").equals_integer(q**n)
        assert abs(nac(f, origin, "float") - q**n) < 1e-9 * q**n


def test_backends_agree_pointwise():
    rng = random.Random(2)
    for q, n in ((2, 2), (3, 1), (3, 2), (4, 1), (5, 1)):
        f = _random_function(rng, q, n)
        g = _random_function(rng, q, n)
        for u in all_points(q, n):
            exact = ncc(f, g, u, "exact").to_complex()
            assert abs(exact - ncc(f, g, u, "float")) < 1e-9 * q**n


def test_ncc_validation():
    f = GenFunction(2, 1, (0, 0))
    g = GenFunction(3, 1, (0, 0, 0))
    with pytest.raises(ValueError):
        ncc(f, g, ZqPoint((0,), 2))
    with pytest.raises(ValueError):
        ncc(f, f, ZqPoint((0,), 3))
    with pytest.raises(ValueError):
        ncc(f, f, ZqPoint((0,), 2), backend="fancy")


def test_quadratic_autocorrelation_vanishes_off_origin():
    f = quadratic_negabent(4, 2)
    for u in all_points(4, 2):
        a = nac(f, u, "exact")
        if u.is_zero():
            assert a.equals_integer(16)
        else:
            assert a.is_zero()
            assert abs(nac(f, u, "float")) < 1e-9


def test_nac_route_matches_transform_route_exhaustively():
    for f in _all_functions(2, 1):
        assert (
            is_negabent_via_nac(f).negabent
            == is_negabent(f, backend="exact").negabent
        )


def test_nac_route_witness_is_first_nonzero_shift():
    f = GenFunction(3, 1, (0, 0, 0))
    v = is_negabent_via_nac(f)
    assert not v.negabent
    # C_f(1) counts carry signs: +1 +1 -1 = 1 != 0
    assert v.witness == ZqPoint((1,), 3)
    assert nac(f, v.witness, "exact").equals_integer(1)


def test_correlation_table_contents():
    f = GenFunction(3, 1, (0, 1, 5))
    t = correlation_table(f, backend="both")
    assert t.q == 3 and t.n == 1
    assert len(t.exact) == 3 and t.floats.shape == (3,)
    assert t.exact[0].equals_integer(3)
    for e, fl in zip(t.exact, t.floats):
        assert abs(e.to_complex() - fl) < 1e-9
    with pytest.raises(ValueError):
        correlation_table(f, backend="fancy")


def test_cross_correlation_table():
    rng = random.Random(3)
    f = _random_function(rng, 2, 2)
    g = _random_function(rng, 2, 2)
    t = correlation_table(f, g, backend="float")
    assert t.exact is None
    for i, u in enumerate(all_points(2, 2)):
        assert abs(t.floats[i] - ncc(f, g, u, "float")) < 1e-12


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_duality_random_pairs(q, n):
    rng = random.Random(100 * q + n)
    for _ in range(5):
        f = _random_function(rng, q, n)
        g = _random_function(rng, q, n)
        report = duality_check(f, g)
        assert report.exact_forward
        assert report.exact_inverse
        assert report.float_error_forward < 1e-8
        assert report.float_error_inverse < 1e-8
        assert report.passed


def test_duality_self_pair():
    f = bilinear_negabent(3)
    report = duality_check(f, f)
    assert report.passed


def test_spectral_form_matches_direct_autocorrelation():
    rng = random.Random(4)
    for q, n in ((2, 2), (3, 1), (3, 2), (4, 1)):
        f = _random_function(rng, q, n)
        for z in all_points(q, n):
            direct = nac(f, z, "float")
            assert abs(nac_spectral_form(f, z) - direct) < 1e-8 * q**n
    with pytest.raises(ValueError):
        nac_spectral_form(GenFunction(2, 1, (0, 0)), ZqPoint((0,), 3))


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_restriction_decomposition_all_splits(q, n):
    rng = random.Random(10 * q + n)
    for _ in range(3):
        f = _random_function(rng, q, n)
        for r in range(1, n):
            s = n - r
            for u in all_points(q, r):
                for w in all_points(q, s):
                    result = nac_restriction_decomposition(f, u, w)
                    assert result.agree
                    assert (result.direct - result.decomposed).is_zero()


def test_restriction_decomposition_validation():
    f = GenFunction(3, 2, (0,) * 9)
    with pytest.raises(ValueError):
        nac_restriction_decomposition(f, ZqPoint((0,), 2), ZqPoint((0,), 3))
    with pytest.raises(ValueError):
        nac_restriction_decomposition(f, ZqPoint((0, 0), 3), ZqPoint((0,), 3))


def test_flat_pairs_are_complementary():
    # any two flat functions complement each other: each power spectrum
    # is identically 1, so the sum is identically 2
    pairs = [
        (quadratic_negabent(2, 2), bilinear_negabent(2)),
        (bilinear_negabent(3), bilinear_negabent(3)),
        (quadratic_negabent(4, 1), quadratic_negabent(4, 1)),
    ]
    for f, g in pairs:
        assert complementary_nac(f, g).complementary
        assert spectral_complement(f, g).complementary


def test_self_pairing_matches_flatness():
    # C_f + C_f vanishes off the origin exactly when C_f does
    for f in _all_functions(2, 1):
        verdict = complementary_nac(f, f)
        assert verdict.complementary == is_negabent_via_nac(f).negabent


def test_complement_routes_agree_on_all_pairs():
    funcs = list(_all_functions(2, 1))
    for f in funcs:
        for g in funcs:
            assert (
                complementary_nac(f, g).complementary
                == spectral_complement(f, g).complementary
            )


def test_non_complementary_pair_has_witness():
    f = GenFunction(3, 1, (0, 0, 0))
    verdict = complementary_nac(f, f)
    assert not verdict.complementary
    assert verdict.witness == ZqPoint((1,), 3)
    spectral = spectral_complement(f, f)
    assert not spectral.complementary
    assert spectral.witness == ZqPoint((0,), 3)


def test_complement_validation():
    f = GenFunction(2, 1, (0, 0))
    g = GenFunction(2, 2, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        complementary_nac(f, g)
    with pytest.raises(ValueError):
        spectral_complement(f, g)
