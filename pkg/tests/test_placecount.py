"""Place counts: fiber tallies, singular detection, order-2 quotient counts."""

import pytest

from hermquot import models
from hermquot.autgrp import AffineAlgMap
from hermquot.autgrp import stabilizer_map
from hermquot.gfield import CheckError, ParameterError, make_field
from hermquot.placecount import (
    affine_points,
    family_III_place_count,
    maximality_check,
    quotient_places_order2,
    rational_places,
    singular_rational_points,
)
from hermquot.polyring import BiPoly

_CTX = {}


def ctx(p, h):
    if (p, h) not in _CTX:
        _CTX[(p, h)] = make_field(p, h)
    return _CTX[(p, h)]


def test_hermitian_counts_are_q_cubed_plus_one():
    for p, h in [(2, 1), (3, 1), (2, 2), (2, 3)]:
        c = ctx(p, h)
        q = c.q
        tally = rational_places(models.hermitian_model(c))
        assert tally.k == 1
        assert tally.places_at_infinity == 1
        assert tally.affine_points == q**3
        assert tally.N == q**3 + 1
        assert tally.singular_rational_points == ()


def test_affine_count_matches_brute_force():
    # independent double-loop oracle on a field small enough to enumerate
    c = ctx(3, 1)
    m = models.hermitian_model(c)
    elems = list(c.subfield_encodings(2 * c.h))
    brute = sum(1 for x in elems for y in elems if m.F.evaluate(x, y) == 0)
    assert affine_points(m, 1).affine_points == brute == 27


def test_hermitian_k2_count():
    # maximal over F_{q^2} forces N_4 = q^4 + 1 - 2g q^2; frozen values
    assert affine_points(models.hermitian_model(ctx(2, 1)), 2).N == 9
    assert affine_points(models.hermitian_model(ctx(3, 1)), 2).N == 28


def test_k2_counts_sit_in_the_weil_window():
    cases = [
        (models.hermitian_model(ctx(2, 2)), 4),
        (models.family_I_model(ctx(2, 3), models.admissible_b(ctx(2, 3), "family_I")[0]), 8),
        (models.family_II_model(ctx(3, 2), models.admissible_b(ctx(3, 2), "family_II")[0]), 9),
    ]
    for m, q in cases:
        n2 = rational_places(m).N
        n4 = affine_points(m, 2).N
        g = m.claimed_genus
        assert n4 >= n2
        assert abs(n4 - (q**4 + 1)) <= 2 * g * q**2


def test_family_I_counts():
    c = ctx(2, 3)
    for b in models.admissible_b(c, "family_I"):
        rep = maximality_check(models.family_I_model(c, b))
        assert rep["N"] == 129
        assert rep["expected"] == 129
        assert rep["maximal"]
        assert rep["path"] == "direct"
    c = ctx(3, 3)
    rep = maximality_check(models.family_I_model(c, models.admissible_b(c, "family_I")[0]))
    assert rep["N"] == 2188 and rep["maximal"]


def test_family_II_counts():
    c = ctx(3, 2)
    for b in models.admissible_b(c, "family_II"):
        rep = maximality_check(models.family_II_model(c, b))
        assert rep["N"] == 136 and rep["maximal"]
    c = ctx(5, 2)
    rep = maximality_check(models.family_II_model(c, models.admissible_b(c, "family_II")[0]))
    assert rep["N"] == 1126 and rep["maximal"]


def test_family_III_counts():
    frozen = {4: (25, 32, 0, 16), 8: (161, 256, 0, 64)}
    for h in (2, 3):
        c = ctx(2, h)
        n, cov, fx, tw = frozen[c.q]
        for b in models.admissible_b(c, "family_III"):
            rep = family_III_place_count(c, b)
            assert rep["N"] == n
            assert rep["affine_cover"] == cov
            assert rep["fixed"] == fx
            assert rep["twisted"] == tw
            assert rep["closed_form"] == n
            assert rep["maximal"]


def test_family_III_model_routes_through_quotient():
    c = ctx(2, 2)
    m = models.family_III_model(c, models.admissible_b(c, "family_III")[0])
    rep = maximality_check(m)
    assert rep["path"] == "quotient"
    assert rep["N"] == 25 and rep["maximal"]


def test_family_III_plane_model_is_singular():
    c = ctx(2, 2)
    m = models.family_III_model(c, models.admissible_b(c, "family_III")[0])
    assert singular_rational_points(m, 1)
    with pytest.raises(CheckError):
        rational_places(m)


def test_smooth_models_have_no_singular_points():
    cases = [
        models.hermitian_model(ctx(2, 2)),
        models.subcover_center(ctx(2, 3)),
        models.subcover_noncenter(ctx(3, 2)),
        models.fpp_char2(ctx(2, 2)),
        models.family_I_model(ctx(2, 3), models.admissible_b(ctx(2, 3), "family_I")[0]),
        models.family_II_model(ctx(3, 2), models.admissible_b(ctx(3, 2), "family_II")[0]),
    ]
    for m in cases:
        assert singular_rational_points(m, 1) == []


def test_quotient_by_central_involution_matches_center_subcover():
    # Hermitian q=4 mod (x, y+1) has the same count as the central subcover
    c = ctx(2, 2)
    hm = models.hermitian_model(c)
    deck = stabilizer_map(c, 0, 1, 1, "plus", hm.variables)
    rep = quotient_places_order2(hm, deck)
    assert rep == {"affine_cover": 64, "fixed": 0, "twisted": 0, "N": 33}
    assert rep["N"] == rational_places(models.subcover_center(c)).N


def test_quotient_of_center_subcover_matches_family_I():
    c = ctx(2, 3)
    cen = models.subcover_center(c)
    names = cen.variables
    for b in models.admissible_b(c, "family_I")[:2]:
        bn = int(b)
        u = c.add(c.mul(bn, bn), bn)
        deck = AffineAlgMap(
            BiPoly(c, {(1, 0): 1}, names),
            BiPoly(c, {(0, 1): 1, (0, 0): u}, names),
        )
        rep = quotient_places_order2(cen, deck)
        direct = rational_places(models.family_I_model(c, bn))
        assert rep["N"] == direct.N == 129
        assert rep["twisted"] == 0


def test_quotient_rejects_identity_deck():
    c = ctx(2, 2)
    hm = models.hermitian_model(c)
    with pytest.raises(CheckError):
        quotient_places_order2(hm, AffineAlgMap.identity(c, hm.variables))


def test_quotient_rejects_higher_order_deck():
    # a noncentral stabilizer element has order 4 in characteristic 2
    c = ctx(2, 1)
    hm = models.hermitian_model(c)
    b = next(
        e
        for e in c.subfield_encodings(2 * c.h)
        if c.add(c.frob(e, c.h), e) == c.pow(1, c.q + 1)
    )
    deck = stabilizer_map(c, 1, b, 1, "plus", hm.variables)
    assert deck.order(8) == 4
    with pytest.raises(CheckError):
        quotient_places_order2(hm, deck)


def test_quotient_rejects_non_preserving_deck():
    c = ctx(2, 1)
    hm = models.hermitian_model(c)
    names = hm.variables
    bad = AffineAlgMap(
        BiPoly(c, {(1, 0): 1, (0, 0): 1}, names),
        BiPoly(c, {(0, 1): 1}, names),
    )
    with pytest.raises(CheckError):
        quotient_places_order2(hm, bad)


def test_scan_bounds():
    m = models.hermitian_model(ctx(2, 2))
    with pytest.raises(ParameterError):
        affine_points(m, 3)
    # family III fibers are not linearized in Y, so a k=2 scan at q=16
    # would need exhaustive evaluation over 2^16 elements
    c = ctx(2, 4)
    m3 = models.family_III_model(c, models.admissible_b(c, "family_III")[0])
    with pytest.raises(ParameterError):
        affine_points(m3, 2)


def test_family_III_place_count_rejects_bad_input():
    with pytest.raises(ParameterError):
        family_III_place_count(ctx(3, 2), 1)
    with pytest.raises(ParameterError):
        family_III_place_count(ctx(2, 2), 0)
