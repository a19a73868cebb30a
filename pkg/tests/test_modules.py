"""Standard modules: bases, actions, Gram forms, filtrations, the oracle."""

import math

import pytest

from contourtl.algebra import e_element, get_context, t_element
from contourtl.cyclo import Cyc
from contourtl.modules import (Weight, action_matrix, generic_point,
                               gram_determinant, gram_diagonal_dominance_ok,
                               gram_matrix, gram_symmetry_ok,
                               induction_support, label_length,
                               matrix_eval, oracle_regular_realization,
                               restriction_filtration, standard_basis,
                               standard_dimension, validate_weight, weights)
from contourtl.poly import DPoly, det_fraction_free


def test_label_length():
    assert label_length(3, 2, None) == 3
    assert label_length(3, 2, 1) == 1
    assert label_length(2, 5, 0) == 0


def test_weight_text():
    assert Weight(0, ()).text() == "empty"
    assert Weight(2, (1, 2)).text() == "l=2:1,2"


def test_weight_lattice_counts():
    # |Lambda_n| = sum over strata of m^min(l, d)
    for (n, m, d) in [(4, 2, None), (5, 2, 1), (4, 3, 0), (6, 2, 2)]:
        lat = weights(n, m, d)
        expected = sum(m ** label_length(l, m, d)
                       for l in range(n % 2, n + 1, 2))
        assert len(lat.all_weights()) == expected


def test_validate_weight_rejects():
    with pytest.raises(ValueError):
        validate_weight(3, 2, None, Weight(2, (1, 1)))  # parity
    with pytest.raises(ValueError):
        validate_weight(4, 2, None, Weight(2, (1,)))  # label count
    with pytest.raises(ValueError):
        validate_weight(4, 2, None, Weight(2, (3, 1)))  # label range


def test_standard_dimensions_tl():
    # TL: dim Delta_n(l) = C(n, (n-l)/2) - C(n, (n-l)/2 - 1)
    for n in range(1, 8):
        for l in range(n % 2, n + 1, 2):
            t = (n - l) // 2
            expect = math.comb(n, t) - (math.comb(n, t - 1) if t else 0)
            assert standard_dimension(n, 1, 0, l) == expect


def test_standard_dimension_decorated():
    # each arc of a half-diagram carries a free bead when d is unbounded
    assert standard_dimension(4, 2, None, 0) == 2 * 4  # 2 shapes x 2^2
    assert standard_dimension(3, 3, None, 1) == 2 * 3  # 2 shapes x 3^1


def test_action_closes_and_kills():
    n, m, d = 3, 2, None
    ctx = get_context(n, m, d)
    w = Weight(1, (1,))
    basis = standard_basis(n, m, d, w)
    e = e_element(ctx, 1)
    mat = action_matrix(e, basis)
    assert len(mat) == basis.dimension()
    # E_1 E_2 E_1 = E_1 must hold on the module too
    m1 = action_matrix(e_element(ctx, 1), basis)
    m2 = action_matrix(e_element(ctx, 2), basis)
    prod = [[sum((m1[i][k] * m2[k][j] for k in range(len(m1))),
                 DPoly.zero(m)) for j in range(len(m1))] for i in range(len(m1))]
    prod = [[sum((prod[i][k] * m1[k][j] for k in range(len(m1))),
                 DPoly.zero(m)) for j in range(len(m1))] for i in range(len(m1))]
    assert prod == m1


def test_gram_2_empty():
    d0, d1 = DPoly.delta(2, 0), DPoly.delta(2, 1)
    g = gram_matrix(2, 2, None, Weight(0, ()))
    assert g == [[d0, d1], [d1, d0]]
    assert gram_determinant(2, 2, None, Weight(0, ())) == d0 ** 2 - d1 ** 2


def test_gram_symmetry_and_dominance():
    for (n, m, d) in [(4, 2, None), (3, 2, 1), (4, 1, 0), (3, 3, None)]:
        for w in weights(n, m, d).all_weights():
            g = gram_matrix(n, m, d, w)
            assert gram_symmetry_ok(g)
            assert gram_diagonal_dominance_ok(g)


def test_gram_tl_determinants():
    # Delta_2(0) for TL: det = delta
    g = gram_determinant(2, 1, 0, Weight(0, ()))
    assert g == DPoly.delta(1, 0)
    # Delta_4(0): Gram [[delta^2, delta], [delta, delta^2]]
    g4 = gram_determinant(4, 1, 0, Weight(0, ()))
    d0 = DPoly.delta(1, 0)
    assert g4 == d0 ** 4 - d0 ** 2


def test_restriction_tl_sequences():
    # res Delta_n(i) has layers i-1 and i+1 (one absent at the edges)
    for n in range(2, 6):
        for l in range(n % 2, n + 1, 2):
            rep = restriction_filtration(n, 1, 0, Weight(l, ()))
            got = sorted(w.prop for w, _, _ in rep.layers)
            expect = sorted(x for x in (l - 1, l + 1) if 0 <= x <= n - 1)
            assert got == expect
            assert rep.dimension_ok
            if rep.chain_checked:
                assert rep.chain_ok


def test_restriction_blob_sequences():
    # blob: res Delta_n(l, j) has layers (l-1, j) and (l+1, j); at l=0 the
    # two layers are (1, 1) and (1, 2); at l=n only the bottom survives
    n, m, d = 4, 2, 1
    for w in weights(n, m, d).all_weights():
        rep = restriction_filtration(n, m, d, w)
        assert rep.dimension_ok and (not rep.chain_checked or rep.chain_ok)
        got = sorted((x.prop, x.labels) for x, _, _ in rep.layers)
        l = w.prop
        if l == 0:
            assert got == [(1, (1,)), (1, (2,))]
        elif l == n:
            assert got == [(l - 1, w.labels)]
        elif l == 1:
            assert got == [(0, ()), (2, w.labels)]
        else:
            assert got == sorted([(l - 1, w.labels), (l + 1, w.labels)])


def test_induction_support_matches_level_up():
    n, m, d = 3, 2, None
    w = Weight(1, (2,))
    rep = induction_support(n, m, d, w)
    assert rep.level == n + 1
    got = sorted(x.text() for x, _, _ in rep.layers)
    # dropped-line layer, plus one raised layer per new westmost label
    assert got == ["empty", "l=2:1,2", "l=2:2,2"]


def test_oracle_matches_standard_dimension():
    for (n, m, d) in [(3, 1, 0), (3, 2, None), (2, 2, 1)]:
        for w in weights(n, m, d).all_weights():
            r = oracle_regular_realization(n, m, d, w)
            assert r["dimension"] == r["standard_dimension"]


def test_generic_point_deterministic():
    assert generic_point(2, 3) == generic_point(2, 3)
    assert generic_point(2, 3) != generic_point(2, 4)
