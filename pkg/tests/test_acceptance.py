"""Acceptance gate: ten end-to-end checks of the toolkit, exact arithmetic
throughout. Each test prints a single PASS line on success."""

import itertools
import math
import random
from fractions import Fraction

from contourtl.algebra import dimension, e_element, get_context, t_element
from contourtl.cyclo import Cyc
from contourtl.diagrams import enumerate_basis, stratum_sizes
from contourtl.modules import (Weight, action_matrix, gram_determinant,
                               gram_diagonal_dominance_ok, gram_matrix,
                               label_length, matrix_eval,
                               oracle_regular_realization,
                               restriction_filtration, standard_dimension,
                               weights)
from contourtl.poly import DPoly, det_fraction_free
from contourtl.tower import (check_all_axioms, conjugacy_witness, hom_space,
                             semisimplicity_certificate, semisimplicity_oracle,
                             simple_labels)


def _rat(m, *vals):
    return [Cyc.from_rational(m, Fraction(v)) for v in vals]


def test_01_gram_two_strands_empty():
    """Criterion 1: the two-strand empty-weight Gram matrix and determinant."""
    d0, d1 = DPoly.delta(2, 0), DPoly.delta(2, 1)
    w = Weight(0, ())
    assert gram_matrix(2, 2, None, w) == [[d0, d1], [d1, d0]]
    assert gram_determinant(2, 2, None, w) == d0 ** 2 - d1 ** 2
    print("PASS criterion 1: G_2(empty) = [[d0,d1],[d1,d0]], det = d0^2 - d1^2")


def _pattern(sign):
    m = 2
    one = DPoly.one(m)
    s = one if sign > 0 else -one
    d0, d1 = DPoly.delta(m, 0), DPoly.delta(m, 1)
    return [[d0, d1, one, s], [d1, d0, s, one],
            [one, s, d0, d1], [s, one, d1, d0]]


def _matches_up_to_permutation(g, target):
    idx = range(4)
    for perm in itertools.permutations(idx):
        if all(g[perm[i]][perm[j]] == target[i][j] for i in idx for j in idx):
            return perm
    return None


def test_02_gram_three_strands_sign_pattern():
    """Criterion 2: the 4x4 three-strand Gram matrices with the -/+ signs."""
    perms = {}
    for label, sign in ((1, -1), (2, +1)):
        g = gram_matrix(3, 2, None, Weight(1, (label,)))
        perm = _matches_up_to_permutation(g, _pattern(sign))
        assert perm is not None, (label, [[p.to_text() for p in r] for r in g])
        perms[label] = perm
    print(f"PASS criterion 2: G_3((1)) and G_3((2)) match the -/+ pattern "
          f"under basis permutations {perms[1]} and {perms[2]}")


def test_03_hom_reproduction():
    """Criterion 3: the degenerate hom at d0=d1=1, its image, and n=4."""
    m = 2
    sing = _rat(m, 1, 1)
    src, tgt = Weight(2, (1, 1)), Weight(0, ())
    hs = hom_space(2, m, None, src, tgt, sing)
    assert hs.dimension == 1
    v = [row[0] for row in hs.basis_mats[0]]  # image in Delta_2(empty)
    # spanned by a - b: coordinates proportional to (1, -1)
    assert not v[0].is_zero() and (v[0] + v[1]).is_zero()
    ctx = get_context(2, m, None)
    from contourtl.modules import standard_basis
    basis = standard_basis(2, m, None, tgt)
    tmat = matrix_eval(action_matrix(t_element(ctx, 2), basis), sing)
    emat = matrix_eval(action_matrix(e_element(ctx, 1), basis), sing)
    tv = [sum((tmat[i][j] * v[j] for j in range(2)), Cyc.zero(m))
          for i in range(2)]
    ev = [sum((emat[i][j] * v[j] for j in range(2)), Cyc.zero(m))
          for i in range(2)]
    assert tv == [-x for x in v] and all(x.is_zero() for x in ev)
    assert hom_space(2, m, None, src, tgt, _rat(m, 2, 1)).dimension == 0
    hs4 = hom_space(4, m, None, src, tgt, sing, reduce=False)
    assert hs4.dimension >= 1
    print("PASS criterion 3: hom(Delta(1,1) -> Delta(empty)) is 1-dim at "
          "d=(1,1) spanned by a-b (T acts by -1, E by 0), 0-dim at (2,1), "
          "and persists at n=4")


def test_04_dimension_identities():
    """Criterion 4: Catalan / central-binomial / Wedderburn dimension sums."""
    for n in range(1, 9):
        assert dimension(n, 1, 0) == math.comb(2 * n, n) // (n + 1)
    for n in range(1, 7):
        assert dimension(n, 2, 1) == math.comb(2 * n, n)
    checked = 0
    for n in range(1, 7):
        for m in (1, 2, 3):
            for d in (0, 1, 2, None):
                total = sum(stratum_sizes(n, m, d).values())
                wsum = sum(standard_dimension(n, m, d, w.prop) ** 2
                           for w in weights(n, m, d).all_weights())
                assert total == wsum, (n, m, d, total, wsum)
                checked += 1
    print(f"PASS criterion 4: Catalan (n<=8), central binomial (n<=6) and "
          f"Wedderburn sums ({checked} parameter sets) all agree")


def test_05_axiom_suite():
    """Criterion 5: the six tower axioms on the full small-parameter grid."""
    failures = []
    for n in range(1, 6):
        for m in (1, 2, 3):
            for d in (0, 1, None):
                for rep in check_all_axioms(n, m, d):
                    if not rep.verdict:
                        failures.append(rep.to_jsonable())
    assert not failures, failures
    print("PASS criterion 5: axioms A1-A6 hold for all n<=5, m in {1,2,3}, "
          "d in {0,1,inf}")


def test_06_label_counts():
    """Criterion 6: |Lambda_n| from the closed formula, the weight lattice,
    the downward recursion, and the section stratification."""
    for n in range(1, 9):
        for m in (1, 2, 3, 4):
            for d in (0, 1, 2, None):
                formula = sum(m ** label_length(l, m, d)
                              for l in range(n % 2, n + 1, 2))
                assert len(weights(n, m, d).all_weights()) == formula
                assert len(simple_labels(n, m, d)) == formula
                # stratified basis count factorizes through the label count
                strat = stratum_sizes(n, m, d)
                for l in range(n % 2, n + 1, 2):
                    half = standard_dimension(n, m, d, l)
                    labels = m ** label_length(l, m, d)
                    assert strat.get(l, 0) == labels * half * half, (n, m, d, l)
    print("PASS criterion 6: label counts agree across formula, weights, "
          "recursion and section stratification for n<=8, m<=4")


def test_07_gram_dominance_and_nonzero_dets():
    """Criterion 7: diagonal degree dominance; symbolic determinants nonzero."""
    matrices = dets = 0
    for n in range(1, 6):
        for m in (1, 2, 3):
            for d in (0, 1, None):
                # a diagonally dominant specialization: huge d0, all others 1
                point = _rat(m, *([10 ** 6] + [1] * (m - 1)))
                for w in weights(n, m, d).all_weights():
                    g = gram_matrix(n, m, d, w)
                    assert gram_diagonal_dominance_ok(g), (n, m, d, w)
                    matrices += 1
                    if not g:
                        continue
                    val = det_fraction_free(matrix_eval(g, point))
                    if val.is_zero():  # fall back to the full symbolic check
                        assert not det_fraction_free(g).is_zero(), (n, m, d, w)
                    dets += 1
    print(f"PASS criterion 7: {matrices} Gram matrices diagonally dominant, "
          f"{dets} determinants certified nonzero")


def test_08_semisimplicity_loci():
    """Criterion 8: known singular loci and agreement with the trace oracle."""
    m = 2
    for a, b in [(1, 1), (2, -2), (3, 3), (Fraction(1, 2), Fraction(-1, 2))]:
        assert not semisimplicity_certificate(2, m, None, _rat(m, a, b))["semisimple"]
    for a, b in [(3, 1), (5, 2), (1, 0), (2, 7)]:
        assert semisimplicity_certificate(2, m, None, _rat(m, a, b))["semisimple"]
    assert not semisimplicity_certificate(2, 1, 0, _rat(1, 0))["semisimple"]
    for v in (1, -2, Fraction(5, 3)):
        assert semisimplicity_certificate(2, 1, 0, _rat(1, v))["semisimple"]

    rng = random.Random(20260824)
    agreements = 0
    for n in (2, 3):
        for m_ in (1, 2):
            for d in (0, None):
                for _ in range(10):
                    point = [Cyc.from_rational(
                        m_, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                        for _ in range(m_)]
                    cert = semisimplicity_certificate(n, m_, d, point)
                    assert cert["semisimple"] == \
                        semisimplicity_oracle(n, m_, d, point), (n, m_, d, point)
                    agreements += 1
    print(f"PASS criterion 8: singular loci d1 = +-d0 and d0 = 0 confirmed; "
          f"certificate matches the trace oracle at {agreements} random points")


def test_09_restriction_filtrations():
    """Criterion 9: filtration dimension identity, adjacent-stratum support,
    and the classical two-layer sequences."""
    reports = 0
    for n in range(1, 6):
        for m in (1, 2, 3):
            for d in (0, 1, None):
                lat1 = {w.text() for w in weights(n - 1, m, d).all_weights()} \
                    if n >= 1 else set()
                for w in weights(n, m, d).all_weights():
                    rep = restriction_filtration(n, m, d, w)
                    assert rep.dimension_ok, (n, m, d, w)
                    if rep.chain_checked:
                        assert rep.chain_ok, (n, m, d, w)
                    for lw, mult, _ in rep.layers:
                        assert mult == 1
                        assert abs(lw.prop - w.prop) == 1
                        assert lw.text() in lat1, (n, m, d, w, lw)
                    reports += 1
    # TL: 0 -> Delta(i-1) -> res Delta(i) -> Delta(i+1) -> 0
    for n in range(2, 6):
        for l in range(n % 2, n + 1, 2):
            rep = restriction_filtration(n, 1, 0, Weight(l, ()))
            expect = sorted(x for x in (l - 1, l + 1) if 0 <= x <= n - 1)
            assert sorted(x.prop for x, _, _ in rep.layers) == expect
    # blob: layers keep the decoration, adjacent propagating numbers
    for w in weights(4, 2, 1).all_weights():
        rep = restriction_filtration(4, 2, 1, w)
        if 0 < w.prop < 4:
            assert sorted((x.prop, x.labels) for x, _, _ in rep.layers) == \
                sorted([(w.prop - 1, (w.labels if w.prop > 1 else ())),
                        (w.prop + 1, w.labels)])
    print(f"PASS criterion 9: {reports} restriction filtrations verified "
          "(dimension identity, adjacent support, classical sequences)")


def test_10_action_oracle_conjugacy():
    """Criterion 10: half-diagram action conjugate to the regular-module
    realization, with an explicit base change."""
    pairs = 0
    for n in range(1, 5):
        for m in (1, 2):
            for d in (0, 1, None):
                for w in weights(n, m, d).all_weights():
                    r = oracle_regular_realization(n, m, d, w)
                    assert r["dimension"] == r["standard_dimension"]
                    if r["dimension"] == 0:
                        continue
                    X = conjugacy_witness(r["oracle_mats"], r["std_mats"], m)
                    assert X is not None, (n, m, d, w)
                    dim = len(X)
                    for A, B in zip(r["oracle_mats"], r["std_mats"]):
                        lhs = [[sum((X[i][k] * A[k][j] for k in range(dim)),
                                    Cyc.zero(m)) for j in range(dim)]
                               for i in range(dim)]
                        rhs = [[sum((B[i][k] * X[k][j] for k in range(dim)),
                                    Cyc.zero(m)) for j in range(dim)]
                               for i in range(dim)]
                        assert lhs == rhs
                    pairs += 1
    print(f"PASS criterion 10: {pairs} standard modules realized in the "
          "regular representation, with explicit conjugating matrices")
