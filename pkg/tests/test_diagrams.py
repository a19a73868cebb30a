"""Diagram calculus: composition, depth, flip, basis enumeration."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contourtl.diagrams import (Diagram, compose, e_generator, bead_generator,
                                enumerate_basis, flip, identity_diagram,
                                line_depth, noncrossing_pairings,
                                stratum_sizes)


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_noncrossing_counts():
    for n in range(1, 7):
        assert len(noncrossing_pairings(2 * n)) == catalan(n)


def test_validation_rejects_crossing():
    # 0-2 and 1-3 cross on a 2+2 boundary
    with pytest.raises(ValueError):
        Diagram(2, 2, 1, (2, 3, 0, 1), (0, 0, 0, 0))


def test_identity_depths():
    # strand i (west to east, 1-based) of the identity has depth n+1-i
    n = 4
    ident = identity_diagram(n, 1)
    depths = [line_depth(ident, a) for a, b in ident.propagating_lines()]
    assert depths == [4, 3, 2, 1]


def test_arc_depths_of_cap_generators():
    # in E(n,i) the northern arc i,i+1 is screened by the n-i-1 propagating
    # lines to its east, so its depth is n-i
    for n in (3, 4, 5):
        for i in range(1, n):
            e = e_generator(n, i, 1)
            assert line_depth(e, i - 1) == n - i


def test_compose_identity():
    n, m = 3, 2
    ident = identity_diagram(n, m)
    for dia in enumerate_basis(n, n, m, None)[:40]:
        loops, res = compose(ident, dia)
        assert loops == (0,) * m and res == dia
        loops, res = compose(dia, ident)
        assert loops == (0,) * m and res == dia


def test_tl_relations():
    # E_i E_i = delta * E_i ; E_i E_{i+-1} E_i = E_i
    n, m = 4, 1
    for i in (1, 2, 3):
        e = e_generator(n, i, m)
        loops, res = compose(e, e)
        assert loops == (1,) and res == e
    e1, e2 = e_generator(n, 1, m), e_generator(n, 2, m)
    loops, res = compose(e1, e2)
    loops2, res2 = compose(res, e1)
    assert tuple(a + b for a, b in zip(loops, loops2)) == (0,) and res2 == e1


def test_bead_loop_evaluation():
    # closing a once-beaded strand against a cap records a d1 loop
    n, m = 2, 2
    t = bead_generator(n, 2, m)  # bead on the eastern strand
    e = e_generator(n, 1, m)
    loops, res = compose(e, compose(t, e)[1])
    assert loops == (0, 1) and res == e


def test_flip_involution_and_antihomomorphism():
    n, m = 3, 3
    basis = enumerate_basis(n, n, m, None)
    for dia in basis[:25]:
        assert flip(flip(dia)) == dia
    a, b = basis[7], basis[19]
    l1, ab = compose(a, b)
    l2, ba_f = compose(flip(b), flip(a))
    # loops with k beads flip to loops with -k beads
    assert l2 == (l1[0],) + tuple(reversed(l1[1:]))
    assert ba_f == flip(ab)


def test_depth_zero_bound_forbids_all_beads():
    assert all(all(b == 0 for b in dia.beads)
               for dia in enumerate_basis(3, 3, 2, 0))


def test_basis_counts_tl_and_blob():
    for n in range(1, 7):
        assert len(enumerate_basis(n, n, 1, 0)) == catalan(n)
    for n in range(1, 6):
        assert len(enumerate_basis(n, n, 2, 1)) == math.comb(2 * n, n)


def test_stratum_sizes_match_enumeration():
    for (n, m, d) in [(3, 2, None), (4, 2, 1), (4, 3, 0), (3, 3, 2)]:
        counted = stratum_sizes(n, m, d)
        listed = {}
        for dia in enumerate_basis(n, n, m, d):
            p = dia.propagating_number()
            listed[p] = listed.get(p, 0) + 1
        assert counted == listed


def test_encode_decode_roundtrip():
    for dia in enumerate_basis(3, 1, 2, None):
        assert Diagram.decode(dia.encode(), dia.order) == dia


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 33), st.integers(0, 33), st.integers(0, 33))
def test_composition_associative(i, j, k):
    m = 2
    basis = enumerate_basis(2, 2, m, None)  # 34 elements
    a, b, c = basis[i % len(basis)], basis[j % len(basis)], basis[k % len(basis)]
    l1, ab = compose(a, b)
    l2, ab_c = compose(ab, c)
    r1, bc = compose(b, c)
    r2, a_bc = compose(a, bc)
    assert ab_c == a_bc
    assert tuple(x + y for x, y in zip(l1, l2)) == \
        tuple(x + y for x, y in zip(r1, r2))
