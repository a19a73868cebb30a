"""Algebra layer: products, generators, corner idempotents, heredity data."""

import math

import pytest

from contourtl.algebra import (AlgebraElement, CornerIso, corner_check,
                               cyclic_quotient_check, dimension, e_element,
                               effective_depth, embed_left, generator_set,
                               get_context, heredity_section_check,
                               preidempotent_element, t_element)
from contourtl.cyclo import Cyc
from contourtl.poly import DPoly


def test_dimension_special_cases():
    assert dimension(3, 1, 0) == 5
    assert dimension(4, 1, 0) == 14
    assert dimension(3, 2, 1) == math.comb(6, 3)
    # two pairings on 2+2 nodes, each with two fully decorable lines
    assert dimension(2, 3, None) == 2 * 3 * 3


def test_effective_depth():
    assert effective_depth(None, 5) == 5
    assert effective_depth(7, 3) == 3
    assert effective_depth(1, 4) == 1


def test_tl_relations_in_algebra():
    ctx = get_context(4, 1, 0)
    one = ctx.one()
    d0 = DPoly.delta(1, 0)
    for i in (1, 2, 3):
        e = e_element(ctx, i)
        assert e * e == e.scale_poly(d0)
    e1, e2, e3 = (e_element(ctx, i) for i in (1, 2, 3))
    assert e1 * e2 * e1 == e1
    assert e2 * e1 * e2 == e2
    assert e1 * e3 == e3 * e1
    assert one * e2 == e2


def test_bead_relations():
    m = 3
    ctx = get_context(2, m, None)
    t = t_element(ctx, 2)
    p = ctx.one()
    for _ in range(m):
        p = p * t
    assert p == ctx.one()  # m beads vanish


def test_blob_relations():
    # blob: m=2, d=1; the decorated strand squares to the identity pattern
    ctx = get_context(2, 2, 1)
    e = e_element(ctx, 1)
    t = t_element(ctx, 2)
    # e t e = d1 * e
    assert e * t * e == e.scale_poly(DPoly.delta(2, 1))
    assert t * t == ctx.one()


def test_depth_bound_blocks_western_beads():
    ctx = get_context(3, 2, 1)
    with pytest.raises(ValueError):
        t_element(ctx, 1)  # western strand has depth 3 > 1
    t_element(ctx, 3)  # eastern strand fine


def test_generator_set_shape():
    gens = generator_set(get_context(3, 2, None))
    names = [(name, i) for name, i, _ in gens]
    assert ("E", 1) in names and ("E", 2) in names
    assert ("T", 1) in names and ("T", 3) in names
    assert all(name != "T" for name, _ in
               [(n, i) for n, i, _ in generator_set(get_context(3, 1, 0))])


def test_preidempotent_square():
    # E_{n,i}^2 = (normaliser) E_{n,i}
    for (n, m, d, i, pivot) in [(4, 1, 0, 2, 0), (4, 2, None, 1, 1),
                                (2, 2, 1, 1, 1), (4, 2, None, 2, 0)]:
        ctx = get_context(n, m, d)
        e, norm = preidempotent_element(ctx, i, pivot)
        assert e * e == e.scale_poly(norm)


def test_preidempotent_depth_guard():
    ctx = get_context(4, 2, 1)
    with pytest.raises(ValueError):
        preidempotent_element(ctx, 1, pivot=1)


def test_embed_left_unital_multiplicative():
    small = get_context(2, 2, None)
    big = get_context(3, 2, None)
    assert embed_left(small.one(), big) == big.one()
    xs = [e_element(small, 1), t_element(small, 1), t_element(small, 2)]
    for x in xs:
        for y in xs:
            assert embed_left(x * y, big) == embed_left(x, big) * embed_left(y, big)


def test_corner_iso_small():
    for (n, m, d, pivot) in [(3, 1, 0, 0), (3, 2, 1, 0), (4, 2, None, 0),
                             (3, 2, None, 1)]:
        ok, witness = corner_check(n, m, d, pivot)
        assert ok, witness


def test_corner_iso_roundtrip():
    iso = CornerIso(4, 2, 1)
    small = get_context(2, 2, 1)
    for k in range(small.dimension()):
        x = AlgebraElement(small, {k: DPoly.one(2)})
        assert iso.from_corner(iso.to_corner(x)) == x


def test_heredity_sections():
    for (n, m, d) in [(3, 2, 1), (4, 1, 0), (3, 2, None)]:
        for i in range((n // 2) + 1):
            rep = heredity_section_check(n, m, d, i)
            assert rep["ok"], (n, m, d, i, rep)


def test_cyclic_quotient():
    for (n, m, d) in [(3, 2, 1), (3, 3, None), (4, 2, 0)]:
        ok, witness = cyclic_quotient_check(n, m, d)
        assert ok, witness


def test_structure_cache_roundtrip(tmp_path):
    ctx = get_context(3, 2, 1)
    ctx.product_diagrams(0, 1)
    ctx.save_cache(str(tmp_path))
    fresh = get_context(3, 2, 1)
    assert fresh.load_cache(str(tmp_path))
    assert fresh.product_diagrams(0, 1) == ctx.product_diagrams(0, 1)
