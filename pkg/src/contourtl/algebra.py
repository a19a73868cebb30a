"""The contour algebra on n strands: basis, multiplication, idempotents,
ideal sections, the corner isomorphism and the heredity-section check.
"""

from __future__ import annotations

import json
import os
import threading
from fractions import Fraction

from .cyclo import Cyc
from .diagrams import (Diagram, bead_generator, compose, e_generator,
                       enumerate_basis, flip, identity_diagram, line_depth)
from .linalg import sparse_rank
from .poly import DPoly


def effective_depth(d: int | None, n: int) -> int:
    """Depth bound actually relevant at n strands (infinity caps at n)."""
    return n if d is None else min(d, n)


class AlgebraContext:
    """Immutable basis-indexed view of the algebra at fixed (n, m, d).

    Structure constants of basis products are memoized; the memo table is an
    insert-once map guarded by a lock so concurrent fills agree.
    """

    def __init__(self, n: int, m: int, d: int | None):
        self.n = n
        self.m = m
        self.d = d
        self.basis = enumerate_basis(n, n, m, d)
        self.index = {dia: i for i, dia in enumerate(self.basis)}
        self.prop = [dia.propagating_number() for dia in self.basis]
        self._products = {}
        self._lock = threading.Lock()

    def dimension(self) -> int:
        return len(self.basis)

    def product_diagrams(self, i: int, j: int):
        """Structure constant of basis product: (loop_counts, result_index)."""
        key = (i, j)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        loops, res = compose(self.basis[i], self.basis[j])
        val = (loops, self.index[res])
        with self._lock:
            self._products.setdefault(key, val)
        return self._products[key]

    def one(self) -> "AlgebraElement":
        return AlgebraElement.from_diagram(self, identity_diagram(self.n, self.m))

    # -- cache persistence -------------------------------------------------

    def _cache_path(self, cache_dir: str) -> str:
        dtok = "inf" if self.d is None else str(self.d)
        return os.path.join(cache_dir, f"structure_{self.n}_{self.m}_{dtok}.json")

    def save_cache(self, cache_dir: str):
        os.makedirs(cache_dir, exist_ok=True)
        doc = {
            "n": self.n, "m": self.m,
            "d": "inf" if self.d is None else self.d,
            "basis": [dia.encode() for dia in self.basis],
            "products": sorted(
                [i, j, k, list(loops)]
                for (i, j), (loops, k) in self._products.items()),
        }
        with open(self._cache_path(cache_dir), "w") as fh:
            json.dump(doc, fh, sort_keys=True)

    def load_cache(self, cache_dir: str) -> bool:
        path = self._cache_path(cache_dir)
        if not os.path.exists(path):
            return False
        with open(path) as fh:
            doc = json.load(fh)
        if doc["basis"] != [dia.encode() for dia in self.basis]:
            raise ValueError("cache file basis mismatch")
        with self._lock:
            for i, j, k, loops in doc["products"]:
                self._products.setdefault((i, j), (tuple(loops), k))
        return True


_context_cache = {}


def get_context(n: int, m: int, d: int | None) -> AlgebraContext:
    key = (n, m, d if d is None else int(d))
    ctx = _context_cache.get(key)
    if ctx is None:
        ctx = _context_cache[key] = AlgebraContext(n, m, d)
    return ctx


class AlgebraElement:
    """Sparse linear combination of basis diagrams with DPoly coefficients."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: AlgebraContext, coeffs=None):
        self.ctx = ctx
        self.coeffs = {}
        if coeffs:
            for i, p in coeffs.items():
                if not p.is_zero():
                    self.coeffs[i] = p

    @staticmethod
    def from_diagram(ctx, dia: Diagram, coeff=None) -> "AlgebraElement":
        coeff = DPoly.one(ctx.m) if coeff is None else coeff
        return AlgebraElement(ctx, {ctx.index[dia]: coeff})

    @staticmethod
    def zero(ctx) -> "AlgebraElement":
        return AlgebraElement(ctx)

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.ctx is not self.ctx:
            raise ValueError("algebra context mismatch")
        return other

    def __add__(self, other):
        o = self._check(other)
        out = dict(self.coeffs)
        for i, p in o.coeffs.items():
            s = out.get(i)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(i, None)
            else:
                out[i] = s
        return AlgebraElement(self.ctx, out)

    def __neg__(self):
        return AlgebraElement(self.ctx, {i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, (int, Fraction)):
            c = DPoly.constant(self.ctx.m, Cyc.from_rational(self.ctx.m, c))
        elif isinstance(c, Cyc):
            c = DPoly.constant(self.ctx.m, c)
        return AlgebraElement(self.ctx, {i: p * c for i, p in self.coeffs.items()})

    def scale_poly(self, p: DPoly) -> "AlgebraElement":
        return AlgebraElement(self.ctx, {i: q * p for i, q in self.coeffs.items()})

    def multiply(self, other, min_prop: int = 0) -> "AlgebraElement":
        """Product; diagrams with propagating number < min_prop are killed
        (min_prop > 0 computes in the corresponding quotient algebra)."""
        o = self._check(other)
        ctx = self.ctx
        out = {}
        for i, p in self.coeffs.items():
            for j, q in o.coeffs.items():
                loops, k = ctx.product_diagrams(i, j)
                if ctx.prop[k] < min_prop:
                    continue
                c = p * q * DPoly.monomial(ctx.m, loops)
                s = out.get(k)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return AlgebraElement(ctx, out)

    def __mul__(self, other):
        return self.multiply(other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __repr__(self):
        parts = [f"{p.to_text()} * [{self.ctx.basis[i].encode()}]"
                 for i, p in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


def dimension(n: int, m: int, d: int | None) -> int:
    return len(enumerate_basis(n, n, m, d))


# -- generators as elements ---------------------------------------------------

def e_element(ctx: AlgebraContext, i: int) -> AlgebraElement:
    return AlgebraElement.from_diagram(ctx, e_generator(ctx.n, i, ctx.m))


def t_element(ctx: AlgebraContext, i: int, count: int = 1) -> AlgebraElement:
    """The bead generator T-bar on strand i (possibly a power of it)."""
    deff = effective_depth(ctx.d, ctx.n)
    if count % ctx.m != 0 and ctx.n + 1 - i > deff:
        raise ValueError(f"strand {i} is deeper than the decoration bound")
    return AlgebraElement.from_diagram(ctx, bead_generator(ctx.n, i, ctx.m, count))


def generator_set(ctx: AlgebraContext):
    """All defining generators of the algebra as (name, index, element)."""
    out = [("E", i, e_element(ctx, i)) for i in range(1, ctx.n)]
    if ctx.m > 1:
        deff = effective_depth(ctx.d, ctx.n)
        for i in range(max(1, ctx.n + 1 - deff), ctx.n + 1):
            out.append(("T", i, t_element(ctx, i)))
    return out


def arrow_word_to_bead(ctx: AlgebraContext, word) -> AlgebraElement:
    """Translate a word in the arrow generators E(i), T(i) into the bead
    presentation (T(i) becomes T-bar(i) for odd i, its (m-1)-th power for
    even i) and multiply it out."""
    acc = ctx.one()
    for kind, i in word:
        if kind == "E":
            factor = e_element(ctx, i)
        elif kind == "T":
            power = 1 if i % 2 == 1 else ctx.m - 1
            factor = t_element(ctx, i, power)
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        acc = acc * factor
    return acc


def epsilon_element(ctx: AlgebraContext, i: int, j: int) -> AlgebraElement:
    """The preidempotent sum_t v^{it} T(j)^t placing character i on strand j."""
    m = ctx.m
    deff = effective_depth(ctx.d, ctx.n)
    if m > 1 and ctx.n + 1 - j > deff:
        raise ValueError(f"strand {j} is deeper than the decoration bound")
    s = 1 if j % 2 == 1 else m - 1
    out = AlgebraElement.zero(ctx)
    for t in range(m):
        dia = bead_generator(ctx.n, j, m, (s * t) % m)
        coeff = DPoly.constant(m, Cyc.root(m, i * t))
        out = out + AlgebraElement.from_diagram(ctx, dia, coeff)
    return out


def character_projector(ctx: AlgebraContext, labels) -> AlgebraElement:
    """Product over (strand, character) of (1/m) * epsilon-bar sums, built
    directly from bead powers so no arrow translation parity enters.

    labels: iterable of (strand j, character i in 1..m); the projector acts
    on strand j with T-bar eigenvalue v^(-i).
    """
    m = ctx.m
    acc = ctx.one()
    for j, i in labels:
        term = AlgebraElement.zero(ctx)
        for t in range(m):
            dia = bead_generator(ctx.n, j, m, t)
            coeff = DPoly.constant(m, Cyc.root(m, i * t) * Fraction(1, m))
            term = term + AlgebraElement.from_diagram(ctx, dia, coeff)
        acc = acc * term
    return acc


# -- idempotents and sections -------------------------------------------------

def preidempotent_diagram(n: int, i: int, m: int, pivot: int = 0) -> Diagram:
    """The diagram of E_{n,i}: i non-nested cup-caps on the 2i westernmost
    nodes, pivot beads on each southern arc, undecorated elsewhere."""
    if not 0 <= 2 * i <= n:
        raise ValueError(f"idempotent index {i} out of range for n={n}")
    total = 2 * n
    pairing = [-1] * total
    beads = [0] * total
    for k in range(i):
        a, b = 2 * k, 2 * k + 1
        pairing[a], pairing[b] = b, a
        sa, sb = 2 * n - 1 - a, 2 * n - 1 - b
        pairing[sa], pairing[sb] = sb, sa
        beads[min(sa, sb)] = pivot % m
    for p in range(2 * i, n):
        q = 2 * n - 1 - p
        pairing[p], pairing[q] = q, p
    return Diagram(n, n, m, tuple(pairing), tuple(beads))


def preidempotent_element(ctx: AlgebraContext, i: int, pivot: int = 0):
    """E_{n,i} with pivot decorations, plus the normalising monomial
    d_pivot^i: the idempotent is the pair's quotient once d_pivot is
    invertible."""
    dia = preidempotent_diagram(ctx.n, i, ctx.m, pivot)
    if pivot % ctx.m != 0:
        deff = effective_depth(ctx.d, ctx.n)
        for a, b in dia.lines():
            if dia.beads[a] and line_depth(dia, a) > deff:
                raise ValueError("pivot decoration exceeds the depth bound")
    elem = AlgebraElement.from_diagram(ctx, dia)
    normaliser = DPoly.delta(ctx.m, pivot % ctx.m, i)
    return elem, normaliser


def section_basis(ctx: AlgebraContext, i: int):
    """Basis indices of the i-th heredity section (propagating number n-2i)."""
    if not 0 <= 2 * i <= ctx.n:
        raise ValueError(f"section index {i} out of range")
    target = ctx.n - 2 * i
    return [k for k, p in enumerate(ctx.prop) if p == target]


# -- embedding ----------------------------------------------------------------

def embed_diagram_left(dia: Diagram) -> Diagram:
    """Add an undecorated propagating line on the western side."""
    n = dia.n_north
    total = 2 * n
    pairing = [-1] * (total + 2)
    beads = [0] * (total + 2)
    for a, b in dia.lines():
        pairing[a + 1], pairing[b + 1] = b + 1, a + 1
        beads[a + 1] = dia.beads[a]
    pairing[0], pairing[total + 1] = total + 1, 0
    return Diagram(n + 1, n + 1, dia.order, tuple(pairing), tuple(beads))


def embed_left(x: AlgebraElement, target: AlgebraContext | None = None) -> AlgebraElement:
    ctx = x.ctx
    tgt = target or get_context(ctx.n + 1, ctx.m, ctx.d)
    out = {}
    for i, p in x.coeffs.items():
        out[tgt.index[embed_diagram_left(ctx.basis[i])]] = p
    return AlgebraElement(tgt, out)


# -- corner isomorphism (A1) --------------------------------------------------

def glue_corner(dia: Diagram, m: int, pivot: int = 0) -> Diagram:
    """Place a diagram on strands 3..n inside a western cup-cap with pivot
    beads on the southern arc: the image shape of the corner isomorphism."""
    n = dia.n_north + 2
    total = 2 * n
    pairing = [-1] * total
    beads = [0] * total
    pairing[0], pairing[1] = 1, 0
    s0, s1 = 2 * n - 1, 2 * n - 2
    pairing[s0], pairing[s1] = s1, s0
    beads[min(s0, s1)] = pivot % m
    for a, b in dia.lines():
        na, nb = a + 2, b + 2  # every index shifts by 2 on both boundaries
        pairing[na], pairing[nb] = nb, na
        beads[na] = dia.beads[a]
    return Diagram(n, n, m, tuple(pairing), tuple(beads))


class CornerIso:
    """Bijection between the e A_n e diagram basis and the A_{n-2} basis.

    forward maps a glued diagram index (in A_n) to the A_{n-2} basis index;
    backward is its inverse. The preidempotent form of the isomorphism is
    Phi(x) = E_pivot . pad(x) . E_pivot = d_pivot * glue(x), so multiplicativity
    reads Phi(x) Phi(y) = d_pivot^2 Phi(x y).
    """

    def __init__(self, n: int, m: int, d: int | None, pivot: int = 0):
        if n < 2:
            raise ValueError("corner isomorphism needs n >= 2")
        self.n, self.m, self.d, self.pivot = n, m, d, pivot
        self.big = get_context(n, m, d)
        self.small = get_context(n - 2, m, d)
        self.forward = {}
        self.backward = {}
        for k, dia in enumerate(self.small.basis):
            g = glue_corner(dia, m, pivot)
            gi = self.big.index[g]
            self.forward[gi] = k
            self.backward[k] = gi

    def to_corner(self, x: AlgebraElement) -> AlgebraElement:
        """Phi on elements: image of x in e A_n e, without the d_pivot scale."""
        out = {}
        for k, p in x.coeffs.items():
            out[self.backward[k]] = p
        return AlgebraElement(self.big, out)

    def from_corner(self, y: AlgebraElement) -> AlgebraElement:
        out = {}
        for gi, p in y.coeffs.items():
            if gi not in self.forward:
                raise ValueError("element is not supported on the corner basis")
            out[self.forward[gi]] = p
        return AlgebraElement(self.small, out)


def corner_check(n: int, m: int, d: int | None, pivot: int = 0):
    """Verify the corner isomorphism on the whole basis.

    Returns (ok, witness): surjectivity of E.b.E onto the glued-basis span
    for every basis diagram b, and multiplicativity of the preidempotent map
    against basis x generator pairs.
    """
    iso = CornerIso(n, m, d, pivot)
    big, small = iso.big, iso.small
    epre, _ = preidempotent_element(big, 1, pivot)

    for k, dia in enumerate(big.basis):
        img = epre * AlgebraElement.from_diagram(big, dia) * epre
        for gi in img.coeffs:
            if gi not in iso.forward:
                return False, {"reason": "corner image escapes glued basis",
                               "diagram": dia.encode()}

    def phi(x: AlgebraElement) -> AlgebraElement:
        padded = x
        for _ in range(2):
            padded = embed_left(padded)
        return epre * padded * epre

    dpiv2 = DPoly.delta(m, pivot % m, 2)
    gens = generator_set(small)
    for k, dia in enumerate(small.basis):
        x = AlgebraElement.from_diagram(small, dia)
        for name, gi_, g in gens:
            lhs = phi(x) * phi(g)
            rhs = phi(x * g).scale_poly(dpiv2)
            if lhs != rhs:
                return False, {"reason": "multiplicativity failure",
                               "diagram": dia.encode(), "generator": [name, gi_]}
    return True, {}


# -- heredity sections (A2) ---------------------------------------------------

def _matches_e_bottom(dia: Diagram, n: int, i: int, m: int, pivot: int) -> bool:
    """Does the southern half equal the bottom of E_{n,i} (pivot decorated)?"""
    for k in range(i):
        pa, pb = 2 * k, 2 * k + 1  # southern positions, west->east
        ia, ib = 2 * n - 1 - pa, 2 * n - 1 - pb
        if dia.pairing[ib] != ia or dia.beads[min(ia, ib)] != pivot % m:
            return False
    for p in range(2 * i, n):
        idx = 2 * n - 1 - p
        if not dia.pairing[idx] < n:
            return False
    return True


def heredity_section_check(n: int, m: int, d: int | None, i: int, pivot: int = 0):
    """Compare dim(Ae (x)_{eAe} eA) with dim(AeA) inside A_{n,i}.

    The tensor dimension is computed through the character decomposition of
    eAe (a product of cyclic group algebras, split over Q(v)): it equals the
    sum over characters c of rank(Ae.pi_c) * rank(pi_c.eA).
    """
    ctx = get_context(n, m, d)
    r = n - 2 * i
    if r < 0:
        raise ValueError("section index out of range")
    if i == 0:
        dim_top = sum(1 for p in ctx.prop if p == n)
        return {"tensor_dim": dim_top, "ideal_dim": dim_top, "ok": True,
                "section": i, "trivial": True}

    ae_idx = [k for k, dia in enumerate(ctx.basis)
              if ctx.prop[k] == r and _matches_e_bottom(dia, n, i, m, pivot)]
    ea_idx = [ctx.index[flip(ctx.basis[k])] for k in ae_idx]

    deff = effective_depth(d, n)
    s = min(r, deff)
    labeled_strands = list(range(n - s + 1, n + 1))

    # dim AeA = number of distinct product diagrams x*y (products of basis
    # diagrams are monomial, with never-vanishing delta/nu scalars)
    reached = set()
    for a in ae_idx:
        for b in ea_idx:
            _, k = ctx.product_diagrams(a, b)
            if ctx.prop[k] >= r:
                reached.add(k)
    ideal_dim = len(reached)

    # character decomposition of eAe
    tensor_dim = 0
    chars = [[]]
    for _ in labeled_strands:
        chars = [c + [ch] for c in chars for ch in range(1, m + 1)]
    for c in chars:
        tau = character_projector(ctx, list(zip(labeled_strands, c)))
        right_rank = _projected_rank(ctx, ae_idx, tau, side="right", min_prop=r)
        left_rank = _projected_rank(ctx, ea_idx, tau, side="left", min_prop=r)
        tensor_dim += right_rank * left_rank

    return {"tensor_dim": tensor_dim, "ideal_dim": ideal_dim,
            "ok": tensor_dim == ideal_dim, "section": i, "trivial": False}


def _projected_rank(ctx, span_idx, tau, side, min_prop) -> int:
    """Rank of (basis vectors) * tau (or tau * basis) within the span.

    The projector is a combination of beaded identity diagrams, so each
    product is loop-free with scalar coefficients, and the image of a basis
    vector is supported on its own bead-variant class. Images of different
    classes have disjoint support, so the rank splits into small blocks.
    """
    pos = {k: t for t, k in enumerate(span_idx)}
    terms = [(t, p.constant_value()) for t, p in tau.coeffs.items()]
    zero = Cyc.zero(ctx.m)
    col_block = {}   # column -> block id
    blocks = {}      # block id -> list of rows
    next_block = 0
    for k in span_idx:
        row = {}
        for t, cv in terms:
            loops, j = (ctx.product_diagrams(k, t) if side == "right"
                        else ctx.product_diagrams(t, k))
            if ctx.prop[j] < min_prop:
                continue
            if any(loops):
                raise AssertionError("projector product closed a loop")
            if j not in pos:
                raise AssertionError("projector image escapes the span")
            s = row.get(pos[j], zero) + cv
            if s.is_zero():
                row.pop(pos[j], None)
            else:
                row[pos[j]] = s
        if not row:
            continue
        hit = {col_block[c] for c in row if c in col_block}
        if not hit:
            bid = next_block
            next_block += 1
            blocks[bid] = []
        else:
            bid = min(hit)
            for other in hit - {bid}:  # merge overlapping blocks
                blocks[bid].extend(blocks.pop(other))
                for c, b in col_block.items():
                    if b == other:
                        col_block[c] = bid
        for c in row:
            col_block[c] = bid
        blocks[bid].append(row)
    return sum(sparse_rank(rows) for rows in blocks.values())


# -- cyclic-quotient identification (A2(i) / Cor of the section basis) --------

def cyclic_quotient_check(n: int, m: int, d: int | None):
    """The top quotient has the group-algebra basis: propagating-number-n
    diagrams multiply by bead addition, and there are m^min(n,d) of them."""
    ctx = get_context(n, m, d)
    top = [k for k, p in enumerate(ctx.prop) if p == n]
    deff = effective_depth(d, n)
    if len(top) != m ** min(n, deff):
        return False, {"reason": "quotient dimension mismatch",
                       "count": len(top), "expected": m ** min(n, deff)}
    for a in top:
        for b in top:
            loops, k = ctx.product_diagrams(a, b)
            if any(loops) or ctx.prop[k] != n:
                return False, {"reason": "top products must be loop-free"}
            da, db, dk = ctx.basis[a], ctx.basis[b], ctx.basis[k]
            summed = tuple((x + y) % m for x, y in zip(da.beads, db.beads))
            if dk.beads != summed:
                return False, {"reason": "top products must add bead counts"}
    return True, {}
