"""Standard modules: half-diagram bases, generator action, Gram matrices,
restriction/induction filtrations and a regular-representation oracle.

A weight is a propagating number l together with a label tuple of length
min(l, d) attached to the min(l, d) easternmost propagating lines (listed
west to east). Label i in {1..m} means the bead generator on that line acts
by v^(-i); i = m is the trivial character.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (AlgebraElement, effective_depth, epsilon_element,
                      generator_set, get_context, preidempotent_diagram)
from .cyclo import Cyc
from .diagrams import (Diagram, compose, enumerate_basis, flip, line_depth,
                       noncrossing_pairings)
from .linalg import sparse_rank
from .poly import DPoly, det_fraction_free


@dataclass(frozen=True)
class Weight:
    prop: int
    labels: tuple = ()

    def __post_init__(self):
        if any(not isinstance(i, int) for i in self.labels):
            raise ValueError("labels must be integers")

    def text(self) -> str:
        if self.prop == 0:
            return "empty"
        return f"l={self.prop}:" + ",".join(str(i) for i in self.labels)


def label_length(l: int, m: int, d: int | None) -> int:
    return l if d is None else min(l, d)


def validate_weight(n: int, m: int, d: int | None, w: Weight):
    l = w.prop
    if not (0 <= l <= n and (n - l) % 2 == 0):
        raise ValueError(f"propagating number {l} invalid at n={n}")
    if len(w.labels) != label_length(l, m, d):
        raise ValueError("label tuple has wrong length")
    if any(not 1 <= i <= m for i in w.labels):
        raise ValueError("label out of range")


class WeightLattice:
    """All weights at level n, stratified by propagating number."""

    def __init__(self, n: int, m: int, d: int | None):
        self.n, self.m, self.d = n, m, d
        self.strata = {}
        for l in range(n, -1, -2):
            s = label_length(l, m, d)
            labels = [()]
            for _ in range(s):
                labels = [t + (i,) for t in labels for i in range(1, m + 1)]
            self.strata[l] = [Weight(l, t) for t in labels]

    def all_weights(self):
        return [w for l in sorted(self.strata, reverse=True) for w in self.strata[l]]

    def contains(self, w: Weight) -> bool:
        return w.prop in self.strata and w in self.strata[w.prop]


def weights(n: int, m: int, d: int | None) -> WeightLattice:
    return WeightLattice(n, m, d)


class StandardBasis:
    """Half-diagram basis of a standard module.

    Diagrams have n northern and l southern nodes, exactly l propagating
    lines, no loops, and bead-free propagating lines (the labels carry the
    propagating-line decorations implicitly).
    """

    def __init__(self, n: int, m: int, d: int | None, weight: Weight):
        validate_weight(n, m, d, weight)
        self.n, self.m, self.d, self.weight = n, m, d, weight
        l = weight.prop
        self.diagrams = [
            h for h in enumerate_basis(n, l, m, d)
            if h.propagating_number() == l
            and all(h.beads[a] == 0 for a, b in h.lines() if a < n <= b)
        ]
        self.index = {h: i for i, h in enumerate(self.diagrams)}

    def dimension(self) -> int:
        return len(self.diagrams)


def standard_basis(n: int, m: int, d: int | None, weight: Weight) -> StandardBasis:
    return StandardBasis(n, m, d, weight)


_dim_cache = {}


def standard_dimension(n: int, m: int, d: int | None, l: int) -> int:
    """Dimension of the standard module: counted over half-diagram shapes
    (each arc within the depth bound carries a free bead), so no decorated
    basis is materialized."""
    key = (n, m, d, l)
    if key not in _dim_cache:
        total = 0
        for pairing in noncrossing_pairings(n + l):
            base = Diagram(n, l, m, pairing, (0,) * (n + l))
            if base.propagating_number() != l:
                continue
            open_arcs = sum(1 for a, b in base.lines() if b < n
                            and (d is None or line_depth(base, a) <= d))
            total += m ** open_arcs
        _dim_cache[key] = total
    return _dim_cache[key]


def _label_factor(basis: StandardBasis, dia: Diagram):
    """Strip propagating-line beads of an n x l diagram into a v-scalar.

    Returns (scalar, bead-free diagram); None if a line deeper than the
    decoration bound carries beads (impossible for legal composites).
    """
    n, m = basis.n, basis.m
    l = basis.weight.prop
    labels = basis.weight.labels
    s = len(labels)
    plines = dia.propagating_lines()  # (north, south) pairs, west to east
    scalar = Cyc.one(m)
    beads = list(dia.beads)
    for t, (a, b) in enumerate(plines):
        c = dia.beads[a]
        if c:
            if t < l - s:
                raise AssertionError("beads on a line beyond the depth bound")
            i = labels[t - (l - s)]
            scalar = scalar * Cyc.root(m, -i * c)
            beads[a] = 0
    stripped = Diagram(dia.n_north, dia.n_south, m, dia.pairing, tuple(beads))
    return scalar, stripped


def act_diagram(basis: StandardBasis, top: Diagram, half_index: int):
    """Act by a single algebra diagram; returns (DPoly coeff, index) or None."""
    l = basis.weight.prop
    loops, res = compose(top, basis.diagrams[half_index])
    if res.propagating_number() < l:
        return None
    scalar, stripped = _label_factor(basis, res)
    coeff = DPoly.monomial(basis.m, loops, scalar)
    return coeff, basis.index[stripped]


def act(x: AlgebraElement, vec: dict, basis: StandardBasis) -> dict:
    """Apply an algebra element to a module vector {basis index: DPoly}."""
    ctx = x.ctx
    if ctx.n != basis.n or ctx.m != basis.m:
        raise ValueError("algebra and module sizes do not match")
    out = {}
    for k, p in x.coeffs.items():
        top = ctx.basis[k]
        for h, q in vec.items():
            hit = act_diagram(basis, top, h)
            if hit is None:
                continue
            coeff, idx = hit
            c = p * q * coeff
            s = out.get(idx)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = s
    return out


def action_matrix(x: AlgebraElement, basis: StandardBasis):
    """Matrix of x on the standard basis; M[i][j] = coeff of e_i in x.e_j."""
    dim = basis.dimension()
    zero = DPoly.zero(basis.m)
    mat = [[zero] * dim for _ in range(dim)]
    for j in range(dim):
        img = act(x, {j: DPoly.one(basis.m)}, basis)
        for i, c in img.items():
            mat[i][j] = c
    return mat


def matrix_eval(mat, point):
    return [[c.evaluate(point) for c in row] for row in mat]


# -- Gram matrices ------------------------------------------------------------

def gram_entry(basis: StandardBasis, a: int, b: int) -> DPoly:
    """<a|b>: concatenate the flip of half-diagram a on top of b."""
    m = basis.m
    l = basis.weight.prop
    loops, res = compose(flip(basis.diagrams[a]), basis.diagrams[b])
    if res.propagating_number() < l:
        return DPoly.zero(m)
    # l-strand result with l propagating lines is forced to the identity
    # pairing by planarity; assert rather than assume
    for t in range(l):
        if res.pairing[t] != 2 * l - 1 - t:
            raise AssertionError("non-identity propagating pattern in pairing")
    labels = basis.weight.labels
    s = len(labels)
    scalar = Cyc.one(m)
    for t in range(l):
        c = res.beads[t]
        if c:
            if t < l - s:
                raise AssertionError("beads on a line beyond the depth bound")
            scalar = scalar * Cyc.root(m, -labels[t - (l - s)] * c)
    return DPoly.monomial(m, loops, scalar)


def gram_matrix(n: int, m: int, d: int | None, weight: Weight):
    basis = standard_basis(n, m, d, weight)
    dim = basis.dimension()
    return [[gram_entry(basis, a, b) for b in range(dim)] for a in range(dim)]


def gram_determinant(n: int, m: int, d: int | None, weight: Weight) -> DPoly:
    mat = gram_matrix(n, m, d, weight)
    if not mat:
        return DPoly.one(m)
    return det_fraction_free(mat)


def gram_determinant_at(n: int, m: int, d: int | None, weight: Weight, point) -> Cyc:
    mat = gram_matrix(n, m, d, weight)
    if not mat:
        return Cyc.one(m)
    return det_fraction_free(matrix_eval(mat, point))


def gram_symmetry_ok(mat) -> bool:
    """Transpose equals the matrix under v -> v^(-1), d_k -> d_{m-k mod m}."""
    dim = len(mat)
    return all(mat[j][i] == mat[i][j].bar()
               for i in range(dim) for j in range(dim))


def gram_diagonal_dominance_ok(mat) -> bool:
    """In each row the d0-degree of the diagonal strictly exceeds every
    off-diagonal d0-degree (the entries are monomials)."""
    dim = len(mat)
    for i in range(dim):
        diag = mat[i][i].degree_in(0)
        for j in range(dim):
            if j != i and mat[i][j].degree_in(0) >= diag:
                return False
    return True


def generic_point(m: int, seed: int = 0):
    """A deterministic 'generic' rational specialization of d0..d_{m-1}."""
    nums = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    dens = [1, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    return [Cyc.from_rational(m, Fraction(nums[k % 10] + 2 * seed, dens[k % 10]))
            for k in range(m)]


# -- restriction / induction --------------------------------------------------

@dataclass
class FiltrationReport:
    weight: Weight
    level: int                 # n of the restricted module
    layers: list               # (Weight at level-1, multiplicity, dimension)
    restricted_dim: int
    dimension_ok: bool
    chain_checked: bool = False
    chain_ok: bool = False

    def layer_dim_total(self) -> int:
        return sum(mult * dim for _, mult, dim in self.layers)

    def to_jsonable(self):
        return {
            "weight": self.weight.text(), "level": self.level,
            "layers": [[w.text(), mult, dim] for w, mult, dim in self.layers],
            "restricted_dim": self.restricted_dim,
            "dimension_ok": self.dimension_ok,
            "chain_checked": self.chain_checked, "chain_ok": self.chain_ok,
        }


def _bottom_weight(weight: Weight, m: int, d: int | None) -> Weight:
    """Drop the westmost propagating line: labels of the survivor."""
    l = weight.prop
    k = label_length(l - 1, m, d)
    labels = weight.labels[len(weight.labels) - k:] if k else ()
    return Weight(l - 1, labels)


def _arc_layer_weights(weight: Weight, m: int, d: int | None):
    """Weights of the quotient layers: the freed arc becomes the westmost
    propagating line. It sits at depth l+1, so it carries a free label
    exactly when l+1 <= d (m layers); otherwise it is undecorated."""
    l = weight.prop
    if label_length(l + 1, m, d) == l + 1:
        return [Weight(l + 1, (i,) + weight.labels) for i in range(1, m + 1)]
    return [Weight(l + 1, weight.labels)]


def restriction_filtration(n: int, m: int, d: int | None, weight: Weight,
                           verify_chain: bool | None = None) -> FiltrationReport:
    validate_weight(n, m, d, weight)
    if n < 1:
        raise ValueError("restriction needs n >= 1")
    l = weight.prop
    layers = []
    if l >= 1:
        mu = _bottom_weight(weight, m, d)
        layers.append((mu, 1, standard_dimension(n - 1, m, d, mu.prop)))
    if l < n:
        for nu in _arc_layer_weights(weight, m, d):
            layers.append((nu, 1, standard_dimension(n - 1, m, d, nu.prop)))
    dim = standard_dimension(n, m, d, l)
    report = FiltrationReport(weight, n, layers, dim,
                              dim == sum(mlt * dm for _, mlt, dm in layers))
    if verify_chain is None:
        verify_chain = n <= 4
    if verify_chain:
        report.chain_checked = True
        report.chain_ok = _verify_restriction_chain(n, m, d, weight)
    return report


def induction_support(n: int, m: int, d: int | None, weight: Weight) -> FiltrationReport:
    """Induction to level n+1, computed as the restriction from level n+2 of
    the globalised module (which is standard with the same weight)."""
    validate_weight(n, m, d, weight)
    rep = restriction_filtration(n + 2, m, d, weight, verify_chain=False)
    rep.level = n + 1
    return rep


def _delete_west_prop(h: Diagram) -> Diagram:
    """Remove the propagating line at northern node 0 (to the westmost
    southern node) and reindex."""
    n, l, m = h.n_north, h.n_south, h.order
    partner = h.pairing[0]
    if partner != n + l - 1:
        raise AssertionError("westmost propagating line must reach the westmost southern node")
    pairing = [-1] * (n + l - 2)
    beads = [0] * (n + l - 2)
    for a, b in h.lines():
        if a == 0:
            continue
        na, nb = a - 1, b - 1
        pairing[na], pairing[nb] = nb, na
        beads[na] = h.beads[a]
    return Diagram(n - 1, l - 1, m, tuple(pairing), tuple(beads))


def _deform_west_arc(h: Diagram) -> Diagram:
    """Rotate northern node 0 (on an arc) down to a new westmost southern
    node: the arc partner becomes a bead-free propagating line."""
    n, l, m = h.n_north, h.n_south, h.order
    partner = h.pairing[0]
    if partner >= n:
        raise AssertionError("northern node 0 must lie on an arc")
    pairing = [-1] * (n + l)
    beads = [0] * (n + l)
    for a, b in h.lines():
        if a == 0:
            continue
        na, nb = a - 1, b - 1
        pairing[na], pairing[nb] = nb, na
        beads[na] = h.beads[a]
    new_south = n + l - 1  # westmost southern node of the (n-1, l+1) diagram
    pairing[partner - 1], pairing[new_south] = new_south, partner - 1
    return Diagram(n - 1, l + 1, m, tuple(pairing), tuple(beads))


def _with_arc_beads(h: Diagram, beta: int) -> Diagram:
    beads = list(h.beads)
    beads[0] = beta % h.order
    return Diagram(h.n_north, h.n_south, h.order, h.pairing, tuple(beads))


def _verify_restriction_chain(n: int, m: int, d: int | None, weight: Weight) -> bool:
    """Explicit submodule-chain verification of the filtration layers.

    The span of node-0-propagating diagrams must be stable under the
    subalgebra missing the western strand and match the bottom layer on the
    nose; each arc-decoration class, taken modulo that span, must match its
    quotient layer through the rotation map.
    """
    l = weight.prop
    big = standard_basis(n, m, d, weight)
    ctx_n = get_context(n, m, d)
    ctx_s = get_context(n - 1, m, d)
    from .algebra import embed_left
    gens = [(name, i, embed_left(g, ctx_n)) for name, i, g in generator_set(ctx_s)]

    prop_idx = [k for k, h in enumerate(big.diagrams) if h.pairing[0] >= n]
    prop_set = set(prop_idx)

    # bottom layer: node-0-propagating diagrams vs the level-(n-1) module
    if l >= 1:
        mu = _bottom_weight(weight, m, d)
        sub = standard_basis(n - 1, m, d, mu)
        down = {k: sub.index[_delete_west_prop(big.diagrams[k])] for k in prop_idx}
        up = {v: k for k, v in down.items()}
        for _, _, g in gens:
            for k in prop_idx:
                img = act(g, {k: DPoly.one(m)}, big)
                if any(t not in prop_set for t in img):
                    return False
                small = act_small(g, ctx_s, sub, down[k])
                if {up[t]: c for t, c in small.items()} != img:
                    return False

    # quotient layers: arc-decoration classes through the rotation map
    if l < n:
        arc_free = [k for k, h in enumerate(big.diagrams)
                    if h.pairing[0] < n and h.beads[0] == 0]
        nus = _arc_layer_weights(weight, m, d)
        decorated = len(nus) == m
        for li, nu in enumerate(nus):
            quo = standard_basis(n - 1, m, d, nu)
            i = li + 1 if decorated else None

            def lift(k_free):
                """w_{i,h}: the decoration-class combination over B."""
                h = big.diagrams[k_free]
                out = {}
                betas = range(m) if decorated else (0,)
                for beta in betas:
                    c = Cyc.root(m, i * beta) if decorated else Cyc.one(m)
                    out[big.index[_with_arc_beads(h, beta)]] = DPoly.constant(m, c)
                return out

            down = {k: quo.index[_deform_west_arc(big.diagrams[k])] for k in arc_free}
            up = {v: k for k, v in down.items()}
            for _, _, g in gens:
                for k in arc_free:
                    got = act(g, lift(k), big)
                    want_small = act_small(g, ctx_s, quo, down[k])
                    want = {}
                    for t, c in want_small.items():
                        for idx, w in lift(up[t]).items():
                            s = want.get(idx)
                            s = c * w if s is None else s + c * w
                            want[idx] = s
                    # compare modulo the node-0-propagating span
                    for idx in set(got) | set(want):
                        if idx in prop_set:
                            continue
                        if got.get(idx, DPoly.zero(m)) != want.get(idx, DPoly.zero(m)):
                            return False
    return True


def act_small(g_embedded: AlgebraElement, ctx_small, basis: StandardBasis, j: int):
    """Apply the preimage of an embedded generator at the lower level."""
    from .algebra import embed_diagram_left
    rev = {g_embedded.ctx.index[embed_diagram_left(dia)]: ctx_small.index[dia]
           for dia in ctx_small.basis}
    small = AlgebraElement(ctx_small,
                           {rev[k]: p for k, p in g_embedded.coeffs.items()})
    return act(small, {j: DPoly.one(basis.m)}, basis)


# -- regular-representation oracle -------------------------------------------

def oracle_regular_realization(n: int, m: int, d: int | None, weight: Weight,
                               point=None, guard: int = 6):
    """Realize the standard module inside the regular representation.

    Builds the cyclic module generated by E_{n,t} . prod_j eps(i_j, 2t+j)
    in the quotient killing diagrams with fewer than l propagating lines,
    at a generic rational specialization, and returns its dimension and
    generator action matrices alongside those of the half-diagram model.
    """
    if n > guard:
        raise ValueError("oracle limited to small n")
    validate_weight(n, m, d, weight)
    l = weight.prop
    if point is None:
        point = generic_point(m)
    ctx = get_context(n, m, d)
    t = (n - l) // 2
    s = len(weight.labels)
    w = AlgebraElement.from_diagram(ctx, preidempotent_diagram(n, t, m, 0))
    # labels sit on the s easternmost propagating strands, west to east;
    # strand n-s+j has depth s+1-j, within any depth bound that admits s labels
    for j, i in enumerate(weight.labels, start=1):
        w = w.multiply(epsilon_element(ctx, i, n - s + j), min_prop=l)

    def eval_vec(x: AlgebraElement):
        return {k: p.evaluate(point) for k, p in x.coeffs.items()
                if not p.evaluate(point).is_zero()}

    # span of A.w, reduced to echelon form over Q(v)
    echelon = []  # (pivot, vector dict)
    for b in range(ctx.dimension()):
        v = eval_vec(AlgebraElement(ctx, {b: DPoly.one(m)}).multiply(w, min_prop=l))
        v = _reduce_vec(v, echelon)
        if v:
            piv = min(v)
            inv = v[piv].inverse()
            echelon.append((piv, {c: val * inv for c, val in v.items()}))
    echelon.sort(key=lambda e: e[0])
    dim = len(echelon)

    gens = generator_set(ctx)
    oracle_mats, std_mats = [], []
    basis = standard_basis(n, m, d, weight)
    for name, gi, g in gens:
        cols = []
        for piv, vec in echelon:
            img = {}
            for k, val in vec.items():
                gv = g.multiply(AlgebraElement(ctx, {k: DPoly.one(m)}), min_prop=l)
                for kk, p in gv.coeffs.items():
                    c = p.evaluate(point) * val
                    s = img.get(kk)
                    s = c if s is None else s + c
                    if s.is_zero():
                        img.pop(kk, None)
                    else:
                        img[kk] = s
            cols.append(_coordinates(img, echelon))
        mat = [[cols[j][i] for j in range(dim)] for i in range(dim)]
        oracle_mats.append(mat)
        std_mats.append(matrix_eval(action_matrix(g, basis), point))
    return {"dimension": dim, "standard_dimension": basis.dimension(),
            "generators": [(name, gi) for name, gi, _ in gens],
            "oracle_mats": oracle_mats, "std_mats": std_mats, "point": point}


def _reduce_vec(v: dict, echelon):
    v = dict(v)
    for piv, row in echelon:
        f = v.get(piv)
        if f is None or f.is_zero():
            continue
        for c, val in row.items():
            nv = v.get(c)
            nv = -f * val if nv is None else nv - f * val
            if nv.is_zero():
                v.pop(c, None)
            else:
                v[c] = nv
    return {c: val for c, val in v.items() if not val.is_zero()}


def _coordinates(v: dict, echelon):
    """Coordinates of v in the echelon basis (which must contain it)."""
    v = dict(v)
    coords = []
    for piv, row in echelon:
        f = v.get(piv)
        if f is None:
            m_ord = row[piv].order
            coords.append(Cyc.zero(m_ord))
            continue
        coords.append(f)
        for c, val in row.items():
            nv = v.get(c)
            nv = -f * val if nv is None else nv - f * val
            if nv.is_zero():
                v.pop(c, None)
            else:
                v[c] = nv
    if v:
        raise AssertionError("vector escapes the cyclic module span")
    return coords
