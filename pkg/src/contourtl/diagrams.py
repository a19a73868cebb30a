"""Non-crossing decorated diagrams and their composition calculus.

Boundary indexing convention: northern nodes get indices 0..n_north-1 going
west to east; southern nodes get indices n_north..n_north+n_south-1 going
east to west. This makes boundary indices cyclically ordered around the
frame, so non-crossing pairings are exactly the nested chord systems. The
eastern reference point E sits between index n_north-1 and n_north.

Each line carries a bead count in [0, m); m beads annihilate. Closed loops
removed during composition are recorded by their net bead excess mod m.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Diagram:
    """A non-crossing perfect pairing of the boundary with Z_m bead counts.

    pairing[i] is the partner of boundary index i. beads[i] is the bead
    count of the line with smaller endpoint i (zero at larger endpoints).
    """

    n_north: int
    n_south: int
    order: int
    pairing: tuple[int, ...]
    beads: tuple[int, ...]

    def __post_init__(self):
        total = self.n_north + self.n_south
        if total % 2 != 0:
            raise ValueError("odd number of boundary nodes admits no pairing")
        if len(self.pairing) != total or len(self.beads) != total:
            raise ValueError("pairing/bead vector length mismatch")
        for i, j in enumerate(self.pairing):
            if j == i or self.pairing[j] != i:
                raise ValueError("pairing is not a fixed-point-free involution")
        for i, b in enumerate(self.beads):
            if b and i > self.pairing[i]:
                raise ValueError("beads must be keyed by the smaller endpoint")
            if not 0 <= b < self.order:
                raise ValueError("bead count out of range")
        # non-crossing: no i<j<k<l with pairs (i,k),(j,l)
        stack = []
        for i in range(total):
            j = self.pairing[i]
            if j > i:
                stack.append(j)
            else:
                if not stack or stack[-1] != i:
                    raise ValueError("crossing pairing")
                stack.pop()

    # -- basic structure ---------------------------------------------------

    def lines(self):
        """Lines as (min_endpoint, max_endpoint) pairs, west-sorted."""
        return [(i, j) for i, j in enumerate(self.pairing) if i < j]

    def is_propagating(self, line_min: int) -> bool:
        return line_min < self.n_north <= self.pairing[line_min]

    def propagating_number(self) -> int:
        return sum(1 for i, j in self.lines() if i < self.n_north <= j)

    def propagating_lines(self):
        """Propagating lines ordered west to east by northern endpoint."""
        return sorted((i, j) for i, j in self.lines() if i < self.n_north <= j)

    def bead_count(self, line_min: int) -> int:
        if self.pairing[line_min] <= line_min:
            raise KeyError(f"no line with smaller endpoint {line_min}")
        return self.beads[line_min]

    def with_beads(self, beads) -> "Diagram":
        return Diagram(self.n_north, self.n_south, self.order,
                       self.pairing, tuple(beads))

    # -- serialization -----------------------------------------------------

    def encode(self) -> str:
        pairs = ",".join(f"({i},{j})" for i, j in self.lines())
        bead_items = ",".join(f"{i}:{b}" for i, b in enumerate(self.beads) if b)
        return f"{self.n_north}/{self.n_south}; pairs={pairs}; beads={bead_items}"

    @staticmethod
    def decode(text: str, order: int) -> "Diagram":
        head, pairs_part, beads_part = [p.strip() for p in text.split(";")]
        n_north, n_south = (int(x) for x in head.split("/"))
        total = n_north + n_south
        pairing = [-1] * total
        body = pairs_part.split("=", 1)[1]
        if body:
            for chunk in body.replace("(", "").split("),"):
                a, b = (int(x) for x in chunk.rstrip(")").split(","))
                pairing[a], pairing[b] = b, a
        beads = [0] * total
        body = beads_part.split("=", 1)[1]
        if body:
            for chunk in body.split(","):
                i, c = (int(x) for x in chunk.split(":"))
                beads[i] = c
        return Diagram(n_north, n_south, order, tuple(pairing), tuple(beads))

    def sort_key(self):
        return (self.pairing, self.beads)


# -- depth ------------------------------------------------------------------

def line_depth(diagram: Diagram, line_min: int) -> int:
    """Depth of a line: 1 plus the number of lines separating it from E.

    A chord (a,b), a<b, separates the given line from the eastern reference
    point E iff exactly one of the two lies strictly inside the boundary
    interval (a,b). E sits at linear position n_north - 1/2.
    """
    partner = diagram.pairing[line_min]
    if partner <= line_min:
        raise KeyError(f"no line with smaller endpoint {line_min}")
    c, d = line_min, partner
    n = diagram.n_north
    depth = 1
    for a, b in diagram.lines():
        if a == c:
            continue
        inside = a < c and d < b
        e_inside = a <= n - 1 and b >= n
        if inside != e_inside:
            depth += 1
    return depth


def decoration_depth_ok(diagram: Diagram, d: int | None) -> bool:
    """True if every beaded line has depth at most d (None means no bound)."""
    if d is None:
        return True
    return all(diagram.beads[i] == 0 or line_depth(diagram, i) <= d
               for i, j in diagram.lines())


# -- composition ------------------------------------------------------------

def compose(top: Diagram, bottom: Diagram):
    """Concatenate `top` above `bottom`.

    Returns (loop_counts, result) where loop_counts[k] is the number of
    closed loops removed with net bead excess k mod m.
    """
    if top.n_south != bottom.n_north:
        raise ValueError("interface size mismatch")
    if top.order != bottom.order:
        raise ValueError("bead order mismatch")
    m = top.order
    na, sa, sb = top.n_north, top.n_south, bottom.n_south

    # glue: top southern position p <-> bottom northern index p
    def top_south_pos(idx):
        return na + sa - 1 - idx

    # walk from each external node through the tangle
    visited_top = [False] * (na + sa)
    visited_bot = [False] * (bottom.n_north + sb)

    def step(side, idx):
        """Follow the line at (side, idx); returns (side, partner, beadcount)."""
        if side == "t":
            j = top.pairing[idx]
            return "t", j, top.beads[min(idx, j)]
        j = bottom.pairing[idx]
        return "b", j, bottom.beads[min(idx, j)]

    def cross(side, idx):
        """Cross the interface if the node sits on it, else None."""
        if side == "t" and idx >= na:
            return "b", top_south_pos(idx)
        if side == "b" and idx < bottom.n_north:
            return "t", na + sa - 1 - idx
        return None

    def mark(side, idx):
        (visited_top if side == "t" else visited_bot)[idx] = True

    def seen(side, idx):
        return (visited_top if side == "t" else visited_bot)[idx]

    total = na + sb
    pairing = [-1] * total
    beads = [0] * total

    def external_result_index(side, idx):
        if side == "t" and idx < na:
            return idx
        if side == "b" and idx >= bottom.n_north:
            return na + (idx - bottom.n_north)
        return None

    def trace(side, idx):
        """Walk from an external node to the opposite external node."""
        bead_sum = 0
        mark(side, idx)
        while True:
            side, idx, b = step(side, idx)
            bead_sum += b
            mark(side, idx)
            nxt = cross(side, idx)
            if nxt is None:
                return side, idx, bead_sum % m
            side, idx = nxt
            mark(side, idx)

    starts = [("t", i) for i in range(na)] + \
             [("b", bottom.n_north + t) for t in range(sb)]
    for side, idx in starts:
        if seen(side, idx):
            continue
        r0 = external_result_index(side, idx)
        eside, eidx, bsum = trace(side, idx)
        r1 = external_result_index(eside, eidx)
        assert r1 is not None
        pairing[r0], pairing[r1] = r1, r0
        beads[min(r0, r1)] = bsum

    # remaining unvisited interior cycles are closed loops
    loop_counts = [0] * m
    for idx in range(na, na + sa):
        if visited_top[idx]:
            continue
        side, i = "t", idx
        mark(side, i)
        bead_sum = 0
        while True:
            side, i, b = step(side, i)
            bead_sum += b
            mark(side, i)
            nxt = cross(side, i)
            assert nxt is not None, "interior path must stay on the interface"
            side, i = nxt
            if seen(side, i):
                break
            mark(side, i)
        loop_counts[bead_sum % m] += 1

    result = Diagram(na, sb, m, tuple(pairing), tuple(beads))
    return tuple(loop_counts), result


def flip(diagram: Diagram) -> Diagram:
    """Reflect north<->south and negate all bead counts mod m."""
    n, s, m = diagram.n_north, diagram.n_south, diagram.order
    total = n + s

    def new_index(i):
        # northern index i (west->east) becomes southern position i
        if i < n:
            return s + n - 1 - i
        # southern index (east->west position p) becomes northern node
        p = total - 1 - i  # west->east southern position
        return p

    pairing = [-1] * total
    beads = [0] * total
    for i, j in diagram.lines():
        a, b = new_index(i), new_index(j)
        a, b = min(a, b), max(a, b)
        pairing[a], pairing[b] = b, a
        beads[a] = (-diagram.beads[i]) % m
    return Diagram(s, n, m, tuple(pairing), tuple(beads))


# -- standard diagrams -------------------------------------------------------

def identity_diagram(n: int, m: int) -> Diagram:
    pairing = tuple(2 * n - 1 - i if i < n else 2 * n - 1 - i for i in range(2 * n))
    return Diagram(n, n, m, pairing, (0,) * (2 * n))


def e_generator(n: int, i: int, m: int) -> Diagram:
    """The cup-cap generator on strands i, i+1 (1-based i, 1 <= i <= n-1)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"E index {i} out of range for n={n}")
    pairing = [-1] * (2 * n)
    for j in range(n):
        if j not in (i - 1, i):
            pairing[j] = 2 * n - 1 - j
            pairing[2 * n - 1 - j] = j
    pairing[i - 1], pairing[i] = i, i - 1
    s0, s1 = 2 * n - 1 - i, 2 * n - i  # southern nodes at positions i, i-1
    pairing[s0], pairing[s1] = s1, s0
    return Diagram(n, n, m, tuple(pairing), (0,) * (2 * n))


def bead_generator(n: int, i: int, m: int, count: int = 1) -> Diagram:
    """Identity diagram with `count` beads on strand i (1-based, 1 <= i <= n)."""
    if not 1 <= i <= n:
        raise ValueError(f"strand index {i} out of range for n={n}")
    d = identity_diagram(n, m)
    beads = list(d.beads)
    beads[i - 1] = count % m
    return d.with_beads(beads)


def bead_strand_min_index(n: int, i: int) -> int:
    """Smaller boundary index of strand i of the identity diagram."""
    return i - 1


# -- enumeration -------------------------------------------------------------

@lru_cache(maxsize=None)
def noncrossing_pairings(total: int) -> tuple[tuple[int, ...], ...]:
    """All non-crossing perfect pairings of 0..total-1, lexicographic order."""
    if total % 2 != 0:
        raise ValueError("no perfect pairing on an odd set")

    def rec(points):
        if not points:
            return [[]]
        out = []
        first = points[0]
        for t in range(1, len(points), 2):
            inner = points[1:t]
            outer = points[t + 1:]
            for pin in rec(inner):
                for pout in rec(outer):
                    out.append([(first, points[t])] + pin + pout)
        return out

    results = []
    for chords in rec(tuple(range(total))):
        pairing = [-1] * total
        for a, b in chords:
            pairing[a], pairing[b] = b, a
        results.append(tuple(pairing))
    results.sort()
    return tuple(results)


def stratum_sizes(n: int, m: int, d: int | None) -> dict:
    """Basis count per propagating number, without materializing decorated
    diagrams: each loop-free pairing contributes m^(lines of depth <= d)."""
    out = {}
    for pairing in noncrossing_pairings(2 * n):
        base = Diagram(n, n, m, pairing, (0,) * (2 * n))
        open_lines = sum(1 for i, j in base.lines()
                         if d is None or line_depth(base, i) <= d)
        p = base.propagating_number()
        out[p] = out.get(p, 0) + m ** open_lines
    return out


def enumerate_basis(n_north: int, n_south: int, m: int, d: int | None):
    """The normal-form diagram basis: loop-free pairings, bead counts in
    [0,m) on lines of depth <= d, bead-free elsewhere. Canonical order is
    lexicographic on (pairing, bead vector)."""
    total = n_north + n_south
    if total % 2 != 0:
        raise ValueError("no diagrams on an odd boundary")
    out = []
    for pairing in noncrossing_pairings(total):
        base = Diagram(n_north, n_south, m, pairing, (0,) * total)
        open_lines = [i for i, j in base.lines()
                      if d is None or line_depth(base, i) <= d]
        assignments = [[]]
        for _ in open_lines:
            assignments = [a + [b] for a in assignments for b in range(m)]
        variants = []
        for assign in assignments:
            beads = [0] * total
            for i, b in zip(open_lines, assign):
                beads[i] = b
            variants.append(base.with_beads(beads))
        variants.sort(key=Diagram.sort_key)
        out.extend(variants)
    return out
