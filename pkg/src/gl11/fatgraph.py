"""Trivalent fatgraphs and SL(1|1)/SU(1|1) graph connections.

A fatgraph is stored by half-edges: a fixed-point-free pairing involution,
a partition of the half-edges into trivalent vertices with a cyclic order at
each vertex, and an orientation (a tail half-edge per edge).  Boundary cycles
come from the face permutation "partner, then next in the cyclic order".

A graph connection assigns SL(1|1) coordinates (h, alpha, beta) to every
oriented edge with the reversal rule g_rev = g^{-1}.  Vertex rescalings are
implemented as genuine gauge transformations: every incident edge, written in
its toward-vertex orientation, is right-multiplied by one fixed one-parameter
subgroup element, so based holonomies are conjugated and their supertrace and
Berezinian are exactly invariant.  (In coordinates the odd moves shift h by
-(gamma beta)/2 resp. -(gamma alpha)/2; a same-coordinate shift h + gamma
alpha paired with alpha + gamma is not a group action and would break
holonomy invariance.)
"""

from __future__ import annotations

from itertools import product as _iterproduct

import numpy as np

from .grassmann import GrassmannElement, ParityError
from .reports import CheckReport
from .supergroup import (
    GroupCoords,
    SuperMatrix11,
    coords_inverse,
    coords_product,
    from_coords,
    random_coords,
)


class FatGraph:
    """Half-edge fatgraph: pairing involution, cyclic orders, orientation."""

    def __init__(self, pairing, cyclic_orders, orientation=None):
        pairing = tuple(int(h) for h in pairing)
        size = len(pairing)
        if size % 2:
            raise ValueError("odd number of half-edges")
        if sorted(pairing) != list(range(size)):
            raise ValueError("pairing must permute 0..%d" % (size - 1))
        for h, p in enumerate(pairing):
            if p == h or pairing[p] != h:
                raise ValueError("pairing is not a fixed-point-free involution at %d" % h)
        self.pairing = pairing
        self.cyclic_orders = tuple(tuple(int(h) for h in order)
                                   for order in cyclic_orders)
        seen = [False] * size
        for order in self.cyclic_orders:
            if len(order) != 3:
                raise ValueError("vertex %r is not trivalent" % (order,))
            for h in order:
                if seen[h]:
                    raise ValueError("half-edge %d assigned to two vertices" % h)
                seen[h] = True
        if not all(seen):
            raise ValueError("some half-edges missing from vertices")
        self.vertex_of = [0] * size
        for v, order in enumerate(self.cyclic_orders):
            for h in order:
                self.vertex_of[h] = v
        # edges in order of their smaller half-edge; orientation = tail half-edge
        self.edge_halves = []
        for h in range(size):
            if h < pairing[h]:
                self.edge_halves.append((h, pairing[h]))
        if orientation is not None:
            orientation = [int(h) for h in orientation]
            if len(orientation) != len(self.edge_halves):
                raise ValueError("orientation needs one tail half-edge per edge")
            fixed = []
            for e, tail in enumerate(orientation):
                lo, hi = self.edge_halves[e]
                if tail == lo:
                    fixed.append((lo, hi))
                elif tail == hi:
                    fixed.append((hi, lo))
                else:
                    raise ValueError("half-edge %d is not on edge %d" % (tail, e))
            self.edge_halves = fixed
        self._check_connected()

    def _check_connected(self):
        reach = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for h in self.cyclic_orders[v]:
                w = self.vertex_of[self.pairing[h]]
                if w not in reach:
                    reach.add(w)
                    frontier.append(w)
        if len(reach) != self.num_vertices:
            raise ValueError("fatgraph is not connected")

    @property
    def num_vertices(self) -> int:
        return len(self.cyclic_orders)

    @property
    def num_edges(self) -> int:
        return len(self.edge_halves)

    def tail(self, e: int) -> int:
        return self.edge_halves[e][0]

    def head(self, e: int) -> int:
        return self.edge_halves[e][1]

    def source(self, e: int) -> int:
        return self.vertex_of[self.tail(e)]

    def target(self, e: int) -> int:
        return self.vertex_of[self.head(e)]

    def edge_of_half(self, h: int) -> tuple[int, bool]:
        """(edge index, True when h is the tail) for a half-edge."""
        for e, (tail, head) in enumerate(self.edge_halves):
            if h == tail:
                return e, True
            if h == head:
                return e, False
        raise ValueError("unknown half-edge %r" % h)

    def next_at_vertex(self, h: int) -> int:
        order = self.cyclic_orders[self.vertex_of[h]]
        return order[(order.index(h) + 1) % 3]

    def boundary_cycles(self):
        """Faces as lists of (edge, forward) steps; each step runs h -> pair(h)."""
        edge_lookup = {}
        for e, (tail, head) in enumerate(self.edge_halves):
            edge_lookup[tail] = (e, True)
            edge_lookup[head] = (e, False)
        faces = []
        visited = set()
        for start in range(len(self.pairing)):
            if start in visited:
                continue
            cycle = []
            h = start
            while True:
                visited.add(h)
                cycle.append(edge_lookup[h])
                h = self.next_at_vertex(self.pairing[h])
                if h == start:
                    break
            faces.append(cycle)
        return faces

    @property
    def num_faces(self) -> int:
        return len(self.boundary_cycles())

    def genus_punctures(self) -> tuple[int, int]:
        """(g, s) from V - E + s = 2 - 2g."""
        s = self.num_faces
        euler = self.num_vertices - self.num_edges + s
        if euler % 2:
            raise ValueError("inconsistent Euler characteristic %d" % euler)
        return (2 - euler) // 2, s

    def to_dict(self) -> dict:
        return {"half_edges": list(range(len(self.pairing))),
                "pairing": list(self.pairing),
                "cyclic_orders": [list(o) for o in self.cyclic_orders],
                "orientation": [tail for (tail, _) in self.edge_halves]}

    @classmethod
    def from_dict(cls, data: dict) -> "FatGraph":
        return cls(data["pairing"], data["cyclic_orders"],
                   orientation=data.get("orientation"))


# -- fixture graphs -----------------------------------------------------------

def theta_graph(genus_one: bool = True) -> FatGraph:
    """Two vertices joined by three edges; cyclic order picks (1,1) or (0,3)."""
    pairing = [1, 0, 3, 2, 5, 4]
    orders = [(0, 2, 4), (1, 3, 5)] if genus_one else [(0, 2, 4), (1, 5, 3)]
    return FatGraph(pairing, orders, orientation=[0, 2, 4])


def dumbbell_graph() -> FatGraph:
    """Two loops joined by a bridge."""
    # edge 0: loop at A (halves 0,1); edge 1: loop at B (2,3); bridge (4,5)
    return FatGraph([1, 0, 3, 2, 5, 4], [(0, 1, 4), (2, 3, 5)], orientation=[0, 2, 4])


def _complete_graph_edges(pairs):
    """Half-edge pairing and per-vertex half-edge lists for given vertex pairs."""
    pairing = []
    at_vertex: dict[int, list[int]] = {}
    for e, (a, b) in enumerate(pairs):
        pairing.extend([2 * e + 1, 2 * e])
        at_vertex.setdefault(a, []).append(2 * e)
        at_vertex.setdefault(b, []).append(2 * e + 1)
    return pairing, at_vertex


def _search_cyclic_orders(pairs, target):
    """First cyclic-order assignment (fixed enumeration) hitting (g, s)."""
    pairing, at_vertex = _complete_graph_edges(pairs)
    vertices = sorted(at_vertex)
    options = []
    for v in vertices:
        a, b, c = at_vertex[v]
        options.append([(a, b, c), (a, c, b)])
    for combo in _iterproduct(*options):
        graph = FatGraph(pairing, combo,
                         orientation=[2 * e for e in range(len(pairs))])
        if graph.genus_punctures() == target:
            return graph
    raise ValueError("no cyclic order with (g, s) = %r on this graph" % (target,))


def fixture_graph(genus: int, punctures: int) -> FatGraph:
    """Shipped trivalent fatgraph for (g, s) in {(0,3), (1,1), (1,2), (2,1)}."""
    key = (genus, punctures)
    if key == (1, 1):
        return theta_graph(genus_one=True)
    if key == (0, 3):
        return theta_graph(genus_one=False)
    if key == (1, 2):
        k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        return _search_cyclic_orders(k4, (1, 2))
    if key == (2, 1):
        k33 = [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)]
        return _search_cyclic_orders(k33, (2, 1))
    raise ValueError("no shipped fixture for (g, s) = %r" % (key,))


# -- graph connections --------------------------------------------------------

class GraphConnection:
    """SL(1|1) (or SU(1|1)) group coordinates on every oriented edge."""

    def __init__(self, graph: FatGraph, coords, mode: str = "sl", table=None):
        if len(coords) != graph.num_edges:
            raise ValueError("need one coordinate triple per edge")
        if mode not in ("sl", "su"):
            raise ValueError("mode must be 'sl' or 'su'")
        if mode == "su" and table is None:
            raise ValueError("SU mode needs a conjugation table")
        for c in coords:
            if not c.is_sl():
                raise ValueError("graph connections use SL coordinates (s = 0)")
        self.graph = graph
        self.coords = list(coords)
        self.mode = mode
        self.table = table
        self.n = coords[0].n if coords else 0
        if mode == "su":
            report = self.check_reality()
            if not report.ok:
                raise ValueError("coordinates violate the SU(1|1) reality conditions")

    @classmethod
    def trivial(cls, graph: FatGraph, n: int, mode: str = "sl", table=None):
        return cls(graph, [GroupCoords.identity(n) for _ in range(graph.num_edges)],
                   mode=mode, table=table)

    def copy(self) -> "GraphConnection":
        return GraphConnection(self.graph, list(self.coords), mode=self.mode,
                               table=self.table)

    def edge_coords(self, e: int, forward: bool = True) -> GroupCoords:
        return self.coords[e] if forward else coords_inverse(self.coords[e])

    def edge_matrix(self, e: int, forward: bool = True) -> SuperMatrix11:
        return from_coords(self.edge_coords(e, forward))

    def check_reality(self, tol: float = 1e-9) -> CheckReport:
        """h_bar = -h and alpha_bar = -beta on every edge (SU form)."""
        report = CheckReport()
        for e, c in enumerate(self.coords):
            report.add("su_h[%d]" % e,
                       (c.h.conjugate(self.table) + c.h).max_abs(), tol)
            report.add("su_odd[%d]" % e,
                       (c.alpha.conjugate(self.table) + c.beta).max_abs(), tol)
        return report

    def holonomy(self, cycle) -> SuperMatrix11:
        """Ordered product of edge matrices along (edge, forward) steps."""
        if not cycle:
            return SuperMatrix11.identity(self.n)
        graph = self.graph
        prev_target = None
        acc = None
        for (e, forward) in cycle:
            src = graph.source(e) if forward else graph.target(e)
            dst = graph.target(e) if forward else graph.source(e)
            if prev_target is not None and src != prev_target:
                raise ValueError("cycle is not contiguous at edge %d" % e)
            prev_target = dst
            m = self.edge_matrix(e, forward)
            acc = m if acc is None else acc * m
        return acc

    def _apply_gauge(self, elements: dict) -> "GraphConnection":
        """Gauge transformation by one group element per vertex.

        Edges in their stored orientation map to R_source^{-1} g R_target, so
        a holonomy based at v is conjugated to R_v^{-1} Hol R_v.
        """
        graph = self.graph
        new = []
        for e, c in enumerate(self.coords):
            src, dst = graph.source(e), graph.target(e)
            out = c
            if src in elements:
                out = coords_product(coords_inverse(elements[src]), out)
            if dst in elements:
                out = coords_product(out, elements[dst])
            new.append(out)
        return GraphConnection(graph, new, mode=self.mode, table=self.table)

    def vertex_rescale(self, v: int, kind: str, param: GrassmannElement):
        """Gauge move at one vertex by a one-parameter subgroup element.

        kind 'diag' takes an even parameter c (toward-v edges gain h + c);
        'lower'/'upper' take an odd parameter shifting alpha resp. beta.  In
        SU mode only 'diag' with anti-real c and the paired move 'odd' are
        allowed.
        """
        n = self.n
        zero = GrassmannElement.zero(n)
        if kind == "diag":
            if not param.is_even():
                raise ParityError("diag rescaling parameter must be even")
            if self.mode == "su" and (param.conjugate(self.table) + param).max_abs() > 1e-9:
                raise ValueError("SU diag parameter must satisfy bar(c) = -c")
            r = GroupCoords(param, zero, zero, zero)
        elif kind == "lower":
            if self.mode == "su":
                raise ValueError("SU mode restricts to 'diag' and 'odd' rescalings")
            if not param.is_odd():
                raise ParityError("lower rescaling parameter must be odd")
            r = GroupCoords(zero, zero, param, zero)
        elif kind == "upper":
            if self.mode == "su":
                raise ValueError("SU mode restricts to 'diag' and 'odd' rescalings")
            if not param.is_odd():
                raise ParityError("upper rescaling parameter must be odd")
            r = GroupCoords(zero, zero, zero, param)
        elif kind == "odd":
            if not param.is_odd():
                raise ParityError("odd rescaling parameter must be odd")
            r = GroupCoords(zero, zero, param, -param.conjugate(self.table))
        else:
            raise ValueError("unknown rescaling kind %r" % kind)
        out = self._apply_gauge({v: r})
        if self.mode == "su":
            report = out.check_reality()
            if not report.ok:
                raise AssertionError("rescaling broke the SU reality conditions")
        return out

    def rescaling_element(self, kind: str, param: GrassmannElement) -> SuperMatrix11:
        """Matrix R such that a holonomy based at v maps to R^{-1} Hol R."""
        n = self.n
        zero = GrassmannElement.zero(n)
        if kind == "diag":
            return from_coords(GroupCoords(param, zero, zero, zero))
        if kind == "lower":
            return from_coords(GroupCoords(zero, zero, param, zero))
        if kind == "upper":
            return from_coords(GroupCoords(zero, zero, zero, param))
        if kind == "odd":
            return from_coords(GroupCoords(zero, zero, param,
                                           -param.conjugate(self.table)))
        raise ValueError("unknown rescaling kind %r" % kind)

    # -- gauge constraints ----------------------------------------------------

    def _signed_incidence(self) -> np.ndarray:
        """Rows: vertices; columns: edges; +1 at the head, -1 at the tail."""
        graph = self.graph
        mat = np.zeros((graph.num_vertices, graph.num_edges))
        for e in range(graph.num_edges):
            mat[graph.target(e), e] += 1.0
            mat[graph.source(e), e] -= 1.0
        return mat

    def vertex_sums(self):
        """Signed sums (h, alpha, beta) at each vertex; toward-v terms count +."""
        graph = self.graph
        sums = []
        for v in range(graph.num_vertices):
            h = GrassmannElement.zero(self.n)
            alpha = GrassmannElement.zero(self.n)
            beta = GrassmannElement.zero(self.n)
            for half in graph.cyclic_orders[v]:
                e, is_tail = graph.edge_of_half(half)
                sign = -1.0 if is_tail else 1.0
                h = h + sign * self.coords[e].h
                alpha = alpha + sign * self.coords[e].alpha
                beta = beta + sign * self.coords[e].beta
            sums.append((h, alpha, beta))
        return sums

    def _laplacian(self) -> np.ndarray:
        graph = self.graph
        lap = np.zeros((graph.num_vertices, graph.num_vertices))
        for h in range(len(graph.pairing)):
            v = graph.vertex_of[h]
            w = graph.vertex_of[graph.pairing[h]]
            if v == w:
                continue
            lap[v, v] += 1.0
            lap[v, w] -= 1.0
        return lap


def _solve_vertex_gauge(lap: np.ndarray, residuals, n: int, tol: float):
    """Solve L x = -residual per Grassmann monomial; returns (params, residual)."""
    masks = sorted({m for r in residuals for m in r.terms})
    rhs = np.zeros((lap.shape[0], len(masks)), dtype=complex)
    for row, r in enumerate(residuals):
        for col, mask in enumerate(masks):
            rhs[row, col] = r.terms.get(mask, 0j)
    pinv = np.linalg.pinv(lap, rcond=1e-9)
    sol = -(pinv @ rhs)
    worst = abs(lap @ sol + rhs).max() if rhs.size else 0.0
    params = []
    for v in range(lap.shape[0]):
        params.append(GrassmannElement(n, {m: sol[v, c] for c, m in enumerate(masks)}))
    return params, worst


def gauge_normalize(conn: GraphConnection, tol: float = 1e-9):
    """Bring all vertex sums to zero; returns (connection, report).

    Solves the odd sectors first (lower moves for alpha, upper for beta, which
    also perturb h), then the diagonal sector for h.  The report carries the
    post-normalization sums, the measured free-parameter counts of the
    constraint slice, and the residual gauge dimensions (Laplacian kernel).
    """
    graph = conn.graph
    n = conn.n
    lap = conn._laplacian()
    zero = GrassmannElement.zero(n)
    report = CheckReport()

    out = conn
    for stage, slot in (("lower", 1), ("upper", 2)):
        residuals = [sums[slot] for sums in out.vertex_sums()]
        params, worst = _solve_vertex_gauge(lap, residuals, n, tol)
        if worst > tol:
            report.add("normalize_solve_%s" % stage, worst, tol)
            report.info["singular"] = True
            return out, report
        if conn.mode == "su":
            # alpha and beta sums are conjugate-paired; one 'odd' move fixes both
            elements = {v: GroupCoords(zero, zero, p,
                                       -p.conjugate(conn.table))
                        for v, p in enumerate(params)}
            out = out._apply_gauge(elements)
            break
        elements = {}
        for v, p in enumerate(params):
            alpha = p if stage == "lower" else zero
            beta = p if stage == "upper" else zero
            elements[v] = GroupCoords(zero, zero, alpha, beta)
        out = out._apply_gauge(elements)

    residuals = [sums[0] for sums in out.vertex_sums()]
    params, worst = _solve_vertex_gauge(lap, residuals, n, tol)
    if worst > tol:
        report.add("normalize_solve_diag", worst, tol)
        report.info["singular"] = True
        return out, report
    if conn.mode == "su":
        # keep the diagonal parameters anti-real so reality is preserved
        params = [(p - p.conjugate(conn.table)) * 0.5 for p in params]
    elements = {v: GroupCoords(p, zero, zero, zero) for v, p in enumerate(params)}
    out = out._apply_gauge(elements)

    for v, (h, alpha, beta) in enumerate(out.vertex_sums()):
        report.add("vertex_h_sum[%d]" % v, h.max_abs(), tol)
        report.add("vertex_alpha_sum[%d]" % v, alpha.max_abs(), tol)
        report.add("vertex_beta_sum[%d]" % v, beta.max_abs(), tol)

    incidence = conn._signed_incidence()
    rank = int(np.linalg.matrix_rank(incidence, tol=1e-9))
    e_count = graph.num_edges
    report.info["singular"] = False
    report.info["free_even"] = e_count - rank
    report.info["free_odd"] = 2 * (e_count - rank)
    if conn.mode == "su":
        report.info["free_odd"] = e_count - rank
    report.info["residual_gauge_even"] = graph.num_vertices - rank
    report.info["residual_gauge_odd"] = 2 * (graph.num_vertices - rank)
    return out, report


def check_puncture_constraints(conn: GraphConnection, tol: float = 1e-9) -> CheckReport:
    """Deviation of each boundary holonomy from the identity, plus dim counts."""
    graph = conn.graph
    report = CheckReport()
    ident = SuperMatrix11.identity(conn.n)
    faces = graph.boundary_cycles()
    for k, face in enumerate(faces):
        hol = conn.holonomy(face)
        report.add("puncture[%d]" % k, (hol - ident).max_abs(), tol)
    # measured free parameters once the linearized face constraints are added
    incidence = conn._signed_incidence()
    face_rows = np.zeros((len(faces), graph.num_edges))
    for k, face in enumerate(faces):
        for (e, forward) in face:
            face_rows[k, e] += 1.0 if forward else -1.0
    combined = np.vstack([incidence, face_rows])
    rank = int(np.linalg.matrix_rank(combined, tol=1e-9))
    e_count = graph.num_edges
    report.info["constrained_free_even"] = e_count - rank
    report.info["constrained_free_odd"] = (2 if conn.mode == "sl" else 1) * (e_count - rank)
    report.info["num_punctures"] = len(faces)
    genus, s = graph.genus_punctures()
    report.info["closed_form_constrained"] = moduli_dims(
        genus, s, constrained=True, su=conn.mode == "su")
    return report


def moduli_dims(genus: int, punctures: int, constrained: bool = False,
                su: bool = False) -> tuple[int, int]:
    """Closed-form chart dimensions of the flat-connection moduli."""
    if punctures < 1 or 2 * genus - 2 + punctures <= 0:
        raise ValueError("need s >= 1 and 2g - 2 + s > 0, got (g, s) = (%d, %d)"
                         % (genus, punctures))
    if constrained:
        return (2 * genus, 2 * genus if su else 4 * genus)
    even = 2 * genus + 2 * punctures - 1
    odd = (2 * genus + punctures - 1) if su else (4 * genus + 2 * punctures - 2)
    return even, odd


# -- random and file-backed connections ---------------------------------------

def random_connection(rng, graph: FatGraph, n: int, mode: str = "sl",
                      table=None, scale: float = 0.4) -> GraphConnection:
    coords = []
    for _ in range(graph.num_edges):
        c = random_coords(rng, n, sl=True, scale=scale)
        if mode == "su":
            h = (c.h - c.h.conjugate(table)) * 0.5
            beta = -c.alpha.conjugate(table)
            c = GroupCoords(h, GrassmannElement.zero(n), c.alpha, beta)
        coords.append(c)
    return GraphConnection(graph, coords, mode=mode, table=table)


def flat_torus_connection(n: int, x: GroupCoords, scale) -> GraphConnection:
    """Puncture-flat connection on the (1,1) theta graph.

    Loops around the single puncture are commutators; taking the second loop
    coordinate proportional to the first makes the commutator exactly 1.
    """
    graph = theta_graph(genus_one=True)
    zero = GrassmannElement.zero(n)
    ident = GroupCoords.identity(n)
    y = GroupCoords(x.h * 0.3, zero, scale * x.alpha, scale * x.beta)
    return GraphConnection(graph, [ident, x, y])


def connection_to_dict(conn: GraphConnection) -> dict:
    return {"mode": conn.mode, "n": conn.n,
            "edges": [{"edge": e, "h": c.h.to_dict(), "alpha": c.alpha.to_dict(),
                       "beta": c.beta.to_dict()}
                      for e, c in enumerate(conn.coords)]}


def connection_from_dict(graph: FatGraph, data: dict, table=None) -> GraphConnection:
    n = int(data["n"])
    zero = GrassmannElement.zero(n)
    coords = [GroupCoords.identity(n) for _ in range(graph.num_edges)]
    for entry in data.get("edges", []):
        coords[int(entry["edge"])] = GroupCoords(
            GrassmannElement.from_dict(entry["h"]), zero,
            GrassmannElement.from_dict(entry["alpha"]),
            GrassmannElement.from_dict(entry["beta"]))
    return GraphConnection(graph, coords, mode=data.get("mode", "sl"), table=table)
