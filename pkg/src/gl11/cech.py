"""Cech cochain algebra on an abstract nerve.

A nerve is a finite simplicial complex of dimension <= 3 recording which chart
overlaps are nonempty.  Cochains take values in a Grassmann algebra and extend
to all vertex orderings by the alternating rule.  The module verifies the
SL(1|1) and GL(1|1) transition-cocycle identities, builds the quadratic
2-cocycle and cup products, solves coboundary equations exactly (least-norm,
per Grassmann monomial), and checks the Higgs gluing constraints.
"""

from __future__ import annotations

import cmath
from itertools import combinations

import numpy as np

from .grassmann import GrassmannElement, ParityError, _sort_sign
from .reports import CheckReport

TWO_PI_I = 2j * cmath.pi


class ObstructionError(ValueError):
    """Raised when a coboundary equation has no solution on the nerve."""


class Nerve:
    """Vertices plus ordered simplices of dimension 1..3, closed under faces."""

    def __init__(self, vertices, simplices):
        self.vertices = tuple(vertices)
        self.simplices = {p: [tuple(s) for s in simplices.get(p, [])] for p in (1, 2, 3)}
        self.simplices[0] = [(v,) for v in self.vertices]
        self._index = {}
        for p in (0, 1, 2, 3):
            seen = {}
            for pos, s in enumerate(self.simplices[p]):
                if len(set(s)) != len(s):
                    raise ValueError("simplex %r has repeated vertices" % (s,))
                key = frozenset(s)
                if key in seen:
                    raise ValueError("simplex %r listed twice" % (s,))
                seen[key] = (pos, s)
            self._index[p] = seen
        self._check_closure()

    def _check_closure(self):
        for p in (1, 2, 3):
            for s in self.simplices[p]:
                for face in combinations(s, p):
                    if frozenset(face) not in self._index[p - 1]:
                        raise ValueError("face %r of %r missing from nerve" % (face, s))

    def lookup(self, p: int, simplex) -> tuple[int, int, tuple]:
        """(position, orientation sign, stored tuple) for a vertex tuple."""
        key = frozenset(simplex)
        if len(simplex) != p + 1 or len(key) != p + 1:
            raise ValueError("%r is not a %d-simplex" % (simplex, p))
        if key not in self._index[p]:
            raise KeyError("simplex %r not in nerve" % (simplex,))
        pos, stored = self._index[p][key]
        order = [stored.index(v) for v in simplex]
        return pos, _sort_sign(order), stored

    def num(self, p: int) -> int:
        return len(self.simplices[p])


def nerve_to_dict(nerve: Nerve) -> dict:
    return {"vertices": list(nerve.vertices),
            "simplices": {str(p): [list(s) for s in nerve.simplices[p]]
                          for p in (1, 2, 3) if nerve.simplices[p]}}


def nerve_from_dict(data: dict) -> Nerve:
    simplices = {int(p): [tuple(s) for s in lst]
                 for p, lst in data.get("simplices", {}).items()}
    return Nerve(data["vertices"], simplices)


def triangle_nerve() -> Nerve:
    return Nerve([1, 2, 3], {1: [(1, 2), (1, 3), (2, 3)], 2: [(1, 2, 3)]})


def tetrahedron_nerve(solid: bool = True) -> Nerve:
    """Full tetrahedron; with solid=False only its boundary (H^2 nonzero)."""
    edges = list(combinations((1, 2, 3, 4), 2))
    triangles = list(combinations((1, 2, 3, 4), 3))
    simplices = {1: edges, 2: triangles}
    if solid:
        simplices[3] = [(1, 2, 3, 4)]
    return Nerve([1, 2, 3, 4], simplices)


def genus1_nerve() -> Nerve:
    """Four charts glued in a cycle: no triple overlaps, so H^1 is nontrivial."""
    return Nerve([1, 2, 3, 4], {1: [(1, 2), (2, 3), (3, 4), (1, 4)]})


class Cochain:
    """Degree-p cochain with Grassmann values, alternating in the vertices."""

    def __init__(self, nerve: Nerve, degree: int, n: int, values=None):
        if degree not in (0, 1, 2, 3):
            raise ValueError("degree must be 0..3, got %r" % degree)
        self.nerve = nerve
        self.degree = degree
        self.n = n
        self.values = {}
        if values:
            for simplex, val in values.items():
                pos, sign, stored = nerve.lookup(degree, tuple(simplex))
                self.values[stored] = (val if sign == 1 else -val)

    @classmethod
    def zero(cls, nerve, degree, n):
        c = cls(nerve, degree, n)
        for s in nerve.simplices[degree]:
            c.values[s] = GrassmannElement.zero(n)
        return c

    def value(self, simplex) -> GrassmannElement:
        """Oriented value on any vertex ordering of a listed simplex."""
        _, sign, stored = self.nerve.lookup(self.degree, tuple(simplex))
        val = self.values.get(stored, GrassmannElement.zero(self.n))
        return val if sign == 1 else -val

    def coboundary(self) -> "Cochain":
        """Alternating-sum differential; raises above degree 3."""
        if self.degree >= 3:
            raise ValueError("coboundary would exceed nerve dimension 3")
        out = Cochain(self.nerve, self.degree + 1, self.n)
        for s in self.nerve.simplices[self.degree + 1]:
            acc = GrassmannElement.zero(self.n)
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                term = self.value(face)
                acc = acc + (term if k % 2 == 0 else -term)
            out.values[s] = acc
        return out

    def __add__(self, other):
        out = Cochain(self.nerve, self.degree, self.n)
        for s in self.nerve.simplices[self.degree]:
            out.values[s] = self.value(s) + other.value(s)
        return out

    def __sub__(self, other):
        out = Cochain(self.nerve, self.degree, self.n)
        for s in self.nerve.simplices[self.degree]:
            out.values[s] = self.value(s) - other.value(s)
        return out

    def __neg__(self):
        out = Cochain(self.nerve, self.degree, self.n)
        for s in self.nerve.simplices[self.degree]:
            out.values[s] = -self.value(s)
        return out

    def max_abs(self) -> float:
        return max((v.max_abs() for v in self.values.values()), default=0.0)

    def is_close(self, other, tol=1e-9):
        return (self - other).max_abs() <= tol


def cup_product(u: Cochain, v: Cochain) -> Cochain:
    """(u cup v) on the front and back faces, with Grassmann multiplication.

    Degrees up to the nerve dimension 3 are supported; the extra degree is
    needed to state the Leibniz identity for p + q = 2.
    """
    p, q = u.degree, v.degree
    if p + q > 3:
        raise ValueError("cup product degree %d exceeds the nerve dimension" % (p + q))
    out = Cochain(u.nerve, p + q, u.n)
    for s in u.nerve.simplices[p + q]:
        out.values[s] = u.value(s[:p + 1]) * v.value(s[p:])
    return out


def _coboundary_matrix(nerve: Nerve, degree_from: int) -> np.ndarray:
    """Matrix of delta: C^{degree_from} -> C^{degree_from+1} in the listed bases."""
    rows = nerve.simplices[degree_from + 1]
    cols = {s: i for i, s in enumerate(nerve.simplices[degree_from])}
    mat = np.zeros((len(rows), len(cols)))
    for r, s in enumerate(rows):
        for k in range(len(s)):
            face = s[:k] + s[k + 1:]
            _, sign, stored = nerve.lookup(degree_from, face)
            mat[r, cols[stored]] += ((-1) ** k) * sign
    return mat


def _monomial_stack(cochain: Cochain):
    """All monomial masks appearing in a cochain, plus the coefficient matrix."""
    masks = sorted({m for v in cochain.values.values() for m in v.terms})
    simplices = cochain.nerve.simplices[cochain.degree]
    mat = np.zeros((len(simplices), len(masks)), dtype=complex)
    for r, s in enumerate(simplices):
        v = cochain.values.get(s)
        if v is None:
            continue
        for c, mask in enumerate(masks):
            mat[r, c] = v.terms.get(mask, 0j)
    return masks, mat


def solve_coboundary(g: Cochain, tol: float = 1e-9) -> Cochain:
    """Least-norm f with delta f = g, solved per Grassmann monomial.

    Requires delta g = 0 when the nerve has simplices one dimension up.
    Raises ObstructionError when the linear system is inconsistent.
    """
    if g.degree == 0:
        raise ValueError("cannot solve delta f = g for a 0-cochain g")
    if g.degree < 3 and g.nerve.simplices[g.degree + 1]:
        closed = g.coboundary().max_abs()
        if closed > tol:
            raise ValueError("right-hand side is not closed: |delta g| = %.3e" % closed)
    mat = _coboundary_matrix(g.nerve, g.degree - 1)
    masks, rhs = _monomial_stack(g)
    pinv = np.linalg.pinv(mat, rcond=1e-9)
    sol = pinv @ rhs
    residual = mat @ sol - rhs
    worst = abs(residual).max() if residual.size else 0.0
    if worst > tol:
        raise ObstructionError(
            "obstruction class nonzero on this nerve (residual %.3e)" % worst)
    out = Cochain(g.nerve, g.degree - 1, g.n)
    for r, s in enumerate(g.nerve.simplices[g.degree - 1]):
        out.values[s] = GrassmannElement(g.n, {m: sol[r, c] for c, m in enumerate(masks)})
    return out


def coboundary_solution_dim(nerve: Nerve, degree_from: int) -> int:
    """Dimension of the kernel of delta on degree_from-cochains (per monomial)."""
    mat = _coboundary_matrix(nerve, degree_from)
    rank = np.linalg.matrix_rank(mat, tol=1e-9) if mat.size else 0
    return nerve.num(degree_from) - rank


class TransitionData:
    """GL(1|1) transition-function data on a nerve.

    Stores (h, s, alpha, beta) on each listed 1-simplex and the branch integer
    n on each listed 2-simplex.  Accessors extend to the reversed orientation
    by h_ji = -h_ij, s_ji = -s_ij, alpha_ji = -e^{s_ij} alpha_ij,
    beta_ji = -e^{-s_ij} beta_ij (plain sign flips in SL mode).
    """

    def __init__(self, nerve: Nerve, n: int, edges=None, integers=None):
        self.nerve = nerve
        self.n = n
        self.edge_data = {}
        self.integers = {}
        zero = GrassmannElement.zero(n)
        for e in nerve.simplices[1]:
            self.edge_data[e] = {"h": zero, "s": zero, "alpha": zero, "beta": zero}
        if edges:
            for simplex, payload in edges.items():
                self.set_edge(simplex, **payload)
        for tri in nerve.simplices[2]:
            self.integers[tri] = 0
        if integers:
            for simplex, value in integers.items():
                _, sign, stored = nerve.lookup(2, tuple(simplex))
                if sign != 1:
                    raise ValueError("set integers on listed orientation only")
                self.integers[stored] = int(value)

    def set_edge(self, simplex, h=None, s=None, alpha=None, beta=None):
        _, sign, stored = self.nerve.lookup(1, tuple(simplex))
        if sign != 1:
            raise ValueError("set edge data on the listed orientation only")
        slot = self.edge_data[stored]
        for key, val in (("h", h), ("s", s), ("alpha", alpha), ("beta", beta)):
            if val is None:
                continue
            if key in ("h", "s") and not val.is_even():
                raise ParityError("%s_%r must be even" % (key, simplex))
            if key in ("alpha", "beta") and not val.is_odd():
                raise ParityError("%s_%r must be odd" % (key, simplex))
            slot[key] = val

    def is_sl(self, tol: float = 1e-12) -> bool:
        return all(d["s"].max_abs() <= tol for d in self.edge_data.values())

    def _oriented(self, i, j):
        _, sign, stored = self.nerve.lookup(1, (i, j))
        return self.edge_data[stored], sign == 1

    def h(self, i, j) -> GrassmannElement:
        data, forward = self._oriented(i, j)
        return data["h"] if forward else -data["h"]

    def s(self, i, j) -> GrassmannElement:
        data, forward = self._oriented(i, j)
        return data["s"] if forward else -data["s"]

    def alpha(self, i, j) -> GrassmannElement:
        data, forward = self._oriented(i, j)
        if forward:
            return data["alpha"]
        return -(data["s"].exp() * data["alpha"])

    def beta(self, i, j) -> GrassmannElement:
        data, forward = self._oriented(i, j)
        if forward:
            return data["beta"]
        return -((-data["s"]).exp() * data["beta"])

    def integer(self, i, j, k) -> int:
        _, sign, stored = self.nerve.lookup(2, (i, j, k))
        if sign != 1:
            raise ValueError("branch integers are defined on listed orientations")
        return self.integers[stored]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [
                {"simplex": list(e), "h": d["h"].to_dict(), "s": d["s"].to_dict(),
                 "alpha": d["alpha"].to_dict(), "beta": d["beta"].to_dict()}
                for e, d in sorted(self.edge_data.items())
            ],
            "triangles": [
                {"simplex": list(tri), "n": val}
                for tri, val in sorted(self.integers.items())
            ],
        }

    @classmethod
    def from_dict(cls, nerve: Nerve, data: dict) -> "TransitionData":
        td = cls(nerve, int(data["n"]))
        for entry in data.get("edges", []):
            td.set_edge(tuple(entry["simplex"]),
                        h=GrassmannElement.from_dict(entry["h"]),
                        s=GrassmannElement.from_dict(entry["s"]),
                        alpha=GrassmannElement.from_dict(entry["alpha"]),
                        beta=GrassmannElement.from_dict(entry["beta"]))
        for entry in data.get("triangles", []):
            _, sign, stored = nerve.lookup(2, tuple(entry["simplex"]))
            td.integers[stored] = int(entry["n"])
        return td


def check_sl_cocycle(data: TransitionData, tol: float = 1e-9,
                     h_mod_2pi: bool = False) -> CheckReport:
    """Additive cocycle identities on every listed 2-simplex (SL mode, s = 0)."""
    if not data.is_sl():
        raise ValueError("check_sl_cocycle requires SL mode (s identically zero)")
    return _cocycle_report(data, tol, twisted=False, h_mod_2pi=h_mod_2pi)


def check_gl_cocycle(data: TransitionData, tol: float = 1e-9,
                     h_mod_2pi: bool = False) -> CheckReport:
    """Twisted cocycle identities (e^{s} factors); reduces to the SL check at s = 0."""
    return _cocycle_report(data, tol, twisted=True, h_mod_2pi=h_mod_2pi)


def _reduce_mod(x: GrassmannElement, period: complex) -> GrassmannElement:
    """Shift the body by an integer multiple of period minimizing its size."""
    b = x.body()
    k = round((b / period).real)
    return x - GrassmannElement.scalar(x.n, k * period)


def _cocycle_report(data, tol, twisted, h_mod_2pi=False):
    report = CheckReport()
    n = data.n
    for (i, j, k) in data.nerve.simplices[2]:
        label = "%d%d%d" % (i, j, k)
        e_s = data.s(i, j).exp() if twisted else GrassmannElement.one(n)
        e_ms = (-data.s(i, j)).exp() if twisted else GrassmannElement.one(n)
        res_alpha = data.alpha(i, k) - data.alpha(i, j) - e_ms * data.alpha(j, k)
        res_beta = data.beta(i, k) - data.beta(i, j) - e_s * data.beta(j, k)
        quad = (data.alpha(i, j) * e_s * data.beta(j, k)
                - e_ms * data.alpha(j, k) * data.beta(i, j)) * 0.5
        res_h = (data.h(i, k) - data.h(i, j) - data.h(j, k) - quad
                 - GrassmannElement.scalar(n, TWO_PI_I * data.integer(i, j, k)))
        if h_mod_2pi:
            res_h = _reduce_mod(res_h, TWO_PI_I)
        report.add("alpha_cocycle[%s]" % label, res_alpha.max_abs(), tol)
        report.add("beta_cocycle[%s]" % label, res_beta.max_abs(), tol)
        report.add("h_cocycle[%s]" % label, res_h.max_abs(), tol)
        if twisted:
            res_s = data.s(i, k) - data.s(i, j) - data.s(j, k)
            res_sdet = (data.s(i, k).exp()
                        - data.s(i, j).exp() * data.s(j, k).exp())
            report.add("s_additivity[%s]" % label,
                       _reduce_mod(res_s, TWO_PI_I).max_abs()
                       if h_mod_2pi else res_s.max_abs(), tol)
            report.add("sdet_cocycle[%s]" % label, res_sdet.max_abs(), tol)
    return report


def two_cocycle_value(data: TransitionData, i, j, k) -> GrassmannElement:
    """g_ijk = (alpha_ij e^{s_ij} beta_jk - e^{-s_ij} alpha_jk beta_ij) / 2."""
    e_s = data.s(i, j).exp()
    e_ms = (-data.s(i, j)).exp()
    return (data.alpha(i, j) * e_s * data.beta(j, k)
            - e_ms * data.alpha(j, k) * data.beta(i, j)) * 0.5


def two_cocycle_g(data: TransitionData, tol: float = 1e-9) -> Cochain:
    """The quadratic 2-cocycle, with antisymmetry and closedness asserted."""
    report = check_gl_cocycle(data, tol)
    if not report.ok:
        raise ValueError("transition data fails the cocycle check: %s"
                         % [c.name for c in report.failing()])
    out = Cochain(data.nerve, 2, data.n)
    for (i, j, k) in data.nerve.simplices[2]:
        out.values[(i, j, k)] = two_cocycle_value(data, i, j, k)
    # antisymmetry under all vertex permutations, recomputed from raw data
    from itertools import permutations
    for (i, j, k) in data.nerve.simplices[2]:
        base = out.values[(i, j, k)]
        for perm in permutations((i, j, k)):
            sign = _sort_sign([(i, j, k).index(v) for v in perm])
            diff = two_cocycle_value(data, *perm) - sign * base
            if diff.max_abs() > tol:
                raise AssertionError("two-cocycle not antisymmetric on %r" % (perm,))
    if data.nerve.simplices[3]:
        closed = out.coboundary().max_abs()
        if closed > tol:
            raise AssertionError("two-cocycle not closed: |delta g| = %.3e" % closed)
    return out


def multiplicative_class(data: TransitionData, tol: float = 1e-9) -> Cochain:
    """k_ij = h_ij + f_ij with delta f = g: e^{k} is a multiplicative cocycle.

    delta(k) = -2 pi i n_ijk on every triangle, so exp(k_ik) equals
    exp(k_ij) exp(k_jk) exactly.  The representative depends on the
    least-norm choice of f.
    """
    f = solve_coboundary(two_cocycle_g(data, tol), tol)
    k = Cochain(data.nerve, 1, data.n)
    for (i, j) in data.nerve.simplices[1]:
        k.values[(i, j)] = data.h(i, j) + f.value((i, j))
    return k


class HiggsCechData:
    """Per-chart Higgs entries (a_i, b_i even; delta_i, gamma_i odd)."""

    def __init__(self, nerve: Nerve, n: int, a=None, b=None, delta=None, gamma=None):
        self.nerve = nerve
        self.n = n
        zero = GrassmannElement.zero(n)
        verts = nerve.vertices
        self.a = dict(a) if a else {v: zero for v in verts}
        self.b = dict(b) if b else {v: zero for v in verts}
        self.delta = dict(delta) if delta else {v: zero for v in verts}
        self.gamma = dict(gamma) if gamma else {v: zero for v in verts}
        for v in verts:
            if not (self.a[v].is_even() and self.b[v].is_even()):
                raise ParityError("a_%r and b_%r must be even" % (v, v))
            if not (self.delta[v].is_odd() and self.gamma[v].is_odd()):
                raise ParityError("delta_%r and gamma_%r must be odd" % (v, v))


def _check_higgs_sections(data: TransitionData, higgs: HiggsCechData,
                          tol: float) -> CheckReport:
    """delta_j = e^{-s_ij} delta_i and gamma_j = e^{s_ij} gamma_i on overlaps."""
    report = CheckReport()
    for (i, j) in data.nerve.simplices[1]:
        e_s = data.s(i, j).exp()
        e_ms = (-data.s(i, j)).exp()
        res_d = higgs.delta[j] - e_ms * higgs.delta[i]
        res_g = higgs.gamma[j] - e_s * higgs.gamma[i]
        report.add("delta_section[%d%d]" % (i, j), res_d.max_abs(), tol)
        report.add("gamma_section[%d%d]" % (i, j), res_g.max_abs(), tol)
    return report


def sl_higgs_obstruction(data: TransitionData, higgs: HiggsCechData,
                         tol: float = 1e-9):
    """Obstruction to gluing a supertraceless Higgs field.

    Builds t_ij = delta_i alpha_ij - beta_ij gamma_i, verifies the cocycle
    identity t_jk - t_ik + t_ij = 0, and attempts t = delta(eta).  Returns
    (t, eta, report); eta is None when the class [t] is nonzero.
    """
    for v in higgs.nerve.vertices:
        if higgs.b[v].max_abs() > tol:
            raise ValueError("sl case requires b = 0; b_%r is nonzero" % (v,))
    report = _check_higgs_sections(data, higgs, tol)
    if not report.ok:
        raise ValueError("delta/gamma do not transform as sections: %s"
                         % [c.name for c in report.failing()])
    t = Cochain(data.nerve, 1, data.n)
    for (i, j) in data.nerve.simplices[1]:
        t.values[(i, j)] = (higgs.delta[i] * data.alpha(i, j)
                            - data.beta(i, j) * higgs.gamma[i])
    if data.nerve.simplices[2]:
        report.add("t_cocycle", t.coboundary().max_abs(), tol)
    eta = None
    try:
        eta = solve_coboundary(t, tol)
        report.add("t_exact", (eta.coboundary() - t).max_abs(), tol)
        report.info["obstructed"] = False
    except ObstructionError as err:
        report.info["obstructed"] = True
        report.info["obstruction"] = str(err)
    return t, eta, report


def gl_higgs_constraints(data: TransitionData, higgs: HiggsCechData,
                         tol: float = 1e-9) -> CheckReport:
    """General supertrace constraints: the two b-relations and the c-cocycle."""
    report = CheckReport()
    n = data.n
    c = Cochain(data.nerve, 1, n)
    for (i, j) in data.nerve.simplices[1]:
        label = "%d%d" % (i, j)
        e_s = data.s(i, j).exp()
        e_ms = (-data.s(i, j)).exp()
        res_b = higgs.b[i] - higgs.b[j]
        brel_alpha = data.alpha(i, j) * higgs.b[i] - (higgs.gamma[i]
                                                      - e_ms * higgs.gamma[j])
        brel_beta = data.beta(i, j) * higgs.b[i] - (e_s * higgs.delta[j]
                                                    - higgs.delta[i])
        report.add("b_global[%s]" % label, res_b.max_abs(), tol)
        report.add("brel_alpha[%s]" % label, brel_alpha.max_abs(), tol)
        report.add("brel_beta[%s]" % label, brel_beta.max_abs(), tol)
        c_ij = (data.beta(i, j) * higgs.gamma[i]
                - higgs.delta[i] * data.alpha(i, j)
                - data.beta(i, j) * data.alpha(i, j) * higgs.b[i])
        c.values[(i, j)] = c_ij
        # alternation c_ji = -c_ij recomputed from base-j data (uses brel)
        c_ji = (data.beta(j, i) * higgs.gamma[j]
                - higgs.delta[j] * data.alpha(j, i)
                - data.beta(j, i) * data.alpha(j, i) * higgs.b[j])
        report.add("c_alternating[%s]" % label, (c_ji + c_ij).max_abs(), tol)
    for (i, j, k) in data.nerve.simplices[2]:
        res = c.value((i, j)) + c.value((j, k)) + c.value((k, i))
        report.add("c_cocycle[%d%d%d]" % (i, j, k), res.max_abs(), tol)
    # solve c_ij = a_i - a_j, i.e. delta(a) = -c, and compare the given a
    try:
        solve_coboundary(-c, tol)
        report.info["c_exact"] = True
        report.info["a_solution_dim"] = coboundary_solution_dim(data.nerve, 0)
    except ObstructionError as err:
        report.info["c_exact"] = False
        report.info["obstruction"] = str(err)
    given = max(((c.value((i, j)) - (higgs.a[i] - higgs.a[j])).max_abs()
                 for (i, j) in data.nerve.simplices[1]), default=0.0)
    report.add("c_equals_a_difference", given, tol)
    return report


# -- constructors for valid random data (used by tests and fixtures) ----------

def transition_from_frames(nerve: Nerve, frames: dict) -> TransitionData:
    """Exact cocycle data g_ij = R_i^{-1} R_j from per-vertex frame coordinates.

    Frame bodies should stay small so that no 2*pi*i branch integers arise;
    the returned data has n_ijk = 0.
    """
    from .supergroup import coords_inverse, coords_product

    first = next(iter(frames.values()))
    td = TransitionData(nerve, first.n)
    for (i, j) in nerve.simplices[1]:
        cij = coords_product(coords_inverse(frames[i]), frames[j])
        td.set_edge((i, j), h=cij.h, s=cij.s, alpha=cij.alpha, beta=cij.beta)
    return td


def higgs_from_global(nerve: Nerve, frames: dict, phi) -> HiggsCechData:
    """Chart data of a fixed supermatrix phi conjugated into each frame."""
    from .supergroup import from_coords

    n = phi.n
    a, b, delta, gamma = {}, {}, {}, {}
    for v in nerve.vertices:
        r = from_coords(frames[v])
        local = r.inverse() * phi * r
        a[v] = (local.a + local.d) * 0.5
        b[v] = local.a - local.d
        delta[v] = local.beta
        gamma[v] = local.gamma
    return HiggsCechData(nerve, n, a=a, b=b, delta=delta, gamma=gamma)
