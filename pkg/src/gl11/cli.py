"""Command-line front end binding all modules to file-based workflows.

Every subcommand emits a deterministic run report (text or JSON, checks
sorted by name) and exits 0 exactly when all checks pass at the requested
tolerance.  Random suites are seeded through --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import cech, fatgraph, hitchin, integrable
from .grassmann import GrassmannElement
from .reports import CheckReport
from .supergroup import (
    GroupCoords,
    from_coords,
    coords_inverse,
    coords_product,
    random_coords,
    to_coords,
)

SELFTEST_GENERATORS = 8


@dataclass
class RunReport:
    """Per-command outcome: named residual checks plus info fields."""

    command: str
    checks: CheckReport = field(default_factory=CheckReport)

    @property
    def exit_status(self) -> int:
        return 0 if self.checks.ok else 1

    def to_dict(self) -> dict:
        body = self.checks.to_dict()
        body["command"] = self.command
        body["exit_status"] = self.exit_status
        return body

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2, sort_keys=True)
        lines = ["== %s ==" % self.command, self.checks.format_text(),
                 "status: %s" % ("pass" if self.exit_status == 0 else "FAIL")]
        return "\n".join(line for line in lines if line)


def _load_json(path: str) -> dict:
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as err:
        raise SystemExit("cannot read %s: %s" % (path, err))
    except json.JSONDecodeError as err:
        raise SystemExit("cannot parse %s: line %d column %d: %s"
                         % (path, err.lineno, err.colno, err.msg))


# -- group-selftest -------------------------------------------------------------

def cmd_group_selftest(args) -> RunReport:
    rng = np.random.default_rng(args.seed)
    report = RunReport("group-selftest")
    tol = args.tol
    n = SELFTEST_GENERATORS
    worst = {"associativity": 0.0, "identity": 0.0, "inverse_formula": 0.0,
             "sdet_exp_s": 0.0, "sdet_homomorphism": 0.0,
             "coords_vs_matrix": 0.0, "to_coords_roundtrip": 0.0}
    ident = from_coords(GroupCoords.identity(n))
    for _ in range(args.count):
        c1 = random_coords(rng, n)
        c2 = random_coords(rng, n)
        c3 = random_coords(rng, n)
        m1, m2, m3 = from_coords(c1), from_coords(c2), from_coords(c3)
        worst["associativity"] = max(worst["associativity"],
                                     (((m1 * m2) * m3) - (m1 * (m2 * m3))).max_abs())
        worst["identity"] = max(worst["identity"], ((m1 * ident) - m1).max_abs())
        worst["inverse_formula"] = max(
            worst["inverse_formula"],
            (m1.inverse() - from_coords(coords_inverse(c1))).max_abs())
        worst["sdet_exp_s"] = max(worst["sdet_exp_s"],
                                  (m1.sdet() - c1.s.exp()).max_abs())
        worst["sdet_homomorphism"] = max(
            worst["sdet_homomorphism"],
            ((m1 * m2).sdet() - m1.sdet() * m2.sdet()).max_abs())
        worst["coords_vs_matrix"] = max(
            worst["coords_vs_matrix"],
            (from_coords(coords_product(c1, c2)) - m1 * m2).max_abs())
        worst["to_coords_roundtrip"] = max(
            worst["to_coords_roundtrip"],
            (from_coords(to_coords(m1)) - m1).max_abs())
    if args.corrupt and args.count:
        # negative control: misstate the group law by a visible offset
        c1, c2 = random_coords(rng, n), random_coords(rng, n)
        bad = coords_product(c1, c2)
        bad = GroupCoords(bad.h + GrassmannElement.scalar(n, 0.5), bad.s,
                          bad.alpha, bad.beta)
        worst["coords_vs_matrix"] = max(
            worst["coords_vs_matrix"],
            (from_coords(bad) - from_coords(c1) * from_coords(c2)).max_abs())
    for name in sorted(worst):
        report.checks.add(name, worst[name], tol)
    report.checks.info["count"] = args.count
    return report


# -- cech-verify -----------------------------------------------------------------

def cmd_cech_verify(args) -> RunReport:
    report = RunReport("cech-verify")
    nerve = cech.nerve_from_dict(_load_json(args.nerve))
    data = cech.TransitionData.from_dict(nerve, _load_json(args.data))
    mode = args.mode
    if mode == "auto":
        mode = "sl" if data.is_sl() else "gl"
    if mode == "sl":
        report.checks.extend(cech.check_sl_cocycle(data, tol=args.tol))
    else:
        report.checks.extend(cech.check_gl_cocycle(data, tol=args.tol))
    if report.checks.ok and nerve.simplices[2]:
        g = cech.two_cocycle_g(data, tol=args.tol)
        if nerve.simplices[3]:
            report.checks.add("two_cocycle_closed", g.coboundary().max_abs(), args.tol)
        try:
            f = cech.solve_coboundary(g, tol=args.tol)
            report.checks.add("two_cocycle_split", (f.coboundary() - g).max_abs(),
                              args.tol)
        except cech.ObstructionError as err:
            report.checks.info["two_cocycle_split"] = str(err)
    report.checks.info["mode"] = mode
    return report


# -- hitchin-residual -------------------------------------------------------------

def cmd_hitchin_residual(args) -> RunReport:
    report = RunReport("hitchin-residual")
    metric = hitchin.MetricData.from_dict(_load_json(args.metric))
    higgs_data = _load_json(args.higgs)
    n = metric.n
    phi = hitchin.higgs_matrix(
        hitchin.LocalFunction.from_dict(n, higgs_data["a"]),
        hitchin.LocalFunction.from_dict(n, higgs_data["delta"]),
        hitchin.LocalFunction.from_dict(n, higgs_data["gamma"]))
    residual = hitchin.hitchin_residual(metric, phi, tol=args.tol)
    for i in (0, 1):
        for j in (0, 1):
            report.checks.add("residual[%d][%d]" % (i, j),
                              residual[i, j].max_abs(), args.tol)
    report.checks.add("chern_form_routes_agree",
                      (hitchin.chern_form(metric)
                       - hitchin.chern_form_via_inverse(metric)).max_abs(), args.tol)
    return report


# -- fatgraph ----------------------------------------------------------------------

def _load_graph_connection(args):
    graph = fatgraph.FatGraph.from_dict(_load_json(args.graph))
    conn = fatgraph.connection_from_dict(graph, _load_json(args.connection))
    return graph, conn


def cmd_fatgraph_normalize(args) -> RunReport:
    report = RunReport("fatgraph-normalize")
    _, conn = _load_graph_connection(args)
    normalized, check = fatgraph.gauge_normalize(conn, tol=args.tol)
    report.checks.extend(check)
    if args.output:
        with open(args.output, "w") as handle:
            json.dump(fatgraph.connection_to_dict(normalized), handle, indent=2,
                      sort_keys=True)
    return report


def _parse_cycle(text: str):
    steps = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token[-1] not in "+-":
            raise SystemExit("cycle steps look like '3+' or '2-', got %r" % token)
        steps.append((int(token[:-1]), token[-1] == "+"))
    return steps


def cmd_fatgraph_holonomy(args) -> RunReport:
    report = RunReport("fatgraph-holonomy")
    _, conn = _load_graph_connection(args)
    hol = conn.holonomy(_parse_cycle(args.cycle))
    report.checks.info["holonomy"] = hol.to_dict()
    report.checks.info["supertrace"] = hol.supertrace().to_dict()
    report.checks.info["sdet"] = hol.sdet().to_dict()
    return report


def cmd_fatgraph_punctures(args) -> RunReport:
    report = RunReport("fatgraph-check-punctures")
    _, conn = _load_graph_connection(args)
    report.checks.extend(fatgraph.check_puncture_constraints(conn, tol=args.tol))
    return report


def cmd_fatgraph_dims(args) -> RunReport:
    report = RunReport("fatgraph-dims")
    even, odd = fatgraph.moduli_dims(args.genus, args.punctures,
                                     constrained=args.constrained, su=args.su)
    report.checks.info["even"] = even
    report.checks.info["odd"] = odd
    return report


# -- integrable ----------------------------------------------------------------------

def _systems_for(args, rng):
    if args.system:
        return [integrable.ParabolicData.from_dict(_load_json(args.system))]
    return [integrable.random_system(rng, args.m) for _ in range(args.count)]


def cmd_garnier_check(args) -> RunReport:
    report = RunReport("garnier-check")
    rng = np.random.default_rng(args.seed)
    worst_routes = 0.0
    worst_bracket = 0.0
    worst_sum = 0.0
    for p in _systems_for(args, rng):
        hams = [integrable.garnier_hamiltonian(p, i) for i in range(p.m)]
        total = GrassmannElement.zero(p.n)
        for i, h in enumerate(hams):
            worst_routes = max(worst_routes,
                               (h - integrable.garnier_hamiltonian_expanded(p, i)).max_abs())
            total = total + h
        worst_sum = max(worst_sum, total.max_abs())
        for i in range(p.m):
            for j in range(i + 1, p.m):
                worst_bracket = max(worst_bracket,
                                    integrable.poisson_bracket(p, hams[i], hams[j]).max_abs())
    report.checks.add("two_routes_agree", worst_routes, args.tol)
    report.checks.add("poisson_commutativity", worst_bracket, args.tol)
    report.checks.add("hamiltonians_sum_to_zero", worst_sum, args.tol)
    return report


def cmd_gaudin_commute(args) -> RunReport:
    report = RunReport("gaudin-commute")
    rng = np.random.default_rng(args.seed)
    if args.system:
        p = integrable.ParabolicData.from_dict(_load_json(args.system))
    else:
        p = integrable.random_system(rng, args.m)
    hams = [integrable.gaudin_hamiltonian(p, i, hbar=args.hbar) for i in range(p.m)]
    scale = max(max(np.abs(h).max() for h in hams), 1.0)
    for i in range(p.m):
        for j in range(i + 1, p.m):
            c = hams[i] @ hams[j] - hams[j] @ hams[i]
            norm = np.linalg.norm(c) / max(np.linalg.norm(hams[i]) * np.linalg.norm(hams[j]), 1e-30)
            report.checks.add("commutator[%d,%d]" % (i, j), norm, args.tol)
    report.checks.add("sum_zero", np.abs(sum(hams)).max() / scale, args.tol)
    n_tot = integrable.number_matrix(p.m)
    worst = max(np.abs(h @ n_tot - n_tot @ h).max() for h in hams)
    report.checks.add("fermion_number_conserved", worst / scale, args.tol)
    report.checks.info["m"] = p.m
    return report


def cmd_quantize_compare(args) -> RunReport:
    report = RunReport("quantize-compare")
    rng = np.random.default_rng(args.seed)
    if args.system:
        p = integrable.ParabolicData.from_dict(_load_json(args.system))
    else:
        p = integrable.random_system(rng, args.m)
    for i in range(p.m):
        classical = integrable.garnier_hamiltonian(p, i)
        quantum = integrable.quantize(p, classical, hbar=args.hbar)
        direct = integrable.gaudin_hamiltonian(p, i, hbar=args.hbar)
        report.checks.add("quantize_matches_gaudin[%d]" % i,
                          np.abs(quantum - direct).max(), args.tol)
    report.checks.info["m"] = p.m
    return report


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gl11",
        description="Exact checks for GL(1|1) supergeometry computations.")
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="pass/fail tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for random suites (default 0)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group-selftest", help="group law and Berezinian suites")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--corrupt", action="store_true",
                   help="inject a deliberate failure (negative control)")
    p.set_defaults(func=cmd_group_selftest)

    p = sub.add_parser("cech-verify", help="transition-cocycle identities")
    p.add_argument("nerve")
    p.add_argument("data")
    p.add_argument("--mode", choices=("auto", "sl", "gl"), default="auto")
    p.set_defaults(func=cmd_cech_verify)

    p = sub.add_parser("hitchin-residual", help="metric + Higgs residual check")
    p.add_argument("metric")
    p.add_argument("higgs")
    p.set_defaults(func=cmd_hitchin_residual)

    p = sub.add_parser("fatgraph", help="graph-connection operations")
    fat = p.add_subparsers(dest="fatgraph_command", required=True)

    q = fat.add_parser("normalize", help="solve the vertex gauge constraints")
    q.add_argument("graph")
    q.add_argument("connection")
    q.add_argument("-o", "--output", help="write the normalized connection here")
    q.set_defaults(func=cmd_fatgraph_normalize)

    q = fat.add_parser("holonomy", help="holonomy along an edge cycle")
    q.add_argument("graph")
    q.add_argument("connection")
    q.add_argument("--cycle", required=True, help="comma list like '0+,2-,1+'")
    q.set_defaults(func=cmd_fatgraph_holonomy)

    q = fat.add_parser("check-punctures", help="boundary holonomy constraints")
    q.add_argument("graph")
    q.add_argument("connection")
    q.set_defaults(func=cmd_fatgraph_punctures)

    q = fat.add_parser("dims", help="closed-form moduli dimensions")
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--punctures", type=int, required=True)
    q.add_argument("--constrained", action="store_true")
    q.add_argument("--su", action="store_true")
    q.set_defaults(func=cmd_fatgraph_dims)

    p = sub.add_parser("garnier-check", help="classical integrability suite")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--system", help="JSON system file instead of random draws")
    p.set_defaults(func=cmd_garnier_check)

    p = sub.add_parser("gaudin-commute", help="operator commutator suite")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--system")
    p.set_defaults(func=cmd_gaudin_commute)

    p = sub.add_parser("quantize-compare", help="quantized Garnier vs Gaudin")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--system")
    p.set_defaults(func=cmd_quantize_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except ValueError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    print(report.render(args.format))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
