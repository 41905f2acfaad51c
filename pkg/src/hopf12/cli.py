"""Command-line driver.  Every verification suite is a subcommand; ``verify-all``
runs them together.  Output is JSON by default (sorted keys, scalars in the
CycQ6 text form) or a text rendering with ``--pretty``.

Exit codes: 0 when no check failed (undetermined checks only warn), 1 when a
check failed, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .exactmath import ZERO, format_cyc, parse_cyc, theta_value
from .hopfcore import (FORMULA_CONVENTIONS, build_A1, build_C, build_double, compare_doubles,
                       double_from_formula, dual_hopf, phi_A1_to_Cdual, verify_hopf,
                       verify_morphism)
from .liftings import (BOSONIZATION_FAMILIES, bosonize, build_lifting, lifting_to_bosonization,
                       verify_bialgebra_on_relations)
from .nichols import (PRESETS, UNDETERMINED, hilbert, infinite_certificate, parse_relations,
                      preset_label, verify_presentation, verify_relation)
from .repmod import (LAMBDA_PAIRS, PROJECTIVE_LABELS, SIMPLE_LABELS, Ext, Label, OneDim, Proj,
                     TwoDim, catalog, class_ring_check, class_ring_image, fusion, is_isomorphic,
                     is_simple, k_is_split, predicted_tensor, verify_module)
from .ydbraid import (INFINITE_PAIRS, braid_equation, braiding, closed_form_braiding,
                      dmod_from_yd, dual_yd, is_invertible, verify_yd, yd_from_dmod)

PASS, FAIL, UNDET = "pass", "fail", "undetermined"


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time: float = 0.0
    config: dict = field(default_factory=dict)

    def add(self, cid: str, status, details: str = ""):
        if isinstance(status, bool):
            status = PASS if status else FAIL
        self.checks.append({"id": cid, "status": status, "details": details})

    def absorb(self, prefix: str, rep):
        for name, (ok, detail) in rep.checks.items():
            self.add(f"{prefix}: {name}", ok, detail)

    @property
    def status(self) -> str:
        seen = {c["status"] for c in self.checks}
        return FAIL if FAIL in seen else UNDET if UNDET in seen else PASS

    def to_json(self, timing: bool = True) -> dict:
        out = {"suite": self.suite, "status": self.status, "checks": self.checks,
               "data": self.data, "config": self.config}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _theta(cfg: dict):
    return theta_value(cfg["theta"] == "-xi")


def _tally(rep: SuiteReport, cid: str, results: dict):
    """One check summarising many named boolean results."""
    bad = [k for k, ok in results.items() if not ok]
    rep.add(cid, not bad, f"{len(results) - len(bad)}/{len(results)}" + (f"; failing: {', '.join(bad)}" if bad else ""))


# ---------------------------------------------------------------- suites

def suite_hopf(cfg: dict, names=("C", "A1", "D")) -> SuiteReport:
    theta = _theta(cfg)
    rep = SuiteReport("hopf")
    builders = {"C": build_C, "A1": build_A1, "D": lambda: build_double(theta)}
    for name in names:
        H = builders[name]()
        check = verify_hopf(H, exhaustive=True if cfg["exhaustive"] else None)
        rep.absorb(f"{name} [{check.mode}]", check)
        rep.data[name] = H.dim
    if "C" in names and "A1" in names:
        C, A1 = build_C(), build_A1()
        rep.absorb("A1 -> C*", verify_morphism(phi_A1_to_Cdual(A1, C, theta), A1, dual_hopf(C)))
    return rep


def suite_double(cfg: dict) -> SuiteReport:
    theta = _theta(cfg)
    rep = SuiteReport("double")
    C, A1 = build_C(), build_A1()
    D = build_double(theta)
    F = double_from_formula(C, FORMULA_CONVENTIONS[0])
    rep.absorb("presentation vs formula", compare_doubles(D, F, C, A1, theta))
    rep.data["dim"] = D.dim
    return rep


def suite_catalog(cfg: dict) -> SuiteReport:
    theta = _theta(cfg)
    rep = SuiteReport("catalog")
    mods = [catalog(L, theta) for L in SIMPLE_LABELS]
    rep.add("36 simple labels", len(mods) == 36, str(len(mods)))
    _tally(rep, "defining relations hold", {str(L): verify_module(M).ok for L, M in zip(SIMPLE_LABELS, mods)})
    _tally(rep, "simple", {str(L): is_simple(M) for L, M in zip(SIMPLE_LABELS, mods)})
    clashes = [f"{SIMPLE_LABELS[p]}~{SIMPLE_LABELS[q]}" for p in range(36) for q in range(p + 1, 36)
               if is_isomorphic(mods[p], mods[q]) is not None]
    rep.add("pairwise non-isomorphic", not clashes, ", ".join(clashes) or "630 pairs")
    projs = [catalog(Proj(j), theta) for j in range(6)]
    _tally(rep, "projective covers", {str(Proj(j)): verify_module(P).ok and P.dim == 4
                                      for j, P in enumerate(projs)})
    total = 6 * 4 + sum(2 * 2 for _ in LAMBDA_PAIRS)
    rep.add("sum dim(V) dim P(V) = dim D", total == 144, str(total))
    return rep


def suite_fusion(cfg: dict) -> SuiteReport:
    theta = _theta(cfg)
    rep = SuiteReport("fusion")
    V = [TwoDim(i, j) for i, j in LAMBDA_PAIRS]
    P = [Proj(j) for j in range(6)]
    K = [OneDim(i) for i in range(6)]

    def table(lefts, rights):
        return {f"{L}(x){R}": fusion(L, R, theta) == predicted_tensor(L, R) for L in lefts for R in rights}

    _tally(rep, "V (x) V", table(V, V))
    _tally(rep, "V (x) P", table(V, P))
    _tally(rep, "P (x) V", table(P, V))
    _tally(rep, "P (x) P", table(P, P))
    _tally(rep, "K (x) simple or projective", table(K, K + V + P))
    gens = [OneDim(1)] + [TwoDim(0, k) for k in range(1, 6)]
    rep.data["generator_table"] = {
        f"y{p}": {f"y{q}": [str(L) for L in fusion(A, B, theta)] for q, B in enumerate(gens)}
        for p, A in enumerate(gens)}
    return rep


def fusion_single(cfg: dict, left: Label, right: Label) -> SuiteReport:
    rep = SuiteReport("fusion")
    got = fusion(left, right, _theta(cfg))
    want = predicted_tensor(left, right)
    rep.add(f"{left}(x){right}", got == want, " + ".join(map(str, got)))
    rep.data = {"left": str(left), "right": str(right), "decomposition": [str(L) for L in got],
                "predicted": [str(L) for L in want]}
    return rep


def suite_class_ring(cfg: dict) -> SuiteReport:
    rep = SuiteReport("class-ring")
    rep.absorb("relation", class_ring_check(_theta(cfg)))
    rep.data["basis"] = {str(L): class_ring_image(L) for L in PROJECTIVE_LABELS[:6] + SIMPLE_LABELS}
    return rep


def yd_labels():
    return SIMPLE_LABELS + [Proj(j) for j in range(6)] + \
        [Ext(l, k) for l in range(6) for k in range(3) if not k_is_split(k)]


def suite_yd(cfg: dict) -> SuiteReport:
    theta = _theta(cfg)
    rep = SuiteReport("yd")
    results, braids = {}, {}
    for L in yd_labels():
        Y = yd_from_dmod(catalog(L, theta))
        B = braiding(Y)
        results[str(L)] = verify_yd(Y).ok
        braids[str(L)] = braid_equation(B) and is_invertible(B)
    _tally(rep, "YD compatibility", results)
    _tally(rep, "braid equation and invertibility", braids)
    table, duals, round_trip = {}, {}, {}
    for i, j in LAMBDA_PAIRS:
        M = catalog(TwoDim(i, j), theta)
        Y = yd_from_dmod(M)
        table[f"V{i},{j}"] = braiding(Y).c == closed_form_braiding(i, j)
        dual = dmod_from_yd(dual_yd(Y), theta)
        duals[f"V{i},{j}"] = is_isomorphic(dual, catalog(TwoDim(-i - 1, -j - 3), theta)) is not None
        back = dmod_from_yd(Y, theta)
        round_trip[f"V{i},{j}"] = all(back.mat(h) == M.mat(h) for h in "abgx")
    _tally(rep, "closed-form braiding of V_ij", table)
    _tally(rep, "V_ij* = V_(-i-1,-j-3)", duals)
    _tally(rep, "module -> YD -> module", round_trip)
    return rep


def _preset_braiding(label: Label, theta):
    return braiding(yd_from_dmod(catalog(label, theta)))


def suite_nichols(cfg: dict) -> SuiteReport:
    theta = _theta(cfg)
    cap = cfg["maxdeg"]
    rep = SuiteReport("nichols")
    rows = []
    for name, P in PRESETS.items():
        B = _preset_braiding(P.label, theta)
        h = hilbert(B, cap)
        rows.append({"module": name, **h.to_json()})
        if not h.finite:
            rep.add(f"{name}: dimension", UNDET, f"{UNDETERMINED} {cap}, ranks {h.ranks}")
            continue
        rep.add(f"{name}: dimension {P.total}", h.total == P.total, f"ranks {h.ranks}")
        rels = parse_relations(P.relations, B.dim)
        check = verify_presentation(B, rels, h)
        rep.add(f"{name}: presentation", check.ok, "; ".join(f"{k} {v}" for k, v in check.failures().items()))
    certs = {}
    for i, j in INFINITE_PAIRS:
        Y = yd_from_dmod(catalog(TwoDim(i, j), theta))
        w = infinite_certificate(braiding(Y), dual=braiding(dual_yd(Y)))
        certs[f"V{i},{j}"] = w is not None
    _tally(rep, "fixed-vector witness for each infinite label", certs)
    rep.data["table"] = rows
    return rep


def nichols_single(cfg: dict, name: str, relations_text=None) -> SuiteReport:
    theta = _theta(cfg)
    label = preset_label(name)
    rep = SuiteReport("nichols")
    Y = yd_from_dmod(catalog(label, theta))
    B = braiding(Y)
    preset = next((P for P in PRESETS.values() if P.label == label), None)
    witness = infinite_certificate(B, dual=braiding(dual_yd(Y)))
    # an infinite module has no finite Hilbert series to certify
    h = hilbert(B, 1 if witness else cfg["maxdeg"])
    if witness is not None:
        rep.add("infinite", PASS, f"c(v (x) v) = v (x) v on the {witness.side} side")
    elif h.finite:
        rep.add("finite", PASS, f"symmetrizer rank 0 in degree {h.top_degree + 1}")
        if preset is not None:
            rep.add(f"dimension {preset.total}", h.total == preset.total, str(h.total))
    else:
        rep.add("finite", UNDET, f"{UNDETERMINED} {cfg['maxdeg']}")
    if relations_text is not None:
        rels = parse_relations([t for t in relations_text if t.strip() and not t.lstrip().startswith("#")], B.dim)
        if h.finite:
            rep.absorb("presentation", verify_presentation(B, rels, h))
        else:
            for r in rels:
                rep.add(f"relation {r}", verify_relation(B, r))
    rep.data = {"ranks": h.ranks, "total": h.total if h.finite else None,
                "finite": False if witness else (True if h.finite else UNDETERMINED),
                "witnesses": [witness.to_json()] if witness else []}
    return rep


LIFTING_MUS = ("0", "1", "xi")


def suite_lifting(cfg: dict) -> SuiteReport:
    theta = _theta(cfg)
    rep = SuiteReport("lifting")
    for j in (1, 5):
        for text in LIFTING_MUS:
            L = build_lifting(j, parse_cyc(text))
            tag = f"j={j} mu={text}"
            rep.add(f"{tag}: dim 216, certified", L.hopf.dim == 216 and L.certified, str(L.hopf.dim))
            rep.add(f"{tag}: Hopf axioms", verify_hopf(L.hopf, exhaustive=cfg["exhaustive"] or None).ok)
            rep.absorb(f"{tag}: residue", verify_bialgebra_on_relations(j, parse_cyc(text)))
        _, T, _, iso = lifting_to_bosonization(j, theta)
        rep.absorb(f"j={j} mu=0 ~ B(V1,{(j + 3) % 6})#C", iso)
        other = bosonize(TwoDim(1, j), theta).dim
        rep.add(f"j={j} mu=0 vs B(V1,{j})#C", other != 216, f"not isomorphic: dim {other} != 216")
    for item, (name, dim) in BOSONIZATION_FAMILIES.items():
        H = bosonize(preset_label(name), theta)
        check = verify_hopf(H, exhaustive=False)
        rep.add(f"({item}) B({name})#C", H.dim == dim and check.ok, f"dim {H.dim}")
    return rep


def lifting_single(cfg: dict, j: int, mu_text: str) -> tuple:
    rep = SuiteReport("lifting")
    mu = parse_cyc(mu_text)
    L = build_lifting(j, mu)
    rep.add("dim 216, certified", L.hopf.dim == 216 and L.certified, str(L.hopf.dim))
    rep.add("Hopf axioms", verify_hopf(L.hopf, exhaustive=cfg["exhaustive"] or None).ok)
    rep.absorb("residue", verify_bialgebra_on_relations(j, mu))
    if mu == ZERO:
        rep.absorb(f"~ B(V1,{(j + 3) % 6})#C", lifting_to_bosonization(j, _theta(cfg))[3])
    rep.data = {"name": L.hopf.name, "dim": L.hopf.dim, "j": j, "mu": format_cyc(mu)}
    return rep, L.hopf


SUITES = {
    "hopf": suite_hopf,
    "double": suite_double,
    "catalog": suite_catalog,
    "fusion": suite_fusion,
    "class-ring": suite_class_ring,
    "yd": suite_yd,
    "nichols": suite_nichols,
    "lifting": suite_lifting,
}


def run_suite(name: str, cfg: dict) -> SuiteReport:
    t = time.perf_counter()
    rep = SUITES[name](cfg)
    rep.wall_time = time.perf_counter() - t
    rep.config = dict(cfg)
    return rep


def verify_all(cfg: dict, jobs: int = 1) -> list:
    names = list(SUITES)
    if jobs <= 1:
        return [run_suite(n, cfg) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_suite, names, [cfg] * len(names)))


# ---------------------------------------------------------------- output

def render_pretty(reports: list) -> str:
    lines = []
    for rep in reports:
        cfg = " ".join(f"{k}={v}" for k, v in sorted(rep.config.items()))
        lines.append(f"== {rep.suite} [{rep.status}] {rep.wall_time:.2f}s  {cfg}")
        for c in rep.checks:
            extra = f"  ({c['details']})" if c["details"] else ""
            lines.append(f"  {c['status']:<12} {c['id']}{extra}")
        if "table" in rep.data:
            lines.append(f"  {'module':<8} {'dim':>5}  graded dimensions")
            for row in rep.data["table"]:
                total = row["total"] if row["finite"] is True else "?"
                lines.append(f"  {row['module']:<8} {total:>5}  {' '.join(map(str, row['ranks']))}")
        if "generator_table" in rep.data:
            t = rep.data["generator_table"]
            for p in t:
                lines.append(f"  {p} * " + "  ".join(f"{q}={'+'.join(v)}" for q, v in t[p].items()))
        if rep.data and not {"table", "generator_table", "basis"} & set(rep.data):
            lines.append("  " + json.dumps(rep.data, sort_keys=True))
    return "\n".join(lines)


def emit(reports: list, args) -> int:
    timing = not args.no_timing
    if args.pretty:
        print(render_pretty(reports))
    else:
        if len(reports) == 1:
            doc = reports[0].to_json(timing)
        else:
            status = FAIL if any(r.status == FAIL for r in reports) else \
                UNDET if any(r.status == UNDET for r in reports) else PASS
            doc = {"status": status, "suites": [r.to_json(timing) for r in reports]}
        print(json.dumps(doc, sort_keys=True, indent=None if args.compact else 1))
    undetermined = sum(1 for r in reports for c in r.checks if c["status"] == UNDET)
    if undetermined:
        print(f"warning: {undetermined} check(s) {UNDETERMINED}", file=sys.stderr)
    return 1 if any(r.status == FAIL for r in reports) else 0


def _write_dump(path: str, H):
    with open(path, "w") as fh:
        fh.write(H.dumps())


# ---------------------------------------------------------------- argument parsing

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--theta", choices=["xi", "-xi"], default="xi",
                   help="square root of xi^2 used for the double (default xi)")
    p.add_argument("--maxdeg", type=int, default=12, help="degree cap for Nichols computations")
    p.add_argument("--jobs", type=int, default=1, help="suites run in parallel (verify-all)")
    p.add_argument("--exhaustive", action="store_true",
                   help="check Hopf axioms on all basis pairs of large algebras too")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON output (default)")
    out.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("--compact", action="store_true", help="single-line JSON")
    p.add_argument("--no-timing", action="store_true", help="omit wall times for diffable JSON")
    p.add_argument("--dump", metavar="FILE", help="write the structure constants as JSON")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hopf12", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-all", parents=[common], help="run every suite")
    h = sub.add_parser("hopf", parents=[common], help="Hopf axioms of C, A1 and D")
    h.add_argument("--algebra", choices=["C", "A1", "D"], action="append")
    sub.add_parser("double", parents=[common], help="presentation vs formula double")
    sub.add_parser("catalog", parents=[common], help="the 36 simple modules")
    f = sub.add_parser("fusion", parents=[common], help="tensor product decompositions")
    for k in ("i", "j", "k", "l"):
        f.add_argument(f"--{k}", type=int)
    f.add_argument("--left", help="catalog label such as V0,1 or P2")
    f.add_argument("--right")
    sub.add_parser("class-ring", parents=[common], help="relations of the projective class ring")
    sub.add_parser("yd", parents=[common], help="Yetter-Drinfeld and braiding checks")
    n = sub.add_parser("nichols", parents=[common], help="Hilbert series and presentations")
    n.add_argument("--preset", help="module name such as V_3_1 or K_1")
    n.add_argument("--relations", metavar="FILE", help="one relation in v1, v2 per line")
    li = sub.add_parser("lifting", parents=[common], help="the 216-dimensional liftings")
    li.add_argument("--j", type=int, choices=[1, 5])
    li.add_argument("--mu", default="0", help="deformation parameter in CycQ6 text form")
    d = sub.add_parser("dump", parents=[common], help="export structure constants as JSON")
    d.add_argument("target", help="C, A1, D, lifting (with --j/--mu) or a bosonized module label")
    d.add_argument("--j", type=int, choices=[1, 5], default=1)
    d.add_argument("--mu", default="0")
    return parser


def _label(parser, text):
    try:
        return preset_label(text)
    except ValueError as err:
        parser.error(str(err))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.maxdeg < 1 or args.jobs < 1:
        parser.error("--maxdeg and --jobs must be positive")
    cfg = {"theta": args.theta, "maxdeg": args.maxdeg, "exhaustive": args.exhaustive}
    t = time.perf_counter()
    cmd = args.command

    if cmd == "verify-all":
        return emit(verify_all(cfg, args.jobs), args)
    if cmd == "hopf":
        rep = suite_hopf(cfg, tuple(args.algebra or ("C", "A1", "D")))
    elif cmd == "fusion" and (args.left or args.i is not None):
        if args.left:
            if not args.right:
                parser.error("--left needs --right")
            left, right = _label(parser, args.left), _label(parser, args.right)
        else:
            if None in (args.j, args.k, args.l):
                parser.error("--i needs --j, --k and --l")
            try:
                left, right = TwoDim(args.i, args.j), TwoDim(args.k, args.l)
            except ValueError as err:
                parser.error(str(err))
        rep = fusion_single(cfg, left, right)
    elif cmd == "nichols" and args.preset:
        _label(parser, args.preset)
        text = None
        if args.relations:
            with open(args.relations) as fh:
                text = fh.read().splitlines()
        rep = nichols_single(cfg, args.preset, text)
    elif cmd == "lifting" and args.j is not None:
        try:
            mu = args.mu
            parse_cyc(mu)
        except (ValueError, ZeroDivisionError) as err:
            parser.error(f"--mu: {err}")
        rep, H = lifting_single(cfg, args.j, mu)
        if args.dump:
            _write_dump(args.dump, H)
    elif cmd == "dump":
        rep, H = _dump_target(parser, args, cfg)
        if args.dump:
            _write_dump(args.dump, H)
        else:
            print(H.dumps())
            return 0
    else:
        rep = SUITES[cmd](cfg)
    rep.wall_time = time.perf_counter() - t
    rep.config = cfg
    return emit([rep], args)


def _dump_target(parser, args, cfg):
    theta = _theta(cfg)
    target = args.target
    builders = {"C": build_C, "A1": build_A1, "D": lambda: build_double(theta)}
    if target in builders:
        H = builders[target]()
    elif target == "lifting":
        H = build_lifting(args.j, parse_cyc(args.mu)).hopf
    else:
        H = bosonize(_label(parser, target), theta)
    rep = SuiteReport("dump")
    rep.add(f"{H.name} exported", True, f"dim {H.dim}")
    rep.data = {"name": H.name, "dim": H.dim}
    return rep, H


if __name__ == "__main__":
    sys.exit(main())
