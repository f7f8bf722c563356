"""Command-line front end; every command prints one JSON report.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import _exact as ex
from . import config16 as c16
from . import f2geom as fg
from . import hessian as hs
from . import humbert as hb
from . import latticekit as lk
from .errors import WeberhexError

KINDS = ("goepel", "rosenhain", "weber", "totals", "classes")
EXPECTED = {"goepel": 60, "rosenhain": 80, "weber": 192, "totals": 6, "classes": 6}


def check(name: str, ok: bool, witness=None) -> dict:
    return {"check": name, "pass": bool(ok), "witness": witness}


def make_report(command: str, parameters: dict, payload: dict, results: list[dict]) -> dict:
    out = {"command": command, "parameters": parameters}
    out.update(payload)
    out["results"] = results
    out["exit_code"] = 0 if all(r["pass"] for r in results) else 1
    return out


def usage_error(command: str, parameters: dict, message: str) -> dict:
    return {"command": command, "parameters": parameters, "error": message, "results": [], "exit_code": 2}


# ------------------------------------------------------------- enumerate


def enumerate_payload(kind: str) -> tuple[dict, list[dict]]:
    if kind in ("goepel", "rosenhain"):
        items = [str(t) for t in fg.enumerate_tetrads(kind)]
    elif kind == "weber":
        hexads = fg.enumerate_weber_hexads()
        items = [{"hexad": str(w), "form": w.form.value} for w in hexads]
    elif kind == "totals":
        fibers = fg.hexad_total_fibers()
        items = [{"total": str(t), "hexads": len(ws)} for t, ws in fibers.items()]
    else:
        items = [[str(w) for w in cls] for cls in fg.dual_six_classes()]
    results = [check(f"{kind} count", len(items) == EXPECTED[kind], len(items))]
    if kind == "weber":
        forms = [w.form.value for w in fg.enumerate_weber_hexads()]
        results.append(check("form split 72/120", (forms.count("type1"), forms.count("type2")) == (72, 120)))
    if kind in ("totals", "classes"):
        sizes = [x["hexads"] for x in items] if kind == "totals" else [len(c) for c in items]
        results.append(check("each part has 32 hexads", sizes == [32] * 6, sizes))
    if kind == "classes":
        fib = {frozenset(w.elements for w in ws) for ws in fg.hexad_total_fibers().values()}
        cls = {frozenset(w.elements for w in c) for c in fg.dual_six_classes()}
        results.append(check("classes equal total fibers", fib == cls))
    return {"count": len(items), "items": items}, results


# ------------------------------------------------------------- lattice report


def lattice_checks(bound: int = 4) -> list[dict]:
    out = []
    t = lk.lattice_T()
    dt = lk.discriminant_group(t)
    out.append(check("disc(T) order 64", dt.order == 64, dt.order))
    subs = lk.six_subgroups(dt)
    out.append(check("six cyclic order-4 subgroups with q=3/4", len(subs) == 6, len(subs)))

    nsq = lk.ns_quotient()
    det = abs(ex.det(nsq.lattice.gram))
    out.append(check("NS' rank 17", nsq.rank == 17, nsq.rank))
    out.append(check("NS' |det| = 64", det == 64, ex.frac_str(det)))
    dn = lk.ns_disc()
    out.append(check("disc(NS') invariant factors", dn.invariant_factors == dt.invariant_factors, list(dn.invariant_factors)))
    out.append(check("disc(NS') matches disc(T) with sign reversal (multiset)", lk.match_discriminant_forms(dn, dt)))

    rel = c16.check_H_relations()
    out.append(check("H relations", all(r["pass"] for r in rel), sum(r["pass"] for r in rel)))
    s_rel = c16.check_S_divisors()
    out.append(check("S-divisors equivalent to L with multiplicities 2 and 3", all(r["pass"] for r in s_rel)))

    # patching classes over all hexads
    hexads = fg.enumerate_weber_hexads()
    norms_ok = dual_ok = order_ok = True
    q_vals = set()
    by_class: dict[int, set] = {}
    for w in hexads:
        e = c16.eleventh_node_class(w)
        dual_ok &= e.is_dual()
        norms_ok &= e.self_pair() == Fraction(-3, 4)
        x = lk.patching_class(w)
        order_ok &= dn.element_order(x) == 4
        q_vals.add(dn.q(x))
        by_class.setdefault(fg.dual_six_class_of(w), set()).add(lk.patching_subgroup(w))
    out.append(check("E_W dual for all 192 hexads", dual_ok))
    out.append(check("(E_W, E_W) = -3/4 for all hexads", norms_ok))
    out.append(check("patching class has order 4", order_ok, sorted(lk.format_q(q) for q in q_vals)))
    constant = all(len(s) == 1 for s in by_class.values())
    distinct = len({next(iter(s)) for s in by_class.values()}) == len(by_class) == 6
    out.append(check("patching subgroup constant on each class", constant))
    out.append(check("patching subgroup injective across classes", distinct))

    comp = Fraction(-2) - Fraction(-3, 4)
    gens = set(lk.subgroup_generators(dt, subs[0]))
    e5 = lk.find_dual_vector(t, comp, gens, bound=bound)
    out.append(check("complementary norm -5/4 realized in C_0", comp == Fraction(-5, 4) and e5 is not None, None if e5 is None else [ex.frac_str(x) for x in e5.coords]))

    sw_ok = all(c16.switch_obstruction(r).self_pair() == Fraction(-7, 4) for r in fg.enumerate_tetrads("rosenhain"))
    comp_sw = Fraction(-2) - Fraction(-7, 4)
    e1 = lk.find_dual_vector(t, comp_sw, bound=bound)
    out.append(check("switch obstruction norm -7/4 for all Rosenhain tetrads", sw_ok))
    out.append(check("complementary norm -1/4 realized in T*", comp_sw == Fraction(-1, 4) and e1 is not None, None if e1 is None else [ex.frac_str(x) for x in e1.coords]))
    e_ns = c16.eleventh_node_class(c16.canonical_hexad()).self_pair()
    out.append(check("(-3/4) + (-5/4) = -2", e_ns + Fraction(-5, 4) == -2, ex.frac_str(e_ns + Fraction(-5, 4))))
    return out


# ------------------------------------------------------------- hessian


def hessian_payload(lam: hs.LambdaVector, mode: str) -> tuple[dict, list[dict]]:
    rep = hs.node_report(lam)
    payload = {key: rep[key] for key in ("degenerate", "P", "node", "extra_nodes", "extra_node_count", "coordinate_nodes", "total_nodes")}
    if rep["degenerate"]:
        # node coordinates are irrational unless all lambda ratios are squares
        payload["node_rational"] = rep["extra_nodes"] is not None
    results = [
        check("coordinate nodes = 10", rep["coordinate_nodes"] == 10, rep["coordinate_nodes"]),
        check("fixed points exist iff degenerate", (rep["extra_node_count"] > 0) == rep["degenerate"], rep["extra_node_count"]),
    ]
    if mode == "float":
        m = hs.min_sign_sum_float(lam)
        payload["min_sign_sum"] = m
        if rep["degenerate"]:
            payload["node_float"] = [repr(complex(x)) if isinstance(x, complex) else x for x in hs.eleventh_node_coordinates(lam, exact=False).coords]
        if all(v > 0 for v in lam):
            results.append(check("float oracle agrees", (m < 1e-9) == rep["degenerate"], m))
    return payload, results


def hessian_sweep(rng: random.Random, n: int = 200) -> list[dict]:
    agree = 0
    for _ in range(n):
        lam = random_positive_lambda(rng)
        agree += hs.is_degenerate(lam) == hs.is_degenerate_float(lam)
    out = [check(f"exact/float agreement on {n} random lambda", agree == n, agree)]
    ex_ok = [hs.is_degenerate(l) for l in ((1, 1, 1, 1, 16), (1, 4, 9, 16, 4))] + [not hs.is_degenerate((1, 1, 1, 1, 1))]
    out.append(check("constructed degeneration examples", all(ex_ok)))
    hom = 0
    for _ in range(50):
        lam = hs.LambdaVector(random_positive_lambda(rng))
        t = Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20))
        hom += hs.degeneration_polynomial(lam.scaled(t)) == t**8 * hs.degeneration_polynomial(lam)
    out.append(check("P(t lambda) = t^8 P(lambda)", hom == 50, hom))
    return out


def random_positive_lambda(rng: random.Random) -> tuple[Fraction, ...]:
    """Half generic, half built from a vanishing signed sum of square roots."""
    if rng.random() < 0.5:
        return tuple(Fraction(rng.randint(1, 50), rng.randint(1, 12)) for _ in range(5))
    base = Fraction(rng.randint(1, 7))
    while True:
        q = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(4)]
        signs = [rng.choice((1, -1)) for _ in range(4)]
        last = -sum(s * x for s, x in zip(signs, q))
        if last != 0:
            break
    vals = [base * x * x for x in q] + [base * last * last]
    rng.shuffle(vals)
    return tuple(vals)


# ------------------------------------------------------------- humbert


def humbert_payload(b: hb.BranchSextuple, quartic: bool, cross: bool, mode: str) -> tuple[dict, list[dict]]:
    labs = hb.humbert_check_all(b)
    payload: dict = {"labelings": [lab.to_json() for lab in labs]}
    results = [check("labelings closed under dihedral identification", all(lab.canonical() == lab for lab in labs), len(labs))]
    if quartic:
        entries = []
        for lab in labs:
            five = [b.values[i - 1] for i in lab.cycle]
            coeffs = hb.humbert_locus_quartic(five)
            entries.append({"labeling": lab.to_json(), "quartic": [ex.frac_str(c) for c in coeffs]})
        payload["quartics"] = entries
    if cross:
        k, lines = hb.dualize(b)
        agree = all(hb.humbert_check(b, lab) == hb.line_picture_check(k, lines, lab) for lab in hb.all_labelings())
        results.append(check("point and line pictures agree on all 72 labelings", agree))
    if mode == "float":
        payload["residuals"] = [hb.humbert_residual_float(b.values, lab) for lab in labs]
    return payload, results


def humbert_sweep(rng: random.Random, n: int = 10) -> list[dict]:
    out = []
    generic = sum(not hb.humbert_check_all(hb.random_sextuple(rng)) for _ in range(n))
    out.append(check("generic sextuples satisfy no labeling", generic == n, generic))
    inst = hb.BranchSextuple(KNOWN_INSTANCE)
    labs = hb.humbert_check_all(inst)
    out.append(check("rational Humbert instance satisfied", hb.PentagonLabeling((1, 2, 3, 4, 5), 6) in labs, len(labs)))
    agree = 0
    for _ in range(n):
        s = hb.random_sextuple(rng)
        k, lines = hb.dualize(s)
        agree += all(hb.humbert_check(s, lab) == hb.line_picture_check(k, lines, lab) for lab in hb.all_labelings())
    out.append(check("point/line duality", agree == n, agree))
    worst = 0.0
    for _ in range(n):
        five = list(hb.random_sextuple(rng).values[:5])
        exact, numeric = hb.quartic_roots(hb.humbert_locus_quartic(five))
        lab = hb.PentagonLabeling((1, 2, 3, 4, 5), 6)
        for r in exact:
            if r not in five and not hb.humbert_check(five + [r], lab):
                worst = float("inf")
        for r in numeric:
            worst = max(worst, hb.humbert_residual_float(five + [r], lab))
    out.append(check("locus quartic roots back-substitute", worst <= 1e-9, worst))
    return out


KNOWN_INSTANCE = (Fraction(0), Fraction(1), hb.INF, Fraction(-4, 5), Fraction(3, 5), Fraction(8, 15))


# ------------------------------------------------------------- main


# argparse only recognises "-3" and "-0.5" as negative numbers; accept "-4/5" too
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    c.add_argument("--json-indent", type=int, default=argparse.SUPPRESS)
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(prog="weberhex", parents=[common], description="Weber hexads, the (16)_6 lattice, Hessian degeneration and inscribed conics.")
    sub = p.add_subparsers(dest="command", required=True)
    e = sub.add_parser("enumerate", parents=[common])
    e.add_argument("kind", choices=KINDS)
    lr = sub.add_parser("lattice-report", parents=[common])
    lr.add_argument("--bound", type=int, default=4, help="coordinate box for the dual-vector searches")
    h = sub.add_parser("hessian", parents=[common])
    h.add_argument("--lambda", dest="lam", nargs=5, required=True, metavar="P/Q")
    h.add_argument("--mode", choices=("exact", "float"), default="exact")
    u = sub.add_parser("humbert", parents=[common])
    u.add_argument("--branch", nargs=6, required=True, metavar="P/Q|inf")
    u.add_argument("--mode", choices=("exact", "float"), default="exact")
    u.add_argument("--quartic", action="store_true")
    u.add_argument("--cross-check", action="store_true")
    v = sub.add_parser("verify-all", parents=[common])
    v.add_argument("--samples", type=int, default=200)
    for parser in (p, e, lr, h, u, v):
        parser._negative_number_matcher = _NEGATIVE
    return p


def parse_args(argv=None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    args.seed = getattr(args, "seed", 0)
    args.json_indent = getattr(args, "json_indent", 2)
    return args


def run(args: argparse.Namespace) -> dict:
    rng = random.Random(args.seed)
    cmd = args.command
    if cmd == "enumerate":
        payload, results = enumerate_payload(args.kind)
        return make_report(cmd, {"kind": args.kind}, payload, results)
    if cmd == "lattice-report":
        if args.bound <= 0:
            return usage_error(cmd, {"bound": args.bound}, "bound must be positive")
        return make_report(cmd, {"bound": args.bound}, {}, lattice_checks(args.bound))
    if cmd == "hessian":
        params = {"lambda": args.lam, "mode": args.mode}
        try:
            lam = hs.LambdaVector(Fraction(x) for x in args.lam)
        except (ValueError, ZeroDivisionError) as err:
            return usage_error(cmd, params, str(err))
        payload, results = hessian_payload(lam, args.mode)
        return make_report(cmd, params, payload, results)
    if cmd == "humbert":
        params = {"branch": args.branch, "mode": args.mode, "quartic": args.quartic, "cross_check": args.cross_check}
        try:
            b = hb.BranchSextuple(hb.parse_branch_value(x) for x in args.branch)
        except (ValueError, ZeroDivisionError) as err:
            return usage_error(cmd, params, str(err))
        try:
            payload, results = humbert_payload(b, args.quartic, args.cross_check, args.mode)
        except WeberhexError as err:
            return usage_error(cmd, params, str(err))
        return make_report(cmd, params, payload, results)
    # verify-all
    results = []
    for kind in KINDS:
        results += enumerate_payload(kind)[1]
    results.append(check("affine group order 11520", len(fg.affine_group()) == 11520))
    stab = {len(fg.stabilizer(w)) for w in fg.enumerate_weber_hexads()}
    results.append(check("all hexad stabilizers have order 60", stab == {60}, sorted(stab)))
    results += lattice_checks()
    results += hessian_sweep(rng, args.samples)
    results += humbert_sweep(rng)
    return make_report(cmd, {"seed": args.seed, "samples": args.samples}, {}, results)


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as err:  # argparse has already printed the usage message
        return int(err.code or 0)
    report = run(args)
    indent = args.json_indent if args.json_indent > 0 else None
    sys.stdout.write(json.dumps(report, indent=indent) + "\n")
    return report["exit_code"]


if __name__ == "__main__":
    raise SystemExit(main())
