"""``sepcomp`` command line.

Exit codes: 0 success, 2 a theorem hypothesis fails, 3 codes not
equivalent, 4 input error. Every nonzero exit writes one line
``ERR <code> <kind>: <reason>`` to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .codes import code_automorphisms, monomial_equivalence, weight_enumerator
from .errors import HypothesisFailed, SepcompError
from .homs import is_separating, is_weakly_separating, represent, represent_iso
from .io import parse_workspace

EXIT_OK, EXIT_HYPOTHESIS, EXIT_NOT_EQUIVALENT, EXIT_INPUT = 0, 2, 3, 4


class CliFailure(Exception):
    def __init__(self, code, kind, reason, data=None):
        super().__init__(reason)
        self.code, self.kind, self.reason, self.data = code, kind, reason, data or {}


def _vec(v):
    return " ".join(str(a) for a in v)


def _set(s):
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def _jsonable(obj):
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, list):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


# -- reports -------------------------------------------------------------------

def report_analyze(ws, name):
    A = ws.lookup("fgroups", name)
    ctrl = A.is_controllable()
    try:
        norm = A.is_normal()
        normal = {"holds": norm.holds, "witness": norm.witness}
    except SepcompError as exc:
        normal = {"holds": None, "error": str(exc)}
    data = {
        "fgroup": name,
        "group": A.group.name,
        "group_order": A.group.order,
        "domain": A.domain_size,
        "order": len(A),
        "faithful": A.is_faithful,
        "separates_points": A.separates_points,
        "function_group": A.is_function_group,
        "pointwise_dense": A.is_pointwise_dense,
        "controllable": {"holds": ctrl.holds, "witness": ctrl.witness},
        "normal": normal,
    }
    lines = [
        f"fgroup {name}",
        f"group {A.group.name} order {A.group.order}",
        f"domain {A.domain_size}",
        f"order {len(A)}",
        f"faithful: {_b(A.is_faithful)}",
        f"separates_points: {_b(A.separates_points)}",
        f"function_group: {_b(A.is_function_group)}",
        f"pointwise_dense: {_b(A.is_pointwise_dense)}",
    ]
    if ctrl.holds:
        lines.append("controllable: true")
    else:
        f, d1, d2 = ctrl.witness
        lines.append(f"controllable: false witness f=({_vec(f)}) D1={_set(d1)} D2={_set(d2)}")
    if normal["holds"] is None:
        lines.append(f"normal: undecided ({normal['error']})")
    elif normal["holds"]:
        lines.append("normal: true")
    else:
        d1, d2, x, q = normal["witness"]
        lines.append(f"normal: false witness D1={_set(d1)} D2={_set(d2)} inseparable points {x},{q}")
    return data, lines


def _b(v):
    return "true" if v else "false"


def _fmt(v):
    if isinstance(v, bool):
        return _b(v)
    if isinstance(v, (list, tuple)):
        return " ".join(f"({_vec(x)})" if isinstance(x, (list, tuple)) else str(x) for x in v)
    return str(v)


def _weight_line(y, x, w, G):
    if x is None:
        return f"w[{y}]: dropped (delta_{y} o H is null)"
    table = " ".join(f"{a}->{w.images[a]}" for a in w.domain)
    tag = ""
    if w.is_total:
        m = w.as_morphism()
        tag = " (identity)" if m.is_identity else (" (automorphism)" if m.is_auto else " (endomorphism)")
    else:
        tag = " (partial)"
    return f"w[{y}]: {table}{tag}"


def report_represent(ws, name):
    H = ws.lookup("homs", name)
    hyp = {}
    A = H.source
    ctrl = A.is_controllable()
    hyp["source_faithful"] = A.is_faithful
    hyp["source_separates_points"] = A.separates_points
    hyp["source_controllable"] = ctrl.holds
    hyp["source_pointwise_dense"] = A.is_pointwise_dense
    hyp["source_omega_extension"] = True
    sep = is_separating(H)
    ws_ = is_weakly_separating(H)
    hyp["separating"] = sep.holds
    hyp["weakly_separating"] = ws_.holds
    hyp["bijective"] = H.is_bijective
    base = {"hom": name, "hypotheses": dict(hyp)}
    if not ws_.holds:
        f, g = ws_.witness
        raise CliFailure(
            EXIT_HYPOTHESIS, "weakly_separating",
            f"detached pair ({_vec(f)}),({_vec(g)}) has non-detached images",
            {**base, "witness": [f, g]},
        )
    try:
        if H.is_bijective and H.target.is_pointwise_dense and A.is_pointwise_dense:
            rep, rep_inv = represent_iso(H)
        else:
            rep, rep_inv = represent(H), None
    except HypothesisFailed as exc:
        raise CliFailure(EXIT_HYPOTHESIS, exc.predicate, str(exc), {**base, "witness": exc.witness}) from exc
    G = A.group
    hyp = {**rep.hypotheses, "separating": sep.holds, "bijective": H.is_bijective}
    data = {
        **base,
        "hypotheses": hyp,
        "h": list(rep.h),
        "w": [None if w is None else list(w.images) for w in rep.w],
        "dropped": list(rep.dropped),
        "verified": rep.verified,
    }
    lines = [f"hom {name}", "hypotheses:"]
    lines += [f"  {k}: {_b(v)}" for k, v in hyp.items()]
    lines.append("h: " + " ".join("-" if x is None else str(x) for x in rep.h))
    if rep.dropped:
        lines.append(f"dropped: {_vec(rep.dropped)}")
    for y, (x, w) in enumerate(zip(rep.h, rep.w)):
        lines.append(_weight_line(y, x, w, G))
    if rep_inv is not None:
        lines.append("inverse h: " + _vec(rep_inv.h))
        data["inverse_h"] = list(rep_inv.h)
    lines.append(f"verified: {_b(rep.verified)}")
    return data, lines


def report_equiv(ws, n1, n2):
    c1, c2 = ws.lookup("codes", n1), ws.lookup("codes", n2)
    if c1.p != c2.p:
        raise CliFailure(EXIT_INPUT, "field-mismatch", f"codes over Z{c1.p} and Z{c2.p}")
    wit = monomial_equivalence(c1, c2)
    if wit is None:
        raise CliFailure(
            EXIT_NOT_EQUIVALENT, "not-equivalent", f"{n1} and {n2} are not monomially equivalent",
            {"code1": n1, "code2": n2, "equivalent": False},
        )
    data = {"code1": n1, "code2": n2, "equivalent": True, "sigma": list(wit.sigma), "lambda": list(wit.lam)}
    return data, [f"equiv {n1} {n2}", f"sigma: {_vec(wit.sigma)}", f"lambda: {_vec(wit.lam)}"]


def report_aut(ws, name):
    c = ws.lookup("codes", name)
    auts = code_automorphisms(c)
    data = {"code": name, "count": len(auts), "automorphisms": [{"sigma": list(a.sigma), "lambda": list(a.lam)} for a in auts]}
    lines = [f"aut {name}", f"count: {len(auts)}"]
    lines += [f"sigma: {_vec(a.sigma)} lambda: {_vec(a.lam)}" for a in auts]
    return data, lines


def report_wenum(ws, name):
    c = ws.lookup("codes", name)
    W = weight_enumerator(c)
    return {"code": name, "weight_enumerator": list(W)}, [f"wenum {name}", f"W: {_vec(W)}"]


# -- entry point ---------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="sepcomp", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=["analyze", "represent", "equiv", "aut", "wenum"])
    ap.add_argument("names", nargs="+")
    ap.add_argument("--workspace", "-w", action="append", default=[], metavar="FILE")
    ap.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    ap.add_argument("--verbose", "-v", action="store_true")
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err)

    results = []
    code = EXIT_OK
    failure = None
    try:
        ws = parse_workspace(args.workspace)
        if args.command == "equiv":
            if len(args.names) != 2:
                raise CliFailure(EXIT_INPUT, "usage", "equiv takes exactly two code names")
            results.append(report_equiv(ws, *args.names))
        else:
            fn = {"analyze": report_analyze, "represent": report_represent, "aut": report_aut, "wenum": report_wenum}[args.command]
            for name in args.names:
                results.append(fn(ws, name))
    except CliFailure as exc:
        failure = exc
    except HypothesisFailed as exc:
        failure = CliFailure(EXIT_HYPOTHESIS, exc.predicate, str(exc))
    except SepcompError as exc:
        failure = CliFailure(EXIT_INPUT, exc.kind, str(exc))

    if failure is not None:
        code = failure.code
        if failure.data:
            results.append((failure.data, [f"{k}: {_fmt(v)}" for k, v in failure.data.items() if k != "hypotheses"]))

    if args.json:
        payload = [d for d, _ in results]
        doc = {"command": args.command, "results": _jsonable(payload), "exit": code}
        if failure is not None:
            doc["error"] = {"kind": failure.kind, "reason": failure.reason}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        blocks = ["\n".join(lines) for _, lines in results]
        if blocks:
            out.write("\n\n".join(blocks) + "\n")
    if failure is not None:
        err.write(f"ERR {failure.code} {failure.kind}: {failure.reason}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
