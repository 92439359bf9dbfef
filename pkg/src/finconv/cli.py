"""Command-line interface.

Every command is a thin adapter over the library: inputs are parsed with
the codec, one library call produces the result, and the result is printed
as canonical JSON (or a terse text rendering with --text).  Output is
byte-identical across runs for identical inputs, flags and seed.

Exit codes: 0 success (for axiom suites: all pass), 1 suite failure,
2 parse or validation error, 3 budget exhaustion.
"""

import argparse
import sys
from pathlib import Path

from . import SCHEMA_VERSION, codec
from .builders import from_finite_topology, from_graph, from_hypergraph, from_scaled_metric
from .core import classify, closure_of, empty_space
from .errors import (
    BudgetExhausted,
    ExponentialTooLarge,
    ParseError,
    SearchSpaceTooLarge,
    SpaceError,
)
from .constructions import (
    coproduct,
    function_space,
    product,
    pushout,
    quotient,
    subspace,
)
from .homotopy import (
    are_homotopic,
    gluing_check,
    homotopy_classes,
    is_homotopy_equivalence,
)
from .cofibration import factorize, hep_solve, is_cofibration_upto, verify_axioms
from .invariants import BasedSpace, pi0, pi_n, suspension, winding_oracle
from .compactness import (
    CoveringSystem,
    attach_cell,
    build_presentation,
    cells_meeting_interior,
    finite_subcover,
    interior,
    is_covering_system,
    search_nontopological,
    serre_check,
    weak_equivalence_check,
)
from .samples import standard_sample


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _space(path):
    return codec.space_from_doc(codec.loads(_read(path)))


def _map(path):
    return codec.map_from_doc(codec.loads(_read(path)))


def _labels(text):
    return [t for t in text.split(",") if t != ""]


def _emit(args, payload, code=0):
    if getattr(args, "text", False):
        print(_render_text(payload))
    else:
        sys.stdout.write(codec.dumps(payload))
    return code


def _render_text(payload, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(
            _render_text(v, indent) if isinstance(v, (dict, list))
            else f"{pad}- {v}" for v in payload)
    return f"{pad}{payload}"


# -- build ----------------------------------------------------------------


def cmd_build(args):
    if args.what == "graph":
        space = from_graph(codec.graph_from_text(_read(args.input)))
    elif args.what == "hypergraph":
        h = codec.hypergraph_from_doc(codec.loads(_read(args.input)))
        space = from_hypergraph(h, args.mode, orientation=args.orientation)
    elif args.what == "metric":
        space = from_scaled_metric(codec.metric_from_csv(_read(args.input), args.scale))
    else:
        space = from_finite_topology(codec.topology_from_doc(codec.loads(_read(args.input))))
    return _emit(args, codec.space_to_doc(space))


# -- check ----------------------------------------------------------------


def cmd_check(args):
    if args.what == "continuity":
        f = _map(args.input)
        cert = f.certificate()
        payload = {"continuous": cert.continuous}
        if cert.violation is not None:
            gen, x = cert.violation
            payload["violation"] = {"generator": sorted(map(str, gen)), "point": str(x)}
        return _emit(args, payload)
    space = _space(args.input)
    if args.what == "classify":
        kind = classify(space)
        return _emit(args, {
            "isConvergence": kind.is_convergence,
            "isLimit": kind.is_limit,
            "isPseudotopological": kind.is_pseudotopological,
        })
    if args.what == "closure":
        subset = _labels(args.set[0])
        out = closure_of(space, subset)
        return _emit(args, {"closure": sorted(map(str, out))})
    if args.what == "interior":
        fam = [set(_labels(s)) for s in args.set]
        out = interior(space, fam)
        return _emit(args, {"interior": sorted(map(str, out))})
    # covering-system check, plus the minimal subcover when it covers
    fam = [set(_labels(s)) for s in args.set]
    scope = set(_labels(args.scope)) if args.scope else set(space.points)
    cs = CoveringSystem(fam, scope)
    cert = is_covering_system(space, cs)
    payload = {"covering_system": cert.holds}
    if cert.holds and scope == set(space.points):
        sub = finite_subcover(space, cs)
        payload["minimal_subcover"] = [sorted(map(str, s)) for s in sub.sets]
        payload["exact"] = sub.exact
    elif cert.witness:
        x, gen = cert.witness
        payload["witness"] = {"point": str(x), "generator": sorted(map(str, gen))}
    return _emit(args, payload)


# -- construct --------------------------------------------------------------


def cmd_construct(args):
    if args.what == "product":
        res = product(_space(args.inputs[0]), _space(args.inputs[1]))
        return _emit(args, codec.space_to_doc(res.space))
    if args.what == "coproduct":
        res = coproduct(_space(args.inputs[0]), _space(args.inputs[1]))
        return _emit(args, codec.space_to_doc(res.space))
    if args.what == "subspace":
        res = subspace(_space(args.inputs[0]), _labels(args.set[0]))
        return _emit(args, codec.space_to_doc(res.space))
    if args.what == "quotient":
        classes = [set(_labels(c)) for c in args.classes.split(";")]
        res = quotient(_space(args.inputs[0]), classes)
        return _emit(args, codec.space_to_doc(res.space))
    if args.what == "pushout":
        res = pushout(_map(args.inputs[0]), _map(args.inputs[1]))
        return _emit(args, {
            "apex": codec.space_to_doc(res.apex),
            "leg_a": {codec.point_label(p): codec.point_label(v)
                      for p, v in res.leg_a.mapping.items()},
            "leg_y": {codec.point_label(p): codec.point_label(v)
                      for p, v in res.leg_y.mapping.items()},
        })
    fs = function_space(_space(args.inputs[0]), _space(args.inputs[1]), cap=args.cap)
    return _emit(args, codec.space_to_doc(fs.base))


# -- homotopy ----------------------------------------------------------------


def cmd_homotopy(args):
    if args.what == "classes":
        classes = homotopy_classes(_space(args.inputs[0]), _space(args.inputs[1]),
                                   cap=args.cap)
        return _emit(args, {
            "count": len(classes),
            "classes": [codec.chain_to_doc(cls) for cls in classes],
        })
    if args.what == "equiv":
        witness = is_homotopy_equivalence(_map(args.inputs[0]), cap=args.cap)
        if witness is None:
            return _emit(args, {"equivalence": False})
        g, chain_y, chain_x = witness
        return _emit(args, {
            "equivalence": True,
            "inverse": codec.chain_to_doc([g])[0],
            "chain_fg_to_id": codec.chain_to_doc(chain_y),
            "chain_gf_to_id": codec.chain_to_doc(chain_x),
        })
    if args.what == "chain":
        f, g = _map(args.inputs[0]), _map(args.inputs[1])
        chain = are_homotopic(f, g, cap=args.cap)
        if chain is None:
            return _emit(args, {"homotopic": False})
        return _emit(args, {"homotopic": True, "length": len(chain) - 1,
                            "chain": codec.chain_to_doc(chain)})
    rep = gluing_check(args.length)
    return _emit(args, rep.to_dict())


# -- cofib -------------------------------------------------------------------


def cmd_cofib(args):
    if args.what == "check":
        i = _map(args.inputs[0])
        n, retract = is_cofibration_upto(i, args.max_cyl or args.cyl,
                                         model=args.model,
                                         node_budget=args.node_budget)
        payload = {"cofibration": retract is not None,
                   "cylinder_length": n, "model": args.model}
        if retract is not None:
            payload["retract"] = codec.chain_to_doc([retract])[0]
        return _emit(args, payload)
    if args.what == "hep":
        i, f = _map(args.inputs[0]), _map(args.inputs[1])
        hom = codec.homotopy_from_doc(codec.loads(_read(args.inputs[2])))
        sol = hep_solve(i, f, hom, k=args.end, node_budget=args.node_budget)
        if sol is None:
            return _emit(args, {"solved": False})
        return _emit(args, {"solved": True,
                            "extension": codec.homotopy_to_doc(sol)})
    if args.what == "factorize":
        res = factorize(_map(args.inputs[0]), args.cyl, model=args.model,
                        node_budget=args.node_budget)
        return _emit(args, {
            "cylinder_length": res.length,
            "model": res.model,
            "i": codec.chain_to_doc([res.i])[0],
            "g": codec.chain_to_doc([res.g])[0],
            "mapping_cylinder": codec.space_to_doc(res.mapping_cylinder.apex),
            "cofibration_verdict": res.cofibration_verdict,
            "equivalence_verdict": res.equivalence_verdict,
        })
    # axiom suites
    if args.inputs:
        sample = []
        for path in args.inputs:
            p = Path(path)
            files = sorted(p.glob("*.json")) if p.is_dir() else [p]
            for fp in files:
                sample.append((fp.stem, codec.space_from_doc(codec.loads(_read(fp)))))
    else:
        sample = standard_sample()
    report = verify_axioms(sample, args.suite, n=args.cyl, model=args.model,
                           node_budget=args.node_budget)
    _emit(args, report.to_dict())
    return report.exit_code()


# -- invariants ----------------------------------------------------------------


def cmd_invariants(args):
    if args.what == "pi0":
        comps = pi0(_space(args.inputs[0]))
        return _emit(args, {
            "count": len(comps),
            "components": [sorted(map(str, c)) for c in comps],
        })
    if args.what == "pin":
        space = _space(args.inputs[0])
        base = args.base if args.base is not None else str(space.points[0])
        budgets = tuple(int(b) for b in args.budgets.split(","))
        res = pi_n(BasedSpace(space, base), args.n, budgets, map_cap=args.map_cap)
        return _emit(args, res.to_dict())
    if args.what == "suspend":
        space = _space(args.inputs[0])
        base = args.base if args.base is not None else str(space.points[0])
        current = BasedSpace(space, base)
        for _ in range(args.levels):
            current = suspension(current, args.length).based
        return _emit(args, {
            "space": codec.space_to_doc(current.space),
            "base": codec.point_label(current.base),
        })
    loop = _map(args.inputs[0])
    return _emit(args, {"winding": winding_oracle(loop)})


# -- cells ----------------------------------------------------------------------


def _parse_cell_point(raw):
    if isinstance(raw, str) and (raw.isdigit() or
                                 (raw.startswith("-") and raw[1:].isdigit())):
        return int(raw)
    return raw


def _presentation_from_doc(doc):
    base = empty_space() if doc.get("base") is None else codec.space_from_doc(doc["base"])
    specs = []
    for entry in doc.get("attachments", []):
        attaching = {_parse_cell_point(k): v
                     for k, v in entry.get("attachingMap", {}).items()}
        specs.append((entry["dim"], entry["length"], attaching))
    return build_presentation(base, specs)


def cmd_cells(args):
    if args.what == "attach":
        space = _space(args.inputs[0])
        attaching = {}
        if args.map:
            for pair in args.map.split(","):
                k, v = pair.split(":")
                attaching[_parse_cell_point(k)] = v
        new_space, _o, _d, interior_pts, _rec = attach_cell(
            space, attaching, args.dim, args.length)
        return _emit(args, {
            "space": codec.space_to_doc(new_space),
            "cell_interior": sorted(map(codec.point_label, interior_pts)),
        })
    if args.what == "present":
        pres = _presentation_from_doc(codec.loads(_read(args.inputs[0])))
        return _emit(args, {
            "result": codec.space_to_doc(pres.result),
            "cells": len(pres.attachments),
            "cell_interiors": [sorted(map(codec.point_label, pts))
                               for pts in pres.cell_interiors],
        })
    if args.what == "meet":
        pres = _presentation_from_doc(codec.loads(_read(args.inputs[0])))
        subset = set(_labels(args.set[0]))
        return _emit(args, {
            "cells": list(cells_meeting_interior(pres, subset)),
        })
    if args.what == "serre":
        p = _map(args.inputs[0])
        models = []
        for item in args.models.split(","):
            d, l = item.split(":")
            models.append((int(d), int(l)))
        rep = serre_check(p, cell_models=tuple(models), map_cap=args.map_cap)
        return _emit(args, rep)
    if args.what == "weq":
        budgets = tuple(int(b) for b in args.budgets.split(","))
        rep = weak_equivalence_check(_map(args.inputs[0]), n_max=args.nmax,
                                     budgets=budgets, map_cap=args.map_cap)
        return _emit(args, rep, code=0 if rep["verdict"] == "pass" else 1)
    found = search_nontopological(attempts=args.attempts, seed=args.seed)
    if found is None:
        return _emit(args, {"found": False})
    return _emit(args, {
        "found": True,
        "trial": found["trial"],
        "space": codec.space_to_doc(found["space"]),
    })


# -- parser ------------------------------------------------------------------


def _leaf(group, name, func, what, inputs="*"):
    p = group.add_parser(name)
    p.set_defaults(func=func, what=what)
    if inputs:
        p.add_argument("inputs", nargs=inputs)
    return p


def build_parser():
    top = argparse.ArgumentParser(
        prog="finconv",
        description="Exact homotopy machinery on finite convergence spaces.")
    top.add_argument("--version", action="version",
                     version=f"finconv schema {SCHEMA_VERSION}")
    top.add_argument("--text", action="store_true",
                     help="terse text output instead of JSON")
    top.add_argument("--seed", type=int, default=0,
                     help="seed for randomized suites")
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build spaces from combinatorial data")
    bg = b.add_subparsers(dest="what", required=True)
    for what in ("graph", "hypergraph", "metric", "topology"):
        p = bg.add_parser(what)
        p.set_defaults(func=cmd_build, what=what)
        p.add_argument("input")
        if what == "hypergraph":
            p.add_argument("--mode", choices=("skeleton", "alexandrov"),
                           default="skeleton")
            p.add_argument("--orientation", choices=("faces", "cofaces"),
                           default="faces")
        if what == "metric":
            p.add_argument("--scale", type=float, default=1.0)

    c = sub.add_parser("check", help="predicates on spaces and maps")
    cg = c.add_subparsers(dest="what", required=True)
    for what in ("continuity", "classify", "closure", "interior", "cover"):
        p = cg.add_parser(what)
        p.set_defaults(func=cmd_check, what=what)
        p.add_argument("input")
        p.add_argument("--set", action="append", default=[],
                       help="comma-separated point set (repeatable)")
        p.add_argument("--scope", default=None)

    k = sub.add_parser("construct", help="categorical constructions")
    kg = k.add_subparsers(dest="what", required=True)
    for what in ("product", "coproduct", "subspace", "quotient", "pushout",
                 "expspace"):
        p = _leaf(kg, what, cmd_construct, what, inputs="+")
        p.add_argument("--set", action="append", default=[])
        p.add_argument("--classes", default="")
        p.add_argument("--cap", type=int, default=50_000)

    h = sub.add_parser("homotopy", help="homotopy queries")
    hg = h.add_subparsers(dest="what", required=True)
    for what in ("classes", "equiv", "chain", "gluing"):
        p = _leaf(hg, what, cmd_homotopy, what)
        p.add_argument("--cap", type=int, default=50_000)
        if what == "gluing":
            p.add_argument("--length", type=int, default=1)

    f = sub.add_parser("cofib", help="cofibration machinery")
    fg = f.add_subparsers(dest="what", required=True)
    for what in ("check", "hep", "factorize", "axioms"):
        p = _leaf(fg, what, cmd_cofib, what)
        p.add_argument("--cyl", type=int, default=1, help="cylinder length")
        p.add_argument("--max-cyl", type=int, default=0,
                       help="retry with longer cylinders up to this length")
        p.add_argument("--node-budget", type=int, default=10_000_000)
        if what == "axioms":
            p.add_argument("--model", choices=("pushout", "union"),
                           default="union")
            p.add_argument("--suite", default="i-category",
                           choices=("i-category", "cofibration-category"))
        else:
            # the lemma-faithful pushout target for plain checks, the
            # union target for the mapping-cylinder verification
            default_model = "union" if what == "factorize" else "pushout"
            p.add_argument("--model", choices=("pushout", "union"),
                           default=default_model)
        if what == "hep":
            p.add_argument("--end", type=int, choices=(0, 1), default=0)

    i = sub.add_parser("invariants", help="homotopy invariants")
    ig = i.add_subparsers(dest="what", required=True)
    for what in ("pi0", "pin", "suspend", "winding"):
        p = _leaf(ig, what, cmd_invariants, what, inputs="+")
        p.add_argument("--base", default=None)
        if what == "pin":
            p.add_argument("--n", type=int, default=1)
            p.add_argument("--budgets", default="3,4,5")
            p.add_argument("--map-cap", type=int, default=500_000)
        if what == "suspend":
            p.add_argument("--length", type=int, default=3)
            p.add_argument("--levels", type=int, default=1)

    e = sub.add_parser("cells", help="cell attachments, fibrations, weq")
    eg = e.add_subparsers(dest="what", required=True)
    for what in ("attach", "present", "meet", "serre", "weq",
                 "search-nontopological"):
        p = _leaf(eg, what, cmd_cells, what)
        if what == "attach":
            p.add_argument("--dim", type=int, default=1)
            p.add_argument("--length", type=int, default=1)
            p.add_argument("--map", default="")
        if what == "meet":
            p.add_argument("--set", action="append", default=[])
        if what == "serre":
            p.add_argument("--models", default="0:1,1:1")
            p.add_argument("--map-cap", type=int, default=200_000)
        if what == "weq":
            p.add_argument("--nmax", type=int, default=1)
            p.add_argument("--budgets", default="2,3,4")
            p.add_argument("--map-cap", type=int, default=200_000)
        if what == "search-nontopological":
            p.add_argument("--attempts", type=int, default=50)
    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SearchSpaceTooLarge, ExponentialTooLarge, BudgetExhausted) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except SpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
