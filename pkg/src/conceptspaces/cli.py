"""``cspace`` command line.

Results go to stdout (a single value or CSV rows), diagnostics to stderr.
Exit status: 0 success, 1 domain error (e.g. an empty conjunction),
2 usage or parse error. Commands that sample take ``--seed`` (default 42)
and CSV outputs start with a ``# seed=<n>`` header line.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass

from .dynamics import reidentify, right_of, transitivity_check
from .errors import ConceptSpaceError, CspaceParseError
from .formats import (
    build_model,
    load_cspace,
    network_to_cspace,
    read_exemplars_csv,
    read_trajectories_csv,
)
from .fuzzy import FuzzyAssertion, osherson_smith_witness
from .rbf import classify as rbf_classify
from .rbf import detect_chimera, train_rbf
from .regions import combine, typicality
from .svg import emit_svg
from .taxonomy import classify_taxonomy, dual_categorize, tessellation_of
from .tessellation import Tessellation, categorize, tessellate_2d

__all__ = ["main", "run_cli", "CliResult"]

DEFAULT_SEED = 42


class UsageError(Exception):
    pass


def _f(v: float) -> str:
    return repr(float(v))


def _model(args):
    return build_model(load_cspace(args.space), seed=args.seed)


def _space(m):
    if m.space is None:
        raise ConceptSpaceError("the space file defines no dimensions")
    return m.space


def _labels(text):
    return [s for s in text.split(",") if s] if text else None


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _seed_header(args, out):
    out.write(f"# seed={args.seed}\n")


def cmd_validate(args, out):
    m = _model(args)
    s = m.spec
    ndim, ndom = (m.space.ndim, len(m.space.domains)) if m.space else (0, 0)
    out.write(
        f"ok dims={ndim} domains={ndom} concepts={len(s.concepts)} "
        f"points={len(s.points)} exemplars={len(s.exemplars)} rbf={len(s.rbf)} "
        f"isa={len(s.isa)} tracks={len(m.pre) + len(m.post)} seats={len(s.seats)} "
        f"fuzzy={len(s.fuzzy)}\n"
    )


def _tessellation(m, labels):
    labels = labels or sorted(m.concepts)
    if not labels:
        raise ConceptSpaceError("no concepts to tessellate")
    for l in labels:
        m.concept(l)
    return Tessellation.from_concepts([m.concepts[l] for l in labels])


def cmd_categorize(args, out):
    m = _model(args)
    t = _tessellation(m, _labels(args.concepts))
    out.write(categorize(t, m.point(args.point)) + "\n")


def cmd_typicality(args, out):
    m = _model(args)
    out.write(_f(typicality(m.concept(args.concept), m.point(args.point))) + "\n")


def cmd_combine(args, out):
    m = _model(args)
    a, b = m.concept(args.a), m.concept(args.b)
    c = combine(a, b, seed=args.seed, label=args.label)
    p = m.point(args.point) if args.point else None
    _seed_header(args, out)
    w = _writer(out)
    header = ["label", "sigma", *m.space.dimension_names]
    w.writerow(header + (["typicality"] if p else []))
    for con in (a, b, c):
        row = [con.label, _f(con.sigma), *(_f(v) for v in con.prototype.coords)]
        w.writerow(row + ([_f(typicality(con, p))] if p else []))
    if args.out:
        emit_svg([a, b], args.out, highlight=[c])


def cmd_tessellate(args, out):
    m = _model(args)
    t = _tessellation(m, _labels(args.concepts))
    bbox = tuple(float(v) for v in args.bbox.split(",")) if args.bbox else None
    if bbox is not None and len(bbox) != 4:
        raise UsageError("--bbox takes xmin,ymin,xmax,ymax")
    cells = tessellate_2d(t, bbox)
    _seed_header(args, out)
    w = _writer(out)
    w.writerow(["label", "area", "vertices"])
    for c in cells:
        verts = ";".join(f"{_f(x)} {_f(y)}" for x, y in c.polygon)
        w.writerow([c.label, _f(c.area), verts])
    if args.out:
        emit_svg(cells, args.out, bbox=bbox)


def cmd_fuzzy_check(args, out):
    checks = []
    if args.space:
        m = _model(args)
        vals = {(a.predicate, a.individual): a for a in m.fuzzy}
        for pred, parts in m.conjunctions.items():
            for a in m.fuzzy:
                if a.predicate != pred:
                    continue
                missing = [p for p in parts if (p, a.individual) not in vals]
                if missing:
                    raise ConceptSpaceError(
                        f"no value for {missing[0]}({a.individual})")
                checks.append((a, [vals[(p, a.individual)] for p in parts]))
    else:
        if args.asserted is None or not args.conjuncts:
            raise UsageError("fuzzy-check needs --space or --asserted with --conjuncts")
        try:
            values = [float(v) for v in args.conjuncts.split(",")]
        except ValueError:
            raise UsageError("--conjuncts takes comma-separated numbers") from None
        conj = [FuzzyAssertion(f"c{i}", "x", v) for i, v in enumerate(values)]
        checks.append((FuzzyAssertion("conjunction", "x", args.asserted), conj))
    w = _writer(out) if args.format == "csv" else None
    if w:
        w.writerow(["predicate", "individual", "asserted", "bound", "violated",
                    "min", "product", "lukasiewicz"])
    for asserted, conj in checks:
        r = osherson_smith_witness(asserted, conj)
        if w:
            w.writerow([asserted.predicate, asserted.individual, _f(asserted.value),
                        _f(r.bound), str(r.violated).lower(),
                        *(_f(r.by_norm[n]) for n in ("min", "product", "lukasiewicz"))])
        else:
            out.write(f"{asserted.predicate}({asserted.individual})={_f(asserted.value)} "
                      f"{r.line()}\n")


def cmd_rbf_train(args, out):
    m = _model(args)
    exemplars = list(m.exemplars)
    if args.csv:
        exemplars += read_exemplars_csv(args.csv, _space(m))
    if not exemplars:
        raise ConceptSpaceError("no exemplars to train on")
    net = train_rbf(exemplars, args.k, seed=args.seed, width=args.width)
    text = network_to_cspace(net, header=f"seed={args.seed} k={args.k}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    out.write(text)


def cmd_rbf_classify(args, out):
    m = _model(args)
    if m.network is None:
        raise ConceptSpaceError("the space file defines no rbf units")
    x = m.point(args.point)
    c = rbf_classify(m.network, x)
    w = _writer(out)
    w.writerow(["label", "confidence", "ambiguous", "top_labels"])
    if len(m.network.units) > 1:
        ch = detect_chimera(m.network, x, args.threshold)
        amb, tops = str(ch.ambiguous).lower(), ";".join(ch.top_labels)
    else:
        amb, tops = "false", c.label
    w.writerow([c.label, _f(c.confidence), amb, tops])


def cmd_track(args, out):
    m = _model(args)
    pre, post = list(m.pre), list(m.post)
    if args.pre:
        pre += read_trajectories_csv(args.pre, _space(m))
    if args.post:
        post += read_trajectories_csv(args.post, _space(m))
    r = reidentify(pre, post)
    w = _writer(out)
    w.writerow(["pre_id", "post_id", "cost"])
    for mt in r.matches:
        w.writerow([mt.pre_id, mt.post_id, _f(mt.cost)])
    for p in r.unmatched_pre:
        w.writerow([p, "", ""])
    for q in r.unmatched_post:
        w.writerow(["", q, ""])
    if args.out:
        emit_svg(pre + post, args.out)


def cmd_rightof(args, out):
    m = _model(args)
    if m.frame is None:
        raise ConceptSpaceError("the space file defines no seats")
    if args.check:
        rep = transitivity_check(m.frame)
        out.write("transitive\n" if rep.transitive else "non-transitive\n")
        w = _writer(out)
        for triple in rep.counterexamples:
            w.writerow(triple)
    else:
        if not (args.x and args.y):
            raise UsageError("rightof needs --x and --y (or --check)")
        out.write(("true" if right_of(m.frame, args.x, args.y) else "false") + "\n")
    if args.out:
        emit_svg([m.frame], args.out)


def cmd_classify(args, out):
    m = _model(args)
    w = _writer(out)
    if args.point:
        t = tessellation_of(m.taxonomy, _labels(args.concepts))
        r = dual_categorize(m.taxonomy, t, m.point(args.point), args.samples, args.seed)
        _seed_header(args, out)
        w.writerow(["type1_label", "typicality", "type2_ancestors"])
        w.writerow([r.type1_label, _f(r.typicality), ";".join(r.type2_ancestors)])
        return
    if not args.label:
        raise UsageError("classify needs --label or --point")
    pos = classify_taxonomy(m.taxonomy, args.label, args.samples, args.seed)
    _seed_header(args, out)
    out.write(f"# exact={str(pos.exact).lower()}\n")
    w.writerow(["relation", "label"])
    for s in pos.superconcepts:
        w.writerow(["superconcept", s])
    for s in pos.subconcepts:
        w.writerow(["subconcept", s])


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cspace", description="Conceptual-space reasoning tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, help, space_required=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--space", required=space_required, help="CSPACE file")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.set_defaults(func=fn)
        return sp

    cmd("validate", cmd_validate, "parse and build a CSPACE file")
    sp = cmd("categorize", cmd_categorize, "nearest-prototype label of a point")
    sp.add_argument("--point", required=True, help="coordinates x,y,... or a point name")
    sp.add_argument("--concepts", help="comma-separated subset of concepts")
    sp = cmd("typicality", cmd_typicality, "typicality of a point in a concept")
    sp.add_argument("--concept", required=True)
    sp.add_argument("--point", required=True)
    sp = cmd("combine", cmd_combine, "conjunction of two concepts")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--label")
    sp.add_argument("--point", help="also report typicality of this point")
    sp.add_argument("--out", help="write an SVG picture")
    sp = cmd("tessellate", cmd_tessellate, "2-D Voronoi cells of concept prototypes")
    sp.add_argument("--concepts")
    sp.add_argument("--bbox", help="xmin,ymin,xmax,ymax")
    sp.add_argument("--out", help="write an SVG picture")
    sp = cmd("fuzzy-check", cmd_fuzzy_check, "conjunction bound check", space_required=False)
    sp.add_argument("--asserted", type=float)
    sp.add_argument("--conjuncts", help="comma-separated conjunct values")
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp = cmd("rbf-train", cmd_rbf_train, "train an RBF network from exemplars")
    sp.add_argument("--csv", help="extra exemplars CSV (label,coords...)")
    sp.add_argument("--k", type=int, default=1, help="units per class")
    sp.add_argument("--width", type=float, help="common unit width")
    sp.add_argument("--out")
    sp = cmd("rbf-classify", cmd_rbf_classify, "classify a point with rbf units")
    sp.add_argument("--point", required=True)
    sp.add_argument("--threshold", type=float, default=0.95)
    sp = cmd("track", cmd_track, "re-identify objects across an occlusion")
    sp.add_argument("--pre", help="CSV object_id,t,coords... before the gap")
    sp.add_argument("--post", help="CSV object_id,t,coords... after the gap")
    sp.add_argument("--out")
    sp = cmd("rightof", cmd_rightof, "right-of relation in a seating frame")
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--check", action="store_true", help="report transitivity")
    sp.add_argument("--out")
    sp = cmd("classify", cmd_classify, "taxonomy position or dual-process categorization")
    sp.add_argument("--label")
    sp.add_argument("--point")
    sp.add_argument("--concepts")
    sp.add_argument("--samples", type=int, default=10_000)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out = io.StringIO()
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except CspaceParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return 2
    except ConceptSpaceError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    stdout.write(out.getvalue())
    return 0


@dataclass(frozen=True)
class CliResult:
    code: int
    stdout: str
    stderr: str


def run_cli(argv) -> CliResult:
    """Run the CLI in-process and capture its streams."""
    o, e = io.StringIO(), io.StringIO()
    code = main(list(argv), o, e)
    return CliResult(code, o.getvalue(), e.getvalue())


if __name__ == "__main__":
    sys.exit(main())
