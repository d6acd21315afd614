"""Command-line surface tying the pipeline together.

Subcommands: validate, scale, concepts, implications, approx, compose,
sum, tensor, laws.  Exit codes: 0 ok, 1 validation failure, 2 parse or
structural error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass, field

from . import formats
from .concepts import (
    default_value_grid,
    enumerate_concepts,
    list_implications,
    validate_context,
)
from .errors import (
    DomainError,
    ParseError,
    ResourceCapError,
    StructuralError,
    ValidationFailure,
    VConceptsError,
)
from .predicates import (
    VPredicate,
    check_predicate,
    close_predicate,
    extension,
    lower_approx,
    upper_approx,
)
from .quantale import Powerset, Quantale, check_quantale_laws, quantale_from_name
from .relations import (
    VRelation,
    compose,
    relation_equiv,
    repair_relation,
    residuate_source,
    residuate_target,
    validate_relation,
)
from .sampling import (
    DEFAULT_SEED,
    random_raw_relation,
    random_relation,
    random_space,
)
from .scales import (
    LinguisticVariable,
    constraint_sum,
    context_indiscernibility,
    granulate,
    induced_indiscernibility,
    apposition,
    tensor_variables,
    validate_variable,
)
from .spaces import VMap, VSpace, closed_space, discrete_space, validate_space

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_STRUCTURAL = 2
EXIT_RESOURCE = 3


@dataclass
class Workspace:
    """Everything one invocation loaded, keyed by file path."""

    quantale: Quantale | None = None
    spaces: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)
    predicates: dict = field(default_factory=dict)
    variables: dict = field(default_factory=dict)
    contexts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


def _need_quantale(args) -> Quantale:
    if not args.quantale:
        raise StructuralError("this command needs --quantale")
    return quantale_from_name(args.quantale)


def _outdir(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _print_diff(path, ids_r, ids_c, before, after, q):
    changed = []
    for i, rid in enumerate(ids_r):
        for j, cid in enumerate(ids_c):
            if q.format(before[i][j]) != q.format(after[i][j]):
                changed.append((rid, cid, before[i][j], after[i][j]))
    for rid, cid, old, new in changed:
        print(f"repair {path}: ({rid},{cid}) {q.format(old)} -> {q.format(new)}")
    return changed


def cmd_validate(args) -> int:
    ws = Workspace(quantale=quantale_from_name(args.quantale) if args.quantale else None)
    reports = []
    repaired_everything = True

    for path in args.space or []:
        q = _need_quantale(args)
        s = formats.read_space_file(path, q)
        ws.spaces[path] = s
        rep = validate_space(s)
        reports.append((path, rep))
        if not rep.ok and args.repair:
            fixed = closed_space(q, s.elements, s.metric)
            out = path + ".repaired.csv"
            formats.write_space_file(out, fixed)
            _print_diff(path, s.elements, s.elements, s.metric, fixed.metric, q)
        elif not rep.ok:
            repaired_everything = False

    for rel_path, src_path, tgt_path in args.relation or []:
        q = _need_quantale(args)
        src = formats.read_space_file(src_path, q)
        tgt = formats.read_space_file(tgt_path, q)
        r = formats.read_relation_file(rel_path, src, tgt)
        ws.relations[rel_path] = r
        rep = validate_relation(r)
        reports.append((rel_path, rep))
        if not rep.ok and args.repair:
            fixed = repair_relation(r)
            out = rel_path + ".repaired.csv"
            formats.write_relation_file(out, fixed)
            _print_diff(rel_path, src.elements, tgt.elements, r.matrix, fixed.matrix, q)
        elif not rep.ok:
            repaired_everything = False

    for pred_path, space_path in args.predicate or []:
        q = _need_quantale(args)
        s = formats.read_space_file(space_path, q)
        p = formats.read_predicate_file(pred_path, s)
        ws.predicates[pred_path] = p
        rep = check_predicate(p)
        reports.append((pred_path, rep))
        if not rep.ok and args.repair:
            fixed = close_predicate(s, p.values)
            out = pred_path + ".repaired.csv"
            formats.write_predicate_file(out, fixed)
            _print_diff(pred_path, s.elements, ("",), [(v,) for v in p.values], [(v,) for v in fixed.values], q)
        elif not rep.ok:
            repaired_everything = False

    for path in args.context or []:
        ctx = formats.read_context_bundle(path)
        ws.contexts[path] = ctx
        rep = validate_context(ctx)
        reports.append((path, rep))
        if not rep.ok:
            repaired_everything = False

    for path in args.scale or []:
        try:
            var = formats.read_scale_file(path, repair=args.repair)
            ws.variables[path] = var
            reports.append((path, validate_variable(var)))
            if args.repair:
                out = path + ".repaired.json"
                formats.write_scale_file(out, var)
        except ValidationFailure as exc:
            reports.append((path, exc.report))
            repaired_everything = False

    bad = 0
    for path, rep in reports:
        print(f"{path}: {'ok' if rep.ok else 'INVALID'}")
        for v in rep.violations:
            print(f"  {v}")
        if not rep.ok:
            bad += 1
    if bad and not (args.repair and repaired_everything):
        return EXIT_VALIDATION
    return EXIT_OK


def _load_facets(args) -> list[tuple[VMap, LinguisticVariable]]:
    descriptions = args.description or []
    scales = args.scale or []
    if len(descriptions) != len(scales):
        raise StructuralError("each --description needs a matching --scale")
    if not descriptions:
        raise StructuralError("scale needs at least one --description/--scale pair")
    variables = [formats.read_scale_file(p, repair=args.repair) for p in scales]
    q = variables[0].quantale
    for v in variables[1:]:
        if v.quantale != q:
            raise StructuralError("facet scales use different quantales")

    pair_lists = [formats.read_description_file(p) for p in descriptions]
    object_ids = tuple(obj for obj, _ in pair_lists[0])
    for pairs in pair_lists[1:]:
        if tuple(obj for obj, _ in pairs) != object_ids:
            raise StructuralError("facet descriptions do not list the same objects")
    if args.objects:
        objects = formats.read_approximation_space_file(args.objects, q)
        if objects.elements != object_ids:
            raise StructuralError("--objects metric does not match the description's objects")
    else:
        objects = discrete_space(q, object_ids)

    facets = []
    for pairs, var in zip(pair_lists, variables):
        mapping = dict(pairs)
        facets.append((VMap(objects, var.data_domain, mapping), var))
    return facets


def cmd_scale(args) -> int:
    facets = _load_facets(args)
    out = _outdir(args)
    if len(facets) == 1:
        ctx = granulate(*facets[0])
    else:
        ctx = apposition(facets, form=args.form)
    bundle = formats.write_context_bundle(out, ctx)

    induced = context_indiscernibility(ctx)
    formats.write_space_file(os.path.join(out, "induced_indiscernibility.csv"), induced)
    fineness = induced_indiscernibility(*facets[0]) if len(facets) == 1 else None
    given = ctx.objects
    q = ctx.quantale
    violations = [
        (g1, g2)
        for i, g1 in enumerate(given.elements)
        for j, g2 in enumerate(given.elements)
        if not q.leq(given.metric[i][j], induced.metric[i][j])
    ]
    print(f"wrote {bundle}")
    if violations:
        print(f"fineness: {len(violations)} object pair(s) coarser than the scale allows")
        for g1, g2 in violations:
            print(f"  ({g1},{g2})")
    else:
        print("fineness: ok")
    if fineness is not None and not fineness.metric_report.ok:
        print(fineness.metric_report)
    return EXIT_OK


def cmd_concepts(args) -> int:
    ctx = formats.read_context_bundle(args.context)
    rep = validate_context(ctx)
    if not rep.ok:
        print(rep, file=sys.stderr)
        return EXIT_VALIDATION
    grid = None
    if args.grid:
        q = ctx.quantale
        sep = ";" if isinstance(q, Powerset) else ","
        grid = [q.parse(tok) for tok in args.grid.split(sep) if tok.strip()]
    lattice = enumerate_concepts(ctx, value_grid=grid, grid_cap=args.grid_cap)
    out = _outdir(args)
    json_path = args.json or os.path.join(out, "lattice.json")
    formats.write_lattice_json(json_path, lattice)
    print(f"concepts: {len(lattice)}")
    print(f"wrote {json_path}")
    if args.dot:
        formats.write_lattice_dot(args.dot, lattice)
        print(f"wrote {args.dot}")
    return EXIT_OK


def cmd_implications(args) -> int:
    ctx = formats.read_context_bundle(args.context)
    rep = validate_context(ctx)
    if not rep.ok:
        print(rep, file=sys.stderr)
        return EXIT_VALIDATION
    q = ctx.quantale
    threshold = q.parse(args.threshold) if args.threshold is not None else None
    found = list_implications(ctx, threshold=threshold)
    for imp in found:
        print(f"{imp.premise} -> {imp.conclusion}\t{q.format(imp.measure)}")
    print(f"implications: {len(found)}")
    return EXIT_OK


def cmd_approx(args) -> int:
    q = _need_quantale(args)
    space = formats.read_approximation_space_file(args.space, q)
    pred = formats.read_predicate_file(args.predicate, space)
    lo = lower_approx(pred)
    hi = upper_approx(pred)
    out = _outdir(args)
    formats.write_predicate_file(os.path.join(out, "lower.csv"), lo)
    formats.write_predicate_file(os.path.join(out, "upper.csv"), hi)
    ext_path = os.path.join(out, "extensions.json")
    import json as _json

    with open(ext_path, "w", encoding="utf-8", newline="") as fh:
        _json.dump(
            {
                "predicate": list(extension(pred)),
                "lower": list(extension(lo)),
                "upper": list(extension(hi)),
            },
            fh,
            indent=2,
            sort_keys=True,
        )
        fh.write("\n")
    print(f"wrote {out}/lower.csv {out}/upper.csv {out}/extensions.json")
    return EXIT_OK


def cmd_compose(args) -> int:
    q = _need_quantale(args)
    rows1, cols1, m1 = formats.read_matrix_file(args.left, q)
    rows2, cols2, m2 = formats.read_matrix_file(args.right, q)

    def as_relation(rows, cols, matrix):
        return VRelation(discrete_space(q, rows), discrete_space(q, cols), matrix)

    if args.op == "compose":
        if cols1 != rows2:
            raise StructuralError("left columns must equal right rows for compose")
        result = compose(as_relation(rows1, cols1, m1), as_relation(rows2, cols2, m2))
    elif args.op == "residuate-source":
        if rows1 != rows2:
            raise StructuralError("both operands must share their rows for residuate-source")
        result = residuate_source(as_relation(rows1, cols1, m1), as_relation(rows2, cols2, m2))
    elif args.op == "residuate-target":
        if cols1 != cols2:
            raise StructuralError("both operands must share their columns for residuate-target")
        result = residuate_target(as_relation(rows1, cols1, m1), as_relation(rows2, cols2, m2))
    else:
        raise StructuralError(f"unknown op {args.op!r}")
    out = _outdir(args)
    path = os.path.join(out, "result.csv")
    formats.write_relation_file(path, result)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_sum(args) -> int:
    v0 = formats.read_scale_file(args.scales[0], repair=args.repair)
    v1 = formats.read_scale_file(args.scales[1], repair=args.repair)
    combined = constraint_sum(v0, v1)
    out = _outdir(args)
    path = os.path.join(out, "sum.json")
    formats.write_scale_file(path, combined)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_tensor(args) -> int:
    v0 = formats.read_scale_file(args.scales[0], repair=args.repair)
    v1 = formats.read_scale_file(args.scales[1], repair=args.repair)
    combined = tensor_variables(v0, v1)
    out = _outdir(args)
    path = os.path.join(out, "tensor.json")
    formats.write_scale_file(path, combined)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_laws(args) -> int:
    q = _need_quantale(args)
    failures = 0
    rep = check_quantale_laws(q)
    print(f"quantale laws: {'PASS' if rep.ok else 'FAIL'}")
    if not rep.ok:
        print(rep)
        failures += 1

    rng = random.Random(args.seed)
    trials = args.trials
    ok_assoc = ok_ident = ok_curry = ok_adj = True
    for _ in range(trials):
        x = random_space(rng, q, rng.randint(1, 4), "x")
        y = random_space(rng, q, rng.randint(1, 4), "y")
        z = random_space(rng, q, rng.randint(1, 4), "z")
        w = random_space(rng, q, rng.randint(1, 4), "w")
        r = random_raw_relation(rng, x, y)
        s = random_raw_relation(rng, y, z)
        t = random_raw_relation(rng, z, w)
        ok_assoc &= relation_equiv(compose(compose(r, s), t), compose(r, compose(s, t)))
        valid = random_relation(rng, x, y)
        ok_ident &= relation_equiv(compose(identity_relation(x), valid), valid)
        ok_ident &= relation_equiv(compose(valid, identity_relation(y)), valid)
        rho = random_raw_relation(rng, x, w)
        sigma = random_raw_relation(rng, x, y)
        tau = random_raw_relation(rng, y, w)
        ok_curry &= relation_equiv(
            residuate_source(compose(sigma, tau), rho),
            residuate_source(tau, residuate_source(sigma, rho)),
        )
        lhs_below = all(
            q.leq(a, b)
            for ra, rb in zip(compose(sigma, tau).matrix, rho.matrix)
            for a, b in zip(ra, rb)
        )
        resid = residuate_source(sigma, rho)
        rhs_below = all(
            q.leq(a, b)
            for ra, rb in zip(tau.matrix, resid.matrix)
            for a, b in zip(ra, rb)
        )
        ok_adj &= lhs_below == rhs_below
    for name, ok in (
        ("composition associativity", ok_assoc),
        ("identity relations", ok_ident),
        ("residuation currying", ok_curry),
        ("composition/residuation adjunction", ok_adj),
    ):
        print(f"{name} ({trials} trials): {'PASS' if ok else 'FAIL'}")
        if not ok:
            failures += 1
    return EXIT_VALIDATION if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quantale", help="bool | fuzzy | cost | powerset:a,b,c")
    common.add_argument("--repair", action="store_true", help="close invalid artifacts instead of failing")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized law fixtures")
    common.add_argument("--out", default="out", help="output directory")

    parser = argparse.ArgumentParser(prog="vconcepts", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate artifacts, optionally repairing them")
    p.add_argument("--space", action="append", metavar="CSV")
    p.add_argument("--relation", action="append", nargs=3, metavar=("REL", "SRC", "TGT"))
    p.add_argument("--predicate", action="append", nargs=2, metavar=("PRED", "SPACE"))
    p.add_argument("--context", action="append", metavar="BUNDLE")
    p.add_argument("--scale", action="append", metavar="JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("scale", parents=[common], help="granulate described objects into a context bundle")
    p.add_argument("--description", action="append", metavar="CSV", required=True)
    p.add_argument("--scale", action="append", metavar="JSON", required=True)
    p.add_argument("--objects", metavar="CSV", help="object metric (default: discrete)")
    p.add_argument("--form", choices=("sum", "tensor"), default="sum", help="multi-facet combination")
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("concepts", parents=[common], help="enumerate the concept lattice of a context")
    p.add_argument("context", metavar="BUNDLE")
    p.add_argument("--grid", help="comma-separated value literals (';' for powerset)")
    p.add_argument("--grid-cap", type=int, default=10_000)
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_concepts)

    p = sub.add_parser("implications", parents=[common], help="graded implications between single attributes")
    p.add_argument("context", metavar="BUNDLE")
    p.add_argument("--threshold", metavar="LITERAL")
    p.set_defaults(func=cmd_implications)

    p = sub.add_parser("approx", parents=[common], help="rough lower/upper approximation of a predicate")
    p.add_argument("--space", required=True, metavar="CSV")
    p.add_argument("--predicate", required=True, metavar="CSV")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("compose", parents=[common], help="relation algebra calculator")
    p.add_argument("--op", choices=("compose", "residuate-source", "residuate-target"), default="compose")
    p.add_argument("left", metavar="CSV")
    p.add_argument("right", metavar="CSV")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("sum", parents=[common], help="constraint sum of two scales over one data domain")
    p.add_argument("scales", nargs=2, metavar="JSON")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("tensor", parents=[common], help="tensor product of two scales")
    p.add_argument("scales", nargs=2, metavar="JSON")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("laws", parents=[common], help="self-check: algebra laws and relation laws")
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(func=cmd_laws)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValidationFailure as exc:
        print(f"error:\n{exc.report}", file=sys.stderr)
        return EXIT_VALIDATION
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except StructuralError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except VConceptsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
