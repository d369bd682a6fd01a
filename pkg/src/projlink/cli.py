"""Command-line interface with stable JSON output.

One JSON document per invocation on stdout (keys sorted, no timing data);
diagnostics, including elapsed times, go to stderr.  Exit codes: 0 for
success or a property that holds, 1 for a refuted property or a validation
failure, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import atlas as atlas_mod
from . import jsj as jsj_mod
from .links import (
    AmbientSpace,
    CalculusError,
    chain_to_list,
    classify,
    component_count,
    isotopic,
    lift,
    link_to_dict,
    make_link,
    normal_form,
)

_VERIFIERS = {
    "lift-injectivity": (20, lambda space, bound: atlas_mod.verify_lift_injectivity(bound)),
    "confluence": (10, lambda space, bound: atlas_mod.confluence_audit(space, bound)),
    "relation-lift": (30, lambda space, bound: atlas_mod.relation_lift_compatibility(bound)),
}


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _space(value: str) -> AmbientSpace:
    return AmbientSpace(value)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projlink",
        description="Torus-link calculus on S^3 and RP^3, with atlas "
                    "verification and JSJ-tree tooling.")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for generator-backed subcommands (reserved)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker count; results are independent of it")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="normal form, components, classification")
    p.add_argument("--space", type=_space, choices=list(AmbientSpace), required=True)
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("isotopic", help="decide isotopy of two triples")
    p.add_argument("--space", type=_space, choices=list(AmbientSpace), required=True)
    p.add_argument("triple", type=int, nargs=6, metavar="N",
                   help="p1 q1 n1 p2 q2 n2")

    p = sub.add_parser("lift", help="preimage in S^3 of an RP^3 triple")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("atlas", help="enumerate isotopy classes up to a bound")
    p.add_argument("--space", type=_space, choices=list(AmbientSpace), required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("kind", choices=sorted(_VERIFIERS))
    p.add_argument("--space", type=_space, choices=list(AmbientSpace),
                   default=AmbientSpace.SPHERE3,
                   help="space for the confluence audit (default s3)")
    p.add_argument("--bound", type=int, default=None)

    p = sub.add_parser("jsj", help="JSJ-tree tooling")
    p.add_argument("subcommand", choices=["outermost", "cover-check"])
    p.add_argument("input", help="path to a JSON tree or cover file")

    return parser


def _cmd_canon(args) -> int:
    link = make_link(args.space, args.p, args.q, args.n)
    nf, chain = normal_form(link)
    verdict = classify(link)
    _emit({
        "input": link_to_dict(link),
        "normal_form": link_to_dict(nf),
        "components": component_count(link),
        "classification": {"kind": verdict.kind.value, "detail": verdict.detail},
        "witness": chain_to_list(chain),
    })
    return 0


def _cmd_isotopic(args) -> int:
    p1, q1, n1, p2, q2, n2 = args.triple
    a = make_link(args.space, p1, q1, n1)
    b = make_link(args.space, p2, q2, n2)
    verdict, chain = isotopic(a, b)
    _emit({
        "isotopic": verdict,
        "witness": chain_to_list(chain) if chain is not None else None,
    })
    return 0


def _cmd_lift(args) -> int:
    link = make_link(AmbientSpace.RP3, args.p, args.q, args.n)
    _emit({"input": link_to_dict(link), "lift": link_to_dict(lift(link))})
    return 0


def _cmd_atlas(args) -> int:
    if args.bound < 0:
        raise CalculusError(f"--bound must be >= 0, got {args.bound}")
    _emit(atlas_mod.enumerate_classes(args.space, args.bound).to_dict())
    return 0


def _cmd_verify(args) -> int:
    default_bound, runner = _VERIFIERS[args.kind]
    bound = default_bound if args.bound is None else args.bound
    if bound < 0:
        raise CalculusError(f"--bound must be >= 0, got {bound}")
    report = runner(args.space, bound)
    _emit(report.to_dict(include_elapsed=False))
    print(f"{args.kind}: bound={bound} checked={report.checked_pairs} "
          f"violations={len(report.violations)} "
          f"elapsed={report.elapsed * 1000:.0f}ms", file=sys.stderr)
    return 0 if report.ok else 1


def _cmd_jsj(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"projlink: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    try:
        if args.subcommand == "outermost":
            tree = jsj_mod.validate_tree(raw)
            values = jsj_mod.potential(tree)
            outer = sorted(jsj_mod.outermost(tree))
            _emit({"potential": values, "outermost": outer})
        else:
            spec = jsj_mod.cover_from_dict(raw)
            entries = jsj_mod.lemma44_check(spec)
            _emit({
                "vertices": [
                    {
                        "id": e.vertex,
                        "orbit": list(e.orbit),
                        "outermost": e.outermost,
                        "criterion": e.criterion,
                        "agree": e.agree,
                    }
                    for e in entries
                ],
                "mismatches": sum(1 for e in entries if not e.agree),
            })
    except jsj_mod.TreeValidationError as exc:
        _emit({"status": "ERROR",
               "violations": [{"code": c, "detail": d} for c, d in exc.violations]})
        for code, detail in exc.violations:
            print(f"projlink: {code}: {detail}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "canon": _cmd_canon,
        "isotopic": _cmd_isotopic,
        "lift": _cmd_lift,
        "atlas": _cmd_atlas,
        "verify": _cmd_verify,
        "jsj": _cmd_jsj,
    }
    try:
        return handlers[args.command](args)
    except CalculusError as exc:
        print(f"projlink: {exc.code}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
