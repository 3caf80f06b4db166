"""Command line entry point.

    qgroups --type B2 --ell 5 verify --suite b2-coproducts
    qgroups --type A2 normal-form "(q - q^-1)^-1 * (E1 F1 - F1 E1)"
    qgroups --type A2 basis 1,1
    qgroups --type A2 --ell 4 classify
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Callable, Sequence, get_args

from . import REGISTRY
from .config import RrefMethod, RunConfig
from .coxeter import build_root_system
from .errors import QGroupsError
from .grammar import parse_element
from .types import Weight

logger = logging.getLogger(__name__)

LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def weight_argument(text: str) -> Weight:
    try:
        return tuple(int(part) for part in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgroups", description="Exact checks for quantum groups.")
    parser.add_argument("--type", dest="type_label", default="A2", help="Cartan type, e.g. A3, B2, G2")
    parser.add_argument("--ell", type=int, default=0, help="order of the root of unity, 0 for generic q")
    parser.add_argument("--degree-bound", type=int, default=8, help="largest height handled by the slice oracle")
    parser.add_argument("--format", dest="output_format", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    parser.add_argument("--rref-method", choices=get_args(RrefMethod), default="FF")
    parser.add_argument("-v", "--verbose", action="count", default=0)

    commands = parser.add_subparsers(dest="command", required=True)
    verify = commands.add_parser("verify", help="run check suites")
    verify.add_argument("--suite", dest="suites", action="append", default=[], help="suite name, repeatable")
    verify.add_argument("--list", action="store_true", help="list the registered suites and exit")
    verify.set_defaults(handler=verify_cmd)

    normal_form = commands.add_parser("normal-form", help="print the normal form of an element or tensor")
    normal_form.add_argument("expression")
    normal_form.set_defaults(handler=normal_form_cmd)

    basis = commands.add_parser("basis", help="list PBW monomials of a weight")
    basis.add_argument("weight", type=weight_argument, help="simple root coefficients, e.g. 1,1")
    basis.set_defaults(handler=basis_cmd)

    classify = commands.add_parser("classify", help="classify the skew-central subalgebra of the longest element")
    classify.set_defaults(handler=classify_cmd)
    return parser


def emit(config: RunConfig, data: Any, text: str) -> None:
    if config.output_format == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def verify_cmd(config: RunConfig, args: argparse.Namespace) -> int:
    if args.list:
        suites = [REGISTRY.get_suite(name) for name in sorted(REGISTRY.suites)]
        emit(
            config,
            {suite.name: suite.description for suite in suites},
            "\n".join(f"{suite.name:28} {suite.description}" for suite in suites),
        )
        return 0
    report = REGISTRY.run(config)
    print(report.to_json() if config.output_format == "json" else report.to_text())
    return 1 if report.failed else 0


def normal_form_cmd(config: RunConfig, args: argparse.Namespace) -> int:
    from .uqcore import QuantumAlgebra

    value = parse_element(QuantumAlgebra.from_config(config), args.expression)
    emit(config, {"input": args.expression, "normal_form": str(value)}, str(value))
    return 0


def basis_cmd(config: RunConfig, args: argparse.Namespace) -> int:
    from .pbw import PBW
    from .uqcore import QuantumAlgebra

    algebra = QuantumAlgebra.from_config(config)
    weight: Weight = args.weight
    if len(weight) != algebra.rank or any(k < 0 for k in weight):
        raise QGroupsError(f"weight {weight} is not a nonnegative weight of rank {algebra.rank}")
    pbw = PBW(algebra)
    word = pbw.canonical_word()
    roots = algebra.system.inversion_sequence(word)
    monomials = pbw.basis(word, weight)

    def describe(psi: dict[Weight, int]) -> str:
        factors = [(root, psi[root]) for root in roots if psi.get(root)]
        return " ".join(f"E[{''.join(map(str, root))}]" + (f"^{k}" if k > 1 else "") for root, k in factors) or "1"

    emit(
        config,
        {"word": list(word), "weight": list(weight), "monomials": [m.as_report() for m in monomials]},
        "\n".join([f"word {word}, {len(monomials)} monomials"] + [describe(dict(m.psi.values)) for m in monomials]),
    )
    return 0


def classify_cmd(config: RunConfig, args: argparse.Namespace) -> int:
    from .skewcenter import classification_context, classify_central, classify_commutative

    system = build_root_system(config.cartan)
    ctx = classification_context(config.cartan, config.ell)
    longest = system.longest
    if classify_central(system, ctx, longest):
        verdict = "central"
    elif classify_commutative(system, ctx, longest):
        verdict = "commutative, not central"
    else:
        verdict = "not commutative"
    emit(config, {"type": config.type_label, "ell": config.ell, "classification": verdict}, verdict)
    return 0


Handler = Callable[[RunConfig, argparse.Namespace], int]


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=LEVELS[min(args.verbose, len(LEVELS) - 1)], format="%(levelname)s %(name)s: %(message)s")
    config = RunConfig(
        type_label=args.type_label,
        ell=args.ell,
        degree_bound=args.degree_bound,
        suites=list(getattr(args, "suites", [])),
        output_format=args.output_format,
        seed=args.seed,
        rref_method=args.rref_method,
    )
    handler: Handler = args.handler
    try:
        return handler(config, args)
    except (QGroupsError, ValueError) as error:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"qgroups: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
