"""Command-line front end.

Every command prints a JSON report (sorted keys, no timestamps) and, with
``--out DIR``, also writes it there.  Exit codes: 0 when all assertions pass,
1 on a failed assertion or a usage/configuration error, 2 when an Unknown
fixed-point verdict occurs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .groups import FiniteGroup, GroupError, group_to_json, load_group
from .indexing import GraphError, IndexGraph
from .laws import (
    closure_suite,
    coinduced_operad_laws,
    decomposition_suite,
    indexing_operad_laws,
    laxness_suite,
    lower_suboperad_suite,
    psi_lemma_suite,
)
from .monoids import MONOIDS, TrivialMonoidError, get_monoid
from .realization import (
    admissible_sets,
    pi_is_operad_morphism_check,
    realized_transfer_system,
    reproduce_appendix_b,
    reproduce_warning,
)
from .transfer import (
    TransferError,
    TransferSystem,
    complete_transfer_system,
    enumerate_transfer_systems,
    generate_transfer_system,
    hasse_dot,
    is_transfer_system,
    parse_transfer_pairs,
    trivial_transfer_system,
)

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    group: str = "C4"
    tau: str = "all"
    monoid: str = "dyadic"
    n_max: int | None = None
    bound: int = 3
    out: str | None = None
    seed: int = 0

    def validate(self, group: FiniteGroup) -> None:
        if self.bound < 1:
            raise ValueError("--bound must be at least 1")
        if self.monoid not in MONOIDS:
            raise ValueError(f"unknown monoid {self.monoid!r}; choose from {sorted(MONOIDS)}")
        if self.n_max is not None and not 0 <= self.n_max <= group.order + 2:
            raise ValueError(f"--n-max must lie in 0..{group.order + 2} for {group.name}")


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        group=getattr(args, "group", "C4"),
        tau=getattr(args, "tau", "all"),
        monoid=getattr(args, "monoid", "dyadic"),
        n_max=getattr(args, "n_max", None),
        bound=getattr(args, "bound", 3),
        out=getattr(args, "out", None),
        seed=getattr(args, "seed", 0),
    )


def resolve_tau(group: FiniteGroup, text: str) -> list[TransferSystem]:
    """``all``, ``trivial``, ``complete`` or a pair list such as ``e->C2, C2->C4``.

    A pair list is closed up to the least transfer system containing it.
    """
    key = text.strip().lower()
    if key == "all":
        return enumerate_transfer_systems(group)
    if key in ("trivial", "", "{}"):
        return [trivial_transfer_system(group)]
    if key == "complete":
        return [complete_transfer_system(group)]
    return [generate_transfer_system(group, parse_transfer_pairs(group, text))]


def _emit(report: dict, config: RunConfig, name: str) -> None:
    report = {"seed": config.seed, "config": asdict(config), **report}
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    print(text)
    if config.out:
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.json").write_text(text + "\n")


def _write_side_file(config: RunConfig, filename: str, text: str) -> None:
    if config.out:
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / filename).write_text(text)


# commands ----------------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace) -> int:
    config = _config(args)
    group = load_group(config.group)
    systems = enumerate_transfer_systems(group)
    report = {
        "command": "enumerate",
        "group": group.name,
        "subgroups": [group.subgroup_name(k) for k in range(len(group.subgroups))],
        "count": len(systems),
        "systems": [{"describe": t.describe(), **t.to_json()} for t in systems],
        "passed": True,
    }
    _write_side_file(config, "hasse.dot", hasse_dot(systems))
    _emit(report, config, "enumerate")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    config = _config(args)
    group = load_group(config.group)
    seeds = parse_transfer_pairs(group, config.tau)
    t = generate_transfer_system(group, seeds)
    report = {
        "command": "generate",
        "group": group.name,
        "seeds": [[group.subgroup_name(k), group.subgroup_name(h)] for k, h in seeds],
        "seeds_closed": is_transfer_system(group, seeds),
        "transfer_system": {"describe": t.describe(), **t.to_json()},
        "passed": True,
    }
    _emit(report, config, "generate")
    return EXIT_OK


def _verdict_code(passed: bool, unknown: int) -> int:
    if unknown:
        return EXIT_UNKNOWN
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    group = load_group(config.group)
    config.validate(group)
    monoid = get_monoid(config.monoid)
    results = [
        realized_transfer_system(group, t, monoid, config.bound, oracle=args.oracle, ordering=args.ordering)
        for t in resolve_tau(group, config.tau)
    ]
    unknown = sum(r.unknown for r in results)
    passed = all(r.passed for r in results)
    report = {
        "command": "verify",
        "group": group.name,
        "monoid": monoid.name,
        "checked": len(results),
        "unknown": unknown,
        "results": [r.to_json() for r in results],
        "passed": passed,
    }
    _emit(report, config, "verify")
    return _verdict_code(passed, unknown)


def cmd_admissibles(args: argparse.Namespace) -> int:
    config = _config(args)
    group = load_group(config.group)
    config.validate(group)
    monoid = get_monoid(config.monoid)
    n_max = config.n_max if config.n_max is not None else 2
    blocks = []
    unknown = 0
    agree = True
    for t in resolve_tau(group, config.tau):
        for n in range(1, n_max + 1):
            verdicts = admissible_sets(group, t, n, monoid, config.bound, oracle=args.oracle)
            unknown += sum(v.status == "unknown" for v in verdicts)
            agree &= all(v.agrees for v in verdicts)
            blocks.append(
                {
                    "tau": t.describe(),
                    "n": n,
                    "graph_subgroups": len(verdicts),
                    "admissible": sum(v.status == "nonempty" for v in verdicts),
                    "verdicts": [v.to_json() for v in verdicts],
                }
            )
    report = {"command": "admissibles", "group": group.name, "monoid": monoid.name, "blocks": blocks, "passed": agree}
    _emit(report, config, "admissibles")
    return _verdict_code(agree, unknown)


def cmd_reproduce(args: argparse.Namespace) -> int:
    config = _config(args)
    report = reproduce_warning() if args.which == "warning" else reproduce_appendix_b()
    _emit({"command": "reproduce", **report}, config, f"reproduce-{args.which}")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_laws(args: argparse.Namespace) -> int:
    config = _config(args)
    groups = [load_group(g) for g in args.groups]
    seed, k = config.seed, args.instances
    suites = []
    for group in groups:
        suites += [
            coinduced_operad_laws(group, k, seed),
            indexing_operad_laws(group, k, seed),
            decomposition_suite(group, max(1, k // 5), seed),
            laxness_suite(group, max(1, k // 2), seed),
            lower_suboperad_suite(group, max(1, k // 2), seed),
            closure_suite(group, max(1, k // 2), seed),
        ]
    suites.append(psi_lemma_suite(groups, max(1, k // 10), seed))
    suites.append(pi_is_operad_morphism_check(max(1, k // 2), seed))
    passed = all(s["passed"] for s in suites)
    _emit({"command": "laws", "suites": suites, "passed": passed}, config, "laws")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_export(args: argparse.Namespace) -> int:
    config = _config(args)
    group = load_group(config.group)
    if args.what == "group":
        data = group_to_json(group)
        data["subgroups"] = [
            {"index": k, "name": group.subgroup_name(k), "elements": sorted(s)}
            for k, s in enumerate(group.subgroup_sets)
        ]
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    elif args.what == "hasse":
        text = hasse_dot(enumerate_transfer_systems(group))
    else:
        if not args.input:
            raise ValueError("export graph needs --input with a JSON edge list")
        gr = IndexGraph.from_json(group, json.loads(Path(args.input).read_text()))
        text = gr.to_dot()
    sys.stdout.write(text)
    suffix = "json" if args.what == "group" else "dot"
    _write_side_file(config, f"{args.what}.{suffix}", text)
    return EXIT_OK


# parser ---------------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for Unknown verdicts
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="normforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, tau_default: str | None = "all") -> None:
        p.add_argument("--group", default="C4", help="preset (C4, C2xC3, S3, ...) or JSON file")
        if tau_default is not None:
            p.add_argument("--tau", default=tau_default, help="'all', 'trivial', 'complete' or pairs like 'e->C2'")
        p.add_argument("--out", help="directory for JSON/DOT output")
        p.add_argument("--seed", type=int, default=0)

    def engine(p: argparse.ArgumentParser) -> None:
        p.add_argument("--monoid", default="dyadic", choices=sorted(MONOIDS))
        p.add_argument("--bound", type=int, default=3, help="word length for the bounded oracle")
        p.add_argument("--n-max", dest="n_max", type=int)
        p.add_argument("--oracle", action="store_true", help="also run the bounded brute-force search")

    p = sub.add_parser("enumerate", help="list all transfer systems and the Hasse diagram")
    common(p, tau_default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("generate", help="least transfer system containing some pairs")
    common(p, tau_default="")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check that R^tau realizes tau")
    common(p)
    engine(p)
    p.add_argument("--ordering", default="least", choices=("least", "reversed"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("admissibles", help="decide every graph subgroup up to arity --n-max")
    common(p)
    engine(p)
    p.set_defaults(func=cmd_admissibles)

    p = sub.add_parser("reproduce", help="rerun a worked counterexample")
    p.add_argument("which", choices=("warning", "appendix-b"))
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("laws", help="run the randomized law suites")
    p.add_argument("--groups", nargs="+", default=["C4", "C2xC2"])
    p.add_argument("--instances", type=int, default=1000)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("export", help="write a group, Hasse diagram or graph drawing")
    p.add_argument("what", choices=("group", "hasse", "graph"))
    p.add_argument("--input", help="graph JSON for 'export graph'")
    common(p, tau_default=None)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TrivialMonoidError, GroupError, TransferError, GraphError, ValueError, OSError) as exc:
        print(f"normforge: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
