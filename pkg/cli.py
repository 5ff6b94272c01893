"""gentri command line: generate 3-graphs, tile them, certify and run experiments.

Every subcommand prints one JSON report (sorted keys, no timing unless
``--timing``) and exits 0 when solved or verified, 1 when certified
infeasible, 2 when the node budget ran out and 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any, NoReturn

from pydantic import ValidationError

from tiling.config import Settings
from tiling.copies import count_copies, enumerate_copies
from tiling.errors import Infeasible, NotFound, TilingError, Unknown
from tiling.exact import Tiling, max_tiling, perfect_tiling
from tiling.experiments import ALL, SCENARIOS, run_scenarios, summarize
from tiling.fractional import (
    FORMULATIONS,
    FarkasCertificate,
    FractionalTiling,
    certificate_partition_audit,
    frac_min_pair_weight,
    frac_perfect,
    verify_certificate,
)
from tiling.generators import GenSpec, build, parse_family
from tiling.hypergraph import AvoidanceGraph, ThreeGraph, parse_three_graph
from tiling.lattice import IndexLattice, abundant_vectors, closure_hypothesis, index_buckets, transferral_witness
from tiling.rainbow import RainbowTiling, colour_covering_hom, rainbow_perfect_tiling
from tiling.rationals import fraction_str, parse_fraction
from tiling.reports import (
    EXIT_USAGE,
    INFEASIBLE,
    NOT_FOUND,
    REJECTED,
    SOLVED,
    UNKNOWN,
    VERIFIED,
    ExperimentReport,
    rows_to_csv,
)
from tiling.structure import (
    EXACT,
    HEURISTIC,
    classify_pairs,
    extremal_case_tiling,
    extremality,
    linkage_profile,
    linked_count,
    pipeline_quantities,
)

logger = logging.getLogger("gentri")

ENV_HELP = """\
environment:
  GENTRI_BUDGET_NODES  search node limit (default 2000000)
  GENTRI_JOBS          worker processes for experiment (default 1)
  GENTRI_SEED          seed used when --seed is omitted
  GENTRI_FORMAT        json or csv (default json)
  GENTRI_LOG_LEVEL     stderr log level (default WARNING)
  GENTRI_RESTARTS      local-search restarts for extremal (default 20)
  GENTRI_SAMPLES       sample size for sampled linkedness (default 1000)

exit codes: 0 solved/verified, 1 infeasible, 2 unknown (budget), 64 usage
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except TilingError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _parts(text: str) -> list[list[int]]:
    return [_ints(block) for block in text.split("|")]


# ---------------------------------------------------------------------------
# Input handling
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _spec_data(text: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--spec is not JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise UsageError("--spec must be a JSON object")
    return data


def _spec(text: str) -> GenSpec:
    try:
        return GenSpec.model_validate(_spec_data(text))
    except ValidationError as exc:
        raise UsageError(f"invalid spec: {exc.errors()[0]['msg']}") from exc


def _graph(args: argparse.Namespace) -> ThreeGraph:
    if args.spec is not None:
        built = build(_spec(args.spec))
        if not isinstance(built.graph, ThreeGraph) or len(built.graphs) != 1:
            raise UsageError(f"spec kind {built.spec.kind!r} does not describe a single 3-graph")
        return built.graph
    return parse_three_graph(_read(args.input))


def _source(args: argparse.Namespace) -> dict[str, Any]:
    return {"spec": _spec_data(args.spec)} if args.spec is not None else {"input": args.input}


def _seed(args: argparse.Namespace, settings: Settings) -> int:
    seed = settings.seed if args.seed is None else args.seed
    if seed is None:
        raise UsageError(f"{args.command} is randomised; pass --seed or set GENTRI_SEED")
    return seed


def _budget(args: argparse.Namespace, settings: Settings) -> int:
    return settings.budget_nodes if args.budget_nodes is None else args.budget_nodes


def _negative(command: str, inputs: dict, result: Infeasible | Unknown | NotFound) -> ExperimentReport:
    outcome = UNKNOWN if isinstance(result, Unknown) else NOT_FOUND if isinstance(result, NotFound) else INFEASIBLE
    return ExperimentReport(
        command=command,
        inputs=inputs,
        outcome=outcome,
        payload={"reason": result.reason},
        nodes=getattr(result, "nodes", 0),
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace, settings: Settings) -> ExperimentReport | str:
    data = _spec_data(args.spec) if args.spec is not None else {}
    if args.kind is not None:
        data["kind"] = args.kind
    for key in ("n", "delta_floor", "p", "sizes", "A"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if data.get("kind") == "random_codegree":
        data["seed"] = _seed(args, settings)
    try:
        spec = GenSpec.model_validate(data)
    except ValidationError as exc:
        raise UsageError(f"invalid spec: {exc.errors()[0]['msg']}") from exc
    return build(spec).dump()


def cmd_copies(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    payload: dict[str, Any] = {"count": count_copies(H), "n": H.n}
    if args.list:
        payload["copies"] = [list(c) for c in enumerate_copies(H)]
    return ExperimentReport(command="copies", inputs=_source(args), outcome=SOLVED, payload=payload)


def cmd_tile(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    inputs = {**_source(args), "mode": "max" if args.max else "perfect"}
    solver = max_tiling if args.max else perfect_tiling
    result = solver(H, budget_nodes=_budget(args, settings))
    if isinstance(result, Tiling):
        return ExperimentReport(
            command="tile", inputs=inputs, outcome=SOLVED, payload=result.to_dict(), verified=result.verify(H)
        )
    report = _negative("tile", inputs, result)
    if isinstance(result, Unknown) and result.best is not None:
        report.payload["best"] = result.best.to_dict()
    return report


def cmd_frac(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    B = AvoidanceGraph.of(args.avoid or ())
    B.check_range(H.n)
    inputs = {**_source(args), "avoid": [list(p) for p in B.sorted_pairs()]}
    if args.minimax:
        inputs["formulation"] = args.formulation
        result = frac_min_pair_weight(H, formulation=args.formulation)
        if isinstance(result, Infeasible):
            return _negative("frac", inputs, result)
        value, w = result
        payload = {"W": fraction_str(value), "tiling": w.to_dict()}
        return ExperimentReport(command="frac", inputs=inputs, outcome=SOLVED, payload=payload, verified=w.verify(H))

    result = frac_perfect(H, B)
    if isinstance(result, FractionalTiling):
        return ExperimentReport(
            command="frac", inputs=inputs, outcome=SOLVED, payload=result.to_dict(), verified=result.verify(H, B)
        )
    ok = verify_certificate(H, B, result)
    payload = {"certificate": result.to_dict(ok), "total": fraction_str(result.total())}
    if args.beta is not None:
        inputs["beta"] = fraction_str(args.beta)
        payload["audit"] = certificate_partition_audit(H, B, result, args.beta).to_dict()
    return ExperimentReport(command="frac", inputs=inputs, outcome=INFEASIBLE, payload=payload, verified=ok)


def cmd_certify(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    try:
        data = json.loads(_read(args.certificate))
    except json.JSONDecodeError as exc:
        raise UsageError(f"certificate is not JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise UsageError("certificate must be a JSON object")
    cert = FarkasCertificate.from_dict(data.get("certificate", data))
    ok = verify_certificate(H, cert.avoiding, cert)
    return ExperimentReport(
        command="certify",
        inputs={**_source(args), "certificate": args.certificate},
        outcome=VERIFIED if ok else REJECTED,
        payload={"total": fraction_str(cert.total())},
        verified=ok,
    )


def cmd_extremal(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    inputs = {**_source(args), "gamma": fraction_str(args.gamma), "mode": args.mode}
    if args.set is not None:
        inputs["set"] = args.set
        pipeline = pipeline_quantities(H, args.set, args.gamma)
        result = extremal_case_tiling(H, args.set, args.gamma, budget_nodes=_budget(args, settings))
        if not isinstance(result, Tiling):
            report = _negative("extremal", inputs, result)
            report.payload["pipeline"] = pipeline.to_dict()
            return report
        payload = {"pipeline": pipeline.to_dict(), "tiling": result.to_dict()}
        return ExperimentReport(
            command="extremal", inputs=inputs, outcome=SOLVED, payload=payload, verified=result.verify(H)
        )
    seed = _seed(args, settings) if args.mode == HEURISTIC else (settings.seed if args.seed is None else args.seed)
    inputs["seed"] = seed
    report = extremality(
        H, args.gamma, args.mode, seed=seed, restarts=settings.restarts, budget_nodes=_budget(args, settings)
    )
    outcome = SOLVED if args.mode == HEURISTIC or report.exact else UNKNOWN
    return ExperimentReport(
        command="extremal", inputs=inputs, outcome=outcome, payload=report.to_dict(), nodes=report.nodes
    )


def cmd_pairs(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    result = classify_pairs(H, args.set, args.gamma)
    return ExperimentReport(
        command="pairs",
        inputs={**_source(args), "gamma": fraction_str(args.gamma), "set": args.set},
        outcome=SOLVED,
        payload=result.to_dict(),
    )


def cmd_linked(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    seed = _seed(args, settings) if args.r > 2 else args.seed
    inputs = {**_source(args), "eta": fraction_str(args.eta), "r": args.r, "seed": seed}
    budget = _budget(args, settings)
    if args.pair is not None:
        if len(args.pair) != 2:
            raise UsageError(f"--pair needs two vertices, got {len(args.pair)}")
        inputs["pair"] = args.pair
        count = linked_count(
            H, args.pair[0], args.pair[1], args.r, samples=settings.samples, seed=seed, budget_nodes=budget
        )
        if isinstance(count, Unknown):
            return _negative("linked", inputs, count)
        payload = {**count.to_dict(), "linked": count.linked(args.eta, H.n)}
    else:
        profile = linkage_profile(H, args.eta, args.r, seed=seed, samples=settings.samples, budget_nodes=budget)
        if isinstance(profile, Unknown):
            return _negative("linked", inputs, profile)
        payload = profile.to_dict()
    return ExperimentReport(command="linked", inputs=inputs, outcome=SOLVED, payload=payload)


def cmd_lattice(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    H = _graph(args)
    inputs = {**_source(args), "mu": fraction_str(args.mu), "parts": args.parts}
    lattice = IndexLattice.of(abundant_vectors(H, args.parts, args.mu), dim=len(args.parts))
    payload: dict[str, Any] = {
        "buckets": [{"copies": c, "vector": list(v)} for v, c in index_buckets(H, args.parts).items()],
        "closure": closure_hypothesis(H, args.parts, args.mu).to_dict(),
        "lattice": lattice.to_dict(),
        "membership": [{"member": lattice.contains(q), "vector": q} for q in args.query or ()],
    }
    if args.psi is not None:
        inputs["psi"] = fraction_str(args.psi)
        witness = transferral_witness(H, args.parts, args.psi)
        payload["transferral"] = (
            {"found": False, "reason": witness.reason}
            if isinstance(witness, NotFound)
            else {"found": True, "pair": [list(v) for v in witness]}
        )
    return ExperimentReport(command="lattice", inputs=inputs, outcome=SOLVED, payload=payload)


def cmd_rainbow(args: argparse.Namespace, settings: Settings) -> ExperimentReport:
    if args.covering is not None:
        H1 = _graph(args)
        H2 = parse_three_graph(_read(args.covering))
        inputs = {**_source(args), "covering": args.covering}
        found = colour_covering_hom(H1, H2)
        if isinstance(found, NotFound):
            return _negative("rainbow", inputs, found)
        return ExperimentReport(
            command="rainbow", inputs=inputs, outcome=SOLVED, payload=found.to_dict(), verified=found.verify(H1, H2)
        )
    if args.spec is not None:
        built = build(_spec(args.spec))
        if built.spec.kind != "rainbow_family":
            raise UsageError(f"spec kind {built.spec.kind!r} does not describe a colour family")
        inst = parse_family(built.dump())
    else:
        inst = parse_family(_read(args.input))
    result = rainbow_perfect_tiling(inst, budget_nodes=_budget(args, settings))
    if not isinstance(result, RainbowTiling):
        return _negative("rainbow", _source(args), result)
    return ExperimentReport(
        command="rainbow", inputs=_source(args), outcome=SOLVED, payload=result.to_dict(), verified=result.verify(inst)
    )


def cmd_experiment(args: argparse.Namespace, settings: Settings) -> ExperimentReport | str:
    seed = _seed(args, settings)
    jobs = settings.jobs if args.jobs is None else max(args.jobs, 1)
    rows = run_scenarios(args.scenario, seed, jobs=jobs, budget_nodes=_budget(args, settings))
    if args.format == "csv":
        return rows_to_csv(rows)
    agree = all(row.agree for row in rows)
    return ExperimentReport(
        command="experiment",
        inputs={"scenario": args.scenario, "seed": seed},
        outcome=VERIFIED if agree else REJECTED,
        payload={"rows": [row.model_dump() for row in rows], "summary": summarize(rows)},
        nodes=sum(row.nodes for row in rows),
        verified=agree,
    )


COMMANDS: dict[str, Callable[[argparse.Namespace, Settings], ExperimentReport | str]] = {
    "gen": cmd_gen,
    "copies": cmd_copies,
    "tile": cmd_tile,
    "frac": cmd_frac,
    "certify": cmd_certify,
    "extremal": cmd_extremal,
    "pairs": cmd_pairs,
    "linked": cmd_linked,
    "lattice": cmd_lattice,
    "rainbow": cmd_rainbow,
    "experiment": cmd_experiment,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default="-", help="graph file in the text format ('-' for stdin)")
    common.add_argument("--spec", help="generator spec as JSON instead of --input")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, help="seed for randomised steps (env GENTRI_SEED)")
    common.add_argument("--budget-nodes", type=int, help="search node limit (env GENTRI_BUDGET_NODES)")
    common.add_argument("--timing", action="store_true", help="add wall_time to the report")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")

    parser = _Parser(
        prog="gentri",
        description=__doc__.splitlines()[0],
        epilog=ENV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="build a graph from a generator spec")
    gen.add_argument("--kind", choices=["h_ext", "complete", "tripartite", "random_codegree"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--delta-floor", dest="delta_floor", type=int)
    gen.add_argument("--p", help="edge probability as p/q (random_codegree)")
    gen.add_argument("--sizes", type=_ints, help="three part sizes (tripartite)")
    gen.add_argument("--A", dest="A", type=_ints, help="the 3-part of a support 5-graph")

    copies = sub.add_parser("copies", parents=[common], help="count or list copies of T")
    mode = copies.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="count only (default)")
    mode.add_argument("--list", action="store_true", help="also list every copy")

    tile = sub.add_parser("tile", parents=[common], help="perfect or maximum T-tiling")
    mode = tile.add_mutually_exclusive_group()
    mode.add_argument("--perfect", action="store_true", help="perfect tiling or infeasibility (default)")
    mode.add_argument("--max", action="store_true", help="maximum tiling")

    frac = sub.add_parser("frac", parents=[common], help="fractional tiling or Farkas certificate")
    frac.add_argument("--avoid", type=_ints, action="append", help="forbidden pair u,v (repeatable)")
    frac.add_argument("--minimax", action="store_true", help="minimise the largest pair weight")
    frac.add_argument("--formulation", choices=FORMULATIONS, default="sets")
    frac.add_argument("--beta", type=_rational, help="audit the certificate's ordered partition at this beta")

    certify = sub.add_parser("certify", parents=[common], help="verify a certificate file")
    certify.add_argument("--certificate", required=True, help="JSON with 'a' (and optional 'avoiding')")

    extremal = sub.add_parser("extremal", parents=[common], help="extremality check or extremal-case tiling")
    extremal.add_argument("--gamma", type=_rational, required=True)
    extremal.add_argument("--mode", choices=[EXACT, HEURISTIC], default=EXACT)
    extremal.add_argument("--set", type=_ints, help="run the extremal-case construction for this S")

    pairs = sub.add_parser("pairs", parents=[common], help="good and bad pairs inside S")
    pairs.add_argument("--gamma", type=_rational, required=True)
    pairs.add_argument("--set", type=_ints, required=True)

    linked = sub.add_parser("linked", parents=[common], help="(eta, r)-linkedness")
    linked.add_argument("--eta", type=_rational, required=True)
    linked.add_argument("--r", type=int, default=1)
    linked.add_argument("--pair", type=_ints, help="u,v; omit for the whole profile")

    lattice = sub.add_parser("lattice", parents=[common], help="abundant index vectors and membership")
    lattice.add_argument("--parts", type=_parts, required=True, help="ordered partition, e.g. '0,1,2|3,4'")
    lattice.add_argument("--mu", type=_rational, required=True)
    lattice.add_argument("--query", type=_ints, action="append", help="vector to test (repeatable)")
    lattice.add_argument("--psi", type=_rational, help="also look for a transferral pair")

    rainbow = sub.add_parser("rainbow", parents=[common], help="rainbow tiling or colour covering")
    rainbow.add_argument("--covering", help="second colour graph; find a colour covering instead")

    experiment = sub.add_parser("experiment", parents=[common], help="named acceptance scenarios")
    experiment.add_argument("--scenario", choices=[*SCENARIOS, ALL], default=ALL)
    experiment.add_argument("--jobs", type=int, help="worker processes (env GENTRI_JOBS)")
    experiment.add_argument("--format", choices=["json", "csv"], default=settings.output_format)

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def main(argv: Sequence[str] | None = None) -> int:
    settings = Settings.from_env()
    args = build_parser(settings).parse_args(argv)
    level = [settings.log_level, "INFO", "DEBUG"][min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    started = time.perf_counter()
    try:
        result = COMMANDS[args.command](args, settings)
    except (UsageError, TilingError) as exc:
        print(f"gentri {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(result, str):
        _emit(result, args.output)
        return 0
    if args.timing:
        result.wall_time = round(time.perf_counter() - started, 6)
    logger.info("%s: %s (%d nodes)", args.command, result.outcome, result.nodes)
    _emit(result.to_json(), args.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
