"""Named acceptance scenarios run over seeded instance batches.

Each scenario plans a list of picklable tasks from the base seed; tasks run
serially or in a process pool and each yields one ``ScenarioRow``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any

import numpy as np

from tiling.config import DEFAULT_BUDGET_NODES
from tiling.copies import count_copies
from tiling.errors import InvalidArgument, Unknown
from tiling.exact import Tiling, max_tiling, perfect_tiling
from tiling.fractional import FarkasCertificate, FractionalTiling, frac_min_pair_weight, frac_perfect, verify_certificate
from tiling.generators import gen_complete, gen_h_ext, gen_random_codegree, gen_tripartite
from tiling.hypergraph import ThreeGraph, min_codegree
from tiling.lattice import IndexLattice
from tiling.oracles import (
    brute_force_lattice_member,
    brute_force_max_tiling,
    brute_force_perfect,
    labeled_embeddings,
    naive_linked_count,
)
from tiling.rainbow import RainbowInstance, RainbowTiling, colour_covering_hom, rainbow_perfect_tiling
from tiling.rationals import fraction_str
from tiling.reports import ScenarioRow
from tiling.structure import linked_count

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Task:
    scenario: str
    instance: str
    seed: int | None
    n: int
    budget_nodes: int = DEFAULT_BUDGET_NODES


def child_seeds(seed: int, count: int) -> list[int]:
    """Independent 32-bit seeds spawned from one base seed."""
    return [int(child.generate_state(1)[0]) for child in np.random.SeedSequence(seed).spawn(count)]


def _row(task: Task, outcome: str, expected: str, nodes: int = 0, *, agree: bool | None = None) -> ScenarioRow:
    return ScenarioRow(
        scenario=task.scenario,
        instance=task.instance,
        seed=task.seed,
        n=task.n,
        outcome=outcome,
        expected=expected,
        agree=outcome == expected if agree is None else agree,
        nodes=nodes,
    )


def _status(result: object) -> str:
    if isinstance(result, Tiling):
        return "feasible"
    if isinstance(result, Unknown):
        return "unknown"
    return "infeasible"


def _random_graph(task: Task, floor: int = 0, p: Fraction = Fraction(1, 2)) -> ThreeGraph:
    return gen_random_codegree(task.n, floor, task.seed, p=p)


# ---------------------------------------------------------------------------
# tightness
# ---------------------------------------------------------------------------


def _plan_tightness(seed: int) -> list[Task]:
    return [Task("tightness", f"h_ext-{n}", None, n) for n in (10, 15, 20)]


def _run_tightness(task: Task) -> ScenarioRow:
    H = gen_h_ext(task.n).graph
    delta = min_codegree(H)
    perfect = perfect_tiling(H, budget_nodes=task.budget_nodes)
    best = max_tiling(H, budget_nodes=task.budget_nodes)
    size = best.size if isinstance(best, Tiling) else "?"
    bound = (2 * task.n // 5 - 1) // 2
    nodes = getattr(perfect, "nodes", 0) + getattr(best, "nodes", 0)
    outcome = f"delta={delta} perfect={_status(perfect)} max={size}"
    expected = f"delta={2 * task.n // 5 - 1} perfect=infeasible max<={bound}"
    agree = delta == 2 * task.n // 5 - 1 and _status(perfect) == "infeasible" and isinstance(size, int) and size <= bound
    return _row(task, outcome, expected, nodes, agree=agree)


# ---------------------------------------------------------------------------
# fractional
# ---------------------------------------------------------------------------


def _plan_fractional(seed: int) -> list[Task]:
    return [
        Task("fractional", "h_ext-10", None, 10),
        Task("fractional", "h_ext-10-handmade", None, 10),
        Task("fractional", "complete-5", None, 5),
        Task("fractional", "complete-10", None, 10),
    ]


def _run_fractional(task: Task) -> ScenarioRow:
    if task.instance.startswith("h_ext"):
        marked = gen_h_ext(task.n)
        if task.instance.endswith("handmade"):
            a = tuple(Fraction(3) if v in marked.A else Fraction(-2) for v in range(task.n))
            cert = FarkasCertificate(a)
        else:
            result = frac_perfect(marked.graph)
            if not isinstance(result, FarkasCertificate):
                return _row(task, "feasible", "certificate verified")
            cert = result
        ok = verify_certificate(marked.graph, None, cert)
        outcome = "certificate verified" if ok else "certificate rejected"
        if task.instance.endswith("handmade"):
            outcome += f" total={fraction_str(cert.total())}"
            return _row(task, outcome, "certificate verified total=-5")
        return _row(task, outcome, "certificate verified")
    H = gen_complete(task.n)
    result = frac_perfect(H)
    if isinstance(result, FractionalTiling):
        outcome = f"feasible total={fraction_str(result.total_weight())}"
    else:
        outcome = "certificate"
    return _row(task, outcome, f"feasible total={fraction_str(Fraction(task.n, 5))}")


# ---------------------------------------------------------------------------
# copy and cover oracles
# ---------------------------------------------------------------------------


def _plan_copy_oracle(seed: int) -> list[Task]:
    return [Task("copy-oracle", f"random-{i}", s, 5 + i % 6) for i, s in enumerate(child_seeds(seed, 50))]


def _run_copy_oracle(task: Task) -> ScenarioRow:
    H = _random_graph(task)
    embeddings = labeled_embeddings(H)
    return _row(task, f"copies={count_copies(H)}", f"copies={embeddings // 4}")


def _plan_cover_oracle(seed: int) -> list[Task]:
    return [Task("cover-oracle", f"random-{i}", s, 5 + i % 8) for i, s in enumerate(child_seeds(seed, 50))]


def _run_cover_oracle(task: Task) -> ScenarioRow:
    H = _random_graph(task, p=Fraction(1, 3))
    best = max_tiling(H, budget_nodes=task.budget_nodes)
    size = best.size if isinstance(best, Tiling) else "?"
    brute_max = brute_force_max_tiling(H)
    if task.n % 5:
        return _row(task, f"max={size}", f"max={brute_max}", getattr(best, "nodes", 0))
    perfect = perfect_tiling(H, budget_nodes=task.budget_nodes)
    expected = "feasible" if brute_force_perfect(H) else "infeasible"
    return _row(task, f"perfect={_status(perfect)} max={size}", f"perfect={expected} max={brute_max}")


# ---------------------------------------------------------------------------
# minimax
# ---------------------------------------------------------------------------


def _plan_minimax(seed: int) -> list[Task]:
    return [Task("minimax", "complete-5", None, 5), Task("minimax", "complete-10-formulations", None, 10)]


def _run_minimax(task: Task) -> ScenarioRow:
    H = gen_complete(task.n)
    if task.n == 5:
        result = frac_min_pair_weight(H)
        value = fraction_str(result[0]) if isinstance(result, tuple) else "infeasible"
        return _row(task, f"W={value}", "W=1")
    by_sets = frac_min_pair_weight(H, formulation="sets")
    by_pairs = frac_min_pair_weight(H, formulation="pairs")
    if not isinstance(by_sets, tuple) or not isinstance(by_pairs, tuple):
        return _row(task, "infeasible", "agree")
    outcome = "agree" if by_sets[0] == by_pairs[0] else f"{fraction_str(by_sets[0])}!={fraction_str(by_pairs[0])}"
    return _row(task, outcome, "agree")


# ---------------------------------------------------------------------------
# lattice, linkedness and colour covering oracles
# ---------------------------------------------------------------------------


def _plan_lattice_oracle(seed: int) -> list[Task]:
    return [Task("lattice-oracle", f"random-{i}", s, 1 + i % 3) for i, s in enumerate(child_seeds(seed, 100))]


def _run_lattice_oracle(task: Task) -> ScenarioRow:
    rng = np.random.default_rng(task.seed)
    r = task.n
    count = int(rng.integers(1, r + 1))
    generators = [tuple(int(x) for x in rng.integers(-1, 2, size=r)) for _ in range(count)]
    query = tuple(int(x) for x in rng.integers(-2, 3, size=r))
    member = IndexLattice.of(generators, dim=r).contains(query)
    expected = brute_force_lattice_member(generators, query)
    return _row(task, f"member={member}", f"member={expected}")


def _plan_linked_oracle(seed: int) -> list[Task]:
    tasks = [Task("linked-oracle", f"complete-{n}", None, n) for n in (7, 8, 9)]
    tasks += [Task("linked-oracle", f"random-{i}", s, 9) for i, s in enumerate(child_seeds(seed, 20))]
    return tasks


def _run_linked_oracle(task: Task) -> ScenarioRow:
    if task.instance.startswith("complete"):
        H = gen_complete(task.n)
        expected = comb(task.n - 2, 4)
    else:
        H = _random_graph(task, floor=3)
        expected = naive_linked_count(H, 0, 1)
    result = linked_count(H, 0, 1, 1, budget_nodes=task.budget_nodes)
    if isinstance(result, Unknown):
        return _row(task, "unknown", f"count={expected}", result.nodes)
    return _row(task, f"count={result.count}", f"count={expected}")


def _plan_colour_covering(seed: int) -> list[Task]:
    tasks = [Task("colour-covering", f"random-{i}", s, 5 + i % 8) for i, s in enumerate(child_seeds(seed, 100))]
    tasks.append(Task("colour-covering", "rainbow-h_ext-10", None, 10))
    return tasks


def _run_colour_covering(task: Task) -> ScenarioRow:
    if task.instance.startswith("rainbow"):
        H = gen_h_ext(task.n).graph
        inst = RainbowInstance(task.n, tuple(H for _ in range(3 * task.n // 5)))
        result = rainbow_perfect_tiling(inst, budget_nodes=task.budget_nodes)
        if isinstance(result, RainbowTiling):
            status = "feasible"
        else:
            status = "unknown" if isinstance(result, Unknown) else "infeasible"
        return _row(task, f"rainbow={status}", "rainbow=infeasible", getattr(result, "nodes", 0))
    first, second = child_seeds(task.seed or 0, 2)
    H1 = gen_random_codegree(task.n, 3, first)
    H2 = gen_random_codegree(task.n, 3, second)
    found = colour_covering_hom(H1, H2)
    ok = bool(found) and found.verify(H1, H2)  # type: ignore[union-attr]
    return _row(task, "found" if ok else "not-found", "found")


# ---------------------------------------------------------------------------
# implication chain
# ---------------------------------------------------------------------------


def _plan_implication(seed: int) -> list[Task]:
    tasks = [
        Task("implication", "h_ext-10", None, 10),
        Task("implication", "complete-10", None, 10),
        Task("implication", "tripartite-5-5-5", None, 15),
    ]
    for i, s in enumerate(child_seeds(seed, 20)):
        tasks.append(Task("implication", f"random-{i}", s, 5 if i % 2 else 10))
    return tasks


def _implication_graph(task: Task) -> ThreeGraph:
    if task.instance.startswith("h_ext"):
        return gen_h_ext(task.n).graph
    if task.instance.startswith("complete"):
        return gen_complete(task.n)
    if task.instance.startswith("tripartite"):
        return gen_tripartite((5, 5, 5))
    return _random_graph(task, p=Fraction(1, 4) if task.n == 10 else Fraction(1, 2))


def _run_implication(task: Task) -> ScenarioRow:
    H = _implication_graph(task)
    perfect = perfect_tiling(H, budget_nodes=task.budget_nodes)
    frac = frac_perfect(H)
    status = _status(perfect)
    frac_status = "feasible" if isinstance(frac, FractionalTiling) else "certificate"
    holds = not (status == "feasible" and frac_status == "certificate")
    outcome = f"perfect={status} frac={frac_status}"
    return _row(task, outcome, "no tiling without a fractional tiling", getattr(perfect, "nodes", 0), agree=holds)


# ---------------------------------------------------------------------------
# Registry and execution
# ---------------------------------------------------------------------------


Scenario = tuple[Callable[[int], list[Task]], Callable[[Task], ScenarioRow]]

SCENARIOS: dict[str, Scenario] = {
    "tightness": (_plan_tightness, _run_tightness),
    "fractional": (_plan_fractional, _run_fractional),
    "copy-oracle": (_plan_copy_oracle, _run_copy_oracle),
    "cover-oracle": (_plan_cover_oracle, _run_cover_oracle),
    "minimax": (_plan_minimax, _run_minimax),
    "lattice-oracle": (_plan_lattice_oracle, _run_lattice_oracle),
    "linked-oracle": (_plan_linked_oracle, _run_linked_oracle),
    "colour-covering": (_plan_colour_covering, _run_colour_covering),
    "implication": (_plan_implication, _run_implication),
}
ALL = "all"


def scenario_names(name: str) -> list[str]:
    if name == ALL:
        return list(SCENARIOS)
    if name not in SCENARIOS:
        raise InvalidArgument(f"unknown scenario {name!r}; choose from {', '.join([*SCENARIOS, ALL])}")
    return [name]


def plan(name: str, seed: int, budget_nodes: int = DEFAULT_BUDGET_NODES) -> list[Task]:
    tasks: list[Task] = []
    for scenario in scenario_names(name):
        for task in SCENARIOS[scenario][0](seed):
            tasks.append(Task(task.scenario, task.instance, task.seed, task.n, budget_nodes))
    return tasks


def run_task(task: Task) -> ScenarioRow:
    return SCENARIOS[task.scenario][1](task)


def run_scenarios(
    name: str, seed: int, *, jobs: int = 1, budget_nodes: int = DEFAULT_BUDGET_NODES
) -> list[ScenarioRow]:
    """Rows in plan order, whatever the pool size."""
    tasks = plan(name, seed, budget_nodes)
    logger.info("running %d instances of %s with %d worker(s)", len(tasks), name, jobs)
    if jobs <= 1:
        return [run_task(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_task, tasks))


def summarize(rows: Sequence[ScenarioRow]) -> dict[str, Any]:
    summary: dict[str, dict[str, int]] = {}
    for row in rows:
        entry = summary.setdefault(row.scenario, {"agree": 0, "instances": 0})
        entry["instances"] += 1
        entry["agree"] += row.agree
    return summary
