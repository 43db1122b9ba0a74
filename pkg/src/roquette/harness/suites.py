"""Named verification suites.

A suite is a list of independent tasks.  Each task builds its groups,
obtains lattices (from the cache when configured), runs checks and returns
group records plus :class:`Check` results.  Tasks run sequentially or in a
process pool; results are merged in task order so reports do not depend on
the worker count.  Tasks not started before the time budget runs out are
reported as skipped.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from typing import Callable

from .. import lemmas, theorems
from ..checks import Check
from ..group import GroupTable, subgroup_properties
from ..lattice import SubgroupLattice, normal_subgroups
from ..structure import classify_roquette_p_group, fitting, is_nilpotent_subgroup, is_roquette
from .cache import load_or_enumerate
from .groupdef import build_from_def, parse_groupdef
from .report import GroupRecord, VerificationReport

SUITE_VERSION = "1"
SPLIT_ONLY_NOTE = "extensions of S by C_n are built as split extensions C_n ⋊ S only"


@dataclass
class SuiteOptions:
    jobs: int = 1
    cache_dir: str | None = None
    budget: float | None = None
    include_heavy: bool = False
    n_list: tuple[int, ...] = theorems.DEFAULT_N_LIST
    max_n: int = 200


@dataclass
class Task:
    label: str
    func: Callable
    args: tuple = ()


@dataclass
class SuiteSpec:
    name: str
    groups: list[str]
    checks: list[str]
    budget: float
    tasks: Callable[[SuiteOptions], list[Task]] = field(repr=False, default=None)

    def validate(self) -> None:
        for g in self.groups:
            parse_groupdef(g)
        unknown = [c for c in self.checks if c not in KNOWN_CHECKS]
        if unknown:
            raise ValueError(f"unknown check identifiers {unknown}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")


def _record(G: GroupTable, name: str, L: SubgroupLattice | None, source: str, t0: float) -> GroupRecord:
    lat = {"subgroups": len(L.subgroups), "classes": len(L.classes), "source": source} if L is not None else {}
    return GroupRecord(name, G.meta.get("definition", ""), G.order, G.table_hash[:16], lat,
                       round(time.perf_counter() - t0, 4))


def _lattice(definition: str, cache_dir: str | None):
    G = build_from_def(definition)
    L, source = load_or_enumerate(G, cache_dir)
    return G, L, source


# ---------------------------------------------------------------------------
# task bodies (module level so they pickle)


def task_roquette_p(kind: str, order: int, cache_dir: str | None):
    t0 = time.perf_counter()
    G, L, src = _lattice(f"{kind} {order}", cache_dir)
    checks = theorems.roquette_p_group_checks(kind, order, G, L)
    return [_record(G, f"{kind}-{order}", L, src, t0)], checks


def task_lem91(kind: str, order: int, cache_dir: str | None):
    t0 = time.perf_counter()
    G, L, src = _lattice(f"{kind} {order}", cache_dir)
    checks = lemmas.roquette_two_group_facts(kind, order, L)
    return [_record(G, f"{kind}-{order}", L, src, t0)], checks


def task_pk_lemmas(p: int, i: int, cache_dir: str | None):
    t0 = time.perf_counter()
    G, L, src = _lattice(f"pk p:{p} i:{i} k:sl", cache_dir)
    checks = lemmas.pk_lemma_checks(G, L)
    name = f"P{p}^{2 + i}:SL(2,{p})"
    for c in checks:
        c.group = name
    return [_record(G, name, L, src, t0)], checks


def task_cn_lemmas(cache_dir: str | None):
    return [], lemmas.cyclic_extension_lemma_checks()


def task_lemh1(cache_dir: str | None):
    return [], [theorems.sl2_h1_check(3)]


def task_cyclic_fitting(n: int, cache_dir: str | None):
    records, checks = [], []
    if not theorems.hypothesis_filter(n):
        checks.append(Check("hypothesis-filter", True, f"n = {n}: 2-part is 4, excluded", skipped=True,
                            group=f"C{n}"))
        return records, checks
    for gens in theorems.unit_subgroups(n):
        t0 = time.perf_counter()
        definition = f"semidirect cyclic:{n} units:[{','.join(map(str, gens))}]"
        G, L, src = _lattice(definition, cache_dir)
        case = theorems.cyclic_fitting_case(n, gens, G, L)
        records.append(_record(G, f"C{n}:<{','.join(map(str, gens))}>", L, src, t0))
        checks.extend(case.checks)
    return records, checks


def task_cohomology(max_n: int, cache_dir: str | None):
    rows = theorems.cohomology_rows(max_n)
    bad = [r for r in rows if not r.ok]
    c2 = [(r.n, r.p) for r in rows if r.h1 == [2]]
    chk = Check("cohomology-table", not bad,
                f"{len(rows)} (n, p) pairs with p^2 | n <= {max_n}; C2 exactly at {len(c2)} pairs with 2-part 4",
                cases=len(rows),
                witness={"mismatches": [r.__dict__ for r in bad[:5]]} if bad else None,
                extra={"c2_pairs": c2})
    return [], [chk]


def task_psl2(p: int, i: int, cache_dir: str | None):
    t0 = time.perf_counter()
    G, L, src = _lattice(f"pk p:{p} i:{i} k:sl", cache_dir)
    checks = theorems.psl2_checks(p, i, G, L)
    return [_record(G, G.name, L, src, t0)], checks


def task_pk_borel(p: int, kname: str, cache_dir: str | None):
    t0 = time.perf_counter()
    G, L, src = _lattice(f"pk p:{p} i:1 k:{kname.lower()}", cache_dir)
    checks = theorems.pk_checks(p, 1, kname, G, L)
    return [_record(G, f"P:{kname}", L, src, t0)], checks


def task_q8s3(cache_dir: str | None):
    t0 = time.perf_counter()
    G, L, src = _lattice("q8s3", cache_dir)
    return [_record(G, "Q8:S3", L, src, t0)], theorems.q8s3_checks(G, L)


def criterion_checks(G: GroupTable, L: SubgroupLattice, name: str) -> list[Check]:
    """Agreement of the two Roquette criteria plus Fitting subgroup sanity."""
    v = is_roquette(G, L)
    F = fitting(G)
    from ..group import is_normal

    normal_elab = [S for S in normal_subgroups(L) if subgroup_properties(G, S).is_elementary_abelian]
    checks = [
        Check("method-agreement", v.method_agreement, f"roquette={v.is_roquette}", group=name),
        Check("fitting-normal-nilpotent", is_normal(G, F) and is_nilpotent_subgroup(G, F),
              f"|F(G)| = {F.order}", group=name),
        Check("normal-elementary-abelian-in-fitting", all(S <= F for S in normal_elab),
              f"{len(normal_elab)} normal elementary abelian subgroups", group=name),
    ]
    if len(G.prime_factors) <= 1:
        kind = classify_roquette_p_group(G)
        checks.append(Check("classification-consistent", (kind != "not_roquette") == v.is_roquette,
                            f"classified {kind}", group=name))
    return checks


CRITERION_CORPUS = [
    "cyclic 8", "cyclic 16", "quaternion 8", "quaternion 16", "quaternion 32",
    "dihedral 8", "dihedral 16", "dihedral 32", "semidihedral 16", "semidihedral 32",
    "direct (cyclic 2) (cyclic 2)", "direct (cyclic 3) (cyclic 3)", "direct (cyclic 4) (cyclic 2)",
    "direct (quaternion 8) (cyclic 3)", "extraspecial 3", "central p:3 i:2", "sl2 3", "q8s3",
    "pk p:3 i:1 k:1", "pk p:3 i:1 k:c2", "pk p:3 i:1 k:cp", "pk p:3 i:1 k:borel",
    "pk p:3 i:1 k:c4", "pk p:3 i:1 k:q8", "pk p:3 i:1 k:sl",
]


def task_criterion(definition: str, cache_dir: str | None):
    t0 = time.perf_counter()
    G, L, src = _lattice(definition, cache_dir)
    name = G.meta.get("definition", definition)
    return [_record(G, name, L, src, t0)], criterion_checks(G, L, name)


def task_criterion_cn(n: int, cache_dir: str | None):
    records, checks = [], []
    for gens in theorems.unit_subgroups(n):
        t0 = time.perf_counter()
        G, L, src = _lattice(f"semidirect cyclic:{n} units:[{','.join(map(str, gens))}]", cache_dir)
        name = G.meta["definition"]
        records.append(_record(G, name, L, src, t0))
        checks.extend(criterion_checks(G, L, name))
    return records, checks


# ---------------------------------------------------------------------------
# suite table


def _roquette_p_tasks(o: SuiteOptions) -> list[Task]:
    return [Task(f"{k}-{n}", task_roquette_p, (k, n)) for k, n in lemmas.ROQUETTE_TWO_GROUPS]


def _lemma_tasks(o: SuiteOptions) -> list[Task]:
    tasks = [Task(f"lem91 {k}-{n}", task_lem91, (k, n)) for k, n in lemmas.ROQUETTE_TWO_GROUPS]
    tasks.append(Task("pk lemmas i=1", task_pk_lemmas, (3, 1)))
    if o.include_heavy:
        tasks.append(Task("pk lemmas i=2", task_pk_lemmas, (3, 2)))
    tasks.append(Task("cyclic extension lemmas", task_cn_lemmas, ()))
    tasks.append(Task("H1 of SL(2,3)", task_lemh1, ()))
    return tasks


def _cyclic_fitting_tasks(o: SuiteOptions) -> list[Task]:
    return [Task(f"n={n}", task_cyclic_fitting, (n,)) for n in o.n_list]


def _cohomology_tasks(o: SuiteOptions) -> list[Task]:
    return [Task(f"n<={o.max_n}", task_cohomology, (o.max_n,))]


def _psl2_tasks(o: SuiteOptions) -> list[Task]:
    tasks = [Task("p=3 i=1", task_psl2, (3, 1))]
    if o.include_heavy:
        tasks.append(Task("p=3 i=2", task_psl2, (3, 2)))
    return tasks


BOREL_SUITE_K = ("1", "C2", "Cp", "C6", "C4", "Q8", "SL")


def _borel_tasks(o: SuiteOptions) -> list[Task]:
    return [Task(f"K={k}", task_pk_borel, (3, k)) for k in BOREL_SUITE_K]


def _q8s3_tasks(o: SuiteOptions) -> list[Task]:
    return [Task("Q8:S3", task_q8s3, ())]


def _criterion_tasks(o: SuiteOptions) -> list[Task]:
    tasks = [Task(d, task_criterion, (d,)) for d in CRITERION_CORPUS]
    tasks += [Task(f"C{n} extensions", task_criterion_cn, (n,)) for n in o.n_list]
    return tasks


KNOWN_CHECKS = {
    "classification", "is-roquette", "no-expansive-trivial-core", "lem91", "pk-lemmas",
    "cn-lemmas", "lemh1", "part1-alpha-witness", "part2-no-expansive", "part3-nonroquette-has-expansive",
    "cohomology-table", "borel-dichotomy", "expansive-order-p", "q8s3-roquette", "q8s3-s3-expansive",
    "method-agreement", "fitting-normal-nilpotent", "normal-elementary-abelian-in-fitting",
    "classification-consistent",
}

SUITES: dict[str, SuiteSpec] = {
    "roquette-p-groups": SuiteSpec(
        "roquette-p-groups", [f"{k} {n}" for k, n in lemmas.ROQUETTE_TWO_GROUPS],
        ["classification", "is-roquette", "no-expansive-trivial-core"], 60, _roquette_p_tasks),
    "lemma-structure": SuiteSpec(
        "lemma-structure", [f"{k} {n}" for k, n in lemmas.ROQUETTE_TWO_GROUPS] + ["pk p:3 i:1 k:sl"],
        ["lem91", "pk-lemmas", "cn-lemmas", "lemh1"], 300, _lemma_tasks),
    "cyclic-fitting": SuiteSpec(
        "cyclic-fitting", [f"semidirect cyclic:{n}" for n in theorems.DEFAULT_N_LIST],
        ["method-agreement", "part1-alpha-witness", "part2-no-expansive", "part3-nonroquette-has-expansive"],
        600, _cyclic_fitting_tasks),
    "cohomology-tables": SuiteSpec("cohomology-tables", [], ["cohomology-table"], 60, _cohomology_tasks),
    "extraspecial-sl2": SuiteSpec("extraspecial-sl2", ["pk p:3 i:1 k:sl"], ["no-expansive-trivial-core"],
                                  900, _psl2_tasks),
    "extraspecial-borel": SuiteSpec(
        "extraspecial-borel", [f"pk p:3 i:1 k:{k.lower()}" for k in BOREL_SUITE_K],
        ["borel-dichotomy", "expansive-order-p"], 300, _borel_tasks),
    "q8-s3": SuiteSpec("q8-s3", ["q8s3"], ["q8s3-roquette", "q8s3-s3-expansive"], 60, _q8s3_tasks),
    "roquette-criterion": SuiteSpec(
        "roquette-criterion", list(CRITERION_CORPUS),
        ["method-agreement", "fitting-normal-nilpotent", "normal-elementary-abelian-in-fitting",
         "classification-consistent"], 600, _criterion_tasks),
}


def run_suite(name: str, options: SuiteOptions | None = None) -> VerificationReport:
    """Run a named suite and assemble its report deterministically."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    o = options or SuiteOptions()
    suite = SUITES[name]
    suite.validate()
    budget = o.budget if o.budget is not None else suite.budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    tasks = suite.tasks(o)
    report = VerificationReport(suite=name, version=SUITE_VERSION)
    if name == "cyclic-fitting":
        report.notes.append(SPLIT_ONLY_NOTE)
        report.notes.append("n-list " + ", ".join(map(str, o.n_list)) + "; n with 2-part 4 excluded")
    if name in ("lemma-structure", "extraspecial-sl2") and not o.include_heavy:
        report.notes.append("i = 2 cases not run (enable with --include-heavy)")
    t_start = time.perf_counter()
    deadline = t_start + budget
    results = _execute(tasks, o, deadline)
    for task, res in zip(tasks, results):
        if res is None:
            report.add_checks([Check(task.label, False, "time budget exhausted before the task ran",
                                     skipped=True)])
            continue
        records, checks, elapsed = res
        report.groups.extend(records)
        report.add_checks(checks, group=task.label)
        report.timings[task.label] = round(elapsed, 4)
    report.timings["total"] = round(time.perf_counter() - t_start, 4)
    return report


def _timed(func, args, cache_dir):
    t0 = time.perf_counter()
    records, checks = func(*args, cache_dir)
    return records, checks, time.perf_counter() - t0


def _execute(tasks: list[Task], o: SuiteOptions, deadline: float) -> list:
    results: list = [None] * len(tasks)
    if o.jobs <= 1 or len(tasks) <= 1:
        for i, t in enumerate(tasks):
            if time.perf_counter() > deadline:
                break
            results[i] = _timed(t.func, t.args, o.cache_dir)
        return results
    pool = ProcessPoolExecutor(max_workers=o.jobs)
    try:
        futures = [pool.submit(_timed, t.func, t.args, o.cache_dir) for t in tasks]
        for i, f in enumerate(futures):
            remaining = deadline - time.perf_counter()
            try:
                results[i] = f.result(timeout=max(remaining, 0.0))
            except FutureTimeout:
                break
    finally:
        pool.shutdown(wait=False, cancel_futures=True)
    return results
