"""Batch experiments: instance plans, per-instance records and summaries.

Four sweeps are provided.  ``desk`` scale shrinks group sizes and the upper
vertex count so that a sweep finishes on one core; ``full`` restores the
original sample sizes.  Every attempted instance yields exactly one CSV row,
undetermined outcomes included.
"""
from __future__ import annotations

import csv
import json
import math
import random
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .certificates import (
    UncolorabilityCertificate,
    certificate_size,
    parse_certificate,
    verify_coloring,
    verify_uncolorability,
    write_certificate,
)
from .dimacs import write_dimacs
from .generators import GenSpec, derive_seed, generate, instance_name
from .oracle import backtrack_3col
from .solver import SolveConfig, bfs_3col

CSV_HEADER = ["id", "model", "n", "m", "avg_degree", "verdict", "alpha", "time_s", "calls", "cert_size"]
BASELINE_HEADER = ["id", "n", "m", "avg_degree", "colorable", "nodes", "time_s", "completed"]

# group size, vertex counts and degree range per (experiment, scale)
PLANS = {
    1: {"model": "pseudo_planar", "mode": "planar", "degree": (2.0, 5.0),
        "desk": {"sizes": range(10, 101), "group": 100},
        "full": {"sizes": range(10, 101), "group": 100}},
    2: {"model": "pseudo_planar", "mode": "planar", "degree": (2.0, 5.0),
        "desk": {"sizes": range(100, 401, 100), "group": 50},
        "full": {"sizes": range(100, 1001, 100), "group": 1000}},
    3: {"model": "planar_4regular", "mode": "planar", "degree": None,
        "desk": {"sizes": range(100, 401, 100), "group": 50},
        "full": {"sizes": range(100, 1001, 100), "group": 1000}},
    4: {"model": "er_connected", "mode": "improved", "degree": (3.0, 6.0),
        "desk": {"sizes": [100], "group": 2000},
        "full": {"sizes": [100], "group": 10000}},
}

BASELINE_NODE_LIMIT = 2_000_000
# decision calls per instance, shared across the alpha levels of one run
DEFAULT_MAX_CALLS = 1_000_000


@dataclass
class ExperimentRecord:
    id: str
    model: str
    n: int
    m: int
    avg_degree: float
    verdict: str
    alpha: int
    time_s: float
    calls: int
    cert_size: int

    def row(self) -> list:
        return [self.id, self.model, self.n, self.m, f"{self.avg_degree:.6f}", self.verdict,
                self.alpha, f"{self.time_s:.6f}", self.calls, self.cert_size]


@dataclass
class BaselineRecord:
    id: str
    n: int
    m: int
    avg_degree: float
    colorable: str
    nodes: int
    time_s: float
    completed: bool

    def row(self) -> list:
        return [self.id, self.n, self.m, f"{self.avg_degree:.6f}", self.colorable, self.nodes,
                f"{self.time_s:.6f}", int(self.completed)]


@dataclass
class Task:
    spec: GenSpec
    mode: str
    alpha_max: int = 6
    max_calls: int | None = None
    baseline: bool = False
    cert_dir: str | None = None
    keep_instance: bool = False


@dataclass
class Outcome:
    record: ExperimentRecord
    cert_ok: bool | None
    exceeded: bool
    out_of_calls: bool
    envelope_violations: int
    round_violations: int
    baseline: BaselineRecord | None = None


@dataclass
class Summary:
    experiment: int | str
    count: int
    verdicts: dict
    by_n: dict
    alpha_hist: dict
    bound_audit: list
    cert_failures: int
    exceeded: int
    envelope_violations: int
    round_violations: int
    extra: dict = field(default_factory=dict)


def _degree(seed: int, index: int, lo: float, hi: float) -> float:
    return random.Random(derive_seed(seed, f"degree-{index}")).uniform(lo, hi)


def plan(experiment: int, scale: str = "desk", seed: int = 0, group: int | None = None,
         sizes=None) -> list[GenSpec]:
    """The instance list of a sweep, in a fixed order."""
    if experiment not in PLANS:
        raise ValueError("experiment is 1, 2, 3 or 4")
    info = PLANS[experiment]
    shape = info[scale]
    sizes = shape["sizes"] if sizes is None else sizes
    group = shape["group"] if group is None else group
    specs = []
    index = 0
    for n in sizes:
        for _ in range(group):
            d = None
            if info["degree"] is not None:
                lo, hi = info["degree"]
                if info["model"] == "pseudo_planar":
                    hi = min(hi, 6 - 12 / n)
                d = round(_degree(seed, index, lo, hi), 6)
            specs.append(GenSpec(info["model"], n, d, seed, index))
            index += 1
    return specs


def run_task(task: Task) -> Outcome:
    spec = task.spec
    g = generate(spec)
    cfg = SolveConfig(alpha=0, alpha_max=task.alpha_max, mode=task.mode, max_calls=task.max_calls)
    start = time.perf_counter()
    out, alpha = bfs_3col(g, cfg)
    elapsed = time.perf_counter() - start
    stats = out.stats
    name = instance_name(spec)

    cert_ok = None
    size = 0
    if out.verdict.determinate:
        text = write_certificate(out.payload)
        back = parse_certificate(text)
        if isinstance(back, UncolorabilityCertificate):
            cert_ok = verify_uncolorability(g, back)
            size = certificate_size(back)
        else:
            cert_ok = verify_coloring(g, back)
            size = len(back.classes)
        if task.cert_dir:
            path = Path(task.cert_dir)
            path.mkdir(parents=True, exist_ok=True)
            (path / f"{name}.cert").write_text(text)
    if task.keep_instance and task.cert_dir:
        path = Path(task.cert_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{name}.col").write_text(write_dimacs(g, comment=spec.to_json()))

    record = ExperimentRecord(
        id=name, model=spec.model, n=g.n, m=g.m, avg_degree=2 * g.m / g.n,
        verdict=str(out.verdict), alpha=alpha.value, time_s=elapsed,
        calls=stats.calls, cert_size=size,
    )
    baseline = None
    if task.baseline:
        start = time.perf_counter()
        bt = backtrack_3col(g, node_limit=BASELINE_NODE_LIMIT)
        bt_time = time.perf_counter() - start
        colorable = "?" if not bt.completed else ("1" if bt.coloring is not None else "0")
        baseline = BaselineRecord(name, g.n, g.m, 2 * g.m / g.n, colorable, bt.nodes, bt_time, bt.completed)
    return Outcome(record, cert_ok, alpha.exceeded, alpha.out_of_calls,
                   stats.envelope_violations, stats.round_violations, baseline)


def run_tasks(tasks: list[Task], jobs: int = 1) -> list[Outcome]:
    if jobs <= 1:
        return [run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_task, tasks, chunksize=4))


# -- analysis -----------------------------------------------------------------------------


def alpha_histogram(alphas: list[int]) -> dict[int, int]:
    hist = Counter(alphas)
    top = max(hist) if hist else 0
    return {k: hist.get(k, 0) for k in range(top + 1)}


def bound_audit(alphas: list[int], min_samples: int = 30) -> list[dict]:
    """Compare the tail fraction P(alpha > k) with 2^-(k+1) plus three binomial sigmas.

    A level ``k`` is audited when at least ``min_samples`` instances sit at
    that exact level.
    """
    total = len(alphas)
    hist = Counter(alphas)
    rows = []
    for k in sorted(hist):
        ref = 2.0 ** -(k + 1)
        tail = sum(1 for a in alphas if a > k) / total
        sigma = math.sqrt(ref * (1 - ref) / total)
        audited = hist[k] >= min_samples
        rows.append({
            "k": k, "count": hist[k], "fraction": hist[k] / total, "tail": tail,
            "reference": ref, "limit": ref + 3 * sigma, "audited": audited,
            "ok": (tail <= ref + 3 * sigma) if audited else None,
        })
    return rows


def is_non_increasing(hist: dict[int, int]) -> bool:
    counts = [hist[k] for k in sorted(hist)]
    return all(a >= b for a, b in zip(counts, counts[1:]))


def logistic_crossover(x: np.ndarray, y: np.ndarray, iterations: int = 50) -> float:
    """Point where a fitted logistic curve P(y = 1 | x) crosses one half."""
    X = np.column_stack([np.ones_like(x), x - x.mean()])
    beta = np.zeros(2)
    for _ in range(iterations):
        p = 1 / (1 + np.exp(-X @ beta))
        w = p * (1 - p) + 1e-12
        grad = X.T @ (y - p)
        hess = X.T @ (X * w[:, None])
        step = np.linalg.solve(hess + 1e-9 * np.eye(2), grad)
        beta += step
        if np.abs(step).max() < 1e-10:
            break
    if beta[1] == 0:
        return float("nan")
    return float(x.mean() - beta[0] / beta[1])


def binned_crossover(x: np.ndarray, y: np.ndarray, width: float = 0.1) -> float:
    """First bin midpoint at which the Yes fraction drops to one half or below."""
    edges = np.arange(x.min(), x.max() + width, width)
    prev = None
    for lo in edges:
        mask = (x >= lo) & (x < lo + width)
        if not mask.any():
            continue
        mid, frac = lo + width / 2, y[mask].mean()
        if frac <= 0.5:
            if prev is None:
                return float(mid)
            (pm, pf) = prev
            return float(pm + (mid - pm) * (pf - 0.5) / (pf - frac)) if pf != frac else float(mid)
        prev = (mid, frac)
    return float("nan")


def loglog_slope(ns, values) -> float:
    ns = np.asarray(ns, dtype=float)
    vs = np.asarray(values, dtype=float)
    keep = vs > 0
    if keep.sum() < 2:
        return float("nan")
    slope, _ = np.polyfit(np.log(ns[keep]), np.log(vs[keep]), 1)
    return float(slope)


def _by_n(records: list[ExperimentRecord]) -> dict:
    groups: dict[int, list[ExperimentRecord]] = defaultdict(list)
    for r in records:
        groups[r.n].append(r)
    out = {}
    for n in sorted(groups):
        rows = groups[n]
        entry = {"count": len(rows)}
        for v in ("1", "0", "inf"):
            sel = [r.time_s for r in rows if r.verdict == v]
            entry[v] = {
                "fraction": len(sel) / len(rows),
                "mean_time": float(np.mean(sel)) if sel else None,
                "max_time": max(sel) if sel else None,
            }
        entry["max_time"] = max(r.time_s for r in rows)
        out[n] = entry
    return out


def summarize(experiment, outcomes: list[Outcome], alpha_max: int = 6) -> Summary:
    records = [o.record for o in outcomes]
    alphas = [r.alpha for r in records]
    summary = Summary(
        experiment=experiment,
        count=len(records),
        verdicts=dict(Counter(r.verdict for r in records)),
        by_n=_by_n(records),
        alpha_hist=alpha_histogram(alphas),
        bound_audit=bound_audit(alphas),
        cert_failures=sum(1 for o in outcomes if o.cert_ok is False),
        exceeded=sum(1 for o in outcomes if o.exceeded),
        envelope_violations=sum(o.envelope_violations for o in outcomes),
        round_violations=sum(o.round_violations for o in outcomes),
    )
    det = [r for r in records if r.verdict in ("0", "1")]
    if experiment == 4 and det:
        x = np.array([r.avg_degree for r in det])
        y = np.array([1.0 if r.verdict == "1" else 0.0 for r in det])
        summary.extra["crossover_logistic"] = logistic_crossover(x, y)
        summary.extra["crossover_binned"] = binned_crossover(x, y)
    seen = [a for a in alphas if a <= alpha_max]
    summary.extra["max_alpha"] = max(seen) if seen else None
    summary.extra["monotone"] = is_non_increasing(summary.alpha_hist)
    if experiment in (1, 2, 3):
        ns = sorted(summary.by_n)
        tail = [n for n in ns if n >= ns[len(ns) // 2]]
        summary.extra["tail_slope_max_time"] = loglog_slope(tail, [summary.by_n[n]["max_time"] for n in tail])
        summary.extra["alpha_le_1"] = sum(1 for a in alphas if a <= 1) / len(alphas)
    base = [o.baseline for o in outcomes if o.baseline is not None]
    if base:
        summary.extra.update(_baseline_summary(records, base))
    return summary


def _baseline_summary(records: list[ExperimentRecord], base: list[BaselineRecord]) -> dict:
    solver_max: dict[int, float] = defaultdict(float)
    bt_max: dict[int, float] = defaultdict(float)
    bt_nodes_no: dict[int, int] = defaultdict(int)
    disagreements = 0
    for r, b in zip(records, base):
        solver_max[r.n] = max(solver_max[r.n], r.time_s)
        bt_max[r.n] = max(bt_max[r.n], b.time_s)
        if b.colorable == "0":
            bt_nodes_no[r.n] = max(bt_nodes_no[r.n], b.nodes)
        if r.verdict in ("0", "1") and b.colorable in ("0", "1") and r.verdict != b.colorable:
            disagreements += 1
    ns = sorted(solver_max)
    # smallest n from which the backtracking max time stays above the solver max time
    crossover = None
    for i, n in enumerate(ns):
        if all(bt_max[k] > solver_max[k] for k in ns[i:]):
            crossover = n
            break
    ratio_tail = [bt_max[n] / solver_max[n] for n in ns if n >= 50 and solver_max[n] > 0]
    return {
        "baseline_disagreements": disagreements,
        "baseline_incomplete": sum(1 for b in base if not b.completed),
        "baseline_crossover_n": crossover,
        "baseline_tail_slope_max_time": loglog_slope([n for n in ns if n >= 50], [bt_max[n] for n in ns if n >= 50]),
        "baseline_max_nodes_no_by_n": {n: bt_nodes_no[n] for n in ns},
        "baseline_over_solver_median_ratio_n50": float(np.median(ratio_tail)) if ratio_tail else None,
    }


# -- output -------------------------------------------------------------------------------


def write_records(path: Path, records: list[ExperimentRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.row())


def read_records(path: Path) -> list[ExperimentRecord]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [ExperimentRecord(r["id"], r["model"], int(r["n"]), int(r["m"]), float(r["avg_degree"]),
                             r["verdict"], int(r["alpha"]), float(r["time_s"]), int(r["calls"]),
                             int(r["cert_size"])) for r in rows]


def write_baseline(path: Path, records: list[BaselineRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(BASELINE_HEADER)
        for r in records:
            w.writerow(r.row())


def format_summary(s: Summary) -> str:
    lines = [f"experiment {s.experiment}: {s.count} instances"]
    lines.append("verdicts: " + ", ".join(f"{k}={v}" for k, v in sorted(s.verdicts.items())))
    lines.append("")
    lines.append(f"{'n':>6} {'yes':>6} {'no':>6} {'inf':>6} {'mean_yes':>10} {'max_yes':>10} {'mean_no':>10} {'max_no':>10}")
    for n, e in s.by_n.items():
        def t(v, key):
            x = e[v][key]
            return f"{x:10.4f}" if x is not None else f"{'-':>10}"
        lines.append(f"{n:>6} {e['1']['fraction']:6.2f} {e['0']['fraction']:6.2f} {e['inf']['fraction']:6.2f} "
                     f"{t('1', 'mean_time')} {t('1', 'max_time')} {t('0', 'mean_time')} {t('0', 'max_time')}")
    lines.append("")
    lines.append(f"{'alpha':>6} {'count':>7} {'frac':>8} {'P(>k)':>8} {'2^-(k+1)':>9} {'limit':>8}  audit")
    for row in s.bound_audit:
        mark = "-" if row["ok"] is None else ("ok" if row["ok"] else "VIOLATION")
        lines.append(f"{row['k']:>6} {row['count']:>7} {row['fraction']:8.4f} {row['tail']:8.4f} "
                     f"{row['reference']:9.4f} {row['limit']:8.4f}  {mark}")
    lines.append("")
    lines.append(f"certificate failures: {s.cert_failures}")
    lines.append(f"alpha cap exceeded: {s.exceeded}")
    lines.append(f"call envelope violations: {s.envelope_violations}; round violations: {s.round_violations}")
    for k, v in s.extra.items():
        if isinstance(v, dict):
            continue
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def run_experiment(experiment: int, scale: str = "desk", seed: int = 0, out_dir: Path | None = None,
                   jobs: int = 1, alpha_max: int = 6, max_calls: int | None = DEFAULT_MAX_CALLS,
                   group: int | None = None, sizes=None, write_certs: bool = True) -> tuple[Summary, list[Outcome]]:
    info = PLANS[experiment]
    specs = plan(experiment, scale, seed, group, sizes)
    cert_dir = str(out_dir / "certs") if (out_dir is not None and write_certs) else None
    tasks = [Task(s, info["mode"], alpha_max, max_calls, baseline=(experiment == 1), cert_dir=cert_dir)
             for s in specs]
    outcomes = run_tasks(tasks, jobs)
    outcomes.sort(key=lambda o: (o.record.model, o.record.n, int(o.record.id.rsplit("_", 1)[1])))
    summary = summarize(experiment, outcomes, alpha_max)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_records(out_dir / f"experiment{experiment}.csv", [o.record for o in outcomes])
        if experiment == 1:
            write_baseline(out_dir / "experiment1_backtracking.csv", [o.baseline for o in outcomes])
        (out_dir / f"experiment{experiment}_summary.txt").write_text(format_summary(summary))
        (out_dir / f"experiment{experiment}_summary.json").write_text(
            json.dumps(asdict(summary), indent=2, default=str) + "\n")
    return summary, outcomes


def planar_alpha_probe(count: int = 500, seed: int = 0, out_dir: Path | None = None,
                       alpha_max: int = 3, max_calls: int | None = 500_000,
                       jobs: int = 1) -> tuple[float, list[Outcome]]:
    """Fraction of random planar and 4-regular planar instances resolved at alpha <= 1.

    Half the instances are pseudo-planar (n in 10..100, d in [2, 5]) and half
    4-regular planar (n in 9..100).  Instances needing a larger budget are
    archived as DIMACS files together with any certificate.
    """
    specs = []
    rng = random.Random(derive_seed(seed, "planar-probe"))
    for i in range(count):
        if i % 2 == 0:
            n = rng.randint(10, 100)
            d = round(rng.uniform(2.0, min(5.0, 6 - 12 / n)), 6)
            specs.append(GenSpec("pseudo_planar", n, d, seed, i))
        else:
            specs.append(GenSpec("planar_4regular", rng.randint(9, 100), None, seed, i))
    tasks = [Task(s, "planar", alpha_max, max_calls) for s in specs]
    outcomes = run_tasks(tasks, jobs)
    good = sum(1 for o in outcomes if o.record.alpha <= 1)
    exceptions = [o for o in outcomes if o.record.alpha > 1]
    if out_dir is not None and exceptions:
        archive = out_dir / "planar_probe_exceptions"
        for o, spec in ((o, s) for o in exceptions for s in specs if instance_name(s) == o.record.id):
            run_task(Task(spec, "planar", alpha_max, max_calls, cert_dir=str(archive), keep_instance=True))
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_records(out_dir / "planar_probe.csv", [o.record for o in outcomes])
    return good / len(outcomes), outcomes
