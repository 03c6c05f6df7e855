"""Seeded Monte Carlo experiments, aggregation, and JSON-lines persistence.

Every trial draws its own seed from ``(master_seed, trial_index)``, so the
record stream depends only on the configuration.  Wall times are measured
but left out of persisted records unless asked for, which keeps repeated
runs byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .adversary import (AttackFailure, bipartition_attack, greedy_min_degree_attack,
                        is_unbalanced_bipartite, random_attack, validate_plan)
from .graph import Graph
from .kcore import k_core
from .oracles import DEFAULT_LIMITS, held_karp_hamiltonian
from .posa import BuildFailure, build_hamilton, verify_hamilton
from .random_models import (GraphProcess, derive_seed, hitting_time_kcore, hitting_time_min_degree,
                            pair_count, sample_gnp)

EXPERIMENTS = ("hitting-time-hamilton", "hitting-time-resilience", "kcore-birth",
               "kcore-resilience", "concentration", "adversary-tightness")

ORACLE_COMPANION_MAX_N = 18
SWEEP_MAX_N = 64
_Z95 = 1.959963984540054


@dataclass
class ExperimentConfig:
    experiment: str
    n: int
    trials: int = 1
    master_seed: int = 0
    k: int = 2
    eps: float = 0.05
    alpha: float = 0.25
    p: float = 0.05
    sizes: list[int] | None = None  # |A|, |B| for concentration; default: halves
    strict: bool = False  # enforce the concentration precondition
    attacks: bool = False  # run the alpha attacks on the core in kcore-birth
    sweep: bool = False  # hitting-time-hamilton: also build at every M >= tau (n <= 64)
    builder: dict = field(default_factory=dict)

    def validate(self) -> ExperimentConfig:
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.experiment in ("hitting-time-resilience", "kcore-resilience") and not 0 <= self.alpha < 0.5:
            raise ValueError("the positive arm needs 0 <= alpha < 1/2")
        if self.experiment.startswith("kcore") and self.k < 3:
            raise ValueError("k-core experiments need k >= 3")
        if self.experiment == "concentration":
            if not 0 <= self.p <= 1:
                raise ValueError("p must lie in [0, 1]")
            a, b = self.set_sizes()
            if a < 1 or b < 1 or a + b > self.n:
                raise ValueError(f"sizes {a}, {b} do not fit in n={self.n}")
            if self.strict and self.p * a * b < 100 * self.n / self.eps ** 2:
                raise ValueError("precondition p|A||B| >= 100 n / eps^2 fails for these sizes")
        if self.sweep and self.n > SWEEP_MAX_N:
            raise ValueError(f"sweeping every M is limited to n <= {SWEEP_MAX_N}")
        return self

    def set_sizes(self) -> tuple[int, int]:
        if self.sizes:
            return int(self.sizes[0]), int(self.sizes[1])
        return self.n // 2, self.n - self.n // 2

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**data).validate()

    @classmethod
    def from_file(cls, path: str | Path) -> ExperimentConfig:
        path = Path(path)
        text = path.read_text()
        if path.suffix == ".toml":
            try:
                import tomllib
            except ModuleNotFoundError:  # Python 3.10
                import tomli as tomllib
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
        return cls.from_dict(data)


@dataclass
class TrialRecord:
    experiment: str
    trial_index: int
    seed: int
    tau: int | None
    stats: dict
    verdicts: dict  # name -> {"success": bool, ...}
    wall_time: float = 0.0

    def to_dict(self, include_time: bool = False) -> dict:
        d = asdict(self)
        if not include_time:
            d.pop("wall_time")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> TrialRecord:
        need = {"experiment", "trial_index", "seed", "tau", "stats", "verdicts"}
        missing = need - set(d)
        if missing or not isinstance(d.get("verdicts"), dict):
            raise ValueError(f"record schema mismatch: missing {sorted(missing)}")
        return cls(d["experiment"], d["trial_index"], d["seed"], d["tau"], d["stats"], d["verdicts"],
                   d.get("wall_time", 0.0))


def graph_stats(G: Graph) -> dict:
    degs = G.degrees()
    return {"n": G.n, "M": G.m, "min_degree": min(degs, default=0), "max_degree": max(degs, default=0)}


def _digest(cycle) -> str:
    return hashlib.sha256(",".join(map(str, cycle)).encode()).hexdigest()[:16]


def _build(G: Graph, H: Graph, seed: int, params: dict) -> dict:
    """Run the builder; success is only reported for a re-verified cycle inside ``H``."""
    log: list = []
    try:
        cycle = build_hamilton(G, H, seed=seed, log=log, **params)
    except BuildFailure as exc:
        return {"success": False, "stage": exc.stage, "boosters": exc.diagnostics.get("boosters")}
    ok = verify_hamilton(H, cycle)
    return {"success": ok, "boosters": sum(1 for e in log if e["edges"]), "certificate": _digest(cycle)}


def _oracle(H: Graph) -> dict:
    ham, _ = held_karp_hamiltonian(H)
    return {"success": ham}


def _attack_arms(G: Graph, H: Graph, cfg: ExperimentConfig, seed: int) -> dict:
    out = {}
    for name, make in (("random", lambda: random_attack(H, cfg.alpha, derive_seed(seed, 2))),
                       ("greedy", lambda: greedy_min_degree_attack(H, cfg.alpha))):
        plan = make()
        valid = validate_plan(plan)[0]
        residual = plan.residual()
        v = _build(G, residual, derive_seed(seed, 3), cfg.builder) if valid else {"success": False}
        v["plan_valid"] = valid
        v["removed"] = plan.removed.m
        if H.n <= ORACLE_COMPANION_MAX_N:
            v["oracle"] = _oracle(residual)["success"]
        out[name] = v
    return out


def _bipartition_arm(H: Graph, cfg: ExperimentConfig, seed: int) -> dict:
    try:
        plan = bipartition_attack(H, eps=cfg.eps, seed=derive_seed(seed, 4))
    except AttackFailure as exc:
        return {"success": False, "reason": exc.reason}
    valid = validate_plan(plan)[0]
    residual = plan.residual()
    unbalanced = is_unbalanced_bipartite(residual, plan.parts)[0]
    v = {"success": valid and unbalanced, "plan_valid": valid, "unbalanced_bipartite": unbalanced,
         "alpha": plan.alpha, "mover": plan.meta.get("mover")}
    if H.n <= ORACLE_COMPANION_MAX_N:
        v["oracle_non_hamiltonian"] = not _oracle(residual)["success"]
    return v


def _tau2_graph(cfg: ExperimentConfig, seed: int) -> tuple[Graph, int]:
    proc = GraphProcess(cfg.n, seed)
    rep = hitting_time_min_degree(proc, 2)
    return proc.current, rep.tau


def _trial_hamilton(cfg: ExperimentConfig, seed: int):
    G, tau = _tau2_graph(cfg, seed)
    verdicts = {"builder": _build(G, G, derive_seed(seed, 1), cfg.builder)}
    if cfg.n <= ORACLE_COMPANION_MAX_N:
        verdicts["oracle"] = _oracle(G)
        verdicts["builder_sound"] = {"success": not (verdicts["builder"]["success"]
                                                    and not verdicts["oracle"]["success"])}
    if cfg.sweep:
        proc = GraphProcess(cfg.n, seed).advance(tau)
        fails = []
        while True:
            G_M = proc.current
            if not _build(G_M, G_M, derive_seed(seed, 5, proc.M), cfg.builder)["success"]:
                fails.append(proc.M)
            if proc.M == proc.N:
                break
            proc.advance(1)
        verdicts["sweep"] = {"success": not fails, "failures": fails}
    return tau, graph_stats(G), verdicts


def _trial_resilience(cfg: ExperimentConfig, seed: int):
    G, tau = _tau2_graph(cfg, seed)
    verdicts = _attack_arms(G, G, cfg, seed)
    verdicts["bipartition"] = _bipartition_arm(G, cfg, seed)
    return tau, graph_stats(G), verdicts


def _trial_kcore(cfg: ExperimentConfig, seed: int):
    n, k = cfg.n, cfg.k
    proc = GraphProcess(n, seed)
    rep = hitting_time_kcore(proc, k)
    core = k_core(proc.current, k)
    C = core.core_graph
    stats = graph_stats(proc.current)
    stats["core_size"] = len(core.core_vertices)
    stats["core_edges"] = C.m
    p = rep.tau / pair_count(n)
    stats["regime"] = "supercritical" if p >= 4 * k / n else "critical"
    verdicts = {
        "core_born": {"success": rep.reached and bool(core)},
        "tau_above_half_kn": {"success": rep.tau > k * n / 2},
        "core_linear": {"success": len(core.core_vertices) >= n / 5000},
    }
    if C.n >= 3:
        verdicts["builder"] = _build(C, C, derive_seed(seed, 1), cfg.builder)
        if cfg.attacks or cfg.experiment == "kcore-resilience":
            verdicts.update(_attack_arms(C, C, cfg, seed))
    return rep.tau, stats, verdicts


def _trial_concentration(cfg: ExperimentConfig, seed: int):
    a, b = cfg.set_sizes()
    rng = np.random.default_rng(derive_seed(seed, 6))
    perm = rng.permutation(cfg.n)
    A, B = perm[:a], perm[a:a + b]
    G = sample_gnp(cfg.n, cfg.p, seed)
    in_b = np.zeros(cfg.n, dtype=bool)
    in_b[B] = True
    e = sum(sum(1 for w in G.adj[v] if in_b[w]) for v in A.tolist())
    mean = cfg.p * a * b
    # an empty band (p = 0) only counts as hit when eps >= 1
    inside = (1 - cfg.eps) * mean <= e <= (1 + cfg.eps) * mean and (mean > 0 or cfg.eps >= 1)
    verdicts = {"inside_band": {"success": inside, "edges": e, "expected": mean},
                "precondition": {"success": mean >= 100 * cfg.n / cfg.eps ** 2}}
    return None, graph_stats(G), verdicts


def _trial_tightness(cfg: ExperimentConfig, seed: int):
    G, tau = _tau2_graph(cfg, seed)
    return tau, graph_stats(G), {"bipartition": _bipartition_arm(G, cfg, seed)}


_RUNNERS = {
    "hitting-time-hamilton": _trial_hamilton,
    "hitting-time-resilience": _trial_resilience,
    "kcore-birth": _trial_kcore,
    "kcore-resilience": _trial_kcore,
    "concentration": _trial_concentration,
    "adversary-tightness": _trial_tightness,
}


def run_trial(cfg: ExperimentConfig, index: int) -> TrialRecord:
    seed = derive_seed(cfg.master_seed, index)
    start = time.perf_counter()
    tau, stats, verdicts = _RUNNERS[cfg.experiment](cfg, seed)
    return TrialRecord(cfg.experiment, index, seed, tau, stats, verdicts, time.perf_counter() - start)


def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> tuple[list[TrialRecord], dict]:
    """Run all trials (optionally in a process pool) and summarise them in trial order."""
    cfg.validate()
    indices = range(cfg.trials)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(run_trial, [cfg] * cfg.trials, indices))
    else:
        records = [run_trial(cfg, i) for i in indices]
    return records, aggregate(records)


def _only(name: str):
    def run(cfg: ExperimentConfig, threads: int = 1):
        if cfg.experiment != name:
            cfg = ExperimentConfig(**{**cfg.to_dict(), "experiment": name})
        return run_experiment(cfg, threads)
    run.__name__ = "run_" + name.replace("-", "_")
    run.__doc__ = f"Run the ``{name}`` experiment; returns ``(records, summary)``."
    return run


run_hitting_time_hamilton = _only("hitting-time-hamilton")
run_hitting_time_resilience = _only("hitting-time-resilience")
run_kcore_birth = _only("kcore-birth")
run_kcore_resilience = _only("kcore-resilience")
run_adversary_tightness = _only("adversary-tightness")
run_concentration = _only("concentration")


def compare_builder_with_oracle(n: int, p: float = 0.5, trials: int = 500, master_seed: int = 0,
                                builder: dict | None = None) -> dict:
    """Builder against Held-Karp on ``G(n, p)``: both success rates and unsound count."""
    if n > DEFAULT_LIMITS.max_n_hamilton:
        raise ValueError(f"n={n} is beyond the exact oracle")
    built = oracle = unsound = 0
    for i in range(trials):
        seed = derive_seed(master_seed, i)
        G = sample_gnp(n, p, seed)
        b = _build(G, G, derive_seed(seed, 1), builder or {})["success"]
        o = held_karp_hamiltonian(G)[0]
        built += b
        oracle += o
        unsound += b and not o
    return {"n": n, "p": p, "trials": trials, "builder_rate": built / trials,
            "oracle_rate": oracle / trials, "unsound": unsound}


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("Wilson interval needs at least one trial")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


def aggregate(records: list[TrialRecord]) -> dict:
    """Success rate and 95% Wilson interval for every verdict seen in ``records``."""
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    counts: dict[str, list[int]] = {}
    for r in records:
        for name, v in r.verdicts.items():
            c = counts.setdefault(name, [0, 0])
            c[0] += bool(v.get("success"))
            c[1] += 1
    summary = {"experiment": records[0].experiment, "trials": len(records), "verdicts": {}}
    for name in sorted(counts):
        s, t = counts[name]
        lo, hi = wilson_interval(s, t)
        summary["verdicts"][name] = {"successes": s, "trials": t, "rate": s / t, "ci_low": lo, "ci_high": hi}
    return summary


def dumps_records(records: list[TrialRecord], include_time: bool = False) -> str:
    return "".join(json.dumps(r.to_dict(include_time), sort_keys=True, separators=(",", ":")) + "\n"
                   for r in records)


def write_results(records: list[TrialRecord], path: str | Path, include_time: bool = False) -> None:
    Path(path).write_text(dumps_records(records, include_time))


def load_results(path: str | Path) -> list[TrialRecord]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(TrialRecord.from_dict(json.loads(line)))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out


SUMMARY_COLUMNS = ("experiment", "verdict", "successes", "trials", "rate", "ci_low", "ci_high")


def write_summary_csv(summary: dict, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for name, v in summary["verdicts"].items():
        w.writerow([summary["experiment"], name, v["successes"], v["trials"],
                    f"{v['rate']:.6f}", f"{v['ci_low']:.6f}", f"{v['ci_high']:.6f}"])
