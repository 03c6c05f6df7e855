"""Watch the k-core appear in the random graph process and test it for Hamiltonicity.

    python3 demos/04_kcore_birth.py [n] [k] [trials]
"""
import sys

from hamlab.lab import ExperimentConfig, run_experiment

n = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
k = int(sys.argv[2]) if len(sys.argv) > 2 else 10
trials = int(sys.argv[3]) if len(sys.argv) > 3 else 5

cfg = ExperimentConfig("kcore-resilience", n=n, k=k, trials=trials, alpha=0.25, master_seed=4)
records, summary = run_experiment(cfg)
print(f"{'trial':>5} {'tau':>7} {'tau/(kn/2)':>10} {'core':>6} {'regime':>13}  builder  attacked")
for r in records:
    v = r.verdicts
    attacked = v["random"]["success"] and v["greedy"]["success"]
    print(f"{r.trial_index:>5} {r.tau:>7} {r.tau / (k * n / 2):>10.3f} {r.stats['core_size']:>6} "
          f"{r.stats['regime']:>13}  {str(v['builder']['success']):>7}  {str(attacked):>8}")
print()
for name, v in summary["verdicts"].items():
    print(f"{name:>18}: {v['successes']}/{v['trials']}  (95% CI {v['ci_low']:.2f}-{v['ci_high']:.2f})")
