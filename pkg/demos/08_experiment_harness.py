"""
Seeded experiments and the command line
=======================================

The harness runs every (seed, algorithm, M) cell and writes CSV. The same
thing is available as ``netdecomp run -c demos/sample.cfg``.
"""
import os

from netdecomp.cli import main
from netdecomp.experiment import RESULT_COLUMNS, ExperimentConfig, run_experiment, to_csv

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "sample.cfg")) as fh:
    cfg = ExperimentConfig.parse(fh.read(), ["seeds = 1..3", "M = 6"])

rows = run_experiment(cfg)
print(to_csv([r for r in rows if r["seed"] == "mean"], RESULT_COLUMNS, drop=("runtime_ms",)))

# the CLI prints the same table; --no-timestamp/--no-timing make reruns byte-identical
main(["sweep", "-c", os.path.join(here, "sample.cfg"), "--set", "seeds=1,2", "--set", "M_range=2..5",
      "--set", "algorithms=similarity,stable", "--no-timestamp"])
