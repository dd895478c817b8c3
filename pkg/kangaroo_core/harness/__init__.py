from kangaroo_core.harness.experiment import (
    KINDS,
    ExperimentReport,
    ExperimentSpec,
    TrialResult,
    default_workers,
    run_experiment,
)
from kangaroo_core.harness.report import report_to_json, write_report
from kangaroo_core.harness.rng import stream, trial_seed
from kangaroo_core.harness.stats import Summary, summarize
