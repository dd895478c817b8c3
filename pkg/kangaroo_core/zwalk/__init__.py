"""Line-walk laboratory: intersections of increasing walks on the integers"""
from kangaroo_core.zwalk.bounds import (
    acceptance_probability,
    b_epsilon_leading_bound,
    b_epsilon_upper_bound,
    birthday_bounds,
    block_definition_bound,
    constructive_time_bound,
    hoeffding_sample_count,
    optimal_block_length,
    tentative_time_bound,
    truncated_epsilon,
)
from kangaroo_core.zwalk.estimators import (
    BEpsilonEstimate,
    BEpsilonRun,
    b_epsilon_run,
    b_epsilon_starts,
    default_horizon,
    epsilon_hat,
    estimate_b_epsilon,
    hoeffding_shortfall_rate,
    summarize_b_epsilon,
)
from kangaroo_core.zwalk.stopping import (
    IntersectionSample,
    StoppingOutcome,
    block_definition_rate,
    hitting_profile,
    intersection_time,
    run_stopping_time,
    run_stopping_time_base_n,
    visit_window,
)
from kangaroo_core.zwalk.transitions import (
    collision_excess,
    contract_zero_runs,
    count_compositions,
    max_compositions,
    max_transition_prob,
)
from kangaroo_core.zwalk.walks import StepStream, WalkTrail, first_intersection, visit_profile
