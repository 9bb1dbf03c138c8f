from ._ifista import (
    ProblemInstance,
    build_instance,
    check_compliance,
    estimate_mu,
    generate_lsq,
    lipschitz_hint,
    load_problem,
    momentum_next,
    objective_value,
    prox_point,
    reference,
    run,
    save_problem,
    soft_threshold,
    solve_spec,
)

__all__ = [
    "ProblemInstance",
    "build_instance",
    "check_compliance",
    "estimate_mu",
    "generate_lsq",
    "lipschitz_hint",
    "load_problem",
    "momentum_next",
    "objective_value",
    "prox_point",
    "reference",
    "run",
    "save_problem",
    "soft_threshold",
    "solve_spec",
]
