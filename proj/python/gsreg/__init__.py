"""Group zero-norm regularized robust regression: proximal MM solver and pADMM baseline."""

from ._gsreg import (  # noqa: F401
    AdmmResult,
    GroupStructure,
    PhiFamily,
    PmmIterRecord,
    PmmResult,
    ProblemData,
    SyntheticSpec,
    Truth,
    admm_solve,
    eval_loss,
    eval_surrogate_objective,
    eval_true_objective,
    gen_synthetic,
    group_norms,
    lambda_base,
    load_libsvm,
    metric_l2err,
    metric_ng,
    metric_nnz,
    mm_weights,
    pmm_solve,
    project_ball,
    prox_loss,
    prox_weighted_group,
    psi_star,
    psi_star_prime,
    varphi_rho,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
