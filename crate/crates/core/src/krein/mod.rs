//! Rank-one perturbation engine: Krein resolvent corrections, Laurent data
//! at an isolated eigenvalue, the three-way case analysis and secular roots.

mod classify;
mod laurent;
mod oracle;
mod problem;
mod secular;
mod update;

pub use classify::{classify_laurent, predicted_projector, CaseReport, CaseTag, Tolerances};
pub use laurent::{
    laurent_at, laurent_from, projection_limit, LaurentData, ProjectionLimit, DEFAULT_EPSILONS,
};
pub use oracle::{
    verify_against_oracle, verify_problem, verify_window, CheckKind, OracleCheck, OracleReport,
};
pub use problem::{classify_case, eigenvector_at_root, krein_resolvent_correction, KreinProblem};
pub use secular::{build_secular, find_new_eigenvalues, SecularFunction};
pub use update::RankOneUpdate;
