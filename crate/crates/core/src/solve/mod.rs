//! Linear algebra modulo the prime powers of `M`, descent of individual
//! targets to the factor base, and exhaustive oracles used to check both.

pub mod arith;
pub mod descent;
pub mod factor;
pub mod linalg;
pub mod oracle;
pub mod table;

use crate::harvest::HarvestError;
use crate::psi::PsiError;

pub use descent::{choose_generator, classical_split, dlog, Descent, DescentParams, DlogResult, Split};
pub use factor::factor_modulus;
pub use linalg::{kernel_dim, solve_affine, solve_mod, LinSystem};
pub use oracle::{bsgs_oracle, rho_oracle, BSGS_CAP};
pub use table::{LogTable, Method, SolveConfig, SolveReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("{undetermined} of {unknowns} unknowns are not determined; more relations needed")]
    MoreRelationsNeeded { unknowns: usize, undetermined: usize },
    #[error("inconsistent homogeneous system")]
    InconsistentSystem,
    #[error("factorization did not finish")]
    FactorizationTimeout,
    #[error("element is not in the subgroup")]
    NotInSubgroup,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no smooth split within the budget")]
    BudgetExhausted,
    #[error("no descent relation within the budget")]
    NoSolutionInBudget,
    #[error("descent failed: {0}")]
    DescentFailed(String),
    #[error("missing log: {0}")]
    MissingLog(String),
    #[error("cannot parse logs: {0}")]
    Parse(String),
    #[error(transparent)]
    Psi(#[from] PsiError),
    #[error(transparent)]
    Harvest(#[from] HarvestError),
}
