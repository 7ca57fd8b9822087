//! Polynomial roots and root continuation along a one-parameter family.

mod aberth;
mod continuation;

pub use aberth::{aberth_refine, all_roots, newton_polish, RootSet, CLUSTER_TOL};
pub(crate) use continuation::newton;
pub use continuation::{continue_all, continue_branch, BranchPath, StepControl};
