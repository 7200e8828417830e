//! Exact rational ground truth for every floating-point path.
//!
//! Nothing here is fast: coefficient growth is accepted, and callers facing
//! user input should go through [`check_size`] first.

mod condition;
mod linsolve;
mod metrics;
mod neville;
mod poly;

pub use condition::{condition_2, ConditionEstimate};
pub use linsolve::{exact_determinant, exact_solve};
pub use metrics::{bd_norm_error, max_componentwise_error, spectral_norm};
pub use neville::{neville_bd, neville_eliminate, NevilleRecord};
pub use poly::{char_poly, exact_eigenvalues, isolate_real_roots, IsolatedRoot, Polynomial};

use crate::error::{Error, Result};

/// Largest matrix order the oracle accepts from user-facing callers.
pub const MAX_ORDER: usize = 20;

pub fn check_size(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::OracleSizeCap { order, cap: MAX_ORDER })
    } else {
        Ok(())
    }
}
