//! Resource budgets guarding the super-exponential recursion.
//!
//! The recursion behind `Delta(n,k,m+1)` instantiates color counts of the
//! form `k^|Delta(n,k,m)|`, which leave any feasible scale almost
//! immediately. Budgets make every infeasible instance fail fast with a
//! diagnostic instead of thrashing.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_POINTS: usize = 1_000_000;

/// Environment variable overriding `max_points` for the CLI.
pub const BUDGET_POINTS_ENV: &str = "GALLAI_BUDGET_POINTS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResourceBudget {
    /// Cap on the cardinality of any constructed point set.
    pub max_points: usize,
    /// Cap on the color count `K` in any `Phi(2,K)` instantiation.
    pub max_color_count: BigUint,
}

impl Default for ResourceBudget {
    /// `max_points = 10^6`, `max_color_count = 2^64`. Every desk-scale
    /// instance (n=3, k=2) fits with headroom.
    fn default() -> Self {
        ResourceBudget {
            max_points: DEFAULT_MAX_POINTS,
            max_color_count: BigUint::one() << 64,
        }
    }
}

impl ResourceBudget {
    pub fn new(max_points: usize, max_color_count: BigUint) -> Result<Self> {
        if max_points == 0 || max_color_count.is_zero() {
            return Err(Error::precondition("budgets must be strictly positive"));
        }
        Ok(ResourceBudget {
            max_points,
            max_color_count,
        })
    }

    pub fn check_points(&self, quantity: &'static str, needed: usize) -> Result<()> {
        if needed > self.max_points {
            return Err(Error::ResourceLimit {
                quantity,
                needed: BigUint::from(needed),
                limit: BigUint::from(self.max_points),
            });
        }
        Ok(())
    }

    pub fn check_colors(&self, quantity: &'static str, needed: &BigUint) -> Result<()> {
        if needed > &self.max_color_count {
            return Err(Error::ResourceLimit {
                quantity,
                needed: needed.clone(),
                limit: self.max_color_count.clone(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_budget() {
        let b = ResourceBudget::default();
        assert_eq!(b.max_points, 1_000_000);
        assert_eq!(b.max_color_count, BigUint::one() << 64);
    }

    #[test]
    fn zero_budgets_rejected() {
        assert!(ResourceBudget::new(0, BigUint::one()).is_err());
        assert!(ResourceBudget::new(1, BigUint::zero()).is_err());
    }

    #[test]
    fn checks_report_offending_quantity() {
        let b = ResourceBudget::new(10, BigUint::from(100u32)).unwrap();
        assert!(b.check_points("set size", 10).is_ok());
        match b.check_points("set size", 11) {
            Err(Error::ResourceLimit {
                quantity, needed, ..
            }) => {
                assert_eq!(quantity, "set size");
                assert_eq!(needed, BigUint::from(11u32));
            }
            other => panic!("expected resource limit, got {other:?}"),
        }
        assert!(b.check_colors("color count", &BigUint::from(101u32)).is_err());
    }
}
