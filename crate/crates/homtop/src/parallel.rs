//! Oracle degrees computed concurrently.

use homtop_core::oracle::{self, OracleReport};
use homtop_core::Result;
use rayon::prelude::*;

/// Same result as `oracle::quotient_dims_oracle`, with degrees spread over the
/// rayon pool. The budget is checked for the top degree before any work starts.
pub fn quotient_dims_oracle_par(k: u64, max_degree: usize, budget: u64) -> Result<OracleReport> {
    if k < 1 {
        return oracle::quotient_dims_oracle(k, max_degree, budget);
    }
    oracle::check_budget(k, max_degree, budget)?;
    // Largest degrees first so the long jobs start early.
    let ranks = (0..=max_degree)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| oracle::ideal_degree_rank(k, n, budget))
        .collect::<Result<Vec<_>>>()?;
    OracleReport::assemble(k, max_degree, ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use homtop_core::oracle::DEFAULT_COLUMN_BUDGET;

    #[test]
    fn agrees_with_sequential() {
        for (k, n) in [(1, 7), (2, 6)] {
            assert_eq!(
                quotient_dims_oracle_par(k, n, DEFAULT_COLUMN_BUDGET).unwrap(),
                oracle::quotient_dims_oracle(k, n, DEFAULT_COLUMN_BUDGET).unwrap()
            );
        }
    }

    #[test]
    fn budget_checked_up_front() {
        assert!(matches!(
            quotient_dims_oracle_par(3, 50, DEFAULT_COLUMN_BUDGET),
            Err(homtop_core::Error::ResourceLimit { degree: 50, .. })
        ));
    }
}
