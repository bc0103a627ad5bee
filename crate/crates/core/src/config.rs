use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};

/// Work limits shared by the enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Maximum number of subspaces an exhaustive enumeration may visit.
    pub subspaces: u64,
    /// Maximum number of projective points a construction may produce.
    pub points: u64,
    /// Maximum number of cliques / hyperedges a construction may produce.
    pub cliques: u64,
    /// Maximum number of column subsets or codewords a general-position check may visit.
    pub subsets: u64,
    /// Maximum number of branch-and-bound nodes for the minimum-size search.
    pub search: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            subspaces: 10_000_000,
            points: 10_000_000,
            cliques: 10_000_000,
            subsets: 10_000_000,
            search: 10_000_000,
        }
    }
}

impl Budgets {
    /// Defaults overridden by `BLOCKFORGE_BUDGET_{SUBSPACES,POINTS,CLIQUES,SUBSETS,SEARCH}`.
    pub fn from_env() -> Result<Self> {
        let mut b = Budgets::default();
        for (name, slot) in [
            ("SUBSPACES", &mut b.subspaces),
            ("POINTS", &mut b.points),
            ("CLIQUES", &mut b.cliques),
            ("SUBSETS", &mut b.subsets),
            ("SEARCH", &mut b.search),
        ] {
            let key = format!("BLOCKFORGE_BUDGET_{name}");
            if let Ok(raw) = std::env::var(&key) {
                let v: u64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("{key}={raw} is not an integer")))?;
                if v == 0 && name != "SEARCH" {
                    return Err(Error::InvalidArgument(format!("{key} must be positive")));
                }
                *slot = v;
            }
        }
        Ok(b)
    }

    pub fn check(&self, budget: Budget, needed: u128) -> Result<()> {
        let limit = match budget {
            Budget::Subspaces => self.subspaces,
            Budget::Points => self.points,
            Budget::Cliques => self.cliques,
            Budget::Subsets => self.subsets,
            Budget::Search => self.search,
        } as u128;
        if needed > limit {
            Err(Error::BudgetExceeded { budget, needed, limit })
        } else {
            Ok(())
        }
    }
}
