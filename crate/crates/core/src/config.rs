use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of leaves an exhaustive enumeration may produce.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A problem instance: `n` seats (and passengers), the first `k` of whom are
/// absent-minded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoardingConfig {
    n: usize,
    k: usize,
}

impl BoardingConfig {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < 1 || k >= n {
            return Err(Error::InvalidConfig { n, k });
        }
        Ok(Self { n, k })
    }

    /// The classic single absent-minded passenger.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(BoardingConfig::new(1, 1).is_err());
        assert!(BoardingConfig::new(4, 0).is_err());
        assert!(BoardingConfig::new(4, 4).is_err());
        assert!(BoardingConfig::new(2, 1).is_ok());
        assert!(BoardingConfig::new(5, 4).is_ok());
    }
}
