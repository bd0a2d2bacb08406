use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subset::{binomial, KSubsets, Subset, MAX_N};

/// Default cap on the number of points of any table built in full.
pub const DEFAULT_MAX_POINTS: u128 = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_POINTS`]. Raising it can
/// make exhaustive operations run for a very long time.
pub const MAX_TABLE_ENV: &str = "SLICEKIT_MAX_TABLE";

/// Current table-size limit: `SLICEKIT_MAX_TABLE` if set and valid, else the
/// default. Read once per process.
pub fn table_limit() -> u128 {
    static LIMIT: OnceLock<u128> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_TABLE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_POINTS)
    })
}

/// The slice `([n] choose k)`: 0/1 vectors of length `n` with exactly `k`
/// ones, represented by their 1-sets. Points are ordered colexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SliceDomain {
    n: usize,
    k: usize,
}

impl SliceDomain {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidDomain(format!("n = {n} must lie in 1..={MAX_N}")));
        }
        if k > n {
            return Err(Error::InvalidDomain(format!("k > n (k = {k}, n = {n})")));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of points, `C(n, k)`.
    pub fn size(&self) -> u128 {
        binomial(self.n as u64, self.k as u64)
    }

    /// Fails when the domain is larger than [`table_limit`].
    pub fn check_size(&self) -> Result<()> {
        let limit = table_limit();
        if self.size() > limit {
            return Err(Error::DomainTooLarge {
                points: self.size(),
                limit,
            });
        }
        Ok(())
    }

    pub fn points(&self) -> KSubsets {
        KSubsets::new(self.n, self.k)
    }

    pub fn contains(&self, point: Subset) -> bool {
        point.len() == self.k && point.max() <= self.n
    }

    /// Position of `point` in canonical order. The point must belong to the
    /// domain.
    pub fn index_of(&self, point: Subset) -> usize {
        debug_assert!(self.contains(point));
        point.colex_rank()
    }

    pub fn point_at(&self, index: usize) -> Subset {
        Subset::colex_unrank(index, self.k)
    }

    /// The complementary slice `([n] choose n-k)`.
    pub fn dual(&self) -> SliceDomain {
        SliceDomain {
            n: self.n,
            k: self.n - self.k,
        }
    }

    /// All of `[n]`.
    pub fn ground(&self) -> Subset {
        Subset::prefix(self.n)
    }
}
