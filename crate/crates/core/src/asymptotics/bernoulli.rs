use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest Bernoulli index held by the shared table.
pub const SHARED_CAPACITY: usize = 30;

/// Exact Bernoulli numbers `B₀..B_n` of the generating function `z/(e^z − 1)`
/// (so `B₁ = −1/2`).
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    exact: Vec<BigRational>,
    float: Vec<f64>,
}

impl BernoulliTable {
    /// Builds `B₀..B_capacity` from `Σ_{j=0}^{m} C(m+1, j)·B_j = 0`.
    pub fn new(capacity: usize) -> Self {
        let mut exact: Vec<BigRational> = Vec::with_capacity(capacity + 1);
        exact.push(BigRational::from_integer(BigInt::from(1)));
        for m in 1..=capacity {
            let mut binom = BigInt::from(1); // C(m+1, 0)
            let mut acc = BigRational::zero();
            for (j, b) in exact.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            exact.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let float = exact
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect();
        Self { exact, float }
    }

    pub fn capacity(&self) -> usize {
        self.exact.len() - 1
    }

    pub fn exact(&self, n: usize) -> Result<&BigRational> {
        self.exact.get(n).ok_or(Error::Capacity {
            index: n,
            capacity: self.capacity(),
        })
    }

    pub fn value(&self, n: usize) -> Result<f64> {
        self.float.get(n).copied().ok_or(Error::Capacity {
            index: n,
            capacity: self.capacity(),
        })
    }
}

pub fn shared_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(SHARED_CAPACITY))
}

pub fn bernoulli(n: usize) -> Result<BigRational> {
    shared_table().exact(n).cloned()
}

/// `B_n` as a double.
pub fn bernoulli_f64(n: usize) -> Result<f64> {
    shared_table().value(n)
}
