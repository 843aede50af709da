//! Rational Puiseux expansions: the half expansion over triangular sets, norms of
//! expansions, the divide-and-conquer driver for monic inputs and the general case.

mod half;
mod monic;
mod norm;
mod regularity;

pub use half::half_rnp3;
pub use monic::{group_by_q, invert_rpe, monic_rnp3, rnp3, shift_to_root};
pub use norm::{norm_rpe, norm_rpe_on};
pub use regularity::{count_agreeing, regularity_and_v};

use num_rational::Ratio;

use crate::algebra::field::{Field, Ring};
use crate::dynev::{El, TriSet};

pub type Qq = Ratio<i64>;

/// A rational Puiseux expansion `X = gamma T^e`, `Y = sum_k coeffs[k] T^{low + k}`
/// over the residue ring of its owner triangular set.
#[derive(Clone, Debug)]
pub struct Rpe<K: Field> {
    pub t: TriSet<K>,
    pub gamma: El<K>,
    pub e: usize,
    pub low: i64,
    pub coeffs: Vec<El<K>>,
    /// Coefficients are certified for exponents up to `known`.
    pub known: i64,
    pub r: i64,
    pub v: Qq,
    /// Truncation bound accumulated along the recursion path.
    pub n: Qq,
}

impl<K: Field> Rpe<K> {
    /// Residual degree: the degree of the owner over its first level.
    pub fn f(&self) -> usize {
        self.t.dp()
    }

    pub fn precision(&self) -> Qq {
        Qq::new(self.known, self.e as i64)
    }

    pub fn coeff(&self, k: i64) -> El<K> {
        let i = k - self.low;
        if i < 0 {
            return self.t.zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(|| self.t.zero())
    }

    /// Coefficients of exponents `low..=upto`.
    pub fn truncated(&self, upto: i64) -> Vec<El<K>> {
        (self.low..=upto).map(|k| self.coeff(k)).collect()
    }

    /// The singular part, exponents up to the regularity index.
    pub fn singular_part(&self) -> Vec<El<K>> {
        self.truncated(self.r.max(self.low))
    }

    /// Lowest exponent with a nonzero coefficient (raw), if any.
    pub fn val(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !self.t.is_zero(c)).map(|i| self.low + i as i64)
    }

    /// Moves the expansion to a component `s` of its owner.
    pub fn reduce_to(&self, s: &TriSet<K>) -> Rpe<K> {
        Rpe {
            gamma: s.reduce_from(&self.t, &self.gamma),
            coeffs: s.reduce_vec_from(&self.t, &self.coeffs),
            t: s.clone(),
            ..self.clone()
        }
    }

    pub fn certified(&self) -> bool {
        self.known >= self.r
    }
}

/// Sum of `e f` over a set of expansions.
pub fn weight<K: Field>(rs: &[Rpe<K>]) -> usize {
    rs.iter().map(|r| r.e * r.f()).sum()
}

pub(crate) fn ceil(x: Qq) -> i64 {
    x.ceil().to_integer()
}
