//! Truncated formal power series over a pluggable coefficient ring.
//!
//! A [`TruncSeries`] of order `N` tracks the coefficients of `t^0 .. t^N`
//! exactly; everything above `t^N` is unknown. Binary operations truncate to
//! the minimum of the two orders and never extend a series with implicit
//! zeros, so a result's order always states exactly how far it is certified.
//!
//! `exp` and `log` use the O(N²) derivative recurrences (for `g = exp f`,
//! solve `g′ = f′·g` coefficient by coefficient, and the corresponding
//! rearrangement for `log`). Both are exact over any [`CoeffRing`].

use std::fmt::Write as _;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::Rational;
use crate::ring::CoeffRing;

/// A formal power series truncated after `t^order`, with every tracked
/// coefficient exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries<K> {
    coeffs: Vec<K>,
}

/// Errors from series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(
        "exp requires a zero constant term; over Q and Q[x] the only nilpotent is 0, \
         so a nonzero constant term is never admissible"
    )]
    NonzeroConstantTerm,
    #[error("log requires constant term 1")]
    ConstantTermNotOne,
    #[error("coefficient index {index} is beyond the truncation order {order}")]
    IndexBeyondTruncation { index: usize, order: usize },
    #[error("series reciprocal requires an invertible constant term")]
    NonInvertibleConstantTerm,
}

impl<K: CoeffRing> TruncSeries<K> {
    /// Builds a series from the coefficients of `t^0, t^1, …`; the order is
    /// `coeffs.len() - 1`. Panics on an empty list.
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least the t^0 coefficient"
        );
        TruncSeries { coeffs }
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![K::zero(); order + 1],
        }
    }

    /// The constant series 1 at the given order.
    pub fn one(order: usize) -> Self {
        Self::constant(K::one(), order)
    }

    pub fn constant(c: K, order: usize) -> Self {
        let mut coeffs = vec![K::zero(); order + 1];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    /// The series `t` at the given order (just `0` when `order == 0`).
    pub fn variable(order: usize) -> Self {
        let mut coeffs = vec![K::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = K::one();
        }
        TruncSeries { coeffs }
    }

    /// Builds a series of the given order from a shorter prefix, padding
    /// explicitly with zeros. Panics if the prefix is longer than the order
    /// allows.
    pub fn padded(prefix: Vec<K>, order: usize) -> Self {
        assert!(
            prefix.len() <= order + 1,
            "prefix of length {} does not fit in order {}",
            prefix.len(),
            order
        );
        let mut coeffs = prefix;
        coeffs.resize(order + 1, K::zero());
        TruncSeries { coeffs }
    }

    /// Highest power of `t` whose coefficient is tracked.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient of `t^n`, or an error past the truncation order.
    pub fn coeff(&self, n: usize) -> Result<&K, SeriesError> {
        self.coeffs
            .get(n)
            .ok_or(SeriesError::IndexBeyondTruncation {
                index: n,
                order: self.order(),
            })
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &K {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(K::is_zero)
    }

    /// Drops coefficients above `order`. Panics if that would extend the
    /// series.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot truncate order {} up to {}",
            self.order(),
            order
        );
        TruncSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Explicit prefix comparison: agree on `t^0 .. t^upto`? Panics if either
    /// series is shorter than that. (Plain `==` requires equal orders.)
    pub fn prefix_eq(&self, other: &Self, upto: usize) -> bool {
        assert!(
            upto <= self.order() && upto <= other.order(),
            "prefix comparison past a truncation order"
        );
        self.coeffs[..=upto] == other.coeffs[..=upto]
    }

    /// Coefficientwise sum, truncated to the minimum order.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncSeries {
            coeffs: (0..n)
                .map(|k| K::add(&self.coeffs[k], &other.coeffs[k]))
                .collect(),
        }
    }

    /// Coefficientwise difference, truncated to the minimum order.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        TruncSeries {
            coeffs: (0..n)
                .map(|k| K::sub(&self.coeffs[k], &other.coeffs[k]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| K::neg(c)).collect(),
        }
    }

    /// Multiplies every coefficient by an embedded rational.
    pub fn scale(&self, q: &Rational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| K::scale(c, q)).collect(),
        }
    }

    /// Cauchy product, truncated to the minimum order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![K::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = K::add(&coeffs[i + j], &K::mul(a, b));
            }
        }
        TruncSeries { coeffs }
    }

    /// `k`-th power by binary exponentiation, at this series' order;
    /// `a^0 = 1`.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `exp` of a series with zero constant term, exact to this order.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut out: Vec<K> = Vec::with_capacity(order + 1);
        out.push(K::one());
        for m in 1..=order {
            // m·g_m = Σ_{k=1..m} k·f_k·g_{m−k}
            let mut acc = K::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = K::mul(&self.coeffs[k], &out[m - k]);
                acc = K::add(&acc, &K::scale(&term, &Rational::from_int(k as i64)));
            }
            out.push(K::scale(&acc, &Rational::new(1, m as i64)));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `log` of a series with constant term 1, exact to this order.
    /// Inverse of [`TruncSeries::exp`] on truncations.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != K::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let order = self.order();
        let mut out: Vec<K> = Vec::with_capacity(order + 1);
        out.push(K::zero());
        for m in 1..=order {
            // L_m = a_m − (1/m) Σ_{k=1..m−1} k·L_k·a_{m−k}
            let mut acc = K::zero();
            for (k, lk) in out.iter().enumerate().skip(1) {
                if lk.is_zero() {
                    continue;
                }
                let term = K::mul(lk, &self.coeffs[m - k]);
                acc = K::add(&acc, &K::scale(&term, &Rational::from_int(k as i64)));
            }
            let l = K::sub(
                &self.coeffs[m],
                &K::scale(&acc, &Rational::new(1, m as i64)),
            );
            out.push(l);
        }
        Ok(TruncSeries { coeffs: out })
    }
}

impl TruncSeries<Rational> {
    /// Reciprocal series, requiring an invertible (nonzero) constant term.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NonInvertibleConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out = vec![inv0.clone()];
        for m in 1..=self.order() {
            // c_m = −(1/a_0) Σ_{k=1..m} a_k·c_{m−k}
            let mut acc = Rational::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &out[m - k]);
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Exact series division `self / denom`, truncated to the minimum order.
    pub fn div(&self, denom: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&denom.recip()?))
    }

    /// Renders the series in a named variable, with the O-term, e.g.
    /// `t - 1/2*t^2 + O(t^3)`.
    pub fn to_pretty(&self, var: &str) -> String {
        let mut s = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    s.push('-');
                }
                first = false;
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            match (k, mag.is_one()) {
                (0, _) => write!(s, "{mag}").unwrap(),
                (1, true) => write!(s, "{var}").unwrap(),
                (1, false) => write!(s, "{mag}*{var}").unwrap(),
                (_, true) => write!(s, "{var}^{k}").unwrap(),
                (_, false) => write!(s, "{mag}*{var}^{k}").unwrap(),
            }
        }
        if first {
            s.push('0');
        }
        write!(s, " + O({var}^{})", self.order() + 1).unwrap();
        s
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Rational>,
}

impl Serialize for TruncSeries<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncSeries<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(de::Error::custom(format!(
                "series of order {} must list exactly {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(TruncSeries::new(repr.coeffs))
    }
}
