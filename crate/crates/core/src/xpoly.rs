//! Polynomials in the indeterminate `x` with rational coefficients.
//!
//! `XPoly` houses the family entries f_n(x), g_n(x), h_n(x). Normal form
//! stores no trailing zero coefficients, so the zero polynomial is the empty
//! coefficient list and equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rational;
use crate::ring::CoeffRing;

/// A polynomial in `x` over the rationals, in normal form (no trailing
/// zeros; the zero polynomial has an empty coefficient list).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPoly {
    coeffs: Vec<Rational>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly::constant(Rational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        XPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            XPoly::zero()
        } else {
            XPoly { coeffs: vec![c] }
        }
    }

    /// `c·x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        XPoly { coeffs }
    }

    /// Builds a polynomial from `x^0, x^1, …` coefficients, normalizing.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// The normalized coefficient list, `x^0` first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Multiplies every coefficient by `q`.
    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return XPoly::zero();
        }
        XPoly {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Substitution `x ↦ r·x`.
    pub fn scale_arg(&self, r: &Rational) -> Self {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    power = &power * r;
                }
                c * &power
            })
            .collect();
        XPoly::from_coeffs(coeffs)
    }

    /// Substitution `x ↦ x + c` (Taylor shift).
    pub fn shift_arg(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return self.clone();
        }
        let deg = self.coeffs.len() - 1;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, a) in self.coeffs.iter().enumerate() {
            let mut cpow = Rational::one();
            // contribute a·C(m,i)·c^{m−i} to x^i, descending so the power
            // of c can be built incrementally
            for i in (0..=m).rev() {
                let term = &(a * &Rational::binomial(m, i)) * &cpow;
                out[i] = &out[i] + &term;
                cpow = &cpow * c;
            }
        }
        XPoly::from_coeffs(out)
    }
}

macro_rules! poly_binop_impls {
    ($Op:ident, $method:ident, $imp:expr) => {
        impl $Op<&XPoly> for &XPoly {
            type Output = XPoly;
            fn $method(self, rhs: &XPoly) -> XPoly {
                $imp(self, rhs)
            }
        }
        impl $Op<XPoly> for &XPoly {
            type Output = XPoly;
            fn $method(self, rhs: XPoly) -> XPoly {
                $imp(self, &rhs)
            }
        }
        impl $Op<&XPoly> for XPoly {
            type Output = XPoly;
            fn $method(self, rhs: &XPoly) -> XPoly {
                $imp(&self, rhs)
            }
        }
        impl $Op<XPoly> for XPoly {
            type Output = XPoly;
            fn $method(self, rhs: XPoly) -> XPoly {
                $imp(&self, &rhs)
            }
        }
    };
}

fn add_impl(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|k| &a.coeff(k) + &b.coeff(k)).collect();
    XPoly::from_coeffs(coeffs)
}

fn sub_impl(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|k| &a.coeff(k) - &b.coeff(k)).collect();
    XPoly::from_coeffs(coeffs)
}

fn mul_impl(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_zero() || b.is_zero() {
        return XPoly::zero();
    }
    let mut coeffs = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ca) in a.coeffs.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = &coeffs[i + j] + &(ca * cb);
        }
    }
    XPoly::from_coeffs(coeffs)
}

poly_binop_impls!(Add, add, add_impl);
poly_binop_impls!(Sub, sub, sub_impl);
poly_binop_impls!(Mul, mul, mul_impl);

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        -&self
    }
}

impl CoeffRing for XPoly {
    fn zero() -> Self {
        XPoly::zero()
    }

    fn one() -> Self {
        XPoly::one()
    }

    fn is_zero(&self) -> bool {
        XPoly::is_zero(self)
    }

    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }

    fn sub(a: &Self, b: &Self) -> Self {
        a - b
    }

    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn neg(a: &Self) -> Self {
        -a
    }

    fn scale(a: &Self, q: &Rational) -> Self {
        a.scale(q)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct XPolyRepr {
    coeffs: Vec<Rational>,
}

impl Serialize for XPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        XPolyRepr {
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for XPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = XPolyRepr::deserialize(deserializer)?;
        Ok(XPoly::from_coeffs(repr.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn normal_form_strips_trailing_zeros() {
        let p = XPoly::from_coeffs(vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(p, XPoly::one());
        assert_eq!(p.degree(), Some(0));
        assert!(XPoly::from_coeffs(vec![q(0, 1)]).is_zero());
        assert_eq!(XPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let p = &XPoly::x() + &XPoly::one(); // 1 + x
        let m = &XPoly::x() - &XPoly::one(); // -1 + x
        assert_eq!(
            &p * &m,
            XPoly::from_coeffs(vec![q(-1, 1), q(0, 1), q(1, 1)])
        );
        assert_eq!(&p + &m, XPoly::monomial(q(2, 1), 1));
        assert_eq!(&p - &p, XPoly::zero());
        assert_eq!(-&p, XPoly::from_coeffs(vec![q(-1, 1), q(-1, 1)]));
    }

    #[test]
    fn eval_horner() {
        // 1 - x + x^2/2 at x = 3/2: 1 - 3/2 + 9/8 = 5/8
        let p = XPoly::from_coeffs(vec![q(1, 1), q(-1, 1), q(1, 2)]);
        assert_eq!(p.eval(&q(3, 2)), q(5, 8));
        assert_eq!(XPoly::zero().eval(&q(7, 1)), Rational::zero());
    }

    #[test]
    fn scale_arg_substitutes_rx() {
        // (x + x^2) with x ↦ 2x becomes 2x + 4x^2
        let p = XPoly::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 1)]);
        assert_eq!(
            p.scale_arg(&q(2, 1)),
            XPoly::from_coeffs(vec![q(0, 1), q(2, 1), q(4, 1)])
        );
        // scaling by zero keeps only the constant term
        assert_eq!(p.scale_arg(&q(0, 1)), XPoly::zero());
    }

    #[test]
    fn shift_arg_is_a_taylor_shift() {
        // (x^2)(x ↦ x+3) = 9 + 6x + x^2
        let p = XPoly::monomial(q(1, 1), 2);
        assert_eq!(
            p.shift_arg(&q(3, 1)),
            XPoly::from_coeffs(vec![q(9, 1), q(6, 1), q(1, 1)])
        );
        // shift then evaluate equals evaluate at the shifted point
        let p = XPoly::from_coeffs(vec![q(1, 3), q(-2, 1), q(5, 7), q(1, 1)]);
        let c = q(-5, 2);
        let x = q(4, 3);
        assert_eq!(p.shift_arg(&c).eval(&x), p.eval(&(&x + &c)));
    }

    #[test]
    fn display_format() {
        assert_eq!(XPoly::zero().to_string(), "0");
        let p = XPoly::from_coeffs(vec![q(-1, 2), q(1, 1), q(0, 1), q(-1, 6)]);
        assert_eq!(p.to_string(), "-1/2 + x - 1/6*x^3");
        assert_eq!(XPoly::monomial(q(1, 6), 3).to_string(), "1/6*x^3");
    }
}
