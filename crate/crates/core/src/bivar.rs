//! Bivariate polynomials in (x, y), used internally by the identity
//! checkers. Sparse representation with no stored zeros, so equality is
//! structural.

use std::collections::BTreeMap;

use crate::rational::Rational;
use crate::xpoly::XPoly;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct XyPoly {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl XyPoly {
    pub fn zero() -> Self {
        XyPoly::default()
    }

    fn insert_add(&mut self, key: (usize, usize), v: &Rational) {
        if v.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = &*existing + v;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, v.clone());
            }
        }
    }

    /// Adds the separable product `p(x)·q(y)`.
    pub fn add_product(&mut self, p: &XPoly, q: &XPoly) {
        for (i, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.coeffs().iter().enumerate() {
                self.insert_add((i, j), &(a * b));
            }
        }
    }

    /// Adds `s`-scaled `other`.
    pub fn add_scaled(&mut self, other: &XyPoly, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (key, v) in &other.terms {
            self.insert_add(*key, &(v * s));
        }
    }

    /// The substitution `p(x + y)` expanded in (x, y).
    pub fn sum_arg(p: &XPoly) -> Self {
        let mut out = XyPoly::zero();
        for (m, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..=m {
                out.insert_add((i, m - i), &(c * &Rational::binomial(m, i)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn product_and_sum_arg_agree_on_the_seed_identity() {
        // x·1 + 1·y expanded two ways
        let x = XPoly::x();
        let one = XPoly::one();
        let mut lhs = XyPoly::zero();
        lhs.add_product(&x, &one);
        lhs.add_product(&one, &x);
        assert_eq!(lhs, XyPoly::sum_arg(&x));
    }

    #[test]
    fn sum_arg_expands_binomially() {
        // (x+y)^2 = x^2 + 2xy + y^2
        let p = XPoly::monomial(q(1, 1), 2);
        let e = XyPoly::sum_arg(&p);
        let mut expected = XyPoly::zero();
        expected.insert_add((2, 0), &q(1, 1));
        expected.insert_add((1, 1), &q(2, 1));
        expected.insert_add((0, 2), &q(1, 1));
        assert_eq!(e, expected);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = XPoly::x();
        let one = XPoly::one();
        let mut p = XyPoly::zero();
        p.add_product(&x, &one);
        let mut m = XyPoly::zero();
        m.add_product(&x, &one);
        p.add_scaled(&m, &q(-1, 1));
        assert_eq!(p, XyPoly::zero());
    }
}
