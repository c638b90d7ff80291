//! Generalized convolution triples (f, g, h).
//!
//! These satisfy `Σ_k f_k(x)·g_{n−k}(y) = h_n(x+y)` and are exactly the
//! triples built from series (A, B, Ψ) as `f_n = [t^n] A·e^{xΨ}`,
//! `g_n = [t^n] B·e^{xΨ}`, `h_n = [t^n] A·B·e^{xΨ}` when the constant terms
//! of A and B are invertible. Recovery inverts that construction exactly by
//! normalizing the generating functions, taking logs, and splitting off the
//! common x-linear part; every structural condition is re-verified, so this
//! doubles as a decision procedure for "is this a generalized family".
//!
//! The n!-rescaled form of these triples is the Sheffer-sequence form.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::bivar::XyPoly;
use crate::convolution::{family_from_psi, to_binomial_type, IdentityCheck, PolyFamily, Psi};
use crate::rational::Rational;
use crate::series::TruncSeries;
use crate::xpoly::XPoly;

/// The generating data (A, B, Ψ) of a generalized convolution triple.
/// Construction enforces A(0) ≠ 0, B(0) ≠ 0, and Ψ(0) = 0.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ShefferSpec {
    #[serde(rename = "A")]
    a: TruncSeries<Rational>,
    #[serde(rename = "B")]
    b: TruncSeries<Rational>,
    psi: Psi,
}

/// Three same-order polynomial families (f, g, h).
///
/// Triples built by [`triple_from_spec`] satisfy h_0(0) = f_0(0)·g_0(0);
/// arbitrary entries are accepted here so the checkers can examine
/// defective input.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyTriple {
    f: PolyFamily,
    g: PolyFamily,
    h: PolyFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShefferError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("series order {got} is below the requested triple order {needed}")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("the three families of a triple must share one order")]
    MismatchedOrders,
    #[error("f_0(0) and g_0(0) must be nonzero to recover a spec")]
    NonInvertibleConstant,
    #[error("not a generalized convolution family: {0}")]
    NotGeneralizedFamily(String),
}

impl ShefferSpec {
    pub fn new(
        a: TruncSeries<Rational>,
        b: TruncSeries<Rational>,
        psi: Psi,
    ) -> Result<Self, ShefferError> {
        if a.constant_term().is_zero() {
            return Err(ShefferError::InvalidSpec("A(0) must be nonzero".into()));
        }
        if b.constant_term().is_zero() {
            return Err(ShefferError::InvalidSpec("B(0) must be nonzero".into()));
        }
        Ok(ShefferSpec { a, b, psi })
    }

    pub fn a(&self) -> &TruncSeries<Rational> {
        &self.a
    }

    pub fn b(&self) -> &TruncSeries<Rational> {
        &self.b
    }

    pub fn psi(&self) -> &Psi {
        &self.psi
    }
}

impl FamilyTriple {
    pub fn new(f: PolyFamily, g: PolyFamily, h: PolyFamily) -> Result<Self, ShefferError> {
        if f.order() != g.order() || f.order() != h.order() {
            return Err(ShefferError::MismatchedOrders);
        }
        Ok(FamilyTriple { f, g, h })
    }

    pub fn f(&self) -> &PolyFamily {
        &self.f
    }

    pub fn g(&self) -> &PolyFamily {
        &self.g
    }

    pub fn h(&self) -> &PolyFamily {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    /// All three families cut to the given order. Panics past the order.
    pub fn truncated(&self, order: usize) -> Self {
        FamilyTriple {
            f: self.f.truncated(order),
            g: self.g.truncated(order),
            h: self.h.truncated(order),
        }
    }
}

#[derive(Deserialize)]
struct TripleRepr {
    f: PolyFamily,
    g: PolyFamily,
    h: PolyFamily,
}

impl<'de> Deserialize<'de> for FamilyTriple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TripleRepr::deserialize(deserializer)?;
        FamilyTriple::new(repr.f, repr.g, repr.h).map_err(D::Error::custom)
    }
}

fn lift(series: &TruncSeries<Rational>, order: usize) -> TruncSeries<XPoly> {
    TruncSeries::new(
        series.coeffs()[..=order]
            .iter()
            .map(|c| XPoly::constant(c.clone()))
            .collect(),
    )
}

/// Forward construction without the invertibility demands: builds the
/// coefficient families of `a·e^{xΨ}`, `b·e^{xΨ}`, and `a·b·e^{xΨ}`.
/// (The column-interpolation bridge needs this for arbitrary a, b.)
pub fn triple_from_series(
    a: &TruncSeries<Rational>,
    b: &TruncSeries<Rational>,
    psi: &Psi,
    n_max: usize,
) -> Result<FamilyTriple, ShefferError> {
    let shortest = a.order().min(b.order()).min(psi.order());
    if shortest < n_max {
        return Err(ShefferError::InsufficientOrder {
            needed: n_max,
            got: shortest,
        });
    }
    let exp_x_psi = family_from_psi(psi, n_max)
        .expect("psi order checked above")
        .generating_series();
    let a = lift(a, n_max);
    let b = lift(b, n_max);
    let f = a.mul(&exp_x_psi);
    let g = b.mul(&exp_x_psi);
    let h = a.mul(&g);
    let family = |s: TruncSeries<XPoly>| {
        PolyFamily::new(s.coeffs().to_vec()).expect("order n_max series is nonempty")
    };
    FamilyTriple::new(family(f), family(g), family(h))
}

/// Builds the triple `f_n = [t^n] A·e^{xΨ}`, `g_n = [t^n] B·e^{xΨ}`,
/// `h_n = [t^n] A·B·e^{xΨ}` for n ≤ n_max.
pub fn triple_from_spec(spec: &ShefferSpec, n_max: usize) -> Result<FamilyTriple, ShefferError> {
    triple_from_series(spec.a(), spec.b(), spec.psi(), n_max)
}

/// Normalized log of a family's generating function: `log(c⁻¹ · F(x,t))`.
/// Demands that f_0 be exactly the constant c, which the n = 0 instance of
/// the defining identity forces for genuine triples.
fn normalized_log(
    fam: &PolyFamily,
    c: &Rational,
    name: &str,
) -> Result<TruncSeries<XPoly>, ShefferError> {
    if *fam.entry(0) != XPoly::constant(c.clone()) {
        return Err(ShefferError::NotGeneralizedFamily(format!(
            "{name}_0 must be the constant polynomial {c}"
        )));
    }
    fam.generating_series()
        .scale(&c.recip())
        .log()
        .map_err(|_| {
            ShefferError::NotGeneralizedFamily(format!(
                "log of the normalized {name} generating function does not exist"
            ))
        })
}

/// Recovers the unique (A, B, Ψ) behind a generalized convolution triple,
/// verifying the log decomposition `L = Γ + xΨ`, `M = Δ + xΨ`,
/// `N = Γ + Δ + xΨ` on the way. Exact inverse of [`triple_from_spec`].
pub fn recover_spec(triple: &FamilyTriple) -> Result<ShefferSpec, ShefferError> {
    let alpha = triple.f().entry(0).coeff(0);
    let beta = triple.g().entry(0).coeff(0);
    if alpha.is_zero() || beta.is_zero() {
        return Err(ShefferError::NonInvertibleConstant);
    }
    let alpha_beta = &alpha * &beta;

    let l = normalized_log(triple.f(), &alpha, "f")?;
    let m = normalized_log(triple.g(), &beta, "g")?;
    let n = normalized_log(triple.h(), &alpha_beta, "h")?;

    let order = triple.order();
    let mut gamma = Vec::with_capacity(order + 1);
    let mut delta = Vec::with_capacity(order + 1);
    let mut psi = Vec::with_capacity(order + 1);
    for idx in 0..=order {
        let (ln, mn, nn) = (&l.coeffs()[idx], &m.coeffs()[idx], &n.coeffs()[idx]);
        for (label, poly) in [("L", ln), ("M", mn), ("N", nn)] {
            if poly.degree().is_some_and(|d| d > 1) {
                return Err(ShefferError::NotGeneralizedFamily(format!(
                    "{label}(x,t) has an x^k part with k ≥ 2 at t^{idx}"
                )));
            }
        }
        let psi_n = ln.coeff(1);
        if mn.coeff(1) != psi_n || nn.coeff(1) != psi_n {
            return Err(ShefferError::NotGeneralizedFamily(format!(
                "the x^1 parts of L, M, N disagree at t^{idx}"
            )));
        }
        let (gamma_n, delta_n) = (ln.coeff(0), mn.coeff(0));
        if (&gamma_n + &delta_n) != nn.coeff(0) {
            return Err(ShefferError::NotGeneralizedFamily(format!(
                "the x^0 parts do not satisfy Γ + Δ = N at t^{idx}"
            )));
        }
        gamma.push(gamma_n);
        delta.push(delta_n);
        psi.push(psi_n);
    }

    let a = TruncSeries::new(gamma)
        .exp()
        .expect("Γ(0) = log 1 = 0")
        .scale(&alpha);
    let b = TruncSeries::new(delta)
        .exp()
        .expect("Δ(0) = log 1 = 0")
        .scale(&beta);
    let psi = Psi::new(TruncSeries::new(psi)).expect("ψ_0 = 0 since L_0 = 0");
    ShefferSpec::new(a, b, psi)
}

/// Checks `Σ_k f_k(x)·g_{n−k}(y) = h_n(x+y)` as an exact bivariate
/// polynomial identity for every n up to the triple order.
pub fn check_generalized_convolution(triple: &FamilyTriple) -> IdentityCheck {
    for n in 0..=triple.order() {
        let mut lhs = XyPoly::zero();
        for k in 0..=n {
            lhs.add_product(triple.f().entry(k), triple.g().entry(n - k));
        }
        if lhs != XyPoly::sum_arg(triple.h().entry(n)) {
            return IdentityCheck::Violated { n };
        }
    }
    IdentityCheck::Verified {
        order: triple.order(),
    }
}

/// Rescales all three families by n!, producing the Sheffer-sequence form
/// that satisfies `Σ_k C(n,k)·F_k(x)·G_{n−k}(y) = H_n(x+y)`.
pub fn to_sheffer_sequence(triple: &FamilyTriple) -> FamilyTriple {
    FamilyTriple::new(
        to_binomial_type(triple.f()),
        to_binomial_type(triple.g()),
        to_binomial_type(triple.h()),
    )
    .expect("rescaling preserves orders")
}
