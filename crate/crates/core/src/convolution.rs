//! Convolution families of polynomials.
//!
//! A convolution family is a sequence (f_n)_{n≥0} of polynomials satisfying
//! `Σ_k f_k(x)·f_{n−k}(y) = f_n(x+y)` for every n. Over a ring containing
//! the rationals these are exactly the sequences `f_n(x) = [t^n] e^{x·Ψ(t)}`
//! for a power series Ψ with Ψ(0) = 0 (the nonzero-Ψ(0) case is rejected
//! here because `e^{ψ₀x}` is not a polynomial over ℚ).
//!
//! This module provides the forward construction from Ψ, the converse
//! recovery of Ψ from a family (a validating decision procedure: it
//! re-verifies the structure instead of trusting the caller), and exact
//! verifiers for the full, weak (x = y), and multinomial identities.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bivar::XyPoly;
use crate::rational::Rational;
use crate::series::TruncSeries;
use crate::xpoly::XPoly;

/// The exponent series Ψ(t) of a polynomial convolution family.
/// Construction enforces Ψ(0) = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Psi {
    series: TruncSeries<Rational>,
}

/// A finite prefix (f_0, …, f_N) of a polynomial family.
///
/// Families produced by [`family_from_psi`] satisfy deg f_n ≤ n and
/// f_n(0) = 0 for n ≥ 1; arbitrary entries are accepted here so the
/// checkers can examine defective input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyFamily {
    entries: Vec<XPoly>,
}

/// Result of [`recover_psi`]: either the unique Ψ, or the identically-zero
/// family (which corresponds to no Ψ).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RecoveredPsi {
    Psi(Psi),
    ZeroFamily,
}

/// Outcome of an exact identity check, carrying the certified range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IdentityCheck {
    /// The identity holds for every n ≤ `order`.
    Verified { order: usize },
    /// First n at which the identity fails.
    Violated { n: usize },
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        matches!(self, IdentityCheck::Verified { .. })
    }

    pub fn witness(&self) -> Option<usize> {
        match self {
            IdentityCheck::Verified { .. } => None,
            IdentityCheck::Violated { n } => Some(*n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvolutionError {
    #[error(
        "Ψ(0) must be 0: over ℚ the prefactor e^{{ψ₀x}} is not a polynomial, \
         so families with ψ₀ ≠ 0 are not representable"
    )]
    NonzeroPsi0,
    #[error("series order {got} is below the requested family order {needed}")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("a polynomial family needs at least the n = 0 entry")]
    EmptyFamily,
    #[error("f_0(0) = {0} is neither 0 nor 1, which no weak convolution family over ℚ allows")]
    NotIdempotentConstant(Rational),
    #[error("not a convolution family: {0}")]
    NotConvolutionFamily(String),
    #[error("unknown catalog key `{0}` (expected binomial, falling-factorial, rising-factorial, or bell)")]
    UnknownCatalogKey(String),
}

impl Psi {
    /// Wraps a series as a Ψ, rejecting a nonzero constant term.
    pub fn new(series: TruncSeries<Rational>) -> Result<Self, ConvolutionError> {
        if !series.constant_term().is_zero() {
            return Err(ConvolutionError::NonzeroPsi0);
        }
        Ok(Psi { series })
    }

    pub fn series(&self) -> &TruncSeries<Rational> {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }
}

impl Serialize for Psi {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.series.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Psi {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let series = TruncSeries::<Rational>::deserialize(deserializer)?;
        Psi::new(series).map_err(D::Error::custom)
    }
}

impl PolyFamily {
    /// Wraps entries (f_0, …, f_N); the family order is N.
    pub fn new(entries: Vec<XPoly>) -> Result<Self, ConvolutionError> {
        if entries.is_empty() {
            return Err(ConvolutionError::EmptyFamily);
        }
        Ok(PolyFamily { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[XPoly] {
        &self.entries
    }

    pub fn entry(&self, n: usize) -> &XPoly {
        &self.entries[n]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(XPoly::is_zero)
    }

    /// The prefix (f_0, …, f_order). Panics past the family order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot truncate a family of order {} up to {}",
            self.order(),
            order
        );
        PolyFamily {
            entries: self.entries[..=order].to_vec(),
        }
    }

    /// The bivariate generating function F(x,t) = Σ f_n(x)·t^n as a series
    /// in t over the polynomial ring in x.
    pub fn generating_series(&self) -> TruncSeries<XPoly> {
        TruncSeries::new(self.entries.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    order: usize,
    entries: Vec<EntryRepr>,
}

impl Serialize for PolyFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // entry n lists its x^0..x^n coefficients (longer only if the entry
        // breaks the degree bound)
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let len = (n + 1).max(p.coeffs().len());
                let mut coeffs = p.coeffs().to_vec();
                coeffs.resize(len, Rational::zero());
                EntryRepr { coeffs }
            })
            .collect();
        FamilyRepr {
            order: self.order(),
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FamilyRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "family of order {} must list exactly {} entries, found {}",
                repr.order,
                repr.order + 1,
                repr.entries.len()
            )));
        }
        PolyFamily::new(
            repr.entries
                .into_iter()
                .map(|e| XPoly::from_coeffs(e.coeffs))
                .collect(),
        )
        .map_err(D::Error::custom)
    }
}

/// Builds the convolution family f_n(x) = [t^n] e^{x·Ψ(t)} for n ≤ n_max,
/// computed as `f_n = Σ_{k≤n} (x^k/k!)·[t^n] Ψ(t)^k`.
pub fn family_from_psi(psi: &Psi, n_max: usize) -> Result<PolyFamily, ConvolutionError> {
    if psi.order() < n_max {
        return Err(ConvolutionError::InsufficientOrder {
            needed: n_max,
            got: psi.order(),
        });
    }
    let t = psi.series().truncated(n_max);
    // entry_coeffs[n][k] = [t^n] Ψ^k / k!
    let mut entry_coeffs: Vec<Vec<Rational>> = vec![Vec::with_capacity(n_max + 1); n_max + 1];
    let mut power = TruncSeries::<Rational>::one(n_max);
    let mut inv_factorial = Rational::one();
    for k in 0..=n_max {
        if k > 0 {
            power = power.mul(&t);
            inv_factorial = &inv_factorial * &Rational::new(1, k as i64);
        }
        for (n, c) in power.coeffs().iter().enumerate() {
            entry_coeffs[n].push(c * &inv_factorial);
        }
    }
    // Ψ(0) = 0 makes [t^n]Ψ^k vanish for k > n, so deg f_n ≤ n and
    // f_n(0) = 0 for n ≥ 1 hold by construction.
    PolyFamily::new(entry_coeffs.into_iter().map(XPoly::from_coeffs).collect())
}

/// Recovers the unique Ψ behind a weak convolution family, re-verifying the
/// structure on the way: forms F(x,t), takes L = log F, and demands that
/// every power of x other than x^1 vanish from L. Returns
/// [`RecoveredPsi::ZeroFamily`] for the identically-zero family.
pub fn recover_psi(fam: &PolyFamily) -> Result<RecoveredPsi, ConvolutionError> {
    let f0 = fam.entry(0);
    let f00 = f0.coeff(0);
    if f00.is_zero() {
        if fam.is_zero() {
            return Ok(RecoveredPsi::ZeroFamily);
        }
        return Err(ConvolutionError::NotConvolutionFamily(
            "f_0(0) = 0 forces the whole family to vanish, but some entry is nonzero".into(),
        ));
    }
    if !f00.is_one() {
        return Err(ConvolutionError::NotIdempotentConstant(f00));
    }
    if *f0 != XPoly::one() {
        // the weak identity at n = 0 reads f_0(x)^2 = f_0(2x), which forces
        // f_0 to be a constant idempotent
        return Err(ConvolutionError::NotConvolutionFamily(
            "f_0 must be the constant polynomial 1".into(),
        ));
    }
    let f = fam.generating_series();
    let l = f.log().expect("constant term is 1");
    let mut psi_coeffs = Vec::with_capacity(fam.order() + 1);
    for (n, poly) in l.coeffs().iter().enumerate() {
        for (k, c) in poly.coeffs().iter().enumerate() {
            if k != 1 && !c.is_zero() {
                return Err(ConvolutionError::NotConvolutionFamily(format!(
                    "log F(x,t) has a nonzero x^{k} part at t^{n}"
                )));
            }
        }
        psi_coeffs.push(poly.coeff(1));
    }
    let psi = Psi::new(TruncSeries::new(psi_coeffs)).expect("log F has zero t^0 coefficient");
    Ok(RecoveredPsi::Psi(psi))
}

/// Checks `Σ_k f_k(x)·f_{n−k}(y) = f_n(x+y)` as an exact bivariate
/// polynomial identity for every n up to the family order.
pub fn check_convolution(fam: &PolyFamily) -> IdentityCheck {
    for n in 0..=fam.order() {
        let mut lhs = XyPoly::zero();
        for k in 0..=n {
            lhs.add_product(fam.entry(k), fam.entry(n - k));
        }
        if lhs != XyPoly::sum_arg(fam.entry(n)) {
            return IdentityCheck::Violated { n };
        }
    }
    IdentityCheck::Verified { order: fam.order() }
}

/// Checks the x = y restriction `Σ_k f_k(x)·f_{n−k}(x) = f_n(2x)`.
pub fn check_weak_convolution(fam: &PolyFamily) -> IdentityCheck {
    let two = Rational::from_int(2);
    for n in 0..=fam.order() {
        let mut lhs = XPoly::zero();
        for k in 0..=n {
            lhs = &lhs + &(fam.entry(k) * fam.entry(n - k));
        }
        if lhs != fam.entry(n).scale_arg(&two) {
            return IdentityCheck::Violated { n };
        }
    }
    IdentityCheck::Verified { order: fam.order() }
}

/// Checks the multinomial identity
/// `Σ_{k_1+…+k_m=n} f_{k_1}(x_1)···f_{k_m}(x_m) = f_n(x_1+…+x_m)`
/// for all n ≤ min(n_max, family order). Requires m ≥ 1.
///
/// m = 2 is the exact bivariate expansion. For m ≥ 3 the identity is
/// decided by full m-variate expansion, organized per coefficient of the
/// tail variables x_3..x_m: for every exponent vector (d_3, …, d_m) the two
/// sides' coefficients are bivariate polynomials in (x_1, x_2) and are
/// compared exactly. Nothing is sampled.
pub fn check_multinomial(fam: &PolyFamily, m: usize, n_max: usize) -> IdentityCheck {
    assert!(m >= 1, "the multinomial identity needs m >= 1");
    let top = n_max.min(fam.order());
    if m == 1 {
        // Σ_{k_1=n} f_{k_1}(x_1) = f_n(x_1) holds identically
        return IdentityCheck::Verified { order: top };
    }

    // pair sums T_j(x,y) = Σ_{a+b=j} f_a(x)·f_b(y), shared by both branches
    let pair_sums: Vec<XyPoly> = (0..=top)
        .map(|j| {
            let mut t = XyPoly::zero();
            for a in 0..=j {
                t.add_product(fam.entry(a), fam.entry(j - a));
            }
            t
        })
        .collect();

    if m == 2 {
        for (n, sum) in pair_sums.iter().enumerate() {
            if *sum != XyPoly::sum_arg(fam.entry(n)) {
                return IdentityCheck::Violated { n };
            }
        }
        return IdentityCheck::Verified { order: top };
    }

    let degree_bound = fam
        .entries
        .iter()
        .take(top + 1)
        .filter_map(XPoly::degree)
        .max()
        .unwrap_or(0);
    // coefficient series S_d(t) = Σ_k [x^d]f_k(x) · t^k; the LHS coefficient
    // of x_3^{d_3}···x_m^{d_m} at t^n is then Σ_j T_j·[t^{n−j}] Π_i S_{d_i}
    let coeff_series: Vec<TruncSeries<Rational>> = (0..=degree_bound)
        .map(|d| {
            TruncSeries::new(
                fam.entries
                    .iter()
                    .take(top + 1)
                    .map(|p| p.coeff(d))
                    .collect(),
            )
        })
        .collect();

    let mut exponents = vec![0usize; m - 2];
    loop {
        let mut weight = TruncSeries::<Rational>::one(top);
        for &d in &exponents {
            weight = weight.mul(&coeff_series[d]);
        }
        let sigma: usize = exponents.iter().sum();
        for n in 0..=top {
            let mut lhs = XyPoly::zero();
            for (j, t) in pair_sums.iter().enumerate().take(n + 1) {
                lhs.add_scaled(t, &weight.coeffs()[n - j]);
            }
            // RHS coefficient of Π x_i^{d_i} in f_n(x_1+…+x_m): expand
            // f_n = Σ a_e·(x_1+…+x_m)^e and collect the multinomial weights
            // into a polynomial in w = x_1+x_2, then expand that in (x,y)
            let mut rhs_poly = Vec::new();
            for (e, a) in fam.entry(n).coeffs().iter().enumerate() {
                if e < sigma {
                    rhs_poly.push(Rational::zero());
                    continue;
                }
                let mut weight_coeff = a.clone();
                let mut remaining = e;
                for &d in &exponents {
                    weight_coeff = &weight_coeff * &Rational::binomial(remaining, d);
                    remaining -= d;
                }
                rhs_poly.push(weight_coeff);
            }
            // rhs_poly[e] multiplies w^{e−σ}
            let q = XPoly::from_coeffs(rhs_poly.into_iter().skip(sigma).collect());
            if lhs != XyPoly::sum_arg(&q) {
                return IdentityCheck::Violated { n };
            }
        }
        // odometer over {0..D}^{m-2}
        let mut idx = 0;
        loop {
            if idx == exponents.len() {
                return IdentityCheck::Verified { order: top };
            }
            if exponents[idx] < degree_bound {
                exponents[idx] += 1;
                break;
            }
            exponents[idx] = 0;
            idx += 1;
        }
    }
}

/// Rescales f_n to F_n = n!·f_n, turning the convolution identity into the
/// binomial-type identity `Σ_k C(n,k)·F_k(x)·F_{n−k}(y) = F_n(x+y)`.
pub fn to_binomial_type(fam: &PolyFamily) -> PolyFamily {
    PolyFamily::new(
        fam.entries
            .iter()
            .enumerate()
            .map(|(n, p)| p.scale(&Rational::factorial(n)))
            .collect(),
    )
    .expect("input family is nonempty")
}

/// The four built-in Ψ catalog keys.
pub const CATALOG_KEYS: [&str; 4] = ["binomial", "falling-factorial", "rising-factorial", "bell"];

/// Taylor expansion, to the requested order, of the catalog Ψ:
/// `t`, `log(1+t)`, `−log(1−t)`, or `e^t − 1`.
pub fn builtin_psi(name: &str, order: usize) -> Result<Psi, ConvolutionError> {
    let series = match name {
        "binomial" => TruncSeries::variable(order),
        "falling-factorial" => {
            let one_plus_t = TruncSeries::padded(vec![Rational::one(), Rational::one()], order);
            one_plus_t.log().expect("constant term is 1")
        }
        "rising-factorial" => {
            let one_minus_t =
                TruncSeries::padded(vec![Rational::one(), Rational::from_int(-1)], order);
            one_minus_t.log().expect("constant term is 1").neg()
        }
        "bell" => {
            let e = TruncSeries::<Rational>::variable(order)
                .exp()
                .expect("t has zero constant term");
            e.sub(&TruncSeries::one(order))
        }
        other => return Err(ConvolutionError::UnknownCatalogKey(other.to_string())),
    };
    Psi::new(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(coeffs: &[(i64, i64)]) -> XPoly {
        XPoly::from_coeffs(coeffs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn binomial_family(order: usize) -> PolyFamily {
        let psi = builtin_psi("falling-factorial", order).unwrap();
        family_from_psi(&psi, order).unwrap()
    }

    #[test]
    fn psi_rejects_nonzero_constant_term() {
        let s = TruncSeries::one(3);
        assert_eq!(Psi::new(s), Err(ConvolutionError::NonzeroPsi0));
    }

    #[test]
    fn family_from_psi_t_gives_monomials_over_factorials() {
        let psi = builtin_psi("binomial", 3).unwrap();
        let fam = family_from_psi(&psi, 3).unwrap();
        assert_eq!(*fam.entry(0), XPoly::one());
        assert_eq!(*fam.entry(1), XPoly::x());
        assert_eq!(*fam.entry(2), XPoly::monomial(q(1, 2), 2));
        assert_eq!(*fam.entry(3), XPoly::monomial(q(1, 6), 3));
    }

    #[test]
    fn family_from_log_one_plus_t_gives_binomial_coefficients() {
        let fam = binomial_family(2);
        // f_2(x) = x(x−1)/2
        assert_eq!(*fam.entry(2), poly(&[(0, 1), (-1, 2), (1, 2)]));
    }

    #[test]
    fn family_from_bell_psi_gives_stirling_coefficients() {
        let psi = builtin_psi("bell", 3).unwrap();
        let fam = family_from_psi(&psi, 3).unwrap();
        // 3!·f_3(x) = x + 3x² + x³
        let b3 = fam.entry(3).scale(&Rational::factorial(3));
        assert_eq!(b3, poly(&[(0, 1), (1, 1), (3, 1), (1, 1)]));
    }

    #[test]
    fn family_from_psi_demands_enough_order() {
        let psi = builtin_psi("bell", 2).unwrap();
        assert_eq!(
            family_from_psi(&psi, 5),
            Err(ConvolutionError::InsufficientOrder { needed: 5, got: 2 })
        );
    }

    #[test]
    fn recover_psi_from_monomial_family() {
        let fam = PolyFamily::new(vec![
            XPoly::one(),
            XPoly::x(),
            XPoly::monomial(q(1, 2), 2),
            XPoly::monomial(q(1, 6), 3),
        ])
        .unwrap();
        let recovered = recover_psi(&fam).unwrap();
        assert_eq!(
            recovered,
            RecoveredPsi::Psi(Psi::new(TruncSeries::variable(3)).unwrap())
        );
    }

    #[test]
    fn recover_psi_zero_family() {
        let fam = PolyFamily::new(vec![XPoly::zero(); 4]).unwrap();
        assert_eq!(recover_psi(&fam).unwrap(), RecoveredPsi::ZeroFamily);
        let half_zero = PolyFamily::new(vec![XPoly::zero(), XPoly::x()]).unwrap();
        assert!(matches!(
            recover_psi(&half_zero),
            Err(ConvolutionError::NotConvolutionFamily(_))
        ));
    }

    #[test]
    fn families_truncate_to_prefixes() {
        let fam = binomial_family(5);
        let cut = fam.truncated(2);
        assert_eq!(cut.order(), 2);
        assert_eq!(cut.entry(2), fam.entry(2));
    }

    #[test]
    fn recover_psi_rejects_perturbed_family() {
        // (1, x, x²/2 + 1): the weak identity already fails at n = 2
        // (2(x²/2 + 1) + x² = 2x² + 2, but f_2(2x) = 2x² + 1)
        let fam = PolyFamily::new(vec![
            XPoly::one(),
            XPoly::x(),
            poly(&[(1, 1), (0, 1), (1, 2)]),
        ])
        .unwrap();
        assert_eq!(
            check_weak_convolution(&fam),
            IdentityCheck::Violated { n: 2 }
        );
        assert!(matches!(
            recover_psi(&fam),
            Err(ConvolutionError::NotConvolutionFamily(_))
        ));
    }

    #[test]
    fn perturbing_by_x_lands_on_another_family() {
        // Adding x to f_2 of the (1, x, x²/2) prefix is NOT a defect: x is
        // an eigenvector of the doubling substitution, and (1, x, x²/2 + x)
        // is exactly the order-2 prefix of the Ψ = t + t² family.
        let fam = PolyFamily::new(vec![
            XPoly::one(),
            XPoly::x(),
            poly(&[(0, 1), (1, 1), (1, 2)]),
        ])
        .unwrap();
        assert!(check_weak_convolution(&fam).passed());
        let expected = Psi::new(TruncSeries::new(vec![q(0, 1), q(1, 1), q(1, 1)])).unwrap();
        assert_eq!(
            recover_psi(&fam).unwrap(),
            RecoveredPsi::Psi(expected.clone())
        );
        assert_eq!(family_from_psi(&expected, 2).unwrap(), fam);
    }

    #[test]
    fn recover_psi_rejects_non_idempotent_constant() {
        let fam = PolyFamily::new(vec![XPoly::constant(q(2, 1))]).unwrap();
        assert_eq!(
            recover_psi(&fam),
            Err(ConvolutionError::NotIdempotentConstant(q(2, 1)))
        );
    }

    #[test]
    fn recover_psi_rejects_nonconstant_f0() {
        let fam = PolyFamily::new(vec![&XPoly::one() + &XPoly::x(), XPoly::x()]).unwrap();
        assert!(matches!(
            recover_psi(&fam),
            Err(ConvolutionError::NotConvolutionFamily(_))
        ));
    }

    #[test]
    fn check_convolution_on_binomial_family() {
        assert_eq!(
            check_convolution(&binomial_family(6)),
            IdentityCheck::Verified { order: 6 }
        );
    }

    #[test]
    fn check_convolution_catches_a_perturbation() {
        let mut entries = binomial_family(4).entries().to_vec();
        entries[2] = &entries[2] + &XPoly::one();
        let fam = PolyFamily::new(entries).unwrap();
        assert_eq!(check_convolution(&fam), IdentityCheck::Violated { n: 2 });
        assert_eq!(check_convolution(&fam).witness(), Some(2));
    }

    #[test]
    fn check_convolution_on_one_zero_zero() {
        let fam = PolyFamily::new(vec![XPoly::one(), XPoly::zero(), XPoly::zero()]).unwrap();
        assert!(check_convolution(&fam).passed());
    }

    #[test]
    fn check_weak_on_binomial_family() {
        assert!(check_weak_convolution(&binomial_family(6)).passed());
    }

    #[test]
    fn check_weak_rejects_unnormalized_square() {
        // (1, x, x²): Σ f_k f_{2−k} = 3x² but f_2(2x) = 4x²
        let fam =
            PolyFamily::new(vec![XPoly::one(), XPoly::x(), XPoly::monomial(q(1, 1), 2)]).unwrap();
        assert_eq!(
            check_weak_convolution(&fam),
            IdentityCheck::Violated { n: 2 }
        );
    }

    #[test]
    fn multinomial_m3_on_binomial_family() {
        let fam = binomial_family(4);
        assert_eq!(
            check_multinomial(&fam, 3, 4),
            IdentityCheck::Verified { order: 4 }
        );
    }

    #[test]
    fn multinomial_m1_is_trivially_true() {
        let fam =
            PolyFamily::new(vec![XPoly::constant(q(5, 3)), XPoly::monomial(q(7, 2), 4)]).unwrap();
        assert!(check_multinomial(&fam, 1, 1).passed());
    }

    #[test]
    fn multinomial_m2_matches_check_convolution() {
        let mut entries = binomial_family(5).entries().to_vec();
        entries[3] = &entries[3] + &XPoly::monomial(q(1, 1), 2);
        let fam = PolyFamily::new(entries).unwrap();
        let full = check_convolution(&fam);
        let m2 = check_multinomial(&fam, 2, 5);
        assert_eq!(full, m2);
        assert_eq!(m2.witness(), Some(3));
    }

    #[test]
    fn multinomial_m3_detects_sign_flipped_family() {
        // f_n = −[t^n] e^{xΨ} satisfies the m = 3 identity but not m = 2,
        // so the m ≥ 3 checker must not just iterate the bivariate one.
        let base = binomial_family(3);
        let flipped =
            PolyFamily::new(base.entries().iter().map(|p| p.scale(&q(-1, 1))).collect()).unwrap();
        assert!(!check_convolution(&flipped).passed());
        assert!(check_multinomial(&flipped, 3, 3).passed());
        assert!(!check_multinomial(&flipped, 2, 3).passed());
    }

    #[test]
    fn to_binomial_type_rescales_by_factorials() {
        let psi = builtin_psi("binomial", 3).unwrap();
        let fam = family_from_psi(&psi, 3).unwrap();
        let bt = to_binomial_type(&fam);
        for n in 0..=3 {
            assert_eq!(*bt.entry(n), XPoly::monomial(Rational::one(), n));
        }
        // Bell: F_n = B_n(x)
        let bell = family_from_psi(&builtin_psi("bell", 2).unwrap(), 2).unwrap();
        let b = to_binomial_type(&bell);
        assert_eq!(*b.entry(2), poly(&[(0, 1), (1, 1), (1, 1)]));
        // zero family stays zero
        let z = PolyFamily::new(vec![XPoly::zero(); 3]).unwrap();
        assert!(to_binomial_type(&z).is_zero());
    }

    #[test]
    fn builtin_catalog_expansions() {
        assert_eq!(
            builtin_psi("falling-factorial", 3).unwrap().series(),
            &TruncSeries::new(vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 3)])
        );
        assert_eq!(
            builtin_psi("rising-factorial", 3).unwrap().series(),
            &TruncSeries::new(vec![q(0, 1), q(1, 1), q(1, 2), q(1, 3)])
        );
        assert_eq!(
            builtin_psi("bell", 3).unwrap().series(),
            &TruncSeries::new(vec![q(0, 1), q(1, 1), q(1, 2), q(1, 6)])
        );
        assert_eq!(
            builtin_psi("binomial", 3).unwrap().series(),
            &TruncSeries::variable(3)
        );
        assert!(matches!(
            builtin_psi("catalan", 3),
            Err(ConvolutionError::UnknownCatalogKey(_))
        ));
    }

    #[test]
    fn family_json_pads_entries_to_their_index() {
        let psi = builtin_psi("binomial", 2).unwrap();
        let fam = family_from_psi(&psi, 2).unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        assert_eq!(
            json,
            r#"{"order":2,"entries":[{"coeffs":["1"]},{"coeffs":["0","1"]},{"coeffs":["0","0","1/2"]}]}"#
        );
        let back: PolyFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fam);
    }
}
