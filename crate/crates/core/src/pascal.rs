//! Pascal-like matrix triples and wide-sense Riordan arrays.
//!
//! Infinite matrices A, B, C satisfy the matrix convolution identity
//! `Σ_j a_{ij}·b_{ℓ,n−j} = c_{i+ℓ,n}` exactly when their row-generating
//! series have the form `A_i = f·h^i`, `B_i = g·h^i`, `C_i = f·g·h^i` (for
//! invertible corners). Blocks here are finite truncations with explicit
//! (rows, cols); every verifier quantifies only over indices fully inside
//! the block and reports the range it certified.
//!
//! The triangular specialization is rigid: a lower-triangular solution of
//! the single-matrix identity is forced to be `κ^{i−j}·λ^j·C(i,j)`, a
//! rescaled Pascal matrix ([`classify_nogo`]). Dropping triangularity opens
//! the wide-sense Riordan world ([`riordan_array`] with h(0) ≠ 0), and when
//! h(0) = 1 the matrix columns are interpolated by the polynomial families
//! of the convolution machinery ([`column_interpolation_bridge`]).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::convolution::Psi;
use crate::rational::Rational;
use crate::series::TruncSeries;
use crate::sheffer::{triple_from_series, FamilyTriple, ShefferError};

/// A finite `rows × cols` block of an infinite matrix, every entry exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixBlock {
    data: Vec<Vec<Rational>>,
}

/// Row-series data (f, g, h) for a Pascal-like triple. `h` is arbitrary —
/// h(0) ∉ {0, 1} included; only recovery outputs guarantee f(0), g(0) ≠ 0.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RowSeriesSpec {
    f: TruncSeries<Rational>,
    g: TruncSeries<Rational>,
    h: TruncSeries<Rational>,
}

/// Outcome of [`check_matrix_identity`], with the certified index range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MatrixCheck {
    /// Verified for every in-block instance: i + ℓ ≤ `max_row_sum` and
    /// n ≤ `max_col` (with i, ℓ inside the A and B blocks).
    Verified { max_row_sum: usize, max_col: usize },
    /// First violated instance, in lexicographic (i, ℓ, n) order.
    Violated { i: usize, l: usize, n: usize },
}

impl MatrixCheck {
    pub fn passed(&self) -> bool {
        matches!(self, MatrixCheck::Verified { .. })
    }

    pub fn witness(&self) -> Option<(usize, usize, usize)> {
        match self {
            MatrixCheck::Verified { .. } => None,
            MatrixCheck::Violated { i, l, n } => Some((*i, *l, *n)),
        }
    }
}

/// Result of [`classify_corollary4`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Corollary4 {
    /// A and B lower-triangular in row 0: rows are α·hⁱ, β·hⁱ, αβ·hⁱ.
    PowerRows {
        alpha: Rational,
        beta: Rational,
        h: TruncSeries<Rational>,
    },
    /// Additionally some matrix is lower-triangular in row 1: h = κ + λu
    /// and every entry is α·κ^{i−j}·λ^j·C(i,j) (resp. β·, αβ·).
    RescaledPascal {
        alpha: Rational,
        beta: Rational,
        kappa: Rational,
        lambda: Rational,
    },
}

/// Result of [`classify_nogo`]: the rescaling of the Pascal matrix,
/// `l_{ij} = κ^{i−j}·λ^j·C(i,j)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NogoForm {
    pub kappa: Rational,
    pub lambda: Rational,
}

/// Verified output of [`column_interpolation_bridge`]: polynomial families
/// whose values at integer rows reproduce the matrix blocks, i.e.
/// f_n(i) = a_{in} for all 0 ≤ i ≤ i_max and 0 ≤ n ≤ n_max (and likewise
/// g ↔ B, h ↔ C).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BridgeReport {
    pub interpolants: FamilyTriple,
    pub i_max: usize,
    pub n_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PascalError {
    #[error("row {row} is outside a block with {rows} rows")]
    RowOutOfRange { row: usize, rows: usize },
    #[error("invalid block shape: {0}")]
    InvalidShape(String),
    #[error("series order {got} is below the required order {needed}")]
    InsufficientOrder { needed: usize, got: usize },
    #[error("block too small: need at least {min_rows} rows and {min_cols} cols")]
    BlockTooSmall { min_rows: usize, min_cols: usize },
    #[error("a_00 and b_00 must be nonzero")]
    NonInvertibleCorner,
    #[error("not a Pascal-like triple: {0}")]
    NotPascalLike(String),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("l_00 = {0}, but a lower-triangular solution forces l_00 = 1")]
    CornerNotOne(Rational),
    #[error("entry ({i},{j}) deviates from the κ,λ binomial form; this contradicts the verified identity")]
    FormViolation { i: usize, j: usize },
    #[error("h(0) must be exactly 1 for the column-interpolation bridge (log h is undefined over ℚ otherwise)")]
    HNotUnitConstant,
    #[error("interpolant {family}_{n} fails to reproduce entry ({i},{n}); this contradicts the construction")]
    BridgeMismatch { family: char, i: usize, n: usize },
}

impl MatrixBlock {
    /// Wraps a rectangular, nonempty grid of entries.
    pub fn new(data: Vec<Vec<Rational>>) -> Result<Self, PascalError> {
        if data.is_empty() || data[0].is_empty() {
            return Err(PascalError::InvalidShape(
                "a block needs at least one entry".into(),
            ));
        }
        let cols = data[0].len();
        if data.iter().any(|row| row.len() != cols) {
            return Err(PascalError::InvalidShape("ragged rows".into()));
        }
        Ok(MatrixBlock { data })
    }

    /// Builds a block entrywise.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        assert!(rows > 0 && cols > 0, "a block needs at least one entry");
        MatrixBlock {
            data: (0..rows)
                .map(|i| (0..cols).map(|j| f(i, j)).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.data[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    /// Replaces one entry (handy for perturbation tests).
    pub fn set_entry(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i][j] = value;
    }

    pub fn transpose(&self) -> Self {
        MatrixBlock::from_fn(self.cols(), self.rows(), |i, j| self.data[j][i].clone())
    }

    /// Tab-separated `p/q` strings, one row per line.
    pub fn to_tsv(&self) -> String {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .map(Rational::to_string)
                    .collect::<Vec<_>>()
                    .join("\t")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Serialize, Deserialize)]
struct BlockRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Serialize for MatrixBlock {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BlockRepr {
            rows: self.rows(),
            cols: self.cols(),
            data: self.data.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixBlock {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = BlockRepr::deserialize(deserializer)?;
        let block = MatrixBlock::new(repr.data).map_err(D::Error::custom)?;
        if block.rows() != repr.rows || block.cols() != repr.cols {
            return Err(D::Error::custom(format!(
                "declared shape {}×{} does not match the {}×{} data grid",
                repr.rows,
                repr.cols,
                block.rows(),
                block.cols()
            )));
        }
        Ok(block)
    }
}

impl RowSeriesSpec {
    pub fn new(
        f: TruncSeries<Rational>,
        g: TruncSeries<Rational>,
        h: TruncSeries<Rational>,
    ) -> Self {
        RowSeriesSpec { f, g, h }
    }

    pub fn f(&self) -> &TruncSeries<Rational> {
        &self.f
    }

    pub fn g(&self) -> &TruncSeries<Rational> {
        &self.g
    }

    pub fn h(&self) -> &TruncSeries<Rational> {
        &self.h
    }
}

/// The row-generating series of row i: `A_i(u) = Σ_j a_{ij}·u^j`, of order
/// cols − 1.
pub fn row_series(m: &MatrixBlock, i: usize) -> Result<TruncSeries<Rational>, PascalError> {
    if i >= m.rows() {
        return Err(PascalError::RowOutOfRange {
            row: i,
            rows: m.rows(),
        });
    }
    Ok(TruncSeries::new(m.data[i].clone()))
}

/// Builds the three blocks with row series `f·h^i`, `g·h^i`, `f·g·h^i`,
/// truncated to `cols` columns.
pub fn matrices_from_spec(
    spec: &RowSeriesSpec,
    rows: usize,
    cols: usize,
) -> Result<(MatrixBlock, MatrixBlock, MatrixBlock), PascalError> {
    if rows == 0 || cols == 0 {
        return Err(PascalError::InvalidShape(
            "a block needs at least one entry".into(),
        ));
    }
    let needed = cols - 1;
    for s in [spec.f(), spec.g(), spec.h()] {
        if s.order() < needed {
            return Err(PascalError::InsufficientOrder {
                needed,
                got: s.order(),
            });
        }
    }
    let f = spec.f().truncated(needed);
    let g = spec.g().truncated(needed);
    let h = spec.h().truncated(needed);
    let fg = f.mul(&g);
    let mut a_rows = Vec::with_capacity(rows);
    let mut b_rows = Vec::with_capacity(rows);
    let mut c_rows = Vec::with_capacity(rows);
    let (mut pa, mut pb, mut pc) = (f, g, fg);
    for _ in 0..rows {
        a_rows.push(pa.coeffs().to_vec());
        b_rows.push(pb.coeffs().to_vec());
        c_rows.push(pc.coeffs().to_vec());
        pa = pa.mul(&h);
        pb = pb.mul(&h);
        pc = pc.mul(&h);
    }
    Ok((
        MatrixBlock { data: a_rows },
        MatrixBlock { data: b_rows },
        MatrixBlock { data: c_rows },
    ))
}

/// Checks `Σ_{j≤n} a_{ij}·b_{ℓ,n−j} = c_{i+ℓ,n}` for every instance fully
/// inside the blocks.
pub fn check_matrix_identity(a: &MatrixBlock, b: &MatrixBlock, c: &MatrixBlock) -> MatrixCheck {
    let ncols = a.cols().min(b.cols()).min(c.cols());
    for i in 0..a.rows() {
        for l in 0..b.rows() {
            if i + l >= c.rows() {
                continue;
            }
            for n in 0..ncols {
                let mut sum = Rational::zero();
                for j in 0..=n {
                    sum = &sum + &(a.entry(i, j) * b.entry(l, n - j));
                }
                if &sum != c.entry(i + l, n) {
                    return MatrixCheck::Violated { i, l, n };
                }
            }
        }
    }
    MatrixCheck::Verified {
        max_row_sum: (c.rows() - 1).min(a.rows() + b.rows() - 2),
        max_col: ncols - 1,
    }
}

/// Recovers the unique (f, g, h) behind a Pascal-like triple: f = A₀,
/// g = B₀, h = A₁/A₀ (exact series division), then re-verifies every row of
/// all three blocks against `f·h^n`, `g·h^n`, `f·g·h^n` at the common
/// width. Needs invertible corners and at least two rows in A.
pub fn recover_spec(
    a: &MatrixBlock,
    b: &MatrixBlock,
    c: &MatrixBlock,
) -> Result<RowSeriesSpec, PascalError> {
    if a.entry(0, 0).is_zero() || b.entry(0, 0).is_zero() {
        return Err(PascalError::NonInvertibleCorner);
    }
    if a.rows() < 2 {
        return Err(PascalError::BlockTooSmall {
            min_rows: 2,
            min_cols: 1,
        });
    }
    let width = a.cols().min(b.cols()).min(c.cols()) - 1;
    let f = row_series(a, 0)?.truncated(width);
    let g = row_series(b, 0)?.truncated(width);
    let h = row_series(a, 1)?
        .truncated(width)
        .mul(&f.recip().expect("a_00 is nonzero"));

    let verify_rows = |m: &MatrixBlock, start: &TruncSeries<Rational>, name: &str, base: &str| {
        let mut expected = start.clone();
        for n in 0..m.rows() {
            if row_series(m, n).expect("in range").truncated(width) != expected {
                return Err(PascalError::NotPascalLike(format!(
                    "row {n} of {name} is not {base}·h^{n}"
                )));
            }
            expected = expected.mul(&h);
        }
        Ok(())
    };
    verify_rows(a, &f, "A", "f")?;
    verify_rows(b, &g, "B", "g")?;
    verify_rows(c, &f.mul(&g), "C", "f·g")?;
    Ok(RowSeriesSpec::new(f, g, h))
}

/// The wide-sense Riordan array with entries `[t^n] f·h^k` on an
/// R × C block. Lower-triangular whenever h(0) = 0.
pub fn riordan_array(
    f: &TruncSeries<Rational>,
    h: &TruncSeries<Rational>,
    rows: usize,
    cols: usize,
) -> Result<MatrixBlock, PascalError> {
    if rows == 0 || cols == 0 {
        return Err(PascalError::InvalidShape(
            "a block needs at least one entry".into(),
        ));
    }
    let needed = rows - 1;
    for s in [f, h] {
        if s.order() < needed {
            return Err(PascalError::InsufficientOrder {
                needed,
                got: s.order(),
            });
        }
    }
    let h = h.truncated(needed);
    let mut power = f.truncated(needed);
    let mut data = vec![Vec::with_capacity(cols); rows];
    for _ in 0..cols {
        for (n, row) in data.iter_mut().enumerate() {
            row.push(power.coeffs()[n].clone());
        }
        power = power.mul(&h);
    }
    Ok(MatrixBlock { data })
}

/// True when row i has only zeros strictly right of the diagonal (within
/// the stored columns).
pub fn is_lower_triangular_in_row(m: &MatrixBlock, i: usize) -> Result<bool, PascalError> {
    if i >= m.rows() {
        return Err(PascalError::RowOutOfRange {
            row: i,
            rows: m.rows(),
        });
    }
    Ok(m.data[i].iter().skip(i + 1).all(Rational::is_zero))
}

/// True when every stored row is lower-triangular.
pub fn is_lower_triangular(m: &MatrixBlock) -> bool {
    (0..m.rows()).all(|i| is_lower_triangular_in_row(m, i).expect("row in range"))
}

/// Classifies a Pascal-like triple whose A and B are lower-triangular in
/// row 0: the rows collapse to `α·h^i`, `β·h^i`, `αβ·h^i`; and if some
/// matrix is also lower-triangular in row 1, h is affine and the entries
/// take the rescaled-Pascal binomial form.
pub fn classify_corollary4(
    a: &MatrixBlock,
    b: &MatrixBlock,
    c: &MatrixBlock,
) -> Result<Corollary4, PascalError> {
    let alpha = a.entry(0, 0).clone();
    let beta = b.entry(0, 0).clone();
    if alpha.is_zero() || beta.is_zero() {
        return Err(PascalError::NonInvertibleCorner);
    }
    if !is_lower_triangular_in_row(a, 0)? {
        return Err(PascalError::HypothesesNotMet(
            "A is not lower-triangular in row 0".into(),
        ));
    }
    if !is_lower_triangular_in_row(b, 0)? {
        return Err(PascalError::HypothesesNotMet(
            "B is not lower-triangular in row 0".into(),
        ));
    }
    if a.rows() < 2 {
        return Err(PascalError::BlockTooSmall {
            min_rows: 2,
            min_cols: 1,
        });
    }
    let width = a.cols().min(b.cols()).min(c.cols()) - 1;
    let h = row_series(a, 1)?.truncated(width).scale(&alpha.recip());

    // verify the power form on every stored row
    for (m, scalar, name) in [
        (a, &alpha, "A"),
        (b, &beta, "B"),
        (c, &(&alpha * &beta), "C"),
    ] {
        let mut expected = TruncSeries::constant(scalar.clone(), width);
        for n in 0..m.rows() {
            if row_series(m, n).expect("in range").truncated(width) != expected {
                return Err(PascalError::NotPascalLike(format!(
                    "row {n} of {name} is not a scalar multiple of h^{n}"
                )));
            }
            expected = expected.mul(&h);
        }
    }

    let row1_triangular = is_lower_triangular_in_row(a, 1)?
        || (b.rows() > 1 && is_lower_triangular_in_row(b, 1)?)
        || (c.rows() > 1 && is_lower_triangular_in_row(c, 1)?);
    if !row1_triangular {
        return Ok(Corollary4::PowerRows { alpha, beta, h });
    }

    // some row 1 is triangular, so h = κ + λu
    let kappa = h.coeffs()[0].clone();
    let lambda = if width >= 1 {
        h.coeffs()[1].clone()
    } else {
        Rational::zero()
    };
    for (m, scalar) in [(a, &alpha), (b, &beta), (c, &(&alpha * &beta))] {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expected = if j > i {
                    Rational::zero()
                } else {
                    &(scalar * &(&kappa.pow((i - j) as u32) * &lambda.pow(j as u32)))
                        * &Rational::binomial(i, j)
                };
                if m.entry(i, j) != &expected {
                    return Err(PascalError::FormViolation { i, j });
                }
            }
        }
    }
    Ok(Corollary4::RescaledPascal {
        alpha,
        beta,
        kappa,
        lambda,
    })
}

/// The no-go classifier: a lower-triangular block satisfying the
/// single-matrix identity with invertible corner must be
/// `l_{ij} = κ^{i−j}·λ^j·C(i,j)` with l_00 = 1. Returns (κ, λ) after
/// verifying all of that on the block.
pub fn classify_nogo(l: &MatrixBlock) -> Result<NogoForm, PascalError> {
    for i in 0..l.rows() {
        if !is_lower_triangular_in_row(l, i)? {
            return Err(PascalError::HypothesesNotMet(format!(
                "row {i} is not lower-triangular"
            )));
        }
    }
    if let MatrixCheck::Violated { i, l: ell, n } = check_matrix_identity(l, l, l) {
        return Err(PascalError::NotPascalLike(format!(
            "matrix identity fails at (i, ℓ, n) = ({i}, {ell}, {n})"
        )));
    }
    if !l.entry(0, 0).is_one() {
        return Err(PascalError::CornerNotOne(l.entry(0, 0).clone()));
    }
    if l.rows() < 2 || l.cols() < 2 {
        return Err(PascalError::BlockTooSmall {
            min_rows: 2,
            min_cols: 2,
        });
    }
    let kappa = l.entry(1, 0).clone();
    let lambda = l.entry(1, 1).clone();
    for i in 0..l.rows() {
        for j in 0..=i.min(l.cols() - 1) {
            let expected =
                &(&kappa.pow((i - j) as u32) * &lambda.pow(j as u32)) * &Rational::binomial(i, j);
            if l.entry(i, j) != &expected {
                return Err(PascalError::FormViolation { i, j });
            }
        }
    }
    Ok(NogoForm { kappa, lambda })
}

/// When h(0) = 1, the columns of the blocks built from (f, g, h) are
/// polynomial functions of the row index: with Ψ = log h, the families of
/// `f·e^{xΨ}`, `g·e^{xΨ}`, `f·g·e^{xΨ}` satisfy f_n(i) = a_{in} (and
/// likewise for B, C). Builds both sides independently, verifies the
/// correspondence for all i ≤ i_max, n ≤ n_max, and returns the
/// interpolants.
pub fn column_interpolation_bridge(
    spec: &RowSeriesSpec,
    n_max: usize,
    i_max: usize,
) -> Result<BridgeReport, PascalError> {
    if !spec.h().constant_term().is_one() {
        return Err(PascalError::HNotUnitConstant);
    }
    if spec.h().order() < n_max {
        return Err(PascalError::InsufficientOrder {
            needed: n_max,
            got: spec.h().order(),
        });
    }
    let psi = Psi::new(
        spec.h()
            .truncated(n_max)
            .log()
            .expect("h(0) = 1 checked above"),
    )
    .expect("log h has zero constant term");
    let triple = triple_from_series(spec.f(), spec.g(), &psi, n_max).map_err(|e| match e {
        ShefferError::InsufficientOrder { needed, got } => {
            PascalError::InsufficientOrder { needed, got }
        }
        other => PascalError::InvalidShape(other.to_string()),
    })?;
    let (ma, mb, mc) = matrices_from_spec(spec, i_max + 1, n_max + 1)?;

    for (fam, block, name) in [
        (triple.f(), &ma, 'f'),
        (triple.g(), &mb, 'g'),
        (triple.h(), &mc, 'h'),
    ] {
        for i in 0..=i_max {
            let at = Rational::from_int(i as i64);
            for n in 0..=n_max {
                if fam.entry(n).eval(&at) != *block.entry(i, n) {
                    return Err(PascalError::BridgeMismatch { family: name, i, n });
                }
            }
        }
    }
    Ok(BridgeReport {
        interpolants: triple,
        i_max,
        n_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::{builtin_psi, recover_psi, RecoveredPsi};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pascal_block(n: usize) -> MatrixBlock {
        MatrixBlock::from_fn(n, n, Rational::binomial)
    }

    fn ones_spec(h: TruncSeries<Rational>) -> RowSeriesSpec {
        let order = h.order();
        RowSeriesSpec::new(TruncSeries::one(order), TruncSeries::one(order), h)
    }

    fn one_plus_u(order: usize) -> TruncSeries<Rational> {
        TruncSeries::padded(vec![q(1, 1), q(1, 1)], order)
    }

    #[test]
    fn row_series_of_the_pascal_block() {
        let p = pascal_block(6);
        let r2 = row_series(&p, 2).unwrap();
        assert_eq!(r2, TruncSeries::padded(vec![q(1, 1), q(2, 1), q(1, 1)], 5));
        assert_eq!(
            row_series(&p, 9),
            Err(PascalError::RowOutOfRange { row: 9, rows: 6 })
        );
        // zero row stays the zero series
        let z = MatrixBlock::from_fn(2, 3, |_, _| Rational::zero());
        assert!(row_series(&z, 1).unwrap().is_zero());
    }

    #[test]
    fn row_one_is_f_times_h() {
        let spec = ones_spec(TruncSeries::padded(vec![q(2, 1), q(1, 1)], 3));
        let (a, _, _) = matrices_from_spec(&spec, 2, 4).unwrap();
        assert_eq!(
            row_series(&a, 1).unwrap(),
            TruncSeries::padded(vec![q(2, 1), q(1, 1)], 3)
        );
    }

    #[test]
    fn pascal_matrix_from_f_g_one_h_one_plus_u() {
        let spec = ones_spec(one_plus_u(5));
        let (a, b, c) = matrices_from_spec(&spec, 6, 6).unwrap();
        let expected = pascal_block(6);
        assert_eq!(a, expected);
        assert_eq!(b, expected);
        assert_eq!(c, expected);
    }

    #[test]
    fn rescaled_pascal_block_entries() {
        // h = 2 + 3u gives a_{ij} = 2^{i−j}·3^j·C(i,j)
        let spec = ones_spec(TruncSeries::padded(vec![q(2, 1), q(3, 1)], 7));
        let (a, _, _) = matrices_from_spec(&spec, 8, 8).unwrap();
        let expected = MatrixBlock::from_fn(8, 8, |i, j| {
            if j > i {
                Rational::zero()
            } else {
                &(&q(2, 1).pow((i - j) as u32) * &q(3, 1).pow(j as u32)) * &Rational::binomial(i, j)
            }
        });
        assert_eq!(a, expected);
    }

    #[test]
    fn nontriangular_h_with_unit_constant() {
        let h = TruncSeries::padded(vec![q(1, 1), q(1, 1), q(1, 1)], 4);
        let (a, _, _) = matrices_from_spec(&ones_spec(h), 5, 5).unwrap();
        assert_eq!(*a.entry(0, 0), q(1, 1));
        // row 2 = (1+u+u²)² has u³ and u⁴ terms, so not triangular
        assert!(!is_lower_triangular_in_row(&a, 2).unwrap());
    }

    #[test]
    fn matrices_from_spec_demands_order() {
        let spec = ones_spec(one_plus_u(2));
        assert_eq!(
            matrices_from_spec(&spec, 4, 4),
            Err(PascalError::InsufficientOrder { needed: 3, got: 2 })
        );
    }

    #[test]
    fn identity_on_the_pascal_block() {
        let p = pascal_block(8);
        assert_eq!(
            check_matrix_identity(&p, &p, &p),
            MatrixCheck::Verified {
                max_row_sum: 7,
                max_col: 7
            }
        );
    }

    #[test]
    fn identity_on_constructed_blocks() {
        let spec = RowSeriesSpec::new(
            TruncSeries::padded(vec![q(1, 1), q(1, 1)], 6),
            TruncSeries::padded(vec![q(2, 1)], 6),
            TruncSeries::padded(vec![q(3, 1), q(0, 1), q(1, 1)], 6),
        );
        let (a, b, c) = matrices_from_spec(&spec, 5, 7).unwrap();
        assert!(check_matrix_identity(&a, &b, &c).passed());
    }

    #[test]
    fn identity_catches_a_single_mutation() {
        let mut p = pascal_block(4);
        p.set_entry(2, 1, q(5, 1));
        assert_eq!(
            check_matrix_identity(&p, &p, &p),
            MatrixCheck::Violated { i: 1, l: 1, n: 1 }
        );
    }

    #[test]
    fn recover_spec_round_trip() {
        // (f, g, h) = (1+u, 2, 3+u²) on an 8×10 block
        let f = TruncSeries::padded(vec![q(1, 1), q(1, 1)], 9);
        let g = TruncSeries::padded(vec![q(2, 1)], 9);
        let h = TruncSeries::padded(vec![q(3, 1), q(0, 1), q(1, 1)], 9);
        let spec = RowSeriesSpec::new(f, g, h);
        let (a, b, c) = matrices_from_spec(&spec, 8, 10).unwrap();
        assert_eq!(recover_spec(&a, &b, &c).unwrap(), spec);
    }

    #[test]
    fn recover_spec_on_the_pascal_triple() {
        let p = pascal_block(6);
        let spec = recover_spec(&p, &p, &p).unwrap();
        assert_eq!(spec.f(), &TruncSeries::one(5));
        assert_eq!(spec.g(), &TruncSeries::one(5));
        assert_eq!(spec.h(), &one_plus_u(5));
    }

    #[test]
    fn recover_spec_rejects_a_zeroed_row() {
        let spec = ones_spec(one_plus_u(7));
        let (mut a, b, c) = matrices_from_spec(&spec, 8, 8).unwrap();
        for j in 0..8 {
            a.set_entry(3, j, Rational::zero());
        }
        assert!(matches!(
            recover_spec(&a, &b, &c),
            Err(PascalError::NotPascalLike(_))
        ));
    }

    #[test]
    fn recover_spec_corner_and_size_checks() {
        let z = MatrixBlock::from_fn(3, 3, |_, _| Rational::zero());
        let p = pascal_block(3);
        assert_eq!(
            recover_spec(&z, &p, &p),
            Err(PascalError::NonInvertibleCorner)
        );
        let one_row = MatrixBlock::from_fn(1, 3, |_, j| {
            if j == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        assert_eq!(
            recover_spec(&one_row, &p, &p),
            Err(PascalError::BlockTooSmall {
                min_rows: 2,
                min_cols: 1
            })
        );
    }

    #[test]
    fn riordan_identity_matrix() {
        let f = TruncSeries::one(4);
        let t = TruncSeries::variable(4);
        let r = riordan_array(&f, &t, 5, 5).unwrap();
        assert_eq!(
            r,
            MatrixBlock::from_fn(5, 5, |n, k| if n == k {
                Rational::one()
            } else {
                Rational::zero()
            })
        );
    }

    #[test]
    fn riordan_geometric_gives_pascal() {
        // f = 1/(1−t) expanded, h = t/(1−t): entry (n,k) = C(n,k)
        let geometric = TruncSeries::new(vec![Rational::one(); 5]);
        let h = TruncSeries::padded(
            std::iter::once(Rational::zero())
                .chain(std::iter::repeat_n(Rational::one(), 4))
                .collect(),
            4,
        );
        let r = riordan_array(&geometric, &h, 5, 5).unwrap();
        assert_eq!(r, pascal_block(5));
    }

    #[test]
    fn riordan_with_unit_h_constant_is_the_pascal_transpose() {
        let f = TruncSeries::one(4);
        let r = riordan_array(&f, &one_plus_u(4), 5, 5).unwrap();
        // entry (n,k) = [t^n](1+t)^k = C(k,n)
        assert_eq!(r, pascal_block(5).transpose());
        assert!(!is_lower_triangular(&r));
    }

    #[test]
    fn triangularity_by_row() {
        let p = pascal_block(5);
        for i in 0..5 {
            assert!(is_lower_triangular_in_row(&p, i).unwrap());
        }
        // row 0 equals f = 1+u², so a_{02} = 1 breaks triangularity there
        let f = TruncSeries::padded(vec![q(1, 1), q(0, 1), q(1, 1)], 4);
        let spec = RowSeriesSpec::new(f, TruncSeries::one(4), one_plus_u(4));
        let (a, _, _) = matrices_from_spec(&spec, 3, 5).unwrap();
        assert!(!is_lower_triangular_in_row(&a, 0).unwrap());
        // row 1 equals h = 2+3u, degree 1, which is fine in row 1
        let spec = ones_spec(TruncSeries::padded(vec![q(2, 1), q(3, 1)], 4));
        let (a, _, _) = matrices_from_spec(&spec, 3, 5).unwrap();
        assert!(is_lower_triangular_in_row(&a, 1).unwrap());
    }

    #[test]
    fn corollary4_power_rows_form() {
        let h = TruncSeries::padded(vec![q(1, 1), q(1, 1), q(1, 1)], 6);
        let spec = RowSeriesSpec::new(
            TruncSeries::constant(q(2, 1), 6),
            TruncSeries::constant(q(3, 1), 6),
            h.clone(),
        );
        let (a, b, c) = matrices_from_spec(&spec, 6, 7).unwrap();
        assert_eq!(
            classify_corollary4(&a, &b, &c).unwrap(),
            Corollary4::PowerRows {
                alpha: q(2, 1),
                beta: q(3, 1),
                h: h.clone(),
            }
        );
    }

    #[test]
    fn corollary4_rescaled_pascal_form() {
        let spec = ones_spec(TruncSeries::padded(vec![q(2, 1), q(3, 1)], 6));
        let (a, b, c) = matrices_from_spec(&spec, 7, 7).unwrap();
        assert_eq!(
            classify_corollary4(&a, &b, &c).unwrap(),
            Corollary4::RescaledPascal {
                alpha: q(1, 1),
                beta: q(1, 1),
                kappa: q(2, 1),
                lambda: q(3, 1),
            }
        );
    }

    #[test]
    fn corollary4_rejects_nontriangular_row_zero() {
        let f = one_plus_u(5);
        let spec = RowSeriesSpec::new(f, TruncSeries::one(5), one_plus_u(5));
        let (a, b, c) = matrices_from_spec(&spec, 4, 6).unwrap();
        assert!(matches!(
            classify_corollary4(&a, &b, &c),
            Err(PascalError::HypothesesNotMet(_))
        ));
    }

    #[test]
    fn nogo_on_the_pascal_matrix() {
        let p = pascal_block(6);
        assert_eq!(
            classify_nogo(&p).unwrap(),
            NogoForm {
                kappa: q(1, 1),
                lambda: q(1, 1)
            }
        );
    }

    #[test]
    fn nogo_recovers_kappa_lambda() {
        let spec = ones_spec(TruncSeries::padded(vec![q(2, 1), q(3, 1)], 7));
        let (l, _, _) = matrices_from_spec(&spec, 8, 8).unwrap();
        assert_eq!(
            classify_nogo(&l).unwrap(),
            NogoForm {
                kappa: q(2, 1),
                lambda: q(3, 1)
            }
        );
    }

    #[test]
    fn nogo_rejects_a_perturbed_pascal() {
        let mut p = pascal_block(5);
        p.set_entry(2, 2, q(7, 1));
        match classify_nogo(&p) {
            Err(PascalError::NotPascalLike(msg)) => {
                assert!(msg.contains("(1, 1, 2)"), "witness was: {msg}");
            }
            other => panic!("expected NotPascalLike, got {other:?}"),
        }
    }

    #[test]
    fn nogo_hypothesis_and_corner_errors() {
        // not lower-triangular
        let spec = ones_spec(one_plus_u(4));
        let r = riordan_array(&TruncSeries::one(4), spec.h(), 5, 5).unwrap();
        assert!(matches!(
            classify_nogo(&r),
            Err(PascalError::HypothesesNotMet(_))
        ));
        // scaled Pascal has l_00 = 2, which passes the identity only if 2² = 2
        let doubled = MatrixBlock::from_fn(4, 4, |i, j| &Rational::binomial(i, j) * &q(2, 1));
        assert!(matches!(
            classify_nogo(&doubled),
            Err(PascalError::NotPascalLike(_))
        ));
        // an all-zero triangular block satisfies the identity but has corner 0
        let z = MatrixBlock::from_fn(3, 3, |_, _| Rational::zero());
        assert_eq!(classify_nogo(&z), Err(PascalError::CornerNotOne(q(0, 1))));
    }

    #[test]
    fn bridge_on_the_pascal_spec() {
        let spec = ones_spec(one_plus_u(6));
        let report = column_interpolation_bridge(&spec, 6, 6).unwrap();
        // interpolants are the binomial-coefficient family C(x, n)
        let fam = family_from_log_one_plus_u(6);
        assert_eq!(report.interpolants.f(), &fam);
        match recover_psi(report.interpolants.f()).unwrap() {
            RecoveredPsi::Psi(psi) => {
                assert_eq!(psi, builtin_psi("falling-factorial", 6).unwrap());
            }
            RecoveredPsi::ZeroFamily => panic!("nonzero family"),
        }
    }

    fn family_from_log_one_plus_u(order: usize) -> crate::convolution::PolyFamily {
        crate::convolution::family_from_psi(
            &builtin_psi("falling-factorial", order).unwrap(),
            order,
        )
        .unwrap()
    }

    #[test]
    fn bridge_with_constant_h() {
        let spec = ones_spec(TruncSeries::one(4));
        let report = column_interpolation_bridge(&spec, 4, 4).unwrap();
        let f = report.interpolants.f();
        assert_eq!(*f.entry(0), crate::XPoly::one());
        for n in 1..=4 {
            assert!(f.entry(n).is_zero());
        }
    }

    #[test]
    fn bridge_with_quadratic_h() {
        let h = TruncSeries::padded(vec![q(1, 1), q(1, 1), q(1, 1)], 8);
        let spec = ones_spec(h);
        let report = column_interpolation_bridge(&spec, 8, 8).unwrap();
        assert_eq!(report.i_max, 8);
        assert_eq!(report.n_max, 8);
    }

    #[test]
    fn bridge_rejects_nonunit_h_constant() {
        let spec = ones_spec(TruncSeries::padded(vec![q(2, 1), q(3, 1)], 4));
        assert_eq!(
            column_interpolation_bridge(&spec, 4, 4),
            Err(PascalError::HNotUnitConstant)
        );
    }

    #[test]
    fn block_json_and_tsv() {
        let p = pascal_block(3);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"rows":3,"cols":3,"data":[["1","0","0"],["1","1","0"],["1","2","1"]]}"#
        );
        let back: MatrixBlock = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_tsv(), "1\t0\t0\n1\t1\t0\n1\t2\t1");
        // shape mismatch is rejected
        let bad = r#"{"rows":2,"cols":3,"data":[["1","0","0"]]}"#;
        assert!(serde_json::from_str::<MatrixBlock>(bad).is_err());
    }
}
