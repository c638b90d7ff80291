//! Exact-arithmetic toolkit for the polynomial and matrix faces of the
//! Chu–Vandermonde identity.
//!
//! Everything is computed over the rationals (or rational polynomials) with
//! no rounding anywhere, so every identity check is an exact decision and
//! every recovery is an exact inverse:
//!
//! - [`convolution`] — convolution families `f_n(x) = [t^n] e^{x·Ψ(t)}`:
//!   forward construction from Ψ, recovery of Ψ from a family via the log of
//!   the bivariate generating function, and verifiers for the convolution,
//!   weak-convolution, and multinomial identities.
//! - [`sheffer`] — generalized triples `(f, g, h)` built from `(A, B, Ψ)` as
//!   `[t^n] A·e^{xΨ}` etc., with exact recovery of `(A, B, Ψ)` and the
//!   Sheffer-sequence rescaling.
//! - [`pascal`] — Pascal-like matrix triples with row-generating series
//!   `f·h^i`, wide-sense Riordan arrays, the triangularity classifiers
//!   (including the no-go form `κ^{i−j} λ^j C(i,j)`), and the bridge that
//!   interpolates matrix columns by family polynomials when `h(0) = 1`.
//!
//! The substrate is [`series::TruncSeries`], truncated formal power series
//! over a coefficient ring containing the rationals ([`Rational`] itself or
//! [`XPoly`]).

pub mod convolution;
pub mod pascal;
pub mod rational;
pub mod ring;
pub mod series;
pub mod sheffer;
pub mod xpoly;

mod bivar;

pub use rational::Rational;
pub use ring::CoeffRing;
pub use series::{SeriesError, TruncSeries};
pub use xpoly::XPoly;
