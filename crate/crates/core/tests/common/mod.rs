//! Shared test oracles and helpers, independent of the library internals.
#![allow(dead_code)] // each test target uses its own subset

use convfam::convolution::Psi;
use convfam::pascal::MatrixBlock;
use convfam::{Rational, TruncSeries};
use rand::rngs::StdRng;
use rand::Rng;

/// Enumerates every set partition of {0, …, n−1} by brute force and returns
/// `counts[k]` = number of partitions into exactly k nonempty blocks
/// (the Stirling subset numbers, built without any formula).
pub fn stirling_counts_by_enumeration(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    enumerate_partitions(0, n, &mut blocks, &mut counts);
    counts
}

fn enumerate_partitions(
    element: usize,
    n: usize,
    blocks: &mut Vec<Vec<usize>>,
    counts: &mut Vec<u64>,
) {
    if element == n {
        counts[blocks.len()] += 1;
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(element);
        enumerate_partitions(element + 1, n, blocks, counts);
        blocks[b].pop();
    }
    blocks.push(vec![element]);
    enumerate_partitions(element + 1, n, blocks, counts);
    blocks.pop();
}

/// Bell number as the total count from the same enumeration.
pub fn bell_by_enumeration(n: usize) -> u64 {
    stirling_counts_by_enumeration(n).iter().sum()
}

/// A random rational with |numerator| ≤ 9 and denominator ≤ 9.
pub fn small_rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// A random nonzero rational with the same bounds.
pub fn small_nonzero_rational(rng: &mut StdRng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A random series of the given order with small rational coefficients.
pub fn random_series(rng: &mut StdRng, order: usize) -> TruncSeries<Rational> {
    TruncSeries::new((0..=order).map(|_| small_rational(rng)).collect())
}

/// A random Ψ (zero constant term) of the given order.
pub fn random_psi(rng: &mut StdRng, order: usize) -> Psi {
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend((1..=order).map(|_| small_rational(rng)));
    Psi::new(TruncSeries::new(coeffs)).expect("constant term is zero")
}

/// The binomial-coefficient block C(i,j), built directly.
pub fn binomial_block(rows: usize, cols: usize) -> MatrixBlock {
    MatrixBlock::from_fn(rows, cols, Rational::binomial)
}
