use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::cf::CfDigits;
use crate::seed::SeedSource;
use crate::{Error, Result};

/// The `n`-th integer ≥ 2 that is not a perfect square: 2, 3, 5, 6, 7, 8, 10, …
pub fn nth_non_square(n: u64) -> u64 {
    assert!(n >= 1);
    // n + round(√n); √n is never a half-integer, so compare n with m² + m.
    let m = n.sqrt();
    n + if n > m * m + m { m + 1 } else { m }
}

/// Base for block `i`: block `j` of the triangular listing holds the first `j`
/// non-squares, giving 2; 2, 3; 2, 3, 5; 2, 3, 5, 6; …
pub fn base_schedule(i: u64) -> u64 {
    assert!(i >= 1, "blocks are numbered from 1");
    // Largest j with j(j−1)/2 < i.
    let mut j = (2 * i).sqrt();
    while j * (j + 1) / 2 < i {
        j += 1;
    }
    while j > 1 && j * (j - 1) / 2 >= i {
        j -= 1;
    }
    nth_non_square(i - j * (j - 1) / 2)
}

/// `n_i = 2^{i−1} N + 4(i − 1)`, the index in `y` of the last digit of `X_i`.
pub fn block_boundary(n: u64, i: u64) -> u64 {
    assert!(i >= 1);
    (n << (i - 1)) + 4 * (i - 1)
}

/// Seed indices (1-based, inclusive) making up `X_i`.
pub fn seed_range(n: u64, i: u64) -> (u64, u64) {
    if i == 1 {
        (1, n)
    } else {
        ((n << (i - 2)) + 1, n << (i - 1))
    }
}

/// `X_i`: seed digits 1..N for the first block, then `2^{i−2}N + 1 ..= 2^{i−1}N`.
pub fn seed_block(source: &mut SeedSource, i: u64, n: u64) -> Result<CfDigits> {
    let (start, end) = seed_range(n, i);
    if source.position() + 1 != start {
        return Err(Error::domain(format!(
            "block {i} starts at seed digit {start}, but the source is at {}",
            source.position() + 1
        )));
    }
    source.next_digits((end - start + 1) as usize)
}

/// Inserted positions `n_i + 1 ..= n_i + 4` for the first `blocks` blocks.
pub fn insertion_positions(n: u64, blocks: u64) -> Vec<u64> {
    (1..=blocks)
        .flat_map(|i| {
            let ni = block_boundary(n, i);
            ni + 1..=ni + 4
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionDensity {
    pub prefix: u64,
    pub inserted: u64,
    pub bound: u64,
    pub within_bound: bool,
}

/// Inserted digits among the first `prefix`, against `4(⌊log₂(max(n, N)/N)⌋ + 2)`.
pub fn insertion_density(positions: &[u64], block_size: u64, prefix: u64) -> InsertionDensity {
    let inserted = positions.iter().filter(|&&p| p <= prefix).count() as u64;
    let ratio = prefix.max(block_size) / block_size;
    let bound = 4 * (u64::from(ratio.ilog2()) + 2);
    InsertionDensity {
        prefix,
        inserted,
        bound,
        within_bound: inserted <= bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_squares() {
        let brute: Vec<u64> = (2u64..200).filter(|k| k.sqrt() * k.sqrt() != *k).take(150).collect();
        let fast: Vec<u64> = (1..=150).map(nth_non_square).collect();
        assert_eq!(fast, brute);
    }

    #[test]
    fn schedule_examples() {
        let first: Vec<u64> = (1..=10).map(base_schedule).collect();
        assert_eq!(first, [2, 2, 3, 2, 3, 5, 2, 3, 5, 6]);
        assert_eq!(base_schedule(11), 2);
        assert_eq!(base_schedule(15), 7);
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(block_boundary(4, 1), 4);
        assert_eq!(block_boundary(4, 2), 12);
        assert_eq!(block_boundary(4, 3), 24);
        assert_eq!(seed_range(4, 1), (1, 4));
        assert_eq!(seed_range(4, 2), (5, 8));
        assert_eq!(seed_range(4, 3), (9, 16));
    }

    #[test]
    fn density_examples() {
        let pos = insertion_positions(4, 3);
        let d = insertion_density(&pos, 4, 8);
        assert_eq!((d.inserted, d.bound, d.within_bound), (4, 12, true));
        assert_eq!(insertion_density(&pos, 4, 4).inserted, 0);
        let d = insertion_density(&pos, 4, 16);
        assert_eq!(d.inserted, 8);
        assert!(d.bound <= 16 && d.within_bound);
    }
}
