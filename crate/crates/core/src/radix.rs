//! Base-`b` expansions of rationals and the digit-frequency statistics used to
//! compare a prefix against its normality limit.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cf::{cylinder_interval, gauss_measure, Rational};
use crate::{Error, Result};

/// Which of the two expansions to produce for a rational with a finite one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Ends in zeros: `0.7000…`.
    Terminating,
    /// Ends in repeated `b − 1`: `0.6999…`.
    NonTerminating,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDigits {
    pub base: u64,
    pub digits: Vec<u64>,
    pub convention: Convention,
}

impl fmt::Display for BaseDigits {
    /// One character per digit for bases up to 10, comma-separated above.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// The first `n_places` base-`b` digits of `x ∈ [0, 1)` after the radix point.
pub fn base_expansion(x: &Rational, b: u64, n_places: usize, convention: Convention) -> Result<BaseDigits> {
    if b < 2 {
        return Err(Error::domain(format!("base {b} must be at least 2")));
    }
    if n_places == 0 {
        return Err(Error::domain("need at least one place"));
    }
    if x.is_negative() || x.numer() >= x.denom() {
        return Err(Error::domain(format!("{x} is not in [0, 1)")));
    }
    if x.is_zero() && convention == Convention::NonTerminating {
        return Err(Error::domain("0 has no expansion ending in repeated b − 1"));
    }
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    let scale = num_traits::pow(BigUint::from(b), n_places);
    let (floor, rem) = (p * &scale).div_rem(q);
    // ⌈y⌉ − 1 equals ⌊y⌋ unless y is an integer.
    let top = match convention {
        Convention::NonTerminating if rem.is_zero() => floor - 1u8,
        _ => floor,
    };
    Ok(BaseDigits {
        base: b,
        digits: to_digits(&top, b, n_places),
        convention,
    })
}

/// `n`-digit big-endian representation of `value < b^n`.
pub(crate) fn to_digits(value: &BigUint, b: u64, n: usize) -> Vec<u64> {
    let mut raw: Vec<u64> = if b <= 256 {
        if value.is_zero() {
            Vec::new()
        } else {
            value.to_radix_be(b as u32).into_iter().map(u64::from).collect()
        }
    } else {
        let mut v = Vec::new();
        let mut rest = value.clone();
        let base = BigUint::from(b);
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&base);
            v.push(r.to_u64().expect("digit below base"));
            rest = q;
        }
        v.reverse();
        v
    };
    debug_assert!(raw.len() <= n);
    let mut out = vec![0; n - raw.len()];
    out.append(&mut raw);
    out
}

/// Frequency of one string in a prefix, against its limiting value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigitStats {
    pub string: Vec<u64>,
    pub count: u64,
    pub prefix: u64,
    pub ratio: f64,
    pub reference: f64,
    pub discrepancy: f64,
}

impl DigitStats {
    pub fn new(string: Vec<u64>, count: u64, prefix: u64, reference: f64) -> Self {
        let ratio = if prefix == 0 { 0.0 } else { count as f64 / prefix as f64 };
        DigitStats {
            string,
            count,
            prefix,
            ratio,
            reference,
            discrepancy: (ratio - reference).abs(),
        }
    }
}

/// Occurrences of `s` starting at any of the positions `1 ..= n − |s| + 1`,
/// overlaps included.
pub fn count_occurrences<T: PartialEq>(digits: &[T], s: &[T], n: usize) -> Result<u64> {
    if s.is_empty() {
        return Err(Error::domain("empty search string"));
    }
    if n > digits.len() {
        return Err(Error::domain(format!(
            "prefix {n} exceeds the {} available digits",
            digits.len()
        )));
    }
    Ok(digits[..n].windows(s.len()).filter(|w| *w == s).count() as u64)
}

/// Base-`b` statistics of `s` with reference `1/b^|s|`.
pub fn base_digit_stats(digits: &[u64], base: u64, s: &[u64], n: usize) -> Result<DigitStats> {
    let count = count_occurrences(digits, s, n)?;
    let reference = (base as f64).powi(-(s.len() as i32));
    Ok(DigitStats::new(s.to_vec(), count, n as u64, reference))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub longest_run: u64,
    pub differing: u64,
}

/// Longest run of `symbol` in the first `n` digits and how many of them differ from it.
pub fn max_run<T: PartialEq>(digits: &[T], symbol: &T, n: usize) -> Result<RunReport> {
    if n > digits.len() {
        return Err(Error::domain(format!(
            "prefix {n} exceeds the {} available digits",
            digits.len()
        )));
    }
    let mut report = RunReport {
        longest_run: 0,
        differing: 0,
    };
    let mut run = 0;
    for d in &digits[..n] {
        if d == symbol {
            run += 1;
            report.longest_run = report.longest_run.max(run);
        } else {
            run = 0;
            report.differing += 1;
        }
    }
    Ok(report)
}

/// Frequencies of each string among CF digits, referenced to the Gauss measure of its cylinder.
pub fn cf_normality_report(digits: &[BigUint], strings: &[Vec<u64>], n: usize) -> Result<Vec<DigitStats>> {
    if strings.is_empty() {
        return Err(Error::domain("no strings to report on"));
    }
    strings
        .iter()
        .map(|s| {
            let big: Vec<BigUint> = s.iter().copied().map(BigUint::from).collect();
            let count = count_occurrences(digits, &big, n)?;
            let reference = gauss_measure(&cylinder_interval(&big)?)?.to_f64();
            Ok(DigitStats::new(s.clone(), count, n as u64, reference))
        })
        .collect()
}

/// Reconstructs `0.d_1 d_2 … d_n` in base `b` as an exact rational.
pub fn digits_value(digits: &[u64], b: u64) -> Rational {
    let mut num = BigUint::zero();
    for &d in digits {
        num = num * b + d;
    }
    let den = num_traits::pow(BigUint::from(b), digits.len());
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn expansion_examples() {
        let t = base_expansion(&r(7, 10), 10, 3, Convention::Terminating).unwrap();
        assert_eq!(t.digits, [7, 0, 0]);
        let nt = base_expansion(&r(7, 10), 10, 3, Convention::NonTerminating).unwrap();
        assert_eq!(nt.digits, [6, 9, 9]);
        let h = base_expansion(&r(1, 2), 2, 4, Convention::NonTerminating).unwrap();
        assert_eq!(h.digits, [0, 1, 1, 1]);
        assert_eq!(h.to_string(), "0111");
        assert!(base_expansion(&r(0, 1), 2, 4, Convention::NonTerminating).is_err());
        assert_eq!(
            base_expansion(&r(0, 1), 2, 3, Convention::Terminating).unwrap().digits,
            [0, 0, 0]
        );
    }

    #[test]
    fn non_repeating_rationals_agree_across_conventions() {
        let a = base_expansion(&r(1, 3), 10, 5, Convention::Terminating).unwrap();
        let b = base_expansion(&r(1, 3), 10, 5, Convention::NonTerminating).unwrap();
        assert_eq!(a.digits, [3, 3, 3, 3, 3]);
        assert_eq!(a.digits, b.digits);
    }

    #[test]
    fn large_base_is_comma_separated() {
        let x = base_expansion(&r(1, 2), 1000, 2, Convention::Terminating).unwrap();
        assert_eq!(x.digits, [500, 0]);
        assert_eq!(x.to_string(), "500,0");
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(count_occurrences(&[1, 1, 1, 2], &[1, 1], 4).unwrap(), 2);
        assert_eq!(count_occurrences(&[0, 1, 0, 1, 0], &[0, 1, 0], 5).unwrap(), 2);
        assert_eq!(count_occurrences(&[3, 3, 3], &[7], 3).unwrap(), 0);
        assert!(count_occurrences(&[3, 3, 3], &[3], 4).is_err());
    }

    #[test]
    fn run_examples() {
        let run = |d: &[u64], s, n| {
            let r = max_run(d, &s, n).unwrap();
            (r.longest_run, r.differing)
        };
        assert_eq!(run(&[1, 1, 0, 1, 1, 1], 1, 6), (3, 1));
        assert_eq!(run(&[9, 9, 9, 9], 9, 4), (4, 0));
        assert_eq!(run(&[0, 1, 0, 1], 1, 4), (1, 2));
    }

    #[test]
    fn cf_report_examples() {
        let ones = vec![BigUint::from(1u8); 100];
        let rep = cf_normality_report(&ones, &[vec![2]], 100).unwrap();
        assert_eq!(rep[0].ratio, 0.0);
        assert!((rep[0].reference - 0.16993).abs() < 1e-5);
        assert!((rep[0].discrepancy - 0.16993).abs() < 1e-5);
        let rep = cf_normality_report(&[BigUint::from(1u8)], &[vec![1]], 1).unwrap();
        assert_eq!(rep[0].ratio, 1.0);
    }

    #[test]
    fn stats_json_shape() {
        let s = DigitStats::new(vec![1], 2, 4, 0.5);
        let v = serde_json::to_value(&s).unwrap();
        for key in ["string", "count", "prefix", "ratio", "reference", "discrepancy"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
