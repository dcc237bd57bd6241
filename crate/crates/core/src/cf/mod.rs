//! Continued-fraction mechanics: digits, convergents, rational conversion,
//! cylinder intervals and the Gauss measure.
//!
//! For `x = ⟨a_1, a_2, …⟩ = 1/(a_1 + 1/(a_2 + …))` the convergents obey
//! `p_{n+1} = a_{n+1} p_n + p_{n−1}` and `q_{n+1} = a_{n+1} q_n + q_{n−1}`
//! with `p_{−1} = 1, p_0 = 0, q_{−1} = 0, q_0 = 1`.

mod gauss;
mod io;

use std::ops::Deref;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use gauss::{gauss_measure, gauss_measure_with, FixedReal, DEFAULT_FRACTION_BITS};
pub(crate) use gauss::log2_fixed;
pub use io::{read_digit_file, write_digit_file, DigitReader};

/// Exact rational with a signed numerator.
pub type Rational = BigRational;

/// A finite sequence of partial quotients, each at least 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct CfDigits(Vec<BigUint>);

impl CfDigits {
    pub fn new(digits: Vec<BigUint>) -> Result<Self> {
        if let Some(i) = digits.iter().position(Zero::is_zero) {
            return Err(Error::domain(format!("partial quotient {} is zero", i + 1)));
        }
        Ok(CfDigits(digits))
    }

    pub fn from_u64s(digits: &[u64]) -> Result<Self> {
        Self::new(digits.iter().copied().map(BigUint::from).collect())
    }

    pub fn push(&mut self, digit: BigUint) -> Result<()> {
        if digit.is_zero() {
            return Err(Error::domain("partial quotients must be positive"));
        }
        self.0.push(digit);
        Ok(())
    }

    pub fn extend_from(&mut self, other: &CfDigits) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn into_inner(self) -> Vec<BigUint> {
        self.0
    }

    /// The same digits with the last one incremented.
    pub fn with_last_incremented(&self) -> Self {
        let mut v = self.0.clone();
        if let Some(last) = v.last_mut() {
            *last += 1u8;
        }
        CfDigits(v)
    }

    /// Digits as machine integers, where they fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl Deref for CfDigits {
    type Target = [BigUint];
    fn deref(&self) -> &[BigUint] {
        &self.0
    }
}

impl TryFrom<Vec<String>> for CfDigits {
    type Error = String;
    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        let digits = v
            .iter()
            .map(|s| crate::decimal::parse(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CfDigits::new(digits).map_err(|e| e.to_string())
    }
}

impl From<CfDigits> for Vec<String> {
    fn from(d: CfDigits) -> Self {
        d.0.iter().map(ToString::to_string).collect()
    }
}

/// `p_n / q_n`, the value of the first `n` partial quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: BigUint,
    pub q: BigUint,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new_raw(BigInt::from(self.p.clone()), BigInt::from(self.q.clone()))
    }
}

/// Running state of the convergent recurrence: the last two convergents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentState {
    pub index: usize,
    pub p_prev: BigUint,
    pub q_prev: BigUint,
    pub p: BigUint,
    pub q: BigUint,
}

impl Default for ConvergentState {
    fn default() -> Self {
        ConvergentState {
            index: 0,
            p_prev: BigUint::one(),
            q_prev: BigUint::zero(),
            p: BigUint::zero(),
            q: BigUint::one(),
        }
    }
}

impl ConvergentState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_digits(digits: &[BigUint]) -> Self {
        let mut state = Self::new();
        for a in digits {
            state.push(a);
        }
        state
    }

    pub fn push(&mut self, a: &BigUint) {
        let p_next = a * &self.p + &self.p_prev;
        let q_next = a * &self.q + &self.q_prev;
        self.p_prev = std::mem::replace(&mut self.p, p_next);
        self.q_prev = std::mem::replace(&mut self.q, q_next);
        self.index += 1;
    }

    pub fn convergent(&self) -> Convergent {
        Convergent {
            index: self.index,
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }

    /// The cylinder of every `x` whose expansion starts with the digits pushed so far.
    pub fn cylinder(&self) -> CylinderInterval {
        let near = Rational::new_raw(BigInt::from(self.p.clone()), BigInt::from(self.q.clone()));
        let far = Rational::new_raw(
            BigInt::from(&self.p + &self.p_prev),
            BigInt::from(&self.q + &self.q_prev),
        );
        let (lo, hi) = if self.index % 2 == 0 { (near, far) } else { (far, near) };
        CylinderInterval {
            lo,
            hi,
            depth: self.index,
        }
    }
}

/// Iterator over the convergents of a digit sequence, starting at `n = 1`.
pub struct Convergents<I> {
    digits: I,
    state: ConvergentState,
}

impl<'a, I: Iterator<Item = &'a BigUint>> Iterator for Convergents<I> {
    type Item = Convergent;
    fn next(&mut self) -> Option<Convergent> {
        let a = self.digits.next()?;
        self.state.push(a);
        Some(self.state.convergent())
    }
}

pub fn convergent_stream(digits: &[BigUint]) -> Convergents<std::slice::Iter<'_, BigUint>> {
    Convergents {
        digits: digits.iter(),
        state: ConvergentState::new(),
    }
}

/// Value of a nonempty finite continued fraction, in lowest terms.
pub fn cf_to_rational(digits: &[BigUint]) -> Result<Rational> {
    if digits.is_empty() {
        return Err(Error::domain("empty continued fraction"));
    }
    Ok(ConvergentState::from_digits(digits).convergent().value())
}

/// Euclidean digits of `x ∈ (0, 1)`, in the form whose last digit is at least 2.
pub fn rational_to_cf(x: &Rational) -> Result<CfDigits> {
    if !x.is_positive() || *x >= Rational::one() {
        return Err(Error::domain(format!("{x} is not in (0, 1)")));
    }
    let mut num = x.numer().magnitude().clone();
    let mut den = x.denom().magnitude().clone();
    let mut digits = Vec::new();
    // x = num/den; 1/x = den/num = a + rest.
    while !num.is_zero() {
        let (a, r) = den.div_rem(&num);
        digits.push(a);
        den = std::mem::replace(&mut num, r);
    }
    Ok(CfDigits(digits))
}

/// The interval between `⟨s⟩` and `⟨s with last digit + 1⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub depth: usize,
}

impl CylinderInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

pub fn cylinder_interval(s: &[BigUint]) -> Result<CylinderInterval> {
    if s.is_empty() {
        return Err(Error::domain("cylinder of the empty string"));
    }
    if s.iter().any(Zero::is_zero) {
        return Err(Error::domain("partial quotients must be positive"));
    }
    let state = ConvergentState::from_digits(s);
    let iv = state.cylinder();
    let expected = Rational::new(
        BigInt::one(),
        BigInt::from(&state.q * (&state.q + &state.q_prev)),
    );
    debug_assert_eq!(iv.width(), expected);
    Ok(iv)
}

/// `1 / (a_next · q_n²)`, the bound on `|x − p_n/q_n|`.
pub fn approx_bound(q_n: &BigUint, a_next: &BigUint) -> Result<Rational> {
    if q_n.is_zero() || a_next.is_zero() {
        return Err(Error::domain("approximation bound needs q_n, a_next ≥ 1"));
    }
    Ok(Rational::new_raw(BigInt::one(), BigInt::from(a_next * q_n * q_n)))
}

/// Sign of `x − p_n/q_n`: positive for even `n`, negative for odd `n`.
pub fn convergent_sign(n: usize) -> i8 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[u64]) -> CfDigits {
        CfDigits::from_u64s(v).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    fn pairs(v: &[u64]) -> Vec<(u64, u64)> {
        use num_traits::ToPrimitive;
        convergent_stream(&d(v))
            .map(|c| (c.p.to_u64().unwrap(), c.q.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn convergent_examples() {
        assert_eq!(pairs(&[1, 2, 3]), vec![(1, 1), (2, 3), (7, 10)]);
        assert_eq!(pairs(&[1, 2, 3, 1])[3], (9, 13));
        assert_eq!(pairs(&[2, 2]), vec![(1, 2), (2, 5)]);
    }

    #[test]
    fn rational_examples() {
        assert_eq!(cf_to_rational(&d(&[2, 2])).unwrap(), r(2, 5));
        assert_eq!(cf_to_rational(&d(&[5])).unwrap(), r(1, 5));
        assert_eq!(cf_to_rational(&d(&[1, 1, 1])).unwrap(), r(2, 3));
        assert_eq!(rational_to_cf(&r(2, 5)).unwrap(), d(&[2, 2]));
        assert_eq!(rational_to_cf(&r(7, 10)).unwrap(), d(&[1, 2, 3]));
        assert_eq!(rational_to_cf(&r(1, 2)).unwrap(), d(&[2]));
        assert!(rational_to_cf(&r(1, 1)).is_err());
        assert!(rational_to_cf(&r(0, 1)).is_err());
    }

    #[test]
    fn cylinder_examples() {
        let iv = cylinder_interval(&d(&[1])).unwrap();
        assert_eq!((iv.lo, iv.hi), (r(1, 2), r(1, 1)));
        let iv = cylinder_interval(&d(&[2])).unwrap();
        assert_eq!((iv.lo, iv.hi), (r(1, 3), r(1, 2)));
        let iv = cylinder_interval(&d(&[1, 2])).unwrap();
        assert_eq!((iv.lo, iv.hi), (r(2, 3), r(3, 4)));
    }

    #[test]
    fn bound_and_sign_examples() {
        let n = |v: u64| BigUint::from(v);
        assert_eq!(approx_bound(&n(10), &n(3)).unwrap(), r(1, 300));
        assert_eq!(approx_bound(&n(1), &n(1)).unwrap(), r(1, 1));
        assert_eq!(approx_bound(&n(13), &n(1)).unwrap(), r(1, 169));
        assert_eq!(convergent_sign(0), 1);
        assert_eq!(convergent_sign(7), -1);
        assert_eq!(convergent_sign(12), 1);
    }

    #[test]
    fn zero_digit_is_rejected() {
        assert!(CfDigits::from_u64s(&[1, 0, 2]).is_err());
        let json = serde_json::to_string(&d(&[3, 4])).unwrap();
        assert_eq!(json, r#"["3","4"]"#);
        assert!(serde_json::from_str::<CfDigits>(r#"["0"]"#).is_err());
    }
}
