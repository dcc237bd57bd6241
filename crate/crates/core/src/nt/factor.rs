use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::prime::{is_prime, is_prime_u64, PrimalityPolicy};
use crate::{Error, Result};

/// Effort cap for [`factorize_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Trial division runs over primes up to this bound before Pollard rho.
    pub trial_bound: u32,
    /// Rho iterations allowed per composite cofactor of up to 64 bits; wider
    /// cofactors get proportionally fewer, since each step costs more.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1 << 16,
            rho_iterations: 1 << 24,
        }
    }
}

/// A natural number together with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    pub value: BigUint,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(BigUint, u32)>,
}

impl FactoredInteger {
    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }
}

const SIEVE_LIMIT: u32 = 1 << 16;

/// Primes below 2^16, computed once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Complete factorization with the default budget and primality policy.
pub fn factorize(n: &BigUint) -> Result<FactoredInteger> {
    factorize_with(n, &FactorBudget::default(), &PrimalityPolicy::default())
}

pub fn factorize_with(
    n: &BigUint,
    budget: &FactorBudget,
    policy: &PrimalityPolicy,
) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut found: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    let bound = budget.trial_bound.min(SIEVE_LIMIT);
    for &p in small_primes().iter().take_while(|&&p| p <= bound) {
        if rest.is_one() {
            break;
        }
        if u64::from(p) * u64::from(p) > rest.to_u64().unwrap_or(u64::MAX) {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            found.push(BigUint::from(p));
        }
    }

    let mut pending = vec![rest];
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m, policy) {
            found.push(m);
            continue;
        }
        let d = split(&m, budget)?;
        pending.push(&m / &d);
        pending.push(d);
    }

    found.sort();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(FactoredInteger {
        value: n.clone(),
        factors,
    })
}

/// Finds a non-trivial divisor of the composite `n`.
fn split(n: &BigUint, budget: &FactorBudget) -> Result<BigUint> {
    if n.is_even() {
        return Ok(BigUint::from(2u8));
    }
    let root = num_integer::Roots::sqrt(n);
    if &root * &root == *n {
        return Ok(root);
    }
    if let Some(small) = n.to_u64() {
        return brent_u64(small, budget.rho_iterations)
            .map(BigUint::from)
            .ok_or_else(|| exhausted(n, budget));
    }
    brent_big(n, scaled_iterations(n, budget)).ok_or_else(|| exhausted(n, budget))
}

fn scaled_iterations(n: &BigUint, budget: &FactorBudget) -> u64 {
    let words = n.bits().div_ceil(64).max(1);
    budget.rho_iterations / (words * words)
}

fn exhausted(n: &BigUint, budget: &FactorBudget) -> Error {
    Error::resource(format!(
        "could not split a {}-bit composite within {} rho iterations",
        n.bits(),
        scaled_iterations(n, budget)
    ))
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Brent's variant of Pollard rho with batched gcds.
fn brent_u64(n: u64, max_iterations: u64) -> Option<u64> {
    debug_assert!(!is_prime_u64(n));
    let mut spent = 0u64;
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (0u64, 2u64, 2u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
            if spent > max_iterations {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn brent_big(n: &BigUint, max_iterations: u64) -> Option<BigUint> {
    let mut spent = 0u64;
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let f = |x: &BigUint| (x * x + c) % n;
        let mut x = BigUint::zero();
        let mut y = BigUint::from(2u8);
        let mut ys = y.clone();
        let mut g = BigUint::one();
        let mut q = BigUint::one();
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = (&q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
            if spent > max_iterations {
                return None;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    None
}
