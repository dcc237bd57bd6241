use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factorize_with;
use super::lenstra::lenstra_finiteness;
use super::prime::is_prime;
use crate::limits::Limits;
use crate::{Error, Result};

/// True iff `g` has multiplicative order `p − 1` modulo the prime `p`.
pub fn is_primitive_root(g: &BigUint, p: &BigUint) -> Result<bool> {
    is_primitive_root_with(g, p, &Limits::default())
}

pub fn is_primitive_root_with(g: &BigUint, p: &BigUint, limits: &Limits) -> Result<bool> {
    if !is_prime(p, &limits.primality) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let g = g % p;
    if g.is_zero() {
        return Ok(false);
    }
    let order = p - 1u8;
    if order.is_one() {
        return Ok(true);
    }
    // The r = 2 condition (g a quadratic non-residue) rejects half of all
    // candidates before we pay for factoring p − 1.
    if (&g).modpow(&(&order >> 1), p).is_one() {
        return Ok(false);
    }
    let factored = factorize_with(&order, &limits.factor, &limits.primality)?;
    for r in factored.primes() {
        if r == &BigUint::from(2u8) {
            continue;
        }
        if g.modpow(&(&order / r), p).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of an Artin-prime search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinHit {
    #[serde(with = "crate::decimal")]
    pub ell: BigUint,
    #[serde(with = "crate::decimal")]
    pub prime: BigUint,
    /// Candidates `ℓ` examined, including the hit.
    pub tested: u64,
}

/// Least `ℓ ≥ 1` such that `p = ℓ·f + a` is prime with `g` a primitive root mod `p`.
pub fn find_artin_prime(g: &BigUint, f: &BigUint, a: &BigUint, search_limit: u64) -> Result<ArtinHit> {
    let limits = Limits {
        search_limit,
        ..Limits::default()
    };
    find_artin_prime_with(g, f, a, &limits)
}

/// [`find_artin_prime`] with explicit effort limits.
///
/// The residue class must be coprime and must not trigger any of Lenstra's
/// finiteness conditions, so that (under GRH) the search is guaranteed to end.
pub fn find_artin_prime_with(g: &BigUint, f: &BigUint, a: &BigUint, limits: &Limits) -> Result<ArtinHit> {
    if a.is_zero() || a >= f {
        return Err(Error::domain(format!("residue {a} must lie in [1, {f})")));
    }
    let verdict = lenstra_finiteness(g, f, a)?;
    if !verdict.residue_class_coprime {
        return Err(Error::domain(format!("gcd({a}, {f}) ≠ 1: the class holds at most one prime")));
    }
    if verdict.finite {
        return Err(Error::domain(format!(
            "only finitely many primes ≡ {a} (mod {f}) have {g} as a primitive root ({:?})",
            verdict.triggered
        )));
    }
    let two = BigUint::from(2u8);
    let mut ell = BigUint::one();
    let mut p = f + a;
    for tested in 1..=limits.search_limit {
        if (p.is_odd() || p == two) && is_prime(&p, &limits.primality) && is_primitive_root_with(g, &p, limits)? {
            return Ok(ArtinHit {
                ell,
                prime: p,
                tested,
            });
        }
        ell += 1u8;
        p += f;
    }
    Err(Error::SearchExhausted {
        what: format!("no prime ≡ {a} (mod {f}) with primitive root {g}"),
        tested: limits.search_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn brute_force_order(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut k = 1;
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    }

    #[test]
    fn spec_examples() {
        assert!(is_primitive_root(&n(2), &n(11)).unwrap());
        assert!(!is_primitive_root(&n(2), &n(7)).unwrap());
        assert!(!is_primitive_root(&n(2), &n(23)).unwrap());
    }

    #[test]
    fn composite_modulus_is_a_domain_error() {
        assert!(matches!(is_primitive_root(&n(2), &n(15)), Err(Error::Domain(_))));
    }

    #[test]
    fn agrees_with_order_computation_below_200() {
        for p in (2u64..200).filter(|&p| super::super::prime::is_prime_u64(p)) {
            for g in 1..p {
                let expected = brute_force_order(g, p) == p - 1;
                assert_eq!(is_primitive_root(&n(g), &n(p)).unwrap(), expected, "g={g} p={p}");
            }
        }
    }

    #[test]
    fn artin_spec_examples() {
        let hit = find_artin_prime(&n(2), &n(23), &n(13), 1000).unwrap();
        assert_eq!((hit.ell.to_u64(), hit.prime.to_u64()), (Some(2), Some(59)));
        let hit = find_artin_prime(&n(2), &n(13), &n(10), 1000).unwrap();
        assert_eq!((hit.ell.to_u64(), hit.prime.to_u64()), (Some(7), Some(101)));
        assert_eq!(hit.tested, 7);
        let hit = find_artin_prime(&n(3), &n(2), &n(1), 1000).unwrap();
        assert_eq!((hit.ell.to_u64(), hit.prime.to_u64()), (Some(2), Some(5)));
    }

    #[test]
    fn artin_search_exhaustion_reports_progress() {
        let err = find_artin_prime(&n(2), &n(13), &n(10), 3).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { tested: 3, .. }));
    }

    #[test]
    fn artin_rejects_finite_classes() {
        // 8 is a cube and 1 ≡ 1 (mod 3): Lenstra's first condition.
        assert!(matches!(find_artin_prime(&n(8), &n(3), &n(1), 100), Err(Error::Domain(_))));
        assert!(matches!(find_artin_prime(&n(2), &n(6), &n(3), 100), Err(Error::Domain(_))));
        assert!(matches!(find_artin_prime(&n(2), &n(6), &n(7), 100), Err(Error::Domain(_))));
    }
}
