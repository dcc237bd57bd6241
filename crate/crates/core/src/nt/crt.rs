use num_bigint::BigUint;

use num_traits::{One, ToPrimitive, Zero};

use super::arith::{gcd, mod_inverse};
use super::factor::{factorize_with, FactorBudget};
use super::prime::PrimalityPolicy;
use crate::{Error, Result};

/// Residues admitted modulo one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residues {
    Only(Vec<BigUint>),
    AllExcept(Vec<BigUint>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueConstraint {
    pub modulus: BigUint,
    pub allowed: Residues,
}

impl ResidueConstraint {
    pub fn only(modulus: impl Into<BigUint>, residues: impl IntoIterator<Item = u64>) -> Self {
        ResidueConstraint {
            modulus: modulus.into(),
            allowed: Residues::Only(residues.into_iter().map(BigUint::from).collect()),
        }
    }

    pub fn except(modulus: BigUint, excluded: Vec<BigUint>) -> Self {
        ResidueConstraint {
            modulus,
            allowed: Residues::AllExcept(excluded),
        }
    }

    pub fn admits(&self, x: &BigUint) -> bool {
        let r = x % &self.modulus;
        match &self.allowed {
            Residues::Only(set) => set.iter().any(|a| a % &self.modulus == r),
            Residues::AllExcept(set) => !set.iter().any(|a| a % &self.modulus == r),
        }
    }

    /// Distinct admitted residues, if the set is listed explicitly.
    fn listed(&self) -> Option<Vec<BigUint>> {
        match &self.allowed {
            Residues::Only(set) => {
                let mut v: Vec<BigUint> = set.iter().map(|a| a % &self.modulus).collect();
                v.sort();
                v.dedup();
                Some(v)
            }
            Residues::AllExcept(_) => None,
        }
    }

    fn admitted_count(&self) -> BigUint {
        match &self.allowed {
            Residues::Only(_) => BigUint::from(self.listed().map_or(0, |v| v.len())),
            Residues::AllExcept(set) => {
                let mut v: Vec<BigUint> = set.iter().map(|a| a % &self.modulus).collect();
                v.sort();
                v.dedup();
                &self.modulus - BigUint::from(v.len())
            }
        }
    }
}

const ENUMERATION_LIMIT: u64 = 1 << 14;
const SCAN_LIMIT: u64 = 1 << 26;

/// Smallest positive integer meeting every constraint.
///
/// Moduli must be pairwise coprime. Small explicit residue sets are solved by
/// CRT-combining every admitted tuple and keeping the least result; dense sets
/// (the `AllExcept` form) are solved by an ascending scan, which terminates
/// quickly because most integers are admitted.
pub fn crt_min_solution(constraints: &[ResidueConstraint]) -> Result<BigUint> {
    for c in constraints {
        if c.modulus.is_zero() {
            return Err(Error::domain("CRT modulus must be positive"));
        }
        if c.admitted_count().is_zero() {
            return Err(Error::Infeasible(format!(
                "no residue is admitted modulo {}",
                c.modulus
            )));
        }
    }
    for (i, a) in constraints.iter().enumerate() {
        for b in &constraints[i + 1..] {
            if !gcd(&a.modulus, &b.modulus).is_one() {
                return Err(Error::domain(format!(
                    "moduli {} and {} are not coprime",
                    a.modulus, b.modulus
                )));
            }
        }
    }
    let product: BigUint = constraints.iter().map(|c| &c.modulus).product();
    let combos: BigUint = constraints.iter().map(|c| c.admitted_count()).product();

    let all_listed = constraints.iter().all(|c| matches!(c.allowed, Residues::Only(_)));
    if all_listed && combos <= BigUint::from(ENUMERATION_LIMIT) {
        let mut partial: Vec<BigUint> = vec![BigUint::zero()];
        let mut modulus = BigUint::one();
        for c in constraints {
            let residues = c.listed().expect("listed residues");
            let mut next = Vec::with_capacity(partial.len() * residues.len());
            for x in &partial {
                for r in &residues {
                    next.push(combine(x, &modulus, r, &c.modulus));
                }
            }
            modulus *= &c.modulus;
            partial = next;
        }
        let best = partial
            .into_iter()
            .map(|x| if x.is_zero() { product.clone() } else { x })
            .min()
            .expect("at least one admitted tuple");
        return Ok(best);
    }

    let limit = product.to_u64().unwrap_or(u64::MAX).min(SCAN_LIMIT);
    let mut x = BigUint::one();
    for _ in 0..limit {
        if constraints.iter().all(|c| c.admits(&x)) {
            return Ok(x);
        }
        x += 1u8;
    }
    Err(Error::resource(format!(
        "CRT scan gave up after {limit} candidates"
    )))
}

/// The unique `x mod m1*m2` with `x ≡ a1 (m1)` and `x ≡ a2 (m2)`, for coprime moduli.
fn combine(a1: &BigUint, m1: &BigUint, a2: &BigUint, m2: &BigUint) -> BigUint {
    if m1.is_one() {
        return a2 % m2;
    }
    let inv = mod_inverse(&(m1 % m2), m2).expect("coprime moduli");
    let diff = ((a2 % m2) + m2 - (a1 % m2)) % m2;
    let t = (diff * inv) % m2;
    a1 + m1 * t
}

/// Least `ℓ ≥ 1` with `gcd(ℓ·q + q_prev, avoid) = 1`.
///
/// Each prime `r | avoid` not dividing `q` excludes exactly one residue
/// `ℓ ≡ −q_prev·q⁻¹ (mod r)`; primes dividing `q` exclude nothing since then
/// `ℓ·q + q_prev ≡ q_prev ≢ 0`. The excluded classes are solved with
/// [`crt_min_solution`]. When `avoid` does not factor within the budget the
/// same least `ℓ` is found by scanning gcds directly.
pub fn coprimizing_multiplier(
    q: &BigUint,
    q_prev: &BigUint,
    avoid: &BigUint,
    budget: &FactorBudget,
    policy: &PrimalityPolicy,
) -> Result<BigUint> {
    if avoid.is_zero() {
        return Err(Error::domain("avoid must be at least 1"));
    }
    if !gcd(q, q_prev).is_one() {
        return Err(Error::domain(format!("{q} and {q_prev} are not coprime")));
    }
    let ell = match factorize_with(avoid, budget, policy) {
        Ok(factored) => {
            let mut constraints = Vec::new();
            for r in factored.primes() {
                if (q % r).is_zero() {
                    assert!(!(q_prev % r).is_zero(), "gcd(q, q_prev) = 1 was checked");
                    continue;
                }
                let inv = mod_inverse(&(q % r), r).expect("r is prime and r does not divide q");
                let excluded = ((r - (q_prev % r)) * inv) % r;
                constraints.push(ResidueConstraint::except(r.clone(), vec![excluded]));
            }
            if constraints.is_empty() {
                BigUint::one()
            } else {
                crt_min_solution(&constraints)?
            }
        }
        Err(e) if e.is_resource() => scan_coprime(q, q_prev, avoid)?,
        Err(e) => return Err(e),
    };
    if !gcd(&(&ell * q + q_prev), avoid).is_one() {
        return Err(Error::Infeasible(format!(
            "multiplier {ell} does not make ℓ·{q} + {q_prev} coprime to {avoid}"
        )));
    }
    Ok(ell)
}

fn scan_coprime(q: &BigUint, q_prev: &BigUint, avoid: &BigUint) -> Result<BigUint> {
    let mut ell = BigUint::one();
    for _ in 0..SCAN_LIMIT {
        if gcd(&(&ell * q + q_prev), avoid).is_one() {
            return Ok(ell);
        }
        ell += 1u8;
    }
    Err(Error::resource("coprimizing scan gave up"))
}
