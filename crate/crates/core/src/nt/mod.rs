//! Arbitrary-precision number theory: primality, factoring, CRT, primitive
//! roots, discrete logarithms, Kronecker symbols and the Artin-prime
//! finiteness conditions.

mod arith;
mod crt;
mod dlog;
mod factor;
mod kronecker;
mod lenstra;
mod prime;
mod primroot;

pub use arith::{gcd, is_perfect_power, is_perfect_square, mod_inverse, mod_pow, Natural};
pub use crt::{coprimizing_multiplier, crt_min_solution, ResidueConstraint, Residues};
pub use dlog::{discrete_log, discrete_log_with, lift_exponent, DlogTable};
pub use factor::{factorize, factorize_with, small_primes, FactorBudget, FactoredInteger};
pub use kronecker::{jacobi_symbol, kronecker_symbol};
pub use lenstra::{
    corollary_hypotheses, field_discriminant, lenstra_finiteness, squarefree_kernel,
    LenstraCondition, LenstraVerdict,
};
pub use prime::{is_prime, is_prime_u64, PrimalityPolicy};
pub use primroot::{find_artin_prime, find_artin_prime_with, is_primitive_root, is_primitive_root_with, ArtinHit};
