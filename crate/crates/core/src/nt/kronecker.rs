use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi_symbol(a: &BigInt, n: &BigUint) -> i8 {
    assert!(n.is_odd(), "Jacobi symbol needs an odd modulus");
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("non-negative residue");
    let mut n = n.clone();
    let mut result = 1i8;
    while !a.is_zero() {
        let twos = a.trailing_zeros().unwrap_or(0);
        a >>= twos;
        let n_mod_8 = (&n % 8u8).to_u8().unwrap_or(0);
        if twos % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        // Quadratic reciprocity.
        if (&a % 4u8) == BigUint::from(3u8) && n_mod_8 % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(d / n)`, the multiplicative extension of the Jacobi
/// symbol to every natural `n`.
///
/// Conventions: `(d/0)` is 1 for `d = ±1` and 0 otherwise; `(d/1) = 1`;
/// `(d/2)` is 0 for even `d`, 1 for `d ≡ ±1 (mod 8)` and −1 for `d ≡ ±3 (mod 8)`.
pub fn kronecker_symbol(d: &BigInt, n: &BigUint) -> i8 {
    if n.is_zero() {
        return if d.abs().is_one() { 1 } else { 0 };
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    if twos > 0 && d.is_even() {
        return 0;
    }
    let odd = n >> twos;
    let mut result = 1i8;
    if twos % 2 == 1 {
        let d_mod_8 = d.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0);
        if d_mod_8 == 3 || d_mod_8 == 5 {
            result = -result;
        }
    }
    if odd.is_one() {
        return result;
    }
    result * jacobi_symbol(d, &odd)
}
