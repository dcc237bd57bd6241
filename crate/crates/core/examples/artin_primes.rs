// Least primes p ≡ a (mod f) with g as a primitive root, and what Lenstra's
// conditions say about classes where none can exist.

use abnormal_forge::nt::{find_artin_prime, is_primitive_root, lenstra_finiteness};
use num_bigint::BigUint;

fn main() {
    let n = BigUint::from;
    for (g, f, a) in [(2u32, 23u32, 13u32), (2, 10, 3), (3, 7, 2), (5, 12, 7), (10, 3, 1)] {
        let hit = find_artin_prime(&n(g), &n(f), &n(a), 10_000).unwrap();
        assert!(is_primitive_root(&n(g), &hit.prime).unwrap());
        println!("g={g:<2} p ≡ {a} (mod {f}): ℓ = {}, p = {}", hit.ell, hit.prime);
    }

    for (g, f, a) in [(8u32, 3u32, 1u32), (5, 5, 1), (2, 8, 1), (3, 8, 1)] {
        let v = lenstra_finiteness(&n(g), &n(f), &n(a)).unwrap();
        println!("g={g} f={f} a={a}: finite = {}, {:?}", v.finite, v.triggered);
        if v.finite {
            assert!(find_artin_prime(&n(g), &n(f), &n(a), 1000).is_err());
        }
    }
}
