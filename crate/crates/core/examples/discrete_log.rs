use abnormal_forge::nt::{discrete_log, lift_exponent, mod_pow, DlogTable};
use num_bigint::BigUint;
use std::time::Instant;

fn main() {
    let p = BigUint::from(59u32);
    let g = BigUint::from(2u32);
    let k = discrete_log(&g, &BigUint::from(23u32), &p).unwrap();
    println!("2^{k} ≡ 23 (mod 59)");
    let lifted = lift_exponent(&g, &p, &k, &BigUint::from(118u32)).unwrap();
    println!("least k ≡ {k} (mod 58) with 2^k > 118: {lifted}");

    let p = BigUint::from(1_000_000_007u64);
    let g = BigUint::from(5u32);
    let start = Instant::now();
    let table = DlogTable::new(&g, &p, 1 << 28).unwrap();
    println!("table for p = {p} built in {:?}", start.elapsed());
    for e in [1u64, 12345, 999_999_999, 500_000_003] {
        let h = mod_pow(&g, &BigUint::from(e), &p).unwrap();
        println!("  log_5({h}) = {}", table.log(&h).unwrap());
    }

    // A table that would not fit is refused up front.
    let big = (BigUint::from(1u8) << 127u32) - 1u8;
    match DlogTable::new(&BigUint::from(3u8), &big, 1 << 28) {
        Ok(_) => println!("unexpectedly built a table for 2^127 - 1"),
        Err(e) => println!("2^127 - 1: {e}"),
    }
}
