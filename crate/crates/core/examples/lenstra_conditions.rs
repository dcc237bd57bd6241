use abnormal_forge::nt::{corollary_hypotheses, field_discriminant, kronecker_symbol, lenstra_finiteness};
use num_bigint::{BigInt, BigUint};

fn main() {
    let n = |v: u32| BigUint::from(v);
    for g in [2u32, 3, 5, 6, 12, 18] {
        println!("g = {g:<2} d = {}", field_discriminant(&n(g)).unwrap());
    }
    println!();
    println!("(d/n) for d = -3, n = 1..12:");
    let row: Vec<String> = (1..=12).map(|m| kronecker_symbol(&BigInt::from(-3), &n(m)).to_string()).collect();
    println!("  {}", row.join(" "));
    println!();

    let mut finite = 0;
    let mut total = 0;
    for g in [2u32, 3, 5, 8, 27] {
        for f in 2..=24u32 {
            for a in 1..f {
                let v = lenstra_finiteness(&n(g), &n(f), &n(a)).unwrap();
                total += 1;
                if v.finite {
                    finite += 1;
                    assert!(!corollary_hypotheses(&n(g), &n(f), &n(a)));
                }
            }
        }
    }
    println!("{finite} of {total} classes are finite; none satisfy the corollary's hypotheses");
}
