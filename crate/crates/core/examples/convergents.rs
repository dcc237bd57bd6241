use abnormal_forge::cf::{cf_to_rational, convergent_stream, cylinder_interval, gauss_measure, rational_to_cf, Rational};
use num_bigint::{BigInt, BigUint};

fn main() {
    let x = Rational::new(BigInt::from(16), BigInt::from(113));
    let digits = rational_to_cf(&x).unwrap();
    println!("16/113 = [0; {}]", digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "));
    assert_eq!(cf_to_rational(&digits).unwrap(), x);

    for c in convergent_stream(&digits) {
        let err = &x - c.value();
        println!("{:>2}: {:>3}/{:<3} error {}", c.index, c.p, c.q, err);
    }

    let golden: Vec<BigUint> = vec![BigUint::from(1u8); 30];
    let last = convergent_stream(&golden).last().unwrap();
    println!("30 ones: {}/{} (Fibonacci)", last.p, last.q);

    for prefix in [vec![1u32], vec![1, 1], vec![2], vec![1, 2, 3]] {
        let big: Vec<BigUint> = prefix.iter().map(|&d| BigUint::from(d)).collect();
        let iv = cylinder_interval(&big).unwrap();
        println!("C{prefix:?} = [{}, {}], μ = {}", iv.lo, iv.hi, gauss_measure(&iv).unwrap());
    }
}
