use abnormal_forge::cf::Rational;
use abnormal_forge::construction::{construct, ConstructionConfig, TailMode};
use abnormal_forge::radix::{base_expansion, cf_normality_report, max_run, Convention};
use abnormal_forge::seed::SeedSource;
use num_bigint::BigInt;

fn main() {
    let mut config = ConstructionConfig::new(4, 1, TailMode::Toy);
    config.extra_seed_digits = 100_000;
    let y = construct(&config, &mut SeedSource::rng(42)).unwrap();

    let strings = vec![vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 1]];
    for s in cf_normality_report(&y.digits, &strings, y.digits.len()).unwrap() {
        println!(
            "{:<8} {:>6} / {}  ratio {:.5}  μ {:.5}",
            format!("{:?}", s.string),
            s.count,
            s.prefix,
            s.ratio,
            s.reference
        );
    }

    // The base-2 side: a convergent with a power-of-two denominator
    let r = Rational::new(BigInt::from(22771), BigInt::from(32768));
    let bits = base_expansion(&r, 2, 80, Convention::NonTerminating).unwrap();
    let run = max_run(&bits.digits, &1, 80).unwrap();
    println!("22771/32768 = 0.{bits}...");
    println!("longest run of 1s in 80 places: {}", run.longest_run);
}
