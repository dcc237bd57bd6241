// Draws seed digits and compares their histogram with log2(1 + 1/(k(k+2))).
//
//     cargo run --release --example gauss_kuzmin_seed -- 42 1000000

use abnormal_forge::seed::{GaussKuzmin, DEFAULT_DIGIT_CAP};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(42, |s| s.parse().expect("seed"));
    let draws: usize = args.next().map_or(200_000, |s| s.parse().expect("count"));

    let mut hist = [0u64; 11];
    let mut largest = 0;
    for d in GaussKuzmin::new(seed, DEFAULT_DIGIT_CAP).take(draws) {
        hist[(d as usize).min(10)] += 1;
        largest = largest.max(d);
    }
    println!(" k   observed   expected");
    for k in 1..10 {
        let expected = (1.0 + 1.0 / (k * (k + 2)) as f64).log2();
        println!("{k:>2}   {:.5}    {expected:.5}", hist[k as usize] as f64 / draws as f64);
    }
    println!(">9   {:.5}    {:.5}", hist[10] as f64 / draws as f64, (11.0f64 / 10.0).log2());
    println!("largest digit {largest}");
}
