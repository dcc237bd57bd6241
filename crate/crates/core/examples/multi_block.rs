// Tries several blocks and reports where the run stops. After the first block
// the moduli are hundreds of bits wide, and the discrete log needed for the
// second block usually exceeds the memory budget; the partial result is still
// a verified prefix.
//
//     cargo run --release --example multi_block -- 42 3 toy

use abnormal_forge::construction::{construct, verify_run, ConstructionConfig, RunHeader, TailMode, VerifyOptions};
use abnormal_forge::seed::SeedSource;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(42, |s| s.parse().unwrap());
    let blocks: u64 = args.next().map_or(3, |s| s.parse().unwrap());
    let mode: TailMode = args.next().map_or(TailMode::Toy, |s| s.parse().unwrap());

    let config = ConstructionConfig::new(4, blocks, mode);
    let mut source = SeedSource::rng(seed);
    let (y, stop) = match construct(&config, &mut source) {
        Ok(y) => (y, None),
        Err(f) => (f.partial, Some(f.error)),
    };
    for c in &y.certificates {
        println!(
            "block {} base {}: q grows to {}^{}, Artin prime has {} bits",
            c.i,
            c.b,
            c.b,
            c.k,
            c.artin_prime.bits()
        );
    }
    if let Some(e) = stop {
        println!("stopped: {e}");
    }
    let header = RunHeader::new(config, source.descriptor().clone());
    let report = verify_run(&header, &y.certificates, &y.digits, &VerifyOptions::default()).unwrap();
    println!("{} digits, {} blocks verified: {}", y.digits.len(), report.blocks.len(), report.passed);
}
