// One paper-mode block on top of the seed [1, 2, 3, 1], printed digit by digit.
//
//     cargo run --example worked_block

use abnormal_forge::cf::{convergent_stream, CfDigits};
use abnormal_forge::construction::{construct, ConstructionConfig, TailMode};
use abnormal_forge::seed::SeedSource;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = ConstructionConfig::new(4, 1, TailMode::Paper);
    let mut seed = SeedSource::digits(CfDigits::from_u64s(&[1, 2, 3, 1])?);
    let y = construct(&config, &mut seed)?;

    let block = &y.certificates[0];
    println!("base {} at n = {}", block.b, block.n);
    println!("ℓ1 = {}  ℓ2 = {}  ℓ3 = {}", block.ell[0], block.ell[1], block.ell[2]);
    println!("ℓ4 = 2^{} + 1 ({} bits)", &block.k_i * &block.k_i, block.ell[3].bits());
    println!("Artin prime {} after {} candidates", block.artin_prime, block.artin_candidates);

    for c in convergent_stream(&y.digits[..7]) {
        println!("  p{0}/q{0} = {1}/{2}", c.index, c.p, c.q);
    }
    println!("q7 = 2^{}", block.k);
    Ok(())
}
