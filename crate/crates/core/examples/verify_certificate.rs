// Builds a toy block, writes the digit file and certificate, then checks them
// the way an outside verifier would: from the files alone.

use abnormal_forge::cf::{read_digit_file, write_digit_file};
use abnormal_forge::construction::{
    construct, verify_run, CertificateFile, CheckStatus, ConstructionConfig, RunHeader, TailMode, VerifyOptions,
};
use abnormal_forge::seed::SeedSource;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("abnormal-forge-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let digits_path = dir.join("y.cf");
    let cert_path = dir.join("cert.json");

    let config = ConstructionConfig::new(6, 1, TailMode::Relaxed { num: 3, den: 2 });
    let mut seed = SeedSource::rng(7);
    let y = construct(&config, &mut seed)?;
    write_digit_file(&digits_path, &["example run".into()], &y.digits)?;
    CertificateFile {
        header: RunHeader::new(config, seed.descriptor().clone()),
        blocks: y.certificates.clone(),
    }
    .write(&cert_path)?;

    let file = CertificateFile::read(&cert_path)?;
    let (_, digits) = read_digit_file(&digits_path)?;
    let report = verify_run(&file.header, &file.blocks, &digits, &VerifyOptions::default())?;
    for check in &report.blocks[0].checks {
        let mark = match check.status {
            CheckStatus::Pass => "ok",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Unmet => "unmet",
            CheckStatus::Inconclusive => "?",
        };
        println!("{mark:>5}  {:<12} {}", check.step, check.property);
    }
    println!("passed: {}", report.passed);

    // Nudge ℓ3 and the verifier points at the third step.
    let mut forged = file.blocks.clone();
    forged[0].ell[2] += 1u8;
    let bad = verify_run(&file.header, &forged, &digits, &VerifyOptions::default())?;
    for check in bad.blocks[0].failures() {
        match check.detail.as_str() {
            "" => println!("forged: {} / {}", check.step, check.property),
            detail => println!("forged: {} / {} ({detail})", check.step, check.property),
        }
    }

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
