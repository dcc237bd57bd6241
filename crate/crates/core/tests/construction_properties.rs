use abnormal_forge::cf::{CfDigits, ConvergentState};
use abnormal_forge::construction::{
    base_schedule, construct, exact_power_exponent, insertion_positions, nth_non_square, verify_run, CertificateFile,
    CheckStatus, ConstructionConfig, RunHeader, TailMode, VerifyOptions,
};
use abnormal_forge::radix::count_occurrences;
use abnormal_forge::seed::SeedSource;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn toy(n: u64, extra: u64) -> ConstructionConfig {
    let mut cfg = ConstructionConfig::new(n, 1, TailMode::Toy);
    cfg.extra_seed_digits = extra;
    cfg
}

fn report_ok(cfg: &ConstructionConfig, src: &SeedSource, y: &abnormal_forge::construction::ConstructedNumber) -> bool {
    let header = RunHeader::new(cfg.clone(), src.descriptor().clone());
    let report = verify_run(&header, &y.certificates, &y.digits, &VerifyOptions::default()).unwrap();
    report.passed
        && report.blocks.iter().flat_map(|b| &b.checks).all(|c| {
            // Outside paper mode the tail and its digit evidence are not promised.
            c.status == CheckStatus::Pass || c.status == CheckStatus::Unmet
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_built_block_verifies(seed in 0u64..10_000, half in 1u64..5) {
        let cfg = toy(2 * half, 20);
        let mut src = SeedSource::rng(seed);
        let y = construct(&cfg, &mut src).unwrap();
        prop_assert!(report_ok(&cfg, &src, &y));
        let c = &y.certificates[0];
        prop_assert_eq!(exact_power_exponent(&c.q_after[2], &c.b), c.k.to_u64());
    }

    #[test]
    fn construction_is_deterministic_and_keeps_the_seed(seed in 0u64..10_000) {
        let cfg = toy(4, 50);
        let a = construct(&cfg, &mut SeedSource::rng(seed)).unwrap();
        let b = construct(&cfg, &mut SeedSource::rng(seed)).unwrap();
        prop_assert_eq!(&a, &b);
        let fresh = SeedSource::rng(seed).next_digits(a.seed_digits().len()).unwrap();
        prop_assert_eq!(a.seed_digits(), fresh.to_vec());
        prop_assert_eq!(&a.insertion_positions, &insertion_positions(4, 1));
    }

    #[test]
    fn insertions_move_counts_by_at_most_the_boundary_loss(seed in 0u64..10_000, s in proptest::collection::vec(1u64..4, 1..4)) {
        let cfg = toy(6, 3000);
        let y = construct(&cfg, &mut SeedSource::rng(seed)).unwrap();
        let seed_digits = y.seed_digits();
        let big: Vec<BigUint> = s.iter().copied().map(BigUint::from).collect();
        for n in [10usize, 11, 12, 100, 3000] {
            let inserted = y.insertion_positions.iter().filter(|&&p| p as usize <= n).count() as u64;
            let a = count_occurrences(&y.digits, &big, n).unwrap();
            let b = count_occurrences(&seed_digits, &big, n).unwrap();
            prop_assert!(a.abs_diff(b) <= (s.len() as u64 + 1) * inserted, "n={} {} vs {}", n, a, b);
        }
    }

    #[test]
    fn relaxed_tail_is_a_power_plus_one(seed in 0u64..1000) {
        let cfg = ConstructionConfig::new(4, 1, TailMode::Relaxed { num: 1, den: 1 });
        let mut src = SeedSource::rng(seed);
        let y = construct(&cfg, &mut src).unwrap();
        let c = &y.certificates[0];
        let k = c.k.to_u64().unwrap();
        prop_assert_eq!(&c.ell[3], &((BigUint::from(2u8) << (k - 1)) + 1u8));
        prop_assert!(report_ok(&cfg, &src, &y));
    }
}

#[test]
fn tail_offsets_give_distinct_valid_numbers() {
    let seed = CfDigits::from_u64s(&[1, 2, 3, 1]).unwrap();
    let mut built = Vec::new();
    for offset in 0u64..3 {
        let mut cfg = ConstructionConfig::new(4, 1, TailMode::Paper);
        cfg.tail_offset = BigUint::from(offset);
        let mut src = SeedSource::digits(seed.clone());
        let y = construct(&cfg, &mut src).unwrap();
        assert!(report_ok(&cfg, &src, &y), "offset {offset}");
        assert_eq!(y.digits[7], (BigUint::from(1u8) << 225u32) + 1u8 + offset);
        built.push(y.digits);
    }
    assert!(built[0] != built[1] && built[1] != built[2] && built[0] != built[2]);
}

#[test]
fn certificates_survive_a_file_round_trip() {
    let cfg = toy(4, 0);
    let mut src = SeedSource::rng(3);
    let y = construct(&cfg, &mut src).unwrap();
    let file = CertificateFile {
        header: RunHeader::new(cfg, src.descriptor().clone()),
        blocks: y.certificates.clone(),
    };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    file.write(&path).unwrap();
    assert_eq!(CertificateFile::read(&path).unwrap(), file);
}

#[test]
fn convergent_denominator_reaches_the_base_power() {
    let cfg = ConstructionConfig::new(4, 1, TailMode::Paper);
    let y = construct(&cfg, &mut SeedSource::digits(CfDigits::from_u64s(&[1, 2, 3, 1]).unwrap())).unwrap();
    let q7 = ConvergentState::from_digits(&y.digits[..7]).q;
    assert_eq!(q7, BigUint::from(1u8) << 15u32);
}

#[test]
fn schedule_lists_non_squares_in_triangles() {
    let listed: Vec<u64> = (1..=10).map(base_schedule).collect();
    assert_eq!(listed, [2, 2, 3, 2, 3, 5, 2, 3, 5, 6]);
    let by_search: Vec<u64> = (2u64..).filter(|m| (1..=*m).all(|r| r * r != *m)).take(200).collect();
    let by_formula: Vec<u64> = (1..=200).map(nth_non_square).collect();
    assert_eq!(by_formula, by_search);
}

#[test]
fn odd_block_sizes_are_rejected() {
    let cfg = ConstructionConfig::new(5, 1, TailMode::Toy);
    let err = construct(&cfg, &mut SeedSource::rng(1)).unwrap_err();
    assert!(err.to_string().contains("even"));
}
