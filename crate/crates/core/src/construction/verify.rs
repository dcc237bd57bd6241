//! Re-derives every property of a block certificate from the digit stream.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::plan::{exact_power_exponent, tail_digit};
use super::schedule::{base_schedule, block_boundary};
use super::{exceeds_power, BlockCertificate, RunHeader};
use crate::cf::ConvergentState;
use crate::limits::Limits;
use crate::nt::{gcd, is_prime, is_primitive_root_with};
use crate::radix::{base_expansion, to_digits, Convention};
use crate::{Error, Result};

pub const DEFAULT_SAMPLE_WINDOW: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// How many base-`b` digits of `y` and `r_i` to compare.
    pub window: u64,
    pub limits: Limits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            window: DEFAULT_SAMPLE_WINDOW,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A bound the configured mode does not promise; informational.
    Unmet,
    /// Could not be decided within the configured budgets.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub step: String,
    pub property: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Base-`b` digits of `y` pinned down by the cylinder of its known prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitEvidence {
    /// Leading digits of `y` shared by every point of the cylinder.
    pub determined: u64,
    /// `min(k², determined)`: how many of them were examined.
    pub examined: u64,
    /// Examined digits other than `b − 1`.
    pub differing: u64,
    /// CF digits of `y` whose cylinder was used.
    pub cylinder_depth: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub i: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digit_evidence: Option<DigitEvidence>,
}

impl BlockReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn status_of(&self, step: &str, property_prefix: &str) -> Option<CheckStatus> {
        self.checks
            .iter()
            .find(|c| c.step == step && c.property.starts_with(property_prefix))
            .map(|c| c.status)
    }

    fn finish(mut self) -> Self {
        self.passed = self
            .checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Unmet));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub blocks: Vec<BlockReport>,
}

impl VerificationReport {
    pub fn inconclusive(&self) -> bool {
        self.blocks
            .iter()
            .flat_map(|b| &b.checks)
            .any(|c| c.status == CheckStatus::Inconclusive)
    }

    pub fn failed(&self) -> bool {
        self.blocks.iter().any(|b| b.failures().next().is_some())
    }
}

struct Checks {
    list: Vec<Check>,
}

impl Checks {
    fn add(&mut self, step: &str, property: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(step, property, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail);
    }

    /// A check that only fails outright in paper mode.
    fn bound(&mut self, step: &str, property: impl Into<String>, ok: bool, paper: bool, detail: impl Into<String>) {
        let status = match (ok, paper) {
            (true, _) => CheckStatus::Pass,
            (false, true) => CheckStatus::Fail,
            (false, false) => CheckStatus::Unmet,
        };
        self.push(step, property, status, detail);
    }

    fn push(&mut self, step: &str, property: impl Into<String>, status: CheckStatus, detail: impl Into<String>) {
        self.list.push(Check {
            step: step.into(),
            property: property.into(),
            status,
            detail: detail.into(),
        });
    }

    fn fallible(&mut self, step: &str, property: &str, outcome: Result<bool>) {
        match outcome {
            Ok(ok) => self.add(step, property, ok, ""),
            Err(e) if e.is_resource() => self.push(step, property, CheckStatus::Inconclusive, e.to_string()),
            Err(e) => self.add(step, property, false, e.to_string()),
        }
    }
}

/// Checks one certificate against a prefix of `y` that reaches at least `n + 4`.
pub fn verify_certificate(cert: &BlockCertificate, y: &[BigUint], opts: &VerifyOptions) -> Result<BlockReport> {
    let n = cert.n as usize;
    if y.len() < n + 4 {
        return Err(Error::input(
            None,
            format!("block {} needs {} digits of y, only {} given", cert.i, n + 4, y.len()),
        ));
    }
    let mut c = Checks { list: Vec::new() };
    let shape_ok = cert.ell.len() == 4 && cert.q_before.len() == 2 && cert.q_after.len() == 3 && n >= 1;
    c.add("layout", "four inserted digits and five denominators recorded", shape_ok, "");
    if !shape_ok {
        return Ok(BlockReport {
            i: cert.i,
            passed: false,
            checks: c.list,
            digit_evidence: None,
        });
    }
    let b = &cert.b;
    let ell = &cert.ell;
    let [q_prev, q_cur] = [&cert.q_before[0], &cert.q_before[1]];
    let [q1, q2, q3] = [&cert.q_after[0], &cert.q_after[1], &cert.q_after[2]];
    let paper = cert.mode.is_paper();

    // Convergents of y itself, independent of the recorded values.
    let mut state = ConvergentState::new();
    for a in &y[..n] {
        state.push(a);
    }
    let at_n = state.clone();
    let mut after = Vec::new();
    for a in &y[n..n + 4] {
        state.push(a);
        after.push(state.clone());
    }
    let (at_3, at_4) = (&after[2], &after[3]);

    c.add(
        "recurrence",
        "(q_(n-1), q_n) match the convergents of y",
        &at_n.q_prev == q_prev && &at_n.q == q_cur,
        "",
    );
    c.add(
        "recurrence",
        "(q_(n+1), q_(n+2), q_(n+3)) match the convergents of y",
        &after[0].q == q1 && &after[1].q == q2 && &after[2].q == q3,
        "",
    );

    let step_of = ["step 1", "step 2", "step 3", "tail bound"];
    for (j, step) in step_of.iter().enumerate() {
        c.add(
            step,
            format!("ℓ{} equals digit n+{} of y", j + 1, j + 1),
            ell[j] == y[n + j],
            if ell[j] == y[n + j] || ell[j].bits() > 256 {
                String::new()
            } else {
                format!("certificate has {}, y has {}", ell[j], y[n + j])
            },
        );
    }

    // Step 1.
    c.add("step 1", "q_(n+1) = ℓ1·q_n + q_(n-1)", *q1 == &ell[0] * q_cur + q_prev, "");
    c.add("step 1", "gcd(q_(n+1), b) = 1", gcd(q1, b).is_one(), "");
    let q_cur_minus_1 = if q_cur.is_zero() { BigUint::zero() } else { q_cur - 1u8 };
    c.add("step 1", "gcd(q_(n+1), q_n − 1) = 1", gcd(q1, &q_cur_minus_1).is_one(), "");

    // Step 2.
    c.add("step 2", "q_(n+2) = ℓ2·q_(n+1) + q_n", *q2 == &ell[1] * q1 + q_cur, "");
    c.add("step 2", "artin prime equals q_(n+2)", cert.artin_prime == *q2, "");
    c.add(
        "step 2",
        "q_(n+2) ≡ q_n (mod q_(n+1))",
        !q1.is_zero() && q2 % q1 == q_cur % q1,
        "",
    );
    let prime = is_prime(q2, &opts.limits.primality);
    c.add("step 2", "q_(n+2) is prime", prime, "");
    if prime {
        c.fallible(
            "step 2",
            "b is a primitive root modulo q_(n+2)",
            is_primitive_root_with(b, q2, &opts.limits),
        );
    } else {
        c.add("step 2", "b is a primitive root modulo q_(n+2)", false, "modulus is not prime");
    }

    // Step 3.
    c.add("step 3", "q_(n+3) = ℓ3·q_(n+2) + q_(n+1)", *q3 == &ell[2] * q2 + q1, "");
    let k = cert.k.to_u64();
    let exponent = exact_power_exponent(q3, b);
    c.add(
        "step 3",
        "q_(n+3) is a pure power of b",
        exponent.is_some(),
        exponent.map(|e| format!("b^{e}")).unwrap_or_default(),
    );
    c.add("step 3", "q_(n+3) = b^k", exponent.is_some() && exponent == k, "");
    c.add("step 3", "b^k > 2·q_(n+2)", *q3 > q2 << 1u32, "");
    c.add(
        "step 3",
        "(b^k − q_(n+1)) ≡ 0 (mod q_(n+2))",
        q3 >= q1 && !q2.is_zero() && ((q3 - q1) % q2).is_zero(),
        "",
    );
    c.add("step 3", "k_i = k", cert.k_i == cert.k, "");

    // Tail bound.
    let (Some(k), true) = (k, exponent.is_some() && exponent == k) else {
        return Ok(BlockReport {
            i: cert.i,
            passed: false,
            checks: c.list,
            digit_evidence: None,
        });
    };
    let k_sq = u128::from(k) * u128::from(k);
    let ell4 = &ell[3];
    let met = exceeds_power(ell4, b, k_sq);
    c.bound("tail bound", "ℓ4 > b^(k²)", met, paper, "");
    c.add("tail bound", "recorded bound status is accurate", met == cert.tail_bound_met, "");
    match tail_digit(k, b, cert.mode, &opts.limits) {
        Ok(expected) => c.add(
            "tail bound",
            format!("ℓ4 is the {} tail digit plus the offset", cert.mode),
            *ell4 == expected + &cert.tail_offset,
            "",
        ),
        Err(e) => c.push("tail bound", "ℓ4 is the mode's tail digit plus the offset", CheckStatus::Inconclusive, e.to_string()),
    }

    // Parity: r = p_(n+3)/q_(n+3) lies above the whole cylinder of depth n+4.
    let p3 = BigInt::from(at_3.p.clone());
    let q3i = BigInt::from(at_3.q.clone());
    c.add("parity", "n+3 is odd", (n + 3) % 2 == 1, "");
    let endpoints = [
        (BigInt::from(at_4.p.clone()), BigInt::from(at_4.q.clone())),
        (
            BigInt::from(&at_4.p + &at_4.p_prev),
            BigInt::from(&at_4.q + &at_4.q_prev),
        ),
    ];
    // r − P/Q = (p3·Q − P·q3)/(q3·Q).
    let gaps: Vec<BigInt> = endpoints.iter().map(|(p, q)| &p3 * q - p * &q3i).collect();
    c.add(
        "parity",
        "cylinder of depth n+4 lies below r, so y − r < 0",
        gaps.iter().all(|g| *g > BigInt::zero()),
        "",
    );

    // Gap: r − e ≤ 1/(ℓ4·q3²) for both endpoints, and 1/(ℓ4·q3²) < b^(−k²).
    let ell4_i = BigInt::from(ell4.clone());
    let within = gaps
        .iter()
        .zip(&endpoints)
        .all(|(g, (_, q))| g * &ell4_i * &q3i <= *q);
    c.add("gap", "|y − r| ≤ 1/(ℓ4·q_(n+3)²)", within, "");
    let denominator = ell4 * q3 * q3;
    c.bound(
        "gap",
        "1/(ℓ4·q_(n+3)²) < b^(−k²)",
        exceeds_power(&denominator, b, k_sq),
        paper,
        "",
    );

    // Digit evidence.
    let window = opts.window.max(1);
    let span = k_sq.min(u128::from(window)) as u64;
    let r = crate::cf::Rational::new_raw(p3.clone(), q3i.clone());
    let b_small = b.to_u64();
    match b_small {
        Some(bs) if span > k => {
            let r_digits = base_expansion(&r, bs, span as usize, Convention::NonTerminating)?;
            let tail_ok = r_digits.digits[k as usize..].iter().all(|&d| d == bs - 1);
            c.add(
                "digit evidence",
                format!("digits {}..{} of r in base {bs} are all {}", k + 1, span, bs - 1),
                tail_ok,
                "",
            );
        }
        Some(_) => c.add("digit evidence", "r has no digits past k inside the window", true, ""),
        None => c.push("digit evidence", "base fits a machine word", CheckStatus::Inconclusive, ""),
    }

    let mut evidence = None;
    if let Some(bs) = b_small {
        // Each further CF digit shrinks the cylinder by at least a factor φ²,
        // so this depth resolves the whole window when enough digits exist.
        let extra = ((window as f64 * (bs as f64).log2()) / 1.38).ceil() as usize + 2;
        let depth = y.len().min(n + 4 + extra);
        let mut deep = at_4.clone();
        for a in &y[n + 4..depth] {
            deep.push(a);
        }
        let ev = y_digit_evidence(&deep, bs, window, span);
        let ok = ev.differing <= k;
        c.bound(
            "digit evidence",
            format!("at most k = {k} of the first min(k², {window}) digits of y differ from {}", bs - 1),
            ok,
            paper,
            format!("{} of {} examined digits differ", ev.differing, ev.examined),
        );
        c.bound(
            "digit evidence",
            "the prefix of y resolves min(k², window) base-b digits",
            ev.determined >= span,
            paper,
            format!("{} digits determined from {} CF digits", ev.determined, ev.cylinder_depth),
        );
        evidence = Some(ev);
    }

    Ok(BlockReport {
        i: cert.i,
        passed: false,
        checks: c.list,
        digit_evidence: evidence,
    }
    .finish())
}

/// Digits of `y` that every point of the current cylinder shares.
fn y_digit_evidence(state: &ConvergentState, b: u64, window: u64, span: u64) -> DigitEvidence {
    let iv = state.cylinder();
    let scale = num_traits::pow(BigUint::from(b), window as usize);
    let lo_p = iv.lo.numer().magnitude();
    let lo_q = iv.lo.denom().magnitude();
    let hi_p = iv.hi.numer().magnitude();
    let hi_q = iv.hi.denom().magnitude();
    let low = (lo_p * &scale) / lo_q;
    let (hi_floor, hi_rem) = (hi_p * &scale).div_rem(hi_q);
    // ⌈b^W·hi⌉ − 1
    let high = if hi_rem.is_zero() { hi_floor - 1u8 } else { hi_floor };
    let w = window as usize;
    let lo_digits = to_digits(&low, b, w);
    let hi_digits = to_digits(&high.min(&scale - 1u8), b, w);
    let determined = lo_digits.iter().zip(&hi_digits).take_while(|(a, b)| a == b).count() as u64;
    let examined = span.min(determined);
    let differing = lo_digits[..examined as usize].iter().filter(|&&d| d != b - 1).count() as u64;
    DigitEvidence {
        determined,
        examined,
        differing,
        cylinder_depth: state.index as u64,
    }
}

/// Verifies every certificate of a run, including where its blocks must sit.
pub fn verify_run(
    header: &RunHeader,
    certificates: &[BlockCertificate],
    y: &[BigUint],
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let n_size = header.config.block_size;
    let mut blocks = Vec::with_capacity(certificates.len());
    for (idx, cert) in certificates.iter().enumerate() {
        let mut report = verify_certificate(cert, y, opts)?;
        let i = idx as u64 + 1;
        let layout = [
            (cert.i == i, format!("block number is {i}")),
            (cert.n == block_boundary(n_size, i), format!("n = {}", block_boundary(n_size, i))),
            (cert.b == BigUint::from(base_schedule(i)), format!("b = {}", base_schedule(i))),
            (cert.mode == header.config.mode, format!("mode is {}", header.config.mode)),
        ];
        let placed = layout.into_iter().map(|(ok, what)| Check {
            step: "layout".into(),
            property: what,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: String::new(),
        });
        report.checks.splice(0..0, placed);
        blocks.push(report.finish());
    }
    let passed = blocks.iter().all(|b| b.passed);
    Ok(VerificationReport { passed, blocks })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::CfDigits;
    use crate::construction::{construct, ConstructionConfig, TailMode};
    use crate::seed::SeedSource;

    fn worked() -> (RunHeader, crate::construction::ConstructedNumber) {
        let cfg = ConstructionConfig::new(4, 1, TailMode::Paper);
        let mut src = SeedSource::digits(CfDigits::from_u64s(&[1, 2, 3, 1]).unwrap());
        let y = construct(&cfg, &mut src).unwrap();
        (RunHeader::new(cfg, src.descriptor().clone()), y)
    }

    #[test]
    fn worked_block_verifies() {
        let (h, y) = worked();
        let rep = verify_run(&h, &y.certificates, &y.digits, &VerifyOptions::default()).unwrap();
        for c in &rep.blocks[0].checks {
            assert_eq!(c.status, CheckStatus::Pass, "{c:?}");
        }
        let ev = rep.blocks[0].digit_evidence.unwrap();
        assert!(ev.determined >= 225, "{ev:?}");
        assert!(ev.differing <= 15);
    }

    #[test]
    fn tampered_ell3_names_step_3() {
        let (h, y) = worked();
        let mut certs = y.certificates.clone();
        certs[0].ell[2] += 1u8;
        let rep = verify_run(&h, &certs, &y.digits, &VerifyOptions::default()).unwrap();
        assert!(!rep.passed);
        assert!(rep.blocks[0].failures().all(|c| c.step == "step 3"));
        assert!(rep.blocks[0].failures().next().is_some());
    }

    #[test]
    fn decremented_ell2_in_the_stream_fails_step_2() {
        let (h, y) = worked();
        let mut digits = y.digits.to_vec();
        digits[5] -= 1u8;
        let mut certs = y.certificates.clone();
        certs[0].ell[1] -= 1u8;
        let rep = verify_run(&h, &certs, &digits, &VerifyOptions::default()).unwrap();
        assert!(!rep.passed);
        assert!(rep.blocks[0].failures().any(|c| c.step == "step 2"));
    }

    #[test]
    fn truncated_stream_is_an_input_error() {
        let (h, y) = worked();
        let err = verify_run(&h, &y.certificates, &y.digits[..7], &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Input { .. }));
    }

    #[test]
    fn toy_mode_reports_the_tail_bound_unmet() {
        let cfg = ConstructionConfig::new(4, 1, TailMode::Toy);
        let mut src = SeedSource::digits(CfDigits::from_u64s(&[1, 2, 3, 1]).unwrap());
        let y = construct(&cfg, &mut src).unwrap();
        let h = RunHeader::new(cfg, src.descriptor().clone());
        let rep = verify_run(&h, &y.certificates, &y.digits, &VerifyOptions::default()).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.blocks[0].status_of("tail bound", "ℓ4 > b"), Some(CheckStatus::Unmet));
    }
}
