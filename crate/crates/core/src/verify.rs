//! Cross-checks between the polynomial-time paths and brute force, run by
//! `mgltg verify`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::dense;
use crate::ltg::{self, census, CensusEntry};
use crate::synthesis::{build_rotation, rotation_to_circuit, synthesize_ltg_circuit};
use crate::wms::{equivalence_for_representation, WmsProgram};
use crate::{random, BooleanFunction, Result, TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

impl std::str::FromStr for Level {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            other => Err(crate::Error::Invalid(format!("unknown level {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

struct Plan {
    circuits: usize,
    max_qubits: usize,
    census_max: usize,
    synthesis_max: usize,
    build_round_trips: usize,
    decompose_round_trips: usize,
    samples: usize,
}

impl Level {
    fn plan(self) -> Plan {
        match self {
            Level::Fast => Plan {
                circuits: 60,
                max_qubits: 6,
                census_max: 2,
                synthesis_max: 2,
                build_round_trips: 200,
                decompose_round_trips: 20,
                samples: 10_000,
            },
            Level::Full => Plan {
                circuits: 500,
                max_qubits: 10,
                census_max: 4,
                synthesis_max: 3,
                build_round_trips: 1000,
                decompose_round_trips: 100,
                samples: 100_000,
            },
        }
    }
}

/// Runs every check at `level`; errors inside a check count as failures.
pub fn run(level: Level, seed: u64) -> Vec<CheckResult> {
    let plan = level.plan();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        wrap("oracle-equivalence", oracle_equivalence(&mut rng, plan.circuits, plan.max_qubits, 20)),
        wrap("build-rotation-round-trip", build_round_trip(&mut rng, plan.build_round_trips)),
        wrap(
            "decomposition-round-trip",
            decompose_round_trip(&mut rng, plan.decompose_round_trips),
        ),
    ];
    let mut censuses = Vec::new();
    for n in 1..=plan.census_max {
        match census(n) {
            Ok(c) => censuses.push(c),
            Err(e) => {
                out.push(CheckResult::new("census", false, e.to_string()));
                return out;
            }
        }
    }
    out.push(census_checks(&censuses));
    let small: Vec<&CensusEntry> = censuses
        .iter()
        .take(plan.synthesis_max)
        .flatten()
        .collect();
    out.push(wrap("synthesis-end-to-end", synthesis_end_to_end(&small)));
    out.push(wrap("integer-weight-bounds", weight_bounds(&small)));
    out.push(wrap("wms-equivalence", wms_equivalence(&small)));
    out.push(wrap("wms-sampling", wms_sampling(plan.samples, seed)));
    out
}

fn wrap(name: &'static str, r: Result<(bool, String)>) -> CheckResult {
    match r {
        Ok((passed, detail)) => CheckResult::new(name, passed, detail),
        Err(e) => CheckResult::new(name, false, e.to_string()),
    }
}

fn oracle_equivalence(
    rng: &mut ChaCha8Rng,
    count: usize,
    max_qubits: usize,
    gates: usize,
) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut orth: f64 = 0.0;
    for _ in 0..count {
        let m = rng.gen_range(2..=max_qubits);
        let c = random::circuit(rng, m, gates);
        let r = c.compile()?;
        orth = orth.max(r.orthogonality_defect()).max((r.determinant() - 1.0).abs());
        let inputs: Vec<BitString> = if m <= 6 {
            BitString::all(m).collect()
        } else {
            (0..64).map(|_| BitString::from_index(rng.gen_range(0..1 << m), m)).collect()
        };
        for x in inputs {
            let fast = r.expectation_z1(&x)?;
            let slow = dense::oracle_expectation_z1(&c, &x)?;
            worst = worst.max((fast - slow).abs());
        }
    }
    Ok((
        worst <= TOLERANCE && orth <= TOLERANCE,
        format!("{count} circuits, max |Δ⟨Z₁⟩| = {worst:.2e}, max SO defect = {orth:.2e}"),
    ))
}

fn build_round_trip(rng: &mut ChaCha8Rng, count: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let m = rng.gen_range(2..=8);
        let a = random::one_norm_ball(rng, m);
        let got = build_rotation(&a)?.diag_coefficients().a;
        for (g, w) in got.iter().zip(&a) {
            worst = worst.max((g - w).abs());
        }
    }
    Ok((worst <= TOLERANCE, format!("{count} vectors, max error {worst:.2e}")))
}

fn decompose_round_trip(rng: &mut ChaCha8Rng, count: usize) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let m = rng.gen_range(2..=6);
        let r = random::rotation(rng, m);
        let back = rotation_to_circuit(&r)?.compile()?;
        worst = worst.max(back.max_abs_diff(&r));
    }
    Ok((worst <= 1e-8, format!("{count} rotations, max error {worst:.2e}")))
}

fn census_checks(censuses: &[Vec<CensusEntry>]) -> CheckResult {
    let half = BigRational::new(1.into(), 2.into());
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for entries in censuses {
        let n = entries[0].function.num_inputs();
        counts.push(format!("n={n}: {}", entries.iter().filter(|e| e.is_ltg()).count()));
        for e in entries {
            let Some(cert) = e.outcome.certificate() else {
                continue;
            };
            let f = &e.function;
            if !cert.verify(f) {
                failures.push(format!("{f}: certificate"));
            }
            let deps = BigRational::from_integer(e.dependent.len().into());
            if deps * &cert.epsilon > BigRational::one() {
                failures.push(format!("{f}: {} dependent variables", e.dependent.len()));
            }
            for &k in &e.dependent {
                if num_traits::Signed::abs(&cert.rep.w[k - 1]) < cert.epsilon {
                    failures.push(format!("{f}: |w_{k}| below margin"));
                }
            }
            if cert.epsilon > half && e.dependent.len() > 1 {
                failures.push(format!("{f}: margin > 1/2 with several variables"));
            }
        }
    }
    if let Some(two) = censuses.get(1) {
        let count = two.iter().filter(|e| e.is_ltg()).count();
        if count != 14 {
            failures.push(format!("n=2 has {count} threshold gates"));
        }
    }
    CheckResult::new(
        "census",
        failures.is_empty(),
        if failures.is_empty() {
            format!("threshold gates {}", counts.join(", "))
        } else {
            failures.join("; ")
        },
    )
}

fn synthesis_end_to_end(entries: &[&CensusEntry]) -> Result<(bool, String)> {
    let mut worst_slack = f64::INFINITY;
    let mut worst_tight: f64 = 0.0;
    for e in entries {
        let Some(cert) = e.outcome.certificate() else {
            continue;
        };
        let s = synthesize_ltg_circuit(&cert.rep.to_f64())?;
        let probs = dense::oracle_success_probabilities(&s.circuit, &e.function)?;
        let min = probs.iter().copied().fold(f64::INFINITY, f64::min);
        worst_slack = worst_slack.min(min - s.promised_probability);
        worst_tight = worst_tight.max((probs[cert.witness.to_index()] - s.promised_probability).abs());
    }
    Ok((
        worst_slack >= -1e-8 && worst_tight <= 1e-8,
        format!("min (p − promised) = {worst_slack:.2e}, witness gap {worst_tight:.2e}"),
    ))
}

fn weight_bounds(entries: &[&CensusEntry]) -> Result<(bool, String)> {
    let mut checked = 0;
    for e in entries {
        if let Some(cert) = e.outcome.certificate() {
            ltg::weight_bounds_from(&e.function, cert.clone())?;
            checked += 1;
        }
    }
    let maj = ltg::integer_weight_bounds(&BooleanFunction::majority(3))?;
    let min = ltg::min_integer_weight(&BooleanFunction::majority(3), 24).map(|r| r.weight());
    let ok = maj.achieved.weight() == 15 && min == Some(3);
    Ok((ok, format!("{checked} functions within bounds; majority achieved {} minimum {min:?}", maj.achieved.weight())))
}

fn wms_equivalence(entries: &[&CensusEntry]) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for e in entries {
        if let Some(cert) = e.outcome.certificate() {
            let report = equivalence_for_representation(&e.function, &cert.rep.to_f64())?;
            worst = worst.max(report.max_discrepancy());
        }
    }
    Ok((worst <= 1e-8, format!("max discrepancy {worst:.2e}")))
}

fn wms_sampling(samples: usize, seed: u64) -> Result<(bool, String)> {
    let rep = ltg::LtgRepresentation::new(vec![1.0 / 3.0; 3], 0.0);
    let program = WmsProgram::from_representation(&rep)?;
    let x: BitString = "001".parse()?;
    let freq = program.frequency_of_zero(&x, seed, samples)?;
    let p = 2.0 / 3.0;
    let sigma = (p * (1.0 - p) / samples as f64).sqrt();
    let ok = (freq - p).abs() <= 3.0 * sigma && !sigma.is_zero();
    Ok((ok, format!("{samples} samples, frequency {freq:.5} vs {p:.5} (3σ = {:.5})", 3.0 * sigma)))
}
