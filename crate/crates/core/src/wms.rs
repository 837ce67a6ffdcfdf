//! Weighted majority sampling: a classical computer as strong as
//! matchgate circuits.
//!
//! A program is a distribution `π` on `{1, …, n+1}` and a bit string `c` of
//! length `n + 1`. One run samples `k ~ π` and outputs `x_k ⊕ c_k` when
//! `k ≤ n`, or `c_{n+1}` when `k = n + 1`. Its ±1 output has expectation
//! `Σ_k π_k (−1)^{x_k + c_k} + π_{n+1} (−1)^{c_{n+1}}`, which is `wᵀx̂ + θ`
//! for `w_k = (−1)^{c_k} π_k` and `θ = (−1)^{c_{n+1}} π_{n+1}`.
//!
//! Sampling uses ChaCha8 seeded with [`rand::SeedableRng::seed_from_u64`].

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{sign_of, BitString};
use crate::dense;
use crate::ltg::{optimal_margin, LtgRepresentation, MarginOutcome};
use crate::matchgate::outcome_probability;
use crate::synthesis::synthesize_ltg_circuit;
use crate::{BooleanFunction, Error, Result, TOLERANCE};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WmsProgram {
    pub pi: Vec<f64>,
    pub c: BitString,
}

impl WmsProgram {
    pub fn new(pi: Vec<f64>, c: BitString) -> Result<Self> {
        let p = Self { pi, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.pi.is_empty() {
            return Err(Error::Invalid("empty distribution".into()));
        }
        if self.pi.len() != self.c.len() {
            return Err(Error::LengthMismatch {
                expected: self.pi.len(),
                found: self.c.len(),
            });
        }
        if self.pi.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::Invalid("distribution has a negative entry".into()));
        }
        let total: f64 = self.pi.iter().sum();
        if (total - 1.0).abs() > TOLERANCE {
            return Err(Error::Invalid(format!("distribution sums to {total}")));
        }
        Ok(())
    }

    /// Number of input bits `n`.
    pub fn num_inputs(&self) -> usize {
        self.pi.len() - 1
    }

    /// `π_k = |w_k|`, `π_{n+1} = |θ|`, with sign bits from the signs of the
    /// coefficients; a zero coefficient gets sign bit 0.
    pub fn from_representation(rep: &LtgRepresentation) -> Result<Self> {
        if !rep.is_normalized() {
            return Err(Error::NotNormalized {
                norm: rep.one_norm(),
            });
        }
        let coeffs: Vec<f64> = rep.w.iter().copied().chain([rep.theta]).collect();
        Ok(Self {
            pi: coeffs.iter().map(|v| v.abs()).collect(),
            c: BitString::new(coeffs.iter().map(|&v| v < 0.0).collect()),
        })
    }

    /// `w_k = (−1)^{c_k} π_k`, `θ = (−1)^{c_{n+1}} π_{n+1}`.
    pub fn to_representation(&self) -> LtgRepresentation {
        let n = self.num_inputs();
        let signed: Vec<f64> = self
            .pi
            .iter()
            .zip(self.c.bits())
            .map(|(&p, &b)| sign_of(b) * p)
            .collect();
        LtgRepresentation::new(signed[..n].to_vec(), signed[n])
    }

    fn check_input(&self, x: &BitString) -> Result<()> {
        if x.len() != self.num_inputs() {
            return Err(Error::LengthMismatch {
                expected: self.num_inputs(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Exact expectation of `(−1)^{z_out}` on input `x`.
    pub fn exact_output_expectation(&self, x: &BitString) -> Result<f64> {
        self.check_input(x)?;
        let n = self.num_inputs();
        let inputs: f64 = (0..n)
            .map(|k| self.pi[k] * sign_of(x.bits()[k] ^ self.c.bits()[k]))
            .sum();
        Ok(inputs + self.pi[n] * sign_of(self.c.bits()[n]))
    }

    /// Probability that one run outputs `f(x)`.
    pub fn exact_success_probability(&self, f: &BooleanFunction, x: &BitString) -> Result<f64> {
        let z = self.exact_output_expectation(x)?;
        Ok(outcome_probability(z, f.eval(x)?))
    }

    /// Complements every sign bit; negates the output expectation.
    pub fn complemented(&self) -> Self {
        Self {
            pi: self.pi.clone(),
            c: self.c.complement(),
        }
    }

    /// One run with a generator seeded by `seed`.
    pub fn sample(&self, x: &BitString, seed: u64) -> Result<bool> {
        let mut sampler = self.sampler(x, seed)?;
        Ok(sampler.next_bit())
    }

    /// A stream of independent runs on `x` from one seeded generator.
    pub fn sampler(&self, x: &BitString, seed: u64) -> Result<Sampler<'_>> {
        self.check_input(x)?;
        let index = WeightedIndex::new(&self.pi)
            .map_err(|e| Error::Invalid(format!("bad distribution: {e}")))?;
        Ok(Sampler {
            program: self,
            input: x.clone(),
            index,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Fraction of `count` runs that output 0.
    pub fn frequency_of_zero(&self, x: &BitString, seed: u64, count: usize) -> Result<f64> {
        let mut sampler = self.sampler(x, seed)?;
        let zeros = (0..count).filter(|_| !sampler.next_bit()).count();
        Ok(zeros as f64 / count.max(1) as f64)
    }
}

pub struct Sampler<'a> {
    program: &'a WmsProgram,
    input: BitString,
    index: WeightedIndex<f64>,
    rng: ChaCha8Rng,
}

impl Sampler<'_> {
    pub fn next_bit(&mut self) -> bool {
        let k = self.index.sample(&mut self.rng);
        let c = self.program.c.bits();
        if k < self.program.num_inputs() {
            self.input.bits()[k] ^ c[k]
        } else {
            c[k]
        }
    }
}

/// Per-input comparison of WMS and synthesized-circuit success probability.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub program: WmsProgram,
    pub rows: Vec<EquivalenceRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceRow {
    pub input: BitString,
    pub wms_probability: f64,
    pub circuit_probability: f64,
}

impl EquivalenceReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.wms_probability - r.circuit_probability).abs())
            .fold(0.0, f64::max)
    }
}

/// Largest `n` for which the circuit side is checked by dense simulation.
pub const MAX_EQUIVALENCE_INPUTS: usize = dense::MAX_QUBITS - 1;

/// Builds both machines from the optimal normalized representation of `f`
/// and compares them input by input, the circuit side by dense simulation.
pub fn equivalence_check(f: &BooleanFunction) -> Result<EquivalenceReport> {
    let n = f.num_inputs();
    if n > MAX_EQUIVALENCE_INPUTS {
        return Err(Error::Capacity {
            what: "equivalence-check inputs",
            limit: MAX_EQUIVALENCE_INPUTS,
            requested: n,
        });
    }
    let rep = match optimal_margin(f)? {
        MarginOutcome::Ltg(cert) => cert.rep.to_f64(),
        MarginOutcome::NotLtg(_) => return Err(Error::NotLtg),
    };
    equivalence_for_representation(f, &rep)
}

pub fn equivalence_for_representation(
    f: &BooleanFunction,
    rep: &LtgRepresentation,
) -> Result<EquivalenceReport> {
    let program = WmsProgram::from_representation(rep)?;
    let synthesis = synthesize_ltg_circuit(rep)?;
    let circuit_probs = dense::oracle_success_probabilities(&synthesis.circuit, f)?;
    let rows = BitString::all(f.num_inputs())
        .zip(circuit_probs)
        .map(|(x, circuit_probability)| {
            Ok(EquivalenceRow {
                wms_probability: program.exact_success_probability(f, &x)?,
                circuit_probability,
                input: x,
            })
        })
        .collect::<Result<_>>()?;
    Ok(EquivalenceReport { program, rows })
}
