//! Linear threshold gates: membership, exact margins, dependent variables
//! and bounded integer representations.
//!
//! A representation `(w, θ)` computes `f(x) = 0` iff `wᵀx̂ + θ > 0`; a value
//! of exactly zero evaluates to 1. Its margin is `min_x |wᵀx̂ + θ|`, and the
//! margin of `f` is the largest margin over representations with
//! `‖w‖₁ + |θ| = 1`, found here by an exact linear program.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::lp::Problem;
use crate::{BooleanFunction, Error, Result, TOLERANCE};

/// Largest `n` for whole-census enumeration.
pub const MAX_CENSUS_INPUTS: usize = 4;

/// A real representation `(w, θ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LtgRepresentation {
    pub w: Vec<f64>,
    pub theta: f64,
}

impl LtgRepresentation {
    pub fn new(w: Vec<f64>, theta: f64) -> Self {
        Self { w, theta }
    }

    pub fn num_inputs(&self) -> usize {
        self.w.len()
    }

    fn check_len(&self, x: &BitString) -> Result<()> {
        if x.len() != self.w.len() {
            return Err(Error::LengthMismatch {
                expected: self.w.len(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `wᵀx̂ + θ`.
    pub fn value(&self, x: &BitString) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.w.iter().zip(x.signs()).map(|(w, s)| w * s).sum::<f64>() + self.theta)
    }

    pub fn eval(&self, x: &BitString) -> Result<bool> {
        Ok(self.value(x)? <= 0.0)
    }

    pub fn one_norm(&self) -> f64 {
        self.w.iter().map(|v| v.abs()).sum::<f64>() + self.theta.abs()
    }

    pub fn is_normalized(&self) -> bool {
        (self.one_norm() - 1.0).abs() <= TOLERANCE
    }

    /// Divides by `‖w‖₁ + |θ|`.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.one_norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Invalid("representation has zero or non-finite norm".into()));
        }
        Ok(Self {
            w: self.w.iter().map(|v| v / norm).collect(),
            theta: self.theta / norm,
        })
    }

    /// The function this representation computes.
    pub fn function(&self) -> Result<BooleanFunction> {
        let n = self.num_inputs();
        check_enumerable(n)?;
        let table = BitString::all(n)
            .map(|x| self.eval(&x))
            .collect::<Result<Vec<_>>>()?;
        BooleanFunction::new(n, table)
    }

    /// Raw margin `min_x |wᵀx̂ + θ|` and the first input attaining it.
    pub fn margin(&self) -> Result<(f64, BitString)> {
        let n = self.num_inputs();
        check_enumerable(n)?;
        let mut best = (f64::INFINITY, BitString::zeros(n));
        for x in BitString::all(n) {
            let v = self.value(&x)?.abs();
            if v < best.0 {
                best = (v, x);
            }
        }
        Ok(best)
    }

    /// Exact rational value of the binary floating-point coefficients.
    pub fn to_exact(&self) -> Result<ExactRepresentation> {
        let conv = |v: f64| {
            BigRational::from_float(v)
                .ok_or_else(|| Error::Invalid(format!("non-finite coefficient {v}")))
        };
        Ok(ExactRepresentation {
            w: self.w.iter().map(|&v| conv(v)).collect::<Result<_>>()?,
            theta: conv(self.theta)?,
        })
    }
}

fn check_enumerable(n: usize) -> Result<()> {
    if n > BooleanFunction::MAX_INPUTS {
        return Err(Error::Capacity {
            what: "enumerated inputs",
            limit: BooleanFunction::MAX_INPUTS,
            requested: n,
        });
    }
    Ok(())
}

/// A representation with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactRepresentation {
    pub w: Vec<BigRational>,
    pub theta: BigRational,
}

impl ExactRepresentation {
    pub fn num_inputs(&self) -> usize {
        self.w.len()
    }

    pub fn value(&self, x: &BitString) -> BigRational {
        let mut acc = self.theta.clone();
        for (w, &b) in self.w.iter().zip(x.bits()) {
            if b {
                acc -= w;
            } else {
                acc += w;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BitString) -> bool {
        !self.value(x).is_positive()
    }

    pub fn one_norm(&self) -> BigRational {
        self.w.iter().map(|v| v.abs()).sum::<BigRational>() + self.theta.abs()
    }

    /// Exact margin and the first input attaining it.
    pub fn margin(&self) -> (BigRational, BitString) {
        let n = self.num_inputs();
        let mut best: Option<(BigRational, BitString)> = None;
        for x in BitString::all(n) {
            let v = self.value(&x).abs();
            if best.as_ref().is_none_or(|(b, _)| &v < b) {
                best = Some((v, x));
            }
        }
        best.expect("at least one input")
    }

    pub fn to_f64(&self) -> LtgRepresentation {
        LtgRepresentation {
            w: self.w.iter().map(to_f64).collect(),
            theta: to_f64(&self.theta),
        }
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Proof that `f` has margin exactly `epsilon`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginCertificate {
    pub epsilon: BigRational,
    /// Normalized representation attaining `epsilon`.
    pub rep: ExactRepresentation,
    pub witness: BitString,
    /// Dual multipliers, one per input row, proving no normalized
    /// representation does better.
    pub input_multipliers: Vec<BigRational>,
    pub norm_multiplier: BigRational,
}

impl MarginCertificate {
    pub fn epsilon_f64(&self) -> f64 {
        to_f64(&self.epsilon)
    }

    /// `(ε + 1) / 2`.
    pub fn optimal_probability(&self) -> BigRational {
        (&self.epsilon + BigRational::one()) / BigRational::from_integer(2.into())
    }

    /// Exact check of feasibility, normalization, witness and optimality.
    pub fn verify(&self, f: &BooleanFunction) -> bool {
        let n = f.num_inputs();
        if self.rep.num_inputs() != n || self.input_multipliers.len() != 1 << n {
            return false;
        }
        if self.rep.one_norm() != BigRational::one() || !self.epsilon.is_positive() {
            return false;
        }
        for (row, x) in BitString::all(n).enumerate() {
            let signed = signed_value(&self.rep.value(&x), f.eval_index(row));
            if signed < self.epsilon {
                return false;
            }
        }
        if self.rep.value(&self.witness).abs() != self.epsilon {
            return false;
        }
        let (sums, total) = weighted_sign_sums(f, &self.input_multipliers);
        if self.input_multipliers.iter().any(|y| y.is_negative()) || total < BigRational::one() {
            return false;
        }
        sums.iter().all(|s| s.abs() <= self.norm_multiplier) && self.norm_multiplier == self.epsilon
    }
}

/// Proof that no representation separates `f`: a nonnegative weighting of
/// the inputs under which every signed feature sums to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Inseparability {
    pub input_weights: Vec<BigRational>,
}

impl Inseparability {
    pub fn verify(&self, f: &BooleanFunction) -> bool {
        if self.input_weights.len() != 1 << f.num_inputs()
            || self.input_weights.iter().any(|y| y.is_negative())
        {
            return false;
        }
        let (sums, total) = weighted_sign_sums(f, &self.input_weights);
        total.is_positive() && sums.iter().all(|s| s.is_zero())
    }
}

/// `Σ_x y_x s_x x̂_k` for each `k`, then `Σ_x y_x s_x` last; and `Σ_x y_x`.
fn weighted_sign_sums(f: &BooleanFunction, y: &[BigRational]) -> (Vec<BigRational>, BigRational) {
    let n = f.num_inputs();
    let mut sums = vec![BigRational::zero(); n + 1];
    let mut total = BigRational::zero();
    for (row, x) in BitString::all(n).enumerate() {
        let yx = &y[row];
        total += yx;
        let s_neg = f.eval_index(row);
        for (k, &b) in x.bits().iter().enumerate() {
            if b == s_neg {
                sums[k] += yx;
            } else {
                sums[k] -= yx;
            }
        }
        if s_neg {
            sums[n] -= yx;
        } else {
            sums[n] += yx;
        }
    }
    (sums, total)
}

fn signed_value(v: &BigRational, f_value: bool) -> BigRational {
    if f_value {
        -v.clone()
    } else {
        v.clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MarginOutcome {
    Ltg(MarginCertificate),
    NotLtg(Inseparability),
}

impl MarginOutcome {
    pub fn certificate(&self) -> Option<&MarginCertificate> {
        match self {
            MarginOutcome::Ltg(c) => Some(c),
            MarginOutcome::NotLtg(_) => None,
        }
    }
}

/// Largest `n` for which the margin LP is solved.
pub const MAX_LP_INPUTS: usize = 12;

/// The margin LP: variables `(w⁺, w⁻, θ⁺, θ⁻, ε) ≥ 0`, one row
/// `ε − s_x((w⁺ − w⁻)ᵀx̂ + θ⁺ − θ⁻) ≤ 0` per input with `s_x = (−1)^{f(x)}`,
/// and `Σ(w⁺ + w⁻) + θ⁺ + θ⁻ ≤ 1`; maximize `ε`.
fn margin_problem(f: &BooleanFunction) -> Problem {
    let n = f.num_inputs();
    let vars = 2 * n + 3;
    let mut rows = Vec::with_capacity((1 << n) + 1);
    for (row, x) in BitString::all(n).enumerate() {
        let s: i64 = if f.eval_index(row) { -1 } else { 1 };
        let mut r = vec![0i64; vars];
        for (k, &b) in x.bits().iter().enumerate() {
            let xhat = if b { -1 } else { 1 };
            r[k] = -s * xhat;
            r[n + k] = s * xhat;
        }
        r[2 * n] = -s;
        r[2 * n + 1] = s;
        r[2 * n + 2] = 1;
        rows.push(r);
    }
    let mut norm = vec![1i64; vars];
    norm[2 * n + 2] = 0;
    rows.push(norm);
    let mut objective = vec![0i64; vars];
    objective[2 * n + 2] = 1;
    let mut rhs = vec![0i64; 1 << n];
    rhs.push(1);
    Problem {
        objective,
        rows,
        rhs,
    }
}

/// Exact margin of `f`, or a proof that `f` is not a threshold gate.
pub fn optimal_margin(f: &BooleanFunction) -> Result<MarginOutcome> {
    let n = f.num_inputs();
    if n > MAX_LP_INPUTS {
        return Err(Error::Capacity {
            what: "margin LP inputs",
            limit: MAX_LP_INPUTS,
            requested: n,
        });
    }
    let problem = margin_problem(f);
    let sol = problem.solve()?;
    let rows = 1usize << n;
    let input_multipliers = sol.dual[..rows].to_vec();
    if !sol.objective.is_positive() {
        let total: BigRational = input_multipliers.iter().sum();
        if !total.is_positive() {
            return Err(Error::Lp("degenerate dual at zero margin".into()));
        }
        let input_weights = input_multipliers.iter().map(|y| y / &total).collect();
        let proof = Inseparability { input_weights };
        if !proof.verify(f) {
            return Err(Error::Lp("inseparability certificate failed to verify".into()));
        }
        return Ok(MarginOutcome::NotLtg(proof));
    }
    let z = &sol.primal;
    let w: Vec<BigRational> = (0..n).map(|k| &z[k] - &z[n + k]).collect();
    let theta = &z[2 * n] - &z[2 * n + 1];
    let raw = ExactRepresentation { w, theta };
    let norm = raw.one_norm();
    let rep = ExactRepresentation {
        w: raw.w.iter().map(|v| v / &norm).collect(),
        theta: &raw.theta / &norm,
    };
    let (epsilon, witness) = rep.margin();
    if epsilon != sol.objective {
        return Err(Error::Lp(format!(
            "normalized LP solution has margin {epsilon}, LP optimum {}",
            sol.objective
        )));
    }
    let cert = MarginCertificate {
        epsilon,
        rep,
        witness,
        input_multipliers,
        norm_multiplier: sol.dual[rows].clone(),
    };
    if !cert.verify(f) {
        return Err(Error::Lp("margin certificate failed to verify".into()));
    }
    Ok(MarginOutcome::Ltg(cert))
}

pub fn is_ltg(f: &BooleanFunction) -> Result<bool> {
    Ok(matches!(optimal_margin(f)?, MarginOutcome::Ltg(_)))
}

/// Indices `k` (1-based) with `f(x) ≠ f(x with bit k flipped)` for some `x`.
pub fn dependent_variables(f: &BooleanFunction) -> Vec<usize> {
    let n = f.num_inputs();
    (1..=n)
        .filter(|&k| {
            let mask = 1usize << (n - k);
            (0..1usize << n).any(|row| f.eval_index(row) != f.eval_index(row ^ mask))
        })
        .collect()
}

/// An all-integer representation `(v, φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerRepresentation {
    pub v: Vec<i64>,
    pub phi: i64,
}

impl IntegerRepresentation {
    /// `‖v‖₁ + |φ|`.
    pub fn weight(&self) -> i64 {
        self.v.iter().map(|c| c.abs()).sum::<i64>() + self.phi.abs()
    }

    pub fn value(&self, x: &BitString) -> i64 {
        self.v
            .iter()
            .zip(x.bits())
            .map(|(&c, &b)| if b { -c } else { c })
            .sum::<i64>()
            + self.phi
    }

    /// Sign agreement with `f` and no zero value on any input.
    pub fn represents(&self, f: &BooleanFunction) -> bool {
        let n = f.num_inputs();
        self.v.len() == n
            && BitString::all(n).enumerate().all(|(row, x)| {
                let v = self.value(&x);
                v != 0 && (v < 0) == f.eval_index(row)
            })
    }

    pub fn to_real(&self) -> LtgRepresentation {
        LtgRepresentation {
            w: self.v.iter().map(|&c| c as f64).collect(),
            theta: self.phi as f64,
        }
    }
}

/// Smallest `d ≥ 1` with `(n + 1)·2^{−d} < ε`.
pub fn truncation_depth(n: usize, epsilon: &BigRational) -> Result<u32> {
    if !epsilon.is_positive() {
        return Err(Error::Invalid(format!("margin must be positive, got {epsilon}")));
    }
    let budget = BigRational::from_integer(BigInt::from(n + 1));
    let mut d = 1u32;
    while &budget / BigRational::from_integer(BigInt::one() << d) >= *epsilon {
        d += 1;
    }
    Ok(d)
}

/// Truncates each coefficient's binary expansion after `d` fractional bits
/// (keeping signs) and scales by `2^d`, where `d` is the
/// [`truncation_depth`]. The result represents the same function with
/// weight at most `2^d ≤ 2(n + 1)/ε`.
pub fn truncate_to_integer(
    rep: &ExactRepresentation,
    epsilon: &BigRational,
) -> Result<IntegerRepresentation> {
    let n = rep.num_inputs();
    check_enumerable(n)?;
    if rep.one_norm() > BigRational::one() {
        return Err(Error::NotNormalized {
            norm: to_f64(&rep.one_norm()),
        });
    }
    let d = truncation_depth(n, epsilon)?;
    let scale = BigRational::from_integer(BigInt::one() << d);
    let trunc = |q: &BigRational| -> Result<i64> {
        let mag = (q.abs() * &scale).floor().to_integer();
        let signed = if q.is_negative() { -mag } else { mag };
        signed
            .to_i64()
            .ok_or_else(|| Error::Invalid("truncated coefficient exceeds i64".into()))
    };
    let out = IntegerRepresentation {
        v: rep.w.iter().map(trunc).collect::<Result<_>>()?,
        phi: trunc(&rep.theta)?,
    };
    for x in BitString::all(n) {
        let v = out.value(&x);
        if v == 0 || (v < 0) != rep.eval(&x) {
            return Err(Error::Verification(format!(
                "truncated representation disagrees on input {x}; is the margin really ≥ {epsilon}?"
            )));
        }
    }
    Ok(out)
}

/// `1/ε ≤ ω(f) ≤ 2(n + 1)/ε` with a representation achieved by truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightBounds {
    pub lower: BigRational,
    pub upper: BigRational,
    pub achieved: IntegerRepresentation,
    pub certificate: MarginCertificate,
}

pub fn integer_weight_bounds(f: &BooleanFunction) -> Result<WeightBounds> {
    let cert = match optimal_margin(f)? {
        MarginOutcome::Ltg(c) => c,
        MarginOutcome::NotLtg(_) => return Err(Error::NotLtg),
    };
    weight_bounds_from(f, cert)
}

pub(crate) fn weight_bounds_from(f: &BooleanFunction, cert: MarginCertificate) -> Result<WeightBounds> {
    let n = f.num_inputs();
    let achieved = truncate_to_integer(&cert.rep, &cert.epsilon)?;
    let lower = cert.epsilon.recip();
    let upper = BigRational::from_integer(BigInt::from(2 * (n + 1))) / &cert.epsilon;
    let weight = BigRational::from_integer(achieved.weight().into());
    if !achieved.represents(f) || weight < lower || weight > upper {
        return Err(Error::Verification(format!(
            "achieved weight {weight} outside [{lower}, {upper}]"
        )));
    }
    Ok(WeightBounds {
        lower,
        upper,
        achieved,
        certificate: cert,
    })
}

/// Minimum-weight integer representation by exhaustive search over all
/// `(v, φ)` of weight `1..=max_weight`.
pub fn min_integer_weight(f: &BooleanFunction, max_weight: i64) -> Option<IntegerRepresentation> {
    let n = f.num_inputs();
    let mut coeffs = vec![0i64; n + 1];
    for weight in 1..=max_weight {
        if let Some(found) = search_weight(f, &mut coeffs, 0, weight) {
            return Some(found);
        }
    }
    None
}

fn search_weight(
    f: &BooleanFunction,
    coeffs: &mut [i64],
    pos: usize,
    remaining: i64,
) -> Option<IntegerRepresentation> {
    if pos + 1 == coeffs.len() {
        let choices: &[i64] = if remaining == 0 { &[0] } else { &[remaining, -remaining] };
        for &c in choices {
            coeffs[pos] = c;
            let rep = IntegerRepresentation {
                v: coeffs[..pos].to_vec(),
                phi: c,
            };
            if rep.represents(f) {
                return Some(rep);
            }
        }
        return None;
    }
    for mag in 0..=remaining {
        let signs: &[i64] = if mag == 0 { &[1] } else { &[1, -1] };
        for &s in signs {
            coeffs[pos] = s * mag;
            if let Some(r) = search_weight(f, coeffs, pos + 1, remaining - mag) {
                return Some(r);
            }
        }
    }
    None
}

/// One row of an exhaustive classification.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusEntry {
    pub function: BooleanFunction,
    pub outcome: MarginOutcome,
    pub dependent: Vec<usize>,
}

impl CensusEntry {
    pub fn margin(&self) -> Option<&BigRational> {
        self.outcome.certificate().map(|c| &c.epsilon)
    }

    pub fn is_ltg(&self) -> bool {
        self.outcome.certificate().is_some()
    }

    /// `table,is_ltg,margin_num,margin_den,dep_count`; margin fields are
    /// empty for non-threshold functions.
    pub fn csv_row(&self) -> String {
        let (num, den) = match self.margin() {
            Some(e) => (e.numer().to_string(), e.denom().to_string()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{}",
            self.function.to_binary(),
            self.is_ltg(),
            num,
            den,
            self.dependent.len()
        )
    }
}

pub const CENSUS_CSV_HEADER: &str = "table,is_ltg,margin_num,margin_den,dep_count";

/// Classifies all `2^{2^n}` functions on `n ≤ 4` bits, in order of their
/// table read as a binary number.
pub fn census(n: usize) -> Result<Vec<CensusEntry>> {
    if n > MAX_CENSUS_INPUTS {
        return Err(Error::Capacity {
            what: "census inputs",
            limit: MAX_CENSUS_INPUTS,
            requested: n,
        });
    }
    let count = 1u64 << (1u64 << n);
    (0..count)
        .map(|code| {
            let function = BooleanFunction::from_code(n, code);
            let outcome = optimal_margin(&function)?;
            let dependent = dependent_variables(&function);
            Ok(CensusEntry {
                function,
                outcome,
                dependent,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::ratio;

    fn rep(w: &[f64], theta: f64) -> LtgRepresentation {
        LtgRepresentation::new(w.to_vec(), theta)
    }

    fn certificate(f: &BooleanFunction) -> MarginCertificate {
        optimal_margin(f).unwrap().certificate().cloned().expect("ltg")
    }

    #[test]
    fn eval_examples() {
        assert!(!rep(&[1.0, 0.0, 0.0], 0.0).eval(&"011".parse().unwrap()).unwrap());
        let third = 1.0 / 3.0;
        let maj = rep(&[third; 3], 0.0);
        assert!(!maj.eval(&"001".parse().unwrap()).unwrap());
        assert!(maj.eval(&"011".parse().unwrap()).unwrap());
        assert!(maj.eval(&"01".parse().unwrap()).is_err());
    }

    #[test]
    fn zero_value_evaluates_to_one() {
        let r = rep(&[1.0, 1.0], 0.0);
        assert!(r.eval(&"01".parse().unwrap()).unwrap());
    }

    #[test]
    fn raw_margins() {
        let third = 1.0 / 3.0;
        let (eps, x) = rep(&[third; 3], 0.0).margin().unwrap();
        assert!((eps - third).abs() < 1e-15);
        assert_eq!(x.bits().iter().filter(|&&b| b).count() % 2, 1);
        let (eps, _) = rep(&[1.0, 0.0], 0.0).margin().unwrap();
        assert_eq!(eps, 1.0);
        // x = 11 gives −1, x = 01/10 give 1, x = 00 gives 3.
        let (eps, x) = rep(&[1.0, 1.0], 1.0).margin().unwrap();
        assert_eq!(eps, 1.0);
        assert_eq!(x.to_string(), "01");
    }

    #[test]
    fn majority_three_has_margin_one_third() {
        let c = certificate(&BooleanFunction::majority(3));
        assert_eq!(c.epsilon, ratio(1, 3));
        assert_eq!(c.optimal_probability(), ratio(2, 3));
    }

    #[test]
    fn xor_is_not_a_threshold_gate() {
        let xor = BooleanFunction::parity(2);
        match optimal_margin(&xor).unwrap() {
            MarginOutcome::NotLtg(proof) => {
                assert!(proof.verify(&xor));
                assert!(!proof.verify(&BooleanFunction::and(2)));
            }
            other => panic!("xor separated: {other:?}"),
        }
        assert!(!is_ltg(&xor).unwrap());
    }

    #[test]
    fn constant_zero_has_margin_one() {
        let c = certificate(&BooleanFunction::constant(3, false));
        assert_eq!(c.epsilon, ratio(1, 1));
        assert!(c.rep.w.iter().all(|w| w.is_zero()));
        assert_eq!(c.rep.theta, ratio(1, 1));
    }

    #[test]
    fn membership_examples() {
        for n in 1..=4 {
            assert!(is_ltg(&BooleanFunction::and(n)).unwrap());
        }
        assert!(is_ltg(&BooleanFunction::dictator(3, 2, true)).unwrap());
    }

    // Under 0 ↦ +1, w = (1,…,1), θ = −n + ½ is negative except at x = 0…0,
    // so it computes OR, not AND.
    #[test]
    fn all_ones_weights_with_large_negative_threshold_compute_or() {
        let n = 3;
        let r = rep(&[1.0; 3], -(n as f64) + 0.5);
        let f = r.function().unwrap();
        let or = BooleanFunction::from_fn(n, |x| x.bits().iter().any(|&b| b));
        assert_eq!(f, or);
        assert_ne!(f, BooleanFunction::and(n));
    }

    #[test]
    fn certificate_rejects_tampering() {
        let f = BooleanFunction::majority(3);
        let mut c = certificate(&f);
        assert!(c.verify(&f));
        c.epsilon = ratio(1, 2);
        assert!(!c.verify(&f));
    }

    #[test]
    fn dependent_variable_examples() {
        assert!(dependent_variables(&BooleanFunction::constant(3, true)).is_empty());
        assert_eq!(dependent_variables(&BooleanFunction::dictator(3, 2, false)), vec![2]);
        assert_eq!(dependent_variables(&BooleanFunction::majority(3)), vec![1, 2, 3]);
    }

    #[test]
    fn truncation_of_majority() {
        let third = ratio(1, 3);
        let r = ExactRepresentation {
            w: vec![third.clone(); 3],
            theta: BigRational::zero(),
        };
        assert_eq!(truncation_depth(3, &third).unwrap(), 4);
        let t = truncate_to_integer(&r, &third).unwrap();
        assert_eq!(t.v, vec![5, 5, 5]);
        assert_eq!(t.phi, 0);
        assert_eq!(t.weight(), 15);
        assert!(t.represents(&BooleanFunction::majority(3)));
    }

    #[test]
    fn truncation_of_dictator_and_constant() {
        let one = ratio(1, 1);
        let r = ExactRepresentation {
            w: vec![one.clone(), BigRational::zero(), BigRational::zero()],
            theta: BigRational::zero(),
        };
        let t = truncate_to_integer(&r, &one).unwrap();
        assert_eq!((t.v.clone(), t.phi), (vec![8, 0, 0], 0));
        let c = ExactRepresentation {
            w: vec![BigRational::zero(); 3],
            theta: one.clone(),
        };
        let t = truncate_to_integer(&c, &one).unwrap();
        assert_eq!((t.v.clone(), t.phi), (vec![0, 0, 0], 8));
    }

    #[test]
    fn truncation_rejects_nonpositive_margin() {
        let r = ExactRepresentation {
            w: vec![ratio(1, 1)],
            theta: BigRational::zero(),
        };
        assert!(truncate_to_integer(&r, &BigRational::zero()).is_err());
    }

    #[test]
    fn weight_bounds_examples() {
        let b = integer_weight_bounds(&BooleanFunction::majority(3)).unwrap();
        assert_eq!(b.lower, ratio(3, 1));
        assert_eq!(b.upper, ratio(24, 1));
        let min = min_integer_weight(&BooleanFunction::majority(3), 24).unwrap();
        assert_eq!(min.weight(), 3);

        let b = integer_weight_bounds(&BooleanFunction::constant(2, false)).unwrap();
        assert_eq!(b.lower, ratio(1, 1));
        assert!(b.achieved.v.iter().all(|&c| c == 0));
        // 3·2^{−2} < 1 gives d = 2.
        assert_eq!(b.achieved.phi, 4);

        // n = 1: (n+1)2^{−d} < 1 first holds at d = 2.
        let b = integer_weight_bounds(&BooleanFunction::dictator(1, 1, false)).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone()), (ratio(1, 1), ratio(4, 1)));
        assert_eq!(b.achieved.v, vec![4]);
        assert_eq!(b.achieved.phi, 0);
        assert!(integer_weight_bounds(&BooleanFunction::parity(2)).is_err());
    }

    #[test]
    fn census_sizes() {
        let one = census(1).unwrap();
        assert_eq!(one.len(), 4);
        assert!(one.iter().all(|e| e.margin() == Some(&ratio(1, 1))));
        let two = census(2).unwrap();
        assert_eq!(two.len(), 16);
        assert_eq!(two.iter().filter(|e| e.is_ltg()).count(), 14);
        assert!(census(5).is_err());
    }

    #[test]
    fn csv_row_format() {
        let e = &census(2).unwrap()[6];
        assert_eq!(e.csv_row(), "0110,false,,,2");
        let e = &census(2).unwrap()[1];
        assert_eq!(e.csv_row(), "0001,true,1,3,2");
    }
}
