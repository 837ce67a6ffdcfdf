//! Brute-force state-vector simulation, the ground truth for small registers.
//!
//! Amplitude index `i` of an `m`-qubit state is the basis string whose
//! binary expansion, qubit 1 most significant, equals `i`.

use num_complex::Complex64 as C64;

use crate::bits::{BitString, BooleanFunction};
use crate::matchgate::{outcome_probability, Circuit};
use crate::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 14;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    num_qubits: usize,
}

fn check_capacity(m: usize) -> Result<()> {
    if m > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "dense simulation qubits",
            limit: MAX_QUBITS,
            requested: m,
        });
    }
    Ok(())
}

impl StateVector {
    pub fn basis(x: &BitString) -> Result<Self> {
        let m = x.len();
        check_capacity(m)?;
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << m];
        amplitudes[x.to_index()] = C64::new(1.0, 0.0);
        Ok(Self {
            amplitudes,
            num_qubits: m,
        })
    }

    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::Invalid(format!("{len} amplitudes is not a power of two")));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_capacity(num_qubits)?;
        Ok(Self {
            amplitudes,
            num_qubits,
        })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability that measuring qubit 1 gives 0.
    pub fn prob_qubit1_zero(&self) -> f64 {
        let half = self.amplitudes.len() / 2;
        self.amplitudes[..half].iter().map(|a| a.norm_sqr()).sum()
    }
}

/// `U|x⟩` for the full unitary `U` of `circuit`.
pub fn apply_circuit(circuit: &Circuit, x: &BitString) -> Result<StateVector> {
    let m = circuit.num_qubits;
    check_capacity(m)?;
    if x.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: x.len(),
        });
    }
    let gates = circuit.matchgates()?;
    let mut state = StateVector::basis(x)?;
    for g in &gates {
        let u = g.matrix();
        // qubit q sits at bit position m − q
        let hi = 1usize << (m - g.qubit);
        let lo = 1usize << (m - g.qubit - 1);
        let amps = &mut state.amplitudes;
        for base in 0..amps.len() {
            if base & (hi | lo) != 0 {
                continue;
            }
            let idx = [base, base | lo, base | hi, base | hi | lo];
            let old = idx.map(|i| amps[i]);
            for r in 0..4 {
                amps[idx[r]] = (0..4).map(|c| u[(r, c)] * old[c]).sum();
            }
        }
    }
    Ok(state)
}

/// `⟨x| U† Z₁ U |x⟩` by explicit simulation.
pub fn oracle_expectation_z1(circuit: &Circuit, x: &BitString) -> Result<f64> {
    let psi = apply_circuit(circuit, x)?;
    Ok(2.0 * psi.prob_qubit1_zero() - 1.0)
}

/// Per-input probability that qubit 1 of `U|x, 0…0⟩` reads `f(x)`, in
/// row order.
pub fn oracle_success_probabilities(circuit: &Circuit, f: &BooleanFunction) -> Result<Vec<f64>> {
    let n = f.num_inputs();
    let m = circuit.num_qubits;
    if n > m {
        return Err(Error::Capacity {
            what: "function inputs for register",
            limit: m,
            requested: n,
        });
    }
    BitString::all(n)
        .enumerate()
        .map(|(row, x)| {
            let z = oracle_expectation_z1(circuit, &x.padded(m - n))?;
            Ok(outcome_probability(z, f.eval_index(row)))
        })
        .collect()
}
