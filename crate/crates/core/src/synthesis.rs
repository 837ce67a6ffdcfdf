//! Optimal matchgate circuits for threshold gates.
//!
//! For a normalized representation `(w, θ)` the coefficient vector
//! `a = (w₁, …, wₙ, θ)` is realized as the diagonal of `U† Z₁ U` on `n + 1`
//! qubits: `a` is factored as `a_k = u_k v_k`, the first two rotation rows
//! are `ρ = (u₁, 0, u₂, 0, …)` and `ρ′ = (w₁, v₁, w₂, v₂, …)` with `w ⟂ u`,
//! the rotation is completed by Gram-Schmidt, and finally decomposed into
//! adjacent-plane Givens rotations, each of which is a `zrot` or `xxrot`
//! gate. With the ancilla in `|0⟩` the circuit's first-qubit expectation on
//! `|x, 0⟩` is `wᵀx̂ + θ`, so it succeeds with probability `(ε + 1)/2`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::ltg::{optimal_margin, LtgRepresentation, MarginOutcome};
use crate::matchgate::{Circuit, Gate, Rotation, GIVENS_ANGLE_PER_GATE_ANGLE};
use crate::{BooleanFunction, Error, Result, TOLERANCE};

/// Entrywise tolerance for recompiling a decomposed rotation.
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-8;

/// Gram-Schmidt candidates with a smaller residual norm are skipped.
const COMPLETION_RESIDUAL: f64 = 1e-8;

/// Sub-diagonal entries at or below this magnitude are treated as zero.
const GIVENS_SKIP: f64 = 1e-14;

/// `a_k = u_k v_k` with `‖u‖₂ = 1` and `‖v‖₂ = ‖a‖₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneNormFactorization {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

pub fn factor_one_norm(a: &[f64]) -> Result<OneNormFactorization> {
    if a.is_empty() {
        return Err(Error::Invalid("empty coefficient vector".into()));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::Invalid("non-finite coefficient".into()));
    }
    let norm: f64 = a.iter().map(|x| x.abs()).sum();
    if norm > 1.0 + TOLERANCE {
        return Err(Error::Invalid(format!("‖a‖₁ = {norm} exceeds 1")));
    }
    if norm == 0.0 {
        let mut u = vec![0.0; a.len()];
        u[0] = 1.0;
        return Ok(OneNormFactorization {
            u,
            v: vec![0.0; a.len()],
        });
    }
    let u = a.iter().map(|x| (x.abs() / norm).sqrt()).collect();
    let v = a
        .iter()
        .map(|&x| (x.abs() * norm).sqrt().copysign(x))
        .collect();
    Ok(OneNormFactorization { u, v })
}

/// A rotation on `a.len()` qubits whose diagonal coefficients are `a`.
pub fn build_rotation(a: &[f64]) -> Result<Rotation> {
    let m = a.len();
    let OneNormFactorization { u, v } = factor_one_norm(a)?;
    let v_sq: f64 = v.iter().map(|x| x * x).sum();
    let w_norm = (1.0 - v_sq).max(0.0).sqrt();

    let mut w = vec![0.0; m];
    if w_norm > 0.0 {
        let j = (0..m)
            .min_by(|&i, &k| u[i].abs().total_cmp(&u[k].abs()))
            .expect("nonempty");
        let mut cand: Vec<f64> = u.iter().map(|&uk| -u[j] * uk).collect();
        cand[j] += 1.0;
        let len = cand.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len < COMPLETION_RESIDUAL {
            return Err(Error::Invalid(format!(
                "no vector orthogonal to u in dimension {m} for ‖a‖₁ < 1"
            )));
        }
        for (wk, ck) in w.iter_mut().zip(&cand) {
            *wk = ck / len * w_norm;
        }
    }

    let dim = 2 * m;
    let mut rho = DVector::zeros(dim);
    let mut rho_prime = DVector::zeros(dim);
    for k in 0..m {
        rho[2 * k] = u[k];
        rho_prime[2 * k] = w[k];
        rho_prime[2 * k + 1] = v[k];
    }
    let rows = complete_orthonormal(vec![rho, rho_prime], dim)?;
    let mut matrix = DMatrix::from_fn(dim, dim, |i, j| rows[i][j]);
    if matrix.clone().determinant() < 0.0 {
        if dim <= 2 {
            return Err(Error::Invalid("no SO(2) rotation has these rows".into()));
        }
        for j in 0..dim {
            matrix[(dim - 1, j)] = -matrix[(dim - 1, j)];
        }
    }
    Rotation::new(matrix)
}

/// Extends orthonormal `rows` to a basis of `ℝ^dim` with standard basis
/// vectors, orthogonalized twice for stability.
fn complete_orthonormal(mut rows: Vec<DVector<f64>>, dim: usize) -> Result<Vec<DVector<f64>>> {
    for i in 0..dim {
        if rows.len() == dim {
            break;
        }
        let mut r = DVector::zeros(dim);
        r[i] = 1.0;
        for _ in 0..2 {
            for q in &rows {
                let proj = q.dot(&r);
                r -= q * proj;
            }
        }
        let len = r.norm();
        if len >= COMPLETION_RESIDUAL {
            rows.push(r / len);
        }
    }
    if rows.len() != dim {
        return Err(Error::Verification("orthogonal completion ran out of candidates".into()));
    }
    Ok(rows)
}

/// A sequence of nearest-neighbour gates whose rotation is `r`.
///
/// Sub-diagonal entries are zeroed column by column from the bottom up with
/// adjacent-plane Givens rotations `Q = G_K ⋯ G₁`, leaving `QR = I`. Then
/// `R = G₁ᵀ ⋯ G_Kᵀ`, so the gates run in time order `G_Kᵀ, …, G₁ᵀ`. Planes
/// `(2k−1, 2k)` become `zrot` on qubit `k` and planes `(2k, 2k+1)` become
/// `xxrot` on qubits `k, k+1`.
pub fn rotation_to_circuit(r: &Rotation) -> Result<Circuit> {
    let dim = r.dim();
    let mut work = r.matrix().clone();
    // (0-based plane start, Givens angle)
    let mut givens: Vec<(usize, f64)> = Vec::new();
    for col in 0..dim.saturating_sub(1) {
        for row in (col + 1..dim).rev() {
            let a = work[(row - 1, col)];
            let b = work[(row, col)];
            if b.abs() <= GIVENS_SKIP && (a >= 0.0 || row - 1 > col) {
                continue;
            }
            let h = a.hypot(b);
            let (c, s) = (a / h, b / h);
            for j in 0..dim {
                let (top, bottom) = (work[(row - 1, j)], work[(row, j)]);
                work[(row - 1, j)] = c * top + s * bottom;
                work[(row, j)] = -s * top + c * bottom;
            }
            givens.push((row - 1, s.atan2(c)));
        }
    }
    let residual = (work - DMatrix::<f64>::identity(dim, dim)).amax();
    if residual > ROUND_TRIP_TOLERANCE {
        return Err(Error::NotRotation(format!(
            "Givens reduction left residual {residual:.3e}"
        )));
    }
    let m = r.num_qubits();
    let mut circuit = Circuit::new(m);
    for &(plane, alpha) in givens.iter().rev() {
        let angle = -alpha / GIVENS_ANGLE_PER_GATE_ANGLE;
        let gate = if plane % 2 == 0 {
            Gate::Zrot {
                qubit: plane / 2 + 1,
                angle,
            }
        } else {
            Gate::Xxrot {
                qubit: (plane + 1) / 2,
                angle,
            }
        };
        circuit.push(gate);
    }
    if m == 1 && !circuit.gates.is_empty() {
        return Err(Error::Invalid(
            "a single-qubit register admits no matchgates".into(),
        ));
    }
    Ok(circuit)
}

/// A circuit computing a threshold gate with its promised probability.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisResult {
    pub circuit: Circuit,
    /// Rotation of `circuit` as compiled.
    pub rotation: Rotation,
    pub margin: f64,
    pub promised_probability: f64,
    pub representation: LtgRepresentation,
}

impl SynthesisResult {
    pub fn num_inputs(&self) -> usize {
        self.representation.num_inputs()
    }

    pub fn to_document(&self) -> SynthesisDocument {
        SynthesisDocument {
            num_qubits: self.circuit.num_qubits,
            gates: self.circuit.gates.clone(),
            metadata: SynthesisMetadata {
                n: self.num_inputs(),
                margin: self.margin,
                promised_probability: self.promised_probability,
                representation: self.representation.clone(),
                gate_count: self.circuit.gates.len(),
            },
        }
    }
}

/// Circuit JSON with a metadata block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisDocument {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    pub metadata: SynthesisMetadata,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisMetadata {
    pub n: usize,
    pub margin: f64,
    pub promised_probability: f64,
    pub representation: LtgRepresentation,
    pub gate_count: usize,
}

impl SynthesisDocument {
    pub fn circuit(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.clone(),
        }
    }
}

/// An `(n + 1)`-qubit circuit computing the function of `rep` on inputs
/// `(x, 0)` with probability at least `(ε + 1)/2`.
pub fn synthesize_ltg_circuit(rep: &LtgRepresentation) -> Result<SynthesisResult> {
    if !rep.is_normalized() {
        return Err(Error::NotNormalized {
            norm: rep.one_norm(),
        });
    }
    let (margin, _) = rep.margin()?;
    if margin <= 0.0 {
        return Err(Error::Invalid(
            "representation vanishes on some input and has no margin".into(),
        ));
    }
    let mut a = rep.w.clone();
    a.push(rep.theta);
    let target = build_rotation(&a)?;
    let circuit = rotation_to_circuit(&target)?;
    let rotation = circuit.compile()?;
    let drift = rotation.max_abs_diff(&target);
    if drift > ROUND_TRIP_TOLERANCE {
        return Err(Error::Verification(format!(
            "synthesized circuit recompiles with error {drift:.3e}"
        )));
    }
    Ok(SynthesisResult {
        circuit,
        rotation,
        margin,
        promised_probability: (margin + 1.0) / 2.0,
        representation: rep.clone(),
    })
}

/// Synthesis from the optimal-margin representation of `f`.
pub fn synthesize_function(f: &BooleanFunction) -> Result<SynthesisResult> {
    match optimal_margin(f)? {
        MarginOutcome::Ltg(cert) => synthesize_ltg_circuit(&cert.rep.to_f64()),
        MarginOutcome::NotLtg(_) => Err(Error::NotLtg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn factor_examples() {
        let f = factor_one_norm(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(f.u, vec![1.0, 0.0, 0.0]);
        assert_eq!(f.v, vec![1.0, 0.0, 0.0]);

        let f = factor_one_norm(&[0.5, 0.5]).unwrap();
        let h = 0.5f64.sqrt();
        for k in 0..2 {
            assert_abs_diff_eq!(f.u[k], h, epsilon = 1e-15);
            assert_abs_diff_eq!(f.v[k], h, epsilon = 1e-15);
        }

        let f = factor_one_norm(&[0.5, -0.25]).unwrap();
        assert_abs_diff_eq!(f.u[0], (2.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.u[1], (1.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.v[0], (3.0f64 / 8.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.v[1], -(3.0f64 / 16.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(f.u[0] * f.v[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(f.u[1] * f.v[1], -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(f.v.iter().map(|x| x * x).sum::<f64>().sqrt(), 0.75, epsilon = 1e-15);
    }

    #[test]
    fn factor_degenerate_and_invalid() {
        let f = factor_one_norm(&[0.0, 0.0]).unwrap();
        assert_eq!(f.u, vec![1.0, 0.0]);
        assert_eq!(f.v, vec![0.0, 0.0]);
        assert!(factor_one_norm(&[0.8, 0.8]).is_err());
        assert!(factor_one_norm(&[]).is_err());
    }

    #[test]
    fn build_rotation_examples() {
        let r = build_rotation(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.diag_coefficients().a, vec![1.0, 0.0, 0.0]);

        let a = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0];
        let r = build_rotation(&a).unwrap();
        for (got, want) in r.diag_coefficients().a.iter().zip(a) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }

        let r = build_rotation(&[0.0, 0.0, 0.0]).unwrap();
        assert!(r.diag_coefficients().a.iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn identity_decomposes_to_empty_circuit() {
        let c = rotation_to_circuit(&Rotation::identity(4)).unwrap();
        assert!(c.gates.is_empty());
        assert_eq!(c.num_qubits, 4);
    }

    #[test]
    fn single_plane_rotation_is_one_zrot() {
        let alpha: f64 = 0.7;
        let mut m = DMatrix::<f64>::identity(4, 4);
        m[(0, 0)] = alpha.cos();
        m[(0, 1)] = alpha.sin();
        m[(1, 0)] = -alpha.sin();
        m[(1, 1)] = alpha.cos();
        let r = Rotation::new(m).unwrap();
        let c = rotation_to_circuit(&r).unwrap();
        assert_eq!(c.gates.len(), 1);
        match c.gates[0] {
            Gate::Zrot { qubit, angle } => {
                assert_eq!(qubit, 1);
                assert_abs_diff_eq!(angle, alpha / 2.0, epsilon = 1e-12);
            }
            ref other => panic!("unexpected {other:?}"),
        }
        assert!(c.compile().unwrap().max_abs_diff(&r) < 1e-12);
    }

    #[test]
    fn majority_rotation_round_trips() {
        let r = build_rotation(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]).unwrap();
        let c = rotation_to_circuit(&r).unwrap();
        assert_eq!(c.num_qubits, 4);
        assert!(c.gates.len() <= 8 * 7 / 2);
        assert!(c.compile().unwrap().max_abs_diff(&r) <= 1e-8);
    }

    #[test]
    fn synthesis_examples() {
        let s = synthesize_ltg_circuit(&LtgRepresentation::new(vec![1.0, 0.0], 0.0)).unwrap();
        assert_eq!(s.promised_probability, 1.0);
        assert_eq!(s.circuit.num_qubits, 3);

        let third = 1.0 / 3.0;
        let s = synthesize_ltg_circuit(&LtgRepresentation::new(vec![third; 3], 0.0)).unwrap();
        assert_abs_diff_eq!(s.promised_probability, 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            s.rotation.computes_function(&BooleanFunction::majority(3)).unwrap(),
            2.0 / 3.0,
            epsilon = 1e-9
        );

        let s = synthesize_ltg_circuit(&LtgRepresentation::new(vec![0.0; 3], 1.0)).unwrap();
        assert_eq!(s.promised_probability, 1.0);
        let zero = BooleanFunction::constant(3, false);
        assert_abs_diff_eq!(s.rotation.computes_function(&zero).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn synthesis_rejects_unnormalized() {
        let r = LtgRepresentation::new(vec![1.0, 1.0, 1.0], 0.0);
        assert!(matches!(
            synthesize_ltg_circuit(&r),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn synthesis_rejects_xor() {
        assert!(matches!(
            synthesize_function(&BooleanFunction::parity(2)),
            Err(Error::NotLtg)
        ));
    }

    #[test]
    fn document_round_trips_through_json() {
        let s = synthesize_function(&BooleanFunction::majority(3)).unwrap();
        let doc = s.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        let back: SynthesisDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let plain: Circuit = serde_json::from_str(&text).unwrap();
        assert_eq!(plain, s.circuit);
    }
}
