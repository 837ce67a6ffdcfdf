//! Matchgates, nearest-neighbour circuits and their `SO(2m)` rotations.
//!
//! A matchgate acts on lines `(k, k+1)` with one `SU(2)` block `A` on
//! `span{|00⟩, |11⟩}` and another `B` on `span{|01⟩, |10⟩}`. With the
//! Jordan-Wigner operators
//!
//! ```text
//! c_{2k−1} = Z₁ ⋯ Z_{k−1} X_k,    c_{2k} = Z₁ ⋯ Z_{k−1} Y_k
//! ```
//!
//! a circuit `U` satisfies `U† c_μ U = Σ_ν R_{μν} c_ν` for a rotation
//! `R ∈ SO(2m)`. For a circuit `U = G_T ⋯ G₁` (gate `G₁` applied first)
//! the rotation is `R = R_T ⋯ R₁`: appending a gate multiplies its rotation
//! on the left.
//!
//! Gate angle convention: `zrot(φ) = exp(iφ Z_k)` and
//! `xxrot(φ) = exp(iφ X_k X_{k+1})`. Each rotates the coordinate plane
//! `(2k−1, 2k)`, resp. `(2k, 2k+1)`, by the Givens block
//! `[[cos 2φ, sin 2φ], [−sin 2φ, cos 2φ]]`; see [`GIVENS_ANGLE_PER_GATE_ANGLE`].

use std::fmt;

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bits::{BitString, BooleanFunction};
use crate::{Error, Result, TOLERANCE};

/// A Givens rotation by `α` in a coordinate plane is produced by a
/// `zrot`/`xxrot` gate of angle `α / GIVENS_ANGLE_PER_GATE_ANGLE`.
pub const GIVENS_ANGLE_PER_GATE_ANGLE: f64 = 2.0;

pub type Block = [[C64; 2]; 2];

const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// A two-qubit matchgate on lines `(qubit, qubit + 1)`, 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct Matchgate {
    pub a: Block,
    pub b: Block,
    pub qubit: usize,
}

/// Why a matchgate failed validation.
#[derive(Clone, Debug, PartialEq)]
pub enum GateDefect {
    NotUnitary { block: char, deviation: f64 },
    WrongDeterminant { block: char, det: C64 },
    NonFinite,
}

impl fmt::Display for GateDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateDefect::NotUnitary { block, deviation } => {
                write!(f, "block {block} is not unitary (‖M†M − I‖ = {deviation:.3e})")
            }
            GateDefect::WrongDeterminant { block, det } => {
                write!(f, "block {block} has determinant {det} ≠ 1")
            }
            GateDefect::NonFinite => f.write_str("non-finite entry"),
        }
    }
}

fn check_block(m: &Block, name: char) -> std::result::Result<(), GateDefect> {
    if m.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(GateDefect::NonFinite);
    }
    let mut deviation: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut s = ZERO;
            for k in 0..2 {
                s += m[k][i].conj() * m[k][j];
            }
            let target = if i == j { ONE } else { ZERO };
            deviation = deviation.max((s - target).norm());
        }
    }
    if deviation > TOLERANCE {
        return Err(GateDefect::NotUnitary {
            block: name,
            deviation,
        });
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det - ONE).norm() > TOLERANCE {
        return Err(GateDefect::WrongDeterminant { block: name, det });
    }
    Ok(())
}

fn diag(p: C64, q: C64) -> Block {
    [[p, ZERO], [ZERO, q]]
}

impl Matchgate {
    pub fn new(a: Block, b: Block, qubit: usize) -> Self {
        Self { a, b, qubit }
    }

    pub fn identity(qubit: usize) -> Self {
        Self::new(diag(ONE, ONE), diag(ONE, ONE), qubit)
    }

    /// Fermionic swap `|ab⟩ ↦ (−1)^{ab}|ba⟩`, realized up to the global
    /// phase `i` so that both blocks have unit determinant.
    pub fn fswap(qubit: usize) -> Self {
        Self::new(diag(I, -I), [[ZERO, I], [I, ZERO]], qubit)
    }

    /// `exp(iφ Z)` on the first line of the pair.
    pub fn z_first(qubit: usize, angle: f64) -> Self {
        let p = C64::from_polar(1.0, angle);
        Self::new(diag(p, p.conj()), diag(p, p.conj()), qubit)
    }

    /// `exp(iφ Z)` on the second line of the pair.
    pub fn z_second(qubit: usize, angle: f64) -> Self {
        let p = C64::from_polar(1.0, angle);
        Self::new(diag(p, p.conj()), diag(p.conj(), p), qubit)
    }

    /// `exp(iφ X⊗X)`.
    pub fn xx(qubit: usize, angle: f64) -> Self {
        let c = C64::new(angle.cos(), 0.0);
        let s = C64::new(0.0, angle.sin());
        let block = [[c, s], [s, c]];
        Self::new(block, block, qubit)
    }

    /// Membership of both blocks in `SU(2)`.
    pub fn check(&self) -> std::result::Result<(), GateDefect> {
        check_block(&self.a, 'A')?;
        check_block(&self.b, 'B')
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// The 4×4 matrix in the basis `|00⟩, |01⟩, |10⟩, |11⟩` of lines
    /// `(qubit, qubit + 1)`, the first line most significant.
    pub fn matrix(&self) -> Matrix4<C64> {
        let (a, b) = (&self.a, &self.b);
        Matrix4::new(
            a[0][0], ZERO, ZERO, a[0][1], //
            ZERO, b[0][0], b[0][1], ZERO, //
            ZERO, b[1][0], b[1][1], ZERO, //
            a[1][0], ZERO, ZERO, a[1][1],
        )
    }

    /// The 4×4 active block of the rotation, acting on coordinates
    /// `2k−1 … 2k+2`.
    ///
    /// Each two-qubit Jordan-Wigner operator is conjugated by the gate and
    /// expanded in the 16-element Pauli basis; every coefficient off the
    /// four Jordan-Wigner operators must vanish.
    pub fn rotation_block(&self) -> Result<[[f64; 4]; 4]> {
        self.check().map_err(|d| Error::InvalidMatchgate {
            index: None,
            reason: d.to_string(),
        })?;
        let g = self.matrix();
        let gd = g.adjoint();
        let paulis = pauli_basis();
        let jw = jordan_wigner_pair();
        let mut block = [[0.0; 4]; 4];
        for (mu, c) in jw.iter().enumerate() {
            let conj = gd * c * g;
            for (idx, p) in paulis.iter().enumerate() {
                let coeff = (p * conj).trace() / 4.0;
                match JW_PAULI_INDEX.iter().position(|&j| j == idx) {
                    Some(nu) => {
                        if coeff.im.abs() > TOLERANCE {
                            return Err(Error::InvalidMatchgate {
                                index: None,
                                reason: format!("complex coefficient {coeff} on c{}", nu + 1),
                            });
                        }
                        block[mu][nu] = coeff.re;
                    }
                    None if coeff.norm() > TOLERANCE => {
                        return Err(Error::InvalidMatchgate {
                            index: None,
                            reason: format!("conjugated c{} leaves the Jordan-Wigner span", mu + 1),
                        });
                    }
                    None => {}
                }
            }
        }
        Ok(block)
    }

    /// The `2m × 2m` rotation of this gate inside an `m`-qubit register.
    pub fn to_rotation(&self, num_qubits: usize) -> Result<Rotation> {
        if self.qubit == 0 || self.qubit + 1 > num_qubits {
            return Err(Error::QubitOutOfRange {
                index: 0,
                qubit: self.qubit,
                num_qubits,
            });
        }
        let block = self.rotation_block()?;
        let mut r = Rotation::identity(num_qubits);
        let off = 2 * (self.qubit - 1);
        for i in 0..4 {
            for j in 0..4 {
                r.matrix[(off + i, off + j)] = block[i][j];
            }
        }
        Ok(r)
    }
}

fn pauli(k: usize) -> [[C64; 2]; 2] {
    match k {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

fn kron(p: &Block, q: &Block) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| p[r / 2][c / 2] * q[r % 2][c % 2])
}

/// `σ_a ⊗ σ_b` at index `4a + b` with `σ = (I, X, Y, Z)`.
fn pauli_basis() -> Vec<Matrix4<C64>> {
    (0..16).map(|i| kron(&pauli(i / 4), &pauli(i % 4))).collect()
}

/// Positions of `X⊗I, Y⊗I, Z⊗X, Z⊗Y` in [`pauli_basis`].
const JW_PAULI_INDEX: [usize; 4] = [4, 8, 13, 14];

fn jordan_wigner_pair() -> [Matrix4<C64>; 4] {
    let basis = pauli_basis();
    JW_PAULI_INDEX.map(|i| basis[i])
}

/// A gate as it appears in circuit files.
///
/// `zrot` targets a single qubit `k ∈ 1..=m`; it is realized on lines
/// `(1, 2)` when `k = 1` and on lines `(k−1, k)` otherwise. All other
/// kinds act on lines `(k, k+1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    Matchgate {
        qubit: usize,
        #[serde(rename = "A")]
        a: [[[f64; 2]; 2]; 2],
        #[serde(rename = "B")]
        b: [[[f64; 2]; 2]; 2],
    },
    Fswap {
        qubit: usize,
    },
    Zrot {
        qubit: usize,
        angle: f64,
    },
    Xxrot {
        qubit: usize,
        angle: f64,
    },
}

fn block_to_json(m: &Block) -> [[[f64; 2]; 2]; 2] {
    m.map(|row| row.map(|z| [z.re, z.im]))
}

fn block_from_json(m: &[[[f64; 2]; 2]; 2]) -> Block {
    m.map(|row| row.map(|[re, im]| C64::new(re, im)))
}

impl Gate {
    pub fn from_matchgate(g: &Matchgate) -> Self {
        Gate::Matchgate {
            qubit: g.qubit,
            a: block_to_json(&g.a),
            b: block_to_json(&g.b),
        }
    }

    pub fn to_matchgate(&self) -> Matchgate {
        match *self {
            Gate::Matchgate { qubit, ref a, ref b } => {
                Matchgate::new(block_from_json(a), block_from_json(b), qubit)
            }
            Gate::Fswap { qubit } => Matchgate::fswap(qubit),
            Gate::Zrot { qubit, angle } if qubit <= 1 => Matchgate::z_first(qubit, angle),
            Gate::Zrot { qubit, angle } => Matchgate::z_second(qubit - 1, angle),
            Gate::Xxrot { qubit, angle } => Matchgate::xx(qubit, angle),
        }
    }
}

/// An `m`-qubit circuit of nearest-neighbour matchgates, applied in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn push_matchgate(&mut self, gate: &Matchgate) -> &mut Self {
        self.push(Gate::from_matchgate(gate))
    }

    /// Concatenation: `self` first, then `other`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::LengthMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(Circuit {
            num_qubits: self.num_qubits,
            gates,
        })
    }

    /// Gates as validated matchgates, failing on the first bad one.
    pub fn matchgates(&self) -> Result<Vec<Matchgate>> {
        if self.num_qubits == 0 {
            return Err(Error::Invalid("circuit needs at least one qubit".into()));
        }
        self.gates
            .iter()
            .enumerate()
            .map(|(index, gate)| {
                let g = gate.to_matchgate();
                if g.qubit == 0 || g.qubit + 1 > self.num_qubits {
                    let qubit = match gate {
                        Gate::Zrot { qubit, .. } => *qubit,
                        _ => g.qubit,
                    };
                    return Err(Error::QubitOutOfRange {
                        index,
                        qubit,
                        num_qubits: self.num_qubits,
                    });
                }
                g.check().map_err(|d| Error::InvalidMatchgate {
                    index: Some(index),
                    reason: d.to_string(),
                })?;
                Ok(g)
            })
            .collect()
    }

    /// The rotation `R` with `U† c_μ U = Σ_ν R_{μν} c_ν`.
    pub fn compile(&self) -> Result<Rotation> {
        let mut r = Rotation::identity(self.num_qubits);
        for (index, g) in self.matchgates()?.iter().enumerate() {
            let block = g.rotation_block().map_err(|e| match e {
                Error::InvalidMatchgate { reason, .. } => Error::InvalidMatchgate {
                    index: Some(index),
                    reason,
                },
                other => other,
            })?;
            r.left_multiply_block(2 * (g.qubit - 1), &block);
        }
        Ok(r)
    }
}

/// A real `2m × 2m` special-orthogonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation {
    matrix: DMatrix<f64>,
}

impl Rotation {
    pub fn identity(num_qubits: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * num_qubits, 2 * num_qubits),
        }
    }

    /// Validates orthogonality and unit determinant within [`TOLERANCE`].
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(matrix, TOLERANCE)
    }

    pub fn with_tolerance(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::NotRotation(format!(
                "shape {}×{} is not 2m×2m",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let r = Self { matrix };
        let dev = r.orthogonality_defect();
        if !(dev <= tol) {
            return Err(Error::NotRotation(format!("‖RᵀR − I‖ = {dev:.3e}")));
        }
        let det = r.determinant();
        if (det - 1.0).abs() > tol {
            return Err(Error::NotRotation(format!("det R = {det}")));
        }
        Ok(r)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotRotation("ragged or non-square rows".into()));
        }
        Self::new(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
    }

    /// Row-major entries.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Entry `(μ, ν)` with 0-based indices.
    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.matrix[(mu, nu)]
    }

    /// Largest entry of `|RᵀR − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        let g = self.matrix.transpose() * &self.matrix - DMatrix::<f64>::identity(n, n);
        g.amax()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.clone().determinant()
    }

    /// `self · other`.
    pub fn compose(&self, other: &Rotation) -> Result<Rotation> {
        if self.dim() != other.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Rotation {
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Rotation of `first` followed by `second` in time.
    pub fn sequence(first: &Rotation, second: &Rotation) -> Result<Rotation> {
        second.compose(first)
    }

    pub fn max_abs_diff(&self, other: &Rotation) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        (&self.matrix - &other.matrix).amax()
    }

    /// Replaces rows `off..off+4` by `block · rows`.
    fn left_multiply_block(&mut self, off: usize, block: &[[f64; 4]; 4]) {
        let n = self.dim();
        for col in 0..n {
            let old: [f64; 4] = std::array::from_fn(|i| self.matrix[(off + i, col)]);
            for i in 0..4 {
                self.matrix[(off + i, col)] = (0..4).map(|j| block[i][j] * old[j]).sum();
            }
        }
    }

    /// `a_k = ρ_{2k−1} ρ′_{2k} − ρ_{2k} ρ′_{2k−1}` from the first two rows.
    pub fn diag_coefficients(&self) -> DiagCoefficients {
        let m = self.num_qubits();
        let (r0, r1) = (self.matrix.row(0), self.matrix.row(1));
        let a = (0..m)
            .map(|k| r0[2 * k] * r1[2 * k + 1] - r0[2 * k + 1] * r1[2 * k])
            .collect();
        DiagCoefficients { a }
    }

    /// `⟨x| U† Z₁ U |x⟩ = aᵀx̂`.
    pub fn expectation_z1(&self, x: &BitString) -> Result<f64> {
        self.diag_coefficients().expectation(x)
    }

    /// Probability that measuring qubit 1 of `U|x⟩` yields `target`.
    pub fn success_probability(&self, x: &BitString, target: bool) -> Result<f64> {
        let z = self.expectation_z1(x)?;
        Ok(outcome_probability(z, target))
    }

    /// Minimum over `n`-bit inputs `x` of the probability that measuring
    /// qubit 1 of `U|x, 0…0⟩` yields `f(x)`.
    pub fn computes_function(&self, f: &BooleanFunction) -> Result<f64> {
        let n = f.num_inputs();
        let m = self.num_qubits();
        if n > m {
            return Err(Error::Capacity {
                what: "function inputs for register",
                limit: m,
                requested: n,
            });
        }
        let diag = self.diag_coefficients();
        let mut worst = f64::INFINITY;
        for (row, x) in BitString::all(n).enumerate() {
            let z = diag.expectation(&x.padded(m - n))?;
            worst = worst.min(outcome_probability(z, f.eval_index(row)));
        }
        Ok(worst)
    }
}

pub(crate) fn outcome_probability(z: f64, target: bool) -> f64 {
    if target {
        (1.0 - z) / 2.0
    } else {
        (1.0 + z) / 2.0
    }
}

/// Coefficients of `diag(U† Z₁ U) = Σ_k a_k Z_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagCoefficients {
    pub a: Vec<f64>,
}

impl DiagCoefficients {
    pub fn one_norm(&self) -> f64 {
        self.a.iter().map(|v| v.abs()).sum()
    }

    pub fn expectation(&self, x: &BitString) -> Result<f64> {
        if x.len() != self.a.len() {
            return Err(Error::LengthMismatch {
                expected: self.a.len(),
                found: x.len(),
            });
        }
        Ok(self.a.iter().zip(x.signs()).map(|(a, s)| a * s).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn assert_rotation_eq(r: &Rotation, expected: &[[f64; 4]; 4]) {
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(r.get(i, j), expected[i][j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn identity_gate_is_valid() {
        assert!(Matchgate::identity(1).is_valid());
    }

    #[test]
    fn raw_fswap_blocks_fail_determinant() {
        let g = Matchgate::new(
            diag(ONE, -ONE),
            [[ZERO, ONE], [ONE, ZERO]],
            1,
        );
        assert!(matches!(
            g.check(),
            Err(GateDefect::WrongDeterminant { block: 'A', .. })
        ));
        let b_only = Matchgate::new(diag(ONE, ONE), [[ZERO, ONE], [ONE, ZERO]], 1);
        assert!(matches!(
            b_only.check(),
            Err(GateDefect::WrongDeterminant { block: 'B', .. })
        ));
        assert!(Matchgate::fswap(1).is_valid());
    }

    #[test]
    fn non_unitary_block_rejected() {
        let g = Matchgate::new(
            diag(ONE, ONE),
            diag(C64::new(2.0, 0.0), C64::new(0.5, 0.0)),
            1,
        );
        assert!(matches!(
            g.check(),
            Err(GateDefect::NotUnitary { block: 'B', .. })
        ));
        assert!(g.to_rotation(2).is_err());
    }

    #[test]
    fn named_constructors_are_valid() {
        for angle in [0.0, 0.3, -1.2, PI] {
            assert!(Matchgate::z_first(1, angle).is_valid());
            assert!(Matchgate::z_second(1, angle).is_valid());
            assert!(Matchgate::xx(1, angle).is_valid());
        }
    }

    #[test]
    fn identity_gate_gives_identity_rotation() {
        let r = Matchgate::identity(1).to_rotation(3).unwrap();
        assert_eq!(r.max_abs_diff(&Rotation::identity(3)), 0.0);
    }

    #[test]
    fn fswap_swaps_mode_pairs() {
        let r = Matchgate::fswap(1).to_rotation(2).unwrap();
        let expected = [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ];
        assert_rotation_eq(&r, &expected);
        assert_abs_diff_eq!(r.determinant(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn z_rotation_turns_first_plane_by_twice_the_angle() {
        let phi = PI / 4.0;
        let r = Matchgate::z_first(1, phi).to_rotation(2).unwrap();
        let (c, s) = ((2.0 * phi).cos(), (2.0 * phi).sin());
        let expected = [
            [c, s, 0.0, 0.0],
            [-s, c, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        assert_rotation_eq(&r, &expected);
    }

    #[test]
    fn xx_rotation_turns_middle_plane() {
        let phi = 0.37;
        let r = Matchgate::xx(1, phi).to_rotation(2).unwrap();
        let (c, s) = ((2.0 * phi).cos(), (2.0 * phi).sin());
        let expected = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, s, 0.0],
            [0.0, -s, c, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        assert_rotation_eq(&r, &expected);
    }

    #[test]
    fn z_on_second_line_turns_last_plane() {
        let phi = -0.8;
        let r = Matchgate::z_second(1, phi).to_rotation(2).unwrap();
        let (c, s) = ((2.0 * phi).cos(), (2.0 * phi).sin());
        assert_abs_diff_eq!(r.get(2, 2), c, epsilon = 1e-12);
        assert_abs_diff_eq!(r.get(2, 3), s, epsilon = 1e-12);
        assert_abs_diff_eq!(r.get(3, 2), -s, epsilon = 1e-12);
        assert_abs_diff_eq!(r.get(0, 0), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn empty_circuit_compiles_to_identity() {
        let r = Circuit::new(3).compile().unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(r.max_abs_diff(&Rotation::identity(3)), 0.0);
    }

    #[test]
    fn single_gate_circuit_matches_gate_rotation() {
        let g = Matchgate::xx(2, 0.4);
        let mut c = Circuit::new(4);
        c.push_matchgate(&g);
        let r = c.compile().unwrap();
        assert!(r.max_abs_diff(&g.to_rotation(4).unwrap()) < 1e-15);
    }

    #[test]
    fn double_fswap_is_identity() {
        let mut c = Circuit::new(2);
        c.push(Gate::Fswap { qubit: 1 }).push(Gate::Fswap { qubit: 1 });
        let r = c.compile().unwrap();
        assert!(r.max_abs_diff(&Rotation::identity(2)) < 1e-15);
    }

    #[test]
    fn out_of_range_gate_names_its_index() {
        let mut c = Circuit::new(2);
        c.push(Gate::Fswap { qubit: 1 }).push(Gate::Xxrot { qubit: 2, angle: 0.1 });
        match c.compile() {
            Err(Error::QubitOutOfRange { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_gate_names_its_index() {
        let mut c = Circuit::new(3);
        c.push(Gate::Zrot { qubit: 3, angle: 0.2 });
        c.push(Gate::Matchgate {
            qubit: 2,
            a: [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            b: [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]],
        });
        match c.compile() {
            Err(Error::InvalidMatchgate { index, .. }) => assert_eq!(index, Some(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diag_coefficients_of_identity_and_fswap() {
        let a = Rotation::identity(3).diag_coefficients();
        assert_eq!(a.a, vec![1.0, 0.0, 0.0]);
        let r = Matchgate::fswap(1).to_rotation(2).unwrap();
        let a = r.diag_coefficients();
        assert_abs_diff_eq!(a.a[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.a[1], 1.0, epsilon = 1e-12);
        let r = Matchgate::z_first(1, 0.9).to_rotation(3).unwrap();
        let a = r.diag_coefficients();
        assert_abs_diff_eq!(a.a[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.one_norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn identity_readout() {
        let r = Rotation::identity(3);
        assert_eq!(r.expectation_z1(&"000".parse().unwrap()).unwrap(), 1.0);
        assert_eq!(r.expectation_z1(&"100".parse().unwrap()).unwrap(), -1.0);
        assert_eq!(r.success_probability(&"000".parse().unwrap(), false).unwrap(), 1.0);
        assert_eq!(r.success_probability(&"000".parse().unwrap(), true).unwrap(), 0.0);
        assert!(r.expectation_z1(&"00".parse().unwrap()).is_err());
    }

    #[test]
    fn identity_computes_first_bit_only() {
        let r = Rotation::identity(2);
        let x1 = BooleanFunction::dictator(2, 1, false);
        let not_x1 = BooleanFunction::dictator(2, 1, true);
        assert_eq!(r.computes_function(&x1).unwrap(), 1.0);
        assert_eq!(r.computes_function(&not_x1).unwrap(), 0.0);
        let too_big = BooleanFunction::majority(3);
        assert!(r.computes_function(&too_big).is_err());
    }

    #[test]
    fn rotation_constructor_rejects_reflections() {
        let mut m = DMatrix::<f64>::identity(4, 4);
        m[(0, 0)] = -1.0;
        assert!(Rotation::new(m).is_err());
        let mut m = DMatrix::<f64>::identity(4, 4);
        m[(0, 1)] = 0.1;
        assert!(Rotation::new(m).is_err());
        assert!(Rotation::new(DMatrix::<f64>::identity(3, 3)).is_err());
    }

    #[test]
    fn gate_json_shape() {
        let c: Circuit = serde_json::from_str(
            r#"{"num_qubits": 2, "gates": [
                {"kind": "fswap", "qubit": 1},
                {"kind": "zrot", "qubit": 2, "angle": 0.5},
                {"kind": "xxrot", "qubit": 1, "angle": -0.25},
                {"kind": "matchgate", "qubit": 1,
                 "A": [[[1,0],[0,0]],[[0,0],[1,0]]],
                 "B": [[[1,0],[0,0]],[[0,0],[1,0]]]}
            ]}"#,
        )
        .unwrap();
        assert_eq!(c.gates.len(), 4);
        assert!(c.compile().is_ok());
        let text = serde_json::to_string(&c).unwrap();
        let back: Circuit = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
