//! Random gates, circuits, rotations and coefficient vectors for tests and
//! verification runs.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::matchgate::{Block, Circuit, Gate, Matchgate, Rotation};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random `SU(2)` element from a uniform unit quaternion.
pub fn su2<R: Rng + ?Sized>(rng: &mut R) -> Block {
    let q: [f64; 4] = std::array::from_fn(|_| normal(rng));
    let len = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|v| v / len);
    [
        [C64::new(a, b), C64::new(c, d)],
        [C64::new(-c, d), C64::new(a, -b)],
    ]
}

/// A random gate on `m ≥ 2` qubits, mixing all four gate kinds.
pub fn gate<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Gate {
    let qubit = rng.gen_range(1..m);
    let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    match rng.gen_range(0..8) {
        0 => Gate::Fswap { qubit },
        1 => Gate::Zrot {
            qubit: rng.gen_range(1..=m),
            angle,
        },
        2 => Gate::Xxrot { qubit, angle },
        _ => Gate::from_matchgate(&Matchgate::new(su2(rng), su2(rng), qubit)),
    }
}

pub fn circuit<R: Rng + ?Sized>(rng: &mut R, m: usize, gates: usize) -> Circuit {
    let mut c = Circuit::new(m);
    for _ in 0..gates {
        c.push(gate(rng, m));
    }
    c
}

/// Haar-random element of `SO(2m)` via QR of a Gaussian matrix.
pub fn rotation<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Rotation {
    let dim = 2 * m;
    let g = DMatrix::from_fn(dim, dim, |_, _| normal(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.clone().determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    Rotation::new(q).expect("QR factor is orthogonal")
}

/// A random vector of length `m` with `‖a‖₁ ≤ 1`; roughly one draw in
/// eight sits exactly on the unit sphere of the 1-norm, and some have
/// exact zeros.
pub fn one_norm_ball<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Vec<f64> {
    let mut a: Vec<f64> = (0..m)
        .map(|_| if rng.gen_bool(0.15) { 0.0 } else { normal(rng) })
        .collect();
    let norm: f64 = a.iter().map(|v| v.abs()).sum();
    if norm == 0.0 {
        return a;
    }
    let radius = if rng.gen_bool(0.125) { 1.0 } else { rng.gen::<f64>() };
    for v in &mut a {
        *v *= radius / norm;
    }
    a
}
