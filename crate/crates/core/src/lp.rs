//! Exact rational simplex for `maximize cᵀz` subject to `Az ≤ b`, `z ≥ 0`
//! with `b ≥ 0`, so the origin is a feasible starting basis.
//!
//! Arithmetic first runs on `i64` ratios with overflow detection and falls
//! back to arbitrary precision when an intermediate value overflows.
//! Pivoting uses the most negative reduced cost and switches to Bland's rule
//! after a run of degenerate pivots.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use crate::{Error, Result};

const DEGENERATE_RUN_BEFORE_BLAND: usize = 8;

/// An exact optimal solution.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// Primal values `z`.
    pub primal: Vec<BigRational>,
    /// Dual values, one per constraint row; `y ≥ 0`, `Aᵀy ≥ c`, `bᵀy = cᵀz`.
    pub dual: Vec<BigRational>,
    pub objective: BigRational,
    pub pivots: usize,
}

/// Problem data with integer coefficients.
#[derive(Clone, Debug)]
pub struct Problem {
    pub objective: Vec<i64>,
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
}

impl Problem {
    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.rows.len() != self.rhs.len() {
            return Err(Error::Lp("row count differs from rhs length".into()));
        }
        if self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::Lp("ragged constraint matrix".into()));
        }
        if self.rhs.iter().any(|&b| b < 0) {
            return Err(Error::Lp("negative right-hand side needs a phase-one start".into()));
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<Solution> {
        self.validate()?;
        match Tableau::<Small>::build(self).run() {
            Ok(sol) => Ok(sol),
            Err(Failure::Overflow) => match Tableau::<Big>::build(self).run() {
                Ok(sol) => Ok(sol),
                Err(Failure::Overflow) => unreachable!("big rationals cannot overflow"),
                Err(Failure::Unbounded) => Err(Error::Lp("unbounded".into())),
            },
            Err(Failure::Unbounded) => Err(Error::Lp("unbounded".into())),
        }
    }
}

enum Failure {
    Overflow,
    Unbounded,
}

trait Field: Clone + PartialOrd + Sized {
    fn from_int(v: i64) -> Self;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn to_big(&self) -> BigRational;
}

#[derive(Clone, PartialEq, PartialOrd)]
struct Small(Ratio<i64>);

#[derive(Clone, PartialEq, PartialOrd)]
struct Big(BigRational);

impl Field for Small {
    fn from_int(v: i64) -> Self {
        Small(Ratio::from_integer(v))
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.0.checked_sub(&o.0).map(Small)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.0.checked_mul(&o.0).map(Small)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.0.checked_div(&o.0).map(Small)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_neg(&self) -> bool {
        self.0.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.0.is_positive()
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.0.numer()), BigInt::from(*self.0.denom()))
    }
}

impl Field for Big {
    fn from_int(v: i64) -> Self {
        Big(BigRational::from_integer(v.into()))
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(Big(&self.0 - &o.0))
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(Big(&self.0 * &o.0))
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(Big(&self.0 / &o.0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_neg(&self) -> bool {
        self.0.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.0.is_positive()
    }
    fn to_big(&self) -> BigRational {
        self.0.clone()
    }
}

/// Dense tableau. Row `i < rows` holds constraint `i`; the last row is the
/// objective `z − cᵀx = 0`. Columns: structural, slack, rhs.
struct Tableau<T> {
    rows: usize,
    vars: usize,
    width: usize,
    cells: Vec<T>,
    basis: Vec<usize>,
}

impl<T: Field> Tableau<T> {
    fn build(p: &Problem) -> Self {
        let rows = p.rows.len();
        let vars = p.objective.len();
        let width = vars + rows + 1;
        let mut cells = vec![T::from_int(0); (rows + 1) * width];
        for (i, row) in p.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                cells[i * width + j] = T::from_int(v);
            }
            cells[i * width + vars + i] = T::from_int(1);
            cells[i * width + width - 1] = T::from_int(p.rhs[i]);
        }
        for (j, &c) in p.objective.iter().enumerate() {
            cells[rows * width + j] = T::from_int(-c);
        }
        Self {
            rows,
            vars,
            width,
            cells,
            basis: (vars..vars + rows).collect(),
        }
    }

    fn at(&self, r: usize, c: usize) -> &T {
        &self.cells[r * self.width + c]
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let obj = self.rows;
        let cols = self.vars + self.rows;
        if bland {
            return (0..cols).find(|&j| self.at(obj, j).is_neg());
        }
        let mut best: Option<usize> = None;
        for j in 0..cols {
            let v = self.at(obj, j);
            if v.is_neg() && best.is_none_or(|b| v < self.at(obj, b)) {
                best = Some(j);
            }
        }
        best
    }

    fn leaving(&self, col: usize) -> std::result::Result<Option<usize>, Failure> {
        let rhs = self.width - 1;
        let mut best: Option<(usize, T)> = None;
        for i in 0..self.rows {
            let a = self.at(i, col);
            if !a.is_pos() {
                continue;
            }
            let ratio = self.at(i, rhs).div(a).ok_or(Failure::Overflow)?;
            let better = match &best {
                None => true,
                Some((bi, br)) => {
                    ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        Ok(best.map(|(i, _)| i))
    }

    fn pivot(&mut self, pr: usize, pc: usize) -> std::result::Result<(), Failure> {
        let w = self.width;
        let p = self.at(pr, pc).clone();
        for j in 0..w {
            let cell = &self.cells[pr * w + j];
            if !cell.is_zero() {
                self.cells[pr * w + j] = cell.div(&p).ok_or(Failure::Overflow)?;
            }
        }
        let pivot_row: Vec<T> = self.cells[pr * w..(pr + 1) * w].to_vec();
        for i in 0..=self.rows {
            if i == pr {
                continue;
            }
            let factor = self.at(i, pc).clone();
            if factor.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate() {
                if pv.is_zero() {
                    continue;
                }
                let delta = factor.mul(pv).ok_or(Failure::Overflow)?;
                let cell = &self.cells[i * w + j];
                self.cells[i * w + j] = cell.sub(&delta).ok_or(Failure::Overflow)?;
            }
        }
        self.basis[pr] = pc;
        Ok(())
    }

    fn run(mut self) -> std::result::Result<Solution, Failure> {
        let rhs = self.width - 1;
        let mut pivots = 0;
        let mut degenerate_run = 0;
        let mut bland = false;
        while let Some(col) = self.entering(bland) {
            let row = self.leaving(col)?.ok_or(Failure::Unbounded)?;
            if self.at(row, rhs).is_zero() {
                degenerate_run += 1;
                if degenerate_run >= DEGENERATE_RUN_BEFORE_BLAND {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            self.pivot(row, col)?;
            pivots += 1;
        }
        let mut primal = vec![BigRational::zero(); self.vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.vars {
                primal[b] = self.at(i, rhs).to_big();
            }
        }
        let dual = (0..self.rows)
            .map(|i| self.at(self.rows, self.vars + i).to_big())
            .collect();
        Ok(Solution {
            primal,
            dual,
            objective: self.at(self.rows, rhs).to_big(),
            pivots,
        })
    }
}

/// Checks primal and dual feasibility and equal objectives exactly.
pub fn verify(problem: &Problem, sol: &Solution) -> bool {
    let big = |v: i64| BigRational::from_integer(v.into());
    let zero = BigRational::zero();
    if sol.primal.iter().any(|z| z < &zero) || sol.dual.iter().any(|y| y < &zero) {
        return false;
    }
    for (row, &b) in problem.rows.iter().zip(&problem.rhs) {
        let lhs: BigRational = row.iter().zip(&sol.primal).map(|(&a, z)| big(a) * z).sum();
        if lhs > big(b) {
            return false;
        }
    }
    for (j, &c) in problem.objective.iter().enumerate() {
        let col: BigRational = problem
            .rows
            .iter()
            .zip(&sol.dual)
            .map(|(row, y)| big(row[j]) * y)
            .sum();
        if col < big(c) {
            return false;
        }
    }
    let primal_obj: BigRational = problem
        .objective
        .iter()
        .zip(&sol.primal)
        .map(|(&c, z)| big(c) * z)
        .sum();
    let dual_obj: BigRational = problem.rhs.iter().zip(&sol.dual).map(|(&b, y)| big(b) * y).sum();
    primal_obj == sol.objective && dual_obj == sol.objective
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_problem() {
        // max 3x + 5y  s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18  →  36 at (2, 6)
        let p = Problem {
            objective: vec![3, 5],
            rows: vec![vec![1, 0], vec![0, 2], vec![3, 2]],
            rhs: vec![4, 12, 18],
        };
        let s = p.solve().unwrap();
        assert_eq!(s.objective, ratio(36, 1));
        assert_eq!(s.primal, vec![ratio(2, 1), ratio(6, 1)]);
        assert!(verify(&p, &s));
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // max x + y  s.t. 3x + y ≤ 1, x + 3y ≤ 1  →  1/2 at (1/4, 1/4)
        let p = Problem {
            objective: vec![1, 1],
            rows: vec![vec![3, 1], vec![1, 3]],
            rhs: vec![1, 1],
        };
        let s = p.solve().unwrap();
        assert_eq!(s.objective, ratio(1, 2));
        assert_eq!(s.primal, vec![ratio(1, 4), ratio(1, 4)]);
        assert_eq!(s.dual, vec![ratio(1, 4), ratio(1, 4)]);
        assert!(verify(&p, &s));
    }

    #[test]
    fn unbounded_is_reported() {
        let p = Problem {
            objective: vec![1, 0],
            rows: vec![vec![-1, 1]],
            rhs: vec![0],
        };
        assert!(matches!(p.solve(), Err(Error::Lp(_))));
    }

    #[test]
    fn negative_rhs_is_rejected() {
        let p = Problem {
            objective: vec![1],
            rows: vec![vec![1]],
            rhs: vec![-1],
        };
        assert!(p.solve().is_err());
    }

    #[test]
    fn big_and_small_paths_agree() {
        let p = Problem {
            objective: vec![2, 3, 1],
            rows: vec![vec![1, 1, 1], vec![2, 1, 0], vec![0, 1, 3]],
            rhs: vec![10, 12, 9],
        };
        let small = Tableau::<Small>::build(&p).run().ok().unwrap();
        let big = Tableau::<Big>::build(&p).run().ok().unwrap();
        assert_eq!(small, big);
        assert!(verify(&p, &small));
    }
}
