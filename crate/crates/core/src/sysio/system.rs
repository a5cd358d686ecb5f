//! Conically constrained linear systems
//! `x⁺ = Ax + Bu`, `Cx + Du ∈ Y`, and the convex process they induce.

use num_traits::{One, Zero};

use crate::arith::rat::{neg_vec, Rat, RatVector};
use crate::arith::RatMatrix;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::process::Process;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstrainedLinearSystem {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
    pub d: RatMatrix,
    /// Constraint cone `Y ⊆ Rᵖ`.
    pub y: Cone,
}

fn shape(m: &RatMatrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::Schema {
            path: what.into(),
            message: format!("expected {rows}x{cols}, found {}x{}", m.rows(), m.cols()),
        });
    }
    Ok(())
}

impl ConstrainedLinearSystem {
    pub fn new(a: RatMatrix, b: RatMatrix, c: RatMatrix, d: RatMatrix, y: Cone) -> Result<Self> {
        let s = Self { a, b, c, d, y };
        s.check()?;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.b.cols()
    }

    pub fn p(&self) -> usize {
        self.c.rows()
    }

    pub fn check(&self) -> Result<()> {
        let (n, m, p) = (self.a.rows(), self.b.cols(), self.c.rows());
        shape(&self.a, n, n, "A")?;
        shape(&self.b, n, m, "B")?;
        shape(&self.c, p, n, "C")?;
        shape(&self.d, p, m, "D")?;
        if self.y.dim() != p {
            return Err(Error::Schema {
                path: "cone".into(),
                message: format!("cone lives in R^{}, expected R^{p}", self.y.dim()),
            });
        }
        Ok(())
    }

    /// Unconstrained system (`Y = Rᵖ` with `p = 0`).
    pub fn unconstrained(a: RatMatrix, b: RatMatrix) -> Result<Self> {
        let n = a.rows();
        let m = b.cols();
        Self::new(a, b, RatMatrix::zeros(0, n), RatMatrix::zeros(0, m), Cone::full(0))
    }

    /// `H(x) = {Ax + Bu : Cx + Du ∈ Y}`: the graph is the projection onto
    /// `(x, y)` of `{(x, u, y) : y = Ax + Bu, Cx + Du ∈ Y}`.
    pub fn build_process(&self) -> Result<Process> {
        self.check()?;
        let (n, m) = (self.n(), self.m());
        let total = 2 * n + m;
        // Coordinates (x, u, y).
        let lift_cd = |r: &RatVector| -> RatVector {
            let mut row = vec![Rat::zero(); total];
            for j in 0..n {
                for (k, rk) in r.iter().enumerate() {
                    row[j] += rk * &self.c[(k, j)];
                }
            }
            for j in 0..m {
                for (k, rk) in r.iter().enumerate() {
                    row[n + j] += rk * &self.d[(k, j)];
                }
            }
            row
        };
        let ineq: Vec<RatVector> = self.y.inequalities().iter().map(lift_cd).collect();
        let mut eq: Vec<RatVector> = self.y.equalities().iter().map(lift_cd).collect();
        for i in 0..n {
            let mut row = vec![Rat::zero(); total];
            for j in 0..n {
                row[j] = self.a[(i, j)].clone();
            }
            for j in 0..m {
                row[n + j] = self.b[(i, j)].clone();
            }
            row[n + m + i] = -Rat::one();
            eq.push(row);
        }
        let lifted = Cone::from_constraints(total, &ineq, &eq)?;
        let keep: Vec<usize> = (0..n).chain(n + m..total).collect();
        Process::new(n, lifted.project(&keep)?)
    }

    /// `Y` as rows of `{y : ineq·y ≥ 0, eq·y = 0}`.
    pub fn cone_rows(&self) -> (Vec<RatVector>, Vec<RatVector>) {
        (
            self.y.inequalities().iter().map(|r| neg_vec(r)).collect(),
            self.y.equalities().to_vec(),
        )
    }
}

/// `Y = {y : ineq·y ≥ 0, eq·y = 0}`.
pub fn cone_from_rows(p: usize, ineq: &[RatVector], eq: &[RatVector]) -> Result<Cone> {
    let neg: Vec<RatVector> = ineq.iter().map(|r| neg_vec(r)).collect();
    Cone::from_constraints(p, &neg, eq)
}

/// The three-state example system with constraint parameters `a`, `b`:
/// `A = [1 1 0; 0 1 0; 1 0 0]`, `B = (0, 1, −1)`, and
/// `[a b 0] x ≥ 0`, `[1 −1 −1] x = 0`.
pub fn example_system(a: &Rat, b: &Rat) -> ConstrainedLinearSystem {
    let r = |v: &[i64]| v.iter().map(|&x| Rat::from_integer(x.into())).collect::<RatVector>();
    let am = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 0]]);
    let bm = RatMatrix::from_i64(&[&[0], &[1], &[-1]]);
    let cm = RatMatrix::from_rows(&[vec![a.clone(), b.clone(), Rat::zero()], r(&[1, -1, -1])], 3).unwrap();
    let dm = RatMatrix::zeros(2, 1);
    let y = cone_from_rows(2, &[r(&[1, 0])], &[r(&[0, 1])]).unwrap();
    ConstrainedLinearSystem::new(am, bm, cm, dm, y).unwrap()
}
