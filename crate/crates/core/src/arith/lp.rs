//! Exact linear programming: a dense two-phase simplex with Bland's rule.
//!
//! The tableau is generic over [`LpScalar`] so the same code runs over the
//! rationals and over real algebraic number fields (see `algebraic`).

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rat::{dot, Rat, RatVector};
use crate::error::{Error, Result};

/// Ordered-field operations needed by the simplex.
pub trait LpScalar: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn signum(&self) -> i8;
    fn is_nil(&self) -> bool {
        self.signum() == 0
    }
}

impl LpScalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn signum(&self) -> i8 {
        super::poly::sign(self)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Rank of a dense matrix given by rows, by Gaussian elimination.
pub fn rank<T: LpScalar>(rows: &[Vec<T>]) -> usize {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_nil()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_nil() {
                continue;
            }
            let f = a[i][c].div(&a[r][c]);
            for j in c..cols {
                let t = f.mul(&a[r][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Dense constraint system `A x ≤ b`, `E x = d` over free variables.
#[derive(Clone, Debug)]
pub struct System<T> {
    pub nvars: usize,
    pub ineq: Vec<(Vec<T>, T)>,
    pub eq: Vec<(Vec<T>, T)>,
}

#[derive(Clone, Debug)]
pub enum Solve<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible { ineq_mult: Vec<T>, eq_mult: Vec<T> },
    Unbounded,
}

struct Tableau<T> {
    m: usize,
    /// Total column count (structural + slack + artificial).
    ncols: usize,
    nart_start: usize,
    a: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    zero: T,
}

impl<T: LpScalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.a[r][c].clone();
        let inv = piv.one_like().div(&piv);
        for x in self.a[r].iter_mut() {
            if !x.is_nil() {
                *x = x.mul(&inv);
            }
        }
        self.rhs[r] = self.rhs[r].mul(&inv);
        let prow = self.a[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.m {
            if i == r || self.a[i][c].is_nil() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (x, p) in self.a[i].iter_mut().zip(&prow) {
                if !p.is_nil() {
                    *x = x.sub(&f.mul(p));
                }
            }
            self.rhs[i] = self.rhs[i].sub(&f.mul(&prhs));
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j − c_Bᵀ B⁻¹ a_j` for the current basis.
    fn reduced_costs(&self, cost: &[T]) -> Vec<T> {
        let mut rc: Vec<T> = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_nil() {
                continue;
            }
            for (j, x) in rc.iter_mut().enumerate() {
                let a = &self.a[i][j];
                if !a.is_nil() {
                    *x = x.sub(&cb.mul(a));
                }
            }
        }
        rc
    }

    fn objective(&self, cost: &[T]) -> T {
        let mut v = self.zero.clone();
        for (i, &b) in self.basis.iter().enumerate() {
            v = v.add(&cost[b].mul(&self.rhs[i]));
        }
        v
    }

    /// Minimises `cost` over the columns in `allowed`; `false` if unbounded.
    fn run(&mut self, cost: &[T], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let rc = self.reduced_costs(cost);
            // Bland: lowest-index improving column.
            let Some(enter) = (0..self.ncols).find(|&j| allowed(j) && rc[j].signum() < 0) else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.m {
                let a = &self.a[i][enter];
                if a.signum() <= 0 {
                    continue;
                }
                let ratio = self.rhs[i].div(a);
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        let s = ratio.sub(lr).signum();
                        if s < 0 || (s == 0 && self.basis[i] < self.basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

/// Solves `min cᵀx` subject to the system (feasibility only when `cost` is `None`).
pub fn solve<T: LpScalar>(sys: &System<T>, cost: Option<&[T]>, zero: &T) -> Solve<T> {
    let n = sys.nvars;
    let mi = sys.ineq.len();
    let me = sys.eq.len();
    let m = mi + me;
    // Columns: x⁺ (n), x⁻ (n), slacks (mi), artificials (m).
    let nstruct = 2 * n + mi;
    let ncols = nstruct + m;
    let one = zero.one_like();
    let mut a = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut row_sign = Vec::with_capacity(m);
    for (k, (row, b)) in sys.ineq.iter().chain(sys.eq.iter()).enumerate() {
        let flip = b.signum() < 0;
        let s = |v: &T| if flip { v.neg() } else { v.clone() };
        let mut r = vec![zero.clone(); ncols];
        for j in 0..n {
            r[j] = s(&row[j]);
            r[n + j] = s(&row[j]).neg();
        }
        if k < mi {
            r[2 * n + k] = s(&one);
        }
        r[nstruct + k] = one.clone();
        a.push(r);
        rhs.push(s(b));
        row_sign.push(if flip { -1i8 } else { 1 });
    }
    let mut tab = Tableau {
        m,
        ncols,
        nart_start: nstruct,
        a,
        rhs,
        basis: (nstruct..ncols).collect(),
        zero: zero.clone(),
    };
    let mut phase1 = vec![zero.clone(); ncols];
    for c in phase1.iter_mut().skip(nstruct) {
        *c = one.clone();
    }
    tab.run(&phase1, &|_| true);
    let infeas = tab.objective(&phase1);
    if infeas.signum() > 0 {
        // Phase-1 duals: y_i = 1 − (reduced cost of artificial i).
        let rc = tab.reduced_costs(&phase1);
        let y: Vec<T> = (0..m)
            .map(|i| {
                let yi = one.sub(&rc[nstruct + i]);
                if row_sign[i] < 0 {
                    yi
                } else {
                    yi.neg()
                }
            })
            .collect();
        return Solve::Infeasible {
            ineq_mult: y[..mi].to_vec(),
            eq_mult: y[mi..].to_vec(),
        };
    }
    // Drive artificials out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= tab.nart_start {
            if let Some(c) = (0..nstruct).find(|&j| !tab.a[r][j].is_nil()) {
                tab.pivot(r, c);
            }
        }
    }
    let value;
    if let Some(c) = cost {
        let mut full = vec![zero.clone(); ncols];
        for j in 0..n {
            full[j] = c[j].clone();
            full[n + j] = c[j].neg();
        }
        let bounded = tab.run(&full, &|j| j < nstruct);
        if !bounded {
            return Solve::Unbounded;
        }
        value = tab.objective(&full);
    } else {
        value = zero.clone();
    }
    let mut x = vec![zero.clone(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = x[b].add(&tab.rhs[i]);
        } else if b < 2 * n {
            x[b - n] = x[b - n].sub(&tab.rhs[i]);
        }
    }
    Solve::Optimal { x, value }
}

/// Outcome of an exact feasibility test.
#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(RatVector),
    /// Multipliers `y ≥ 0` (inequalities) and `w` (equalities) with
    /// `yᵀA + wᵀE = 0` and `yᵀb + wᵀd < 0`.
    Infeasible(FarkasCertificate),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FarkasCertificate {
    pub ineq_mult: RatVector,
    pub eq_mult: RatVector,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&RatVector> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

fn build_system(
    ineq: &RatMatrix,
    b: &[Rat],
    eq: &RatMatrix,
    d: &[Rat],
) -> Result<System<Rat>> {
    let n = ineq.cols();
    if eq.cols() != n && eq.rows() > 0 {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: eq.cols(),
        });
    }
    if b.len() != ineq.rows() {
        return Err(Error::DimensionMismatch {
            expected: ineq.rows(),
            found: b.len(),
        });
    }
    if d.len() != eq.rows() {
        return Err(Error::DimensionMismatch {
            expected: eq.rows(),
            found: d.len(),
        });
    }
    Ok(System {
        nvars: n,
        ineq: (0..ineq.rows())
            .map(|i| (ineq.row(i).to_vec(), b[i].clone()))
            .collect(),
        eq: (0..eq.rows())
            .map(|i| (eq.row(i).to_vec(), d[i].clone()))
            .collect(),
    })
}

/// Decides `{x : A x ≤ b, E x = d}` exactly.
pub fn lp_feasible(ineq: &RatMatrix, b: &[Rat], eq: &RatMatrix, d: &[Rat]) -> Result<Feasibility> {
    let sys = build_system(ineq, b, eq, d)?;
    Ok(feasible_system(&sys))
}

pub fn feasible_system(sys: &System<Rat>) -> Feasibility {
    match solve(sys, None, &Rat::zero()) {
        Solve::Optimal { x, .. } => {
            debug_assert!(satisfies(sys, &x));
            Feasibility::Feasible(x)
        }
        Solve::Infeasible { ineq_mult, eq_mult } => {
            let cert = FarkasCertificate { ineq_mult, eq_mult };
            debug_assert!(cert.verifies(sys));
            Feasibility::Infeasible(cert)
        }
        Solve::Unbounded => unreachable!("feasibility problems are bounded"),
    }
}

/// Minimises `cᵀx`; `Ok(None)` if infeasible, `Err` never for unbounded
/// problems (they return `LpOutcome::Unbounded`).
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: RatVector, value: Rat },
    Infeasible,
    Unbounded,
}

pub fn lp_minimize(
    ineq: &RatMatrix,
    b: &[Rat],
    eq: &RatMatrix,
    d: &[Rat],
    cost: &[Rat],
) -> Result<LpOutcome> {
    let sys = build_system(ineq, b, eq, d)?;
    if cost.len() != sys.nvars {
        return Err(Error::DimensionMismatch {
            expected: sys.nvars,
            found: cost.len(),
        });
    }
    Ok(match solve(&sys, Some(cost), &Rat::zero()) {
        Solve::Optimal { x, value } => LpOutcome::Optimal { x, value },
        Solve::Infeasible { .. } => LpOutcome::Infeasible,
        Solve::Unbounded => LpOutcome::Unbounded,
    })
}

pub fn satisfies(sys: &System<Rat>, x: &[Rat]) -> bool {
    sys.ineq.iter().all(|(r, b)| &dot(r, x) <= b) && sys.eq.iter().all(|(r, d)| &dot(r, x) == d)
}

impl FarkasCertificate {
    /// Checks the certificate exactly against a system.
    pub fn verifies(&self, sys: &System<Rat>) -> bool {
        if self.ineq_mult.len() != sys.ineq.len() || self.eq_mult.len() != sys.eq.len() {
            return false;
        }
        if self.ineq_mult.iter().any(Signed::is_negative) {
            return false;
        }
        let mut combo = vec![Rat::zero(); sys.nvars];
        let mut rhs = Rat::zero();
        for ((row, b), y) in sys
            .ineq
            .iter()
            .zip(&self.ineq_mult)
            .chain(sys.eq.iter().zip(&self.eq_mult))
        {
            for (c, a) in combo.iter_mut().zip(row) {
                *c += y * a;
            }
            rhs += y * b;
        }
        combo.iter().all(Zero::is_zero) && rhs.is_negative()
    }

    pub fn verifies_matrices(&self, ineq: &RatMatrix, b: &[Rat], eq: &RatMatrix, d: &[Rat]) -> bool {
        build_system(ineq, b, eq, d).is_ok_and(|s| self.verifies(&s))
    }
}
