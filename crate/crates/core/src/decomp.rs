//! Inner/outer decomposition of a process satisfying the domain condition.
//!
//! `V` is taken as `R₊⊥`. The outer process is single valued and linear on
//! `F(H_out)`; its matrix is expressed on a basis of `F(H_out)` given by the
//! columns of a reduced column echelon form.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::rat::{serde_rat, sub_vec, Rat, RatVector};
use crate::arith::{RatMatrix, RatPoly};
use crate::cone::{Cone, Subspace};
use crate::error::{Error, Result};
use crate::process::{Process, TrajectoryPrefix};
use crate::reach::{domain_condition, feasible_set};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub r_minus: Subspace,
    pub r_plus: Subspace,
    pub v: Subspace,
    pub h_in: Process,
    pub h_out: Process,
    /// `F(H_out)` as a subspace of `V`.
    pub f_hout: Subspace,
    /// `n × k`, columns spanning `F(H_out)`.
    #[serde(with = "matrix_serde")]
    pub f_hout_basis: RatMatrix,
    /// `k × k` matrix of `H_out` on `f_hout_basis`.
    #[serde(with = "matrix_serde")]
    pub h_out_matrix: RatMatrix,
}

/// `graph(H) ∩ (R₊ × R₊)`.
pub fn inner(h: &Process, r_plus: &Subspace) -> Result<Process> {
    let rp = r_plus.to_cone();
    Process::new(h.n(), h.graph().intersect(&rp.product(&rp))?)
}

/// `(graph(H) + R₊ × R₊) ∩ (V × V)`; must come out single valued.
pub fn outer(h: &Process, r_plus: &Subspace, v: &Subspace) -> Result<Process> {
    if r_plus.dimension() + v.dimension() != h.n() || !r_plus.intersect(v).is_zero() {
        return Err(Error::NotComplementary);
    }
    let rp = r_plus.to_cone();
    let vc = v.to_cone();
    let g = h.graph().sum(&rp.product(&rp))?.intersect(&vc.product(&vc))?;
    let out = Process::new(h.n(), g)?;
    if !out.zero_image().is_zero() {
        return Err(Error::InvariantViolation("outer process is not single valued".into()));
    }
    Ok(out)
}

/// Columns in reduced column echelon form (pivot entries 1).
fn echelon_columns(s: &Subspace) -> RatMatrix {
    let n = s.ambient_dim();
    if s.is_zero() {
        return RatMatrix::zeros(n, 0);
    }
    let (r, pivots) = RatMatrix::from_rows(s.basis(), n).unwrap().rref();
    let rows: Vec<RatVector> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    RatMatrix::from_columns(&rows, n).unwrap()
}

pub fn decompose(h: &Process) -> Result<Decomposition> {
    let dc = domain_condition(h)?;
    if !dc.holds {
        return Err(Error::DomainConditionViolated);
    }
    let n = h.n();
    let v = dc.r_plus.orth_complement();
    let h_in = inner(h, &dc.r_plus)?;
    let h_out = outer(h, &dc.r_plus, &v)?;
    let f = feasible_set(&h_out, n + 1)?;
    let f_hout = Subspace::from_cone(&f.cone)
        .filter(|_| f.determined)
        .ok_or_else(|| Error::InvariantViolation("F(H_out) is not a determined subspace".into()))?;
    let basis = echelon_columns(&f_hout);
    let k = basis.cols();
    let cols: Vec<RatVector> = basis.to_columns();
    let mut m = RatMatrix::zeros(k, k);
    let mut image_cols = Vec::with_capacity(k);
    for c in &cols {
        let y = h_out
            .any_successor(c)
            .ok_or_else(|| Error::InvariantViolation("F(H_out) leaves dom(H_out)".into()))?;
        let coords = basis
            .solve(&y)?
            .ok_or_else(|| Error::InvariantViolation("H_out(F(H_out)) ⊄ F(H_out)".into()))?;
        image_cols.push(coords);
    }
    if k > 0 {
        m = RatMatrix::from_columns(&image_cols, k)?;
    }
    Ok(Decomposition {
        r_minus: dc.r_minus,
        r_plus: dc.r_plus,
        v,
        h_in,
        h_out,
        f_hout,
        f_hout_basis: basis,
        h_out_matrix: m,
    })
}

impl Decomposition {
    /// Characteristic polynomial of the outer map (1 when `F(H_out) = {0}`).
    pub fn outer_char_poly(&self) -> RatPoly {
        if self.h_out_matrix.rows() == 0 {
            return RatPoly::constant(Rat::from_integer(1.into()));
        }
        self.h_out_matrix.char_poly().unwrap()
    }

    /// Splits `x = ξ + η` with `ξ ∈ V`, `η ∈ R₊`.
    pub fn split_state(&self, x: &[Rat]) -> Result<(RatVector, RatVector)> {
        let n = self.v.ambient_dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let cols: Vec<RatVector> = self.v.basis().iter().chain(self.r_plus.basis()).cloned().collect();
        let t = RatMatrix::from_columns(&cols, n)?;
        let c = t.solve(x)?.ok_or(Error::NotComplementary)?;
        let mut xi = vec![Rat::zero(); n];
        for (j, b) in self.v.basis().iter().enumerate() {
            for i in 0..n {
                xi[i] += &c[j] * &b[i];
            }
        }
        let eta = sub_vec(x, &xi);
        Ok((xi, eta))
    }

    /// Splits every state of a trajectory of `h`; checks `ξ_k ∈ F(H_out)`,
    /// `η_k ∈ R₊` and `ξ_{k+1} = M ξ_k` in the `f_hout_basis` coordinates.
    pub fn split_trajectory(&self, h: &Process, traj: &TrajectoryPrefix) -> Result<TrajectorySplit> {
        traj.validate(h)?;
        let mut xi = Vec::new();
        let mut eta = Vec::new();
        let mut coords = Vec::new();
        for (k, x) in traj.states.iter().enumerate() {
            let (a, b) = self.split_state(x)?;
            let c = if self.f_hout_basis.cols() == 0 {
                if a.iter().any(|v| !v.is_zero()) {
                    None
                } else {
                    Some(vec![])
                }
            } else {
                self.f_hout_basis.solve(&a)?
            };
            let c = c.ok_or_else(|| Error::InvalidTrajectory(format!("ξ_{k} ∉ F(H_out)")))?;
            xi.push(a);
            eta.push(b);
            coords.push(c);
        }
        for k in 1..coords.len() {
            if self.h_out_matrix.cols() > 0 && self.h_out_matrix.mul_vec(&coords[k - 1])? != coords[k] {
                return Err(Error::InvariantViolation(format!("ξ_{k} ≠ H_out(ξ_{})", k - 1)));
            }
        }
        Ok(TrajectorySplit { xi, eta, xi_coords: coords })
    }

    pub fn v_cone(&self) -> Cone {
        self.v.to_cone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectorySplit {
    #[serde(with = "serde_rat::vecvec")]
    pub xi: Vec<RatVector>,
    #[serde(with = "serde_rat::vecvec")]
    pub eta: Vec<RatVector>,
    /// `ξ_k` in the `f_hout_basis` coordinates.
    #[serde(with = "serde_rat::vecvec")]
    pub xi_coords: Vec<RatVector>,
}

pub(crate) mod matrix_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::arith::rat::serde_rat;
    use crate::arith::RatMatrix;

    #[derive(Serialize, Deserialize)]
    struct Js {
        rows: usize,
        cols: usize,
        #[serde(with = "serde_rat::vecvec")]
        data: Vec<Vec<crate::arith::Rat>>,
    }

    pub fn serialize<S: Serializer>(m: &RatMatrix, s: S) -> Result<S::Ok, S::Error> {
        Js {
            rows: m.rows(),
            cols: m.cols(),
            data: m.to_rows(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatMatrix, D::Error> {
        let j = Js::deserialize(d)?;
        if j.rows == 0 || j.data.is_empty() {
            return Ok(RatMatrix::zeros(j.rows, j.cols));
        }
        RatMatrix::from_rows(&j.data, j.cols).map_err(serde::de::Error::custom)
    }
}
