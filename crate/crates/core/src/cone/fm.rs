//! Coordinate projection by Fourier–Motzkin elimination.
//!
//! Works purely on constraints, so it is independent of the generator route
//! used by [`Cone::project`](super::Cone::project). Equalities are used for
//! substitution first; redundant inequalities are pruned with an LP after
//! every elimination step.

use num_traits::{Signed, Zero};

use super::Cone;
use crate::arith::lp::{feasible_system, System};
use crate::arith::rat::{primitive, scale_vec, sub_vec, Rat, RatVector};
use crate::error::{Error, Result};

/// Drops rows implied by the others (`P x ≤ 0` with `E x = 0`).
fn prune(ineq: Vec<RatVector>, eq: &[RatVector], n: usize) -> Vec<RatVector> {
    let mut rows = ineq;
    rows.sort();
    rows.dedup();
    let mut i = 0;
    while i < rows.len() {
        // Row i is redundant iff {others ≤ 0, eq = 0, row_i x ≥ 1} is empty.
        let mut sys = System {
            nvars: n,
            ineq: Vec::new(),
            eq: eq.iter().map(|r| (r.clone(), Rat::zero())).collect(),
        };
        for (k, r) in rows.iter().enumerate() {
            if k != i {
                sys.ineq.push((r.clone(), Rat::zero()));
            }
        }
        sys.ineq
            .push((rows[i].iter().map(|x| -x).collect(), -Rat::from_integer(1.into())));
        if feasible_system(&sys).is_feasible() {
            i += 1;
        } else {
            rows.remove(i);
        }
    }
    rows
}

/// Eliminates every coordinate not in `keep` and returns the projected cone
/// in the coordinates `keep` (in that order).
pub fn project_fm(cone: &Cone, keep: &[usize]) -> Result<Cone> {
    let n = cone.dim();
    if let Some(&c) = keep.iter().find(|&&c| c >= n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c + 1,
        });
    }
    let mut ineq: Vec<RatVector> = cone.inequalities().to_vec();
    let mut eq: Vec<RatVector> = cone.equalities().to_vec();
    let drop: Vec<usize> = (0..n).filter(|c| !keep.contains(c)).collect();
    for &j in &drop {
        if let Some(pos) = eq.iter().position(|r| !r[j].is_zero()) {
            let pivot = eq.remove(pos);
            let sub = |r: &RatVector| {
                if r[j].is_zero() {
                    r.clone()
                } else {
                    primitive(&sub_vec(r, &scale_vec(&(&r[j] / &pivot[j]), &pivot)))
                }
            };
            eq = eq.iter().map(sub).collect();
            ineq = ineq.iter().map(sub).collect();
        } else {
            let (zero, rest): (Vec<_>, Vec<_>) = ineq.into_iter().partition(|r| r[j].is_zero());
            let (pos, neg): (Vec<_>, Vec<_>) = rest.into_iter().partition(|r| r[j].is_positive());
            let mut next = zero;
            for p in &pos {
                for q in &neg {
                    // p_j > 0 > q_j: (−q_j)·p + p_j·q cancels coordinate j.
                    let comb: RatVector = p
                        .iter()
                        .zip(q)
                        .map(|(a, b)| -&q[j] * a + &p[j] * b)
                        .collect();
                    if comb.iter().any(|x| !x.is_zero()) {
                        next.push(primitive(&comb));
                    }
                }
            }
            ineq = next;
        }
        eq.retain(|r| r.iter().any(|x| !x.is_zero()));
        ineq = prune(ineq, &eq, n);
    }
    let pick = |r: &RatVector| keep.iter().map(|&c| r[c].clone()).collect::<RatVector>();
    let ineq: Vec<RatVector> = ineq.iter().map(pick).collect();
    let eq: Vec<RatVector> = eq.iter().map(pick).collect();
    Cone::from_constraints(keep.len(), &ineq, &eq)
}
