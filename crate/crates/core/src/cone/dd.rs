//! Double-description conversion from constraints to generators.
//!
//! `{x : P x ≤ 0, E x = 0}` is first parametrised over `ker E`, its lineality
//! space split off, and the remaining pointed cone enumerated with the
//! standard incremental algorithm (combinatorial adjacency test) over
//! primitive integer vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::rat::{primitive_integer, Rat, RatVector};
use crate::arith::RatMatrix;

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    zero: Bits,
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Extreme rays of the pointed cone `{w : Q w ≤ 0}`; `Q` has full column rank `d`.
fn pointed_rays(q: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let m = q.len();
    let qr: Vec<RatVector> = q
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let qm = RatMatrix::from_rows(&qr, d).expect("consistent widths");
    let basis_rows = qm.independent_rows();
    debug_assert_eq!(basis_rows.len(), d);
    let qs = qm.submatrix(&basis_rows, &(0..d).collect::<Vec<_>>());
    let inv = qs.inverse().unwrap().expect("independent rows");
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: RatVector = inv.column(j).iter().map(|x| -x).collect();
            let v = primitive_integer(&col);
            let mut zero = Bits::new(m);
            for (k, &row) in basis_rows.iter().enumerate() {
                if k != j {
                    zero.set(row);
                }
            }
            Ray { v, zero }
        })
        .collect();
    let mut done = vec![false; m];
    for &r in &basis_rows {
        done[r] = true;
    }
    for i in 0..m {
        if done[i] {
            continue;
        }
        done[i] = true;
        let a = &q[i];
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        if pos.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.zero.set(i);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zero.and(&rays[n].zero);
                if d >= 2 && common.count() < d - 2 {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || !common.subset_of(&r.zero));
                if !adjacent {
                    continue;
                }
                let (ap, an) = (&vals[p], &vals[n]);
                let mut v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xn, xp)| ap * xn - an * xp)
                    .collect();
                normalize(&mut v);
                let mut zero = common;
                zero.set(i);
                fresh.push(Ray { v, zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_positive() {
                continue;
            }
            if vals[k].is_zero() {
                r.zero.set(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Generators `(rays, lineality basis)` of `{x ∈ Rⁿ : P x ≤ 0, E x = 0}`.
/// The rays are extreme modulo the lineality space; neither list is canonical.
pub(crate) fn h_to_v(n: usize, ineq: &[RatVector], eq: &[RatVector]) -> (Vec<RatVector>, Vec<RatVector>) {
    let e = RatMatrix::from_rows(eq, n).expect("constraint width");
    let ker_e = e.null_space();
    let k = ker_e.len();
    if k == 0 {
        return (Vec::new(), Vec::new());
    }
    let nmat = RatMatrix::from_columns(&ker_e, n).unwrap();
    let p = RatMatrix::from_rows(ineq, n).expect("constraint width");
    let pn = p.mul(&nmat).unwrap();
    let lin_z = pn.null_space();
    let lineality: Vec<RatVector> = lin_z.iter().map(|z| nmat.mul_vec(z).unwrap()).collect();
    let row_basis = pn.row_space_basis();
    let d = row_basis.len();
    if d == 0 {
        return (Vec::new(), lineality);
    }
    let mmat = RatMatrix::from_columns(&row_basis, k).unwrap();
    let q = pn.mul(&mmat).unwrap();
    let qi: Vec<Vec<BigInt>> = q
        .to_rows()
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| primitive_integer(r))
        .collect();
    let nm = nmat.mul(&mmat).unwrap();
    let rays = pointed_rays(&qi, d)
        .into_iter()
        .map(|w| {
            let wr: RatVector = w.into_iter().map(Rat::from_integer).collect();
            nm.mul_vec(&wr).unwrap()
        })
        .collect();
    (rays, lineality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat_vec;

    #[test]
    fn orthant_from_constraints() {
        let (rays, lin) = h_to_v(2, &[rat_vec(&[-1, 0]), rat_vec(&[0, -1])], &[]);
        assert!(lin.is_empty());
        let mut r: Vec<_> = rays.iter().map(|v| primitive_integer(v)).collect();
        r.sort();
        assert_eq!(r, vec![vec![0.into(), 1.into()], vec![1.into(), 0.into()]]);
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // Cone over the square with vertices (±1, ±1, 1).
        let ineq = [
            rat_vec(&[1, 0, -1]),
            rat_vec(&[-1, 0, -1]),
            rat_vec(&[0, 1, -1]),
            rat_vec(&[0, -1, -1]),
        ];
        let (rays, lin) = h_to_v(3, &ineq, &[]);
        assert!(lin.is_empty());
        assert_eq!(rays.len(), 4);
    }

    #[test]
    fn line_lineality() {
        let (rays, lin) = h_to_v(2, &[rat_vec(&[1, 0]), rat_vec(&[-1, 0])], &[]);
        assert!(rays.is_empty());
        assert_eq!(lin.len(), 1);
    }
}
