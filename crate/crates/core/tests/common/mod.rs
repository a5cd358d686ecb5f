//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use polyproc::arith::{Rat, RatMatrix, RatVector};
use polyproc::cone::Cone;
use polyproc::process::Process;
use polyproc::sysio::system::cone_from_rows;
use polyproc::sysio::ConstrainedLinearSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn vector(r: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> RatVector {
    (0..len).map(|_| q(r.gen_range(lo..=hi))).collect()
}

pub fn nonzero_vector(r: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> RatVector {
    loop {
        let v = vector(r, len, lo, hi);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> RatMatrix {
    let data: Vec<RatVector> = (0..rows).map(|_| vector(r, cols, lo, hi)).collect();
    RatMatrix::from_rows(&data, cols).unwrap()
}

/// Graph generated by a few random rays and at most one lineality vector.
pub fn generator_process(r: &mut ChaCha8Rng, n: usize) -> Process {
    let k = r.gen_range(1..=2 * n + 1);
    let rays: Vec<RatVector> = (0..k).map(|_| nonzero_vector(r, 2 * n, -2, 2)).collect();
    let lin: Vec<RatVector> = if r.gen_bool(0.3) {
        vec![nonzero_vector(r, 2 * n, -2, 2)]
    } else {
        vec![]
    };
    Process::new(n, Cone::from_generators(2 * n, &rays, &lin).unwrap()).unwrap()
}

/// A constrained linear system with a random constraint cone.
pub fn random_system(r: &mut ChaCha8Rng, max_n: usize) -> ConstrainedLinearSystem {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(1..=2);
    let p = r.gen_range(1..=2);
    let a = matrix(r, n, n, -2, 2);
    let b = matrix(r, n, m, -2, 2);
    let c = matrix(r, p, n, -2, 2);
    let d = matrix(r, p, m, -2, 2);
    let ni = r.gen_range(0..=p);
    let ineq: Vec<RatVector> = (0..ni).map(|_| nonzero_vector(r, p, -1, 1)).collect();
    let eq: Vec<RatVector> = if r.gen_bool(0.25) {
        vec![nonzero_vector(r, p, -1, 1)]
    } else {
        vec![]
    };
    let y = cone_from_rows(p, &ineq, &eq).unwrap();
    ConstrainedLinearSystem::new(a, b, c, d, y).unwrap()
}

/// Mixed corpus of processes with state dimension at most `max_n`.
pub fn corpus(seed: u64, count: usize, max_n: usize) -> Vec<Process> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                random_system(&mut r, max_n).build_process().unwrap()
            } else {
                let n = r.gen_range(1..=max_n);
                generator_process(&mut r, n)
            }
        })
        .collect()
}

/// Nonnegative combination of the generators of `c` (lineality with
/// arbitrary signs).
pub fn random_point(r: &mut ChaCha8Rng, c: &Cone) -> RatVector {
    let mut x = vec![Rat::zero(); c.dim()];
    for g in c.rays() {
        let w = q(r.gen_range(0..=3));
        for (xi, gi) in x.iter_mut().zip(g) {
            *xi += &w * gi;
        }
    }
    for g in c.lineality() {
        let w = q(r.gen_range(-3..=3));
        for (xi, gi) in x.iter_mut().zip(g) {
            *xi += &w * gi;
        }
    }
    x
}

// Plain dense linear algebra, written independently of the library.

pub type Dense = Vec<Vec<Rat>>;

pub fn dense(m: &RatMatrix) -> Dense {
    m.to_rows()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let k = b.len();
    let c = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..c)
                .map(|j| (0..k).fold(Rat::zero(), |s, t| s + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn ident(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

/// Row echelon form by plain Gaussian elimination; returns the rank.
pub fn rank(m: &Dense) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solves a square system; `None` if singular.
pub fn solve_square(m: &Dense, b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Dense = m.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for j in c..=n {
            a[c][j] = &a[c][j] / &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

pub fn det(m: &Dense) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Columns `[B AB … A^{n−1}B]`.
pub fn kalman(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = if n == 0 { 0 } else { b[0].len() };
    let mut blocks = vec![b.clone()];
    for _ in 1..n {
        let next = mul(a, blocks.last().unwrap());
        blocks.push(next);
    }
    (0..n)
        .map(|i| blocks.iter().flat_map(|blk| (0..m).map(move |j| blk[i][j].clone())).collect())
        .collect()
}

/// Column basis of a matrix (greedy).
pub fn column_basis(m: &Dense) -> Vec<Vec<Rat>> {
    let n = m.len();
    let cols = if n == 0 { 0 } else { m[0].len() };
    let mut basis: Vec<Vec<Rat>> = vec![];
    for j in 0..cols {
        let col: Vec<Rat> = (0..n).map(|i| m[i][j].clone()).collect();
        let mut trial = basis.clone();
        trial.push(col.clone());
        if rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    basis
}

pub fn kalman_controllable(a: &Dense, b: &Dense) -> bool {
    rank(&kalman(a, b)) == a.len()
}

/// `im(Aⁿ) ⊆ im[B AB … A^{n−1}B]`.
pub fn classical_null_controllable(a: &Dense, b: &Dense) -> bool {
    let n = a.len();
    let k = kalman(a, b);
    let mut an = ident(n);
    for _ in 0..n {
        an = mul(a, &an);
    }
    let joined: Dense = (0..n).map(|i| k[i].iter().chain(&an[i]).cloned().collect()).collect();
    rank(&joined) == rank(&k)
}

/// Uncontrollable block `A₂₂` of the Kalman decomposition, in a basis that
/// completes a basis of the controllable subspace with unit vectors.
pub fn uncontrollable_block(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut basis = column_basis(&kalman(a, b));
    let r = basis.len();
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        let mut trial = basis.clone();
        trial.push(e);
        if rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    // T has the basis vectors as columns; A' = T⁻¹ A T.
    let t: Dense = (0..n).map(|i| basis.iter().map(|v| v[i].clone()).collect()).collect();
    let at = mul(a, &t);
    let cols: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let c: Vec<Rat> = (0..n).map(|i| at[i][j].clone()).collect();
            solve_square(&t, &c).unwrap()
        })
        .collect();
    (r..n).map(|i| (r..n).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Schur stability by the discrete Lyapunov equation `X − MᵀXM = I`:
/// stable iff the solution exists, is unique and positive definite.
pub fn lyapunov_schur_stable(m: &Dense) -> bool {
    let k = m.len();
    if k == 0 {
        return true;
    }
    // Unknowns X[i][j] at index i*k + j.
    let kk = k * k;
    let mut sys = vec![vec![Rat::zero(); kk]; kk];
    let mut rhs = vec![Rat::zero(); kk];
    for i in 0..k {
        for j in 0..k {
            let row = i * k + j;
            sys[row][row] += Rat::one();
            // (MᵀXM)[i][j] = Σ_{p,q} M[p][i] X[p][q] M[q][j]
            for p in 0..k {
                for qd in 0..k {
                    let c = &m[p][i] * &m[qd][j];
                    sys[row][p * k + qd] -= c;
                }
            }
            if i == j {
                rhs[row] = Rat::one();
            }
        }
    }
    let Some(x) = solve_square(&sys, &rhs) else {
        return false;
    };
    let xm: Dense = (0..k).map(|i| x[i * k..(i + 1) * k].to_vec()).collect();
    (1..=k).all(|s| {
        let minor: Dense = (0..s).map(|i| xm[i][..s].to_vec()).collect();
        det(&minor).is_positive()
    })
}

pub fn classical_stabilizable(a: &Dense, b: &Dense) -> bool {
    lyapunov_schur_stable(&uncontrollable_block(a, b))
}
