//! Polyhedral convex cones held in both representations.
//!
//! A [`Cone`] stores generators (extreme rays modulo the lineality space plus
//! a lineality basis) and constraints (`P x ≤ 0` facet rows plus `E x = 0`).
//! Both sides are minimal and canonical, so two cones are equal as sets
//! exactly when they compare equal:
//!
//! * lineality / equality bases are the nonzero rows of a reduced row echelon
//!   form, scaled to primitive integers;
//! * rays / facet rows are projected onto the orthogonal complement of the
//!   lineality / equality space, scaled to primitive integers and sorted.

mod dd;
pub mod fm;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::lp::{feasible_system, System};
use crate::arith::rat::{dot, neg_vec, primitive, serde_rat, Rat, RatVector};
use crate::arith::{Feasibility, RatMatrix};
use crate::error::{Error, Result};

pub(crate) use dd::h_to_v;

/// A polyhedral convex cone in `Rⁿ`. Never empty: it always contains 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<RatVector>,
    lineality: Vec<RatVector>,
    ineq: Vec<RatVector>,
    eq: Vec<RatVector>,
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[RatVector]| {
            v.iter()
                .map(|r| crate::arith::rat::format_vec(r))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "Cone(dim={}, rays=[{}], lin=[{}], ineq=[{}], eq=[{}])",
            self.dim,
            show(&self.rays),
            show(&self.lineality),
            show(&self.ineq),
            show(&self.eq)
        )
    }
}

/// How two cones compare under inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeRelation {
    Equal,
    /// The first cone is a proper subset of the second.
    Subset,
    /// The first cone is a proper superset of the second.
    Superset,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarSign {
    /// `C⁻ = {y : ⟨x, y⟩ ≤ 0 ∀x ∈ C}`
    Negative,
    /// `C⁺ = {y : ⟨x, y⟩ ≥ 0 ∀x ∈ C} = −C⁻`
    Positive,
}

fn check_width(dim: usize, rows: &[RatVector]) -> Result<()> {
    match rows.iter().find(|r| r.len() != dim) {
        Some(r) => Err(Error::DimensionMismatch {
            expected: dim,
            found: r.len(),
        }),
        None => Ok(()),
    }
}

/// Canonical `(rays, basis)` for the cone `cone(rays) + span(basis)`, assuming
/// the rays are already irredundant modulo the span.
fn canonical_pair(dim: usize, rays: &[RatVector], basis: &[RatVector]) -> (Vec<RatVector>, Vec<RatVector>) {
    let b = RatMatrix::from_rows(basis, dim).unwrap().row_space_basis();
    let b: Vec<RatVector> = b.iter().map(|r| primitive(r)).collect();
    let proj = complement_projector(dim, &b);
    let mut out: Vec<RatVector> = rays
        .iter()
        .map(|r| match &proj {
            Some(p) => primitive(&p.mul_vec(r).unwrap()),
            None => primitive(r),
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    (out, b)
}

/// Orthogonal projector onto `span(basis)⊥`; `None` for an empty basis.
fn complement_projector(dim: usize, basis: &[RatVector]) -> Option<RatMatrix> {
    if basis.is_empty() {
        return None;
    }
    let l = RatMatrix::from_rows(basis, dim).unwrap();
    let lt = l.transpose();
    let g = l.mul(&lt).unwrap().inverse().unwrap().expect("independent basis");
    let p = lt.mul(&g).unwrap().mul(&l).unwrap();
    Some(RatMatrix::identity(dim).sub(&p).unwrap())
}

impl Cone {
    /// `cone(rays) + span(lineality)`.
    pub fn from_generators(dim: usize, rays: &[RatVector], lineality: &[RatVector]) -> Result<Self> {
        check_width(dim, rays)?;
        check_width(dim, lineality)?;
        let (ineq, eq) = h_to_v(dim, rays, lineality);
        let (r, l) = h_to_v(dim, &ineq, &eq);
        Ok(Self::assemble(dim, r, l, ineq, eq))
    }

    /// `{x : ineq·x ≤ 0, eq·x = 0}`.
    pub fn from_constraints(dim: usize, ineq: &[RatVector], eq: &[RatVector]) -> Result<Self> {
        check_width(dim, ineq)?;
        check_width(dim, eq)?;
        let (r, l) = h_to_v(dim, ineq, eq);
        let (pi, pe) = h_to_v(dim, &r, &l);
        Ok(Self::assemble(dim, r, l, pi, pe))
    }

    fn assemble(
        dim: usize,
        rays: Vec<RatVector>,
        lin: Vec<RatVector>,
        ineq: Vec<RatVector>,
        eq: Vec<RatVector>,
    ) -> Self {
        let (rays, lineality) = canonical_pair(dim, &rays, &lin);
        let (ineq, eq) = canonical_pair(dim, &ineq, &eq);
        Self {
            dim,
            rays,
            lineality,
            ineq,
            eq,
        }
    }

    pub fn zero(dim: usize) -> Self {
        let eq: Vec<RatVector> = (0..dim).map(|i| crate::arith::rat::unit(dim, i)).collect();
        Self::assemble(dim, vec![], vec![], vec![], eq)
    }

    pub fn full(dim: usize) -> Self {
        let lin: Vec<RatVector> = (0..dim).map(|i| crate::arith::rat::unit(dim, i)).collect();
        Self::assemble(dim, vec![], lin, vec![], vec![])
    }

    /// The nonnegative orthant.
    pub fn orthant(dim: usize) -> Self {
        let rays: Vec<RatVector> = (0..dim).map(|i| crate::arith::rat::unit(dim, i)).collect();
        let ineq: Vec<RatVector> = rays.iter().map(|r| neg_vec(r)).collect();
        Self::assemble(dim, rays, vec![], ineq, vec![])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rays(&self) -> &[RatVector] {
        &self.rays
    }
    pub fn lineality(&self) -> &[RatVector] {
        &self.lineality
    }
    pub fn inequalities(&self) -> &[RatVector] {
        &self.ineq
    }
    pub fn equalities(&self) -> &[RatVector] {
        &self.eq
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.lineality.len() == self.dim
    }

    pub fn is_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    /// All generators, lineality directions in both signs.
    pub fn generators(&self) -> Vec<RatVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg_vec(l));
        }
        g
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        v.len() == self.dim
            && self.ineq.iter().all(|r| !dot(r, v).is_positive())
            && self.eq.iter().all(|r| dot(r, v).is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Cone) -> bool {
        other.dim == self.dim
            && other.rays.iter().all(|r| self.contains_vector(r))
            && other.lineality.iter().all(|l| {
                self.eq.iter().all(|e| dot(e, l).is_zero())
                    && self.ineq.iter().all(|p| dot(p, l).is_zero())
            })
    }

    pub fn relate(&self, other: &Cone) -> Result<ConeRelation> {
        self.check_dim(other)?;
        Ok(match (other.contains(self), self.contains(other)) {
            (true, true) => ConeRelation::Equal,
            (true, false) => ConeRelation::Subset,
            (false, true) => ConeRelation::Superset,
            (false, false) => ConeRelation::Incomparable,
        })
    }

    fn check_dim(&self, other: &Cone) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn polar(&self, sign: PolarSign) -> Cone {
        let neg = Cone {
            dim: self.dim,
            rays: self.ineq.clone(),
            lineality: self.eq.clone(),
            ineq: self.rays.clone(),
            eq: self.lineality.clone(),
        };
        match sign {
            PolarSign::Negative => neg,
            PolarSign::Positive => neg.negate(),
        }
    }

    pub fn negate(&self) -> Cone {
        let n = |v: &[RatVector]| v.iter().map(|r| neg_vec(r)).collect::<Vec<_>>();
        Self::assemble(self.dim, n(&self.rays), self.lineality.clone(), n(&self.ineq), self.eq.clone())
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &Cone) -> Result<Cone> {
        self.check_dim(other)?;
        let rays: Vec<RatVector> = self.rays.iter().chain(&other.rays).cloned().collect();
        let lin: Vec<RatVector> = self.lineality.iter().chain(&other.lineality).cloned().collect();
        Cone::from_generators(self.dim, &rays, &lin)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        self.check_dim(other)?;
        let ineq: Vec<RatVector> = self.ineq.iter().chain(&other.ineq).cloned().collect();
        let eq: Vec<RatVector> = self.eq.iter().chain(&other.eq).cloned().collect();
        Cone::from_constraints(self.dim, &ineq, &eq)
    }

    /// `lin(C) = C ∩ −C`.
    pub fn lin(&self) -> Subspace {
        Subspace::from_canonical(self.dim, self.lineality.clone())
    }

    /// `Lin(C) = C − C`.
    pub fn span(&self) -> Subspace {
        let v: Vec<RatVector> = self.rays.iter().chain(&self.lineality).cloned().collect();
        Subspace::new(self.dim, &v).unwrap()
    }

    /// Image under an invertible linear map `T`, given with its inverse.
    pub fn map_invertible(&self, t: &RatMatrix, t_inv: &RatMatrix) -> Result<Cone> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.rows(),
            });
        }
        debug_assert_eq!(t.mul(t_inv).unwrap(), RatMatrix::identity(self.dim));
        let fwd = |v: &[RatVector]| v.iter().map(|r| t.mul_vec(r).unwrap()).collect::<Vec<_>>();
        let tit = t_inv.transpose();
        let back = |v: &[RatVector]| v.iter().map(|r| tit.mul_vec(r).unwrap()).collect::<Vec<_>>();
        Ok(Self::assemble(
            self.dim,
            fwd(&self.rays),
            fwd(&self.lineality),
            back(&self.ineq),
            back(&self.eq),
        ))
    }

    /// Image under an arbitrary linear map `Rⁿ → Rᵐ` (generator route).
    pub fn map_linear(&self, m: &RatMatrix) -> Result<Cone> {
        if m.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.cols(),
            });
        }
        let f = |v: &[RatVector]| v.iter().map(|r| m.mul_vec(r).unwrap()).collect::<Vec<_>>();
        Cone::from_generators(m.rows(), &f(&self.rays), &f(&self.lineality))
    }

    /// Preimage `{x : M x ∈ C}` under a linear map `Rᵐ → Rⁿ`.
    pub fn preimage_linear(&self, m: &RatMatrix) -> Result<Cone> {
        if m.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        let mt = m.transpose();
        let f = |v: &[RatVector]| v.iter().map(|r| mt.mul_vec(r).unwrap()).collect::<Vec<_>>();
        Cone::from_constraints(m.cols(), &f(&self.ineq), &f(&self.eq))
    }

    /// Coordinate projection onto `coords` by truncating generators.
    pub fn project(&self, coords: &[usize]) -> Result<Cone> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c + 1,
            });
        }
        let t = |v: &[RatVector]| {
            v.iter()
                .map(|r| coords.iter().map(|&c| r[c].clone()).collect::<RatVector>())
                .collect::<Vec<_>>()
        };
        Cone::from_generators(coords.len(), &t(&self.rays), &t(&self.lineality))
    }

    /// Slice `{z : x ∈ C}` where `x` carries `z` on `coords` and 0 elsewhere.
    pub fn slice(&self, coords: &[usize]) -> Result<Cone> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c + 1,
            });
        }
        let t = |v: &[RatVector]| {
            v.iter()
                .map(|r| coords.iter().map(|&c| r[c].clone()).collect::<RatVector>())
                .collect::<Vec<_>>()
        };
        Cone::from_constraints(coords.len(), &t(&self.ineq), &t(&self.eq))
    }

    /// Constraint rows lifted into `R^total`, occupying columns `offset..offset+dim`.
    pub fn lifted_constraints(&self, total: usize, offset: usize) -> (Vec<RatVector>, Vec<RatVector>) {
        let lift = |v: &[RatVector]| {
            v.iter()
                .map(|r| {
                    let mut x = vec![Rat::zero(); total];
                    for (k, c) in r.iter().enumerate() {
                        x[offset + k] = c.clone();
                    }
                    x
                })
                .collect::<Vec<_>>()
        };
        (lift(&self.ineq), lift(&self.eq))
    }

    /// Cartesian product `self × other`.
    pub fn product(&self, other: &Cone) -> Cone {
        let total = self.dim + other.dim;
        let lift = |v: &[RatVector], off: usize| {
            v.iter()
                .map(|r| {
                    let mut x = vec![Rat::zero(); total];
                    for (k, c) in r.iter().enumerate() {
                        x[off + k] = c.clone();
                    }
                    x
                })
                .collect::<Vec<_>>()
        };
        let cat = |a: Vec<RatVector>, b: Vec<RatVector>| a.into_iter().chain(b).collect::<Vec<_>>();
        Self::assemble(
            total,
            cat(lift(&self.rays, 0), lift(&other.rays, self.dim)),
            cat(lift(&self.lineality, 0), lift(&other.lineality, self.dim)),
            cat(lift(&self.ineq, 0), lift(&other.ineq, self.dim)),
            cat(lift(&self.eq, 0), lift(&other.eq, self.dim)),
        )
    }

    /// Whether `rint(self) ∩ rint(other) ≠ ∅`.
    ///
    /// Facet rows are never implicit equalities, so the relative interior is
    /// `{E x = 0, P x < 0}`; by homogeneity the strict system is feasible iff
    /// `P x ≤ −1` is.
    pub fn rint_intersects(&self, other: &Cone) -> Result<bool> {
        self.check_dim(other)?;
        let minus_one = -Rat::one();
        let sys = System {
            nvars: self.dim,
            ineq: self
                .ineq
                .iter()
                .chain(&other.ineq)
                .map(|r| (r.clone(), minus_one.clone()))
                .collect(),
            eq: self
                .eq
                .iter()
                .chain(&other.eq)
                .map(|r| (r.clone(), Rat::zero()))
                .collect(),
        };
        Ok(feasible_system(&sys).is_feasible())
    }

    /// A point of the relative interior.
    pub fn relative_interior_point(&self) -> RatVector {
        let mut p = vec![Rat::zero(); self.dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    /// Whether `C − K` is a subspace, decided by computing the difference;
    /// the relative-interior criterion is evaluated too and must agree.
    pub fn difference_is_subspace(&self, other: &Cone) -> Result<bool> {
        let direct = self.sum(&other.negate())?.is_subspace();
        let via_rint = self.rint_intersects(other)?;
        if direct != via_rint {
            return Err(Error::InvariantViolation(format!(
                "C−K subspace test disagrees: set route {direct}, rint route {via_rint}"
            )));
        }
        Ok(direct)
    }

    pub fn orth_complement(s: &Subspace) -> Subspace {
        s.orth_complement()
    }
}

/// A linear subspace of `Rⁿ`, stored as a canonical (RREF, primitive) basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: usize,
    basis: Vec<RatVector>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basis.iter().map(|v| crate::arith::rat::format_vec(v)).collect();
        write!(f, "span{{{}}} ⊆ R^{}", b.join(", "), self.dim)
    }
}

impl Subspace {
    pub fn new(dim: usize, vectors: &[RatVector]) -> Result<Self> {
        check_width(dim, vectors)?;
        let b = RatMatrix::from_rows(vectors, dim)?.row_space_basis();
        Ok(Self::from_canonical(dim, b.iter().map(|r| primitive(r)).collect()))
    }

    fn from_canonical(dim: usize, basis: Vec<RatVector>) -> Self {
        Self { dim, basis }
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        Self::new(dim, &(0..dim).map(|i| crate::arith::rat::unit(dim, i)).collect::<Vec<_>>()).unwrap()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVector] {
        &self.basis
    }

    /// Basis vectors as matrix columns (`n × k`).
    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(&self.basis, self.dim).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn orth_complement(&self) -> Subspace {
        let m = RatMatrix::from_rows(&self.basis, self.dim).unwrap();
        Subspace::new(self.dim, &m.null_space()).unwrap()
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        let perp = self.orth_complement();
        v.len() == self.dim && perp.basis.iter().all(|p| dot(p, v).is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        let perp = self.orth_complement();
        other
            .basis
            .iter()
            .all(|v| perp.basis.iter().all(|p| dot(p, v).is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let v: Vec<RatVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::new(self.dim, &v).unwrap()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.orth_complement().sum(&other.orth_complement()).orth_complement()
    }

    pub fn to_cone(&self) -> Cone {
        let eq = self.orth_complement().basis;
        Cone::assemble(self.dim, vec![], self.basis.clone(), vec![], eq)
    }

    pub fn from_cone(c: &Cone) -> Option<Subspace> {
        c.is_subspace().then(|| c.lin())
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<RatVector> {
        self.basis_matrix().solve(v).ok().flatten()
    }
}

impl From<&Subspace> for Cone {
    fn from(s: &Subspace) -> Cone {
        s.to_cone()
    }
}

/// JSON form of a cone with rationals as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(with = "serde_rat::vecvec")]
    pub rays: Vec<RatVector>,
    #[serde(with = "serde_rat::vecvec")]
    pub lineality: Vec<RatVector>,
    #[serde(with = "serde_rat::vecvec")]
    pub ineq: Vec<RatVector>,
    #[serde(with = "serde_rat::vecvec")]
    pub eq: Vec<RatVector>,
}

impl From<&Cone> for ConeJson {
    fn from(c: &Cone) -> Self {
        Self {
            dim: c.dim,
            rays: c.rays.clone(),
            lineality: c.lineality.clone(),
            ineq: c.ineq.clone(),
            eq: c.eq.clone(),
        }
    }
}

impl TryFrom<ConeJson> for Cone {
    type Error = Error;

    /// Both representations are rebuilt and must describe the same set.
    fn try_from(j: ConeJson) -> Result<Cone> {
        let v = Cone::from_generators(j.dim, &j.rays, &j.lineality)?;
        let h = Cone::from_constraints(j.dim, &j.ineq, &j.eq)?;
        if v != h {
            return Err(Error::Schema {
                path: "cone".into(),
                message: "generator and constraint representations differ".into(),
            });
        }
        Ok(v)
    }
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ConeJson::deserialize(d)?;
        Cone::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Js<'a> {
            dim: usize,
            #[serde(with = "serde_rat::vecvec")]
            basis: &'a [RatVector],
        }
        Js {
            dim: self.dim,
            basis: &self.basis,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Js {
            dim: usize,
            #[serde(with = "serde_rat::vecvec")]
            basis: Vec<RatVector>,
        }
        let j = Js::deserialize(d)?;
        Subspace::new(j.dim, &j.basis).map_err(serde::de::Error::custom)
    }
}

/// Membership of `v` in `cone(gens)` decided by an LP (independent of the
/// double-description path).
pub fn in_conic_hull(gens: &[RatVector], v: &[Rat]) -> bool {
    let k = gens.len();
    let n = v.len();
    let mut eq = Vec::with_capacity(n);
    for i in 0..n {
        let row: RatVector = gens.iter().map(|g| g[i].clone()).collect();
        eq.push((row, v[i].clone()));
    }
    let ineq = (0..k)
        .map(|j| (neg_vec(&crate::arith::rat::unit(k, j)), Rat::zero()))
        .collect();
    let sys = System { nvars: k, ineq, eq };
    matches!(feasible_system(&sys), Feasibility::Feasible(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat_vec;

    fn cone_r(rays: &[&[i64]], lin: &[&[i64]], dim: usize) -> Cone {
        let r: Vec<RatVector> = rays.iter().map(|v| rat_vec(v)).collect();
        let l: Vec<RatVector> = lin.iter().map(|v| rat_vec(v)).collect();
        Cone::from_generators(dim, &r, &l).unwrap()
    }

    #[test]
    fn orthant_both_ways() {
        let c = cone_r(&[&[1, 0], &[0, 1]], &[], 2);
        assert_eq!(c.inequalities(), &[rat_vec(&[-1, 0]), rat_vec(&[0, -1])]);
        assert_eq!(c, Cone::orthant(2));
        let h = Cone::from_constraints(2, &[rat_vec(&[1, 0]), rat_vec(&[-1, 0])], &[]).unwrap();
        assert_eq!(h.lineality(), &[rat_vec(&[0, 1])]);
        assert!(h.rays().is_empty());
    }

    #[test]
    fn polar_examples() {
        let o = Cone::orthant(2);
        assert_eq!(o.polar(PolarSign::Negative), o.negate());
        let s = Subspace::new(2, &[rat_vec(&[1, 1])]).unwrap().to_cone();
        let p = s.polar(PolarSign::Negative);
        assert_eq!(p, Subspace::new(2, &[rat_vec(&[1, -1])]).unwrap().to_cone());
        assert_eq!(o.polar(PolarSign::Positive), o);
    }

    #[test]
    fn sums_and_intersections() {
        let o = Cone::orthant(2);
        assert_eq!(o.sum(&Cone::zero(2)).unwrap(), o);
        assert!(o.intersect(&o.negate()).unwrap().is_zero());
        assert_eq!(o.relate(&o).unwrap(), ConeRelation::Equal);
        assert_eq!(Cone::zero(2).relate(&o).unwrap(), ConeRelation::Subset);
        assert!(o.sum(&Cone::zero(3)).is_err());
    }

    #[test]
    fn lin_and_span() {
        let o = Cone::orthant(2);
        assert!(o.lin().is_zero());
        assert!(o.span().is_full());
        let s = Subspace::new(3, &[rat_vec(&[1, 2, 0])]).unwrap();
        assert_eq!(s.to_cone().lin(), s);
        assert_eq!(s.to_cone().span(), s);
    }

    #[test]
    fn difference_subspace() {
        let o = Cone::orthant(2);
        assert!(o.difference_is_subspace(&o).unwrap());
        let a = cone_r(&[&[1, 0]], &[], 2);
        let b = cone_r(&[&[0, 1]], &[], 2);
        assert!(!a.difference_is_subspace(&b).unwrap());
    }

    #[test]
    fn complement_of_example_subspace() {
        let s = Subspace::new(3, &[rat_vec(&[1, 0, 1]), rat_vec(&[0, 1, -1])]).unwrap();
        let perp = s.orth_complement();
        assert_eq!(perp, Subspace::new(3, &[rat_vec(&[1, -1, -1])]).unwrap());
    }

    #[test]
    fn project_product() {
        let c = cone_r(&[&[1, 1]], &[], 2);
        let d = cone_r(&[&[1, 0], &[1, 2]], &[], 2);
        let p = c.product(&d);
        assert_eq!(p.project(&[0, 1]).unwrap(), c);
        assert_eq!(p.project(&[2, 3]).unwrap(), d);
    }

    #[test]
    fn json_round_trip() {
        let c = cone_r(&[&[1, 0, 2], &[0, 1, 1]], &[&[1, 1, 0]], 3);
        let s = serde_json::to_string(&c).unwrap();
        let back: Cone = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(s.contains("\"dim\":3"));
    }
}
