//! Feasible, reachable and null-controllable sets by cone iteration;
//! invariance checks; the domain and image conditions.

use serde::{Deserialize, Serialize};

use crate::cone::{Cone, ConeJson, Subspace};
use crate::error::{Error, Result};
use crate::process::Process;

/// Iteration budget used when none is given: `4n` (at least 4).
pub fn default_budget(n: usize) -> usize {
    4 * n.max(1)
}

/// Outcome of a set iteration. When `determined`, `cone` is the limit and
/// `q` the first index with `C_q = C_{q+1}`; otherwise `cone = C_budget` is
/// only a bound and `q = budget`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetResult {
    pub cone: Cone,
    pub determined: bool,
    pub q: usize,
}

#[derive(Serialize, Deserialize)]
struct SetResultJson {
    #[serde(flatten)]
    cone: ConeJson,
    determined: bool,
    q: usize,
}

impl Serialize for SetResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetResultJson {
            cone: ConeJson::from(&self.cone),
            determined: self.determined,
            q: self.q,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SetResultJson::deserialize(d)?;
        Ok(SetResult {
            cone: Cone::try_from(j.cone).map_err(serde::de::Error::custom)?,
            determined: j.determined,
            q: j.q,
        })
    }
}

fn iterate(start: Cone, budget: usize, step: impl Fn(&Cone) -> Result<Cone>) -> Result<SetResult> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let mut cur = start;
    for q in 0..budget {
        let next = step(&cur)?;
        if next == cur {
            return Ok(SetResult {
                cone: cur,
                determined: true,
                q,
            });
        }
        cur = next;
    }
    Ok(SetResult {
        cone: cur,
        determined: false,
        q: budget,
    })
}

/// `R(H) = ⋃ H^q(0)`, iterating `C_{q+1} = H(C_q)` from `C_0 = {0}`.
pub fn reachable_set(h: &Process, budget: usize) -> Result<SetResult> {
    iterate(Cone::zero(h.n()), budget, |c| h.image_of_cone(c))
}

/// `F(H) = ⋂ dom(H^q)`, iterating `D_{q+1} = H⁻¹(D_q)` from `D_0 = Rⁿ`.
pub fn feasible_set(h: &Process, budget: usize) -> Result<SetResult> {
    iterate(Cone::full(h.n()), budget, |c| h.preimage_of_cone(c))
}

/// `N(H) = R(H⁻¹)`.
pub fn null_controllable_set(h: &Process, budget: usize) -> Result<SetResult> {
    reachable_set(&h.inverse(), budget)
}

/// Reachable subspace of a linear process; terminates within `n` steps.
pub fn reachable_subspace(l: &Process) -> Result<Subspace> {
    let r = reachable_set(l, l.n() + 1)?;
    Subspace::from_cone(&r.cone)
        .filter(|_| r.determined)
        .ok_or_else(|| Error::InvariantViolation("linear reachable set is not a determined subspace".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvarianceKind {
    /// Every point of `C` has a successor in `C`.
    Weak,
    /// All successors of points of `C` stay in `C`.
    Strong,
}

pub fn check_invariance(h: &Process, c: &Cone, kind: InvarianceKind) -> Result<bool> {
    Ok(match kind {
        InvarianceKind::Weak => h.preimage_of_cone(c)?.contains(c),
        InvarianceKind::Strong => c.contains(&h.image_of_cone(c)?),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainCondition {
    pub holds: bool,
    pub r_minus: Subspace,
    pub r_plus: Subspace,
    pub dom_plus_r_minus: Cone,
    pub dom_plus_r_plus: Cone,
    /// `rint(dom H) ∩ R₋ ≠ ∅`.
    pub rint_meets_r_minus: bool,
    /// `R₊ ⊆ dom(H) + R₋`.
    pub r_plus_in_dom_plus_r_minus: bool,
}

/// `R₋` and `R₊`: reachable subspaces of `L₋` and `L₊`.
pub fn linear_reachable_pair(h: &Process) -> Result<(Subspace, Subspace)> {
    let rm = reachable_subspace(&h.minimal_linear())?;
    let rp = reachable_subspace(&h.maximal_linear())?;
    Ok((rm, rp))
}

/// The domain condition, evaluated directly and through the
/// relative-interior reformulation; the two must agree.
pub fn domain_condition(h: &Process) -> Result<DomainCondition> {
    let (rm, rp) = linear_reachable_pair(h)?;
    let dom = h.domain();
    let dm = dom.sum(&rm.to_cone())?;
    let dp = dom.sum(&rp.to_cone())?;
    let direct = dm.is_subspace() && dm == dp;
    let rint = dom.rint_intersects(&rm.to_cone())?;
    let contained = dm.contains(&rp.to_cone());
    if direct != (rint && contained) {
        return Err(Error::InvariantViolation(format!(
            "domain condition routes disagree: direct {direct}, reformulated {}",
            rint && contained
        )));
    }
    Ok(DomainCondition {
        holds: direct,
        r_minus: rm,
        r_plus: rp,
        dom_plus_r_minus: dm,
        dom_plus_r_plus: dp,
        rint_meets_r_minus: rint,
        r_plus_in_dom_plus_r_minus: contained,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageCondition {
    pub holds: bool,
    /// `H(R₊) − (N(L₋) ∩ R₊)`.
    pub lhs: Cone,
    pub r_plus: Subspace,
}

/// `H(R₊) − (N(L₋) ∩ R₊) = R₊`.
pub fn image_condition_detail(h: &Process) -> Result<ImageCondition> {
    let (_, rp) = linear_reachable_pair(h)?;
    let lm = h.minimal_linear();
    let n_lm = null_controllable_set(&lm, h.n() + 1)?;
    if !n_lm.determined {
        return Err(Error::InvariantViolation("linear null-controllable set undetermined".into()));
    }
    let rpc = rp.to_cone();
    let img = h.image_of_cone(&rpc)?;
    let lhs = img.sum(&n_lm.cone.intersect(&rpc)?.negate())?;
    Ok(ImageCondition {
        holds: lhs == rpc,
        lhs,
        r_plus: rp,
    })
}

pub fn image_condition(h: &Process) -> Result<bool> {
    Ok(image_condition_detail(h)?.holds)
}
