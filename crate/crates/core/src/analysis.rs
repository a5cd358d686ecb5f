//! Reachability, stabilizability, null-controllability and controllability
//! verdicts from the inner/outer decomposition and dual spectral tests.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::rat::serde_rat;
use crate::arith::{roots_in_open_unit_disc, Rat, RatPoly};
use crate::cone::{PolarSign, Subspace};
use crate::decomp::{decompose, Decomposition};
use crate::error::{Error, Result};
use crate::process::Process;
use crate::reach::{
    default_budget, domain_condition, feasible_set, image_condition, null_controllable_set, reachable_set,
    DomainCondition, SetResult,
};
use crate::spectral::{EigenWitness, SpectrumAnswer, SpectrumInterval, SpectrumOracle, SpectrumPiece};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub reachable: Verdict,
    pub stabilizable: Verdict,
    pub exp_stabilizable: Verdict,
    pub null_controllable: Verdict,
    pub controllable: Verdict,
}

/// Summary of the outer linear map `H_out|F(H_out)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterSummary {
    pub dim_f_hout: usize,
    #[serde(with = "serde_rat::vecvec")]
    pub matrix: Vec<Vec<Rat>>,
    /// Characteristic polynomial coefficients, ascending.
    #[serde(with = "serde_rat::vec")]
    pub char_poly: Vec<Rat>,
    pub in_open_unit_disc: bool,
    pub nilpotent: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    /// Dual inner eigenpair in `[0, ∞)` off `R₊⊥`.
    pub reach_witness: Option<EigenWitness>,
    /// Dual inner eigenpair in `[1, ∞)` off `R₊⊥`.
    pub stab_witness: Option<EigenWitness>,
    /// Dual inner eigenpair in `(0, ∞)` off `R₊⊥`.
    pub null_witness: Option<EigenWitness>,
    /// `R(H)` with its finite-determination index (reachable = yes).
    pub reachable_set: Option<SetResult>,
    pub r_minus: Option<Subspace>,
    pub r_plus: Option<Subspace>,
    pub outer: Option<OuterSummary>,
    /// `σ(H_in⁻)` off `R₊⊥`.
    pub dual_inner_spectrum: Option<Vec<SpectrumPiece>>,
    /// `F(H) ⊆ N(H)` checked directly (reachable = yes, within budget).
    pub feasible_in_null: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub dc_holds: bool,
    pub ic_holds: bool,
    pub verdicts: Verdicts,
    pub certificates: Certificates,
    pub budget: usize,
    pub elapsed_ms: u128,
}

impl AnalysisReport {
    pub fn is_conclusive(&self) -> bool {
        let v = &self.verdicts;
        [v.reachable, v.stabilizable, v.exp_stabilizable, v.null_controllable, v.controllable]
            .iter()
            .all(|x| *x != Verdict::Inconclusive)
    }
}

/// Shared state for the individual analyses of one process.
pub struct Analyzer {
    h: Process,
    budget: usize,
    dc: DomainCondition,
    ic: Option<bool>,
    decomposition: Option<Decomposition>,
    oracle: Option<SpectrumOracle>,
}

impl Analyzer {
    pub fn new(h: &Process, budget: Option<usize>) -> Result<Self> {
        let dc = domain_condition(h)?;
        let decomposition = if dc.holds { Some(decompose(h)?) } else { None };
        Ok(Self {
            h: h.clone(),
            budget: budget.unwrap_or_else(|| default_budget(h.n())),
            dc,
            ic: None,
            decomposition,
            oracle: None,
        })
    }

    pub fn process(&self) -> &Process {
        &self.h
    }

    pub fn domain_condition(&self) -> &DomainCondition {
        &self.dc
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    pub fn image_condition(&mut self) -> Result<bool> {
        if let Some(ic) = self.ic {
            return Ok(ic);
        }
        let ic = image_condition(&self.h)?;
        self.ic = Some(ic);
        Ok(ic)
    }

    /// `H_in⁻` with exclusion `R₊⊥`.
    pub fn dual_inner_oracle(&mut self) -> Option<&mut SpectrumOracle> {
        let d = self.decomposition.as_ref()?;
        if self.oracle.is_none() {
            let dual = d.h_in.dual(PolarSign::Negative);
            let excl = d.r_plus.orth_complement();
            self.oracle = Some(SpectrumOracle::new(&dual, &excl).expect("matching dimensions"));
        }
        self.oracle.as_mut()
    }

    fn dual_inner_query(&mut self, iv: &SpectrumInterval) -> Result<Option<SpectrumAnswer>> {
        match self.dual_inner_oracle() {
            None => Ok(None),
            Some(o) => o.in_interval(iv).map(Some),
        }
    }

    fn outer_summary(&self) -> Option<OuterSummary> {
        let d = self.decomposition.as_ref()?;
        let cp: RatPoly = d.outer_char_poly();
        let m = &d.h_out_matrix;
        Some(OuterSummary {
            dim_f_hout: m.rows(),
            matrix: m.to_rows(),
            char_poly: cp.coeffs().to_vec(),
            in_open_unit_disc: roots_in_open_unit_disc(&cp).expect("nonzero characteristic polynomial"),
            nilpotent: m.rows() == 0 || m.is_nilpotent().expect("square"),
        })
    }

    /// Reachable iff no dual inner eigenvector for `λ ∈ [0, ∞)` off `R₊⊥`
    /// and `F(H_out) = {0}`.
    pub fn reachability(&mut self) -> Result<(Verdict, Option<EigenWitness>)> {
        let ans = match self.dual_inner_query(&SpectrumInterval::nonnegative())? {
            None => return Ok((Verdict::Inconclusive, None)),
            Some(a) => a,
        };
        let f_zero = self.decomposition.as_ref().unwrap().f_hout.is_zero();
        Ok((Verdict::from_bool(ans.is_empty() && f_zero), ans.witness().cloned()))
    }

    /// Stabilizable (equivalently exponentially stabilizable) iff no dual
    /// inner eigenvector for `λ ∈ [1, ∞)` off `R₊⊥` and the outer map has
    /// all eigenvalues in the open unit disc.
    pub fn stabilizability(&mut self) -> Result<(Verdict, Option<EigenWitness>)> {
        let ans = match self.dual_inner_query(&SpectrumInterval::at_least_one())? {
            None => return Ok((Verdict::Inconclusive, None)),
            Some(a) => a,
        };
        let disc = self.outer_summary().unwrap().in_open_unit_disc;
        Ok((Verdict::from_bool(ans.is_empty() && disc), ans.witness().cloned()))
    }

    /// Under the domain and image conditions: null-controllable iff no dual
    /// inner eigenvector for `λ ∈ (0, ∞)` off `R₊⊥` and the outer map is
    /// nilpotent.
    pub fn null_controllability(&mut self) -> Result<(Verdict, Option<EigenWitness>)> {
        if !self.dc.holds || !self.image_condition()? {
            return Ok((Verdict::Inconclusive, None));
        }
        let ans = self.dual_inner_query(&SpectrumInterval::positive())?.unwrap();
        let nil = self.outer_summary().unwrap().nilpotent;
        Ok((Verdict::from_bool(ans.is_empty() && nil), ans.witness().cloned()))
    }

    /// Under the domain condition, controllable iff reachable. When
    /// reachable, `F(H) ⊆ N(H)` is also checked directly; `None` when the
    /// sets are not determined within budget.
    pub fn controllability(&mut self) -> Result<(Verdict, Option<bool>)> {
        let (r, _) = self.reachability()?;
        if r != Verdict::Yes {
            return Ok((r, None));
        }
        let f = feasible_set(&self.h, self.budget)?;
        let nset = null_controllable_set(&self.h, self.budget)?;
        let check = if f.determined && nset.determined {
            let ok = nset.cone.contains(&f.cone);
            if !ok {
                return Err(Error::InvariantViolation(
                    "reachable under the domain condition but F(H) ⊄ N(H)".into(),
                ));
            }
            Some(ok)
        } else {
            None
        };
        Ok((Verdict::Yes, check))
    }

    pub fn report(&mut self) -> Result<AnalysisReport> {
        let start = Instant::now();
        let (reachable, reach_witness) = self.reachability()?;
        let (stabilizable, stab_witness) = self.stabilizability()?;
        let (null_controllable, null_witness) = self.null_controllability()?;
        let (controllable, feasible_in_null) = self.controllability()?;
        let ic_holds = self.image_condition()?;
        let reachable_cert = if reachable == Verdict::Yes {
            let r = reachable_set(&self.h, self.budget)?;
            let rp = self.dc.r_plus.to_cone();
            if r.determined && r.cone != rp {
                return Err(Error::InvariantViolation("reachable but R(H) ≠ R₊".into()));
            }
            Some(r)
        } else {
            None
        };
        let spectrum = self.dual_inner_oracle().map(|o| o.describe());
        let outer = self.outer_summary();
        let report = AnalysisReport {
            n: self.h.n(),
            dc_holds: self.dc.holds,
            ic_holds,
            verdicts: Verdicts {
                reachable,
                stabilizable,
                exp_stabilizable: stabilizable,
                null_controllable,
                controllable,
            },
            certificates: Certificates {
                reach_witness,
                stab_witness,
                null_witness,
                reachable_set: reachable_cert,
                r_minus: Some(self.dc.r_minus.clone()),
                r_plus: Some(self.dc.r_plus.clone()),
                outer,
                dual_inner_spectrum: spectrum,
                feasible_in_null,
            },
            budget: self.budget,
            elapsed_ms: start.elapsed().as_millis(),
        };
        check_report(&report)?;
        Ok(report)
    }
}

/// Structural implications every report must satisfy.
fn check_report(r: &AnalysisReport) -> Result<()> {
    let v = &r.verdicts;
    if r.dc_holds && v.reachable == Verdict::Yes {
        if r.ic_holds && v.null_controllable != Verdict::Yes {
            return Err(Error::InvariantViolation("reachable but not null-controllable".into()));
        }
        if v.controllable != Verdict::Yes || v.stabilizable != Verdict::Yes {
            return Err(Error::InvariantViolation("reachable verdict does not propagate".into()));
        }
    }
    if !r.dc_holds && r.is_conclusive() {
        return Err(Error::InvariantViolation("conclusive verdict without the domain condition".into()));
    }
    Ok(())
}

pub fn analyze(h: &Process, budget: Option<usize>) -> Result<AnalysisReport> {
    Analyzer::new(h, budget)?.report()
}

pub fn analyze_reachability(h: &Process) -> Result<(Verdict, Option<EigenWitness>)> {
    Analyzer::new(h, None)?.reachability()
}

pub fn analyze_stabilizability(h: &Process) -> Result<(Verdict, Option<EigenWitness>)> {
    Analyzer::new(h, None)?.stabilizability()
}

pub fn analyze_null_controllability(h: &Process) -> Result<(Verdict, Option<EigenWitness>)> {
    Analyzer::new(h, None)?.null_controllability()
}

pub fn analyze_controllability(h: &Process) -> Result<Verdict> {
    Ok(Analyzer::new(h, None)?.controllability()?.0)
}

/// Spectral verdicts set against direct set computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub report: AnalysisReport,
    pub feasible: SetResult,
    pub reachable: SetResult,
    pub null_controllable: SetResult,
    /// `F(H) ⊆ R(H)` when both sets are determined.
    pub feasible_in_reachable: Option<bool>,
    /// `F(H) ⊆ N(H)` when both sets are determined.
    pub feasible_in_null: Option<bool>,
}

/// Where the sets are determined within budget: reachable = yes iff
/// `F(H) ⊆ R(H)`, and null-controllable = yes implies `F(H) ⊆ N(H)`.
/// Discrepancies are errors.
pub fn cross_check(h: &Process, budget: Option<usize>) -> Result<CrossCheck> {
    let report = analyze(h, budget)?;
    let b = report.budget;
    let feasible = feasible_set(h, b)?;
    let reachable = reachable_set(h, b)?;
    let null_controllable = null_controllable_set(h, b)?;
    let fr = (feasible.determined && reachable.determined).then(|| reachable.cone.contains(&feasible.cone));
    let fnull = (feasible.determined && null_controllable.determined)
        .then(|| null_controllable.cone.contains(&feasible.cone));
    if let Some(fr) = fr {
        match report.verdicts.reachable {
            Verdict::Yes if !fr => {
                return Err(Error::InvariantViolation("reachable verdict but F(H) ⊄ R(H)".into()))
            }
            Verdict::No if fr => return Err(Error::InvariantViolation("unreachable verdict but F(H) ⊆ R(H)".into())),
            _ => {}
        }
    }
    if report.verdicts.null_controllable == Verdict::Yes && fnull == Some(false) {
        return Err(Error::InvariantViolation("null-controllable verdict but F(H) ⊄ N(H)".into()));
    }
    Ok(CrossCheck {
        report,
        feasible,
        reachable,
        null_controllable,
        feasible_in_reachable: fr,
        feasible_in_null: fnull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat, ratio};
    use crate::arith::RatMatrix;
    use crate::spectral::Lambda;
    use crate::sysio::system::example_system;

    #[test]
    fn identity_not_reachable_not_stabilizable() {
        let r = analyze(&Process::identity(2), None).unwrap();
        assert_eq!(r.verdicts.reachable, Verdict::No);
        assert_eq!(r.verdicts.stabilizable, Verdict::No);
        assert_eq!(r.verdicts.null_controllable, Verdict::No);
        assert_eq!(r.verdicts.controllable, Verdict::No);
    }

    #[test]
    fn half_identity_stabilizable() {
        let h = Process::from_matrix(&RatMatrix::scalar(2, &ratio(1, 2))).unwrap();
        let r = analyze(&h, None).unwrap();
        assert_eq!(r.verdicts.stabilizable, Verdict::Yes);
        assert_eq!(r.verdicts.null_controllable, Verdict::No);
    }

    #[test]
    fn nilpotent_null_controllable() {
        let h = Process::from_matrix(&RatMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        let r = analyze(&h, None).unwrap();
        assert_eq!(r.verdicts.null_controllable, Verdict::Yes);
        assert_eq!(r.verdicts.reachable, Verdict::No);
    }

    #[test]
    fn example_reachable_at_two() {
        let h = example_system(&rat(2), &rat(1)).build_process().unwrap();
        let r = analyze(&h, None).unwrap();
        assert!(r.dc_holds);
        assert_eq!(r.verdicts.reachable, Verdict::Yes);
        assert_eq!(r.verdicts.controllable, Verdict::Yes);
        let cc = cross_check(&h, None).unwrap();
        assert_eq!(cc.feasible_in_reachable, Some(true));
    }

    #[test]
    fn example_boundary_and_negative() {
        let h = example_system(&rat(1), &rat(1)).build_process().unwrap();
        let (v, w) = analyze_reachability(&h).unwrap();
        assert_eq!(v, Verdict::No);
        assert_eq!(w.unwrap().lambda(), Lambda::Rational(rat(0)));
        let h = example_system(&rat(-1), &rat(1)).build_process().unwrap();
        let (v, w) = analyze_stabilizability(&h).unwrap();
        assert_eq!(v, Verdict::No);
        assert_eq!(w.unwrap().lambda(), Lambda::Rational(rat(2)));
        let h = example_system(&ratio(1, 2), &rat(1)).build_process().unwrap();
        assert_eq!(analyze_stabilizability(&h).unwrap().0, Verdict::Yes);
    }
}
