//! JSON and plain-text rendering of results.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{AnalysisReport, CrossCheck};
use crate::arith::rat::{format_rat, format_vec, Rat};
use crate::cone::{Cone, Subspace};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::process::Simulation;
use crate::reach::SetResult;
use crate::spectral::{EigenWitness, SpectrumDecision, SpectrumInterval, SpectrumPiece};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub exclusion: Subspace,
    pub interval: Option<SpectrumInterval>,
    pub decision: Option<SpectrumDecision>,
    pub pieces: Vec<SpectrumPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Analysis(AnalysisReport),
    Set { which: String, result: SetResult },
    Spectrum(SpectrumReport),
    Decomposition(Box<Decomposition>),
    Oracle(Box<CrossCheck>),
    Simulation(Simulation),
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).unwrap(),
        Format::Text => text(r),
    }
}

fn cone_text(c: &Cone) -> String {
    let list = |v: &[Vec<Rat>]| v.iter().map(|x| format_vec(x)).collect::<Vec<_>>().join(" ");
    format!("rays {{{}}} lineality {{{}}}", list(c.rays()), list(c.lineality()))
}

fn subspace_text(s: &Subspace) -> String {
    let b: Vec<String> = s.basis().iter().map(|x| format_vec(x)).collect();
    format!("span{{{}}}", b.join(" "))
}

fn witness_text(w: &EigenWitness) -> String {
    match w {
        EigenWitness::Rational { lambda, vector } => {
            format!("lambda = {}, vector {}", format_rat(lambda), format_vec(vector))
        }
        EigenWitness::Algebraic { lambda, .. } => format!("lambda = {lambda}"),
    }
}

fn piece_text(p: &SpectrumPiece) -> String {
    let lo = p.lo.as_ref().map_or("-inf".to_string(), |l| l.to_string());
    let hi = p.hi.as_ref().map_or("inf".to_string(), |l| l.to_string());
    if p.is_point() {
        format!("{{{lo}}}")
    } else {
        format!(
            "{}{lo}, {hi}{}",
            if p.lo_closed { '[' } else { '(' },
            if p.hi_closed { ']' } else { ')' }
        )
    }
}

fn set_text(out: &mut String, name: &str, s: &SetResult) {
    let _ = writeln!(out, "{name}: {}", cone_text(&s.cone));
    let _ = if s.determined {
        writeln!(out, "{name} determined after {} steps", s.q)
    } else {
        writeln!(out, "{name} not determined within {} steps", s.q)
    };
}

fn analysis_text(out: &mut String, a: &AnalysisReport) {
    let v = &a.verdicts;
    let _ = writeln!(out, "domain condition: {}", if a.dc_holds { "holds" } else { "fails" });
    let _ = writeln!(out, "image condition: {}", if a.ic_holds { "holds" } else { "fails" });
    let _ = writeln!(out, "reachable: {}", v.reachable);
    let _ = writeln!(out, "stabilizable: {}", v.stabilizable);
    let _ = writeln!(out, "exponentially stabilizable: {}", v.exp_stabilizable);
    let _ = writeln!(out, "null-controllable: {}", v.null_controllable);
    let _ = writeln!(out, "controllable: {}", v.controllable);
    let c = &a.certificates;
    if let Some(r) = &c.r_plus {
        let _ = writeln!(out, "R+ = {}", subspace_text(r));
    }
    if let Some(o) = &c.outer {
        let _ = writeln!(out, "dim F(H_out) = {}", o.dim_f_hout);
    }
    if let Some(p) = &c.dual_inner_spectrum {
        let s: Vec<String> = p.iter().map(piece_text).collect();
        let _ = writeln!(out, "dual inner spectrum: {}", if s.is_empty() { "empty".into() } else { s.join(" ") });
    }
    for (name, w) in [
        ("reachability", &c.reach_witness),
        ("stabilizability", &c.stab_witness),
        ("null-controllability", &c.null_witness),
    ] {
        if let Some(w) = w {
            let _ = writeln!(out, "{name} obstruction: {}", witness_text(w));
        }
    }
    let _ = writeln!(out, "budget: {}", a.budget);
}

fn text(r: &Report) -> String {
    let mut out = String::new();
    match r {
        Report::Analysis(a) => analysis_text(&mut out, a),
        Report::Set { which, result } => set_text(&mut out, which, result),
        Report::Spectrum(s) => {
            let _ = writeln!(out, "exclusion: {}", subspace_text(&s.exclusion));
            if let (Some(iv), Some(d)) = (&s.interval, &s.decision) {
                let verdict = match d.answer.witness() {
                    None => "empty".to_string(),
                    Some(w) => format!("nonempty, {}", witness_text(w)),
                };
                let _ = writeln!(out, "spectrum in {iv}: {verdict}");
            }
            let p: Vec<String> = s.pieces.iter().map(piece_text).collect();
            let _ = writeln!(out, "spectrum: {}", if p.is_empty() { "empty".into() } else { p.join(" ") });
        }
        Report::Decomposition(d) => {
            let _ = writeln!(out, "R- = {}", subspace_text(&d.r_minus));
            let _ = writeln!(out, "R+ = {}", subspace_text(&d.r_plus));
            let _ = writeln!(out, "V = {}", subspace_text(&d.v));
            let _ = writeln!(out, "graph H_in: {}", cone_text(d.h_in.graph()));
            let _ = writeln!(out, "graph H_out: {}", cone_text(d.h_out.graph()));
            let _ = writeln!(out, "F(H_out) = {}", subspace_text(&d.f_hout));
            for row in d.h_out_matrix.to_rows() {
                let _ = writeln!(out, "H_out matrix row: {}", format_vec(&row));
            }
        }
        Report::Oracle(c) => {
            analysis_text(&mut out, &c.report);
            set_text(&mut out, "feasible", &c.feasible);
            set_text(&mut out, "reachable", &c.reachable);
            set_text(&mut out, "null-controllable", &c.null_controllable);
            let opt = |b: Option<bool>| b.map_or("undetermined", |b| if b { "yes" } else { "no" });
            let _ = writeln!(out, "F(H) in R(H): {}", opt(c.feasible_in_reachable));
            let _ = writeln!(out, "F(H) in N(H): {}", opt(c.feasible_in_null));
        }
        Report::Simulation(Simulation::Trajectory(t)) => {
            for (k, x) in t.states.iter().enumerate() {
                let _ = writeln!(out, "x{k} = {}", format_vec(x));
            }
        }
        Report::Simulation(Simulation::Infeasible { step, prefix }) => {
            for (k, x) in prefix.states.iter().enumerate() {
                let _ = writeln!(out, "x{k} = {}", format_vec(x));
            }
            let _ = writeln!(out, "no successor at step {step}");
        }
    }
    out
}
