//! Eigencones and parametric spectra of polyhedral convex processes.
//!
//! For a process `P` with graph `{(x, y) : Gx x + Gy y ≤ 0, Ex x + Ey y = 0}`
//! the pair `(λ, ξ)` is an eigenpair iff `(Gx + λGy) ξ ≤ 0` and
//! `(Ex + λEy) ξ = 0`. Avoiding an exclusion subspace `W` is enforced by one
//! normalisation `s⟨v, ξ⟩ = 1` per basis vector `v` of `W⊥` and sign `s`.
//!
//! Feasibility of this one-parameter family can only change at real roots of
//! square subdeterminants of the stacked (affine in `λ`) constraint matrix,
//! so deciding the breakpoints plus one point per open gap decides every
//! interval. Irrational breakpoints are decided by running the simplex over
//! `Q(λ)`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::algebraic::{AlgElem, AlgebraicField};
use crate::arith::lp::{feasible_system, rank, solve, LpScalar, Solve, System};
use crate::arith::poly::isolate_all_real_roots;
use crate::arith::rat::{format_rat, parse_rat, rat, serde_rat, Rat, RatVector};
use crate::arith::{IsolatedRoot, RatMatrix, RatPoly};
use crate::cone::{Cone, Subspace};
use crate::error::{Error, Result};
use crate::process::Process;

/// A real number that is either rational or an isolated algebraic root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda {
    Rational(#[serde(with = "serde_rat")] Rat),
    Algebraic(IsolatedRoot),
}

impl Lambda {
    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Lambda::Rational(r) => Some(r),
            Lambda::Algebraic(_) => None,
        }
    }

    fn from_root(r: &IsolatedRoot) -> Self {
        match r.as_rational() {
            Some(q) => Lambda::Rational(q),
            None => Lambda::Algebraic(r.clone()),
        }
    }
}

impl std::fmt::Display for Lambda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lambda::Rational(r) => write!(f, "{}", format_rat(r)),
            Lambda::Algebraic(a) => write!(f, "{a}"),
        }
    }
}

/// An eigenpair `λξ ∈ P(ξ)` with `ξ` outside the exclusion subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigenWitness {
    Rational {
        #[serde(with = "serde_rat")]
        lambda: Rat,
        #[serde(with = "serde_rat::vec")]
        vector: RatVector,
    },
    /// `ξ_j = vector[j](λ)`.
    Algebraic {
        lambda: IsolatedRoot,
        #[serde(with = "poly_vec")]
        vector: Vec<RatPoly>,
    },
}

impl EigenWitness {
    pub fn lambda(&self) -> Lambda {
        match self {
            EigenWitness::Rational { lambda, .. } => Lambda::Rational(lambda.clone()),
            EigenWitness::Algebraic { lambda, .. } => Lambda::Algebraic(lambda.clone()),
        }
    }

    /// Exact re-check against the graph of `p` and the exclusion subspace.
    pub fn verify(&self, p: &Process, exclusion: &Subspace) -> bool {
        match self {
            EigenWitness::Rational { lambda, vector } => {
                let y: RatVector = vector.iter().map(|v| v * lambda).collect();
                vector.iter().any(|v| !v.is_zero())
                    && p.contains_pair(vector, &y)
                    && !exclusion.contains_vector(vector)
            }
            EigenWitness::Algebraic { lambda, vector } => {
                let n = p.n();
                if vector.len() != n {
                    return false;
                }
                let k = AlgebraicField::new(lambda.clone());
                let xi: Vec<AlgElem> = vector.iter().map(|q| k.element(q.clone())).collect();
                let alpha = k.alpha();
                let row_val = |r: &RatVector| {
                    let mut acc = k.rational(Rat::zero());
                    for j in 0..n {
                        let c = k.rational(r[j].clone()).add(&k.rational(r[n + j].clone()).mul(&alpha));
                        acc = acc.add(&c.mul(&xi[j]));
                    }
                    acc
                };
                let g = p.graph();
                let in_graph = g.inequalities().iter().all(|r| row_val(r).signum() <= 0)
                    && g.equalities().iter().all(|r| row_val(r).signum() == 0);
                let off = exclusion.orth_complement().basis().iter().any(|v| {
                    let mut acc = k.rational(Rat::zero());
                    for j in 0..n {
                        acc = acc.add(&k.rational(v[j].clone()).mul(&xi[j]));
                    }
                    acc.signum() != 0
                });
                in_graph && off
            }
        }
    }
}

/// An interval of the real line with rational (or infinite) endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumInterval {
    #[serde(with = "serde_rat::opt")]
    pub lo: Option<Rat>,
    pub lo_closed: bool,
    #[serde(with = "serde_rat::opt")]
    pub hi: Option<Rat>,
    pub hi_closed: bool,
}

impl SpectrumInterval {
    /// `[0, ∞)`
    pub fn nonnegative() -> Self {
        Self::from_lo(Rat::zero(), true)
    }

    /// `[1, ∞)`
    pub fn at_least_one() -> Self {
        Self::from_lo(Rat::one(), true)
    }

    /// `(0, ∞)`
    pub fn positive() -> Self {
        Self::from_lo(Rat::zero(), false)
    }

    pub fn from_lo(lo: Rat, closed: bool) -> Self {
        Self {
            lo: Some(lo),
            lo_closed: closed,
            hi: None,
            hi_closed: false,
        }
    }

    pub fn closed(lo: Rat, hi: Rat) -> Self {
        Self {
            lo: Some(lo),
            lo_closed: true,
            hi: Some(hi),
            hi_closed: true,
        }
    }

    pub fn real_line() -> Self {
        Self {
            lo: None,
            lo_closed: false,
            hi: None,
            hi_closed: false,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = match &self.lo {
            None => true,
            Some(l) => x > l || (self.lo_closed && x == l),
        };
        let below = match &self.hi {
            None => true,
            Some(h) => x < h || (self.hi_closed && x == h),
        };
        above && below
    }

    fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => l > h || (l == h && !(self.lo_closed && self.hi_closed)),
            _ => false,
        }
    }
}

impl std::str::FromStr for SpectrumInterval {
    type Err = Error;

    /// Accepts `lo:hi` (closed at finite ends) and bracket forms such as
    /// `[0,inf)`, `(0,inf)`, `[1/2,3]`; `inf`, `+inf`, `-inf` denote infinities.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed interval `{s}`"));
        let end = |t: &str| -> Result<Option<Rat>> {
            match t.trim() {
                "inf" | "+inf" | "-inf" | "∞" | "+∞" | "-∞" => Ok(None),
                v => parse_rat(v).map(Some),
            }
        };
        let (lo_closed, hi_closed, body) = if let Some(rest) = s.strip_prefix('[').or_else(|| s.strip_prefix('(')) {
            let lc = s.starts_with('[');
            let hc = rest.ends_with(']');
            if !(hc || rest.ends_with(')')) {
                return Err(bad());
            }
            (Some(lc), Some(hc), &rest[..rest.len() - 1])
        } else {
            (None, None, s)
        };
        let parts: Vec<&str> = if body.contains(',') {
            body.split(',').collect()
        } else {
            body.split(':').collect()
        };
        if parts.len() != 2 {
            return Err(bad());
        }
        let lo = end(parts[0])?;
        let hi = end(parts[1])?;
        if lo.is_none() && !parts[0].trim().starts_with('-') || hi.is_none() && parts[1].trim().starts_with('-') {
            return Err(bad());
        }
        Ok(Self {
            lo_closed: lo.is_some() && lo_closed.unwrap_or(true),
            hi_closed: hi.is_some() && hi_closed.unwrap_or(true),
            lo,
            hi,
        })
    }
}

impl std::fmt::Display for SpectrumInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = match &self.lo {
            None => "(-inf".to_string(),
            Some(r) => format!("{}{}", if self.lo_closed { "[" } else { "(" }, format_rat(r)),
        };
        let h = match &self.hi {
            None => "inf)".to_string(),
            Some(r) => format!("{}{}", format_rat(r), if self.hi_closed { "]" } else { ")" }),
        };
        write!(f, "{l}, {h}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumQuery {
    pub interval: SpectrumInterval,
    pub exclusion: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SpectrumAnswer {
    Empty,
    Witness { witness: EigenWitness },
}

impl SpectrumAnswer {
    pub fn is_empty(&self) -> bool {
        matches!(self, SpectrumAnswer::Empty)
    }

    pub fn witness(&self) -> Option<&EigenWitness> {
        match self {
            SpectrumAnswer::Empty => None,
            SpectrumAnswer::Witness { witness } => Some(witness),
        }
    }
}

/// An interval decision together with the bookkeeping of both passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDecision {
    pub answer: SpectrumAnswer,
    /// Breakpoints strictly inside the interval.
    pub breakpoints: usize,
    pub test_points: usize,
    /// Whether the double-density pass reproduced every gap verdict.
    pub dense_agrees: bool,
}

/// One maximal interval of `{λ : ker(P − λI) ⊄ W}`; `None` endpoints are
/// infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPiece {
    pub lo: Option<Lambda>,
    pub lo_closed: bool,
    pub hi: Option<Lambda>,
    pub hi_closed: bool,
    /// A certified member of the piece.
    pub witness: EigenWitness,
}

impl SpectrumPiece {
    pub fn is_point(&self) -> bool {
        self.lo.is_some() && self.lo == self.hi
    }
}

/// `ker(P − λI)`.
pub fn eigencone(p: &Process, lambda: &Rat) -> Cone {
    p.shift(lambda).kernel()
}

/// Row affine in `λ`: `c0 + λ c1`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct AffineRow {
    c0: RatVector,
    c1: RatVector,
}

impl AffineRow {
    fn is_constant(&self) -> bool {
        self.c1.iter().all(Zero::is_zero)
    }
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Determinant of `M0 + λ M1` as a polynomial, by interpolation.
fn det_poly(rows: &[&AffineRow], cols: &[usize]) -> RatPoly {
    let k = rows.len();
    let xs: Vec<Rat> = (0..=k).map(|i| rat(i as i64)).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|l| {
            let m: Vec<RatVector> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| &r.c0[c] + &r.c1[c] * l).collect())
                .collect();
            RatMatrix::from_rows(&m, k).unwrap().det().unwrap()
        })
        .collect();
    RatPoly::interpolate(&xs, &ys)
}

/// Adds `p` to a pairwise-coprime list of square-free monic factors.
fn add_to_base(base: &mut Vec<RatPoly>, p: RatPoly) {
    let mut p = p.square_free().monic();
    let mut out = Vec::with_capacity(base.len() + 2);
    for f in base.drain(..) {
        if p.degree().unwrap_or(0) == 0 {
            out.push(f);
            continue;
        }
        let g = f.gcd(&p).monic();
        if g.degree().unwrap_or(0) == 0 {
            out.push(f);
            continue;
        }
        let rest = f.div_rem(&g).0;
        if rest.degree().unwrap_or(0) > 0 {
            out.push(rest.monic());
        }
        out.push(g.clone());
        p = p.div_rem(&g).0;
    }
    if p.degree().unwrap_or(0) > 0 {
        out.push(p.monic());
    }
    *base = out;
}

/// Refines isolating intervals of distinct roots until pairwise disjoint and
/// sorts them.
fn separate(roots: &mut [IsolatedRoot]) {
    loop {
        roots.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut clean = true;
        for i in 1..roots.len() {
            if roots[i - 1].hi >= roots[i].lo {
                clean = false;
                roots[i - 1].bisect();
                roots[i].bisect();
            }
        }
        if clean {
            return;
        }
    }
}

/// Builds the parametric system of `P` (rows over `ξ ∈ Rⁿ`).
fn parametric_rows(p: &Process) -> (Vec<AffineRow>, Vec<AffineRow>) {
    let n = p.n();
    let split = |r: &RatVector| AffineRow {
        c0: r[..n].to_vec(),
        c1: r[n..].to_vec(),
    };
    let g = p.graph();
    (
        g.inequalities().iter().map(split).collect(),
        g.equalities().iter().map(split).collect(),
    )
}

/// Breakpoint candidates: every real root of a nonzero square subdeterminant
/// (size ≤ n) of the stacked system, with at most one normalisation row.
pub fn spectrum_breakpoints(p: &Process, exclusion: &Subspace) -> Vec<IsolatedRoot> {
    let n = p.n();
    let (ineq, eq) = parametric_rows(p);
    let mut rows: Vec<AffineRow> = ineq.into_iter().chain(eq).collect();
    let mut seen = HashSet::new();
    rows.retain(|r| seen.insert(r.clone()));
    let norms: Vec<AffineRow> = exclusion
        .orth_complement()
        .basis()
        .iter()
        .map(|v| AffineRow {
            c0: v.clone(),
            c1: vec![Rat::zero(); n],
        })
        .collect();
    let mut polys: HashSet<Vec<Rat>> = HashSet::new();
    let mut base: Vec<RatPoly> = Vec::new();
    let mut consider = |sel: &[&AffineRow], cols: &[usize]| {
        if sel.iter().all(|r| r.is_constant()) {
            return;
        }
        let d = det_poly(sel, cols);
        if d.degree().unwrap_or(0) == 0 {
            return;
        }
        let key = d.square_free().monic();
        if polys.insert(key.coeffs().to_vec()) {
            add_to_base(&mut base, key);
        }
    };
    for k in 1..=n {
        combinations(n, k, |cols| {
            combinations(rows.len(), k, |ri| {
                let sel: Vec<&AffineRow> = ri.iter().map(|&i| &rows[i]).collect();
                consider(&sel, cols);
            });
            for nr in &norms {
                combinations(rows.len(), k - 1, |ri| {
                    let mut sel: Vec<&AffineRow> = ri.iter().map(|&i| &rows[i]).collect();
                    sel.push(nr);
                    consider(&sel, cols);
                });
            }
        });
    }
    let mut roots = Vec::new();
    for f in &base {
        for mut r in isolate_all_real_roots(f).unwrap() {
            r.try_rationalize();
            roots.push(r);
        }
    }
    separate(&mut roots);
    roots
}

#[derive(Clone, Debug)]
enum Point {
    Rational(Rat),
    Breakpoint(usize),
}

/// Spectral decision procedure for one `(P, W)` pair; caches breakpoints and
/// point verdicts across interval queries.
pub struct SpectrumOracle {
    process: Process,
    exclusion: Subspace,
    ineq: Vec<AffineRow>,
    eq: Vec<AffineRow>,
    norms: Vec<RatVector>,
    breakpoints: Vec<IsolatedRoot>,
    rational_cache: HashMap<Rat, Option<EigenWitness>>,
    breakpoint_cache: HashMap<usize, Option<EigenWitness>>,
}

impl SpectrumOracle {
    pub fn new(p: &Process, exclusion: &Subspace) -> Result<Self> {
        if exclusion.ambient_dim() != p.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                found: exclusion.ambient_dim(),
            });
        }
        let (ineq, eq) = parametric_rows(p);
        let norms = exclusion.orth_complement().basis().to_vec();
        let breakpoints = if norms.is_empty() {
            Vec::new()
        } else {
            spectrum_breakpoints(p, exclusion)
        };
        Ok(Self {
            process: p.clone(),
            exclusion: exclusion.clone(),
            ineq,
            eq,
            norms,
            breakpoints,
            rational_cache: HashMap::new(),
            breakpoint_cache: HashMap::new(),
        })
    }

    pub fn process(&self) -> &Process {
        &self.process
    }

    pub fn exclusion(&self) -> &Subspace {
        &self.exclusion
    }

    pub fn breakpoints(&self) -> &[IsolatedRoot] {
        &self.breakpoints
    }

    fn system_at<T: LpScalar>(&self, lift: impl Fn(&Rat) -> T, lambda: &T, norm: &RatVector, s: i64) -> System<T> {
        let row = |r: &AffineRow| -> Vec<T> {
            r.c0
                .iter()
                .zip(&r.c1)
                .map(|(a, b)| lift(a).add(&lift(b).mul(lambda)))
                .collect()
        };
        let zero = lift(&Rat::zero());
        let mut eq: Vec<(Vec<T>, T)> = self.eq.iter().map(|r| (row(r), zero.clone())).collect();
        eq.push((norm.iter().map(&lift).collect(), lift(&rat(s))));
        System {
            nvars: self.process.n(),
            ineq: self.ineq.iter().map(|r| (row(r), zero.clone())).collect(),
            eq,
        }
    }

    /// `{ξ : eq(λ)ξ = 0} ⊆ W`, which rules `λ` out without any LP.
    fn equalities_inside_exclusion<T: LpScalar>(&self, lift: impl Fn(&Rat) -> T, lambda: &T) -> bool {
        let mut rows: Vec<Vec<T>> = self
            .eq
            .iter()
            .map(|r| r.c0.iter().zip(&r.c1).map(|(a, b)| lift(a).add(&lift(b).mul(lambda))).collect())
            .collect();
        let base = rank(&rows);
        rows.extend(self.norms.iter().map(|v| v.iter().map(&lift).collect()));
        rank(&rows) == base
    }

    fn decide_rational(&mut self, l: &Rat) -> Option<EigenWitness> {
        if let Some(v) = self.rational_cache.get(l) {
            return v.clone();
        }
        if self.equalities_inside_exclusion(|r| r.clone(), l) {
            self.rational_cache.insert(l.clone(), None);
            return None;
        }
        let mut found = None;
        'outer: for norm in &self.norms {
            for s in [1, -1] {
                let sys = self.system_at(|r| r.clone(), l, norm, s);
                if let Some(x) = feasible_system(&sys).witness() {
                    found = Some(EigenWitness::Rational {
                        lambda: l.clone(),
                        vector: x.clone(),
                    });
                    break 'outer;
                }
            }
        }
        self.rational_cache.insert(l.clone(), found.clone());
        found
    }

    fn decide_breakpoint(&mut self, i: usize) -> Option<EigenWitness> {
        if let Some(q) = self.breakpoints[i].as_rational() {
            return self.decide_rational(&q);
        }
        if let Some(v) = self.breakpoint_cache.get(&i) {
            return v.clone();
        }
        let root = self.breakpoints[i].clone();
        let k = AlgebraicField::new(root.clone());
        let alpha = k.alpha();
        let zero = k.rational(Rat::zero());
        if self.equalities_inside_exclusion(|r| k.rational(r.clone()), &alpha) {
            self.breakpoint_cache.insert(i, None);
            return None;
        }
        let mut found = None;
        'outer: for norm in &self.norms {
            for s in [1, -1] {
                let sys = self.system_at(|r| k.rational(r.clone()), &alpha, norm, s);
                if let Solve::Optimal { x, .. } = solve(&sys, None, &zero) {
                    found = Some(EigenWitness::Algebraic {
                        lambda: root.clone(),
                        vector: x.iter().map(|e| e.representative()).collect(),
                    });
                    break 'outer;
                }
            }
        }
        self.breakpoint_cache.insert(i, found.clone());
        found
    }

    fn decide(&mut self, p: &Point) -> Option<EigenWitness> {
        match p {
            Point::Rational(r) => self.decide_rational(r),
            Point::Breakpoint(i) => self.decide_breakpoint(*i),
        }
    }

    /// Indices of breakpoints strictly inside the interval, with isolating
    /// intervals refined to lie strictly inside as well.
    fn inner_breakpoints(&mut self, iv: &SpectrumInterval) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.breakpoints.len() {
            let b = &mut self.breakpoints[i];
            let above = match &iv.lo {
                None => true,
                Some(l) => b.cmp_rat(l) == Ordering::Greater,
            };
            let below = match &iv.hi {
                None => true,
                Some(h) => b.cmp_rat(h) == Ordering::Less,
            };
            if above && below {
                if let Some(l) = &iv.lo {
                    while &b.lo <= l && b.lo != b.hi {
                        b.bisect();
                    }
                }
                if let Some(h) = &iv.hi {
                    while &b.hi >= h && b.lo != b.hi {
                        b.bisect();
                    }
                }
                out.push(i);
            }
        }
        out
    }

    /// Open gaps between consecutive boundaries as rational bounds
    /// (`None` = infinite).
    fn gaps(&self, iv: &SpectrumInterval, inner: &[usize]) -> Vec<(Option<Rat>, Option<Rat>)> {
        let mut bounds: Vec<(Option<Rat>, Option<Rat>)> = Vec::new();
        let mut left = iv.lo.clone();
        for &i in inner {
            let b = &self.breakpoints[i];
            bounds.push((left.clone(), Some(b.lo.clone())));
            left = Some(b.hi.clone());
        }
        bounds.push((left, iv.hi.clone()));
        bounds
    }

    fn gap_points(gap: &(Option<Rat>, Option<Rat>), dense: bool) -> Vec<Rat> {
        match gap {
            (Some(l), Some(r)) => {
                let w = r - l;
                if dense {
                    vec![l + &w / rat(3), l + &w * rat(2) / rat(3)]
                } else {
                    vec![l + &w / rat(2)]
                }
            }
            (Some(l), None) => {
                if dense {
                    vec![l + Rat::new(1.into(), 2.into()), l + rat(2)]
                } else {
                    vec![l + rat(1)]
                }
            }
            (None, Some(r)) => {
                if dense {
                    vec![r - rat(2), r - Rat::new(1.into(), 2.into())]
                } else {
                    vec![r - rat(1)]
                }
            }
            (None, None) => {
                if dense {
                    vec![rat(-1), rat(1)]
                } else {
                    vec![Rat::zero()]
                }
            }
        }
    }

    /// Decides whether some `λ` in the interval has an eigenvector outside
    /// the exclusion subspace, running both the primary and the
    /// double-density pass.
    pub fn decide_interval(&mut self, iv: &SpectrumInterval) -> SpectrumDecision {
        if self.norms.is_empty() || iv.is_empty() {
            return SpectrumDecision {
                answer: SpectrumAnswer::Empty,
                breakpoints: 0,
                test_points: 0,
                dense_agrees: true,
            };
        }
        let inner = self.inner_breakpoints(iv);
        let gaps = self.gaps(iv, &inner);
        // Ascending: lo, gap0, b0, gap1, b1, …, gap_k, hi.
        let mut ordered: Vec<Point> = Vec::new();
        if iv.lo_closed {
            ordered.push(Point::Rational(iv.lo.clone().unwrap()));
        }
        let degenerate = matches!((&iv.lo, &iv.hi), (Some(l), Some(h)) if l == h);
        if !degenerate {
            for (g, gap) in gaps.iter().enumerate() {
                for p in Self::gap_points(gap, false) {
                    ordered.push(Point::Rational(p));
                }
                if g < inner.len() {
                    ordered.push(Point::Breakpoint(inner[g]));
                }
            }
            if iv.hi_closed {
                ordered.push(Point::Rational(iv.hi.clone().unwrap()));
            }
        }
        // Rational points first: they are much cheaper than breakpoints.
        let mut answer = SpectrumAnswer::Empty;
        let rational_first = ordered
            .iter()
            .filter(|p| matches!(p, Point::Rational(_)))
            .chain(ordered.iter().filter(|p| matches!(p, Point::Breakpoint(_))));
        for p in rational_first {
            if let Some(w) = self.decide(p) {
                answer = SpectrumAnswer::Witness { witness: w };
                break;
            }
        }
        let mut dense_agrees = true;
        let mut dense_feasible = false;
        if !degenerate {
            for gap in &gaps {
                let primary = Self::gap_points(gap, false)
                    .iter()
                    .any(|p| self.decide_rational(p).is_some());
                for p in Self::gap_points(gap, true) {
                    let v = self.decide_rational(&p).is_some();
                    dense_feasible |= v;
                    if v != primary {
                        dense_agrees = false;
                    }
                }
            }
        }
        // Every point of the interval is either in a gap or one of these.
        let mut non_gap_feasible = || {
            (iv.lo_closed && self.decide_rational(&iv.lo.clone().unwrap()).is_some())
                || (iv.hi_closed && !degenerate && self.decide_rational(&iv.hi.clone().unwrap()).is_some())
                || inner.iter().any(|&i| self.decide_breakpoint(i).is_some())
        };
        if (dense_feasible || non_gap_feasible()) != !answer.is_empty() {
            dense_agrees = false;
        }
        SpectrumDecision {
            answer,
            breakpoints: inner.len(),
            test_points: ordered.len(),
            dense_agrees,
        }
    }

    /// Like [`decide_interval`](Self::decide_interval), but a disagreement of
    /// the two passes is an error.
    pub fn in_interval(&mut self, iv: &SpectrumInterval) -> Result<SpectrumAnswer> {
        let d = self.decide_interval(iv);
        if !d.dense_agrees {
            return Err(Error::InvariantViolation(format!(
                "double-density pass changed the spectral verdict on {iv}"
            )));
        }
        Ok(d.answer)
    }

    /// The set `{λ : ker(P − λI) ⊄ W}` as maximal intervals.
    pub fn describe(&mut self) -> Vec<SpectrumPiece> {
        if self.norms.is_empty() {
            return Vec::new();
        }
        let all = SpectrumInterval::real_line();
        let inner = self.inner_breakpoints(&all);
        let gaps = self.gaps(&all, &inner);
        // Elements in ascending order: gap0, b0, gap1, …; each with its
        // verdict and (for breakpoints) its value.
        struct El {
            at: Option<Lambda>,
            witness: Option<EigenWitness>,
        }
        let mut els: Vec<El> = Vec::new();
        for (g, gap) in gaps.iter().enumerate() {
            let p = Self::gap_points(gap, false).remove(0);
            els.push(El {
                at: None,
                witness: self.decide_rational(&p),
            });
            if g < inner.len() {
                let i = inner[g];
                els.push(El {
                    at: Some(Lambda::from_root(&self.breakpoints[i])),
                    witness: self.decide_breakpoint(i),
                });
            }
        }
        let mut pieces = Vec::new();
        let mut k = 0;
        while k < els.len() {
            if els[k].witness.is_none() {
                k += 1;
                continue;
            }
            let start = k;
            while k + 1 < els.len() && els[k + 1].witness.is_some() {
                k += 1;
            }
            let end = k;
            // A gap element is bounded by its neighbouring breakpoints.
            let (lo, lo_closed) = match &els[start].at {
                Some(v) => (Some(v.clone()), true),
                None => (start.checked_sub(1).and_then(|j| els[j].at.clone()), false),
            };
            let (hi, hi_closed) = match &els[end].at {
                Some(v) => (Some(v.clone()), true),
                None => (els.get(end + 1).and_then(|e| e.at.clone()), false),
            };
            pieces.push(SpectrumPiece {
                lo,
                lo_closed,
                hi,
                hi_closed,
                witness: els[start].witness.clone().unwrap(),
            });
            k += 1;
        }
        pieces
    }
}

/// One-shot interval query.
pub fn spectrum_in_interval(p: &Process, query: &SpectrumQuery) -> Result<SpectrumAnswer> {
    SpectrumOracle::new(p, &query.exclusion)?.in_interval(&query.interval)
}

pub fn describe_spectrum(p: &Process, exclusion: &Subspace) -> Result<Vec<SpectrumPiece>> {
    Ok(SpectrumOracle::new(p, exclusion)?.describe())
}

mod poly_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::arith::rat::serde_rat;
    use crate::arith::{Rat, RatPoly};

    #[derive(Serialize, Deserialize)]
    struct P(#[serde(with = "serde_rat::vec")] Vec<Rat>);

    pub fn serialize<S: Serializer>(v: &[RatPoly], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|p| P(p.coeffs().to_vec()))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RatPoly>, D::Error> {
        let v = Vec::<P>::deserialize(d)?;
        Ok(v.into_iter().map(|p| RatPoly::new(p.0)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat_vec, ratio};

    fn doubling() -> Process {
        Process::new(1, Cone::from_generators(2, &[rat_vec(&[1, 2])], &[]).unwrap()).unwrap()
    }

    #[test]
    fn combinations_enumerate() {
        let mut v = Vec::new();
        combinations(4, 2, |c| v.push(c.to_vec()));
        assert_eq!(v.len(), 6);
        let mut e = 0;
        combinations(3, 0, |_| e += 1);
        assert_eq!(e, 1);
        let mut z = 0;
        combinations(2, 3, |_| z += 1);
        assert_eq!(z, 0);
    }

    #[test]
    fn doubling_half_line() {
        let p = doubling();
        assert_eq!(eigencone(&p, &rat(2)), Cone::from_generators(1, &[rat_vec(&[1])], &[]).unwrap());
        assert!(eigencone(&p, &rat(1)).is_zero());
        let zero = Subspace::zero(1);
        let bps = spectrum_breakpoints(&p, &zero);
        assert!(bps.iter().any(|b| b.as_rational() == Some(rat(2))));
        let pieces = describe_spectrum(&p, &zero).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].is_point());
        assert_eq!(pieces[0].lo, Some(Lambda::Rational(rat(2))));
    }

    #[test]
    fn identity_witness_one() {
        let id = Process::identity(2);
        let q = SpectrumQuery {
            interval: SpectrumInterval::nonnegative(),
            exclusion: Subspace::zero(2),
        };
        let a = spectrum_in_interval(&id, &q).unwrap();
        let w = a.witness().unwrap();
        assert_eq!(w.lambda(), Lambda::Rational(rat(1)));
        assert!(w.verify(&id, &q.exclusion));
    }

    #[test]
    fn diagonal_spectrum() {
        let a = RatMatrix::from_rows(&[vec![ratio(1, 2), rat(0)], vec![rat(0), rat(3)]], 2).unwrap();
        let p = Process::from_matrix(&a).unwrap();
        let pieces = describe_spectrum(&p, &Subspace::zero(2)).unwrap();
        let pts: Vec<Lambda> = pieces.iter().map(|x| x.lo.clone().unwrap()).collect();
        assert_eq!(pts, vec![Lambda::Rational(ratio(1, 2)), Lambda::Rational(rat(3))]);
        assert!(pieces.iter().all(|x| x.is_point()));
    }

    #[test]
    fn irrational_eigenvalue() {
        // [0 2; 1 0] has eigenvalues ±√2.
        let p = Process::from_matrix(&RatMatrix::from_i64(&[&[0, 2], &[1, 0]])).unwrap();
        let mut o = SpectrumOracle::new(&p, &Subspace::zero(2)).unwrap();
        let d = o.decide_interval(&SpectrumInterval::at_least_one());
        assert!(d.dense_agrees);
        let w = d.answer.witness().unwrap().clone();
        assert!(matches!(w, EigenWitness::Algebraic { .. }));
        assert!(w.verify(&p, &Subspace::zero(2)));
        let closed = SpectrumInterval::closed(rat(-1), rat(1));
        assert!(o.decide_interval(&closed).answer.is_empty());
        assert_eq!(o.describe().len(), 2);
    }

    #[test]
    fn exclusion_hides_eigenvector() {
        let id = Process::identity(2);
        let w = Subspace::new(2, &[rat_vec(&[1, 0]), rat_vec(&[0, 1])]).unwrap();
        let q = SpectrumQuery {
            interval: SpectrumInterval::nonnegative(),
            exclusion: w,
        };
        assert!(spectrum_in_interval(&id, &q).unwrap().is_empty());
    }

    #[test]
    fn interval_parsing() {
        let p: SpectrumInterval = "0:inf".parse().unwrap();
        assert_eq!(p, SpectrumInterval::nonnegative());
        let p: SpectrumInterval = "(0,inf)".parse().unwrap();
        assert_eq!(p, SpectrumInterval::positive());
        let p: SpectrumInterval = "[1/2, 3]".parse().unwrap();
        assert_eq!(p, SpectrumInterval::closed(ratio(1, 2), rat(3)));
        assert!("1:2:3".parse::<SpectrumInterval>().is_err());
        assert!(p.contains(&rat(3)) && !p.contains(&rat(4)));
    }
}
