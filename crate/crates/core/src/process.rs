//! Convex processes `H : Rⁿ ⇉ Rⁿ` stored as graph cones in `R²ⁿ`, with
//! coordinates ordered `(x, y)`.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::lp::{feasible_system, solve, Solve, System};
use crate::arith::rat::{dot, serde_rat, unit, Rat, RatVector};
use crate::arith::RatMatrix;
use crate::cone::{Cone, ConeJson, PolarSign, Subspace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Process {
    n: usize,
    graph: Cone,
}

/// A process whose graph is a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProcess(Process);

impl LinearProcess {
    pub fn new(p: Process) -> Result<Self> {
        if !p.is_linear() {
            return Err(Error::InvariantViolation("graph is not a subspace".into()));
        }
        Ok(Self(p))
    }

    pub fn process(&self) -> &Process {
        &self.0
    }

    pub fn into_process(self) -> Process {
        self.0
    }

    pub fn graph_subspace(&self) -> Subspace {
        self.0.graph.lin()
    }
}

impl std::ops::Deref for LinearProcess {
    type Target = Process;
    fn deref(&self) -> &Process {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Minimise the ℓ¹ norm of the successor.
    #[default]
    LeastNorm,
    /// Minimise the ℓ∞ norm of the successor.
    TowardZero,
    /// Minimise a randomly weighted ℓ¹ norm (seeded).
    RandomVertex,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "least_norm" | "least-norm" => Ok(Self::LeastNorm),
            "toward_zero" | "toward-zero" => Ok(Self::TowardZero),
            "random_vertex" | "random-vertex" => Ok(Self::RandomVertex),
            _ => Err(Error::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectoryPrefix {
    #[serde(with = "serde_rat::vecvec")]
    pub states: Vec<RatVector>,
}

impl TrajectoryPrefix {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of transitions.
    pub fn steps(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    pub fn validate(&self, h: &Process) -> Result<()> {
        if self.states.is_empty() {
            return Err(Error::InvalidTrajectory("no states".into()));
        }
        for (k, s) in self.states.iter().enumerate() {
            if s.len() != h.n {
                return Err(Error::InvalidTrajectory(format!("state {k} has length {}", s.len())));
            }
        }
        for k in 0..self.steps() {
            if !h.contains_pair(&self.states[k], &self.states[k + 1]) {
                return Err(Error::InvalidTrajectory(format!("x_{} ∉ H(x_{k})", k + 1)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Simulation {
    Trajectory(TrajectoryPrefix),
    /// `H(x_step) = ∅` (or the fiber misses the requested cone).
    Infeasible {
        step: usize,
        prefix: TrajectoryPrefix,
    },
}

impl Simulation {
    pub fn trajectory(&self) -> Option<&TrajectoryPrefix> {
        match self {
            Simulation::Trajectory(t) => Some(t),
            Simulation::Infeasible { .. } => None,
        }
    }
}

/// Vertices of a bounded polyhedron `P` with one `q`-step trajectory per
/// vertex ending in `ρP`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabCertificate {
    #[serde(with = "serde_rat::vecvec")]
    pub vertices: Vec<RatVector>,
    pub q: usize,
    #[serde(with = "serde_rat")]
    pub rho: Rat,
    pub trajectories: Vec<TrajectoryPrefix>,
}

impl Process {
    pub fn new(n: usize, graph: Cone) -> Result<Self> {
        if graph.dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: graph.dim(),
            });
        }
        Ok(Self { n, graph })
    }

    /// `x ↦ {A x}`.
    pub fn from_matrix(a: &RatMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let gens: Vec<RatVector> = (0..n)
            .map(|i| {
                let mut g = unit(2 * n, i);
                for r in 0..n {
                    g[n + r] = a[(r, i)].clone();
                }
                g
            })
            .collect();
        Self::new(n, Subspace::new(2 * n, &gens)?.to_cone())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matrix(&RatMatrix::identity(n)).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Cone {
        &self.graph
    }

    fn xs(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    fn ys(&self) -> Vec<usize> {
        (self.n..2 * self.n).collect()
    }

    pub fn domain(&self) -> Cone {
        self.graph.project(&self.xs()).unwrap()
    }

    pub fn image(&self) -> Cone {
        self.graph.project(&self.ys()).unwrap()
    }

    /// `{x : 0 ∈ H(x)}`.
    pub fn kernel(&self) -> Cone {
        self.graph.slice(&self.xs()).unwrap()
    }

    /// `H(0)`.
    pub fn zero_image(&self) -> Cone {
        self.graph.slice(&self.ys()).unwrap()
    }

    pub fn is_linear(&self) -> bool {
        self.graph.is_subspace()
    }

    pub fn is_strict(&self) -> bool {
        self.domain().is_full()
    }

    pub fn contains_pair(&self, x: &[Rat], y: &[Rat]) -> bool {
        x.len() == self.n && y.len() == self.n && self.graph.contains_vector(&[x, y].concat())
    }

    fn block_matrix(&self, tl: &Rat, tr: &Rat, bl: &Rat, br: &Rat) -> RatMatrix {
        let n = self.n;
        let mut rows = vec![vec![Rat::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            rows[i][i] = tl.clone();
            rows[i][n + i] = tr.clone();
            rows[n + i][i] = bl.clone();
            rows[n + i][n + i] = br.clone();
        }
        RatMatrix::from_rows(&rows, 2 * n).unwrap()
    }

    pub fn inverse(&self) -> Process {
        let (z, o) = (Rat::zero(), Rat::one());
        let swap = self.block_matrix(&z, &o, &o, &z);
        Process {
            n: self.n,
            graph: self.graph.map_invertible(&swap, &swap).unwrap(),
        }
    }

    /// `H − λI`.
    pub fn shift(&self, lambda: &Rat) -> Process {
        let (z, o) = (Rat::zero(), Rat::one());
        let t = self.block_matrix(&o, &z, &-lambda, &o);
        let t_inv = self.block_matrix(&o, &z, lambda, &o);
        Process {
            n: self.n,
            graph: self.graph.map_invertible(&t, &t_inv).unwrap(),
        }
    }

    /// `H⁻` (graph `[0 I; −I 0]·graph(H)⁻`) or `H⁺ = −H⁻` as graphs.
    pub fn dual(&self, sign: PolarSign) -> Process {
        let (z, o) = (Rat::zero(), Rat::one());
        let j = self.block_matrix(&z, &o, &-&o, &z);
        let j_inv = self.block_matrix(&z, &-&o, &o, &z);
        let neg = self
            .graph
            .polar(PolarSign::Negative)
            .map_invertible(&j, &j_inv)
            .unwrap();
        let graph = match sign {
            PolarSign::Negative => neg,
            PolarSign::Positive => neg.negate(),
        };
        Process { n: self.n, graph }
    }

    /// `G ∘ H` with `self = G`.
    pub fn compose(&self, h: &Process) -> Result<Process> {
        if self.n != h.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: h.n,
            });
        }
        let n = self.n;
        // (x, y, z) with (x, y) ∈ graph H and (y, z) ∈ graph G.
        let (mut ineq, mut eq) = h.graph.lifted_constraints(3 * n, 0);
        let (gi, ge) = self.graph.lifted_constraints(3 * n, n);
        ineq.extend(gi);
        eq.extend(ge);
        let lifted = Cone::from_constraints(3 * n, &ineq, &eq)?;
        let keep: Vec<usize> = (0..n).chain(2 * n..3 * n).collect();
        Process::new(n, lifted.project(&keep)?)
    }

    /// `H^q` by repeated squaring; `H⁰` is the identity.
    pub fn power(&self, q: usize) -> Process {
        let mut result = Process::identity(self.n);
        let mut base = self.clone();
        let mut k = q;
        while k > 0 {
            if k & 1 == 1 {
                result = base.compose(&result).unwrap();
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base).unwrap();
            }
        }
        result
    }

    fn check_set(&self, k: &Cone) -> Result<()> {
        if k.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: k.dim(),
            });
        }
        Ok(())
    }

    /// `H(K)`.
    pub fn image_of_cone(&self, k: &Cone) -> Result<Cone> {
        self.check_set(k)?;
        let g = self.graph.intersect(&k.product(&Cone::full(self.n)))?;
        g.project(&self.ys())
    }

    /// `H⁻¹(K) = {x : H(x) ∩ K ≠ ∅}`.
    pub fn preimage_of_cone(&self, k: &Cone) -> Result<Cone> {
        self.check_set(k)?;
        let g = self.graph.intersect(&Cone::full(self.n).product(k))?;
        g.project(&self.xs())
    }

    /// `L₋`: graph `lin(graph H)`.
    pub fn minimal_linear(&self) -> LinearProcess {
        LinearProcess(Process {
            n: self.n,
            graph: self.graph.lin().to_cone(),
        })
    }

    /// `L₊`: graph `Lin(graph H)`.
    pub fn maximal_linear(&self) -> LinearProcess {
        LinearProcess(Process {
            n: self.n,
            graph: self.graph.span().to_cone(),
        })
    }

    /// Fiber `{y : (x, y) ∈ graph, y ∈ within}` as an LP system in `y`.
    fn fiber_system(&self, x: &[Rat], within: Option<&Cone>) -> System<Rat> {
        let n = self.n;
        let split = |r: &RatVector| {
            let rhs = -dot(&r[..n], x);
            (r[n..].to_vec(), rhs)
        };
        let mut sys = System {
            nvars: n,
            ineq: self.graph.inequalities().iter().map(split).collect(),
            eq: self.graph.equalities().iter().map(split).collect(),
        };
        if let Some(k) = within {
            sys.ineq
                .extend(k.inequalities().iter().map(|r| (r.clone(), Rat::zero())));
            sys.eq.extend(k.equalities().iter().map(|r| (r.clone(), Rat::zero())));
        }
        sys
    }

    /// Some `y ∈ H(x)`, or `None` when `H(x) = ∅`.
    pub fn any_successor(&self, x: &[Rat]) -> Option<RatVector> {
        if x.len() != self.n {
            return None;
        }
        feasible_system(&self.fiber_system(x, None)).witness().cloned()
    }

    fn select_successor(&self, x: &[Rat], within: Option<&Cone>, weights: &[Rat], linf: bool) -> Option<RatVector> {
        let n = self.n;
        let fiber = self.fiber_system(x, within);
        // Variables (y, t): |y_i| ≤ t_i (ℓ¹) or |y_i| ≤ t_0 (ℓ∞).
        let nt = if linf { 1 } else { n };
        let nv = n + nt;
        let widen = |(r, b): &(RatVector, Rat)| {
            let mut w = r.clone();
            w.resize(nv, Rat::zero());
            (w, b.clone())
        };
        let mut sys = System {
            nvars: nv,
            ineq: fiber.ineq.iter().map(widen).collect(),
            eq: fiber.eq.iter().map(widen).collect(),
        };
        for i in 0..n {
            let ti = if linf { n } else { n + i };
            for s in [1, -1] {
                let mut r = vec![Rat::zero(); nv];
                r[i] = Rat::from_integer(s.into());
                r[ti] = -Rat::one();
                sys.ineq.push((r, Rat::zero()));
            }
        }
        let mut cost = vec![Rat::zero(); nv];
        cost[n..n + nt].clone_from_slice(&weights[..nt]);
        match solve(&sys, Some(&cost), &Rat::zero()) {
            Solve::Optimal { x, .. } => Some(x[..n].to_vec()),
            Solve::Infeasible { .. } => None,
            Solve::Unbounded => unreachable!("objective bounded below by zero"),
        }
    }

    /// Runs `steps` transitions from `x0`. With `within`, every state after
    /// `x0` is also required to lie in that cone (e.g. `F(H)`, so the
    /// trajectory never dies).
    pub fn simulate(
        &self,
        x0: &[Rat],
        steps: usize,
        strategy: Strategy,
        seed: u64,
        within: Option<&Cone>,
    ) -> Result<Simulation> {
        if x0.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x0.len(),
            });
        }
        if let Some(k) = within {
            self.check_set(k)?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut states = vec![x0.to_vec()];
        for step in 0..steps {
            let x = &states[step];
            let weights: Vec<Rat> = match strategy {
                Strategy::LeastNorm => vec![Rat::one(); self.n],
                Strategy::TowardZero => vec![Rat::one()],
                Strategy::RandomVertex => (0..self.n)
                    .map(|_| Rat::new(rng.gen_range(1..=16).into(), 4.into()))
                    .collect(),
            };
            let linf = strategy == Strategy::TowardZero;
            match self.select_successor(x, within, &weights, linf) {
                Some(y) => states.push(y),
                None => {
                    return Ok(Simulation::Infeasible {
                        step,
                        prefix: TrajectoryPrefix { states },
                    })
                }
            }
        }
        Ok(Simulation::Trajectory(TrajectoryPrefix { states }))
    }

    /// Exact check of a polyhedral stabilizability certificate. A `true`
    /// answer proves every vertex (hence all of `P`) exponentially
    /// stabilizable.
    pub fn check_stab_certificate(&self, cert: &StabCertificate) -> Result<bool> {
        if !(cert.rho.is_positive() && cert.rho < Rat::one()) {
            return Err(Error::MalformedCertificate("ρ must lie in (0, 1)".into()));
        }
        if cert.q < 1 {
            return Err(Error::MalformedCertificate("horizon q must be at least 1".into()));
        }
        if cert.vertices.is_empty() {
            return Err(Error::MalformedCertificate("no vertices".into()));
        }
        if cert.trajectories.len() != cert.vertices.len() {
            return Err(Error::MalformedCertificate("one trajectory per vertex required".into()));
        }
        if cert.vertices.iter().any(|v| v.len() != self.n) {
            return Err(Error::MalformedCertificate("vertex dimension".into()));
        }
        for (v, t) in cert.vertices.iter().zip(&cert.trajectories) {
            if t.steps() != cert.q || t.states.first() != Some(v) || t.validate(self).is_err() {
                return Ok(false);
            }
            let end = t.states.last().unwrap();
            if !in_scaled_hull(&cert.vertices, &cert.rho, end) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `p ∈ ρ·conv(vertices)`, by an exact LP over convex weights.
fn in_scaled_hull(vertices: &[RatVector], rho: &Rat, p: &[Rat]) -> bool {
    let k = vertices.len();
    let n = p.len();
    let mut eq: Vec<(RatVector, Rat)> = (0..n)
        .map(|i| (vertices.iter().map(|v| rho * &v[i]).collect(), p[i].clone()))
        .collect();
    eq.push((vec![Rat::one(); k], Rat::one()));
    let ineq = (0..k)
        .map(|j| {
            let mut r = vec![Rat::zero(); k];
            r[j] = -Rat::one();
            (r, Rat::zero())
        })
        .collect();
    feasible_system(&System { nvars: k, ineq, eq }).is_feasible()
}

#[derive(Serialize, Deserialize)]
struct ProcessJson {
    n: usize,
    #[serde(flatten)]
    graph: ConeJson,
}

impl Serialize for Process {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProcessJson {
            n: self.n,
            graph: ConeJson::from(&self.graph),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Process {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ProcessJson::deserialize(d)?;
        let graph = Cone::try_from(j.graph).map_err(serde::de::Error::custom)?;
        Process::new(j.n, graph).map_err(serde::de::Error::custom)
    }
}
