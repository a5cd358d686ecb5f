//! Exact rational kernel: scalars, matrices, polynomials, linear programming
//! and real algebraic numbers.

pub mod algebraic;
pub mod lp;
pub mod matrix;
pub mod poly;
pub mod rat;

pub use lp::{lp_feasible, lp_minimize, FarkasCertificate, Feasibility, LpOutcome};
pub use matrix::{is_nilpotent, RatMatrix};
pub use poly::{isolate_all_real_roots, isolate_roots, roots_in_open_unit_disc, IsolatedRoot, RatPoly};
pub use rat::{parse_rat, rat, ratio, Rat, RatVector};
