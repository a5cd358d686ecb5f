//! Arithmetic in `Q(α)` for a real algebraic number `α`, given as an
//! isolated root of a square-free rational polynomial.
//!
//! Elements are polynomials in `α` reduced modulo the defining polynomial.
//! The defining polynomial need not be irreducible: whenever a zero divisor
//! shows up, the modulus is replaced by the factor that vanishes at `α`
//! (dynamic evaluation), so every element stays well defined.

use std::cell::RefCell;
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Signed, Zero};

use super::lp::LpScalar;
use super::poly::{count_roots, IsolatedRoot, RatPoly};
use super::rat::Rat;

/// Range of `p` over `[lo, hi]`, by Horner's rule in interval arithmetic.
fn enclosure(p: &RatPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let c = p.coeffs();
    let mut a = c.last().cloned().unwrap_or_else(Rat::zero);
    let mut b = a.clone();
    for k in c.iter().rev().skip(1) {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + k;
        b = mx + k;
    }
    (a, b)
}

#[derive(Debug)]
struct Ctx {
    root: RefCell<IsolatedRoot>,
}

/// Shared handle to the number field `Q(α)`.
#[derive(Clone, Debug)]
pub struct AlgebraicField {
    ctx: Rc<Ctx>,
}

#[derive(Clone)]
pub struct AlgElem {
    poly: RatPoly,
    ctx: Rc<Ctx>,
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.poly)
    }
}

impl AlgebraicField {
    pub fn new(root: IsolatedRoot) -> Self {
        Self {
            ctx: Rc::new(Ctx {
                root: RefCell::new(root),
            }),
        }
    }

    pub fn root(&self) -> IsolatedRoot {
        self.ctx.root.borrow().clone()
    }

    pub fn rational(&self, r: Rat) -> AlgElem {
        AlgElem {
            poly: RatPoly::constant(r),
            ctx: self.ctx.clone(),
        }
    }

    /// The generator `α`.
    pub fn alpha(&self) -> AlgElem {
        self.element(RatPoly::x())
    }

    pub fn element(&self, p: RatPoly) -> AlgElem {
        let m = self.ctx.root.borrow().poly.clone();
        AlgElem {
            poly: p.rem(&m),
            ctx: self.ctx.clone(),
        }
    }
}

impl AlgElem {
    fn modulus(&self) -> RatPoly {
        self.ctx.root.borrow().poly.clone()
    }

    fn reduced(&self) -> RatPoly {
        self.poly.rem(&self.modulus())
    }

    /// The representative polynomial `p` with this element equal to `p(α)`.
    pub fn representative(&self) -> RatPoly {
        self.reduced()
    }

    /// Replaces the modulus by the factor that has `α` as a root.
    fn shrink_modulus(&self, g: &RatPoly) {
        let mut root = self.ctx.root.borrow_mut();
        let m = root.poly.clone();
        let seq = g.sturm_sequence();
        let in_g = if root.lo == root.hi {
            g.eval(&root.lo).is_zero()
        } else {
            count_roots(&seq, &root.lo, &root.hi) > 0 || g.eval(&root.lo).is_zero()
        };
        let new = if in_g { g.monic() } else { m.div_rem(g).0.monic() };
        root.poly = new;
    }

    fn sign(&self) -> i8 {
        let r = self.reduced();
        if r.is_zero() {
            return 0;
        }
        if r.degree() == Some(0) {
            return super::poly::sign(&r.coeff(0));
        }
        if let Some(s) = self.sign_by_enclosure(&r) {
            return s;
        }
        let m = self.modulus();
        let g = r.gcd(&m);
        if g.degree().unwrap_or(0) > 0 {
            self.shrink_modulus(&g);
            let r2 = self.reduced();
            if r2.is_zero() {
                return 0;
            }
            return self.sign_nonvanishing(&r2);
        }
        self.sign_nonvanishing(&r)
    }

    /// Sign of `r(α)` from an interval enclosure of `r` over the isolating
    /// interval, refining it a few times; `None` if that does not settle it.
    fn sign_by_enclosure(&self, r: &RatPoly) -> Option<i8> {
        let mut root = self.ctx.root.borrow_mut();
        for _ in 0..3 {
            let (lo, hi) = enclosure(r, &root.lo, &root.hi);
            if lo.is_positive() {
                return Some(1);
            }
            if hi.is_negative() {
                return Some(-1);
            }
            if root.lo == root.hi {
                return Some(0);
            }
            for _ in 0..16 {
                root.bisect();
            }
        }
        None
    }

    /// Sign of `r(α)` where `r` and the modulus are coprime.
    fn sign_nonvanishing(&self, r: &RatPoly) -> i8 {
        let mut root = self.ctx.root.borrow_mut();
        if root.lo == root.hi {
            return r.sign_at(&root.lo);
        }
        let sf = r.square_free();
        let seq = sf.sturm_sequence();
        loop {
            let lo_ok = !sf.eval(&root.lo).is_zero();
            if lo_ok && count_roots(&seq, &root.lo, &root.hi) == 0 {
                return r.sign_at(&root.hi);
            }
            root.bisect();
            if root.lo == root.hi {
                return r.sign_at(&root.lo);
            }
        }
    }

    fn inverse(&self) -> AlgElem {
        let s = self.sign();
        assert!(s != 0, "division by zero in algebraic field");
        let m = self.modulus();
        let r = self.reduced();
        let (g, a, _) = r.ext_gcd(&m);
        debug_assert_eq!(g.degree(), Some(0));
        AlgElem {
            poly: a.rem(&m),
            ctx: self.ctx.clone(),
        }
    }

    fn with(&self, p: RatPoly) -> AlgElem {
        let m = self.modulus();
        AlgElem {
            poly: p.rem(&m),
            ctx: self.ctx.clone(),
        }
    }
}

impl LpScalar for AlgElem {
    fn zero_like(&self) -> Self {
        self.with(RatPoly::zero())
    }
    fn one_like(&self) -> Self {
        self.with(RatPoly::constant(Rat::one()))
    }
    fn add(&self, o: &Self) -> Self {
        self.with(self.poly.add(&o.poly))
    }
    fn sub(&self, o: &Self) -> Self {
        self.with(self.poly.sub(&o.poly))
    }
    fn mul(&self, o: &Self) -> Self {
        self.with(self.poly.mul(&o.poly))
    }
    fn div(&self, o: &Self) -> Self {
        let inv = o.inverse();
        self.with(self.poly.mul(&inv.poly))
    }
    fn neg(&self) -> Self {
        self.with(self.poly.neg())
    }
    fn signum(&self) -> i8 {
        self.sign()
    }
}
