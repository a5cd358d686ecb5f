//! Univariate rational polynomials, Sturm-sequence root isolation and the
//! Schur–Cohn unit-disc test.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{format_rat, rat, Rat};
use crate::error::{Error, Result};

/// Coefficients in ascending degree; never carries trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", format_rat(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c0 + c1·t`.
    pub fn linear(c0: Rat, c1: Rat) -> Self {
        Self::new(vec![c0, c1])
    }

    /// `∏ (t − r)` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Self::constant(Rat::one()), |acc, r| {
            acc.mul(&Self::linear(-r.clone(), Rat::one()))
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        sign(&self.eval(x))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(Rat::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(Rat::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `p / gcd(p, p')`, made monic.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Scales to integer coefficients with gcd 1 and positive leading term.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut p = super::rat::primitive(&self.coeffs);
        if p.last().is_some_and(|c| c.is_negative()) {
            p.iter_mut().for_each(|c| *c = -c.clone());
        }
        Self::new(p)
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::constant(Rat::one());
            let mut denom = Rat::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Self::linear(-xj.clone(), Rat::one()));
                    denom *= xi - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        acc
    }

    /// Reversed polynomial `tⁿ p(1/t)` with `n = deg p`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Bound `B` with every real root strictly inside `(−B, B)`.
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq.retain(|p| !p.is_zero());
        seq
    }
}

pub(crate) fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_variations(seq: &[RatPoly], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[RatPoly], a: &Rat, b: &Rat) -> usize {
    sign_variations(seq, a).saturating_sub(sign_variations(seq, b))
}

/// A real algebraic number: the unique root of a square-free polynomial
/// inside a closed rational interval.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    #[serde(with = "poly_serde")]
    pub poly: RatPoly,
    #[serde(with = "super::rat::serde_rat")]
    pub lo: Rat,
    #[serde(with = "super::rat::serde_rat")]
    pub hi: Rat,
}

impl fmt::Debug for IsolatedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.poly, self.lo, self.hi)
    }
}

impl fmt::Display for IsolatedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", format_rat(&r)),
            None => write!(
                f,
                "root of {} in [{}, {}]",
                self.poly,
                format_rat(&self.lo),
                format_rat(&self.hi)
            ),
        }
    }
}

impl IsolatedRoot {
    pub fn exact(r: Rat) -> Self {
        Self {
            poly: RatPoly::linear(-r.clone(), Rat::one()),
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.lo == self.hi {
            return Some(self.lo.clone());
        }
        if self.poly.degree() == Some(1) {
            let c = &self.poly.coeffs;
            return Some(-&c[0] / &c[1]);
        }
        None
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Halves the isolating interval once.
    pub fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat(2);
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        if self.poly.sign_at(&self.lo) * sm < 0 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rat) {
        while &self.width() > width {
            self.bisect();
        }
    }

    /// Compares the root with a rational number.
    pub fn cmp_rat(&mut self, c: &Rat) -> Ordering {
        loop {
            if c < &self.lo {
                return Ordering::Greater;
            }
            if c > &self.hi {
                return Ordering::Less;
            }
            if self.poly.eval(c).is_zero() {
                return Ordering::Equal;
            }
            self.bisect();
        }
    }

    /// Tries to recognise a rational root: `k/lead` for the integer-primitive
    /// defining polynomial (rational roots have a denominator dividing it).
    pub fn try_rationalize(&mut self) -> Option<Rat> {
        if let Some(r) = self.as_rational() {
            return Some(r);
        }
        let prim = self.poly.primitive();
        let lead = prim.leading();
        let step = lead.recip();
        self.refine_to(&(&step / rat(2)));
        let k = (&self.lo * &lead).ceil();
        let cand = &k / &lead;
        if cand <= self.hi && self.poly.eval(&cand).is_zero() {
            *self = Self::exact(cand.clone());
            return Some(cand);
        }
        None
    }
}

/// Isolates every distinct real root of `p` in `[lo, hi]`, with `hi = None`
/// meaning `+∞`. Roots come back sorted.
pub fn isolate_roots(p: &RatPoly, lo: &Rat, hi: Option<&Rat>) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.square_free();
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let hi = match hi {
        Some(h) => h.clone(),
        None => {
            let b = sf.cauchy_bound();
            if &b > lo {
                b
            } else {
                lo.clone()
            }
        }
    };
    if &hi < lo {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    if sf.eval(lo).is_zero() {
        out.push(IsolatedRoot::exact(lo.clone()));
    }
    if &hi == lo {
        return Ok(out);
    }
    let seq = sf.sturm_sequence();
    let mut stack = vec![(lo.clone(), hi.clone())];
    let mut found = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let c = count_roots(&seq, &a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 && !sf.eval(&a).is_zero() {
            if sf.eval(&b).is_zero() {
                found.push(IsolatedRoot::exact(b));
            } else {
                found.push(IsolatedRoot {
                    poly: sf.clone(),
                    lo: a,
                    hi: b,
                });
            }
            continue;
        }
        let mid = (&a + &b) / rat(2);
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    found.sort_by(|x, y| x.lo.cmp(&y.lo));
    out.extend(found);
    Ok(out)
}

/// Real roots on the whole line.
pub fn isolate_all_real_roots(p: &RatPoly) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let b = p.square_free().cauchy_bound();
    isolate_roots(p, &-b.clone(), Some(&b))
}

/// Whether every complex root of `p` lies in the open unit disc.
///
/// Schur–Cohn recursion: with `p(t) = Σ a_k t^k`, all roots are inside iff
/// `|a_0| < |a_n|` and `(a_n p − a_0 p*)/t` has all roots inside.
pub fn roots_in_open_unit_disc(p: &RatPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut cur = p.clone();
    loop {
        let n = cur.degree().unwrap();
        if n == 0 {
            return Ok(true);
        }
        let a0 = cur.coeff(0);
        let an = cur.leading();
        if a0.abs() >= an.abs() {
            return Ok(false);
        }
        let next = cur.scale(&an).sub(&cur.reversed_with_degree(n).scale(&a0));
        debug_assert!(next.coeff(0).is_zero());
        cur = RatPoly::new(next.coeffs[1..].to_vec());
    }
}

impl RatPoly {
    fn reversed_with_degree(&self, n: usize) -> Self {
        let mut c = vec![Rat::zero(); n + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            c[n - k] = a.clone();
        }
        Self::new(c)
    }

    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive().coeffs.iter().map(|c| c.to_integer()).collect()
    }
}

pub(crate) mod poly_serde {
    use super::RatPoly;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &RatPoly, s: S) -> Result<S::Ok, S::Error> {
        crate::arith::rat::serde_rat::vec::serialize(p.coeffs(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatPoly, D::Error> {
        Ok(RatPoly::new(crate::arith::rat::serde_rat::vec::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::ratio;
    use proptest::prelude::*;

    #[test]
    fn isolate_simple() {
        let p = RatPoly::from_i64(&[-1, 0, 1]);
        let roots = isolate_roots(&p, &rat(0), None).unwrap();
        assert_eq!(roots.len(), 1);
        let mut r = roots[0].clone();
        assert!(r.lo <= rat(1) && rat(1) <= r.hi);
        r.refine_to(&ratio(1, 1000));
        assert!(r.lo <= rat(1) && rat(1) <= r.hi);
        assert_eq!(r.clone().try_rationalize(), Some(rat(1)));
        let none = RatPoly::from_i64(&[1, 0, 1]);
        assert!(isolate_all_real_roots(&none).unwrap().is_empty());
        assert!(isolate_roots(&RatPoly::zero(), &rat(0), None).is_err());
    }

    #[test]
    fn isolate_irrational() {
        let p = RatPoly::from_i64(&[-2, 0, 1]);
        let mut roots = isolate_all_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &mut roots {
            assert!(r.try_rationalize().is_none());
            assert_eq!(r.cmp_rat(&ratio(141, 100)).is_ge(), r.lo > rat(0));
        }
    }

    #[test]
    fn unit_disc_examples() {
        assert!(roots_in_open_unit_disc(&RatPoly::from_i64(&[0, 0, 1])).unwrap());
        assert!(!roots_in_open_unit_disc(&RatPoly::from_i64(&[-1, 1])).unwrap());
        let p = RatPoly::new(vec![ratio(1, 2), ratio(-3, 2), rat(1)]);
        assert!(!roots_in_open_unit_disc(&p).unwrap());
        let q = RatPoly::from_roots(&[ratio(1, 2), ratio(-9, 10)]);
        assert!(roots_in_open_unit_disc(&q).unwrap());
        // t² + 1/2: roots ±i/√2 inside the disc.
        assert!(roots_in_open_unit_disc(&RatPoly::new(vec![ratio(1, 2), rat(0), rat(1)])).unwrap());
        // t² + 2: modulus √2.
        assert!(!roots_in_open_unit_disc(&RatPoly::from_i64(&[2, 0, 1])).unwrap());
        assert!(roots_in_open_unit_disc(&RatPoly::zero()).is_err());
    }

    #[test]
    fn gcd_and_square_free() {
        let p = RatPoly::from_roots(&[rat(1), rat(1), rat(2)]);
        let sf = p.square_free();
        assert_eq!(sf, RatPoly::from_roots(&[rat(1), rat(2)]));
        let (g, s, t) = p.ext_gcd(&RatPoly::from_roots(&[rat(2), rat(3)]));
        assert_eq!(g, RatPoly::from_roots(&[rat(2)]));
        assert_eq!(
            s.mul(&p).add(&t.mul(&RatPoly::from_roots(&[rat(2), rat(3)]))),
            g
        );
    }

    fn small_root() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn recovers_constructed_roots(roots in proptest::collection::vec(small_root(), 1..=4)) {
            let p = RatPoly::from_roots(&roots);
            let mut expected: Vec<Rat> = roots.clone();
            expected.sort();
            expected.dedup();
            let found = isolate_all_real_roots(&p).unwrap();
            prop_assert_eq!(found.len(), expected.len());
            for (mut f, e) in found.into_iter().zip(expected) {
                prop_assert_eq!(f.try_rationalize(), Some(e));
            }
        }

        #[test]
        fn unit_disc_is_multiplicative(a in proptest::collection::vec(small_root(), 1..=3),
                                       b in proptest::collection::vec(small_root(), 1..=3)) {
            let p = RatPoly::from_roots(&a);
            let q = RatPoly::from_roots(&b);
            let both = roots_in_open_unit_disc(&p.mul(&q)).unwrap();
            prop_assert_eq!(both, roots_in_open_unit_disc(&p).unwrap() && roots_in_open_unit_disc(&q).unwrap());
            let direct = a.iter().chain(&b).all(|r| r.abs() < rat(1));
            prop_assert_eq!(both, direct);
        }

        #[test]
        fn sturm_count_matches_isolation(roots in proptest::collection::vec(small_root(), 1..=4),
                                         lo in -4i64..=0, hi in 1i64..=4) {
            let p = RatPoly::from_roots(&roots);
            let sf = p.square_free();
            let seq = sf.sturm_sequence();
            let found = isolate_roots(&p, &rat(lo), Some(&rat(hi))).unwrap();
            let lo_root = usize::from(sf.eval(&rat(lo)).is_zero());
            prop_assert_eq!(found.len(), count_roots(&seq, &rat(lo), &rat(hi)) + lo_root);
        }
    }
}
