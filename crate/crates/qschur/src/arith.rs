//! Laurent polynomials over Z, cyclotomic and rational specializations, and
//! exact linear algebra over the matching fraction fields.
//!
//! Invariants kept throughout:
//! - `LaurentPoly` never stores a zero coefficient, so structural equality is
//!   mathematical equality.
//! - rank and span computations are exact; randomized rational evaluation is
//!   available only as a cross-check, never as the source of truth.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Element of Z[Q,Q^-1], keyed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn q_power(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(coeff_exp: I) -> Self {
        let mut p = Self::zero();
        for (c, e) in coeff_exp {
            p.add_term(BigInt::from(c), e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, coeff: BigInt, exp: i64) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `coeff * Q^exp` in one pass.
    pub fn mul_monomial(&self, coeff: &BigInt, exp: i64) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + exp, c * coeff)).collect(),
        }
    }

    /// Multiplies by `Q^exp`.
    pub fn shifted(&self, exp: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + exp, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `Some((negative, exp))` when the value is exactly `±Q^exp`.
    pub fn unit_monomial(&self) -> Option<(bool, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.magnitude() == BigInt::one().magnitude() {
            Some((c.is_negative(), *e))
        } else {
            None
        }
    }

    pub fn evaluate(&self, v: &BigRational) -> BigRational {
        debug_assert!(self.min_exp().unwrap_or(0) >= 0 || !v.is_zero());
        let mut out = BigRational::zero();
        for (e, c) in &self.terms {
            out += BigRational::from(c.clone()) * rat_pow(v, *e);
        }
        out
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Exact division in Z[Q,Q^-1]; `None` when the quotient does not exist.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, a) = self.to_dense();
        let (sd, dv) = d.to_dense();
        if a.len() < dv.len() {
            return None;
        }
        let lead = dv.last().unwrap();
        let mut rem = a;
        let qlen = rem.len() - dv.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + dv.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in dv.iter().enumerate() {
                let t = &q * dc;
                rem[k + i] -= t;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(sa - sd, quot))
    }

    /// Dense coefficients of `self / Q^shift`, lowest exponent first, both
    /// ends nonzero. Panics on zero.
    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let lo = self.min_exp().expect("dense form of zero polynomial");
        let hi = self.max_exp().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(c, shift + i as i64);
        }
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let magnitude = |c: &BigInt, e: i64| match (c.magnitude().is_one(), e) {
            (_, 0) => format!("{}", c.magnitude()),
            (true, 1) => "Q".to_string(),
            (true, _) => format!("Q^{e}"),
            (false, 1) => format!("{}*Q", c.magnitude()),
            (false, _) => format!("{}*Q^{e}", c.magnitude()),
        };
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                let sign = if c.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", magnitude(c, *e))?;
            } else {
                let sign = if c.is_negative() { " - " } else { " + " };
                write!(f, "{sign}{}", magnitude(c, *e))?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(c.clone(), *e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(-c, *e);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn rat_pow(v: &BigRational, e: i64) -> BigRational {
    let base = if e >= 0 { v.clone() } else { v.recip() };
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

/// l-th cyclotomic polynomial, computed by exact division of `Q^l - 1` by the
/// cyclotomic polynomials of the proper divisors of l.
pub fn cyclotomic_poly(l: u32) -> Result<LaurentPoly> {
    if l == 0 {
        return Err(Error::InvalidInput("cyclotomic order must be >= 1".into()));
    }
    let mut p = &LaurentPoly::q_power(l as i64) - &LaurentPoly::one();
    for d in 1..l {
        if l % d == 0 {
            let phi_d = cyclotomic_poly(d)?;
            p = p.exact_div(&phi_d).expect("cyclotomic division is exact");
        }
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// dense integer polynomial helpers (ascending coefficients, trimmed)

fn dvec_trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dvec_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn dvec_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = dvec_content(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    for c in &mut v {
        *c /= &g;
    }
    v
}

/// Remainder of repeated `r <- lead(b) * r - lead(r) * x^k * b`; agrees with
/// the pseudo-remainder up to a power of `lead(b)`, which the primitive
/// remainder sequence strips anyway.
fn dvec_prs_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor").clone();
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in &mut r {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[shift + i] -= t;
        }
        dvec_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn dvec_gcd_primitive(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if b.is_empty() {
            let mut g = dvec_primitive(a);
            if g.last().is_some_and(|c| c.is_negative()) {
                for c in &mut g {
                    *c = -&*c;
                }
            }
            return g;
        }
        let r = dvec_prs_rem(&a, &b);
        a = b;
        b = dvec_primitive(r);
    }
}

/// Gcd in Z[Q,Q^-1] up to a unit, normalized to lowest exponent 0 and
/// positive leading coefficient. Integer content is part of the gcd.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let normalize = |p: &LaurentPoly| {
        let (_, mut v) = p.to_dense();
        if v.last().is_some_and(|c| c.is_negative()) {
            for c in &mut v {
                *c = -&*c;
            }
        }
        LaurentPoly::from_dense(0, v)
    };
    if a.is_zero() {
        return if b.is_zero() { LaurentPoly::zero() } else { normalize(b) };
    }
    if b.is_zero() {
        return normalize(a);
    }
    let (_, da) = a.to_dense();
    let (_, db) = b.to_dense();
    let content = dvec_content(&da).gcd(&dvec_content(&db));
    let g = dvec_gcd_primitive(dvec_primitive(da), dvec_primitive(db));
    LaurentPoly::from_dense(0, g).mul_monomial(&content, 0)
}

/// Remainder of an integer polynomial modulo a monic integer polynomial.
fn dvec_rem_monic(mut v: Vec<BigInt>, m: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(m.last().is_some_and(|c| c.is_one()));
    while v.len() >= m.len() {
        let c = v.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = v.len() + 1 - m.len();
        for (i, mc) in m[..m.len() - 1].iter().enumerate() {
            let t = &c * mc;
            v[shift + i] -= t;
        }
    }
    dvec_trim(&mut v);
    v
}

// ---------------------------------------------------------------------------
// dense rational polynomial helpers

fn rvec_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rvec_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rvec_trim(&mut out);
    out
}

/// Quotient and remainder by a divisor with invertible leading coefficient.
fn rvec_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    rvec_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lb;
        let shift = r.len() - b.len();
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[shift + i] -= t;
        }
        rvec_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    (q, r)
}

// ---------------------------------------------------------------------------
// coefficient specifications

/// Coefficient ring a computation runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSpec {
    /// Z[Q,Q^-1] itself; ranks taken over its fraction field Q(Q).
    Generic,
    /// Z[Q]/(Phi_l), the l-th cyclotomic specialization, l >= 2.
    Cyclotomic(u32),
    /// Exact evaluation at a nonzero rational value of Q.
    RationalEval(BigRational),
}

impl CoefficientSpec {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("evaluation point denominator is zero".into()));
        }
        let v = BigRational::new(BigInt::from(num), BigInt::from(den));
        let spec = CoefficientSpec::RationalEval(v);
        spec.validate()?;
        Ok(spec)
    }

    pub fn cyclotomic(l: u32) -> Result<Self> {
        let spec = CoefficientSpec::Cyclotomic(l);
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoefficientSpec::Generic => Ok(()),
            CoefficientSpec::Cyclotomic(l) if *l >= 2 => Ok(()),
            CoefficientSpec::Cyclotomic(l) => Err(Error::InvalidInput(format!(
                "cyclotomic order must be >= 2, got {l}"
            ))),
            CoefficientSpec::RationalEval(v) if !v.is_zero() => Ok(()),
            CoefficientSpec::RationalEval(_) => {
                Err(Error::InvalidInput("evaluation point must be nonzero".into()))
            }
        }
    }
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSpec::Generic => write!(f, "generic"),
            CoefficientSpec::Cyclotomic(l) => write!(f, "cyclotomic({l})"),
            CoefficientSpec::RationalEval(v) => write!(f, "eval({v})"),
        }
    }
}

/// Image of a Laurent polynomial under a coefficient specification.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecValue {
    Generic(LaurentPoly),
    /// Integer residue modulo Phi_l, exponents `0..phi(l)`.
    Residue(LaurentPoly),
    Rational(BigRational),
}

pub fn specialize(p: &LaurentPoly, spec: &CoefficientSpec) -> Result<SpecValue> {
    spec.validate()?;
    match spec {
        CoefficientSpec::Generic => Ok(SpecValue::Generic(p.clone())),
        CoefficientSpec::Cyclotomic(l) => {
            let ctx = CyclotomicCtx::new(*l)?;
            Ok(SpecValue::Residue(ctx.residue(p)))
        }
        CoefficientSpec::RationalEval(v) => Ok(SpecValue::Rational(p.evaluate(v))),
    }
}

/// Arithmetic context for Z[Q]/(Phi_l) and its fraction field Q(Q)/(Phi_l).
#[derive(Clone, Debug)]
pub struct CyclotomicCtx {
    l: u32,
    /// Monic, ascending coefficients of Phi_l.
    modulus: Vec<BigInt>,
    deg: usize,
}

impl CyclotomicCtx {
    pub fn new(l: u32) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidInput(format!(
                "cyclotomic order must be >= 2, got {l}"
            )));
        }
        let phi = cyclotomic_poly(l)?;
        let (shift, modulus) = phi.to_dense();
        debug_assert_eq!(shift, 0);
        debug_assert!(modulus.last().is_some_and(|c| c.is_one()));
        let deg = modulus.len() - 1;
        Ok(CyclotomicCtx { l, modulus, deg })
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Integer residue of a Laurent polynomial: Q^-1 folds to Q^(l-1) since
    /// Phi_l divides Q^l - 1, then the result is reduced modulo Phi_l.
    pub fn residue(&self, p: &LaurentPoly) -> LaurentPoly {
        let l = self.l as i64;
        let mut folded = vec![BigInt::zero(); self.l as usize];
        for (e, c) in p.terms() {
            folded[e.rem_euclid(l) as usize] += c;
        }
        let reduced = dvec_rem_monic(folded, &self.modulus);
        LaurentPoly::from_dense(0, reduced)
    }

    fn coords(&self, p: &LaurentPoly) -> Vec<BigRational> {
        let r = self.residue(p);
        let mut v = vec![BigRational::zero(); self.deg];
        for (e, c) in r.terms() {
            v[e as usize] = BigRational::from(c.clone());
        }
        v
    }

    fn modulus_rational(&self) -> Vec<BigRational> {
        self.modulus.iter().map(|c| BigRational::from(c.clone())).collect()
    }
}

// ---------------------------------------------------------------------------
// fraction field of Z[Q,Q^-1]

/// Rational function in Q, kept reduced: gcd(num, den) is a unit, den has
/// lowest exponent 0 and positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "division by zero rational function");
        if num.is_zero() {
            return RatFn { num, den: LaurentPoly::one() };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        let s = den.min_exp().unwrap();
        if s != 0 {
            den = den.shifted(-s);
            num = num.shifted(-s);
        }
        if den.coeff(den.max_exp().unwrap()).is_negative() {
            num = -num;
            den = -den;
        }
        RatFn { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFn { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is 1, i.e. the value lies in
    /// Z[Q,Q^-1].
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RatFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn neg(&self) -> Self {
        RatFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFn::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

// ---------------------------------------------------------------------------
// field contexts for generic elimination code

/// Exact field operations parameterized by a context value, so the same
/// elimination code runs over Q(Q), over Q(Q)/(Phi_l), and over Q.
pub trait FieldCtx {
    type Elt: Clone + PartialEq + fmt::Debug;
    fn from_poly(&self, p: &LaurentPoly) -> Self::Elt;
    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn is_zero(&self, a: &Self::Elt) -> bool;
    fn neg(&self, a: &Self::Elt) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn inv(&self, a: &Self::Elt) -> Self::Elt;
}

pub struct GenericField;

impl FieldCtx for GenericField {
    type Elt = RatFn;
    fn from_poly(&self, p: &LaurentPoly) -> RatFn {
        RatFn::from_poly(p.clone())
    }
    fn zero(&self) -> RatFn {
        RatFn::zero()
    }
    fn one(&self) -> RatFn {
        RatFn::one()
    }
    fn is_zero(&self, a: &RatFn) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &RatFn) -> RatFn {
        a.neg()
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.add(b)
    }
    fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.sub(b)
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        a.mul(b)
    }
    fn inv(&self, a: &RatFn) -> RatFn {
        a.inv()
    }
}

pub struct CycField {
    pub ctx: CyclotomicCtx,
}

impl CycField {
    fn pad(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        v.resize(self.ctx.deg, BigRational::zero());
        v
    }
}

impl FieldCtx for CycField {
    type Elt = Vec<BigRational>;
    fn from_poly(&self, p: &LaurentPoly) -> Self::Elt {
        self.ctx.coords(p)
    }
    fn zero(&self) -> Self::Elt {
        vec![BigRational::zero(); self.ctx.deg]
    }
    fn one(&self) -> Self::Elt {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }
    fn is_zero(&self, a: &Self::Elt) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn neg(&self, a: &Self::Elt) -> Self::Elt {
        a.iter().map(|c| -c).collect()
    }
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt {
        let prod = rvec_mul(a, b);
        let (_, rem) = rvec_divrem(&prod, &self.ctx.modulus_rational());
        self.pad(rem)
    }
    fn inv(&self, a: &Self::Elt) -> Self::Elt {
        assert!(!self.is_zero(a), "inverse of zero cyclotomic element");
        // extended Euclid: s*a + t*Phi_l = gcd, gcd constant since a != 0
        let modulus = self.ctx.modulus_rational();
        let mut r0 = a.clone();
        rvec_trim(&mut r0);
        let mut r1 = modulus;
        let mut s0 = vec![BigRational::one()];
        let mut s1: Vec<BigRational> = Vec::new();
        while !r1.is_empty() {
            let (q, rem) = rvec_divrem(&r0, &r1);
            let qs1 = rvec_mul(&q, &s1);
            let mut s_next = s0.clone();
            s_next.resize(s_next.len().max(qs1.len()), BigRational::zero());
            for (i, c) in qs1.iter().enumerate() {
                s_next[i] -= c;
            }
            rvec_trim(&mut s_next);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        assert_eq!(r0.len(), 1, "gcd with irreducible modulus must be constant");
        let g = r0[0].clone();
        let inv: Vec<BigRational> = s0.iter().map(|c| c / &g).collect();
        let (_, rem) = rvec_divrem(&inv, &self.ctx.modulus_rational());
        self.pad(rem)
    }
}

pub struct RationalField {
    pub point: BigRational,
}

impl FieldCtx for RationalField {
    type Elt = BigRational;
    fn from_poly(&self, p: &LaurentPoly) -> BigRational {
        p.evaluate(&self.point)
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

// ---------------------------------------------------------------------------
// elimination

/// Fraction-free rank over Z[Q,Q^-1]: Bareiss one-step elimination with row
/// and column swaps, pivot chosen with fewest terms. Every interior division
/// is exact.
pub fn bareiss_rank(mut m: Vec<Vec<LaurentPoly>>) -> usize {
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let steps = nr.min(nc);
    let mut prev = LaurentPoly::one();
    for k in 0..steps {
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in k..nr {
            for j in k..nc {
                if m[i][j].is_zero() {
                    continue;
                }
                let w = m[i][j].num_terms();
                if pivot.map_or(true, |(pw, _, _)| w < pw) {
                    pivot = Some((w, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = pivot else {
            return k;
        };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        for i in (k + 1)..nr {
            for j in (k + 1)..nc {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("fraction-free elimination division");
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    steps
}

/// Rank by straightforward Gaussian elimination over an exact field.
pub fn gauss_rank<F: FieldCtx>(f: &F, mut m: Vec<Vec<F::Elt>>) -> usize {
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..nc {
        let Some(pr) = (rank..nr).find(|&i| !f.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = f.inv(&m[rank][col]);
        for j in col..nc {
            m[rank][j] = f.mul(&m[rank][j], &inv);
        }
        for i in (rank + 1)..nr {
            if f.is_zero(&m[i][col]) {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..nc {
                let t = f.mul(&factor, &m[rank][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Solves `A x = b` over an exact field; columns of `a` are the vectors.
/// Free variables are set to zero. `None` when the system is inconsistent.
pub fn gauss_solve<F: FieldCtx>(
    f: &F,
    mut a: Vec<Vec<F::Elt>>,
    mut b: Vec<F::Elt>,
) -> Option<Vec<F::Elt>> {
    let nr = a.len();
    let nc = if nr == 0 { 0 } else { a[0].len() };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..nc {
        let Some(pr) = (rank..nr).find(|&i| !f.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, pr);
        b.swap(rank, pr);
        let inv = f.inv(&a[rank][col]);
        for j in col..nc {
            a[rank][j] = f.mul(&a[rank][j], &inv);
        }
        b[rank] = f.mul(&b[rank], &inv);
        for i in 0..nr {
            if i == rank || f.is_zero(&a[i][col]) {
                continue;
            }
            let factor = a[i][col].clone();
            for j in col..nc {
                let t = f.mul(&factor, &a[rank][j]);
                a[i][j] = f.sub(&a[i][j], &t);
            }
            let t = f.mul(&factor, &b[rank]);
            b[i] = f.sub(&b[i], &t);
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == nr {
            break;
        }
    }
    for row in b.iter().skip(rank) {
        if !f.is_zero(row) {
            return None;
        }
    }
    let mut x = vec![f.zero(); nc];
    for (row, col) in pivots {
        x[col] = b[row].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// sparse linear maps over labeled bases

/// Matrix of a linear map between free modules with explicit basis labels.
/// Rows are indexed by the codomain basis, columns by the domain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLinearMap<L: Ord + Clone + Eq + Hash> {
    domain: Vec<L>,
    codomain: Vec<L>,
    dom_index: HashMap<L, usize>,
    cod_index: HashMap<L, usize>,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl<L: Ord + Clone + Eq + Hash + fmt::Debug> SparseLinearMap<L> {
    pub fn new(domain: Vec<L>, codomain: Vec<L>) -> Self {
        let dom_index: HashMap<L, usize> =
            domain.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let cod_index: HashMap<L, usize> =
            codomain.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        assert_eq!(dom_index.len(), domain.len(), "duplicate domain label");
        assert_eq!(cod_index.len(), codomain.len(), "duplicate codomain label");
        SparseLinearMap { domain, codomain, dom_index, cod_index, entries: BTreeMap::new() }
    }

    pub fn from_columns(
        domain: Vec<L>,
        codomain: Vec<L>,
        columns: Vec<BTreeMap<L, LaurentPoly>>,
    ) -> Self {
        assert_eq!(domain.len(), columns.len());
        let mut m = Self::new(domain, codomain);
        for (j, col) in columns.into_iter().enumerate() {
            for (label, v) in col {
                m.add_to_entry_idx(m.cod_index[&label], j, v);
            }
        }
        m
    }

    pub fn identity(basis: Vec<L>) -> Self {
        let mut m = Self::new(basis.clone(), basis);
        for i in 0..m.domain.len() {
            m.entries.insert((i, i), LaurentPoly::one());
        }
        m
    }

    pub fn domain(&self) -> &[L] {
        &self.domain
    }

    pub fn codomain(&self) -> &[L] {
        &self.codomain
    }

    pub fn nrows(&self) -> usize {
        self.codomain.len()
    }

    pub fn ncols(&self) -> usize {
        self.domain.len()
    }

    pub fn is_zero_map(&self) -> bool {
        self.entries.is_empty()
    }

    fn add_to_entry_idx(&mut self, row: usize, col: usize, v: LaurentPoly) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((row, col)).or_insert_with(LaurentPoly::zero);
        *slot = &*slot + &v;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn add_entry(&mut self, codomain_label: &L, domain_label: &L, v: LaurentPoly) {
        let row = *self
            .cod_index
            .get(codomain_label)
            .unwrap_or_else(|| panic!("unknown codomain label {codomain_label:?}"));
        let col = *self
            .dom_index
            .get(domain_label)
            .unwrap_or_else(|| panic!("unknown domain label {domain_label:?}"));
        self.add_to_entry_idx(row, col, v);
    }

    pub fn set_column(&mut self, domain_label: &L, column: &BTreeMap<L, LaurentPoly>) {
        for (label, v) in column {
            self.add_entry(label, domain_label, v.clone());
        }
    }

    pub fn entry(&self, codomain_label: &L, domain_label: &L) -> LaurentPoly {
        match (self.cod_index.get(codomain_label), self.dom_index.get(domain_label)) {
            (Some(&r), Some(&c)) => {
                self.entries.get(&(r, c)).cloned().unwrap_or_else(LaurentPoly::zero)
            }
            _ => LaurentPoly::zero(),
        }
    }

    pub fn column(&self, domain_label: &L) -> BTreeMap<L, LaurentPoly> {
        let mut out = BTreeMap::new();
        let Some(&j) = self.dom_index.get(domain_label) else {
            return out;
        };
        for ((r, c), v) in &self.entries {
            if *c == j {
                out.insert(self.codomain[*r].clone(), v.clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &BTreeMap<L, LaurentPoly>) -> BTreeMap<L, LaurentPoly> {
        let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::zero(); self.codomain.len()];
        for ((r, c), entry) in &self.entries {
            if let Some(coeff) = v.get(&self.domain[*c]) {
                acc[*r] = &acc[*r] + &(entry * coeff);
            }
        }
        let mut out = BTreeMap::new();
        for (i, p) in acc.into_iter().enumerate() {
            if !p.is_zero() {
                out.insert(self.codomain[i].clone(), p);
            }
        }
        out
    }

    /// `self ∘ first`; the codomain of `first` must equal the domain of
    /// `self` as an ordered basis.
    pub fn compose(&self, first: &Self) -> Self {
        assert_eq!(first.codomain, self.domain, "composition basis mismatch");
        let mut out = Self::new(first.domain.clone(), self.codomain.clone());
        // group entries of `first` by column for cache-friendly accumulation
        for ((r1, c1), v1) in &first.entries {
            for ((r2, c2), v2) in &self.entries {
                if c2 == r1 {
                    out.add_to_entry_idx(*r2, *c1, v2 * v1);
                }
            }
        }
        out
    }

    pub fn add_map(&self, rhs: &Self) -> Self {
        assert_eq!(self.domain, rhs.domain);
        assert_eq!(self.codomain, rhs.codomain);
        let mut out = self.clone();
        for ((r, c), v) in &rhs.entries {
            out.add_to_entry_idx(*r, *c, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::new(self.domain.clone(), self.codomain.clone());
        for ((r, j), v) in &self.entries {
            out.add_to_entry_idx(*r, *j, v * c);
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<LaurentPoly>> {
        let mut m = vec![vec![LaurentPoly::zero(); self.domain.len()]; self.codomain.len()];
        for ((r, c), v) in &self.entries {
            m[*r][*c] = v.clone();
        }
        m
    }

    pub fn columns(&self) -> Vec<BTreeMap<L, LaurentPoly>> {
        let mut cols = vec![BTreeMap::new(); self.domain.len()];
        for ((r, c), v) in &self.entries {
            cols[*c].insert(self.codomain[*r].clone(), v.clone());
        }
        cols
    }
}

fn dense_rank_under_spec(dense: Vec<Vec<LaurentPoly>>, spec: &CoefficientSpec) -> Result<usize> {
    spec.validate()?;
    match spec {
        CoefficientSpec::Generic => Ok(bareiss_rank(dense)),
        CoefficientSpec::Cyclotomic(l) => {
            let f = CycField { ctx: CyclotomicCtx::new(*l)? };
            let m = dense
                .iter()
                .map(|row| row.iter().map(|p| f.from_poly(p)).collect())
                .collect();
            Ok(gauss_rank(&f, m))
        }
        CoefficientSpec::RationalEval(v) => {
            let f = RationalField { point: v.clone() };
            let m = dense
                .iter()
                .map(|row| row.iter().map(|p| f.from_poly(p)).collect())
                .collect();
            Ok(gauss_rank(&f, m))
        }
    }
}

/// Exact rank of a sparse map over the field matching `spec`.
pub fn exact_rank<L: Ord + Clone + Eq + Hash + fmt::Debug>(
    m: &SparseLinearMap<L>,
    spec: &CoefficientSpec,
) -> Result<usize> {
    dense_rank_under_spec(m.to_dense(), spec)
}

/// Exact rank of a list of vectors presented as label -> coefficient maps.
pub fn rank_of_vectors<L: Ord + Clone>(
    vectors: &[BTreeMap<L, LaurentPoly>],
    spec: &CoefficientSpec,
) -> Result<usize> {
    let labels: BTreeSet<&L> = vectors.iter().flat_map(|v| v.keys()).collect();
    let labels: Vec<&L> = labels.into_iter().collect();
    let index: BTreeMap<&L, usize> =
        labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let dense: Vec<Vec<LaurentPoly>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![LaurentPoly::zero(); labels.len()];
            for (l, c) in v {
                row[index[l]] = c.clone();
            }
            row
        })
        .collect();
    dense_rank_under_spec(dense, spec)
}

/// Rank of the block matrix whose columns are the concatenated columns of
/// all the given maps; the maps must share their codomain basis in order.
pub fn rank_of_stacked_columns<L: Ord + Clone + Eq + Hash + fmt::Debug>(
    maps: &[&SparseLinearMap<L>],
    spec: &CoefficientSpec,
) -> Result<usize> {
    if maps.is_empty() {
        return Ok(0);
    }
    let codomain = maps[0].codomain();
    for m in maps {
        if m.codomain() != codomain {
            return Err(Error::InvalidInput("stacked maps with different codomains".into()));
        }
    }
    let nrows = codomain.len();
    let mut dense: Vec<Vec<LaurentPoly>> = vec![Vec::new(); nrows];
    for m in maps {
        let block = m.to_dense();
        for (row, brow) in dense.iter_mut().zip(block) {
            row.extend(brow);
        }
    }
    dense_rank_under_spec(dense, spec)
}

/// Lower-bound rank by exact evaluation at seeded random rational points;
/// returns the maximum rank seen. Used only to cross-check symbolic ranks.
pub fn rank_by_evaluation<L: Ord + Clone + Eq + Hash + fmt::Debug>(
    m: &SparseLinearMap<L>,
    seed: u64,
    points: usize,
) -> usize {
    let dense = m.to_dense();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..points {
        let num = loop {
            let n = rng.gen_range(-19i64..=19);
            if n != 0 {
                break n;
            }
        };
        let den = rng.gen_range(1i64..=7);
        let v = BigRational::new(BigInt::from(num), BigInt::from(den));
        let f = RationalField { point: v };
        let evaluated: Vec<Vec<BigRational>> = dense
            .iter()
            .map(|row| row.iter().map(|p| f.from_poly(p)).collect())
            .collect();
        best = best.max(gauss_rank(&f, evaluated));
    }
    best
}

// ---------------------------------------------------------------------------
// span membership

/// One coordinate of a span solution, in the fraction field matching the
/// coefficient specification it was computed under.
#[derive(Clone, Debug)]
pub enum SpanCoeff {
    Generic(RatFn),
    Cyclotomic(Vec<BigRational>),
    Rational(BigRational),
}

impl SpanCoeff {
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        match self {
            SpanCoeff::Generic(r) => r.to_laurent(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpanSolution {
    pub coeffs: Vec<SpanCoeff>,
    /// Whether every coefficient lies in the coefficient ring itself
    /// (Z[Q,Q^-1], Z[Q]/(Phi_l), or Z localized at the evaluation point).
    pub integral: bool,
}

/// Expresses `target` in the span of `vectors` over the field matching
/// `spec`. `Ok(None)` means the target is not in the span.
pub fn solve_in_span<L: Ord + Clone>(
    vectors: &[BTreeMap<L, LaurentPoly>],
    target: &BTreeMap<L, LaurentPoly>,
    spec: &CoefficientSpec,
) -> Result<Option<SpanSolution>> {
    spec.validate()?;
    let labels: BTreeSet<&L> =
        vectors.iter().flat_map(|v| v.keys()).chain(target.keys()).collect();
    let labels: Vec<&L> = labels.into_iter().collect();
    let dense_of = |v: &BTreeMap<L, LaurentPoly>| -> Vec<LaurentPoly> {
        labels
            .iter()
            .map(|l| v.get(l).cloned().unwrap_or_else(LaurentPoly::zero))
            .collect()
    };
    let cols: Vec<Vec<LaurentPoly>> = vectors.iter().map(dense_of).collect();
    let rhs = dense_of(target);
    let nr = labels.len();
    let nc = cols.len();

    match spec {
        CoefficientSpec::Generic => {
            let f = GenericField;
            let a: Vec<Vec<RatFn>> = (0..nr)
                .map(|r| (0..nc).map(|c| f.from_poly(&cols[c][r])).collect())
                .collect();
            let b: Vec<RatFn> = rhs.iter().map(|p| f.from_poly(p)).collect();
            let Some(x) = gauss_solve(&f, a, b) else {
                return Ok(None);
            };
            let integral = x.iter().all(|c| c.is_integral());
            Ok(Some(SpanSolution {
                coeffs: x.into_iter().map(SpanCoeff::Generic).collect(),
                integral,
            }))
        }
        CoefficientSpec::Cyclotomic(l) => {
            let f = CycField { ctx: CyclotomicCtx::new(*l)? };
            let a: Vec<Vec<Vec<BigRational>>> = (0..nr)
                .map(|r| (0..nc).map(|c| f.from_poly(&cols[c][r])).collect())
                .collect();
            let b: Vec<Vec<BigRational>> = rhs.iter().map(|p| f.from_poly(p)).collect();
            let Some(x) = gauss_solve(&f, a, b) else {
                return Ok(None);
            };
            let integral =
                x.iter().all(|v| v.iter().all(|c| c.denom().is_one()));
            Ok(Some(SpanSolution {
                coeffs: x.into_iter().map(SpanCoeff::Cyclotomic).collect(),
                integral,
            }))
        }
        CoefficientSpec::RationalEval(v) => {
            let f = RationalField { point: v.clone() };
            let a: Vec<Vec<BigRational>> = (0..nr)
                .map(|r| (0..nc).map(|c| f.from_poly(&cols[c][r])).collect())
                .collect();
            let b: Vec<BigRational> = rhs.iter().map(|p| f.from_poly(p)).collect();
            let Some(x) = gauss_solve(&f, a, b) else {
                return Ok(None);
            };
            let integral = x.iter().all(|c| denominator_divides_point_primes(c, v));
            Ok(Some(SpanSolution {
                coeffs: x.into_iter().map(SpanCoeff::Rational).collect(),
                integral,
            }))
        }
    }
}

/// Whether the denominator of `x` only involves primes dividing the
/// numerator or denominator of the evaluation point; those are exactly the
/// denominators the image of Z[Q,Q^-1] can produce.
fn denominator_divides_point_primes(x: &BigRational, point: &BigRational) -> bool {
    let mut d = x.denom().abs();
    let base = (point.numer() * point.denom()).abs();
    loop {
        if d.is_one() {
            return true;
        }
        let g = d.gcd(&base);
        if g.is_one() {
            return false;
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_power(1)
    }

    #[test]
    fn canonical_form_drops_zero_terms() {
        let mut p = LaurentPoly::from_terms([(2, 3), (-2, 3), (1, 0)]);
        assert_eq!(p.num_terms(), 1);
        p.add_term(BigInt::from(-1), 0);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
    }

    #[test]
    fn display_matches_fixed_text_form() {
        let p = LaurentPoly::from_terms([(3, 0), (-1, -2), (1, 5)]);
        assert_eq!(p.to_string(), "Q^5 + 3 - Q^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::from_terms([(-1, 1)]).to_string(), "-Q");
        assert_eq!(LaurentPoly::from_terms([(-2, 1), (5, -1)]).to_string(), "-2*Q + 5*Q^-1");
    }

    #[test]
    fn laurent_inverse_multiplies_to_one() {
        let p = &q() * &LaurentPoly::q_power(-1);
        assert!(p.is_one());
    }

    #[test]
    fn exact_div_detects_non_divisibility() {
        let p = LaurentPoly::from_terms([(1, 2), (-1, 0)]);
        let d = &q() - &LaurentPoly::one();
        let quot = p.exact_div(&d).unwrap();
        assert_eq!(quot, &q() + &LaurentPoly::one());
        assert!(p.exact_div(&LaurentPoly::from_terms([(1, 1), (1, 0)])).is_some());
        assert!(q().exact_div(&LaurentPoly::from_int(2)).is_none());
        assert!((&q() + &LaurentPoly::one()).exact_div(&p).is_none());
    }

    #[test]
    fn gcd_includes_integer_content() {
        let a = LaurentPoly::from_terms([(2, 1), (2, 0)]);
        let b = LaurentPoly::from_int(4);
        assert_eq!(poly_gcd(&a, &b), LaurentPoly::from_int(2));
        let c = LaurentPoly::from_terms([(1, 2), (-1, 0)]);
        let d = LaurentPoly::from_terms([(1, 1), (1, 0)]);
        assert_eq!(poly_gcd(&c, &d), d);
    }

    #[test]
    fn ratfn_reduction_and_integrality() {
        let r = RatFn::new(LaurentPoly::one(), q());
        assert!(r.is_integral());
        assert_eq!(r.to_laurent().unwrap(), LaurentPoly::q_power(-1));
        let half = RatFn::new(LaurentPoly::one(), LaurentPoly::from_int(2));
        assert!(!half.is_integral());
        let sum = half.add(&half);
        assert!(sum.is_integral());
        assert!(sum.to_laurent().unwrap().is_one());
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic_poly(1).unwrap(), LaurentPoly::from_terms([(1, 1), (-1, 0)]));
        assert_eq!(cyclotomic_poly(2).unwrap(), LaurentPoly::from_terms([(1, 1), (1, 0)]));
        assert_eq!(
            cyclotomic_poly(3).unwrap(),
            LaurentPoly::from_terms([(1, 2), (1, 1), (1, 0)])
        );
        assert_eq!(
            cyclotomic_poly(4).unwrap(),
            LaurentPoly::from_terms([(1, 2), (1, 0)])
        );
        assert_eq!(
            cyclotomic_poly(6).unwrap(),
            LaurentPoly::from_terms([(1, 2), (-1, 1), (1, 0)])
        );
    }

    #[test]
    fn residue_folds_negative_exponents() {
        let ctx = CyclotomicCtx::new(3).unwrap();
        // Q^-1 folds to Q^2, which reduces to -Q - 1
        let inv = ctx.residue(&LaurentPoly::q_power(-1));
        assert_eq!(inv, LaurentPoly::from_terms([(-1, 1), (-1, 0)]));
        let f = CycField { ctx: ctx.clone() };
        assert_eq!(f.mul(&f.from_poly(&LaurentPoly::q_power(1)), &f.from_poly(&inv)), f.one());
        // Q^2 + Q + 1 = 0 mod Phi_3
        assert!(ctx.residue(&LaurentPoly::from_terms([(1, 2), (1, 1), (1, 0)])).is_zero());
    }

    #[test]
    fn cyclotomic_field_inverts() {
        let f = CycField { ctx: CyclotomicCtx::new(3).unwrap() };
        let a = f.from_poly(&LaurentPoly::from_terms([(1, 1), (2, 0)]));
        let inv = f.inv(&a);
        assert_eq!(f.mul(&a, &inv), f.one());
    }

    #[test]
    fn bareiss_rank_drops_on_proportional_rows() {
        let m = vec![
            vec![q(), LaurentPoly::one()],
            vec![LaurentPoly::q_power(2), q()],
        ];
        assert_eq!(bareiss_rank(m), 1);
    }

    #[test]
    fn gauss_solve_handles_free_columns() {
        let f = RationalField { point: BigRational::from(BigInt::from(2)) };
        let a = vec![
            vec![f.one(), f.one(), f.zero()],
            vec![f.zero(), f.zero(), f.one()],
        ];
        let b = vec![f.one(), f.one()];
        let x = gauss_solve(&f, a, b).unwrap();
        assert_eq!(x, vec![f.one(), f.zero(), f.one()]);
    }

    #[test]
    fn span_solution_flags_non_laurent_coefficients() {
        // e1 in span{Q*e1}: coefficient Q^-1, integral
        let mut v = BTreeMap::new();
        v.insert(1u8, LaurentPoly::q_power(1));
        let mut t = BTreeMap::new();
        t.insert(1u8, LaurentPoly::one());
        let sol = solve_in_span(&[v], &t, &CoefficientSpec::Generic).unwrap().unwrap();
        assert!(sol.integral);
        assert_eq!(sol.coeffs[0].to_laurent().unwrap(), LaurentPoly::q_power(-1));

        // e1 in span{(Q+1)*e1}: coefficient 1/(Q+1), not integral
        let mut v2 = BTreeMap::new();
        v2.insert(1u8, LaurentPoly::from_terms([(1, 1), (1, 0)]));
        let sol2 = solve_in_span(&[v2], &t, &CoefficientSpec::Generic).unwrap().unwrap();
        assert!(!sol2.integral);

        // e2 not in span{e1}
        let mut v3 = BTreeMap::new();
        v3.insert(1u8, LaurentPoly::one());
        let mut t3 = BTreeMap::new();
        t3.insert(2u8, LaurentPoly::one());
        assert!(solve_in_span(&[v3], &t3, &CoefficientSpec::Generic).unwrap().is_none());
    }
}
