//! The supported base valued fields `(K, v)`:
//!
//! * `RatP(p)`: `Q` with the `p`-adic valuation,
//! * `RatFun(p)`: `F_p(t)` with the `t`-adic valuation,
//! * `PerfectHull(p)`: `F_p(t)^{1/p^∞} = ⋃_k F_p(t^{1/p^k})` with the
//!   `t`-adic valuation, valued in `Z[1/p]`.
//!
//! Elements are exact and kept in canonical form, so structural equality is
//! field equality.

mod fp;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use fp::FpPoly;
pub use ratfunc::RatFunc;

use crate::ordgroup::{ExtScalar, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements of different fields: {0} and {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{value} is not in the value group of {field}")]
    ValueNotInGroup { value: Rat, field: FieldSpec },
    #[error("{0} is not a supported prime (must be prime and below 2^32)")]
    NotPrime(u64),
    #[error("{0} has no parameter t")]
    NoParameter(FieldSpec),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

/// A prime below `2^32`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 2 || p >= 1 << 32 {
            return Err(FieldError::NotPrime(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return Err(FieldError::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    RatP(Prime),
    RatFun(Prime),
    PerfectHull(Prime),
}

impl FieldSpec {
    pub fn rat_p(p: u64) -> Result<Self, FieldError> {
        Ok(FieldSpec::RatP(Prime::new(p)?))
    }

    pub fn rat_fun(p: u64) -> Result<Self, FieldError> {
        Ok(FieldSpec::RatFun(Prime::new(p)?))
    }

    pub fn perfect_hull(p: u64) -> Result<Self, FieldError> {
        Ok(FieldSpec::PerfectHull(Prime::new(p)?))
    }

    /// The prime of the valuation (and the characteristic, except for `RatP`).
    pub fn p(&self) -> u64 {
        match self {
            FieldSpec::RatP(p) | FieldSpec::RatFun(p) | FieldSpec::PerfectHull(p) => p.get(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::RatP(_) => 0,
            _ => self.p(),
        }
    }

    /// Whether `γ` lies in the value group (`Z`, or `Z[1/p]` for the hull).
    pub fn in_value_group(&self, gamma: &Rat) -> bool {
        match self {
            FieldSpec::RatP(_) | FieldSpec::RatFun(_) => gamma.is_integer(),
            FieldSpec::PerfectHull(p) => p_power_exponent(gamma.denom(), p.get()).is_some(),
        }
    }

    /// Short machine name used in input files.
    pub fn kind_name(&self) -> &'static str {
        match self {
            FieldSpec::RatP(_) => "rat_p",
            FieldSpec::RatFun(_) => "rat_fun",
            FieldSpec::PerfectHull(_) => "perfect_hull",
        }
    }

    pub fn from_kind(kind: &str, p: u64) -> Result<Self, FieldError> {
        match kind {
            "rat_p" => Self::rat_p(p),
            "rat_fun" => Self::rat_fun(p),
            "perfect_hull" => Self::perfect_hull(p),
            other => Err(FieldError::Parse(format!("unknown field kind {other:?}"))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::RatP(p) => write!(f, "(Q, v_{})", p.get()),
            FieldSpec::RatFun(p) => write!(f, "(F_{}(t), v_t)", p.get()),
            FieldSpec::PerfectHull(p) => write!(f, "(F_{}(t)^(1/{}^inf), v_t)", p.get(), p.get()),
        }
    }
}

/// `k` with `d = p^k`, if any.
fn p_power_exponent(d: &BigInt, p: u64) -> Option<u32> {
    let mut d = d.clone();
    let p = BigInt::from(p);
    let mut k = 0;
    while !d.is_one() {
        let (q, r) = d.div_rem(&p);
        if !r.is_zero() {
            return None;
        }
        d = q;
        k += 1;
    }
    Some(k)
}

/// A value in `Γ_v ∪ {∞}`; `Infinity` exactly for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueQ {
    Fin(Rat),
    Infinity,
}

impl ValueQ {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ValueQ::Infinity)
    }

    pub fn as_fin(&self) -> Option<&Rat> {
        match self {
            ValueQ::Fin(r) => Some(r),
            ValueQ::Infinity => None,
        }
    }
}

impl From<ValueQ> for ExtScalar {
    fn from(v: ValueQ) -> Self {
        match v {
            ValueQ::Fin(r) => ExtScalar::Fin(r),
            ValueQ::Infinity => ExtScalar::Infinity,
        }
    }
}

impl fmt::Display for ValueQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueQ::Fin(r) => write!(f, "{r}"),
            ValueQ::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(Rat),
    Fun(RatFunc),
    /// `f(s)` with `s = t^{1/p^k}`, `k` minimal.
    Hull { k: u32, f: RatFunc },
}

/// An element of one of the supported fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KElem {
    field: FieldSpec,
    repr: Repr,
}

fn hull_normalize(p: u64, mut k: u32, mut f: RatFunc) -> Repr {
    while k > 0 {
        match f.deflate(p as usize) {
            Some(g) => {
                f = g;
                k -= 1;
            }
            None => break,
        }
    }
    if f.is_zero() {
        k = 0;
    }
    Repr::Hull { k, f }
}

fn lift(p: u64, from: u32, to: u32, f: &RatFunc) -> RatFunc {
    f.inflate((p as usize).pow(to - from))
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl KElem {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: FieldSpec, n: i64) -> Self {
        Self::from_bigint(field, &BigInt::from(n))
    }

    /// Image of an integer under `Z → K`.
    pub fn from_bigint(field: FieldSpec, n: &BigInt) -> Self {
        let p = field.p();
        let repr = match field {
            FieldSpec::RatP(_) => Repr::Q(Rat::from_integer(n.clone())),
            FieldSpec::RatFun(_) => Repr::Fun(RatFunc::from_poly(FpPoly::constant(p, bigint_mod(n, p)))),
            FieldSpec::PerfectHull(_) => Repr::Hull {
                k: 0,
                f: RatFunc::from_poly(FpPoly::constant(p, bigint_mod(n, p))),
            },
        };
        KElem { field, repr }
    }

    /// Image of a rational; fails in characteristic `p` when `p` divides the
    /// denominator.
    pub fn from_rat(field: FieldSpec, r: &Rat) -> Result<Self, FieldError> {
        if let FieldSpec::RatP(_) = field {
            return Ok(KElem { field, repr: Repr::Q(r.clone()) });
        }
        Self::from_bigint(field, r.numer()).checked_div(&Self::from_bigint(field, r.denom()))
    }

    /// The parameter `t`.
    pub fn t(field: FieldSpec) -> Result<Self, FieldError> {
        Self::t_pow(field, &Rat::one())
    }

    /// `t^e`; `e` must lie in the value group of `field`.
    pub fn t_pow(field: FieldSpec, e: &Rat) -> Result<Self, FieldError> {
        let p = field.p();
        let not_in_group = || FieldError::ValueNotInGroup { value: e.clone(), field };
        match field {
            FieldSpec::RatP(_) => Err(FieldError::NoParameter(field)),
            FieldSpec::RatFun(_) => {
                let n = e.to_integer().to_i64().filter(|_| e.is_integer()).ok_or_else(not_in_group)?;
                Ok(KElem { field, repr: Repr::Fun(RatFunc::monomial(p, 1, n)) })
            }
            FieldSpec::PerfectHull(_) => {
                let k = p_power_exponent(e.denom(), p).ok_or_else(not_in_group)?;
                let n = e.numer().to_i64().ok_or_else(not_in_group)?;
                Ok(KElem { field, repr: hull_normalize(p, k, RatFunc::monomial(p, 1, n)) })
            }
        }
    }

    /// Build an element of `F_p(t^{1/p^k})` from a fraction in `s = t^{1/p^k}`.
    pub fn from_hull_parts(field: FieldSpec, k: u32, f: RatFunc) -> Result<Self, FieldError> {
        match field {
            FieldSpec::PerfectHull(p) if f.modulus() == p.get() => {
                Ok(KElem { field, repr: hull_normalize(p.get(), k, f) })
            }
            FieldSpec::RatFun(p) if k == 0 && f.modulus() == p.get() => Ok(KElem { field, repr: Repr::Fun(f) }),
            _ => Err(FieldError::Parse(format!("fraction does not belong to {field}"))),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(r) => r.is_zero(),
            Repr::Fun(f) | Repr::Hull { f, .. } => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.field)
    }

    /// The rational value, for `RatP` elements.
    pub fn as_rat(&self) -> Option<&Rat> {
        match &self.repr {
            Repr::Q(r) => Some(r),
            _ => None,
        }
    }

    /// `(k, f)` with the element equal to `f(t^{1/p^k})`; `k = 0` for `RatFun`.
    pub fn as_fraction(&self) -> Option<(u32, &RatFunc)> {
        match &self.repr {
            Repr::Q(_) => None,
            Repr::Fun(f) => Some((0, f)),
            Repr::Hull { k, f } => Some((*k, f)),
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc, qop: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let p = self.field.p();
        let repr = match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(qop(a, b)),
            (Repr::Fun(a), Repr::Fun(b)) => Repr::Fun(op(a, b)),
            (Repr::Hull { k: j, f: a }, Repr::Hull { k, f: b }) => {
                let top = (*j).max(*k);
                let r = op(&lift(p, *j, top, a), &lift(p, *k, top, b));
                hull_normalize(p, top, r)
            }
            _ => unreachable!("representation does not match field"),
        };
        KElem { field: self.field, repr }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.combine(other, RatFunc::add, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.combine(other, RatFunc::sub, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.combine(other, RatFunc::mul, |a, b| a * b))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.combine(&inv, RatFunc::mul, |a, b| a * b))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.field.p();
        let repr = match &self.repr {
            Repr::Q(r) => Repr::Q(r.recip()),
            Repr::Fun(f) => Repr::Fun(f.inv().unwrap()),
            Repr::Hull { k, f } => hull_normalize(p, *k, f.inv().unwrap()),
        };
        Ok(KElem { field: self.field, repr })
    }

    /// Integer power; negative exponents fail on zero.
    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(self.field);
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// The valuation `v(self)`.
    pub fn val(&self) -> ValueQ {
        if self.is_zero() {
            return ValueQ::Infinity;
        }
        let p = self.field.p();
        ValueQ::Fin(match &self.repr {
            Repr::Q(r) => {
                Rat::from_integer(BigInt::from(padic_ord(r.numer(), p) - padic_ord(r.denom(), p)))
            }
            Repr::Fun(f) => Rat::from_integer(BigInt::from(f.ord0().unwrap())),
            Repr::Hull { k, f } => Rat::new(BigInt::from(f.ord0().unwrap()), BigInt::from(p).pow(*k)),
        })
    }
}

fn padic_ord(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands belong to different fields.
        impl $tr<&KElem> for &KElem {
            type Output = KElem;
            fn $method(self, rhs: &KElem) -> KElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<KElem> for KElem {
            type Output = KElem;
            fn $method(self, rhs: KElem) -> KElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        &KElem::zero(self.field) - self
    }
}

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        -&self
    }
}

pub fn k_add(a: &KElem, b: &KElem) -> Result<KElem, FieldError> {
    a.checked_add(b)
}

pub fn k_sub(a: &KElem, b: &KElem) -> Result<KElem, FieldError> {
    a.checked_sub(b)
}

pub fn k_mul(a: &KElem, b: &KElem) -> Result<KElem, FieldError> {
    a.checked_mul(b)
}

pub fn k_div(a: &KElem, b: &KElem) -> Result<KElem, FieldError> {
    a.checked_div(b)
}

pub fn k_eq(a: &KElem, b: &KElem) -> Result<bool, FieldError> {
    a.check(b)?;
    Ok(a == b)
}

pub fn k_val(a: &KElem) -> ValueQ {
    a.val()
}

/// An element of exact value `γ`: `p^γ` in `Q`, `t^γ` otherwise.
pub fn element_of_value(field: FieldSpec, gamma: &Rat) -> Result<KElem, FieldError> {
    if !field.in_value_group(gamma) {
        return Err(FieldError::ValueNotInGroup { value: gamma.clone(), field });
    }
    match field {
        FieldSpec::RatP(p) => {
            let e = gamma.to_integer().to_i64().ok_or(FieldError::ValueNotInGroup { value: gamma.clone(), field })?;
            KElem::from_int(field, p.get() as i64).pow(e)
        }
        _ => KElem::t_pow(field, gamma),
    }
}

/// Deterministic pseudorandom element; `size` bounds degrees and heights.
pub fn sample(field: FieldSpec, seed: u64, size: usize) -> KElem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(&mut rng, field, size)
}

fn random_fp_poly<R: Rng + ?Sized>(rng: &mut R, p: u64, max_deg: usize) -> FpPoly {
    let deg = rng.gen_range(0..=max_deg);
    FpPoly::from_coeffs(p, (0..=deg).map(|_| rng.gen_range(0..p)).collect())
}

fn random_fraction<R: Rng + ?Sized>(rng: &mut R, p: u64, size: usize, shift_range: i64) -> RatFunc {
    let num = random_fp_poly(rng, p, size);
    let mut den = random_fp_poly(rng, p, size / 2);
    if den.is_zero() {
        den = FpPoly::one(p);
    }
    let shift = RatFunc::monomial(p, 1, rng.gen_range(-shift_range..=shift_range));
    RatFunc::new(num, den).mul(&shift)
}

/// Like [`sample`], drawing from a caller-supplied generator. Returns zero
/// about one time in sixteen.
pub fn sample_with<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, size: usize) -> KElem {
    if rng.gen_range(0..16) == 0 {
        return KElem::zero(field);
    }
    sample_nonzero_with(rng, field, size)
}

/// A nonzero pseudorandom element.
pub fn sample_nonzero_with<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, size: usize) -> KElem {
    let size = size.max(1);
    let p = field.p();
    loop {
        let x = match field {
            FieldSpec::RatP(_) => {
                let bound = 10 * size as i64;
                let n = rng.gen_range(-bound..=bound);
                let d = rng.gen_range(1..=bound);
                let e = rng.gen_range(-(size.min(3) as i64)..=size.min(3) as i64);
                let unit = KElem::from_rat(field, &Rat::new(n.into(), d.into())).unwrap();
                &unit * &KElem::from_int(field, p as i64).pow(e).unwrap()
            }
            FieldSpec::RatFun(_) => {
                let f = random_fraction(rng, p, size, 2);
                KElem { field, repr: Repr::Fun(f) }
            }
            FieldSpec::PerfectHull(_) => {
                let k = rng.gen_range(0..=size.min(2) as u32);
                let f = random_fraction(rng, p, size, 2 * p.pow(k) as i64);
                KElem { field, repr: hull_normalize(p, k, f) }
            }
        };
        if !x.is_zero() {
            return x;
        }
    }
}

/// A pseudorandom value in the value group, with `|γ| ≤ bound` and (for the
/// hull) denominator dividing `p^2`.
pub fn sample_value_with<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, bound: i64) -> Rat {
    match field {
        FieldSpec::PerfectHull(p) => {
            let d = (p.get() as i64).pow(rng.gen_range(0..=2));
            Rat::new(rng.gen_range(-bound * d..=bound * d).into(), d.into())
        }
        _ => Rat::from_integer(rng.gen_range(-bound..=bound).into()),
    }
}

fn fmt_fp_coeff(c: u64, body: &str, out: &mut String) {
    match (c, body.is_empty()) {
        (_, true) => out.push_str(&c.to_string()),
        (1, false) => out.push_str(body),
        _ => {
            out.push_str(&c.to_string());
            out.push('*');
            out.push_str(body);
        }
    }
}

fn t_power_text(e: &Rat) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "t".to_string()
    } else if e.is_integer() && e.is_positive() {
        format!("t^{e}")
    } else {
        format!("t^({e})")
    }
}

/// Terms `(exponent of t, coefficient)` printed highest exponent first.
fn fmt_t_terms(mut terms: Vec<(Rat, u64)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        fmt_fp_coeff(*c, &t_power_text(e), &mut out);
    }
    out
}

fn fraction_text(k: u32, p: u64, f: &RatFunc) -> String {
    let scale = Rat::from_integer(BigInt::from(p).pow(k));
    let to_terms = |poly: &FpPoly| -> Vec<(Rat, u64)> {
        poly.terms().map(|(e, c)| (Rat::from_integer(BigInt::from(e)) / &scale, c)).collect()
    };
    if let Some(terms) = f.laurent_terms() {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Rat::from_integer(BigInt::from(e)) / &scale, c))
            .collect();
        return fmt_t_terms(terms);
    }
    format!("({})/({})", fmt_t_terms(to_terms(f.num())), fmt_t_terms(to_terms(f.den())))
}

impl KElem {
    /// Whether the printed form is a single token (no top-level `+` or `/`).
    pub(crate) fn is_atomic_text(&self) -> bool {
        match &self.repr {
            Repr::Q(r) => r.is_integer() && !r.is_negative(),
            Repr::Fun(f) | Repr::Hull { f, .. } => {
                f.laurent_terms().map(|t| t.len() <= 1).unwrap_or(false)
            }
        }
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p();
        match &self.repr {
            Repr::Q(r) => write!(f, "{r}"),
            Repr::Fun(g) => f.write_str(&fraction_text(0, p, g)),
            Repr::Hull { k, f: g } => f.write_str(&fraction_text(*k, p, g)),
        }
    }
}

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KElem({self} in {})", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordgroup::rat;

    fn hull(p: u64) -> FieldSpec {
        FieldSpec::perfect_hull(p).unwrap()
    }

    #[test]
    fn char_p_addition() {
        let f = FieldSpec::rat_fun(2).unwrap();
        let t = KElem::t(f).unwrap();
        assert!((&t + &t).is_zero());
    }

    #[test]
    fn root_cubed_is_t() {
        let f = hull(3);
        let s = KElem::t_pow(f, &rat(1, 3)).unwrap();
        assert_eq!(s.pow(3).unwrap(), KElem::t(f).unwrap());
        assert_eq!(s.pow(3).unwrap().as_fraction().unwrap().0, 0);
    }

    #[test]
    fn rational_division_and_value() {
        let f = FieldSpec::rat_p(5).unwrap();
        let q = &KElem::from_int(f, 10) / &KElem::from_int(f, 2);
        assert_eq!(q, KElem::from_int(f, 5));
        let f3 = FieldSpec::rat_p(3).unwrap();
        assert_eq!(KElem::from_int(f3, 18).val(), ValueQ::Fin(rat(2, 1)));
        assert_eq!(KElem::from_rat(f3, &rat(5, 9)).unwrap().val(), ValueQ::Fin(rat(-2, 1)));
        assert_eq!(KElem::zero(f3).val(), ValueQ::Infinity);
    }

    #[test]
    fn hull_valuation() {
        let f = hull(2);
        let x = &KElem::t_pow(f, &rat(-1, 2)).unwrap() + &KElem::t(f).unwrap();
        assert_eq!(x.val(), ValueQ::Fin(rat(-1, 2)));
        assert_eq!(x.to_string(), "t + t^(-1/2)");
    }

    #[test]
    fn values_of_elements() {
        let f = FieldSpec::rat_p(3).unwrap();
        assert_eq!(element_of_value(f, &rat(-2, 1)).unwrap(), KElem::from_rat(f, &rat(1, 9)).unwrap());
        let h = hull(2);
        assert_eq!(element_of_value(h, &rat(3, 4)).unwrap().val(), ValueQ::Fin(rat(3, 4)));
        assert!(matches!(
            element_of_value(h, &rat(1, 3)),
            Err(FieldError::ValueNotInGroup { .. })
        ));
        let g = FieldSpec::rat_fun(5).unwrap();
        assert!(element_of_value(g, &rat(1, 5)).is_err());
    }

    #[test]
    fn mismatched_fields() {
        let a = KElem::one(hull(2));
        let b = KElem::one(hull(3));
        assert!(matches!(k_add(&a, &b), Err(FieldError::FieldMismatch(..))));
        assert!(matches!(KElem::zero(hull(2)).inv(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn primes_are_checked() {
        assert!(FieldSpec::rat_p(4).is_err());
        assert!(FieldSpec::rat_fun(1).is_err());
        assert!(FieldSpec::perfect_hull(7).is_ok());
    }

    #[test]
    fn sampling_is_deterministic() {
        for f in [FieldSpec::rat_p(3).unwrap(), FieldSpec::rat_fun(2).unwrap(), hull(3)] {
            for seed in 0..20 {
                assert_eq!(sample(f, seed, 3), sample(f, seed, 3));
            }
        }
    }

    #[test]
    fn from_rat_in_char_p() {
        let f = FieldSpec::rat_fun(3).unwrap();
        assert_eq!(KElem::from_rat(f, &rat(1, 2)).unwrap(), KElem::from_int(f, 2));
        assert!(KElem::from_rat(f, &rat(1, 3)).is_err());
    }
}
