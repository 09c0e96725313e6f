//! Dense univariate polynomials over a base field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use rand::Rng;
use thiserror::Error;

use crate::basefield::{sample_with, FieldError, FieldSpec, KElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expansion base must be monic")]
    NotMonic,
    #[error("expansion base must have degree at least 1")]
    ConstantModulus,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A polynomial in `x`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyK {
    field: FieldSpec,
    coeffs: Vec<KElem>,
}

impl PolyK {
    pub fn zero(field: FieldSpec) -> Self {
        PolyK { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(KElem::one(field))
    }

    pub fn constant(c: KElem) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(KElem::one(field), 1)
    }

    /// `x - a`.
    pub fn linear(a: &KElem) -> Self {
        Self::from_coeffs(a.field(), vec![-a, KElem::one(a.field())])
    }

    /// `c·x^n`.
    pub fn monomial(c: KElem, n: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![KElem::zero(field); n];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs)
    }

    /// Panics if a coefficient lives in another field.
    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<KElem>) -> Self {
        assert!(coeffs.iter().all(|c| c.field() == field), "coefficient from another field");
        let mut f = PolyK { field, coeffs };
        while f.coeffs.last().is_some_and(KElem::is_zero) {
            f.coeffs.pop();
        }
        f
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> KElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| KElem::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&KElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(KElem::is_one)
    }

    /// The constant term when the polynomial has degree at most 0.
    pub fn as_constant(&self) -> Option<KElem> {
        match self.degree() {
            None => Some(KElem::zero(self.field)),
            Some(0) => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_coeffs(self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_coeffs(self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut out = vec![KElem::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::from_coeffs(self.field, out))
    }

    pub fn scale(&self, c: &KElem) -> Self {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The `l`-th Hasse derivative `Σ_k C(k,l) a_k x^{k-l}`, whose value at
    /// `a` is the coefficient of `(x-a)^l` in the expansion about `a`.
    pub fn hasse_derivative(&self, l: usize) -> Self {
        let n = self.coeffs.len();
        if l >= n {
            return Self::zero(self.field);
        }
        let mut binom = BigInt::from(1); // C(k, l) for k = l
        let mut out = Vec::with_capacity(n - l);
        for k in l..n {
            if k > l {
                binom = binom * BigInt::from(k) / BigInt::from(k - l);
            }
            out.push(&KElem::from_bigint(self.field, &binom) * &self.coeffs[k]);
        }
        Self::from_coeffs(self.field, out)
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands belong to different fields.
        impl $tr<&PolyK> for &PolyK {
            type Output = PolyK;
            fn $method(self, rhs: &PolyK) -> PolyK {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<PolyK> for PolyK {
            type Output = PolyK;
            fn $method(self, rhs: PolyK) -> PolyK {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &PolyK {
    type Output = PolyK;
    fn neg(self) -> PolyK {
        PolyK::from_coeffs(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `f = q·g + r` with `deg r < deg g`.
pub fn euclid_div(f: &PolyK, g: &PolyK) -> Result<(PolyK, PolyK), PolyError> {
    f.check(g)?;
    let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
    let field = f.field;
    let Some(df) = f.degree().filter(|&d| d >= dg) else {
        return Ok((PolyK::zero(field), f.clone()));
    };
    let inv = g.leading().unwrap().inv()?;
    let mut rem = f.coeffs.clone();
    let mut quot = vec![KElem::zero(field); df - dg + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dg] * &inv;
        if c.is_zero() {
            continue;
        }
        for (j, gc) in g.coeffs.iter().enumerate() {
            if !gc.is_zero() {
                rem[i + j] = &rem[i + j] - &(&c * gc);
            }
        }
        quot[i] = c;
    }
    rem.truncate(dg);
    Ok((PolyK::from_coeffs(field, quot), PolyK::from_coeffs(field, rem)))
}

/// The unique `[f_0, …, f_r]` with `f = Σ f_i q^i` and `deg f_i < deg q`;
/// empty for `f = 0`.
pub fn q_expansion(f: &PolyK, q: &PolyK) -> Result<Vec<PolyK>, PolyError> {
    f.check(q)?;
    match q.degree() {
        None => return Err(PolyError::DivisionByZero),
        Some(0) => return Err(PolyError::ConstantModulus),
        _ => {}
    }
    if !q.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (quot, rem) = euclid_div(&rest, q)?;
        out.push(rem);
        rest = quot;
    }
    Ok(out)
}

/// Coefficients of `f` in powers of `x - a` (the Hasse derivatives of `f`
/// at `a`), by repeated synthetic division. Always has `deg f + 1` entries;
/// `[0]` for the zero polynomial.
pub fn taylor_at(f: &PolyK, a: &KElem) -> Vec<KElem> {
    assert_eq!(f.field, a.field(), "field mismatch");
    if f.is_zero() {
        return vec![KElem::zero(f.field)];
    }
    let mut work = f.coeffs.clone();
    let n = work.len();
    let mut out = Vec::with_capacity(n);
    for start in 0..n {
        // Horner pass on work[start..]: afterwards work[start] is the
        // remainder and work[start+1..] the quotient.
        for i in (start..n - 1).rev() {
            work[i] = &work[i] + &(a * &work[i + 1]);
        }
        out.push(work[start].clone());
    }
    out
}

/// Horner evaluation `f(a)`.
pub fn poly_eval(f: &PolyK, a: &KElem) -> KElem {
    assert_eq!(f.field, a.field(), "field mismatch");
    let mut acc = KElem::zero(f.field);
    for c in f.coeffs.iter().rev() {
        acc = &(&acc * a) + c;
    }
    acc
}

/// Deterministic pseudorandom polynomial of degree at most `max_deg`.
pub fn sample_poly_with<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, max_deg: usize, size: usize) -> PolyK {
    let deg = rng.gen_range(0..=max_deg);
    PolyK::from_coeffs(field, (0..=deg).map(|_| sample_with(rng, field, size)).collect())
}

/// Pseudorandom monic polynomial of exact degree `deg`.
pub fn sample_monic_with<R: Rng + ?Sized>(rng: &mut R, field: FieldSpec, deg: usize, size: usize) -> PolyK {
    let mut coeffs: Vec<KElem> = (0..deg).map(|_| sample_with(rng, field, size)).collect();
    coeffs.push(KElem::one(field));
    PolyK::from_coeffs(field, coeffs)
}

impl fmt::Display for PolyK {
    /// Highest degree first, e.g. `x^2 + (t + 1)*x + t^(1/2)`; parses back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let xpow = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coeff = if c.is_atomic_text() { c.to_string() } else { format!("({c})") };
            match (i, c.is_one()) {
                (0, _) => f.write_str(&coeff)?,
                (_, true) => f.write_str(&xpow)?,
                _ => write!(f, "{coeff}*{xpow}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyK({self} over {})", self.field)
    }
}
