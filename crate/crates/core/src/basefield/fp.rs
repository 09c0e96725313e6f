//! Dense polynomials over a prime field `F_p`, used as numerators and
//! denominators of elements of `F_p(t)` and `F_p(t^{1/p^k})`.

use std::fmt;

/// Polynomial over `F_p`, coefficients lowest degree first with no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

impl FpPoly {
    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_coeffs(p, vec![c])
    }

    /// `c·s^e`.
    pub fn monomial(p: u64, c: u64, e: usize) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero(p);
        }
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        FpPoly { p, coeffs }
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Order of vanishing at `s = 0`; `None` for zero.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Whether this is `c·s^e` for a single term.
    pub fn is_monomial(&self) -> bool {
        match self.ord0() {
            Some(e) => e + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e, c))
    }

    fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        Self::from_coeffs(p, coeffs)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        FpPoly { p, coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::from_coeffs(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    /// Product; iterates over the nonzero terms of the sparser factor, which
    /// keeps partial sums of widely spaced powers cheap.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let (sparse, dense) = if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in sparse.terms() {
            for (j, &b) in dense.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
                }
            }
        }
        Self::from_coeffs(p, out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by `s^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; e];
        coeffs.extend_from_slice(&self.coeffs);
        FpPoly { p: self.p, coeffs }
    }

    /// Divide by `s^e`; the caller guarantees `ord0 >= e`.
    pub fn unshift(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        debug_assert!(self.ord0().unwrap() >= e);
        FpPoly { p: self.p, coeffs: self.coeffs[e..].to_vec() }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = inv_mod(d.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                if dc != 0 {
                    rem[i + j] = (rem[i + j] + p - mul_mod(c, dc, p)) % p;
                }
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(p, quot), Self::from_coeffs(p, rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitute `s ↦ s^m`.
    pub fn inflate(&self, m: usize) -> Self {
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * m + 1];
        for (e, c) in self.terms() {
            coeffs[e * m] = c;
        }
        FpPoly { p: self.p, coeffs }
    }

    /// Inverse of [`inflate`](Self::inflate) when every exponent is a multiple
    /// of `m`; `None` otherwise.
    pub fn deflate(&self, m: usize) -> Option<Self> {
        if self.terms().any(|(e, _)| e % m != 0) {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let coeffs = self.coeffs.iter().step_by(m).copied().collect();
        Some(FpPoly { p: self.p, coeffs })
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[p={}]{:?}", self.p, self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::from_coeffs(p, c.to_vec())
    }

    #[test]
    fn divrem_reassembles() {
        let f = poly(5, &[1, 2, 3, 4, 1]);
        let d = poly(5, &[3, 0, 2]);
        let (q, r) = f.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let a = poly(3, &[1, 1]); // s + 1
        let b = poly(3, &[2, 1]); // s + 2
        let c = poly(3, &[0, 1]); // s
        let g = a.mul(&b).gcd(&a.mul(&c));
        assert_eq!(g, a);
    }

    #[test]
    fn frobenius_is_inflation() {
        let f = poly(3, &[2, 1, 0, 1]);
        assert_eq!(f.pow(3), f.inflate(3));
        assert_eq!(f.inflate(3).deflate(3), Some(f.clone()));
        assert_eq!(f.deflate(3), None);
    }

    #[test]
    fn ord_and_monomial() {
        let m = FpPoly::monomial(7, 3, 4);
        assert!(m.is_monomial());
        assert_eq!(m.ord0(), Some(4));
        assert!(!poly(7, &[1, 1]).is_monomial());
        assert_eq!(FpPoly::zero(7).ord0(), None);
    }
}
