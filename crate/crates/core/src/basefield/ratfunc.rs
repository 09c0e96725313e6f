use super::fp::{inv_mod, FpPoly};

/// Reduced fraction `num/den` over `F_p` in one variable, `den` monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl RatFunc {
    /// Build and reduce `num/den`; panics if `den` is zero.
    pub fn new(num: FpPoly, den: FpPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let p = num.modulus();
        if num.is_zero() {
            return RatFunc { num, den: FpPoly::one(p) };
        }
        let lc = inv_mod(den.leading(), p);
        let (num, den) = (num.scale(lc), den.scale(lc));
        if den.is_monomial() {
            let e = den.ord0().unwrap().min(num.ord0().unwrap());
            return RatFunc { num: num.unshift(e), den: den.unshift(e) };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return RatFunc { num, den };
        }
        RatFunc { num: num.divrem(&g).0, den: den.divrem(&g).0 }
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.modulus();
        RatFunc { num, den: FpPoly::one(p) }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_poly(FpPoly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        Self::from_poly(FpPoly::one(p))
    }

    /// `c·s^e` for any integer `e`.
    pub fn monomial(p: u64, c: u64, e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(FpPoly::monomial(p, c, e as usize))
        } else {
            Self::new(FpPoly::constant(p, c), FpPoly::monomial(p, 1, (-e) as usize))
        }
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `s`-adic order: order of the numerator minus order of the denominator.
    pub fn ord0(&self) -> Option<i64> {
        let n = self.num.ord0()? as i64;
        Some(n - self.den.ord0().unwrap() as i64)
    }

    /// Terms `(exponent, coeff)` when the denominator is a power of `s`.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, u64)>> {
        if !self.den.is_monomial() {
            return None;
        }
        let shift = self.den.ord0().unwrap() as i64;
        Some(self.num.terms().map(|(e, c)| (e as i64 - shift, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den.is_monomial() && other.den.is_monomial() {
            let (m, n) = (self.den.degree().unwrap(), other.den.degree().unwrap());
            let top = m.max(n);
            let num = self.num.shift(top - m).add(&other.num.shift(top - n));
            return Self::new(num, FpPoly::monomial(self.modulus(), 1, top));
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus());
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    /// Substitute `s ↦ s^m`.
    pub fn inflate(&self, m: usize) -> Self {
        RatFunc { num: self.num.inflate(m), den: self.den.inflate(m) }
    }

    /// Rewrite in `s^m` when possible.
    pub fn deflate(&self, m: usize) -> Option<Self> {
        Some(RatFunc { num: self.num.deflate(m)?, den: self.den.deflate(m)? })
    }
}
