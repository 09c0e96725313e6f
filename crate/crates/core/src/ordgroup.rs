//! Rank-one value groups: rationals, quasi-cuts of `Q`, and the cut-extension
//! groups `Q(δ) = x_δ·Z ⊕ Q` together with an adjoined maximum `∞`.
//!
//! A cut of `Q` is one of
//!
//! * `Below(q)`: left set `{r < q}`, right set `{r ≥ q}` (written `q-`),
//! * `Above(q)`: left set `{r ≤ q}`, right set `{r > q}` (written `q+`),
//! * `PlusInf`:  left set `Q`, right set empty (written `inf-`).
//!
//! The formal element `x_δ` sits strictly between the two sets. An element
//! `m·x_δ + b` of `Q(δ)` is compared with another by looking at the linear
//! functions `γ ↦ m·γ + b` along a final segment of the left set (or an
//! initial segment of the right set when the left set has a maximum).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rat = BigRational;

/// Shorthand for `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer [`Rat`].
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdError {
    #[error("operands live in extensions by different cuts ({0} vs {1})")]
    MixedCuts(CutId, CutId),
    #[error("value {value} exceeds the declared limit {limit}")]
    InconsistentLimit { value: Rat, limit: QuasiCut },
    #[error("supremum cannot be determined: no declared limit and no observed stabilization")]
    UndeterminedSup,
    #[error("value list must be nonempty and nondecreasing")]
    NotMonotone,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A cut of `Q` at a rational point or at `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CutId {
    Below(Rat),
    Above(Rat),
    PlusInf,
}

impl CutId {
    /// Whether the rational `r` lies in the left cut set.
    pub fn left_contains(&self, r: &Rat) -> bool {
        match self {
            CutId::Below(q) => r < q,
            CutId::Above(q) => r <= q,
            CutId::PlusInf => true,
        }
    }
}

impl fmt::Display for CutId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutId::Below(q) => write!(f, "{q}-"),
            CutId::Above(q) => write!(f, "{q}+"),
            CutId::PlusInf => write!(f, "inf-"),
        }
    }
}

impl FromStr for CutId {
    type Err = OrdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf-" {
            return Ok(CutId::PlusInf);
        }
        let err = || OrdError::Parse(s.to_string());
        let (body, side) = s.split_at(s.len().checked_sub(1).ok_or_else(err)?);
        let q = parse_rat(body).map_err(|_| err())?;
        match side {
            "-" => Ok(CutId::Below(q)),
            "+" => Ok(CutId::Above(q)),
            _ => Err(err()),
        }
    }
}

/// An element of `Q(δ) ∪ {∞}` for some (implicit) cut `δ`.
///
/// `CutLin` never carries `m == 0`; use [`ExtScalar::cut_lin`] to build one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtScalar {
    Fin(Rat),
    CutLin { cut: CutId, m: i64, b: Rat },
    Infinity,
}

impl ExtScalar {
    /// `m·x_cut + b`, normalized to `Fin(b)` when `m == 0`.
    pub fn cut_lin(cut: CutId, m: i64, b: Rat) -> Self {
        if m == 0 {
            ExtScalar::Fin(b)
        } else {
            ExtScalar::CutLin { cut, m, b }
        }
    }

    /// The formal element `x_cut` itself.
    pub fn cut_unit(cut: CutId) -> Self {
        ExtScalar::CutLin { cut, m: 1, b: Rat::zero() }
    }

    pub fn zero() -> Self {
        ExtScalar::Fin(Rat::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtScalar::Infinity)
    }

    pub fn as_fin(&self) -> Option<&Rat> {
        match self {
            ExtScalar::Fin(r) => Some(r),
            _ => None,
        }
    }

    pub fn cut(&self) -> Option<&CutId> {
        match self {
            ExtScalar::CutLin { cut, .. } => Some(cut),
            _ => None,
        }
    }

    /// Three-way comparison; fails only when two `CutLin` operands refer to
    /// different cuts.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, OrdError> {
        ext_cmp(self, other)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, OrdError> {
        ext_add(self, other)
    }

    /// Minimum of two values sharing a cut.
    pub fn try_min(self, other: Self) -> Result<Self, OrdError> {
        Ok(match ext_cmp(&self, &other)? {
            Ordering::Greater => other,
            _ => self,
        })
    }
}

impl From<Rat> for ExtScalar {
    fn from(r: Rat) -> Self {
        ExtScalar::Fin(r)
    }
}

impl PartialOrd for ExtScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        ext_cmp(self, other).ok()
    }
}

fn check_same_cut<'a>(a: &'a ExtScalar, b: &'a ExtScalar) -> Result<Option<&'a CutId>, OrdError> {
    match (a.cut(), b.cut()) {
        (Some(c), Some(d)) if c != d => Err(OrdError::MixedCuts(c.clone(), d.clone())),
        (Some(c), _) | (_, Some(c)) => Ok(Some(c)),
        (None, None) => Ok(None),
    }
}

/// `(m, b)` for a finite element, reading `Fin(b)` as `0·x + b`.
fn lin_parts(a: &ExtScalar) -> (i64, &Rat) {
    match a {
        ExtScalar::Fin(b) => (0, b),
        ExtScalar::CutLin { m, b, .. } => (*m, b),
        ExtScalar::Infinity => unreachable!("infinity has no linear parts"),
    }
}

/// Compare `m·x + b` with `n·x + a` in `Q(cut)`.
fn cmp_in_cut(cut: &CutId, (m, b): (i64, &Rat), (n, a): (i64, &Rat)) -> Ordering {
    match cut {
        // x is approached from below q: compare real parts at q, then the
        // infinitesimal -m·ε (larger m is smaller).
        CutId::Below(q) => {
            let lhs = q * int(m) + b;
            let rhs = q * int(n) + a;
            lhs.cmp(&rhs).then(n.cmp(&m))
        }
        CutId::Above(q) => {
            let lhs = q * int(m) + b;
            let rhs = q * int(n) + a;
            lhs.cmp(&rhs).then(m.cmp(&n))
        }
        CutId::PlusInf => m.cmp(&n).then_with(|| b.cmp(a)),
    }
}

/// Total order on `Q(δ) ∪ {∞}`.
pub fn ext_cmp(a: &ExtScalar, b: &ExtScalar) -> Result<Ordering, OrdError> {
    use ExtScalar::*;
    let cut = check_same_cut(a, b)?;
    Ok(match (a, b) {
        (Infinity, Infinity) => Ordering::Equal,
        (Infinity, _) => Ordering::Greater,
        (_, Infinity) => Ordering::Less,
        (Fin(x), Fin(y)) => x.cmp(y),
        _ => cmp_in_cut(cut.expect("a CutLin operand is present"), lin_parts(a), lin_parts(b)),
    })
}

/// Group law of `Q(δ)`, with `∞` absorbing.
pub fn ext_add(a: &ExtScalar, b: &ExtScalar) -> Result<ExtScalar, OrdError> {
    use ExtScalar::*;
    let cut = check_same_cut(a, b)?;
    Ok(match (a, b) {
        (Infinity, _) | (_, Infinity) => Infinity,
        (Fin(x), Fin(y)) => Fin(x + y),
        _ => {
            let (m, x) = lin_parts(a);
            let (n, y) = lin_parts(b);
            ExtScalar::cut_lin(cut.expect("a CutLin operand is present").clone(), m + n, x + y)
        }
    })
}

/// `n`-fold sum of `a`. `ext_scale(0, ∞) = 0`, so the constant term of an
/// expansion passes through unchanged even when the radius is infinite.
pub fn ext_scale(n: u64, a: &ExtScalar) -> ExtScalar {
    if n == 0 {
        return ExtScalar::zero();
    }
    let k = BigInt::from(n);
    match a {
        ExtScalar::Fin(b) => ExtScalar::Fin(b * Rat::from_integer(k)),
        ExtScalar::CutLin { cut, m, b } => {
            let m = m.checked_mul(n as i64).expect("cut coefficient overflow");
            ExtScalar::cut_lin(cut.clone(), m, b * Rat::from_integer(k))
        }
        ExtScalar::Infinity => ExtScalar::Infinity,
    }
}

fn parse_rat(s: &str) -> Result<Rat, OrdError> {
    let s = s.trim();
    let err = || OrdError::Parse(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(n, d))
}

/// Parse a rational literal such as `-3/4`.
pub fn parse_rational(s: &str) -> Result<Rat, OrdError> {
    parse_rat(s)
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Fin(r) => write!(f, "{r}"),
            ExtScalar::Infinity => write!(f, "inf"),
            ExtScalar::CutLin { cut, m, b } => {
                if *m == 1 && b.is_zero() {
                    return write!(f, "{cut}");
                }
                write!(f, "{m}*({cut})")?;
                if b.is_positive() {
                    write!(f, "+{b}")
                } else if b.is_negative() {
                    write!(f, "-{}", -b)
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl FromStr for ExtScalar {
    type Err = OrdError;

    /// Accepts `5/6`, `inf`, a bare cut (`0-`, `1/2+`, `inf-`), and
    /// `m*(cut)` optionally followed by `+b` or `-b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || OrdError::Parse(s.clone());
        if s == "inf" {
            return Ok(ExtScalar::Infinity);
        }
        if let Some(star) = s.find("*(") {
            let m: i64 = s[..star].parse().map_err(|_| err())?;
            let rest = &s[star + 2..];
            let close = rest.find(')').ok_or_else(err)?;
            let cut: CutId = rest[..close].parse()?;
            let tail = &rest[close + 1..];
            let b = match tail.chars().next() {
                None => Rat::zero(),
                Some('+') => parse_rat(&tail[1..])?,
                Some('-') => -parse_rat(&tail[1..])?,
                Some(_) => return Err(err()),
            };
            if m == 0 {
                return Err(err());
            }
            return Ok(ExtScalar::CutLin { cut, m, b });
        }
        if let Ok(r) = parse_rat(&s) {
            return Ok(ExtScalar::Fin(r));
        }
        Ok(ExtScalar::cut_unit(s.parse()?))
    }
}

/// A quasi-cut of `Q`: either principal at a rational, or a genuine cut.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuasiCut {
    Principal(Rat),
    Gap(CutId),
}

impl QuasiCut {
    /// Position key: `(point, side)` with side -1 just below, 0 at, +1 just above.
    fn key(&self) -> Option<(&Rat, i8)> {
        match self {
            QuasiCut::Principal(q) => Some((q, 0)),
            QuasiCut::Gap(CutId::Below(q)) => Some((q, -1)),
            QuasiCut::Gap(CutId::Above(q)) => Some((q, 1)),
            QuasiCut::Gap(CutId::PlusInf) => None,
        }
    }

    /// The supremum of the left set, read in `Q(δ) ∪ {∞}`: `Fin(q)` for a
    /// principal quasi-cut and `x_δ` for a cut.
    pub fn supremum(&self) -> ExtScalar {
        match self {
            QuasiCut::Principal(q) => ExtScalar::Fin(q.clone()),
            QuasiCut::Gap(c) => ExtScalar::cut_unit(c.clone()),
        }
    }
}

impl Ord for QuasiCut {
    fn cmp(&self, other: &Self) -> Ordering {
        quasicut_cmp(self, other)
    }
}

impl PartialOrd for QuasiCut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Inclusion order of left sets.
pub fn quasicut_cmp(a: &QuasiCut, b: &QuasiCut) -> Ordering {
    match (a.key(), b.key()) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some((p, s)), Some((q, t))) => p.cmp(q).then(s.cmp(&t)),
    }
}

impl fmt::Display for QuasiCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiCut::Principal(q) => write!(f, "{q}"),
            QuasiCut::Gap(CutId::PlusInf) => write!(f, "inf"),
            QuasiCut::Gap(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for QuasiCut {
    type Err = OrdError;

    /// `3/2` is principal; `0-`, `0+` are cuts; `inf` (or `inf-`) is the top cut.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" || s == "inf-" {
            return Ok(QuasiCut::Gap(CutId::PlusInf));
        }
        if let Ok(r) = parse_rat(s) {
            return Ok(QuasiCut::Principal(r));
        }
        Ok(QuasiCut::Gap(s.parse()?))
    }
}

/// Supremum of a nondecreasing list of values, given what is known about
/// the limit of the full (infinite) list.
///
/// With `declared_limit = Gap(c)` the result is `x_c`; with
/// `Principal(q)` the list must end at `q`; with no declared limit the list
/// must visibly stabilize (last two entries equal).
pub fn sup_of_values(values: &[Rat], declared_limit: Option<&QuasiCut>) -> Result<ExtScalar, OrdError> {
    let last = values.last().ok_or(OrdError::NotMonotone)?;
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(OrdError::NotMonotone);
    }
    match declared_limit {
        Some(limit) => {
            for v in values {
                if quasicut_cmp(&QuasiCut::Principal(v.clone()), limit) == Ordering::Greater {
                    return Err(OrdError::InconsistentLimit { value: v.clone(), limit: limit.clone() });
                }
            }
            match limit {
                QuasiCut::Principal(q) if q == last => Ok(ExtScalar::Fin(q.clone())),
                QuasiCut::Principal(_) => Err(OrdError::InconsistentLimit {
                    value: last.clone(),
                    limit: limit.clone(),
                }),
                QuasiCut::Gap(c) => Ok(ExtScalar::cut_unit(c.clone())),
            }
        }
        None => match values {
            [.., a, b] if a == b => Ok(ExtScalar::Fin(b.clone())),
            [only] if values.len() == 1 => Ok(ExtScalar::Fin(only.clone())),
            _ => Err(OrdError::UndeterminedSup),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn below0() -> CutId {
        CutId::Below(int(0))
    }

    #[test]
    fn ext_cmp_examples() {
        let x = ExtScalar::cut_unit(below0());
        assert_eq!(ext_cmp(&x, &ExtScalar::Fin(int(0))).unwrap(), Ordering::Less);
        let a = ExtScalar::cut_lin(below0(), 2, int(1));
        let b = ExtScalar::cut_lin(below0(), 1, int(1));
        assert_eq!(ext_cmp(&a, &b).unwrap(), Ordering::Less);
        let top = ExtScalar::cut_unit(CutId::PlusInf);
        assert_eq!(ext_cmp(&ExtScalar::Infinity, &top).unwrap(), Ordering::Greater);
    }

    #[test]
    fn mixed_cuts_rejected() {
        let a = ExtScalar::cut_unit(below0());
        let b = ExtScalar::cut_unit(CutId::Above(int(0)));
        assert!(matches!(ext_cmp(&a, &b), Err(OrdError::MixedCuts(..))));
        assert!(matches!(ext_add(&a, &b), Err(OrdError::MixedCuts(..))));
        assert_eq!(a.partial_cmp(&b), None);
    }

    #[test]
    fn ext_add_examples() {
        assert_eq!(
            ext_add(&ExtScalar::Fin(rat(1, 2)), &ExtScalar::Fin(rat(1, 3))).unwrap(),
            ExtScalar::Fin(rat(5, 6))
        );
        let a = ExtScalar::cut_lin(below0(), 1, int(2));
        let b = ExtScalar::cut_lin(below0(), -1, int(1));
        assert_eq!(ext_add(&a, &b).unwrap(), ExtScalar::Fin(int(3)));
        assert_eq!(ext_add(&ExtScalar::Infinity, &ExtScalar::Fin(int(-7))).unwrap(), ExtScalar::Infinity);
    }

    #[test]
    fn ext_scale_examples() {
        assert_eq!(ext_scale(3, &ExtScalar::Fin(int(2))), ExtScalar::Fin(int(6)));
        assert_eq!(
            ext_scale(2, &ExtScalar::cut_unit(below0())),
            ExtScalar::cut_lin(below0(), 2, int(0))
        );
        assert_eq!(ext_scale(0, &ExtScalar::Infinity), ExtScalar::Fin(int(0)));
    }

    #[test]
    fn quasicut_examples() {
        use QuasiCut::*;
        assert_eq!(quasicut_cmp(&Principal(int(1)), &Principal(int(2))), Ordering::Less);
        assert_eq!(quasicut_cmp(&Gap(below0()), &Principal(int(0))), Ordering::Less);
        assert_eq!(quasicut_cmp(&Principal(int(5)), &Gap(CutId::PlusInf)), Ordering::Less);
        assert_eq!(quasicut_cmp(&Principal(int(0)), &Gap(CutId::Above(int(0)))), Ordering::Less);
        assert_eq!(quasicut_cmp(&Gap(CutId::Above(int(0))), &Principal(rat(1, 1000))), Ordering::Less);
    }

    #[test]
    fn sup_examples() {
        let vals = [rat(-1, 2), rat(-1, 4), rat(-1, 8)];
        assert_eq!(
            sup_of_values(&vals, Some(&QuasiCut::Gap(below0()))).unwrap(),
            ExtScalar::cut_unit(below0())
        );
        let vals = [int(4), int(8), int(16)];
        assert_eq!(
            sup_of_values(&vals, Some(&QuasiCut::Gap(CutId::PlusInf))).unwrap(),
            ExtScalar::cut_unit(CutId::PlusInf)
        );
        assert_eq!(sup_of_values(&[int(3), int(3), int(3)], None).unwrap(), ExtScalar::Fin(int(3)));
    }

    #[test]
    fn sup_errors() {
        assert_eq!(sup_of_values(&[int(1), int(2)], None), Err(OrdError::UndeterminedSup));
        assert!(matches!(
            sup_of_values(&[int(-1), int(1)], Some(&QuasiCut::Gap(below0()))),
            Err(OrdError::InconsistentLimit { .. })
        ));
        // 0 itself is not in the left set of 0-.
        assert!(matches!(
            sup_of_values(&[int(-1), int(0)], Some(&QuasiCut::Gap(below0()))),
            Err(OrdError::InconsistentLimit { .. })
        ));
        assert_eq!(sup_of_values(&[int(2), int(1)], None), Err(OrdError::NotMonotone));
        assert_eq!(sup_of_values(&[], None), Err(OrdError::NotMonotone));
        assert_eq!(
            sup_of_values(&[int(1), int(2)], Some(&QuasiCut::Principal(int(2)))).unwrap(),
            ExtScalar::Fin(int(2))
        );
    }

    #[test]
    fn text_forms() {
        let cases = [
            ("5/6", ExtScalar::Fin(rat(5, 6))),
            ("0-", ExtScalar::cut_unit(below0())),
            ("0+", ExtScalar::cut_unit(CutId::Above(int(0)))),
            ("inf", ExtScalar::Infinity),
            ("2*(0-)+1", ExtScalar::cut_lin(below0(), 2, int(1))),
            ("-1*(-1/2+)-3/4", ExtScalar::cut_lin(CutId::Above(rat(-1, 2)), -1, rat(-3, 4))),
            ("inf-", ExtScalar::cut_unit(CutId::PlusInf)),
        ];
        for (text, value) in cases {
            assert_eq!(text.parse::<ExtScalar>().unwrap(), value, "{text}");
            assert_eq!(value.to_string(), text);
        }
        assert!("2*(0-".parse::<ExtScalar>().is_err());
        assert!("0*(0-)".parse::<ExtScalar>().is_err());
        assert!("banana".parse::<ExtScalar>().is_err());
    }

    #[test]
    fn quasicut_text() {
        for s in ["3/2", "0-", "0+", "inf"] {
            assert_eq!(s.parse::<QuasiCut>().unwrap().to_string(), s);
        }
    }
}
