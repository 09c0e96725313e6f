//! Closed balls, nests of balls and approximation types, and their relation
//! to pseudo-Cauchy sequences and valuations.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::basefield::{element_of_value, FieldError, FieldSpec, KElem, ValueQ};
use crate::ordgroup::{CutId, ExtScalar, QuasiCut, Rat};
use crate::pcs::{psi, AlgWitness, AnalysisOptions, PCSeq, PcsError};
use crate::poly::{sample_poly_with, PolyK};
use crate::valuation::{val_apply, ValDesc, ValType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("balls are not strictly nested")]
    NotStrictlyNested,
    #[error("no verdict within the first {budget} balls of the nest")]
    BudgetExhausted { budget: usize },
    #[error("the supremum of the radii is not determined by the available data")]
    UndeterminedSup,
    #[error("balls over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Pcs(#[from] PcsError),
}

/// The closed ball `{b : v(b − center) ≥ radius}`. Equality is equality of
/// sets: any member can serve as center.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: KElem,
    pub radius: Rat,
}

impl Ball {
    pub fn new(center: KElem, radius: Rat) -> Result<Self, ApproxError> {
        let field = center.field();
        if !field.in_value_group(&radius) {
            return Err(FieldError::ValueNotInGroup { value: radius, field }.into());
        }
        Ok(Ball { center, radius })
    }

    pub fn field(&self) -> FieldSpec {
        self.center.field()
    }
}

impl PartialEq for Ball {
    fn eq(&self, other: &Self) -> bool {
        self.field() == other.field() && self.radius == other.radius && ball_member(&other.center, self)
    }
}

impl Eq for Ball {}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {})", self.center, self.radius)
    }
}

fn at_least(v: ValueQ, r: &Rat) -> bool {
    match v {
        ValueQ::Infinity => true,
        ValueQ::Fin(d) => &d >= r,
    }
}

pub fn ball_member(b: &KElem, ball: &Ball) -> bool {
    at_least((b - &ball.center).val(), &ball.radius)
}

/// `inner ⊆ outer`, decided by radii and the distance of the centers.
pub fn ball_contains(inner: &Ball, outer: &Ball) -> bool {
    inner.radius >= outer.radius && at_least((&inner.center - &outer.center).val(), &outer.radius)
}

/// A member at distance exactly the radius from the center.
pub fn ball_witness_at_radius(ball: &Ball) -> Result<KElem, ApproxError> {
    Ok(&ball.center + &element_of_value(ball.field(), &ball.radius)?)
}

/// A point of `outer` outside `inner`, for `inner ⊊ outer`.
pub fn separating_point(inner: &Ball, outer: &Ball) -> Result<KElem, ApproxError> {
    if inner.field() != outer.field() {
        return Err(ApproxError::FieldMismatch);
    }
    if !(ball_contains(inner, outer) && inner.radius > outer.radius) {
        return Err(ApproxError::NotStrictlyNested);
    }
    if !ball_member(&outer.center, inner) {
        return Ok(outer.center.clone());
    }
    ball_witness_at_radius(outer)
}

pub type NestFn = Arc<dyn Fn(usize) -> Ball + Send + Sync>;

/// A strictly decreasing nest `i ↦ B_i` with what is known about its radii
/// and about a polynomial whose values keep growing along it.
#[derive(Clone)]
pub struct Nest {
    field: FieldSpec,
    nest: NestFn,
    prefix: Vec<Ball>,
    radius_limit: Option<QuasiCut>,
    witness: Option<(PolyK, QuasiCut)>,
}

impl Nest {
    /// Validates strict nesting on the first `prefix_len` balls.
    pub fn new(
        field: FieldSpec,
        nest: NestFn,
        prefix_len: usize,
        radius_limit: Option<QuasiCut>,
        witness: Option<(PolyK, QuasiCut)>,
    ) -> Result<Self, ApproxError> {
        let prefix: Vec<Ball> = (0..prefix_len.max(2)).map(|i| nest(i)).collect();
        if prefix.iter().any(|b| b.field() != field) {
            return Err(ApproxError::FieldMismatch);
        }
        for w in prefix.windows(2) {
            if !(ball_contains(&w[1], &w[0]) && w[1].radius > w[0].radius) {
                return Err(ApproxError::NotStrictlyNested);
            }
        }
        Ok(Nest { field, nest, prefix, radius_limit, witness })
    }

    pub fn ball(&self, i: usize) -> Ball {
        self.prefix.get(i).cloned().unwrap_or_else(|| (self.nest)(i))
    }

    pub fn prefix(&self) -> &[Ball] {
        &self.prefix
    }

    pub fn radius_limit(&self) -> Option<&QuasiCut> {
        self.radius_limit.as_ref()
    }

    pub fn witness(&self) -> Option<&(PolyK, QuasiCut)> {
        self.witness.as_ref()
    }
}

/// An approximation type, represented by a defining nest; the type is the
/// set of all balls containing some ball of the nest.
#[derive(Clone)]
pub enum ApproxType {
    /// Generated by a single ball.
    Principal(Ball),
    Generated(Nest),
}

impl ApproxType {
    pub fn field(&self) -> FieldSpec {
        match self {
            ApproxType::Principal(b) => b.field(),
            ApproxType::Generated(n) => n.field,
        }
    }
}

impl fmt::Debug for ApproxType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproxType::Principal(b) => write!(f, "Principal({b})"),
            ApproxType::Generated(n) => {
                let shown: Vec<String> = n.prefix.iter().map(ToString::to_string).collect();
                write!(f, "Generated([{}, ...])", shown.join(", "))
            }
        }
    }
}

/// The approximation type of a sequence: the single ball `B(a_m, γ_m)` at
/// the last distance of a finite sequence, else the nest `B(a_i, γ_i)`.
pub fn iota(seq: &PCSeq) -> Result<ApproxType, ApproxError> {
    if seq.is_finite() {
        let m = seq.prefix().len() - 2;
        return Ok(ApproxType::Principal(Ball::new(seq.prefix()[m].clone(), seq.gammas()[m].clone())?));
    }
    let s = seq.clone();
    let nest: NestFn = Arc::new(move |i| Ball {
        center: s.elem(i).expect("generated sequence"),
        radius: s.gamma(i).expect("pseudo-Cauchy sequence"),
    });
    let witness = seq.witness().map(|w| (w.key.clone(), w.limit.clone()));
    let n = Nest::new(seq.field(), nest, seq.gammas().len(), seq.gamma_limit().cloned(), witness)?;
    Ok(ApproxType::Generated(n))
}

/// Whether `B` belongs to the type. For nests, scans at most `budget + 1`
/// balls; once a scanned radius reaches that of `B` the answer is exact.
pub fn appr_contains(a: &ApproxType, b: &Ball, budget: usize) -> Result<bool, ApproxError> {
    if a.field() != b.field() {
        return Err(ApproxError::FieldMismatch);
    }
    match a {
        ApproxType::Principal(last) => Ok(ball_contains(last, b)),
        ApproxType::Generated(n) => {
            for i in 0..=budget {
                let bi = n.ball(i);
                if ball_contains(&bi, b) {
                    return Ok(true);
                }
                if bi.radius >= b.radius {
                    // Two balls are nested or disjoint; this one is not inside
                    // B and at least as small, so it and all later balls miss B.
                    return Ok(false);
                }
            }
            Err(ApproxError::BudgetExhausted { budget })
        }
    }
}

/// A pseudo-Cauchy sequence whose type is `A`, choosing
/// `a_i ∈ B_i ∖ B_{i+1}`.
pub fn realize(a: &ApproxType) -> Result<PCSeq, ApproxError> {
    match a {
        ApproxType::Principal(b) => {
            let second = ball_witness_at_radius(b)?;
            Ok(PCSeq::finite(vec![b.center.clone(), second])?)
        }
        ApproxType::Generated(n) => {
            let nest = n.clone();
            let gen = Arc::new(move |i: usize| {
                separating_point(&nest.ball(i + 1), &nest.ball(i)).expect("nest is strictly decreasing")
            });
            let mut seq = PCSeq::generated(n.field, gen, n.prefix.len().max(3) - 1)?.with_label("realized nest");
            if let Some(limit) = &n.radius_limit {
                seq = seq.with_gamma_limit(limit.clone());
            }
            if let Some((key, limit)) = &n.witness {
                seq = seq.with_witness(AlgWitness::new(key.clone(), limit.clone()))?;
            }
            Ok(seq)
        }
    }
}

/// The valuation attached to an approximation type.
pub fn phi(a: &ApproxType, opts: &AnalysisOptions) -> Result<(ValDesc, ValType), ApproxError> {
    Ok(psi(&realize(a)?, opts)?)
}

/// The type of the monomial valuation `v_{a,γ}`: all balls containing `B(a, γ)`.
pub fn appr_of_monomial(center: &KElem, gamma: &Rat) -> Result<ApproxType, ApproxError> {
    Ok(ApproxType::Principal(Ball::new(center.clone(), gamma.clone())?))
}

/// The radii of the balls in the type, as a quasi-cut.
pub fn supp_descr(a: &ApproxType) -> Result<QuasiCut, ApproxError> {
    match a {
        ApproxType::Principal(b) => Ok(QuasiCut::Principal(b.radius.clone())),
        ApproxType::Generated(n) => {
            if let Some(limit) = &n.radius_limit {
                return Ok(limit.clone());
            }
            // Values of a polynomial can only grow without bound if the
            // nest closes in on one of its roots.
            match &n.witness {
                Some((_, QuasiCut::Gap(CutId::PlusInf))) => Ok(QuasiCut::Gap(CutId::PlusInf)),
                _ => Err(ApproxError::UndeterminedSup),
            }
        }
    }
}

/// Extension type of `phi(A)`, read off the type where possible.
pub fn appr_type(a: &ApproxType, opts: &AnalysisOptions) -> Result<ValType, ApproxError> {
    match a {
        ApproxType::Principal(_) => Ok(ValType::RT),
        ApproxType::Generated(n) if n.witness.is_some() => {
            let (_, limit) = n.witness.as_ref().unwrap();
            Ok(if *limit == QuasiCut::Gap(CutId::PlusInf) { ValType::NT } else { ValType::VT })
        }
        ApproxType::Generated(_) => Ok(phi(a, opts)?.1),
    }
}

/// Mutual cofinality of two nests on their first `n` balls: each of the
/// first `n` balls of one contains some ball among the first `n` of the other.
pub fn cofinal_on_prefix(a: &ApproxType, b: &ApproxType, n: usize) -> bool {
    let balls = |t: &ApproxType| -> Vec<Ball> {
        match t {
            ApproxType::Principal(b) => vec![b.clone()],
            ApproxType::Generated(nest) => (0..n).map(|i| nest.ball(i)).collect(),
        }
    };
    let (xs, ys) = (balls(a), balls(b));
    let covers = |xs: &[Ball], ys: &[Ball]| xs.iter().all(|x| ys.iter().any(|y| ball_contains(y, x)));
    covers(&xs, &ys) && covers(&ys, &xs)
}

/// A polynomial on which two valuations differ.
#[derive(Debug, Clone)]
pub struct Separation {
    pub poly: PolyK,
    pub first: ExtScalar,
    pub second: ExtScalar,
}

/// Look for a polynomial separating `phi(a)` and `phi(b)`: linear factors at
/// the centers of both nests, witness keys, then seeded random polynomials.
pub fn separating_polynomial(
    a: &ApproxType,
    b: &ApproxType,
    opts: &AnalysisOptions,
) -> Result<Option<Separation>, ApproxError> {
    if a.field() != b.field() {
        return Err(ApproxError::FieldMismatch);
    }
    let (da, _) = phi(a, opts)?;
    let (db, _) = phi(b, opts)?;
    let mut candidates = Vec::new();
    for t in [a, b] {
        match t {
            ApproxType::Principal(ball) => candidates.push(PolyK::linear(&ball.center)),
            ApproxType::Generated(n) => {
                candidates.extend((0..=opts.upto).map(|i| PolyK::linear(&n.ball(i).center)));
                if let Some((key, _)) = &n.witness {
                    candidates.push(key.clone());
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    candidates.extend((0..opts.samples).map(|_| sample_poly_with(&mut rng, a.field(), opts.degree_bound, 2)));
    for f in candidates {
        let (first, second) = (val_apply(&da, &f), val_apply(&db, &f));
        // A description that cannot evaluate f says nothing about it.
        if let (Ok(first), Ok(second)) = (first, second) {
            if first != second {
                return Ok(Some(Separation { poly: f, first, second }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::ordgroup::{int, rat};
    use crate::parse::{parse_elem, parse_poly};
    use crate::pcs::validate_pcs;

    fn q3() -> FieldSpec {
        FieldSpec::rat_p(3).unwrap()
    }

    fn ball(f: FieldSpec, c: &str, r: Rat) -> Ball {
        Ball::new(parse_elem(f, c).unwrap(), r).unwrap()
    }

    #[test]
    fn membership_and_containment() {
        let f = q3();
        let b01 = ball(f, "0", int(1));
        assert!(ball_member(&KElem::from_int(f, 3), &b01));
        assert!(!ball_member(&KElem::one(f), &b01));
        assert!(ball_member(&b01.center, &b01));
        assert!(ball_contains(&ball(f, "3", int(2)), &b01));
        assert!(!ball_contains(&b01, &ball(f, "0", int(2))));
        assert_eq!(ball(f, "0", int(1)), ball(f, "6", int(1)));
        assert_ne!(ball(f, "0", int(1)), ball(f, "1", int(1)));
    }

    #[test]
    fn witnesses_and_separation() {
        let f = q3();
        assert_eq!(ball_witness_at_radius(&ball(f, "0", int(2))).unwrap(), KElem::from_int(f, 9));
        let h = FieldSpec::perfect_hull(2).unwrap();
        assert_eq!(
            ball_witness_at_radius(&ball(h, "t", rat(-1, 2))).unwrap(),
            parse_elem(h, "t + t^(-1/2)").unwrap()
        );
        let s = separating_point(&ball(f, "0", int(2)), &ball(f, "0", int(1))).unwrap();
        assert_eq!(s, KElem::from_int(f, 3));
        assert_eq!(
            separating_point(&ball(f, "0", int(1)), &ball(f, "0", int(2))),
            Err(ApproxError::NotStrictlyNested)
        );
        assert!(Ball::new(KElem::zero(h), rat(1, 3)).is_err());
    }

    #[test]
    fn iota_and_realize() {
        let h = FieldSpec::perfect_hull(2).unwrap();
        let rt = PCSeq::finite(vec![parse_elem(h, "t").unwrap(), parse_elem(h, "t+t^2").unwrap()]).unwrap();
        let a = iota(&rt).unwrap();
        assert!(matches!(&a, ApproxType::Principal(b) if *b == ball(h, "t", int(2))));
        assert_eq!(realize(&a).unwrap().prefix(), rt.prefix());
        assert_eq!(supp_descr(&a).unwrap(), QuasiCut::Principal(int(2)));
        assert!(!appr_contains(&a, &ball(h, "t", int(3)), 0).unwrap());

        let nt = generators::artin_schreier_nt(h, 4).unwrap();
        let a = iota(&nt).unwrap();
        let ApproxType::Generated(n) = &a else { panic!("expected a nest") };
        let radii: Vec<Rat> = (0..4).map(|i| n.ball(i).radius).collect();
        assert_eq!(radii, vec![int(2), int(4), int(8), int(16)]);
        assert!(appr_contains(&a, &ball(h, "t", int(2)), 3).unwrap());
        assert!(!appr_contains(&a, &ball(h, "0", int(2)), 3).unwrap());
        assert_eq!(
            appr_contains(&a, &ball(h, "t", int(100)), 3),
            Err(ApproxError::BudgetExhausted { budget: 3 })
        );
        assert_eq!(supp_descr(&a).unwrap(), QuasiCut::Gap(CutId::PlusInf));
        let back = realize(&a).unwrap();
        let shared = back.prefix().len();
        assert_eq!(validate_pcs(&back.elements(shared).unwrap()).unwrap(), &nt.gammas()[..shared - 1]);

        let vt = generators::artin_schreier_vt(h, 4).unwrap();
        assert_eq!(supp_descr(&iota(&vt).unwrap()).unwrap(), QuasiCut::Gap(CutId::Below(int(0))));
    }

    #[test]
    fn phi_examples() {
        let h = FieldSpec::perfect_hull(2).unwrap();
        let opts = AnalysisOptions { upto: 4, ..Default::default() };
        let (d, ty) = phi(&appr_of_monomial(&KElem::t(h).unwrap(), &int(2)).unwrap(), &opts).unwrap();
        assert_eq!((ty, d.gamma()), (ValType::RT, Some(&ExtScalar::Fin(int(2)))));

        let nt = generators::artin_schreier_nt(h, 4).unwrap();
        let (d, ty) = phi(&iota(&nt).unwrap(), &opts).unwrap();
        assert_eq!((ty, d.gamma()), (ValType::NT, Some(&ExtScalar::Infinity)));
        assert_eq!(appr_type(&iota(&nt).unwrap(), &opts).unwrap(), ValType::NT);

        let f = q3();
        let a = appr_of_monomial(&KElem::zero(f), &int(1)).unwrap();
        let b = appr_of_monomial(&KElem::from_int(f, 3), &int(2)).unwrap();
        let sep = separating_polynomial(&a, &b, &opts).unwrap().unwrap();
        assert_ne!(sep.first, sep.second);
        let x3 = parse_poly(f, "x-3").unwrap();
        assert_eq!(val_apply(&phi(&a, &opts).unwrap().0, &x3).unwrap(), ExtScalar::Fin(int(1)));
        assert_eq!(val_apply(&phi(&b, &opts).unwrap().0, &x3).unwrap(), ExtScalar::Fin(int(2)));
    }

    #[test]
    fn monomial_type_is_principal() {
        let f = q3();
        let a = appr_of_monomial(&KElem::zero(f), &int(0)).unwrap();
        assert!(matches!(&a, ApproxType::Principal(b) if b.radius == int(0)));
        assert!(cofinal_on_prefix(&a, &a, 3));
    }
}
