//! Valuations on `K[x]` given by finite descriptions: monomial valuations
//! `v_{a,γ}`, augmentations `μ_{F,γ}` over an increasing family, and limits
//! of a family that stabilizes on every polynomial.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::basefield::{FieldSpec, KElem, ValueQ};
use crate::ordgroup::{ext_add, ext_cmp, ext_scale, ExtScalar, OrdError, Rat};
use crate::poly::{q_expansion, taylor_at, PolyError, PolyK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error(transparent)]
    Ord(#[from] OrdError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial over {found} given to a valuation over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("key polynomial must be monic of degree at least 1")]
    BadKey,
    #[error("gamma = {gamma} does not exceed the family value {value} at index {index}")]
    GammaNotAboveFamily { gamma: ExtScalar, value: ExtScalar, index: usize },
    #[error("coefficient evaluator failed: {reason}")]
    EvaluatorFailure { reason: String },
}

/// Assigns values to polynomials of degree below the key polynomial of an
/// augmented valuation (or to all polynomials, for a limit valuation).
pub trait CoefficientEvaluator: Send + Sync {
    fn eval(&self, f: &PolyK) -> Result<ExtScalar, ValuationError>;

    /// Values `ν_i(f)` of the underlying family on its available indices, used
    /// to check that an augmentation sits above the family.
    fn family_values(&self, _f: &PolyK) -> Result<Vec<ExtScalar>, ValuationError> {
        Ok(Vec::new())
    }

    fn describe(&self) -> String;
}

/// How far a limit-of-family description has been checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCertificate {
    pub degree_bound: usize,
    pub prefix: usize,
}

#[derive(Clone)]
pub enum ValDesc {
    Monomial {
        a: KElem,
        gamma: ExtScalar,
    },
    Augmented {
        key: PolyK,
        gamma: ExtScalar,
        base: Arc<dyn CoefficientEvaluator>,
    },
    LimitOfFamily {
        field: FieldSpec,
        evaluator: Arc<dyn CoefficientEvaluator>,
        certificate: LimitCertificate,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValType {
    RT,
    VT,
    NT,
    AL,
}

impl fmt::Display for ValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValType::RT => "RT",
            ValType::VT => "VT",
            ValType::NT => "NT",
            ValType::AL => "AL",
        })
    }
}

fn value_ext(v: ValueQ) -> ExtScalar {
    v.into()
}

/// Minimum of `values[i] + i·γ` over nonzero terms.
fn min_formula<'a>(
    terms: impl Iterator<Item = (usize, Result<ExtScalar, ValuationError>)> + 'a,
    gamma: &ExtScalar,
) -> Result<ExtScalar, ValuationError> {
    let mut best = ExtScalar::Infinity;
    for (i, v) in terms {
        let term = ext_add(&v?, &ext_scale(i as u64, gamma))?;
        if ext_cmp(&term, &best)? == Ordering::Less {
            best = term;
        }
    }
    Ok(best)
}

impl ValDesc {
    pub fn monomial(a: KElem, gamma: ExtScalar) -> Self {
        ValDesc::Monomial { a, gamma }
    }

    /// `μ_{key,γ}` over `base`; checks the key is monic and that `γ` exceeds
    /// every family value the evaluator reports for the key.
    pub fn augmented(
        key: PolyK,
        gamma: ExtScalar,
        base: Arc<dyn CoefficientEvaluator>,
    ) -> Result<Self, ValuationError> {
        if !key.is_monic() || key.degree() == Some(0) {
            return Err(ValuationError::BadKey);
        }
        for (index, value) in base.family_values(&key)?.into_iter().enumerate() {
            if ext_cmp(&gamma, &value)? != Ordering::Greater {
                return Err(ValuationError::GammaNotAboveFamily { gamma, value, index });
            }
        }
        Ok(ValDesc::Augmented { key, gamma, base })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            ValDesc::Monomial { a, .. } => a.field(),
            ValDesc::Augmented { key, .. } => key.field(),
            ValDesc::LimitOfFamily { field, .. } => *field,
        }
    }

    /// The radius `γ`, for monomial and augmented descriptions.
    pub fn gamma(&self) -> Option<&ExtScalar> {
        match self {
            ValDesc::Monomial { gamma, .. } | ValDesc::Augmented { gamma, .. } => Some(gamma),
            ValDesc::LimitOfFamily { .. } => None,
        }
    }
}

/// Apply a described valuation to a polynomial.
pub fn val_apply(d: &ValDesc, f: &PolyK) -> Result<ExtScalar, ValuationError> {
    if f.field() != d.field() {
        return Err(ValuationError::FieldMismatch { expected: d.field(), found: f.field() });
    }
    if f.is_zero() {
        return Ok(ExtScalar::Infinity);
    }
    match d {
        ValDesc::Monomial { a, gamma } => {
            let coeffs = taylor_at(f, a);
            let terms = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, Ok(value_ext(c.val()))));
            min_formula(terms, gamma)
        }
        ValDesc::Augmented { key, gamma, base } => {
            let expansion = q_expansion(f, key)?;
            let terms = expansion
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, base.eval(c)));
            min_formula(terms, gamma)
        }
        ValDesc::LimitOfFamily { evaluator, .. } => evaluator.eval(f),
    }
}

/// Outcome of comparing two monomial valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// `v_{a′,γ′} ≤ v_{a,γ}`.
    LeqHolds,
    NotLeq,
}

/// Decide `v_{a′,γ′} ≤ v_{a,γ}` by `γ ≥ γ′ ∧ v(a′ − a) ≥ γ′`.
pub fn monomial_cmp(a: &KElem, gamma: &Rat, a2: &KElem, gamma2: &Rat) -> MonomialOrder {
    let close = match (a2 - a).val() {
        ValueQ::Infinity => true,
        ValueQ::Fin(d) => d >= *gamma2,
    };
    if gamma >= gamma2 && close {
        MonomialOrder::LeqHolds
    } else {
        MonomialOrder::NotLeq
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `ν(fg) ≠ ν(f) + ν(g)`.
    V1 { f: PolyK, g: PolyK, product: ExtScalar, sum: ExtScalar },
    /// `ν(f + g) < min(ν(f), ν(g))`.
    V2 { f: PolyK, g: PolyK, total: ExtScalar, min: ExtScalar },
    /// `ν(1) ≠ 0` or `ν(0) ≠ ∞`.
    V3 { one: ExtScalar, zero: ExtScalar },
    Failure(ValuationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub counterexample: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Check V1 and V2 on consecutive sample pairs and V3, with any evaluation
/// function; stops at the first counterexample.
pub fn check_axioms_with(
    field: FieldSpec,
    nu: impl Fn(&PolyK) -> Result<ExtScalar, ValuationError>,
    samples: &[PolyK],
) -> AxiomReport {
    let run = || -> Result<Option<AxiomViolation>, ValuationError> {
        let one = nu(&PolyK::one(field))?;
        let zero = nu(&PolyK::zero(field))?;
        if one != ExtScalar::zero() || zero != ExtScalar::Infinity {
            return Ok(Some(AxiomViolation::V3 { one, zero }));
        }
        for pair in samples.chunks_exact(2) {
            let (f, g) = (&pair[0], &pair[1]);
            let (vf, vg) = (nu(f)?, nu(g)?);
            let product = nu(&(f * g))?;
            let sum = ext_add(&vf, &vg)?;
            if product != sum {
                return Ok(Some(AxiomViolation::V1 { f: f.clone(), g: g.clone(), product, sum }));
            }
            let total = nu(&(f + g))?;
            let min = vf.try_min(vg)?;
            if ext_cmp(&total, &min)? == Ordering::Less {
                return Ok(Some(AxiomViolation::V2 { f: f.clone(), g: g.clone(), total, min }));
            }
        }
        Ok(None)
    };
    let counterexample = run().unwrap_or_else(|e| Some(AxiomViolation::Failure(e)));
    AxiomReport { pairs_checked: samples.len() / 2, counterexample }
}

/// [`check_axioms_with`] for a described valuation.
pub fn check_axioms(d: &ValDesc, samples: &[PolyK]) -> AxiomReport {
    check_axioms_with(d.field(), |f| val_apply(d, f), samples)
}

/// Extension type read off the description.
pub fn classify(d: &ValDesc) -> ValType {
    match d {
        ValDesc::Monomial { gamma, .. } | ValDesc::Augmented { gamma, .. } => match gamma {
            ExtScalar::Fin(_) => ValType::RT,
            ExtScalar::CutLin { .. } => ValType::VT,
            ExtScalar::Infinity => ValType::NT,
        },
        ValDesc::LimitOfFamily { .. } => ValType::AL,
    }
}

impl fmt::Display for ValDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValDesc::Monomial { a, gamma } => write!(f, "monomial a=\"{a}\" gamma=\"{gamma}\""),
            ValDesc::Augmented { key, gamma, base } => {
                write!(f, "augmented F=\"{key}\" gamma=\"{gamma}\" over {}", base.describe())
            }
            ValDesc::LimitOfFamily { evaluator, certificate, .. } => write!(
                f,
                "limit of {} (certified up to degree {}, prefix {})",
                evaluator.describe(),
                certificate.degree_bound,
                certificate.prefix
            ),
        }
    }
}

impl fmt::Debug for ValDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ValDesc({self})")
    }
}
