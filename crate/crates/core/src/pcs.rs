//! Pseudo-Cauchy sequences, the values `v(f(a_i))` along them, and the map
//! sending a sequence to the valuation it determines on `K[x]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::basefield::{FieldSpec, KElem, ValueQ};
use crate::ordgroup::{ext_add, ext_cmp, ext_scale, sup_of_values, CutId, ExtScalar, OrdError, QuasiCut, Rat};
use crate::poly::{poly_eval, sample_poly_with, PolyK};
use crate::valuation::{
    classify, val_apply, CoefficientEvaluator, LimitCertificate, ValDesc, ValType, ValuationError,
};

pub type Generator = Arc<dyn Fn(usize) -> KElem + Send + Sync>;
pub type ClosedForm = Arc<dyn Fn(usize) -> Rat + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `v(a_i − a_j) < v(a_j − a_k)` fails.
    Triple(usize, usize, usize),
    /// `a_i = a_j`.
    Repeated(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Triple(i, j, k) => write!(f, "v(a_{i} - a_{j}) >= v(a_{j} - a_{k})"),
            Violation::Repeated(i, j) => write!(f, "a_{i} = a_{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcsError {
    #[error("a sequence needs at least two elements")]
    TooShort,
    #[error("elements from different fields")]
    FieldMismatch,
    #[error("not pseudo-Cauchy: {0}")]
    NotPseudoCauchy(Violation),
    #[error("index {index} lies beyond the prefix and the sequence has no generator")]
    GeneratorMissing { index: usize },
    #[error("values are strictly increasing: {}", join(.observed))]
    NotStable { observed: Vec<ValueQ> },
    #[error("values neither settle nor strictly increase within the budget")]
    Undetermined,
    #[error("two candidate terms meet exactly at the limit")]
    AmbiguousAtLimit,
    #[error("inconclusive: {reason}")]
    Inconclusive { reason: String },
    #[error("witness rejected: {reason}")]
    WitnessMismatch { reason: String },
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Ord(#[from] OrdError),
}

fn join(values: &[ValueQ]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Declared algebraic data for a sequence: a monic polynomial of least
/// degree whose values along the sequence keep increasing, and the limit of
/// those values.
#[derive(Clone)]
pub struct AlgWitness {
    pub key: PolyK,
    pub limit: QuasiCut,
    pub closed_form: Option<ClosedForm>,
}

impl AlgWitness {
    pub fn new(key: PolyK, limit: QuasiCut) -> Self {
        AlgWitness { key, limit, closed_form: None }
    }

    pub fn with_closed_form(mut self, f: ClosedForm) -> Self {
        self.closed_form = Some(f);
        self
    }
}

impl fmt::Debug for AlgWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgWitness(F = {}, limit = {})", self.key, self.limit)
    }
}

#[derive(Clone)]
struct Inner {
    field: FieldSpec,
    prefix: Vec<KElem>,
    gammas: Vec<Rat>,
    generator: Option<Generator>,
    witness: Option<AlgWitness>,
    gamma_limit: Option<QuasiCut>,
    label: String,
}

/// A pseudo-Cauchy sequence: a validated prefix, optionally continued by a
/// pure generator. Cheap to clone.
#[derive(Clone)]
pub struct PCSeq(Arc<Inner>);

impl PCSeq {
    /// A finite sequence; its last distance is the maximum of the index set.
    pub fn finite(prefix: Vec<KElem>) -> Result<Self, PcsError> {
        let gammas = validate_pcs(&prefix)?;
        let field = prefix[0].field();
        Ok(PCSeq(Arc::new(Inner {
            field,
            prefix,
            gammas,
            generator: None,
            witness: None,
            gamma_limit: None,
            label: "finite sequence".into(),
        })))
    }

    /// An infinite sequence `i ↦ generator(i)`, with the first `prefix_len`
    /// terms materialized and validated.
    pub fn generated(field: FieldSpec, generator: Generator, prefix_len: usize) -> Result<Self, PcsError> {
        let prefix: Vec<KElem> = (0..prefix_len).map(|i| generator(i)).collect();
        if prefix.iter().any(|a| a.field() != field) {
            return Err(PcsError::FieldMismatch);
        }
        let gammas = validate_pcs(&prefix)?;
        Ok(PCSeq(Arc::new(Inner {
            field,
            prefix,
            gammas,
            generator: Some(generator),
            witness: None,
            gamma_limit: None,
            label: "generated sequence".into(),
        })))
    }

    fn modify(self, f: impl FnOnce(&mut Inner)) -> Self {
        let mut inner = Arc::unwrap_or_clone(self.0);
        f(&mut inner);
        PCSeq(Arc::new(inner))
    }

    pub fn with_witness(self, witness: AlgWitness) -> Result<Self, PcsError> {
        if witness.key.field() != self.field() || !witness.key.is_monic() || witness.key.degree() == Some(0) {
            return Err(PcsError::WitnessMismatch { reason: "key must be monic of positive degree over the sequence's field".into() });
        }
        Ok(self.modify(|s| s.witness = Some(witness)))
    }

    pub fn without_witness(self) -> Self {
        self.modify(|s| s.witness = None)
    }

    /// Record the known limit of the distances `γ_i`.
    pub fn with_gamma_limit(self, limit: QuasiCut) -> Self {
        self.modify(|s| s.gamma_limit = Some(limit))
    }

    pub fn with_label(self, label: impl Into<String>) -> Self {
        let label = label.into();
        self.modify(|s| s.label = label)
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    pub fn prefix(&self) -> &[KElem] {
        &self.0.prefix
    }

    /// Distances `γ_i = v(a_{i+1} − a_i)` on the prefix.
    pub fn gammas(&self) -> &[Rat] {
        &self.0.gammas
    }

    pub fn witness(&self) -> Option<&AlgWitness> {
        self.0.witness.as_ref()
    }

    pub fn gamma_limit(&self) -> Option<&QuasiCut> {
        self.0.gamma_limit.as_ref()
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.0.generator.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn is_finite(&self) -> bool {
        self.0.generator.is_none()
    }

    /// Number of indices available: the prefix length, or unbounded.
    pub fn available(&self) -> Option<usize> {
        if self.is_finite() {
            Some(self.0.prefix.len())
        } else {
            None
        }
    }

    pub fn elem(&self, i: usize) -> Result<KElem, PcsError> {
        if let Some(a) = self.0.prefix.get(i) {
            return Ok(a.clone());
        }
        match &self.0.generator {
            Some(g) => Ok(g(i)),
            None => Err(PcsError::GeneratorMissing { index: i }),
        }
    }

    /// `a_0, …, a_{n-1}`.
    pub fn elements(&self, n: usize) -> Result<Vec<KElem>, PcsError> {
        let mut out: Vec<KElem> = self.0.prefix.iter().take(n).cloned().collect();
        for i in out.len()..n {
            out.push(self.elem(i)?);
        }
        Ok(out)
    }

    /// `γ_i = v(a_{i+1} − a_i)`.
    pub fn gamma(&self, i: usize) -> Result<Rat, PcsError> {
        if let Some(g) = self.0.gammas.get(i) {
            return Ok(g.clone());
        }
        match (&self.elem(i + 1)? - &self.elem(i)?).val() {
            ValueQ::Fin(g) => Ok(g),
            ValueQ::Infinity => Err(PcsError::NotPseudoCauchy(Violation::Repeated(i, i + 1))),
        }
    }

    /// The same sequence with the first `n` terms materialized and validated.
    pub fn extend_prefix(&self, n: usize) -> Result<Self, PcsError> {
        if n <= self.0.prefix.len() {
            return Ok(self.clone());
        }
        let prefix = self.elements(n)?;
        let gammas = validate_pcs(&prefix)?;
        Ok(self.clone().modify(|s| {
            s.prefix = prefix;
            s.gammas = gammas;
        }))
    }

    /// The monomial valuation `ν_i = v_{a_i, γ_i}`.
    pub fn family_member(&self, i: usize) -> Result<ValDesc, PcsError> {
        Ok(ValDesc::monomial(self.elem(i)?, ExtScalar::Fin(self.gamma(i)?)))
    }
}

impl fmt::Debug for PCSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PCSeq")
            .field("label", &self.0.label)
            .field("prefix", &self.0.prefix)
            .field("generated", &self.0.generator.is_some())
            .field("witness", &self.0.witness)
            .finish()
    }
}

/// Check the pseudo-Cauchy condition on every triple of the prefix and
/// return the distances `γ_i = v(a_{i+1} − a_i)`.
pub fn validate_pcs(prefix: &[KElem]) -> Result<Vec<Rat>, PcsError> {
    let n = prefix.len();
    if n < 2 {
        return Err(PcsError::TooShort);
    }
    let field = prefix[0].field();
    if prefix.iter().any(|a| a.field() != field) {
        return Err(PcsError::FieldMismatch);
    }
    // dist[i][j] = v(a_j − a_i) for i < j
    let mut dist = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            match (&prefix[j] - &prefix[i]).val() {
                ValueQ::Fin(d) => dist[i].push(d),
                ValueQ::Infinity => return Err(PcsError::NotPseudoCauchy(Violation::Repeated(i, j))),
            }
        }
    }
    let d = |i: usize, j: usize| &dist[i][j - i - 1];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if d(i, j) >= d(j, k) {
                    return Err(PcsError::NotPseudoCauchy(Violation::Triple(i, j, k)));
                }
            }
        }
    }
    Ok((0..n - 1).map(|i| d(i, i + 1).clone()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The last `w` observed values coincide.
    Window(usize),
    /// Expansion about `a_index`: every higher Hasse term has certified value
    /// exceeding `v(f(a_index))`, which forces `v(f(a_i)) = v(f(a_index))`
    /// for all `i ≥ index`.
    Dominance { index: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Window(w) => write!(f, "window {w}"),
            Certificate::Dominance { index } => write!(f, "dominance from index {index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityReport {
    UltimatelyConstant { value: ValueQ, since: usize, certificate: Certificate },
    StrictlyIncreasing { observed: Vec<ValueQ> },
    Undetermined,
}

/// Classify a finite run of values `v(f(a_0)), …, v(f(a_n))`.
///
/// A final constant run of length at least `window` is reported constant. A
/// final strictly increasing run of that length is reported increasing,
/// unless it directly follows a repeat: values along a pseudo-Cauchy
/// sequence never repeat and then increase, so that pattern is reported
/// undetermined.
pub fn behavior_of_values(values: &[ValueQ], window: usize) -> StabilityReport {
    let n = values.len();
    let window = window.max(1);
    if n == 0 {
        return StabilityReport::Undetermined;
    }
    let mut s = n - 1;
    while s > 0 && values[s - 1] == values[n - 1] {
        s -= 1;
    }
    if n - s >= window {
        return StabilityReport::UltimatelyConstant {
            value: values[n - 1].clone(),
            since: s,
            certificate: Certificate::Window(window),
        };
    }
    if values[n - 1].is_infinite() {
        return StabilityReport::Undetermined;
    }
    let mut r = n - 1;
    while r > 0 && values[r - 1] < values[r] {
        r -= 1;
    }
    let repeat_before = r > 0 && values[r - 1] == values[r];
    if n - r >= window.max(2) && !repeat_before {
        return StabilityReport::StrictlyIncreasing { observed: values.to_vec() };
    }
    StabilityReport::Undetermined
}

/// Compute `v(f(a_i))` for `i = 0..=upto` and classify the run.
pub fn value_behavior(seq: &PCSeq, f: &PolyK, upto: usize, window: usize) -> Result<StabilityReport, PcsError> {
    check_field(seq, f)?;
    let values = observed_values(seq, f, upto)?;
    Ok(behavior_of_values(&values, window))
}

fn check_field(seq: &PCSeq, f: &PolyK) -> Result<(), PcsError> {
    if f.field() != seq.field() {
        return Err(PcsError::FieldMismatch);
    }
    Ok(())
}

/// `v(f(a_i))` for `i = 0..=upto`.
pub fn observed_values(seq: &PCSeq, f: &PolyK, upto: usize) -> Result<Vec<ValueQ>, PcsError> {
    Ok(seq.elements(upto + 1)?.iter().map(|a| poly_eval(f, a).val()).collect())
}

/// Index of the term `β_l + t_l·γ` that is smallest for `γ` just below the
/// limit of an increasing family of radii.
pub fn select_dominant(betas: &[Rat], ts: &[u64], limit: &ExtScalar) -> Result<usize, PcsError> {
    if betas.is_empty() || betas.len() != ts.len() {
        return Err(PcsError::BadInput("betas and ts must be nonempty and of equal length".into()));
    }
    let limit = match limit {
        ExtScalar::Infinity => ExtScalar::cut_unit(CutId::PlusInf),
        other => other.clone(),
    };
    let lines: Vec<ExtScalar> = betas
        .iter()
        .zip(ts)
        .map(|(b, &t)| ext_add(&ext_scale(t, &limit), &ExtScalar::Fin(b.clone())))
        .collect::<Result<_, _>>()?;
    let mut best = 0;
    let mut tie = false;
    for (l, line) in lines.iter().enumerate().skip(1) {
        match ext_cmp(line, &lines[best])? {
            Ordering::Less => {
                best = l;
                tie = false;
            }
            Ordering::Equal => tie = true,
            Ordering::Greater => {}
        }
    }
    if tie {
        return Err(PcsError::AmbiguousAtLimit);
    }
    Ok(best)
}

/// Budget and sampling parameters for stability analysis and `psi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Last index inspected.
    pub upto: usize,
    /// Number of equal trailing values accepted as stabilization.
    pub window: usize,
    /// Degree bound of the test polynomials used to certify transcendental type.
    pub degree_bound: usize,
    /// Number of random test polynomials.
    pub samples: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { upto: 6, window: 3, degree_bound: 3, samples: 12, seed: 0 }
    }
}

/// Certified value at index `n` by the expansion argument; `None` when the
/// sufficient condition fails. `elems` holds `a_0, …, a_{n+1}`.
fn dominance_at(
    elems: &[KElem],
    n: usize,
    gamma_n: &Rat,
    f: &PolyK,
    memo: &mut HashMap<PolyK, Option<ValueQ>>,
) -> Option<ValueQ> {
    if let Some(c) = f.as_constant() {
        return Some(c.val());
    }
    if let Some(hit) = memo.get(f) {
        return hit.clone();
    }
    let result = (|| {
        let c = poly_eval(f, &elems[n]).val();
        let c_fin = c.as_fin()?.clone();
        for l in 1..=f.degree().unwrap() {
            let d = f.hasse_derivative(l);
            if d.is_zero() {
                continue;
            }
            let beta = dominance_at(elems, n, gamma_n, &d, memo)?;
            let beta = beta.as_fin()?.clone();
            if beta + gamma_n * Rat::from_integer((l as i64).into()) <= c_fin {
                return None;
            }
        }
        Some(c)
    })();
    memo.insert(f.clone(), result.clone());
    result
}

/// The eventual value of `v(f(a_i))`, with how it was certified.
pub fn stable_value(seq: &PCSeq, f: &PolyK, opts: &AnalysisOptions) -> Result<(ExtScalar, Certificate), PcsError> {
    check_field(seq, f)?;
    if let Some(c) = f.as_constant() {
        return Ok((c.val().into(), Certificate::Dominance { index: 0 }));
    }
    let last = match seq.available() {
        Some(len) => (opts.upto + 3).min(len),
        None => opts.upto + 3,
    };
    let elems = seq.elements(last)?;
    let mut memo = HashMap::new();
    for n in opts.upto..last.saturating_sub(1) {
        memo.clear();
        let gamma_n = match (&elems[n + 1] - &elems[n]).val() {
            ValueQ::Fin(g) => g,
            ValueQ::Infinity => break,
        };
        if let Some(c) = dominance_at(&elems, n, &gamma_n, f, &mut memo) {
            return Ok((c.into(), Certificate::Dominance { index: n }));
        }
    }
    let upto = opts.upto.min(last.saturating_sub(1));
    let values: Vec<ValueQ> = elems[..=upto].iter().map(|a| poly_eval(f, a).val()).collect();
    match behavior_of_values(&values, opts.window) {
        StabilityReport::UltimatelyConstant { value, certificate, .. } => Ok((value.into(), certificate)),
        StabilityReport::StrictlyIncreasing { observed } => Err(PcsError::NotStable { observed }),
        StabilityReport::Undetermined => Err(PcsError::Undetermined),
    }
}

/// Coefficient evaluator backed by stable values along a sequence.
#[derive(Clone)]
pub struct StableEvaluator {
    pub seq: PCSeq,
    pub opts: AnalysisOptions,
}

impl CoefficientEvaluator for StableEvaluator {
    fn eval(&self, f: &PolyK) -> Result<ExtScalar, ValuationError> {
        stable_value(&self.seq, f, &self.opts)
            .map(|(v, _)| v)
            .map_err(|e| ValuationError::EvaluatorFailure { reason: format!("{}: {e}", f) })
    }

    fn family_values(&self, f: &PolyK) -> Result<Vec<ExtScalar>, ValuationError> {
        let fail = |e: PcsError| ValuationError::EvaluatorFailure { reason: e.to_string() };
        (0..self.opts.upto)
            .map(|i| {
                let member = self.seq.family_member(i).map_err(fail)?;
                val_apply(&member, f)
            })
            .collect()
    }

    fn describe(&self) -> String {
        format!("stable values along {}", self.seq.label())
    }
}

/// Everything `psi` found out, beyond the description itself.
#[derive(Debug, Clone)]
pub struct PsiReport {
    pub desc: ValDesc,
    pub vtype: ValType,
    /// `v(F(a_i))` for the witness key, when there is one.
    pub witness_values: Vec<ValueQ>,
    /// Certificates of the polynomials checked, as `(polynomial, certificate)`.
    pub certificates: Vec<(PolyK, Certificate)>,
}

/// The valuation determined by a pseudo-Cauchy sequence, with its type.
pub fn psi(seq: &PCSeq, opts: &AnalysisOptions) -> Result<(ValDesc, ValType), PcsError> {
    psi_report(seq, opts).map(|r| (r.desc, r.vtype))
}

pub fn psi_report(seq: &PCSeq, opts: &AnalysisOptions) -> Result<PsiReport, PcsError> {
    if seq.is_finite() {
        let last = seq.prefix().len() - 2;
        let desc = ValDesc::monomial(seq.prefix()[last].clone(), ExtScalar::Fin(seq.gammas()[last].clone()));
        let vtype = classify(&desc);
        return Ok(PsiReport { desc, vtype, witness_values: Vec::new(), certificates: Vec::new() });
    }
    match seq.witness() {
        Some(w) => psi_with_witness(seq, w, opts),
        None => psi_transcendental(seq, opts),
    }
}

fn psi_with_witness(seq: &PCSeq, w: &AlgWitness, opts: &AnalysisOptions) -> Result<PsiReport, PcsError> {
    let mismatch = |reason: String| PcsError::WitnessMismatch { reason };
    let values = observed_values(seq, &w.key, opts.upto)?;
    let mut fin = Vec::with_capacity(values.len());
    for (i, v) in values.iter().enumerate() {
        let v = v.as_fin().ok_or_else(|| mismatch(format!("F(a_{i}) = 0")))?;
        if let Some(cf) = &w.closed_form {
            let expected = cf(i);
            if &expected != v {
                return Err(mismatch(format!("v(F(a_{i})) = {v}, closed form gives {expected}")));
            }
        }
        fin.push(v.clone());
    }
    if fin.windows(2).any(|p| p[0] >= p[1]) {
        return Err(mismatch(format!("v(F(a_i)) not strictly increasing: {}", join(&values))));
    }
    let mut certificates = Vec::new();
    for l in 1..w.key.degree().unwrap() {
        let d = w.key.hasse_derivative(l);
        match stable_value(seq, &d, opts) {
            Ok((_, cert)) => certificates.push((d, cert)),
            Err(e) => return Err(mismatch(format!("Hasse coefficient {l} of F is not stable: {e}"))),
        }
    }
    let gamma = match sup_of_values(&fin, Some(&w.limit))? {
        ExtScalar::CutLin { cut: CutId::PlusInf, .. } => ExtScalar::Infinity,
        g => g,
    };
    let base = Arc::new(StableEvaluator { seq: seq.clone(), opts: opts.clone() });
    let desc = ValDesc::augmented(w.key.clone(), gamma, base)?;
    let vtype = classify(&desc);
    Ok(PsiReport { desc, vtype, witness_values: values, certificates })
}

/// Test polynomials for transcendental type: powers of `x`, `x − a_j` and
/// seeded random polynomials of degree at most `degree_bound`.
pub fn test_polynomials(seq: &PCSeq, opts: &AnalysisOptions) -> Result<Vec<PolyK>, PcsError> {
    let field = seq.field();
    let mut out: Vec<PolyK> = (1..=opts.degree_bound).map(|d| PolyK::monomial(KElem::one(field), d)).collect();
    for j in 0..=opts.upto.saturating_sub(opts.window) {
        out.push(PolyK::linear(&seq.elem(j)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        out.push(sample_poly_with(&mut rng, field, opts.degree_bound, 2));
    }
    Ok(out)
}

fn psi_transcendental(seq: &PCSeq, opts: &AnalysisOptions) -> Result<PsiReport, PcsError> {
    let mut certificates = Vec::new();
    for f in test_polynomials(seq, opts)? {
        match stable_value(seq, &f, opts) {
            Ok((_, cert)) => certificates.push((f, cert)),
            Err(PcsError::NotStable { observed }) => {
                return Err(PcsError::Inconclusive {
                    reason: format!(
                        "{f} is not fixed by the sequence (values {}) and no witness was supplied",
                        join(&observed)
                    ),
                })
            }
            Err(PcsError::Undetermined) => {
                return Err(PcsError::Inconclusive { reason: format!("{f} does not settle within the budget") })
            }
            Err(e) => return Err(e),
        }
    }
    let desc = ValDesc::LimitOfFamily {
        field: seq.field(),
        evaluator: Arc::new(StableEvaluator { seq: seq.clone(), opts: opts.clone() }),
        certificate: LimitCertificate { degree_bound: opts.degree_bound, prefix: opts.upto + 1 },
    };
    Ok(PsiReport { desc, vtype: ValType::AL, witness_values: Vec::new(), certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::ordgroup::{int, rat};
    use crate::parse::{parse_elem, parse_poly};

    fn hull(p: u64) -> FieldSpec {
        FieldSpec::perfect_hull(p).unwrap()
    }

    #[test]
    fn validate_examples() {
        let h = hull(3);
        let rt = vec![parse_elem(h, "t").unwrap(), parse_elem(h, "t+t^2").unwrap()];
        assert_eq!(validate_pcs(&rt).unwrap(), vec![int(2)]);
        let vt = generators::artin_schreier_vt(h, 4).unwrap();
        assert_eq!(vt.gammas(), &[rat(-1, 3), rat(-1, 9), rat(-1, 27)]);
        let q = FieldSpec::rat_p(3).unwrap();
        let bad: Vec<KElem> = [0, 3, 3].iter().map(|&n| KElem::from_int(q, n)).collect();
        assert_eq!(validate_pcs(&bad), Err(PcsError::NotPseudoCauchy(Violation::Repeated(1, 2))));
        let bad: Vec<KElem> = [0, 9, 12].iter().map(|&n| KElem::from_int(q, n)).collect();
        assert_eq!(validate_pcs(&bad), Err(PcsError::NotPseudoCauchy(Violation::Triple(0, 1, 2))));
        assert_eq!(validate_pcs(&bad[..1]), Err(PcsError::TooShort));
    }

    #[test]
    fn behavior_examples() {
        for p in [2u64, 3] {
            let h = hull(p);
            let nt = generators::artin_schreier_nt(h, 3).unwrap();
            let key = nt.witness().unwrap().key.clone();
            let expect: Vec<ValueQ> = (1..=6).map(|e| ValueQ::Fin(int(p.pow(e) as i64))).collect();
            assert_eq!(
                value_behavior(&nt, &key, 5, 3).unwrap(),
                StabilityReport::StrictlyIncreasing { observed: expect }
            );
            let vt = generators::artin_schreier_vt(h, 3).unwrap();
            let report = value_behavior(&vt, &parse_poly(h, "x").unwrap(), 5, 3).unwrap();
            assert_eq!(
                report,
                StabilityReport::UltimatelyConstant {
                    value: ValueQ::Fin(int(-1)),
                    since: 0,
                    certificate: Certificate::Window(3)
                }
            );
            let one = value_behavior(&vt, &PolyK::one(h), 5, 3).unwrap();
            assert!(matches!(one, StabilityReport::UltimatelyConstant { since: 0, .. }));
        }
    }

    #[test]
    fn behavior_rules() {
        let v = |xs: &[i64]| xs.iter().map(|&x| ValueQ::Fin(int(x))).collect::<Vec<_>>();
        assert!(matches!(behavior_of_values(&v(&[1, 2, 3, 3, 3]), 3), StabilityReport::UltimatelyConstant { since: 2, .. }));
        assert!(matches!(behavior_of_values(&v(&[1, 2, 3, 3]), 3), StabilityReport::Undetermined));
        assert!(matches!(behavior_of_values(&v(&[1, 1, 2, 3, 4]), 3), StabilityReport::Undetermined));
        assert!(matches!(behavior_of_values(&v(&[5, 1, 2, 3]), 3), StabilityReport::StrictlyIncreasing { .. }));
        let mut w = v(&[1, 2, 3]);
        w.push(ValueQ::Infinity);
        assert_eq!(behavior_of_values(&w, 3), StabilityReport::Undetermined);
    }

    #[test]
    fn missing_generator() {
        let h = hull(2);
        let rt = PCSeq::finite(vec![parse_elem(h, "t").unwrap(), parse_elem(h, "t+t^2").unwrap()]).unwrap();
        assert_eq!(
            value_behavior(&rt, &parse_poly(h, "x").unwrap(), 4, 3),
            Err(PcsError::GeneratorMissing { index: 2 })
        );
    }

    #[test]
    fn dominant_examples() {
        let below4 = ExtScalar::cut_unit(CutId::Below(int(4)));
        assert_eq!(select_dominant(&[int(0), int(3)], &[2, 1], &below4), Ok(1));
        let top = ExtScalar::cut_unit(CutId::PlusInf);
        assert_eq!(select_dominant(&[int(0), int(0)], &[1, 2], &top), Ok(0));
        assert_eq!(select_dominant(&[int(5)], &[1], &ExtScalar::Fin(int(7))), Ok(0));
        assert_eq!(
            select_dominant(&[int(0), int(3)], &[2, 1], &ExtScalar::Fin(int(3))),
            Err(PcsError::AmbiguousAtLimit)
        );
    }

    #[test]
    fn stable_value_examples() {
        let h = hull(3);
        let opts = AnalysisOptions::default();
        let vt = generators::artin_schreier_vt(h, 3).unwrap();
        let (v, cert) = stable_value(&vt, &parse_poly(h, "x").unwrap(), &opts).unwrap();
        assert_eq!(v, ExtScalar::Fin(int(-1)));
        assert!(matches!(cert, Certificate::Dominance { .. }));
        let c = parse_elem(h, "t^(2/3)+1").unwrap();
        assert_eq!(
            stable_value(&vt, &PolyK::constant(c), &opts).unwrap(),
            (ExtScalar::Fin(int(0)), Certificate::Dominance { index: 0 })
        );
        let nt = generators::artin_schreier_nt(h, 3).unwrap();
        let key = nt.witness().unwrap().key.clone();
        assert!(matches!(stable_value(&nt, &key, &opts), Err(PcsError::NotStable { .. })));
    }

    #[test]
    fn psi_golden() {
        for p in [2u64, 3] {
            let h = hull(p);
            let opts = AnalysisOptions { upto: 4, ..Default::default() };
            let rt = PCSeq::finite(vec![parse_elem(h, "t").unwrap(), parse_elem(h, "t+t^2").unwrap()]).unwrap();
            let (d, ty) = psi(&rt, &opts).unwrap();
            assert_eq!(ty, ValType::RT);
            assert_eq!(d.gamma(), Some(&ExtScalar::Fin(int(2))));

            let nt = generators::artin_schreier_nt(h, 3).unwrap();
            let (d, ty) = psi(&nt, &opts).unwrap();
            assert_eq!((ty, d.gamma()), (ValType::NT, Some(&ExtScalar::Infinity)));
            let key = nt.witness().unwrap().key.clone();
            assert_eq!(val_apply(&d, &key).unwrap(), ExtScalar::Infinity);

            let vt = generators::artin_schreier_vt(h, 3).unwrap();
            let (d, ty) = psi(&vt, &opts).unwrap();
            let x0 = ExtScalar::cut_unit(CutId::Below(int(0)));
            assert_eq!((ty, d.gamma()), (ValType::VT, Some(&x0)));
            let key = vt.witness().unwrap().key.clone();
            assert_eq!(val_apply(&d, &key).unwrap(), x0);
        }
    }

    #[test]
    fn unstable_without_witness_is_inconclusive() {
        let h = hull(2);
        let zero = KElem::zero(h);
        let towards_zero = generators::cut_approach(h, &zero, &CutId::PlusInf, 3).unwrap();
        let bare = PCSeq::generated(h, towards_zero.generator().unwrap().clone(), 3).unwrap();
        assert!(matches!(psi(&bare, &AnalysisOptions::default()), Err(PcsError::Inconclusive { .. })));
    }

    #[test]
    fn transcendental_type_is_certified_only_up_to_the_degree_bound() {
        let h = hull(2);
        let nt = generators::artin_schreier_nt(h, 3).unwrap();
        let bare = PCSeq::generated(h, nt.generator().unwrap().clone(), 3).unwrap();
        let opts = AnalysisOptions { upto: 4, degree_bound: 1, samples: 4, ..Default::default() };
        let (d, ty) = psi(&bare, &opts).unwrap();
        assert_eq!(ty, ValType::AL);
        assert!(d.to_string().contains("degree 1"));
        let key = nt.witness().unwrap().key.clone();
        assert!(matches!(stable_value(&bare, &key, &opts), Err(PcsError::NotStable { .. })));
    }
}
