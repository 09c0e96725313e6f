//! Python bindings: module `pykxval`.
//!
//! Values of polynomials are returned as `Value` objects; comparisons between
//! values that mix different cuts raise `ValueError`.

use std::cmp::Ordering;

use kxval::approx::{appr_of_monomial, appr_type, iota, phi, supp_descr, ApproxError, ApproxType};
use kxval::basefield::{FieldSpec, KElem};
use kxval::generators;
use kxval::golden::run_examples;
use kxval::ordgroup::{ext_add, ext_cmp, parse_rational, CutId, ExtScalar};
use kxval::parse::{parse_elem, parse_poly};
use kxval::pcs::{psi_report, AnalysisOptions, PCSeq, PcsError};
use kxval::poly::{euclid_div, poly_eval, q_expansion, PolyK};
use kxval::valuation::{classify, val_apply, ValDesc};
use pyo3::basic::CompareOp;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

create_exception!(pykxval, InconclusiveError, PyException, "Analysis did not settle within the budget.");

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pcs_err(e: PcsError) -> PyErr {
    match e {
        PcsError::Inconclusive { .. } | PcsError::NotStable { .. } | PcsError::Undetermined | PcsError::AmbiguousAtLimit => {
            InconclusiveError::new_err(e.to_string())
        }
        e => value_err(e),
    }
}

fn approx_err(e: ApproxError) -> PyErr {
    match e {
        ApproxError::Pcs(inner) => pcs_err(inner),
        ApproxError::BudgetExhausted { .. } | ApproxError::UndeterminedSup => InconclusiveError::new_err(e.to_string()),
        e => value_err(e),
    }
}

fn options(upto: usize, window: usize, degree_bound: usize) -> AnalysisOptions {
    AnalysisOptions { upto, window, degree_bound, ..Default::default() }
}

/// A base field: `rat_p`, `rat_fun` or `perfect_hull` with a prime `p`.
#[pyclass(frozen, skip_from_py_object, module = "pykxval")]
#[derive(Clone)]
pub struct Field(FieldSpec);

#[pymethods]
impl Field {
    #[new]
    fn new(kind: &str, p: u64) -> PyResult<Self> {
        FieldSpec::from_kind(kind, p).map(Field).map_err(value_err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind_name()
    }

    fn elem(&self, text: &str) -> PyResult<Elem> {
        parse_elem(self.0, text).map(Elem).map_err(value_err)
    }

    fn poly(&self, text: &str) -> PyResult<Poly> {
        parse_poly(self.0, text).map(Poly).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Field({:?}, {})", self.0.kind_name(), self.0.p())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(frozen, skip_from_py_object, module = "pykxval")]
#[derive(Clone)]
pub struct Elem(KElem);

#[pymethods]
impl Elem {
    /// `v(a)` as a string; `"inf"` for zero.
    fn val(&self) -> String {
        self.0.val().to_string()
    }

    fn __add__(&self, other: &Elem) -> PyResult<Elem> {
        self.0.checked_add(&other.0).map(Elem).map_err(value_err)
    }

    fn __sub__(&self, other: &Elem) -> PyResult<Elem> {
        self.0.checked_sub(&other.0).map(Elem).map_err(value_err)
    }

    fn __mul__(&self, other: &Elem) -> PyResult<Elem> {
        self.0.checked_mul(&other.0).map(Elem).map_err(value_err)
    }

    fn __truediv__(&self, other: &Elem) -> PyResult<Elem> {
        if other.0.is_zero() {
            return Err(PyZeroDivisionError::new_err("division by zero"));
        }
        self.0.checked_div(&other.0).map(Elem).map_err(value_err)
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Elem> {
        self.0.pow(e).map(Elem).map_err(value_err)
    }

    fn __eq__(&self, other: &Elem) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Elem({:?})", self.0.to_string())
    }
}

#[pyclass(frozen, skip_from_py_object, module = "pykxval")]
#[derive(Clone)]
pub struct Poly(PolyK);

#[pymethods]
impl Poly {
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn coeffs(&self) -> Vec<Elem> {
        self.0.coeffs().iter().cloned().map(Elem).collect()
    }

    fn __call__(&self, a: &Elem) -> Elem {
        Elem(poly_eval(&self.0, &a.0))
    }

    /// Coefficients of the `q`-adic expansion, lowest power first.
    fn expand(&self, q: &Poly) -> PyResult<Vec<Poly>> {
        q_expansion(&self.0, &q.0).map(|v| v.into_iter().map(Poly).collect()).map_err(value_err)
    }

    fn hasse_derivative(&self, l: usize) -> Poly {
        Poly(self.0.hasse_derivative(l))
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        self.0.checked_add(&other.0).map(Poly).map_err(value_err)
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        self.0.checked_sub(&other.0).map(Poly).map_err(value_err)
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        self.0.checked_mul(&other.0).map(Poly).map_err(value_err)
    }

    fn __divmod__(&self, other: &Poly) -> PyResult<(Poly, Poly)> {
        euclid_div(&self.0, &other.0).map(|(q, r)| (Poly(q), Poly(r))).map_err(value_err)
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.0.to_string())
    }
}

/// An element of the extended value group: rational, `inf`, or `m·δ + b`
/// for a cut `δ` (printed like `0-` or `2*(1/2-) + 1`).
#[pyclass(frozen, skip_from_py_object, module = "pykxval")]
#[derive(Clone)]
pub struct Value(ExtScalar);

#[pymethods]
impl Value {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Value).map_err(value_err)
    }

    #[getter]
    fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    #[getter]
    fn is_rational(&self) -> bool {
        self.0.as_fin().is_some()
    }

    fn __add__(&self, other: &Value) -> PyResult<Value> {
        ext_add(&self.0, &other.0).map(Value).map_err(value_err)
    }

    fn __richcmp__(&self, other: &Value, op: CompareOp) -> PyResult<bool> {
        let ord = ext_cmp(&self.0, &other.0).map_err(value_err)?;
        Ok(op.matches(ord))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Value({:?})", self.0.to_string())
    }
}

#[pyclass(frozen, skip_from_py_object, module = "pykxval")]
#[derive(Clone)]
pub struct Valuation(ValDesc);

#[pymethods]
impl Valuation {
    /// `v(f) = min_i v(c_i) + iγ` for the expansion of `f` in powers of `x − a`.
    #[staticmethod]
    fn monomial(a: &Elem, gamma: &str) -> PyResult<Self> {
        let gamma: ExtScalar = gamma.parse().map_err(value_err)?;
        Ok(Valuation(ValDesc::monomial(a.0.clone(), gamma)))
    }

    fn __call__(&self, f: &Poly) -> PyResult<Value> {
        val_apply(&self.0, &f.0).map(Value).map_err(value_err)
    }

    #[getter]
    fn gamma(&self) -> Option<Value> {
        self.0.gamma().cloned().map(Value)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0 {
            ValDesc::Monomial { .. } => "monomial",
            ValDesc::Augmented { .. } => "augmented",
            ValDesc::LimitOfFamily { .. } => "limit",
        }
    }

    /// `"RT"`, `"VT"`, `"NT"` or `"AL"`.
    fn vtype(&self) -> String {
        classify(&self.0).to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Valuation({})", self.0)
    }
}

/// A pseudo-Cauchy sequence, finite or given by a generator.
#[pyclass(frozen, skip_from_py_object, module = "pykxval")]
#[derive(Clone)]
pub struct Sequence(PCSeq);

#[pymethods]
impl Sequence {
    #[staticmethod]
    fn finite(elements: Vec<PyRef<'_, Elem>>) -> PyResult<Self> {
        PCSeq::finite(elements.iter().map(|e| e.0.clone()).collect()).map(Sequence).map_err(pcs_err)
    }

    #[staticmethod]
    #[pyo3(signature = (field, prefix=3))]
    fn artin_schreier_nt(field: &Field, prefix: usize) -> PyResult<Self> {
        generators::artin_schreier_nt(field.0, prefix).map(Sequence).map_err(pcs_err)
    }

    #[staticmethod]
    #[pyo3(signature = (field, prefix=3))]
    fn artin_schreier_vt(field: &Field, prefix: usize) -> PyResult<Self> {
        generators::artin_schreier_vt(field.0, prefix).map(Sequence).map_err(pcs_err)
    }

    #[staticmethod]
    #[pyo3(signature = (field, seed, prefix=30))]
    fn random_digits(field: &Field, seed: u64, prefix: usize) -> PyResult<Self> {
        generators::random_digits(field.0, seed, prefix).map(Sequence).map_err(pcs_err)
    }

    #[staticmethod]
    #[pyo3(signature = (field, head, period, prefix=30))]
    fn periodic_digits(field: &Field, head: Vec<u64>, period: Vec<u64>, prefix: usize) -> PyResult<Self> {
        generators::periodic_digits(field.0, &head, &period, prefix).map(Sequence).map_err(pcs_err)
    }

    /// Distances increasing to `cut` (`"inf"` or `"q-"`), starting at `center`.
    #[staticmethod]
    #[pyo3(signature = (center, cut, prefix=3))]
    fn cut_approach(center: &Elem, cut: &str, prefix: usize) -> PyResult<Self> {
        let cut: CutId = match cut.trim() {
            "inf" => CutId::PlusInf,
            s => s.parse().map_err(value_err)?,
        };
        generators::cut_approach(center.0.field(), &center.0, &cut, prefix).map(Sequence).map_err(pcs_err)
    }

    fn without_witness(&self) -> Self {
        Sequence(self.0.clone().without_witness())
    }

    fn elements(&self, n: usize) -> PyResult<Vec<Elem>> {
        Ok(self.0.elements(n).map_err(pcs_err)?.into_iter().map(Elem).collect())
    }

    /// Distances `v(a_{i+1} − a_i)` of the stored prefix.
    fn gammas(&self) -> Vec<String> {
        self.0.gammas().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// The valuation of the sequence and its type.
    #[pyo3(signature = (upto=6, window=3, degree_bound=3))]
    fn valuation(&self, upto: usize, window: usize, degree_bound: usize) -> PyResult<(Valuation, String)> {
        let report = psi_report(&self.0, &options(upto, window, degree_bound)).map_err(pcs_err)?;
        Ok((Valuation(report.desc), report.vtype.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Sequence({})", self.0.label())
    }
}

#[pyclass(frozen, skip_from_py_object, module = "pykxval")]
#[derive(Clone)]
pub struct Approximation(ApproxType);

#[pymethods]
impl Approximation {
    #[staticmethod]
    fn from_sequence(seq: &Sequence) -> PyResult<Self> {
        iota(&seq.0).map(Approximation).map_err(approx_err)
    }

    #[staticmethod]
    fn principal(center: &Elem, radius: &str) -> PyResult<Self> {
        let r = parse_rational(radius).map_err(value_err)?;
        appr_of_monomial(&center.0, &r).map(Approximation).map_err(approx_err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0 {
            ApproxType::Principal(_) => "principal",
            ApproxType::Generated(_) => "generated",
        }
    }

    /// The supremum of the radii, as a quasi-cut string.
    fn supp(&self) -> PyResult<String> {
        supp_descr(&self.0).map(|q| q.to_string()).map_err(approx_err)
    }

    #[pyo3(signature = (upto=6, window=3, degree_bound=3))]
    fn vtype(&self, upto: usize, window: usize, degree_bound: usize) -> PyResult<String> {
        appr_type(&self.0, &options(upto, window, degree_bound)).map(|t| t.to_string()).map_err(approx_err)
    }

    #[pyo3(signature = (upto=6, window=3, degree_bound=3))]
    fn valuation(&self, upto: usize, window: usize, degree_bound: usize) -> PyResult<Valuation> {
        phi(&self.0, &options(upto, window, degree_bound)).map(|(d, _)| Valuation(d)).map_err(approx_err)
    }

    fn __repr__(&self) -> String {
        match &self.0 {
            ApproxType::Principal(b) => format!("Approximation({b})"),
            ApproxType::Generated(n) => format!("Approximation(generated, {} balls)", n.prefix().len()),
        }
    }
}

/// Run the reference examples; returns `(name, passed, detail)` triples.
#[pyfunction]
#[pyo3(signature = (p, depth=5))]
fn examples(p: u64, depth: usize) -> PyResult<Vec<(String, bool, String)>> {
    let checks = run_examples(p, depth).map_err(PyValueError::new_err)?;
    Ok(checks.into_iter().map(|c| (c.name, c.passed, c.detail)).collect())
}

/// Compare two values; `-1`, `0` or `1`.
#[pyfunction]
fn compare(a: &Value, b: &Value) -> PyResult<i8> {
    Ok(match ext_cmp(&a.0, &b.0).map_err(value_err)? {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    })
}

#[pymodule]
fn pykxval(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Elem>()?;
    m.add_class::<Poly>()?;
    m.add_class::<Value>()?;
    m.add_class::<Valuation>()?;
    m.add_class::<Sequence>()?;
    m.add_class::<Approximation>()?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add("InconclusiveError", m.py().get_type::<InconclusiveError>())?;
    Ok(())
}
