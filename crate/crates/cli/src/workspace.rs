//! JSON workspaces: one field plus named sequences, valuations and polynomials.
//!
//! ```json
//! {
//!   "field": {"kind": "perfect_hull", "p": 2},
//!   "sequences": {
//!     "nt_seq": {"seq": {"kind": "generator", "name": "artin_schreier_nt"},
//!                "witness": {"F": "x^2+x+t", "limit": "inf"}},
//!     "rt_seq": {"seq": {"kind": "finite", "elements": ["t", "t + t^2"]}}
//!   },
//!   "valuations": {"v_t2": "monomial a=\"t\" gamma=\"2\"", "nt_val": {"kind": "psi", "seq": "nt_seq"}},
//!   "polynomials": {"F": "x^2+x+t"}
//! }
//! ```
//!
//! `"witness": null` drops the witness a built-in generator would attach.
//! A document with top-level `seq` (and optional `witness`) instead of
//! `sequences` defines a single sequence named `seq`.

use std::collections::BTreeMap;
use std::sync::Arc;

use kxval::basefield::FieldSpec;
use kxval::generators;
use kxval::golden::{rt_sequence, AL_SEED};
use kxval::ordgroup::{CutId, ExtScalar, QuasiCut};
use kxval::parse::{parse_elem, parse_poly};
use kxval::pcs::{psi, AlgWitness, AnalysisOptions, PCSeq, StableEvaluator};
use kxval::poly::PolyK;
use kxval::valuation::ValDesc;
use serde_json::{Map, Value};

use crate::descr::{parse_descriptor, DescrSpec};
use crate::CliError;

/// Prefix length used when a generator entry gives none.
pub const DEFAULT_PREFIX: usize = 3;

pub struct Workspace {
    pub field: FieldSpec,
    pub sequences: BTreeMap<String, PCSeq>,
    pub valuations: BTreeMap<String, DescrSpec>,
    pub polynomials: BTreeMap<String, PolyK>,
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a str, CliError> {
    obj.get(key).and_then(Value::as_str).ok_or_else(|| domain(format!("{ctx}: missing string field \"{key}\"")))
}

fn get_digits(obj: &Map<String, Value>, key: &str) -> Result<Vec<u64>, CliError> {
    match obj.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Array(xs)) => xs
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| domain(format!("\"{key}\" must list nonnegative integers"))))
            .collect(),
        Some(_) => Err(domain(format!("\"{key}\" must be an array"))),
    }
}

impl Workspace {
    pub fn empty(field: FieldSpec) -> Self {
        Workspace { field, sequences: BTreeMap::new(), valuations: BTreeMap::new(), polynomials: BTreeMap::new() }
    }

    /// The four reference sequences over `F_p(t)^{1/p^∞}` and their valuations:
    /// `rt_seq`, `nt_seq`, `vt_seq`, `al_seq`, `v_t2`, `nt_val`, `vt_val`, `al_val`.
    pub fn builtin(p: u64) -> Result<Self, CliError> {
        let field = FieldSpec::perfect_hull(p).map_err(|e| domain(e.to_string()))?;
        let mut ws = Workspace::empty(field);
        let pcs = |e: kxval::pcs::PcsError| domain(e.to_string());
        ws.sequences.insert("rt_seq".into(), rt_sequence(field).with_label("rt_seq"));
        ws.sequences.insert("nt_seq".into(), generators::artin_schreier_nt(field, DEFAULT_PREFIX).map_err(pcs)?.with_label("nt_seq"));
        ws.sequences.insert("vt_seq".into(), generators::artin_schreier_vt(field, DEFAULT_PREFIX).map_err(pcs)?.with_label("vt_seq"));
        ws.sequences.insert("al_seq".into(), generators::random_digits(field, AL_SEED, 30).map_err(pcs)?.with_label("al_seq"));
        let t = parse_elem(field, "t").map_err(|e| domain(e.to_string()))?;
        ws.valuations.insert("v_t2".into(), DescrSpec::Monomial { a: t, gamma: ExtScalar::Fin(kxval::ordgroup::int(2)) });
        for (name, seq) in [("nt_val", "nt_seq"), ("vt_val", "vt_seq"), ("al_val", "al_seq")] {
            ws.valuations.insert(name.into(), DescrSpec::Psi { seq: seq.into() });
        }
        Ok(ws)
    }

    pub fn from_json_str(text: &str) -> Result<Self, CliError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| domain(format!("invalid JSON: {e}")))?;
        Self::from_json(&doc)
    }

    pub fn from_json(doc: &Value) -> Result<Self, CliError> {
        let top = doc.as_object().ok_or_else(|| domain("workspace must be a JSON object"))?;
        let field = parse_field(top.get("field").ok_or_else(|| domain("workspace needs a \"field\""))?)?;
        let mut ws = Workspace::empty(field);

        if let Some(polys) = top.get("polynomials") {
            let polys = polys.as_object().ok_or_else(|| domain("\"polynomials\" must be an object"))?;
            for (name, v) in polys {
                let text = v.as_str().ok_or_else(|| domain(format!("polynomial {name} must be a string")))?;
                ws.polynomials.insert(name.clone(), parse_poly(field, text).map_err(|e| domain(format!("{name}: {e}")))?);
            }
        }
        if top.contains_key("seq") {
            let seq = build_sequence(field, "seq", doc)?;
            ws.sequences.insert("seq".into(), seq);
        }
        if let Some(seqs) = top.get("sequences") {
            let seqs = seqs.as_object().ok_or_else(|| domain("\"sequences\" must be an object"))?;
            for (name, entry) in seqs {
                let seq = build_sequence(field, name, entry)?;
                ws.sequences.insert(name.clone(), seq);
            }
        }
        if let Some(vals) = top.get("valuations") {
            let vals = vals.as_object().ok_or_else(|| domain("\"valuations\" must be an object"))?;
            for (name, entry) in vals {
                let spec = match entry {
                    Value::String(s) => parse_descriptor(field, s)?,
                    Value::Object(obj) => descriptor_from_object(field, obj)?,
                    _ => return Err(domain(format!("valuation {name} must be a string or an object"))),
                };
                ws.valuations.insert(name.clone(), spec);
            }
        }
        for (name, spec) in &ws.valuations {
            if let Some(s) = spec.sequence() {
                if !ws.sequences.contains_key(s) {
                    return Err(domain(format!("valuation {name} refers to unknown sequence {s}")));
                }
            }
        }
        Ok(ws)
    }

    pub fn sequence(&self, name: &str) -> Result<&PCSeq, CliError> {
        self.sequences.get(name).ok_or_else(|| domain(format!("unknown sequence {name}")))
    }

    /// A polynomial given by name or as a literal.
    pub fn polynomial(&self, text: &str) -> Result<PolyK, CliError> {
        if let Some(f) = self.polynomials.get(text) {
            return Ok(f.clone());
        }
        parse_poly(self.field, text).map_err(|e| domain(format!("{text}: {e}")))
    }

    /// A valuation given by name or as a descriptor literal.
    pub fn valuation(&self, text: &str, opts: &AnalysisOptions) -> Result<(ValDesc, DescrSpec), CliError> {
        let spec = match self.valuations.get(text) {
            Some(spec) => spec.clone(),
            None if text.contains('=') => parse_descriptor(self.field, text)?,
            None => return Err(domain(format!("unknown valuation {text}"))),
        };
        Ok((self.build(&spec, opts)?, spec))
    }

    pub fn build(&self, spec: &DescrSpec, opts: &AnalysisOptions) -> Result<ValDesc, CliError> {
        match spec {
            DescrSpec::Monomial { a, gamma } => Ok(ValDesc::monomial(a.clone(), gamma.clone())),
            DescrSpec::Augmented { key, gamma, seq } => {
                let base = Arc::new(StableEvaluator { seq: self.sequence(seq)?.clone(), opts: opts.clone() });
                ValDesc::augmented(key.clone(), gamma.clone(), base).map_err(|e| domain(e.to_string()))
            }
            DescrSpec::Psi { seq } => Ok(psi(self.sequence(seq)?, opts).map_err(CliError::from_pcs)?.0),
        }
    }
}

fn parse_field(v: &Value) -> Result<FieldSpec, CliError> {
    let obj = v.as_object().ok_or_else(|| domain("\"field\" must be an object"))?;
    let kind = get_str(obj, "kind", "field")?;
    let p = obj.get("p").and_then(Value::as_u64).ok_or_else(|| domain("field: missing integer \"p\""))?;
    FieldSpec::from_kind(kind, p).map_err(|e| domain(e.to_string()))
}

fn descriptor_from_object(field: FieldSpec, obj: &Map<String, Value>) -> Result<DescrSpec, CliError> {
    let kind = get_str(obj, "kind", "valuation")?;
    let gamma = || -> Result<ExtScalar, CliError> {
        get_str(obj, "gamma", "valuation")?.parse().map_err(|e| domain(format!("gamma: {e}")))
    };
    match kind {
        "monomial" => {
            let a = parse_elem(field, get_str(obj, "a", "monomial")?).map_err(|e| domain(e.to_string()))?;
            Ok(DescrSpec::Monomial { a, gamma: gamma()? })
        }
        "augmented" => {
            let key = parse_poly(field, get_str(obj, "F", "augmented")?).map_err(|e| domain(e.to_string()))?;
            Ok(DescrSpec::Augmented { key, gamma: gamma()?, seq: get_str(obj, "seq", "augmented")?.to_string() })
        }
        "psi" | "limit" => Ok(DescrSpec::Psi { seq: get_str(obj, "seq", kind)?.to_string() }),
        other => Err(domain(format!("unknown valuation kind {other}"))),
    }
}

fn build_sequence(field: FieldSpec, name: &str, entry: &Value) -> Result<PCSeq, CliError> {
    let entry = entry.as_object().ok_or_else(|| domain(format!("sequence {name} must be an object")))?;
    let spec = entry
        .get("seq")
        .and_then(Value::as_object)
        .ok_or_else(|| domain(format!("sequence {name}: missing object \"seq\"")))?;
    let pcs = |e: kxval::pcs::PcsError| domain(format!("sequence {name}: {e}"));
    let kind = get_str(spec, "kind", name)?;
    let mut seq = match kind {
        "finite" => {
            let elems = spec
                .get("elements")
                .and_then(Value::as_array)
                .ok_or_else(|| domain(format!("sequence {name}: missing array \"elements\"")))?;
            let elems = elems
                .iter()
                .map(|e| {
                    let s = e.as_str().ok_or_else(|| domain(format!("sequence {name}: elements must be strings")))?;
                    parse_elem(field, s).map_err(|e| domain(format!("sequence {name}: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            PCSeq::finite(elems).map_err(pcs)?
        }
        "generator" => {
            let prefix = spec.get("prefix").and_then(Value::as_u64).map_or(DEFAULT_PREFIX, |n| n as usize);
            match get_str(spec, "name", name)? {
                "artin_schreier_nt" => generators::artin_schreier_nt(field, prefix).map_err(pcs)?,
                "artin_schreier_vt" => generators::artin_schreier_vt(field, prefix).map_err(pcs)?,
                "random_digits" => {
                    let seed = spec.get("seed").and_then(Value::as_u64).unwrap_or(AL_SEED);
                    generators::random_digits(field, seed, prefix).map_err(pcs)?
                }
                "periodic_digits" => {
                    generators::periodic_digits(field, &get_digits(spec, "head")?, &get_digits(spec, "period")?, prefix)
                        .map_err(pcs)?
                }
                "cut_approach" => {
                    let center = parse_elem(field, get_str(spec, "center", name)?).map_err(|e| domain(e.to_string()))?;
                    let cut: CutId = match get_str(spec, "cut", name)? {
                        "inf" | "inf-" => CutId::PlusInf,
                        s => s.parse().map_err(|e| domain(format!("sequence {name}: cut: {e}")))?,
                    };
                    generators::cut_approach(field, &center, &cut, prefix).map_err(pcs)?
                }
                other => return Err(domain(format!("sequence {name}: unknown generator {other}"))),
            }
        }
        other => return Err(domain(format!("sequence {name}: unknown kind {other}"))),
    };
    if let Some(limit) = spec.get("limit") {
        let limit: QuasiCut = limit
            .as_str()
            .ok_or_else(|| domain(format!("sequence {name}: \"limit\" must be a string")))?
            .parse()
            .map_err(|e| domain(format!("sequence {name}: limit: {e}")))?;
        seq = seq.with_gamma_limit(limit);
    }
    if let Some(Value::Null) = entry.get("witness") {
        seq = seq.without_witness();
    } else if let Some(w) = entry.get("witness") {
        let w = w.as_object().ok_or_else(|| domain(format!("sequence {name}: \"witness\" must be an object")))?;
        let key = parse_poly(field, get_str(w, "F", name)?).map_err(|e| domain(format!("sequence {name}: {e}")))?;
        let limit: QuasiCut = get_str(w, "limit", name)?
            .parse()
            .map_err(|e| domain(format!("sequence {name}: witness limit: {e}")))?;
        seq = seq.with_witness(AlgWitness::new(key, limit)).map_err(pcs)?;
    }
    Ok(seq.with_label(name))
}
