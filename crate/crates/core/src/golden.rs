//! The four reference sequences over `F_p(t)^{1/p^∞}` (one of each type)
//! and the exact values they must produce.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basefield::{FieldSpec, KElem, ValueQ};
use crate::generators;
use crate::ordgroup::{CutId, ExtScalar, Rat};
use crate::parse::parse_elem;
use crate::pcs::{observed_values, psi, value_behavior, AnalysisOptions, PCSeq, StabilityReport};
use crate::poly::{sample_poly_with, PolyK};
use crate::valuation::{val_apply, ValDesc, ValType};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> GoldenCheck {
    GoldenCheck { name: name.into(), passed, detail: detail.into() }
}

/// `[t, t + t²]`.
pub fn rt_sequence(field: FieldSpec) -> PCSeq {
    let a = parse_elem(field, "t").expect("field has t");
    let b = parse_elem(field, "t + t^2").expect("field has t");
    PCSeq::finite(vec![a, b]).expect("valid").with_label("rt example")
}

/// Seed of the digit stream used for the transcendental example.
pub const AL_SEED: u64 = 2024;

/// Run every check at prime `p` with sequences inspected up to index `depth`.
pub fn run_examples(p: u64, depth: usize) -> Result<Vec<GoldenCheck>, String> {
    let field = FieldSpec::perfect_hull(p).map_err(|e| e.to_string())?;
    if depth < 2 {
        return Err("depth must be at least 2".into());
    }
    let opts = AnalysisOptions { upto: depth, ..Default::default() };
    let mut out = Vec::new();
    nt_checks(field, depth, &opts, &mut out);
    vt_checks(field, depth, &opts, &mut out);
    rt_checks(field, &opts, &mut out);
    al_checks(field, &mut out);
    Ok(out)
}

fn p_pow(p: u64, e: usize) -> Rat {
    Rat::from_integer(BigInt::from(p).pow(e as u32))
}

fn values_match(seq: &PCSeq, key: &PolyK, depth: usize, expect: impl Fn(usize) -> Rat) -> (bool, String) {
    match observed_values(seq, key, depth) {
        Ok(vals) => {
            let want: Vec<ValueQ> = (0..=depth).map(|i| ValueQ::Fin(expect(i))).collect();
            let shown: Vec<String> = vals.iter().map(ToString::to_string).collect();
            (vals == want, format!("[{}]", shown.join(", ")))
        }
        Err(e) => (false, e.to_string()),
    }
}

fn psi_checks(
    tag: &str,
    seq: &PCSeq,
    opts: &AnalysisOptions,
    want: ValType,
    key_value: ExtScalar,
    out: &mut Vec<GoldenCheck>,
) {
    match psi(seq, opts) {
        Ok((desc, ty)) => {
            let gamma = desc.gamma().map(ToString::to_string).unwrap_or_default();
            out.push(check(format!("{tag}: type"), ty == want, format!("{ty}, gamma={gamma}")));
            let key = &seq.witness().expect("golden sequences carry witnesses").key;
            match val_apply(&desc, key) {
                Ok(v) => out.push(check(format!("{tag}: value of F"), v == key_value, v.to_string())),
                Err(e) => out.push(check(format!("{tag}: value of F"), false, e.to_string())),
            }
        }
        Err(e) => out.push(check(format!("{tag}: type"), false, e.to_string())),
    }
}

fn nt_checks(field: FieldSpec, depth: usize, opts: &AnalysisOptions, out: &mut Vec<GoldenCheck>) {
    let p = field.p();
    let seq = match generators::artin_schreier_nt(field, 3) {
        Ok(s) => s,
        Err(e) => return out.push(check("nt: build", false, e.to_string())),
    };
    let key = seq.witness().unwrap().key.clone();
    let (ok, detail) = values_match(&seq, &key, depth, |i| p_pow(p, i + 1));
    out.push(check("nt: v(F(a_i)) = p^(i+1)", ok, detail));
    psi_checks("nt", &seq, opts, ValType::NT, ExtScalar::Infinity, out);
}

fn vt_checks(field: FieldSpec, depth: usize, opts: &AnalysisOptions, out: &mut Vec<GoldenCheck>) {
    let p = field.p();
    let seq = match generators::artin_schreier_vt(field, 3) {
        Ok(s) => s,
        Err(e) => return out.push(check("vt: build", false, e.to_string())),
    };
    let key = seq.witness().unwrap().key.clone();
    let (ok, detail) = values_match(&seq, &key, depth, |i| -(Rat::from_integer(1.into()) / p_pow(p, i)));
    out.push(check("vt: v(F(a_i)) = -1/p^i", ok, detail));
    let unit = ExtScalar::cut_unit(CutId::Below(Rat::from_integer(0.into())));
    psi_checks("vt", &seq, opts, ValType::VT, unit.clone(), out);
    if let Ok((desc, _)) = psi(&seq, opts) {
        let shown = desc.gamma().map(ToString::to_string).unwrap_or_default();
        out.push(check("vt: gamma prints as 0-", shown == "0-", shown));
    }
}

fn rt_checks(field: FieldSpec, opts: &AnalysisOptions, out: &mut Vec<GoldenCheck>) {
    let seq = rt_sequence(field);
    let t = KElem::t(field).expect("field has t");
    let direct = ValDesc::monomial(t.clone(), ExtScalar::Fin(Rat::from_integer(2.into())));
    match psi(&seq, opts) {
        Ok((desc, ty)) => {
            let same_shape = matches!(&desc, ValDesc::Monomial { a, gamma } if *a == t && Some(gamma) == direct.gamma());
            out.push(check("rt: psi is v_{t,2}", same_shape && ty == ValType::RT, format!("{ty}, {desc}")));
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let disagreements = (0..50)
                .map(|_| sample_poly_with(&mut rng, field, 4, 2))
                .filter(|f| val_apply(&desc, f) != val_apply(&direct, f))
                .count();
            out.push(check(
                "rt: agrees with v_{t,2} on 50 polynomials",
                disagreements == 0,
                format!("{disagreements} disagreements"),
            ));
        }
        Err(e) => out.push(check("rt: psi is v_{t,2}", false, e.to_string())),
    }
}

fn al_checks(field: FieldSpec, out: &mut Vec<GoldenCheck>) {
    let seq = match generators::random_digits(field, AL_SEED, 3) {
        Ok(s) => s,
        Err(e) => return out.push(check("al: build", false, e.to_string())),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut settled = 0;
    let total = 20;
    for _ in 0..total {
        let f = sample_poly_with(&mut rng, field, 3, 2);
        if let Ok(StabilityReport::UltimatelyConstant { .. }) = value_behavior(&seq, &f, 29, 3) {
            settled += 1;
        }
    }
    out.push(check(
        "al: degree <= 3 polynomials settle within prefix 30",
        settled == total,
        format!("{settled}/{total}"),
    ));
    let opts = AnalysisOptions { upto: 29, ..Default::default() };
    match psi(&seq, &opts) {
        Ok((desc, ty)) => out.push(check("al: type", ty == ValType::AL, desc.to_string())),
        Err(e) => out.push(check("al: type", false, e.to_string())),
    }
}
