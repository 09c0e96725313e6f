//! Built-in pseudo-Cauchy sequences over `F_p(t)` and its perfect hull.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basefield::{FieldSpec, KElem};
use crate::ordgroup::{CutId, QuasiCut, Rat};
use crate::parse::parse_poly;
use crate::pcs::{AlgWitness, PCSeq, PcsError};
use crate::poly::PolyK;

fn char_p(field: FieldSpec) -> Result<u64, PcsError> {
    match field {
        FieldSpec::RatP(_) => Err(PcsError::BadInput(format!("{field} has no parameter t"))),
        _ => Ok(field.p()),
    }
}

fn require_hull(field: FieldSpec) -> Result<u64, PcsError> {
    match field {
        FieldSpec::PerfectHull(p) => Ok(p.get()),
        _ => Err(PcsError::BadInput(format!("this sequence needs p-power roots of t, not available in {field}"))),
    }
}

fn t_pow(field: FieldSpec, e: &Rat) -> KElem {
    KElem::t_pow(field, e).expect("exponent in the value group")
}

fn p_pow(p: u64, e: usize) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

/// `a_i = Σ_{j≤i} t^{p^j}`, approaching a root of `x^p − x + t` that is not
/// in the field: `F(a_i) = t^{p^{i+1}}`.
pub fn artin_schreier_nt(field: FieldSpec, prefix_len: usize) -> Result<PCSeq, PcsError> {
    let p = char_p(field)?;
    let gen = Arc::new(move |i: usize| {
        (0..=i).fold(KElem::zero(field), |acc, j| &acc + &t_pow(field, &Rat::from_integer(p_pow(p, j))))
    });
    let key = parse_poly(field, &format!("x^{p} - x + t")).expect("well-formed");
    let witness = AlgWitness::new(key, QuasiCut::Gap(CutId::PlusInf))
        .with_closed_form(Arc::new(move |i| Rat::from_integer(p_pow(p, i + 1))));
    Ok(PCSeq::generated(field, gen, prefix_len)?
        .with_witness(witness)?
        .with_gamma_limit(QuasiCut::Gap(CutId::PlusInf))
        .with_label("artin_schreier_nt"))
}

/// `a_i = Σ_{j≤i} t^{−1/p^j}` in the perfect hull; `F = x^p − x − t^{−p}`
/// has `F(a_i) = −t^{−1/p^i}`, so its values increase to `0⁻`.
pub fn artin_schreier_vt(field: FieldSpec, prefix_len: usize) -> Result<PCSeq, PcsError> {
    let p = require_hull(field)?;
    let gen = Arc::new(move |i: usize| {
        (0..=i).fold(KElem::zero(field), |acc, j| &acc + &t_pow(field, &Rat::new(BigInt::from(-1), p_pow(p, j))))
    });
    let key = parse_poly(field, &format!("x^{p} - x - t^(-{p})")).expect("well-formed");
    let witness = AlgWitness::new(key, QuasiCut::Gap(CutId::Below(Rat::zero())))
        .with_closed_form(Arc::new(move |i| Rat::new(BigInt::from(-1), p_pow(p, i))));
    Ok(PCSeq::generated(field, gen, prefix_len)?
        .with_witness(witness)?
        .with_gamma_limit(QuasiCut::Gap(CutId::Below(Rat::zero())))
        .with_label("artin_schreier_vt"))
}

/// Positions and values of the nonzero digits, in order.
fn nonzero_digits(digit: impl Fn(usize) -> u64, count: usize) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(count);
    let mut j = 0;
    while out.len() < count {
        let d = digit(j);
        if d != 0 {
            out.push((j, d));
        }
        j += 1;
    }
    out
}

fn partial_sum(field: FieldSpec, terms: &[(usize, u64)]) -> KElem {
    terms.iter().fold(KElem::zero(field), |acc, &(j, d)| {
        &acc + &(&KElem::from_int(field, d as i64) * &t_pow(field, &Rat::from_integer(j.into())))
    })
}

/// Partial sums of `η = Σ b_j t^j` with seeded random digits `b_j ∈ F_p`,
/// one term for each nonzero digit so that consecutive distances strictly
/// increase. Such an `η` is almost surely transcendental over the field.
pub fn random_digits(field: FieldSpec, seed: u64, prefix_len: usize) -> Result<PCSeq, PcsError> {
    let p = char_p(field)?;
    let digits = move |count: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        let mut j = 0;
        while out.len() < count {
            let d = rng.gen_range(0..p);
            if d != 0 {
                out.push((j, d));
            }
            j += 1;
        }
        out
    };
    let gen = Arc::new(move |i: usize| partial_sum(field, &digits(i + 1)));
    Ok(PCSeq::generated(field, gen, prefix_len)?
        .with_gamma_limit(QuasiCut::Gap(CutId::PlusInf))
        .with_label(format!("random_digits(seed={seed})")))
}

/// Partial sums of `η = Σ b_j t^j` whose digits are `head` followed by
/// `period` repeated forever. Then `η ∈ F_p(t)` and the sequence carries
/// the witness `x − η`.
pub fn periodic_digits(field: FieldSpec, head: &[u64], period: &[u64], prefix_len: usize) -> Result<PCSeq, PcsError> {
    let p = char_p(field)?;
    if period.iter().all(|d| d % p == 0) {
        return Err(PcsError::BadInput("the repeating block needs a nonzero digit".into()));
    }
    let head: Vec<u64> = head.iter().map(|d| d % p).collect();
    let period: Vec<u64> = period.iter().map(|d| d % p).collect();
    let (h, l) = (head.len(), period.len());
    let digit = {
        let (head, period) = (head.clone(), period.clone());
        move |j: usize| if j < h { head[j] } else { period[(j - h) % l] }
    };
    let gen = Arc::new(move |i: usize| partial_sum(field, &nonzero_digits(&digit, i + 1)));

    // η = Σ head_j t^j + t^h · (Σ period_j t^j) / (1 − t^l)
    let poly_in_t = |ds: &[u64], shift: usize| -> KElem {
        let terms: Vec<(usize, u64)> = ds.iter().enumerate().map(|(j, &d)| (j + shift, d)).collect();
        partial_sum(field, &terms)
    };
    let one_minus = &KElem::one(field) - &t_pow(field, &Rat::from_integer(l.into()));
    let eta = &poly_in_t(&head, 0) + &(&poly_in_t(&period, h) / &one_minus);
    let witness = AlgWitness::new(PolyK::linear(&eta), QuasiCut::Gap(CutId::PlusInf));
    Ok(PCSeq::generated(field, gen, prefix_len)?
        .with_witness(witness)?
        .with_gamma_limit(QuasiCut::Gap(CutId::PlusInf))
        .with_label("periodic_digits"))
}

/// A sequence converging to `center` at distances increasing to the given
/// cut: `a_i = c + t^{q − p^{−(i+1)}}` for `q⁻` (perfect hull only) and
/// `a_i = c + t^{i+1}` for `∞`. Carries the witness `x − c`.
pub fn cut_approach(field: FieldSpec, center: &KElem, cut: &CutId, prefix_len: usize) -> Result<PCSeq, PcsError> {
    char_p(field)?;
    let c = center.clone();
    let (gen, limit): (Arc<dyn Fn(usize) -> KElem + Send + Sync>, QuasiCut) = match cut {
        CutId::PlusInf => (
            Arc::new(move |i: usize| &c + &t_pow(field, &Rat::from_integer((i as i64 + 1).into()))),
            QuasiCut::Gap(CutId::PlusInf),
        ),
        CutId::Below(q) => {
            let p = require_hull(field)?;
            if !field.in_value_group(q) {
                return Err(PcsError::BadInput(format!("{q} is not in the value group of {field}")));
            }
            let q = q.clone();
            let q2 = q.clone();
            (
                Arc::new(move |i: usize| &c + &t_pow(field, &(&q2 - Rat::new(BigInt::one(), p_pow(p, i + 1))))),
                QuasiCut::Gap(CutId::Below(q)),
            )
        }
        CutId::Above(_) => {
            return Err(PcsError::BadInput("increasing distances cannot approach a cut from above".into()))
        }
    };
    let witness = AlgWitness::new(PolyK::linear(center), limit.clone());
    Ok(PCSeq::generated(field, gen, prefix_len)?
        .with_witness(witness)?
        .with_gamma_limit(limit)
        .with_label(format!("cut_approach({center}, {cut})")))
}
