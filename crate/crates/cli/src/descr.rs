//! Text descriptors for valuations.
//!
//! - `monomial a="t" gamma="2"`
//! - `augmented F="x^2 + x + t" gamma="inf" seq=nt_seq`
//! - `psi seq=vt_seq` (the valuation of a named sequence)
//! - `limit seq=al_seq degree_bound=3 prefix=7` (printed for transcendental
//!   type; read back as `psi`)

use kxval::basefield::{FieldSpec, KElem};
use kxval::ordgroup::ExtScalar;
use kxval::parse::{parse_elem, parse_poly};
use kxval::poly::PolyK;
use kxval::valuation::ValDesc;

use crate::CliError;

#[derive(Clone, Debug)]
pub enum DescrSpec {
    Monomial { a: KElem, gamma: ExtScalar },
    Augmented { key: PolyK, gamma: ExtScalar, seq: String },
    Psi { seq: String },
}

impl DescrSpec {
    pub fn sequence(&self) -> Option<&str> {
        match self {
            DescrSpec::Monomial { .. } => None,
            DescrSpec::Augmented { seq, .. } | DescrSpec::Psi { seq } => Some(seq),
        }
    }
}

fn bad(text: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Domain(format!("descriptor `{text}`: {why}"))
}

/// Split `kind k1="v 1" k2=v2` into the kind and its key/value pairs.
fn tokenize(text: &str) -> Result<(String, Vec<(String, String)>), CliError> {
    let text_t = text.trim();
    let (kind, mut rest) = match text_t.find(char::is_whitespace) {
        Some(i) => (&text_t[..i], text_t[i..].trim_start()),
        None => (text_t, ""),
    };
    let mut pairs = Vec::new();
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or_else(|| bad(text, "expected key=value"))?;
        let key = rest[..eq].trim().to_string();
        let after = &rest[eq + 1..];
        let (value, tail) = if let Some(quoted) = after.strip_prefix('"') {
            let end = quoted.find('"').ok_or_else(|| bad(text, "unterminated quote"))?;
            (&quoted[..end], &quoted[end + 1..])
        } else {
            let end = after.find(char::is_whitespace).unwrap_or(after.len());
            (&after[..end], &after[end..])
        };
        pairs.push((key, value.to_string()));
        rest = tail.trim_start();
    }
    Ok((kind.to_string(), pairs))
}

pub fn parse_descriptor(field: FieldSpec, text: &str) -> Result<DescrSpec, CliError> {
    let (kind, pairs) = tokenize(text)?;
    let get = |key: &str| -> Result<&str, CliError> {
        pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| bad(text, format!("missing {key}=")))
    };
    let gamma = || -> Result<ExtScalar, CliError> { get("gamma")?.parse().map_err(|e| bad(text, e)) };
    match kind.as_str() {
        "monomial" => Ok(DescrSpec::Monomial { a: parse_elem(field, get("a")?).map_err(|e| bad(text, e))?, gamma: gamma()? }),
        "augmented" => Ok(DescrSpec::Augmented {
            key: parse_poly(field, get("F")?).map_err(|e| bad(text, e))?,
            gamma: gamma()?,
            seq: get("seq")?.to_string(),
        }),
        "psi" | "limit" => Ok(DescrSpec::Psi { seq: get("seq")?.to_string() }),
        other => Err(bad(text, format!("unknown kind {other}"))),
    }
}

/// Descriptor text for a valuation whose coefficient data come from `seq`.
pub fn render(desc: &ValDesc, seq: Option<&str>) -> String {
    let seq = seq.unwrap_or("?");
    match desc {
        ValDesc::Monomial { .. } => desc.to_string(),
        ValDesc::Augmented { key, gamma, .. } => format!("augmented F=\"{key}\" gamma=\"{gamma}\" seq={seq}"),
        ValDesc::LimitOfFamily { certificate, .. } => {
            format!("limit seq={seq} degree_bound={} prefix={}", certificate.degree_bound, certificate.prefix)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_quoted_values() {
        let (kind, pairs) = tokenize(r#"augmented F="x^2 + x + t" gamma="0-" seq=vt"#).unwrap();
        assert_eq!(kind, "augmented");
        assert_eq!(pairs[0], ("F".to_string(), "x^2 + x + t".to_string()));
        assert_eq!(pairs[2], ("seq".to_string(), "vt".to_string()));
        assert!(tokenize(r#"monomial a="t"#).is_err());
    }

    #[test]
    fn monomial_round_trip() {
        let field = FieldSpec::perfect_hull(2).unwrap();
        let text = r#"monomial a="t + t^(1/2)" gamma="3/2""#;
        let DescrSpec::Monomial { a, gamma } = parse_descriptor(field, text).unwrap() else { panic!() };
        let desc = ValDesc::monomial(a, gamma);
        let again = render(&desc, None);
        assert!(matches!(parse_descriptor(field, &again).unwrap(), DescrSpec::Monomial { .. }));
        assert_eq!(again, desc.to_string());
    }
}
