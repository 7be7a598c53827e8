//! Text forms for fields and elements.
//!
//! Fields: `p^s/c0,c1,...,cs` (little-endian monic modulus), `p^s` (default
//! modulus) or a bare prime `p`. Elements: comma-separated little-endian
//! coefficients (`1,1`), `g^k` for the `k`-th power of the field's primitive
//! element, or `0`.

use super::field::{FieldElement, FiniteField};
use crate::error::{Error, Result};

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

pub fn parse_field(spec: &str) -> Result<FiniteField> {
    let spec = spec.trim();
    let (head, modulus) = match spec.split_once('/') {
        Some((h, m)) => (h, Some(m)),
        None => (spec, None),
    };
    let (p, s) = match head.split_once('^') {
        Some((p, s)) => (parse_u64(p, "characteristic")?, parse_u64(s, "degree")?),
        None => (parse_u64(head, "characteristic")?, 1),
    };
    let modulus = modulus
        .map(|m| {
            m.split(',')
                .map(|c| parse_u64(c, "modulus coefficient"))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    FiniteField::new(p, s as usize, modulus.as_deref())
}

pub fn parse_element(field: &FiniteField, text: &str) -> Result<FieldElement> {
    let text = text.trim();
    if let Some(exp) = text.strip_prefix("g^") {
        let k = parse_u64(exp, "exponent")?;
        return Ok(field.primitive_element()?.pow(k));
    }
    if text == "g" {
        return field.primitive_element();
    }
    let coeffs = text
        .split(',')
        .map(|c| parse_u64(c, "coefficient"))
        .collect::<Result<Vec<_>>>()?;
    field.element(&coeffs)
}

/// `g^k` rendering by exhaustive discrete log (small fields only); `0` for zero.
pub fn power_form(x: &FieldElement) -> Result<String> {
    if x.is_zero() {
        return Ok("0".into());
    }
    let g = x.field().primitive_element()?;
    let q = x.field().enumerable_order()?;
    let mut acc = x.field().one();
    for k in 0..q - 1 {
        if &acc == x {
            return Ok(format!("g^{k}"));
        }
        acc = &acc * &g;
    }
    unreachable!("primitive element generates the multiplicative group")
}

/// Exponent `k` with `x = g^k`, if `x` is nonzero.
pub fn discrete_log(x: &FieldElement) -> Result<Option<u64>> {
    let s = power_form(x)?;
    Ok(s.strip_prefix("g^")
        .map(|k| k.parse().expect("rendered exponent")))
}
