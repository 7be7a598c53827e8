use num_bigint::BigUint;

use super::embedding::Embedding;
use super::field::{FieldElement, FiniteField};
use super::prime_poly::{multiplicative_order_mod, prime_factors};
use crate::error::{Error, Result};

/// An element adjoined to a base field, together with the extension that
/// holds it.
#[derive(Clone, Debug)]
pub struct Adjoined {
    pub element: FieldElement,
    pub ext: FiniteField,
    pub emb: Embedding,
}

/// The degree-`t` extension of `base` with the default modulus (or `base`
/// itself when `t = 1`) and the deterministic embedding into it.
pub fn extension(base: &FiniteField, t: usize) -> Result<(FiniteField, Embedding)> {
    if t == 1 {
        return Ok((base.clone(), Embedding::identity(base)));
    }
    let ext = FiniteField::new(base.characteristic(), base.degree() * t, None)?;
    let emb = Embedding::new(base, &ext)?;
    Ok((ext, emb))
}

/// Degree of the smallest extension of `base` containing a primitive `k`-th
/// root of unity.
pub fn unity_degree(base: &FiniteField, k: u64) -> Result<usize> {
    let p = base.characteristic();
    if k == 0 || k.is_multiple_of(p) {
        return Err(Error::RootObstruction { k, p });
    }
    let q = base
        .order_u64()
        .ok_or_else(|| Error::FieldTooLarge(base.spec()))?;
    Ok(multiplicative_order_mod(q % k.max(1), k) as usize)
}

/// A primitive `k`-th root of unity in the smallest extension `F_{q^t}` of
/// `base` that has one.
pub fn primitive_root_of_unity(base: &FiniteField, k: u64) -> Result<Adjoined> {
    let t = unity_degree(base, k)?;
    let (ext, emb) = extension(base, t)?;
    let element = primitive_root_of_unity_in(&ext, k)?;
    Ok(Adjoined { element, ext, emb })
}

/// A primitive `k`-th root of unity inside `field`: the first candidate `x`
/// in index order for which `x^{(|field|-1)/k}` has order exactly `k`.
pub fn primitive_root_of_unity_in(field: &FiniteField, k: u64) -> Result<FieldElement> {
    let p = field.characteristic();
    if k == 0 || k.is_multiple_of(p) {
        return Err(Error::RootObstruction { k, p });
    }
    let group = field.order() - 1u32;
    let kk = BigUint::from(k);
    if &group % &kk != BigUint::from(0u32) {
        return Err(Error::NoEmbedding {
            sub: format!("mu_{k}"),
            sup: field.spec(),
        });
    }
    let cofactor = group / kk;
    let factors = prime_factors(k);
    let exact = |y: &FieldElement| factors.iter().all(|&l| !y.pow(k / l).is_one());
    (1u64..)
        .map(|i| field.from_index(i).pow_big(&cofactor))
        .find(|y| y.pow(k).is_one() && exact(y))
        .ok_or(Error::RootObstruction { k, p })
}

/// `μ` with `μ² = -1`: in `base` when `q ≡ 1 (mod 4)`, in `F_{q²}` when
/// `q ≡ 3 (mod 4)`, and `μ = 1` in characteristic 2.
pub fn sqrt_minus_one(base: &FiniteField) -> Result<Adjoined> {
    if base.characteristic() == 2 {
        return Ok(Adjoined {
            element: base.one(),
            ext: base.clone(),
            emb: Embedding::identity(base),
        });
    }
    primitive_root_of_unity(base, 4)
}
