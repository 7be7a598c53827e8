//! Property bodies and strategies shared by the proptest suite and the
//! acceptance runner.

#![allow(dead_code)]

use lcdt_core::concat::search_isometry;
use lcdt_core::dickson::dickson_poly;
use lcdt_core::dtcode::{build_tridiag, is_lcd_direct};
use lcdt_core::galois::{parse_element, parse_field, power_form};
use lcdt_core::{
    DTParams, Embedding, Error, FieldElement, FiniteField, LinearCode, Matrix, Poly,
    SpectralContext,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const FIELDS: [&str; 7] = ["2", "3", "2^2", "5", "7", "2^3", "3^2"];

pub type Outcome = Result<(), TestCaseError>;

pub fn ok<T>(r: Result<T, Error>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn field() -> impl Strategy<Value = FiniteField> {
    (0..FIELDS.len()).prop_map(|i| parse_field(FIELDS[i]).unwrap())
}

fn order(f: &FiniteField) -> u64 {
    f.order_u64().unwrap()
}

/// `(field, n, a, b)` with `b ≠ 0`.
pub fn dt_case(
    max_n: usize,
) -> impl Strategy<Value = (FiniteField, usize, FieldElement, FieldElement)> {
    (field(), 1..=max_n)
        .prop_flat_map(|(f, n)| {
            let q = order(&f);
            (Just(f), Just(n), 0..q, 1..q)
        })
        .prop_map(|(f, n, a, b)| {
            let (a, b) = (f.from_index(a), f.from_index(b));
            (f, n, a, b)
        })
}

/// A field and a `k x n` matrix of element indices.
pub fn generator_case() -> impl Strategy<Value = (FiniteField, Vec<Vec<u64>>)> {
    (field(), 1..=3usize, 1..=7usize).prop_flat_map(|(f, k, n)| {
        let q = order(&f);
        (
            Just(f),
            prop::collection::vec(prop::collection::vec(0..q, n), k),
        )
    })
}

fn rows_of(f: &FiniteField, rows: &[Vec<u64>]) -> Vec<Vec<FieldElement>> {
    rows.iter()
        .map(|r| r.iter().map(|&i| f.from_index(i)).collect())
        .collect()
}

/// The eigenvalue multiset expands to the characteristic polynomial, and
/// each listed eigenvalue is a root of it with the listed multiplicity.
pub fn spectrum_matches_char_poly(
    f: &FiniteField,
    n: usize,
    a: &FieldElement,
    b: &FieldElement,
) -> Outcome {
    let ctx = ok(SpectralContext::new(f, n))?;
    let spec = ok(ctx.spectrum(a, b))?;
    let t = ok(build_tridiag(&ok(DTParams::new(
        f,
        n,
        a.clone(),
        b.clone(),
    ))?))?;
    let cp = ok(ok(t.char_poly())?.map_into(&spec.emb))?;
    let sign = if n.is_multiple_of(2) {
        spec.ext.one()
    } else {
        -spec.ext.one()
    };
    prop_assert_eq!(spec.total_multiplicity(), n);
    prop_assert_eq!(&cp, &spec.expand().scale(&sign));
    if spec.ext.order_u64().is_some_and(|q| q <= 1 << 12) {
        prop_assert_eq!(
            ok(cp.roots_in(&Embedding::identity(&spec.ext)))?,
            spec.items.clone()
        );
    }
    Ok(())
}

/// `det(T - xI) = b^n E_n((a - x)/b)`; for `b = 1` this is `E_n(a - x)`.
pub fn char_poly_is_shifted_dickson(
    f: &FiniteField,
    n: usize,
    a: &FieldElement,
    b: &FieldElement,
) -> Outcome {
    let t = ok(build_tridiag(&ok(DTParams::new(
        f,
        n,
        a.clone(),
        b.clone(),
    ))?))?;
    let binv = ok(b.inv())?;
    let arg = (&Poly::constant(a.clone()) - &Poly::x(f)).scale(&binv);
    let want = ok(dickson_poly(n, f).compose(&arg))?.scale(&b.pow(n as u64));
    prop_assert_eq!(ok(t.char_poly())?, want);
    Ok(())
}

/// Dual dimension, double dual, hull against the intersection routine, and
/// the Gram-determinant LCD test for full-rank generators.
pub fn hull_and_dual(f: &FiniteField, rows: &[Vec<u64>]) -> Outcome {
    let g = ok(Matrix::from_rows(f, rows_of(f, rows)))?;
    let code = LinearCode::new(&g);
    let dual = code.dual();
    prop_assert_eq!(code.dimension() + dual.dimension(), code.length());
    prop_assert_eq!(&dual.dual(), &code);
    let hull = code.hull_dimension();
    prop_assert_eq!(hull, ok(code.intersection_dimension(&dual))?);
    prop_assert_eq!(hull, dual.hull_dimension());
    prop_assert_eq!(code.is_lcd(), hull == 0);
    if g.rank() == g.rows() {
        prop_assert_eq!(ok(is_lcd_direct(&g))?, hull == 0);
    }
    Ok(())
}

/// Weight counts sum to `q^k` and agree with encoding every message.
pub fn weights_sum_and_agree(f: &FiniteField, rows: &[Vec<u64>]) -> Outcome {
    let code = ok(LinearCode::from_rows(f, rows_of(f, rows)))?;
    let q = order(f);
    let k = code.dimension() as u32;
    let w = ok(code.weight_distribution(1 << 20))?;
    prop_assert_eq!(w.total(), q.pow(k));
    prop_assert_eq!(w.counts.get(&0).copied(), Some(1));
    let mut counts = std::collections::BTreeMap::new();
    for idx in 0..q.pow(k) {
        let msg: Vec<_> = (0..k).map(|j| f.from_index(idx / q.pow(j) % q)).collect();
        let word = ok(code.encode(&msg))?;
        *counts
            .entry(word.iter().filter(|x| !x.is_zero()).count())
            .or_insert(0u64) += 1;
    }
    prop_assert_eq!(&w.counts, &counts);
    Ok(())
}

pub const EXTENSIONS: [(&str, &str); 3] = [("2", "2^2"), ("2", "2^3"), ("3", "3^2")];

/// Extension index, isometry length, search seed, word length, and random
/// element indices for two words and a scalar.
pub fn linearity_case() -> impl Strategy<Value = (usize, usize, u64, Vec<(u64, u64)>, u64)> {
    (0..EXTENSIONS.len(), 0..2usize, any::<u64>(), 1..=4usize).prop_flat_map(
        |(e, extra, seed, len)| {
            let (_, ext) = EXTENSIONS[e];
            let q = order(&parse_field(ext).unwrap());
            let p = parse_field(ext).unwrap().characteristic();
            (
                Just(e),
                Just(extra),
                Just(seed),
                prop::collection::vec((0..q, 0..q), len),
                0..p,
            )
        },
    )
}

/// `π^{⊗L}` is additive and commutes with scalars from the base field.
pub fn isometry_is_linear(
    e: usize,
    extra: usize,
    seed: u64,
    pairs: &[(u64, u64)],
    c: u64,
) -> Outcome {
    let (base, ext) = EXTENSIONS[e];
    let (base, ext) = (parse_field(base).unwrap(), parse_field(ext).unwrap());
    let emb = ok(Embedding::new(&base, &ext))?;
    let n = emb.relative_degree() + extra + 1;
    let map = match search_isometry(&emb, n, 1, seed, 64) {
        Ok(m) => m,
        Err(Error::NotFound(_)) => return Err(TestCaseError::reject("no isometry drawn")),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let x: Vec<_> = pairs.iter().map(|p| ext.from_index(p.0)).collect();
    let y: Vec<_> = pairs.iter().map(|p| ext.from_index(p.1)).collect();
    let sum: Vec<_> = x.iter().zip(&y).map(|(u, v)| u + v).collect();
    let (px, py) = (ok(map.apply_word(&x))?, ok(map.apply_word(&y))?);
    let added: Vec<_> = px.iter().zip(&py).map(|(u, v)| u + v).collect();
    prop_assert_eq!(ok(map.apply_word(&sum))?, added);

    let cb = base.from_index(c);
    let ce = ok(emb.embed(&cb))?;
    let scaled: Vec<_> = x.iter().map(|u| u * &ce).collect();
    let want: Vec<_> = px.iter().map(|u| u * &cb).collect();
    prop_assert_eq!(ok(map.apply_word(&scaled))?, want);
    Ok(())
}

/// Emitted element strings parse back to the same element.
pub fn element_strings_round_trip(f: &FiniteField, idx: u64) -> Outcome {
    let x = f.from_index(idx);
    prop_assert_eq!(&ok(parse_element(f, &x.to_coeff_string()))?, &x);
    prop_assert_eq!(&ok(parse_element(f, &ok(power_form(&x))?))?, &x);
    let g = ok(parse_field(&f.spec()))?;
    prop_assert_eq!(&g, f);
    Ok(())
}

pub fn element_case() -> impl Strategy<Value = (FiniteField, u64)> {
    field().prop_flat_map(|f| {
        let q = order(&f);
        (Just(f), 0..q)
    })
}
