//! Trace-coefficient isometries `π(x) = (Tr(a_1 x), ..., Tr(a_n x))` from
//! `F_{q^s}` to `F_q^n`, and concatenation of codes over `F_{q^s}` through them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::Matrix;
use crate::codes::{LinearCode, DEFAULT_BUDGET};
use crate::dtcode::{dt_generator, is_lcd_theorem, DTParams};
use crate::error::{Error, Result};
use crate::galois::{Embedding, FieldElement};

/// A validated isometry. `inner_code` is the image `π(F_{q^s})`.
#[derive(Clone, Debug)]
pub struct IsometryMap {
    emb: Embedding,
    coeffs: Vec<FieldElement>,
    inner_code: LinearCode,
    inner_distance: usize,
}

impl IsometryMap {
    pub fn emb(&self) -> &Embedding {
        &self.emb
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn target_length(&self) -> usize {
        self.coeffs.len()
    }

    pub fn inner_code(&self) -> &LinearCode {
        &self.inner_code
    }

    pub fn inner_distance(&self) -> usize {
        self.inner_distance
    }

    /// `π(x)`.
    pub fn apply(&self, x: &FieldElement) -> Result<Vec<FieldElement>> {
        self.coeffs
            .iter()
            .map(|a| self.emb.trace(&a.try_mul(x)?))
            .collect()
    }

    /// `π^{⊗L}`: blockwise application to a word of length `L`.
    pub fn apply_word(&self, word: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let mut out = Vec::with_capacity(word.len() * self.coeffs.len());
        for x in word {
            out.extend(self.apply(x)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base_field": self.emb.sub().spec(),
            "coeffs": self.coeffs.iter().map(|c| c.to_coeff_string()).collect::<Vec<_>>(),
            "ext_field": self.emb.sup().spec(),
            "inner": {
                "d": self.inner_distance,
                "k": self.inner_code.dimension(),
                "n": self.inner_code.length(),
            },
        })
    }
}

fn check_shape(emb: &Embedding, coeffs: &[FieldElement]) -> Result<usize> {
    let s = emb.relative_degree();
    if s < 2 {
        return Err(Error::DimensionMismatch(
            "isometries need an extension of degree at least 2".into(),
        ));
    }
    if coeffs.len() < s {
        return Err(Error::LengthTooShort { n: coeffs.len(), s });
    }
    for c in coeffs {
        emb.sup().check_same(c.field())?;
    }
    Ok(s)
}

/// `Σ_k Tr(a_k x)·Tr(a_k y) = Tr(xy)` on all pairs of polynomial-basis
/// elements, which by bilinearity is the identity for all `x, y`.
pub fn trace_form_holds(emb: &Embedding, coeffs: &[FieldElement]) -> Result<bool> {
    check_shape(emb, coeffs)?;
    let basis = emb.polynomial_basis();
    let table = coeffs
        .iter()
        .map(|a| basis.iter().map(|b| emb.trace(&(a * b))).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let gram = emb.trace_gram(&basis)?;
    Ok(gram_matches(&table, &gram))
}

fn gram_matches(table: &[Vec<FieldElement>], gram: &Matrix) -> bool {
    let s = gram.rows();
    for i in 0..s {
        for j in i..s {
            let mut acc = gram.field().zero();
            for t in table {
                acc = &acc + &(&t[i] * &t[j]);
            }
            if &acc != gram.get(i, j) {
                return false;
            }
        }
    }
    true
}

pub fn isometry_from_coeffs(emb: &Embedding, coeffs: &[FieldElement]) -> Result<IsometryMap> {
    if !trace_form_holds(emb, coeffs)? {
        return Err(Error::NotAnIsometry);
    }
    build_map(emb, coeffs.to_vec(), DEFAULT_BUDGET)
}

fn build_map(emb: &Embedding, coeffs: Vec<FieldElement>, budget: u64) -> Result<IsometryMap> {
    let mut map = IsometryMap {
        emb: emb.clone(),
        coeffs,
        inner_code: LinearCode::new(&Matrix::zeros(emb.sub(), 0, 0)),
        inner_distance: 0,
    };
    let rows = emb
        .polynomial_basis()
        .iter()
        .map(|b| map.apply(b))
        .collect::<Result<Vec<_>>>()?;
    map.inner_code = LinearCode::from_rows(emb.sub(), rows)?;
    debug_assert_eq!(map.inner_code.dimension(), emb.relative_degree());
    map.inner_distance = map.inner_code.min_distance(budget)?;
    Ok(map)
}

/// Literal form of the definition: some ordered basis `(e_i)` with dual
/// basis `(e'_j)` has `π(e_i)·π(e'_j) = δ_ij`. Tries every ordered basis.
pub fn is_isometry_oracle(emb: &Embedding, coeffs: &[FieldElement]) -> Result<bool> {
    check_shape(emb, coeffs)?;
    IsometryOracle::new(emb)?.check(coeffs)
}

/// Every ordered basis of the extension with its trace-dual basis, kept so
/// that many coefficient tuples can be tested against one embedding.
pub struct IsometryOracle {
    emb: Embedding,
    /// Element indices of `(e_i)` and `(e'_j)`.
    pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl IsometryOracle {
    pub fn new(emb: &Embedding) -> Result<Self> {
        let s = emb.relative_degree();
        let big_q = emb.sup().enumerable_order()?;
        let tuples = (big_q as u128).pow(s as u32);
        if tuples > 1 << 20 {
            return Err(Error::BudgetExceeded {
                required: tuples.to_string(),
                budget: 1 << 20,
            });
        }
        let elems: Vec<FieldElement> = emb.sup().nonzero_elements()?.collect();
        let idx = |x: &FieldElement| x.index().expect("enumerable field") as usize;
        let mut pairs = Vec::new();
        let mut digits = vec![0usize; s];
        'outer: loop {
            let basis: Vec<FieldElement> = digits.iter().map(|&d| elems[d].clone()).collect();
            match emb.dual_basis(&basis) {
                Ok(dual) => pairs.push((
                    basis.iter().map(idx).collect(),
                    dual.iter().map(idx).collect(),
                )),
                Err(Error::NotABasis) => {}
                Err(e) => return Err(e),
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < elems.len() {
                    continue 'outer;
                }
                *d = 0;
            }
            break;
        }
        Ok(IsometryOracle {
            emb: emb.clone(),
            pairs,
        })
    }

    pub fn basis_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn check(&self, coeffs: &[FieldElement]) -> Result<bool> {
        let emb = &self.emb;
        check_shape(emb, coeffs)?;
        let table = emb
            .sup()
            .elements()?
            .map(|x| coeffs.iter().map(|a| emb.trace(&(a * &x))).collect())
            .collect::<Result<Vec<Vec<FieldElement>>>>()?;
        let dot = |u: usize, v: usize| {
            table[u]
                .iter()
                .zip(&table[v])
                .fold(emb.sub().zero(), |acc, (x, y)| &acc + &(x * y))
        };
        Ok(self.pairs.iter().any(|(basis, dual)| {
            basis.iter().enumerate().all(|(i, &e)| {
                dual.iter().enumerate().all(|(j, &f)| {
                    let v = dot(e, f);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
        }))
    }
}

/// `π^{⊗L}(outer)` together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct ConcatenatedCode {
    pub map: IsometryMap,
    pub outer: LinearCode,
    pub outer_distance: usize,
    pub result: LinearCode,
    /// `d·D`, inner distance times outer distance.
    pub bound: usize,
    pub actual_distance: Option<usize>,
}

impl ConcatenatedCode {
    pub fn compute_distance(&mut self, budget: u64) -> Result<usize> {
        let d = self.result.min_distance(budget)?;
        self.actual_distance = Some(d);
        Ok(d)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "dimension": self.result.dimension(),
            "distance": self.actual_distance,
            "hull_dimension": self.result.hull_dimension(),
            "inner": {
                "d": self.map.inner_distance(),
                "k": self.map.inner_code().dimension(),
                "n": self.map.target_length(),
            },
            "lcd": self.result.is_lcd(),
            "length": self.result.length(),
            "outer": {
                "d": self.outer_distance,
                "k": self.outer.dimension(),
                "n": self.outer.length(),
            },
        })
    }
}

/// Rows `π^{⊗L}(β_j · g_i)` over outer generator rows `g_i` and the polynomial
/// basis `β_j`, row-reduced.
pub fn concatenate(map: &IsometryMap, outer: &LinearCode) -> Result<ConcatenatedCode> {
    map.emb.sup().check_same(outer.field())?;
    let basis = map.emb.polynomial_basis();
    let mut rows = Vec::new();
    for g in outer.generator().row_vecs() {
        for beta in &basis {
            let scaled: Vec<_> = g.iter().map(|x| x * beta).collect();
            rows.push(map.apply_word(&scaled)?);
        }
    }
    let result = if rows.is_empty() {
        LinearCode::new(&Matrix::zeros(
            map.emb.sub(),
            0,
            outer.length() * map.target_length(),
        ))
    } else {
        LinearCode::from_rows(map.emb.sub(), rows)?
    };
    let outer_distance = outer.min_distance(DEFAULT_BUDGET)?;
    Ok(ConcatenatedCode {
        map: map.clone(),
        outer: outer.clone(),
        outer_distance,
        result,
        bound: map.inner_distance * outer_distance,
        actual_distance: None,
    })
}

/// Concatenates the DT code of `dt` after checking its spectral LCD
/// condition, and certifies the result by its hull dimension.
pub fn construct_lcd_concat(dt: &DTParams, map: &IsometryMap) -> Result<ConcatenatedCode> {
    map.emb.sup().check_same(&dt.field)?;
    if !is_lcd_theorem(dt)? {
        return Err(Error::OuterNotLcd);
    }
    let outer = LinearCode::new(&dt_generator(dt)?);
    let c = concatenate(map, &outer)?;
    match c.result.hull_dimension() {
        0 => Ok(c),
        h => Err(Error::LcdCertificateFailed(h)),
    }
}

/// First isometry (by tuple index, `a_1` least significant) whose inner code
/// reaches distance `d_target`. Scans every tuple when there are at most
/// `budget` of them, otherwise tries `budget` seeded random tuples.
pub fn search_isometry(
    emb: &Embedding,
    n: usize,
    d_target: usize,
    seed: u64,
    budget: u64,
) -> Result<IsometryMap> {
    let s = emb.relative_degree();
    let zeros = vec![emb.sup().zero(); n];
    check_shape(emb, &zeros)?;
    let big_q = emb.sup().enumerable_order()?;
    let elems: Vec<FieldElement> = emb.sup().elements()?.collect();
    let basis = emb.polynomial_basis();
    let gram = emb.trace_gram(&basis)?;
    // traces[c][i] = Tr(c · β_i)
    let traces = elems
        .iter()
        .map(|c| basis.iter().map(|b| emb.trace(&(c * b))).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;

    let total = (big_q as u128).checked_pow(n as u32);
    let exhaustive = total.is_some_and(|t| t <= budget as u128);
    let trials = if exhaustive {
        total.expect("checked") as u64
    } else {
        budget
    };
    let tuple = |t: u64| -> Vec<usize> {
        if exhaustive {
            let mut rest = t;
            (0..n)
                .map(|_| {
                    let d = (rest % big_q) as usize;
                    rest /= big_q;
                    d
                })
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            (0..n).map(|_| rng.gen_range(0..big_q as usize)).collect()
        }
    };
    let accept = |t: u64| -> Option<IsometryMap> {
        let idx = tuple(t);
        let table: Vec<_> = idx.iter().map(|&i| traces[i].clone()).collect();
        if !gram_matches(&table, &gram) {
            return None;
        }
        let coeffs = idx.iter().map(|&i| elems[i].clone()).collect();
        build_map(emb, coeffs, DEFAULT_BUDGET)
            .ok()
            .filter(|m| m.inner_distance >= d_target)
    };
    let found = (0..trials).into_par_iter().find_map_first(accept);
    found.ok_or_else(|| {
        Error::NotFound(if exhaustive {
            format!("no [{n},{s},{d_target}] isometry exists (all {trials} tuples scanned)")
        } else {
            format!("none among {trials} sampled tuples (seed {seed})")
        })
    })
}
