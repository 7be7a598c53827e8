//! Linear codes given by a generator matrix: exhaustive weight enumeration,
//! dual code and hull.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::galois::{FieldElement, FiniteField};

/// Default cap on the number of codewords an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Row space of a generator, stored in reduced row echelon form without zero
/// rows, so two codes are equal exactly when their generators are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

impl LinearCode {
    pub fn new(generator: &Matrix) -> Self {
        let (r, pivots) = generator.rref();
        let rows = (0..pivots.len())
            .map(|i| r.row(i).to_vec())
            .collect::<Vec<_>>();
        let generator = if rows.is_empty() {
            Matrix::zeros(generator.field(), 0, generator.cols())
        } else {
            Matrix::from_rows(generator.field(), rows).expect("rows of one matrix")
        };
        LinearCode { generator }
    }

    pub fn from_rows(field: &FiniteField, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        Ok(Self::new(&Matrix::from_rows(field, rows)?))
    }

    pub fn field(&self) -> &FiniteField {
        self.generator.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn contains(&self, word: &[FieldElement]) -> Result<bool> {
        if word.len() != self.length() {
            return Err(Error::DimensionMismatch("word length".into()));
        }
        let m = self
            .generator
            .vconcat(&Matrix::from_rows(self.field(), vec![word.to_vec()])?)?;
        Ok(m.rank() == self.dimension())
    }

    /// Message `m` (one coordinate per row) times the generator.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.dimension() {
            return Err(Error::DimensionMismatch("message length".into()));
        }
        let mut out = vec![self.field().zero(); self.length()];
        for (i, c) in message.iter().enumerate() {
            for (o, g) in out.iter_mut().zip(self.generator.row(i)) {
                *o = o.try_add(&c.try_mul(g)?)?;
            }
        }
        Ok(out)
    }

    /// Euclidean dual: the right nullspace of the generator.
    pub fn dual(&self) -> LinearCode {
        if self.dimension() == 0 {
            return LinearCode::new(&Matrix::identity(self.field(), self.length()));
        }
        LinearCode::new(&self.generator.nullspace())
    }

    /// `k - rank(G·Gᵀ)`.
    pub fn hull_dimension(&self) -> usize {
        if self.dimension() == 0 {
            return 0;
        }
        let g = &self.generator;
        let gram = g.try_mul(&g.transpose()).expect("shapes agree");
        self.dimension() - gram.rank()
    }

    pub fn is_lcd(&self) -> bool {
        self.hull_dimension() == 0
    }

    /// `dim(self ∩ other)` from `dim A + dim B - dim(A + B)`.
    pub fn intersection_dimension(&self, other: &LinearCode) -> Result<usize> {
        self.field().check_same(other.field())?;
        if self.length() != other.length() {
            return Err(Error::DimensionMismatch("code lengths differ".into()));
        }
        let (a, b) = (self.dimension(), other.dimension());
        if a == 0 || b == 0 {
            return Ok(0);
        }
        let sum = self.generator.vconcat(&other.generator)?.rank();
        Ok(a + b - sum)
    }

    pub fn weight_distribution(&self, budget: u64) -> Result<WeightDistribution> {
        let q = self.field().order().clone();
        let total = q.pow(self.dimension() as u32);
        if total > BigUint::from(budget) {
            return Err(Error::BudgetExceeded {
                required: total.to_string(),
                budget,
            });
        }
        let total = u64::try_from(&total).expect("within budget");
        let table = IndexedRows::new(self)?;
        let chunks = split_range(total, rayon::current_num_threads() * 4);
        let parts: Vec<Vec<u64>> = chunks
            .into_par_iter()
            .map(|(lo, hi)| table.count_range(lo, hi))
            .collect();
        let mut counts = BTreeMap::new();
        for part in parts {
            for (w, c) in part.into_iter().enumerate() {
                if c > 0 {
                    *counts.entry(w).or_insert(0) += c;
                }
            }
        }
        Ok(WeightDistribution { counts })
    }

    /// Exact minimum distance by full enumeration.
    pub fn min_distance(&self, budget: u64) -> Result<usize> {
        if self.dimension() == 0 {
            return Err(Error::DimensionMismatch(
                "the zero code has no minimum distance".into(),
            ));
        }
        Ok(self
            .weight_distribution(budget)?
            .min_distance()
            .expect("nonzero code has a nonzero word"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generator": self.generator.to_json(),
            "k": self.dimension(),
            "length": self.length(),
        })
    }
}

/// Number of codewords of each Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = self
            .counts
            .iter()
            .map(|(w, c)| (w.to_string(), json!(c)))
            .collect();
        Value::Object(m)
    }
}

fn split_range(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = (parts as u64).clamp(1, total.max(1));
    let step = total.div_ceil(parts);
    (0..parts)
        .map(|i| (i * step, ((i + 1) * step).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect()
}

/// The code as an `F_p`-space: rows `x^j · g_i` in index form, with an
/// addition table, so the inner enumeration loop is integer lookups only.
struct IndexedRows {
    len: usize,
    q: usize,
    p: u64,
    add: Vec<u32>,
    /// `prefix[i]` = row 0 + ... + row i.
    prefix: Vec<Vec<u32>>,
    /// `scaled[i][c]` = c times row i, for c in the prime field.
    scaled: Vec<Vec<Vec<u32>>>,
}

impl IndexedRows {
    fn new(code: &LinearCode) -> Result<Self> {
        let field = code.field();
        let q = field.enumerable_order()? as usize;
        if q > 1 << 12 {
            return Err(Error::FieldTooLarge(field.spec()));
        }
        let p = field.characteristic();
        let elems: Vec<FieldElement> = field.elements()?.collect();
        let idx = |x: &FieldElement| x.index().expect("enumerable field") as u32;
        let mut add = vec![0u32; q * q];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                add[i * q + j] = idx(&(x + y));
            }
        }
        let len = code.length();
        let x = field.generator();
        let mut rows = Vec::new();
        for g in code.generator.row_vecs() {
            let mut xj = field.one();
            for _ in 0..field.degree() {
                rows.push(g.iter().map(|e| e * &xj).collect::<Vec<_>>());
                xj = &xj * &x;
            }
        }
        let scaled = rows
            .iter()
            .map(|row| {
                (0..p)
                    .map(|c| {
                        let c = field.from_int(c as i64);
                        row.iter().map(|g| idx(&(&c * g))).collect()
                    })
                    .collect()
            })
            .collect();
        let mut prefix = Vec::with_capacity(rows.len());
        let mut acc = vec![0u32; len];
        for row in &rows {
            for (a, g) in acc.iter_mut().zip(row) {
                *a = add[*a as usize * q + idx(g) as usize];
            }
            prefix.push(acc.clone());
        }
        Ok(IndexedRows {
            len,
            q,
            p,
            add,
            prefix,
            scaled,
        })
    }

    /// Weight histogram of the codewords with message index in `[lo, hi)`;
    /// base-`p` digit `i` (least significant first) scales row `i`.
    fn count_range(&self, lo: u64, hi: u64) -> Vec<u64> {
        let k = self.prefix.len();
        let p = self.p as usize;
        let mut hist = vec![0u64; self.len + 1];
        let mut digits = vec![0usize; k];
        let mut rest = lo;
        for d in digits.iter_mut() {
            *d = (rest % self.p) as usize;
            rest /= self.p;
        }
        let mut word = vec![0u32; self.len];
        for (i, &d) in digits.iter().enumerate() {
            for (w, s) in word.iter_mut().zip(&self.scaled[i][d]) {
                *w = self.add[*w as usize * self.q + *s as usize];
            }
        }
        for _ in lo..hi {
            hist[word.iter().filter(|&&w| w != 0).count()] += 1;
            // odometer step: digits 0..=top each move by +1 (the wrap p-1 -> 0
            // is also +1 mod p), so the word gains prefix[top]
            let mut top = 0;
            while top < k {
                digits[top] += 1;
                if digits[top] < p {
                    break;
                }
                digits[top] = 0;
                top += 1;
            }
            if top == k {
                break;
            }
            for (w, s) in word.iter_mut().zip(&self.prefix[top]) {
                *w = self.add[*w as usize * self.q + *s as usize];
            }
        }
        hist
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtcode::{dt_generator, DTParams};
    use crate::galois::parse_field;

    fn dt(spec: &str, n: usize, a: &str, b: &str) -> LinearCode {
        let f = parse_field(spec).unwrap();
        let a = crate::galois::parse_element(&f, a).unwrap();
        let b = crate::galois::parse_element(&f, b).unwrap();
        LinearCode::new(&dt_generator(&DTParams::new(&f, n, a, b).unwrap()).unwrap())
    }

    #[test]
    fn example_inner_code() {
        let c = dt("2^2/1,1,1", 2, "0,1", "1");
        let wd = c.weight_distribution(DEFAULT_BUDGET).unwrap();
        let want: BTreeMap<usize, u64> = [(0, 1), (3, 12), (4, 3)].into_iter().collect();
        assert_eq!(wd.counts, want);
        assert_eq!(c.min_distance(DEFAULT_BUDGET).unwrap(), 3);
        assert!(c.is_lcd());
    }

    #[test]
    fn identity_and_zero_codes() {
        let f = parse_field("3").unwrap();
        let c = LinearCode::new(&Matrix::identity(&f, 4));
        assert_eq!(c.min_distance(DEFAULT_BUDGET).unwrap(), 1);
        let z = LinearCode::new(&Matrix::zeros(&f, 2, 5));
        assert_eq!(z.dimension(), 0);
        assert_eq!(
            z.weight_distribution(1).unwrap().counts,
            [(0, 1)].into_iter().collect()
        );
        assert!(z.min_distance(DEFAULT_BUDGET).is_err());
        assert_eq!(z.dual().dimension(), 5);
    }

    #[test]
    fn budget_guard() {
        let c = dt("3^2", 4, "1", "1");
        assert_eq!(
            c.weight_distribution(1000).unwrap_err(),
            Error::BudgetExceeded {
                required: "6561".into(),
                budget: 1000
            }
        );
        assert_eq!(c.weight_distribution(6561).unwrap().total(), 6561);
    }

    #[test]
    fn dependent_rows_are_reduced() {
        let f = parse_field("2").unwrap();
        let o = f.one();
        let z = f.zero();
        let c = LinearCode::from_rows(
            &f,
            vec![
                vec![o.clone(), o.clone(), z.clone()],
                vec![o.clone(), o.clone(), z.clone()],
                vec![z.clone(), o.clone(), o.clone()],
            ],
        )
        .unwrap();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.length(), 3);
    }

    #[test]
    fn duals_and_hulls() {
        let c = dt("2", 2, "1", "1");
        assert!(c.is_lcd());
        let d = c.dual();
        assert_eq!(d.dimension(), 2);
        // [T | I] spans the dual when T is symmetric and -T = T
        let t = dt("2", 2, "1", "1");
        let f = parse_field("2").unwrap();
        let g = t.generator();
        let swapped: Vec<Vec<_>> = (0..2)
            .map(|i| {
                g.row(i)[2..]
                    .iter()
                    .chain(&g.row(i)[..2])
                    .cloned()
                    .collect()
            })
            .collect();
        assert_eq!(d, LinearCode::from_rows(&f, swapped).unwrap());
        assert_eq!(d.dual(), c);

        let bad = dt("2", 2, "0", "1");
        assert_eq!(bad.hull_dimension(), 2);
        assert_eq!(bad.intersection_dimension(&bad.dual()).unwrap(), 2);
    }

    #[test]
    fn hull_matches_intersection() {
        for spec in ["2", "3", "2^2", "5"] {
            let f = parse_field(spec).unwrap();
            for n in 2..5 {
                for a in f.elements().unwrap() {
                    let c =
                        LinearCode::new(&dt_generator(&DTParams::unit(&f, n, a).unwrap()).unwrap());
                    assert_eq!(
                        c.hull_dimension(),
                        c.intersection_dimension(&c.dual()).unwrap()
                    );
                    assert_eq!(c.dual().dimension(), n);
                }
            }
        }
    }

    #[test]
    fn chunking_does_not_change_counts() {
        let c = dt("2^2", 4, "0,1", "1");
        let table = IndexedRows::new(&c).unwrap();
        let whole = table.count_range(0, 256);
        let mut merged = vec![0; whole.len()];
        for (lo, hi) in split_range(256, 7) {
            for (m, x) in merged.iter_mut().zip(table.count_range(lo, hi)) {
                *m += x;
            }
        }
        assert_eq!(whole, merged);
        assert_eq!(whole.iter().sum::<u64>(), 256);
    }

    #[test]
    fn enumeration_matches_encoding() {
        let c = dt("3^2", 3, "2,1", "0,2");
        let f = c.field().clone();
        let mut hist = BTreeMap::new();
        for x in f.elements().unwrap() {
            for y in f.elements().unwrap() {
                for z in f.elements().unwrap() {
                    let w = c.encode(&[x.clone(), y.clone(), z]).unwrap();
                    *hist
                        .entry(w.iter().filter(|e| !e.is_zero()).count())
                        .or_insert(0u64) += 1;
                }
            }
        }
        assert_eq!(c.weight_distribution(DEFAULT_BUDGET).unwrap().counts, hist);
    }
}
