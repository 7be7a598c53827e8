//! Dickson polynomials of the second kind, `E_n = x·E_{n-1} - E_{n-2}` with
//! `E_0 = 1` and `E_1 = x`, and their explicit root multisets.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::galois::{
    extension, primitive_root_of_unity_in, unity_degree, Embedding, FieldElement, FiniteField,
};

/// `p^r || (n+1)` and `n+1 = p^r (m+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationProfile {
    pub n: u64,
    pub p: u64,
    pub r: u32,
    pub m: u64,
}

impl FactorizationProfile {
    /// `p^r`.
    pub fn prime_power(&self) -> u64 {
        self.p.pow(self.r)
    }

    /// Order of the root of unity whose traces give the nontrivial roots:
    /// `2(m+1)` in odd characteristic, `m+1` in characteristic 2.
    pub fn theta_order(&self) -> u64 {
        if self.p == 2 {
            self.m + 1
        } else {
            2 * (self.m + 1)
        }
    }
}

pub fn factor_profile(n: u64, p: u64) -> FactorizationProfile {
    let mut rest = n + 1;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    FactorizationProfile {
        n,
        p,
        r,
        m: rest - 1,
    }
}

pub fn dickson_eval(n: u64, x: &FieldElement) -> FieldElement {
    let mut prev = x.field().one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn dickson_poly(n: usize, field: &FiniteField) -> Poly {
    let x = Poly::x(field);
    let mut prev = Poly::one(field);
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = &(&x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Roots with multiplicities in an extension of a base field.
#[derive(Clone, Debug)]
pub struct RootMultiset {
    pub ext: FiniteField,
    pub emb: Embedding,
    pub items: Vec<(FieldElement, usize)>,
}

impl RootMultiset {
    /// Merges repeated roots and sorts by element index.
    pub fn from_pairs(
        ext: FiniteField,
        emb: Embedding,
        pairs: impl IntoIterator<Item = (FieldElement, usize)>,
    ) -> Self {
        let mut merged: BTreeMap<FieldElement, usize> = BTreeMap::new();
        for (x, k) in pairs {
            if k > 0 {
                *merged.entry(x).or_default() += k;
            }
        }
        RootMultiset {
            ext,
            emb,
            items: merged.into_iter().collect(),
        }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.items.iter().map(|(_, k)| k).sum()
    }

    /// `Π (x - root)^mult` over the extension.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::one(&self.ext);
        for (root, k) in &self.items {
            acc = &acc * &Poly::linear(root).pow(*k as u64);
        }
        acc
    }

    pub fn roots(&self) -> impl Iterator<Item = &FieldElement> {
        self.items.iter().map(|(x, _)| x)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.ext.spec(),
            "roots": self.items.iter().map(|(x, k)| json!({
                "multiplicity": k,
                "root": x.to_coeff_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The full root multiset of `E_n` over the smallest extension of `base`
/// containing the required root of unity.
pub fn dickson_roots(n: u64, base: &FiniteField) -> Result<RootMultiset> {
    let profile = factor_profile(n, base.characteristic());
    if profile.m == 0 {
        return dickson_roots_with(n, &Embedding::identity(base), None);
    }
    let k = profile.theta_order();
    let (ext, emb) = extension(base, unity_degree(base, k)?)?;
    let theta = primitive_root_of_unity_in(&ext, k)?;
    dickson_roots_with(n, &emb, Some(&theta))
}

/// Root multiset of `E_n` in `emb.sup()` using the supplied primitive root of
/// unity of order [`FactorizationProfile::theta_order`]. `theta` may be `None`
/// only when `m = 0`.
pub fn dickson_roots_with(
    n: u64,
    emb: &Embedding,
    theta: Option<&FieldElement>,
) -> Result<RootMultiset> {
    let ext = emb.sup().clone();
    let p = ext.characteristic();
    let profile = factor_profile(n, p);
    let pr = profile.prime_power() as usize;
    let mut pairs = Vec::new();

    if profile.m > 0 {
        let k = profile.theta_order();
        let theta = theta.ok_or(Error::RootObstruction { k, p })?;
        ext.check_same(theta.field())?;
        if !theta.has_order(k) {
            return Err(Error::RootObstruction { k, p });
        }
        let inv = theta.inv()?;
        let (count, mult) = if p == 2 {
            assert!(
                profile.m.is_multiple_of(2),
                "m+1 is odd in characteristic 2"
            );
            (profile.m / 2, 2 * pr)
        } else {
            (profile.m, pr)
        };
        let (mut t, mut ti) = (ext.one(), ext.one());
        for _ in 0..count {
            t = &t * theta;
            ti = &ti * &inv;
            pairs.push((&t + &ti, mult));
        }
    }

    if p == 2 {
        pairs.push((ext.zero(), pr - 1));
    } else {
        let two = ext.from_int(2);
        pairs.push((two.clone(), (pr - 1) / 2));
        pairs.push((-two, (pr - 1) / 2));
    }

    let out = RootMultiset::from_pairs(ext, emb.clone(), pairs);
    debug_assert_eq!(out.total_multiplicity() as u64, n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, s: usize) -> FiniteField {
        FiniteField::new(p, s, None).unwrap()
    }

    #[test]
    fn recurrence_values() {
        let f3 = f(3, 1);
        let x = f3.one();
        let seq: Vec<_> = (0..5).map(|n| dickson_eval(n, &x)).collect();
        let want: Vec<_> = [1, 1, 0, 2, 2].iter().map(|&c| f3.from_int(c)).collect();
        assert_eq!(seq, want);
        for field in [f(2, 2), f(5, 1), f(3, 2)] {
            assert_eq!(dickson_eval(2, &field.zero()), field.from_int(-1));
            let g = field.generator();
            assert_eq!(dickson_eval(1, &g), g);
        }
    }

    #[test]
    fn coefficient_expansions() {
        let f3 = f(3, 1);
        let c = |v: &[i64]| v.iter().map(|&x| f3.from_int(x)).collect::<Vec<_>>();
        assert_eq!(dickson_poly(0, &f3).coeffs(), c(&[1]).as_slice());
        assert_eq!(dickson_poly(2, &f3).coeffs(), c(&[-1, 0, 1]).as_slice());
        assert_eq!(dickson_poly(3, &f3).coeffs(), c(&[0, 1, 0, 1]).as_slice());
        let f2 = f(2, 1);
        assert_eq!(dickson_poly(3, &f2), Poly::x(&f2).pow(3));
        for n in 0..20 {
            assert_eq!(dickson_poly(n, &f3).degree(), Some(n));
        }
    }

    #[test]
    fn eval_matches_poly() {
        let f9 = f(3, 2);
        for n in 0..12 {
            let e = dickson_poly(n, &f9);
            for x in f9.elements().unwrap() {
                assert_eq!(dickson_eval(n as u64, &x), e.eval(&x).unwrap());
            }
        }
    }

    #[test]
    fn profiles() {
        let pr = |n, p| {
            let f = factor_profile(n, p);
            (f.r, f.m)
        };
        assert_eq!(pr(3, 2), (2, 0));
        assert_eq!(pr(4, 3), (0, 4));
        assert_eq!(pr(8, 3), (2, 0));
        assert_eq!(pr(11, 2), (2, 2));
        assert_eq!(pr(1, 5), (0, 1));
    }

    #[test]
    fn roots_of_e3_over_f3() {
        let r = dickson_roots(3, &f(3, 1)).unwrap();
        assert_eq!(r.ext.order_u64(), Some(9));
        assert_eq!(r.items.len(), 3);
        assert!(r.items.iter().all(|(_, k)| *k == 1));
        let scanned = dickson_poly(3, &f(3, 1)).roots_in(&r.emb).unwrap();
        assert_eq!(scanned, r.items);
    }

    #[test]
    fn characteristic_two_cases() {
        let f2 = f(2, 1);
        let r = dickson_roots(2, &f2).unwrap();
        assert_eq!(r.items.len(), 1);
        assert!(r.items[0].0.is_one());
        assert_eq!(r.items[0].1, 2);
        let r3 = dickson_roots(3, &f2).unwrap();
        assert_eq!(r3.ext, f2);
        assert_eq!(r3.items, vec![(f2.zero(), 3)]);
    }

    #[test]
    fn m_zero_needs_no_extension() {
        let f3 = f(3, 1);
        let r = dickson_roots(8, &f3).unwrap();
        assert_eq!(r.ext, f3);
        assert_eq!(r.items, vec![(f3.from_int(1), 4), (f3.from_int(2), 4)]);
        assert_eq!(r.expand(), dickson_poly(8, &f3));
    }

    #[test]
    fn product_identity_small() {
        for base in [f(2, 1), f(3, 1), f(2, 2), f(5, 1)] {
            for n in 1..20u64 {
                let r = dickson_roots(n, &base).unwrap();
                assert_eq!(r.total_multiplicity() as u64, n);
                let want = dickson_poly(n as usize, &base).map_into(&r.emb).unwrap();
                assert_eq!(r.expand(), want, "n={n} over {base:?}");
            }
        }
    }

    #[test]
    fn independent_of_theta_choice() {
        let base = f(3, 1);
        for n in [3u64, 4, 5, 7, 10] {
            let reference = dickson_roots(n, &base).unwrap();
            let prof = factor_profile(n, 3);
            let k = prof.theta_order();
            let theta = primitive_root_of_unity_in(&reference.ext, k).unwrap();
            for j in (1..k).filter(|j| num_integer::gcd(*j, k) == 1) {
                let other = dickson_roots_with(n, &reference.emb, Some(&theta.pow(j))).unwrap();
                assert_eq!(other.items, reference.items);
            }
        }
    }

    #[test]
    fn rejects_wrong_theta_order() {
        let base = f(3, 1);
        let r = dickson_roots(3, &base).unwrap();
        let bad = r.ext.from_int(2);
        assert!(dickson_roots_with(3, &r.emb, Some(&bad)).is_err());
        assert!(dickson_roots_with(3, &r.emb, None).is_err());
    }
}
