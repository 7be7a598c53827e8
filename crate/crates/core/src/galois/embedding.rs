use std::fmt;

use num_bigint::BigUint;

use super::field::{FieldElement, FiniteField};
use super::prime_poly::{inv_mod, mul_mod, prime_factors, sub_mod};
use crate::algebra::Matrix;
use crate::error::{Error, Result};

/// Field homomorphism `sub -> sup`, determined by the image of the canonical
/// generator of `sub`.
#[derive(Clone)]
pub struct Embedding {
    sub: FiniteField,
    sup: FiniteField,
    image_of_generator: FieldElement,
    /// images of 1, γ, ..., γ^{s-1}
    basis_images: Vec<FieldElement>,
    solver: PrimeSolver,
}

impl Embedding {
    /// The identity map of a field.
    pub fn identity(field: &FiniteField) -> Self {
        Self::with_image(field, field, field.generator())
            .expect("the generator is a root of its own modulus")
    }

    /// Deterministic embedding: the generator of `sub` is sent to the
    /// smallest (index order) root of `sub`'s modulus inside `sup`.
    pub fn new(sub: &FiniteField, sup: &FiniteField) -> Result<Self> {
        let p = sub.characteristic();
        if p != sup.characteristic() || !sup.degree().is_multiple_of(sub.degree()) {
            return Err(Error::NoEmbedding {
                sub: sub.spec(),
                sup: sup.spec(),
            });
        }
        if sub.degree() == 1 {
            let image = sup.from_int(sub.generator().coeffs()[0] as i64);
            return Self::with_image(sub, sup, image);
        }
        if sub.same_as(sup) {
            return Ok(Self::identity(sub));
        }
        let root = smallest_root_of_modulus(sub, sup)?;
        Self::with_image(sub, sup, root)
    }

    /// Embedding with an explicit generator image, validated against the
    /// modulus of `sub`.
    pub fn with_image(
        sub: &FiniteField,
        sup: &FiniteField,
        image_of_generator: FieldElement,
    ) -> Result<Self> {
        sup.check_same(image_of_generator.field())?;
        if sub.characteristic() != sup.characteristic()
            || !sup.degree().is_multiple_of(sub.degree())
        {
            return Err(Error::NoEmbedding {
                sub: sub.spec(),
                sup: sup.spec(),
            });
        }
        if !eval_prime_poly(sub.modulus(), &image_of_generator).is_zero() {
            return Err(Error::NoEmbedding {
                sub: sub.spec(),
                sup: sup.spec(),
            });
        }
        let mut basis_images = Vec::with_capacity(sub.degree());
        let mut acc = sup.one();
        for _ in 0..sub.degree() {
            basis_images.push(acc.clone());
            acc = &acc * &image_of_generator;
        }
        let solver = PrimeSolver::new(&basis_images, sup.characteristic())?;
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            image_of_generator,
            basis_images,
            solver,
        })
    }

    pub fn sub(&self) -> &FiniteField {
        &self.sub
    }

    pub fn sup(&self) -> &FiniteField {
        &self.sup
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image_of_generator
    }

    /// `[sup : sub]`.
    pub fn relative_degree(&self) -> usize {
        self.sup.degree() / self.sub.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.sub.same_as(&self.sup) && self.image_of_generator == self.sup.generator()
    }

    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        self.sub.check_same(x.field())?;
        if self.is_identity() {
            return Ok(x.clone());
        }
        let mut acc = self.sup.zero();
        for (&c, img) in x.coeffs().iter().zip(&self.basis_images) {
            if c != 0 {
                acc = &acc + &(img * &self.sup.from_int(c as i64));
            }
        }
        Ok(acc)
    }

    /// The unique `x` in `sub` with `embed(x) = y`.
    pub fn preimage(&self, y: &FieldElement) -> Result<FieldElement> {
        self.sup.check_same(y.field())?;
        if self.is_identity() {
            return Ok(y.clone());
        }
        let coeffs = self.solver.solve(y.coeffs()).ok_or(Error::NotInSubfield)?;
        self.sub.element(&coeffs)
    }

    pub fn contains(&self, y: &FieldElement) -> bool {
        self.preimage(y).is_ok()
    }

    /// Relative trace `Tr(x) = sum_{i<t} x^{|sub|^i}`, returned in `sub`.
    pub fn trace(&self, x: &FieldElement) -> Result<FieldElement> {
        self.sup.check_same(x.field())?;
        let mut acc = self.sup.zero();
        let mut conj = x.clone();
        for _ in 0..self.relative_degree() {
            acc = &acc + &conj;
            for _ in 0..self.sub.degree() {
                conj = conj.frobenius();
            }
        }
        self.preimage(&acc)
    }

    /// The polynomial basis `1, x, ..., x^{t-1}` of `sup` over `sub`, where
    /// `x` is the canonical generator of `sup`.
    pub fn polynomial_basis(&self) -> Vec<FieldElement> {
        let g = self.sup.generator();
        let mut acc = self.sup.one();
        let mut out = Vec::with_capacity(self.relative_degree());
        for _ in 0..self.relative_degree() {
            out.push(acc.clone());
            acc = &acc * &g;
        }
        out
    }

    /// Trace Gram matrix `Tr(e_i e_j)` over `sub`.
    pub fn trace_gram(&self, basis: &[FieldElement]) -> Result<Matrix> {
        let mut rows = Vec::with_capacity(basis.len());
        for ei in basis {
            let row = basis
                .iter()
                .map(|ej| self.trace(&ei.try_mul(ej)?))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Matrix::from_rows(&self.sub, rows)
    }

    /// The trace-dual basis `e'` with `Tr(e_i e'_j) = δ_ij`.
    pub fn dual_basis(&self, basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let t = self.relative_degree();
        if basis.len() != t {
            return Err(Error::NotABasis);
        }
        let gram = self.trace_gram(basis)?;
        let inv = gram.inverse().map_err(|_| Error::NotABasis)?;
        // e'_j = sum_k inv[k][j] e_k
        (0..t)
            .map(|j| {
                basis
                    .iter()
                    .enumerate()
                    .try_fold(self.sup.zero(), |acc, (k, ek)| {
                        let c = self.embed(inv.get(k, j))?;
                        Ok(&acc + &(&c * ek))
                    })
            })
            .collect()
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Embedding({} -> {}, x -> {:?})",
            self.sub.spec(),
            self.sup.spec(),
            self.image_of_generator
        )
    }
}

/// Evaluate a polynomial with prime-field coefficients at an element.
fn eval_prime_poly(coeffs: &[u64], x: &FieldElement) -> FieldElement {
    let field = x.field();
    coeffs.iter().rev().fold(field.zero(), |acc, &c| {
        &(&acc * x) + &field.from_int(c as i64)
    })
}

/// Smallest root of `sub.modulus` in `sup`. Roots of an irreducible of degree
/// `s` lie in the copy of F_{p^s}; we reach it through an element of order
/// `p^s - 1` and scan its powers, then take the least Frobenius conjugate.
fn smallest_root_of_modulus(sub: &FiniteField, sup: &FiniteField) -> Result<FieldElement> {
    let q_sub = sub.enumerable_order()?;
    let cofactor = (sup.order() - 1u32) / BigUint::from(q_sub - 1);
    let factors = prime_factors(q_sub - 1);
    let generator_of_subgroup = (2u64..)
        .map(|i| sup.from_index(i).pow_big(&cofactor))
        .find(|b| factors.iter().all(|&l| !b.pow((q_sub - 1) / l).is_one()))
        .expect("the multiplicative group of sup is cyclic");
    let mut acc = sup.one();
    for _ in 0..q_sub - 1 {
        if eval_prime_poly(sub.modulus(), &acc).is_zero() {
            let mut best = acc.clone();
            let mut conj = acc.clone();
            for _ in 1..sub.degree() {
                conj = conj.frobenius();
                if conj < best {
                    best = conj.clone();
                }
            }
            return Ok(best);
        }
        acc = &acc * &generator_of_subgroup;
    }
    Err(Error::NoEmbedding {
        sub: sub.spec(),
        sup: sup.spec(),
    })
}

/// Solves `sum_i c_i v_i = y` over F_p for fixed independent vectors `v_i`,
/// by precomputing pivot columns of their echelon form.
#[derive(Clone)]
struct PrimeSolver {
    p: u64,
    vectors: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    /// `transform[i]` expresses echelon row `i` in terms of the original vectors
    transform: Vec<Vec<u64>>,
}

impl PrimeSolver {
    fn new(basis: &[FieldElement], p: u64) -> Result<Self> {
        let s = basis.len();
        let vectors: Vec<Vec<u64>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        let width = vectors.first().map_or(0, Vec::len);
        let mut rows = vectors.clone();
        let mut transform: Vec<Vec<u64>> = (0..s)
            .map(|i| (0..s).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::with_capacity(s);
        let mut r = 0;
        for c in 0..width {
            if r == s {
                break;
            }
            let Some(pr) = (r..s).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            transform.swap(r, pr);
            let inv = inv_mod(rows[r][c], p);
            for v in rows[r].iter_mut() {
                *v = mul_mod(*v, inv, p);
            }
            for v in transform[r].iter_mut() {
                *v = mul_mod(*v, inv, p);
            }
            let (pivot_row, pivot_t) = (rows[r].clone(), transform[r].clone());
            for i in 0..s {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for (v, &w) in rows[i].iter_mut().zip(&pivot_row) {
                        *v = sub_mod(*v, mul_mod(f, w, p), p);
                    }
                    for (v, &w) in transform[i].iter_mut().zip(&pivot_t) {
                        *v = sub_mod(*v, mul_mod(f, w, p), p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if pivots.len() != s {
            return Err(Error::NotABasis);
        }
        Ok(PrimeSolver {
            p,
            vectors,
            pivots,
            transform,
        })
    }

    fn solve(&self, y: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let s = self.vectors.len();
        // y = d · echelon, d_i = y[pivot_i]; then c = d · transform
        let mut c = vec![0u64; s];
        for (i, &pc) in self.pivots.iter().enumerate() {
            let d = y[pc];
            if d == 0 {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                *cj = (*cj + mul_mod(d, self.transform[i][j], p)) % p;
            }
        }
        let reconstructed = (0..y.len()).all(|k| {
            let v = self
                .vectors
                .iter()
                .zip(&c)
                .fold(0u64, |acc, (vec, &ci)| (acc + mul_mod(ci, vec[k], p)) % p);
            v == y[k]
        });
        reconstructed.then_some(c)
    }
}
