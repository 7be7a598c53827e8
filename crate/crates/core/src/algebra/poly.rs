use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::galois::{Embedding, FieldElement, FiniteField};

/// Univariate polynomial over a finite field, little-endian, no trailing
/// zeros. The zero polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros. Panics on mixed fields.
    pub fn new(field: &FiniteField, coeffs: Vec<FieldElement>) -> Self {
        Self::try_new(field, coeffs).expect("coefficients must lie in the owner field")
    }

    pub fn try_new(field: &FiniteField, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            field.check_same(c.field())?;
        }
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Ok(Poly {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn zero(field: &FiniteField) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &FiniteField) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `x - r`.
    pub fn linear(r: &FieldElement) -> Self {
        let field = r.field().clone();
        Self::new(&field, vec![-r, field.one()])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn try_add(&self, rhs: &Poly) -> Result<Poly> {
        self.field.check_same(&rhs.field)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::try_new(&self.field, coeffs)
    }

    pub fn try_sub(&self, rhs: &Poly) -> Result<Poly> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Poly) -> Result<Poly> {
        self.field.check_same(&rhs.field)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::try_new(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at a point of the owner field.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(x.field())?;
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.field.check_same(&inner.field)?;
        let mut acc = Poly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?.try_add(&Poly::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// Euclidean division by a nonzero divisor.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.field.check_same(&divisor.field)?;
        let Some(db) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = divisor.coeffs[db].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(db)];
        while rem.len() > db {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            let shift = top - db;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * b);
            }
            quot[shift] = c;
            rem.pop();
        }
        Ok((
            Poly::try_new(&self.field, quot)?,
            Poly::try_new(&self.field, rem)?,
        ))
    }

    /// Image under the embedding of the coefficient field.
    pub fn map_into(&self, emb: &Embedding) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| emb.embed(c))
            .collect::<Result<Vec<_>>>()?;
        Poly::try_new(emb.sup(), coeffs)
    }

    /// Inverse of [`Poly::map_into`]; fails if a coefficient lies outside
    /// the subfield.
    pub fn pull_back(&self, emb: &Embedding) -> Result<Poly> {
        emb.sup().check_same(&self.field)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| emb.preimage(c))
            .collect::<Result<Vec<_>>>()?;
        Poly::try_new(emb.sub(), coeffs)
    }

    /// All roots in the superfield of `emb` with multiplicities, by
    /// exhaustive scan plus repeated synthetic division. Roots come out in
    /// index order.
    pub fn roots_in(&self, emb: &Embedding) -> Result<Vec<(FieldElement, usize)>> {
        let lifted = self.map_into(emb)?;
        if lifted.is_zero() {
            return Err(Error::DimensionMismatch(
                "roots of the zero polynomial".into(),
            ));
        }
        let mut rest = lifted;
        let mut out = Vec::new();
        for x in emb.sup().elements()? {
            if rest.degree() == Some(0) {
                break;
            }
            let mut mult = 0;
            loop {
                let (q, r) = rest.divrem(&Poly::linear(&x))?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((x, mult));
            }
        }
        Ok(out)
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(
        field: &FiniteField,
        xs: &[FieldElement],
        ys: &[FieldElement],
    ) -> Result<Poly> {
        if xs.len() != ys.len() {
            return Err(Error::DimensionMismatch("interpolation nodes".into()));
        }
        let mut acc = Poly::zero(field);
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            let mut basis = Poly::one(field);
            let mut denom = field.one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = basis.try_mul(&Poly::linear(xj))?;
                    denom = denom.try_mul(&xi.try_sub(xj)?)?;
                }
            }
            acc = acc.try_add(&basis.scale(&yi.try_div(&denom)?))?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs.iter().map(|c| c.to_coeff_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! impl_poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("polynomial arithmetic: {e}"),
                }
            }
        }
    };
}

impl_poly_binop!(Add, add, try_add);
impl_poly_binop!(Sub, sub, try_sub);
impl_poly_binop!(Mul, mul, try_mul);
