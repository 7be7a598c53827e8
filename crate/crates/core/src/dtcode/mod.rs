//! Double-Toeplitz codes `[I_n | T]` with `T` symmetric tridiagonal Toeplitz,
//! their spectra and the exact LCD decision.

mod diagnosis;
mod forbidden;

pub use diagnosis::{existence_diagnosis, Conclusion, CorollaryDiagnosis, CorollaryRecord};
pub use forbidden::{forbidden_set, ForbiddenSet, SpectralContext};

use crate::algebra::Matrix;
use crate::dickson::RootMultiset;
use crate::error::{Error, Result};
use crate::galois::{FieldElement, FiniteField};

/// Field, half-length `n`, diagonal `a` and off-diagonal `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTParams {
    pub field: FiniteField,
    pub n: usize,
    pub a: FieldElement,
    pub b: FieldElement,
}

impl DTParams {
    pub fn new(field: &FiniteField, n: usize, a: FieldElement, b: FieldElement) -> Result<Self> {
        field.check_same(a.field())?;
        field.check_same(b.field())?;
        if n == 0 {
            return Err(Error::DimensionMismatch("n must be at least 1".into()));
        }
        Ok(DTParams {
            field: field.clone(),
            n,
            a,
            b,
        })
    }

    /// `C_n(a)`, the `b = 1` case.
    pub fn unit(field: &FiniteField, n: usize, a: FieldElement) -> Result<Self> {
        Self::new(field, n, a, field.one())
    }
}

pub fn build_tridiag(params: &DTParams) -> Result<Matrix> {
    let DTParams { field, n, a, b } = params;
    let n = *n;
    if n >= 2 && b.is_zero() {
        return Err(Error::ZeroOffDiagonal);
    }
    let mut t = Matrix::zeros(field, n, n);
    for i in 0..n {
        t.set(i, i, a.clone());
        if i + 1 < n {
            t.set(i, i + 1, b.clone());
            t.set(i + 1, i, b.clone());
        }
    }
    Ok(t)
}

/// `[I_n | T̂_n(a,b)]`.
pub fn dt_generator(params: &DTParams) -> Result<Matrix> {
    let t = build_tridiag(params)?;
    Matrix::identity(&params.field, params.n).hconcat(&t)
}

/// Eigenvalues `a - b·ρ` over the roots `ρ` of `E_n`, with multiplicities.
pub fn spectrum(params: &DTParams) -> Result<RootMultiset> {
    if params.b.is_zero() {
        return Err(Error::ZeroOffDiagonal);
    }
    SpectralContext::new(&params.field, params.n)?.spectrum(&params.a, &params.b)
}

/// `det(G·Gᵀ) ≠ 0`, computed directly from the generator.
pub fn is_lcd_direct(generator: &Matrix) -> Result<bool> {
    if generator.rank() != generator.rows() {
        return Err(Error::RankDeficientGenerator);
    }
    let gram = generator.try_mul(&generator.transpose())?;
    Ok(!gram.determinant()?.is_zero())
}

/// The spectral verdict: `a` avoids the forbidden set for `(n, b)`. For
/// `n = 1` there is no spectral statement and the direct test is used.
pub fn is_lcd_theorem(params: &DTParams) -> Result<bool> {
    if params.n == 1 {
        return is_lcd_direct(&dt_generator(params)?);
    }
    let ctx = SpectralContext::new(&params.field, params.n)?;
    Ok(ctx.forbidden_set(&params.b)?.admits(&params.a))
}
