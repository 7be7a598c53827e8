use num_integer::Integer;
use serde_json::{json, Value};

use crate::dickson::{dickson_roots_with, factor_profile, FactorizationProfile, RootMultiset};
use crate::error::{Error, Result};
use crate::galois::{
    extension, primitive_root_of_unity_in, unity_degree, Embedding, FieldElement, FiniteField,
};

/// Everything the spectral LCD test needs for a fixed `(F_q, n)`: one
/// extension holding both `θ` and `μ`, and the roots of `E_n` there.
///
/// Both are powers of a single primitive `L`-th root of unity `ζ` with
/// `L = lcm(4, ord θ)` in odd characteristic, so they always share a field.
#[derive(Clone, Debug)]
pub struct SpectralContext {
    field: FiniteField,
    n: usize,
    profile: FactorizationProfile,
    theta: Option<FieldElement>,
    mu: FieldElement,
    roots: RootMultiset,
}

impl SpectralContext {
    pub fn new(field: &FiniteField, n: usize) -> Result<Self> {
        let l = Self::zeta_order(field, n);
        let (_, emb) = extension(field, unity_degree(field, l)?)?;
        Self::in_extension(&emb, n)
    }

    /// Same, but inside a caller-chosen extension (for example one with a
    /// prescribed modulus so elements print as powers of its generator).
    pub fn in_extension(emb: &Embedding, n: usize) -> Result<Self> {
        let field = emb.sub().clone();
        let ext = emb.sup();
        let p = field.characteristic();
        let profile = factor_profile(n as u64, p);
        let l = Self::zeta_order(&field, n);
        let zeta = primitive_root_of_unity_in(ext, l)?;
        let theta = (profile.m > 0).then(|| zeta.pow(l / profile.theta_order()));
        let mu = if p == 2 { ext.one() } else { zeta.pow(l / 4) };
        let roots = dickson_roots_with(n as u64, emb, theta.as_ref())?;
        Ok(SpectralContext {
            field,
            n,
            profile,
            theta,
            mu,
            roots,
        })
    }

    fn zeta_order(field: &FiniteField, n: usize) -> u64 {
        let profile = factor_profile(n as u64, field.characteristic());
        let k = if profile.m > 0 {
            profile.theta_order()
        } else {
            1
        };
        if field.characteristic() == 2 {
            k
        } else {
            k.lcm(&4)
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn profile(&self) -> FactorizationProfile {
        self.profile
    }

    pub fn ext(&self) -> &FiniteField {
        &self.roots.ext
    }

    pub fn emb(&self) -> &Embedding {
        &self.roots.emb
    }

    pub fn theta(&self) -> Option<&FieldElement> {
        self.theta.as_ref()
    }

    pub fn mu(&self) -> &FieldElement {
        &self.mu
    }

    /// Roots of `E_n` in [`Self::ext`].
    pub fn dickson_roots(&self) -> &RootMultiset {
        &self.roots
    }

    /// `{a - bρ}` with multiplicities.
    pub fn spectrum(&self, a: &FieldElement, b: &FieldElement) -> Result<RootMultiset> {
        let emb = self.emb();
        let (a, b) = (emb.embed(a)?, emb.embed(b)?);
        let items = self.roots.items.iter().map(|(r, k)| (&a - &(&b * r), *k));
        Ok(RootMultiset::from_pairs(
            self.ext().clone(),
            emb.clone(),
            items,
        ))
    }

    pub fn forbidden_set(&self, b: &FieldElement) -> Result<ForbiddenSet> {
        if b.is_zero() {
            return Err(Error::ZeroOffDiagonal);
        }
        let emb = self.emb();
        let b_up = emb.embed(b)?;
        let shift = self.mu.try_div(&b_up)?;
        let mut ratios = Vec::new();
        for rho in self.roots.roots() {
            ratios.push(rho + &shift);
            if self.field.characteristic() != 2 {
                ratios.push(rho - &shift);
            }
        }
        ratios.sort();
        ratios.dedup();
        let mut full_set: Vec<_> = ratios.iter().map(|r| r * &b_up).collect();
        full_set.sort();
        let mut base_intersection = full_set
            .iter()
            .filter_map(|x| emb.preimage(x).ok())
            .collect::<Vec<_>>();
        base_intersection.sort();
        Ok(ForbiddenSet {
            field: self.field.clone(),
            n: self.n,
            b: b.clone(),
            profile: self.profile,
            theta: self.theta.clone(),
            mu: (self.field.characteristic() != 2).then(|| self.mu.clone()),
            ratios,
            full_set,
            base_intersection,
        })
    }
}

/// The values of `a` (and of `a/b`) for which `Ĉ_n(a,b)` is not LCD.
#[derive(Clone, Debug)]
pub struct ForbiddenSet {
    pub field: FiniteField,
    pub n: usize,
    pub b: FieldElement,
    pub profile: FactorizationProfile,
    pub theta: Option<FieldElement>,
    /// Absent in characteristic 2, where `μ = 1`.
    pub mu: Option<FieldElement>,
    /// Forbidden `a/b`, in the splitting extension.
    pub ratios: Vec<FieldElement>,
    /// Forbidden `a`, in the splitting extension.
    pub full_set: Vec<FieldElement>,
    /// Forbidden `a` that lie in the base field.
    pub base_intersection: Vec<FieldElement>,
}

impl ForbiddenSet {
    pub fn admits(&self, a: &FieldElement) -> bool {
        !self.base_intersection.contains(a)
    }

    /// Exponent `j` with `x = θ^j`, if any.
    pub fn theta_power(&self, x: &FieldElement) -> Option<u64> {
        let theta = self.theta.as_ref()?;
        let k = self.profile.theta_order();
        let mut acc = theta.field().one();
        for j in 0..k {
            if &acc == x {
                return Some(j);
            }
            acc = &acc * theta;
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &[FieldElement]| v.iter().map(|x| x.to_coeff_string()).collect::<Vec<_>>();
        json!({
            "b": self.b.to_coeff_string(),
            "base_intersection": s(&self.base_intersection),
            "ext_field": self.full_set.first().map_or_else(
                || self.field.spec(),
                |x| x.field().spec(),
            ),
            "full_set": s(&self.full_set),
            "mu": self.mu.as_ref().map(|m| m.to_coeff_string()),
            "n": self.n,
            "profile": {"m": self.profile.m, "r": self.profile.r},
            "ratios": s(&self.ratios),
            "theta": self.theta.as_ref().map(|t| t.to_coeff_string()),
        })
    }
}

/// One-shot form of [`SpectralContext::forbidden_set`].
pub fn forbidden_set(field: &FiniteField, n: usize, b: &FieldElement) -> Result<ForbiddenSet> {
    if b.is_zero() {
        return Err(Error::ZeroOffDiagonal);
    }
    SpectralContext::new(field, n)?.forbidden_set(b)
}
