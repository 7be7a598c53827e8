use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;

use super::prime_poly::{
    add_mod, inv_mod, is_irreducible, is_prime, mul_mod, prime_factors, smallest_irreducible,
    sub_mod,
};
use crate::error::{Error, Result};

/// Characteristics are capped so that coefficient products fit in `u64`.
const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// Largest order for which exhaustive element scans and primitive-element
/// searches are permitted.
pub const MAX_ENUMERABLE_ORDER: u64 = 1 << 24;

struct FieldInner {
    p: u64,
    degree: usize,
    modulus: Vec<u64>,
    order: BigUint,
}

/// GF(p^s) realized as F_p[x]/(f) for a monic irreducible `f` of degree `s`.
///
/// Handles are cheap to clone and immutable. Two handles denote the same field
/// when characteristic and modulus agree.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldInner>);

impl FiniteField {
    /// Builds GF(p^s). Without an explicit modulus the smallest monic
    /// irreducible of degree `s` is used, ordering candidates by their lower
    /// coefficients read as a base-`p` integer (`c0` least significant).
    pub fn new(p: u64, degree: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::FieldTooLarge(format!("characteristic {p}")));
        }
        if degree == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree + 1 || m[degree] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: m.len().saturating_sub(1),
                    });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::Parse(format!(
                        "modulus coefficient out of range for p = {p}"
                    )));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, degree),
        };
        let order = BigUint::from(p).pow(degree as u32);
        Ok(FiniteField(Arc::new(FieldInner {
            p,
            degree,
            modulus,
            order,
        })))
    }

    /// The prime field F_p with modulus `x`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Little-endian monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    /// `p^s` when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.0.order).ok()
    }

    /// Order as `u64`, refusing fields too large to enumerate.
    pub fn enumerable_order(&self) -> Result<u64> {
        match self.order_u64() {
            Some(q) if q <= MAX_ENUMERABLE_ORDER => Ok(q),
            _ => Err(Error::FieldTooLarge(format!(
                "{} has more than {MAX_ENUMERABLE_ORDER} elements",
                self.spec()
            ))),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    /// Field spec string `p^s/c0,...,cs`.
    pub fn spec(&self) -> String {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.0.p, self.0.degree, coeffs.join(","))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.0.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under Z -> F_p -> this field.
    pub fn from_int(&self, c: i64) -> FieldElement {
        let p = self.0.p as i64;
        let mut e = self.zero();
        e.coeffs[0] = c.rem_euclid(p) as u64;
        e
    }

    /// The canonical generator: the class of `x` modulo the field modulus.
    pub fn generator(&self) -> FieldElement {
        let mut e = self.zero();
        if self.0.degree == 1 {
            // x = -c0 in F_p[x]/(x + c0)
            e.coeffs[0] = sub_mod(0, self.0.modulus[0], self.0.p);
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Element from little-endian coefficients; shorter vectors are zero-padded.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.degree {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.degree
            )));
        }
        if coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "coefficient out of range for p = {}",
                self.0.p
            )));
        }
        let mut e = self.zero();
        e.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        Ok(e)
    }

    /// Element whose coefficients are the base-`p` digits of `index`
    /// (`c0` least significant). Digits beyond the degree are dropped.
    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = index % self.0.p;
            index /= self.0.p;
            if index == 0 {
                break;
            }
        }
        e
    }

    /// All elements in index order. Fails for fields above the enumeration cap.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let q = self.enumerable_order()?;
        Ok((0..q).map(move |i| self.from_index(i)))
    }

    /// Nonzero elements in index order.
    pub fn nonzero_elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let q = self.enumerable_order()?;
        Ok((1..q).map(move |i| self.from_index(i)))
    }

    /// Smallest (by index) element generating the multiplicative group.
    pub fn primitive_element(&self) -> Result<FieldElement> {
        let q = self.enumerable_order()?;
        if q == 2 {
            return Ok(self.one());
        }
        let factors = prime_factors(q - 1);
        (1..q)
            .map(|i| self.from_index(i))
            .find(|g| factors.iter().all(|&l| !g.pow((q - 1) / l).is_one()))
            .ok_or_else(|| Error::FieldTooLarge("no primitive element found".into()))
    }

    /// Same field: identical characteristic and modulus.
    pub fn same_as(&self, other: &FiniteField) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    pub(crate) fn check_same(&self, other: &FiniteField) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// An element of a [`FiniteField`], stored as `degree` little-endian
/// coefficients in `[0, p)`.
#[derive(Clone)]
pub struct FieldElement {
    field: FiniteField,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Base-`p` index of the coefficient vector, if it fits in a `u64`.
    pub fn index(&self) -> Option<u64> {
        let p = self.field.characteristic();
        self.coeffs.iter().rev().try_fold(0u64, |acc, &c| {
            acc.checked_mul(p).and_then(|v| v.checked_add(c))
        })
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&rhs.field)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn try_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&rhs.field)?;
        Ok(self.sub_unchecked(rhs))
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&rhs.field)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn try_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&rhs.field)?;
        Ok(self.mul_unchecked(&rhs.inv()?))
    }

    fn add_unchecked(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| add_mod(a, b, p))
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn sub_unchecked(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.field.characteristic();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| sub_mod(a, b, p))
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_unchecked(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.field.characteristic();
        let d = self.coeffs.len();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![mul_mod(self.coeffs[0], rhs.coeffs[0], p)],
            };
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    prod[i + j] = add_mod(prod[i + j], mul_mod(a, b, p), p);
                }
            }
        }
        // reduce with the monic modulus, top-down
        let m = self.field.modulus();
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            let shift = top - d;
            for (k, &mk) in m[..d].iter().enumerate() {
                prod[shift + k] = sub_mod(prod[shift + k], mul_mod(c, mk, p), p);
            }
            prod[top] = 0;
        }
        prod.truncate(d);
        FieldElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }

    pub fn square(&self) -> FieldElement {
        self.mul_unchecked(self)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn pow_big(&self, exp: &BigUint) -> FieldElement {
        let mut acc = self.field.one();
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = acc.mul_unchecked(self);
            }
        }
        acc
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.characteristic())
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// representatives.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.characteristic();
        if self.coeffs.len() == 1 {
            let mut e = self.clone();
            e.coeffs[0] = inv_mod(self.coeffs[0], p);
            return Ok(e);
        }
        use super::prime_poly::{poly_rem, trim};
        // Invariant: r0 = s0 * a (mod m), r1 = s1 * a (mod m)
        let mut r0 = self.field.modulus().to_vec();
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub_mul(&s0, &q, &s1, p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r1 is a nonzero constant since the modulus is irreducible
        let c = inv_mod(r1[0], p);
        let mut coeffs: Vec<u64> = s1.iter().map(|&x| mul_mod(x, c, p)).collect();
        coeffs = poly_rem(&coeffs, self.field.modulus(), p);
        coeffs.resize(self.coeffs.len(), 0);
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Exact multiplicative order; needs an enumerable field.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.field.enumerable_order()?;
        let mut ord = q - 1;
        for l in prime_factors(q - 1) {
            while ord % l == 0 && self.pow(ord / l).is_one() {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Whether the order is exactly `k`; works in fields of any size.
    pub fn has_order(&self, k: u64) -> bool {
        k > 0 && self.pow(k).is_one() && prime_factors(k).iter().all(|&l| !self.pow(k / l).is_one())
    }

    /// Canonical string: comma-separated little-endian coefficients.
    pub fn to_coeff_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

// quotient and remainder of polynomials over F_p
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    use super::prime_poly::trim;
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        let shift = top - db;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, bi, p), p);
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

// a - q * b
fn poly_sub_mul(a: &[u64], q: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    use super::prime_poly::trim;
    let len = a.len().max(q.len() + b.len());
    let mut out = vec![0u64; len];
    out[..a.len()].copy_from_slice(a);
    for (i, &x) in q.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = sub_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same_as(&other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Index order: compare coefficient vectors from the top coefficient down.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_coeff_string())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_coeff_string())
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.zero().sub_unchecked(self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// Operator sugar panics on mixed fields; use the `try_*` methods to recover.
macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("field arithmetic: {e}"),
                }
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);
impl_binop!(Div, div, try_div);

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FiniteField {
        FiniteField::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn create_example_fields() {
        let f = f4();
        assert_eq!(f.order_u64(), Some(4));
        let f9 = FiniteField::new(3, 2, Some(&[2, 2, 1])).unwrap();
        assert_eq!(f9.order_u64(), Some(9));
        assert_eq!(f9.spec(), "3^2/2,2,1");
    }

    #[test]
    fn creation_errors() {
        assert_eq!(
            FiniteField::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus
        );
        assert_eq!(
            FiniteField::new(4, 1, None).unwrap_err(),
            Error::NonPrimeCharacteristic(4)
        );
        assert!(matches!(
            FiniteField::new(2, 3, Some(&[1, 1, 1])).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
        // not monic
        assert!(matches!(
            FiniteField::new(3, 2, Some(&[2, 2, 2])).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FiniteField::prime(5).unwrap().modulus(), &[0, 1]);
        assert_eq!(
            FiniteField::new(2, 3, None).unwrap().modulus(),
            &[1, 1, 0, 1]
        );
    }

    #[test]
    fn f4_arithmetic() {
        let f = f4();
        let w = f.generator();
        assert_eq!((&w * &w).coeffs(), &[1, 1]);
        assert_eq!(w.inv().unwrap().coeffs(), &[1, 1]);
        assert_eq!(&w + &f.zero(), w);
        assert_eq!(w.pow(3), f.one());
        assert_eq!(f.zero().inv().unwrap_err(), Error::DivisionByZero);
        assert_eq!((&w / &w), f.one());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f = f4();
        let g = FiniteField::new(2, 3, None).unwrap();
        assert_eq!(f.one().try_add(&g.one()).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn inverse_is_exhaustively_correct() {
        for f in [
            f4(),
            FiniteField::new(3, 2, Some(&[2, 2, 1])).unwrap(),
            FiniteField::new(2, 4, None).unwrap(),
            FiniteField::prime(7).unwrap(),
        ] {
            for x in f.nonzero_elements().unwrap() {
                assert!((&x * &x.inv().unwrap()).is_one(), "{x:?} in {f:?}");
            }
        }
    }

    #[test]
    fn frobenius_fixes_field() {
        for (p, s) in [
            (2, 1),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (5, 1),
            (7, 1),
            (3, 4),
            (2, 6),
        ] {
            let f = FiniteField::new(p, s, None).unwrap();
            let q = f.order_u64().unwrap();
            for x in f.elements().unwrap() {
                assert_eq!(x.pow(q), x);
            }
        }
    }

    #[test]
    fn primitive_elements() {
        let f = f4();
        assert_eq!(f.primitive_element().unwrap(), f.generator());
        let f9 = FiniteField::new(3, 2, Some(&[2, 2, 1])).unwrap();
        let g = f9.primitive_element().unwrap();
        assert_eq!(g, f9.generator());
        assert_eq!(g.multiplicative_order().unwrap(), 8);
        let f81 = FiniteField::new(3, 4, Some(&[2, 0, 0, 2, 1])).unwrap();
        assert_eq!(f81.primitive_element().unwrap(), f81.generator());
        assert_eq!(
            FiniteField::prime(7)
                .unwrap()
                .primitive_element()
                .unwrap()
                .coeffs(),
            &[3]
        );
        assert!(FiniteField::prime(2)
            .unwrap()
            .primitive_element()
            .unwrap()
            .is_one());
    }

    #[test]
    fn prime_field_with_shifted_modulus() {
        // F_5 = F_5[x]/(x + 2): the generator is -2 = 3
        let f = FiniteField::new(5, 1, Some(&[2, 1])).unwrap();
        assert_eq!(f.generator().coeffs(), &[3]);
    }

    #[test]
    fn big_exponent_matches_small() {
        let f = FiniteField::new(3, 5, None).unwrap();
        let x = f.from_index(17);
        assert_eq!(x.pow_big(&BigUint::from(1234u32)), x.pow(1234));
    }

    #[test]
    fn index_order() {
        let f = f4();
        let mut v: Vec<_> = f.elements().unwrap().collect();
        let sorted = v.clone();
        v.reverse();
        v.sort();
        assert_eq!(v, sorted);
        assert_eq!(f.from_index(2), f.generator());
        assert_eq!(f.generator().index(), Some(2));
    }
}
