//! Dense polynomials over a prime field F_p, little-endian `u64` coefficients.
//!
//! Only the handful of operations needed to pick and test field moduli live
//! here. Inputs are assumed reduced mod `p`; outputs are trimmed.

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest `t >= 1` with `q^t = 1 (mod k)`; requires gcd(q, k) = 1.
pub(crate) fn multiplicative_order_mod(q: u64, k: u64) -> u64 {
    if k == 1 {
        return 1;
    }
    let q = q % k;
    let mut acc = q;
    let mut t = 1;
    while acc != 1 {
        acc = ((acc as u128 * q as u128) % k as u128) as u64;
        t += 1;
        assert!(t <= k, "q is not a unit modulo k");
    }
    t
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            sub_mod(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
                p,
            )
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(c, mi, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    poly_rem(&prod, m, p)
}

pub(crate) fn poly_pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = poly_rem(&[1], m, p);
    let mut b = poly_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m, p);
        }
        b = poly_mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod(lead, p);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    x
}

/// Ben-Or test: a monic `f` of degree `s` is irreducible iff
/// gcd(x^{p^i} - x, f) = 1 for every `1 <= i <= s/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let s = f.len() - 1;
    if s == 0 {
        return false;
    }
    if s == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = poly_rem(&x, f, p);
    for _ in 1..=s / 2 {
        h = poly_pow_mod(&h, p, f, p);
        let g = poly_gcd(&poly_sub(&h, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `s` whose lower coefficients, read as a
/// base-`p` integer with `c0` least significant, are smallest.
pub(crate) fn smallest_irreducible(p: u64, s: usize) -> Vec<u64> {
    let mut lower = vec![0u64; s];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment base-p counter, c0 least significant
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < s, "no irreducible polynomial found");
        }
    }
}
