use num_integer::Integer;
use serde_json::{json, Value};

use super::forbidden::ForbiddenSet;
use crate::dickson::{factor_profile, FactorizationProfile};
use crate::error::{Error, Result};
use crate::galois::{sqrt_minus_one, FieldElement, FiniteField};

/// What a corollary promises when its hypothesis holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// Some `a ∈ F_q` gives an LCD code.
    Exists,
    /// Every `a ∈ F_q` gives an LCD code.
    All,
    /// Every `a ≠ 1`.
    AllButOne,
    /// Every `a` outside `{±μ ± 2b} ∩ F_q`.
    AllButMuTwoB,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryRecord {
    pub name: &'static str,
    /// Characteristic and `r` match the corollary's setting.
    pub applicable: bool,
    /// The corollary's hypothesis, text form.
    pub hypothesis: String,
    pub holds: bool,
    pub conclusion: Conclusion,
}

impl CorollaryRecord {
    pub fn asserts(&self) -> bool {
        self.applicable && self.holds
    }
}

#[derive(Clone, Debug)]
pub struct CorollaryDiagnosis {
    pub field: FiniteField,
    pub n: usize,
    pub profile: FactorizationProfile,
    pub records: Vec<CorollaryRecord>,
}

impl CorollaryDiagnosis {
    pub fn asserted(&self) -> impl Iterator<Item = &CorollaryRecord> {
        self.records.iter().filter(|r| r.asserts())
    }

    /// The base-field exception list of `conclusion` for a given `b`.
    pub fn exceptions_for(
        &self,
        conclusion: Conclusion,
        b: &FieldElement,
    ) -> Result<Vec<FieldElement>> {
        let f = &self.field;
        let mut out = match conclusion {
            Conclusion::Exists | Conclusion::All => Vec::new(),
            Conclusion::AllButOne => vec![f.one()],
            Conclusion::AllButMuTwoB => {
                let mu = sqrt_minus_one(f)?;
                let b2 = mu.emb.embed(&(b + b))?;
                let mut v = Vec::new();
                for m in [mu.element.clone(), -&mu.element] {
                    for t in [b2.clone(), -&b2] {
                        if let Ok(x) = mu.emb.preimage(&(&m + &t)) {
                            v.push(x);
                        }
                    }
                }
                v
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Names of asserted corollaries that the exact forbidden set refutes.
    pub fn contradictions(&self, fs: &ForbiddenSet) -> Result<Vec<&'static str>> {
        let q = self.field.enumerable_order()? as usize;
        let mut bad = Vec::new();
        for rec in self.asserted() {
            let ok = match rec.conclusion {
                Conclusion::Exists => fs.base_intersection.len() < q,
                c => {
                    let allowed = self.exceptions_for(c, &fs.b)?;
                    fs.base_intersection.iter().all(|a| allowed.contains(a))
                }
            };
            if !ok {
                bad.push(rec.name);
            }
        }
        Ok(bad)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "corollaries": self.records.iter().map(|r| json!({
                "applicable": r.applicable,
                "conclusion": match r.conclusion {
                    Conclusion::Exists => "some a is LCD",
                    Conclusion::All => "all a are LCD",
                    Conclusion::AllButOne => "all a except 1 are LCD",
                    Conclusion::AllButMuTwoB => "all a except {±mu±2b} are LCD",
                },
                "holds": r.holds,
                "hypothesis": r.hypothesis,
                "name": r.name,
            })).collect::<Vec<_>>(),
            "field": self.field.spec(),
            "n": self.n,
            "profile": {"m": self.profile.m, "r": self.profile.r},
        })
    }
}

/// Evaluates the hypotheses of the eight existence corollaries for `(F_q, n)`.
pub fn existence_diagnosis(field: &FiniteField, n: usize) -> Result<CorollaryDiagnosis> {
    let q = field
        .order_u64()
        .filter(|&q| q < 1 << 31)
        .ok_or_else(|| Error::FieldTooLarge(field.spec()))? as u128;
    let p = field.characteristic();
    let profile = factor_profile(n as u64, p);
    let even = p == 2;
    let r0 = profile.r == 0;
    let n1 = n as u128 + 1;
    let m1 = profile.m as u128 + 1;
    let q2 = q * q - 1;
    let q4 = q * q * q * q - 1;
    let qmod4 = q % 4;

    let rec = |name, applicable, hypothesis: String, holds, conclusion| CorollaryRecord {
        name,
        applicable,
        hypothesis,
        holds,
        conclusion,
    };

    // (q ≡ 1 mod 4 branch, q ≡ 3 mod 4 branch) for the odd arithmetic tests
    let odd_arith = |k: u128, with_q: bool| -> (bool, Conclusion, String) {
        if qmod4 == 1 {
            let modulus = if with_q { q * q2 / 2 } else { q2 / 2 };
            (
                k.gcd(&modulus) == 1,
                Conclusion::AllButMuTwoB,
                format!("q = 1 mod 4 and gcd({k}, {modulus}) = 1"),
            )
        } else {
            let g = k.gcd(&(q4 / 2));
            let holds = (!with_q || k.gcd(&q) == 1) && ((q - 1) / 2).is_multiple_of(g);
            (
                holds,
                if with_q {
                    Conclusion::All
                } else {
                    Conclusion::AllButMuTwoB
                },
                format!(
                    "q = 3 mod 4 and gcd({k}, {}) = {g} divides {}",
                    q4 / 2,
                    (q - 1) / 2
                ),
            )
        }
    };

    let mut records = vec![
        rec(
            "counting-even",
            even && r0,
            format!("q = {q} > n/2 = {}", n as f64 / 2.0),
            2 * q > n as u128,
            Conclusion::Exists,
        ),
        rec(
            "counting-odd",
            !even && r0,
            format!("q = {q} > 2n = {}", 2 * n),
            q > 2 * n as u128,
            Conclusion::Exists,
        ),
        rec(
            "arithmetic-even",
            even && r0,
            format!("gcd({n1}, {}) = 1", q * q2),
            n1.gcd(&(q * q2)) == 1,
            Conclusion::All,
        ),
    ];
    let (holds, conclusion, hypothesis) = odd_arith(n1, true);
    records.push(rec(
        "arithmetic-odd",
        !even && r0,
        hypothesis,
        holds,
        conclusion,
    ));
    let m = profile.m as u128;
    records.push(rec(
        "counting-even-extension",
        even && !r0,
        format!("q = {q} > m/2 + 1 = {}", m as f64 / 2.0 + 1.0),
        2 * q > m + 2,
        Conclusion::Exists,
    ));
    records.push(rec(
        "counting-odd-extension",
        !even && !r0,
        format!("q = {q} > 2m + 4 = {}", 2 * m + 4),
        q > 2 * m + 4,
        Conclusion::Exists,
    ));
    records.push(rec(
        "arithmetic-even-extension",
        even && !r0,
        format!("gcd({m1}, {q2}) = 1"),
        m1.gcd(&q2) == 1,
        Conclusion::AllButOne,
    ));
    let (holds, conclusion, hypothesis) = odd_arith(m1, false);
    records.push(rec(
        "arithmetic-odd-extension",
        !even && !r0,
        hypothesis,
        holds,
        conclusion,
    ));

    Ok(CorollaryDiagnosis {
        field: field.clone(),
        n,
        profile,
        records,
    })
}
