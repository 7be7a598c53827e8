//! End-to-end re-derivation of the worked examples, fact by fact.
//!
//! Each report lists what the source claims and what is computed here; a fact
//! matches only on exact equality. Known inconsistencies in the source are
//! attached as notes instead of being patched over.

use serde_json::{json, Map, Value};

use crate::codes::{LinearCode, DEFAULT_BUDGET};
use crate::concat::{concatenate, isometry_from_coeffs, ConcatenatedCode};
use crate::dtcode::{dt_generator, is_lcd_direct, is_lcd_theorem, DTParams, SpectralContext};
use crate::error::{Error, Result};
use crate::galois::{parse_field, Embedding, FieldElement, FiniteField};

pub const EXAMPLE_IDS: [&str; 5] = ["2.9", "2.10", "3.1", "3.2", "3.3"];

#[derive(Clone, Debug, PartialEq)]
pub struct Fact {
    pub name: &'static str,
    pub claimed: Value,
    pub computed: Value,
}

impl Fact {
    pub fn matches(&self) -> bool {
        self.claimed == self.computed
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReproduceReport {
    pub example_id: &'static str,
    pub facts: Vec<Fact>,
    pub notes: Vec<String>,
}

impl ReproduceReport {
    fn new(example_id: &'static str) -> Self {
        ReproduceReport {
            example_id,
            facts: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fact(&mut self, name: &'static str, claimed: Value, computed: Value) {
        self.facts.push(Fact {
            name,
            claimed,
            computed,
        });
    }

    pub fn get(&self, name: &str) -> Option<&Fact> {
        self.facts.iter().find(|f| f.name == name)
    }

    pub fn all_match(&self) -> bool {
        self.facts.iter().all(Fact::matches)
    }

    pub fn mismatches(&self) -> Vec<&'static str> {
        self.facts
            .iter()
            .filter(|f| !f.matches())
            .map(|f| f.name)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mut claimed = Map::new();
        let mut computed = Map::new();
        let mut verdict = Map::new();
        for f in &self.facts {
            claimed.insert(f.name.into(), f.claimed.clone());
            computed.insert(f.name.into(), f.computed.clone());
            let v = if f.matches() { "match" } else { "mismatch" };
            verdict.insert(f.name.into(), json!(v));
        }
        json!({
            "all_match": self.all_match(),
            "claimed": claimed,
            "computed": computed,
            "example": self.example_id,
            "notes": self.notes,
            "verdict": verdict,
        })
    }
}

pub fn reproduce(example_id: &str) -> Result<ReproduceReport> {
    match example_id {
        "2.9" => example_2_9(),
        "2.10" => example_2_10(),
        "3.1" => example_3_1(),
        "3.2" => example_3_2(),
        "3.3" => example_3_3(),
        other => Err(Error::Parse(format!(
            "unknown example {other:?}; expected one of {}",
            EXAMPLE_IDS.join(", ")
        ))),
    }
}

pub fn reproduce_all() -> Result<Vec<ReproduceReport>> {
    EXAMPLE_IDS.iter().map(|id| reproduce(id)).collect()
}

fn strings(v: &[FieldElement]) -> Value {
    json!(v.iter().map(|x| x.to_coeff_string()).collect::<Vec<_>>())
}

/// `a ∈ F_q` with `Ĉ_n(a,b)` LCD, by the spectral test and by `det(GGᵀ)`.
fn lcd_values(field: &FiniteField, n: usize, b: &FieldElement) -> Result<(Value, Value)> {
    let mut theorem = Vec::new();
    let mut direct = Vec::new();
    for a in field.elements()? {
        let p = DTParams::new(field, n, a.clone(), b.clone())?;
        if is_lcd_theorem(&p)? {
            theorem.push(a.clone());
        }
        if is_lcd_direct(&dt_generator(&p)?)? {
            direct.push(a);
        }
    }
    Ok((strings(&theorem), strings(&direct)))
}

/// Exponent `k` in `1..=ord(g)` with `x = g^k`; `None` for zero.
fn log_base(g: &FieldElement, x: &FieldElement) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let mut acc = g.clone();
    let mut k = 1;
    while &acc != x {
        acc = &acc * g;
        k += 1;
        if acc.is_one() && !x.is_one() {
            return None;
        }
    }
    Some(k)
}

fn power_labels(symbol: &str, g: &FieldElement, xs: &[FieldElement]) -> Value {
    let mut labels: Vec<(u64, String)> = xs
        .iter()
        .map(|x| match log_base(g, x) {
            Some(k) => (k, format!("{symbol}^{k}")),
            None => (0, "0".to_string()),
        })
        .collect();
    labels.sort();
    json!(labels.into_iter().map(|(_, s)| s).collect::<Vec<_>>())
}

fn example_2_9() -> Result<ReproduceReport> {
    let mut rep = ReproduceReport::new("2.9");
    let f3 = FiniteField::prime(3)?;
    let ctx = SpectralContext::new(&f3, 3)?;
    let fs = ctx.forbidden_set(&f3.one())?;
    let theta = fs.theta.clone().expect("m = 3 > 0");
    rep.fact("theta_order", json!(8), json!(ctx.profile().theta_order()));
    rep.fact(
        "mu_equals_theta_squared",
        json!(true),
        json!(theta.pow(2) == *ctx.mu()),
    );
    rep.fact(
        "forbidden_full_set",
        json!(["0", "theta^2", "theta^6"]),
        power_labels("theta", &theta, &fs.full_set),
    );
    rep.fact(
        "forbidden_base_intersection",
        json!(["0"]),
        strings(&fs.base_intersection),
    );
    let (theorem, direct) = lcd_values(&f3, 3, &f3.one())?;
    rep.fact("lcd_values", json!(["1", "2"]), theorem);
    rep.fact("lcd_values_direct", json!(["1", "2"]), direct);
    rep.fact(
        "corollaries_asserting",
        json!([]),
        json!(crate::dtcode::existence_diagnosis(&f3, 3)?
            .asserted()
            .map(|r| r.name)
            .collect::<Vec<_>>()),
    );
    Ok(rep)
}

fn example_2_10() -> Result<ReproduceReport> {
    let mut rep = ReproduceReport::new("2.10");
    let f3 = FiniteField::prime(3)?;
    let f81 = parse_field("3^4/2,0,0,2,1")?;
    let emb = Embedding::new(&f3, &f81)?;
    let w = f81.generator();
    let ctx = SpectralContext::in_extension(&emb, 4)?;
    let theta = ctx.theta().expect("m = 4 > 0").clone();
    let fs = ctx.forbidden_set(&f3.one())?;

    rep.fact("w_order", json!(80), json!(w.multiplicative_order()?));
    let base_nonzero: Vec<_> = f3
        .nonzero_elements()?
        .map(|x| emb.embed(&x))
        .collect::<Result<_>>()?;
    rep.fact(
        "base_field_as_w_powers",
        json!(["w^40", "w^80"]),
        power_labels("w", &w, &base_nonzero),
    );

    // the source takes mu = theta^5, which squares to +1 for a 10th root theta
    let stated_mu = theta.pow(5);
    rep.fact(
        "mu_squared_is_minus_one",
        json!(true),
        json!((&stated_mu * &stated_mu) == -f81.one()),
    );
    let stated_set = {
        let mut v = Vec::new();
        for rho in ctx.dickson_roots().roots() {
            v.push(rho + &stated_mu);
            v.push(rho - &stated_mu);
        }
        v.sort();
        v.dedup();
        v
    };
    let claimed_set = json!(["w^10", "w^20", "w^30", "w^50", "w^60", "w^70"]);
    rep.fact(
        "forbidden_full_set",
        claimed_set.clone(),
        power_labels("w", &w, &fs.full_set),
    );
    rep.fact(
        "forbidden_base_intersection",
        json!([]),
        strings(&fs.base_intersection),
    );
    let (theorem, direct) = lcd_values(&f3, 4, &f3.one())?;
    rep.fact("lcd_values", json!(["0", "1", "2"]), theorem);
    rep.fact("lcd_values_direct", json!(["0", "1", "2"]), direct);

    let recomputed = power_labels("w", &w, &stated_set);
    rep.notes.push(format!(
        "mu = theta^5 satisfies mu^2 = 1, not -1. Rebuilding the set with that mu gives {recomputed}{}, \
         so the printed set inherits the wrong mu. With mu^2 = -1 the set is {} and it meets F_3 in {}; \
         det(I + T_4(a)^2) confirms a = 1 and a = 2 are not LCD.",
        if recomputed == claimed_set { ", exactly the printed set" } else { "" },
        power_labels("w", &w, &fs.full_set),
        strings(&fs.base_intersection),
    ));
    Ok(rep)
}

struct ConcatCase {
    id: &'static str,
    field: &'static str,
    a: u64,
    a_is_power: bool,
    b: u64,
    coeffs: &'static [Coeff],
}

/// A map coefficient: `w^k` or a prime-field integer.
enum Coeff {
    W(u64),
    Int(i64),
}

fn build_concat(case: &ConcatCase) -> Result<(DTParams, ConcatenatedCode)> {
    let ext = parse_field(case.field)?;
    let base = FiniteField::prime(ext.characteristic())?;
    let emb = Embedding::new(&base, &ext)?;
    let w = ext.generator();
    let coeffs: Vec<_> = case
        .coeffs
        .iter()
        .map(|c| match c {
            Coeff::W(k) => w.pow(*k),
            Coeff::Int(i) => ext.from_int(*i),
        })
        .collect();
    let map = isometry_from_coeffs(&emb, &coeffs)?;
    let a = if case.a_is_power {
        w.pow(case.a)
    } else {
        ext.from_int(case.a as i64)
    };
    let dt = DTParams::new(&ext, 2, a, w.pow(case.b))?;
    let outer = LinearCode::new(&dt_generator(&dt)?);
    let mut c = concatenate(&map, &outer)?;
    c.compute_distance(DEFAULT_BUDGET)?;
    Ok((dt, c))
}

fn params(n: usize, k: usize, d: usize, q: &FiniteField) -> Value {
    json!(format!("[{n},{k},{d}]_{}", q.order()))
}

fn concat_facts(
    rep: &mut ReproduceReport,
    dt: &DTParams,
    c: &ConcatenatedCode,
    claims: [Value; 7],
) -> Result<()> {
    let [length, dimension, lcd, distance, bound, inner, outer] = claims;
    rep.fact("length", length, json!(c.result.length()));
    rep.fact("dimension", dimension, json!(c.result.dimension()));
    rep.fact("outer_lcd", json!(true), json!(is_lcd_theorem(dt)?));
    rep.fact("lcd", lcd, json!(c.result.is_lcd()));
    rep.fact(
        "distance",
        distance,
        json!(c.actual_distance.expect("computed")),
    );
    rep.fact("bound", bound, json!(c.bound));
    rep.fact(
        "inner_code",
        inner,
        params(
            c.map.target_length(),
            c.map.inner_code().dimension(),
            c.map.inner_distance(),
            c.map.emb().sub(),
        ),
    );
    rep.fact(
        "outer_code",
        outer,
        params(
            c.outer.length(),
            c.outer.dimension(),
            c.outer_distance,
            c.outer.field(),
        ),
    );
    rep.fact(
        "distance_at_least_bound",
        json!(true),
        json!(c.actual_distance.expect("computed") >= c.bound),
    );
    rep.notes.push(
        "the example declares N = 4, but its lengths [4,2]_outer, 2nN and sN all force N = 2; N = 2 is used"
            .into(),
    );
    Ok(())
}

fn example_3_1() -> Result<ReproduceReport> {
    let mut rep = ReproduceReport::new("3.1");
    let case = ConcatCase {
        id: "3.1",
        field: "2^2/1,1,1",
        a: 1,
        a_is_power: true,
        b: 0,
        coeffs: &[Coeff::W(1), Coeff::W(2), Coeff::Int(1), Coeff::Int(1)],
    };
    let (dt, c) = build_concat(&case)?;
    concat_facts(
        &mut rep,
        &dt,
        &c,
        [
            json!(16),
            json!(4),
            json!(true),
            json!(7),
            json!(6),
            json!("[4,2,2]_2"),
            json!("[4,2,3]_4"),
        ],
    )?;
    rep.notes.push(format!(
        "example {}: the source calls the result an optimal LCD code; optimality refers to external tables and is recorded, not verified",
        case.id
    ));
    Ok(rep)
}

fn example_3_2() -> Result<ReproduceReport> {
    let mut rep = ReproduceReport::new("3.2");
    let case = ConcatCase {
        id: "3.2",
        field: "2^3/1,1,0,1",
        a: 1,
        a_is_power: true,
        b: 6,
        coeffs: &[
            Coeff::W(3),
            Coeff::W(5),
            Coeff::W(6),
            Coeff::Int(1),
            Coeff::Int(1),
        ],
    };
    let (dt, c) = build_concat(&case)?;
    concat_facts(
        &mut rep,
        &dt,
        &c,
        [
            json!(20),
            json!(6),
            json!(true),
            json!(7),
            json!(6),
            json!("[5,3,2]_2"),
            json!("[4,2,3]_8"),
        ],
    )?;
    rep.notes.push(
        "the outer code is printed as [4,2,3]_4 although it lives over F_8; the claim is checked as [4,2,3]_8"
            .into(),
    );
    rep.notes.push(format!(
        "example {}: \"almost optimal\" refers to external tables and is recorded, not verified",
        case.id
    ));
    Ok(rep)
}

fn example_3_3() -> Result<ReproduceReport> {
    let mut rep = ReproduceReport::new("3.3");
    let case = ConcatCase {
        id: "3.3",
        field: "3^2/2,2,1",
        a: 2,
        a_is_power: false,
        b: 1,
        coeffs: &[
            Coeff::W(1),
            Coeff::W(1),
            Coeff::W(3),
            Coeff::W(3),
            Coeff::Int(2),
        ],
    };
    let (dt, c) = build_concat(&case)?;
    concat_facts(
        &mut rep,
        &dt,
        &c,
        [
            json!(20),
            json!(4),
            json!(true),
            json!(10),
            json!(9),
            json!("[5,2,3]_3"),
            json!("[4,2,3]_9"),
        ],
    )?;
    if !rep.get("outer_lcd").is_some_and(Fact::matches) {
        let (good, _) = lcd_values(&dt.field, 2, &dt.b)?;
        let w = dt.field.generator();
        let mu = SpectralContext::new(&dt.field, 2)?.mu().clone();
        rep.notes.push(format!(
            "with b = w the diagonal a = 2 equals {} (mu = {}), one of {{±mu ± 2b}}; the printed exception list \
             repeats mu - 2b and drops -mu - 2b. G·Gᵀ is singular, the outer code is not LCD and the \
             concatenation has hull dimension {}. Diagonals giving an LCD outer code for this b: {good}",
            if dt.a == -&mu - &(&dt.b + &dt.b) || dt.a == &mu - &(&dt.b + &dt.b) {
                "∓mu - 2b"
            } else {
                "an element of the forbidden set"
            },
            power_labels("w", &w, std::slice::from_ref(&mu))[0],
            c.result.hull_dimension(),
        ));
    }
    rep.notes.push(format!(
        "example {}: the source cites the even-characteristic concatenation theorem; the odd-characteristic statement is the one applied",
        case.id
    ));
    Ok(rep)
}
