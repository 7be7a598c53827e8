use lcdt_core::concat::{concatenate, construct_lcd_concat, isometry_from_coeffs, search_isometry};
use lcdt_core::dickson::{dickson_poly, factor_profile};
use lcdt_core::dtcode::{dt_generator, existence_diagnosis, is_lcd_direct};
use lcdt_core::galois::{parse_element, parse_field};
use lcdt_core::reproduce::{reproduce, reproduce_all};
use lcdt_core::{
    DTParams, Embedding, Error, FieldElement, FiniteField, LinearCode, Matrix, Result,
    SpectralContext,
};
use serde_json::{json, Value};

use crate::{Command, GeneratorArgs};

/// Element strings that do not parse are usage errors, whatever the reason.
fn element(field: &FiniteField, text: &str) -> Result<FieldElement> {
    parse_element(field, text).map_err(|e| match e {
        Error::Parse(_) => e,
        other => Error::Parse(format!("element {text:?}: {other}")),
    })
}

pub fn run(cmd: &Command, budget: u64) -> Result<Value> {
    match cmd {
        Command::Field(f) => field_info(&parse_field(&f.field)?),
        Command::Dickson {
            code,
            roots,
            coeffs,
        } => {
            let field = parse_field(&code.field.field)?;
            let (want_roots, want_coeffs) = match (roots, coeffs) {
                (false, false) => (true, true),
                (r, c) => (*r, *c),
            };
            dickson(&field, code.n, want_roots, want_coeffs)
        }
        Command::LcdCheck { code, a, b } => {
            let field = parse_field(&code.field.field)?;
            let (a, b) = (element(&field, a)?, element(&field, b)?);
            lcd_check(&field, code.n, a, b)
        }
        Command::ForbiddenSet { code, b } => {
            let field = parse_field(&code.field.field)?;
            let b = element(&field, b)?;
            let mut out = SpectralContext::new(&field, code.n)?
                .forbidden_set(&b)?
                .to_json();
            out["field"] = json!(field.spec());
            Ok(out)
        }
        Command::Spectrum { code, a, b } => {
            let field = parse_field(&code.field.field)?;
            let (a, b) = (element(&field, a)?, element(&field, b)?);
            let ctx = SpectralContext::new(&field, code.n)?;
            let spec = ctx.spectrum(&a, &b)?;
            Ok(json!({
                "a": a.to_coeff_string(),
                "b": b.to_coeff_string(),
                "eigenvalues": spec.to_json(),
                "field": field.spec(),
                "n": code.n,
                "singular": spec.roots().any(|x| x.is_zero()),
            }))
        }
        Command::Diagnose { code } => {
            let field = parse_field(&code.field.field)?;
            diagnose(&field, code.n)
        }
        Command::Distance(g) => {
            let code = parse_code(g)?;
            let w = code.weight_distribution(budget)?;
            Ok(json!({
                "d": w.min_distance(),
                "hull_dimension": code.hull_dimension(),
                "k": code.dimension(),
                "lcd": code.is_lcd(),
                "n": code.length(),
            }))
        }
        Command::Weights(g) => {
            let code = parse_code(g)?;
            let w = code.weight_distribution(budget)?;
            Ok(json!({
                "counts": w.to_json(),
                "d": w.min_distance(),
                "hull_dimension": code.hull_dimension(),
                "k": code.dimension(),
                "n": code.length(),
                "total": w.total(),
            }))
        }
        Command::Concat {
            outer_field,
            base_field,
            big_n,
            a,
            b,
            coeffs,
            strict,
            no_distance,
        } => {
            let ext = parse_field(outer_field)?;
            let emb = embedding(base_field.as_deref(), &ext)?;
            let dt = DTParams::new(&ext, *big_n, element(&ext, a)?, element(&ext, b)?)?;
            let coeffs = coeffs
                .split(';')
                .map(|c| element(&ext, c))
                .collect::<Result<Vec<_>>>()?;
            let map = isometry_from_coeffs(&emb, &coeffs)?;
            let mut code = if *strict {
                construct_lcd_concat(&dt, &map)?
            } else {
                concatenate(&map, &LinearCode::new(&dt_generator(&dt)?))?
            };
            if !no_distance {
                code.compute_distance(budget)?;
            }
            let mut out = code.to_json();
            out["params"] = json!({
                "a": dt.a.to_coeff_string(),
                "b": dt.b.to_coeff_string(),
                "N": dt.n,
                "outer_field": ext.spec(),
                "isometry": map.to_json(),
            });
            out["outer_lcd"] = json!(code.outer.is_lcd());
            Ok(out)
        }
        Command::SearchIsometry {
            field,
            base_field,
            n,
            d,
            seed,
        } => {
            let ext = parse_field(field)?;
            let emb = embedding(base_field.as_deref(), &ext)?;
            let map = search_isometry(&emb, *n, *d, *seed, budget)?;
            let mut out = map.to_json();
            out["seed"] = json!(seed);
            Ok(out)
        }
        Command::Reproduce { example } => match example {
            Some(id) => Ok(reproduce(id)?.to_json()),
            None => {
                let reports = reproduce_all()?;
                Ok(json!({
                    "all_match": reports.iter().all(|r| r.all_match()),
                    "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                }))
            }
        },
    }
}

fn embedding(base: Option<&str>, ext: &FiniteField) -> Result<Embedding> {
    let base = match base {
        Some(spec) => parse_field(spec)?,
        None => FiniteField::prime(ext.characteristic())?,
    };
    Embedding::new(&base, ext)
}

fn field_info(field: &FiniteField) -> Result<Value> {
    let mut out = json!({
        "characteristic": field.characteristic(),
        "degree": field.degree(),
        "modulus": field.modulus(),
        "order": field.order().to_string(),
        "spec": field.spec(),
    });
    if field.enumerable_order().is_ok() {
        let g = field.primitive_element()?;
        out["primitive_element"] = json!(g.to_coeff_string());
        out["generator_is_primitive"] = json!(g == field.generator());
    }
    Ok(out)
}

fn dickson(field: &FiniteField, n: usize, roots: bool, coeffs: bool) -> Result<Value> {
    let profile = factor_profile(n as u64, field.characteristic());
    let mut out = json!({
        "field": field.spec(),
        "n": n,
        "profile": {"m": profile.m, "r": profile.r},
    });
    if coeffs {
        let e = dickson_poly(n, field);
        out["coefficients"] = json!(e
            .coeffs()
            .iter()
            .map(|c| c.to_coeff_string())
            .collect::<Vec<_>>());
    }
    if roots {
        let ctx = SpectralContext::new(field, n)?;
        out["roots"] = ctx.dickson_roots().to_json();
        out["theta"] = json!(ctx.theta().map(|t| t.to_coeff_string()));
        out["theta_order"] = json!((profile.m > 0).then(|| profile.theta_order()));
    }
    Ok(out)
}

fn lcd_check(field: &FiniteField, n: usize, a: FieldElement, b: FieldElement) -> Result<Value> {
    let params = DTParams::new(field, n, a, b)?;
    let generator = dt_generator(&params)?;
    let direct = is_lcd_direct(&generator)?;
    let profile = factor_profile(n as u64, field.characteristic());
    // A 1x1 matrix has no off-diagonal entry, so b plays no role there.
    let (theorem, base, theta_field) = if n == 1 {
        (direct, Value::Null, field.spec())
    } else {
        let ctx = SpectralContext::new(field, n)?;
        let fs = ctx.forbidden_set(&params.b)?;
        let base: Vec<_> = fs
            .base_intersection
            .iter()
            .map(|x| x.to_coeff_string())
            .collect();
        (fs.admits(&params.a), json!(base), ctx.ext().spec())
    };
    Ok(json!({
        "a": params.a.to_coeff_string(),
        "b": params.b.to_coeff_string(),
        "direct": direct,
        "field": field.spec(),
        "forbidden_base": base,
        "n": n,
        "profile": {"m": profile.m, "r": profile.r},
        "theorem": theorem,
        "theta_field": theta_field,
    }))
}

fn diagnose(field: &FiniteField, n: usize) -> Result<Value> {
    let diag = existence_diagnosis(field, n)?;
    let mut out = diag.to_json();
    // Confirm every asserted guarantee against the forbidden sets when the
    // field is small enough to range over all b.
    if let Ok(q) = field.enumerable_order() {
        if q <= 1 << 12 && n >= 2 {
            let ctx = SpectralContext::new(field, n)?;
            let mut contradictions = Vec::new();
            for b in field.nonzero_elements()? {
                let fs = ctx.forbidden_set(&b)?;
                for name in diag.contradictions(&fs)? {
                    contradictions.push(json!({"b": b.to_coeff_string(), "corollary": name}));
                }
            }
            out["confirmed"] = json!(contradictions.is_empty());
            out["contradictions"] = json!(contradictions);
        }
    }
    out["asserted"] = json!(diag.asserted().map(|r| r.name).collect::<Vec<_>>());
    Ok(out)
}

fn parse_code(args: &GeneratorArgs) -> Result<LinearCode> {
    let field = parse_field(&args.field.field)?;
    let v: Value = serde_json::from_str(&args.generator)
        .map_err(|e| Error::Parse(format!("generator JSON: {e}")))?;
    let cell = |x: &Value| -> Result<FieldElement> {
        match x {
            Value::String(s) => element(&field, s),
            Value::Number(n) => element(&field, &n.to_string()),
            _ => Err(Error::Parse(format!("bad generator entry {x}"))),
        }
    };
    let shape = || Error::Parse("generator must be a list of rows or {rows, cols, entries}".into());
    let matrix = match &v {
        Value::Array(rows) => {
            let rows = rows
                .iter()
                .map(|r| r.as_array().ok_or_else(shape)?.iter().map(cell).collect())
                .collect::<Result<Vec<Vec<_>>>>()?;
            if rows.is_empty() {
                return Err(shape());
            }
            Matrix::from_rows(&field, rows)?
        }
        Value::Object(m) => {
            let dim = |k: &str| {
                m.get(k)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(shape)
            };
            let entries = m
                .get("entries")
                .and_then(Value::as_array)
                .ok_or_else(shape)?
                .iter()
                .map(cell)
                .collect::<Result<Vec<_>>>()?;
            Matrix::new(&field, dim("rows")?, dim("cols")?, entries)?
        }
        _ => return Err(shape()),
    };
    Ok(LinearCode::new(&matrix))
}
