//! Named curves with their fields, seed points and known censuses.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{parse_element, FieldContext, FieldElement};
use crate::groupkit::{homology_decomposition, Decomposition};
use crate::plane::{ProjPoint, ProjTransform};
use crate::polyring::{Exponent, TriForm};
use crate::qgal::CensusReport;

/// Family parameters by name, e.g. `d`, `n`, `a`, `conductor`. Values are
/// integers or coefficient expressions.
pub type Params = BTreeMap<String, String>;

pub const NAMES: [&str; 7] = [
    "fermat",
    "hessian_sextic",
    "klein_model",
    "quartic_family",
    "halfdeg_family",
    "coprime_example",
    "miura_example",
];

#[derive(Clone, Debug)]
pub struct NamedCurve {
    pub name: String,
    pub ctx: Arc<FieldContext>,
    pub form: TriForm,
    pub seeds: Vec<ProjPoint>,
    pub expected: Option<CensusReport>,
    pub expected_group_order: Option<usize>,
}

/// Splits `"fermat:6"` or `"quartic-family:1,0,0"` into a family name and
/// parameters. Positional values are assigned to the family's keys in order.
pub fn parse_spec(spec: &str) -> Result<(String, Params)> {
    let (raw, args) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let name = canonical_name(raw)?;
    let keys: &[&str] = match name.as_str() {
        "fermat" => &["d", "conductor"],
        "quartic_family" => &["a", "b", "c"],
        "halfdeg_family" => &["n", "a", "b", "c"],
        "miura_example" => &["n"],
        _ => &[],
    };
    let mut params = Params::new();
    if let Some(args) = args {
        let values: Vec<&str> = args.split(',').map(str::trim).collect();
        if values.len() > keys.len() {
            return Err(Error::BadParams(format!("{name} takes at most {} parameters", keys.len())));
        }
        for (k, v) in keys.iter().zip(values) {
            if v.is_empty() {
                return Err(Error::BadParams(format!("empty value for {k} in {spec:?}")));
            }
            params.insert(k.to_string(), v.to_string());
        }
    }
    Ok((name, params))
}

fn canonical_name(raw: &str) -> Result<String> {
    let name = raw.trim().replace('-', "_");
    let name = match name.as_str() {
        "hessian" => "hessian_sextic".to_string(),
        "klein" => "klein_model".to_string(),
        "halfdeg" => "halfdeg_family".to_string(),
        "miura" => "miura_example".to_string(),
        "coprime" => "coprime_example".to_string(),
        _ => name,
    };
    if NAMES.contains(&name.as_str()) {
        Ok(name)
    } else {
        Err(Error::UnknownName(raw.to_string()))
    }
}

fn int_param(params: &Params, key: &str, default: Option<u32>) -> Result<u32> {
    match params.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| Error::BadParams(format!("{key} must be a positive integer, got {v:?}"))),
        None => default.ok_or_else(|| Error::BadParams(format!("missing parameter {key}"))),
    }
}

fn coeff_param(ctx: &Arc<FieldContext>, params: &Params, key: &str, default: i64) -> Result<FieldElement> {
    match params.get(key) {
        Some(v) => parse_element(ctx, v),
        None => Ok(ctx.from_int(default)),
    }
}

fn check_keys(params: &Params, allowed: &[&str]) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::BadParams(format!("unexpected parameter {k}"))),
        None => Ok(()),
    }
}

/// Context Q(ζ_N) where N defaults to `base` and any override is a multiple of it.
fn context_for(params: &Params, base: u32) -> Result<Arc<FieldContext>> {
    let n = int_param(params, "conductor", Some(base))?;
    if n == 0 || n % base != 0 {
        return Err(Error::BadParams(format!("conductor must be a multiple of {base}, got {n}")));
    }
    FieldContext::cyclotomic(n)
}

fn form(ctx: &Arc<FieldContext>, terms: Vec<(Exponent, FieldElement)>) -> Result<TriForm> {
    let degree = terms.first().map_or(0, |(e, _)| e.iter().sum());
    TriForm::from_terms(ctx, degree, terms)
}

fn point(coords: [FieldElement; 3]) -> ProjPoint {
    ProjPoint::new(coords).expect("nonzero seed")
}

fn vertices(ctx: &Arc<FieldContext>) -> Vec<ProjPoint> {
    (0..3).map(|i| ProjPoint::vertex(ctx, i)).collect()
}

/// The three points (c:0:1), (0:c:1), (c:1:0) for each value c.
fn on_coordinate_lines(ctx: &Arc<FieldContext>, values: &[FieldElement]) -> Vec<ProjPoint> {
    let (zero, one) = (ctx.zero(), ctx.one());
    let mut out = Vec::new();
    for c in values {
        out.push(point([c.clone(), zero.clone(), one.clone()]));
        out.push(point([zero.clone(), c.clone(), one.clone()]));
        out.push(point([c.clone(), one.clone(), zero.clone()]));
    }
    out
}

fn outer_census(degree: u32, outer: &[(u32, usize)], inner: &[(u32, usize)]) -> CensusReport {
    CensusReport {
        degree,
        outer: outer.iter().copied().collect(),
        inner: inner.iter().copied().collect(),
        ..CensusReport::default()
    }
}

pub fn fermat(params: &Params) -> Result<NamedCurve> {
    check_keys(params, &["d", "conductor"])?;
    let d = int_param(params, "d", None)?;
    if d < 3 {
        return Err(Error::BadParams(format!("Fermat degree must be at least 3, got {d}")));
    }
    let base = if d % 2 == 0 { d } else { 2 * d };
    let ctx = context_for(params, base)?;
    let f = form(
        &ctx,
        vec![([d, 0, 0], ctx.one()), ([0, d, 0], ctx.one()), ([0, 0, d], ctx.one())],
    )?;
    let zd = ctx.zeta(d)?;
    // c^d = 1 for even d; η^d = −1 for odd d, with η = −ζ_d^k
    let sign = if d % 2 == 0 { ctx.one() } else { ctx.from_int(-1) };
    let values: Vec<FieldElement> = (0..d as u64).map(|k| &sign * &zd.pow(k)).collect();
    let mut seeds = vertices(&ctx);
    seeds.extend(on_coordinate_lines(&ctx, &values));
    let expected = if d % 2 == 0 {
        outer_census(d, &[(d, 3), (2, 3 * d as usize)], &[])
    } else {
        outer_census(d, &[(d, 3)], &[(2, 3 * d as usize)])
    };
    Ok(NamedCurve {
        name: format!("fermat:{d}"),
        ctx,
        form: f,
        seeds,
        expected: Some(expected),
        expected_group_order: (d >= 4).then_some(6 * (d as usize) * (d as usize)),
    })
}

pub fn hessian_sextic(params: &Params) -> Result<NamedCurve> {
    check_keys(params, &[])?;
    let ctx = FieldContext::cyclotomic(3)?;
    let f = TriForm::from_int_terms(
        &ctx,
        &[
            ([6, 0, 0], 1),
            ([0, 6, 0], 1),
            ([0, 0, 6], 1),
            ([3, 3, 0], -10),
            ([0, 3, 3], -10),
            ([3, 0, 3], -10),
        ],
    );
    let mut seeds = vertices(&ctx);
    seeds.push(ProjPoint::from_ints(&ctx, [1, 1, 1])?);
    Ok(NamedCurve {
        name: "hessian_sextic".into(),
        ctx,
        form: f,
        seeds,
        expected: Some(outer_census(6, &[(3, 12)], &[])),
        expected_group_order: Some(216),
    })
}

/// The Klein-model constants: the context Q(ζ₂₈)(λ), the root a of
/// a² + 3a + 18 = 0 built from the quadratic Gauss sum mod 7, and λ with
/// λ² = 4a/(6 − a).
pub fn klein_constants() -> Result<(Arc<FieldContext>, FieldElement, FieldElement)> {
    let ctx = FieldContext::cyclotomic(28)?;
    let z7 = ctx.zeta(7)?;
    let mut g = ctx.zero();
    for k in 1..7u64 {
        let term = z7.pow(k);
        g = if [1, 2, 4].contains(&k) { &g + &term } else { &g - &term };
    }
    let a = (&ctx.from_int(-3) + &(&ctx.from_int(3) * &g)).div(&ctx.from_int(2))?;
    // 4a/(6 − a) = (−3 + g)/2 = ((1 + g)/2)², so no quadratic adjunct is needed
    let lambda = (&ctx.one() + &g).div(&ctx.from_int(2))?;
    Ok((ctx, a, lambda))
}

/// The involution from the Klein-model construction, which exchanges
/// (1:0:0) and (0:−1:1) and fixes (0:1:1).
pub fn klein_tau(ctx: &Arc<FieldContext>, lambda: &FieldElement) -> Result<ProjTransform> {
    let two_over = ctx.from_int(2).div(lambda)?;
    let one = ctx.one();
    ProjTransform::new([
        [ctx.zero(), two_over.clone(), -&two_over],
        [lambda.clone(), one.clone(), one.clone()],
        [-lambda, one.clone(), one],
    ])
}

pub fn klein_model(params: &Params) -> Result<NamedCurve> {
    check_keys(params, &[])?;
    let (ctx, a, lambda) = klein_constants()?;
    let quad = &(&a * &a) + &(&ctx.from_int(3) * &a);
    assert!((&quad + &ctx.from_int(18)).is_zero(), "a^2 + 3a + 18 = 0");
    assert_eq!(
        &lambda * &lambda,
        (&ctx.from_int(4) * &a).div(&(&ctx.from_int(6) - &a))?,
        "lambda^2 = 4a/(6-a)"
    );
    let one = ctx.one();
    let f = form(
        &ctx,
        vec![
            ([4, 0, 0], one.clone()),
            ([0, 4, 0], one.clone()),
            ([0, 0, 4], one),
            ([2, 2, 0], a.clone()),
            ([0, 2, 2], a.clone()),
            ([2, 0, 2], a),
        ],
    )?;
    let mut seeds = vertices(&ctx);
    seeds.extend(on_coordinate_lines(&ctx, &[ctx.one(), ctx.from_int(-1)]));
    let tau = klein_tau(&ctx, &lambda)?;
    match homology_decomposition(&tau)? {
        Decomposition::Homology { center, .. } => seeds.push(center),
        other => return Err(Error::NotHomology(format!("{other:?}"))),
    }
    Ok(NamedCurve {
        name: "klein_model".into(),
        ctx,
        form: f,
        seeds,
        expected: Some(outer_census(4, &[(2, 21)], &[])),
        expected_group_order: Some(168),
    })
}

/// Points with coordinates in {0, ±1, ±i} on the coordinate lines, plus the vertices.
fn unit_line_seeds(ctx: &Arc<FieldContext>) -> Result<Vec<ProjPoint>> {
    let i = ctx.zeta(4)?;
    let values = [ctx.one(), ctx.from_int(-1), i.clone(), -&i];
    let mut seeds = vertices(ctx);
    seeds.extend(on_coordinate_lines(ctx, &values));
    Ok(seeds)
}

pub fn quartic_family(params: &Params) -> Result<NamedCurve> {
    check_keys(params, &["a", "b", "c", "conductor"])?;
    let ctx = context_for(params, 4)?;
    let (a, b, c) = (
        coeff_param(&ctx, params, "a", 0)?,
        coeff_param(&ctx, params, "b", 0)?,
        coeff_param(&ctx, params, "c", 0)?,
    );
    let one = ctx.one();
    let f = form(
        &ctx,
        vec![
            ([4, 0, 0], one.clone()),
            ([0, 4, 0], one.clone()),
            ([0, 0, 4], one),
            ([2, 2, 0], a.clone()),
            ([0, 2, 2], b.clone()),
            ([2, 0, 2], c.clone()),
        ],
    )?;
    Ok(NamedCurve {
        name: format!("quartic_family:{a},{b},{c}"),
        seeds: unit_line_seeds(&ctx)?,
        ctx,
        form: f,
        expected: None,
        expected_group_order: None,
    })
}

pub fn halfdeg_family(params: &Params) -> Result<NamedCurve> {
    check_keys(params, &["n", "a", "b", "c", "conductor"])?;
    let n = int_param(params, "n", None)?;
    if n < 2 {
        return Err(Error::BadParams(format!("n must be at least 2, got {n}")));
    }
    let ctx = context_for(params, 2 * n)?;
    let (a, b, c) = (
        coeff_param(&ctx, params, "a", 1)?,
        coeff_param(&ctx, params, "b", 1)?,
        coeff_param(&ctx, params, "c", 1)?,
    );
    let d = 2 * n;
    let one = ctx.one();
    let f = form(
        &ctx,
        vec![
            ([d, 0, 0], one.clone()),
            ([0, d, 0], one.clone()),
            ([0, 0, d], one),
            ([n, n, 0], a.clone()),
            ([0, n, n], b.clone()),
            ([n, 0, n], c.clone()),
        ],
    )?;
    Ok(NamedCurve {
        name: format!("halfdeg_family:{n},{a},{b},{c}"),
        seeds: vertices(&ctx),
        ctx,
        form: f,
        expected: None,
        expected_group_order: None,
    })
}

pub fn coprime_example(params: &Params) -> Result<NamedCurve> {
    check_keys(params, &[])?;
    let ctx = FieldContext::cyclotomic(6)?;
    let f = TriForm::from_int_terms(&ctx, &[([6, 0, 1], 1), ([3, 4, 0], 1), ([0, 6, 1], 1), ([0, 0, 7], 1)]);
    Ok(NamedCurve {
        name: "coprime_example".into(),
        seeds: vertices(&ctx),
        ctx,
        form: f,
        expected: None,
        expected_group_order: None,
    })
}

pub fn miura_example(params: &Params) -> Result<NamedCurve> {
    check_keys(params, &["n"])?;
    let n = int_param(params, "n", None)?;
    if n < 1 {
        return Err(Error::BadParams("n must be positive".into()));
    }
    let ctx = FieldContext::cyclotomic(2 * n)?;
    // Y(X² + Y²)^n + X^{n+1}Z^n + Y^{n+1}Z^n + YZ^{2n}
    let x2y2 = TriForm::from_int_terms(&ctx, &[([2, 0, 0], 1), ([0, 2, 0], 1)]);
    let y = TriForm::from_int_terms(&ctx, &[([0, 1, 0], 1)]);
    let rest = TriForm::from_int_terms(
        &ctx,
        &[([n + 1, 0, n], 1), ([0, n + 1, n], 1), ([0, 1, 2 * n], 1)],
    );
    let f = y.mul(&x2y2.pow(n)).add(&rest);
    Ok(NamedCurve {
        name: format!("miura_example:{n}"),
        seeds: vertices(&ctx),
        ctx,
        form: f,
        expected: None,
        expected_group_order: None,
    })
}

pub fn build_curve(name: &str, params: &Params) -> Result<NamedCurve> {
    match canonical_name(name)?.as_str() {
        "fermat" => fermat(params),
        "hessian_sextic" => hessian_sextic(params),
        "klein_model" => klein_model(params),
        "quartic_family" => quartic_family(params),
        "halfdeg_family" => halfdeg_family(params),
        "coprime_example" => coprime_example(params),
        "miura_example" => miura_example(params),
        _ => unreachable!("canonical names are exhaustive"),
    }
}

/// The exact census for families where it is known to be complete.
pub fn expected_census(name: &str, params: &Params) -> Result<CensusReport> {
    build_curve(name, params)?
        .expected
        .ok_or_else(|| Error::NoExpectation(name.to_string()))
}

pub fn seed_points(name: &str, params: &Params) -> Result<Vec<ProjPoint>> {
    Ok(build_curve(name, params)?.seeds)
}

/// Builds from a `name:params` spec string.
pub fn from_spec(spec: &str) -> Result<NamedCurve> {
    let (name, params) = parse_spec(spec)?;
    build_curve(&name, &params)
}
