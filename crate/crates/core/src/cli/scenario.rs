use std::collections::BTreeSet;
use std::fmt::Display;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::corpus::{self, klein_constants, NamedCurve};
use crate::error::{Error, Result};
use crate::groupkit::{closure, homology_decomposition, preserves_curve, Decomposition, DEFAULT_CLOSURE_CAP};
use crate::plane::{field_flexes, ProjPoint, ProjTransform};
use crate::qgal::{
    census, discover, dual_certificate, galois_closure_bounds, is_gpair, predicted_galois_group,
    quasi_galois_order, verify_certificate, QGCertificate,
};

/// One expected-versus-computed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioCheck {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl ScenarioCheck {
    fn eq<T: Display + PartialEq>(name: impl Into<String>, expected: T, computed: T) -> Self {
        ScenarioCheck {
            name: name.into(),
            passed: expected == computed,
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    fn holds(name: impl Into<String>, ok: bool) -> Self {
        ScenarioCheck::eq(name, true, ok)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub scenario: String,
    pub passed: bool,
    pub checks: Vec<ScenarioCheck>,
    pub duration_ms: u64,
}

impl ScenarioResult {
    /// The failing checks.
    pub fn diff(&self) -> Vec<&ScenarioCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub const SCENARIOS: [&str; 9] = [
    "klein21",
    "hessian12",
    "fermat:<d>",
    "halfdeg:<n>[,a,b,c]",
    "quartic-family:<a,b,c>",
    "dual",
    "bounds",
    "groups",
    "flex:<d>",
];

#[derive(Clone, Debug)]
pub enum Scenario {
    Klein21,
    Hessian12,
    Fermat(NamedCurve),
    Halfdeg(NamedCurve, u32),
    QuarticFamily(NamedCurve, String),
    Dual,
    Bounds,
    Groups,
    Flex(u32),
}

impl Scenario {
    /// Parses a scenario id; family parameters are validated by building the curve.
    pub fn parse(id: &str) -> Result<Scenario> {
        let (head, args) = match id.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (id, None),
        };
        let no_args = |s: Scenario| match args {
            None => Ok(s),
            Some(_) => Err(Error::BadParams(format!("scenario {head} takes no parameters"))),
        };
        let need_args = || args.ok_or_else(|| Error::BadParams(format!("scenario {head} needs parameters")));
        match head {
            "klein21" => no_args(Scenario::Klein21),
            "hessian12" => no_args(Scenario::Hessian12),
            "dual" => no_args(Scenario::Dual),
            "bounds" => no_args(Scenario::Bounds),
            "groups" => no_args(Scenario::Groups),
            "fermat" => Ok(Scenario::Fermat(corpus::from_spec(&format!("fermat:{}", need_args()?))?)),
            "halfdeg" => {
                let a = need_args()?;
                let c = corpus::from_spec(&format!("halfdeg_family:{a}"))?;
                let n = c.form.degree() / 2;
                Ok(Scenario::Halfdeg(c, n))
            }
            "quartic-family" => {
                let a = need_args()?;
                let c = corpus::from_spec(&format!("quartic_family:{a}"))?;
                Ok(Scenario::QuarticFamily(c, a.replace(' ', "")))
            }
            "flex" => {
                let a = need_args()?;
                let d: u32 = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadParams(format!("flex degree {a:?} is not an integer")))?;
                if d < 3 {
                    return Err(Error::BadParams(format!("flex degree must be at least 3, got {d}")));
                }
                Ok(Scenario::Flex(d))
            }
            _ => Err(Error::UnknownName(id.to_string())),
        }
    }

    pub fn run(&self, id: &str, cap: usize) -> ScenarioResult {
        let start = Instant::now();
        let checks = match self.checks(cap) {
            Ok(c) => c,
            Err(e) => vec![ScenarioCheck {
                name: "completed".into(),
                expected: "no error".into(),
                computed: format!("{} ({})", e, e.code()),
                passed: false,
            }],
        };
        ScenarioResult {
            scenario: id.to_string(),
            passed: !checks.is_empty() && checks.iter().all(|c| c.passed),
            checks,
            duration_ms: start.elapsed().as_millis() as u64,
        }
    }

    fn checks(&self, cap: usize) -> Result<Vec<ScenarioCheck>> {
        match self {
            Scenario::Klein21 => klein21(cap),
            Scenario::Hessian12 => hessian12(cap),
            Scenario::Fermat(c) => fermat(c, cap),
            Scenario::Halfdeg(c, n) => halfdeg(c, *n),
            Scenario::QuarticFamily(c, args) => quartic_family(c, args, cap),
            Scenario::Dual => dual(cap),
            Scenario::Bounds => bounds(cap),
            Scenario::Groups => groups(cap),
            Scenario::Flex(d) => flex(*d),
        }
    }
}

fn named(spec: &str) -> Result<NamedCurve> {
    corpus::from_spec(spec)
}

fn generators(certs: &[QGCertificate]) -> Vec<ProjTransform> {
    certs.iter().filter_map(|c| c.generator.clone()).collect()
}

fn all_verify(c: &NamedCurve, certs: &[QGCertificate]) -> ScenarioCheck {
    ScenarioCheck::holds("all certificates verify", certs.iter().all(|x| verify_certificate(&c.form, x)))
}

fn klein21(cap: usize) -> Result<Vec<ScenarioCheck>> {
    let (ctx, a, lambda) = klein_constants()?;
    let mut out = vec![
        ScenarioCheck::holds(
            "a^2+3a+18 = 0",
            (&(&(&a * &a) + &(&ctx.from_int(3) * &a)) + &ctx.from_int(18)).is_zero(),
        ),
        ScenarioCheck::holds(
            "lambda^2 = 4a/(6-a)",
            &lambda * &lambda == (&ctx.from_int(4) * &a).div(&(&ctx.from_int(6) - &a))?,
        ),
    ];
    let c = named("klein_model")?;
    let certs = discover(&c.form, &c.seeds, cap)?;
    let r = census(c.form.degree(), &certs);
    out.push(ScenarioCheck::eq("certificates", 21, certs.len()));
    out.push(ScenarioCheck::eq("δ'[2]", 21, r.outer_exact(2)));
    out.push(ScenarioCheck::eq("Galois points", 0, certs.iter().filter(|x| x.galois()).count()));
    out.push(all_verify(&c, &certs));
    let g = closure(&generators(&certs), DEFAULT_CLOSURE_CAP)?;
    out.push(ScenarioCheck::eq("group order", 168, g.order()));
    let inv = g.involutions();
    out.push(ScenarioCheck::eq("involutions", 21, inv.len()));
    let points: BTreeSet<&ProjPoint> = certs.iter().map(|x| &x.point).collect();
    let mut centered = 0;
    for s in &inv {
        if let Decomposition::Homology { center, .. } = homology_decomposition(s)? {
            if points.contains(&center) {
                centered += 1;
            }
        }
    }
    out.push(ScenarioCheck::eq("involutions centered at certificate points", inv.len(), centered));
    Ok(out)
}

fn hessian12(cap: usize) -> Result<Vec<ScenarioCheck>> {
    let c = named("hessian_sextic")?;
    let certs = discover(&c.form, &c.seeds, cap)?;
    let r = census(6, &certs);
    let mut out = vec![
        ScenarioCheck::eq("certificates", 12, certs.len()),
        ScenarioCheck::eq("δ'[3]", 12, r.outer_exact(3)),
        ScenarioCheck::eq("inner points", 0, r.inner_at_least(2)),
        all_verify(&c, &certs),
    ];
    let gens = generators(&certs);
    let g = closure(&gens, DEFAULT_CLOSURE_CAP)?;
    out.push(ScenarioCheck::eq("group order", 216, g.order()));
    out.push(ScenarioCheck::holds("group preserves the curve", preserves_curve(&g, &c.form)));
    let mut with_swaps = gens;
    for perm in [[1, 0, 2], [2, 1, 0], [0, 2, 1]] {
        with_swaps.push(ProjTransform::permutation(&c.ctx, perm));
    }
    let h = closure(&with_swaps, DEFAULT_CLOSURE_CAP)?;
    let same = h.order() == g.order() && h.elements().iter().all(|x| g.contains(x));
    out.push(ScenarioCheck::holds("coordinate swaps add nothing", same));
    Ok(out)
}

fn fermat(c: &NamedCurve, cap: usize) -> Result<Vec<ScenarioCheck>> {
    let d = c.form.degree();
    let certs = discover(&c.form, &c.seeds, cap)?;
    let r = census(d, &certs);
    let mut out = Vec::new();
    if d % 2 == 0 {
        out.push(ScenarioCheck::eq(format!("δ'[{d}]"), 3, r.outer_exact(d)));
        out.push(ScenarioCheck::eq("δ'[2]", 3 * d as usize, r.outer_exact(2)));
        out.push(ScenarioCheck::eq("δ[≥2]", 0, r.inner_at_least(2)));
    } else {
        out.push(ScenarioCheck::eq(format!("δ'[{d}]"), 3, r.outer_exact(d)));
        out.push(ScenarioCheck::eq("δ[2]", 3 * d as usize, r.inner_exact(2)));
        let galois = certs.iter().filter(|x| !x.on_curve && x.galois()).count();
        out.push(ScenarioCheck::eq("outer Galois points", 3, galois));
    }
    out.push(ScenarioCheck::eq("certificates", 3 + 3 * d as usize, certs.len()));
    out.push(all_verify(c, &certs));
    out.push(ScenarioCheck::holds("census bounds hold", r.all_bounds_hold()));
    Ok(out)
}

fn halfdeg(c: &NamedCurve, n: u32) -> Result<Vec<ScenarioCheck>> {
    let certs: Vec<QGCertificate> = (0..3)
        .map(|i| quasi_galois_order(&c.form, &ProjPoint::vertex(&c.ctx, i)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for cert in &certs {
        out.push(ScenarioCheck::eq(format!("order at {}", cert.point), n, cert.order));
    }
    out.push(all_verify(c, &certs));
    for i in 0..3 {
        for j in i + 1..3 {
            let w = is_gpair(&certs[i], &certs[j])?;
            out.push(ScenarioCheck::holds(
                format!("G-pair {}, {}", certs[i].point, certs[j].point),
                w.is_gpair(),
            ));
        }
    }
    Ok(out)
}

fn quartic_family(c: &NamedCurve, args: &str, cap: usize) -> Result<Vec<ScenarioCheck>> {
    let certs = discover(&c.form, &c.seeds, cap)?;
    let r = census(4, &certs);
    let mut out = vec![
        all_verify(c, &certs),
        ScenarioCheck::holds("census bounds hold", r.all_bounds_hold()),
    ];
    if args == "1,0,0" {
        let p = quasi_galois_order(&c.form, &ProjPoint::vertex(&c.ctx, 2))?;
        out.push(ScenarioCheck::eq("order at 0:0:1", 4, p.order));
        out.push(ScenarioCheck::holds("0:0:1 is outer Galois", p.galois() && !p.on_curve));
        let six: Vec<ProjPoint> = ["1:0:0", "0:1:0", "1:1:0", "1:-1:0", "z:1:0", "-z:1:0"]
            .iter()
            .map(|s| ProjPoint::parse(&c.ctx, s))
            .collect::<Result<_>>()?;
        for q in &six {
            out.push(ScenarioCheck::eq(format!("order at {q}"), 2, quasi_galois_order(&c.form, q)?.order));
        }
        let fixed = discover(&c.form, &six, cap)?;
        out.push(ScenarioCheck::eq("discovery from the six points", 6, fixed.len()));
    } else {
        out.push(ScenarioCheck::holds("some quasi-Galois point found", !certs.is_empty()));
    }
    Ok(out)
}

fn dual(cap: usize) -> Result<Vec<ScenarioCheck>> {
    let mut out = Vec::new();
    for spec in ["fermat:6", "hessian_sextic", "klein_model", "coprime_example"] {
        let c = named(spec)?;
        let certs = discover(&c.form, &c.seeds, cap)?;
        let mut ok = 0;
        for cert in &certs {
            let d = dual_certificate(cert)?;
            if d.order == cert.order && &dual_certificate(&d)? == cert {
                ok += 1;
            }
        }
        out.push(ScenarioCheck::eq(format!("{spec}: dual round trips"), certs.len(), ok));
    }
    Ok(out)
}

fn bounds(cap: usize) -> Result<Vec<ScenarioCheck>> {
    let b = galois_closure_bounds(2, 4)?;
    let p = predicted_galois_group(3, 6)?;
    let mut out = vec![
        ScenarioCheck::eq("closure bounds (2,4)", "(4, 8)".to_string(), format!("({}, {})", b.lower, b.upper_generic)),
        ScenarioCheck::eq("predicted group (3,6)", "18 (Z/3Z) × D_6".to_string(), format!("{} {}", p.order, p.label)),
    ];
    for spec in ["fermat:4", "fermat:5", "fermat:6", "hessian_sextic", "klein_model", "quartic_family:1,0,0"] {
        let c = named(spec)?;
        let certs = discover(&c.form, &c.seeds, cap)?;
        let r = census(c.form.degree(), &certs);
        out.push(ScenarioCheck::holds(format!("{spec}: census bounds hold"), r.all_bounds_hold()));
    }
    Ok(out)
}

fn groups(cap: usize) -> Result<Vec<ScenarioCheck>> {
    let mut out = Vec::new();
    for spec in ["hessian_sextic", "klein_model"] {
        let c = named(spec)?;
        let certs = discover(&c.form, &c.seeds, cap)?;
        let g = closure(&generators(&certs), DEFAULT_CLOSURE_CAP)?;
        let expected = c.expected_group_order.expect("corpus group order");
        out.push(ScenarioCheck::eq(format!("{spec}: group order"), expected, g.order()));
        out.push(ScenarioCheck::holds(format!("{spec}: preserves the curve"), preserves_curve(&g, &c.form)));
    }
    Ok(out)
}

fn flex(d: u32) -> Result<Vec<ScenarioCheck>> {
    let c = named(&format!("fermat:{d},{}", 2 * d))?;
    let (flexes, complete) = field_flexes(&c.form)?;
    let total: u32 = flexes.iter().map(|(_, w)| w).sum();
    Ok(vec![
        ScenarioCheck::holds("all flexes in the field", complete),
        ScenarioCheck::eq("flex total", 3 * d * (d - 2), total),
    ])
}
