use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::corpus::NamedCurve;
use crate::error::{Error, Result};
use crate::exactnum::{parse_element, render, FieldContext};
use crate::plane::ProjPoint;
use crate::polyring::TriForm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldBlock {
    pub conductor: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_adjunct: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: [u32; 3],
    pub coeff: String,
}

/// On-disk curve description. Coefficients and seed coordinates use the
/// expression grammar, with `z` for ζ_N and `s` for the adjunct root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub name: String,
    pub field: FieldBlock,
    pub degree: u32,
    pub terms: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<String>,
}

/// A curve file after parsing and validation.
#[derive(Clone, Debug)]
pub struct LoadedCurve {
    pub name: String,
    pub ctx: Arc<FieldContext>,
    pub form: TriForm,
    pub seeds: Vec<ProjPoint>,
}

impl CurveFile {
    pub fn read(path: &Path) -> Result<CurveFile> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidCurveFile(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<CurveFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidCurveFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve files serialize")
    }

    pub fn load(&self) -> Result<LoadedCurve> {
        let ctx = FieldContext::make(self.field.conductor, self.field.sqrt_adjunct.as_deref())
            .map_err(|e| Error::InvalidCurveFile(format!("field: {e}")))?;
        if self.terms.is_empty() {
            return Err(Error::InvalidCurveFile("terms: empty".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            if t.exponents.iter().sum::<u32>() != self.degree {
                return Err(Error::InvalidCurveFile(format!(
                    "terms[{i}].exponents: {:?} does not sum to degree {}",
                    t.exponents, self.degree
                )));
            }
            let c = parse_element(&ctx, &t.coeff)
                .map_err(|e| Error::InvalidCurveFile(format!("terms[{i}].coeff: {e}")))?;
            if c.is_zero() {
                return Err(Error::InvalidCurveFile(format!("terms[{i}].coeff: zero coefficient")));
            }
            terms.push((t.exponents, c));
        }
        let form = TriForm::from_terms(&ctx, self.degree, terms)?;
        if form.is_zero() {
            return Err(Error::InvalidCurveFile("terms cancel to the zero form".into()));
        }
        let seeds = self
            .seeds
            .iter()
            .enumerate()
            .map(|(i, s)| {
                ProjPoint::parse(&ctx, s).map_err(|e| Error::InvalidCurveFile(format!("seeds[{i}]: {e}")))
            })
            .collect::<Result<_>>()?;
        Ok(LoadedCurve {
            name: self.name.clone(),
            ctx,
            form,
            seeds,
        })
    }

    pub fn from_form(name: &str, form: &TriForm, seeds: &[ProjPoint]) -> CurveFile {
        let ctx = form.ctx();
        CurveFile {
            name: name.to_string(),
            field: FieldBlock {
                conductor: ctx.conductor(),
                sqrt_adjunct: ctx.adjunct().map(|w| render(&w)),
            },
            degree: form.degree(),
            terms: form
                .terms()
                .iter()
                .rev()
                .map(|(e, c)| TermRecord {
                    exponents: *e,
                    coeff: render(c),
                })
                .collect(),
            seeds: seeds.iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn from_named(c: &NamedCurve) -> CurveFile {
        CurveFile::from_form(&c.name, &c.form, &c.seeds)
    }
}

/// Seed points, one literal per line (`#` starts a comment), or a JSON array
/// of literals.
pub fn parse_seeds(ctx: &Arc<FieldContext>, text: &str) -> Result<Vec<ProjPoint>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let items: Vec<String> = serde_json::from_str(trimmed)?;
        return items.iter().map(|s| ProjPoint::parse(ctx, s)).collect();
    }
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| ProjPoint::parse(ctx, l))
        .collect()
}
