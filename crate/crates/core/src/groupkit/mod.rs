//! Finite subgroups of PGL(3) given by generators.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::FieldElement;
use crate::plane::{adjugate, identity, mat_scale, mat_sub, ProjLine, ProjPoint, ProjTransform};
use crate::polyring::{det3, Matrix3, TriForm, UniPoly};

pub const DEFAULT_CLOSURE_CAP: usize = 2048;

/// A finite group of normalized transforms, elements in breadth-first order
/// from the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<ProjTransform>,
    members: HashSet<ProjTransform>,
    generators: Vec<ProjTransform>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjTransform] {
        &self.elements
    }

    pub fn generators(&self) -> &[ProjTransform] {
        &self.generators
    }

    pub fn contains(&self, g: &ProjTransform) -> bool {
        self.members.contains(g)
    }

    /// Histogram of element orders.
    pub fn element_orders(&self) -> BTreeMap<u32, usize> {
        let limit = self.order() as u32;
        let mut out = BTreeMap::new();
        for g in &self.elements {
            let k = g.order(limit).expect("element of a finite group");
            *out.entry(k).or_insert(0) += 1;
        }
        out
    }

    pub fn involutions(&self) -> Vec<&ProjTransform> {
        self.elements.iter().filter(|g| g.order(2) == Some(2)).collect()
    }

    pub fn report(&self) -> GroupReport {
        let orders = self.element_orders();
        let mut centers = BTreeSet::new();
        for g in &self.elements {
            if let Ok(Decomposition::Homology { center, .. }) = homology_decomposition(g) {
                centers.insert(center);
            }
        }
        GroupReport {
            order: self.order(),
            generator_count: self.generators.len(),
            involutions: orders.get(&2).copied().unwrap_or(0),
            element_orders: orders,
            homology_centers: centers.iter().map(|p| p.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub order: usize,
    pub generator_count: usize,
    pub element_orders: BTreeMap<u32, usize>,
    pub involutions: usize,
    pub homology_centers: Vec<String>,
}

/// Breadth-first closure of the generators under composition.
pub fn closure(generators: &[ProjTransform], cap: usize) -> Result<MatrixGroup> {
    let Some(first) = generators.first() else {
        return Err(Error::BadParams("closure needs at least one generator".into()));
    };
    let id = ProjTransform::identity(first.ctx());
    let mut group = MatrixGroup {
        elements: vec![id.clone()],
        members: HashSet::from([id.clone()]),
        generators: generators.to_vec(),
    };
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if group.members.insert(y.clone()) {
                group.elements.push(y.clone());
                if group.elements.len() > cap {
                    return Err(Error::ClosureCapExceeded {
                        cap,
                        partial: Box::new(group),
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(group)
}

/// Whether every element maps C to a scalar multiple of itself.
pub fn preserves_curve(g: &MatrixGroup, c: &TriForm) -> bool {
    g.elements.iter().all(|a| a.preserves(c))
}

/// Eigenstructure of a transform with a repeated eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    Identity,
    /// Fixes `center` and every point of `axis`; `ratio` is the simple
    /// eigenvalue over the double one.
    Homology {
        center: ProjPoint,
        axis: ProjLine,
        ratio: FieldElement,
    },
    Elation {
        center: ProjPoint,
        axis: ProjLine,
    },
    NotCentral,
}

fn char_poly(m: &Matrix3) -> UniPoly {
    let ctx = m[0][0].ctx();
    let tr = &(&m[0][0] + &m[1][1]) + &m[2][2];
    let minor = |i: usize, j: usize| &(&m[i][i] * &m[j][j]) - &(&m[i][j] * &m[j][i]);
    let sum2 = &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2);
    UniPoly::new(vec![-det3(m), sum2, -tr, ctx.one()], ctx.zero())
}

fn rank(m: &Matrix3) -> usize {
    if m.iter().flatten().all(|x| x.is_zero()) {
        0
    } else if adjugate(m).iter().flatten().all(|x| x.is_zero()) {
        1
    } else if det3(m).is_zero() {
        2
    } else {
        3
    }
}

fn nonzero_column(m: &Matrix3) -> ProjPoint {
    (0..3)
        .find_map(|j| ProjPoint::new([m[0][j].clone(), m[1][j].clone(), m[2][j].clone()]).ok())
        .expect("nonzero matrix")
}

fn nonzero_row(m: &Matrix3) -> ProjLine {
    m.iter()
        .find_map(|row| ProjLine::new(row.clone()).ok())
        .expect("nonzero matrix")
}

/// Classifies g through the repeated root of its characteristic polynomial.
pub fn homology_decomposition(g: &ProjTransform) -> Result<Decomposition> {
    let m = g.matrix();
    let ctx = g.ctx();
    let p = char_poly(m);
    let h = p.gcd(&p.derivative());
    let mu = match h.degree() {
        Some(0) => return Ok(Decomposition::NotCentral),
        Some(1) | Some(2) => {
            // gcd is (t − μ) or (t − μ)²; either way μ = −(sub-leading)/deg
            let deg = h.degree().unwrap() as i64;
            -&h.coeff(deg as usize - 1).div(&ctx.from_int(deg))?
        }
        _ => return Err(Error::IrrationalEigenvalue(g.to_string())),
    };
    let shifted = mat_sub(m, &mat_scale(&identity(ctx), &mu));
    let r = rank(&shifted);
    let triple = h.degree() == Some(2);
    Ok(match (triple, r) {
        (true, 0) => Decomposition::Identity,
        (true, 1) => Decomposition::Elation {
            center: nonzero_column(&shifted),
            axis: nonzero_row(&shifted),
        },
        (false, 1) => {
            let tr = &(&m[0][0] + &m[1][1]) + &m[2][2];
            let lambda = &tr - &(&mu + &mu);
            Decomposition::Homology {
                center: nonzero_column(&shifted),
                axis: nonzero_row(&shifted),
                ratio: lambda.div(&mu)?,
            }
        }
        _ => Decomposition::NotCentral,
    })
}

/// Whether H is normal in G; H must be contained in G.
pub fn is_normal_subgroup(h: &MatrixGroup, g: &MatrixGroup) -> Result<bool> {
    if !h.elements.iter().all(|x| g.contains(x)) {
        return Err(Error::NotSubgroup);
    }
    for s in &g.generators {
        let s_inv = s.inverse();
        for x in &h.elements {
            if !h.contains(&s.compose(x).compose(&s_inv)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
