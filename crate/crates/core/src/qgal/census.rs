use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::standard::QGCertificate;
use crate::error::{Error, Result};

/// One inequality checked against a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub detail: String,
    pub holds: bool,
}

/// Counts of quasi-Galois points by order, split into points on the curve
/// (δ[n]) and off it (δ'[n]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub degree: u32,
    pub inner: BTreeMap<u32, usize>,
    pub outer: BTreeMap<u32, usize>,
    pub inner_bounds: Vec<BoundCheck>,
    pub outer_bounds: Vec<BoundCheck>,
    pub degree_bounds: Vec<BoundCheck>,
}

impl CensusReport {
    pub fn inner_exact(&self, n: u32) -> usize {
        self.inner.get(&n).copied().unwrap_or(0)
    }

    pub fn outer_exact(&self, n: u32) -> usize {
        self.outer.get(&n).copied().unwrap_or(0)
    }

    /// δ[≥n].
    pub fn inner_at_least(&self, n: u32) -> usize {
        self.inner.range(n..).map(|(_, v)| v).sum()
    }

    /// δ'[≥n].
    pub fn outer_at_least(&self, n: u32) -> usize {
        self.outer.range(n..).map(|(_, v)| v).sum()
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.inner_bounds
            .iter()
            .chain(&self.outer_bounds)
            .chain(&self.degree_bounds)
            .all(|b| b.holds)
    }

    /// Whether the tallies match `other` (bound verdicts ignored).
    pub fn same_counts(&self, other: &CensusReport) -> bool {
        self.inner == other.inner && self.outer == other.outer
    }
}

/// Tallies the certificates with order ≥ 2 and evaluates the flex-count bounds.
pub fn census(degree: u32, certs: &[QGCertificate]) -> CensusReport {
    let mut report = CensusReport {
        degree,
        ..CensusReport::default()
    };
    for c in certs.iter().filter(|c| c.order >= 2) {
        let side = if c.on_curve { &mut report.inner } else { &mut report.outer };
        *side.entry(c.order).or_insert(0) += 1;
    }
    let d = degree as u64;
    let flex_total = 3 * d * d.saturating_sub(2);

    // inner: Σ δ[n](n − 1 + d(n − 2)) ≤ 3d(d − 2) over orders sharing a factor m
    let max_order = report.inner.keys().copied().max().unwrap_or(0);
    for m in 2..=max_order {
        let class: Vec<(u64, u64)> = report
            .inner
            .iter()
            .filter(|(n, _)| **n % m == 0)
            .map(|(&n, &k)| (n as u64, k as u64))
            .collect();
        if class.is_empty() {
            continue;
        }
        let weight = |n: u64| n - 1 + d * (n - 2);
        let lhs: u64 = class.iter().map(|&(n, k)| k * weight(n)).sum();
        report.inner_bounds.push(BoundCheck {
            name: format!("inner sum, orders divisible by {m}"),
            detail: format!("{lhs} <= {flex_total}"),
            holds: lhs <= flex_total,
        });
        let n0 = class[0].0;
        let count: u64 = class.iter().map(|&(_, k)| k).sum();
        if (n0 + 1) * weight(n0) > flex_total {
            report.degree_bounds.push(BoundCheck {
                name: format!("inner single point, orders divisible by {m}"),
                detail: format!("{count} <= 1"),
                holds: count <= 1,
            });
        } else if (n0 * n0 + n0 + 1) * weight(n0) > flex_total {
            report.degree_bounds.push(BoundCheck {
                name: format!("inner collinear, orders divisible by {m}"),
                detail: format!("{count} <= {d}"),
                holds: count <= d,
            });
        }
    }

    // outer: Σ_{n≥3} δ'[n](n − 2) ≤ 3(d − 2)
    let outer_total = 3 * d.saturating_sub(2);
    let lhs: u64 = report
        .outer
        .range(3..)
        .map(|(&n, &k)| k as u64 * (n as u64 - 2))
        .sum();
    report.outer_bounds.push(BoundCheck {
        name: "outer sum".into(),
        detail: format!("{lhs} <= {outer_total}"),
        holds: lhs <= outer_total,
    });
    for &n in report.outer.keys().filter(|&&n| n >= 3) {
        let n64 = n as u64;
        if (n64 + 1) * (n64 - 2) > outer_total {
            let k = report.outer_at_least(n);
            report.degree_bounds.push(BoundCheck {
                name: format!("outer order >= {n}"),
                detail: format!("{k} <= 3"),
                holds: k <= 3,
            });
        }
    }
    report
}

/// Bounds on the order of the Galois group of the closure of a projection
/// with a cyclic subgroup of order n, where r' = degree / n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureBounds {
    /// n·r'
    pub lower: BigUint,
    /// r'!·n^{r'}
    pub upper_generic: BigUint,
    /// R·n^{r'} with R the degree of an auxiliary closure, which is not computed.
    pub upper: String,
}

pub fn galois_closure_bounds(n: u32, degree: u32) -> Result<ClosureBounds> {
    if n < 2 || degree % n != 0 {
        return Err(Error::NotDivisible { n, degree });
    }
    let r = degree / n;
    let nn = BigUint::from(n);
    let fact: BigUint = (1..=r).map(BigUint::from).product();
    Ok(ClosureBounds {
        lower: &nn * BigUint::from(r),
        upper_generic: fact * nn.pow(r),
        upper: format!("R*{n}^{r}"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPrediction {
    pub order: u64,
    pub label: String,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// Order 2n² for a degree-2n curve; the isomorphism type is named only for odd primes n.
pub fn predicted_galois_group(n: u32, degree: u32) -> Result<GroupPrediction> {
    if n < 2 || degree != 2 * n {
        return Err(Error::NotApplicable { n, degree });
    }
    let label = if n % 2 == 1 && is_prime(n) {
        format!("(Z/{n}Z) × D_{}", 2 * n)
    } else {
        "order only (2n²)".to_string()
    };
    Ok(GroupPrediction {
        order: 2 * (n as u64) * (n as u64),
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_bound_examples() {
        let b = galois_closure_bounds(2, 4).unwrap();
        assert_eq!((b.lower, b.upper_generic), (4u32.into(), 8u32.into()));
        let b = galois_closure_bounds(3, 6).unwrap();
        assert_eq!((b.lower, b.upper_generic), (6u32.into(), 18u32.into()));
        assert!(matches!(galois_closure_bounds(3, 7), Err(Error::NotDivisible { n: 3, degree: 7 })));
    }

    #[test]
    fn group_predictions() {
        assert_eq!(
            predicted_galois_group(3, 6).unwrap(),
            GroupPrediction {
                order: 18,
                label: "(Z/3Z) × D_6".into()
            }
        );
        let p = predicted_galois_group(2, 4).unwrap();
        assert_eq!((p.order, p.label.as_str()), (8, "order only (2n²)"));
        assert_eq!(predicted_galois_group(5, 10).unwrap().label, "(Z/5Z) × D_10");
        assert_eq!(predicted_galois_group(9, 18).unwrap().label, "order only (2n²)");
        assert!(matches!(predicted_galois_group(3, 7), Err(Error::NotApplicable { .. })));
    }

    #[test]
    fn bounds_on_synthetic_tallies() {
        let mk = |inner: &[(u32, usize)], outer: &[(u32, usize)]| CensusReport {
            inner: inner.iter().copied().collect(),
            outer: outer.iter().copied().collect(),
            ..CensusReport::default()
        };
        // Fermat sextic tallies sit exactly on the outer bound
        let r = mk(&[], &[(6, 3), (2, 18)]);
        assert_eq!(r.outer_at_least(2), 21);
        assert_eq!(r.outer_at_least(3), 3);
        let fake: Vec<QGCertificate> = Vec::new();
        let empty = census(6, &fake);
        assert!(empty.all_bounds_hold());
        assert_eq!(empty.outer_bounds[0].detail, "0 <= 12");
    }
}
