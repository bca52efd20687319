mod common;

use std::sync::Arc;

use proptest::prelude::*;
use quasigalois::corpus::from_spec;
use quasigalois::exactnum::{FieldContext, FieldElement};
use quasigalois::groupkit::{closure, is_normal_subgroup, preserves_curve, DEFAULT_CLOSURE_CAP};
use quasigalois::plane::{
    curve_line_points, field_flexes, flex_contribution, is_smooth, ProjLine, ProjPoint, ProjTransform, Smoothness,
};
use quasigalois::polyring::{det3, Matrix3, TriForm};
use quasigalois::qgal::{census, discover, quasi_galois_order, DEFAULT_DISCOVERY_CAP};

fn ctx12() -> Arc<FieldContext> {
    FieldContext::cyclotomic(12).unwrap()
}

fn element(ctx: &Arc<FieldContext>, coeffs: &[i64]) -> FieldElement {
    coeffs
        .iter()
        .enumerate()
        .fold(ctx.zero(), |acc, (k, &c)| &acc + &(&ctx.from_int(c) * &ctx.zeta_power(k as i64)))
}

fn matrix(ctx: &Arc<FieldContext>, m: &[i64]) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| ctx.from_int(m[3 * i + j])))
}

fn form(ctx: &Arc<FieldContext>, d: u32, coeffs: &[i64]) -> TriForm {
    let mut terms = Vec::new();
    let mut k = 0;
    for i in 0..=d {
        for j in 0..=d - i {
            terms.push(([i, j, d - i - j], element(ctx, &[coeffs[k % coeffs.len()], coeffs[(k + 1) % coeffs.len()]])));
            k += 1;
        }
    }
    TriForm::from_terms(ctx, d, terms).unwrap()
}

fn scale_matrix(m: &Matrix3, a: &FieldElement) -> Matrix3 {
    m.clone().map(|row| row.map(|x| &x * a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitution_composes(
        f in prop::collection::vec(-3i64..=3, 10),
        a in prop::collection::vec(-2i64..=2, 9),
        b in prop::collection::vec(-2i64..=2, 9),
    ) {
        let ctx = ctx12();
        let (ma, mb) = (matrix(&ctx, &a), matrix(&ctx, &b));
        prop_assume!(!det3(&ma).is_zero() && !det3(&mb).is_zero());
        let f = form(&ctx, 3, &f);
        let ab = quasigalois::plane::mat_mul(&ma, &mb);
        let lhs = f.substitute_linear(&ma).unwrap().substitute_linear(&mb).unwrap();
        prop_assert_eq!(lhs, f.substitute_linear(&ab).unwrap());
    }

    #[test]
    fn slices_reassemble(f in prop::collection::vec(-3i64..=3, 15)) {
        let ctx = ctx12();
        let f = form(&ctx, 4, &f);
        let mut sum = TriForm::zero(&ctx, 4);
        for (i, a) in f.x_slices() {
            let x = TriForm::from_int_terms(&ctx, &[([i, 0, 0], 1)]);
            let term = if i == 0 { a.clone() } else { a.mul(&x) };
            sum = sum.add(&term);
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn hessian_is_covariant(
        f in prop::collection::vec(-2i64..=2, 10),
        a in prop::collection::vec(-2i64..=2, 9),
    ) {
        let ctx = ctx12();
        let ma = matrix(&ctx, &a);
        let det = det3(&ma);
        prop_assume!(!det.is_zero());
        let f = form(&ctx, 3, &f);
        let lhs = f.substitute_linear(&ma).unwrap().hessian();
        let rhs = f.hessian().substitute_linear(&ma).unwrap().scale(&(&det * &det));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn incidence_survives_transforms(
        p in prop::collection::vec(-3i64..=3, 3),
        q in prop::collection::vec(-3i64..=3, 3),
        a in prop::collection::vec(-3i64..=3, 9),
    ) {
        let ctx = ctx12();
        let ma = matrix(&ctx, &a);
        prop_assume!(!det3(&ma).is_zero());
        let t = ProjTransform::new(ma).unwrap();
        let Ok(p) = ProjPoint::from_ints(&ctx, [p[0], p[1], p[2]]) else { return Ok(()) };
        let Ok(q) = ProjPoint::from_ints(&ctx, [q[0], q[1], q[2]]) else { return Ok(()) };
        prop_assume!(p != q);
        let l = quasigalois::plane::line_through(&p, &q).unwrap();
        prop_assert!(l.contains(&p));
        let moved = t.apply_line(&l);
        prop_assert!(moved.contains(&t.apply(&p)));
        prop_assert!(moved.contains(&t.apply(&q)));
    }
}

#[test]
fn scalar_multiples_give_the_same_point() {
    let ctx = ctx12();
    let z = ctx.zeta_power(1);
    let coords = [ctx.from_int(2), z.clone(), &z + &ctx.one()];
    let p = ProjPoint::new(coords.clone()).unwrap();
    let q = ProjPoint::new(coords.map(|x| &x * &z)).unwrap();
    assert_eq!(p, q);
    let m = matrix(&ctx, &[1, 2, 0, 0, 1, 3, 1, 0, 1]);
    assert_eq!(
        ProjTransform::new(m.clone()).unwrap(),
        ProjTransform::new(scale_matrix(&m, &z)).unwrap()
    );
}

#[test]
fn euler_relation_on_corpus() {
    for spec in ["fermat:5", "hessian_sextic", "klein_model", "quartic_family:1,2,3", "coprime_example", "miura:2"] {
        let c = from_spec(spec).unwrap();
        let d = c.form.degree() as i64;
        let g = c.form.gradient();
        let mut euler = TriForm::zero(&c.ctx, c.form.degree());
        for (i, gi) in g.iter().enumerate() {
            let mut e = [0u32; 3];
            e[i] = 1;
            euler = euler.add(&gi.mul(&TriForm::from_int_terms(&c.ctx, &[(e, 1)])));
        }
        assert_eq!(euler, c.form.scale(&c.ctx.from_int(d)), "{spec}");
    }
}

#[test]
fn corpus_curves_are_smooth() {
    for spec in ["fermat:4", "fermat:5", "hessian_sextic", "klein_model", "quartic_family:1,0,0", "halfdeg:3"] {
        let c = from_spec(spec).unwrap();
        assert_eq!(is_smooth(&c.form), Smoothness::Smooth, "{spec}");
    }
}

#[test]
fn hessian_detects_flexes() {
    let c = from_spec("fermat:4,8").unwrap();
    let h = c.form.hessian();
    let (flexes, complete) = field_flexes(&c.form).unwrap();
    assert!(complete);
    for (q, w) in &flexes {
        assert!(*w >= 1);
        assert!(h.eval(q.coords()).is_zero());
    }
    // points on a few lines: vanishing Hessian exactly at flexes
    for l in ["1:1:1", "1:-1:0", "1:2:3", "0:0:1"] {
        let line = ProjLine::parse(&c.ctx, l).unwrap();
        for q in curve_line_points(&c.form, &line).unwrap().points {
            let is_flex = flex_contribution(&c.form, &q).unwrap() >= 1;
            assert_eq!(h.eval(q.coords()).is_zero(), is_flex, "{q}");
        }
    }
}

#[test]
fn line_intersections_sum_to_degree() {
    let c = from_spec("fermat:6,12").unwrap();
    for l in ["1:0:0", "0:1:0", "0:0:1"] {
        let line = ProjLine::parse(&c.ctx, l).unwrap();
        let pts = curve_line_points(&c.form, &line).unwrap();
        assert!(pts.complete, "{l}");
        let total: u32 = pts
            .points
            .iter()
            .map(|q| quasigalois::plane::intersection_multiplicity(&c.form, &line, q).unwrap())
            .sum();
        assert_eq!(total, 6, "{l}");
    }
}

#[test]
fn census_grows_with_seeds() {
    let c = from_spec("fermat:6").unwrap();
    let mut prev = census(6, &[]);
    for k in 1..=c.seeds.len() {
        let certs = discover(&c.form, &c.seeds[..k], DEFAULT_DISCOVERY_CAP).unwrap();
        let now = census(6, &certs);
        for (&n, &v) in &prev.outer {
            assert!(now.outer_exact(n) >= v, "seed prefix {k}: δ'[{n}] dropped");
        }
        for (&n, &v) in &prev.inner {
            assert!(now.inner_exact(n) >= v, "seed prefix {k}: δ[{n}] dropped");
        }
        assert!(now.all_bounds_hold());
        prev = now;
    }
}

#[test]
fn fermat_quartic_groups() {
    let c = from_spec("fermat:4").unwrap();
    let certs = discover(&c.form, &c.seeds, DEFAULT_DISCOVERY_CAP).unwrap();
    let all: Vec<_> = certs.iter().filter_map(|x| x.generator.clone()).collect();
    let g = closure(&all, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(g.order(), 96);
    assert_eq!(Some(g.order()), c.expected_group_order);
    assert!(preserves_curve(&g, &c.form));
    let diag: Vec<_> = certs
        .iter()
        .filter(|x| x.order == 4)
        .filter_map(|x| x.generator.clone())
        .collect();
    let h = closure(&diag, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(h.order(), 16);
    assert_eq!(g.order() % h.order(), 0);
    assert!(is_normal_subgroup(&h, &g).unwrap());
}

#[test]
fn seed_orders_match_the_corpus() {
    let c = from_spec("hessian_sextic").unwrap();
    for p in &c.seeds {
        assert_eq!(quasi_galois_order(&c.form, p).unwrap().order, 3, "{p}");
    }
    let c = from_spec("fermat:6").unwrap();
    for p in &c.seeds {
        let n = quasi_galois_order(&c.form, p).unwrap().order;
        let vertex = (0..3).any(|i| *p == ProjPoint::vertex(&c.ctx, i));
        assert_eq!(n, if vertex { 6 } else { 2 }, "{p}");
    }
}

#[test]
fn standard_form_roundtrip_other_seed() {
    common::standard_form_roundtrip(50, 7).unwrap();
}

#[test]
fn corpus_certificate_properties() {
    for spec in ["fermat:7", "fermat:8", "halfdeg:3", "quartic_family:1,3,5"] {
        let c = common::curve(spec);
        assert_eq!(is_smooth(&c.form), Smoothness::Smooth, "{spec}");
        let certs = common::discovered(&c);
        common::certificate_properties(&c.form, &certs).unwrap_or_else(|e| panic!("{spec}: {e}"));
    }
}
