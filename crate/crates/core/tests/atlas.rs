use moufang::atlas::{cd_product, moufang_residual, norm, LoopChart};
use moufang::suites::{draw_samples, SamplePlan};
use proptest::prelude::*;

const BUILTINS: [&str; 5] = [
    "abelian:n=3",
    "affine",
    "quaternion",
    "octonion",
    "broken:eps=0.01",
];

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[test]
fn two_sided_unit_law_on_every_builtin() {
    for spec in BUILTINS {
        let l = LoopChart::builtin(spec).unwrap();
        let e = vec![0.0; l.dim()];
        for s in draw_samples(&l, &SamplePlan::new(spec, 9, 100, 0.2)).unwrap() {
            assert!(
                max_abs(&sub(&l.product(&s.g, &e).unwrap(), &s.g)) <= 1e-14,
                "{spec}"
            );
            assert!(
                max_abs(&sub(&l.product(&e, &s.g).unwrap(), &s.g)) <= 1e-14,
                "{spec}"
            );
        }
    }
}

#[test]
fn moufang_identity_on_moufang_builtins() {
    for spec in ["abelian:n=3", "affine", "quaternion", "octonion"] {
        let l = LoopChart::builtin(spec).unwrap();
        for s in draw_samples(&l, &SamplePlan::new(spec, 42, 100, 0.2)).unwrap() {
            let r = moufang_residual(&l, &s.g, &s.h, &s.k).unwrap();
            assert!(max_abs(&r) <= 1e-12, "{spec}: {r:?}");
        }
    }
}

#[test]
fn octonion_moufang_via_algebra() {
    // Independent route: the Moufang identity on unit octonions directly in
    // the algebra, (ab)(ca) = a((bc)a).
    let l = LoopChart::builtin("octonion").unwrap();
    let lift = |x: &[f64]| -> Vec<f64> {
        let re = (1.0 - x.iter().map(|c| c * c).sum::<f64>()).sqrt();
        std::iter::once(re).chain(x.iter().copied()).collect()
    };
    for s in draw_samples(&l, &SamplePlan::new("octonion", 8, 50, 0.2)).unwrap() {
        let (a, b, c) = (lift(&s.g), lift(&s.h), lift(&s.k));
        let left = cd_product(&cd_product(&a, &b).unwrap(), &cd_product(&c, &a).unwrap()).unwrap();
        let right = cd_product(&a, &cd_product(&cd_product(&b, &c).unwrap(), &a).unwrap()).unwrap();
        assert!(max_abs(&sub(&left, &right)) <= 1e-12);
    }
}

#[test]
fn broken_loop_violates_moufang() {
    let l = LoopChart::builtin("broken:eps=0.01").unwrap();
    let worst = draw_samples(&l, &SamplePlan::new("broken:eps=0.01", 42, 100, 0.2))
        .unwrap()
        .iter()
        .map(|s| max_abs(&moufang_residual(&l, &s.g, &s.h, &s.k).unwrap()))
        .fold(0.0, f64::max);
    assert!(worst > 1e-6);
    // Recorded magnitude for seed 42, 100 triples, radius 0.2.
    let recorded = 4.0513546751275165e-6;
    assert!((worst - recorded).abs() <= 1e-9 * recorded, "{worst:e}");
}

fn unit_ball(dim: usize, radius: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim).prop_map(move |v| {
        let n = norm(&v).max(1e-12);
        let scale = radius * (n.min(1.0));
        v.iter().map(|x| x / n * scale).collect()
    })
}

proptest! {
    #[test]
    fn octonion_norm_is_multiplicative(
        a in prop::collection::vec(-2.0f64..2.0, 8),
        b in prop::collection::vec(-2.0f64..2.0, 8),
    ) {
        let ab = cd_product(&a, &b).unwrap();
        prop_assert!((norm(&ab) - norm(&a) * norm(&b)).abs() <= 1e-12 * (1.0 + norm(&a) * norm(&b)));
    }

    #[test]
    fn octonions_are_alternative(
        a in prop::collection::vec(-1.0f64..1.0, 8),
        b in prop::collection::vec(-1.0f64..1.0, 8),
    ) {
        let aa = cd_product(&a, &a).unwrap();
        let bb = cd_product(&b, &b).unwrap();
        let ab = cd_product(&a, &b).unwrap();
        let left = sub(&cd_product(&a, &ab).unwrap(), &cd_product(&aa, &b).unwrap());
        let right = sub(&cd_product(&ab, &b).unwrap(), &cd_product(&a, &bb).unwrap());
        prop_assert!(max_abs(&left) <= 1e-12);
        prop_assert!(max_abs(&right) <= 1e-12);
    }

    #[test]
    fn sphere_charts_stay_inside(x in unit_ball(7, 0.3), y in unit_ball(7, 0.3)) {
        let l = LoopChart::builtin("octonion").unwrap();
        let p = l.product(&x, &y).unwrap();
        prop_assert!(norm(&p) < 1.0);
        let q = LoopChart::builtin("quaternion").unwrap();
        let p = q.product(&x[..3], &y[..3]).unwrap();
        prop_assert!(norm(&p) < 1.0);
    }

    #[test]
    fn broken_perturbation_vanishes_on_axes(x in unit_ball(7, 0.3), eps in -1.0f64..1.0) {
        let l = LoopChart::builtin(&format!("broken:eps={eps}")).unwrap();
        let e = [0.0; 7];
        prop_assert_eq!(l.product(&x, &e).unwrap(), x.clone());
        prop_assert_eq!(l.product(&e, &x).unwrap(), x);
    }
}
