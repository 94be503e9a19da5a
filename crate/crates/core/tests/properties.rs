mod common;

use proptest::prelude::*;
use ri_interp::hardy::{hardy_lower, hardy_upper};
use ri_interp::interp::k_exact_l1_linf;
use ri_interp::lorentz::lorentz_norm;
use ri_interp::{LorentzParams, SpaceDescriptor, StepFunction};

const INF: f64 = f64::INFINITY;

/// Dyadic widths and values, so partial sums and scalings are exact.
fn step_function(with_tail: bool) -> impl Strategy<Value = StepFunction> {
    (
        prop::collection::vec((-12i32..12, -8i32..8, 0u32..4), 1..10),
        if with_tail { (0i32..2, -6i32..6).boxed() } else { Just((0, 0)).boxed() },
    )
        .prop_map(|(pieces, (has_tail, tail_exp))| {
            let mut t = 0.0;
            let mut breakpoints = Vec::new();
            let mut values = Vec::new();
            for (w, v, gap) in pieces {
                t += (w as f64).exp2();
                breakpoints.push(t);
                values.push(if gap == 0 { 0.0 } else { (v as f64).exp2() * (1.0 + gap as f64 / 8.0) });
            }
            let tail = if has_tail == 1 { (tail_exp as f64).exp2() } else { 0.0 };
            StepFunction::new(breakpoints, values, tail).unwrap()
        })
}

fn params_grid() -> Vec<LorentzParams> {
    let mut out = Vec::new();
    for &p in &[0.5, 1.0, 2.0, INF] {
        for &q in &[0.5, 1.0, 2.0, INF] {
            let params = LorentzParams::new(p, q).unwrap();
            if params.is_nontrivial() {
                out.push(params);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rearrangement_is_equimeasurable(f in step_function(true)) {
        let fs = f.rearrange();
        prop_assert!(fs.is_non_increasing());
        prop_assert_eq!(fs.rearrange(), fs.clone());
        let mut levels: Vec<f64> = f.values().to_vec();
        levels.push(f.tail());
        levels.push(0.0);
        let extra: Vec<f64> = levels.iter().map(|v| v * 0.5).collect();
        levels.extend(extra);
        for lam in levels {
            prop_assert_eq!(f.distribution(lam), fs.distribution(lam));
        }
    }

    #[test]
    fn rearrangement_matches_sorting(f in step_function(true), t in -14.0f64..14.0) {
        let t = t.exp2();
        prop_assert_eq!(f.rearrange().evaluate(t).unwrap(), common::rearranged_at(&f, t));
    }

    #[test]
    fn homogeneity_is_exact_for_dyadic_factors(f in step_function(true), k in -6i32..6) {
        let lambda = (k as f64).exp2();
        let g = f.scale(lambda).unwrap();
        for params in params_grid() {
            prop_assert_eq!(lorentz_norm(&g, params), lambda * lorentz_norm(&f, params));
        }
    }

    #[test]
    fn norm_is_monotone_in_the_lattice(f in step_function(true), g in step_function(true)) {
        let low = f.pointwise_min(&g);
        let high = f.pointwise_max(&g);
        for params in params_grid() {
            let n = lorentz_norm(&f, params);
            prop_assert!(lorentz_norm(&low, params) <= n * (1.0 + 1e-12));
            prop_assert!(lorentz_norm(&high, params) >= n * (1.0 - 1e-12));
        }
    }

    #[test]
    fn norms_increase_along_truncations(f in step_function(true)) {
        for params in params_grid() {
            let mut prev = 0.0;
            let mut midway = 0.0;
            for k in -4..48 {
                let n = (k as f64).exp2();
                let cur = lorentz_norm(&f.truncate(n, n).unwrap(), params);
                prop_assert!(cur >= prev * (1.0 - 1e-12));
                prev = cur;
                if k == 24 {
                    midway = cur;
                }
            }
            let full = lorentz_norm(&f, params);
            if full.is_finite() {
                prop_assert!(common::rel_err(prev, full) < 1e-12);
            } else {
                prop_assert!(prev > 2.0 * midway);
            }
        }
    }

    #[test]
    fn dilation_scales_by_power(f in step_function(false), k in -5i32..5) {
        let a = (k as f64).exp2();
        let g = f.dilate(a).unwrap();
        for params in params_grid() {
            let expected = a.powf(-1.0 / params.p()) * lorentz_norm(&f, params);
            prop_assert!(common::rel_err(lorentz_norm(&g, params), expected) < 1e-12);
        }
    }

    #[test]
    fn quasi_triangle_bound_holds(f in step_function(false), g in step_function(false)) {
        for params in params_grid() {
            let c = SpaceDescriptor::lorentz(params).unwrap().quasi_triangle_bound;
            let lhs = lorentz_norm(&f.add(&g), params);
            let rhs = c * (lorentz_norm(&f, params) + lorentz_norm(&g, params));
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }

    #[test]
    fn json_round_trip(f in step_function(true)) {
        prop_assert_eq!(StepFunction::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn k_functional_is_concave_and_bounded(f in step_function(false), t in -10.0f64..10.0) {
        let t = t.exp2();
        let k = |s: f64| k_exact_l1_linf(&f, s).unwrap();
        let (a, b) = (k(t), k(2.0 * t));
        prop_assert!(b >= a && b <= 2.0 * a * (1.0 + 1e-12));
        prop_assert!(k(1.5 * t) >= 0.5 * (a + b) * (1.0 - 1e-12));
        prop_assert!(a <= t * f.sup() * (1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn envelope_brackets_hold(f in step_function(true), u in 1.0f64..3.0, w in prop::sample::select(vec![0.5, 1.0, 2.0, INF])) {
        let env = hardy_upper(&f, u, w).unwrap();
        for s in env.samples() {
            prop_assert!(s.lower <= s.value * (1.0 + 1e-12) && s.value <= s.upper * (1.0 + 1e-12));
        }
        let values: Vec<f64> = env.samples().iter().map(|s| s.value).collect();
        prop_assert!(values.windows(2).all(|x| x[1] <= x[0] * (1.0 + 1e-12)));
    }

    #[test]
    fn lower_envelope_brackets_hold(f in step_function(false), v in 1.5f64..4.0, w in prop::sample::select(vec![0.5, 1.0, 2.0, INF])) {
        let env = hardy_lower(&f, v, w).unwrap();
        for s in env.samples() {
            prop_assert!(s.lower <= s.value * (1.0 + 1e-12) && s.value <= s.upper * (1.0 + 1e-12));
        }
    }

    #[test]
    fn envelopes_scale_exactly(f in step_function(true), k in -4i32..4, t in -8.0f64..8.0) {
        let lambda = (k as f64).exp2();
        let t = t.exp2();
        let g = f.scale(lambda).unwrap();
        let a = hardy_upper(&f, 2.0, 1.0).unwrap();
        let b = hardy_upper(&g, 2.0, 1.0).unwrap();
        prop_assert_eq!(b.eval(t).unwrap(), lambda * a.eval(t).unwrap());
        let params = LorentzParams::new(3.0, 1.0).unwrap();
        let (na, nb) = (a.norm(params), b.norm(params));
        prop_assert_eq!(nb.lo, lambda * na.lo);
        prop_assert_eq!(nb.hi, lambda * na.hi);
    }
}
