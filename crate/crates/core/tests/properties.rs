use proptest::prelude::*;

use qpe_core::analytic::{
    alpha_closed, alpha_geom, alpha_m_eval, e_value, failure_bounds, mod_abs, mod_abs_int,
    mod_add, psi_t_sum, psi_t_tensor, t_required, PhaseGeometry, PrecisionSpec,
};
use qpe_core::circuit::output_distribution;
use qpe_core::harness::{diagonal_instance, random_instance, CheckReport, CheckResult, CheckStatus};
use qpe_core::linalg::{apply, tensor_mat, tensor_vec, Complex, StateVector};
use qpe_core::{Phase, RunConfig};

fn rational_phase() -> impl Strategy<Value = Phase> {
    (1u64..1_000_000).prop_flat_map(|q| (0..q).prop_map(move |p| Phase::rational(p, q).unwrap()))
}

fn any_phase() -> impl Strategy<Value = Phase> {
    prop_oneof![
        rational_phase(),
        (0.0f64..1.0).prop_map(|x| Phase::real(x).unwrap()),
        (0u32..=20).prop_flat_map(|q| (0u64..(1 << q)).prop_map(move |a| Phase::dyadic(a, q).unwrap())),
    ]
}

fn state(dim: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_map(|v| StateVector::new(v.into_iter().map(|(a, b)| Complex::new(a, b)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mod_add_closed_and_congruent(a in -10_000i64..10_000, b in -10_000i64..10_000, t in 1u32..14) {
        let r = mod_add(a, b, t);
        prop_assert!(r < 1 << t);
        prop_assert_eq!((a + b - r as i64).rem_euclid(1 << t), 0);
    }

    #[test]
    fn mod_abs_symmetric_and_bounded(x in -1e6f64..1e6, n in 1u64..1024) {
        let nf = n as f64;
        let d = mod_abs(x, nf);
        prop_assert!((0.0..=nf / 2.0).contains(&d));
        prop_assert!((d - mod_abs(-x, nf)).abs() < 1e-9);
        let xi = x as i64;
        prop_assert!(mod_abs_int(xi, n) <= n / 2);
        prop_assert_eq!(mod_abs_int(xi, n), mod_abs_int(-xi, n));
    }

    #[test]
    fn geometry_intervals(p in any_phase(), t in 1u32..=14) {
        let g = PhaseGeometry::new(&p, t);
        prop_assert!(g.interval_violations().is_empty(), "{:?}", g.interval_violations());
        prop_assert_eq!(g.floor_exact, p.is_dyadic_in(t));
    }

    #[test]
    fn phase_text_round_trip(p in any_phase()) {
        let back: Phase = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn psi_forms_agree(phi in 0.0f64..1.0, t in 1u32..=8) {
        let a = psi_t_tensor(phi, t).unwrap();
        let b = psi_t_sum(phi, t).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
        prop_assert!((a.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn alpha_forms_agree(p in rational_phase(), t in 2u32..=7, m in -300i64..300) {
        let phi = p.value();
        let a = alpha_m_eval(phi, t, mod_add(m, 0, t)).unwrap();
        prop_assert!((alpha_geom(phi, t, m) - a).norm() < 1e-11);
        let b_f = p.scaled_floor(t);
        let ell = (m - b_f).rem_euclid(1 << t);
        let ell = if ell > 1 << (t - 1) { ell - (1 << t) } else { ell };
        if ell != 0 {
            let closed = alpha_closed(&p, t, ell).unwrap();
            prop_assert!((closed - a).norm() < 1e-11);
            prop_assert!(closed.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn amplitudes_normalized(phi in 0.0f64..1.0, t in 1u32..=7) {
        let total: f64 = (0..1u64 << t).map(|m| alpha_m_eval(phi, t, m).unwrap().norm_sqr()).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn tight_below_original(e in 2u64..1_000_000) {
        let b = failure_bounds(e).unwrap();
        prop_assert!(b.tight < b.original.unwrap());
    }

    #[test]
    fn t_required_is_minimal(n in 1u32..8, eps in 0.05f64..=1.0) {
        let spec = PrecisionSpec::new(n, eps).unwrap();
        let t = t_required(&spec);
        let need = 2.0 + 1.0 / (2.0 * eps);
        prop_assert!(((1u64 << (t - n)) as f64) >= need);
        prop_assert!(((1u64 << (t - n - 1)) as f64) < need);
        prop_assert!(e_value(t, n).unwrap() >= 2);
    }

    #[test]
    fn tensor_associative(a in state(2), b in state(4), c in state(2)) {
        let l = tensor_vec(&tensor_vec(&a, &b), &c);
        let r = tensor_vec(&a, &tensor_vec(&b, &c));
        prop_assert!(l.max_abs_diff(&r).unwrap() < 1e-12);
    }

    #[test]
    fn mixed_product_and_norm(seed in 0u64..1000, x in state(2), y in state(4)) {
        let p = Phase::rational(1, 3).unwrap();
        let a = random_instance(1, 1, p, seed).unwrap();
        let b = random_instance(1, 2, p, seed + 1).unwrap();
        let ab = tensor_mat(a.unitary(), b.unitary());
        let lhs = apply(&ab, &tensor_vec(&x, &y)).unwrap();
        let rhs = tensor_vec(&apply(a.unitary(), &x).unwrap(), &apply(b.unitary(), &y).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
        prop_assert!((lhs.norm() - tensor_vec(&x, &y).norm()).abs() < 1e-9);
    }

    #[test]
    fn distribution_depends_only_on_phase(p in rational_phase(), t in 1u32..=5, seed in 0u64..1000) {
        let a = output_distribution(&diagonal_instance(t, 1, p).unwrap()).unwrap();
        let b = output_distribution(&random_instance(t, 2, p, seed).unwrap()).unwrap();
        for (x, y) in a.probs().iter().zip(b.probs()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn report_json_round_trip(margins in prop::collection::vec(-1e3f64..1e3, 1..6), seed in any::<u64>()) {
        let results = margins
            .iter()
            .enumerate()
            .map(|(i, &m)| CheckResult {
                name: format!("n{i}"),
                status: if m >= 0.0 { CheckStatus::Pass } else { CheckStatus::Fail },
                instances: i as u64,
                worst_margin: Some(m),
                failing_params: (m < 0.0).then(|| format!("m={m}")),
                note: None,
                elapsed_ms: 3,
            })
            .collect();
        let report = CheckReport {
            version: "0.1.0".into(),
            seed,
            config: RunConfig::default(),
            timestamp: 1,
            results,
        };
        let back = CheckReport::from_json(&report.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, report);
    }
}
