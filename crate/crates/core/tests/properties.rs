use agi_econ::calibration::{fit_cobb_douglas, log_residual_sum_squares, Sample};
use agi_econ::cli::config::{FitSpec, ScenarioSettings, TransitionSettings};
use agi_econ::cli::{parse_config, Config};
use agi_econ::models::{
    power_index_model3, ModelIIIParams, ModelIIParams, ModelIParams, ModelParams,
};
use agi_econ::scenario::{run_scenario_with, AdoptionPath, ScenarioConfig};
use agi_econ::transition::TransitionParams;
use agi_econ::{CobbDouglas, Execution, FactorBundle};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["x0", "x1", "x2", "x3"];

fn technology_and_bundle() -> impl Strategy<Value = (CobbDouglas, FactorBundle)> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                0.1f64..10.0,
                prop::collection::vec(0.0f64..1.5, n),
                prop::collection::vec(0.01f64..100.0, n),
            )
        })
        .prop_map(|(a, es, xs)| {
            let tech = CobbDouglas::new(a, NAMES.iter().copied().zip(es)).unwrap();
            let bundle = FactorBundle::new(NAMES.iter().copied().zip(xs)).unwrap();
            (tech, bundle)
        })
}

fn model3() -> impl Strategy<Value = ModelIIIParams> {
    (
        (
            0.1f64..10.0,
            0.1f64..100.0,
            0.1f64..100.0,
            0.1f64..100.0,
            0.1f64..100.0,
        ),
        (0.0f64..1.0, 0.0f64..1.0, 0.01f64..1.0, 0.0f64..1.0),
    )
        .prop_map(
            |((a, k, k_agi, l_h, l_agi), (alpha, gamma, beta1, beta2))| ModelIIIParams {
                a,
                k,
                k_agi,
                l_h,
                l_agi,
                alpha,
                gamma,
                beta1,
                beta2,
            },
        )
}

fn transition() -> impl Strategy<Value = TransitionParams> {
    (0.1f64..10.0, 0.0f64..10.0, 0.01f64..20.0)
        .prop_map(|(w0, w_inf, lambda)| TransitionParams::new(w0, w_inf, lambda).unwrap())
}

fn adoption() -> impl Strategy<Value = AdoptionPath> {
    prop_oneof![
        Just(AdoptionPath::Linear),
        (0.05f64..2.0, 0.0f64..1.0).prop_map(|(steepness, frac)| AdoptionPath::Logistic {
            steepness,
            midpoint: frac,
        }),
        (0.01f64..2.0).prop_map(|rate| AdoptionPath::ExpSaturating { rate }),
    ]
}

fn scenario() -> impl Strategy<Value = ScenarioConfig> {
    (
        model3(),
        adoption(),
        1u32..200,
        0.0f64..0.1,
        transition(),
        0.05f64..1.0,
    )
        .prop_map(|(initial, adoption, horizon, growth, transition, theta)| {
            let adoption = match adoption {
                AdoptionPath::Logistic {
                    steepness,
                    midpoint,
                } => AdoptionPath::Logistic {
                    steepness,
                    midpoint: midpoint * horizon as f64,
                },
                other => other,
            };
            ScenarioConfig {
                horizon,
                initial,
                adoption,
                agi_capital_growth: growth,
                transition,
                collapse_threshold: theta,
            }
        })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn output_is_homogeneous_of_its_degree((tech, bundle) in technology_and_bundle(), t in 0.1f64..5.0) {
        let y = tech.output(&bundle).unwrap();
        let yt = tech.output(&bundle.scaled(t).unwrap()).unwrap();
        prop_assert!(rel_close(yt, t.powf(tech.homogeneity_degree()) * y, 1e-11));
    }

    #[test]
    fn euler_identity_holds((tech, bundle) in technology_and_bundle()) {
        let y = tech.output(&bundle).unwrap();
        let paid: f64 = bundle
            .iter()
            .map(|(f, x)| x * tech.marginal_product(&bundle, f).unwrap())
            .sum();
        prop_assert!(rel_close(paid, tech.homogeneity_degree() * y, 1e-12));
        prop_assert!(tech.euler_residual(&bundle).unwrap().abs() <= 1e-10 * y.max(1.0));
    }

    #[test]
    fn output_is_nondecreasing_in_each_factor((tech, bundle) in technology_and_bundle(), bump in 1.0f64..3.0) {
        let y = tech.output(&bundle).unwrap();
        for (f, x) in bundle.iter() {
            let bigger = bundle.with_quantity(f, x * bump).unwrap();
            prop_assert!(tech.output(&bigger).unwrap() >= y * (1.0 - 1e-15));
            prop_assert!(tech.marginal_product(&bundle, f).unwrap() >= 0.0);
        }
    }

    #[test]
    fn marginal_product_matches_central_difference((tech, bundle) in technology_and_bundle()) {
        for (f, x) in bundle.iter() {
            let h = 1e-6 * x.max(1.0);
            let up = tech.output(&bundle.with_quantity(f, x + h).unwrap()).unwrap();
            let down = tech.output(&bundle.with_quantity(f, (x - h).max(0.0)).unwrap()).unwrap();
            let fd = (up - down) / (x + h - (x - h).max(0.0));
            let mp = tech.marginal_product(&bundle, f).unwrap();
            prop_assert!((fd - mp).abs() <= 1e-5 * mp.abs().max(1.0), "{f}: fd={fd} mp={mp}");
        }
    }

    #[test]
    fn models_delegate_to_the_generic_form(p in model3()) {
        let m1 = ModelParams::I(ModelIParams {
            a: p.a, k: p.k, k_agi: p.k_agi, l: p.l_h, alpha: p.alpha, beta: p.beta1,
        });
        let direct = p.a * (p.k + p.k_agi).powf(p.alpha) * p.l_h.powf(p.beta1);
        prop_assert!(rel_close(m1.output().unwrap(), direct, 1e-13));

        let m2 = ModelParams::II(ModelIIParams {
            a: p.a, k: p.k, l1: p.l_h, l2: p.l_agi, alpha: p.alpha, beta1: p.beta1, beta2: p.beta2,
        });
        let direct = p.a * p.k.powf(p.alpha) * p.l_h.powf(p.beta1) * p.l_agi.powf(p.beta2);
        prop_assert!(rel_close(m2.output().unwrap(), direct, 1e-13));

        let m3 = ModelParams::III(p);
        let direct = direct * p.k_agi.powf(p.gamma);
        prop_assert!(rel_close(m3.output().unwrap(), direct, 1e-13));
        let tech = m3.technology().unwrap();
        prop_assert_eq!(m3.output().unwrap(), tech.output(&m3.bundle().unwrap()).unwrap());
    }

    #[test]
    fn labor_wage_bill_is_the_labor_share_of_output(p in model3()) {
        let m = ModelParams::III(p);
        let y = m.output().unwrap();
        let bill = m.wage("L_h").unwrap() * p.l_h + m.wage("L_AGI").unwrap() * p.l_agi;
        prop_assert!(rel_close(bill, (p.beta1 + p.beta2) * y, 1e-12));
        let index = power_index_model3(&p).unwrap();
        prop_assert!(rel_close(index, m.wage("L_h").unwrap() * p.l_h / bill, 1e-12));
    }

    #[test]
    fn power_index_ignores_quantities(p in model3(), q in model3()) {
        let moved = ModelIIIParams { beta1: p.beta1, beta2: p.beta2, ..q };
        let index = power_index_model3(&p).unwrap();
        prop_assert!(rel_close(index, power_index_model3(&moved).unwrap(), 1e-12));
        prop_assert!(rel_close(index, p.beta1 / (p.beta1 + p.beta2), 1e-12));
    }

    #[test]
    fn more_agi_labor_raises_human_wage_in_model_ii(p in model3(), bump in 1.01f64..5.0) {
        prop_assume!(p.beta2 > 1e-3);
        let base = ModelIIParams {
            a: p.a, k: p.k, l1: p.l_h, l2: p.l_agi, alpha: p.alpha, beta1: p.beta1, beta2: p.beta2,
        };
        let more = ModelIIParams { l2: p.l_agi * bump, ..base };
        let w = ModelParams::II(base).wage("L1").unwrap();
        let w_more = ModelParams::II(more).wage("L1").unwrap();
        prop_assert!(w_more > w);
    }

    #[test]
    fn human_power_is_bounded_and_decreasing(tp in transition(), n in 2usize..300) {
        let curve = tp.power_curve_with(n, Execution::Sequential).unwrap();
        prop_assert_eq!(curve.len(), n);
        let mut prev = f64::INFINITY;
        for pt in &curve {
            prop_assert!(pt.w_h >= 0.0 && pt.w_agi >= 0.0);
            if let Some(p) = pt.p_h {
                prop_assert!((0.0..=1.0).contains(&p));
                if tp.w_inf() > 0.0 {
                    prop_assert!(p <= prev);
                }
                prev = p;
            }
        }
        prop_assert_eq!(curve[0].p_h, Some(1.0));
    }

    #[test]
    fn scenario_conserves_labor_and_elasticity(cfg in scenario()) {
        let series = run_scenario_with(&cfg, Execution::Sequential).unwrap();
        prop_assert_eq!(series.len() as u32, cfg.horizon + 1);
        let total = cfg.initial.beta1 + cfg.initial.beta2;
        let mut prev = series[0];
        for r in &series {
            prop_assert!((r.l_h + r.l_agi - 1.0).abs() <= 1e-15);
            prop_assert!((r.beta1 + r.beta2 - total).abs() <= 1e-12);
            prop_assert!(r.beta1 >= -1e-15 && r.beta2 >= 0.0);
            prop_assert!(r.s >= prev.s);
            prop_assert!(r.beta1 <= prev.beta1 + 1e-15);
            prop_assert!(r.p_h_elastic <= prev.p_h_elastic + 1e-15);
            prop_assert!(r.k_agi >= prev.k_agi);
            prev = *r;
        }
        let last = series.last().unwrap();
        prop_assert_eq!(last.s, 1.0);
        prop_assert_eq!(last.l_h, 0.0);
        prop_assert!(last.beta1.abs() <= 1e-15);
    }

    #[test]
    fn least_squares_fit_is_a_local_minimum(
        ln_a in -1.0f64..1.0,
        es in prop::collection::vec(0.0f64..1.0, 2),
        xs in prop::collection::vec((0.1f64..50.0, 0.1f64..50.0, -0.05f64..0.05), 12..40),
    ) {
        let names = ["K", "L"];
        let samples: Vec<Sample> = xs
            .iter()
            .map(|&(k, l, eps)| {
                let y = (ln_a + es[0] * k.ln() + es[1] * l.ln() + eps).exp();
                Sample::new(FactorBundle::new([("K", k), ("L", l)]).unwrap(), y)
            })
            .collect();
        let fit = match fit_cobb_douglas(&samples, &names) {
            Ok(f) => f,
            Err(_) => return Ok(()),
        };
        let coef = vec![fit.tfp_estimate.ln(), fit.elasticity("K").unwrap(), fit.elasticity("L").unwrap()];
        let rss = log_residual_sum_squares(&samples, &names, &coef).unwrap();
        prop_assert!((rss - fit.residual_sum_squares).abs() <= 1e-9 * rss.max(1.0));
        for j in 0..coef.len() {
            for d in [-1e-3, 1e-3] {
                let mut moved = coef.clone();
                moved[j] += d;
                let r = log_residual_sum_squares(&samples, &names, &moved).unwrap();
                prop_assert!(r >= rss - 1e-12);
            }
        }
    }

    #[test]
    fn config_text_round_trips(
        p in model3(),
        tp in transition(),
        n_points in 2usize..5000,
        horizon in 1u32..500,
        adoption in adoption(),
        growth in 0.0f64..0.2,
        theta in 0.01f64..1.0,
        with_fit in any::<bool>(),
    ) {
        let cfg = Config {
            model: Some(ModelParams::III(p)),
            transition: TransitionSettings { params: tp, n_points },
            scenario: Some(ScenarioSettings { horizon, adoption, growth, collapse_threshold: theta }),
            fit: with_fit.then(|| FitSpec {
                factors: vec!["K".into(), "L".into()],
                input: "data/samples.csv".into(),
            }),
        };
        prop_assert_eq!(parse_config(&cfg.to_ini()).unwrap(), cfg);
    }
}

#[cfg(feature = "parallel")]
proptest! {
    #[test]
    fn parallel_matches_sequential(tp in transition(), n in 2usize..2000, cfg in scenario()) {
        prop_assert_eq!(
            tp.power_curve_with(n, Execution::Sequential).unwrap(),
            tp.power_curve_with(n, Execution::Parallel).unwrap()
        );
        prop_assert_eq!(
            run_scenario_with(&cfg, Execution::Sequential).unwrap(),
            run_scenario_with(&cfg, Execution::Parallel).unwrap()
        );
    }
}
