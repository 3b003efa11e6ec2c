//! Deterministic checks of the special functions.

use std::f64::consts::PI;
use std::fmt::Write as _;

use ggbm_core::paths::io::format_f64;
use ggbm_core::quad::{try_integrate, QuadConfig};
use ggbm_core::specfun::{
    m_wright_density_integral, m_wright_density_with, m_wright_moment, mittag_leffler, EvalConfig,
};
use ggbm_core::Error;

use super::Artifact;
use crate::error::CliResult;
use crate::report::{Report, Rule};

/// `E_beta(-x)` at `REFERENCE_POINTS`, summed at 50 digits.
const REFERENCE: [(f64, [f64; 5]); 4] = [
    (
        0.3,
        [
            0.632_649_005_943_599_021_38,
            0.456_594_408_329_690_669_01,
            0.290_232_226_167_875_353_26,
            0.137_080_869_020_270_637_58,
            0.037_406_226_213_884_452_596,
        ],
    ),
    (
        0.5,
        [
            0.615_690_344_192_925_874_87,
            0.427_583_576_155_807_004_41,
            0.255_395_676_310_505_743_87,
            0.110_704_637_733_068_626_37,
            0.028_174_348_741_051_319_319,
        ],
    ),
    (
        0.7,
        [
            0.605_147_592_059_564_271_26,
            0.399_611_978_115_599_384_37,
            0.213_786_727_015_297_265_19,
            0.077_569_357_764_769_801_692,
            0.017_395_698_291_603_977_466,
        ],
    ),
    (
        0.9,
        [
            0.603_405_498_695_860_967_62,
            0.376_066_021_424_641_881_18,
            0.163_528_300_016_930_048_85,
            0.034_431_324_804_098_423_905,
            0.005_749_507_816_109_113_882_8,
        ],
    ),
];
const REFERENCE_POINTS: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 20.0];

/// Series where it resolves the value, the integral representation beyond.
fn m_wright(beta: f64, tau: f64) -> ggbm_core::Result<f64> {
    let cfg = EvalConfig::default();
    match m_wright_density_with(beta, tau, &cfg) {
        Err(Error::Range { .. }) => m_wright_density_integral(beta, tau, &cfg),
        other => other,
    }
}

/// Point beyond which `M_beta` is below `exp(-60)`.
fn tail_end(beta: f64) -> f64 {
    let c = (1.0 - beta) * beta.powf(beta / (1.0 - beta));
    (60.0 / c).powf(1.0 - beta)
}

fn integrate_against_density(beta: f64, f: impl Fn(f64) -> f64, tol: f64) -> CliResult<f64> {
    let cfg = QuadConfig {
        abs_tol: tol,
        rel_tol: tol,
        ..QuadConfig::default()
    };
    let (v, _) = try_integrate(|tau| Ok(f(tau) * m_wright(beta, tau)?), 0.0, tail_end(beta), &cfg)?;
    Ok(v)
}

pub(super) fn run(report: &mut Report) -> CliResult<Vec<Artifact>> {
    let mut worst: f64 = 0.0;
    for k in 0..=3200 {
        let x = -30.0 + 0.01 * k as f64;
        worst = worst.max((mittag_leffler(1.0, x)? - x.exp()).abs());
    }
    report.check("ml_order_one_is_exp", Rule::WithinAbs, 0.0, worst, 0.0, 1e-12);

    let mut table = String::from("beta,x,value,reference\n");
    for (beta, row) in REFERENCE {
        let mut worst: f64 = 0.0;
        for (x, want) in REFERENCE_POINTS.iter().zip(row) {
            let got = mittag_leffler(beta, -x)?;
            worst = worst.max((got - want).abs());
            let _ = writeln!(table, "{beta},{},{},{}", -x, format_f64(got), format_f64(want));
        }
        report.check(&format!("ml_reference_beta{beta}"), Rule::WithinAbs, 0.0, worst, 0.0, 1e-10);
    }

    let mut worst: f64 = 0.0;
    for k in 0..=800 {
        let x = 0.01 * k as f64;
        let gauss = (-x * x / 4.0).exp() / PI.sqrt();
        worst = worst.max((m_wright(0.5, x)? - gauss).abs());
    }
    report.check("mwright_half_gaussian", Rule::WithinAbs, 0.0, worst, 0.0, 1e-9);

    for beta in [0.3, 0.5, 0.7] {
        let mut worst: f64 = 0.0;
        for s in [0.5, 1.0, 2.0] {
            let lt = integrate_against_density(beta, |tau| (-s * tau).exp(), 1e-10)?;
            worst = worst.max((lt - mittag_leffler(beta, -s)?).abs());
        }
        report.check(&format!("laplace_pair_beta{beta}"), Rule::WithinAbs, 0.0, worst, 0.0, 1e-6);
    }

    let mut worst: f64 = 0.0;
    for beta in [0.3, 0.5, 0.8] {
        for delta in [0.5, 1.0, 2.0] {
            let m = integrate_against_density(beta, |tau| tau.powf(delta), 1e-9)?;
            worst = worst.max((m - m_wright_moment(beta, delta)?).abs());
        }
    }
    report.check("mwright_moments_quadrature", Rule::WithinAbs, 0.0, worst, 0.0, 1e-5);

    Ok(vec![Artifact {
        name: "mittag_leffler_reference.csv".into(),
        contents: table,
    }])
}
