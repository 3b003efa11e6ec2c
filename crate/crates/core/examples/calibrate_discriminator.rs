//! Prints the slope distributions the classifier thresholds are chosen from.
//!
//! Usage: `cargo run --release -p ggbm-core --example calibrate_discriminator [n] [level] [seed]`

use ggbm_core::discriminate::{confusion_experiment, ConfusionSetup, DiscriminatorConfig, Label};
use ggbm_core::ensemble::median;
use ggbm_core::paths::TimeChangeConfig;

fn quantiles(mut xs: Vec<f64>) -> [f64; 5] {
    xs.sort_by(|a, b| a.total_cmp(b));
    let q = |f: f64| xs[((xs.len() - 1) as f64 * f).round() as usize];
    [q(0.0), q(0.05), q(0.5), q(0.95), q(1.0)]
}

fn main() -> ggbm_core::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let level = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(14);
    let seed = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(20_251_016);
    let (beta, alpha) = (0.8, 1.5);
    let setup = ConfusionSetup {
        n_per_class: n,
        level,
        seed,
        threads: 0,
        discriminator: DiscriminatorConfig::default(),
        time_change: TimeChangeConfig::default(),
    };
    let m = confusion_experiment(beta, alpha, &setup)?;
    for class in [Label::Ggbm, Label::Tcbm] {
        let rows: Vec<_> = m.replicas.iter().filter(|r| r.true_class == class).collect();
        let s2: Vec<f64> = rows.iter().map(|r| r.verdict.slope_2).collect();
        let s2a: Vec<f64> = rows.iter().map(|r| r.verdict.slope_2a).collect();
        println!("{class}: median slope_2 {:.4}, slope_2a {:.4}", median(&s2), median(&s2a));
        println!("  slope_2  min/5%/50%/95%/max {:?}", quantiles(s2));
        println!("  slope_2a min/5%/50%/95%/max {:?}", quantiles(s2a));
    }
    println!("counts {:?}", m.counts);
    println!("accuracy {:.4}, inconclusive {:.4}", m.accuracy(), m.inconclusive_rate());
    Ok(())
}
