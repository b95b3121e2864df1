//! Sweeps the merged growth rate and writes one SVG per volatility level.
//!
//! Run with `cargo run --example bargaining_region -- [OUT_DIR]`.

use std::path::PathBuf;

use sddm::cli::svg::region_svg;
use sddm::region::{sweep, SweepConfig};
use sddm::{CompanyParams, GrowthModel, Parties};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "region-example".into()),
    );
    std::fs::create_dir_all(&out)?;

    let acquirer = CompanyParams::new(0.6, 0.04, 1000.0, GrowthModel::moments(0.01, 0.02)?);
    let target = CompanyParams::new(0.3, 0.08, 2500.0, GrowthModel::moments(0.03, 0.09)?);
    let p = Parties::new(acquirer, target, None)?;

    let cfg = SweepConfig::new(0.0, 0.054, vec![0.0, 0.01, 0.02, 0.025]);
    for report in sweep(&p, &cfg)? {
        let verdict = match (report.g_feasible_min, report.min_accepted_r) {
            (Some(g), Some(r)) => format!(
                "from g = {g:.5}, smallest r = {r:.4}, area = {:.5}",
                report.area
            ),
            _ => "empty".into(),
        };
        println!("sigma = {:<6} {verdict}", report.sigma);
        for c in &report.crossings {
            println!(
                "    {} meets {} at g = {:.5}, r = {:.4}",
                c.curves.0.name(),
                c.curves.1.name(),
                c.g,
                c.r
            );
        }
        let path = out.join(format!("region_{:.3}.svg", report.sigma));
        std::fs::write(
            &path,
            region_svg(
                &report,
                cfg.g_min,
                cfg.g_max,
                &format!("sigma = {}", report.sigma),
            ),
        )?;
    }
    println!("plots written to {}", out.display());
    Ok(())
}
