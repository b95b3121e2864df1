//! Exchange-ratio intervals for one merger at a few merged growth rates.
//!
//! Run with `cargo run --example exchange_ratio_intervals`.

use sddm::merger::{combined_interval, mean_interval, no_synergy_interval, variance_interval};
use sddm::{CompanyParams, ExtendedInterval, GrowthModel, Parties};

fn show(i: &ExtendedInterval) -> String {
    match i.bounds() {
        Some((lo, hi)) if hi.is_infinite() => format!("[{lo:.4}, inf)"),
        Some((lo, hi)) => format!("[{lo:.4}, {hi:.4}]"),
        None => "empty".into(),
    }
}

fn main() -> sddm::Result<()> {
    let acquirer = CompanyParams::new(0.6, 0.04, 1000.0, GrowthModel::moments(0.01, 0.02)?);
    let target = CompanyParams::new(0.3, 0.08, 2500.0, GrowthModel::moments(0.03, 0.09)?);
    let p = Parties::new(acquirer, target, None)?;

    let g0 = p.no_synergy_growth()?;
    println!(
        "k_M = {:.6}, no-synergy growth = {g0:.6}, r* = {:.6}",
        p.k_m,
        p.r_star()
    );

    let sigma = 0.01;
    println!("\nsigma = {sigma}");
    println!(
        "{:>8} {:>22} {:>22} {:>22}",
        "g", "mean", "variance", "combined"
    );
    for g in [0.015, g0, 0.025, 0.03, 0.04, 0.05] {
        let m = p.merged_valuation(g, sigma)?;
        println!(
            "{g:>8.4} {:>22} {:>22} {:>22}",
            show(&mean_interval(&p, &m)),
            show(&variance_interval(&p, &m)),
            show(&combined_interval(&p, &m))
        );
    }

    // zero synergy: the variance side depends only on the coefficients of variation
    let m = p.no_synergy_valuation(sigma)?;
    println!(
        "\nat zero synergy: mean {}, variance {}",
        show(&mean_interval(&p, &m)),
        show(&no_synergy_interval(&p, m.cv))
    );
    Ok(())
}
