//! Checks the closed-form moments against exact truncation and Monte Carlo.
//!
//! Run with `cargo run --release --example oracle_check`.

use sddm::oracle::{
    auto_horizon, simulate_price, tail_bound, truncated_mean_exact, truncated_variance_exact,
    Horizon, SimConfig,
};
use sddm::{value_company, CompanyParams, GrowthModel};

fn main() -> sddm::Result<()> {
    let c = CompanyParams::new(
        0.3,
        0.08,
        2500.0,
        GrowthModel::discrete(vec![-0.06, 0.12], vec![0.5, 0.5])?,
    );
    let closed = value_company(&c)?;
    let closed_var = closed.stddev_price.powi(2);
    println!(
        "closed form: mean {:.6}, variance {:.6}",
        closed.mean_price, closed_var
    );

    for t in [10, 50, 200, 1000] {
        println!(
            "T = {t:>4}: mean {:.6} (tail {:.2e}), variance {:.6}",
            truncated_mean_exact(&c, t)?,
            tail_bound(&c, t)?,
            truncated_variance_exact(&c, t)?
        );
    }

    let cfg = SimConfig {
        horizon: Horizon::Auto,
        paths: 100_000,
        seed: 7,
    };
    let e = simulate_price(&c, &cfg)?;
    println!(
        "Monte Carlo, T = {} (auto), {} paths: mean {:.4} ± {:.4}, variance {:.4} ± {:.4}",
        auto_horizon(&c)?,
        e.paths,
        e.mean,
        e.mean_se,
        e.variance,
        e.var_se
    );
    println!(
        "z-scores: mean {:+.2}, variance {:+.2}",
        (e.mean - closed.mean_price) / e.mean_se,
        (e.variance - closed_var) / e.var_se
    );
    Ok(())
}
