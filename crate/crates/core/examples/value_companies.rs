//! Prices two companies under random dividend growth.
//!
//! Run with `cargo run --example value_companies`.

use sddm::{value_company, CompanyParams, GrowthModel};

fn main() -> sddm::Result<()> {
    // two equally likely growth states
    let steady = CompanyParams::new(
        0.6,
        0.04,
        1000.0,
        GrowthModel::discrete(vec![-0.01, 0.03], vec![0.5, 0.5])?,
    );
    // only the first two moments are known
    let volatile = CompanyParams::new(0.3, 0.08, 2500.0, GrowthModel::moments(0.03, 0.09)?);

    println!(
        "{:>10} {:>10} {:>10} {:>8} {:>10}",
        "company", "mean", "stddev", "cv", "equity"
    );
    for (name, c) in [("steady", &steady), ("volatile", &volatile)] {
        let v = value_company(c)?;
        println!(
            "{name:>10} {:>10.4} {:>10.4} {:>8.4} {:>10.1}",
            v.mean_price, v.stddev_price, v.cv, v.equity_mean
        );
    }

    // growth at or above the discount rate has no finite price
    let bad = CompanyParams::new(1.0, 0.03, 1.0, GrowthModel::constant(0.05)?);
    match value_company(&bad) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
