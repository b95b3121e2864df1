//! Regenerates the bundled two-company reference example and writes every
//! artifact to a directory.
//!
//! Run with `cargo run --example reproduce_reference -- [OUT_DIR]`.

use std::path::PathBuf;

use sddm::cli::{cmd_reproduce_paper, reference_scenario, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "reference-example".into()),
    );
    let s = reference_scenario();
    println!(
        "companies: {:?}",
        s.companies.iter().map(|c| &c.name).collect::<Vec<_>>()
    );

    let bundle = cmd_reproduce_paper(Format::Csv)?;
    bundle.write_to(&out)?;
    print!("{}", bundle.summary);
    println!(
        "\n{} artifacts in {}",
        bundle.artifacts.len(),
        out.display()
    );
    Ok(())
}
