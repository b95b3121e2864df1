//! Scenario files, tabular and SVG artifacts, and the command
//! implementations behind the `sddm` binary.

mod commands;
pub mod scenario;
pub mod svg;
pub mod table;

pub use commands::{
    cmd_mc_check, cmd_region, cmd_reproduce_paper, cmd_value, reference_scenario, reference_sweep,
    Artifact, Format, OutputBundle, MC_SE_MULTIPLE, REFERENCE_SCENARIO,
};
pub use scenario::{MergerSpec, NamedCompany, ScenarioFile};
