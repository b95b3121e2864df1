//! Stochastic dividend discount valuation and stock-for-stock merger
//! exchange-ratio analysis.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod growth;
pub mod interval;
pub mod merger;
pub mod oracle;
mod rate;
pub mod region;
pub mod valuation;

pub use error::{Error, Result};
pub use growth::{growth_moments, Distribution, GrowthModel};
pub use interval::ExtendedInterval;
pub use merger::{Merger, MergerInputs, MergerValuation, Parties};
pub use valuation::{expected_price, price_dispersion, value_company, CompanyParams, Valuation};
