//! Stock-for-stock merger of an acquirer A and a target B into M.
//!
//! A target shareholder receives `r` shares of M per share of B, so M has
//! `N_A + r·N_B` shares. With expected equity values `W` and coefficients of
//! variation `f`:
//!
//! ```text
//! mean:      ρ·W_B/(W_M − W_B)              <= r <= ρ·(W_M − W_A)/W_A
//! variance:  ρ·(W_M f_M − W_A f_A)/(W_A f_A) <= r <= ρ·W_B f_B/(W_M f_M − W_B f_B)
//! ```
//!
//! with `ρ = N_A/N_B`. All intervals are intersected with `r >= 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::GrowthModel;
use crate::interval::ExtendedInterval;
use crate::rate;
use crate::valuation::{cv_factor, gordon_mean, value_company, CompanyParams, Valuation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergerInputs {
    pub acquirer: CompanyParams,
    pub target: CompanyParams,
    pub merged_growth: GrowthModel,
    #[serde(default, deserialize_with = "rate::deserialize_opt")]
    pub discount_override: Option<f64>,
}

/// Relative expected equity values `(ω_A, ω_B)`.
pub fn equity_weights(a: &Valuation, b: &Valuation) -> (f64, f64) {
    let total = a.equity_mean + b.equity_mean;
    (a.equity_mean / total, b.equity_mean / total)
}

/// Equity-weighted average of the two pre-merger discount rates.
pub fn blended_discount_rate(a: &Valuation, k_a: f64, b: &Valuation, k_b: f64) -> f64 {
    let (w_a, w_b) = equity_weights(a, b);
    w_a * k_a + w_b * k_b
}

/// The unique ratio acceptable in expectation when the merger creates no
/// synergy: `P̄_B / P̄_A`.
pub fn r_star(a: &Valuation, b: &Valuation) -> f64 {
    b.mean_price / a.mean_price
}

/// Whether `f_M` does not exceed the equity-weighted mean of `f_A`, `f_B`.
pub fn cv_mixture_check(a: &Valuation, b: &Valuation, merged_cv: f64) -> bool {
    let (w_a, w_b) = equity_weights(a, b);
    merged_cv <= w_a * a.cv + w_b * b.cv
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MergerValuation {
    pub k_m: f64,
    pub growth_mean: f64,
    pub growth_std_dev: f64,
    /// `D_A(0) + D_B(0)`.
    pub total_dividends: f64,
    pub equity_mean: f64,
    pub delta: f64,
    pub h_factor: f64,
    pub cv: f64,
    pub weights: (f64, f64),
}

/// Pre-merger state: both companies valued, plus the blended rate `k_M`.
/// Everything here is independent of the merged growth distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Parties {
    pub acquirer: CompanyParams,
    pub target: CompanyParams,
    pub acquirer_value: Valuation,
    pub target_value: Valuation,
    pub weights: (f64, f64),
    pub k_m: f64,
}

impl Parties {
    pub fn new(
        acquirer: CompanyParams,
        target: CompanyParams,
        discount_override: Option<f64>,
    ) -> Result<Self> {
        let acquirer_value = value_company(&acquirer)?;
        let target_value = value_company(&target)?;
        let weights = equity_weights(&acquirer_value, &target_value);
        let k_m = match discount_override {
            Some(k) if !k.is_finite() || k <= -1.0 => {
                return Err(Error::InvalidParameter {
                    name: "discount_override",
                    value: k,
                    reason: "must be finite and > -1",
                })
            }
            Some(k) => k,
            None => blended_discount_rate(
                &acquirer_value,
                acquirer.discount_rate,
                &target_value,
                target.discount_rate,
            ),
        };
        Ok(Self {
            acquirer,
            target,
            acquirer_value,
            target_value,
            weights,
            k_m,
        })
    }

    /// `N_A / N_B`.
    pub fn share_ratio(&self) -> f64 {
        self.acquirer.shares / self.target.shares
    }

    pub fn total_dividends(&self) -> f64 {
        self.acquirer.total_dividends() + self.target.total_dividends()
    }

    /// `W̄_A + W̄_B`.
    pub fn combined_equity(&self) -> f64 {
        self.acquirer_value.equity_mean + self.target_value.equity_mean
    }

    pub fn r_star(&self) -> f64 {
        r_star(&self.acquirer_value, &self.target_value)
    }

    /// Merged growth mean at which `W̄_M = W̄_A + W̄_B`:
    /// `g = (S·k_M − D)/(S + D)`.
    pub fn no_synergy_growth(&self) -> Result<f64> {
        let s = self.combined_equity();
        if !(s > 0.0) {
            return Err(Error::NonPositiveEquity { equity: s });
        }
        let d = self.total_dividends();
        Ok((s * self.k_m - d) / (s + d))
    }

    /// Merged company valued with growth moments `(mean, std_dev)`.
    pub fn merged_valuation(&self, mean: f64, std_dev: f64) -> Result<MergerValuation> {
        let total_dividends = self.total_dividends();
        let equity_mean = gordon_mean(total_dividends, self.k_m, mean)?;
        let (delta, h_factor, cv) = cv_factor(self.k_m, mean, std_dev)?;
        Ok(MergerValuation {
            k_m: self.k_m,
            growth_mean: mean,
            growth_std_dev: std_dev,
            total_dividends,
            equity_mean,
            delta,
            h_factor,
            cv,
            weights: self.weights,
        })
    }

    /// Merged valuation at the no-synergy growth, with `W̄_M` set to
    /// `W̄_A + W̄_B` exactly rather than recomputed.
    pub fn no_synergy_valuation(&self, std_dev: f64) -> Result<MergerValuation> {
        let g = self.no_synergy_growth()?;
        let mut v = self.merged_valuation(g, std_dev)?;
        v.equity_mean = self.combined_equity();
        Ok(v)
    }

    /// Dividend per share of M when the target receives `r` shares per share.
    pub fn merged_dps(&self, r: f64) -> f64 {
        self.total_dividends() / (self.acquirer.shares + r * self.target.shares)
    }
}

/// Raw mean-condition bounds before clamping at zero. The lower bound is
/// `+inf` when `W̄_M <= W̄_B`; the upper bound may be negative.
///
/// Both bounds are written through the synergy `e = W̄_M − W̄_A − W̄_B`, so
/// they round to the same value at `e = 0` and never cross for `e >= 0`.
pub fn mean_bounds(p: &Parties, m: &MergerValuation) -> (f64, f64) {
    let rho = p.share_ratio();
    let w_a = p.acquirer_value.equity_mean;
    let w_b = p.target_value.equity_mean;
    let e = m.equity_mean - (w_a + w_b);
    let lower = if w_a + e > 0.0 {
        rho * w_b / (w_a + e)
    } else {
        f64::INFINITY
    };
    let upper = rho * (w_b + e) / w_a;
    (lower, upper)
}

/// Raw variance-condition bounds before clamping at zero. The upper bound is
/// `+inf` when `W̄_M f_M <= W̄_B f_B`.
pub fn variance_bounds(p: &Parties, m: &MergerValuation) -> (f64, f64) {
    let rho = p.share_ratio();
    let risk_a = p.acquirer_value.equity_mean * p.acquirer_value.cv;
    let risk_b = p.target_value.equity_mean * p.target_value.cv;
    let risk_m = m.equity_mean * m.cv;
    let lower = if risk_a > 0.0 {
        rho * (risk_m - risk_a) / risk_a
    } else if risk_m > 0.0 {
        // A's price is riskless and M's is not
        f64::INFINITY
    } else {
        0.0
    };
    let excess = risk_m - risk_b;
    let upper = if excess > 0.0 {
        rho * risk_b / excess
    } else {
        f64::INFINITY
    };
    (lower, upper)
}

/// Ratios for which both groups gain in expected wealth.
pub fn mean_interval(p: &Parties, m: &MergerValuation) -> ExtendedInterval {
    let (lo, hi) = mean_bounds(p, m);
    ExtendedInterval::new(lo, hi)
}

/// Ratios for which neither group's price variance increases.
pub fn variance_interval(p: &Parties, m: &MergerValuation) -> ExtendedInterval {
    let (lo, hi) = variance_bounds(p, m);
    ExtendedInterval::new(lo, hi)
}

pub fn combined_interval(p: &Parties, m: &MergerValuation) -> ExtendedInterval {
    mean_interval(p, m).intersect(&variance_interval(p, m))
}

/// Variance interval specialised to zero synergy, written in terms of the
/// coefficients of variation only.
pub fn no_synergy_interval(p: &Parties, merged_cv: f64) -> ExtendedInterval {
    let rho = p.share_ratio();
    let r_star = p.r_star();
    let f_a = p.acquirer_value.cv;
    let f_b = p.target_value.cv;
    let f_m = merged_cv;

    let lower = if f_a > 0.0 {
        rho * (f_m / f_a - 1.0) + r_star * (f_m / f_a)
    } else if f_m > 0.0 {
        return ExtendedInterval::Empty;
    } else {
        0.0
    };
    let upper = if f_m == 0.0 {
        f64::INFINITY
    } else if f_b == 0.0 {
        0.0
    } else {
        let bracket = (f_m / f_b - 1.0) / rho + (f_m / f_b) / r_star;
        if bracket <= 0.0 {
            f64::INFINITY
        } else {
            1.0 / bracket
        }
    };
    ExtendedInterval::new(lower, upper)
}

/// A fully specified merger: both parties plus the merged growth.
#[derive(Debug, Clone, PartialEq)]
pub struct Merger {
    pub parties: Parties,
    pub merged: MergerValuation,
}

impl Merger {
    pub fn new(inputs: &MergerInputs) -> Result<Self> {
        let parties = Parties::new(
            inputs.acquirer.clone(),
            inputs.target.clone(),
            inputs.discount_override,
        )?;
        let merged = parties
            .merged_valuation(inputs.merged_growth.mean(), inputs.merged_growth.std_dev())?;
        Ok(Self { parties, merged })
    }

    pub fn mean_interval(&self) -> ExtendedInterval {
        mean_interval(&self.parties, &self.merged)
    }

    pub fn variance_interval(&self) -> ExtendedInterval {
        variance_interval(&self.parties, &self.merged)
    }

    pub fn combined_interval(&self) -> ExtendedInterval {
        combined_interval(&self.parties, &self.merged)
    }

    pub fn merged_dps(&self, r: f64) -> f64 {
        self.parties.merged_dps(r)
    }

    /// Expected price per share of M at ratio `r`.
    pub fn merged_price(&self, r: f64) -> f64 {
        self.merged.equity_mean / (self.parties.acquirer.shares + r * self.parties.target.shares)
    }

    pub fn has_synergy(&self) -> bool {
        self.merged.equity_mean >= self.parties.combined_equity()
    }

    /// `f_M W̄_M <= f_A W̄_A + f_B W̄_B`.
    pub fn variance_condition_holds(&self) -> bool {
        let a = &self.parties.acquirer_value;
        let b = &self.parties.target_value;
        self.merged.cv * self.merged.equity_mean <= a.cv * a.equity_mean + b.cv * b.equity_mean
    }
}

/// Merged company valuation for a full set of merger inputs.
pub fn merged_valuation(m: &MergerInputs) -> Result<MergerValuation> {
    Merger::new(m).map(|m| m.merged)
}
