//! Bargaining-region sweeps over the merged growth mean, one report per
//! merged growth volatility.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::ExtendedInterval;
use crate::merger::{mean_bounds, variance_bounds, Parties};
use crate::rate;

/// Bisection stops once the bracket is this narrow.
pub const BISECTION_TOL: f64 = 1e-10;

fn default_steps() -> usize {
    500
}

fn default_clamp() -> f64 {
    2.2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(deserialize_with = "rate::deserialize")]
    pub g_min: f64,
    #[serde(deserialize_with = "rate::deserialize")]
    pub g_max: f64,
    #[serde(default = "default_steps")]
    pub g_steps: usize,
    #[serde(deserialize_with = "rate::deserialize_vec")]
    pub sigmas: Vec<f64>,
    /// Upper truncation of `r` for plotting and area.
    #[serde(default = "default_clamp")]
    pub clamp_r_max: f64,
}

impl SweepConfig {
    pub fn new(g_min: f64, g_max: f64, sigmas: Vec<f64>) -> Self {
        Self {
            g_min,
            g_max,
            g_steps: default_steps(),
            sigmas,
            clamp_r_max: default_clamp(),
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.g_steps;
        let span = self.g_max - self.g_min;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.g_max
                } else {
                    self.g_min + span * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    pub fn validate(&self, k_m: f64) -> Result<()> {
        if self.g_steps < 2 {
            return Err(Error::EmptyGrid(format!(
                "g_steps = {} (need at least 2)",
                self.g_steps
            )));
        }
        if self.sigmas.is_empty() {
            return Err(Error::EmptyGrid("no sigma values".into()));
        }
        if !self.g_min.is_finite() || !self.g_max.is_finite() || self.g_min >= self.g_max {
            return Err(Error::Config(format!(
                "g_min = {} must be below g_max = {}",
                self.g_min, self.g_max
            )));
        }
        if self.g_max >= k_m {
            return Err(Error::Config(format!(
                "g_max = {} must be below the merged discount rate k_M = {k_m}",
                self.g_max
            )));
        }
        if self.g_min <= -1.0 {
            return Err(Error::InvalidParameter {
                name: "g_min",
                value: self.g_min,
                reason: "must be > -1",
            });
        }
        if let Some(&s) = self.sigmas.iter().find(|s| !s.is_finite() || **s < 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: s,
                reason: "must be finite and >= 0",
            });
        }
        if !(self.clamp_r_max > 0.0) {
            return Err(Error::InvalidParameter {
                name: "clamp_r_max",
                value: self.clamp_r_max,
                reason: "must be > 0",
            });
        }
        Ok(())
    }
}

/// Raw values of the four boundary curves at one point. Lower bounds are
/// not clamped at zero; `+inf` marks a vacuous upper (or unattainable
/// lower) condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCurves {
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub var_lower: f64,
    pub var_upper: f64,
}

impl BoundCurves {
    pub fn get(&self, c: Curve) -> f64 {
        match c {
            Curve::MeanLower => self.mean_lower,
            Curve::MeanUpper => self.mean_upper,
            Curve::VarLower => self.var_lower,
            Curve::VarUpper => self.var_upper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Curve {
    MeanLower,
    MeanUpper,
    VarLower,
    VarUpper,
}

impl Curve {
    pub const ALL: [Curve; 4] = [
        Curve::MeanLower,
        Curve::MeanUpper,
        Curve::VarLower,
        Curve::VarUpper,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Curve::MeanLower => "mean_lo",
            Curve::MeanUpper => "mean_hi",
            Curve::VarLower => "var_lo",
            Curve::VarUpper => "var_hi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionSlice {
    pub g: f64,
    /// `k_M > g` and `Δ_M > 0`.
    pub valid: bool,
    pub curves: Option<BoundCurves>,
    pub mean_bounds: ExtendedInterval,
    pub var_bounds: ExtendedInterval,
    pub combined: ExtendedInterval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub curves: (Curve, Curve),
    pub g: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionReport {
    pub sigma: f64,
    pub clamp_r_max: f64,
    pub slices: Vec<RegionSlice>,
    pub feasible: bool,
    /// Smallest feasible growth, refined by bisection between grid points.
    pub g_feasible_min: Option<f64>,
    /// Infimum of the lower bounds of nonempty combined intervals.
    pub min_accepted_r: Option<f64>,
    pub crossings: Vec<Crossing>,
    pub area: f64,
}

/// Evaluates all intervals at one `(g, σ)` point.
pub fn evaluate_slice(p: &Parties, g: f64, sigma: f64) -> RegionSlice {
    match p.merged_valuation(g, sigma) {
        Ok(m) => {
            let (mean_lower, mean_upper) = mean_bounds(p, &m);
            let (var_lower, var_upper) = variance_bounds(p, &m);
            let mean = ExtendedInterval::new(mean_lower, mean_upper);
            let var = ExtendedInterval::new(var_lower, var_upper);
            RegionSlice {
                g,
                valid: true,
                curves: Some(BoundCurves {
                    mean_lower,
                    mean_upper,
                    var_lower,
                    var_upper,
                }),
                mean_bounds: mean,
                var_bounds: var,
                combined: mean.intersect(&var),
            }
        }
        Err(_) => RegionSlice {
            g,
            valid: false,
            curves: None,
            mean_bounds: ExtendedInterval::Empty,
            var_bounds: ExtendedInterval::Empty,
            combined: ExtendedInterval::Empty,
        },
    }
}

fn curve_at(p: &Parties, sigma: f64, c: Curve, g: f64) -> f64 {
    evaluate_slice(p, g, sigma)
        .curves
        .map_or(f64::NAN, |b| b.get(c))
}

/// Bisects for a zero of `f_lo − f_hi` on `bracket`, returning the crossing
/// abscissa and the common ordinate.
pub fn find_crossing<F, G>(f_lo: F, f_hi: G, bracket: (f64, f64)) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = bracket;
    let diff = |g: f64| f_lo(g) - f_hi(g);
    let d_lo = diff(lo);
    let d_hi = diff(hi);
    let bracket_err = Error::Bracket {
        lo,
        hi,
        f_lo: d_lo,
        f_hi: d_hi,
    };
    if !d_lo.is_finite() || !d_hi.is_finite() || (d_lo == 0.0 && d_hi == 0.0) {
        return Err(bracket_err);
    }
    if d_lo == 0.0 {
        return Ok((lo, f_lo(lo)));
    }
    if d_hi == 0.0 {
        return Ok((hi, f_lo(hi)));
    }
    if d_lo.signum() == d_hi.signum() {
        return Err(bracket_err);
    }
    let lo_sign = d_lo.signum();
    while (hi - lo).abs() > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let d = diff(mid);
        if !d.is_finite() {
            return Err(Error::Bracket {
                lo,
                hi,
                f_lo: d_lo,
                f_hi: d,
            });
        }
        if d == 0.0 {
            return Ok((mid, f_lo(mid)));
        }
        if d.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let g = 0.5 * (lo + hi);
    Ok((g, f_lo(g)))
}

/// Bisects a monotone predicate flip between `lo` (false) and `hi` (true).
fn refine_threshold<P: Fn(f64) -> bool>(pred: P, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Trapezoidal integral over `g` of the combined-interval width truncated
/// at `clamp_r_max`; invalid and empty slices contribute zero width.
pub fn region_area(report: &RegionReport) -> f64 {
    let widths: Vec<(f64, f64)> = report
        .slices
        .iter()
        .map(|s| {
            let w = if s.valid {
                s.combined.clamped_width(report.clamp_r_max)
            } else {
                0.0
            };
            (s.g, w)
        })
        .collect();
    widths
        .windows(2)
        .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0))
        .sum()
}

const CURVE_PAIRS: [(Curve, Curve); 6] = [
    (Curve::MeanLower, Curve::MeanUpper),
    (Curve::VarLower, Curve::VarUpper),
    (Curve::MeanLower, Curve::VarLower),
    (Curve::MeanUpper, Curve::VarUpper),
    (Curve::MeanLower, Curve::VarUpper),
    (Curve::VarLower, Curve::MeanUpper),
];

fn crossings(p: &Parties, sigma: f64, slices: &[RegionSlice]) -> Vec<Crossing> {
    let mut out = Vec::new();
    for &(a, b) in &CURVE_PAIRS {
        for w in slices.windows(2) {
            let (Some(c0), Some(c1)) = (w[0].curves, w[1].curves) else {
                continue;
            };
            let d0 = c0.get(a) - c0.get(b);
            let d1 = c1.get(a) - c1.get(b);
            if !d0.is_finite() || !d1.is_finite() || d0 == 0.0 || d0.signum() == d1.signum() {
                continue;
            }
            let found = find_crossing(
                |g| curve_at(p, sigma, a, g),
                |g| curve_at(p, sigma, b, g),
                (w[0].g, w[1].g),
            );
            if let Ok((g, r)) = found {
                if r >= 0.0 {
                    out.push(Crossing {
                        curves: (a, b),
                        g,
                        r,
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| x.g.total_cmp(&y.g));
    out
}

fn build_report(p: &Parties, cfg: &SweepConfig, grid: &[f64], sigma: f64) -> RegionReport {
    let slices: Vec<RegionSlice> = grid
        .par_iter()
        .map(|&g| evaluate_slice(p, g, sigma))
        .collect();
    let first = slices.iter().position(|s| !s.combined.is_empty());
    let feasible = first.is_some();
    let g_feasible_min = first.map(|i| {
        if i > 0 && slices[i - 1].valid {
            refine_threshold(
                |g| !evaluate_slice(p, g, sigma).combined.is_empty(),
                slices[i - 1].g,
                slices[i].g,
            )
        } else {
            slices[i].g
        }
    });
    let min_accepted_r = slices
        .iter()
        .filter_map(|s| s.combined.lower())
        .reduce(f64::min);
    let mut report = RegionReport {
        sigma,
        clamp_r_max: cfg.clamp_r_max,
        crossings: crossings(p, sigma, &slices),
        slices,
        feasible,
        g_feasible_min,
        min_accepted_r,
        area: 0.0,
    };
    report.area = region_area(&report);
    report
}

/// One report per volatility in `cfg.sigmas`, evaluated on the same grid.
pub fn sweep(p: &Parties, cfg: &SweepConfig) -> Result<Vec<RegionReport>> {
    cfg.validate(p.k_m)?;
    let grid = cfg.grid();
    Ok(cfg
        .sigmas
        .iter()
        .map(|&s| build_report(p, cfg, &grid, s))
        .collect())
}

/// Boundary curves computed through the constants
/// `H_i = (D_A + D_B)/W̄_i` and `J_i = (1 + k_M) H_i / f_i`.
/// `None` where the point is invalid or a pre-merger price is riskless.
pub fn rewritten_bounds(p: &Parties, g: f64, sigma: f64) -> Option<BoundCurves> {
    let m = p.merged_valuation(g, sigma).ok()?;
    let (f_a, f_b) = (p.acquirer_value.cv, p.target_value.cv);
    if f_a <= 0.0 || f_b <= 0.0 {
        return None;
    }
    let rho = p.share_ratio();
    let k = p.k_m;
    let d = p.total_dividends();
    let h_a = d / p.acquirer_value.equity_mean;
    let h_b = d / p.target_value.equity_mean;
    let j_a = (1.0 + k) * h_a / f_a;
    let j_b = (1.0 + k) * h_b / f_b;
    let growth_factor = (1.0 + g) / (k - g);
    let risk_factor = m.h_factor / (k - g);

    let inverse_or_inf = |bracket: f64| {
        if bracket > 0.0 {
            rho / bracket
        } else {
            f64::INFINITY
        }
    };
    Some(BoundCurves {
        mean_lower: inverse_or_inf(growth_factor * h_b - 1.0),
        mean_upper: rho * (growth_factor * h_a - 1.0),
        var_lower: rho * (risk_factor * j_a - 1.0),
        var_upper: inverse_or_inf(risk_factor * j_b - 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BoundsCheck {
    Pass,
    Fail {
        curve: Curve,
        direct: f64,
        rewritten: f64,
    },
    NotApplicable,
}

/// Relative tolerance of [`rewritten_bounds_check`].
pub const REWRITE_TOL: f64 = 1e-9;

fn close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Compares the `H`/`J` forms of all four bounds with the direct forms.
pub fn rewritten_bounds_check(p: &Parties, g: f64, sigma: f64) -> BoundsCheck {
    let Some(direct) = evaluate_slice(p, g, sigma).curves else {
        return BoundsCheck::NotApplicable;
    };
    let Some(rewritten) = rewritten_bounds(p, g, sigma) else {
        return BoundsCheck::NotApplicable;
    };
    for c in Curve::ALL {
        if !close(direct.get(c), rewritten.get(c), REWRITE_TOL) {
            return BoundsCheck::Fail {
                curve: c,
                direct: direct.get(c),
                rewritten: rewritten.get(c),
            };
        }
    }
    BoundsCheck::Pass
}
