//! Finite-state dividend growth distributions.
//!
//! The growth rate is redrawn independently every period. Every closed form
//! in this crate depends on the distribution only through its mean and
//! standard deviation, so a distribution can also be given in moments-only
//! form. Simulation needs the explicit states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rate;

/// Tolerance on the probability sum.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// Explicit finite-state distribution: strictly increasing states above -1,
/// strictly positive probabilities summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    states: Vec<f64>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl Distribution {
    pub fn new(states: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if states.len() != probs.len() {
            return Err(Error::LengthMismatch {
                states: states.len(),
                probs: probs.len(),
            });
        }
        for (i, &s) in states.iter().enumerate() {
            if !s.is_finite() || s <= -1.0 {
                return Err(Error::StateBelowMinusOne { index: i, value: s });
            }
            if i > 0 && s <= states[i - 1] {
                return Err(Error::StatesNotIncreasing {
                    index: i,
                    value: s,
                    previous: states[i - 1],
                });
            }
        }
        for (i, &p) in probs.iter().enumerate() {
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::NonPositiveProbability { index: i, value: p });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::ProbabilitySum { sum });
        }
        let probs: Vec<f64> = probs.into_iter().map(|p| p / sum).collect();
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(Self {
            states,
            probs,
            cumulative,
        })
    }

    pub fn states(&self) -> &[f64] {
        &self.states
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn mean(&self) -> f64 {
        self.states
            .iter()
            .zip(&self.probs)
            .map(|(g, p)| g * p)
            .sum()
    }

    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let var: f64 = self
            .states
            .iter()
            .zip(&self.probs)
            .map(|(g, p)| p * (g - m) * (g - m))
            .sum();
        var.max(0.0).sqrt()
    }

    /// Inverse-CDF draw for a uniform `u` in [0, 1).
    pub fn sample(&self, u: f64) -> f64 {
        let idx = self.cumulative.partition_point(|&c| c <= u);
        self.states[idx.min(self.states.len() - 1)]
    }
}

/// Dividend growth rate model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrowth", into = "RawGrowth")]
pub enum GrowthModel {
    Discrete(Distribution),
    Moments { mean: f64, std_dev: f64 },
}

impl GrowthModel {
    pub fn discrete(states: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        Distribution::new(states, probs).map(GrowthModel::Discrete)
    }

    pub fn moments(mean: f64, std_dev: f64) -> Result<Self> {
        if !mean.is_finite() || mean <= -1.0 {
            return Err(Error::InvalidParameter {
                name: "growth mean",
                value: mean,
                reason: "must be finite and > -1",
            });
        }
        if !std_dev.is_finite() || std_dev < 0.0 {
            return Err(Error::InvalidParameter {
                name: "growth std_dev",
                value: std_dev,
                reason: "must be finite and >= 0",
            });
        }
        Ok(GrowthModel::Moments { mean, std_dev })
    }

    /// Deterministic growth at rate `g`.
    pub fn constant(g: f64) -> Result<Self> {
        Self::moments(g, 0.0)
    }

    pub fn mean(&self) -> f64 {
        match self {
            GrowthModel::Discrete(d) => d.mean(),
            GrowthModel::Moments { mean, .. } => *mean,
        }
    }

    pub fn std_dev(&self) -> f64 {
        match self {
            GrowthModel::Discrete(d) => d.std_dev(),
            GrowthModel::Moments { std_dev, .. } => *std_dev,
        }
    }

    /// E[(1+g)^2] = (1+mean)^2 + sd^2.
    pub fn gross_second_moment(&self) -> f64 {
        let (m, s) = growth_moments(self);
        (1.0 + m) * (1.0 + m) + s * s
    }

    pub fn as_discrete(&self) -> Option<&Distribution> {
        match self {
            GrowthModel::Discrete(d) => Some(d),
            GrowthModel::Moments { .. } => None,
        }
    }
}

/// (mean, standard deviation) of the growth rate.
pub fn growth_moments(g: &GrowthModel) -> (f64, f64) {
    (g.mean(), g.std_dev())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum RawGrowth {
    Discrete {
        #[serde(deserialize_with = "rate::deserialize_vec")]
        states: Vec<f64>,
        probs: Vec<f64>,
    },
    Moments {
        #[serde(deserialize_with = "rate::deserialize")]
        mean: f64,
        #[serde(deserialize_with = "rate::deserialize")]
        std_dev: f64,
    },
}

impl TryFrom<RawGrowth> for GrowthModel {
    type Error = Error;

    fn try_from(raw: RawGrowth) -> Result<Self> {
        match raw {
            RawGrowth::Discrete { states, probs } => GrowthModel::discrete(states, probs),
            RawGrowth::Moments { mean, std_dev } => GrowthModel::moments(mean, std_dev),
        }
    }
}

impl From<GrowthModel> for RawGrowth {
    fn from(g: GrowthModel) -> Self {
        match g {
            GrowthModel::Discrete(d) => RawGrowth::Discrete {
                states: d.states,
                probs: d.probs,
            },
            GrowthModel::Moments { mean, std_dev } => RawGrowth::Moments { mean, std_dev },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_state_is_degenerate() {
        let g = GrowthModel::discrete(vec![0.01], vec![1.0]).unwrap();
        assert_eq!(growth_moments(&g), (0.01, 0.0));
    }

    #[test]
    fn symmetric_two_point() {
        let g = GrowthModel::discrete(vec![-0.01, 0.03], vec![0.5, 0.5]).unwrap();
        let (m, s) = growth_moments(&g);
        assert!((m - 0.01).abs() < 1e-15);
        assert!((s - 0.02).abs() < 1e-15);
    }

    #[test]
    fn moments_only_returns_fields() {
        let g = GrowthModel::moments(0.03, 0.09).unwrap();
        assert_eq!(growth_moments(&g), (0.03, 0.09));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(
            GrowthModel::discrete(vec![], vec![]),
            Err(Error::EmptyDistribution)
        );
        assert!(matches!(
            GrowthModel::discrete(vec![0.02, 0.01], vec![0.5, 0.5]),
            Err(Error::StatesNotIncreasing { index: 1, .. })
        ));
        assert!(matches!(
            GrowthModel::discrete(vec![-1.0, 0.01], vec![0.5, 0.5]),
            Err(Error::StateBelowMinusOne { index: 0, .. })
        ));
        assert!(matches!(
            GrowthModel::discrete(vec![0.0, 0.01], vec![0.0, 1.0]),
            Err(Error::NonPositiveProbability { index: 0, .. })
        ));
        assert!(matches!(
            GrowthModel::discrete(vec![0.0, 0.01], vec![0.5, 0.6]),
            Err(Error::ProbabilitySum { .. })
        ));
        assert!(matches!(
            GrowthModel::discrete(vec![0.0], vec![0.5, 0.5]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(GrowthModel::moments(-1.0, 0.0).is_err());
        assert!(GrowthModel::moments(0.0, -0.1).is_err());
    }

    #[test]
    fn probability_sum_within_tolerance_is_normalized() {
        let g = GrowthModel::discrete(vec![0.0, 0.1], vec![0.5, 0.5 + 5e-13]).unwrap();
        let d = g.as_discrete().unwrap();
        assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_cdf_sampling() {
        let d = Distribution::new(vec![-0.1, 0.0, 0.2], vec![0.25, 0.5, 0.25]).unwrap();
        assert_eq!(d.sample(0.0), -0.1);
        assert_eq!(d.sample(0.2499), -0.1);
        assert_eq!(d.sample(0.25), 0.0);
        assert_eq!(d.sample(0.7499), 0.0);
        assert_eq!(d.sample(0.75), 0.2);
        assert_eq!(d.sample(0.999_999), 0.2);
    }

    #[test]
    fn json_forms() {
        let g: GrowthModel = serde_json::from_str(r#"{"mean": "3%", "std_dev": 0.09}"#).unwrap();
        assert_eq!(
            g,
            GrowthModel::Moments {
                mean: 0.03,
                std_dev: 0.09
            }
        );
        let g: GrowthModel =
            serde_json::from_str(r#"{"states": ["-1%", "3%"], "probs": [0.5, 0.5]}"#).unwrap();
        assert_eq!(g.as_discrete().unwrap().states(), &[-0.01, 0.03]);
        let bad = serde_json::from_str::<GrowthModel>(r#"{"states": [0.0], "probs": [0.7]}"#);
        assert!(bad.unwrap_err().to_string().contains("probabilities sum"));
    }
}
