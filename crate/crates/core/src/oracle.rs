//! Independent checks of the closed-form price moments.
//!
//! Two routes that never touch the closed forms:
//!
//! * Monte Carlo over dividend paths truncated at a horizon `T`, with the
//!   growth rate drawn i.i.d. from the explicit states each period.
//! * Exact moments of the truncated sum. With `x = (1+ḡ)/(1+k)` and
//!   `y = E[(1+g)²]/(1+k)²`, `E[term_t · term_u] = d² y^min(t,u) x^|t−u|`,
//!   which sums in O(T).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::valuation::CompanyParams;

/// Relative size of the omitted tail targeted by [`Horizon::Auto`].
pub const AUTO_TAIL_REL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Horizon {
    #[default]
    Auto,
    Fixed(usize),
}

impl Serialize for Horizon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Horizon::Auto => s.serialize_str("auto"),
            Horizon::Fixed(t) => s.serialize_u64(*t as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Horizon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(0) => Err(de::Error::custom("horizon must be >= 1")),
            Raw::N(n) => Ok(Horizon::Fixed(n as usize)),
            Raw::S(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

impl std::str::FromStr for Horizon {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Horizon::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!(
                "horizon must be a positive integer or 'auto', got '{s}'"
            )),
            Ok(n) => Ok(Horizon::Fixed(n)),
        }
    }
}

fn default_paths() -> usize {
    200_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    #[serde(default)]
    pub horizon: Horizon,
    #[serde(default = "default_paths")]
    pub paths: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            horizon: Horizon::Auto,
            paths: default_paths(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    pub variance: f64,
    pub mean_se: f64,
    pub var_se: f64,
    /// Expected value omitted beyond the horizon; `+inf` if the series
    /// diverges.
    pub tail_bound: f64,
    pub horizon: usize,
    pub paths: usize,
}

fn gross_ratios(c: &CompanyParams) -> Result<(f64, f64)> {
    let k = c.discount_rate;
    if !(k > -1.0) {
        return Err(Error::InvalidParameter {
            name: "discount_rate",
            value: k,
            reason: "must be > -1",
        });
    }
    let a = 1.0 + k;
    let x = (1.0 + c.growth.mean()) / a;
    let y = c.growth.gross_second_moment() / (a * a);
    Ok((x, y))
}

/// Expected value of the dividends beyond period `t`: `d·x^(t+1)/(1−x)`.
pub fn tail_bound(c: &CompanyParams, t: usize) -> Result<f64> {
    let mean = c.growth.mean();
    if c.discount_rate <= mean {
        return Err(Error::DiscountNotAboveGrowth {
            k: c.discount_rate,
            growth: mean,
        });
    }
    let (x, _) = gross_ratios(c)?;
    Ok(c.dps0 * x.powi((t + 1) as i32) / (1.0 - x))
}

/// Smallest horizon whose omitted mean is below `AUTO_TAIL_REL` of the full
/// mean. When the second moment also converges its tail is held to the same
/// relative size.
pub fn auto_horizon(c: &CompanyParams) -> Result<usize> {
    tail_bound(c, 0)?;
    let (x, y) = gross_ratios(c)?;
    let rate = if y < 1.0 { x.max(y) } else { x };
    let t = (AUTO_TAIL_REL.ln() / rate.ln()).ceil();
    Ok((t as usize).max(1))
}

pub fn resolve_horizon(c: &CompanyParams, h: Horizon) -> Result<usize> {
    match h {
        Horizon::Auto => auto_horizon(c),
        Horizon::Fixed(0) => Err(Error::InvalidParameter {
            name: "horizon",
            value: 0.0,
            reason: "must be >= 1",
        }),
        Horizon::Fixed(t) => Ok(t),
    }
}

/// `d · Σ_{t=1..T} x^t`.
pub fn truncated_mean_exact(c: &CompanyParams, t: usize) -> Result<f64> {
    let (x, _) = gross_ratios(c)?;
    let mut term = 1.0;
    let mut sum = 0.0;
    for _ in 0..t {
        term *= x;
        sum += term;
    }
    Ok(c.dps0 * sum)
}

/// Exact variance of the price truncated after `t` periods.
pub fn truncated_variance_exact(c: &CompanyParams, t: usize) -> Result<f64> {
    let (x, y) = gross_ratios(c)?;
    // partial[n] = Σ_{j=1..n} x^j
    let mut partial = Vec::with_capacity(t + 1);
    partial.push(0.0);
    let mut term = 1.0;
    for n in 1..=t {
        term *= x;
        partial.push(partial[n - 1] + term);
    }
    // E[S²]/d² = Σ_t y^t (1 + 2 partial[T−t])
    let mut y_pow = 1.0;
    let mut second = 0.0;
    for s in 1..=t {
        y_pow *= y;
        second += y_pow * (1.0 + 2.0 * partial[t - s]);
    }
    let d2 = c.dps0 * c.dps0;
    let mean = c.dps0 * partial[t];
    Ok((d2 * second - mean * mean).max(0.0))
}

fn path_value(c: &CompanyParams, seed: u64, path: u64, horizon: usize) -> f64 {
    let dist = c
        .growth
        .as_discrete()
        .expect("explicit distribution checked by caller");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    let discount = 1.0 / (1.0 + c.discount_rate);
    let mut level = c.dps0;
    let mut sum = 0.0;
    for _ in 0..horizon {
        let g = dist.sample(rng.gen::<f64>());
        level *= (1.0 + g) * discount;
        sum += level;
    }
    sum
}

/// Monte Carlo estimate of the truncated price's mean and variance. Path `i`
/// uses stream `i` of a ChaCha generator keyed by `cfg.seed`, so results do
/// not depend on thread scheduling.
pub fn simulate_price(c: &CompanyParams, cfg: &SimConfig) -> Result<MomentEstimate> {
    if c.growth.as_discrete().is_none() {
        return Err(Error::Unsupported(
            "Monte Carlo needs an explicit growth distribution (states and probs); \
             a moments-only model cannot be sampled"
                .into(),
        ));
    }
    if cfg.paths == 0 {
        return Err(Error::InvalidParameter {
            name: "paths",
            value: 0.0,
            reason: "must be >= 1",
        });
    }
    let horizon = resolve_horizon(c, cfg.horizon)?;
    let values: Vec<f64> = (0..cfg.paths as u64)
        .into_par_iter()
        .map(|i| path_value(c, cfg.seed, i, horizon))
        .collect();

    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (m2, m4) = values.iter().fold((0.0, 0.0), |(s2, s4), v| {
        let d2 = (v - mean) * (v - mean);
        (s2 + d2, s4 + d2 * d2)
    });
    let (variance, mean_se, var_se) = if values.len() > 1 {
        let var = m2 / (n - 1.0);
        let m4 = m4 / n;
        let var_of_var = (m4 - (n - 3.0) / (n - 1.0) * var * var) / n;
        (var, (var / n).sqrt(), var_of_var.max(0.0).sqrt())
    } else {
        (0.0, f64::INFINITY, f64::INFINITY)
    };
    let tail = tail_bound(c, horizon).unwrap_or(f64::INFINITY);
    Ok(MomentEstimate {
        mean,
        variance,
        mean_se,
        var_se,
        tail_bound: tail,
        horizon,
        paths: cfg.paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::GrowthModel;
    use crate::valuation::{price_dispersion, value_company};

    fn row_a() -> CompanyParams {
        CompanyParams::new(
            0.6,
            0.04,
            1000.0,
            GrowthModel::discrete(vec![-0.01, 0.03], vec![0.5, 0.5]).unwrap(),
        )
    }

    fn row_b() -> CompanyParams {
        CompanyParams::new(
            0.3,
            0.08,
            2500.0,
            GrowthModel::discrete(vec![-0.06, 0.12], vec![0.5, 0.5]).unwrap(),
        )
    }

    #[test]
    fn deterministic_growth_paths() {
        let c = CompanyParams::new(
            1.0,
            0.05,
            1.0,
            GrowthModel::discrete(vec![0.01], vec![1.0]).unwrap(),
        );
        let cfg = SimConfig {
            horizon: Horizon::Fixed(50),
            paths: 64,
            seed: 7,
        };
        let est = simulate_price(&c, &cfg).unwrap();
        let x: f64 = 1.01 / 1.05;
        let expected: f64 = (1..=50).map(|t| x.powi(t)).sum();
        assert!((est.mean - expected).abs() < 1e-12);
        assert!(est.variance < 1e-24);
    }

    #[test]
    fn single_period_mean() {
        let c = row_a();
        assert!((truncated_mean_exact(&c, 1).unwrap() - 0.6 * 1.01 / 1.04).abs() < 1e-15);
        let est = simulate_price(
            &c,
            &SimConfig {
                horizon: Horizon::Fixed(1),
                paths: 40_000,
                seed: 1,
            },
        )
        .unwrap();
        assert!((est.mean - 0.6 * 1.01 / 1.04).abs() < 4.0 * est.mean_se);
    }

    #[test]
    fn moments_only_cannot_be_simulated() {
        let c = CompanyParams::new(0.6, 0.04, 1000.0, GrowthModel::moments(0.01, 0.02).unwrap());
        let err = simulate_price(&c, &SimConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
        assert!(err.to_string().contains("explicit"));
    }

    #[test]
    fn truncated_mean_limits() {
        let c = row_a();
        assert!((truncated_mean_exact(&c, 2000).unwrap() - 20.2).abs() < 1e-9);
        let fast = CompanyParams::new(1.0, 0.02, 1.0, GrowthModel::moments(0.05, 0.0).unwrap());
        let s = truncated_mean_exact(&fast, 10).unwrap();
        assert!(s.is_finite() && s > 10.0);
    }

    #[test]
    fn truncated_variance_limits() {
        let deterministic =
            CompanyParams::new(0.6, 0.04, 1.0, GrowthModel::moments(0.01, 0.0).unwrap());
        for t in [1, 10, 500] {
            assert!(truncated_variance_exact(&deterministic, t).unwrap() < 1e-24);
        }
        for c in [row_a(), row_b()] {
            let closed = price_dispersion(&c).unwrap().stddev_price.powi(2);
            let exact = truncated_variance_exact(&c, 2000).unwrap();
            assert!(
                (exact - closed).abs() / closed < 1e-6,
                "{exact} vs {closed}"
            );
        }
        let b = truncated_variance_exact(&row_b(), 2000).unwrap();
        assert!((b - 1.87f64.powi(2)).abs() / 1.87f64.powi(2) < 1e-2);
    }

    #[test]
    fn tail_bound_values() {
        let c = row_a();
        assert!((tail_bound(&c, 0).unwrap() - 20.2).abs() < 1e-12);
        assert!(tail_bound(&c, 400).unwrap() < 1e-3);
        assert!(tail_bound(&c, 2000).unwrap() < 1e-12);
        let diverging =
            CompanyParams::new(1.0, 0.02, 1.0, GrowthModel::moments(0.05, 0.0).unwrap());
        assert!(matches!(
            tail_bound(&diverging, 5),
            Err(Error::DiscountNotAboveGrowth { .. })
        ));
    }

    #[test]
    fn auto_horizon_tail_is_small() {
        for c in [row_a(), row_b()] {
            let t = auto_horizon(&c).unwrap();
            let mean = value_company(&c).unwrap().mean_price;
            assert!(tail_bound(&c, t).unwrap() < AUTO_TAIL_REL * mean);
        }
    }

    #[test]
    fn same_seed_same_bits() {
        let cfg = SimConfig {
            horizon: Horizon::Fixed(100),
            paths: 500,
            seed: 99,
        };
        let a = simulate_price(&row_b(), &cfg).unwrap();
        let b = simulate_price(&row_b(), &cfg).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.variance.to_bits(), b.variance.to_bits());
    }

    #[test]
    fn one_path_has_unbounded_errors() {
        let est = simulate_price(
            &row_a(),
            &SimConfig {
                horizon: Horizon::Fixed(10),
                paths: 1,
                seed: 0,
            },
        )
        .unwrap();
        assert!(est.mean.is_finite());
        assert_eq!(est.mean_se, f64::INFINITY);
    }

    #[test]
    fn horizon_parsing() {
        assert_eq!("auto".parse::<Horizon>().unwrap(), Horizon::Auto);
        assert_eq!("12".parse::<Horizon>().unwrap(), Horizon::Fixed(12));
        assert!("0".parse::<Horizon>().is_err());
        let h: Horizon = serde_json::from_str("\"auto\"").unwrap();
        assert_eq!(h, Horizon::Auto);
        let h: Horizon = serde_json::from_str("300").unwrap();
        assert_eq!(h, Horizon::Fixed(300));
    }
}
