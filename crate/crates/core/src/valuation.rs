//! Single-company valuation under stochastic dividend growth.
//!
//! With i.i.d. gross growth `1+g` of mean `1+ḡ` and standard deviation `σ`,
//! the price `Σ d·Π(1+g_s)/(1+k)^t` has
//!
//! ```text
//! mean   = d (1+ḡ) / (k - ḡ)                         (requires k > ḡ)
//! Δ      = (1+k)² - (1+ḡ)² - σ²                      (requires Δ > 0)
//! h      = σ / √Δ
//! cv     = h (1+k) / (1+ḡ)
//! stddev = mean · cv
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::GrowthModel;
use crate::rate;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompanyParams {
    /// Last paid dividend per share.
    pub dps0: f64,
    #[serde(deserialize_with = "rate::deserialize")]
    pub discount_rate: f64,
    /// Shares outstanding; fractional counts are allowed.
    pub shares: f64,
    pub growth: GrowthModel,
}

impl CompanyParams {
    pub fn new(dps0: f64, discount_rate: f64, shares: f64, growth: GrowthModel) -> Self {
        Self {
            dps0,
            discount_rate,
            shares,
            growth,
        }
    }

    /// Total dividends paid at time 0.
    pub fn total_dividends(&self) -> f64 {
        self.dps0 * self.shares
    }

    /// Checks every invariant required by [`value_company`].
    pub fn validate(&self) -> Result<()> {
        if !(self.dps0 > 0.0) || !self.dps0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "dps0",
                value: self.dps0,
                reason: "must be finite and > 0",
            });
        }
        if !(self.shares > 0.0) || !self.shares.is_finite() {
            return Err(Error::InvalidParameter {
                name: "shares",
                value: self.shares,
                reason: "must be finite and > 0",
            });
        }
        if !self.discount_rate.is_finite() || self.discount_rate <= -1.0 {
            return Err(Error::InvalidParameter {
                name: "discount_rate",
                value: self.discount_rate,
                reason: "must be finite and > -1",
            });
        }
        check_discount_above_growth(self.discount_rate, self.growth.mean())?;
        delta(
            self.discount_rate,
            self.growth.mean(),
            self.growth.std_dev(),
        )
        .map(|_| ())
    }
}

/// Dispersion quantities of a price.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dispersion {
    pub delta: f64,
    pub h_factor: f64,
    pub stddev_price: f64,
    pub cv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Valuation {
    pub mean_price: f64,
    pub stddev_price: f64,
    pub delta: f64,
    pub h_factor: f64,
    pub cv: f64,
    /// Shares × mean price.
    pub equity_mean: f64,
}

fn check_discount_above_growth(k: f64, growth: f64) -> Result<()> {
    if k > growth {
        Ok(())
    } else {
        Err(Error::DiscountNotAboveGrowth { k, growth })
    }
}

/// Δ = (1+k)² − (1+ḡ)² − σ², erroring unless strictly positive.
pub fn delta(k: f64, mean: f64, std_dev: f64) -> Result<f64> {
    let d = (1.0 + k) * (1.0 + k) - (1.0 + mean) * (1.0 + mean) - std_dev * std_dev;
    if d > 0.0 {
        Ok(d)
    } else {
        Err(Error::NonPositiveDelta { delta: d })
    }
}

/// Expected price of a dividend stream starting at `dps0`.
pub fn gordon_mean(dps0: f64, k: f64, mean: f64) -> Result<f64> {
    check_discount_above_growth(k, mean)?;
    Ok(dps0 * (1.0 + mean) / (k - mean))
}

/// (Δ, h, cv) for discount rate `k` and growth moments. `σ = 0` gives
/// exactly zero for `h` and `cv`.
pub fn cv_factor(k: f64, mean: f64, std_dev: f64) -> Result<(f64, f64, f64)> {
    let d = delta(k, mean, std_dev)?;
    if std_dev == 0.0 {
        return Ok((d, 0.0, 0.0));
    }
    let h = std_dev / d.sqrt();
    Ok((d, h, h * (1.0 + k) / (1.0 + mean)))
}

pub fn expected_price(c: &CompanyParams) -> Result<f64> {
    gordon_mean(c.dps0, c.discount_rate, c.growth.mean())
}

pub fn price_dispersion(c: &CompanyParams) -> Result<Dispersion> {
    let mean_price = expected_price(c)?;
    let (delta, h_factor, cv) = cv_factor(c.discount_rate, c.growth.mean(), c.growth.std_dev())?;
    Ok(Dispersion {
        delta,
        h_factor,
        stddev_price: mean_price * cv,
        cv,
    })
}

pub fn value_company(c: &CompanyParams) -> Result<Valuation> {
    c.validate()?;
    let mean_price = expected_price(c)?;
    let d = price_dispersion(c)?;
    Ok(Valuation {
        mean_price,
        stddev_price: d.stddev_price,
        delta: d.delta,
        h_factor: d.h_factor,
        cv: d.cv,
        equity_mean: c.shares * mean_price,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn company(d: f64, g: f64, s: f64, k: f64, n: f64) -> CompanyParams {
        CompanyParams::new(d, k, n, GrowthModel::moments(g, s).unwrap())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn expected_price_reference_rows() {
        assert!(
            rel(
                expected_price(&company(0.6, 0.01, 0.02, 0.04, 1000.0)).unwrap(),
                20.2
            ) < 1e-12
        );
        assert!(
            rel(
                expected_price(&company(0.3, 0.03, 0.09, 0.08, 2500.0)).unwrap(),
                6.18
            ) < 1e-12
        );
        assert_eq!(
            expected_price(&company(1.0, 0.0, 0.0, 0.05, 1.0)).unwrap(),
            20.0
        );
    }

    #[test]
    fn expected_price_rejects_k_not_above_growth() {
        let err = expected_price(&company(1.0, 0.05, 0.0, 0.05, 1.0)).unwrap_err();
        assert!(matches!(err, Error::DiscountNotAboveGrowth { .. }));
        assert!(err.to_string().contains("k <= g"));
    }

    #[test]
    fn dispersion_row_a() {
        let d = price_dispersion(&company(0.6, 0.01, 0.02, 0.04, 1000.0)).unwrap();
        assert!((d.delta - 0.0611).abs() < 1e-12);
        assert!((d.stddev_price - 1.68).abs() < 0.005);
        assert!((d.cv - 0.0832).abs() < 0.0005);
    }

    #[test]
    fn dispersion_row_b() {
        let d = price_dispersion(&company(0.3, 0.03, 0.09, 0.08, 2500.0)).unwrap();
        assert!((d.delta - 0.0974).abs() < 1e-12);
        assert!((d.stddev_price - 1.87).abs() < 0.005);
        // exact arithmetic gives 0.30238; the rounded published figure is 0.3026
        assert!((d.cv - 0.3024).abs() < 0.0001);
    }

    #[test]
    fn zero_volatility_has_zero_dispersion() {
        let c = company(0.6, 0.01, 0.0, 0.04, 1000.0);
        let d = price_dispersion(&c).unwrap();
        assert_eq!(d.delta, 1.04f64 * 1.04 - 1.01 * 1.01);
        assert_eq!((d.h_factor, d.stddev_price, d.cv), (0.0, 0.0, 0.0));
    }

    #[test]
    fn non_positive_delta_is_named() {
        // k > g but sigma large enough to kill delta
        let err = price_dispersion(&company(1.0, 0.0, 0.5, 0.05, 1.0)).unwrap_err();
        match &err {
            Error::NonPositiveDelta { delta } => assert!(*delta < 0.0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("delta"));
        assert!(err.is_infeasible_model());
    }

    #[test]
    fn value_company_equity() {
        let a = value_company(&company(0.6, 0.01, 0.02, 0.04, 1000.0)).unwrap();
        let b = value_company(&company(0.3, 0.03, 0.09, 0.08, 2500.0)).unwrap();
        assert!(rel(a.equity_mean, 20_200.0) < 1e-12);
        assert!(rel(b.equity_mean, 15_450.0) < 1e-12);
        let c = value_company(&company(1.0, 0.0, 0.0, 0.05, 1.0)).unwrap();
        assert_eq!(
            (c.mean_price, c.stddev_price, c.cv, c.equity_mean),
            (20.0, 0.0, 0.0, 20.0)
        );
    }

    #[test]
    fn validate_rejects_bad_inputs() {
        assert!(matches!(
            company(0.0, 0.01, 0.02, 0.04, 1.0).validate(),
            Err(Error::InvalidParameter { name: "dps0", .. })
        ));
        assert!(matches!(
            company(1.0, 0.01, 0.02, 0.04, -3.0).validate(),
            Err(Error::InvalidParameter { name: "shares", .. })
        ));
    }

    #[test]
    fn explicit_and_moment_forms_agree() {
        let explicit = CompanyParams::new(
            0.6,
            0.04,
            1000.0,
            GrowthModel::discrete(vec![-0.01, 0.03], vec![0.5, 0.5]).unwrap(),
        );
        let moments = company(0.6, 0.01, 0.02, 0.04, 1000.0);
        let a = value_company(&explicit).unwrap();
        let b = value_company(&moments).unwrap();
        assert!(rel(a.mean_price, b.mean_price) < 1e-14);
        assert!(rel(a.stddev_price, b.stddev_price) < 1e-12);
    }
}
