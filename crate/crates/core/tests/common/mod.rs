//! Independent closed-form oracles and random instance generators shared by
//! the integration tests. Nothing here calls into the library's formulas.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sddm::{CompanyParams, GrowthModel, Parties};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mean price `d(1+g)/(k-g)`.
pub fn oracle_mean(d: f64, k: f64, g: f64) -> f64 {
    d * (1.0 + g) / (k - g)
}

/// Price standard deviation `d σ (1+k) / ((k-g) sqrt(Δ))`.
pub fn oracle_sd(d: f64, k: f64, g: f64, s: f64) -> f64 {
    let delta = (1.0 + k).powi(2) - (1.0 + g).powi(2) - s * s;
    d * s * (1.0 + k) / ((k - g) * delta.sqrt())
}

pub fn oracle_cv(k: f64, g: f64, s: f64) -> f64 {
    let delta = (1.0 + k).powi(2) - (1.0 + g).powi(2) - s * s;
    s * (1.0 + k) / ((1.0 + g) * delta.sqrt())
}

/// Merged-company mean equity and coefficient of variation, with the
/// discount rate blended by pre-merger equity values.
pub struct MergedOracle {
    pub k_m: f64,
    pub w_a: f64,
    pub w_b: f64,
    pub w_m: f64,
    pub f_a: f64,
    pub f_b: f64,
    pub f_m: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub sd_a: f64,
    pub sd_b: f64,
}

pub fn merged_oracle(a: &CompanyParams, b: &CompanyParams, g: f64, s: f64) -> MergedOracle {
    let (ga, sa) = (a.growth.mean(), a.growth.std_dev());
    let (gb, sb) = (b.growth.mean(), b.growth.std_dev());
    let p_a = oracle_mean(a.dps0, a.discount_rate, ga);
    let p_b = oracle_mean(b.dps0, b.discount_rate, gb);
    let w_a = p_a * a.shares;
    let w_b = p_b * b.shares;
    let k_m = (w_a * a.discount_rate + w_b * b.discount_rate) / (w_a + w_b);
    let dividends = a.dps0 * a.shares + b.dps0 * b.shares;
    MergedOracle {
        k_m,
        w_a,
        w_b,
        w_m: oracle_mean(dividends, k_m, g),
        f_a: oracle_cv(a.discount_rate, ga, sa),
        f_b: oracle_cv(b.discount_rate, gb, sb),
        f_m: oracle_cv(k_m, g, s),
        p_a,
        p_b,
        sd_a: oracle_sd(a.dps0, a.discount_rate, ga, sa),
        sd_b: oracle_sd(b.dps0, b.discount_rate, gb, sb),
    }
}

/// Largest σ keeping `Δ` positive, scaled by `frac`.
pub fn sigma_cap(k: f64, g: f64, frac: f64) -> f64 {
    frac * ((1.0 + k).powi(2) - (1.0 + g).powi(2)).sqrt()
}

/// Random valid company. Half of them carry an explicit two-state law.
pub fn random_company(r: &mut impl Rng) -> CompanyParams {
    let k = r.gen_range(0.03..0.15);
    let g = r.gen_range(-0.03..k - 0.01);
    let s = r.gen_range(0.0..sigma_cap(k, g, 0.6).min(0.15));
    let growth = if r.gen_bool(0.5) && s > 1e-6 {
        GrowthModel::discrete(vec![g - s, g + s], vec![0.5, 0.5]).unwrap()
    } else {
        GrowthModel::moments(g, s).unwrap()
    };
    CompanyParams::new(
        r.gen_range(0.1..3.0),
        k,
        r.gen_range(100.0..10_000.0f64).round(),
        growth,
    )
}

pub fn random_parties(r: &mut impl Rng) -> Parties {
    loop {
        let a = random_company(r);
        let b = random_company(r);
        if let Ok(p) = Parties::new(a, b, None) {
            return p;
        }
    }
}

/// Random valid merged growth `(g, σ)` for the given parties.
pub fn random_merged_growth(r: &mut impl Rng, k_m: f64) -> (f64, f64) {
    let g = r.gen_range(-0.02..k_m - 0.002);
    let s = r.gen_range(0.0..sigma_cap(k_m, g, 0.9).min(0.2));
    (g, s)
}

pub fn table1() -> Parties {
    let a = CompanyParams::new(
        0.6,
        0.04,
        1000.0,
        GrowthModel::discrete(vec![-0.01, 0.03], vec![0.5, 0.5]).unwrap(),
    );
    let b = CompanyParams::new(
        0.3,
        0.08,
        2500.0,
        GrowthModel::discrete(vec![-0.06, 0.12], vec![0.5, 0.5]).unwrap(),
    );
    Parties::new(a, b, None).unwrap()
}
