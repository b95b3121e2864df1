use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::error::Result;
use crate::merger::{combined_interval, mean_interval, Parties};
use crate::oracle::{
    resolve_horizon, simulate_price, truncated_mean_exact, truncated_variance_exact, SimConfig,
};
use crate::region::{sweep, RegionReport, RegionSlice, SweepConfig};
use crate::valuation::value_company;

use super::scenario::ScenarioFile;
use super::svg::region_svg;
use super::table::{fmt_num, interval_cells, Cell, Table};

/// The bundled two-company reference scenario.
pub const REFERENCE_SCENARIO: &str = include_str!("../../examples/yagil-table1.json");

/// Published roundings reported next to the computed values.
const PUBLISHED_K_M_TEXT: f64 = 0.0572;
const PUBLISHED_K_M_FIGURES: f64 = 0.0573;
const PUBLISHED_CV_TARGET: f64 = 0.3026;
const PUBLISHED_NO_SYNERGY_GROWTH: f64 = 0.0188;
const PUBLISHED_R_STAR: f64 = 0.3059;

/// Multiple of the standard error accepted by `mc-check`.
pub const MC_SE_MULTIPLE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn render(self, t: &Table) -> String {
        match self {
            Format::Csv => t.to_csv(),
            Format::Json => t.to_json(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OutputBundle {
    pub artifacts: Vec<Artifact>,
    pub summary: String,
}

impl OutputBundle {
    fn add(&mut self, name: impl Into<String>, contents: String) {
        self.artifacts.push(Artifact {
            name: name.into(),
            contents,
        });
    }

    fn add_table(&mut self, stem: &str, fmt: Format, t: &Table) {
        self.add(format!("{stem}.{}", fmt.ext()), fmt.render(t));
    }

    pub fn artifact(&self, name: &str) -> Option<&str> {
        self.artifacts
            .iter()
            .find(|a| a.name == name)
            .map(|a| a.contents.as_str())
    }

    /// Writes every artifact plus `summary.txt` into `dir`.
    pub fn write_to(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for a in &self.artifacts {
            fs::write(dir.join(&a.name), &a.contents)?;
        }
        fs::write(dir.join("summary.txt"), &self.summary)
    }
}

fn value_table(s: &ScenarioFile, only: Option<&str>) -> Result<Table> {
    let mut values = Vec::with_capacity(s.companies.len());
    for c in &s.companies {
        values.push((c.name.as_str(), value_company(&c.params)?));
    }
    let total: f64 = values.iter().map(|(_, v)| v.equity_mean).sum();
    if let Some(name) = only {
        s.company(name)?;
    }
    let mut t = Table::new([
        "company",
        "mean_price",
        "stddev_price",
        "cv",
        "equity_mean",
        "weight",
    ]);
    for (name, v) in values {
        if only.is_some_and(|o| o != name) {
            continue;
        }
        t.push(vec![
            name.into(),
            v.mean_price.into(),
            v.stddev_price.into(),
            v.cv.into(),
            v.equity_mean.into(),
            (v.equity_mean / total).into(),
        ]);
    }
    Ok(t)
}

/// Per-company expected price, price standard deviation, coefficient of
/// variation, expected equity and equity weight.
pub fn cmd_value(s: &ScenarioFile, company: Option<&str>, fmt: Format) -> Result<OutputBundle> {
    let t = value_table(s, company)?;
    let mut out = OutputBundle::default();
    for row in &t.rows {
        let cells: Vec<String> = t
            .columns
            .iter()
            .zip(row)
            .map(|(c, v)| format!("{c}={}", v.text()))
            .collect();
        let _ = writeln!(out.summary, "{}", cells.join(" "));
    }
    out.add_table("value", fmt, &t);
    Ok(out)
}

fn sigma_label(sigma: f64) -> String {
    format!("{sigma:.4}")
}

fn region_table(slices: &[RegionSlice]) -> Table {
    let mut t = Table::new([
        "g",
        "mean_lo",
        "mean_hi",
        "var_lo",
        "var_hi",
        "combined_lo",
        "combined_hi",
        "valid",
    ]);
    for s in slices {
        let [c_lo, c_hi] = interval_cells(&s.combined);
        let curves = match s.curves {
            Some(b) => [
                Cell::Num(b.mean_lower.max(0.0)),
                Cell::Num(b.mean_upper),
                Cell::Num(b.var_lower.max(0.0)),
                Cell::Num(b.var_upper),
            ],
            None => [Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty],
        };
        let mut row = vec![Cell::Num(s.g)];
        row.extend(curves);
        row.extend([c_lo, c_hi, Cell::Bool(s.valid)]);
        t.push(row);
    }
    t
}

fn region_verdict(r: &RegionReport) -> String {
    if r.feasible {
        format!(
            "sigma = {}: bargaining region: NONEMPTY; min feasible g = {}; min accepted r = {}; area = {}",
            fmt_num(r.sigma),
            r.g_feasible_min.map_or("empty".into(), fmt_num),
            r.min_accepted_r.map_or("empty".into(), fmt_num),
            fmt_num(r.area)
        )
    } else {
        format!("sigma = {}: bargaining region: EMPTY", fmt_num(r.sigma))
    }
}

fn add_region_artifacts(
    out: &mut OutputBundle,
    reports: &[RegionReport],
    cfg: &SweepConfig,
    fmt: Format,
    svg_names: &[String],
) {
    let mut summary = Table::new([
        "sigma",
        "feasible",
        "g_feasible_min",
        "min_accepted_r",
        "area",
        "crossings",
    ]);
    let mut crossings = Table::new(["sigma", "curve_a", "curve_b", "g", "r"]);
    for (r, svg_name) in reports.iter().zip(svg_names) {
        let stem = format!("region_sigma_{}", sigma_label(r.sigma));
        out.add_table(&stem, fmt, &region_table(&r.slices));
        let title = format!("growth volatility of M: {}", fmt_num(r.sigma));
        out.add(
            svg_name.clone(),
            region_svg(r, cfg.g_min, cfg.g_max, &title),
        );
        summary.push(vec![
            r.sigma.into(),
            r.feasible.into(),
            r.g_feasible_min.into(),
            r.min_accepted_r.into(),
            r.area.into(),
            r.crossings.len().into(),
        ]);
        for c in &r.crossings {
            crossings.push(vec![
                r.sigma.into(),
                c.curves.0.name().into(),
                c.curves.1.name().into(),
                c.g.into(),
                c.r.into(),
            ]);
        }
        let _ = writeln!(out.summary, "{}", region_verdict(r));
    }
    out.add_table("region_summary", fmt, &summary);
    out.add_table("region_crossings", fmt, &crossings);
}

/// Sweeps the configured grid: one table and one SVG per volatility.
pub fn cmd_region(s: &ScenarioFile, fmt: Format) -> Result<OutputBundle> {
    let parties = s.parties()?;
    let cfg = s.sweep_config()?;
    let reports = sweep(&parties, cfg)?;
    let mut out = OutputBundle::default();
    let _ = writeln!(out.summary, "k_M = {}", fmt_num(parties.k_m));
    let names: Vec<String> = reports
        .iter()
        .map(|r| format!("region_sigma_{}.svg", sigma_label(r.sigma)))
        .collect();
    add_region_artifacts(&mut out, &reports, cfg, fmt, &names);
    Ok(out)
}

/// Closed-form vs exact-truncated vs Monte Carlo moments for every company.
pub fn cmd_mc_check(s: &ScenarioFile, sim: &SimConfig, fmt: Format) -> Result<OutputBundle> {
    let mut t = Table::new([
        "company",
        "horizon",
        "paths",
        "closed_mean",
        "exact_mean",
        "mc_mean",
        "mean_se",
        "mean_pass",
        "closed_var",
        "exact_var",
        "mc_var",
        "var_se",
        "var_pass",
    ]);
    let mut out = OutputBundle::default();
    for c in &s.companies {
        let closed = value_company(&c.params)?;
        let horizon = resolve_horizon(&c.params, sim.horizon)?;
        let est = simulate_price(&c.params, sim).map_err(|e| match e {
            crate::Error::Unsupported(msg) => {
                crate::Error::Unsupported(format!("company '{}': {msg}", c.name))
            }
            other => other,
        })?;
        let closed_var = closed.stddev_price * closed.stddev_price;
        let mean_pass = (est.mean - closed.mean_price).abs() <= MC_SE_MULTIPLE * est.mean_se;
        let var_pass = (est.variance - closed_var).abs() <= MC_SE_MULTIPLE * est.var_se;
        t.push(vec![
            c.name.as_str().into(),
            horizon.into(),
            sim.paths.into(),
            closed.mean_price.into(),
            truncated_mean_exact(&c.params, horizon)?.into(),
            est.mean.into(),
            est.mean_se.into(),
            mean_pass.into(),
            closed_var.into(),
            truncated_variance_exact(&c.params, horizon)?.into(),
            est.variance.into(),
            est.var_se.into(),
            var_pass.into(),
        ]);
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        let _ = writeln!(
            out.summary,
            "{}: mean {} (closed {}, se {}) {}; variance {} (closed {}, se {}) {}",
            c.name,
            fmt_num(est.mean),
            fmt_num(closed.mean_price),
            fmt_num(est.mean_se),
            verdict(mean_pass),
            fmt_num(est.variance),
            fmt_num(closed_var),
            fmt_num(est.var_se),
            verdict(var_pass),
        );
    }
    out.add_table("mc_check", fmt, &t);
    Ok(out)
}

pub fn reference_scenario() -> ScenarioFile {
    ScenarioFile::from_json(REFERENCE_SCENARIO).expect("bundled scenario is valid")
}

/// Reference sweep: g in [0, 5.4%], 500 points, σ in {0, 1%, 1.5%, 2%, 2.5%}.
pub fn reference_sweep() -> SweepConfig {
    let mut cfg = SweepConfig::new(0.0, 0.054, vec![0.0, 0.01, 0.015, 0.02, 0.025]);
    cfg.g_steps = 500;
    cfg.clamp_r_max = 2.2;
    cfg
}

/// Regenerates the whole two-company reference example from embedded inputs.
pub fn cmd_reproduce_paper(fmt: Format) -> Result<OutputBundle> {
    let s = reference_scenario();
    let parties: Parties = s.parties()?;
    let mut out = OutputBundle::default();

    let t = value_table(&s, None)?;
    out.add_table("table1b", fmt, &t);
    let _ = writeln!(out.summary, "Pre-merger values");
    for (name, v) in [("A", parties.acquirer_value), ("B", parties.target_value)] {
        let w = v.equity_mean / parties.combined_equity();
        let _ = writeln!(
            out.summary,
            "  {name}: mean price {}, stddev {}, cv {}, equity {}, weight {}",
            fmt_num(v.mean_price),
            fmt_num(v.stddev_price),
            fmt_num(v.cv),
            fmt_num(v.equity_mean),
            fmt_num(w)
        );
    }
    let cv_b = parties.target_value.cv;
    let _ = writeln!(
        out.summary,
        "  note: cv of B computes to {} while the published table prints {} (rounding discrepancy)",
        fmt_num(cv_b),
        PUBLISHED_CV_TARGET
    );

    let g0 = parties.no_synergy_growth()?;
    let r_star = parties.r_star();
    let no_syn = parties.no_synergy_valuation(0.0)?;
    let collapsed = mean_interval(&parties, &no_syn);
    let mut q = Table::new(["quantity", "computed", "published"]);
    q.push(vec![
        "k_m".into(),
        parties.k_m.into(),
        PUBLISHED_K_M_TEXT.into(),
    ]);
    q.push(vec![
        "k_m_figures".into(),
        parties.k_m.into(),
        PUBLISHED_K_M_FIGURES.into(),
    ]);
    q.push(vec![
        "cv_target".into(),
        cv_b.into(),
        PUBLISHED_CV_TARGET.into(),
    ]);
    q.push(vec![
        "no_synergy_growth".into(),
        g0.into(),
        PUBLISHED_NO_SYNERGY_GROWTH.into(),
    ]);
    q.push(vec![
        "r_star".into(),
        r_star.into(),
        PUBLISHED_R_STAR.into(),
    ]);
    out.add_table("merger_summary", fmt, &q);

    let _ = writeln!(out.summary, "Merger");
    let _ = writeln!(
        out.summary,
        "  k_M = {} computed; published text {} and figure formulas {} are roundings, the text value is inconsistent at the fourth decimal",
        fmt_num(parties.k_m),
        PUBLISHED_K_M_TEXT,
        PUBLISHED_K_M_FIGURES
    );
    let _ = writeln!(
        out.summary,
        "  no-synergy growth = {}; r* = {}; mean interval there = [{}, {}]",
        fmt_num(g0),
        fmt_num(r_star),
        collapsed.lower().map_or("empty".into(), fmt_num),
        collapsed.upper().map_or("empty".into(), fmt_num)
    );
    if let Ok(m) = parties.merged_valuation(0.03, 0.01) {
        let c = combined_interval(&parties, &m);
        let _ = writeln!(
            out.summary,
            "  combined interval at g = 0.03, sigma = 0.01: [{}, {}]",
            c.lower().map_or("empty".into(), fmt_num),
            c.upper().map_or("empty".into(), fmt_num)
        );
    }

    let cfg = reference_sweep();
    let reports = sweep(&parties, &cfg)?;
    let svg_names: Vec<String> = ["figure1", "figure2a", "figure2b", "figure2c", "figure2d"]
        .iter()
        .map(|n| format!("{n}.svg"))
        .collect();
    let _ = writeln!(out.summary, "Bargaining regions");
    add_region_artifacts(&mut out, &reports, &cfg, fmt, &svg_names);
    let verdicts: Vec<&str> = reports
        .iter()
        .filter(|r| r.sigma > 0.0)
        .map(|r| if r.feasible { "nonempty" } else { "empty" })
        .collect();
    let _ = writeln!(
        out.summary,
        "Feasibility for sigma = 1%, 1.5%, 2%, 2.5%: {}",
        verdicts.join(", ")
    );
    Ok(out)
}
