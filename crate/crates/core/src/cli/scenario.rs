use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::GrowthModel;
use crate::merger::{MergerInputs, Parties};
use crate::oracle::SimConfig;
use crate::rate;
use crate::region::SweepConfig;
use crate::valuation::CompanyParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCompany {
    pub name: String,
    #[serde(flatten)]
    pub params: CompanyParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergerSpec {
    pub acquirer: String,
    pub target: String,
    pub growth: GrowthModel,
    #[serde(
        default,
        deserialize_with = "rate::deserialize_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub discount_override: Option<f64>,
}

/// JSON scenario document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub companies: Vec<NamedCompany>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merger: Option<MergerSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub sim: SimConfig,
}

impl ScenarioFile {
    /// Parses and validates a scenario.
    pub fn from_json(text: &str) -> Result<Self> {
        let s: ScenarioFile =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.companies.is_empty() {
            return Err(Error::Config("scenario lists no companies".into()));
        }
        for (i, c) in self.companies.iter().enumerate() {
            if self.companies[..i].iter().any(|o| o.name == c.name) {
                return Err(Error::Config(format!(
                    "duplicate company name '{}'",
                    c.name
                )));
            }
            c.params.validate()?;
        }
        if let Some(m) = &self.merger {
            self.company(&m.acquirer)?;
            self.company(&m.target)?;
            if m.acquirer == m.target {
                return Err(Error::Config(format!(
                    "acquirer and target must differ (both '{}')",
                    m.acquirer
                )));
            }
        }
        Ok(())
    }

    pub fn company(&self, name: &str) -> Result<&CompanyParams> {
        self.companies
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.params)
            .ok_or_else(|| Error::UnknownCompany(name.to_string()))
    }

    fn merger_spec(&self) -> Result<&MergerSpec> {
        self.merger
            .as_ref()
            .ok_or_else(|| Error::Config("scenario has no 'merger' section".into()))
    }

    pub fn merger_inputs(&self) -> Result<MergerInputs> {
        let m = self.merger_spec()?;
        Ok(MergerInputs {
            acquirer: self.company(&m.acquirer)?.clone(),
            target: self.company(&m.target)?.clone(),
            merged_growth: m.growth.clone(),
            discount_override: m.discount_override,
        })
    }

    pub fn parties(&self) -> Result<Parties> {
        let m = self.merger_spec()?;
        Parties::new(
            self.company(&m.acquirer)?.clone(),
            self.company(&m.target)?.clone(),
            m.discount_override,
        )
    }

    pub fn sweep_config(&self) -> Result<&SweepConfig> {
        self.sweep
            .as_ref()
            .ok_or_else(|| Error::Config("scenario has no 'sweep' section".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "companies": [
            {"name": "A", "dps0": 0.6, "discount_rate": "4%", "shares": 1000,
             "growth": {"mean": "1%", "std_dev": "2%"}},
            {"name": "B", "dps0": 0.3, "discount_rate": 0.08, "shares": 2500,
             "growth": {"states": [-0.06, 0.12], "probs": [0.5, 0.5]}}
        ],
        "merger": {"acquirer": "A", "target": "B", "growth": {"mean": 0.03, "std_dev": 0.01}},
        "sweep": {"g_min": 0, "g_max": "5.4%", "sigmas": ["1%", 0.02]},
        "sim": {"horizon": "auto", "paths": 1000, "seed": 3}
    }"#;

    #[test]
    fn parses_percent_strings() {
        let s = ScenarioFile::from_json(DOC).unwrap();
        assert_eq!(s.company("A").unwrap().discount_rate, 0.04);
        assert_eq!(s.sweep.as_ref().unwrap().g_max, 0.054);
        assert_eq!(s.sweep.as_ref().unwrap().sigmas, vec![0.01, 0.02]);
        assert_eq!(s.sweep.as_ref().unwrap().g_steps, 500);
        assert!(s.merger_inputs().unwrap().discount_override.is_none());
    }

    #[test]
    fn round_trip() {
        let s = ScenarioFile::from_json(DOC).unwrap();
        let again = ScenarioFile::from_json(&s.to_json()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn unknown_company_is_named() {
        let doc = DOC.replace(r#""target": "B""#, r#""target": "Z""#);
        let err = ScenarioFile::from_json(&doc).unwrap_err();
        assert_eq!(err, Error::UnknownCompany("Z".into()));
    }

    #[test]
    fn invalid_company_is_named() {
        let doc = DOC.replace(r#""discount_rate": 0.08"#, r#""discount_rate": 0.02"#);
        let err = ScenarioFile::from_json(&doc).unwrap_err();
        assert!(matches!(err, Error::DiscountNotAboveGrowth { .. }));

        let doc = DOC.replace("[0.5, 0.5]", "[0.5, 0.4]");
        let err = ScenarioFile::from_json(&doc).unwrap_err();
        assert!(err.to_string().contains("probabilities sum"), "{err}");
    }
}
