//! The fixture reproduction report: each catalog construction's published
//! (fraction, diameter) pair run back through the bound.

use cantor_bound_core::bound::cantor_dust_dimension;
use cantor_bound_core::rational::{rat, significant_text};
use cantor_bound_core::{
    catalog, paper_fixture, partial_estimation_bound, BoundValue, ConstructionError, DiameterValue,
    Rational,
};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::format::{diameter_label, DiameterText, RationalText};

/// Allowed `|engine - published|`.
pub fn report_tolerance() -> Rational {
    rat(5, 100_000)
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub name: String,
    pub fraction: Rational,
    pub diameter: DiameterValue,
    pub paper_bound: &'static str,
    pub engine_bound: BoundValue,
    pub diff: Rational,
    pub pass: bool,
}

/// One JSON object of the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    pub fraction: RationalText,
    pub diameter: DiameterText,
    pub paper_bound: String,
    /// Rounded toward `+inf`, so still an upper bound.
    pub engine_bound: String,
    pub diff: String,
    pub pass: bool,
}

pub const HEADERS: [&str; 7] =
    ["name", "fraction", "diameter", "paper_bound", "engine_bound", "diff", "pass"];

pub fn report_rows() -> Result<Vec<ReportRow>, ConstructionError> {
    let s = cantor_dust_dimension();
    let tol = report_tolerance();
    catalog()
        .into_iter()
        .map(|name| {
            let fixture = paper_fixture(name, None)?;
            let engine_bound = partial_estimation_bound(&fixture.fraction, &fixture.diameter, &s)?;
            let diff = (engine_bound.as_rational() - fixture.expected_rational()).abs();
            Ok(ReportRow {
                name: name.to_string(),
                pass: diff <= tol,
                fraction: fixture.fraction,
                diameter: fixture.diameter,
                paper_bound: fixture.expected_bound,
                engine_bound,
                diff,
            })
        })
        .collect()
}

impl ReportRow {
    pub fn entry(&self) -> ReportEntry {
        ReportEntry {
            name: self.name.clone(),
            fraction: RationalText::new(&self.fraction),
            diameter: DiameterText::new(&self.diameter),
            paper_bound: self.paper_bound.to_string(),
            engine_bound: self.engine_bound.published(),
            diff: significant_text(&self.diff, 3),
            pass: self.pass,
        }
    }

    /// Flat cells for the table and CSV renderers.
    pub fn cells(&self) -> Vec<String> {
        let fraction = RationalText::new(&self.fraction);
        vec![
            self.name.clone(),
            format!("{} ({})", fraction.exact, fraction.decimal),
            format!(
                "{} ({})",
                diameter_label(&self.diameter),
                crate::format::diameter_decimal(&self.diameter)
            ),
            self.paper_bound.to_string(),
            self.engine_bound.published(),
            significant_text(&self.diff, 3),
            if self.pass { "pass" } else { "FAIL" }.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_six_fixtures_pass() {
        let rows = report_rows().unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.pass));
        let circle = rows.iter().find(|r| r.name == "circle-series").unwrap();
        assert_eq!(circle.paper_bound, "1.502483");
        assert_eq!(circle.entry().engine_bound, "1.502483143");
    }
}
