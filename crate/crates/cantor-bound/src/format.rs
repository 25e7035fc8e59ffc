//! Shared output helpers: exact/decimal rational text, diameter text, and the
//! table and CSV renderers.

use cantor_bound_core::rational::{exact_text, significant_text};
use cantor_bound_core::{DiameterValue, Rational};
use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Significant digits of the decimal shown next to every exact rational.
pub const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// A rational as exact `p/q` text plus a decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalText {
    pub exact: String,
    pub decimal: String,
}

impl RationalText {
    pub fn new(q: &Rational) -> Self {
        RationalText { exact: exact_text(q), decimal: significant_text(q, DECIMAL_DIGITS) }
    }
}

/// A diameter in the same shape as the `diameter` entry of a region file,
/// with a decimal of its upper end added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DiameterText {
    Sqrt { radicand: String, scale: String, decimal: String },
    Interval { lo: String, hi: String, decimal: String },
}

impl DiameterText {
    pub fn new(d: &DiameterValue) -> Self {
        let decimal = diameter_decimal(d);
        match d {
            DiameterValue::Exact { scale, radicand } => DiameterText::Sqrt {
                radicand: exact_text(radicand),
                scale: exact_text(scale),
                decimal,
            },
            DiameterValue::Interval { lo, hi } => DiameterText::Interval {
                lo: exact_decimal_or_ratio(lo),
                hi: exact_decimal_or_ratio(hi),
                decimal,
            },
        }
    }
}

/// Terminating decimal when `q` has one (denominator `2^a·5^b`), exact
/// `p/q` text otherwise. Either form parses back to `q`.
pub fn exact_decimal_or_ratio(q: &Rational) -> String {
    let mut den = q.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return exact_text(q);
    }
    // q·10^places is an integer with at most this many digits.
    let places = twos.max(fives);
    significant_text(q, places + q.numer().to_string().len() as u32)
}

pub fn diameter_decimal(d: &DiameterValue) -> String {
    match d.enclosure() {
        Ok(e) => significant_text(&e.hi_rational(), DECIMAL_DIGITS),
        Err(_) => String::from("nan"),
    }
}

/// Compact exact text such as `sqrt(1258)/27` or `[lo, hi]`.
pub fn diameter_label(d: &DiameterValue) -> String {
    match d {
        DiameterValue::Exact { scale, radicand } => {
            let root = if radicand.is_one() {
                String::new()
            } else {
                format!("sqrt({})", exact_text(radicand))
            };
            let num = scale.numer();
            let den = scale.denom();
            let mut out = match (num.is_one(), root.is_empty()) {
                (true, true) => String::from("1"),
                (true, false) => root,
                (false, true) => num.to_string(),
                (false, false) => format!("{num}*{root}"),
            };
            if !den.is_one() {
                out.push('/');
                out.push_str(&den.to_string());
            }
            out
        }
        DiameterValue::Interval { lo, hi } => {
            format!("[{}, {}]", exact_decimal_or_ratio(lo), exact_decimal_or_ratio(hi))
        }
    }
}

/// Left-aligned text table with a rule under the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec(), &mut out);
    let rule: Vec<String> = widths.iter().map(|w| "─".repeat(*w)).collect();
    out.push_str(&rule.join("  "));
    out.push('\n');
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

pub fn csv_document(headers: &[&str], rows: &[Vec<String>]) -> Result<String, csv::Error> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    writer.write_record(headers)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn json_document<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output values serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use cantor_bound_core::rational::{int, rat};

    #[test]
    fn labels() {
        let d = DiameterValue::exact(rat(1, 27), int(1258)).unwrap();
        assert_eq!(diameter_label(&d), "sqrt(1258)/27");
        let d = DiameterValue::exact(int(3), int(2)).unwrap();
        assert_eq!(diameter_label(&d), "3*sqrt(2)");
        let d = DiameterValue::exact(rat(1, 2), int(1)).unwrap();
        assert_eq!(diameter_label(&d), "1/2");
        let d = DiameterValue::interval(rat(13213, 10000), rat(13, 8)).unwrap();
        assert_eq!(diameter_label(&d), "[1.3213, 1.625]");
        assert_eq!(exact_decimal_or_ratio(&rat(1, 3)), "1/3");
        assert_eq!(exact_decimal_or_ratio(&rat(-1, 40)), "-0.025");
    }

    #[test]
    fn rational_text() {
        let t = RationalText::new(&rat(15, 16));
        assert_eq!((t.exact.as_str(), t.decimal.as_str()), ("15/16", "0.9375"));
        assert_eq!(RationalText::new(&rat(1, 3)).decimal, "0.333333333333");
    }

    #[test]
    fn table_aligns_columns() {
        let t = table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\n───  ──\nxxx  y\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let t = csv_document(&["d"], &[vec!["[1, 2]".into()]]).unwrap();
        assert_eq!(t, "d\r\n\"[1, 2]\"\r\n");
    }
}
