//! Reference tables for D4 shipped with the crate.
//!
//! Each data line is `provenance | field | field | ...`; `#` starts a
//! comment line. Orbits use the barred notation of [`ThetaOrbit::parse`].

use crate::laurent::{LaurentPoly, Monomial};
use crate::model_a::ModelError;
use crate::model_d::ThetaOrbit;
use crate::qchar::PrimeLabel;

pub const D4_CHARACTERS: &str = include_str!("../data/d4_characters.txt");
pub const D4_COMPATIBLE_PAIRS: &str = include_str!("../data/d4_compatible_pairs.txt");
pub const D4_ROOT_WEIGHT_LABELS: &str = include_str!("../data/d4_root_weight_labels.txt");

#[derive(Debug, Clone)]
pub struct CharacterRow {
    pub provenance: String,
    pub written: String,
    pub orbit: ThetaOrbit,
    pub label: PrimeLabel,
    pub highest: Monomial,
    pub tchar: LaurentPoly,
}

#[derive(Debug, Clone)]
pub struct PairRow {
    pub provenance: String,
    pub written: (String, String),
    pub first: ThetaOrbit,
    pub second: ThetaOrbit,
    pub case: char,
}

#[derive(Debug, Clone)]
pub struct LabelRow {
    pub provenance: String,
    pub orbit: ThetaOrbit,
    pub root: Vec<i64>,
    /// `(m, i)` for the weight `c^m w_i`.
    pub power: u32,
    pub node: u32,
}

fn rows(text: &str, width: usize) -> Result<Vec<Vec<&str>>, ModelError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let fields: Vec<&str> = l.split('|').map(str::trim).collect();
            if fields.len() == width {
                Ok(fields)
            } else {
                Err(ModelError::Parse(l.to_string()))
            }
        })
        .collect()
}

fn parse_err<E: std::fmt::Display>(e: E) -> ModelError {
    ModelError::Parse(e.to_string())
}

fn ints(s: &str) -> Result<Vec<i64>, ModelError> {
    s.split_whitespace().map(|x| x.parse().map_err(parse_err)).collect()
}

pub fn parse_characters(n: u32, text: &str) -> Result<Vec<CharacterRow>, ModelError> {
    rows(text, 5)?
        .into_iter()
        .map(|f| {
            Ok(CharacterRow {
                provenance: f[0].to_string(),
                written: f[1].to_string(),
                orbit: ThetaOrbit::parse(n, f[1])?,
                label: f[2].parse().map_err(parse_err)?,
                highest: f[3].parse().map_err(parse_err)?,
                tchar: f[4].parse().map_err(parse_err)?,
            })
        })
        .collect()
}

pub fn parse_pairs(n: u32, text: &str) -> Result<Vec<PairRow>, ModelError> {
    rows(text, 4)?
        .into_iter()
        .map(|f| {
            let mut case = f[3].chars();
            let (Some(c), None) = (case.next(), case.next()) else {
                return Err(ModelError::Parse(f[3].to_string()));
            };
            Ok(PairRow {
                provenance: f[0].to_string(),
                written: (f[1].to_string(), f[2].to_string()),
                first: ThetaOrbit::parse(n, f[1])?,
                second: ThetaOrbit::parse(n, f[2])?,
                case: c,
            })
        })
        .collect()
}

pub fn parse_labels(n: u32, text: &str) -> Result<Vec<LabelRow>, ModelError> {
    rows(text, 4)?
        .into_iter()
        .map(|f| {
            let w = ints(f[3])?;
            if w.len() != 2 || w[0] < 0 || w[1] < 1 {
                return Err(ModelError::Parse(f[3].to_string()));
            }
            Ok(LabelRow {
                provenance: f[0].to_string(),
                orbit: ThetaOrbit::parse(n, f[1])?,
                root: ints(f[2])?,
                power: w[0] as u32,
                node: w[1] as u32,
            })
        })
        .collect()
}

pub fn d4_characters() -> Vec<CharacterRow> {
    parse_characters(4, D4_CHARACTERS).expect("bundled table parses")
}

pub fn d4_compatible_pairs() -> Vec<PairRow> {
    parse_pairs(4, D4_COMPATIBLE_PAIRS).expect("bundled table parses")
}

pub fn d4_root_weight_labels() -> Vec<LabelRow> {
    parse_labels(4, D4_ROOT_WEIGHT_LABELS).expect("bundled table parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_parse() {
        assert_eq!(d4_characters().len(), 16);
        assert_eq!(d4_compatible_pairs().len(), 64);
        assert_eq!(d4_root_weight_labels().len(), 16);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(parse_pairs(4, "row 01 | 0-2 | 0-3").is_err());
        assert!(parse_pairs(4, "row 01 | 0-2 | 0-3 | ab").is_err());
        assert!(parse_labels(4, "row 01 | 0-2 | 1 0 0 0 | 3").is_err());
        assert!(parse_characters(4, "# only a comment\n").unwrap().is_empty());
    }
}
