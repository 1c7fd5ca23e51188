//! JSON interchange formats.
//!
//! Series: `{ "order": N, "coeffs": { "1": "num/den", "2": "num", ... } }`.
//! Composita: `{ "order": N, "rows": [ ["T(1,1)"], ["T(2,1)","T(2,2)"], ... ] }`.
//!
//! Rationals travel as canonical strings `"num/den"` or `"num"` (denominator
//! one elided), with `gcd(num,den) = 1` and `den > 0`; the numerator carries
//! the sign. Zero coefficients are omitted from series maps on output and
//! default to zero on input.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::composita::Composita;
use crate::error::Error;
use crate::series::Series;
use crate::Rat;

/// Parse a canonical rational string (`"num"` or `"num/den"`).
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    s.trim()
        .parse::<Rat>()
        .map_err(|_| Error::InvalidRational(s.to_string()))
}

/// Canonical rational string; `Rat` keeps gcd 1 and a positive denominator,
/// and its display elides `/1`.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// Serde adapter for rational-valued struct fields.
pub mod rat_string {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Rat;

    pub fn serialize<S: Serializer>(value: &Rat, serializer: S) -> Result<S::Ok, S::Error> {
        super::rat_to_string(value).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        super::parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Wire form of a series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: BTreeMap<String, String>,
}

impl SeriesJson {
    pub fn from_series(series: &Series<Rat>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (n, c) in series.iter() {
            if !num_traits::Zero::is_zero(c) {
                coeffs.insert(n.to_string(), rat_to_string(c));
            }
        }
        SeriesJson {
            order: series.order(),
            coeffs,
        }
    }

    pub fn to_series(&self) -> Result<Series<Rat>, Error> {
        if self.order == 0 {
            return Err(Error::InvalidSeries("order must be at least 1".into()));
        }
        let mut series = Series::zero(self.order);
        for (key, value) in &self.coeffs {
            let n: usize = key
                .parse()
                .map_err(|_| Error::InvalidSeries(format!("bad coefficient index '{key}'")))?;
            if n == 0 {
                return Err(Error::InvalidSeries(
                    "index 0 not allowed: series have no constant term".into(),
                ));
            }
            if n > self.order {
                return Err(Error::InvalidSeries(format!(
                    "index {n} exceeds order {}",
                    self.order
                )));
            }
            series.set_coeff(n, parse_rat(value)?);
        }
        Ok(series)
    }
}

/// Wire form of a composita triangle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositaJson {
    pub order: usize,
    pub rows: Vec<Vec<String>>,
}

impl CompositaJson {
    pub fn from_composita(comp: &Composita<Rat>) -> Self {
        CompositaJson {
            order: comp.order(),
            rows: comp
                .rows()
                .map(|row| row.iter().map(rat_to_string).collect())
                .collect(),
        }
    }

    pub fn to_composita(&self) -> Result<Composita<Rat>, Error> {
        if self.rows.len() != self.order {
            return Err(Error::InvalidSeries(format!(
                "{} rows but order {}",
                self.rows.len(),
                self.order
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Composita::from_rows(rows)
    }
}

/// Read a series from a JSON file.
pub fn load_series(path: &Path) -> Result<Series<Rat>, Error> {
    let text = std::fs::read_to_string(path)?;
    let json: SeriesJson = serde_json::from_str(&text)?;
    json.to_series()
}

/// Write a series to a JSON file (pretty-printed, canonical strings).
pub fn save_series(series: &Series<Rat>, path: &Path) -> Result<(), Error> {
    let json = SeriesJson::from_series(series);
    std::fs::write(path, serde_json::to_string_pretty(&json)?)?;
    Ok(())
}
