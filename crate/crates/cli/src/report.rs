//! Tabular, CSV and JSON renderings.

use fhaim_core::oscillator::{Energy, Method, SpectrumEntry};
use serde::{Deserialize, Serialize};

use crate::rational::{format_decimal, format_f64, parse_rational};

/// Significant digits for decimal output.
pub const SIG_DIGITS: usize = 12;

pub fn energy_decimal(e: &Energy) -> String {
    match e {
        Energy::Exact(r) => format_decimal(r, SIG_DIGITS),
        Energy::Approx(x) => format_f64(*x, SIG_DIGITS),
    }
}

/// Rows of strings with a header, rendered aligned or as CSV.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_aligned(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.headers);
        for r in &self.rows {
            out += &line(r);
        }
        out
    }
}

pub fn spectrum_table(entries: &[SpectrumEntry]) -> Table {
    let mut t = Table::new(["n", "method", "E_tilde", "E", "bound", "marginal"]);
    for e in entries {
        t.push(vec![
            e.n.to_string(),
            e.source.as_str().to_string(),
            energy_decimal(&e.e_tilde),
            energy_decimal(&e.energy),
            e.bound.to_string(),
            e.marginal.to_string(),
        ]);
    }
    t
}

/// An energy in JSON: exact values as `"p/q"` strings, approximate values
/// as numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonEnergy {
    Exact(String),
    Approx(f64),
}

impl From<&Energy> for JsonEnergy {
    fn from(e: &Energy) -> Self {
        match e {
            Energy::Exact(r) => JsonEnergy::Exact(r.to_string()),
            Energy::Approx(x) => JsonEnergy::Approx(*x),
        }
    }
}

impl JsonEnergy {
    pub fn to_energy(&self) -> Result<Energy, String> {
        match self {
            JsonEnergy::Exact(s) => parse_rational(s).map(Energy::Exact),
            JsonEnergy::Approx(x) => Ok(Energy::Approx(*x)),
        }
    }
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonEntry {
    pub n: u32,
    pub E_tilde: JsonEnergy,
    pub E: JsonEnergy,
    pub E_tilde_decimal: f64,
    pub E_decimal: f64,
    pub exact: bool,
    pub method: String,
    pub bound: bool,
    pub marginal: bool,
}

impl From<&SpectrumEntry> for JsonEntry {
    fn from(e: &SpectrumEntry) -> Self {
        Self {
            n: e.n,
            E_tilde: (&e.e_tilde).into(),
            E: (&e.energy).into(),
            E_tilde_decimal: e.e_tilde.to_f64(),
            E_decimal: e.energy.to_f64(),
            exact: matches!(e.e_tilde, Energy::Exact(_)),
            method: e.source.as_str().to_string(),
            bound: e.bound,
            marginal: e.marginal,
        }
    }
}

impl JsonEntry {
    pub fn to_entry(&self) -> Result<SpectrumEntry, String> {
        let source = match self.method.as_str() {
            "closed" => Method::ClosedForm,
            "aim" => Method::Aim,
            "oracle" => Method::Oracle,
            other => return Err(format!("unknown method {other:?}")),
        };
        Ok(SpectrumEntry {
            n: self.n,
            e_tilde: self.E_tilde.to_energy()?,
            energy: self.E.to_energy()?,
            bound: self.bound,
            marginal: self.marginal,
            source,
        })
    }
}

/// Model and solver settings echoed into JSON output, rationals as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonParams {
    pub omega: String,
    pub lambda: String,
    pub lambda_tilde: String,
    pub n_max: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub methods: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
    pub printed_signs: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub params: JsonParams,
    pub entries: Vec<JsonEntry>,
}

/// Reads the entries back out of `spectrum --format json` output.
pub fn entries_from_json(text: &str) -> Result<Vec<SpectrumEntry>, String> {
    let doc: SpectrumJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    doc.entries.iter().map(JsonEntry::to_entry).collect()
}
