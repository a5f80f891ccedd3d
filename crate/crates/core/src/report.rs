//! Report rows and their CSV/JSON encodings.
//!
//! Numbers are written with Rust's shortest round-trip `f64` formatting in
//! both encodings, so CSV and JSON carry bit-identical values and repeated
//! runs of the same pipeline produce byte-identical files.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Which theory or evaluation route produced a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodTag {
    ClosedForm,
    Quadrature,
    Zeeman,
    Larmor,
}

impl MethodTag {
    pub fn label(&self) -> &'static str {
        match self {
            MethodTag::ClosedForm => "closed_form",
            MethodTag::Quadrature => "quadrature",
            MethodTag::Zeeman => "zeeman",
            MethodTag::Larmor => "larmor",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub quantity: String,
    pub method: MethodTag,
    pub value: f64,
    /// Richardson estimate for quadrature rows; absent for closed forms.
    pub error_estimate: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn push(
        &mut self,
        quantity: &str,
        method: MethodTag,
        value: f64,
        error_estimate: Option<f64>,
    ) {
        self.rows.push(ReportRow {
            quantity: quantity.to_string(),
            method,
            value,
            error_estimate,
        });
    }

    pub fn get(&self, quantity: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|row| row.quantity == quantity)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::from("quantity,method,value,error_estimate\n");
        for row in &self.rows {
            if row.quantity.contains([',', '\n', '"']) {
                return Err(Error::domain(format!(
                    "quantity name {:?} is not CSV-safe",
                    row.quantity
                )));
            }
            out.push_str(&row.quantity);
            out.push(',');
            out.push_str(row.method.label());
            out.push(',');
            out.push_str(&row.value.to_string());
            out.push(',');
            if let Some(err) = row.error_estimate {
                out.push_str(&err.to_string());
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::domain(format!("report serialization: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Fixed column set of the sweep table.
pub const SWEEP_HEADER: &str =
    "sweep_value,ci,dS3_closed,dH_closed,dS3_quad,dH_nrl_quad,dH_exact_quad,err_estimate";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub sweep_value: f64,
    pub ci: f64,
    #[serde(rename = "dS3_closed")]
    pub ds3_closed: f64,
    #[serde(rename = "dH_closed")]
    pub dh_closed: f64,
    #[serde(rename = "dS3_quad")]
    pub ds3_quad: f64,
    #[serde(rename = "dH_nrl_quad")]
    pub dh_nrl_quad: f64,
    #[serde(rename = "dH_exact_quad")]
    pub dh_exact_quad: f64,
    /// Largest Richardson estimate across the three quadrature columns.
    pub err_estimate: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_HEADER);
        out.push('\n');
        for row in &self.rows {
            let fields = [
                row.sweep_value,
                row.ci,
                row.ds3_closed,
                row.dh_closed,
                row.ds3_quad,
                row.dh_nrl_quad,
                row.dh_exact_quad,
                row.err_estimate,
            ];
            let line: Vec<String> = fields.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::domain(format!("sweep serialization: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => Ok(self.to_csv()),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        let mut report = Report::default();
        report.push(
            "energy_total",
            MethodTag::Quadrature,
            1.0048828125,
            Some(3e-16),
        );
        report.push("dS3_closed", MethodTag::ClosedForm, -0.1, None);
        report
    }

    #[test]
    fn csv_has_the_fixed_header_and_one_line_per_row() {
        let csv = sample_report().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "quantity,method,value,error_estimate");
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[1],
            "energy_total,quadrature,1.0048828125,0.0000000000000003"
        );
        assert_eq!(lines[2], "dS3_closed,closed_form,-0.1,");
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn csv_values_round_trip_exactly() {
        let value = 0.1 + 0.2; // 0.30000000000000004
        let mut report = Report::default();
        report.push("x", MethodTag::Quadrature, value, Some(f64::MIN_POSITIVE));
        let csv = report.to_csv().unwrap();
        let line = csv.lines().nth(1).unwrap();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[2].parse::<f64>().unwrap().to_bits(), value.to_bits());
        assert_eq!(
            fields[3].parse::<f64>().unwrap().to_bits(),
            f64::MIN_POSITIVE.to_bits()
        );
    }

    #[test]
    fn json_carries_the_same_values_as_csv() {
        let report = sample_report();
        let json: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        let rows = json["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["quantity"], "energy_total");
        assert_eq!(rows[0]["method"], "quadrature");
        assert_eq!(
            rows[0]["value"].as_f64().unwrap().to_bits(),
            1.0048828125f64.to_bits()
        );
        assert_eq!(rows[1]["error_estimate"], serde_json::Value::Null);
    }

    #[test]
    fn unsafe_quantity_names_are_refused() {
        let mut report = Report::default();
        report.push("bad,name", MethodTag::Quadrature, 0.0, None);
        assert!(report.to_csv().is_err());
    }

    #[test]
    fn rendering_is_deterministic() {
        let report = sample_report();
        assert_eq!(report.to_csv().unwrap(), report.to_csv().unwrap());
        assert_eq!(report.to_json().unwrap(), report.to_json().unwrap());
    }

    #[test]
    fn sweep_csv_has_the_documented_columns() {
        let table = SweepTable {
            rows: vec![SweepRow {
                sweep_value: 1.0,
                ci: 0.5,
                ds3_closed: 3.0,
                dh_closed: 6.0,
                ds3_quad: 0.75,
                dh_nrl_quad: 1.5,
                dh_exact_quad: -0.25,
                err_estimate: 0.0,
            }],
        };
        let csv = table.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "sweep_value,ci,dS3_closed,dH_closed,dS3_quad,dH_nrl_quad,dH_exact_quad,err_estimate"
        );
        assert_eq!(lines[1], "1,0.5,3,6,0.75,1.5,-0.25,0");
    }

    #[test]
    fn sweep_json_uses_the_csv_column_names() {
        let table = SweepTable {
            rows: vec![SweepRow {
                sweep_value: 2.0,
                ci: -0.5,
                ds3_closed: -3.0,
                dh_closed: -6.0,
                ds3_quad: 0.0,
                dh_nrl_quad: 0.0,
                dh_exact_quad: 0.0,
                err_estimate: 1e-16,
            }],
        };
        let json: serde_json::Value = serde_json::from_str(&table.to_json().unwrap()).unwrap();
        let row = &json["rows"][0];
        assert_eq!(row["dS3_closed"].as_f64().unwrap(), -3.0);
        assert_eq!(row["dH_exact_quad"].as_f64().unwrap(), 0.0);
        assert!(row.get("ds3_closed").is_none());
    }
}
