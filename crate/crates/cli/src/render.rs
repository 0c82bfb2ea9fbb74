//! Output encodings. JSON numbers are written by serde_json as shortest
//! round-trip decimals; big integers in tables are written as literal
//! digit strings so no precision is lost.

use lahbell::{MomentEstimate, VerificationReport};
use serde::Serialize;

use crate::{Exit, Failure, Format};

fn encoding_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        exit: Exit::Domain,
        message: format!("cannot encode output: {e}"),
    }
}

fn csv_text(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String, Failure> {
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    write(&mut writer).map_err(encoding_failure)?;
    let bytes = writer.into_inner().map_err(encoding_failure)?;
    String::from_utf8(bytes).map_err(encoding_failure)
}

fn json_line(value: &impl Serialize) -> Result<String, Failure> {
    serde_json::to_string(value)
        .map(|s| s + "\n")
        .map_err(encoding_failure)
}

/// `[1,2,3]` from decimal integer strings.
pub fn json_integers(values: &[String]) -> String {
    format!("[{}]", values.join(","))
}

pub fn csv_rows(rows: &[Vec<String>]) -> Result<String, Failure> {
    csv_text(|w| rows.iter().try_for_each(|row| w.write_record(row)))
}

#[derive(Debug, Serialize)]
pub struct PolyReport {
    pub family: String,
    pub n: u32,
    pub variable: String,
    pub lambda: Option<String>,
    pub coefficients: Vec<String>,
    pub value: Option<String>,
}

pub fn poly(report: &PolyReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json_line(report),
        Format::Csv => csv_text(|w| {
            w.write_record(["family", "n", "variable", "lambda", "coefficients", "value"])?;
            w.write_record([
                report.family.clone(),
                report.n.to_string(),
                report.variable.clone(),
                report.lambda.clone().unwrap_or_default(),
                format!("[{}]", report.coefficients.join(",")),
                report.value.clone().unwrap_or_default(),
            ])
        }),
    }
}

pub fn reports(reports: &[VerificationReport], format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => reports.iter().map(json_line).collect(),
        Format::Csv => csv_text(|w| {
            w.write_record([
                "identity",
                "params",
                "mode",
                "lhs",
                "rhs",
                "discrepancy",
                "status",
                "seed",
                "samples",
            ])?;
            for r in reports {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                w.write_record([
                    r.identity.clone(),
                    params.join(";"),
                    upper(&r.mode),
                    r.lhs.clone(),
                    r.rhs.clone(),
                    r.discrepancy.clone(),
                    upper(&r.status),
                    r.seed.map(|s| s.to_string()).unwrap_or_default(),
                    r.samples.map(|s| s.to_string()).unwrap_or_default(),
                ])?;
            }
            Ok(())
        }),
    }
}

/// The serialized name of a unit enum variant.
fn upper(value: &impl Serialize) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct SimulationReport {
    #[serde(flatten)]
    pub estimate: MomentEstimate,
    pub target: String,
    pub z: Option<f64>,
    pub seed: u64,
}

pub fn simulation(report: &SimulationReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => json_line(report),
        Format::Csv => csv_text(|w| {
            w.write_record([
                "estimate",
                "standard_error",
                "sample_count",
                "moment_kind",
                "order",
                "target",
                "z",
                "seed",
            ])?;
            let e = &report.estimate;
            w.write_record([
                e.estimate.to_string(),
                e.standard_error.to_string(),
                e.sample_count.to_string(),
                upper(&e.moment_kind),
                e.order.to_string(),
                report.target.clone(),
                report.z.map(|z| z.to_string()).unwrap_or_default(),
                report.seed.to_string(),
            ])
        }),
    }
}
