//! Sequence output rows and their exact serializations. Integer fields
//! hold arbitrary-precision values, so JSON carries them as decimal
//! strings and CSV as plain decimal text; parsing either reproduces the
//! records bit for bit.

use momentgenus::genus::GenusReport;
use momentgenus::ExactInt;
use serde_json::{json, Value};

/// One row of results for a parameter pair (p, m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub p: u32,
    pub m: u32,
    pub n: u32,
    pub d: u32,
    pub chi: ExactInt,
    pub genus: ExactInt,
    pub beta_total: ExactInt,
    /// How the values were computed; carried in JSON, not in CSV.
    pub method: String,
}

/// Pinned column set; consumers may rely on it.
pub const CSV_HEADER: &str = "p,m,n,d,chi,genus,beta_total";

impl OutputRecord {
    pub fn from_report(report: &GenusReport, method: &str) -> Self {
        OutputRecord {
            p: report.params.p(),
            m: report.params.m(),
            n: report.params.facets(),
            d: report.params.dim(),
            chi: report.chi.clone(),
            genus: report.genus.clone(),
            beta_total: report.beta_total.clone(),
            method: method.to_string(),
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.p, self.m, self.n, self.d, self.chi, self.genus, self.beta_total
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "chi": self.chi.to_string(),
            "genus": self.genus.to_string(),
            "beta_total": self.beta_total.to_string(),
            "method": self.method,
        })
    }
}

pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.csv_row());
        out.push('\n');
    }
    out
}

pub fn to_json(records: &[OutputRecord]) -> String {
    let array = Value::Array(records.iter().map(OutputRecord::to_json).collect());
    format!("{array:#}\n")
}

/// Inverse of [`to_csv`]. The method field is not in the CSV column set,
/// so it comes back empty.
pub fn parse_csv(text: &str) -> Result<Vec<OutputRecord>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    if header != CSV_HEADER {
        return Err(format!("unexpected header {header:?}"));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(format!("line {line_no}: expected 7 fields"));
        }
        let small = |field: &str| {
            field
                .parse::<u32>()
                .map_err(|e| format!("line {line_no}: {e}"))
        };
        let big = |field: &str| {
            field
                .parse::<ExactInt>()
                .map_err(|e| format!("line {line_no}: {e}"))
        };
        records.push(OutputRecord {
            p: small(fields[0])?,
            m: small(fields[1])?,
            n: small(fields[2])?,
            d: small(fields[3])?,
            chi: big(fields[4])?,
            genus: big(fields[5])?,
            beta_total: big(fields[6])?,
            method: String::new(),
        });
    }
    Ok(records)
}

/// Inverse of [`to_json`].
pub fn parse_json(text: &str) -> Result<Vec<OutputRecord>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let array = value.as_array().ok_or("expected a json array")?;
    array.iter().map(record_from_json).collect()
}

fn record_from_json(value: &Value) -> Result<OutputRecord, String> {
    fn small(value: &Value, key: &str) -> Result<u32, String> {
        value
            .get(key)
            .and_then(Value::as_u64)
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| format!("missing or bad field {key:?}"))
    }
    fn big(value: &Value, key: &str) -> Result<ExactInt, String> {
        value
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| format!("missing or bad field {key:?}"))?
            .parse::<ExactInt>()
            .map_err(|e| format!("field {key:?}: {e}"))
    }
    let method = value
        .get("method")
        .and_then(Value::as_str)
        .ok_or("missing or bad field \"method\"")?
        .to_string();
    Ok(OutputRecord {
        p: small(value, "p")?,
        m: small(value, "m")?,
        n: small(value, "n")?,
        d: small(value, "d")?,
        chi: big(value, "chi")?,
        genus: big(value, "genus")?,
        beta_total: big(value, "beta_total")?,
        method,
    })
}
