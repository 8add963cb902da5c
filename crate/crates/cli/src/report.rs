//! Report assembly and rendering: every result carries its query echo, its
//! engine provenance and the conventions in force, and renders as an aligned
//! table, JSON, or CSV. Identical run configurations produce byte-identical
//! output; wall time is included only on request.

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other}")),
        }
    }
}

/// Engine provenance of a numeric result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    BruteForce,
    PresentedSS,
    ClosedForm,
    Crosscheck,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::BruteForce => "brute-force",
            Provenance::PresentedSS => "presented-SS",
            Provenance::ClosedForm => "closed-form",
            Provenance::Crosscheck => "crosscheck",
        }
    }
}

/// A fully assembled report.
#[derive(Debug, Clone)]
pub struct Report {
    /// canonical query echo (format-independent)
    pub query: Value,
    pub provenance: Provenance,
    pub conventions: Value,
    pub result: Value,
    /// rows for table/CSV rendering: (degree, internal, p_exponent, factors)
    pub rows: Vec<ReportRow>,
    pub wall_ms: Option<u128>,
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub degree: String,
    pub internal: String,
    pub p_exponent: String,
    pub factors: String,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "query": self.query,
            "provenance": self.provenance.as_str(),
            "conventions": self.conventions,
            "result": self.result,
        });
        if let Some(ms) = self.wall_ms {
            v["wall_ms"] = json!(ms);
        }
        v
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{:#}\n", self.to_json()),
            Format::Csv => {
                let mut out =
                    String::from("degree,internal_degree,p_exponent,factors,provenance\n");
                for r in &self.rows {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        r.degree,
                        r.internal,
                        r.p_exponent,
                        csv_quote(&r.factors),
                        self.provenance.as_str()
                    ));
                }
                out
            }
            Format::Table => {
                let mut out = String::new();
                out.push_str(&format!("query       : {}\n", self.query));
                out.push_str(&format!("provenance  : {}\n", self.provenance.as_str()));
                out.push_str(&format!("conventions : {}\n", self.conventions));
                if let Some(ms) = self.wall_ms {
                    out.push_str(&format!("wall_ms     : {ms}\n"));
                }
                if !self.rows.is_empty() {
                    let headers = ["degree", "internal", "p_exp", "group"];
                    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
                    for r in &self.rows {
                        widths[0] = widths[0].max(r.degree.len());
                        widths[1] = widths[1].max(r.internal.len());
                        widths[2] = widths[2].max(r.p_exponent.len());
                        widths[3] = widths[3].max(r.factors.len());
                    }
                    out.push_str(&format!(
                        "{:<w0$}  {:<w1$}  {:<w2$}  {:<w3$}\n",
                        headers[0],
                        headers[1],
                        headers[2],
                        headers[3],
                        w0 = widths[0],
                        w1 = widths[1],
                        w2 = widths[2],
                        w3 = widths[3],
                    ));
                    for r in &self.rows {
                        out.push_str(&format!(
                            "{:<w0$}  {:<w1$}  {:<w2$}  {:<w3$}\n",
                            r.degree,
                            r.internal,
                            r.p_exponent,
                            r.factors,
                            w0 = widths[0],
                            w1 = widths[1],
                            w2 = widths[2],
                            w3 = widths[3],
                        ));
                    }
                } else if self.result != Value::Null {
                    out.push_str(&format!("result      : {}\n", self.result));
                }
                out
            }
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
