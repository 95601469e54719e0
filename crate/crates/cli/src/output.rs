use crate::config::Format;
use serde_json::{json, Value};
use sl2lab::verify::VerifyReport;

/// A command result: a JSON document, optionally with a row-oriented view for TSV.
pub struct Doc {
    value: Value,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    verify: Option<VerifyReport>,
}

impl Doc {
    pub fn object(value: Value) -> Self {
        Doc {
            value,
            table: None,
            verify: None,
        }
    }

    pub fn table(value: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Doc {
            value,
            table: Some((header, rows)),
            verify: None,
        }
    }

    pub fn verify(report: VerifyReport) -> Self {
        let value = serde_json::to_value(&report).expect("reports serialize");
        Doc {
            value,
            table: None,
            verify: Some(report),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(&self.value),
            Format::Tsv => match &self.table {
                Some((header, rows)) => {
                    let mut out = header.join("\t") + "\n";
                    for row in rows {
                        out.push_str(&row.join("\t"));
                        out.push('\n');
                    }
                    out
                }
                None => match &self.verify {
                    Some(report) => verify_tsv(report),
                    None => fields(&self.value, "\t"),
                },
            },
            Format::Text => match &self.verify {
                Some(report) => report.to_text(),
                None => fields(&self.value, ": "),
            },
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

/// One line per top-level field; nested values as compact JSON.
fn fields(v: &Value, sep: &str) -> String {
    let Value::Object(map) = v else {
        return format!("{v}\n");
    };
    let mut out = String::new();
    for (k, x) in map {
        let shown = match x {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k}{sep}{shown}\n"));
    }
    out
}

fn verify_tsv(report: &VerifyReport) -> String {
    let mut out = String::from("criterion\tname\tcheck\texpected\tactual\tpassed\n");
    for c in &report.criteria {
        for ch in &c.checks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                c.id, c.name, ch.label, ch.expected, ch.actual, ch.passed
            ));
        }
    }
    out
}

/// A structured refusal, printed to standard error.
#[derive(Debug)]
pub struct Failure {
    kind: String,
    message: String,
}

impl From<sl2lab::Error> for Failure {
    fn from(e: sl2lab::Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug
            .split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or_default()
            .to_string();
        Failure {
            kind,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(&json!({ "error": { "kind": self.kind, "message": self.message } })),
            _ => format!("error: {}\n", self.message),
        }
    }
}
