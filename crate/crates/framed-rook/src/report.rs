//! Check reports and their JSON / CSV / text renderings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The relation or formula being checked.
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    /// Pass iff `failures` is empty; the detail quotes the first few failures.
    pub fn from_failures(name: impl Into<String>, anchor: impl Into<String>, total: usize, failures: Vec<String>) -> Self {
        let detail = if total == 0 {
            "vacuous at this size".to_string()
        } else if failures.is_empty() {
            format!("{total} instances hold")
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(|s| s.as_str()).collect();
            format!("{} of {total} instances fail, e.g. {}", failures.len(), shown.join("; "))
        };
        Self::new(name, anchor, failures.is_empty(), detail)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Report {
    pub fn new(suite: &str, params: &[(&str, String)]) -> Self {
        Report {
            suite: suite.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn extend_checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => {
                let mut s = String::from("suite,name,paper_anchor,status,detail\n");
                for c in &self.checks {
                    let status = if c.passed() { "pass" } else { "fail" };
                    let row = [self.suite.as_str(), &c.name, &c.anchor, status, &c.detail].map(csv_field);
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Text => self.to_string() + "\n",
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "suite {} ({})", self.suite, params.join(", "))?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "  [{status}] {} :: {} :: {}", c.name, c.anchor, c.detail)?;
        }
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        write!(f, "  {ok}/{} checks pass", self.checks.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_field_names() {
        let mut r = Report::new("framed", &[("n", "2".into())]);
        r.push(Check::new("a", "x = y", true, "ok"));
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["suite"], "framed");
        assert_eq!(v["params"]["n"], "2");
        assert_eq!(v["checks"][0]["paper_anchor"], "x = y");
        assert_eq!(v["checks"][0]["status"], "pass");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report::new("s", &[]);
        r.push(Check::new("a,b", "x", false, "d"));
        assert_eq!(r.render(Format::Csv).lines().nth(1).unwrap(), "s,\"a,b\",x,fail,d");
        assert!(!r.passed());
    }
}
