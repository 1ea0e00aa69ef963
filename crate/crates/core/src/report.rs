//! Command output: one plain table format and one JSON-lines format.

use std::fmt::Write as _;
use std::hash::{DefaultHasher, Hash, Hasher};

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Map<String, Value>>,
    /// Reports made of equality checks carry a pass flag per row and a
    /// summary line.
    pub is_check: bool,
    pub passed: usize,
    pub failed: usize,
}

/// Stable short digest of an instance description.
pub fn digest(text: &str) -> String {
    let mut h = DefaultHasher::new();
    text.hash(&mut h);
    format!("{:016x}", h.finish())
}

impl Report {
    pub fn table(title: impl Into<String>, columns: &[&str]) -> Self {
        Report {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn checks(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            columns: ["check", "instance", "digest", "lhs", "rhs", "pass"]
                .map(String::from)
                .to_vec(),
            is_check: true,
            ..Report::default()
        }
    }

    pub fn push_row(&mut self, row: Value) {
        let Value::Object(map) = row else {
            panic!("report rows are JSON objects");
        };
        self.rows.push(map);
    }

    /// Records an equality check; it passes iff `lhs == rhs`. Extra fields
    /// go to the JSON output only.
    pub fn push_check(&mut self, check: &str, instance: &str, input: &str, lhs: Value, rhs: Value, extra: Value) {
        let pass = lhs == rhs;
        let mut row = json!({
            "check": check,
            "instance": instance,
            "digest": digest(input),
            "lhs": lhs,
            "rhs": rhs,
            "pass": pass,
        });
        if let (Value::Object(m), Value::Object(x)) = (&mut row, extra) {
            m.extend(x);
        }
        self.push_row(row);
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.rows.extend(other.rows);
        self.passed += other.passed;
        self.failed += other.failed;
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Map<String, Value>> {
        self.rows.iter().filter(|r| r.get("pass") == Some(&Value::Bool(false)))
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&serde_json::to_string(r).unwrap());
            out.push('\n');
        }
        if self.is_check {
            let summary = json!({"summary": {"passed": self.passed, "failed": self.failed}});
            out.push_str(&summary.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let cell = |v: Option<&Value>| match v {
            None => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(v) => v.to_string(),
        };
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| self.columns.iter().map(|c| cell(r.get(c))).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.len()])
                    .max()
                    .unwrap()
            })
            .collect();
        let line = |vals: &[String]| {
            let mut s = String::new();
            for (v, w) in vals.iter().zip(&widths) {
                let _ = write!(s, "{v:<w$}  ");
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = format!("{}\n", self.title);
        out += &line(&self.columns);
        out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
        for r in &cells {
            out += &line(r);
        }
        if self.is_check {
            let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_rows_and_formats() {
        let mut r = Report::checks("demo");
        r.push_check("eq", "a", "x", json!(2), json!(2), json!({}));
        r.push_check("eq", "b", "y", json!(1), json!(0), json!({"r": 3}));
        assert_eq!((r.passed, r.failed, r.exit_code()), (1, 1, 1));
        let failing: Vec<_> = r.failures().collect();
        assert_eq!(failing[0]["instance"], "b");
        let lines = r.to_json_lines();
        assert_eq!(lines.lines().count(), 3);
        assert!(lines.lines().nth(1).unwrap().contains("\"r\":3"));
        assert!(r.to_table().ends_with("1 passed, 1 failed\n"));
    }

    #[test]
    fn signature_lines_are_bare() {
        let mut r = Report::table("sign", &["ordering", "value"]);
        r.push_row(json!({"ordering": 0, "value": -2}));
        assert_eq!(r.to_json_lines(), "{\"ordering\":0,\"value\":-2}\n");
    }
}
