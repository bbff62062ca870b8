//! Report document written by every subcommand.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "homaloid-report/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

impl Check {
    /// Passes when `observed == expected`.
    pub fn equal<T: Serialize + PartialEq>(
        id: impl Into<String>,
        description: impl Into<String>,
        expected: T,
        observed: T,
    ) -> Self {
        let pass = expected == observed;
        Self {
            id: id.into(),
            description: description.into(),
            expected: to_value(&expected),
            observed: to_value(&observed),
            pass,
        }
    }

    pub fn holds(id: impl Into<String>, description: impl Into<String>, observed: bool) -> Self {
        Self::equal(id, description, true, observed)
    }

    pub fn at_most(
        id: impl Into<String>,
        description: impl Into<String>,
        bound: u64,
        observed: u64,
    ) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            expected: Value::String(format!("<= {bound}")),
            observed: Value::from(observed),
            pass: observed <= bound,
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(id: impl Into<String>, description: impl Into<String>, error: String) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            expected: Value::String("no error".into()),
            observed: Value::String(format!("error: {error}")),
            pass: false,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub modulus: u64,
    pub seed: u64,
    pub retries: usize,
    pub step_limit: Option<usize>,
    pub format: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: Vec<String>,
    pub config: ConfigEcho,
    pub results: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    /// Present only with `--timing`, so reports stay byte-identical otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(
        command: Vec<String>,
        config: ConfigEcho,
        results: Value,
        checks: Vec<Check>,
    ) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        Self {
            schema: SCHEMA.to_string(),
            command,
            config,
            results,
            checks,
            passed,
            wall_time_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command.join(" "));
        if let Some(summary) = self.results.get("summary").and_then(Value::as_str) {
            out.push_str(summary);
            if !summary.ends_with('\n') {
                out.push('\n');
            }
        }
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}: {} (expected {}, observed {})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.description,
                c.expected,
                c.observed
            ));
        }
        out.push_str(if self.passed {
            "result: pass\n"
        } else {
            "result: FAIL\n"
        });
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("wall time: {ms} ms\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let config = ConfigEcho {
            modulus: 7,
            seed: 1,
            retries: 5,
            step_limit: None,
            format: "json".into(),
        };
        let checks = vec![
            Check::equal("a", "two equals two", 2, 2),
            Check::holds("b", "false claim", false),
        ];
        let mut r = Report::new(
            vec!["x".into()],
            config,
            serde_json::json!({"k": [1, 2]}),
            checks,
        );
        assert!(!r.passed);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        r.wall_time_ms = Some(3);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.wall_time_ms, Some(3));
    }

    #[test]
    fn pass_is_derivable_from_checks() {
        let r: Report = serde_json::from_str(
            &Report::new(
                vec![],
                ConfigEcho {
                    modulus: 7,
                    seed: 0,
                    retries: 1,
                    step_limit: None,
                    format: "json".into(),
                },
                Value::Null,
                vec![Check::at_most("t", "bound", 5, 6)],
            )
            .to_json(),
        )
        .unwrap();
        assert_eq!(r.passed, r.checks.iter().all(|c| c.pass));
        assert!(!r.passed);
    }
}
