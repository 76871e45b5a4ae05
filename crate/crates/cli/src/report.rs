use serde::Serialize;

pub const RUN_SCHEMA: &str = "hitminor.run/1";
pub const AGGREGATE_SCHEMA: &str = "hitminor.aggregate/1";

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Agree,
    Mismatch,
    /// The graph is above the oracle's size limit.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum AnswerValue {
    Minimum(usize),
    Decision(bool),
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub input: String,
    pub pattern: String,
    pub mode: String,
    pub answer: AnswerValue,
    pub minimum: usize,
    /// `"dp"` or `"oracle"`.
    pub method: &'static str,
    pub vertices: usize,
    pub edges: usize,
    /// `null` in bench output unless timings were requested.
    pub wall_ms: Option<f64>,
    pub width: Option<usize>,
    pub peak_table: Option<usize>,
    /// Largest table seen at each bag size, index = bag size.
    pub peak_by_bag: Option<Vec<usize>>,
    pub bound_violations: Option<usize>,
    pub verification: Option<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub schema: &'static str,
    pub instances: usize,
    pub pattern: String,
    pub total_minimum: usize,
    pub max_width: Option<usize>,
    pub max_peak_table: Option<usize>,
    pub bound_violations: usize,
    pub mismatches: usize,
    pub wall_ms: Option<f64>,
}

impl RunReport {
    pub fn human(&self) -> String {
        let mut parts = vec![
            format!("input {}", self.input),
            format!("pattern {}", self.pattern),
            format!("method {}", self.method),
        ];
        match self.answer {
            AnswerValue::Minimum(k) => parts.push(format!("minimum {k}")),
            AnswerValue::Decision(b) => parts.push(format!(
                "answer {} (minimum {})",
                if b { "yes" } else { "no" },
                self.minimum
            )),
        }
        if let Some(w) = self.width {
            parts.push(format!("width {w}"));
        }
        if let Some(p) = self.peak_table {
            parts.push(format!("peak table {p}"));
        }
        if let Some(ms) = self.wall_ms {
            parts.push(format!("time {ms:.2} ms"));
        }
        if let Some(v) = &self.verification {
            parts.push(format!(
                "oracle {}",
                serde_json::to_value(v).expect("plain enum").as_str().unwrap_or("?")
            ));
        }
        parts.join("  ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_field_is_serialized() {
        let r = RunReport {
            schema: RUN_SCHEMA,
            input: "g.gr".into(),
            pattern: "p3".into(),
            mode: "minimize".into(),
            answer: AnswerValue::Minimum(2),
            minimum: 2,
            method: "dp",
            vertices: 5,
            edges: 4,
            wall_ms: None,
            width: Some(1),
            peak_table: Some(9),
            peak_by_bag: Some(vec![1, 3, 9]),
            bound_violations: Some(0),
            verification: Some(Verdict::Skipped),
        };
        let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(v.as_object().unwrap().len(), 15);
        assert_eq!(v["answer"], 2);
        assert!(v["wall_ms"].is_null());
        assert_eq!(v["verification"], "skipped");
        assert!(r.human().contains("minimum 2"));
    }
}
