use serde::Serialize;

use crate::config::ConfigEcho;

/// One checked quantity. Numeric fields are absent when the check errored.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub potential: String,
    pub class: String,
    pub phase: String,
    pub params: String,
    pub n: Option<usize>,
    pub condition: String,
    pub integral: Option<f64>,
    pub target: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    pub runtime_ms: u64,
    /// Provenance on success, error text on failure.
    pub detail: String,
}

impl Record {
    pub fn new(potential: &str, condition: &str, n: Option<usize>, tol: f64) -> Record {
        Record {
            potential: potential.to_string(),
            class: String::new(),
            phase: String::new(),
            params: String::new(),
            n,
            condition: condition.to_string(),
            integral: None,
            target: None,
            abs_err: None,
            rel_err: None,
            tol,
            pass: false,
            runtime_ms: 0,
            detail: String::new(),
        }
    }

    pub fn failed(mut self, err: impl std::fmt::Display) -> Record {
        self.pass = false;
        self.detail = format!("error: {err}");
        self
    }

    fn key(&self) -> (&str, &str, Option<usize>, &str, &str) {
        (&self.potential, &self.condition, self.n, &self.params, &self.detail)
    }
}

pub fn sort_records(records: &mut [Record]) {
    records.sort_by(|a, b| a.key().cmp(&b.key()));
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(records: &[Record]) -> Summary {
        let passed = records.iter().filter(|r| r.pass).count();
        Summary { total: records.len(), passed, failed: records.len() - passed }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub config_echo: ConfigEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Records only, one row each, header from the field names.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.records.is_empty() {
            w.write_record(RECORD_FIELDS).expect("in-memory write");
        }
        for r in &self.records {
            w.serialize(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

pub const RECORD_FIELDS: [&str; 14] = [
    "potential",
    "class",
    "phase",
    "params",
    "n",
    "condition",
    "integral",
    "target",
    "abs_err",
    "rel_err",
    "tol",
    "pass",
    "runtime_ms",
    "detail",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_and_quoting() {
        let mut r = Record::new("morse", "swkb", Some(1), 1e-8);
        r.params = "A=5,B=1".into();
        r.integral = Some(3.0);
        let rep = Report {
            config_echo: crate::config::RunConfig::default().echo(),
            records: vec![r],
            summary: Summary { total: 1, passed: 0, failed: 1 },
        };
        let csv = rep.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), RECORD_FIELDS.join(","));
        let row = lines.next().unwrap();
        assert!(row.starts_with("morse,,,\"A=5,B=1\",1,swkb,3.0,,,,"), "{row}");
    }

    #[test]
    fn sorting_puts_levels_in_order() {
        let mut v = vec![
            Record::new("b", "swkb", Some(2), 0.0),
            Record::new("a", "wkb", Some(1), 0.0),
            Record::new("b", "swkb", Some(1), 0.0),
        ];
        sort_records(&mut v);
        let keys: Vec<_> = v.iter().map(|r| (r.potential.as_str(), r.n)).collect();
        assert_eq!(keys, vec![("a", Some(1)), ("b", Some(1)), ("b", Some(2))]);
    }
}
