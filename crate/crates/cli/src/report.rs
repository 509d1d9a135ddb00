//! Text and JSON reports, and the exit-code contract.

use serde::Serialize;

use crate::checks::{Outcome, Record};
use preord::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exit codes: 0 all hold, 1 some check fails, 2 some check is unknown
/// (none fails), 3 model or usage error.
pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

/// Precedence: error > fails > unknown > holds.
pub fn exit_code(records: &[Record]) -> i32 {
    let mut code = EXIT_HOLDS;
    for r in records {
        let c = match &r.outcome {
            Outcome::Error(_) => return EXIT_ERROR,
            Outcome::Verdict(Verdict::Fails(_)) => EXIT_FAILS,
            Outcome::Verdict(Verdict::Unknown { .. }) => EXIT_UNKNOWN,
            Outcome::Verdict(Verdict::Holds(_)) => EXIT_HOLDS,
        };
        code = match (code, c) {
            (EXIT_FAILS, _) | (_, EXIT_FAILS) => EXIT_FAILS,
            (EXIT_UNKNOWN, _) | (_, EXIT_UNKNOWN) => EXIT_UNKNOWN,
            _ => EXIT_HOLDS,
        };
    }
    code
}

/// The JSON record; optional fields are omitted when empty.
#[derive(Serialize, Debug, Clone, PartialEq, Eq, serde::Deserialize)]
pub struct JsonRecord {
    pub predicate: String,
    pub morphism: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<u32>,
    pub millis: u64,
}

impl JsonRecord {
    pub fn from_record(r: &Record) -> Self {
        let mut j = JsonRecord {
            predicate: r.predicate.clone(),
            morphism: r.target.clone(),
            verdict: String::new(),
            witness: None,
            reason: None,
            certificate: None,
            bound: None,
            millis: r.millis,
        };
        match &r.outcome {
            Outcome::Error(e) => {
                j.verdict = "error".into();
                j.reason = Some(e.clone());
            }
            Outcome::Verdict(v) => {
                j.verdict = v.label().to_lowercase();
                match v {
                    Verdict::Holds(w) => j.certificate = Some(w.reason.clone()),
                    Verdict::Fails(w) => {
                        if !w.elements.is_empty() {
                            j.witness = Some(w.rendered());
                        }
                        j.reason = Some(w.reason.clone());
                    }
                    Verdict::Unknown { bound, note } => {
                        j.bound = Some(*bound);
                        if let Some(w) = note {
                            if !w.elements.is_empty() {
                                j.witness = Some(w.rendered());
                            }
                            j.reason = Some(w.reason.clone());
                        }
                    }
                }
            }
        }
        j
    }
}

/// One text line per record.
pub fn text_line(r: &Record) -> String {
    match &r.outcome {
        Outcome::Verdict(v) => format!("{} {}: {v}", r.predicate, r.target),
        Outcome::Error(e) => format!("{} {}: ERROR ({e})", r.predicate, r.target),
    }
}

/// Renders records. Both formats end with a newline.
pub fn emit_report(records: &[Record], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for r in records {
                out.push_str(&text_line(r));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let recs: Vec<JsonRecord> = records.iter().map(JsonRecord::from_record).collect();
            let mut s = serde_json::to_string_pretty(&recs).expect("serializable");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use preord::Witness;

    fn rec(v: Verdict) -> Record {
        Record {
            predicate: "central".into(),
            target: "f".into(),
            outcome: Outcome::Verdict(v),
            millis: 0,
        }
    }

    #[test]
    fn precedence_table() {
        let h = || rec(Verdict::holds("ok"));
        let f = || rec(Verdict::fails("no", vec![]));
        let u = || rec(Verdict::unknown(4));
        assert_eq!(exit_code(&[]), 0);
        assert_eq!(exit_code(&[h(), h()]), 0);
        assert_eq!(exit_code(&[h(), u()]), 2);
        assert_eq!(exit_code(&[u(), f(), h()]), 1);
        assert_eq!(exit_code(&[f(), u()]), 1);
        let e = Record {
            outcome: Outcome::Error("bad".into()),
            ..h()
        };
        assert_eq!(exit_code(&[f(), e]), 3);
    }

    #[test]
    fn text_and_json_shapes() {
        let r = rec(Verdict::holds("lattice criterion"));
        assert_eq!(emit_report(&[r], Format::Text), "central f: HOLDS (certificate: lattice criterion)\n");
        let r = rec(Verdict::Fails(Witness::new("outside", vec![])));
        let j = emit_report(&[r], Format::Json);
        assert!(j.ends_with('\n'));
        let parsed: Vec<JsonRecord> = serde_json::from_str(&j).unwrap();
        assert_eq!(parsed[0].verdict, "fails");
    }
}
