//! Records file: JSON Lines, one record per line.
//!
//! Keys, in fixed order: `id`, `idiom`, `src`, `ref`, `hyp`, `triggered`,
//! `matched`. Optional keys are omitted when absent; `matched` is the
//! sorted array of matched blacklist terms and is present exactly when
//! `triggered` is. Output is byte-stable: the same record set always
//! serializes to the same bytes.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{TestRecord, TriggerResult};

use super::{is_skippable, read_lines, split_lines, write_atomic};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordLine {
    id: String,
    idiom: String,
    src: String,
    #[serde(rename = "ref", default, skip_serializing_if = "Option::is_none")]
    reference: Option<String>,
    #[serde(rename = "hyp", default, skip_serializing_if = "Option::is_none")]
    hypothesis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    triggered: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matched: Option<Vec<String>>,
}

impl From<&TestRecord> for RecordLine {
    fn from(record: &TestRecord) -> Self {
        RecordLine {
            id: record.id.clone(),
            idiom: record.idiom.clone(),
            src: record.source.clone(),
            reference: record.reference.clone(),
            hypothesis: record.hypothesis.clone(),
            triggered: record.trigger.as_ref().map(TriggerResult::triggered),
            matched: record
                .trigger
                .as_ref()
                .map(|t| t.matched_terms().iter().cloned().collect()),
        }
    }
}

impl RecordLine {
    fn into_record(self) -> std::result::Result<TestRecord, String> {
        let trigger = match (self.triggered, self.matched) {
            (None, None) => None,
            (Some(triggered), Some(matched)) => {
                let terms: BTreeSet<String> = matched.into_iter().collect();
                for term in &terms {
                    if term.is_empty()
                        || term.chars().any(char::is_whitespace)
                        || *term != term.to_lowercase()
                    {
                        return Err(format!("invalid matched term {term:?}"));
                    }
                }
                Some(TriggerResult::from_parts(triggered, terms).map_err(|e| e.to_string())?)
            }
            _ => return Err("triggered and matched must be present together".to_string()),
        };
        let record = TestRecord {
            id: self.id,
            idiom: self.idiom,
            source: self.src,
            reference: self.reference,
            hypothesis: self.hypothesis,
            trigger,
        };
        record.validate().map_err(|e| e.to_string())?;
        Ok(record)
    }
}

/// Serialize a record set; one JSON object per line, `\n`-terminated.
pub fn render_records(records: &[TestRecord]) -> String {
    let mut out = String::new();
    for record in records {
        let line = serde_json::to_string(&RecordLine::from(record))
            .expect("record serialization cannot fail");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_records(path: &Path, records: &[TestRecord]) -> Result<()> {
    write_atomic(path, &render_records(records))
}

pub fn read_records(path: &Path) -> Result<Vec<TestRecord>> {
    parse_record_lines(&read_lines(path)?)
}

pub fn parse_records(text: &str) -> Result<Vec<TestRecord>> {
    parse_record_lines(&split_lines(text))
}

fn parse_record_lines(lines: &[String]) -> Result<Vec<TestRecord>> {
    let mut records = Vec::new();
    let mut ids: HashSet<String> = HashSet::new();
    for (index, line) in lines.iter().enumerate() {
        let line_no = index + 1;
        if is_skippable(line) {
            continue;
        }
        let parsed: RecordLine = serde_json::from_str(line)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let record = parsed
            .into_record()
            .map_err(|msg| Error::parse(line_no, msg))?;
        if !ids.insert(record.id.clone()) {
            return Err(Error::parse(
                line_no,
                format!("duplicate record id {}", record.id),
            ));
        }
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_record() -> TestRecord {
        let mut record = TestRecord::new("w001", "说三道四", "医生说了你不能对我说三道四");
        record.reference = Some("The therapist said you're not allowed to judge me.".into());
        record.hypothesis = Some("The doctor said that you can't say three things to me.".into());
        record.trigger = Some(TriggerResult::new(["three".to_string()].into()));
        record
    }

    #[test]
    fn round_trip_is_identity() {
        let records = vec![worked_record()];
        let text = render_records(&records);
        assert_eq!(parse_records(&text).unwrap(), records);
    }

    #[test]
    fn rendering_is_byte_stable() {
        let records = vec![worked_record()];
        assert_eq!(render_records(&records), render_records(&records));
        let text = render_records(&records);
        let reparsed = parse_records(&text).unwrap();
        assert_eq!(render_records(&reparsed), text);
    }

    #[test]
    fn optional_fields_may_be_absent() {
        let record = TestRecord::new("r1", "守株待兔", "守株待兔的故事");
        let text = render_records(std::slice::from_ref(&record));
        assert_eq!(text, "{\"id\":\"r1\",\"idiom\":\"守株待兔\",\"src\":\"守株待兔的故事\"}\n");
        assert_eq!(parse_records(&text).unwrap(), vec![record]);
    }

    #[test]
    fn source_must_contain_idiom() {
        let text = "{\"id\":\"r1\",\"idiom\":\"守株待兔\",\"src\":\"无关内容\"}\n";
        let err = parse_records(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let record = TestRecord::new("r1", "守株待兔", "守株待兔的故事");
        let text = render_records(&[record.clone(), record]);
        let err = parse_records(&text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn trigger_fields_must_be_consistent() {
        let base = "\"idiom\":\"守株待兔\",\"src\":\"守株待兔的故事\"";
        for bad in [
            format!("{{\"id\":\"r1\",{base},\"triggered\":true,\"matched\":[]}}"),
            format!("{{\"id\":\"r1\",{base},\"triggered\":false,\"matched\":[\"rabbit\"]}}"),
            format!("{{\"id\":\"r1\",{base},\"triggered\":true}}"),
            format!("{{\"id\":\"r1\",{base},\"matched\":[\"rabbit\"]}}"),
            format!("{{\"id\":\"r1\",{base},\"triggered\":true,\"matched\":[\"Rabbit\"]}}"),
        ] {
            assert!(parse_records(&bad).is_err(), "accepted: {bad}");
        }
        let good = format!("{{\"id\":\"r1\",{base},\"triggered\":true,\"matched\":[\"rabbit\"]}}");
        assert!(parse_records(&good).is_ok());
    }

    #[test]
    fn malformed_json_names_the_line() {
        let record = TestRecord::new("r1", "守株待兔", "守株待兔的故事");
        let mut text = render_records(&[record]);
        text.push_str("not json\n");
        let err = parse_records(&text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = "{\"id\":\"r1\",\"idiom\":\"守株待兔\",\"src\":\"守株待兔\",\"extra\":1}\n";
        assert!(parse_records(text).is_err());
    }

    #[test]
    fn comment_and_blank_lines_are_skipped() {
        let record = TestRecord::new("r1", "守株待兔", "守株待兔的故事");
        let body = render_records(std::slice::from_ref(&record));
        let text = format!("# header\n\n{body}");
        assert_eq!(parse_records(&text).unwrap(), vec![record]);
    }
}
