//! Annotations TSV: `record_id<TAB>label` with label one of `correct`,
//! `incorrect`, `incorrect_literal`.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{Annotation, Label};

use super::{is_skippable, read_lines, split_lines};

pub fn read_annotations(path: &Path) -> Result<Vec<Annotation>> {
    parse_lines(&read_lines(path)?)
}

pub fn parse_annotations(text: &str) -> Result<Vec<Annotation>> {
    parse_lines(&split_lines(text))
}

fn parse_lines(lines: &[String]) -> Result<Vec<Annotation>> {
    let mut annotations = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (index, line) in lines.iter().enumerate() {
        let line_no = index + 1;
        if is_skippable(line) {
            continue;
        }
        let (record_id, label) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(line_no, "expected record_id<TAB>label"))?;
        let record_id = record_id.trim();
        if record_id.is_empty() {
            return Err(Error::parse(line_no, "empty record id"));
        }
        let label = Label::parse(label.trim()).ok_or_else(|| {
            Error::parse(
                line_no,
                format!(
                    "unknown label {:?}; expected correct, incorrect, or incorrect_literal",
                    label.trim()
                ),
            )
        })?;
        if !seen.insert(record_id.to_string()) {
            return Err(Error::parse(
                line_no,
                format!("duplicate annotation for record {record_id}"),
            ));
        }
        annotations.push(Annotation {
            record_id: record_id.to_string(),
            label,
        });
    }
    Ok(annotations)
}
