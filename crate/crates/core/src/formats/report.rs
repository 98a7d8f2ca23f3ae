//! Evaluation report output: pretty JSON for machines and an aligned
//! per-idiom table for people.
//!
//! The table has one row per idiom-list entry - idiom, blacklist terms,
//! training frequency, record count, trigger rate to 3 decimals - followed
//! by an overall summary line. Unknown training frequencies and rates of
//! idioms without records render as an em dash. Column alignment accounts
//! for double-width CJK characters.

use std::path::Path;

use unicode_width::UnicodeWidthStr;

use crate::error::{Error, Result};
use crate::metrics::EvaluationReport;
use crate::model::IdiomList;

use super::write_atomic;

pub fn render_report_json(report: &EvaluationReport) -> String {
    let mut text =
        serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    text.push('\n');
    text
}

pub fn write_report_json(path: &Path, report: &EvaluationReport) -> Result<()> {
    write_atomic(path, &render_report_json(report))
}

const ABSENT: &str = "—";

/// Render the per-idiom table. Every idiom in the report must come from
/// `idioms`; list entries without records get a zero row.
pub fn render_report_table(report: &EvaluationReport, idioms: &IdiomList) -> Result<String> {
    for idiom in report.per_idiom.keys() {
        if idioms.get(idiom).is_none() {
            return Err(Error::Invalid(format!(
                "report covers idiom {idiom} that is not in the idiom list"
            )));
        }
    }
    let header = ["idiom", "blacklist", "training", "records", "rate"];
    let mut rows: Vec<[String; 5]> = Vec::with_capacity(idioms.len());
    for entry in idioms.entries() {
        let stats = report.per_idiom.get(entry.idiom());
        let training = entry
            .training_frequency()
            .map_or_else(|| ABSENT.to_string(), |f| f.to_string());
        let records = stats.map_or(0, |s| s.records);
        let rate = match stats {
            Some(s) if s.records > 0 => format!("{:.3}", s.rate),
            _ => ABSENT.to_string(),
        };
        rows.push([
            entry.idiom().to_string(),
            entry.blacklist().join(" "),
            training,
            records.to_string(),
            rate,
        ]);
    }

    let mut widths: [usize; 5] = header.map(UnicodeWidthStr::width);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.width());
        }
    }

    // idiom and blacklist left-aligned, numeric columns right-aligned
    let render_row = |cells: [&str; 5]| -> String {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let pad = " ".repeat(widths[i] - cell.width());
            if i < 2 {
                line.push_str(cell);
                line.push_str(&pad);
            } else {
                line.push_str(&pad);
                line.push_str(cell);
            }
        }
        while line.ends_with(' ') {
            line.pop();
        }
        line
    };

    let mut out = String::new();
    out.push_str(&render_row(header));
    out.push('\n');
    for row in &rows {
        let cells = [
            row[0].as_str(),
            row[1].as_str(),
            row[2].as_str(),
            row[3].as_str(),
            row[4].as_str(),
        ];
        out.push_str(&render_row(cells));
        out.push('\n');
    }
    out.push('\n');
    out.push_str(&format!(
        "overall: {} records, {} triggered, trigger rate {:.3}\n",
        report.total_records, report.triggered_count, report.trigger_rate
    ));
    Ok(out)
}
