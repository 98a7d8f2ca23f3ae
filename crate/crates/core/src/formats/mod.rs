//! Readers and writers for every file format the toolkit consumes or emits.
//!
//! All files are UTF-8; a leading BOM is skipped and nothing else is
//! normalized. TSV inputs (idiom lists, pair files, frequency tables,
//! annotations) skip blank lines and lines starting with `#`. Plain
//! line-aligned corpus and hypothesis files are read verbatim, one sentence
//! per line. Writers are byte-stable: identical data serializes to
//! identical bytes.

mod annotations;
mod corpus;
mod idiom_list;
mod records;
mod report;

pub use annotations::{parse_annotations, read_annotations};
pub use corpus::{
    parse_frequency_tsv, parse_pairs_tsv, read_frequency_tsv, read_pairs_tsv,
    read_parallel_corpus, render_frequency_tsv, write_frequency_tsv,
};
pub use idiom_list::{
    parse_idiom_list, parse_idiom_universe, read_idiom_list, read_idiom_universe,
};
pub use records::{parse_records, read_records, render_records, write_records};
pub use report::{render_report_json, render_report_table, write_report_json};

use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Read a corpus or hypothesis file verbatim: one sentence per line, no
/// comment or blank-line skipping (a blank line is an empty sentence).
pub fn read_plain_lines(path: &Path) -> Result<Vec<String>> {
    read_lines(path)
}

/// Read a UTF-8 file into physical lines, skipping a leading BOM.
/// CRLF line endings are tolerated; the trailing newline adds no line.
pub(crate) fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(split_lines(&text))
}

pub(crate) fn split_lines(text: &str) -> Vec<String> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    text.lines().map(str::to_string).collect()
}

pub(crate) fn is_skippable(line: &str) -> bool {
    line.trim().is_empty() || line.starts_with('#')
}

/// Write a file atomically: the content lands under a temporary name in the
/// target directory and is renamed into place, so readers never observe a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let write_err = |source: std::io::Error| Error::Write {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(write_err)?;
    tmp.write_all(contents.as_bytes()).map_err(write_err)?;
    tmp.persist(path).map_err(|e| write_err(e.error))?;
    Ok(())
}
