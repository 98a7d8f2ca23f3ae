//! Parallel corpora and frequency tables.
//!
//! A parallel corpus is either two line-aligned plain-text files (read
//! verbatim, no comment skipping) or a single `source<TAB>target` TSV.
//! Frequency tables are `idiom<TAB>count` TSVs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::extraction::FrequencyTable;

use super::{is_skippable, read_lines, split_lines, write_atomic};

/// Read two line-aligned files into (source, target) pairs, in file order.
pub fn read_parallel_corpus(src_path: &Path, tgt_path: &Path) -> Result<Vec<(String, String)>> {
    let sources = read_lines(src_path)?;
    let targets = read_lines(tgt_path)?;
    if sources.len() != targets.len() {
        return Err(Error::LineCountMismatch {
            left_path: src_path.display().to_string(),
            left: sources.len(),
            right_path: tgt_path.display().to_string(),
            right: targets.len(),
        });
    }
    Ok(sources.into_iter().zip(targets).collect())
}

pub fn read_pairs_tsv(path: &Path) -> Result<Vec<(String, String)>> {
    parse_pairs_lines(&read_lines(path)?)
}

pub fn parse_pairs_tsv(text: &str) -> Result<Vec<(String, String)>> {
    parse_pairs_lines(&split_lines(text))
}

fn parse_pairs_lines(lines: &[String]) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (index, line) in lines.iter().enumerate() {
        if is_skippable(line) {
            continue;
        }
        match line.split_once('\t') {
            Some((src, tgt)) => pairs.push((src.to_string(), tgt.to_string())),
            None => {
                return Err(Error::parse(
                    index + 1,
                    "expected source<TAB>target".to_string(),
                ))
            }
        }
    }
    Ok(pairs)
}

/// Serialize a frequency table as `idiom<TAB>count` rows in idiom codepoint
/// order.
pub fn render_frequency_tsv(table: &FrequencyTable) -> String {
    let mut out = String::new();
    for (idiom, count) in table.iter() {
        let _ = writeln!(out, "{idiom}\t{count}");
    }
    out
}

pub fn write_frequency_tsv(path: &Path, table: &FrequencyTable) -> Result<()> {
    write_atomic(path, &render_frequency_tsv(table))
}

pub fn read_frequency_tsv(path: &Path) -> Result<FrequencyTable> {
    parse_frequency_lines(&read_lines(path)?)
}

pub fn parse_frequency_tsv(text: &str) -> Result<FrequencyTable> {
    parse_frequency_lines(&split_lines(text))
}

fn parse_frequency_lines(lines: &[String]) -> Result<FrequencyTable> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for (index, line) in lines.iter().enumerate() {
        let line_no = index + 1;
        if is_skippable(line) {
            continue;
        }
        let (idiom, count) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(line_no, "expected idiom<TAB>count"))?;
        let idiom = idiom.trim();
        if idiom.is_empty() {
            return Err(Error::parse(line_no, "empty idiom"));
        }
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid count {count:?}")))?;
        if counts.insert(idiom.to_string(), count).is_some() {
            return Err(Error::parse(line_no, format!("duplicate idiom {idiom}")));
        }
    }
    Ok(FrequencyTable::from_counts(counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn parallel_corpus_pairs_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let src = dir.path().join("src.txt");
        let tgt = dir.path().join("tgt.txt");
        fs::write(&src, "一\n二\n三\n").unwrap();
        fs::write(&tgt, "one\ntwo\nthree\n").unwrap();
        let pairs = read_parallel_corpus(&src, &tgt).unwrap();
        assert_eq!(
            pairs,
            vec![
                ("一".to_string(), "one".to_string()),
                ("二".to_string(), "two".to_string()),
                ("三".to_string(), "three".to_string()),
            ]
        );
    }

    #[test]
    fn parallel_corpus_reports_both_counts_on_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let src = dir.path().join("src.txt");
        let tgt = dir.path().join("tgt.txt");
        fs::write(&src, "一\n二\n三\n").unwrap();
        fs::write(&tgt, "one\ntwo\n").unwrap();
        let err = read_parallel_corpus(&src, &tgt).unwrap_err();
        assert!(
            matches!(err, Error::LineCountMismatch { left: 3, right: 2, .. }),
            "{err}"
        );
    }

    #[test]
    fn empty_files_give_empty_corpus() {
        let dir = tempfile::tempdir().unwrap();
        let src = dir.path().join("src.txt");
        let tgt = dir.path().join("tgt.txt");
        fs::write(&src, "").unwrap();
        fs::write(&tgt, "").unwrap();
        assert!(read_parallel_corpus(&src, &tgt).unwrap().is_empty());
    }

    #[test]
    fn pairs_tsv_keeps_extra_tabs_in_target() {
        let pairs = parse_pairs_tsv("你好\thello\tthere\n# skip\n").unwrap();
        assert_eq!(pairs, vec![("你好".to_string(), "hello\tthere".to_string())]);
        assert!(parse_pairs_tsv("no tab here\n").is_err());
    }

    #[test]
    fn frequency_tsv_round_trip() {
        let mut counts = BTreeMap::new();
        counts.insert("守株待兔".to_string(), 64);
        counts.insert("说三道四".to_string(), 168);
        let table = FrequencyTable::from_counts(counts);
        let text = render_frequency_tsv(&table);
        assert_eq!(parse_frequency_tsv(&text).unwrap(), table);
    }

    #[test]
    fn frequency_tsv_rejects_bad_rows() {
        assert!(parse_frequency_tsv("守株待兔\tmany\n").is_err());
        assert!(parse_frequency_tsv("守株待兔\n").is_err());
        assert!(parse_frequency_tsv("守株待兔\t1\n守株待兔\t2\n").is_err());
    }
}
