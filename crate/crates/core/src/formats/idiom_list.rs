//! Idiom list TSV: `idiom<TAB>blacklist terms<TAB>idiomatic gloss<TAB>
//! literal gloss<TAB>training frequency`, the last three columns optional.
//! Blacklist terms are space-separated and lowercased on read.

use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{IdiomEntry, IdiomList};

use super::{is_skippable, read_lines, split_lines};

pub fn read_idiom_list(path: &Path) -> Result<IdiomList> {
    parse_lines(&read_lines(path)?)
}

pub fn parse_idiom_list(text: &str) -> Result<IdiomList> {
    parse_lines(&split_lines(text))
}

fn parse_lines(lines: &[String]) -> Result<IdiomList> {
    let mut entries: Vec<IdiomEntry> = Vec::new();
    for (index, line) in lines.iter().enumerate() {
        let line_no = index + 1;
        if is_skippable(line) {
            continue;
        }
        let columns: Vec<&str> = line.split('\t').collect();
        if columns.len() < 2 || columns.len() > 5 {
            return Err(Error::parse(
                line_no,
                format!(
                    "expected 2 to 5 tab-separated columns, found {}",
                    columns.len()
                ),
            ));
        }
        let idiom = columns[0].trim();
        let terms: Vec<&str> = columns[1].split_whitespace().collect();
        let mut entry = IdiomEntry::new(idiom, &terms)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
        let optional = |i: usize| -> Option<String> {
            columns
                .get(i)
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
        };
        entry = entry.with_glosses(optional(2), optional(3));
        if let Some(raw) = optional(4) {
            let freq: u64 = raw.parse().map_err(|_| {
                Error::parse(line_no, format!("invalid training frequency {raw:?}"))
            })?;
            entry = entry.with_training_frequency(Some(freq));
        }
        if entries.iter().any(|e| e.idiom() == entry.idiom()) {
            return Err(Error::parse(
                line_no,
                format!("duplicate idiom {}", entry.idiom()),
            ));
        }
        entries.push(entry);
    }
    IdiomList::new(entries)
}

/// A candidate idiom universe: one idiom per line. Tab-separated lines are
/// accepted too (only the first column is read), so a full idiom-list TSV
/// can serve as a universe. Duplicates collapse to the first occurrence.
pub fn read_idiom_universe(path: &Path) -> Result<Vec<String>> {
    parse_universe_lines(&read_lines(path)?)
}

pub fn parse_idiom_universe(text: &str) -> Result<Vec<String>> {
    parse_universe_lines(&split_lines(text))
}

fn parse_universe_lines(lines: &[String]) -> Result<Vec<String>> {
    let mut idioms: Vec<String> = Vec::new();
    for (index, line) in lines.iter().enumerate() {
        let line_no = index + 1;
        if is_skippable(line) {
            continue;
        }
        let idiom = line.split('\t').next().unwrap_or("").trim();
        if idiom.is_empty() {
            return Err(Error::parse(line_no, "empty idiom"));
        }
        if idiom.chars().any(char::is_whitespace) {
            return Err(Error::parse(
                line_no,
                format!("idiom {idiom:?} contains whitespace"),
            ));
        }
        if !idioms.iter().any(|known| known == idiom) {
            idioms.push(idiom.to_string());
        }
    }
    Ok(idioms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_and_minimal_rows() {
        let text = "# comment\n\
                    胸有成竹\tchest bamboo\tHave a well-thought-out plan\tHave a bamboo in one's chest\t127\n\
                    \n\
                    说三道四\tThree FOUR\n";
        let list = parse_idiom_list(text).unwrap();
        assert_eq!(list.len(), 2);
        let full = list.get("胸有成竹").unwrap();
        assert_eq!(full.blacklist(), &["chest", "bamboo"]);
        assert_eq!(full.idiomatic_gloss(), Some("Have a well-thought-out plan"));
        assert_eq!(full.training_frequency(), Some(127));
        let minimal = list.get("说三道四").unwrap();
        assert_eq!(minimal.blacklist(), &["three", "four"]);
        assert_eq!(minimal.idiomatic_gloss(), None);
        assert_eq!(minimal.training_frequency(), None);
    }

    #[test]
    fn rejects_duplicate_idioms_with_line_number() {
        let text = "手无寸铁\tiron\n手无寸铁\tiron\n";
        let err = parse_idiom_list(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            parse_idiom_list("手无寸铁\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_idiom_list("手无寸铁\t\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_idiom_list("\tiron\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_idiom_list("手无寸铁\tiron\t\t\tlots\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_idiom_list("a\tb\tc\td\te\tf\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn empty_gloss_columns_become_none() {
        let list = parse_idiom_list("手无寸铁\tiron\t\t\t1000\n").unwrap();
        let entry = list.get("手无寸铁").unwrap();
        assert_eq!(entry.idiomatic_gloss(), None);
        assert_eq!(entry.literal_gloss(), None);
        assert_eq!(entry.training_frequency(), Some(1000));
    }

    #[test]
    fn universe_accepts_plain_and_tsv_lines() {
        let text = "守株待兔\n# note\n说三道四\tthree four\n守株待兔\n";
        let universe = parse_idiom_universe(text).unwrap();
        assert_eq!(universe, vec!["守株待兔", "说三道四"]);
    }

    #[test]
    fn universe_rejects_whitespace() {
        assert!(parse_idiom_universe("守株 待兔\n").is_err());
    }
}
