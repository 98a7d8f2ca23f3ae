//! Domain types: idioms with their blacklists, test records, trigger
//! verdicts, and human annotation labels.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::text;

/// One idiom together with the target-language words that betray a literal
/// translation of it.
///
/// Blacklist terms are normalized to lowercase at construction and kept as a
/// set (duplicates collapse, insertion order preserved). Terms are single
/// whitespace-free tokens; multi-word phrases are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdiomEntry {
    idiom: String,
    blacklist: Vec<String>,
    idiomatic_gloss: Option<String>,
    literal_gloss: Option<String>,
    training_frequency: Option<u64>,
}

impl IdiomEntry {
    pub fn new<S: AsRef<str>>(idiom: impl Into<String>, blacklist: &[S]) -> Result<Self> {
        let idiom = idiom.into();
        if idiom.is_empty() {
            return Err(Error::Invalid("empty idiom".into()));
        }
        if idiom.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!(
                "idiom {idiom:?} contains whitespace"
            )));
        }
        let mut terms: Vec<String> = Vec::new();
        for term in blacklist {
            let term = term.as_ref().to_lowercase();
            if term.is_empty() {
                return Err(Error::Invalid(format!(
                    "idiom {idiom}: empty blacklist term"
                )));
            }
            if term.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!(
                    "idiom {idiom}: blacklist term {term:?} contains whitespace; \
                     terms must be single tokens"
                )));
            }
            if !terms.contains(&term) {
                terms.push(term);
            }
        }
        if terms.is_empty() {
            return Err(Error::Invalid(format!("idiom {idiom}: empty blacklist")));
        }
        Ok(IdiomEntry {
            idiom,
            blacklist: terms,
            idiomatic_gloss: None,
            literal_gloss: None,
            training_frequency: None,
        })
    }

    pub fn with_glosses(
        mut self,
        idiomatic: Option<String>,
        literal: Option<String>,
    ) -> Self {
        self.idiomatic_gloss = idiomatic;
        self.literal_gloss = literal;
        self
    }

    pub fn with_training_frequency(mut self, freq: Option<u64>) -> Self {
        self.training_frequency = freq;
        self
    }

    pub fn idiom(&self) -> &str {
        &self.idiom
    }

    /// Lowercase blacklist terms, in insertion order, without duplicates.
    pub fn blacklist(&self) -> &[String] {
        &self.blacklist
    }

    pub fn idiomatic_gloss(&self) -> Option<&str> {
        self.idiomatic_gloss.as_deref()
    }

    pub fn literal_gloss(&self) -> Option<&str> {
        self.literal_gloss.as_deref()
    }

    pub fn training_frequency(&self) -> Option<u64> {
        self.training_frequency
    }
}

/// An ordered collection of [`IdiomEntry`] with unique idiom strings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdiomList {
    entries: Vec<IdiomEntry>,
}

impl IdiomList {
    pub fn new(entries: Vec<IdiomEntry>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for entry in &entries {
            if !seen.insert(entry.idiom()) {
                return Err(Error::Invalid(format!(
                    "duplicate idiom {}",
                    entry.idiom()
                )));
            }
        }
        Ok(IdiomList { entries })
    }

    pub fn entries(&self) -> &[IdiomEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idiom: &str) -> Option<&IdiomEntry> {
        self.entries.iter().find(|e| e.idiom() == idiom)
    }
}

/// The detector's verdict on one hypothesis: which blacklist terms occurred
/// as tokens. `triggered` holds exactly when `matched_terms` is non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggerResult {
    triggered: bool,
    matched_terms: BTreeSet<String>,
}

impl TriggerResult {
    pub fn new(matched_terms: BTreeSet<String>) -> Self {
        TriggerResult {
            triggered: !matched_terms.is_empty(),
            matched_terms,
        }
    }

    /// Rebuild from serialized parts, checking the triggered/matched
    /// consistency invariant.
    pub fn from_parts(triggered: bool, matched_terms: BTreeSet<String>) -> Result<Self> {
        if triggered == matched_terms.is_empty() {
            return Err(Error::Invalid(format!(
                "inconsistent trigger result: triggered={triggered} with {} matched term(s)",
                matched_terms.len()
            )));
        }
        Ok(TriggerResult {
            triggered,
            matched_terms,
        })
    }

    pub fn triggered(&self) -> bool {
        self.triggered
    }

    pub fn matched_terms(&self) -> &BTreeSet<String> {
        &self.matched_terms
    }
}

/// One extracted test sentence: a source sentence containing `idiom`, an
/// optional reference, and (after evaluation) the MT hypothesis and the
/// detector verdict.
///
/// Fields are public plumbing; file readers enforce the invariants (source
/// contains the idiom, ids unique within a set). Code constructing records
/// directly can check them with [`TestRecord::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestRecord {
    pub id: String,
    pub idiom: String,
    pub source: String,
    pub reference: Option<String>,
    pub hypothesis: Option<String>,
    pub trigger: Option<TriggerResult>,
}

impl TestRecord {
    pub fn new(id: impl Into<String>, idiom: impl Into<String>, source: impl Into<String>) -> Self {
        TestRecord {
            id: id.into(),
            idiom: idiom.into(),
            source: source.into(),
            reference: None,
            hypothesis: None,
            trigger: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::Invalid("empty record id".into()));
        }
        if self.idiom.is_empty() || self.idiom.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!(
                "record {}: invalid idiom {:?}",
                self.id, self.idiom
            )));
        }
        if !text::contains_idiom(&self.source, &self.idiom) {
            return Err(Error::Invalid(format!(
                "record {}: source does not contain idiom {}",
                self.id, self.idiom
            )));
        }
        Ok(())
    }
}

/// Human judgment of one translation with respect to its idiom.
///
/// `IncorrectLiteral` is a subtype of `Incorrect`: a literal error counts
/// toward every incorrect total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Correct,
    Incorrect,
    IncorrectLiteral,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Correct => "correct",
            Label::Incorrect => "incorrect",
            Label::IncorrectLiteral => "incorrect_literal",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "correct" => Some(Label::Correct),
            "incorrect" => Some(Label::Incorrect),
            "incorrect_literal" => Some(Label::IncorrectLiteral),
            _ => None,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One human annotation: the record it judges and the label assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub record_id: String,
    pub label: Label,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_lowercases_and_dedups_blacklist() {
        let e = IdiomEntry::new("说三道四", &["Three", "FOUR", "three"]).unwrap();
        assert_eq!(e.blacklist(), &["three", "four"]);
    }

    #[test]
    fn entry_rejects_empty_and_multiword_terms() {
        assert!(IdiomEntry::new("x", &[""]).is_err());
        assert!(IdiomEntry::new("x", &["three four"]).is_err());
        assert!(IdiomEntry::new("x", &[] as &[&str]).is_err());
    }

    #[test]
    fn entry_rejects_whitespace_in_idiom() {
        assert!(IdiomEntry::new("说三 道四", &["three"]).is_err());
        assert!(IdiomEntry::new("a\tb", &["three"]).is_err());
        assert!(IdiomEntry::new("", &["three"]).is_err());
    }

    #[test]
    fn list_rejects_duplicate_idioms() {
        let a = IdiomEntry::new("手无寸铁", &["iron"]).unwrap();
        let b = IdiomEntry::new("手无寸铁", &["iron"]).unwrap();
        assert!(IdiomList::new(vec![a, b]).is_err());
    }

    #[test]
    fn trigger_result_consistency() {
        let empty = BTreeSet::new();
        let one: BTreeSet<String> = ["three".to_string()].into();
        assert!(!TriggerResult::new(empty.clone()).triggered());
        assert!(TriggerResult::new(one.clone()).triggered());
        assert!(TriggerResult::from_parts(true, empty.clone()).is_err());
        assert!(TriggerResult::from_parts(false, one.clone()).is_err());
        assert!(TriggerResult::from_parts(true, one).is_ok());
        assert!(TriggerResult::from_parts(false, empty).is_ok());
    }

    #[test]
    fn record_validation_requires_idiom_in_source() {
        let good = TestRecord::new("r1", "说三道四", "医生说了你不能对我说三道四");
        assert!(good.validate().is_ok());
        let bad = TestRecord::new("r2", "说三道四", "你好");
        assert!(bad.validate().is_err());
    }

    #[test]
    fn label_round_trip() {
        for label in [Label::Correct, Label::Incorrect, Label::IncorrectLiteral] {
            assert_eq!(Label::parse(label.as_str()), Some(label));
        }
        assert_eq!(Label::parse("ok"), None);
    }
}
