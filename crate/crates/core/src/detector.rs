//! The blacklist trigger rule: a hypothesis triggers an idiom's blacklist
//! when any blacklist term occurs as a token of the hypothesis.
//!
//! Matching is over the whole hypothesis, not an aligned span. A blacklist
//! word contributed by an unrelated part of the sentence therefore still
//! triggers; that trade-off is kept because it preserves the measured
//! high-precision regime of the method.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::model::{IdiomEntry, IdiomList, TestRecord, TriggerResult};
use crate::text::tokenize;

/// Apply the trigger rule to a single hypothesis.
///
/// `matched_terms` is the intersection of the entry's blacklist with the
/// hypothesis token set; the verdict is positive iff it is non-empty.
pub fn detect(hypothesis: &str, entry: &IdiomEntry) -> TriggerResult {
    let tokens: HashSet<String> = tokenize(hypothesis).into_iter().collect();
    let matched: BTreeSet<String> = entry
        .blacklist()
        .iter()
        .filter(|term| tokens.contains(*term))
        .cloned()
        .collect();
    TriggerResult::new(matched)
}

/// Run [`detect`] over a record set, filling each record's trigger field
/// from its own idiom's blacklist. Output order equals input order and the
/// records are otherwise unmodified.
///
/// Fails if a record names an idiom missing from `idioms` or lacks a
/// hypothesis.
pub fn detect_all(records: Vec<TestRecord>, idioms: &IdiomList) -> Result<Vec<TestRecord>> {
    let index: HashMap<&str, &IdiomEntry> = idioms
        .entries()
        .iter()
        .map(|e| (e.idiom(), e))
        .collect();
    records
        .into_iter()
        .map(|mut record| {
            let entry = index
                .get(record.idiom.as_str())
                .ok_or_else(|| Error::UnknownIdiom {
                    record_id: record.id.clone(),
                    idiom: record.idiom.clone(),
                })?;
            let hypothesis =
                record
                    .hypothesis
                    .as_deref()
                    .ok_or_else(|| Error::MissingHypothesis {
                        record_id: record.id.clone(),
                    })?;
            record.trigger = Some(detect(hypothesis, entry));
            Ok(record)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(idiom: &str, terms: &[&str]) -> IdiomEntry {
        IdiomEntry::new(idiom, terms).unwrap()
    }

    #[test]
    fn detects_literal_translation() {
        let result = detect(
            "The doctor said that you can't say three things to me.",
            &entry("说三道四", &["three", "four"]),
        );
        assert!(result.triggered());
        assert_eq!(
            result.matched_terms().iter().collect::<Vec<_>>(),
            vec!["three"]
        );
    }

    #[test]
    fn triggers_on_unrelated_occurrence() {
        // Correct idiom translation elsewhere in the sentence still trips
        // the term; whole-hypothesis matching accepts this false positive.
        let result = detect(
            "They talk and laugh, but we're going to blow the wind right here",
            &entry("谈笑风生", &["wind"]),
        );
        assert!(result.triggered());
        assert_eq!(
            result.matched_terms().iter().collect::<Vec<_>>(),
            vec!["wind"]
        );
    }

    #[test]
    fn misses_non_literal_errors() {
        let result = detect(
            "You have to go all over the place",
            &entry("生龙活虎", &["dragon", "tiger"]),
        );
        assert!(!result.triggered());
        assert!(result.matched_terms().is_empty());
    }

    #[test]
    fn respects_token_boundaries() {
        let result = detect("I opened the window", &entry("谈笑风生", &["wind"]));
        assert!(!result.triggered());
    }

    #[test]
    fn matching_is_case_insensitive() {
        let result = detect("THREE things", &entry("说三道四", &["three", "four"]));
        assert!(result.triggered());
    }

    fn worked_examples() -> (Vec<TestRecord>, IdiomList) {
        let list = IdiomList::new(vec![
            entry("说三道四", &["three", "four"]),
            entry("谈笑风生", &["wind"]),
            entry("生龙活虎", &["dragon", "tiger"]),
        ])
        .unwrap();
        let mut records = vec![
            TestRecord::new("w001", "说三道四", "医生说了你不能对我说三道四"),
            TestRecord::new("w002", "谈笑风生", "他们谈笑风生 而我们却要在这里吹风"),
            TestRecord::new("w003", "生龙活虎", "你明明生龙活虎到处走"),
        ];
        records[0].hypothesis =
            Some("The doctor said that you can't say three things to me.".into());
        records[1].hypothesis =
            Some("They talk and laugh, but we're going to blow the wind right here".into());
        records[2].hypothesis = Some("You have to go all over the place".into());
        (records, list)
    }

    #[test]
    fn detect_all_fills_verdicts_in_order() {
        let (records, list) = worked_examples();
        let out = detect_all(records, &list).unwrap();
        let verdicts: Vec<bool> = out
            .iter()
            .map(|r| r.trigger.as_ref().unwrap().triggered())
            .collect();
        assert_eq!(verdicts, vec![true, true, false]);
        assert_eq!(out.iter().filter(|r| r.trigger.as_ref().unwrap().triggered()).count(), 2);
    }

    #[test]
    fn detect_all_on_empty_set() {
        let (_, list) = worked_examples();
        assert!(detect_all(Vec::new(), &list).unwrap().is_empty());
    }

    #[test]
    fn detect_all_triggers_constructed_hypotheses() {
        // Hypotheses built by concatenation around the first blacklist term;
        // each must trigger. Independently checked against a plain
        // whitespace-split word scan.
        let list = IdiomList::new(
            (0..10)
                .map(|i| entry(&format!("成语{i:02}"), &[&format!("term{i}"), "other"]))
                .collect(),
        )
        .unwrap();
        let records: Vec<TestRecord> = (0..10)
            .map(|i| {
                let mut r = TestRecord::new(
                    format!("s{i}"),
                    format!("成语{i:02}"),
                    format!("句子 成语{i:02} 结尾"),
                );
                r.hypothesis = Some(format!("some words term{i} more words"));
                r
            })
            .collect();
        for r in &records {
            let hyp = r.hypothesis.as_deref().unwrap();
            let words: Vec<&str> = hyp.split_whitespace().collect();
            assert!(words.contains(&format!("term{}", &r.id[1..]).as_str()));
        }
        let out = detect_all(records, &list).unwrap();
        assert!(out.iter().all(|r| r.trigger.as_ref().unwrap().triggered()));
    }

    #[test]
    fn detect_all_reports_unknown_idiom_and_missing_hypothesis() {
        let (mut records, list) = worked_examples();
        records[1].idiom = "不存在的".into();
        records[1].source = "某不存在的句子".into();
        let err = detect_all(records.clone(), &list).unwrap_err();
        assert!(matches!(err, Error::UnknownIdiom { ref record_id, .. } if record_id == "w002"));

        let (mut records, list) = worked_examples();
        records[2].hypothesis = None;
        let err = detect_all(records, &list).unwrap_err();
        assert!(matches!(err, Error::MissingHypothesis { ref record_id } if record_id == "w003"));
    }

    #[test]
    fn verdicts_are_independent_of_record_order() {
        let (records, list) = worked_examples();
        let forward = detect_all(records.clone(), &list).unwrap();
        let mut reversed: Vec<TestRecord> = records;
        reversed.reverse();
        let backward = detect_all(reversed, &list).unwrap();
        for r in &forward {
            let twin = backward.iter().find(|b| b.id == r.id).unwrap();
            assert_eq!(r.trigger, twin.trigger);
        }
    }
}
