//! Property tests for the tokenizer, idiom matching, the trigger rule, and
//! records-file round-tripping.

use std::collections::BTreeSet;

use proptest::collection::{btree_map, btree_set, vec as pvec};
use proptest::option;
use proptest::prelude::*;

use idiomeval_core::detector::detect;
use idiomeval_core::formats::{parse_records, render_records};
use idiomeval_core::model::{IdiomEntry, TestRecord, TriggerResult};
use idiomeval_core::text::{contains_idiom, tokenize};

fn han_string() -> impl Strategy<Value = String> {
    pvec(prop::char::range('\u{4e00}', '\u{9fa5}'), 1..=6).prop_map(String::from_iter)
}

proptest! {
    #[test]
    fn tokenize_is_idempotent_on_its_own_output(s in any::<String>()) {
        let once = tokenize(&s);
        let again = tokenize(&once.join(" "));
        prop_assert_eq!(once, again);
    }

    #[test]
    fn tokens_are_normalized(s in any::<String>()) {
        for token in tokenize(&s) {
            prop_assert!(!token.is_empty());
            prop_assert!(!token.chars().any(char::is_whitespace));
            prop_assert_eq!(token.clone(), token.to_lowercase());
        }
    }

    #[test]
    fn embedded_idiom_is_always_found(
        prefix in any::<String>(),
        idiom in han_string(),
        suffix in any::<String>(),
    ) {
        let sentence = format!("{prefix}{idiom}{suffix}");
        prop_assert!(contains_idiom(&sentence, &idiom));
    }

    #[test]
    fn words_do_not_match_inside_longer_words(
        word in "[a-z0-9]{1,6}",
        prefix in "[a-z0-9]{0,4}",
        suffix in "[a-z0-9]{1,4}",
    ) {
        // `word` embedded in a strictly longer alphanumeric token must not
        // surface as a token of its own.
        let longer = format!("{prefix}{word}{suffix}");
        prop_assert!(longer != word);
        let tokens = tokenize(&format!("left {longer} right"));
        prop_assert!(!tokens.contains(&word));
    }

    #[test]
    fn detect_matches_stay_within_the_blacklist(
        terms in btree_set("[a-z]{1,8}", 1..4),
        hypothesis in any::<String>(),
        extension in any::<String>(),
    ) {
        let terms: Vec<String> = terms.into_iter().collect();
        let entry = IdiomEntry::new("成语", &terms).unwrap();
        let result = detect(&hypothesis, &entry);
        for term in result.matched_terms() {
            prop_assert!(terms.contains(term));
        }
        prop_assert_eq!(result.triggered(), !result.matched_terms().is_empty());
        // determinism
        prop_assert_eq!(&detect(&hypothesis, &entry), &result);
        // extending the hypothesis with further text never drops a match
        let extended = detect(&format!("{hypothesis} {extension}"), &entry);
        prop_assert!(result.matched_terms().is_subset(extended.matched_terms()));
    }
}

fn record_strategy() -> impl Strategy<Value = TestRecord> {
    (
        han_string(),
        any::<String>(),
        any::<String>(),
        option::of(any::<String>()),
        option::of(any::<String>()),
        option::of(btree_set("[a-z]{1,6}", 0..4)),
    )
        .prop_map(|(idiom, prefix, suffix, reference, hypothesis, matched)| {
            let mut record = TestRecord::new("placeholder", idiom.clone(), format!("{prefix}{idiom}{suffix}"));
            record.reference = reference;
            record.hypothesis = hypothesis;
            record.trigger = matched.map(|terms: BTreeSet<String>| TriggerResult::new(terms));
            record
        })
}

proptest! {
    #[test]
    fn record_sets_round_trip(records in btree_map("[a-zA-Z0-9_-]{1,12}", record_strategy(), 0..12)) {
        let records: Vec<TestRecord> = records
            .into_iter()
            .map(|(id, mut record)| {
                record.id = id;
                record
            })
            .collect();
        let text = render_records(&records);
        let parsed = parse_records(&text).expect("rendered records must parse");
        prop_assert_eq!(parsed, records);
    }
}
