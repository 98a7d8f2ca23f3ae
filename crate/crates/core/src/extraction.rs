//! Corpus frequency analysis, idiom selection, and balanced test-set
//! extraction.
//!
//! Frequencies are sentence-level: an idiom occurring twice in one sentence
//! counts once. Capping uses seeded position-keyed sampling so that capped
//! subsets are uniform, reproducible for a given seed, and independent of
//! how the corpus is sharded.

use std::collections::BTreeMap;

use aho_corasick::AhoCorasick;

use crate::error::{Error, Result};
use crate::model::{IdiomList, TestRecord};
use crate::text::contains_idiom;

/// Sentence-level occurrence counts for an idiom universe.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyTable {
    counts: BTreeMap<String, u64>,
}

impl FrequencyTable {
    pub fn from_counts(counts: BTreeMap<String, u64>) -> Self {
        FrequencyTable { counts }
    }

    pub fn get(&self, idiom: &str) -> Option<u64> {
        self.counts.get(idiom).copied()
    }

    /// Entries in idiom codepoint order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Knobs for selection and extraction. Defaults reproduce the reference
/// configuration: at most 40 records per idiom, frequency band 7..=1000.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ExtractionConfig {
    pub max_per_idiom: usize,
    pub min_freq: u64,
    pub max_freq: u64,
    pub seed: u64,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        ExtractionConfig {
            max_per_idiom: 40,
            min_freq: 7,
            max_freq: 1000,
            seed: 0,
        }
    }
}

impl ExtractionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_per_idiom == 0 {
            return Err(Error::Invalid("max_per_idiom must be at least 1".into()));
        }
        if self.min_freq > self.max_freq {
            return Err(Error::Invalid(format!(
                "min_freq {} exceeds max_freq {}",
                self.min_freq, self.max_freq
            )));
        }
        Ok(())
    }
}

/// Count, for every idiom in `universe`, how many sentences contain it.
/// Idioms never seen get an explicit count of 0. Duplicate universe entries
/// collapse to one.
pub fn count_frequencies<S: AsRef<str>>(
    sentences: &[S],
    universe: &[String],
) -> Result<FrequencyTable> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for idiom in universe {
        if idiom.is_empty() {
            return Err(Error::Invalid("empty idiom in universe".into()));
        }
        counts.entry(idiom.clone()).or_insert(0);
    }
    let patterns: Vec<String> = counts.keys().cloned().collect();
    if patterns.is_empty() {
        return Ok(FrequencyTable::from_counts(counts));
    }
    let matcher = AhoCorasick::new(&patterns)
        .map_err(|e| Error::Invalid(format!("failed to build idiom matcher: {e}")))?;
    let mut hits: Vec<usize> = Vec::new();
    for sentence in sentences {
        hits.clear();
        for m in matcher.find_overlapping_iter(sentence.as_ref()) {
            hits.push(m.pattern().as_usize());
        }
        hits.sort_unstable();
        hits.dedup();
        for &i in hits.iter() {
            *counts
                .get_mut(patterns[i].as_str())
                .expect("pattern key exists") += 1;
        }
    }
    Ok(FrequencyTable::from_counts(counts))
}

/// Idioms whose count falls inside the inclusive `[min_freq, max_freq]`
/// band, in descending frequency order, ties broken by codepoint order.
pub fn select_idioms(table: &FrequencyTable, config: &ExtractionConfig) -> Vec<String> {
    let mut selected: Vec<(&str, u64)> = table
        .iter()
        .filter(|(_, c)| *c >= config.min_freq && *c <= config.max_freq)
        .collect();
    selected.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    selected.into_iter().map(|(i, _)| i.to_string()).collect()
}

/// Extract one record per (idiom, matching corpus pair), capping each idiom
/// at `max_per_idiom` pairs via seeded uniform sampling.
///
/// A pair containing k listed idioms yields up to k records, each judged
/// against its own idiom only. Record ids are `{idiom}-{position:08}` where
/// position is the 0-based index of the pair in the corpus; output is sorted
/// by idiom, then corpus position.
pub fn extract_pairs(
    corpus: &[(String, String)],
    idioms: &IdiomList,
    config: &ExtractionConfig,
) -> Result<Vec<TestRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    for entry in idioms.entries() {
        let mut positions: Vec<usize> = corpus
            .iter()
            .enumerate()
            .filter(|(_, (src, _))| contains_idiom(src, entry.idiom()))
            .map(|(p, _)| p)
            .collect();
        if positions.len() > config.max_per_idiom {
            positions = sample_positions(&positions, config.max_per_idiom, config.seed, entry.idiom());
        }
        for p in positions {
            let (src, tgt) = &corpus[p];
            let mut record = TestRecord::new(
                format!("{}-{p:08}", entry.idiom()),
                entry.idiom(),
                src.clone(),
            );
            record.reference = Some(tgt.clone());
            records.push(record);
        }
    }
    // ids embed the zero-padded position, so (idiom, id) orders records by
    // (idiom, corpus position)
    records.sort_by(|a, b| a.idiom.cmp(&b.idiom).then_with(|| a.id.cmp(&b.id)));
    Ok(records)
}

/// Uniform k-subset of `positions`, keyed per (seed, idiom, position): each
/// candidate gets a deterministic pseudo-random key and the k smallest keys
/// win. Output in ascending position order.
fn sample_positions(positions: &[usize], k: usize, seed: u64, idiom: &str) -> Vec<usize> {
    let tag = fnv1a64(idiom.as_bytes());
    let mut keyed: Vec<(u64, usize)> = positions
        .iter()
        .map(|&p| (position_key(seed ^ tag, p as u64), p))
        .collect();
    keyed.sort_unstable();
    let mut picked: Vec<usize> = keyed[..k].iter().map(|&(_, p)| p).collect();
    picked.sort_unstable();
    picked
}

fn position_key(stream: u64, position: u64) -> u64 {
    splitmix64(stream.wrapping_add(position.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
