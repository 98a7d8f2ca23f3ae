//! Scoring: trigger rates, annotation-based confusion counts with sample
//! extrapolation, detector precision/recall, and corpus BLEU with
//! stratification by trigger status.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Annotation, Label, TestRecord};
use crate::text::tokenize;

/// A trigger stratum of an evaluated record set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    All,
    Triggered,
    NotTriggered,
}

impl std::fmt::Display for Stratum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stratum::All => "all",
            Stratum::Triggered => "triggered",
            Stratum::NotTriggered => "not_triggered",
        })
    }
}

/// Per-label counts of annotated translations. `incorrect` includes
/// `incorrect_literal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LabelCounts {
    pub correct: u64,
    pub incorrect: u64,
    pub incorrect_literal: u64,
}

/// Label counts for one stratum, together with how they were obtained:
/// a census (`sample_size == stratum_size`) or an extrapolated sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCounts {
    pub correct: u64,
    pub incorrect: u64,
    pub incorrect_literal: u64,
    pub stratum_size: u64,
    pub sample_size: u64,
    /// True when the counts are estimates scaled up from a sample.
    pub extrapolated: bool,
}

impl StratumCounts {
    fn census(counts: LabelCounts, stratum_size: u64) -> Self {
        StratumCounts {
            correct: counts.correct,
            incorrect: counts.incorrect,
            incorrect_literal: counts.incorrect_literal,
            stratum_size,
            sample_size: stratum_size,
            extrapolated: false,
        }
    }
}

/// Confusion counts over both trigger strata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub triggered: StratumCounts,
    pub not_triggered: StratumCounts,
}

/// Detector quality derived from confusion counts. A score whose
/// denominator is zero is undefined and reported as `None`, never as 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorScores {
    pub precision: Option<f64>,
    pub recall_literal: Option<f64>,
    pub recall_all_errors: Option<f64>,
}

/// Corpus BLEU-4: geometric mean of clipped n-gram precisions times the
/// brevity penalty. Single reference, no smoothing, own tokenizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BleuScore {
    pub score: f64,
    pub brevity_penalty: f64,
    pub precisions: [f64; 4],
    pub hypothesis_length: u64,
    pub reference_length: u64,
}

/// Per-idiom slice of an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerIdiomStats {
    pub records: u64,
    pub triggered: u64,
    pub rate: f64,
}

/// Everything a run can report. Rates are always present; confusion,
/// detector scores, and BLEU strata appear only when the corresponding
/// inputs were supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub total_records: u64,
    pub triggered_count: u64,
    pub trigger_rate: f64,
    pub per_idiom: BTreeMap<String, PerIdiomStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confusion: Option<ConfusionCounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recall_literal: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recall_all_errors: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bleu_strata: Option<BTreeMap<Stratum, BleuScore>>,
}

/// Overall and per-idiom trigger counts and rates for an evaluated record
/// set. Every record must carry a trigger result.
pub fn trigger_rate_report(records: &[TestRecord]) -> Result<EvaluationReport> {
    let mut total: u64 = 0;
    let mut triggered: u64 = 0;
    let mut per_idiom: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for record in records {
        let verdict = record
            .trigger
            .as_ref()
            .ok_or_else(|| Error::MissingTrigger {
                record_id: record.id.clone(),
            })?;
        let slot = per_idiom.entry(record.idiom.clone()).or_insert((0, 0));
        slot.0 += 1;
        total += 1;
        if verdict.triggered() {
            slot.1 += 1;
            triggered += 1;
        }
    }
    let rate = |hits: u64, n: u64| if n > 0 { hits as f64 / n as f64 } else { 0.0 };
    Ok(EvaluationReport {
        total_records: total,
        triggered_count: triggered,
        trigger_rate: rate(triggered, total),
        per_idiom: per_idiom
            .into_iter()
            .map(|(idiom, (n, hits))| {
                (
                    idiom,
                    PerIdiomStats {
                        records: n,
                        triggered: hits,
                        rate: rate(hits, n),
                    },
                )
            })
            .collect(),
        confusion: None,
        precision: None,
        recall_literal: None,
        recall_all_errors: None,
        bleu_strata: None,
    })
}

/// Scale sampled label counts up to a whole stratum.
///
/// Each count is scaled by `stratum_size / sample_size` exactly (integer
/// arithmetic) and rounded by the largest-remainder method over the disjoint
/// partition {correct, incorrect-but-not-literal, literal}, so that
/// correct + incorrect == stratum_size always. Remainder ties go to the
/// earlier label (correct, incorrect, incorrect_literal).
pub fn extrapolate_stratum(
    sample: LabelCounts,
    sample_size: u64,
    stratum_size: u64,
) -> Result<LabelCounts> {
    if sample_size == 0 {
        return Err(Error::Invalid("sample_size must be positive".into()));
    }
    if sample_size > stratum_size {
        return Err(Error::Invalid(format!(
            "sample_size {sample_size} exceeds stratum_size {stratum_size}"
        )));
    }
    if sample.incorrect_literal > sample.incorrect {
        return Err(Error::Invalid(format!(
            "incorrect_literal {} exceeds incorrect {}",
            sample.incorrect_literal, sample.incorrect
        )));
    }
    if sample.correct + sample.incorrect != sample_size {
        return Err(Error::Invalid(format!(
            "label counts sum to {}, expected sample_size {sample_size}",
            sample.correct + sample.incorrect
        )));
    }
    let parts = [
        sample.correct,
        sample.incorrect - sample.incorrect_literal,
        sample.incorrect_literal,
    ];
    let n = u128::from(sample_size);
    let mut scaled = [0u64; 3];
    let mut remainders = [0u128; 3];
    for i in 0..3 {
        let numerator = u128::from(parts[i]) * u128::from(stratum_size);
        scaled[i] = (numerator / n) as u64;
        remainders[i] = numerator % n;
    }
    let mut leftover = stratum_size - scaled.iter().sum::<u64>();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| remainders[b].cmp(&remainders[a]).then(a.cmp(&b)));
    for &i in &order {
        if leftover == 0 {
            break;
        }
        scaled[i] += 1;
        leftover -= 1;
    }
    Ok(LabelCounts {
        correct: scaled[0],
        incorrect: scaled[1] + scaled[2],
        incorrect_literal: scaled[2],
    })
}

/// Build confusion counts from an evaluated record set plus annotations.
///
/// Strata listed in `sampled` may be annotated on a subset of their records;
/// their counts are extrapolated to the stratum size and flagged as
/// estimates. Any other stratum must be annotated in full (or be empty).
pub fn confusion_from_annotations(
    records: &[TestRecord],
    annotations: &[Annotation],
    sampled: &[Stratum],
) -> Result<ConfusionCounts> {
    let mut by_id: HashMap<&str, bool> = HashMap::with_capacity(records.len());
    let mut stratum_sizes = [0u64; 2]; // [triggered, not triggered]
    for record in records {
        let verdict = record
            .trigger
            .as_ref()
            .ok_or_else(|| Error::MissingTrigger {
                record_id: record.id.clone(),
            })?;
        by_id.insert(record.id.as_str(), verdict.triggered());
        stratum_sizes[usize::from(!verdict.triggered())] += 1;
    }

    let mut counts = [LabelCounts::default(); 2];
    let mut sample_sizes = [0u64; 2];
    let mut seen: HashMap<&str, ()> = HashMap::with_capacity(annotations.len());
    for annotation in annotations {
        let triggered =
            *by_id
                .get(annotation.record_id.as_str())
                .ok_or_else(|| Error::UnknownRecord {
                    record_id: annotation.record_id.clone(),
                })?;
        if seen.insert(annotation.record_id.as_str(), ()).is_some() {
            return Err(Error::DuplicateAnnotation {
                record_id: annotation.record_id.clone(),
            });
        }
        let slot = &mut counts[usize::from(!triggered)];
        match annotation.label {
            Label::Correct => slot.correct += 1,
            Label::Incorrect => slot.incorrect += 1,
            Label::IncorrectLiteral => {
                slot.incorrect += 1;
                slot.incorrect_literal += 1;
            }
        }
        sample_sizes[usize::from(!triggered)] += 1;
    }

    let build = |stratum: Stratum, idx: usize| -> Result<StratumCounts> {
        let stratum_size = stratum_sizes[idx];
        let sample_size = sample_sizes[idx];
        if sample_size == stratum_size {
            return Ok(StratumCounts::census(counts[idx], stratum_size));
        }
        if !sampled.contains(&stratum) {
            return Err(Error::Invalid(format!(
                "{stratum} stratum has {sample_size} annotation(s) for {stratum_size} record(s); \
                 annotate it fully or mark it as sampled"
            )));
        }
        let estimated = extrapolate_stratum(counts[idx], sample_size, stratum_size)?;
        Ok(StratumCounts {
            correct: estimated.correct,
            incorrect: estimated.incorrect,
            incorrect_literal: estimated.incorrect_literal,
            stratum_size,
            sample_size,
            extrapolated: true,
        })
    };

    Ok(ConfusionCounts {
        triggered: build(Stratum::Triggered, 0)?,
        not_triggered: build(Stratum::NotTriggered, 1)?,
    })
}

/// Precision and recall of the detector.
///
/// Every triggered-incorrect record counts as a literal-error detection:
/// precision = triggered.incorrect / triggered total. recall_literal is
/// measured against all literal errors in both strata, recall_all_errors
/// against all incorrect translations in both strata.
pub fn detector_scores(confusion: &ConfusionCounts) -> DetectorScores {
    let ratio = |num: u64, den: u64| {
        if den > 0 {
            Some(num as f64 / den as f64)
        } else {
            None
        }
    };
    let triggered_total = confusion.triggered.correct + confusion.triggered.incorrect;
    DetectorScores {
        precision: ratio(confusion.triggered.incorrect, triggered_total),
        recall_literal: ratio(
            confusion.triggered.incorrect_literal,
            confusion.triggered.incorrect_literal + confusion.not_triggered.incorrect_literal,
        ),
        recall_all_errors: ratio(
            confusion.triggered.incorrect,
            confusion.triggered.incorrect + confusion.not_triggered.incorrect,
        ),
    }
}

/// Corpus BLEU-4 over (hypothesis, reference) sentence pairs.
///
/// Clipped n-gram matches are summed over the corpus per order; an order
/// with no hypothesis n-grams at all contributes a vacuous precision of 1,
/// so identity corpora score exactly 1 regardless of sentence lengths.
/// The score is 0 whenever any precision is 0.
pub fn corpus_bleu(pairs: &[(&str, &str)]) -> Result<BleuScore> {
    if pairs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut matched = [0u64; 4];
    let mut total = [0u64; 4];
    let mut hypothesis_length: u64 = 0;
    let mut reference_length: u64 = 0;
    for (hypothesis, reference) in pairs {
        let hyp = tokenize(hypothesis);
        let reference = tokenize(reference);
        hypothesis_length += hyp.len() as u64;
        reference_length += reference.len() as u64;
        for n in 1..=4usize {
            if hyp.len() < n {
                continue;
            }
            total[n - 1] += (hyp.len() - n + 1) as u64;
            let mut ref_counts: HashMap<&[String], u64> = HashMap::new();
            for gram in reference.windows(n) {
                *ref_counts.entry(gram).or_insert(0) += 1;
            }
            let mut hyp_counts: HashMap<&[String], u64> = HashMap::new();
            for gram in hyp.windows(n) {
                *hyp_counts.entry(gram).or_insert(0) += 1;
            }
            for (gram, count) in hyp_counts {
                let clip = ref_counts.get(gram).copied().unwrap_or(0);
                matched[n - 1] += count.min(clip);
            }
        }
    }
    let mut precisions = [0f64; 4];
    for n in 0..4 {
        precisions[n] = if total[n] == 0 {
            1.0
        } else {
            matched[n] as f64 / total[n] as f64
        };
    }
    let brevity_penalty = if hypothesis_length >= reference_length {
        1.0
    } else {
        (1.0 - reference_length as f64 / hypothesis_length as f64).exp()
    };
    let score = if precisions.contains(&0.0) {
        0.0
    } else {
        brevity_penalty * (precisions.iter().map(|p| p.ln()).sum::<f64>() / 4.0).exp()
    };
    Ok(BleuScore {
        score,
        brevity_penalty,
        precisions,
        hypothesis_length,
        reference_length,
    })
}

/// Corpus BLEU on the whole record set and on each trigger stratum.
/// Empty strata are absent from the result. Every record needs a
/// hypothesis, a reference, and a trigger result.
pub fn stratified_bleu(records: &[TestRecord]) -> Result<BTreeMap<Stratum, BleuScore>> {
    let missing_refs: Vec<String> = records
        .iter()
        .filter(|r| r.reference.is_none())
        .map(|r| r.id.clone())
        .collect();
    if !missing_refs.is_empty() {
        return Err(Error::MissingReferences(missing_refs));
    }
    let mut all = Vec::with_capacity(records.len());
    let mut triggered = Vec::new();
    let mut not_triggered = Vec::new();
    for record in records {
        let hypothesis = record
            .hypothesis
            .as_deref()
            .ok_or_else(|| Error::MissingHypothesis {
                record_id: record.id.clone(),
            })?;
        let reference = record.reference.as_deref().expect("checked above");
        let verdict = record
            .trigger
            .as_ref()
            .ok_or_else(|| Error::MissingTrigger {
                record_id: record.id.clone(),
            })?;
        all.push((hypothesis, reference));
        if verdict.triggered() {
            triggered.push((hypothesis, reference));
        } else {
            not_triggered.push((hypothesis, reference));
        }
    }
    let mut strata = BTreeMap::new();
    strata.insert(Stratum::All, corpus_bleu(&all)?);
    if !triggered.is_empty() {
        strata.insert(Stratum::Triggered, corpus_bleu(&triggered)?);
    }
    if !not_triggered.is_empty() {
        strata.insert(Stratum::NotTriggered, corpus_bleu(&not_triggered)?);
    }
    Ok(strata)
}
