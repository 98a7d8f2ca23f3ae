//! Blacklist-based evaluation of idiom translation in MT output.
//!
//! A blacklist pairs an idiom with the target-language words that would
//! appear in a word-by-word translation of it but must not appear in a
//! correct idiomatic one. A hypothesis *triggers* the blacklist when any
//! such word occurs as a token; the trigger rate over a test set scores the
//! MT system, and annotations of the triggered/untriggered strata score the
//! detector itself.
//!
//! The crate provides:
//!
//! * [`model`] - idioms, blacklists, test records, annotations;
//! * [`text`] - the tokenizer and raw-substring idiom matching;
//! * [`detector`] - the trigger rule over hypotheses and record sets;
//! * [`extraction`] - corpus frequency counting, idiom selection, and
//!   balanced test-set extraction with a per-idiom cap;
//! * [`metrics`] - trigger rates, sample extrapolation, detector
//!   precision/recall, and stratified corpus BLEU;
//! * [`formats`] - bit-stable readers and writers for every file format.

pub mod detector;
pub mod error;
pub mod extraction;
pub mod formats;
pub mod metrics;
pub mod model;
pub mod text;

pub use error::{Error, Result};
