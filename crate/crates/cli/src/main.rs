//! Batch evaluation of idiom translation in MT output.
//!
//! The pipeline is: `count-idioms` / `select-idioms` to pick an idiom list
//! by corpus frequency, `extract` to build a balanced test set from a
//! parallel corpus, an external MT system to translate the extracted source
//! sentences, `detect` to apply the blacklists to the hypotheses, and
//! `score` / `bleu` / `report` to turn the evaluated records into numbers.

mod manifest;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use idiomeval_core::detector::detect_all;
use idiomeval_core::extraction::{
    count_frequencies, extract_pairs, select_idioms, ExtractionConfig,
};
use idiomeval_core::formats::{
    read_annotations, read_frequency_tsv, read_idiom_list, read_idiom_universe, read_pairs_tsv,
    read_parallel_corpus, read_plain_lines, read_records, render_report_table, write_atomic,
    write_frequency_tsv, write_records, write_report_json,
};
use idiomeval_core::metrics::{
    confusion_from_annotations, detector_scores, stratified_bleu, trigger_rate_report, Stratum,
};
use idiomeval_core::model::{IdiomList, TestRecord};

use manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "idiomeval",
    version,
    about = "Blacklist-based evaluation of idiom translation in MT output"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count, per idiom, how many corpus sentences contain it
    CountIdioms {
        /// Source-language corpus, one sentence per line
        #[arg(long)]
        corpus: PathBuf,
        /// Candidate idioms, one per line (an idiom-list TSV also works)
        #[arg(long)]
        idioms: PathBuf,
        /// Output frequency TSV (idiom<TAB>count)
        #[arg(long)]
        out: PathBuf,
    },
    /// Keep idioms whose frequency falls inside an inclusive band
    SelectIdioms {
        /// Frequency TSV produced by count-idioms
        #[arg(long)]
        freq: PathBuf,
        #[arg(long, default_value_t = 7)]
        min_freq: u64,
        #[arg(long, default_value_t = 1000)]
        max_freq: u64,
        /// Output frequency TSV, selected idioms in descending frequency
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract a balanced test set from a parallel corpus
    Extract {
        /// Source side of a line-aligned corpus (requires --tgt)
        #[arg(long, requires = "tgt", conflicts_with = "pairs")]
        src: Option<PathBuf>,
        /// Target side of a line-aligned corpus
        #[arg(long, requires = "src")]
        tgt: Option<PathBuf>,
        /// Alternative single-file corpus: source<TAB>target per line
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// Idiom list TSV
        #[arg(long)]
        idioms: PathBuf,
        /// Per-idiom cap on extracted pairs
        #[arg(long, default_value_t = 40)]
        max_per_idiom: usize,
        /// Keep only idioms whose training frequency (idiom-list column 5,
        /// when present) is at least this
        #[arg(long, default_value_t = 7)]
        min_freq: u64,
        /// Upper bound of the training-frequency band
        #[arg(long, default_value_t = 1000)]
        max_freq: u64,
        /// Seed for the per-idiom sampling when a cap applies
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output records file
        #[arg(long)]
        out: PathBuf,
        /// Also write the extracted source sentences, one per line, in
        /// records order (the file to feed to the MT system)
        #[arg(long)]
        src_out: Option<PathBuf>,
    },
    /// Fill records with hypotheses and apply the blacklists
    Detect {
        /// Records file from extract
        #[arg(long)]
        records: PathBuf,
        /// MT output, one hypothesis per line, aligned with the records file
        #[arg(long)]
        hyp: PathBuf,
        /// Idiom list TSV
        #[arg(long)]
        idioms: PathBuf,
        /// Output evaluated records file
        #[arg(long)]
        out: PathBuf,
    },
    /// Score the detector against human annotations
    Score {
        /// Evaluated records file from detect
        #[arg(long)]
        records: PathBuf,
        /// Annotations TSV: record_id<TAB>label
        #[arg(long)]
        annotations: PathBuf,
        /// Mark a stratum as annotated only on a random sample; its counts
        /// are extrapolated to the stratum size (repeatable)
        #[arg(long = "sample-stratum", value_enum)]
        sample_stratum: Vec<StratumArg>,
        /// Output report JSON
        #[arg(long)]
        out: PathBuf,
    },
    /// Corpus BLEU stratified by trigger status
    Bleu {
        /// Evaluated records file with references
        #[arg(long)]
        records: PathBuf,
        /// Output report JSON
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-idiom table: blacklist, training frequency, records, trigger rate
    Report {
        /// Evaluated records file
        #[arg(long)]
        records: PathBuf,
        /// Idiom list TSV
        #[arg(long)]
        idioms: PathBuf,
        /// Output aligned-column table
        #[arg(long)]
        out: PathBuf,
        /// Optional machine-readable report JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StratumArg {
    Triggered,
    NotTriggered,
}

impl From<StratumArg> for Stratum {
    fn from(arg: StratumArg) -> Stratum {
        match arg {
            StratumArg::Triggered => Stratum::Triggered,
            StratumArg::NotTriggered => Stratum::NotTriggered,
        }
    }
}

fn main() {
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::CountIdioms { corpus, idioms, out } => cmd_count_idioms(corpus, idioms, out),
        Command::SelectIdioms {
            freq,
            min_freq,
            max_freq,
            out,
        } => cmd_select_idioms(freq, min_freq, max_freq, out),
        Command::Extract {
            src,
            tgt,
            pairs,
            idioms,
            max_per_idiom,
            min_freq,
            max_freq,
            seed,
            out,
            src_out,
        } => {
            let config = ExtractionConfig {
                max_per_idiom,
                min_freq,
                max_freq,
                seed,
            };
            cmd_extract(src, tgt, pairs, idioms, config, out, src_out)
        }
        Command::Detect {
            records,
            hyp,
            idioms,
            out,
        } => cmd_detect(records, hyp, idioms, out),
        Command::Score {
            records,
            annotations,
            sample_stratum,
            out,
        } => cmd_score(records, annotations, sample_stratum, out),
        Command::Bleu { records, out } => cmd_bleu(records, out),
        Command::Report {
            records,
            idioms,
            out,
            json,
        } => cmd_report(records, idioms, out, json),
    }
}

fn read_records_ctx(path: &Path) -> Result<Vec<TestRecord>> {
    read_records(path).with_context(|| format!("in {}", path.display()))
}

fn read_idiom_list_ctx(path: &Path) -> Result<IdiomList> {
    read_idiom_list(path).with_context(|| format!("in {}", path.display()))
}

fn cmd_count_idioms(corpus: PathBuf, idioms: PathBuf, out: PathBuf) -> Result<()> {
    let universe =
        read_idiom_universe(&idioms).with_context(|| format!("in {}", idioms.display()))?;
    let sentences = read_plain_lines(&corpus)?;
    let table = count_frequencies(&sentences, &universe)?;
    write_frequency_tsv(&out, &table)?;
    RunManifest::new("count-idioms")
        .input("corpus", &corpus)
        .input("idioms", &idioms)
        .output("out", &out)
        .write_next_to(&out)?;
    println!(
        "counted {} idiom(s) over {} sentence(s) -> {}",
        table.len(),
        sentences.len(),
        out.display()
    );
    Ok(())
}

fn cmd_select_idioms(freq: PathBuf, min_freq: u64, max_freq: u64, out: PathBuf) -> Result<()> {
    let table = read_frequency_tsv(&freq).with_context(|| format!("in {}", freq.display()))?;
    let config = ExtractionConfig {
        min_freq,
        max_freq,
        ..ExtractionConfig::default()
    };
    config.validate()?;
    let selected = select_idioms(&table, &config);
    let mut text = String::new();
    for idiom in &selected {
        let count = table.get(idiom).unwrap_or(0);
        text.push_str(&format!("{idiom}\t{count}\n"));
    }
    write_atomic(&out, &text)?;
    RunManifest::new("select-idioms")
        .input("freq", &freq)
        .output("out", &out)
        .config(&config)
        .write_next_to(&out)?;
    println!(
        "selected {} of {} idiom(s) with frequency in {min_freq}..={max_freq} -> {}",
        selected.len(),
        table.len(),
        out.display()
    );
    Ok(())
}

fn cmd_extract(
    src: Option<PathBuf>,
    tgt: Option<PathBuf>,
    pairs: Option<PathBuf>,
    idioms: PathBuf,
    config: ExtractionConfig,
    out: PathBuf,
    src_out: Option<PathBuf>,
) -> Result<()> {
    let corpus = match (&src, &tgt, &pairs) {
        (Some(src), Some(tgt), None) => read_parallel_corpus(src, tgt)?,
        (None, None, Some(pairs)) => {
            read_pairs_tsv(pairs).with_context(|| format!("in {}", pairs.display()))?
        }
        _ => bail!("pass either --src and --tgt, or --pairs"),
    };
    let list = read_idiom_list_ctx(&idioms)?;
    // the frequency band applies to the list's training-frequency column;
    // entries without a known frequency always pass
    let banded: Vec<_> = list
        .entries()
        .iter()
        .filter(|e| match e.training_frequency() {
            Some(f) => f >= config.min_freq && f <= config.max_freq,
            None => true,
        })
        .cloned()
        .collect();
    let banded = IdiomList::new(banded).expect("subset of a valid list");
    let records = extract_pairs(&corpus, &banded, &config)?;
    write_records(&out, &records)?;
    if let Some(src_out) = &src_out {
        let mut text = String::new();
        for record in &records {
            text.push_str(&record.source);
            text.push('\n');
        }
        write_atomic(src_out, &text)?;
    }
    let idiom_count = records
        .iter()
        .map(|r| r.idiom.as_str())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    RunManifest::new("extract")
        .input_opt("src", src.as_ref())
        .input_opt("tgt", tgt.as_ref())
        .input_opt("pairs", pairs.as_ref())
        .input("idioms", &idioms)
        .output("out", &out)
        .output_opt("src_out", src_out.as_ref())
        .config(&config)
        .write_next_to(&out)?;
    println!(
        "extracted {} record(s) across {idiom_count} idiom(s) -> {}",
        records.len(),
        out.display()
    );
    Ok(())
}

fn cmd_detect(records: PathBuf, hyp: PathBuf, idioms: PathBuf, out: PathBuf) -> Result<()> {
    let record_set = read_records_ctx(&records)?;
    let hypotheses = read_plain_lines(&hyp)?;
    if hypotheses.len() != record_set.len() {
        bail!(
            "line counts differ: {} has {} record(s), {} has {} line(s)",
            records.display(),
            record_set.len(),
            hyp.display(),
            hypotheses.len()
        );
    }
    let list = read_idiom_list_ctx(&idioms)?;
    let filled: Vec<TestRecord> = record_set
        .into_iter()
        .zip(hypotheses)
        .map(|(mut record, hypothesis)| {
            record.hypothesis = Some(hypothesis);
            record
        })
        .collect();
    let evaluated = detect_all(filled, &list)?;
    let report = trigger_rate_report(&evaluated)?;
    write_records(&out, &evaluated)?;
    RunManifest::new("detect")
        .input("records", &records)
        .input("hyp", &hyp)
        .input("idioms", &idioms)
        .output("out", &out)
        .write_next_to(&out)?;
    println!(
        "evaluated {} record(s): {} triggered, trigger rate {:.3}",
        report.total_records, report.triggered_count, report.trigger_rate
    );
    Ok(())
}

fn format_opt(value: Option<f64>) -> String {
    value.map_or_else(|| "n/a".to_string(), |v| format!("{v:.3}"))
}

fn cmd_score(
    records: PathBuf,
    annotations: PathBuf,
    sample_stratum: Vec<StratumArg>,
    out: PathBuf,
) -> Result<()> {
    let record_set = read_records_ctx(&records)?;
    let annotation_set =
        read_annotations(&annotations).with_context(|| format!("in {}", annotations.display()))?;
    let sampled: Vec<Stratum> = sample_stratum.iter().copied().map(Stratum::from).collect();
    let confusion = confusion_from_annotations(&record_set, &annotation_set, &sampled)?;
    let scores = detector_scores(&confusion);
    let mut report = trigger_rate_report(&record_set)?;
    report.confusion = Some(confusion);
    report.precision = scores.precision;
    report.recall_literal = scores.recall_literal;
    report.recall_all_errors = scores.recall_all_errors;
    write_report_json(&out, &report)?;
    RunManifest::new("score")
        .input("records", &records)
        .input("annotations", &annotations)
        .output("out", &out)
        .write_next_to(&out)?;
    for (name, counts) in [
        ("triggered", &confusion.triggered),
        ("not_triggered", &confusion.not_triggered),
    ] {
        let how = if counts.extrapolated {
            format!("estimated from a sample of {}", counts.sample_size)
        } else {
            "census".to_string()
        };
        println!(
            "{name}: {} correct, {} incorrect ({} literal) of {} ({how})",
            counts.correct, counts.incorrect, counts.incorrect_literal, counts.stratum_size
        );
    }
    println!("precision:         {}", format_opt(scores.precision));
    println!("recall (literal):  {}", format_opt(scores.recall_literal));
    println!("recall (all):      {}", format_opt(scores.recall_all_errors));
    println!("report -> {}", out.display());
    Ok(())
}

fn cmd_bleu(records: PathBuf, out: PathBuf) -> Result<()> {
    let record_set = read_records_ctx(&records)?;
    let strata = stratified_bleu(&record_set)?;
    let mut report = trigger_rate_report(&record_set)?;
    report.bleu_strata = Some(strata.clone());
    write_report_json(&out, &report)?;
    RunManifest::new("bleu")
        .input("records", &records)
        .output("out", &out)
        .write_next_to(&out)?;
    for stratum in [Stratum::All, Stratum::Triggered, Stratum::NotTriggered] {
        match strata.get(&stratum) {
            Some(bleu) => println!("BLEU {stratum}: {:.4} (BP {:.3})", bleu.score, bleu.brevity_penalty),
            None => println!("BLEU {stratum}: n/a"),
        }
    }
    println!("report -> {}", out.display());
    Ok(())
}

fn cmd_report(
    records: PathBuf,
    idioms: PathBuf,
    out: PathBuf,
    json: Option<PathBuf>,
) -> Result<()> {
    let record_set = read_records_ctx(&records)?;
    let list = read_idiom_list_ctx(&idioms)?;
    let report = trigger_rate_report(&record_set)?;
    let table = render_report_table(&report, &list)?;
    write_atomic(&out, &table)?;
    if let Some(json_path) = &json {
        write_report_json(json_path, &report)?;
    }
    RunManifest::new("report")
        .input("records", &records)
        .input("idioms", &idioms)
        .output("out", &out)
        .output_opt("json", json.as_ref())
        .write_next_to(&out)?;
    println!(
        "overall: {} records, {} triggered, trigger rate {:.3}",
        report.total_records, report.triggered_count, report.trigger_rate
    );
    println!("table -> {}", out.display());
    Ok(())
}
