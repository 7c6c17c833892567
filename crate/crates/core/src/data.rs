//! File schemas and ingestion: human response CSVs, LM response logs, and
//! the report files the analyses emit.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dist::ResponseDistribution;
use crate::error::{Error, Result};
use crate::metrics::{AccuracyReport, FallacyReport, NvcRates, OrderingEffect, ReasonerProfile};
use crate::syllogism::{Figure, Response, Syllogism};

/// One participant's answer to one syllogism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HumanResponseRecord {
    pub participant_id: String,
    pub syllogism: Syllogism,
    pub response: Response,
}

/// Reads `human.csv` (header `participant_id,syllogism_id,response_code`)
/// into per-syllogism count distributions. Each (participant, syllogism)
/// pair may occur at most once; malformed rows fail with their line number.
pub fn ingest_human(reader: impl BufRead, source: &str) -> Result<ReasonerProfile> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["participant_id", "syllogism_id", "response_code"] {
        return Err(Error::Schema {
            file: source.into(),
            line: 1,
            message: format!(
                "expected header participant_id,syllogism_id,response_code, got {headers:?}"
            ),
        });
    }
    let mut counts: BTreeMap<Syllogism, [u32; 9]> = BTreeMap::new();
    let mut seen: BTreeSet<(String, Syllogism)> = BTreeSet::new();
    let mut n_rows = 0u64;
    for (i, record) in rdr.records().enumerate() {
        let line = i as u64 + 2;
        let record = record?;
        let schema_err = |message: String| Error::Schema {
            file: source.into(),
            line,
            message,
        };
        if record.len() != 3 {
            return Err(schema_err(format!("expected 3 fields, got {}", record.len())));
        }
        let participant = record[0].trim().to_string();
        if participant.is_empty() {
            return Err(schema_err("empty participant_id".into()));
        }
        let syllogism: Syllogism = record[1]
            .trim()
            .parse()
            .map_err(|e| schema_err(format!("{e}")))?;
        let response: Response = record[2]
            .trim()
            .parse()
            .map_err(|e| schema_err(format!("{e}")))?;
        if !seen.insert((participant.clone(), syllogism)) {
            return Err(schema_err(format!(
                "duplicate response of participant {participant:?} to {syllogism}"
            )));
        }
        counts.entry(syllogism).or_insert([0; 9])[response.index()] += 1;
        n_rows += 1;
    }
    if n_rows == 0 {
        return Err(Error::Schema {
            file: source.into(),
            line: 1,
            message: "no data rows".into(),
        });
    }
    let mut profile = ReasonerProfile::new("human");
    for (s, c) in counts {
        profile.insert(ResponseDistribution::from_counts(s, c)?);
    }
    Ok(profile)
}

pub fn ingest_human_path(path: impl AsRef<Path>) -> Result<ReasonerProfile> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_human(std::io::BufReader::new(file), &path.display().to_string())
}

/// One sampled LM generation for one (syllogism, content triple) item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmResponseRecord {
    pub run_id: String,
    pub syllogism_id: String,
    pub triple_index: u32,
    pub sample_index: u32,
    pub raw_text: String,
    /// Response codes found in the text by exact-match parsing.
    pub parsed: Vec<Response>,
    /// Rejection-sampling flag: true exactly when `parsed` is nonempty.
    pub accepted: bool,
}

impl LmResponseRecord {
    fn validate(&self, line: u64, source: &str) -> Result<Syllogism> {
        if self.accepted != !self.parsed.is_empty() {
            return Err(Error::Schema {
                file: source.into(),
                line,
                message: format!(
                    "accepted={} disagrees with {} parsed responses",
                    self.accepted,
                    self.parsed.len()
                ),
            });
        }
        self.syllogism_id.parse().map_err(|_| Error::Schema {
            file: source.into(),
            line,
            message: format!("invalid syllogism id {:?}", self.syllogism_id),
        })
    }
}

/// How multi-conclusion samples are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Each accepted sample spreads weight 1/|parsed| over its matches.
    #[default]
    Fractional,
    /// One count per (syllogism, triple): the most frequently parsed
    /// response across that item's samples.
    ArgmaxPerItem,
}

/// Ingested LM log: the pooled profile plus per-item argmax answers and
/// the syllogisms with no accepted samples at all.
#[derive(Debug, Clone)]
pub struct LmIngest {
    pub profile: ReasonerProfile,
    /// Highest-weight response per (syllogism, triple_index).
    pub item_answers: BTreeMap<(Syllogism, u32), Response>,
    /// Syllogisms present in the log whose samples were all rejected.
    pub missing: Vec<Syllogism>,
}

/// Reads an `lm_log.jsonl` (one [`LmResponseRecord`] per line) into a
/// profile under the given counting mode.
pub fn ingest_lm_log(reader: impl BufRead, source: &str, mode: CountMode) -> Result<LmIngest> {
    let mut item_weights: BTreeMap<(Syllogism, u32), [f64; 9]> = BTreeMap::new();
    let mut seen_syllogisms: BTreeSet<Syllogism> = BTreeSet::new();
    let mut label: Option<String> = None;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i as u64 + 1;
        let line = line.map_err(|e| Error::io(source, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: LmResponseRecord = serde_json::from_str(&line).map_err(|e| Error::Schema {
            file: source.into(),
            line: lineno,
            message: format!("bad record: {e}"),
        })?;
        let syllogism = record.validate(lineno, source)?;
        seen_syllogisms.insert(syllogism);
        label.get_or_insert_with(|| record.run_id.clone());
        if !record.accepted {
            continue;
        }
        let weights = item_weights.entry((syllogism, record.triple_index)).or_insert([0.0; 9]);
        let share = 1.0 / record.parsed.len() as f64;
        for r in &record.parsed {
            weights[r.index()] += share;
        }
    }

    let mut item_answers = BTreeMap::new();
    for (key, weights) in &item_weights {
        let mut best = Response::Aac;
        let mut best_w = f64::NEG_INFINITY;
        for r in Response::ALL {
            if weights[r.index()] > best_w {
                best = r;
                best_w = weights[r.index()];
            }
        }
        item_answers.insert(*key, best);
    }

    let mut syllogism_weights: BTreeMap<Syllogism, [f64; 9]> = BTreeMap::new();
    let mut syllogism_n: BTreeMap<Syllogism, u32> = BTreeMap::new();
    match mode {
        CountMode::Fractional => {
            for ((s, _), weights) in &item_weights {
                let agg = syllogism_weights.entry(*s).or_insert([0.0; 9]);
                for (a, w) in agg.iter_mut().zip(weights) {
                    *a += w;
                }
                let total: f64 = weights.iter().sum();
                *syllogism_n.entry(*s).or_insert(0) += total.round() as u32;
            }
        }
        CountMode::ArgmaxPerItem => {
            for ((s, _), answer) in &item_answers {
                syllogism_weights.entry(*s).or_insert([0.0; 9])[answer.index()] += 1.0;
                *syllogism_n.entry(*s).or_insert(0) += 1;
            }
        }
    }

    let mut profile = ReasonerProfile::new(label.unwrap_or_else(|| "lm".into()));
    for (s, weights) in syllogism_weights {
        profile.insert(ResponseDistribution::from_weights(s, weights, syllogism_n[&s])?);
    }
    let missing = seen_syllogisms
        .into_iter()
        .filter(|s| profile.get(s).is_none())
        .collect();
    Ok(LmIngest {
        profile,
        item_answers,
        missing,
    })
}

pub fn ingest_lm_log_path(path: impl AsRef<Path>, mode: CountMode) -> Result<LmIngest> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_lm_log(std::io::BufReader::new(file), &path.display().to_string(), mode)
}

/// Writes one [`LmResponseRecord`] per line.
pub fn write_lm_log(records: &[LmResponseRecord], mut w: impl Write) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w).map_err(|e| Error::io("<writer>", e))?;
    }
    Ok(())
}

/// Writes a profile as CSV: `syllogism_id,n` then one probability column
/// per response code.
pub fn write_profile_csv(profile: &ReasonerProfile, mut w: impl Write) -> Result<()> {
    let io_err = |e| Error::io("<writer>", e);
    write!(w, "syllogism_id,n").map_err(io_err)?;
    for r in Response::ALL {
        write!(w, ",{}", r.code()).map_err(io_err)?;
    }
    writeln!(w).map_err(io_err)?;
    for (s, dist) in &profile.distributions {
        write!(w, "{},{}", s.id(), dist.n).map_err(io_err)?;
        for p in &dist.probs {
            write!(w, ",{p}").map_err(io_err)?;
        }
        writeln!(w).map_err(io_err)?;
    }
    Ok(())
}

/// Reads a profile CSV written by [`write_profile_csv`].
pub fn read_profile_csv(reader: impl BufRead, source: &str, label: impl Into<String>) -> Result<ReasonerProfile> {
    let mut rdr = csv::Reader::from_reader(reader);
    let expected: Vec<String> = ["syllogism_id", "n"]
        .iter()
        .map(|s| s.to_string())
        .chain(Response::ALL.iter().map(|r| r.code().to_string()))
        .collect();
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != expected.iter().map(|s| s.as_str()).collect::<Vec<_>>() {
        return Err(Error::Schema {
            file: source.into(),
            line: 1,
            message: format!("unexpected profile header {headers:?}"),
        });
    }
    let mut profile = ReasonerProfile::new(label);
    for (i, record) in rdr.records().enumerate() {
        let line = i as u64 + 2;
        let record = record?;
        let schema_err = |message: String| Error::Schema {
            file: source.into(),
            line,
            message,
        };
        let syllogism: Syllogism = record[0].trim().parse().map_err(|e| schema_err(format!("{e}")))?;
        let n: u32 = record[1]
            .trim()
            .parse()
            .map_err(|_| schema_err(format!("bad count {:?}", &record[1])))?;
        let mut probs = [0.0f64; 9];
        for (j, p) in probs.iter_mut().enumerate() {
            *p = record[j + 2]
                .trim()
                .parse()
                .map_err(|_| schema_err(format!("bad probability {:?}", &record[j + 2])))?;
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(schema_err(format!("probabilities sum to {sum}, not 1")));
        }
        profile.insert(ResponseDistribution {
            syllogism,
            probs,
            n,
        });
    }
    if profile.is_empty() {
        return Err(Error::Schema {
            file: source.into(),
            line: 1,
            message: "profile file has no rows".into(),
        });
    }
    Ok(profile)
}

/// Everything `analyze` computed for one profile.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileAnalysis {
    pub label: String,
    pub n_syllogisms: usize,
    pub accuracy_valid27: AccuracyReport,
    pub accuracy_nvc37: AccuracyReport,
    pub accuracy_all64: AccuracyReport,
    pub nvc_rates: NvcRates,
    pub ordering: BTreeMap<Figure, OrderingEffect>,
    pub fallacies: Option<FallacyReport>,
}

/// A pairwise statistic between two profiles.
#[derive(Debug, Clone, Serialize)]
pub struct PairwiseEntry {
    pub a: String,
    pub b: String,
    pub value: f64,
}

/// The full analysis report; serialized as `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    /// (valid, NVC-only) counts under the oracle in force.
    pub oracle_partition: (usize, usize),
    pub profiles: Vec<ProfileAnalysis>,
    /// Overall response-distribution correlations, one per profile pair.
    pub correlations: Vec<PairwiseEntry>,
    /// Correlations between fallacy residual vectors, one per profile pair.
    pub residual_correlations: Vec<PairwiseEntry>,
}

impl AnalysisReport {
    /// Long-format rows `(syllogism, measure, value, reasoner)` for
    /// plotting.
    pub fn long_rows(&self) -> Vec<(String, String, f64, String)> {
        let mut rows = Vec::new();
        for p in &self.profiles {
            for (s, v) in &p.accuracy_all64.per_syllogism {
                rows.push((s.id(), "accuracy".to_string(), *v, p.label.clone()));
            }
            if let Some(f) = &p.fallacies {
                for row in &f.rows {
                    rows.push((row.syllogism.id(), "entropy".to_string(), row.entropy, p.label.clone()));
                    rows.push((row.syllogism.id(), "residual".to_string(), row.residual, p.label.clone()));
                }
            }
        }
        rows
    }
}

/// Writes `report.json` plus the plot-ready `long.csv` into `dir`.
/// Deterministic field and row ordering throughout.
pub fn emit_report(report: &AnalysisReport, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let json_path = dir.join("report.json");
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(&json_path, json.as_bytes()).map_err(|e| Error::io(&json_path, e))?;

    let long_path = dir.join("long.csv");
    let mut out = String::from("syllogism,measure,value,reasoner\n");
    for (syllogism, measure, value, reasoner) in report.long_rows() {
        out.push_str(&format!("{syllogism},{measure},{value},{reasoner}\n"));
    }
    std::fs::write(&long_path, out.as_bytes()).map_err(|e| Error::io(&long_path, e))?;
    Ok(())
}
