//! Parameter-grid sweeps and the behavior space they span.
//!
//! A reasoner's behavior is summarized as a 216-dimensional vector: for
//! each of the 27 syllogisms with quantified valid conclusions, the
//! probability of each of the eight quantified responses (NVC mass is
//! excluded and not renormalized). Sweeping the parameter grid produces one
//! vector per completed grid point; PCA over those vectors gives the
//! low-dimensional space into which humans and LMs are projected.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::dist::ResponseDistribution;
use crate::error::{Error, Result};
use crate::mental::{IndividualSets, Reasoner, ReasonerParams, DEFAULT_MAX_ATTEMPTS};
use crate::oracle::OracleTable;
use crate::pca::Pca;
use crate::seeding;
use crate::stats;
use crate::syllogism::{Response, Syllogism};

/// Dimension of a behavior vector: 27 syllogisms x 8 quantified responses.
pub const BEHAVIOR_DIM: usize = 216;

/// Default per-point work budget; generous enough that the default grid
/// completes everywhere, while keeping sweeps deterministically bounded.
pub const DEFAULT_WORK_CAP: u64 = 10_000_000;

/// Value lists for the four parameters; the cross product is swept.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct ParameterGrid {
    pub len: Vec<f64>,
    pub broad: Vec<f64>,
    pub systm2: Vec<f64>,
    pub weaken: Vec<f64>,
}

impl Default for ParameterGrid {
    /// The 6 x 6 x 6 x 6 = 1296-point default grid.
    fn default() -> Self {
        let unit = vec![0.0, 0.2, 0.4, 0.6, 0.8, 0.9];
        ParameterGrid {
            len: vec![2.0, 2.5, 3.0, 3.5, 4.0, 4.5],
            broad: unit.clone(),
            systm2: unit.clone(),
            weaken: unit,
        }
    }
}

impl ParameterGrid {
    pub fn size(&self) -> usize {
        self.len.len() * self.broad.len() * self.systm2.len() * self.weaken.len()
    }

    /// Grid points in a fixed order (len outermost, weaken innermost).
    pub fn points(&self) -> Result<Vec<ReasonerParams>> {
        let mut out = Vec::with_capacity(self.size());
        for &len in &self.len {
            for &broad in &self.broad {
                for &systm2 in &self.systm2 {
                    for &weaken in &self.weaken {
                        out.push(ReasonerParams::new(len, broad, systm2, weaken)?);
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidParameter("empty parameter grid".into()));
        }
        Ok(out)
    }
}

/// A point in behavior space with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct BehaviorVector {
    /// 216 response probabilities, blocks of 8 per valid syllogism in
    /// enumeration order (see [`behavior_columns`]).
    pub values: Vec<f64>,
    /// Grid point, human, or LM run identifier.
    pub label: String,
    /// The grid parameters, for sweep-produced vectors.
    pub params: Option<ReasonerParams>,
    /// Mean valid-conclusion mass over the vector's syllogism blocks;
    /// always derived from `values`, so controlled vectors carry 0.
    pub accuracy: f64,
}

/// Column labels for the 216 entries, `<syllogism>_<response>`.
pub fn behavior_columns(oracle: &OracleTable) -> Vec<String> {
    let mut out = Vec::with_capacity(BEHAVIOR_DIM);
    for s in oracle.valid_syllogisms() {
        for r in Response::QUANTIFIED {
            out.push(format!("{}_{}", s.id(), r.code()));
        }
    }
    out
}

/// Assembles a behavior vector from per-syllogism distributions; all 27
/// valid syllogisms must be present.
pub fn behavior_vector(
    label: impl Into<String>,
    distributions: &BTreeMap<Syllogism, ResponseDistribution>,
    oracle: &OracleTable,
) -> Result<BehaviorVector> {
    let mut values = Vec::with_capacity(BEHAVIOR_DIM);
    let mut accuracy_sum = 0.0;
    let valid = oracle.valid_syllogisms();
    for s in &valid {
        let dist = distributions.get(s).ok_or_else(|| {
            Error::MissingData(format!("no distribution for valid syllogism {s}"))
        })?;
        values.extend_from_slice(&dist.quantified_block());
        accuracy_sum += dist.mass_on(oracle.valid(s));
    }
    Ok(BehaviorVector {
        values,
        label: label.into(),
        params: None,
        accuracy: accuracy_sum / valid.len() as f64,
    })
}

/// Accuracy read directly off a behavior vector: mean over syllogism
/// blocks of the mass on valid responses.
pub fn vector_accuracy(values: &[f64], oracle: &OracleTable) -> f64 {
    let valid = oracle.valid_syllogisms();
    debug_assert_eq!(values.len(), valid.len() * 8);
    let mut sum = 0.0;
    for (block, s) in values.chunks_exact(8).zip(&valid) {
        for (i, r) in Response::QUANTIFIED.iter().enumerate() {
            if oracle.is_valid(s, *r) {
                sum += block[i];
            }
        }
    }
    sum / valid.len() as f64
}

/// Sweep configuration.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_runs: u32,
    pub seed: u64,
    /// Deterministic per-point work budget; points that exhaust it are
    /// dropped (and reported), not failed.
    pub work_cap: u64,
    pub max_attempts: usize,
    pub sets: IndividualSets,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_runs: 100,
            seed: 0,
            work_cap: DEFAULT_WORK_CAP,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            sets: IndividualSets::default(),
        }
    }
}

/// A grid point whose work budget ran out.
#[derive(Debug, Clone, Serialize)]
pub struct DroppedPoint {
    pub params: ReasonerParams,
    /// Index of the point in grid order.
    pub index: usize,
}

/// Result of a sweep: one vector per completed grid point plus the dropped
/// points, both in grid order.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub vectors: Vec<BehaviorVector>,
    pub dropped: Vec<DroppedPoint>,
}

/// Evaluates every grid point: `n_runs` responses per valid syllogism,
/// with per-(point, syllogism) derived seeds so results do not depend on
/// scheduling. Points are processed in parallel.
pub fn sweep(grid: &ParameterGrid, config: &SweepConfig, oracle: &OracleTable) -> Result<SweepOutcome> {
    let points = grid.points()?;
    let valid = oracle.valid_syllogisms();

    let per_point: Vec<std::result::Result<BehaviorVector, DroppedPoint>> = points
        .par_iter()
        .enumerate()
        .map(|(point_idx, &params)| {
            let reasoner = Reasoner::new(params)
                .with_sets(config.sets.clone())
                .with_max_attempts(config.max_attempts);
            let mut budget = config.work_cap;
            let mut dists: BTreeMap<Syllogism, ResponseDistribution> = BTreeMap::new();
            for (syll_idx, s) in valid.iter().enumerate() {
                let seed = seeding::derive_seed(config.seed, &[point_idx as u64, syll_idx as u64]);
                match reasoner.response_distribution_budgeted(s, config.n_runs, seed, &mut budget) {
                    Some(dist) => {
                        dists.insert(*s, dist);
                    }
                    None => {
                        return Err(DroppedPoint {
                            params,
                            index: point_idx,
                        })
                    }
                }
            }
            let mut vector = behavior_vector(grid_label(&params), &dists, oracle)
                .expect("sweep covers all valid syllogisms");
            vector.params = Some(params);
            Ok(vector)
        })
        .collect();

    let mut vectors = Vec::new();
    let mut dropped = Vec::new();
    for r in per_point {
        match r {
            Ok(v) => vectors.push(v),
            Err(d) => dropped.push(d),
        }
    }
    Ok(SweepOutcome { vectors, dropped })
}

fn grid_label(p: &ReasonerParams) -> String {
    format!("grid:len={},broad={},systm2={},weaken={}", p.len, p.broad, p.systm2, p.weaken)
}

/// Histogram of per-parameter values among dropped points, for checking
/// that drops do not systematically favor parameter regions.
pub fn dropped_histograms(dropped: &[DroppedPoint]) -> BTreeMap<&'static str, BTreeMap<String, usize>> {
    let mut out: BTreeMap<&'static str, BTreeMap<String, usize>> = BTreeMap::new();
    for d in dropped {
        for (name, value) in [
            ("len", d.params.len),
            ("broad", d.params.broad),
            ("systm2", d.params.systm2),
            ("weaken", d.params.weaken),
        ] {
            *out.entry(name).or_default().entry(format!("{value}")).or_insert(0) += 1;
        }
    }
    out
}

/// Pearson correlations of one principal component's coordinates with the
/// grid parameters and with accuracy, over the fitted vectors. `None` when
/// the statistic is undefined (no grid vectors, or zero variance).
#[derive(Debug, Clone, Serialize)]
pub struct ComponentCorrelations {
    pub len: Option<f64>,
    pub broad: Option<f64>,
    pub systm2: Option<f64>,
    pub weaken: Option<f64>,
    pub accuracy: Option<f64>,
}

impl ComponentCorrelations {
    /// The parameter with the largest absolute correlation.
    fn dominant(&self) -> Option<(&'static str, f64)> {
        [
            ("len", self.len),
            ("broad", self.broad),
            ("systm2", self.systm2),
            ("weaken", self.weaken),
        ]
        .into_iter()
        .filter_map(|(n, r)| r.map(|r| (n, r)))
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).expect("finite correlations"))
    }
}

/// A fitted behavior-space PCA with diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct PcaSpace {
    pub mean: Vec<f64>,
    /// Component directions, rows of length 216.
    pub components: Vec<Vec<f64>>,
    pub explained_variance_ratio: Vec<f64>,
    pub correlations: Vec<ComponentCorrelations>,
    pub n_vectors: usize,
}

impl PcaSpace {
    /// Coordinates of a behavior vector in the component basis.
    pub fn project(&self, v: &BehaviorVector) -> Vec<f64> {
        self.project_values(&v.values)
    }

    pub fn project_values(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), self.mean.len(), "projection dimension mismatch");
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .zip(values.iter().zip(&self.mean))
                    .map(|(&ci, (&xi, &mi))| ci * (xi - mi))
                    .sum()
            })
            .collect()
    }
}

/// Fits a `k`-component PCA to behavior vectors and orients each component
/// so its strongest parameter correlation is positive.
pub fn fit_pca(vectors: &[BehaviorVector], k: usize) -> Result<PcaSpace> {
    let data: Vec<Vec<f64>> = vectors.iter().map(|v| v.values.clone()).collect();
    let mut pca: Pca<f64> = Pca::fit(&data, k)?;

    let mut correlations = Vec::with_capacity(k);
    for comp in 0..k {
        let corrs = component_correlations(&pca, comp, vectors);
        if let Some((_, r)) = corrs.dominant() {
            if r < 0.0 {
                pca.flip_component(comp);
                correlations.push(component_correlations(&pca, comp, vectors));
                continue;
            }
        }
        correlations.push(corrs);
    }

    Ok(PcaSpace {
        mean: pca.mean.clone(),
        components: pca.components.clone(),
        explained_variance_ratio: pca.explained_variance_ratio.clone(),
        correlations,
        n_vectors: vectors.len(),
    })
}

fn component_correlations(pca: &Pca<f64>, comp: usize, vectors: &[BehaviorVector]) -> ComponentCorrelations {
    let grid: Vec<(&BehaviorVector, f64)> = vectors
        .iter()
        .filter(|v| v.params.is_some())
        .map(|v| (v, pca.project(&v.values)[comp]))
        .collect();
    let coords: Vec<f64> = grid.iter().map(|(_, c)| *c).collect();
    let corr_with = |xs: Vec<f64>| stats::pearson(&xs, &coords).ok();
    ComponentCorrelations {
        len: corr_with(grid.iter().map(|(v, _)| v.params.unwrap().len).collect()),
        broad: corr_with(grid.iter().map(|(v, _)| v.params.unwrap().broad).collect()),
        systm2: corr_with(grid.iter().map(|(v, _)| v.params.unwrap().systm2).collect()),
        weaken: corr_with(grid.iter().map(|(v, _)| v.params.unwrap().weaken).collect()),
        accuracy: corr_with(grid.iter().map(|(v, _)| v.accuracy).collect()),
    }
}

/// The error-only control: zeroes every oracle-valid entry of each
/// syllogism block and rescales the rest back to the block's original
/// (NVC-excluded) mass. Blocks with nothing left stay all-zero. Label and
/// parameters are preserved; the accuracy of every controlled vector is 0
/// by construction.
pub fn zero_correct_control(v: &BehaviorVector, oracle: &OracleTable) -> BehaviorVector {
    let valid = oracle.valid_syllogisms();
    let mut values = v.values.clone();
    for (block_idx, s) in valid.iter().enumerate() {
        let block = &mut values[block_idx * 8..(block_idx + 1) * 8];
        let before: f64 = block.iter().sum();
        for (i, r) in Response::QUANTIFIED.iter().enumerate() {
            if oracle.is_valid(s, *r) {
                block[i] = 0.0;
            }
        }
        let after: f64 = block.iter().sum();
        if after > 0.0 {
            let scale = before / after;
            for x in block.iter_mut() {
                *x *= scale;
            }
        }
    }
    let accuracy = vector_accuracy(&values, oracle);
    BehaviorVector {
        values,
        label: v.label.clone(),
        params: v.params,
        accuracy,
    }
}

/// Writes sweep vectors as CSV: `len,broad,systm2,weaken` then the 216
/// response-probability columns.
pub fn write_sweep_csv(vectors: &[BehaviorVector], oracle: &OracleTable, mut w: impl Write) -> Result<()> {
    let io_err = |e| Error::io("<writer>", e);
    write!(w, "len,broad,systm2,weaken").map_err(io_err)?;
    for col in behavior_columns(oracle) {
        write!(w, ",{col}").map_err(io_err)?;
    }
    writeln!(w).map_err(io_err)?;
    for v in vectors {
        let p = v.params.ok_or_else(|| {
            Error::InvalidParameter(format!("vector {} has no grid parameters", v.label))
        })?;
        write!(w, "{},{},{},{}", p.len, p.broad, p.systm2, p.weaken).map_err(io_err)?;
        for x in &v.values {
            write!(w, ",{x}").map_err(io_err)?;
        }
        writeln!(w).map_err(io_err)?;
    }
    Ok(())
}

/// Reads sweep vectors back; accuracy is recomputed from the values.
pub fn read_sweep_csv(r: impl BufRead, oracle: &OracleTable) -> Result<Vec<BehaviorVector>> {
    let mut rdr = csv::Reader::from_reader(r);
    let expected: Vec<String> = ["len", "broad", "systm2", "weaken"]
        .iter()
        .map(|s| s.to_string())
        .chain(behavior_columns(oracle))
        .collect();
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != expected.iter().map(|s| s.as_str()).collect::<Vec<_>>() {
        return Err(Error::Parse("sweep csv header does not match the behavior-space layout".into()));
    }
    let mut out = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let field = |j: usize| -> Result<f64> {
            record[j].parse().map_err(|_| Error::Schema {
                file: "sweep csv".into(),
                line: i as u64 + 2,
                message: format!("bad float {:?}", &record[j]),
            })
        };
        let params = ReasonerParams::new(field(0)?, field(1)?, field(2)?, field(3)?)?;
        let mut values = Vec::with_capacity(BEHAVIOR_DIM);
        for j in 4..4 + BEHAVIOR_DIM {
            values.push(field(j)?);
        }
        let accuracy = vector_accuracy(&values, oracle);
        out.push(BehaviorVector {
            values,
            label: grid_label(&params),
            params: Some(params),
            accuracy,
        });
    }
    Ok(out)
}
