//! Subcommand execution.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};

use syllo::behavior::{self, ParameterGrid, SweepConfig};
use syllo::data::{self, CountMode};
use syllo::harness::{
    self, run_binary, run_generative, run_multiple_choice, CompletionClient, EndpointClient,
    HttpTransport, Method, PromptSpec, PromptVariant, SamplingConfig,
};
use syllo::mental::{IndividualSets, Reasoner, ReasonerParams};
use syllo::metrics::{self, ReasonerProfile, Scope};
use syllo::oracle::{OracleTable, Semantics};
use syllo::syllogism::{enumerate_syllogisms, ContentTriple, Response, Syllogism};

use crate::args::{
    parse_named, AnalyzeArgs, Command, HarnessArgs, OracleArgs, PcaArgs, RerunArgs, SimulateArgs,
    SweepArgs,
};
use crate::manifest::Manifest;

pub fn dispatch(command: &Command) -> anyhow::Result<()> {
    match command {
        Command::Oracle(args) => cmd_oracle(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Pca(args) => cmd_pca(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Harness(args) => cmd_harness(args),
        Command::Rerun(args) => cmd_rerun(args),
    }
}

fn write_file(path: &Path, contents: &[u8]) -> anyhow::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn parse_syllogisms(ids: &[String]) -> anyhow::Result<Vec<Syllogism>> {
    if ids.is_empty() {
        return Ok(enumerate_syllogisms());
    }
    ids.iter()
        .map(|id| id.parse::<Syllogism>().map_err(Into::into))
        .collect()
}

fn load_sets(path: &Option<PathBuf>) -> anyhow::Result<IndividualSets> {
    match path {
        Some(p) => Ok(IndividualSets::load(p)?),
        None => Ok(IndividualSets::default()),
    }
}

pub fn cmd_oracle(args: &OracleArgs) -> anyhow::Result<()> {
    let sem = if args.no_import {
        Semantics::CLASSICAL
    } else {
        Semantics::default()
    };
    let table = OracleTable::new(sem);

    if let Some(id) = &args.syllogism {
        let s: Syllogism = id.parse()?;
        let codes: Vec<&str> = table.valid(&s).iter().map(|r| r.code()).collect();
        println!("{}: {}", s.id(), codes.join(" "));
    }

    let mut csv = Vec::new();
    table.write_csv(&mut csv)?;
    write_file(&args.out.join("valid-conclusions.csv"), &csv)?;
    Manifest::new(&Command::Oracle(args.clone())).write(&args.out)?;

    let (n_valid, n_nvc) = table.partition_counts();
    println!("{n_valid} valid / {n_nvc} NVC");
    Ok(())
}

#[derive(Debug, Default, serde::Deserialize)]
struct ParamsFile {
    len: Option<f64>,
    broad: Option<f64>,
    systm2: Option<f64>,
    weaken: Option<f64>,
}

pub fn cmd_simulate(args: &SimulateArgs) -> anyhow::Result<()> {
    let file: ParamsFile = match &args.params {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading params {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing params {}", p.display()))?
        }
        None => ParamsFile::default(),
    };
    let params = ReasonerParams::new(
        file.len.unwrap_or(args.len),
        file.broad.unwrap_or(args.broad),
        file.systm2.unwrap_or(args.systm2),
        file.weaken.unwrap_or(args.weaken),
    )?;
    let reasoner = Reasoner::new(params)
        .with_sets(load_sets(&args.sets)?)
        .with_max_attempts(args.max_attempts);

    let mut profile = ReasonerProfile::new(args.label.clone());
    for (idx, s) in enumerate_syllogisms().into_iter().enumerate() {
        if !args.syllogisms.is_empty() && !args.syllogisms.iter().any(|id| id == &s.id()) {
            continue;
        }
        let seed = syllo::seeding::derive_seed(args.seed, &[idx as u64]);
        profile.insert(reasoner.response_distribution(&s, args.runs, seed));
    }
    if profile.is_empty() {
        bail!("no syllogisms selected");
    }

    let mut csv = Vec::new();
    data::write_profile_csv(&profile, &mut csv)?;
    write_file(&args.out.join("profile.csv"), &csv)?;
    Manifest::new(&Command::Simulate(args.clone())).write(&args.out)?;
    println!(
        "simulated {} syllogisms x {} runs at len={} broad={} systm2={} weaken={}",
        profile.len(),
        args.runs,
        params.len,
        params.broad,
        params.systm2,
        params.weaken
    );
    Ok(())
}

fn load_grid(path: &Option<PathBuf>) -> anyhow::Result<ParameterGrid> {
    match path {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading grid {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing grid {}", p.display()))
        }
        None => Ok(ParameterGrid::default()),
    }
}

pub fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<()> {
    let grid = load_grid(&args.grid)?;
    let oracle = OracleTable::default();
    let config = SweepConfig {
        n_runs: args.runs,
        seed: args.seed,
        work_cap: args.work_cap,
        max_attempts: args.max_attempts,
        sets: load_sets(&args.sets)?,
    };
    let outcome = behavior::sweep(&grid, &config, &oracle)?;

    let mut csv = Vec::new();
    behavior::write_sweep_csv(&outcome.vectors, &oracle, &mut csv)?;
    write_file(&args.out.join("sweep.csv"), &csv)?;

    let mut dropped = String::from("index,len,broad,systm2,weaken\n");
    for d in &outcome.dropped {
        dropped.push_str(&format!(
            "{},{},{},{},{}\n",
            d.index, d.params.len, d.params.broad, d.params.systm2, d.params.weaken
        ));
    }
    write_file(&args.out.join("dropped.csv"), dropped.as_bytes())?;

    let mut hist = String::from("parameter,value,count\n");
    for (param, values) in behavior::dropped_histograms(&outcome.dropped) {
        for (value, count) in values {
            hist.push_str(&format!("{param},{value},{count}\n"));
        }
    }
    write_file(&args.out.join("dropped-histograms.csv"), hist.as_bytes())?;

    Manifest::new(&Command::Sweep(args.clone())).write(&args.out)?;
    println!(
        "swept {} of {} grid points ({} dropped by the work cap)",
        outcome.vectors.len(),
        grid.size(),
        outcome.dropped.len()
    );
    Ok(())
}

pub fn cmd_pca(args: &PcaArgs) -> anyhow::Result<()> {
    let oracle = OracleTable::default();
    let file = std::fs::File::open(&args.sweep)
        .with_context(|| format!("opening sweep {}", args.sweep.display()))?;
    let mut vectors = behavior::read_sweep_csv(std::io::BufReader::new(file), &oracle)?;
    if args.zero_correct {
        vectors = vectors
            .iter()
            .map(|v| behavior::zero_correct_control(v, &oracle))
            .collect();
    }
    let space = behavior::fit_pca(&vectors, args.components)?;

    let json = serde_json::json!({
        "n_components": args.components,
        "zero_correct": args.zero_correct,
        "n_vectors": space.n_vectors,
        "explained_variance_ratio": space.explained_variance_ratio,
        "correlations": space.correlations,
        "mean": space.mean,
        "components": space.components,
    });
    write_file(
        &args.out.join("pca.json"),
        serde_json::to_string_pretty(&json)?.as_bytes(),
    )?;

    if !args.project.is_empty() {
        let mut rows = String::from("name");
        for i in 0..args.components {
            rows.push_str(&format!(",pc{}", i + 1));
        }
        rows.push('\n');
        for named in &args.project {
            let (name, path) = parse_named(named)?;
            let file = std::fs::File::open(&path)
                .with_context(|| format!("opening profile {}", path.display()))?;
            let profile = data::read_profile_csv(
                std::io::BufReader::new(file),
                &path.display().to_string(),
                name.clone(),
            )?;
            let vector = behavior::behavior_vector(name.clone(), &profile.distributions, &oracle)?;
            let coords = space.project(&vector);
            rows.push_str(&name);
            for c in coords {
                rows.push_str(&format!(",{c}"));
            }
            rows.push('\n');
        }
        write_file(&args.out.join("projections.csv"), rows.as_bytes())?;
    }

    Manifest::new(&Command::Pca(args.clone())).write(&args.out)?;
    let pc1 = space.explained_variance_ratio.first().copied().unwrap_or(0.0);
    println!(
        "fitted {} components over {} vectors; PC1 explains {:.1}% of variance",
        args.components,
        space.n_vectors,
        100.0 * pc1
    );
    Ok(())
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> anyhow::Result<()> {
    let oracle = OracleTable::default();
    let count_mode = match args.count_mode.as_str() {
        "fractional" => CountMode::Fractional,
        "argmax" => CountMode::ArgmaxPerItem,
        other => bail!("unknown count mode {other:?} (expected fractional or argmax)"),
    };

    let mut profiles: Vec<ReasonerProfile> = Vec::new();
    if let Some(path) = &args.human {
        profiles.push(data::ingest_human_path(path)?);
    }
    for named in &args.lm_logs {
        let (name, path) = parse_named(named)?;
        let mut ingest = data::ingest_lm_log_path(&path, count_mode)?;
        ingest.profile.label = name;
        if !ingest.missing.is_empty() {
            let ids: Vec<String> = ingest.missing.iter().map(|s| s.id()).collect();
            eprintln!(
                "note: {} has no accepted samples for: {}",
                path.display(),
                ids.join(" ")
            );
        }
        profiles.push(ingest.profile);
    }
    for named in &args.profiles {
        let (name, path) = parse_named(named)?;
        let file = std::fs::File::open(&path)
            .with_context(|| format!("opening profile {}", path.display()))?;
        profiles.push(data::read_profile_csv(
            std::io::BufReader::new(file),
            &path.display().to_string(),
            name,
        )?);
    }
    if !args.no_baselines {
        profiles.push(ReasonerProfile::oracle_uniform(&oracle));
        profiles.push(ReasonerProfile::uniform_nine());
    }
    if profiles.is_empty() {
        bail!("nothing to analyze: provide --human, --profile, or --lm-log");
    }

    let mut analyses = Vec::new();
    let mut fallacy_reports = Vec::new();
    for profile in &profiles {
        let fallacies = metrics::fallacy_residuals(profile, &oracle).ok();
        fallacy_reports.push(fallacies.clone());
        analyses.push(data::ProfileAnalysis {
            label: profile.label.clone(),
            n_syllogisms: profile.len(),
            accuracy_valid27: metrics::accuracy(profile, &oracle, Scope::Valid27),
            accuracy_nvc37: metrics::accuracy(profile, &oracle, Scope::Nvc37),
            accuracy_all64: metrics::accuracy(profile, &oracle, Scope::All64),
            nvc_rates: metrics::nvc_rate(profile, &oracle),
            ordering: metrics::ordering_effect(profile),
            fallacies,
        });
    }

    let mut correlations = Vec::new();
    let mut residual_correlations = Vec::new();
    for i in 0..profiles.len() {
        for j in (i + 1)..profiles.len() {
            if let Ok(report) = metrics::correlate(&profiles[i], &profiles[j], &oracle, Scope::All64) {
                correlations.push(data::PairwiseEntry {
                    a: profiles[i].label.clone(),
                    b: profiles[j].label.clone(),
                    value: report.overall,
                });
            }
            if let (Some(fa), Some(fb)) = (&fallacy_reports[i], &fallacy_reports[j]) {
                if let Ok(r) = metrics::residual_correlation(fa, fb) {
                    residual_correlations.push(data::PairwiseEntry {
                        a: profiles[i].label.clone(),
                        b: profiles[j].label.clone(),
                        value: r,
                    });
                }
            }
        }
    }

    let report = data::AnalysisReport {
        oracle_partition: oracle.partition_counts(),
        profiles: analyses,
        correlations,
        residual_correlations,
    };
    data::emit_report(&report, &args.out)?;
    write_analysis_csvs(&report, &args.out)?;
    Manifest::new(&Command::Analyze(args.clone())).write(&args.out)?;

    for p in &report.profiles {
        println!(
            "{}: accuracy valid27={:.3} nvc37={:.3}; NVC rate nvc37={:.3} valid27={:.3}",
            p.label,
            p.accuracy_valid27.mean,
            p.accuracy_nvc37.mean,
            p.nvc_rates.on_nvc37,
            p.nvc_rates.on_valid27
        );
    }
    for c in &report.correlations {
        println!("corr[{} ~ {}] = {:.3}", c.a, c.b, c.value);
    }
    Ok(())
}

fn write_analysis_csvs(report: &data::AnalysisReport, out: &Path) -> anyhow::Result<()> {
    let mut accuracy = String::from("reasoner,scope,syllogism,value\n");
    for p in &report.profiles {
        for (scope, r) in [
            ("valid27", &p.accuracy_valid27),
            ("nvc37", &p.accuracy_nvc37),
            ("all64", &p.accuracy_all64),
        ] {
            for (s, v) in &r.per_syllogism {
                accuracy.push_str(&format!("{},{scope},{},{v}\n", p.label, s.id()));
            }
            accuracy.push_str(&format!("{},{scope},MEAN,{}\n", p.label, r.mean));
        }
    }
    write_file(&out.join("accuracy.csv"), accuracy.as_bytes())?;

    let mut ordering = String::from("reasoner,figure,p_ac,p_ca,magnitude\n");
    let mut nvc = String::from("reasoner,on_nvc37,on_valid27\n");
    for p in &report.profiles {
        for (figure, e) in &p.ordering {
            ordering.push_str(&format!(
                "{},{},{},{},{}\n",
                p.label,
                figure.code(),
                e.p_ac,
                e.p_ca,
                e.magnitude
            ));
        }
        nvc.push_str(&format!("{},{},{}\n", p.label, p.nvc_rates.on_nvc37, p.nvc_rates.on_valid27));
    }
    write_file(&out.join("ordering.csv"), ordering.as_bytes())?;
    write_file(&out.join("nvc.csv"), nvc.as_bytes())?;

    let mut residuals = String::from("reasoner,syllogism,accuracy,entropy,residual\n");
    for p in &report.profiles {
        if let Some(f) = &p.fallacies {
            for row in &f.rows {
                residuals.push_str(&format!(
                    "{},{},{},{},{}\n",
                    p.label,
                    row.syllogism.id(),
                    row.accuracy,
                    row.entropy,
                    row.residual
                ));
            }
        }
    }
    write_file(&out.join("residuals.csv"), residuals.as_bytes())?;

    let mut corr = String::from("a,b,r\n");
    for c in &report.correlations {
        corr.push_str(&format!("{},{},{}\n", c.a, c.b, c.value));
    }
    write_file(&out.join("correlations.csv"), corr.as_bytes())?;

    let mut rescorr = String::from("a,b,r\n");
    for c in &report.residual_correlations {
        rescorr.push_str(&format!("{},{},{}\n", c.a, c.b, c.value));
    }
    write_file(&out.join("residual-correlations.csv"), rescorr.as_bytes())?;
    Ok(())
}

pub fn cmd_harness(args: &HarnessArgs) -> anyhow::Result<()> {
    let method: Method = args.method.parse()?;
    let variant: PromptVariant = args.variant.parse()?;
    let oracle = OracleTable::default();
    let syllogisms = parse_syllogisms(&args.syllogisms)?;
    let triples: Vec<ContentTriple> = match &args.triples {
        Some(path) => ContentTriple::load_csv(path)?,
        None => syllo::syllogism::bundled_triples().to_vec(),
    };
    let triples = match args.max_triples {
        Some(n) => triples.into_iter().take(n.max(1)).collect(),
        None => triples,
    };
    let config = SamplingConfig {
        temperature: args.temperature,
        max_tokens: args.max_tokens,
        n_samples: args.samples,
    };

    let endpoint_client: Option<Box<dyn CompletionClient>> = match (&args.endpoint, args.mock) {
        (Some(url), false) => {
            let token = std::env::var("SYLLO_API_TOKEN").ok();
            let transport = HttpTransport::new(url.clone(), token)?;
            Some(Box::new(EndpointClient::new(transport)))
        }
        (None, true) => None,
        (None, false) => bail!("choose --endpoint URL or --mock"),
        (Some(_), true) => unreachable!("clap conflicts_with"),
    };

    let mut records: Vec<syllo::data::LmResponseRecord> = Vec::new();
    let mut item_rows = String::from("syllogism_id,triple_index,answer,n_rejected");
    for r in Response::ALL {
        item_rows.push_str(&format!(",{}", r.code()));
    }
    item_rows.push('\n');
    let mut answer_counts: BTreeMap<Syllogism, [f64; 9]> = BTreeMap::new();
    let mut n_missing = 0u32;

    for (s_idx, s) in syllogisms.iter().enumerate() {
        for (t_idx, triple) in triples.iter().enumerate() {
            let spec = PromptSpec {
                variant,
                conclusion_order_seed: syllo::seeding::derive_seed(
                    args.seed,
                    &[s_idx as u64, t_idx as u64],
                ),
                triple: triple.clone(),
                syllogism: *s,
            };
            let mock;
            let client: &dyn CompletionClient = match &endpoint_client {
                Some(c) => c.as_ref(),
                None => {
                    mock = harness::oracle_mock(&spec, &oracle);
                    &mock
                }
            };

            let (answer, dist, n_rejected): (Option<Response>, Option<[f64; 9]>, u32) = match method
            {
                Method::Generative => {
                    let item = run_generative(&spec, &config, client, &args.run_id, t_idx as u32)?;
                    records.extend(item.records);
                    (
                        item.answer,
                        item.distribution.as_ref().map(|d| d.probs),
                        item.n_rejected,
                    )
                }
                Method::MultipleChoice => {
                    let item = run_multiple_choice(&spec, client)?;
                    (Some(item.answer), Some(item.distribution.probs), 0)
                }
                Method::Binary => {
                    let item = run_binary(&spec, client, args.threshold)?;
                    (Some(item.answer), Some(item.distribution.probs), 0)
                }
            };

            match (answer, dist) {
                (Some(answer), Some(probs)) => {
                    answer_counts.entry(*s).or_insert([0.0; 9])[answer.index()] += 1.0;
                    item_rows.push_str(&format!("{},{t_idx},{},{n_rejected}", s.id(), answer.code()));
                    for p in probs {
                        item_rows.push_str(&format!(",{p}"));
                    }
                    item_rows.push('\n');
                }
                _ => {
                    n_missing += 1;
                    item_rows.push_str(&format!("{},{t_idx},MISSING,{n_rejected}", s.id()));
                    for _ in 0..9 {
                        item_rows.push_str(",0");
                    }
                    item_rows.push('\n');
                }
            }
        }
    }

    std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    if method == Method::Generative {
        let mut log = Vec::new();
        data::write_lm_log(&records, &mut log)?;
        write_file(&args.out.join("lm_log.jsonl"), &log)?;
    }
    write_file(&args.out.join("items.csv"), item_rows.as_bytes())?;

    let mut profile = ReasonerProfile::new(args.run_id.clone());
    for (s, counts) in &answer_counts {
        let n: f64 = counts.iter().sum();
        profile.insert(syllo::dist::ResponseDistribution::from_weights(
            *s,
            *counts,
            n as u32,
        )?);
    }
    if !profile.is_empty() {
        let mut csv = Vec::new();
        data::write_profile_csv(&profile, &mut csv)?;
        write_file(&args.out.join("profile.csv"), &csv)?;
    }

    Manifest::new(&Command::Harness(args.clone())).write(&args.out)?;
    println!(
        "{} method over {} syllogisms x {} triples ({} items missing)",
        method.code(),
        syllogisms.len(),
        triples.len(),
        n_missing
    );
    Ok(())
}

pub fn cmd_rerun(args: &RerunArgs) -> anyhow::Result<()> {
    let manifest = Manifest::load(&args.manifest)?;
    let command = override_out(manifest.command, &args.out)?;
    println!("re-running {} into {}", command.name(), args.out.display());
    dispatch(&command)
}

fn override_out(command: Command, out: &Path) -> anyhow::Result<Command> {
    let out = out.to_path_buf();
    Ok(match command {
        Command::Oracle(mut a) => {
            a.out = out;
            Command::Oracle(a)
        }
        Command::Simulate(mut a) => {
            a.out = out;
            Command::Simulate(a)
        }
        Command::Sweep(mut a) => {
            a.out = out;
            Command::Sweep(a)
        }
        Command::Pca(mut a) => {
            a.out = out;
            Command::Pca(a)
        }
        Command::Analyze(mut a) => {
            a.out = out;
            Command::Analyze(a)
        }
        Command::Harness(mut a) => {
            a.out = out;
            Command::Harness(a)
        }
        Command::Rerun(_) => bail!("manifest describes a rerun; point at the original manifest"),
    })
}
