//! The three elicitation methods: rejection-sampled generation,
//! mutual-information multiple choice, and binary validity discrimination.

use crate::data::LmResponseRecord;
use crate::dist::ResponseDistribution;
use crate::error::{Error, Result};
use crate::syllogism::{parse_response, Response};

use super::client::CompletionClient;
use super::prompt;
use super::{PromptSpec, SamplingConfig};

/// Result of the generative method on one (syllogism, triple) item.
#[derive(Debug, Clone)]
pub struct GenerativeItem {
    pub records: Vec<LmResponseRecord>,
    /// Distribution over parsed conclusions of the accepted samples;
    /// `None` when every sample was rejected (item missing).
    pub distribution: Option<ResponseDistribution>,
    /// The highest-probability conclusion, ties broken in canonical
    /// response order.
    pub answer: Option<Response>,
    pub n_rejected: u32,
}

/// Samples `config.n_samples` generations, parses each by exact string
/// match, rejects the unparseable ones, and tallies the rest. Samples
/// matching several conclusions contribute fractional weight to each.
pub fn run_generative(
    spec: &PromptSpec,
    config: &SamplingConfig,
    client: &dyn CompletionClient,
    run_id: &str,
    triple_index: u32,
) -> Result<GenerativeItem> {
    let prompt = prompt::build_prompt(spec);
    let texts = client.sample(&prompt, config)?;
    let mut records = Vec::with_capacity(texts.len());
    let mut weights = [0.0f64; 9];
    let mut n_accepted = 0u32;
    for (i, text) in texts.into_iter().enumerate() {
        let parsed: Vec<Response> = parse_response(&text, &spec.triple).into_iter().collect();
        let accepted = !parsed.is_empty();
        if accepted {
            n_accepted += 1;
            let share = 1.0 / parsed.len() as f64;
            for r in &parsed {
                weights[r.index()] += share;
            }
        }
        records.push(LmResponseRecord {
            run_id: run_id.to_string(),
            syllogism_id: spec.syllogism.id(),
            triple_index,
            sample_index: i as u32,
            raw_text: text,
            parsed,
            accepted,
        });
    }
    let n_rejected = records.len() as u32 - n_accepted;
    let distribution = if n_accepted > 0 {
        Some(ResponseDistribution::from_weights(
            spec.syllogism,
            weights,
            n_accepted,
        )?)
    } else {
        None
    };
    let answer = distribution.as_ref().map(|d| d.argmax());
    Ok(GenerativeItem {
        records,
        distribution,
        answer,
        n_rejected,
    })
}

/// Result of a scoring method on one item.
#[derive(Debug, Clone)]
pub struct ScoredItem {
    pub distribution: ResponseDistribution,
    pub answer: Response,
    /// Mutual information per response (multiple choice) or P(valid) per
    /// quantified response with NVC at zero (binary), in canonical order.
    pub scores: [f64; 9],
}

fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFiniteScore(what.to_string()))
    }
}

/// Stable softmax.
fn softmax(xs: &[f64]) -> Vec<f64> {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = xs.iter().map(|x| (x - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Scores all nine conclusions by mutual information with the prompt,
/// `MI(c; p) = log P(c|p) - log P(c|"")`, and softmax-normalizes.
pub fn run_multiple_choice(spec: &PromptSpec, client: &dyn CompletionClient) -> Result<ScoredItem> {
    let stem = prompt::multiple_choice_prompt(spec);
    let mut mi = [0.0f64; 9];
    for (r, text) in prompt::conclusion_options(spec) {
        let conditional = finite(client.score(&stem, &text)?, &text)?;
        let unconditional = finite(client.score("", &text)?, &text)?;
        mi[r.index()] = conditional - unconditional;
    }
    let probs_vec = softmax(&mi);
    let mut probs = [0.0f64; 9];
    probs.copy_from_slice(&probs_vec);
    let distribution = ResponseDistribution {
        syllogism: spec.syllogism,
        probs,
        n: 1,
    };
    Ok(ScoredItem {
        answer: distribution.argmax(),
        distribution,
        scores: mi,
    })
}

/// Binary validity discrimination: P("valid" | conclusion) via a two-way
/// mutual-information softmax per quantified conclusion, normalized into a
/// distribution. The answer is NVC unless some conclusion's P(valid)
/// exceeds `threshold`.
pub fn run_binary(
    spec: &PromptSpec,
    client: &dyn CompletionClient,
    threshold: f64,
) -> Result<ScoredItem> {
    let mut p_valid = [0.0f64; 9];
    for r in Response::QUANTIFIED {
        let item_prompt = prompt::binary_prompt(spec, r);
        let mut mi = [0.0f64; 2];
        for (slot, word) in ["valid", "invalid"].iter().enumerate() {
            let conditional = finite(client.score(&item_prompt, word)?, word)?;
            let unconditional = finite(client.score("", word)?, word)?;
            mi[slot] = conditional - unconditional;
        }
        p_valid[r.index()] = softmax(&mi)[0];
    }
    let total: f64 = p_valid.iter().sum();
    let mut probs = [0.0f64; 9];
    for (p, v) in probs.iter_mut().zip(&p_valid) {
        *p = v / total;
    }
    let distribution = ResponseDistribution {
        syllogism: spec.syllogism,
        probs,
        n: 1,
    };
    let best = Response::QUANTIFIED
        .iter()
        .copied()
        .max_by(|a, b| {
            p_valid[a.index()]
                .partial_cmp(&p_valid[b.index()])
                .expect("finite probabilities")
                .then(b.cmp(a)) // canonical order wins ties
        })
        .expect("eight candidates");
    let answer = if p_valid[best.index()] > threshold {
        best
    } else {
        Response::Nvc
    };
    Ok(ScoredItem {
        distribution,
        answer,
        scores: p_valid,
    })
}
