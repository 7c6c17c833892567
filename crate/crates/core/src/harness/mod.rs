//! Elicitation harness for text-completion endpoints.
//!
//! One item is a (syllogism, content triple) pair. The generative method
//! samples chain-of-thought completions and parses conclusions out of
//! them; the multiple-choice and binary methods score continuations
//! instead, so they need an endpoint that can return total
//! log-probabilities (see [`CompletionClient`]).

mod client;
pub mod prompt;
mod run;

pub use client::{
    oracle_mock, CompletionChoice, CompletionClient, CompletionRequest, CompletionResponse,
    EndpointClient, FakeTransport, HttpTransport, MockClient, ScoreRule, Transport,
};
pub use run::{run_binary, run_generative, run_multiple_choice, GenerativeItem, ScoredItem};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::syllogism::{ContentTriple, Syllogism};

/// Prompt wording variants explored alongside the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptVariant {
    /// "Let's think this through, step by step" (the default).
    StepByStep,
    /// "Think logically".
    Logically,
    /// No reasoning trigger.
    Empty,
    /// Verbose late reminder that "nothing follows" is an option.
    Alt,
}

impl PromptVariant {
    pub const ALL: [PromptVariant; 4] = [
        PromptVariant::StepByStep,
        PromptVariant::Logically,
        PromptVariant::Empty,
        PromptVariant::Alt,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PromptVariant::StepByStep => "stepxstep",
            PromptVariant::Logically => "logically",
            PromptVariant::Empty => "empty",
            PromptVariant::Alt => "alt",
        }
    }
}

impl std::str::FromStr for PromptVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        PromptVariant::ALL
            .iter()
            .copied()
            .find(|v| v.code() == s)
            .ok_or_else(|| Error::Parse(format!("unknown prompt variant {s:?}")))
    }
}

/// Everything needed to phrase one item.
#[derive(Debug, Clone)]
pub struct PromptSpec {
    pub variant: PromptVariant,
    /// Seed of the conclusion-order shuffle.
    pub conclusion_order_seed: u64,
    pub triple: ContentTriple,
    pub syllogism: Syllogism,
}

/// Decoding settings for the generative method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub temperature: f64,
    pub max_tokens: u32,
    pub n_samples: u32,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            temperature: 0.5,
            max_tokens: 75,
            n_samples: 30,
        }
    }
}

/// Which elicitation method a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Generative,
    MultipleChoice,
    Binary,
}

impl Method {
    pub fn code(self) -> &'static str {
        match self {
            Method::Generative => "generative",
            Method::MultipleChoice => "multiple-choice",
            Method::Binary => "binary",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "generative" => Ok(Method::Generative),
            "multiple-choice" | "multiple_choice" | "mc" => Ok(Method::MultipleChoice),
            "binary" => Ok(Method::Binary),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}
