//! Prompt construction for the three elicitation methods.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::syllogism::{render, render_response, Response};

use super::{PromptSpec, PromptVariant};

/// Task instruction shared by every variant.
pub const TASK_INSTRUCTION: &str = "Choose the conclusion that necessarily follows from the premises \
or \"nothing follows\" if none of the other conclusions logically follow, ";

/// Zero-shot reasoning trigger of the default variant.
pub const TRIGGER_STEP_BY_STEP: &str = "Let's think this through, step by step";

/// Trigger of the `logically` variant.
pub const TRIGGER_LOGICALLY: &str = "Think logically";

/// Trigger of the `alt` variant.
pub const TRIGGER_ALT: &str = "Let's think step by step";

/// Late NVC reminder of the `alt` variant.
pub const ALT_NVC_REMINDER: &str = "If none of the possible conclusions follows from the premises, \
answer with the exact phrase \"nothing follows\". Answer using the exact wording of one of the \
possible conclusions. ";

/// Scoring stem used by the multiple-choice method in place of a trigger.
pub const MC_STEM: &str = "The conclusion that necessarily follows is: ";

/// Lead-in of the binary validity discrimination prompt.
pub const BINARY_LEAD: &str = "Is this conclusion valid given the premises: ";

/// The nine candidate conclusions in the order they appear in the prompt:
/// a seeded uniform shuffle of all nine response sentences.
pub fn conclusion_options(spec: &PromptSpec) -> Vec<(Response, String)> {
    let mut options: Vec<(Response, String)> = Response::ALL
        .iter()
        .map(|&r| (r, render_response(r, &spec.triple)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.conclusion_order_seed);
    options.shuffle(&mut rng);
    options
}

fn conclusion_list(spec: &PromptSpec) -> String {
    let rendered: Vec<String> = conclusion_options(spec).into_iter().map(|(_, text)| text).collect();
    rendered.join("; ")
}

fn premise_block(spec: &PromptSpec) -> String {
    let (p1, p2) = render(&spec.syllogism, &spec.triple);
    format!("Premise 1: {p1}, Premise 2: {p2}, ")
}

/// The generative prompt for the spec's variant.
pub fn build_prompt(spec: &PromptSpec) -> String {
    let head = format!(
        "{TASK_INSTRUCTION}the possible conclusions are: {}. {}",
        conclusion_list(spec),
        premise_block(spec),
    );
    match spec.variant {
        PromptVariant::StepByStep => format!("{head}{TRIGGER_STEP_BY_STEP}"),
        PromptVariant::Logically => format!("{head}{TRIGGER_LOGICALLY}"),
        PromptVariant::Empty => head,
        PromptVariant::Alt => format!("{head}{ALT_NVC_REMINDER}{TRIGGER_ALT}"),
    }
}

/// The multiple-choice prompt: the trigger is replaced by a scoring stem
/// and each conclusion is scored as its continuation.
pub fn multiple_choice_prompt(spec: &PromptSpec) -> String {
    format!(
        "{TASK_INSTRUCTION}the possible conclusions are: {}. {}{MC_STEM}",
        conclusion_list(spec),
        premise_block(spec),
    )
}

/// The binary discrimination prompt for one candidate conclusion; the
/// continuations "valid" and "invalid" are scored against it.
pub fn binary_prompt(spec: &PromptSpec, conclusion: Response) -> String {
    format!(
        "{BINARY_LEAD}{}Conclusion: {}. The conclusion is: ",
        premise_block(spec),
        render_response(conclusion, &spec.triple),
    )
}
