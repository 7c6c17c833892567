//! Completion clients: the endpoint contract, an HTTP implementation, and
//! deterministic mocks for offline runs and tests.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::OracleTable;
use crate::syllogism::render_response;

use super::{PromptSpec, SamplingConfig};

/// A text-completion endpoint. `sample` draws generations; `score` returns
/// the total log-probability of a continuation given a prompt (the empty
/// prompt must be supported, for the unconditional baseline).
///
/// Implementations must be safe for concurrent calls.
pub trait CompletionClient: Send + Sync {
    fn sample(&self, prompt: &str, config: &SamplingConfig) -> Result<Vec<String>>;
    fn score(&self, prompt: &str, continuation: &str) -> Result<f64>;
}

/// A scoring rule of the table-driven mock: matches when the prompt
/// contains `prompt_contains` and the continuation equals `continuation`.
#[derive(Debug, Clone)]
pub struct ScoreRule {
    pub prompt_contains: String,
    pub continuation: String,
    pub logprob: f64,
}

/// Deterministic in-memory client. Sampling cycles through a fixed list of
/// completions; scoring consults the rules in order (first match wins).
#[derive(Debug, Clone, Default)]
pub struct MockClient {
    completions: Vec<String>,
    rules: Vec<ScoreRule>,
    fallback_logprob: Option<f64>,
}

impl MockClient {
    pub fn new() -> MockClient {
        MockClient::default()
    }

    /// Sampling returns these texts, cycled to the requested count.
    pub fn with_completions(mut self, texts: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.completions = texts.into_iter().map(Into::into).collect();
        self
    }

    /// Adds a scoring rule; earlier rules take precedence.
    pub fn with_score(
        mut self,
        prompt_contains: impl Into<String>,
        continuation: impl Into<String>,
        logprob: f64,
    ) -> Self {
        self.rules.push(ScoreRule {
            prompt_contains: prompt_contains.into(),
            continuation: continuation.into(),
            logprob,
        });
        self
    }

    /// Log-probability returned when no rule matches.
    pub fn with_fallback_logprob(mut self, logprob: f64) -> Self {
        self.fallback_logprob = Some(logprob);
        self
    }
}

impl CompletionClient for MockClient {
    fn sample(&self, _prompt: &str, config: &SamplingConfig) -> Result<Vec<String>> {
        if self.completions.is_empty() {
            return Err(Error::Client("mock has no completions configured".into()));
        }
        Ok((0..config.n_samples as usize)
            .map(|i| self.completions[i % self.completions.len()].clone())
            .collect())
    }

    fn score(&self, prompt: &str, continuation: &str) -> Result<f64> {
        for rule in &self.rules {
            if prompt.contains(&rule.prompt_contains) && continuation == rule.continuation {
                return Ok(rule.logprob);
            }
        }
        self.fallback_logprob.ok_or_else(|| {
            Error::Client(format!(
                "mock has no score rule for continuation {continuation:?}"
            ))
        })
    }
}

/// A mock wired to answer one item the way the validity oracle would:
/// generations state the first valid conclusion, and scoring favors valid
/// conclusions (and "valid"/"invalid" judgements consistent with them).
pub fn oracle_mock(spec: &PromptSpec, oracle: &OracleTable) -> MockClient {
    let valid = oracle.valid(&spec.syllogism);
    let first_valid = *valid.iter().next().expect("valid sets are nonempty");
    let mut client = MockClient::new().with_completions([format!(
        "Therefore, {}.",
        render_response(first_valid, &spec.triple)
    )]);
    // Multiple-choice scoring: conditional gaps over the unconditional
    // baseline are larger for valid conclusions.
    for (r, text) in super::prompt::conclusion_options(spec) {
        let conditional = if valid.contains(&r) { -2.0 } else { -6.0 };
        client = client
            .with_score("Premise 1", text.clone(), conditional)
            .with_score("", text, -8.0);
    }
    // Binary scoring: "valid" wins for valid conclusions, "invalid"
    // otherwise.
    for r in crate::syllogism::Response::QUANTIFIED {
        let stem = format!("Conclusion: {}.", render_response(r, &spec.triple));
        let (v, iv) = if valid.contains(&r) { (-1.0, -4.0) } else { (-4.0, -1.0) };
        client = client
            .with_score(stem.clone(), "valid", v)
            .with_score(stem, "invalid", iv);
    }
    client = client
        .with_score("", "valid", -2.5)
        .with_score("", "invalid", -2.5);
    client
}

/// Wire format of a completion request.
#[derive(Debug, Clone, Serialize)]
pub struct CompletionRequest {
    pub prompt: String,
    pub temperature: f64,
    pub max_tokens: u32,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub echo: Option<bool>,
}

/// Wire format of a completion response.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct CompletionResponse {
    pub choices: Vec<CompletionChoice>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct CompletionChoice {
    #[serde(default)]
    pub text: String,
    /// Per-token log-probabilities of the echoed text, when requested;
    /// entries may be null for the first token.
    #[serde(default)]
    pub token_logprobs: Option<Vec<Option<f64>>>,
}

/// Transport for one JSON POST; separated from the client so retries and
/// scoring arithmetic are testable without a live server.
pub trait Transport: Send + Sync {
    fn post(&self, body: &serde_json::Value) -> Result<serde_json::Value>;
}

/// reqwest-backed transport with bearer-token auth.
pub struct HttpTransport {
    url: String,
    auth_token: Option<String>,
    client: reqwest::blocking::Client,
}

impl HttpTransport {
    pub fn new(url: impl Into<String>, auth_token: Option<String>) -> Result<HttpTransport> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(120))
            .build()
            .map_err(|e| Error::Client(format!("building http client: {e}")))?;
        Ok(HttpTransport {
            url: url.into(),
            auth_token,
            client,
        })
    }
}

impl Transport for HttpTransport {
    fn post(&self, body: &serde_json::Value) -> Result<serde_json::Value> {
        let mut req = self.client.post(&self.url).json(body);
        if let Some(token) = &self.auth_token {
            req = req.bearer_auth(token);
        }
        let resp = req.send().map_err(|e| Error::Client(format!("{e}")))?;
        let status = resp.status();
        if !status.is_success() {
            return Err(Error::Client(format!("endpoint returned {status}")));
        }
        resp.json().map_err(|e| Error::Client(format!("bad json: {e}")))
    }
}

/// A completion client speaking the JSON wire protocol over a transport,
/// with bounded retries and exponential backoff.
pub struct EndpointClient<T: Transport> {
    transport: T,
    retries: u32,
    backoff: Duration,
}

impl<T: Transport> EndpointClient<T> {
    pub fn new(transport: T) -> EndpointClient<T> {
        EndpointClient {
            transport,
            retries: 3,
            backoff: Duration::from_millis(250),
        }
    }

    pub fn with_retries(mut self, retries: u32, backoff: Duration) -> Self {
        self.retries = retries.max(1);
        self.backoff = backoff;
        self
    }

    fn post_with_retries(&self, request: &CompletionRequest) -> Result<CompletionResponse> {
        let body = serde_json::to_value(request)?;
        let mut delay = self.backoff;
        let mut last_err = None;
        for attempt in 0..self.retries {
            match self.transport.post(&body) {
                Ok(value) => {
                    return serde_json::from_value(value)
                        .map_err(|e| Error::Client(format!("malformed response: {e}")))
                }
                Err(e) => {
                    last_err = Some(e);
                    if attempt + 1 < self.retries {
                        std::thread::sleep(delay);
                        delay *= 2;
                    }
                }
            }
        }
        Err(Error::Client(format!(
            "request failed after {} attempts: {}",
            self.retries,
            last_err.expect("at least one attempt")
        )))
    }

    /// Sum of echoed token log-probabilities for `text`.
    fn total_logprob(&self, text: &str) -> Result<f64> {
        if text.is_empty() {
            return Ok(0.0);
        }
        let request = CompletionRequest {
            prompt: text.to_string(),
            temperature: 0.0,
            max_tokens: 0,
            n: 1,
            echo: Some(true),
        };
        let response = self.post_with_retries(&request)?;
        let choice = response
            .choices
            .first()
            .ok_or_else(|| Error::Client("empty choices in echo response".into()))?;
        let logprobs = choice
            .token_logprobs
            .as_ref()
            .ok_or_else(|| Error::Client("echo response lacks token_logprobs".into()))?;
        Ok(logprobs.iter().flatten().sum())
    }
}

impl<T: Transport> CompletionClient for EndpointClient<T> {
    fn sample(&self, prompt: &str, config: &SamplingConfig) -> Result<Vec<String>> {
        let request = CompletionRequest {
            prompt: prompt.to_string(),
            temperature: config.temperature,
            max_tokens: config.max_tokens,
            n: config.n_samples,
            echo: None,
        };
        let response = self.post_with_retries(&request)?;
        Ok(response.choices.into_iter().map(|c| c.text).collect())
    }

    /// Continuation log-probability as a difference of echoed totals;
    /// token boundaries at the joint are the endpoint's concern.
    fn score(&self, prompt: &str, continuation: &str) -> Result<f64> {
        let full = format!("{prompt}{continuation}");
        Ok(self.total_logprob(&full)? - self.total_logprob(prompt)?)
    }
}

/// Transport that serves canned responses and records call counts; fails a
/// configurable number of times first.
#[derive(Default)]
pub struct FakeTransport {
    /// Echo-request responses keyed by prompt text.
    pub responses: std::sync::Mutex<BTreeMap<String, serde_json::Value>>,
    pub failures_before_success: std::sync::Mutex<u32>,
    pub calls: std::sync::Mutex<u32>,
}

impl Transport for FakeTransport {
    fn post(&self, body: &serde_json::Value) -> Result<serde_json::Value> {
        *self.calls.lock().unwrap() += 1;
        {
            let mut failures = self.failures_before_success.lock().unwrap();
            if *failures > 0 {
                *failures -= 1;
                return Err(Error::Client("transient failure".into()));
            }
        }
        let prompt = body["prompt"].as_str().unwrap_or_default().to_string();
        self.responses
            .lock()
            .unwrap()
            .get(&prompt)
            .cloned()
            .ok_or_else(|| Error::Client(format!("no canned response for {prompt:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::PromptVariant;
    use crate::syllogism::ContentTriple;
    use approx::assert_abs_diff_eq;

    fn config(n: u32) -> SamplingConfig {
        SamplingConfig {
            n_samples: n,
            ..SamplingConfig::default()
        }
    }

    #[test]
    fn mock_cycles_completions() {
        let mock = MockClient::new().with_completions(["a", "b"]);
        let got = mock.sample("p", &config(5)).unwrap();
        assert_eq!(got, vec!["a", "b", "a", "b", "a"]);
    }

    #[test]
    fn mock_scores_by_first_matching_rule() {
        let mock = MockClient::new()
            .with_score("special", "x", -1.0)
            .with_score("", "x", -5.0);
        assert_abs_diff_eq!(mock.score("a special prompt", "x").unwrap(), -1.0);
        assert_abs_diff_eq!(mock.score("", "x").unwrap(), -5.0);
        assert!(mock.score("", "y").is_err());
    }

    #[test]
    fn endpoint_sums_echo_logprobs_and_differences_scores() {
        let transport = FakeTransport::default();
        transport.responses.lock().unwrap().insert(
            "PC".into(),
            serde_json::json!({"choices": [{"text": "PC", "token_logprobs": [null, -1.0, -2.0]}]}),
        );
        transport.responses.lock().unwrap().insert(
            "P".into(),
            serde_json::json!({"choices": [{"text": "P", "token_logprobs": [null, -0.5]}]}),
        );
        let client = EndpointClient::new(transport).with_retries(1, Duration::ZERO);
        // score(P, C) = logprob(PC) - logprob(P) = -3.0 - -0.5
        assert_abs_diff_eq!(client.score("P", "C").unwrap(), -2.5);
        // Empty prompt scores the continuation unconditionally.
        transport_score_empty(&client);
    }

    fn transport_score_empty(client: &EndpointClient<FakeTransport>) {
        client.transport.responses.lock().unwrap().insert(
            "C".into(),
            serde_json::json!({"choices": [{"text": "C", "token_logprobs": [-4.0]}]}),
        );
        assert_abs_diff_eq!(client.score("", "C").unwrap(), -4.0);
    }

    #[test]
    fn endpoint_retries_then_succeeds() {
        let transport = FakeTransport::default();
        *transport.failures_before_success.lock().unwrap() = 2;
        transport.responses.lock().unwrap().insert(
            "hello".into(),
            serde_json::json!({"choices": [{"text": " world"}]}),
        );
        let client = EndpointClient::new(transport).with_retries(3, Duration::ZERO);
        let got = client.sample("hello", &config(1)).unwrap();
        assert_eq!(got, vec![" world"]);
        assert_eq!(*client.transport.calls.lock().unwrap(), 3);
    }

    #[test]
    fn endpoint_surfaces_exhausted_retries() {
        let transport = FakeTransport::default();
        *transport.failures_before_success.lock().unwrap() = 10;
        let client = EndpointClient::new(transport).with_retries(3, Duration::ZERO);
        let err = client.sample("hello", &config(1)).unwrap_err();
        assert!(matches!(err, Error::Client(_)));
        assert_eq!(*client.transport.calls.lock().unwrap(), 3);
    }

    #[test]
    fn oracle_mock_answers_with_a_valid_conclusion() {
        let oracle = OracleTable::default();
        let spec = PromptSpec {
            variant: PromptVariant::StepByStep,
            conclusion_order_seed: 0,
            triple: ContentTriple::new("artists", "bakers", "chemists").unwrap(),
            syllogism: "EA1".parse().unwrap(),
        };
        let mock = oracle_mock(&spec, &oracle);
        let texts = mock.sample("whatever", &config(2)).unwrap();
        assert!(texts[0].contains("Some chemists are not artists"));
    }
}
