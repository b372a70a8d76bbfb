//! Wire types of the subpat HTTP service. Every operation is a `POST` of a
//! JSON request to its route; failures come back as [`ApiError`].

use serde::{Deserialize, Serialize};
use subpat_core::algebra::{MonoidDump, TopologyReport};
use subpat_core::classify::{Disagreement, LevelReport};
use subpat_core::corpus::{CorpusKind, CorpusSpec};
use subpat_core::hardness::Digraph;
use subpat_core::matcher::{MatchStats, Strategy};
use subpat_core::patterns::{PatternJson, WellformednessReport};
use subpat_core::ErrorKind;

pub use subpat_core::io::{AutomatonJson, AutomatonKind, WitnessJson};

pub mod routes {
    pub const HEALTH: &str = "/health";
    pub const VALIDATE: &str = "/validate";
    pub const CLASSIFY: &str = "/classify";
    pub const CHECK_PATTERN: &str = "/check-pattern";
    pub const PATTERNS: &str = "/patterns";
    pub const PATTERN_GEN: &str = "/pattern/gen";
    pub const MONOID: &str = "/monoid";
    pub const CORPUS_GEN: &str = "/corpus/gen";
    pub const CROSSCHECK: &str = "/crosscheck";
    pub const HARDNESS_GEN: &str = "/hardness/gen";
}

pub const DEFAULT_MAX_LEVEL: u32 = 3;

fn default_max_level() -> u32 {
    DEFAULT_MAX_LEVEL
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorClass {
    Invalid,
    Resource,
    Internal,
}

impl From<ErrorKind> for ErrorClass {
    fn from(k: ErrorKind) -> Self {
        match k {
            ErrorKind::InvalidInput => ErrorClass::Invalid,
            ErrorKind::Resource => ErrorClass::Resource,
            ErrorKind::Internal => ErrorClass::Internal,
        }
    }
}

/// Body of every non-2xx response.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    pub error: String,
    pub kind: ErrorClass,
}

impl From<subpat_core::Error> for ApiError {
    fn from(e: subpat_core::Error) -> Self {
        ApiError { kind: e.kind().into(), error: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidateRequest {
    pub automaton: AutomatonJson,
    #[serde(default)]
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LassoJson {
    pub prefix: String,
    pub period: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmValidation {
    pub complete: bool,
    pub unambiguous: bool,
    pub uncovered: Option<LassoJson>,
    pub ambiguous: Option<LassoJson>,
    pub trim: Vec<String>,
    pub empty_language: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateResponse {
    pub kind: AutomatonKind,
    pub states: usize,
    pub alphabet: usize,
    /// False only for a Büchi automaton that is not Carton-Michel.
    pub valid: bool,
    pub empty_language: bool,
    /// States reachable from the initial state (DFA) or co-reachable from
    /// the final state (reverse DFA).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accessible: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_states: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm: Option<CmValidation>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    #[default]
    Pattern,
    Algebra,
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRequest {
    pub automaton: AutomatonJson,
    #[serde(default = "default_max_level")]
    pub max_level: u32,
    #[serde(default)]
    pub engine: EngineChoice,
    #[serde(default)]
    pub complete: bool,
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Words {
    Finite,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyResponse {
    pub words: Words,
    pub reports: Vec<LevelReport>,
    /// Levels on which the two engines differ; empty unless both ran.
    pub disagreements: Vec<String>,
}

/// A built-in pattern name, a file path resolved by the client, or an
/// inline pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternArg {
    Name(String),
    Inline(PatternJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckPatternRequest {
    pub automaton: AutomatonJson,
    pub pattern: PatternArg,
    #[serde(default)]
    pub complete: bool,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub strategy: Option<Strategy>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckPatternResponse {
    pub present: bool,
    /// The name of the matched variant, or of the first one when absent.
    pub pattern: String,
    pub variant: Option<usize>,
    pub witness: Option<WitnessJson>,
    pub witness_text: Option<String>,
    /// Whether the witness replayed; true when absent.
    pub verified: bool,
    pub stats: MatchStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternGenRequest {
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedPattern {
    pub name: String,
    pub pattern: PatternJson,
    pub wellformedness: WellformednessReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternGenResponse {
    pub patterns: Vec<GeneratedPattern>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonoidRequest {
    pub automaton: AutomatonJson,
    #[serde(default = "default_max_level")]
    pub max_level: u32,
    #[serde(default)]
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMonoid {
    /// `syntactic` for finite words; `fin`, `inf`, `full` for infinite ones.
    pub name: String,
    pub monoid: MonoidDump,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidResponse {
    pub monoids: Vec<NamedMonoid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profiles: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologyReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusRequest {
    pub spec: CorpusSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusResponse {
    pub spec: CorpusSpec,
    pub automata: Vec<AutomatonJson>,
    /// The closed-form count of an exhaustive corpus.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accepted: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acceptance_ratio: Option<f64>,
}

/// Automata to crosscheck: explicit ones, a generated corpus, or both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckRequest {
    #[serde(default)]
    pub automata: Vec<AutomatonJson>,
    #[serde(default)]
    pub corpus: Option<CorpusSpec>,
    #[serde(default = "default_max_level")]
    pub max_level: u32,
    #[serde(default)]
    pub complete: bool,
    #[serde(default)]
    pub budget: Option<u64>,
    /// Also run the fault-injection self-test.
    #[serde(default)]
    pub self_test: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedDisagreement {
    pub index: usize,
    #[serde(flatten)]
    pub disagreement: Disagreement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedError {
    pub index: usize,
    pub error: ApiError,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfTest {
    /// The injected fault produced at least one disagreement.
    pub detected: bool,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckResponse {
    pub automata: usize,
    pub checks: usize,
    pub disagreements: Vec<IndexedDisagreement>,
    pub errors: Vec<IndexedError>,
    pub witnesses_verified: u64,
    pub configurations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_test: Option<SelfTest>,
}

impl CrosscheckResponse {
    /// No disagreement, no error, and a detected fault if the self-test ran.
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
            && self.errors.is_empty()
            && self.self_test.as_ref().map_or(true, |t| t.detected)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardnessRequest {
    pub digraph: Digraph,
    pub from: String,
    pub to: String,
    pub kind: CorpusKind,
    /// The base automaton; a fixed sample lacking the levels when absent.
    #[serde(default)]
    pub bad: Option<AutomatonJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardnessResponse {
    pub automaton: AutomatonJson,
    pub reachable: bool,
    pub empty_language: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carton_michel: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn requests_fill_defaults() {
        let r: ClassifyRequest = serde_json::from_str(
            r#"{"automaton":{"kind":"dfa","alphabet":["a"],"states":["q"],"initial":"q","final":[],"transitions":[["q","a","q"]]}}"#,
        )
        .unwrap();
        assert_eq!(r.max_level, 3);
        assert_eq!(r.engine, EngineChoice::Pattern);
        assert!(!r.complete && r.budget.is_none());
    }

    #[test]
    fn pattern_args_are_names_or_inline() {
        let n: PatternArg = serde_json::from_str(r#""builtin:da""#).unwrap();
        assert_eq!(n, PatternArg::Name("builtin:da".into()));
        let p = subpat_core::patterns::builtin("builtin:si:1").unwrap();
        let text = serde_json::to_string(&PatternArg::Inline(PatternJson::from(&p))).unwrap();
        assert!(matches!(serde_json::from_str::<PatternArg>(&text).unwrap(), PatternArg::Inline(_)));
    }

    #[test]
    fn errors_carry_their_class() {
        let e: ApiError = subpat_core::Error::BudgetExceeded { budget: 1, explored: 2 }.into();
        assert_eq!(e.kind, ErrorClass::Resource);
        assert_eq!(serde_json::to_string(&e.kind).unwrap(), r#""resource""#);
    }
}
