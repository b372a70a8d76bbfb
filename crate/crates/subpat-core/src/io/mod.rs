//! JSON interchange for automata and witnesses, and a plain-text renderer.
//!
//! Serialization keeps states in stored order and sorts transitions by
//! `(source, symbol, target)` index, so equal automata give equal files.

use crate::automata::{AnyAutomaton, Alphabet, Buchi, Dfa, ReverseDfa};
use crate::error::{Error, Result};
use crate::matcher::{Automaton, Witness};
use crate::patterns::Pattern;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AutomatonKind {
    Dfa,
    ReverseDfa,
    BuchiCm,
}

impl AutomatonKind {
    pub fn name(self) -> &'static str {
        match self {
            AutomatonKind::Dfa => "dfa",
            AutomatonKind::ReverseDfa => "reverse-dfa",
            AutomatonKind::BuchiCm => "buchi-cm",
        }
    }
}

/// One final state or a list of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Finals {
    One(String),
    Many(Vec<String>),
}

impl Finals {
    fn into_vec(self) -> Vec<String> {
        match self {
            Finals::One(f) => vec![f],
            Finals::Many(fs) => fs,
        }
    }
}

/// Wire form of an automaton. DFAs use `initial` and a final list, reverse
/// DFAs use `initials` and a single `final`, Carton-Michel automata use
/// `initials` and a final list. Transitions are `[src, sym, dst]` along
/// reading paths in every kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub kind: AutomatonKind,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initials: Option<Vec<String>>,
    #[serde(rename = "final")]
    pub finals: Finals,
    pub transitions: Vec<[String; 3]>,
}

impl AutomatonJson {
    /// Builds the automaton; `complete` adds a sink for missing transitions
    /// of deterministic kinds.
    pub fn build(self, complete: bool) -> Result<AnyAutomaton> {
        let alphabet = Alphabet::new(self.alphabet)?;
        let triples: Vec<(String, String, String)> =
            self.transitions.into_iter().map(|[p, a, q]| (p, a, q)).collect();
        let missing = |field: &str| Error::Invalid(format!("`{field}` is required for this kind"));
        match self.kind {
            AutomatonKind::Dfa => {
                let initial = self.initial.ok_or_else(|| missing("initial"))?;
                let finals = self.finals.into_vec();
                Ok(AnyAutomaton::Dfa(Dfa::from_names(&self.states, alphabet, &triples, &initial, &finals, complete)?))
            }
            AutomatonKind::ReverseDfa => {
                let initials = self.initials.ok_or_else(|| missing("initials"))?;
                let Finals::One(f) = self.finals else {
                    return Err(Error::Invalid("a reverse DFA has exactly one final state".into()));
                };
                Ok(AnyAutomaton::Reverse(ReverseDfa::from_names(&self.states, alphabet, &triples, &initials, &f, complete)?))
            }
            AutomatonKind::BuchiCm => {
                let initials = self.initials.ok_or_else(|| missing("initials"))?;
                let finals = self.finals.into_vec();
                Ok(AnyAutomaton::Cm(Buchi::from_names(&self.states, alphabet, &triples, &initials, &finals)?))
            }
        }
    }
}

impl From<&AnyAutomaton> for AutomatonJson {
    fn from(a: &AnyAutomaton) -> Self {
        let names = |flags: &[bool], states: &[String]| -> Vec<String> {
            states.iter().zip(flags).filter(|(_, &f)| f).map(|(s, _)| s.clone()).collect()
        };
        let triples = |states: &[String], sigma: &Alphabet, mut t: Vec<(usize, usize, usize)>| {
            t.sort_unstable();
            t.into_iter()
                .map(|(p, x, q)| [states[p].clone(), sigma.symbol(x).to_string(), states[q].clone()])
                .collect()
        };
        match a {
            AnyAutomaton::Dfa(d) => AutomatonJson {
                kind: AutomatonKind::Dfa,
                alphabet: d.alphabet().symbols().to_vec(),
                states: d.states().to_vec(),
                initial: Some(d.state_name(d.initial()).to_string()),
                initials: None,
                finals: Finals::Many(names(d.finals(), d.states())),
                transitions: triples(d.states(), d.alphabet(), d.transitions().collect()),
            },
            AnyAutomaton::Reverse(r) => AutomatonJson {
                kind: AutomatonKind::ReverseDfa,
                alphabet: r.alphabet().symbols().to_vec(),
                states: r.states().to_vec(),
                initial: None,
                initials: Some(names(r.initials(), r.states())),
                finals: Finals::One(r.state_name(r.final_state()).to_string()),
                transitions: triples(r.states(), r.alphabet(), r.edges().collect()),
            },
            AnyAutomaton::Cm(b) => AutomatonJson {
                kind: AutomatonKind::BuchiCm,
                alphabet: b.alphabet().symbols().to_vec(),
                states: b.states().to_vec(),
                initial: None,
                initials: Some(names(b.initials(), b.states())),
                finals: Finals::Many(names(b.finals(), b.states())),
                transitions: triples(b.states(), b.alphabet(), b.edges().to_vec()),
            },
        }
    }
}

pub fn parse_automaton(text: &str, complete: bool) -> Result<AnyAutomaton> {
    let j: AutomatonJson = serde_json::from_str(text)?;
    j.build(complete)
}

pub fn automaton_to_json(a: &AnyAutomaton) -> String {
    serde_json::to_string_pretty(&AutomatonJson::from(a)).expect("automata serialize")
}

pub fn read_automaton(path: &Path, complete: bool) -> Result<AnyAutomaton> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_automaton(&text, complete)
}

/// A pattern argument: a built-in name or a path to a pattern file.
pub fn load_pattern(spec: &str) -> Result<Pattern> {
    if spec.starts_with("builtin:") {
        return crate::patterns::builtin(spec);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Invalid(format!("cannot read {spec}: {e}")))?;
    Pattern::from_json(&text)
}

/// Wire form of a witness: variable words and vertex states by name, and the
/// index of the disjunctive variant that matched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub h: BTreeMap<String, String>,
    pub g: BTreeMap<String, String>,
    #[serde(default)]
    pub variant: usize,
}

impl WitnessJson {
    pub fn new(w: &Witness, aut: Automaton, p: &Pattern, variant: usize) -> Self {
        let sigma = aut.alphabet();
        WitnessJson {
            h: w.h.iter().enumerate().map(|(x, u)| (p.vars().name(x).to_string(), sigma.format_word(u))).collect(),
            g: w.g.iter().enumerate().map(|(v, &q)| (p.vertex_name(v).to_string(), aut.state_name(q).to_string())).collect(),
            variant,
        }
    }

    /// Resolves names against the automaton and pattern.
    pub fn to_witness(&self, aut: &AnyAutomaton, p: &Pattern) -> Result<Witness> {
        let sigma = aut.alphabet();
        let view = aut.view();
        let h = (0..p.vars().len())
            .map(|x| {
                let name = p.vars().name(x);
                let word = self.h.get(name).ok_or_else(|| Error::Invalid(format!("no word for variable `{name}`")))?;
                sigma.parse_word(word)
            })
            .collect::<Result<Vec<_>>>()?;
        let g = (0..p.vertices().len())
            .map(|v| {
                let name = p.vertex_name(v);
                let state = self.g.get(name).ok_or_else(|| Error::Invalid(format!("no state for vertex `{name}`")))?;
                (0..aut.num_states())
                    .find(|&q| view.state_name(q) == state)
                    .ok_or_else(|| Error::UnknownState(state.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Witness { h, g })
    }
}

/// Text rendering: a header line, then one line per state with its flags and
/// outgoing transitions.
pub fn render_automaton_text(a: &AnyAutomaton) -> String {
    let j = AutomatonJson::from(a);
    let mut out = format!(
        "{} with {} states over {{{}}}\n",
        a.kind(),
        j.states.len(),
        j.alphabet.join(", ")
    );
    let initials: Vec<&String> = j.initial.iter().chain(j.initials.iter().flatten()).collect();
    let finals = j.finals.clone().into_vec();
    for s in &j.states {
        let mut flags = String::new();
        if initials.contains(&s) {
            flags.push('>');
        }
        if finals.contains(s) {
            flags.push('*');
        }
        let moves: Vec<String> =
            j.transitions.iter().filter(|t| &t[0] == s).map(|t| format!("{}→{}", t[1], t[2])).collect();
        out += &format!("  {flags:>2} {s}: {}\n", moves.join("  "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::{present, verify_witness, MatchConfig, Prepared};
    use crate::patterns::builtin;
    use crate::samples;

    fn all_samples() -> Vec<AnyAutomaton> {
        vec![
            AnyAutomaton::Dfa(samples::dfa_a()),
            AnyAutomaton::Dfa(samples::dfa_ab_star()),
            AnyAutomaton::Reverse(samples::rev_ends_with_a()),
            AnyAutomaton::Cm(samples::cm_figure()),
            AnyAutomaton::Cm(samples::cm_finitely_many_a()),
        ]
    }

    #[test]
    fn automata_round_trip() {
        for a in all_samples() {
            let text = automaton_to_json(&a);
            assert_eq!(parse_automaton(&text, false).unwrap(), a, "{text}");
            assert_eq!(automaton_to_json(&parse_automaton(&text, false).unwrap()), text);
        }
    }

    #[test]
    fn final_field_accepts_a_single_name_for_dfas() {
        let text = r#"{"kind":"dfa","alphabet":["a"],"states":["p","q"],"initial":"p","final":"q",
            "transitions":[["p","a","q"],["q","a","q"]]}"#;
        let AnyAutomaton::Dfa(d) = parse_automaton(text, false).unwrap() else { panic!() };
        assert!(d.accepts(&[0]) && !d.accepts(&[]));
    }

    #[test]
    fn partial_dfas_need_completion() {
        let text = r#"{"kind":"dfa","alphabet":["a","b"],"states":["p"],"initial":"p","final":["p"],
            "transitions":[["p","a","p"]]}"#;
        assert!(matches!(parse_automaton(text, false), Err(Error::MissingTransition { .. })));
        assert_eq!(parse_automaton(text, true).unwrap().num_states(), 2);
    }

    #[test]
    fn missing_fields_are_reported() {
        let text = r#"{"kind":"buchi-cm","alphabet":["a"],"states":["p"],"final":["p"],"transitions":[]}"#;
        assert!(matches!(parse_automaton(text, false), Err(Error::Invalid(_))));
        assert!(matches!(parse_automaton("{", false), Err(Error::Json(_))));
    }

    #[test]
    fn witnesses_round_trip_and_replay() {
        let a = AnyAutomaton::Dfa(samples::dfa_ab_star());
        let p = builtin("builtin:da").unwrap();
        let prep = Prepared::new(a.view()).unwrap();
        let w = present(&prep, &p, &MatchConfig::default()).unwrap().witness.unwrap();
        let j = WitnessJson::new(&w, a.view(), &p, 0);
        let text = serde_json::to_string(&j).unwrap();
        let back: WitnessJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        let w2 = back.to_witness(&a, &p).unwrap();
        assert_eq!(w2, w);
        verify_witness(a.view(), &p, &w2).unwrap();
    }

    #[test]
    fn text_rendering_marks_initial_and_final_states() {
        let t = render_automaton_text(&AnyAutomaton::Dfa(samples::dfa_ab_star()));
        assert!(t.starts_with("dfa with 3 states over {a, b}"));
        assert!(t.contains(">* e: a→o  b→z"), "{t}");
    }
}
