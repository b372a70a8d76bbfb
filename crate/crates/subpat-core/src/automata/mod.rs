//! Finite automata over finite and infinite words.

mod buchi;
mod dfa;
mod profile;
mod reverse;

pub use buchi::{Buchi, CmReport, Lasso, TrimView};
pub use dfa::Dfa;
pub use profile::{Profile, ProfileMonoid, PROFILE_CAP};
pub use reverse::ReverseDfa;

use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// An owned automaton of any of the three kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyAutomaton {
    Dfa(Dfa),
    Reverse(ReverseDfa),
    Cm(Buchi),
}

impl AnyAutomaton {
    pub fn view(&self) -> crate::matcher::Automaton<'_> {
        match self {
            AnyAutomaton::Dfa(d) => crate::matcher::Automaton::Dfa(d),
            AnyAutomaton::Reverse(r) => crate::matcher::Automaton::Reverse(r),
            AnyAutomaton::Cm(b) => crate::matcher::Automaton::Cm(b),
        }
    }

    /// `dfa`, `reverse` or `buchi-cm`.
    pub fn kind(&self) -> &'static str {
        match self {
            AnyAutomaton::Dfa(_) => "dfa",
            AnyAutomaton::Reverse(_) => "reverse",
            AnyAutomaton::Cm(_) => "buchi-cm",
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            AnyAutomaton::Dfa(d) => d.alphabet(),
            AnyAutomaton::Reverse(r) => r.alphabet(),
            AnyAutomaton::Cm(b) => b.alphabet(),
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            AnyAutomaton::Dfa(d) => d.num_states(),
            AnyAutomaton::Reverse(r) => r.num_states(),
            AnyAutomaton::Cm(b) => b.num_states(),
        }
    }

    /// Whether the automaton accepts no word.
    pub fn is_empty_language(&self) -> bool {
        match self {
            AnyAutomaton::Dfa(d) => d.is_empty_language(),
            AnyAutomaton::Reverse(r) => r.is_empty_language(),
            AnyAutomaton::Cm(b) => b.is_empty_language(),
        }
    }
}

/// A word is a sequence of symbol indices into an [`Alphabet`].
pub type Word = Vec<usize>;

/// An ordered, duplicate-free list of symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<String>);

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        check_unique(&symbols)?;
        Ok(Alphabet(symbols))
    }

    /// Alphabet `a, b, c, ...` of the given size (size at most 26).
    pub fn latin(size: usize) -> Self {
        Alphabet((0..size).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn symbol(&self, a: usize) -> &str {
        &self.0[a]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    fn single_char(&self) -> bool {
        self.0.iter().all(|s| s.chars().count() == 1)
    }

    /// Words print as plain strings when every symbol is one character,
    /// otherwise as space-separated symbols.
    pub fn format_word(&self, w: &[usize]) -> String {
        let parts: Vec<&str> = w.iter().map(|&a| self.symbol(a)).collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let parsed: Result<Word> = if self.single_char() {
            s.chars().filter(|c| !c.is_whitespace()).map(|c| self.index(&c.to_string())).collect()
        } else {
            s.split_whitespace().map(|t| self.index(t)).collect()
        };
        parsed.map_err(|_| Error::MalformedWord(s.to_string()))
    }
}

pub(crate) fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = HashMap::new();
    for n in names {
        if seen.insert(n.as_str(), ()).is_some() {
            return Err(Error::Duplicate(n.clone()));
        }
    }
    Ok(())
}

pub(crate) fn index_of(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::UnknownState(name.to_string()))
}

/// Preorder on states: `leq(j, k)` holds when every context accepted from `j`
/// is also accepted from `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateOrder {
    n: usize,
    leq: Vec<bool>,
}

impl StateOrder {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The empty order, a placeholder before computation.
    pub(crate) fn trivial() -> Self {
        StateOrder { n: 0, leq: Vec::new() }
    }

    pub fn leq(&self, j: usize, k: usize) -> bool {
        self.leq[j * self.n + k]
    }

    pub fn equiv(&self, j: usize, k: usize) -> bool {
        self.leq(j, k) && self.leq(k, j)
    }

    /// Computes the order for a deterministic step function by backward search
    /// from the pairs `(p, q)` with `p` accepting and `q` rejecting.
    ///
    /// `step[q * k + a]` is the successor of `q` on `a`; the pair graph moves
    /// both components with the same letter.
    pub(crate) fn from_step(n: usize, k: usize, step: &[usize], accepting: &[bool]) -> Self {
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n * k];
        for q in 0..n {
            for a in 0..k {
                pred[step[q * k + a] * k + a].push(q);
            }
        }
        let mut bad = vec![false; n * n];
        let mut queue = VecDeque::new();
        for p in 0..n {
            for q in 0..n {
                if accepting[p] && !accepting[q] {
                    bad[p * n + q] = true;
                    queue.push_back((p, q));
                }
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            for a in 0..k {
                for &pp in &pred[p * k + a] {
                    for &qq in &pred[q * k + a] {
                        if !bad[pp * n + qq] {
                            bad[pp * n + qq] = true;
                            queue.push_back((pp, qq));
                        }
                    }
                }
            }
        }
        StateOrder { n, leq: bad.into_iter().map(|b| !b).collect() }
    }
}

/// Forward closure of `start` under a deterministic step table.
pub(crate) fn closure(n: usize, k: usize, step: &[usize], start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(q) = stack.pop() {
        for a in 0..k {
            let r = step[q * k + a];
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    seen
}

/// A fresh state name that does not collide with `names`.
pub(crate) fn fresh_name(names: &[String], base: &str) -> String {
    let mut candidate = base.to_string();
    let mut i = 1;
    while names.iter().any(|n| n == &candidate) {
        candidate = format!("{base}{i}");
        i += 1;
    }
    candidate
}
