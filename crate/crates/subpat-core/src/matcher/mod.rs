//! Deciding pattern presence by a deterministic search over the
//! configurations of the guessing algorithm, with witness extraction and an
//! independent witness checker.
//!
//! A step guesses a letter `a` and a variable `y`, and advances every edge
//! whose variable `z` satisfies `y ⪯ z`, so `h(z)` collects exactly the
//! letters of steps whose up-set contains `z`. This needs stable superwords.

mod arena;
mod assign;
mod goal;
mod shared;
mod verify;

pub use verify::verify_witness;

use crate::automata::{Buchi, Dfa, ReverseDfa, StateOrder, Word, PROFILE_CAP};
use crate::error::{Error, Result};
use crate::patterns::{wellformedness, Direction, Kind, Pattern};
use serde::{Deserialize, Serialize};

/// Default cap on explored configurations per call.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// An automaton a pattern can be matched against.
#[derive(Clone, Copy, Debug)]
pub enum Automaton<'a> {
    Dfa(&'a Dfa),
    Reverse(&'a ReverseDfa),
    Cm(&'a Buchi),
}

impl Automaton<'_> {
    pub fn direction(&self) -> Direction {
        match self {
            Automaton::Dfa(_) => Direction::Forward,
            _ => Direction::Reverse,
        }
    }

    pub fn state_name(&self, q: usize) -> &str {
        match self {
            Automaton::Dfa(d) => d.state_name(q),
            Automaton::Reverse(r) => r.state_name(q),
            Automaton::Cm(b) => b.state_name(q),
        }
    }

    pub fn alphabet(&self) -> &crate::automata::Alphabet {
        match self {
            Automaton::Dfa(d) => d.alphabet(),
            Automaton::Reverse(r) => r.alphabet(),
            Automaton::Cm(b) => b.alphabet(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Shared search, falling back to per-assignment search for domains
    /// too large to encode.
    Auto,
    /// One search over per-variable transformations, solving for the vertex
    /// assignment at every configuration.
    Shared,
    /// One search per vertex assignment over per-edge cursors.
    PerAssignment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchConfig {
    pub budget: u64,
    pub strategy: Strategy,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig { budget: DEFAULT_BUDGET, strategy: Strategy::Auto }
    }
}

/// `h` maps variables to words and `g` maps vertices to automaton states
/// (original indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub h: Vec<Word>,
    pub g: Vec<usize>,
}

impl Witness {
    /// `h: x=ab y=b; g: j=q0 k=q1`
    pub fn describe(&self, aut: Automaton, p: &Pattern) -> String {
        let sigma = aut.alphabet();
        let h: Vec<String> =
            self.h.iter().enumerate().map(|(x, w)| format!("{}={}", p.vars().name(x), sigma.format_word(w))).collect();
        let g: Vec<String> =
            self.g.iter().enumerate().map(|(v, &q)| format!("{}={}", p.vertex_name(v), aut.state_name(q))).collect();
        format!("h: {}; g: {}", h.join(" "), g.join(" "))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchStats {
    pub configurations: u64,
    pub assignments: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchOutcome {
    pub witness: Option<Witness>,
    pub stats: MatchStats,
}

impl MatchOutcome {
    pub fn present(&self) -> bool {
        self.witness.is_some()
    }
}

/// An automaton reduced to the states a vertex may be mapped to, with a
/// local step function closed on that set.
#[derive(Clone, Debug)]
pub struct Prepared<'a> {
    automaton: Automaton<'a>,
    /// local index → original state
    states: Vec<usize>,
    k: usize,
    /// `next[q * k + a]` is `q·a` (forward) or `a∘q` (reverse), locally
    next: Vec<usize>,
    finals: Vec<bool>,
    order: StateOrder,
}

impl<'a> Prepared<'a> {
    /// Forward DFA: vertices map to reachable states.
    pub fn dfa(d: &'a Dfa) -> Self {
        let keep = d.reachable();
        Self::restrict(Automaton::Dfa(d), &keep, d.alphabet().len(), |q, a| d.step(q, a))
    }

    /// Reverse DFA: vertices map to states from which the final state is
    /// reachable.
    pub fn reverse(r: &'a ReverseDfa) -> Self {
        let keep = r.coreachable_final();
        let mut p = Self::restrict(Automaton::Reverse(r), &keep, r.alphabet().len(), |q, a| r.step(a, q));
        let states = p.states.clone();
        p.order = order_for(&p, |i| r.initials()[states[i]]);
        p
    }

    /// Carton-Michel automaton: vertices map to the trim part. Fails unless
    /// the automaton validates.
    pub fn cm(b: &'a Buchi) -> Result<Self> {
        let report = b.validate_cm(PROFILE_CAP)?;
        if !report.is_cm() {
            return Err(Error::Invalid("automaton is not a Carton-Michel automaton".into()));
        }
        Self::cm_unchecked(b)
    }

    /// As [`Prepared::cm`] for an automaton already known to validate.
    pub fn cm_unchecked(b: &'a Buchi) -> Result<Self> {
        let t = b.trim_view()?;
        let order = t.state_order();
        Ok(Prepared {
            automaton: Automaton::Cm(b),
            states: t.states.clone(),
            k: t.k,
            next: t.rev.clone(),
            finals: t.finals.clone(),
            order,
        })
    }

    pub fn new(a: Automaton<'a>) -> Result<Self> {
        Ok(match a {
            Automaton::Dfa(d) => Self::dfa(d),
            Automaton::Reverse(r) => Self::reverse(r),
            Automaton::Cm(b) => Self::cm(b)?,
        })
    }

    fn restrict(
        automaton: Automaton<'a>,
        keep: &[bool],
        k: usize,
        step: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let states: Vec<usize> = (0..keep.len()).filter(|&q| keep[q]).collect();
        let mut local = vec![usize::MAX; keep.len()];
        for (i, &q) in states.iter().enumerate() {
            local[q] = i;
        }
        let next = states
            .iter()
            .flat_map(|&q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| local[step(q, a)])
            .collect();
        let finals = vec![false; states.len()];
        let mut p = Prepared { automaton, states, k, next, finals, order: StateOrder::trivial() };
        if let Automaton::Dfa(d) = automaton {
            let states = p.states.clone();
            p.order = order_for(&p, |i| d.is_final(states[i]));
        }
        p
    }

    pub fn automaton(&self) -> Automaton<'a> {
        self.automaton
    }

    pub fn domain_size(&self) -> usize {
        self.states.len()
    }

    pub(crate) fn step(&self, q: usize, a: usize) -> usize {
        self.next[q * self.k + a]
    }

    /// Whether some two domain states satisfy the endpoint predicate; if
    /// none do, no pattern of that kind can be present.
    pub fn has_separated_pair(&self, kind: Kind) -> bool {
        let n = self.states.len();
        (0..n).any(|j| (0..n).any(|k| self.separates(kind, j, k)))
    }

    /// Local endpoint predicate of the pattern kind.
    pub(crate) fn separates(&self, kind: Kind, j: usize, k: usize) -> bool {
        match kind {
            Kind::Neq => !self.order.equiv(j, k),
            Kind::Nleq => !self.order.leq(j, k),
        }
    }
}

fn order_for(p: &Prepared, accepting: impl Fn(usize) -> bool) -> StateOrder {
    let acc: Vec<bool> = (0..p.states.len()).map(accepting).collect();
    StateOrder::from_step(p.states.len(), p.k, &p.next, &acc)
}

fn check_preconditions(prep: &Prepared, p: &Pattern) -> Result<()> {
    let dir = prep.automaton.direction();
    if p.direction() != dir {
        return Err(Error::DirectionMismatch(format!(
            "a {:?} pattern cannot be matched in this automaton",
            p.direction()
        )));
    }
    if p.is_enhanced() && !matches!(prep.automaton, Automaton::Cm(_)) {
        return Err(Error::Invalid("final edges and nonemptiness need a Carton-Michel automaton".into()));
    }
    if !wellformedness(p).stable_superwords {
        return Err(Error::Invalid("pattern lacks stable superwords; the search would be unsound".into()));
    }
    Ok(())
}

/// Decides presence of `p` in a prepared automaton.
pub fn present(prep: &Prepared, p: &Pattern, cfg: &MatchConfig) -> Result<MatchOutcome> {
    check_preconditions(prep, p)?;
    let mut stats = MatchStats::default();
    let found = if !prep.has_separated_pair(p.kind()) {
        None
    } else {
        match cfg.strategy {
            Strategy::PerAssignment => assign::search(prep, p, cfg.budget, &mut stats)?,
            Strategy::Shared => shared::search(prep, p, cfg.budget, &mut stats)?,
            Strategy::Auto if shared::fits(prep, p) => shared::search(prep, p, cfg.budget, &mut stats)?,
            Strategy::Auto => assign::search(prep, p, cfg.budget, &mut stats)?,
        }
    };
    let witness = found.map(|(steps, g)| build_witness(prep, p, &steps, &g));
    Ok(MatchOutcome { witness, stats })
}

/// Presence of a forward pattern in a DFA.
pub fn present_forward(d: &Dfa, p: &Pattern, cfg: &MatchConfig) -> Result<MatchOutcome> {
    present(&Prepared::dfa(d), p, cfg)
}

/// Presence of a reverse pattern in a reverse DFA.
pub fn present_reverse(r: &ReverseDfa, p: &Pattern, cfg: &MatchConfig) -> Result<MatchOutcome> {
    present(&Prepared::reverse(r), p, cfg)
}

/// Presence of a reverse (possibly enhanced) pattern in a validated
/// Carton-Michel automaton.
pub fn present_cm(b: &Buchi, p: &Pattern, cfg: &MatchConfig) -> Result<MatchOutcome> {
    present(&Prepared::cm(b)?, p, cfg)
}

/// One guessed step: a letter and the variable whose up-set moves.
pub(crate) type Step = (usize, usize);

fn build_witness(prep: &Prepared, p: &Pattern, steps: &[Step], g: &[usize]) -> Witness {
    let vars = p.vars();
    let mut h: Vec<Word> = vec![Vec::new(); vars.len()];
    for &(a, y) in steps {
        for (z, w) in h.iter_mut().enumerate() {
            if vars.leq(y, z) {
                w.push(a);
            }
        }
    }
    if p.direction() == Direction::Reverse {
        h.iter_mut().for_each(|w| w.reverse());
    }
    Witness { h, g: g.iter().map(|&q| prep.states[q]).collect() }
}
