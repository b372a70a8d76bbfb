use super::{check_unique, closure, fresh_name, index_of, Alphabet, ReverseDfa, StateOrder};
use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// Complete deterministic automaton `(Q, A, ·, i, F)` reading left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    states: Vec<String>,
    alphabet: Alphabet,
    /// `delta[q * |A| + a] = q·a`
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from an index table; `delta` must be total and in range.
    pub fn from_table(
        states: Vec<String>,
        alphabet: Alphabet,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        check_unique(&states)?;
        if delta.len() != n * alphabet.len() || finals.len() != n || initial >= n {
            return Err(Error::Invalid("transition table has the wrong shape".into()));
        }
        if delta.iter().any(|&q| q >= n) {
            return Err(Error::Invalid("transition target out of range".into()));
        }
        Ok(Dfa { states, alphabet, delta, initial, finals })
    }

    /// Builds a DFA from named transitions. Missing transitions are an error
    /// unless `complete` is set, in which case they lead to a fresh non-final sink.
    pub fn from_names(
        states: &[String],
        alphabet: Alphabet,
        transitions: &[(String, String, String)],
        initial: &str,
        finals: &[String],
        complete: bool,
    ) -> Result<Self> {
        let mut states = states.to_vec();
        if states.is_empty() {
            return Err(Error::NoStates);
        }
        check_unique(&states)?;
        let k = alphabet.len();
        let mut table: Vec<Option<usize>> = vec![None; states.len() * k];
        for (p, a, q) in transitions {
            let (p, a, q) = (index_of(&states, p)?, alphabet.index(a)?, index_of(&states, q)?);
            match table[p * k + a] {
                Some(prev) if prev != q => {
                    return Err(Error::Nondeterministic {
                        state: states[p].clone(),
                        symbol: alphabet.symbol(a).to_string(),
                    })
                }
                _ => table[p * k + a] = Some(q),
            }
        }
        let initial = index_of(&states, initial)?;
        let mut final_flags = vec![false; states.len()];
        for f in finals {
            final_flags[index_of(&states, f)?] = true;
        }
        if let Some(missing) = table.iter().position(Option::is_none) {
            if !complete {
                return Err(Error::MissingTransition {
                    state: states[missing / k].clone(),
                    symbol: alphabet.symbol(missing % k).to_string(),
                });
            }
            let sink = states.len();
            states.push(fresh_name(&states, "sink"));
            final_flags.push(false);
            table.extend(std::iter::repeat(Some(sink)).take(k));
            for t in table.iter_mut() {
                t.get_or_insert(sink);
            }
        }
        let delta = table.into_iter().map(|t| t.expect("completed")).collect();
        Dfa::from_table(states, alphabet, delta, initial, final_flags)
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        index_of(&self.states, name)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn delta(&self) -> &[usize] {
        &self.delta
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run(&self, q: usize, w: &[usize]) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        self.finals[self.run(self.initial, w)]
    }

    /// Transitions as `(source, symbol, target)` index triples in table order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.alphabet.len();
        self.delta.iter().enumerate().map(move |(i, &q)| (i / k, i % k, q))
    }

    pub fn reachable(&self) -> Vec<bool> {
        closure(self.num_states(), self.alphabet.len(), &self.delta, &[self.initial])
    }

    pub fn is_empty_language(&self) -> bool {
        let reach = self.reachable();
        !(0..self.num_states()).any(|q| reach[q] && self.finals[q])
    }

    /// `j ≤ k` iff `j·u ∈ F` implies `k·u ∈ F` for every word `u`.
    pub fn state_order(&self) -> StateOrder {
        StateOrder::from_step(self.num_states(), self.alphabet.len(), &self.delta, &self.finals)
    }

    /// The reverse automaton `(Q, A, ·, F, i)`: same transition function read
    /// right to left, initial states `F` and final state `i`. It accepts the
    /// mirror language.
    pub fn reverse(&self) -> ReverseDfa {
        ReverseDfa::from_table(
            self.states.clone(),
            self.alphabet.clone(),
            self.delta.clone(),
            self.finals.clone(),
            self.initial,
        )
        .expect("a valid DFA reverses to a valid reverse DFA")
    }

    /// Reachable part renumbered in breadth-first order from the initial state
    /// (letters in alphabet order). Isomorphic reachable parts give equal results.
    pub fn canonical(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut number = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial];
        number[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..k {
                let r = self.step(q, a);
                if number[r] == usize::MAX {
                    number[r] = order.len();
                    order.push(r);
                }
            }
            i += 1;
        }
        let delta = order
            .iter()
            .flat_map(|&q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| number[self.step(q, a)])
            .collect();
        Dfa {
            states: order.iter().map(|&q| self.states[q].clone()).collect(),
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            finals: order.iter().map(|&q| self.finals[q]).collect(),
        }
    }

    /// Minimal DFA of the same language by Moore partition refinement on the
    /// reachable part. Each class is named after its first member in
    /// breadth-first order.
    pub fn minimize(&self) -> Dfa {
        let c = self.canonical();
        let n = c.num_states();
        let k = c.alphabet.len();
        let mut class: Vec<usize> = c.finals.iter().map(|&f| f as usize).collect();
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let mut sig = Vec::with_capacity(k + 1);
                    sig.push(class[q]);
                    sig.extend((0..k).map(|a| class[c.step(q, a)]));
                    let len = ids.len();
                    *ids.entry(sig).or_insert(len)
                })
                .collect();
            let stable = ids.len() == class.iter().collect::<std::collections::HashSet<_>>().len();
            class = next;
            if stable {
                break;
            }
        }
        // Quotient, then renumber canonically.
        let classes = class.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; classes];
        for q in 0..n {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let delta = rep
            .iter()
            .flat_map(|&q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| class[c.step(q, a)])
            .collect();
        Dfa {
            states: rep.iter().map(|&q| c.states[q].clone()).collect(),
            alphabet: c.alphabet.clone(),
            delta,
            initial: class[c.initial],
            finals: rep.iter().map(|&q| c.finals[q]).collect(),
        }
        .canonical()
    }

    /// Adds a fresh non-final state `q` unreachable from anywhere; used to
    /// exercise side conditions.
    /// The same DFA with the acceptance of `q` toggled.
    pub fn with_final_flipped(&self, q: usize) -> Dfa {
        let mut d = self.clone();
        d.finals[q] = !d.finals[q];
        d
    }

    pub fn with_unreachable_sink(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut d = self.clone();
        let s = d.num_states();
        d.states.push(fresh_name(&d.states, "dead"));
        d.finals.push(false);
        d.delta.extend(std::iter::repeat(s).take(k));
        d
    }

    /// Breadth-first shortest word from `p` to `q`, if any.
    pub fn path_word(&self, p: usize, q: usize) -> Option<Vec<usize>> {
        let k = self.alphabet.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[p] = true;
        let mut queue = VecDeque::from([p]);
        while let Some(s) = queue.pop_front() {
            if s == q {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((from, a)) = prev[cur] {
                    w.push(a);
                    cur = from;
                }
                w.reverse();
                return Some(w);
            }
            for a in 0..k {
                let t = self.step(s, a);
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((s, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }
}
