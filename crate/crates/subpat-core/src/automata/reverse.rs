use super::{check_unique, closure, fresh_name, index_of, Alphabet, StateOrder};
use crate::error::{Error, Result};

/// Reverse-deterministic automaton `(Q, A, ∘, I, f)` reading right to left.
///
/// `a₁…aₙ∘q = a₁∘(…∘(aₙ∘q))` and a word `u` is accepted iff `u∘f ∈ I`.
/// Edges are drawn as reading paths: `p –a→ q` means `a∘q = p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverseDfa {
    states: Vec<String>,
    alphabet: Alphabet,
    /// `rho[q * |A| + a] = a∘q`
    rho: Vec<usize>,
    initials: Vec<bool>,
    final_state: usize,
}

impl ReverseDfa {
    pub fn from_table(
        states: Vec<String>,
        alphabet: Alphabet,
        rho: Vec<usize>,
        initials: Vec<bool>,
        final_state: usize,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        check_unique(&states)?;
        if rho.len() != n * alphabet.len() || initials.len() != n || final_state >= n {
            return Err(Error::Invalid("transition table has the wrong shape".into()));
        }
        if rho.iter().any(|&q| q >= n) {
            return Err(Error::Invalid("transition target out of range".into()));
        }
        Ok(ReverseDfa { states, alphabet, rho, initials, final_state })
    }

    /// Builds from path-oriented edges `(p, a, q)` meaning `a∘q = p`. Every
    /// `(a, q)` needs exactly one edge unless `complete` adds a non-initial sink.
    pub fn from_names(
        states: &[String],
        alphabet: Alphabet,
        edges: &[(String, String, String)],
        initials: &[String],
        final_state: &str,
        complete: bool,
    ) -> Result<Self> {
        let mut states = states.to_vec();
        if states.is_empty() {
            return Err(Error::NoStates);
        }
        check_unique(&states)?;
        let k = alphabet.len();
        let mut table: Vec<Option<usize>> = vec![None; states.len() * k];
        for (p, a, q) in edges {
            let (p, a, q) = (index_of(&states, p)?, alphabet.index(a)?, index_of(&states, q)?);
            match table[q * k + a] {
                Some(prev) if prev != p => {
                    return Err(Error::Nondeterministic {
                        state: states[q].clone(),
                        symbol: alphabet.symbol(a).to_string(),
                    })
                }
                _ => table[q * k + a] = Some(p),
            }
        }
        let final_state = index_of(&states, final_state)?;
        let mut init = vec![false; states.len()];
        for i in initials {
            init[index_of(&states, i)?] = true;
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
            init.push(false);
            table.extend(std::iter::repeat(Some(sink)).take(k));
            for t in table.iter_mut() {
                t.get_or_insert(sink);
            }
        }
        let rho = table.into_iter().map(|t| t.expect("completed")).collect();
        ReverseDfa::from_table(states, alphabet, rho, init, final_state)
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

    pub fn final_state(&self) -> usize {
        self.final_state
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initials[q]
    }

    pub fn initials(&self) -> &[bool] {
        &self.initials
    }

    pub fn rho(&self) -> &[usize] {
        &self.rho
    }

    /// `a∘q`
    pub fn step(&self, a: usize, q: usize) -> usize {
        self.rho[q * self.alphabet.len() + a]
    }

    /// `w∘q`, reading `w` from its last letter.
    pub fn run(&self, w: &[usize], q: usize) -> usize {
        w.iter().rev().fold(q, |q, &a| self.step(a, q))
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        self.initials[self.run(w, self.final_state)]
    }

    /// Path-oriented edges `(p, a, q)` with `a∘q = p`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.alphabet.len();
        self.rho.iter().enumerate().map(move |(i, &p)| (p, i % k, i / k))
    }

    /// States `u∘f`: those from which the final state is reachable along
    /// reading paths.
    pub fn coreachable_final(&self) -> Vec<bool> {
        closure(self.num_states(), self.alphabet.len(), &self.rho, &[self.final_state])
    }

    pub fn is_empty_language(&self) -> bool {
        let co = self.coreachable_final();
        !(0..self.num_states()).any(|q| co[q] && self.initials[q])
    }

    /// `j ≤ k` iff `u∘j ∈ I` implies `u∘k ∈ I` for every word `u`.
    pub fn state_order(&self) -> StateOrder {
        StateOrder::from_step(self.num_states(), self.alphabet.len(), &self.rho, &self.initials)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn ends_with_a_automaton_accepts_its_language() {
        let r = samples::rev_ends_with_a();
        let alph = r.alphabet().clone();
        for w in ["a", "ba", "aba", "bba"] {
            assert!(r.accepts(&alph.parse_word(w).unwrap()), "{w}");
        }
        for w in ["", "b", "ab", "aab"] {
            assert!(!r.accepts(&alph.parse_word(w).unwrap()), "{w}");
        }
        assert_eq!(r.coreachable_final(), vec![true, true, true]);
    }

    #[test]
    fn reversing_a_dfa_accepts_mirror_words() {
        let d = samples::dfa_a();
        let r = d.reverse();
        let alph = d.alphabet().clone();
        for w in ["", "a", "aa", "ab", "ba", "bb", "aab", "bba", "abab"] {
            let u = alph.parse_word(w).unwrap();
            let mut m = u.clone();
            m.reverse();
            assert_eq!(r.accepts(&u), d.accepts(&m), "{w}");
        }
    }

    #[test]
    fn reverse_order_matches_hand_computation() {
        // p initial with a,b-loops; t final; m rejecting sink.
        let r = samples::rev_ends_with_a();
        let (p, t, m) = (0, 1, 2);
        let o = r.state_order();
        assert!(o.leq(m, p) && o.leq(t, p) && o.leq(m, t));
        assert!(!o.leq(p, t) && !o.leq(p, m) && !o.leq(t, m));
    }

    #[test]
    fn missing_predecessor_requires_completion() {
        let st: Vec<String> = ["p", "q"].iter().map(|s| s.to_string()).collect();
        let e = vec![("p".to_string(), "a".to_string(), "q".to_string())];
        let r = ReverseDfa::from_names(&st, Alphabet::latin(1), &e, &["p".into()], "q", false);
        assert!(matches!(r, Err(Error::MissingTransition { .. })));
        let r = ReverseDfa::from_names(&st, Alphabet::latin(1), &e, &["p".into()], "q", true)
            .unwrap();
        assert_eq!(r.num_states(), 3);
        assert_eq!(r.step(0, 0), 2);
    }
}
