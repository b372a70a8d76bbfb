use super::{check_unique, index_of, Alphabet, Profile, ProfileMonoid, StateOrder, Word};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Büchi automaton `(Q, A, δ, I, F)`. A run may start in any state; it is
/// final when it visits `F` infinitely often, and a word is accepted when
/// some final run starts in `I`.
///
/// A Carton-Michel automaton is one in which every infinite word has exactly
/// one final run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Buchi {
    states: Vec<String>,
    alphabet: Alphabet,
    /// Sorted, duplicate-free `(source, symbol, target)` triples.
    edges: Vec<(usize, usize, usize)>,
    initials: Vec<bool>,
    finals: Vec<bool>,
}

/// An ultimately periodic word `prefix·period^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Word,
    pub period: Word,
}

/// Outcome of Carton-Michel validation with a counterexample for the first
/// failed property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub complete: bool,
    pub unambiguous: bool,
    /// A word without final run when incomplete.
    pub uncovered: Option<Lasso>,
    /// A word with two final runs when ambiguous.
    pub ambiguous: Option<Lasso>,
    pub trim: Vec<usize>,
    pub empty_language: bool,
}

impl CmReport {
    pub fn is_cm(&self) -> bool {
        self.complete && self.unambiguous
    }
}

/// The trim part of a Büchi automaton with its reverse transition function
/// `a∘q`, renumbered `0..m` in the original state order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimView {
    /// Original index of each trim state.
    pub states: Vec<usize>,
    pub k: usize,
    /// `rev[q * k + a] = a∘q`, the unique `a`-predecessor of `q`.
    pub rev: Vec<usize>,
    pub initials: Vec<bool>,
    pub finals: Vec<bool>,
}

impl TrimView {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn local(&self, original: usize) -> Option<usize> {
        self.states.iter().position(|&q| q == original)
    }

    /// `j ≤ k` iff `u∘j ∈ I` implies `u∘k ∈ I` for all words `u`.
    pub fn state_order(&self) -> StateOrder {
        StateOrder::from_step(self.len(), self.k, &self.rev, &self.initials)
    }
}

impl Buchi {
    pub fn from_table(
        states: Vec<String>,
        alphabet: Alphabet,
        edges: Vec<(usize, usize, usize)>,
        initials: Vec<bool>,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        check_unique(&states)?;
        if initials.len() != n || finals.len() != n {
            return Err(Error::Invalid("state flags have the wrong length".into()));
        }
        if edges.iter().any(|&(p, a, q)| p >= n || q >= n || a >= alphabet.len()) {
            return Err(Error::Invalid("edge out of range".into()));
        }
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        Ok(Buchi { states, alphabet, edges, initials, finals })
    }

    pub fn from_names(
        states: &[String],
        alphabet: Alphabet,
        edges: &[(String, String, String)],
        initials: &[String],
        finals: &[String],
    ) -> Result<Self> {
        check_unique(states)?;
        let edges = edges
            .iter()
            .map(|(p, a, q)| Ok((index_of(states, p)?, alphabet.index(a)?, index_of(states, q)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut init = vec![false; states.len()];
        for i in initials {
            init[index_of(states, i)?] = true;
        }
        let mut fin = vec![false; states.len()];
        for f in finals {
            fin[index_of(states, f)?] = true;
        }
        Buchi::from_table(states.to_vec(), alphabet, edges, init, fin)
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

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initials[q]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn initials(&self) -> &[bool] {
        &self.initials
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn initial_mask(&self) -> u32 {
        mask(&self.initials)
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.num_states()];
        for &(p, _, q) in &self.edges {
            succ[p].push(q);
        }
        succ
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.num_states()];
        for &(p, _, q) in &self.edges {
            pred[q].push(p);
        }
        pred
    }

    /// States admitting a path to a final state.
    pub fn coreachable_final(&self) -> Vec<bool> {
        backward_closure(&self.predecessors(), (0..self.num_states()).filter(|&q| self.finals[q]))
    }

    /// States from which some final run starts: those that reach a final
    /// state lying on a cycle.
    pub fn trim_part(&self) -> Vec<bool> {
        let succ = self.successors();
        let n = self.num_states();
        let on_cycle = |f: usize| {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = succ[f].clone();
            while let Some(q) = stack.pop() {
                if q == f {
                    return true;
                }
                if !seen[q] {
                    seen[q] = true;
                    stack.extend(&succ[q]);
                }
            }
            false
        };
        let good: Vec<usize> = (0..n).filter(|&f| self.finals[f] && on_cycle(f)).collect();
        backward_closure(&self.predecessors(), good.into_iter())
    }

    /// The trim part with its reverse transition function. Fails when some
    /// trim state does not have exactly one predecessor per letter.
    pub fn trim_view(&self) -> Result<TrimView> {
        let trim = self.trim_part();
        let k = self.alphabet.len();
        let states: Vec<usize> = (0..self.num_states()).filter(|&q| trim[q]).collect();
        let mut local = vec![usize::MAX; self.num_states()];
        for (i, &q) in states.iter().enumerate() {
            local[q] = i;
        }
        let mut count = vec![0usize; states.len() * k];
        let mut rev = vec![usize::MAX; states.len() * k];
        for &(p, a, q) in &self.edges {
            if trim[q] {
                // A predecessor of a trim state is trim.
                count[local[q] * k + a] += 1;
                rev[local[q] * k + a] = local[p];
            }
        }
        if let Some(i) = count.iter().position(|&c| c != 1) {
            return Err(Error::NotReverseDeterministic {
                state: self.states[states[i / k]].clone(),
                symbol: self.alphabet.symbol(i % k).to_string(),
                count: count[i],
            });
        }
        Ok(TrimView {
            initials: states.iter().map(|&q| self.initials[q]).collect(),
            finals: states.iter().map(|&q| self.finals[q]).collect(),
            states,
            k,
            rev,
        })
    }

    /// True when no initial state starts a final run.
    pub fn is_empty_language(&self) -> bool {
        let trim = self.trim_part();
        !(0..self.num_states()).any(|q| trim[q] && self.initials[q])
    }

    /// Whether `prefix·period^ω` is accepted; `period` must be nonempty.
    pub fn accepts_lasso(&self, lasso: &Lasso) -> Result<bool> {
        if lasso.period.is_empty() {
            return Err(Error::MalformedWord("empty period".into()));
        }
        if self.num_states() > 32 {
            return Err(Error::TooLarge("profiles support at most 32 states".into()));
        }
        let n = self.num_states();
        let word = |w: &[usize]| {
            w.iter().fold(Profile::identity(n), |p, &a| p.mul(&Profile::letter(self, a)))
        };
        let v = word(&lasso.period);
        let mut e = v.clone();
        while e.mul(&e) != e {
            e = e.mul(&v);
        }
        Ok(Profile::lasso_accepts(self.initial_mask(), &word(&lasso.prefix), &e))
    }

    /// Checks that every infinite word has exactly one final run.
    ///
    /// Unambiguity is decided on the self-product: two runs that differ at
    /// some position give two final runs of a suffix starting in distinct
    /// states. Completeness is decided over the profile monoid: every lasso
    /// class `u·v^ω` needs a final run.
    pub fn validate_cm(&self, cap: usize) -> Result<CmReport> {
        let ambiguous = self.ambiguity_witness();
        let uncovered = self.uncovered_word(cap)?;
        let trim = self.trim_part();
        Ok(CmReport {
            complete: uncovered.is_none(),
            unambiguous: ambiguous.is_none(),
            uncovered,
            ambiguous,
            trim: (0..self.num_states()).filter(|&q| trim[q]).collect(),
            empty_language: self.is_empty_language(),
        })
    }

    fn uncovered_word(&self, cap: usize) -> Result<Option<Lasso>> {
        let m = ProfileMonoid::new(self, cap)?;
        let n = self.num_states();
        // Images of Q under all words, with a shortest word for each.
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut sets: Vec<(u32, Word)> = vec![(full, Vec::new())];
        let mut seen = std::collections::HashSet::from([full]);
        let mut i = 0;
        while i < sets.len() {
            for a in 0..self.alphabet.len() {
                let next = m.profile(m.letter(a)).image(sets[i].0);
                if seen.insert(next) {
                    let mut w = sets[i].1.clone();
                    w.push(a);
                    sets.push((next, w));
                }
            }
            i += 1;
        }
        for e in m.semigroup_idempotents() {
            let p = m.profile(e);
            for (s, w) in &sets {
                if p.image(*s) & p.final_loops() == 0 {
                    let period = m.nonempty_rep(e).expect("semigroup element").clone();
                    return Ok(Some(Lasso { prefix: w.clone(), period }));
                }
            }
        }
        Ok(None)
    }

    fn ambiguity_witness(&self) -> Option<Lasso> {
        let n = self.num_states();
        let node = |p: usize, q: usize| p * n + q;
        // Product edges labelled by letters.
        let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n * n];
        for &(p, a, p2) in &self.edges {
            for &(q, b, q2) in &self.edges {
                if a == b {
                    out[node(p, q)].push((a, node(p2, q2)));
                }
            }
        }
        let comp = sccs(&out);
        let nodes = n * n;
        // A component is good when it has a cycle and contains nodes final
        // on the left and on the right.
        let mut has_cycle = vec![false; nodes];
        let mut left = vec![false; nodes];
        let mut right = vec![false; nodes];
        for v in 0..nodes {
            let c = comp[v];
            if out[v].iter().any(|&(_, w)| comp[w] == c) {
                has_cycle[c] = true;
            }
            if self.finals[v / n] {
                left[c] = true;
            }
            if self.finals[v % n] {
                right[c] = true;
            }
        }
        let good = |c: usize| has_cycle[c] && left[c] && right[c];
        let starts: Vec<usize> =
            (0..nodes).filter(|&v| v / n != v % n).collect();
        let (path, target) = bfs_path(&out, &starts, |v| good(comp[v]))?;
        // Inside the component: go to a left-final node, a right-final node,
        // and back to the entry.
        let inside = |v: usize| comp[v] == comp[target];
        let restricted: Vec<Vec<(usize, usize)>> = (0..nodes)
            .map(|v| out[v].iter().copied().filter(|&(_, w)| inside(v) && inside(w)).collect())
            .collect();
        let (w1, l) = bfs_path(&restricted, &[target], |v| inside(v) && self.finals[v / n])?;
        let (w2, r) = bfs_path(&restricted, &[l], |v| inside(v) && self.finals[v % n])?;
        let (mut w3, _) = bfs_path_nonempty(&restricted, r, target)?;
        let mut period = w1.1;
        period.extend(w2.1);
        period.append(&mut w3);
        Some(Lasso { prefix: path.1, period })
    }
}

pub(crate) fn mask(flags: &[bool]) -> u32 {
    flags.iter().enumerate().filter(|(_, &f)| f).fold(0, |m, (i, _)| m | 1 << i)
}

fn backward_closure(pred: &[Vec<usize>], start: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; pred.len()];
    let mut stack: Vec<usize> = Vec::new();
    for s in start {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(q) = stack.pop() {
        for &p in &pred[q] {
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    seen
}

/// Breadth-first search from `starts` to the first node satisfying `goal`;
/// returns `((start, word), goal_node)`.
fn bfs_path(
    out: &[Vec<(usize, usize)>],
    starts: &[usize],
    goal: impl Fn(usize) -> bool,
) -> Option<((usize, Word), usize)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; out.len()];
    let mut seen = vec![false; out.len()];
    let mut queue = VecDeque::new();
    for &s in starts {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if goal(v) {
            let mut w = Vec::new();
            let mut cur = v;
            while let Some((from, a)) = prev[cur] {
                w.push(a);
                cur = from;
            }
            w.reverse();
            return Some(((cur, w), v));
        }
        for &(a, t) in &out[v] {
            if !seen[t] {
                seen[t] = true;
                prev[t] = Some((v, a));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Shortest nonempty word from `from` to `to`.
fn bfs_path_nonempty(out: &[Vec<(usize, usize)>], from: usize, to: usize) -> Option<(Word, usize)> {
    out[from].iter().find_map(|&(a, t)| {
        bfs_path(out, &[t], |v| v == to).map(|((_, mut w), _)| {
            w.insert(0, a);
            (w, to)
        })
    })
}

/// Strongly connected components (iterative Tarjan); returns a component id
/// per node.
fn sccs(out: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let n = out.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < out[v].len() {
                let w = out[v][*i].1;
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn figure_automaton_is_carton_michel_with_four_trim_states() {
        let b = samples::cm_figure();
        let r = b.validate_cm(super::super::PROFILE_CAP).unwrap();
        assert!(r.is_cm(), "{r:?}");
        assert_eq!(r.trim, vec![0, 1, 2, 3]);
        assert!(!r.empty_language);
    }

    #[test]
    fn figure_automaton_accepts_words_with_an_a() {
        let b = samples::cm_figure();
        let l = |p: &str, v: &str| Lasso {
            prefix: b.alphabet().parse_word(p).unwrap(),
            period: b.alphabet().parse_word(v).unwrap(),
        };
        assert!(b.accepts_lasso(&l("", "a")).unwrap());
        assert!(b.accepts_lasso(&l("ba", "b")).unwrap());
        assert!(b.accepts_lasso(&l("", "ab")).unwrap());
        assert!(!b.accepts_lasso(&l("", "b")).unwrap());
        assert!(!b.accepts_lasso(&l("bbb", "bb")).unwrap());
    }

    #[test]
    fn trim_view_inverts_edges() {
        let b = samples::cm_figure();
        let t = b.trim_view().unwrap();
        assert_eq!(t.states, vec![0, 1, 2, 3]);
        // a∘k2 = k1, b∘k1 = k2, a∘k4 = k3, b∘k4 = k4
        assert_eq!(t.rev[1 * 2], 0);
        assert_eq!(t.rev[0 * 2 + 1], 1);
        assert_eq!(t.rev[3 * 2], 2);
        assert_eq!(t.rev[3 * 2 + 1], 3);
    }

    #[test]
    fn ambiguous_automaton_is_refuted_with_a_lasso() {
        // Two final a-loops: a^ω has two final runs.
        let st: Vec<String> = vec!["p".into(), "q".into()];
        let e = vec![
            ("p".to_string(), "a".to_string(), "p".to_string()),
            ("q".to_string(), "a".to_string(), "q".to_string()),
        ];
        let b = Buchi::from_names(&st, Alphabet::latin(1), &e, &st, &st).unwrap();
        let r = b.validate_cm(1000).unwrap();
        assert!(r.complete);
        assert!(!r.unambiguous);
        let l = r.ambiguous.unwrap();
        assert!(!l.period.is_empty());
    }

    #[test]
    fn incomplete_automaton_is_refuted_with_a_lasso() {
        // Only a^ω has a final run.
        let st: Vec<String> = vec!["p".into()];
        let e = vec![("p".to_string(), "a".to_string(), "p".to_string())];
        let b = Buchi::from_names(&st, Alphabet::latin(2), &e, &st, &st).unwrap();
        let r = b.validate_cm(1000).unwrap();
        assert!(r.unambiguous);
        assert!(!r.complete);
        let l = r.uncovered.unwrap();
        assert!(l.period.contains(&1) || l.prefix.contains(&1));
    }

    #[test]
    fn empty_language_is_detected() {
        let mut b = samples::cm_figure();
        b.initials = vec![false, false, false, false, true];
        assert!(b.is_empty_language());
    }

    #[test]
    fn scc_ids_group_cycles() {
        let out = vec![vec![(0, 1)], vec![(0, 0)], vec![(0, 0)]];
        let c = sccs(&out);
        assert_eq!(c[0], c[1]);
        assert_ne!(c[0], c[2]);
    }
}
