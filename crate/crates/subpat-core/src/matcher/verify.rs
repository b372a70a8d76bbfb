//! Independent witness replay. Nothing here reuses the search, the prepared
//! domains or the automata's own order and trim computations.

use super::{Automaton, Witness};
use crate::patterns::{Kind, Pattern};

/// Checks every presence condition for `w`; the error names the first
/// violated clause.
pub fn verify_witness(aut: Automaton, p: &Pattern, w: &Witness) -> Result<(), String> {
    let model = Model::of(aut)?;
    if w.h.len() != p.vars().len() || w.g.len() != p.num_vertices() {
        return Err("shape: witness does not match the pattern".into());
    }
    if w.g.iter().any(|&q| q >= model.n) || w.h.iter().flatten().any(|&a| a >= model.k) {
        return Err("shape: state or letter out of range".into());
    }
    if p.direction() != aut.direction() {
        return Err("direction: pattern and automaton disagree".into());
    }
    for (v, &q) in w.g.iter().enumerate() {
        if !model.allowed[q] {
            return Err(format!("domain: vertex {} maps to a disallowed state", p.vertex_name(v)));
        }
    }
    if p.requires_nonempty() {
        if let Some(x) = w.h.iter().position(Vec::is_empty) {
            return Err(format!("nonempty: h({}) is empty", p.vars().name(x)));
        }
    }
    for (x, y) in p.vars().strict_pairs() {
        if !is_subword(&w.h[x], &w.h[y]) {
            return Err(format!("subword violation: h({}) is not a subword of h({})", p.vars().name(x), p.vars().name(y)));
        }
    }
    for (i, e) in p.edges().iter().enumerate() {
        let word = &w.h[e.var];
        let (end, met_final) = model.replay(w.g[e.src], word)?;
        if end != w.g[e.dst] {
            return Err(format!(
                "homomorphism: edge {} –{}→ {} is not realized",
                p.vertex_name(e.src),
                p.vars().name(e.var),
                p.vertex_name(e.dst)
            ));
        }
        if p.is_final_edge(i) && !met_final {
            return Err(format!("final edge: edge {i} meets no final state"));
        }
    }
    let leq = model.order();
    let (j, k) = (w.g[p.compare().0], w.g[p.compare().1]);
    let ok = match p.kind() {
        Kind::Neq => !(leq[j][k] && leq[k][j]),
        Kind::Nleq => !leq[j][k],
    };
    if ok {
        Ok(())
    } else {
        Err("endpoint: compared states are not separated".into())
    }
}

/// Greedy subsequence scan.
fn is_subword(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|a| it.any(|b| b == a))
}

/// A total one-step function (`None` where undefined), the accepting
/// predicate for the order, the allowed vertex images, and finals.
struct Model {
    n: usize,
    k: usize,
    forward: bool,
    /// `succ[q][a]`: `q·a` forward, `a∘q` otherwise
    succ: Vec<Vec<Option<usize>>>,
    accepting: Vec<bool>,
    finals: Vec<bool>,
    allowed: Vec<bool>,
}

impl Model {
    fn of(aut: Automaton) -> Result<Self, String> {
        match aut {
            Automaton::Dfa(d) => {
                let (n, k) = (d.num_states(), d.alphabet().len());
                let succ: Vec<Vec<Option<usize>>> =
                    (0..n).map(|q| (0..k).map(|a| Some(d.delta()[q * k + a])).collect()).collect();
                let allowed = closure_from(&succ, &[d.initial()]);
                Ok(Model { n, k, forward: true, succ, accepting: d.finals().to_vec(), finals: vec![false; n], allowed })
            }
            Automaton::Reverse(r) => {
                let (n, k) = (r.num_states(), r.alphabet().len());
                let succ: Vec<Vec<Option<usize>>> =
                    (0..n).map(|q| (0..k).map(|a| Some(r.step(a, q))).collect()).collect();
                let allowed = closure_from(&succ, &[r.final_state()]);
                Ok(Model { n, k, forward: false, succ, accepting: r.initials().to_vec(), finals: vec![false; n], allowed })
            }
            Automaton::Cm(b) => {
                let (n, k) = (b.num_states(), b.alphabet().len());
                // trim: reaches a final state that reaches itself by a nonempty path
                let mut plus = vec![vec![false; n]; n];
                for &(p, _, q) in b.edges() {
                    plus[p][q] = true;
                }
                for m in 0..n {
                    for p in 0..n {
                        if plus[p][m] {
                            for q in 0..n {
                                if plus[m][q] {
                                    plus[p][q] = true;
                                }
                            }
                        }
                    }
                }
                let trim: Vec<bool> = (0..n)
                    .map(|q| (0..n).any(|f| b.is_final(f) && plus[f][f] && (q == f || plus[q][f])))
                    .collect();
                let mut succ = vec![vec![None; k]; n];
                for q in (0..n).filter(|&q| trim[q]) {
                    for a in 0..k {
                        let preds: Vec<usize> =
                            b.edges().iter().filter(|&&(p, x, t)| x == a && t == q && trim[p]).map(|e| e.0).collect();
                        if preds.len() != 1 {
                            return Err("model: trim part is not reverse deterministic".into());
                        }
                        succ[q][a] = Some(preds[0]);
                    }
                }
                Ok(Model { n, k, forward: false, succ, accepting: b.initials().to_vec(), finals: b.finals().to_vec(), allowed: trim })
            }
        }
    }

    /// Follows `word` from `q`; reverse models consume it from the right.
    /// Also reports whether a state entered by some step is final.
    fn replay(&self, q: usize, word: &[usize]) -> Result<(usize, bool), String> {
        let letters: Vec<usize> = if self.forward { word.to_vec() } else { word.iter().rev().copied().collect() };
        let mut cur = q;
        let mut met = false;
        for a in letters {
            cur = self.succ[cur][a].ok_or("homomorphism: path leaves the trim part")?;
            met |= self.finals[cur];
        }
        Ok((cur, met))
    }

    /// Greatest fixpoint of `leq(p, q) ⇒ (acc p ⇒ acc q) ∧ ∀a leq(pa, qa)`
    /// over allowed states.
    fn order(&self) -> Vec<Vec<bool>> {
        let n = self.n;
        let mut leq: Vec<Vec<bool>> = (0..n)
            .map(|p| (0..n).map(|q| self.allowed[p] && self.allowed[q] && (!self.accepting[p] || self.accepting[q])).collect())
            .collect();
        loop {
            let mut changed = false;
            for p in 0..n {
                for q in 0..n {
                    if leq[p][q] {
                        let keep = (0..self.k).all(|a| match (self.succ[p][a], self.succ[q][a]) {
                            (Some(x), Some(y)) => leq[x][y],
                            _ => false,
                        });
                        if !keep {
                            leq[p][q] = false;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return leq;
            }
        }
    }
}

fn closure_from(succ: &[Vec<Option<usize>>], start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut stack = start.to_vec();
    while let Some(q) = stack.pop() {
        if !std::mem::replace(&mut seen[q], true) {
            stack.extend(succ[q].iter().flatten());
        }
    }
    seen
}
