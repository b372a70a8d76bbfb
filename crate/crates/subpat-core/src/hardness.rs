//! Reduction from digraph reachability to any nontrivial residual-closed
//! property containing the empty language.
//!
//! Given a digraph `G`, vertices `j`, `k` and an automaton `B` whose
//! language lacks the property, the constructed automaton `C` has an empty
//! language when `k` is unreachable from `j`, and otherwise has `L(B)` as a
//! residual.

use crate::automata::{AnyAutomaton, Alphabet, Buchi, Dfa};
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Symbol separating the copy of `B` from the graph.
pub const HASH: &str = "#";

/// A directed graph with named vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl Digraph {
    fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Invalid(format!("unknown vertex `{name}`")))
    }

    /// Duplicate-free edges as index pairs, in first-occurrence order.
    fn indexed_edges(&self) -> Result<Vec<(usize, usize)>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (u, v) in &self.edges {
            let e = (self.vertex(u)?, self.vertex(v)?);
            if seen.insert(e) {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Whether a (possibly empty) path leads from `j` to `k`.
    pub fn reaches(&self, j: &str, k: &str) -> Result<bool> {
        let (j, k) = (self.vertex(j)?, self.vertex(k)?);
        let edges = self.indexed_edges()?;
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![j];
        seen[j] = true;
        while let Some(u) = stack.pop() {
            for &(_, v) in edges.iter().filter(|e| e.0 == u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        Ok(seen[k])
    }

    /// Random digraph on `v0..v{n-1}` with each ordered pair (loops included)
    /// an edge with probability `p`.
    pub fn random(n: usize, p: f64, rng: &mut impl Rng) -> Self {
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for u in &vertices {
            for v in &vertices {
                if rng.gen_bool(p) {
                    edges.push((u.clone(), v.clone()));
                }
            }
        }
        Digraph { vertices, edges }
    }
}

/// Symbol naming the edge `u → v`.
pub fn edge_symbol(u: &str, v: &str) -> String {
    format!("{u}>{v}")
}

/// Builds the reduction automaton for reachability of `k` from `j` in `g`.
///
/// For a DFA `B = (Q, A, ·, i, F)` the result is a DFA over `A ∪ E ∪ {#}`
/// with initial state `i` and sole final state `k`: `B` runs unchanged,
/// `#` leads from `F` to `j`, every edge letter moves along its edge, and
/// everything else falls into the sink `s`.
///
/// For a Carton-Michel `B` the construction is mirrored: `j` is initial, `#`
/// leads from `k` into the initial states of `B`, and a gadget `{f, g}` gives
/// every word with infinitely many letters outside `A` its unique final run.
/// Reverse DFAs are not accepted as `B`.
pub fn hardness_instance(g: &Digraph, j: &str, k: &str, bad: &AnyAutomaton) -> Result<AnyAutomaton> {
    let (jv, kv) = (g.vertex(j)?, g.vertex(k)?);
    let edges = g.indexed_edges()?;
    let base = bad.alphabet();
    let mut symbols: Vec<String> = base.symbols().to_vec();
    symbols.extend(edges.iter().map(|&(u, v)| edge_symbol(&g.vertices[u], &g.vertices[v])));
    symbols.push(HASH.to_string());
    let alphabet = Alphabet::new(symbols)
        .map_err(|e| Error::Invalid(format!("edge or `#` symbol clashes with the base alphabet: {e}")))?;
    let na = base.len();
    let hash = alphabet.len() - 1;
    let edge_letter = |i: usize| na + i;

    match bad {
        AnyAutomaton::Dfa(b) => {
            let nq = b.num_states();
            let nv = g.vertices.len();
            // States: Q, then V, then s.
            let mut states: Vec<String> = b.states().iter().map(|q| format!("b.{q}")).collect();
            states.extend(g.vertices.iter().map(|v| format!("v.{v}")));
            states.push("s".to_string());
            let sink = nq + nv;
            let n = sink + 1;
            let kk = alphabet.len();
            let mut delta = vec![sink; n * kk];
            for (p, a, q) in b.transitions() {
                delta[p * kk + a] = q;
            }
            for (i, &(u, v)) in edges.iter().enumerate() {
                delta[(nq + u) * kk + edge_letter(i)] = nq + v;
            }
            for q in (0..nq).filter(|&q| b.is_final(q)) {
                delta[q * kk + hash] = nq + jv;
            }
            let mut finals = vec![false; n];
            finals[nq + kv] = true;
            Ok(AnyAutomaton::Dfa(Dfa::from_table(states, alphabet, delta, b.initial(), finals)?))
        }
        AnyAutomaton::Cm(b) => {
            let nq = b.num_states();
            let nv = g.vertices.len();
            // States: Q, then V, then s, f, g.
            let mut states: Vec<String> = b.states().iter().map(|q| format!("b.{q}")).collect();
            states.extend(g.vertices.iter().map(|v| format!("v.{v}")));
            states.extend(["s", "f", "g"].map(String::from));
            let (sink, f, gg) = (nq + nv, nq + nv + 1, nq + nv + 2);
            let n = gg + 1;
            let kk = alphabet.len();
            let mut out: Vec<(usize, usize, usize)> = b.edges().to_vec();
            for (i, &(u, v)) in edges.iter().enumerate() {
                out.push((nq + u, edge_letter(i), nq + v));
            }
            for q in (0..nq).filter(|&q| b.is_initial(q)) {
                out.push((nq + kv, hash, q));
            }
            for x in na..kk {
                out.push((f, x, f));
                out.push((f, x, gg));
            }
            for a in 0..na {
                out.push((gg, a, f));
                out.push((gg, a, gg));
            }
            // The sink is the predecessor of every state lacking one.
            let mut has_pred = vec![false; n * kk];
            for &(_, x, q) in &out {
                has_pred[q * kk + x] = true;
            }
            for q in 0..n {
                for x in 0..kk {
                    if !has_pred[q * kk + x] {
                        out.push((sink, x, q));
                    }
                }
            }
            let mut initials = vec![false; n];
            initials[nq + jv] = true;
            let mut finals: Vec<bool> = b.finals().to_vec();
            finals.resize(n, false);
            finals[f] = true;
            Ok(AnyAutomaton::Cm(Buchi::from_table(states, alphabet, out, initials, finals)?))
        }
        AnyAutomaton::Reverse(_) => {
            Err(Error::Invalid("the reduction takes a DFA or a Carton-Michel automaton".into()))
        }
    }
}
