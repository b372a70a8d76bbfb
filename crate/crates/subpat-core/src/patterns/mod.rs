//! Subword patterns: partial semiautomata over a partially ordered set of
//! variables, with an endpoint predicate on two vertices.
//!
//! Edges are stored in transition orientation: `(s, x, t)` means `s·x = t`
//! for a forward pattern and `x∘s = t` for a reverse one. Reversal therefore
//! only flips [`Direction`]; the stored graph never changes.

mod builtin;
mod json;
mod wellformed;

pub use builtin::{
    builtin, builtin_names, builtin_variants, lift, make_da_pattern, make_inf_pattern, make_level_pattern, make_topology_pattern,
    reverse_pattern, InfFamily, LevelFamily, LiftMode, TopologyFamily, TopologyMode,
};
pub use json::{DirectionJson, KindJson, PatternJson};
pub use wellformed::{wellformedness, WellformednessReport};

use crate::automata::{check_unique, index_of};
use crate::error::{Error, Result};

/// Finite poset on variable names with the reflexive-transitive closure
/// stored as one up-set bitmask per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarPoset {
    names: Vec<String>,
    /// bit `z` of `up[x]` is set iff `x ⪯ z`
    up: Vec<u64>,
}

impl VarPoset {
    pub const MAX_VARS: usize = 64;

    /// Builds the closure of `pairs` (each `(x, y)` meaning `x ⪯ y`) and
    /// rejects cycles through distinct variables.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        check_unique(&names)?;
        let n = names.len();
        if n > Self::MAX_VARS {
            return Err(Error::TooLarge(format!("at most {} variables", Self::MAX_VARS)));
        }
        let mut up: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::IllFormedPattern("order pair out of range".into()));
            }
            up[x] |= 1 << y;
        }
        // Warshall on bitsets
        for m in 0..n {
            for x in 0..n {
                if up[x] >> m & 1 == 1 {
                    up[x] |= up[m];
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if up[x] >> y & 1 == 1 && up[y] >> x & 1 == 1 {
                    return Err(Error::IllFormedPattern(format!(
                        "order is not antisymmetric: {} ⪯ {} ⪯ {}",
                        names[x], names[y], names[x]
                    )));
                }
            }
        }
        Ok(VarPoset { names, up })
    }

    pub fn from_names(names: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let pairs = pairs
            .iter()
            .map(|(x, y)| Ok((var_index(&names, x)?, var_index(&names, y)?)))
            .collect::<Result<Vec<_>>>()?;
        VarPoset::new(names, &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        var_index(&self.names, name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    /// `{z : x ⪯ z}` as a bitmask.
    pub fn up(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// Strict pairs `x ≺ y` of the closure, in index order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.leq(x, y))
            .collect()
    }
}

fn var_index(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::IllFormedPattern(format!("unknown variable `{name}`")))
}

/// Endpoint predicate: type 1 (`g(j) ≢ g(k)`) or type 2 (`g(j) ≰ g(k)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Neq,
    Nleq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Reverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub var: usize,
    pub dst: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// A (possibly enhanced) subword pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    vars: VarPoset,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    kind: Kind,
    compare: (usize, usize),
    direction: Direction,
    /// `final_edges[i]` marks edge `i` as final
    final_edges: Vec<bool>,
    nonempty: bool,
    root: Option<usize>,
}

/// Unchecked parts of a pattern; [`Pattern::new`] validates them.
#[derive(Clone, Debug)]
pub struct PatternParts {
    pub vars: VarPoset,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub kind: Kind,
    pub compare: (usize, usize),
    pub direction: Direction,
    pub final_edges: Vec<usize>,
    pub nonempty: bool,
    pub root: Option<usize>,
}

impl Pattern {
    pub fn new(parts: PatternParts) -> Result<Self> {
        let PatternParts {
            vars,
            vertices,
            edges,
            kind,
            compare,
            direction,
            final_edges,
            nonempty,
            root,
        } = parts;
        let ill = |m: String| Err(Error::IllFormedPattern(m));
        if vertices.is_empty() {
            return ill("pattern has no vertices".into());
        }
        check_unique(&vertices)?;
        let n = vertices.len();
        if compare.0 >= n || compare.1 >= n || root.is_some_and(|r| r >= n) {
            return ill("vertex out of range".into());
        }
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.src >= n || e.dst >= n || e.var >= vars.len() {
                return ill("edge endpoint or variable out of range".into());
            }
            if !seen.insert((e.src, e.var)) {
                return ill(format!(
                    "two edges leave `{}` on `{}`",
                    vertices[e.src],
                    vars.name(e.var)
                ));
            }
        }
        let mut marks = vec![false; edges.len()];
        for &i in &final_edges {
            if i >= edges.len() {
                return ill(format!("final edge index {i} out of range"));
            }
            marks[i] = true;
        }
        if (nonempty || !final_edges.is_empty()) && direction != Direction::Reverse {
            return ill("final edges and nonemptiness require a reverse pattern".into());
        }
        Ok(Pattern { vars, vertices, edges, kind, compare, direction, final_edges: marks, nonempty, root })
    }

    pub fn into_parts(self) -> PatternParts {
        let final_edges = self.final_edge_indices();
        PatternParts {
            vars: self.vars,
            vertices: self.vertices,
            edges: self.edges,
            kind: self.kind,
            compare: self.compare,
            direction: self.direction,
            final_edges,
            nonempty: self.nonempty,
            root: self.root,
        }
    }

    pub fn vars(&self) -> &VarPoset {
        &self.vars
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vertices, name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn compare(&self) -> (usize, usize) {
        self.compare
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_final_edge(&self, i: usize) -> bool {
        self.final_edges[i]
    }

    pub fn final_edge_indices(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.final_edges[i]).collect()
    }

    pub fn requires_nonempty(&self) -> bool {
        self.nonempty
    }

    /// Whether the pattern uses final edges or nonemptiness.
    pub fn is_enhanced(&self) -> bool {
        self.nonempty || self.final_edges.iter().any(|&b| b)
    }

    /// The declared root, or else the first vertex from which every vertex
    /// is reachable.
    pub fn root(&self) -> Option<usize> {
        self.root.or_else(|| (0..self.num_vertices()).find(|&r| self.reaches_all(r)))
    }

    pub fn declared_root(&self) -> Option<usize> {
        self.root
    }

    pub(crate) fn reaches_all(&self, r: usize) -> bool {
        let mut seen = vec![false; self.num_vertices()];
        seen[r] = true;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.src == v) {
                if !seen[e.dst] {
                    seen[e.dst] = true;
                    stack.push(e.dst);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// `v∘x` in the stored orientation.
    pub fn target(&self, v: usize, x: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.src == v && e.var == x).map(|e| e.dst)
    }

    /// The pattern with its direction flag flipped and nothing else changed.
    pub(crate) fn flipped(&self) -> Pattern {
        Pattern { direction: self.direction.flip(), ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_closes_transitively() {
        let p = VarPoset::from_names(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        assert!(p.leq(0, 2) && p.leq(1, 1) && !p.leq(2, 0));
        assert_eq!(p.strict_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(p.up(0), 0b111);
    }

    #[test]
    fn cyclic_order_is_rejected() {
        let e = VarPoset::from_names(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(e, Error::IllFormedPattern(_)));
        // a reflexive pair alone is harmless
        assert!(VarPoset::from_names(&["x"], &[("x", "x")]).is_ok());
    }

    fn parts(edges: Vec<Edge>) -> PatternParts {
        PatternParts {
            vars: VarPoset::from_names(&["x", "y"], &[]).unwrap(),
            vertices: vec!["j".into(), "k".into()],
            edges,
            kind: Kind::Neq,
            compare: (0, 1),
            direction: Direction::Forward,
            final_edges: vec![],
            nonempty: false,
            root: None,
        }
    }

    #[test]
    fn edges_must_be_deterministic() {
        let e = |src, var, dst| Edge { src, var, dst };
        assert!(Pattern::new(parts(vec![e(0, 0, 1), e(0, 1, 1)])).is_ok());
        assert!(Pattern::new(parts(vec![e(0, 0, 1), e(0, 0, 0)])).is_err());
    }

    #[test]
    fn enhanced_patterns_must_be_reverse() {
        let mut p = parts(vec![Edge { src: 0, var: 0, dst: 0 }]);
        p.final_edges = vec![0];
        assert!(Pattern::new(p.clone()).is_err());
        p.direction = Direction::Reverse;
        let p = Pattern::new(p).unwrap();
        assert!(p.is_final_edge(0) && p.is_enhanced());
    }

    #[test]
    fn computed_root_reaches_everything() {
        let p = Pattern::new(parts(vec![Edge { src: 0, var: 0, dst: 1 }])).unwrap();
        assert_eq!(p.root(), Some(0));
        let q = Pattern::new(parts(vec![])).unwrap();
        assert_eq!(q.root(), None);
    }
}
