//! Finite ordered monoids as an independent ground truth: syntactic monoids
//! of DFAs and Carton-Michel automata, ω-identities, Green's relations, the
//! `~K`, `~D` and `⪯KD` quotients and the varieties built from them.

mod dump;
mod green;
mod syntactic;
mod term;
mod topology;
mod variety;

pub use dump::MonoidDump;
pub use green::GreenData;
pub use syntactic::{fin_inf_syntactic, syntactic_monoid_finite, CmMonoids, DEFAULT_MONOID_CAP};
pub use term::{reverse_term, satisfies_identity, Identity, OmegaTerm, Relation};
pub use topology::{topology_oracle, topology_report, Topology, TopologyReport};
pub use variety::{in_variety, Variety};

use crate::automata::Word;
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// A finite monoid with a stable partial order and the letters it is
/// generated by. Element numbering follows shortlex order of the
/// representatives when the monoid was computed from an automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedMonoid {
    n: usize,
    table: Vec<usize>,
    unit: usize,
    leq: Vec<bool>,
    gens: Vec<usize>,
    idem: Vec<usize>,
    reps: Vec<Word>,
}

/// Which quotient [`OrderedMonoid::quotient`] builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    K,
    D,
    KD,
}

impl OrderedMonoid {
    /// Checks associativity, the unit, that `leq` is a stable partial order,
    /// and that `gens` generate the monoid.
    pub fn new(table: Vec<Vec<usize>>, unit: usize, leq: Vec<Vec<bool>>, gens: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 || unit >= n || leq.len() != n {
            return Err(Error::Invalid("monoid needs a unit and a square order".into()));
        }
        if table.iter().any(|row| row.len() != n) || leq.iter().any(|row| row.len() != n) || table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::Invalid("monoid table is not square over its elements".into()));
        }
        if gens.iter().any(|&g| g >= n) {
            return Err(Error::Invalid("generator out of range".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |s: usize, t: usize| flat[s * n + t];
        if (0..n).any(|s| mul(unit, s) != s || mul(s, unit) != s) {
            return Err(Error::Invalid("unit is not neutral".into()));
        }
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if mul(mul(s, t), u) != mul(s, mul(t, u)) {
                        return Err(Error::Invalid(format!("not associative at ({s}, {t}, {u})")));
                    }
                }
            }
        }
        let reps = generate(n, unit, &gens, &mul).ok_or_else(|| Error::Invalid("generators do not generate the monoid".into()))?;
        let m = OrderedMonoid::assemble(n, flat, unit, leq.into_iter().flatten().collect(), gens, reps);
        m.check_order()?;
        Ok(m)
    }

    /// Builds a monoid from shortlex representatives and the right action of
    /// letters; element 0 must be the unit (empty representative).
    pub(crate) fn from_action(reps: Vec<Word>, right: &[usize], k: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = reps.len();
        let mut table = vec![0; n * n];
        for s in 0..n {
            for t in 0..n {
                table[s * n + t] = reps[t].iter().fold(s, |x, &a| right[x * k + a]);
            }
        }
        let leq = (0..n * n).map(|i| leq(i / n, i % n)).collect();
        let gens = (0..k).map(|a| right[a]).collect();
        OrderedMonoid::assemble(n, table, 0, leq, gens, reps)
    }

    fn assemble(n: usize, table: Vec<usize>, unit: usize, leq: Vec<bool>, gens: Vec<usize>, reps: Vec<Word>) -> Self {
        let mut m = OrderedMonoid { n, table, unit, leq, gens, idem: Vec::new(), reps };
        m.idem = (0..n).map(|s| m.omega_of(s)).collect();
        m
    }

    fn omega_of(&self, s: usize) -> usize {
        let mut x = s;
        loop {
            if self.mul(x, x) == x {
                return x;
            }
            x = self.mul(x, s);
        }
    }

    /// Reflexive, antisymmetric, transitive and stable under the generators.
    fn check_order(&self) -> Result<()> {
        let n = self.n;
        for s in 0..n {
            if !self.leq(s, s) {
                return Err(Error::Invariant(format!("order is not reflexive at {s}")));
            }
            for t in 0..n {
                if s != t && self.leq(s, t) && self.leq(t, s) {
                    return Err(Error::Invariant(format!("order is not antisymmetric at ({s}, {t})")));
                }
                if self.leq(s, t) {
                    if let Some(u) = (0..n).find(|&u| self.leq(t, u) && !self.leq(s, u)) {
                        return Err(Error::Invariant(format!("order is not transitive at ({s}, {t}, {u})")));
                    }
                    for &g in &self.gens {
                        if !self.leq(self.mul(g, s), self.mul(g, t)) || !self.leq(self.mul(s, g), self.mul(t, g)) {
                            return Err(Error::Invariant(format!("order is not stable at ({s}, {t})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.n + t]
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.leq[s * self.n + t]
    }

    /// Image of each letter.
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    /// `s^ω`, the idempotent power of `s`.
    pub fn omega(&self, s: usize) -> usize {
        self.idem[s]
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.idem[s] == s
    }

    pub fn idempotents(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&s| self.is_idempotent(s))
    }

    /// Shortlex-minimal word over the generators evaluating to `s`.
    pub fn rep(&self, s: usize) -> &Word {
        &self.reps[s]
    }

    /// Element of a word over the generator letters.
    pub fn eval(&self, w: &[usize]) -> usize {
        w.iter().fold(self.unit, |s, &a| self.mul(s, self.gens[a]))
    }

    /// Whether the order is equality.
    pub fn is_unordered(&self) -> bool {
        (0..self.n).all(|s| (0..self.n).all(|t| s == t || !self.leq(s, t)))
    }

    pub fn green(&self) -> GreenData {
        GreenData::new(self)
    }

    /// The reverse monoid: `s ⋅ʳ t = t ⋅ s`, same order.
    pub fn reverse(&self) -> OrderedMonoid {
        let n = self.n;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        let reps = self.reps.iter().map(|w| w.iter().rev().copied().collect()).collect();
        OrderedMonoid::assemble(n, table, self.unit, self.leq.clone(), self.gens.clone(), reps)
    }

    /// The quotient by `~K` or `~D` (ordered by equality) or by `⪯KD`
    /// (ordered by the induced order). Fails if the relation is not a stable
    /// preorder.
    pub fn quotient(&self, q: Quotient) -> Result<OrderedMonoid> {
        let g = self.green();
        let n = self.n;
        let idems: Vec<usize> = self.idempotents().collect();
        let rel: Vec<bool> = match q {
            Quotient::K => (0..n * n)
                .map(|i| {
                    let (s, t) = (i / n, i % n);
                    idems.iter().all(|&e| {
                        let (es, et) = (self.mul(e, s), self.mul(e, t));
                        es == et || (g.j_lt(es, e) && g.j_lt(et, e))
                    })
                })
                .collect(),
            Quotient::D => (0..n * n)
                .map(|i| {
                    let (s, t) = (i / n, i % n);
                    idems.iter().all(|&f| {
                        let (sf, tf) = (self.mul(s, f), self.mul(t, f));
                        sf == tf || (g.j_lt(sf, f) && g.j_lt(tf, f))
                    })
                })
                .collect(),
            Quotient::KD => (0..n * n).map(|i| self.kd_leq(&g, i / n, i % n)).collect(),
        };
        self.quotient_by(&rel, q == Quotient::KD)
    }

    /// `s ⪯KD t` iff for all `p, q`: `p R ptq ⇒ p R psq`, `ptq L q ⇒ psq L q`,
    /// and `p R pt ∧ tq L q ⇒ psq ≤ ptq`.
    fn kd_leq(&self, g: &GreenData, s: usize, t: usize) -> bool {
        (0..self.n).all(|p| {
            let (ps, pt) = (self.mul(p, s), self.mul(p, t));
            let p_r_pt = g.r_eq(p, pt);
            (0..self.n).all(|q| {
                let (psq, ptq) = (self.mul(ps, q), self.mul(pt, q));
                (!g.r_eq(p, ptq) || g.r_eq(p, psq))
                    && (!g.l_eq(ptq, q) || g.l_eq(psq, q))
                    && (!(p_r_pt && g.l_eq(self.mul(t, q), q)) || self.leq(psq, ptq))
            })
        })
    }

    /// Quotient by a stable preorder given as an `n × n` matrix. Classes are
    /// numbered by their least element.
    pub(crate) fn quotient_by(&self, rel: &[bool], ordered: bool) -> Result<OrderedMonoid> {
        let n = self.n;
        let r = |s: usize, t: usize| rel[s * n + t];
        for s in 0..n {
            if !r(s, s) {
                return Err(Error::Invariant(format!("relation is not reflexive at {s}")));
            }
            for t in (0..n).filter(|&t| r(s, t)) {
                if let Some(u) = (0..n).find(|&u| r(t, u) && !r(s, u)) {
                    return Err(Error::Invariant(format!("relation is not transitive at ({s}, {t}, {u})")));
                }
                for &a in &self.gens {
                    if !r(self.mul(a, s), self.mul(a, t)) || !r(self.mul(s, a), self.mul(t, a)) {
                        return Err(Error::Invariant(format!("relation is not stable at ({s}, {t})")));
                    }
                }
            }
        }
        let mut class = vec![usize::MAX; n];
        let mut mins = Vec::new();
        for s in 0..n {
            if class[s] == usize::MAX {
                let c = mins.len();
                mins.push(s);
                for t in s..n {
                    if r(s, t) && r(t, s) {
                        class[t] = c;
                    }
                }
            }
        }
        let m = mins.len();
        let table = (0..m * m).map(|i| class[self.mul(mins[i / m], mins[i % m])]).collect();
        let leq = (0..m * m)
            .map(|i| {
                let (c, d) = (i / m, i % m);
                c == d || (ordered && r(mins[c], mins[d]))
            })
            .collect();
        let gens = self.gens.iter().map(|&a| class[a]).collect();
        let reps = mins.iter().map(|&s| self.reps[s].clone()).collect();
        let q = OrderedMonoid::assemble(m, table, class[self.unit], leq, gens, reps);
        q.check_order()?;
        Ok(q)
    }

    /// Equality up to renumbering that preserves the generator images, found
    /// by matching shortlex representatives.
    pub fn isomorphic(&self, other: &OrderedMonoid) -> bool {
        if self.n != other.n || self.gens.len() != other.gens.len() {
            return false;
        }
        let mut map = vec![usize::MAX; self.n];
        for s in 0..self.n {
            map[s] = other.eval(&self.reps[s]);
        }
        let mut seen = vec![false; self.n];
        for &t in &map {
            if std::mem::replace(&mut seen[t], true) {
                return false;
            }
        }
        (0..self.n).all(|s| {
            (0..self.n).all(|t| map[self.mul(s, t)] == other.mul(map[s], map[t]) && self.leq(s, t) == other.leq(map[s], map[t]))
        })
    }
}

/// Breadth-first generation from the unit; `None` if some element is missed.
fn generate(n: usize, unit: usize, gens: &[usize], mul: &impl Fn(usize, usize) -> usize) -> Option<Vec<Word>> {
    let mut reps: Vec<Option<Word>> = vec![None; n];
    reps[unit] = Some(Vec::new());
    let mut queue = VecDeque::from([unit]);
    while let Some(s) = queue.pop_front() {
        for (a, &g) in gens.iter().enumerate() {
            let t = mul(s, g);
            if reps[t].is_none() {
                let mut w = reps[s].clone().expect("visited");
                w.push(a);
                reps[t] = Some(w);
                queue.push_back(t);
            }
        }
    }
    reps.into_iter().collect()
}

#[cfg(test)]
pub(crate) mod examples {
    use super::OrderedMonoid;

    /// `ℤ₂ = {1, g}`.
    pub fn z2() -> OrderedMonoid {
        let eq = vec![vec![true, false], vec![false, true]];
        OrderedMonoid::new(vec![vec![0, 1], vec![1, 0]], 0, eq, vec![1]).unwrap()
    }

    /// `B₂` with a unit adjoined: `{1, a, b, ab, ba, 0}` with `aa = bb = 0`.
    pub fn b2_with_unit() -> OrderedMonoid {
        // 0:1 1:a 2:b 3:ab 4:ba 5:0
        let t = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 5, 3, 5, 1, 5],
            vec![2, 4, 5, 2, 5, 5],
            vec![3, 1, 5, 3, 5, 5],
            vec![4, 5, 2, 5, 4, 5],
            vec![5, 5, 5, 5, 5, 5],
        ];
        let eq = (0..6).map(|s| (0..6).map(|t| s == t).collect()).collect();
        OrderedMonoid::new(t, 0, eq, vec![1, 2]).unwrap()
    }

    /// `{1, a}` with `aa = a` and `1 ≤ a`.
    pub fn u1_ordered() -> OrderedMonoid {
        OrderedMonoid::new(vec![vec![0, 1], vec![1, 1]], 0, vec![vec![true, true], vec![false, true]], vec![1]).unwrap()
    }

    pub fn trivial() -> OrderedMonoid {
        OrderedMonoid::new(vec![vec![0]], 0, vec![vec![true]], vec![0, 0]).unwrap()
    }
}
