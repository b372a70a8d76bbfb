//! One breadth-first search per vertex assignment over per-edge cursors.
//!
//! Assignments are enumerated with the compared vertices first, and pruned
//! by the endpoint predicate and by per-edge reachability before any
//! search starts.

use super::arena::Arena;
use super::{MatchStats, Prepared, Step};
use crate::error::{Error, Result};
use crate::patterns::Pattern;

/// Reachability matrices over the local domain.
struct Reach {
    d: usize,
    /// path of length ≥ 1
    plus: Vec<bool>,
    /// path of length ≥ 1 meeting a final state after its first step
    through_final: Vec<bool>,
}

impl Reach {
    fn new(prep: &Prepared) -> Self {
        let d = prep.domain_size();
        let mut plus = vec![false; d * d];
        for q in 0..d {
            let mut stack: Vec<usize> = (0..prep.k).map(|a| prep.step(q, a)).collect();
            while let Some(r) = stack.pop() {
                if !plus[q * d + r] {
                    plus[q * d + r] = true;
                    stack.extend((0..prep.k).map(|a| prep.step(r, a)));
                }
            }
        }
        let star = |p: usize, q: usize| p == q || plus[p * d + q];
        let mut through_final = vec![false; d * d];
        for p in 0..d {
            for q in 0..d {
                through_final[p * d + q] = (0..d).any(|f| prep.finals[f] && plus[p * d + f] && star(f, q));
            }
        }
        Reach { d, plus, through_final }
    }

    fn feasible(&self, p: &Pattern, e: usize, s: usize, t: usize) -> bool {
        let i = s * self.d + t;
        if p.is_final_edge(e) {
            self.through_final[i]
        } else if p.requires_nonempty() {
            self.plus[i]
        } else {
            s == t || self.plus[i]
        }
    }
}

pub(crate) fn search(
    prep: &Prepared,
    p: &Pattern,
    budget: u64,
    stats: &mut MatchStats,
) -> Result<Option<(Vec<Step>, Vec<usize>)>> {
    let d = prep.domain_size();
    if d > u8::MAX as usize {
        return Err(Error::TooLarge("domain too large for the per-assignment search".into()));
    }
    let reach = Reach::new(prep);
    let n = p.num_vertices();
    let (j, k) = p.compare();
    let mut order = vec![j];
    if k != j {
        order.push(k);
    }
    order.extend((0..n).filter(|&v| v != j && v != k));
    let mut searcher = Searcher::new(prep, p, budget);
    let mut g = vec![usize::MAX; n];
    let mut placed = vec![false; n];
    let found = enumerate(0, &order, &mut g, &mut placed, prep, p, &reach, &mut |g| {
        stats.assignments += 1;
        searcher.run(g, stats)
    })?;
    Ok(found)
}

type Found = Option<(Vec<Step>, Vec<usize>)>;

#[allow(clippy::too_many_arguments)]
fn enumerate(
    i: usize,
    order: &[usize],
    g: &mut Vec<usize>,
    placed: &mut Vec<bool>,
    prep: &Prepared,
    p: &Pattern,
    reach: &Reach,
    visit: &mut impl FnMut(&[usize]) -> Result<Option<Vec<Step>>>,
) -> Result<Found> {
    if i == order.len() {
        return Ok(visit(g)?.map(|steps| (steps, g.clone())));
    }
    let v = order[i];
    let (j, k) = p.compare();
    for q in 0..prep.domain_size() {
        g[v] = q;
        placed[v] = true;
        let endpoint_ok = !(placed[j] && placed[k]) || (v != j && v != k) || prep.separates(p.kind(), g[j], g[k]);
        let edges_ok = p.edges().iter().enumerate().all(|(e, ed)| {
            !(ed.src == v || ed.dst == v) || !placed[ed.src] || !placed[ed.dst] || reach.feasible(p, e, g[ed.src], g[ed.dst])
        });
        if endpoint_ok && edges_ok {
            if let Some(found) = enumerate(i + 1, order, g, placed, prep, p, reach, visit)? {
                placed[v] = false;
                return Ok(Some(found));
            }
        }
        placed[v] = false;
    }
    Ok(None)
}

/// Cursor search for a fixed assignment; the arena is reused across calls.
struct Searcher<'p> {
    prep: &'p Prepared<'p>,
    p: &'p Pattern,
    budget: u64,
    arena: Arena,
    /// bit of each final edge in the final-bits word
    fbit: Vec<Option<usize>>,
    nfin: usize,
}

impl<'p> Searcher<'p> {
    fn new(prep: &'p Prepared<'p>, p: &'p Pattern, budget: u64) -> Self {
        let ne = p.edges().len();
        let mut fbit = vec![None; ne];
        let mut nfin = 0;
        for e in p.final_edge_indices() {
            fbit[e] = Some(nfin);
            nfin += 1;
        }
        let width = ne + 16;
        Searcher { prep, p, budget, arena: Arena::new(width), fbit, nfin }
    }

    fn run(&mut self, g: &[usize], stats: &mut MatchStats) -> Result<Option<Vec<Step>>> {
        let p = self.p;
        let vars = p.vars();
        let nv = vars.len();
        let ne = p.edges().len();
        let all_vars: u64 = if nv == 64 { u64::MAX } else { (1u64 << nv) - 1 };
        let all_fin: u64 = if self.nfin == 64 { u64::MAX } else { (1u64 << self.nfin) - 1 };
        let need_stepped = if p.requires_nonempty() { all_vars } else { 0 };
        let goal: Vec<u8> = p.edges().iter().map(|e| g[e.dst] as u8).collect();
        let mut start: Vec<u8> = p.edges().iter().map(|e| g[e.src] as u8).collect();
        start.extend_from_slice(&[0u8; 16]);
        self.arena.clear();
        self.arena.insert(&start, None);
        stats.configurations += 1;
        let mut child = start.clone();
        let mut i = 0;
        while i < self.arena.len() {
            let node = self.arena.get(i).to_vec();
            let fin = u64::from_le_bytes(node[ne..ne + 8].try_into().expect("eight bytes"));
            let stepped = u64::from_le_bytes(node[ne + 8..ne + 16].try_into().expect("eight bytes"));
            if node[..ne] == goal[..] && fin == all_fin && stepped & need_stepped == need_stepped {
                return Ok(Some(self.arena.path(i)));
            }
            for a in 0..self.prep.k {
                for y in 0..nv {
                    child.copy_from_slice(&node);
                    let up = vars.up(y);
                    let mut fin = fin;
                    for (e, ed) in p.edges().iter().enumerate() {
                        if up >> ed.var & 1 == 1 {
                            let r = self.prep.step(child[e] as usize, a);
                            child[e] = r as u8;
                            if let Some(b) = self.fbit[e] {
                                if self.prep.finals[r] {
                                    fin |= 1 << b;
                                }
                            }
                        }
                    }
                    child[ne..ne + 8].copy_from_slice(&fin.to_le_bytes());
                    child[ne + 8..ne + 16].copy_from_slice(&(stepped | (up & need_stepped)).to_le_bytes());
                    if self.arena.insert(&child, Some((i, (a, y)))) {
                        stats.configurations += 1;
                        if stats.configurations > self.budget {
                            return Err(Error::BudgetExceeded {
                                budget: self.budget,
                                explored: stats.configurations,
                            });
                        }
                    }
                }
            }
            i += 1;
        }
        Ok(None)
    }
}
