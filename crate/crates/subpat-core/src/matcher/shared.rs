//! One breadth-first search for all vertex assignments at once.
//!
//! A configuration stores, per variable `z`, the map `q ↦ q·h(z)` (or
//! `h(z)∘q`) over the whole domain, the set of starting states whose path
//! met a final state, and which variables have been stepped. At every
//! configuration the goal plan solves for a vertex assignment.

use super::arena::Arena;
use super::goal::{GoalPlan, Words};
use super::{MatchStats, Prepared, Step};
use crate::error::{Error, Result};
use crate::patterns::Pattern;

/// Whether configurations of this pattern can be encoded for this domain.
pub(crate) fn fits(prep: &Prepared, p: &Pattern) -> bool {
    let d = prep.domain_size();
    d <= u8::MAX as usize && (p.final_edge_indices().is_empty() || d <= 64)
}

struct Layout {
    d: usize,
    nv: usize,
    /// slot of each variable's final mask, if tracked
    fslot: Vec<Option<usize>>,
    nf: usize,
    nonempty: bool,
}

impl Layout {
    fn width(&self) -> usize {
        self.nv * self.d + self.nf * 8 + if self.nonempty { 8 } else { 0 }
    }

    fn fin_offset(&self, slot: usize) -> usize {
        self.nv * self.d + slot * 8
    }

    fn stepped_offset(&self) -> usize {
        self.nv * self.d + self.nf * 8
    }
}

fn read_u64(b: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(b[at..at + 8].try_into().expect("eight bytes"))
}

fn write_u64(b: &mut [u8], at: usize, v: u64) {
    b[at..at + 8].copy_from_slice(&v.to_le_bytes());
}

struct NodeWords<'n> {
    node: &'n [u8],
    layout: &'n Layout,
}

impl Words for NodeWords<'_> {
    fn apply(&self, var: usize, q: usize) -> usize {
        self.node[var * self.layout.d + q] as usize
    }

    fn visits_final(&self, var: usize, q: usize) -> bool {
        match self.layout.fslot[var] {
            Some(s) => read_u64(self.node, self.layout.fin_offset(s)) >> q & 1 == 1,
            None => false,
        }
    }
}

pub(crate) fn search(
    prep: &Prepared,
    p: &Pattern,
    budget: u64,
    stats: &mut MatchStats,
) -> Result<Option<(Vec<Step>, Vec<usize>)>> {
    if !fits(prep, p) {
        return Err(Error::TooLarge("domain too large for the shared search".into()));
    }
    let vars = p.vars();
    let nv = vars.len();
    let d = prep.domain_size();
    let mut fslot = vec![None; nv];
    let mut nf = 0;
    for e in p.final_edge_indices() {
        let x = p.edges()[e].var;
        if fslot[x].is_none() {
            fslot[x] = Some(nf);
            nf += 1;
        }
    }
    let layout = Layout { d, nv, fslot, nf, nonempty: p.requires_nonempty() };
    let all_vars: u64 = if nv == 64 { u64::MAX } else { (1u64 << nv) - 1 };
    let plan = GoalPlan::new(p);
    let separates = |kind, a, b| prep.separates(kind, a, b);

    let mut start = vec![0u8; layout.width()];
    for z in 0..nv {
        for q in 0..d {
            start[z * d + q] = q as u8;
        }
    }
    let mut arena = Arena::new(layout.width());
    arena.insert(&start, None);
    stats.configurations += 1;
    let mut child = vec![0u8; layout.width()];
    let mut i = 0;
    while i < arena.len() {
        let node = arena.get(i).to_vec();
        let stepped_ok = !layout.nonempty || read_u64(&node, layout.stepped_offset()) == all_vars;
        if stepped_ok {
            if let Some(g) = plan.solve(d, &NodeWords { node: &node, layout: &layout }, &separates) {
                return Ok(Some((arena.path(i), g)));
            }
        }
        for a in 0..prep.k {
            for y in 0..nv {
                child.copy_from_slice(&node);
                let up = vars.up(y);
                for z in (0..nv).filter(|&z| up >> z & 1 == 1) {
                    let row = &mut child[z * d..(z + 1) * d];
                    for cell in row.iter_mut() {
                        *cell = prep.step(*cell as usize, a) as u8;
                    }
                    if let Some(s) = layout.fslot[z] {
                        // d ≤ 64 whenever a final mask is tracked
                        let fin = (0..d)
                            .filter(|&q| prep.finals[child[z * d + q] as usize])
                            .fold(0u64, |m, q| m | 1 << q);
                        let at = layout.fin_offset(s);
                        let old = read_u64(&child, at);
                        write_u64(&mut child, at, old | fin);
                    }
                }
                if layout.nonempty {
                    let at = layout.stepped_offset();
                    let old = read_u64(&child, at);
                    write_u64(&mut child, at, old | up);
                }
                if arena.insert(&child, Some((i, (a, y)))) {
                    stats.configurations += 1;
                    if stats.configurations > budget {
                        return Err(Error::BudgetExceeded { budget, explored: stats.configurations });
                    }
                }
            }
        }
        i += 1;
    }
    Ok(None)
}
