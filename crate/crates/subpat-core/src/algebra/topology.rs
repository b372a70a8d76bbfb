//! Openness in the Cantor and alphabetic topologies, decided on linked pairs
//! of the transition-profile monoid annotated with letter sets.
//!
//! `L` is open iff for every linked pair `(s, e)` with `[s][e]^ω ⊆ L`, every
//! `[s][x][f]^ω` stays in `L`, where `x` ranges over words and `f` over
//! nonempty idempotents (Cantor), or both range over words using only the
//! letters of `e` (alphabetic). Closedness flips the acceptance polarity.

use crate::automata::{Buchi, ProfileMonoid};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    CantorOpen,
    CantorClosed,
    CantorClopen,
    AlphOpen,
    AlphClosed,
    AlphClopen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub cantor_open: bool,
    pub cantor_closed: bool,
    pub alph_open: bool,
    pub alph_closed: bool,
}

impl TopologyReport {
    pub fn get(&self, t: Topology) -> bool {
        match t {
            Topology::CantorOpen => self.cantor_open,
            Topology::CantorClosed => self.cantor_closed,
            Topology::CantorClopen => self.cantor_open && self.cantor_closed,
            Topology::AlphOpen => self.alph_open,
            Topology::AlphClosed => self.alph_closed,
            Topology::AlphClopen => self.alph_open && self.alph_closed,
        }
    }
}

pub fn topology_oracle(b: &Buchi, which: Topology, cap: usize) -> Result<bool> {
    Ok(topology_report(b, cap)?.get(which))
}

pub fn topology_report(b: &Buchi, cap: usize) -> Result<TopologyReport> {
    let pm = ProfileMonoid::new(b, cap)?;
    let k = b.alphabet().len();
    let all: u32 = if k == 32 { u32::MAX } else { (1 << k) - 1 };
    let init = b.initial_mask();

    // annotated elements (profile, letters used)
    let mut seen = HashSet::from([(pm.unit(), 0u32)]);
    let mut queue = VecDeque::from([(pm.unit(), 0u32)]);
    while let Some((i, m)) = queue.pop_front() {
        for a in 0..k {
            let next = (pm.step(i, a), m | 1 << a);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut annotated_idems: Vec<(usize, u32)> =
        seen.into_iter().filter(|&(i, m)| m != 0 && pm.is_idempotent(i)).collect();
    annotated_idems.sort_unstable();

    let accepts = |reached: u32, e: usize| {
        let p = pm.profile(e);
        p.image(reached) & p.final_loops() != 0
    };
    // state sets reachable from `y` by words over the letters of `mask`
    let mut closures: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    let mut closure = |y: u32, mask: u32| -> Vec<u32> {
        closures
            .entry((y, mask))
            .or_insert_with(|| {
                let mut sets = vec![y];
                let mut known = HashSet::from([y]);
                let mut i = 0;
                while i < sets.len() {
                    for a in (0..k).filter(|&a| mask >> a & 1 == 1) {
                        let z = pm.profile(pm.letter(a)).image(sets[i]);
                        if known.insert(z) {
                            sets.push(z);
                        }
                    }
                    i += 1;
                }
                sets
            })
            .clone()
    };
    // every [s][x][f]^ω with x, f over `mask` has acceptance `polarity`
    let uniform = |sets: &[u32], mask: u32, polarity: bool| {
        sets.iter().all(|&w| {
            annotated_idems.iter().filter(|&&(_, c)| c & !mask == 0).all(|&(f, _)| accepts(w, f) == polarity)
        })
    };

    let mut report = TopologyReport { cantor_open: true, cantor_closed: true, alph_open: true, alph_closed: true };
    for s in 0..pm.len() {
        let y = pm.profile(s).image(init);
        for &(e, mask) in &annotated_idems {
            if pm.mul(s, e) != s {
                continue;
            }
            let polarity = accepts(y, e);
            let (cantor, alph) = if polarity {
                (&mut report.cantor_open, &mut report.alph_open)
            } else {
                (&mut report.cantor_closed, &mut report.alph_closed)
            };
            if *cantor && !uniform(&closure(y, all), all, polarity) {
                *cantor = false;
            }
            if *alph && !uniform(&closure(y, mask), mask, polarity) {
                *alph = false;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MONOID_CAP;
    use crate::samples;

    #[test]
    fn eventually_a_is_cantor_open_only() {
        let r = topology_report(&samples::cm_figure(), DEFAULT_MONOID_CAP).unwrap();
        assert!(r.cantor_open);
        assert!(!r.cantor_closed);
        assert!(r.alph_open);
    }

    #[test]
    fn finitely_many_a_is_alphabetic_open_only() {
        let r = topology_report(&samples::cm_finitely_many_a(), DEFAULT_MONOID_CAP).unwrap();
        assert!(!r.cantor_open);
        assert!(r.alph_open);
        assert!(!r.cantor_closed);
        // the complement, infinitely many a, is not alphabetic open
        assert!(!r.alph_closed);
    }

    #[test]
    fn whole_space_is_clopen() {
        let r = topology_report(&samples::cm_a_omega(), DEFAULT_MONOID_CAP).unwrap();
        assert!(r.get(Topology::CantorClopen) && r.get(Topology::AlphClopen));
        assert!(topology_oracle(&samples::cm_a_omega(), Topology::CantorOpen, DEFAULT_MONOID_CAP).unwrap());
    }
}
