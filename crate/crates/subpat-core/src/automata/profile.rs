use super::{Buchi, Word};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Default cap on the number of profiles enumerated.
pub const PROFILE_CAP: usize = 1_000_000;

/// Transition profile of a word over `⊥ < 0 < 1`: entry `(p, q)` is `⊥` when
/// the word has no path from `p` to `q`, `1` when some path visits a final
/// state (endpoints included) and `0` otherwise.
///
/// Row `p` packs reachable targets in the low 32 bits and final-visiting
/// targets in the high 32 bits, so automata are limited to 32 states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile(Box<[u64]>);

const LOW: u64 = 0xffff_ffff;

impl Profile {
    pub fn identity(n: usize) -> Self {
        Profile((0..n).map(|p| 1u64 << p).collect())
    }

    pub fn letter(b: &Buchi, a: usize) -> Self {
        let mut rows = vec![0u64; b.num_states()];
        for &(p, x, q) in b.edges() {
            if x == a {
                rows[p] |= 1 << q;
                if b.is_final(p) || b.is_final(q) {
                    rows[p] |= 1 << (q + 32);
                }
            }
        }
        Profile(rows.into())
    }

    pub fn num_states(&self) -> usize {
        self.0.len()
    }

    /// `None` for `⊥`, otherwise whether a final state is visited.
    pub fn entry(&self, p: usize, q: usize) -> Option<bool> {
        let row = self.0[p];
        if row & (1 << q) == 0 {
            None
        } else {
            Some(row & (1 << (q + 32)) != 0)
        }
    }

    pub fn reach(&self, p: usize) -> u32 {
        (self.0[p] & LOW) as u32
    }

    pub fn fin(&self, p: usize) -> u32 {
        (self.0[p] >> 32) as u32
    }

    pub fn mul(&self, other: &Profile) -> Profile {
        let rows = self
            .0
            .iter()
            .map(|&row| {
                let (reach, fin) = (row & LOW, row >> 32);
                let mut out_reach = 0u64;
                let mut out_fin = 0u64;
                let mut bits = reach;
                while bits != 0 {
                    let q = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let r = other.0[q];
                    out_reach |= r & LOW;
                    out_fin |= r >> 32;
                    if fin & (1 << q) != 0 {
                        out_fin |= r & LOW;
                    }
                }
                out_reach | (out_fin << 32)
            })
            .collect();
        Profile(rows)
    }

    /// States reachable from `set` along this profile.
    pub fn image(&self, set: u32) -> u32 {
        let mut out = 0u32;
        let mut bits = set;
        while bits != 0 {
            let q = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= self.reach(q);
        }
        out
    }

    /// States `p` with entry `(p, p) = 1`.
    pub fn final_loops(&self) -> u32 {
        (0..self.0.len()).filter(|&p| self.fin(p) & (1 << p) != 0).fold(0, |m, p| m | 1 << p)
    }

    /// Whether `[m][e]^ω` is accepted from the initial states `initials`,
    /// for `e` the profile of a nonempty idempotent word: some initial state
    /// reaches, through `m·e`, a state carrying a final `e`-loop.
    pub fn lasso_accepts(initials: u32, m: &Profile, e: &Profile) -> bool {
        e.image(m.image(initials)) & e.final_loops() != 0
    }
}

/// The monoid of all transition profiles of an automaton, enumerated
/// breadth-first so element `i` carries a shortlex-minimal representative.
#[derive(Clone, Debug)]
pub struct ProfileMonoid {
    elements: Vec<Profile>,
    index: HashMap<Profile, usize>,
    reps: Vec<Word>,
    /// `right[i * |A| + a]` is the element of `rep(i)·a`.
    right: Vec<usize>,
    /// Shortest nonempty representative when the element is the profile of
    /// some nonempty word.
    nonempty_reps: Vec<Option<Word>>,
    idem: Vec<usize>,
    k: usize,
}

impl ProfileMonoid {
    pub fn new(b: &Buchi, cap: usize) -> Result<Self> {
        if b.num_states() > 32 {
            return Err(Error::TooLarge("profiles support at most 32 states".into()));
        }
        let k = b.alphabet().len();
        let letters: Vec<Profile> = (0..k).map(|a| Profile::letter(b, a)).collect();
        let unit = Profile::identity(b.num_states());
        let mut m = ProfileMonoid {
            elements: vec![unit.clone()],
            index: HashMap::from([(unit, 0)]),
            reps: vec![Vec::new()],
            right: Vec::new(),
            nonempty_reps: vec![None],
            idem: Vec::new(),
            k,
        };
        let mut i = 0;
        while i < m.elements.len() {
            for (a, letter) in letters.iter().enumerate() {
                let p = m.elements[i].mul(letter);
                let j = match m.index.get(&p) {
                    Some(&j) => j,
                    None => {
                        if m.elements.len() >= cap {
                            return Err(Error::MonoidTooLarge(cap));
                        }
                        let j = m.elements.len();
                        let mut w = m.reps[i].clone();
                        w.push(a);
                        m.index.insert(p.clone(), j);
                        m.elements.push(p);
                        m.reps.push(w);
                        m.nonempty_reps.push(None);
                        j
                    }
                };
                m.right.push(j);
                if m.nonempty_reps[j].is_none() {
                    let mut w = m.nonempty_reps[i].clone().unwrap_or_default();
                    w.push(a);
                    m.nonempty_reps[j] = Some(w);
                }
            }
            i += 1;
        }
        m.idem = (0..m.elements.len()).map(|i| m.compute_idem(i)).collect();
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn profile(&self, i: usize) -> &Profile {
        &self.elements[i]
    }

    pub fn rep(&self, i: usize) -> &Word {
        &self.reps[i]
    }

    pub fn nonempty_rep(&self, i: usize) -> Option<&Word> {
        self.nonempty_reps[i].as_ref()
    }

    /// Whether the element is the profile of some nonempty word.
    pub fn in_semigroup(&self, i: usize) -> bool {
        self.nonempty_reps[i].is_some()
    }

    pub fn letter(&self, a: usize) -> usize {
        self.right[a]
    }

    pub fn step(&self, i: usize, a: usize) -> usize {
        self.right[i * self.k + a]
    }

    pub fn index_of(&self, p: &Profile) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn of_word(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |i, &a| self.step(i, a))
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.reps[j].iter().fold(i, |x, &a| self.step(x, a))
    }

    pub fn idem(&self, i: usize) -> usize {
        self.idem[i]
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.idem[i] == i
    }

    fn compute_idem(&self, i: usize) -> usize {
        let mut x = i;
        loop {
            if self.mul(x, x) == x {
                return x;
            }
            x = self.mul(x, i);
        }
    }

    /// Idempotents that are profiles of nonempty words.
    pub fn semigroup_idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.in_semigroup(i) && self.is_idempotent(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn identity_is_neutral_and_letters_compose() {
        let b = samples::cm_figure();
        let id = Profile::identity(b.num_states());
        let a = Profile::letter(&b, 0);
        assert_eq!(id.mul(&a), a);
        assert_eq!(a.mul(&id), a);
        let ab = a.mul(&Profile::letter(&b, 1));
        // k1 -a-> k2 -b-> {k1, k2}, starting in the final k1
        assert_eq!(ab.entry(0, 0), Some(true));
        assert_eq!(ab.entry(0, 1), Some(true));
        // k3 -a-> k4 -b-> k4 ends final, k3 -a-> k3 -b-> k3 never is
        assert_eq!(ab.entry(2, 3), Some(true));
        assert_eq!(ab.entry(2, 2), Some(false));
        // k4 -a-> k5 has no b-successor
        assert_eq!(ab.entry(3, 4), None);
        assert_eq!(ab.reach(3), 0);
    }

    #[test]
    fn entries_follow_the_three_valued_semiring() {
        let b = samples::cm_figure();
        let a = Profile::letter(&b, 0);
        // k3 -a-> k3 passes no final state, k3 -a-> k4 ends in a final state.
        assert_eq!(a.entry(2, 2), Some(false));
        assert_eq!(a.entry(2, 3), Some(true));
        assert_eq!(a.entry(2, 0), None);
    }

    #[test]
    fn monoid_is_closed_and_idempotents_are_idempotent() {
        let b = samples::cm_figure();
        let m = ProfileMonoid::new(&b, PROFILE_CAP).unwrap();
        for i in 0..m.len() {
            for a in 0..2 {
                let p = m.profile(i).mul(&Profile::letter(&b, a));
                assert_eq!(m.index_of(&p), Some(m.step(i, a)));
            }
            let e = m.idem(i);
            assert_eq!(m.mul(e, e), e);
        }
        assert!(!m.in_semigroup(0) || m.nonempty_rep(0).is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let b = samples::cm_figure();
        assert_eq!(ProfileMonoid::new(&b, 2).unwrap_err(), Error::MonoidTooLarge(2));
    }
}
