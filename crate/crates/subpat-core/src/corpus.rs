//! Test corpora: every total DFA of a small size, seeded random DFAs, and
//! seeded random Carton-Michel automata obtained by generate-and-filter.

use crate::automata::{Alphabet, Buchi, Dfa, PROFILE_CAP};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Dfa,
    Cm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Count {
    Exhaustive,
    #[serde(untagged)]
    Exactly(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    pub n_states: usize,
    pub alphabet_size: usize,
    pub count: Count,
    pub seed: u64,
}

/// Bounds for exhaustive enumeration.
pub const EXHAUSTIVE_MAX_STATES: usize = 3;
pub const EXHAUSTIVE_MAX_LETTERS: usize = 2;

/// Candidates tried per requested CM automaton before giving up.
pub const CM_ATTEMPTS_PER_AUTOMATON: usize = 2_000;

/// Probability that a CM candidate leaves a `(state, letter)` without
/// predecessor.
pub const CM_MISSING_PREDECESSOR: f64 = 0.05;

pub enum Corpus {
    Dfa(Vec<Dfa>),
    Cm(CmCorpus),
}

pub struct CmCorpus {
    pub automata: Vec<Buchi>,
    pub candidates: u64,
    /// Candidates that validated, duplicates included.
    pub accepted: u64,
}

impl CmCorpus {
    pub fn acceptance_ratio(&self) -> f64 {
        if self.candidates == 0 {
            0.0
        } else {
            self.accepted as f64 / self.candidates as f64
        }
    }
}

pub fn generate(spec: &CorpusSpec) -> Result<Corpus> {
    if spec.n_states == 0 || spec.alphabet_size == 0 {
        return Err(Error::Invalid("corpus needs at least one state and one letter".into()));
    }
    match (spec.kind, spec.count) {
        (CorpusKind::Dfa, Count::Exhaustive) => Ok(Corpus::Dfa(exhaustive_dfas(spec.n_states, spec.alphabet_size)?.collect())),
        (CorpusKind::Dfa, Count::Exactly(c)) => Ok(Corpus::Dfa(random_dfas(spec.n_states, spec.alphabet_size, c, spec.seed))),
        (CorpusKind::Cm, Count::Exactly(c)) => Ok(Corpus::Cm(random_cm(spec.n_states, spec.alphabet_size, c, spec.seed)?)),
        (CorpusKind::Cm, Count::Exhaustive) => Err(Error::Invalid("CM corpora are random; give a count".into())),
    }
}

/// `|Q|^(|Q|·|A|) · |Q| · 2^|Q|`
pub fn exhaustive_count(n: usize, k: usize) -> u64 {
    (n as u64).pow((n * k) as u32) * n as u64 * (1u64 << n)
}

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|q| format!("q{q}")).collect()
}

/// Every total DFA with `n` states over `k` letters, in lexicographic order
/// of (transition table, initial state, final set).
pub fn exhaustive_dfas(n: usize, k: usize) -> Result<impl Iterator<Item = Dfa>> {
    if n > EXHAUSTIVE_MAX_STATES || k > EXHAUSTIVE_MAX_LETTERS {
        return Err(Error::TooLarge(format!(
            "exhaustive enumeration is limited to {EXHAUSTIVE_MAX_STATES} states and {EXHAUSTIVE_MAX_LETTERS} letters"
        )));
    }
    let tables = (n as u64).pow((n * k) as u32);
    let per_table = n as u64 * (1u64 << n);
    let names = state_names(n);
    let sigma = Alphabet::latin(k);
    Ok((0..tables * per_table).map(move |i| {
        let (mut t, rest) = (i / per_table, i % per_table);
        let (initial, fin) = ((rest / (1 << n)) as usize, rest % (1 << n));
        let delta = (0..n * k)
            .map(|_| {
                let q = (t % n as u64) as usize;
                t /= n as u64;
                q
            })
            .collect();
        let finals = (0..n).map(|q| fin >> q & 1 == 1).collect();
        Dfa::from_table(names.clone(), sigma.clone(), delta, initial, finals).expect("enumerated tables are total")
    }))
}

pub fn random_dfas(n: usize, k: usize, count: usize, seed: u64) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = state_names(n);
    (0..count)
        .map(|_| {
            let delta = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
            let finals = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            Dfa::from_table(names.clone(), Alphabet::latin(k), delta, rng.gen_range(0..n), finals)
                .expect("generated tables are total")
        })
        .collect()
}

/// A candidate is reverse deterministic by construction: each `(q, a)` gets
/// at most one predecessor. Completeness and unambiguity are left to the
/// filter. Duplicates are dropped.
pub fn random_cm(n: usize, k: usize, count: usize, seed: u64) -> Result<CmCorpus> {
    random_cm_with(n, k, count, seed, CM_MISSING_PREDECESSOR, 0.5)
}

pub(crate) fn random_cm_with(n: usize, k: usize, count: usize, seed: u64, p_none: f64, p_final: f64) -> Result<CmCorpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = state_names(n);
    let mut seen = HashSet::new();
    let mut out = CmCorpus { automata: Vec::new(), candidates: 0, accepted: 0 };
    let limit = (count.max(1) * CM_ATTEMPTS_PER_AUTOMATON) as u64;
    while out.automata.len() < count {
        if out.candidates >= limit {
            return Err(Error::TooLarge(format!(
                "only {} of {count} Carton-Michel automata after {limit} candidates",
                out.automata.len()
            )));
        }
        out.candidates += 1;
        let mut edges = Vec::new();
        for q in 0..n {
            for a in 0..k {
                // predecessor of q on a; trim CM automata are reverse
                // complete, so a missing one is rare
                if !rng.gen_bool(p_none) {
                    edges.push((rng.gen_range(0..n), a, q));
                }
            }
        }
        let initials: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(p_final)).collect();
        let b = Buchi::from_table(names.clone(), Alphabet::latin(k), edges, initials, finals)?;
        if !b.validate_cm(PROFILE_CAP)?.is_cm() {
            continue;
        }
        out.accepted += 1;
        if seen.insert(trim_key(&b)) {
            out.automata.push(b);
        }
    }
    Ok(out)
}

/// The trim part up to renaming of its states: the least encoding over all
/// orderings. Non-trim states affect neither the language nor any pattern.
pub fn trim_key(b: &Buchi) -> Vec<u8> {
    let trim = b.trim_part();
    let states: Vec<usize> = (0..b.num_states()).filter(|&q| trim[q]).collect();
    let m = states.len();
    let mut local = vec![usize::MAX; b.num_states()];
    for (i, &q) in states.iter().enumerate() {
        local[q] = i;
    }
    let edges: Vec<(usize, usize, usize)> = b
        .edges()
        .iter()
        .filter(|&&(p, _, q)| trim[p] && trim[q])
        .map(|&(p, a, q)| (local[p], a, local[q]))
        .collect();
    let encode = |perm: &[usize]| {
        let mut e: Vec<(usize, usize, usize)> = edges.iter().map(|&(p, a, q)| (perm[p], a, perm[q])).collect();
        e.sort_unstable();
        let mut out = vec![m as u8];
        let mut flags = vec![0u8; m];
        for (i, &q) in states.iter().enumerate() {
            flags[perm[i]] = u8::from(b.is_initial(q)) | u8::from(b.is_final(q)) << 1;
        }
        out.extend(flags);
        out.extend(e.into_iter().flat_map(|(p, a, q)| [p as u8, a as u8, q as u8]));
        out
    };
    if m > 7 {
        return encode(&(0..m).collect::<Vec<_>>());
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best = encode(&perm);
    // Heap's algorithm over the remaining orderings
    let mut c = vec![0; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(encode(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}
