//! Syntactic ordered monoids. Finite words use the transition monoid of the
//! minimal DFA; infinite words quotient the transition-profile monoid by the
//! fin, inf and full context preorders, decided on lasso classes.

use super::OrderedMonoid;
use crate::automata::{Buchi, Dfa, Profile, ProfileMonoid, Word};
use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use std::collections::HashMap;
use std::hash::Hash;

pub const DEFAULT_MONOID_CAP: usize = 1_000_000;

/// Transition monoid of the minimal DFA. `μ(u) ≤ μ(v)` iff `r·u ≤ r·v` in
/// the state order for every state `r`.
pub fn syntactic_monoid_finite(dfa: &Dfa, cap: usize) -> Result<OrderedMonoid> {
    let m = dfa.minimize();
    let (n, k) = (m.num_states(), m.alphabet().len());
    let unit: Vec<usize> = (0..n).collect();
    let mut index = HashMap::from([(unit.clone(), 0usize)]);
    let mut funcs = vec![unit];
    let mut reps: Vec<Word> = vec![Vec::new()];
    let mut right = Vec::new();
    let mut i = 0;
    while i < funcs.len() {
        for a in 0..k {
            let f: Vec<usize> = funcs[i].iter().map(|&q| m.step(q, a)).collect();
            let j = match index.get(&f) {
                Some(&j) => j,
                None => {
                    if funcs.len() >= cap {
                        return Err(Error::MonoidTooLarge(cap));
                    }
                    let mut w = reps[i].clone();
                    w.push(a);
                    index.insert(f.clone(), funcs.len());
                    funcs.push(f);
                    reps.push(w);
                    funcs.len() - 1
                }
            };
            right.push(j);
        }
        i += 1;
    }
    let order = m.state_order();
    let leq = |s: usize, t: usize| (0..n).all(|r| order.leq(funcs[s][r], funcs[t][r]));
    Ok(OrderedMonoid::from_action(reps, &right, k, leq))
}

/// The three syntactic monoids of an ω-language, and the size of the
/// profile monoid they quotient.
#[derive(Clone, Debug)]
pub struct CmMonoids {
    pub fin: OrderedMonoid,
    pub inf: OrderedMonoid,
    pub full: OrderedMonoid,
    pub profiles: usize,
}

/// Interns values, numbering them by first occurrence.
struct Interner<T: Hash + Eq> {
    ids: HashMap<T, usize>,
    values: Vec<T>,
}

impl<T: Hash + Eq + Clone> Interner<T> {
    fn new() -> Self {
        Interner { ids: HashMap::new(), values: Vec::new() }
    }

    fn id(&mut self, v: T) -> usize {
        if let Some(&i) = self.ids.get(&v) {
            return i;
        }
        self.values.push(v.clone());
        self.ids.insert(v, self.values.len() - 1);
        self.values.len() - 1
    }
}

/// `[m][e]^ω` from a set of states already reached by `m`.
fn accepts_from(reached: u32, e: &Profile) -> bool {
    e.image(reached) & e.final_loops() != 0
}

/// `u ≤_fin v` iff `xuyz^ω ∈ L ⇒ xvyz^ω ∈ L`, and `u ≤_inf v` iff
/// `x(uy)^ω ∈ L ⇒ x(vy)^ω ∈ L`, for all words `x, y` and nonempty `z`;
/// `full` is their conjunction.
///
/// Prefixes enter only through the set `X` of states they reach; suffixes
/// `yz^ω` only through the lasso classes accepted from `u(X)`.
pub fn fin_inf_syntactic(b: &Buchi, cap: usize) -> Result<CmMonoids> {
    let pm = ProfileMonoid::new(b, cap)?;
    let n = pm.len();
    let k = b.alphabet().len();
    let init = b.initial_mask();
    let idems = pm.semigroup_idempotents();

    let mut prefixes = Interner::new();
    for s in 0..n {
        prefixes.id(pm.profile(s).image(init));
    }
    let xs = prefixes.values;

    // fin: futures of a state set over (t, e) pairs
    let futures_of = |z: u32| {
        let mut bits = FixedBitSet::with_capacity(n * idems.len());
        for t in 0..n {
            let y = pm.profile(t).image(z);
            for (i, &e) in idems.iter().enumerate() {
                if accepts_from(y, pm.profile(e)) {
                    bits.insert(t * idems.len() + i);
                }
            }
        }
        bits
    };
    let mut by_set: HashMap<u32, usize> = HashMap::new();
    let mut futures = Interner::new();
    let mut fin_sig: Vec<Vec<usize>> = Vec::with_capacity(n);
    for u in 0..n {
        let sig = xs
            .iter()
            .map(|&x| {
                let z = pm.profile(u).image(x);
                *by_set.entry(z).or_insert_with(|| futures.id(futures_of(z)))
            })
            .collect();
        fin_sig.push(sig);
    }
    let fut = &futures.values;
    let fin_leq = |u: usize, v: usize| fin_sig[u].iter().zip(&fin_sig[v]).all(|(&a, &b)| fut[a].is_subset(&fut[b]));

    // inf: for each suffix t, the prefixes accepting [x][(ut)^ω]
    let mut accsets = Interner::new();
    let mut by_idem: HashMap<usize, usize> = HashMap::new();
    let mut inf_sig: Vec<Vec<usize>> = Vec::with_capacity(n);
    for u in 0..n {
        let sig = (0..n)
            .map(|t| {
                let e = pm.idem(pm.mul(u, t));
                *by_idem.entry(e).or_insert_with(|| {
                    let mut bits = FixedBitSet::with_capacity(xs.len());
                    for (i, &x) in xs.iter().enumerate() {
                        if accepts_from(x, pm.profile(e)) {
                            bits.insert(i);
                        }
                    }
                    accsets.id(bits)
                })
            })
            .collect();
        inf_sig.push(sig);
    }
    let acc = &accsets.values;
    let inf_leq = |u: usize, v: usize| inf_sig[u].iter().zip(&inf_sig[v]).all(|(&a, &b)| acc[a].is_subset(&acc[b]));

    let fin = quotient(&pm, k, |u| fin_sig[u].clone(), fin_leq)?;
    let inf = quotient(&pm, k, |u| inf_sig[u].clone(), inf_leq)?;
    let full = quotient(&pm, k, |u| (fin_sig[u].clone(), inf_sig[u].clone()), |u, v| fin_leq(u, v) && inf_leq(u, v))?;
    Ok(CmMonoids { fin, inf, full, profiles: n })
}

/// Classes of equal signature, numbered by least profile; the order is the
/// preorder on least members.
fn quotient<S: Hash + Eq + Clone>(
    pm: &ProfileMonoid,
    k: usize,
    sig: impl Fn(usize) -> S,
    leq: impl Fn(usize, usize) -> bool,
) -> Result<OrderedMonoid> {
    let mut classes = Interner::new();
    let class: Vec<usize> = (0..pm.len()).map(|u| classes.id(sig(u))).collect();
    let mut mins = vec![usize::MAX; classes.values.len()];
    for (u, &c) in class.iter().enumerate().rev() {
        mins[c] = u;
    }
    let class = &class;
    let right: Vec<usize> = mins.iter().flat_map(|&u| (0..k).map(move |a| class[pm.step(u, a)])).collect();
    let reps = mins.iter().map(|&u| pm.rep(u).clone()).collect();
    let m = OrderedMonoid::from_action(reps, &right, k, |c, d| leq(mins[c], mins[d]));
    m.check_order()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::super::{in_variety, Variety};
    use super::*;
    use crate::automata::Lasso;
    use crate::samples;

    fn words(k: usize, max: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max {
            layer = layer
                .iter()
                .flat_map(|w: &Word| (0..k).map(move |a| [w.as_slice(), &[a]].concat()))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// `u ≤_L v` by quantifying over contexts of length at most 4.
    fn brute_leq(d: &Dfa, u: &[usize], v: &[usize]) -> bool {
        let ctx = words(d.alphabet().len(), 4);
        ctx.iter().all(|p| ctx.iter().all(|q| !d.accepts(&[p, u, q].concat()) || d.accepts(&[p, v, q].concat())))
    }

    #[test]
    fn order_matches_context_quantification() {
        for d in [samples::dfa_contains_a(), samples::dfa_ends_with_a(), samples::dfa_ab_star(), samples::dfa_a()] {
            let m = syntactic_monoid_finite(&d, DEFAULT_MONOID_CAP).unwrap();
            for u in words(2, 3) {
                for v in words(2, 3) {
                    assert_eq!(m.leq(m.eval(&u), m.eval(&v)), brute_leq(&d, &u, &v), "{u:?} {v:?}");
                }
            }
        }
    }

    #[test]
    fn contains_a_has_two_elements() {
        let m = syntactic_monoid_finite(&samples::dfa_contains_a(), DEFAULT_MONOID_CAP).unwrap();
        assert_eq!(m.len(), 2);
        let a = m.gens()[0];
        assert!(m.leq(m.unit(), a) && !m.leq(a, m.unit()));
        assert_eq!(m.mul(a, a), a);
    }

    #[test]
    fn ab_star_is_b2_with_unit() {
        let d = samples::dfa_ab_star();
        let m = syntactic_monoid_finite(&d, DEFAULT_MONOID_CAP).unwrap();
        // distinct state maps of all words up to length 6
        let mut maps: Vec<Vec<usize>> = words(2, 6).iter().map(|w| (0..3).map(|q| d.run(q, w)).collect()).collect();
        maps.sort();
        maps.dedup();
        assert_eq!(m.len(), maps.len());
        assert_eq!(m.len(), 6);
        let (a, b) = (m.gens()[0], m.gens()[1]);
        assert_ne!(m.mul(a, b), m.mul(b, a));
        // the zero lies below everything: no context accepts it
        let zero = m.mul(a, a);
        assert!((0..m.len()).all(|s| m.leq(zero, s)));
        assert!(!m.is_unordered());
    }

    #[test]
    fn universal_language_is_trivial() {
        assert_eq!(syntactic_monoid_finite(&samples::dfa_universal(), DEFAULT_MONOID_CAP).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(syntactic_monoid_finite(&samples::dfa_ab_star(), 3), Err(Error::MonoidTooLarge(3)));
    }

    #[test]
    fn eventually_a_is_j_plus() {
        let ms = fin_inf_syntactic(&samples::cm_figure(), DEFAULT_MONOID_CAP).unwrap();
        // ε < b < a: the empty word has no ω-power, so it stays apart from b
        assert_eq!(ms.full.len(), 3);
        let (a, b) = (ms.full.gens()[0], ms.full.gens()[1]);
        assert!(ms.full.leq(ms.full.unit(), b) && ms.full.leq(b, a) && !ms.full.leq(a, b));
        assert!(in_variety(&ms.full, Variety::Sim(1)).unwrap());
        assert!(in_variety(&ms.inf, Variety::DA).unwrap());
    }

    #[test]
    fn unary_a_omega_has_trivial_fin_monoid() {
        let ms = fin_inf_syntactic(&samples::cm_a_omega(), DEFAULT_MONOID_CAP).unwrap();
        assert_eq!(ms.fin.len(), 1);
        // only the empty word is told apart, having no ω-power
        assert_eq!(ms.inf.len(), 2);
    }

    /// `u ≤_fin v` and `u ≤_inf v` by quantifying over short words.
    fn brute_cm(b: &Buchi, u: &[usize], v: &[usize]) -> (bool, bool) {
        let acc = |p: Word, q: Word| b.accepts_lasso(&Lasso { prefix: p, period: q }).unwrap();
        let ctx = words(2, 3);
        let nonempty: Vec<&Word> = ctx.iter().filter(|w| !w.is_empty()).collect();
        let fin = ctx.iter().all(|x| {
            ctx.iter().all(|y| nonempty.iter().all(|z| !acc([x, u, y].concat(), z.to_vec()) || acc([x, v, y].concat(), z.to_vec())))
        });
        let inf = ctx.iter().all(|x| {
            ctx.iter().all(|y| {
                let (uy, vy) = ([u, y].concat(), [v, y].concat());
                uy.is_empty() || vy.is_empty() || !acc(x.clone(), uy) || acc(x.clone(), vy)
            })
        });
        (fin, inf)
    }

    #[test]
    fn cm_orders_match_lasso_quantification() {
        for b in [samples::cm_figure(), samples::cm_finitely_many_a()] {
            let ms = fin_inf_syntactic(&b, DEFAULT_MONOID_CAP).unwrap();
            for u in words(2, 2) {
                for v in words(2, 2) {
                    let (fin, inf) = brute_cm(&b, &u, &v);
                    assert_eq!(ms.fin.leq(ms.fin.eval(&u), ms.fin.eval(&v)), fin, "fin {u:?} {v:?}");
                    if !u.is_empty() && !v.is_empty() {
                        assert_eq!(ms.inf.leq(ms.inf.eval(&u), ms.inf.eval(&v)), inf, "inf {u:?} {v:?}");
                    }
                }
            }
        }
    }
}
