//! Solving for a vertex assignment once every variable's word is fixed.
//!
//! Each edge is a function of its source, so a vertex with a placed
//! predecessor is derived rather than guessed; only vertices without one are
//! enumerated.

use crate::patterns::{Kind, Pattern};

#[derive(Clone, Copy, Debug)]
enum Place {
    Free(usize),
    /// `g(dst) = T_var(g(src))` along the given edge
    Derive(usize),
}

#[derive(Clone, Copy, Debug)]
enum Check {
    Edge(usize),
    Final(usize),
    Endpoint,
}

#[derive(Clone, Debug)]
pub(crate) struct GoalPlan {
    places: Vec<Place>,
    /// checks that become decidable right after each placement
    checks: Vec<Vec<Check>>,
    edges: Vec<(usize, usize, usize)>,
    kind: Kind,
    compare: (usize, usize),
    vertices: usize,
}

/// What a configuration says about variable words.
pub(crate) trait Words {
    /// State reached from `q` along the word of `var`.
    fn apply(&self, var: usize, q: usize) -> usize;
    /// Whether that path meets a final state after its first step.
    fn visits_final(&self, var: usize, q: usize) -> bool;
}

impl GoalPlan {
    pub fn new(p: &Pattern) -> Self {
        let n = p.num_vertices();
        let edges: Vec<(usize, usize, usize)> = p.edges().iter().map(|e| (e.src, e.var, e.dst)).collect();
        let mut placed = vec![false; n];
        let mut places = Vec::new();
        let mut checks = Vec::new();
        let mut used = vec![false; edges.len()];
        let (j, k) = p.compare();
        let mut endpoint_done = false;
        while places.len() < n {
            let derive = edges
                .iter()
                .position(|&(s, _, t)| s != t && placed[s] && !placed[t]);
            let (place, v) = match derive {
                Some(e) => {
                    used[e] = true;
                    (Place::Derive(e), edges[e].2)
                }
                None => {
                    let entered_from_unplaced =
                        |v: usize| edges.iter().any(|&(s, _, t)| t == v && s != v && !placed[s]);
                    let v = (0..n)
                        .find(|&v| !placed[v] && !entered_from_unplaced(v))
                        .or_else(|| (0..n).find(|&v| !placed[v]))
                        .expect("an unplaced vertex remains");
                    (Place::Free(v), v)
                }
            };
            placed[v] = true;
            places.push(place);
            let mut now = Vec::new();
            for (e, &(s, _, t)) in edges.iter().enumerate() {
                if !used[e] && placed[s] && placed[t] {
                    used[e] = true;
                    now.push(Check::Edge(e));
                }
                if s == v && p.is_final_edge(e) {
                    now.push(Check::Final(e));
                }
            }
            if !endpoint_done && placed[j] && placed[k] {
                endpoint_done = true;
                now.push(Check::Endpoint);
            }
            checks.push(now);
        }
        GoalPlan { places, checks, edges, kind: p.kind(), compare: (j, k), vertices: n }
    }

    /// First assignment (in enumeration order) satisfying every edge, final
    /// edge and the endpoint predicate.
    pub fn solve(
        &self,
        domain: usize,
        words: &impl Words,
        separates: &impl Fn(Kind, usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut g = vec![usize::MAX; self.vertices];
        self.place(0, domain, words, separates, &mut g).then_some(g)
    }

    fn place(
        &self,
        i: usize,
        domain: usize,
        words: &impl Words,
        separates: &impl Fn(Kind, usize, usize) -> bool,
        g: &mut Vec<usize>,
    ) -> bool {
        if i == self.places.len() {
            return true;
        }
        let ok = |g: &Vec<usize>| {
            self.checks[i].iter().all(|c| match *c {
                Check::Edge(e) => {
                    let (s, x, t) = self.edges[e];
                    words.apply(x, g[s]) == g[t]
                }
                Check::Final(e) => {
                    let (s, x, _) = self.edges[e];
                    words.visits_final(x, g[s])
                }
                Check::Endpoint => separates(self.kind, g[self.compare.0], g[self.compare.1]),
            })
        };
        match self.places[i] {
            Place::Derive(e) => {
                let (s, x, t) = self.edges[e];
                g[t] = words.apply(x, g[s]);
                ok(g) && self.place(i + 1, domain, words, separates, g)
            }
            Place::Free(v) => {
                for q in 0..domain {
                    g[v] = q;
                    if ok(g) && self.place(i + 1, domain, words, separates, g) {
                        return true;
                    }
                }
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{make_level_pattern, make_topology_pattern, LevelFamily, TopologyFamily, TopologyMode};

    /// Every variable shifts by one modulo 3; finals seen from state 0 only.
    struct Shift;

    impl Words for Shift {
        fn apply(&self, _var: usize, q: usize) -> usize {
            (q + 1) % 3
        }
        fn visits_final(&self, _var: usize, q: usize) -> bool {
            q == 0
        }
    }

    #[test]
    fn tree_patterns_guess_only_the_root() {
        let p = make_level_pattern(LevelFamily::R, 2).unwrap();
        let plan = GoalPlan::new(&p);
        let free = plan.places.iter().filter(|p| matches!(p, Place::Free(_))).count();
        assert_eq!(free, 1);
        // the e1 loop at j can never hold under a shift
        assert_eq!(plan.solve(3, &Shift, &|_, a, b| a != b), None);
    }

    #[test]
    fn loops_only_patterns_guess_each_vertex() {
        let p = make_topology_pattern(TopologyFamily::Cantor, TopologyMode::Open);
        let plan = GoalPlan::new(&p);
        assert_eq!(plan.places.len(), 2);
        assert!(plan.places.iter().all(|p| matches!(p, Place::Free(_))));
    }

    struct Identity;

    impl Words for Identity {
        fn apply(&self, _var: usize, q: usize) -> usize {
            q
        }
        fn visits_final(&self, _var: usize, q: usize) -> bool {
            q == 2
        }
    }

    #[test]
    fn final_edges_and_endpoints_constrain_the_solution() {
        let p = make_topology_pattern(TopologyFamily::Cantor, TopologyMode::Open);
        let plan = GoalPlan::new(&p);
        // j must see a final state (only from 2) and differ from k
        let g = plan.solve(3, &Identity, &|_, a, b| a != b).unwrap();
        assert_eq!(g, vec![2, 0]);
    }
}
