use super::OrderedMonoid;

/// Green's preorders, computed extensionally: `s ≤_R t` iff `s ∈ tM`,
/// `s ≤_L t` iff `s ∈ Mt`, `s ≤_J t` iff `s ∈ MtM`.
#[derive(Clone, Debug)]
pub struct GreenData {
    n: usize,
    r: Vec<bool>,
    l: Vec<bool>,
    j: Vec<bool>,
}

impl GreenData {
    pub fn new(m: &OrderedMonoid) -> Self {
        let n = m.len();
        let mut r = vec![false; n * n];
        let mut l = vec![false; n * n];
        for t in 0..n {
            for x in 0..n {
                r[m.mul(t, x) * n + t] = true;
                l[m.mul(x, t) * n + t] = true;
            }
        }
        // MtM = M(tM)
        let mut j = vec![false; n * n];
        for t in 0..n {
            for s in (0..n).filter(|&s| r[s * n + t]) {
                for x in 0..n {
                    j[m.mul(x, s) * n + t] = true;
                }
            }
        }
        GreenData { n, r, l, j }
    }

    pub fn r_leq(&self, s: usize, t: usize) -> bool {
        self.r[s * self.n + t]
    }

    pub fn l_leq(&self, s: usize, t: usize) -> bool {
        self.l[s * self.n + t]
    }

    pub fn j_leq(&self, s: usize, t: usize) -> bool {
        self.j[s * self.n + t]
    }

    pub fn r_eq(&self, s: usize, t: usize) -> bool {
        self.r_leq(s, t) && self.r_leq(t, s)
    }

    pub fn l_eq(&self, s: usize, t: usize) -> bool {
        self.l_leq(s, t) && self.l_leq(t, s)
    }

    pub fn j_eq(&self, s: usize, t: usize) -> bool {
        self.j_leq(s, t) && self.j_leq(t, s)
    }

    pub fn j_lt(&self, s: usize, t: usize) -> bool {
        self.j_leq(s, t) && !self.j_leq(t, s)
    }

    /// Classes of an equivalence, each listed by increasing element.
    fn classes(&self, eq: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.n {
            match out.iter_mut().find(|c| eq(c[0], s)) {
                Some(c) => c.push(s),
                None => out.push(vec![s]),
            }
        }
        out
    }

    pub fn r_classes(&self) -> Vec<Vec<usize>> {
        self.classes(|s, t| self.r_eq(s, t))
    }

    pub fn l_classes(&self) -> Vec<Vec<usize>> {
        self.classes(|s, t| self.l_eq(s, t))
    }

    pub fn j_classes(&self) -> Vec<Vec<usize>> {
        self.classes(|s, t| self.j_eq(s, t))
    }

    /// No two distinct elements are `R`-equivalent.
    pub fn is_r_trivial(&self) -> bool {
        self.r_classes().iter().all(|c| c.len() == 1)
    }

    pub fn is_l_trivial(&self) -> bool {
        self.l_classes().iter().all(|c| c.len() == 1)
    }
}
