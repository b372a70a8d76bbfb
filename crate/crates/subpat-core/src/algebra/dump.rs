use super::{in_variety, OrderedMonoid, Variety};
use crate::automata::Alphabet;
use crate::error::Result;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDump {
    pub id: usize,
    /// Shortlex-minimal representative; empty for the unit.
    pub rep: String,
    pub idempotent: bool,
}

/// Serializable view of an ordered monoid: elements, multiplication table,
/// strict order pairs, Green classes and variety memberships.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDump {
    pub size: usize,
    pub unit: usize,
    pub elements: Vec<ElementDump>,
    pub table: Vec<Vec<usize>>,
    /// Pairs `(s, t)` with `s < t`.
    pub order: Vec<(usize, usize)>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub j_classes: Vec<Vec<usize>>,
    pub varieties: Vec<(String, bool)>,
}

impl MonoidDump {
    /// Dumps `m`, deciding membership in the base varieties and in the
    /// hierarchies up to `max_level`.
    pub fn new(m: &OrderedMonoid, alphabet: &Alphabet, max_level: u32) -> Result<Self> {
        let n = m.len();
        let g = m.green();
        let mut varieties = Vec::new();
        let base = [Variety::DA, Variety::R, Variety::L, Variety::RcapL, Variety::J1, Variety::Jplus];
        let levels = (1..=max_level).flat_map(|k| [Variety::Rm(k), Variety::Lm(k), Variety::Sim(k)]);
        for v in base.into_iter().chain(levels) {
            varieties.push((v.to_string(), in_variety(m, v)?));
        }
        Ok(MonoidDump {
            size: n,
            unit: m.unit(),
            elements: (0..n)
                .map(|s| ElementDump { id: s, rep: alphabet.format_word(m.rep(s)), idempotent: m.is_idempotent(s) })
                .collect(),
            table: (0..n).map(|s| (0..n).map(|t| m.mul(s, t)).collect()).collect(),
            order: (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).filter(|&(s, t)| s != t && m.leq(s, t)).collect(),
            r_classes: g.r_classes(),
            l_classes: g.l_classes(),
            j_classes: g.j_classes(),
            varieties,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("monoid with {} elements (unit {})\n", self.size, self.unit);
        for e in &self.elements {
            let rep = if e.rep.is_empty() { "ε" } else { &e.rep };
            out += &format!("  {:>3}  {rep}{}\n", e.id, if e.idempotent { "  (idempotent)" } else { "" });
        }
        if !self.order.is_empty() {
            let pairs: Vec<String> = self.order.iter().map(|(s, t)| format!("{s}<{t}")).collect();
            out += &format!("order: {}\n", pairs.join(" "));
        }
        out += &format!("J-classes: {:?}\n", self.j_classes);
        for (v, yes) in &self.varieties {
            out += &format!("  {v:<6} {}\n", if *yes { "yes" } else { "no" });
        }
        out
    }
}
