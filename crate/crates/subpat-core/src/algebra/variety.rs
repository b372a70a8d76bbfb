use super::{Identity, OrderedMonoid, Quotient};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Varieties decided by identities or by recursion through quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variety {
    DA,
    R,
    L,
    RcapL,
    J1,
    Jplus,
    /// `R_1 = R ∩ L`, `R_{m+1} = K ⓜ L_m`
    Rm(u32),
    /// `L_1 = R ∩ L`, `L_{m+1} = D ⓜ R_m`
    Lm(u32),
    /// `Si_1 = J⁺`, `Si_{m+1} = KD ⓜ Si_m`
    Sim(u32),
}

impl Variety {
    /// Defining identities of the base varieties; empty for recursive ones.
    pub fn identities(self) -> Vec<Identity> {
        let parse = |s: &str| s.parse::<Identity>().expect("well-formed built-in identity");
        match self {
            Variety::DA => vec![parse("(xy)^ω x (xy)^ω = (xy)^ω")],
            Variety::R => vec![parse("(yx)^ω y = (yx)^ω")],
            Variety::L => vec![parse("y (xy)^ω = (xy)^ω")],
            Variety::RcapL => [Variety::R, Variety::L].iter().flat_map(|v| v.identities()).collect(),
            Variety::J1 => vec![parse("zz = z"), parse("xy = yx")],
            Variety::Jplus => vec![parse("1 ≤ z")],
            Variety::Rm(_) | Variety::Lm(_) | Variety::Sim(_) => Vec::new(),
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variety::DA => write!(f, "DA"),
            Variety::R => write!(f, "R"),
            Variety::L => write!(f, "L"),
            Variety::RcapL => write!(f, "RcapL"),
            Variety::J1 => write!(f, "J1"),
            Variety::Jplus => write!(f, "Jplus"),
            Variety::Rm(m) => write!(f, "R{m}"),
            Variety::Lm(m) => write!(f, "L{m}"),
            Variety::Sim(m) => write!(f, "Si{m}"),
        }
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let level = |prefix: &str| lower.strip_prefix(prefix).and_then(|m| m.strip_prefix('_').or(Some(m))).and_then(|m| m.parse::<u32>().ok());
        Ok(match lower.as_str() {
            "da" => Variety::DA,
            "r" => Variety::R,
            "l" => Variety::L,
            "rcapl" | "r∩l" => Variety::RcapL,
            "j1" => Variety::J1,
            "jplus" | "j+" => Variety::Jplus,
            _ => {
                if let Some(m) = level("si") {
                    Variety::Sim(m)
                } else if let Some(m) = level("r") {
                    Variety::Rm(m)
                } else if let Some(m) = level("l") {
                    Variety::Lm(m)
                } else {
                    return Err(Error::Invalid(format!("unknown variety `{s}`")));
                }
            }
        })
    }
}

/// Membership of `m` in `v`. The base varieties are tested by their
/// identities; the hierarchies recurse through the `~K`, `~D` and `⪯KD`
/// quotients down to level 1.
pub fn in_variety(m: &OrderedMonoid, v: Variety) -> Result<bool> {
    match v {
        Variety::Rm(0) | Variety::Lm(0) | Variety::Sim(0) => Err(Error::Invalid("variety levels start at 1".into())),
        Variety::Rm(1) | Variety::Lm(1) => in_variety(m, Variety::RcapL),
        Variety::Rm(k) => in_variety(&m.quotient(Quotient::K)?, Variety::Lm(k - 1)),
        Variety::Lm(k) => in_variety(&m.quotient(Quotient::D)?, Variety::Rm(k - 1)),
        Variety::Sim(1) => in_variety(m, Variety::Jplus),
        Variety::Sim(k) => in_variety(&m.quotient(Quotient::KD)?, Variety::Sim(k - 1)),
        _ => Ok(v.identities().iter().all(|i| i.holds_in(m))),
    }
}
