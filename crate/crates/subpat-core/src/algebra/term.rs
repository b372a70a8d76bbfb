use super::OrderedMonoid;
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// An ω-term: variables, the unit, products and idempotent powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaTerm {
    Var(char),
    One,
    Concat(Box<OmegaTerm>, Box<OmegaTerm>),
    Omega(Box<OmegaTerm>),
}

impl OmegaTerm {
    pub fn var(x: char) -> Self {
        OmegaTerm::Var(x)
    }

    pub fn concat(self, other: OmegaTerm) -> Self {
        OmegaTerm::Concat(Box::new(self), Box::new(other))
    }

    pub fn omega(self) -> Self {
        OmegaTerm::Omega(Box::new(self))
    }

    pub fn variables(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<char>) {
        match self {
            OmegaTerm::Var(x) => {
                out.insert(*x);
            }
            OmegaTerm::One => {}
            OmegaTerm::Concat(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            OmegaTerm::Omega(a) => a.collect_vars(out),
        }
    }

    /// Value under an interpretation of the variables.
    pub fn eval(&self, m: &OrderedMonoid, interp: &impl Fn(char) -> usize) -> usize {
        match self {
            OmegaTerm::Var(x) => interp(*x),
            OmegaTerm::One => m.unit(),
            OmegaTerm::Concat(a, b) => m.mul(a.eval(m, interp), b.eval(m, interp)),
            OmegaTerm::Omega(a) => m.omega(a.eval(m, interp)),
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Concat(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

/// Products print without separators; ω applies to a variable, the unit or
/// a parenthesized product.
impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Var(x) => write!(f, "{x}"),
            OmegaTerm::One => write!(f, "1"),
            OmegaTerm::Concat(a, b) => write!(f, "{a}{b}"),
            OmegaTerm::Omega(a) => {
                a.fmt_factor(f)?;
                write!(f, "^ω")
            }
        }
    }
}

/// Single-letter variables, `1`, juxtaposition, parentheses and a postfix
/// `^ω` (or `^w`). Whitespace is ignored.
impl FromStr for OmegaTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars: &chars, pos: 0 };
        let t = p.product()?;
        if p.pos != chars.len() {
            return Err(Error::Invalid(format!("unexpected `{}` in ω-term `{s}`", chars[p.pos])));
        }
        Ok(t)
    }
}

struct Parser<'c> {
    chars: &'c [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<OmegaTerm> {
        let mut acc: Option<OmegaTerm> = None;
        while let Some(c) = self.peek() {
            if c == ')' {
                break;
            }
            let f = self.factor()?;
            acc = Some(match acc {
                None => f,
                Some(a) => a.concat(f),
            });
        }
        acc.ok_or_else(|| Error::Invalid("empty ω-term".into()))
    }

    fn factor(&mut self) -> Result<OmegaTerm> {
        let mut t = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.product()?;
                if self.peek() != Some(')') {
                    return Err(Error::Invalid("unbalanced parentheses in ω-term".into()));
                }
                self.pos += 1;
                t
            }
            Some('1') => {
                self.pos += 1;
                OmegaTerm::One
            }
            Some(c) if c.is_alphabetic() && c != 'ω' => {
                self.pos += 1;
                OmegaTerm::Var(c)
            }
            Some(c) => return Err(Error::Invalid(format!("unexpected `{c}` in ω-term"))),
            None => return Err(Error::Invalid("truncated ω-term".into())),
        };
        while self.peek() == Some('^') {
            match self.chars.get(self.pos + 1) {
                Some('ω') | Some('w') => {
                    self.pos += 2;
                    t = t.omega();
                }
                _ => return Err(Error::Invalid("`^` must be followed by ω".into())),
            }
        }
        Ok(t)
    }
}

/// The reverse ω-term: products swapped, variables and ω kept.
pub fn reverse_term(t: &OmegaTerm) -> OmegaTerm {
    match t {
        OmegaTerm::Var(_) | OmegaTerm::One => t.clone(),
        OmegaTerm::Concat(a, b) => reverse_term(b).concat(reverse_term(a)),
        OmegaTerm::Omega(a) => reverse_term(a).omega(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Leq,
}

/// `lhs = rhs` or `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
    pub relation: Relation,
}

impl Identity {
    pub fn reverse(&self) -> Identity {
        Identity { lhs: reverse_term(&self.lhs), rhs: reverse_term(&self.rhs), relation: self.relation }
    }

    pub fn holds_in(&self, m: &OrderedMonoid) -> bool {
        satisfies_identity(m, &self.lhs, &self.rhs, self.relation)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r, relation) = if let Some((l, r)) = s.split_once("<=").or_else(|| s.split_once('≤')) {
            (l, r, Relation::Leq)
        } else if let Some((l, r)) = s.split_once('=') {
            (l, r, Relation::Eq)
        } else {
            return Err(Error::Invalid(format!("identity `{s}` has no `=` or `≤`")));
        };
        Ok(Identity { lhs: l.parse()?, rhs: r.parse()?, relation })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::Eq => "=",
            Relation::Leq => "≤",
        };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

/// Whether every interpretation of the variables in `m` satisfies the
/// relation between the two terms.
pub fn satisfies_identity(m: &OrderedMonoid, lhs: &OmegaTerm, rhs: &OmegaTerm, relation: Relation) -> bool {
    let vars: Vec<char> = lhs.variables().union(&rhs.variables()).copied().collect();
    let n = m.len();
    let mut assign = vec![0usize; vars.len()];
    loop {
        let interp = |x: char| assign[vars.iter().position(|&v| v == x).expect("declared variable")];
        let (a, b) = (lhs.eval(m, &interp), rhs.eval(m, &interp));
        let ok = match relation {
            Relation::Eq => a == b,
            Relation::Leq => m.leq(a, b),
        };
        if !ok {
            return false;
        }
        // odometer over n^|vars|
        let mut i = 0;
        loop {
            if i == assign.len() {
                return true;
            }
            assign[i] += 1;
            if assign[i] < n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    fn id(s: &str) -> Identity {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["(xy)^ωx(xy)^ω", "y(xy)^ω", "1", "((yx)^ωy)^ω", "zz"] {
            let t: OmegaTerm = s.parse().unwrap();
            assert_eq!(t.to_string().parse::<OmegaTerm>().unwrap(), t, "{s}");
        }
        assert_eq!("(x y)^w".parse::<OmegaTerm>().unwrap(), "(xy)^ω".parse().unwrap());
        assert!("(xy".parse::<OmegaTerm>().is_err());
        assert!("x^2".parse::<OmegaTerm>().is_err());
        assert!("".parse::<OmegaTerm>().is_err());
    }

    #[test]
    fn reversal_swaps_products() {
        let t: OmegaTerm = "(yx)^ωy".parse().unwrap();
        assert_eq!(reverse_term(&t), "y(xy)^ω".parse().unwrap());
        assert_eq!(reverse_term(&OmegaTerm::var('x')), OmegaTerm::var('x'));
        assert_eq!(reverse_term(&reverse_term(&t)), t);
    }

    #[test]
    fn trivial_monoid_satisfies_everything() {
        let t = trivial();
        for s in ["(xy)^ωx(xy)^ω = (xy)^ω", "xy = yx", "1 <= z", "x = 1"] {
            assert!(id(s).holds_in(&t), "{s}");
        }
    }

    #[test]
    fn b2_is_not_in_da() {
        assert!(!id("(xy)^ω x (xy)^ω = (xy)^ω").holds_in(&b2_with_unit()));
    }

    #[test]
    fn ordered_u1_is_in_j_plus() {
        let m = u1_ordered();
        assert!(id("1 ≤ z").holds_in(&m));
        assert!(!id("z ≤ 1").holds_in(&m));
        assert!(id("zz = z").holds_in(&m));
    }

    #[test]
    fn identities_flip_under_reversal() {
        let r = id("(yx)^ω y = (yx)^ω");
        let b = b2_with_unit();
        assert_eq!(r.holds_in(&b), r.reverse().holds_in(&b.reverse()));
    }
}
