//! Constructors for the built-in pattern families.

use super::{Direction, Edge, Kind, Pattern, PatternParts, VarPoset};
use crate::automata::fresh_name;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelFamily {
    R,
    L,
    Si,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftMode {
    K,
    D,
    Kd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InfFamily {
    Si1,
    Da,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopologyFamily {
    Cantor,
    Alph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TopologyMode {
    Open,
    Closed,
    Clopen,
}

/// Incremental builder over named vertices and variables.
struct Draft {
    vars: Vec<String>,
    order: Vec<(usize, usize)>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    finals: Vec<usize>,
}

impl Draft {
    fn new(vars: &[&str], order: &[(usize, usize)]) -> Self {
        Draft {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order: order.to_vec(),
            vertices: Vec::new(),
            edges: Vec::new(),
            finals: Vec::new(),
        }
    }

    fn vertex(&mut self, name: &str) -> usize {
        self.vertices.push(name.to_string());
        self.vertices.len() - 1
    }

    fn edge(&mut self, src: usize, var: usize, dst: usize) -> usize {
        self.edges.push(Edge { src, var, dst });
        self.edges.len() - 1
    }

    fn final_edge(&mut self, src: usize, var: usize, dst: usize) -> usize {
        let i = self.edge(src, var, dst);
        self.finals.push(i);
        i
    }

    /// Stores an edge drawn as a reading path `src –var→ dst` of a reverse
    /// automaton, i.e. `var∘dst = src`.
    fn path_edge(&mut self, src: usize, var: usize, dst: usize) -> usize {
        self.edge(dst, var, src)
    }

    fn final_path_edge(&mut self, src: usize, var: usize, dst: usize) -> usize {
        self.final_edge(dst, var, src)
    }

    fn finish(
        self,
        kind: Kind,
        compare: (usize, usize),
        direction: Direction,
        nonempty: bool,
        root: Option<usize>,
    ) -> Pattern {
        let vars = VarPoset::new(self.vars, &self.order).expect("built-in orders are acyclic");
        Pattern::new(PatternParts {
            vars,
            vertices: self.vertices,
            edges: self.edges,
            kind,
            compare,
            direction,
            final_edges: self.finals,
            nonempty,
            root,
        })
        .expect("built-in patterns are well-formed")
    }
}

/// `P_DA`: `j` with a `y` loop, `j –A_y→ k`, `k` with a `y` loop, `A_y ⪯ y`.
/// The rooted variant adds `r –y→ j`.
pub fn make_da_pattern(rooted: bool) -> Pattern {
    let mut d = Draft::new(&["y", "A_y"], &[(1, 0)]);
    let r = rooted.then(|| d.vertex("r"));
    let j = d.vertex("j");
    let k = d.vertex("k");
    if let Some(r) = r {
        d.edge(r, 0, j);
    }
    d.edge(j, 0, j);
    d.edge(j, 1, k);
    d.edge(k, 0, k);
    d.finish(Kind::Neq, (j, k), Direction::Forward, false, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Chain {
    X,
    Y,
    Z,
}

/// Level patterns `P^R_m`, `P^L_m` (m ≥ 2) and `P^Si_m` (m ≥ 1).
///
/// A prefix `r –e_ℓ→ ∘ … –e_1→ v` of looped vertices, then a top branch
/// `v –f_1→ … → j` and a bottom branch `v –x→ w –f_1→ … → k`, every `e_i`
/// and `f_i` edge entering a vertex with a loop on the same variable.
pub fn make_level_pattern(family: LevelFamily, m: usize) -> Result<Pattern> {
    let min = if family == LevelFamily::Si { 1 } else { 2 };
    if m < min {
        return Err(Error::Invalid(format!("level must be at least {min} for this family")));
    }
    let chain = match (family, m % 2) {
        (LevelFamily::Si, _) => Chain::Z,
        (LevelFamily::R, 0) | (LevelFamily::L, 1) => Chain::X,
        _ => Chain::Y,
    };
    let (ne, nf) = match chain {
        Chain::X => (m / 2, (m - 1) / 2),
        Chain::Y => ((m - 1) / 2, m / 2),
        Chain::Z => (m - 1, m - 1),
    };
    let mut names = vec!["x".to_string()];
    names.extend((1..=ne).map(|i| format!("e{i}")));
    names.extend((1..=nf).map(|i| format!("f{i}")));
    let e = |i: usize| i;
    let f = |i: usize| ne + i;
    let mut order = Vec::new();
    match chain {
        Chain::X | Chain::Y => {
            let mut seq = vec![0];
            let (mut ei, mut fi) = (1, 1);
            let mut take_e = chain == Chain::X;
            while ei <= ne || fi <= nf {
                if take_e && ei <= ne {
                    seq.push(e(ei));
                    ei += 1;
                } else if !take_e && fi <= nf {
                    seq.push(f(fi));
                    fi += 1;
                }
                take_e = !take_e;
            }
            order.extend(seq.windows(2).map(|w| (w[0], w[1])));
        }
        Chain::Z => {
            if ne > 0 {
                order.push((0, e(1)));
                order.push((0, f(1)));
            }
            for i in 1..ne {
                for lo in [e(i), f(i)] {
                    order.push((lo, e(i + 1)));
                    order.push((lo, f(i + 1)));
                }
            }
        }
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut d = Draft::new(&refs, &order);
    let r = d.vertex("r");
    let mut cur = r;
    for i in (1..=ne).rev() {
        let v = d.vertex(&format!("v{i}"));
        d.edge(cur, e(i), v);
        d.edge(v, e(i), v);
        cur = v;
    }
    let v = cur;
    for i in 1..=nf {
        let t = d.vertex(&format!("t{i}"));
        d.edge(cur, f(i), t);
        d.edge(t, f(i), t);
        cur = t;
    }
    let j = cur;
    let w = d.vertex("w");
    d.edge(v, 0, w);
    cur = w;
    for i in 1..=nf {
        let b = d.vertex(&format!("b{i}"));
        d.edge(cur, f(i), b);
        d.edge(b, f(i), b);
        cur = b;
    }
    let k = cur;
    d.vertices[j] = "j".into();
    d.vertices[k] = "k".into();
    let kind = if family == LevelFamily::Si { Kind::Nleq } else { Kind::Neq };
    Ok(d.finish(kind, (j, k), Direction::Forward, false, Some(r)))
}

/// The two final-edge variants of the infinite-behaviour patterns.
pub fn make_inf_pattern(which: InfFamily) -> Vec<Pattern> {
    (0..2).map(|variant| inf_variant(which, variant)).collect()
}

fn inf_variant(which: InfFamily, variant: usize) -> Pattern {
    match which {
        InfFamily::Si1 => {
            let mut d = Draft::new(&["x", "y"], &[]);
            let j = d.vertex("j");
            let k = d.vertex("k");
            let mid = d.vertex("mid");
            d.final_edge(j, 0, j);
            if variant == 0 {
                d.final_path_edge(k, 1, mid);
                d.path_edge(mid, 0, k);
            } else {
                d.path_edge(k, 1, mid);
                d.final_path_edge(mid, 0, k);
            }
            d.finish(Kind::Nleq, (j, k), Direction::Reverse, true, None)
        }
        InfFamily::Da => {
            let mut d = Draft::new(&["z", "A_z"], &[(1, 0)]);
            let j = d.vertex("j");
            let k = d.vertex("k");
            let mid = d.vertex("mid");
            d.final_edge(j, 0, j);
            d.edge(k, 0, k);
            if variant == 0 {
                d.final_path_edge(k, 0, mid);
                d.path_edge(mid, 1, k);
            } else {
                d.path_edge(k, 0, mid);
                d.final_path_edge(mid, 1, k);
            }
            d.finish(Kind::Neq, (j, k), Direction::Reverse, true, None)
        }
    }
}

/// Cantor (`j`, `k` with `z` loops) and alphabetic topology patterns.
pub fn make_topology_pattern(which: TopologyFamily, mode: TopologyMode) -> Pattern {
    let mut d = match which {
        TopologyFamily::Cantor => Draft::new(&["z"], &[]),
        TopologyFamily::Alph => Draft::new(&["z", "A_z", "B_z"], &[(1, 0), (2, 0)]),
    };
    let j = d.vertex("j");
    let k = d.vertex("k");
    d.final_edge(j, 0, j);
    d.edge(k, 0, k);
    if which == TopologyFamily::Alph {
        let mid = d.vertex("mid");
        let l = d.vertex("l");
        d.path_edge(k, 0, mid);
        d.path_edge(mid, 1, l);
        d.final_edge(l, 2, l);
    }
    let (kind, compare) = match mode {
        TopologyMode::Open => (Kind::Nleq, (j, k)),
        TopologyMode::Closed => (Kind::Nleq, (k, j)),
        TopologyMode::Clopen => (Kind::Neq, (j, k)),
    };
    d.finish(kind, compare, Direction::Reverse, true, None)
}

/// Appends a looped root (`k`), looped successors of both endpoints (`d`),
/// or both (`kd`). New variables lie strictly above all old ones and are
/// incomparable with each other.
pub fn lift(p: &Pattern, mode: LiftMode) -> Result<Pattern> {
    let old_vars = p.vars().len();
    let below_old: u64 = if old_vars == 64 { u64::MAX } else { (1u64 << old_vars) - 1 };
    let mut parts = p.clone().into_parts();
    let mut names = parts.vars.names().to_vec();
    let mut pairs = parts.vars.strict_pairs();
    let mut add_var = |names: &mut Vec<String>, base: &str| {
        let v = names.len();
        names.push(fresh_name(names, base));
        pairs.extend((0..old_vars).filter(|x| below_old >> x & 1 == 1).map(|x| (x, v)));
        v
    };
    let lift_root = matches!(mode, LiftMode::K | LiftMode::Kd);
    let lift_ends = matches!(mode, LiftMode::D | LiftMode::Kd);
    let new_root = if lift_root {
        let r = p
            .root()
            .ok_or_else(|| Error::Invalid("lifting at the root needs a rooted pattern".into()))?;
        let e = add_var(&mut names, "e");
        let r2 = push_vertex(&mut parts.vertices, &format!("{}'", p.vertex_name(r)));
        parts.edges.push(Edge { src: r2, var: e, dst: r });
        parts.edges.push(Edge { src: r, var: e, dst: r });
        Some(r2)
    } else {
        p.declared_root()
    };
    if lift_ends {
        let (j, k) = p.compare();
        if j == k {
            return Err(Error::Invalid("lifting the ends needs distinct compared vertices".into()));
        }
        let f = add_var(&mut names, "f");
        let j2 = push_vertex(&mut parts.vertices, &format!("{}'", p.vertex_name(j)));
        let k2 = push_vertex(&mut parts.vertices, &format!("{}'", p.vertex_name(k)));
        for (a, b) in [(j, j2), (k, k2)] {
            parts.edges.push(Edge { src: a, var: f, dst: b });
            parts.edges.push(Edge { src: b, var: f, dst: b });
        }
        parts.compare = (j2, k2);
    }
    parts.root = new_root;
    parts.vars = VarPoset::new(names, &pairs)?;
    Pattern::new(parts)
}

fn push_vertex(vertices: &mut Vec<String>, base: &str) -> usize {
    let name = fresh_name(vertices, base);
    vertices.push(name);
    vertices.len() - 1
}

/// Reinterprets a forward pattern over reverse automata.
pub fn reverse_pattern(p: &Pattern) -> Result<Pattern> {
    if p.direction() != Direction::Forward {
        return Err(Error::DirectionMismatch("pattern is already reverse".into()));
    }
    Ok(p.flipped())
}

/// Resolves `builtin:<family>[:<param>][:rev][:lift-k|d|kd]…`, applying the
/// suffixes left to right.
pub fn builtin(name: &str) -> Result<Pattern> {
    let unknown = || Error::UnknownPattern(name.to_string());
    let body = name.strip_prefix("builtin:").ok_or_else(unknown)?;
    let mut tokens = body.split(':');
    let family = tokens.next().ok_or_else(unknown)?;
    let mut param = || tokens.next().ok_or_else(unknown);
    let mut p = match family {
        "da" => make_da_pattern(false),
        "da-rooted" => make_da_pattern(true),
        "r" | "l" | "si" => {
            let m: usize = param()?.parse().map_err(|_| unknown())?;
            let fam = match family {
                "r" => LevelFamily::R,
                "l" => LevelFamily::L,
                _ => LevelFamily::Si,
            };
            make_level_pattern(fam, m)?
        }
        "si1-inf" | "da-inf" => {
            let variant = match param()? {
                "1" => 0,
                "2" => 1,
                _ => return Err(unknown()),
            };
            let fam = if family == "da-inf" { InfFamily::Da } else { InfFamily::Si1 };
            inf_variant(fam, variant)
        }
        "cantor" | "alph" => {
            let mode = match param()? {
                "open" => TopologyMode::Open,
                "closed" => TopologyMode::Closed,
                "clopen" => TopologyMode::Clopen,
                _ => return Err(unknown()),
            };
            let fam = if family == "cantor" { TopologyFamily::Cantor } else { TopologyFamily::Alph };
            make_topology_pattern(fam, mode)
        }
        _ => return Err(unknown()),
    };
    for suffix in tokens {
        p = match suffix {
            "rev" => reverse_pattern(&p)?,
            "lift-k" => lift(&p, LiftMode::K)?,
            "lift-d" => lift(&p, LiftMode::D)?,
            "lift-kd" => lift(&p, LiftMode::Kd)?,
            _ => return Err(unknown()),
        };
    }
    Ok(p)
}

/// The disjunctive variants a name denotes. `builtin:si1-inf` and
/// `builtin:da-inf` without a variant index (suffixes allowed) expand to
/// both variants; every other name denotes itself.
pub fn builtin_variants(name: &str) -> Result<Vec<(String, Pattern)>> {
    for family in ["si1-inf", "da-inf"] {
        let head = format!("builtin:{family}");
        if let Some(rest) = name.strip_prefix(&head) {
            if rest.is_empty() || (rest.starts_with(':') && !rest.starts_with(":1") && !rest.starts_with(":2")) {
                return (1..=2)
                    .map(|v| {
                        let full = format!("{head}:{v}{rest}");
                        builtin(&full).map(|p| (full, p))
                    })
                    .collect();
            }
        }
    }
    Ok(vec![(name.to_string(), builtin(name)?)])
}

/// One name per built-in base pattern, with level families at level 1–3.
pub fn builtin_names() -> Vec<String> {
    let mut out: Vec<String> = vec!["builtin:da".into(), "builtin:da-rooted".into()];
    for m in 2..=3 {
        out.push(format!("builtin:r:{m}"));
        out.push(format!("builtin:l:{m}"));
    }
    out.extend((1..=3).map(|m| format!("builtin:si:{m}")));
    for f in ["si1-inf", "da-inf"] {
        out.extend((1..=2).map(|v| format!("builtin:{f}:{v}")));
    }
    for f in ["cantor", "alph"] {
        out.extend(["open", "closed", "clopen"].iter().map(|m| format!("builtin:{f}:{m}")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::wellformedness;

    fn edge_names(p: &Pattern) -> Vec<(String, String, String)> {
        let mut v: Vec<_> = p
            .edges()
            .iter()
            .map(|e| {
                (
                    p.vertex_name(e.src).to_string(),
                    p.vars().name(e.var).to_string(),
                    p.vertex_name(e.dst).to_string(),
                )
            })
            .collect();
        v.sort();
        v
    }

    fn triples(list: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
        let mut v: Vec<_> =
            list.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
        v.sort();
        v
    }

    #[test]
    fn inf_families_expand_to_both_variants() {
        let v = builtin_variants("builtin:si1-inf").unwrap();
        assert_eq!(v.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(), ["builtin:si1-inf:1", "builtin:si1-inf:2"]);
        assert!(builtin_variants("builtin:da-inf:bogus").is_err());
        assert_eq!(builtin_variants("builtin:da-inf:2").unwrap().len(), 1);
        assert_eq!(builtin_variants("builtin:si:2").unwrap().len(), 1);
    }

    #[test]
    fn da_patterns_have_the_drawn_shape() {
        let p = make_da_pattern(false);
        assert_eq!(edge_names(&p), triples(&[("j", "y", "j"), ("j", "A_y", "k"), ("k", "y", "k")]));
        assert!(p.vars().leq(1, 0) && p.kind() == Kind::Neq);
        let q = make_da_pattern(true);
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.edges().len(), 4);
        assert_eq!(q.root(), Some(0));
    }

    #[test]
    fn level_two_patterns_collapse() {
        let r2 = make_level_pattern(LevelFamily::R, 2).unwrap();
        assert_eq!(edge_names(&r2), triples(&[("r", "e1", "j"), ("j", "e1", "j"), ("j", "x", "k")]));
        assert!(r2.vars().leq(0, 1));
        let l2 = make_level_pattern(LevelFamily::L, 2).unwrap();
        assert_eq!(
            edge_names(&l2),
            triples(&[("r", "f1", "j"), ("j", "f1", "j"), ("r", "x", "w"), ("w", "f1", "k"), ("k", "f1", "k")])
        );
    }

    #[test]
    fn si_levels_match_the_z_chain() {
        let s1 = make_level_pattern(LevelFamily::Si, 1).unwrap();
        assert_eq!(s1.num_vertices(), 2);
        assert_eq!(edge_names(&s1), triples(&[("j", "x", "k")]));
        assert_eq!(s1.kind(), Kind::Nleq);
        assert_eq!(s1.root(), Some(s1.compare().0));
        let s2 = make_level_pattern(LevelFamily::Si, 2).unwrap();
        assert_eq!(s2.num_vertices(), 5);
        let v = s2.vars();
        let (x, e1, f1) = (v.index("x").unwrap(), v.index("e1").unwrap(), v.index("f1").unwrap());
        assert!(v.leq(x, e1) && v.leq(x, f1) && !v.leq(e1, f1) && !v.leq(f1, e1));
        let s3 = make_level_pattern(LevelFamily::Si, 3).unwrap();
        let e2 = s3.vars().index("e2").unwrap();
        let f1 = s3.vars().index("f1").unwrap();
        assert!(s3.vars().leq(f1, e2));
    }

    #[test]
    fn level_range_is_checked() {
        assert!(make_level_pattern(LevelFamily::R, 1).is_err());
        assert!(make_level_pattern(LevelFamily::L, 0).is_err());
        assert!(make_level_pattern(LevelFamily::Si, 0).is_err());
    }

    #[test]
    fn r_and_l_alternate_their_chains() {
        // the X chain puts an e directly above x, the Y chain an f
        for m in 2..=6 {
            let r = make_level_pattern(LevelFamily::R, m).unwrap();
            let l = make_level_pattern(LevelFamily::L, m).unwrap();
            let above_x = |p: &Pattern| {
                let v = p.vars();
                let n = v.len();
                let covers: Vec<&str> = (1..n)
                    .filter(|&y| !(1..n).any(|z| z != y && v.leq(z, y)))
                    .map(|y| v.name(y))
                    .collect();
                covers.concat()
            };
            let (ra, la) = (above_x(&r), above_x(&l));
            assert_ne!(ra, la, "m = {m}");
            assert_eq!(ra, if m % 2 == 0 { "e1" } else { "f1" });
        }
    }

    #[test]
    fn builtins_are_simple_balanced_and_stable() {
        let mut pats = vec![make_da_pattern(false), make_da_pattern(true)];
        for m in 1..=5 {
            pats.push(make_level_pattern(LevelFamily::Si, m).unwrap());
            if m >= 2 {
                pats.push(make_level_pattern(LevelFamily::R, m).unwrap());
                pats.push(make_level_pattern(LevelFamily::L, m).unwrap());
            }
        }
        for p in &pats {
            let w = wellformedness(p);
            assert!(w.simple && w.balanced && w.stable_superwords && w.rooted, "{w:?}");
            if p.num_vertices() > 2 || p.kind() == Kind::Nleq {
                assert!(w.one_alphabeted, "{w:?}");
            }
            // a root lift over a looped root gives that root two entering
            // partners, so it needs a loop-free root
            let root_loop = p.edges().iter().any(|e| e.is_loop() && Some(e.src) == p.root());
            for mode in [LiftMode::K, LiftMode::D, LiftMode::Kd] {
                if root_loop && mode != LiftMode::D {
                    continue;
                }
                let w = wellformedness(&lift(p, mode).unwrap());
                assert!(w.simple && w.balanced && w.stable_superwords, "{mode:?} {w:?}");
            }
        }
    }

    #[test]
    fn kd_lift_of_rooted_da_has_six_vertices() {
        let p = lift(&make_da_pattern(true), LiftMode::Kd).unwrap();
        assert_eq!(p.num_vertices(), 6);
        assert_eq!(p.edges().len(), 10);
        assert_eq!(p.vertex_name(p.compare().0), "j'");
        let v = p.vars();
        let (e, f) = (v.index("e").unwrap(), v.index("f").unwrap());
        assert!(!v.leq(e, f) && !v.leq(f, e));
        assert!(v.leq(v.index("y").unwrap(), e) && v.leq(v.index("A_y").unwrap(), f));
        assert_eq!(p.vertex_name(p.root().unwrap()), "r'");
    }

    #[test]
    fn k_lift_of_single_vertex() {
        let base = Pattern::new(PatternParts {
            vars: VarPoset::from_names(&[], &[]).unwrap(),
            vertices: vec!["j".into()],
            edges: vec![],
            kind: Kind::Neq,
            compare: (0, 0),
            direction: Direction::Forward,
            final_edges: vec![],
            nonempty: false,
            root: None,
        })
        .unwrap();
        let p = lift(&base, LiftMode::K).unwrap();
        assert_eq!((p.num_vertices(), p.edges().len()), (2, 2));
    }

    #[test]
    fn root_then_ends_matches_kd_up_to_the_order_of_new_variables() {
        let base = make_da_pattern(true);
        let two_step = lift(&lift(&base, LiftMode::K).unwrap(), LiftMode::D).unwrap();
        let kd = lift(&base, LiftMode::Kd).unwrap();
        assert_eq!(edge_names(&two_step), edge_names(&kd));
        // the second step puts f above e as well
        let v = two_step.vars();
        assert!(v.leq(v.index("e").unwrap(), v.index("f").unwrap()));
    }

    #[test]
    fn unrooted_lift_is_rejected() {
        let cantor = make_topology_pattern(TopologyFamily::Cantor, TopologyMode::Open);
        assert!(lift(&cantor, LiftMode::K).is_err());
    }

    #[test]
    fn reversal_flips_only_the_direction() {
        let p = make_level_pattern(LevelFamily::Si, 1).unwrap();
        let r = reverse_pattern(&p).unwrap();
        assert_eq!(r.direction(), Direction::Reverse);
        assert_eq!(r.edges(), p.edges());
        assert_eq!(r.flipped(), p);
        assert!(reverse_pattern(&r).is_err());
        assert_eq!(wellformedness(&r), wellformedness(&p));
    }

    #[test]
    fn inf_patterns_have_two_variants() {
        let si = make_inf_pattern(InfFamily::Si1);
        assert_eq!(si.len(), 2);
        for p in &si {
            assert_eq!(p.final_edge_indices().len(), 2);
            assert!(p.requires_nonempty() && p.direction() == Direction::Reverse);
            assert!(wellformedness(p).stable_superwords);
        }
        let da = make_inf_pattern(InfFamily::Da);
        for p in &da {
            assert_eq!(p.edges().len(), 4);
            assert!(p.vars().leq(1, 0));
            assert!(wellformedness(p).stable_superwords);
        }
        // drawn k –y→ mid is stored as y∘mid = k
        assert_eq!(
            edge_names(&si[0]),
            triples(&[("j", "x", "j"), ("mid", "y", "k"), ("k", "x", "mid")])
        );
    }

    #[test]
    fn topology_patterns_have_the_drawn_sizes() {
        let c = make_topology_pattern(TopologyFamily::Cantor, TopologyMode::Open);
        assert_eq!((c.num_vertices(), c.edges().len(), c.final_edge_indices().len()), (2, 2, 1));
        let a = make_topology_pattern(TopologyFamily::Alph, TopologyMode::Open);
        assert_eq!((a.num_vertices(), a.edges().len(), a.final_edge_indices().len()), (4, 5, 2));
        assert_eq!(make_topology_pattern(TopologyFamily::Alph, TopologyMode::Clopen).kind(), Kind::Neq);
        let closed = make_topology_pattern(TopologyFamily::Cantor, TopologyMode::Closed);
        assert_eq!(closed.compare(), (1, 0));
        assert!(wellformedness(&a).stable_superwords);
    }

    #[test]
    fn builtin_names_resolve() {
        for n in builtin_names() {
            builtin(&n).unwrap();
        }
        let p = builtin("builtin:r:2:rev").unwrap();
        assert_eq!(p.direction(), Direction::Reverse);
        let q = builtin("builtin:da-rooted:lift-kd").unwrap();
        assert_eq!(q, lift(&make_da_pattern(true), LiftMode::Kd).unwrap());
        for bad in ["da", "builtin:r", "builtin:r:1", "builtin:cantor:half", "builtin:da:rev:rev", "builtin:x"] {
            assert!(builtin(bad).is_err(), "{bad}");
        }
    }
}
