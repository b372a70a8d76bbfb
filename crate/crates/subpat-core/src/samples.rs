//! Small automata used in documentation, fixtures and tests.

use crate::automata::{Alphabet, Buchi, Dfa, ReverseDfa};
use crate::patterns::{Direction, Edge, Kind, Pattern, PatternParts, VarPoset};

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn triples(v: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    v.iter().map(|(p, a, q)| (p.to_string(), a.to_string(), q.to_string())).collect()
}

/// Words whose second letter is `a`, with separate states after `a` and `b`.
pub fn dfa_a() -> Dfa {
    let t = triples(&[
        ("q0", "a", "q1"),
        ("q0", "b", "q3"),
        ("q1", "a", "q2"),
        ("q1", "b", "q4"),
        ("q3", "a", "q2"),
        ("q3", "b", "q4"),
        ("q2", "a", "q2"),
        ("q2", "b", "q2"),
        ("q4", "a", "q4"),
        ("q4", "b", "q4"),
    ]);
    Dfa::from_names(&owned(&["q0", "q1", "q2", "q3", "q4"]), Alphabet::latin(2), &t, "q0", &owned(&["q2"]), false)
        .expect("well-formed sample")
}

/// The minimal automaton of the language of [`dfa_a`].
pub fn dfa_a_prime() -> Dfa {
    let t = triples(&[
        ("q0", "a", "q1"),
        ("q0", "b", "q1"),
        ("q1", "a", "q2"),
        ("q1", "b", "q4"),
        ("q2", "a", "q2"),
        ("q2", "b", "q2"),
        ("q4", "a", "q4"),
        ("q4", "b", "q4"),
    ]);
    Dfa::from_names(&owned(&["q0", "q1", "q2", "q4"]), Alphabet::latin(2), &t, "q0", &owned(&["q2"]), false)
        .expect("well-formed sample")
}

/// Words containing an `a`.
pub fn dfa_contains_a() -> Dfa {
    let t = triples(&[("q0", "a", "q1"), ("q0", "b", "q0"), ("q1", "a", "q1"), ("q1", "b", "q1")]);
    Dfa::from_names(&owned(&["q0", "q1"]), Alphabet::latin(2), &t, "q0", &owned(&["q1"]), false)
        .expect("well-formed sample")
}

/// Reverse DFA for words ending in `a`: initial `p`, final `t`, rejecting `m`.
pub fn rev_ends_with_a() -> ReverseDfa {
    let e = triples(&[
        ("p", "a", "t"),
        ("m", "b", "t"),
        ("p", "a", "p"),
        ("p", "b", "p"),
        ("m", "a", "m"),
        ("m", "b", "m"),
    ]);
    ReverseDfa::from_names(&owned(&["p", "t", "m"]), Alphabet::latin(2), &e, &owned(&["p"]), "t", false)
        .expect("well-formed sample")
}

/// Carton-Michel automaton for infinite words containing an `a`, with a
/// non-trim state `k5` that is final and initial.
pub fn cm_figure() -> Buchi {
    let e = triples(&[
        ("k1", "a", "k1"),
        ("k2", "b", "k2"),
        ("k1", "a", "k2"),
        ("k2", "b", "k1"),
        ("k3", "a", "k3"),
        ("k3", "b", "k3"),
        ("k3", "a", "k4"),
        ("k4", "b", "k4"),
        ("k4", "a", "k5"),
        ("k4", "b", "k5"),
    ]);
    Buchi::from_names(
        &owned(&["k1", "k2", "k3", "k4", "k5"]),
        Alphabet::latin(2),
        &e,
        &owned(&["k1", "k2", "k3", "k5"]),
        &owned(&["k1", "k4", "k5"]),
    )
    .expect("well-formed sample")
}

/// Carton-Michel automaton for infinite words with finitely many `a`.
///
/// `ia`/`ib` track the next letter and are final on `a`, so their runs are
/// final exactly for words with infinitely many `a`. `n` reads up to the
/// last `a`, which leads into the final `b`-loop `f`.
pub fn cm_finitely_many_a() -> Buchi {
    let e = triples(&[
        ("ia", "a", "ia"),
        ("ia", "a", "ib"),
        ("ib", "b", "ia"),
        ("ib", "b", "ib"),
        ("n", "a", "n"),
        ("n", "b", "n"),
        ("n", "a", "f"),
        ("f", "b", "f"),
    ]);
    Buchi::from_names(
        &owned(&["ia", "ib", "n", "f"]),
        Alphabet::latin(2),
        &e,
        &owned(&["n", "f"]),
        &owned(&["ia", "f"]),
    )
    .expect("well-formed sample")
}

/// Words ending in `a`.
pub fn dfa_ends_with_a() -> Dfa {
    let t = triples(&[("s", "a", "t"), ("s", "b", "s"), ("t", "a", "t"), ("t", "b", "s")]);
    Dfa::from_names(&owned(&["s", "t"]), Alphabet::latin(2), &t, "s", &owned(&["t"]), false)
        .expect("well-formed sample")
}

/// Two-branch pattern with no order: `r` reaches `m` on both `x` and `y`,
/// then `m –y→ j` and `m –x→ k`, comparing `j ≠ k`. It is present in
/// [`dfa_a_prime`] but not in [`dfa_a`], though both accept one language.
pub fn diamond_pattern() -> Pattern {
    let e = |src, var, dst| Edge { src, var, dst };
    Pattern::new(PatternParts {
        vars: VarPoset::from_names(&["x", "y"], &[]).expect("no order"),
        vertices: owned(&["r", "m", "j", "k"]),
        edges: vec![e(0, 0, 1), e(0, 1, 1), e(1, 1, 2), e(1, 0, 3)],
        kind: Kind::Neq,
        compare: (2, 3),
        direction: Direction::Forward,
        final_edges: vec![],
        nonempty: false,
        root: None,
    })
    .expect("well-formed sample")
}

/// Words starting with `a`.
pub fn dfa_starts_with_a() -> Dfa {
    let t = triples(&[("s", "a", "y"), ("s", "b", "n"), ("y", "a", "y"), ("y", "b", "y"), ("n", "a", "n"), ("n", "b", "n")]);
    Dfa::from_names(&owned(&["s", "y", "n"]), Alphabet::latin(2), &t, "s", &owned(&["y"]), false)
        .expect("well-formed sample")
}

/// `(ab)*`, whose syntactic monoid is `B₂` with a unit.
pub fn dfa_ab_star() -> Dfa {
    let t = triples(&[("e", "a", "o"), ("e", "b", "z"), ("o", "a", "z"), ("o", "b", "e"), ("z", "a", "z"), ("z", "b", "z")]);
    Dfa::from_names(&owned(&["e", "o", "z"]), Alphabet::latin(2), &t, "e", &owned(&["e"]), false)
        .expect("well-formed sample")
}

/// All words over `{a, b}`.
pub fn dfa_universal() -> Dfa {
    let t = triples(&[("q", "a", "q"), ("q", "b", "q")]);
    Dfa::from_names(&owned(&["q"]), Alphabet::latin(2), &t, "q", &owned(&["q"]), false).expect("well-formed sample")
}

/// `a^ω` over the unary alphabet: one initial and final `a`-loop.
pub fn cm_a_omega() -> Buchi {
    let e = triples(&[("q", "a", "q")]);
    Buchi::from_names(&owned(&["q"]), Alphabet::latin(1), &e, &owned(&["q"]), &owned(&["q"])).expect("well-formed sample")
}
