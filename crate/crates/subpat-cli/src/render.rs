//! Text renderings of service responses.

use std::fmt::Write;
use subpat_api::*;
use subpat_core::classify::LevelReport;
use subpat_core::io::render_automaton_text;
use subpat_core::patterns::{DirectionJson, KindJson};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn automaton_text(a: &AutomatonJson) -> String {
    match a.clone().build(false) {
        Ok(built) => render_automaton_text(&built),
        Err(e) => format!("(unrenderable automaton: {e})\n"),
    }
}

pub fn validate(r: &ValidateResponse) -> String {
    let kind = r.kind.name();
    let mut out = format!("{kind}: {} states over {} letters\n", r.states, r.alphabet);
    if let Some(n) = r.accessible {
        let _ = writeln!(out, "  accessible states: {n}");
    }
    if let Some(n) = r.minimal_states {
        let _ = writeln!(out, "  minimal automaton: {n} states");
    }
    if let Some(cm) = &r.cm {
        let _ = writeln!(out, "  complete: {}  unambiguous: {}", yes(cm.complete), yes(cm.unambiguous));
        if let Some(l) = &cm.uncovered {
            let _ = writeln!(out, "  no final run: {}({})^ω", l.prefix, l.period);
        }
        if let Some(l) = &cm.ambiguous {
            let _ = writeln!(out, "  two final runs: {}({})^ω", l.prefix, l.period);
        }
        let _ = writeln!(out, "  trim: {{{}}}", cm.trim.join(", "));
    }
    let _ = writeln!(out, "  empty language: {}", yes(r.empty_language));
    let _ = writeln!(out, "{}", if r.valid { "valid" } else { "not Carton-Michel" });
    out
}

fn report(out: &mut String, r: &LevelReport) {
    let _ = writeln!(out, "engine {}:", r.engine);
    for (level, verdict) in r.verdicts() {
        let name = level.to_string();
        let evidence = r.evidence.get(&name).map(String::as_str).unwrap_or("");
        let _ = writeln!(out, "  {name:<9} {:<5}  {evidence}", verdict);
    }
}

pub fn classify(r: &ClassifyResponse) -> String {
    let words = match r.words {
        Words::Finite => "finite",
        Words::Infinite => "infinite",
    };
    let mut out = format!("{words} words\n");
    for rep in &r.reports {
        report(&mut out, rep);
    }
    if !r.disagreements.is_empty() {
        let _ = writeln!(out, "engines disagree on: {}", r.disagreements.join(", "));
    }
    out
}

pub fn check_pattern(r: &CheckPatternResponse) -> String {
    if !r.present {
        return format!("absent: {}\n", r.pattern);
    }
    let mut out = format!("present: {}\n", r.pattern);
    if let Some(w) = &r.witness_text {
        let _ = writeln!(out, "  {w}");
    }
    let _ = writeln!(out, "  witness replays: {}", yes(r.verified));
    out
}

pub fn pattern_gen(r: &PatternGenResponse) -> String {
    let mut out = String::new();
    for g in &r.patterns {
        let p = &g.pattern;
        let _ = writeln!(out, "{}", g.name);
        let _ = writeln!(out, "  variables: {}", p.variables.join(" "));
        if !p.order.is_empty() {
            let pairs: Vec<String> = p.order.iter().map(|[x, y]| format!("{x}<{y}")).collect();
            let _ = writeln!(out, "  order: {}", pairs.join(" "));
        }
        for (i, [s, x, t]) in p.edges.iter().enumerate() {
            let fin = if p.final_edges.contains(&i) { "  (final)" } else { "" };
            let _ = writeln!(out, "  {s} –{x}→ {t}{fin}");
        }
        let rel = match p.kind {
            KindJson::Neq => "≠",
            KindJson::Nleq => "≰",
        };
        let dir = match p.direction {
            DirectionJson::Forward => "forward",
            DirectionJson::Reverse => "reverse",
        };
        let _ = writeln!(out, "  compare {} {rel} {}, {dir}", p.compare[0], p.compare[1]);
        let w = &g.wellformedness;
        let _ = writeln!(
            out,
            "  simple {}  balanced {}  one-alphabeted {}  stable superwords {}",
            yes(w.simple),
            yes(w.balanced),
            yes(w.one_alphabeted),
            yes(w.stable_superwords)
        );
    }
    out
}

pub fn monoid(r: &MonoidResponse) -> String {
    let mut out = String::new();
    if let Some(n) = r.profiles {
        let _ = writeln!(out, "profile monoid: {n} elements");
    }
    for m in &r.monoids {
        let _ = writeln!(out, "[{}]", m.name);
        out += &m.monoid.render_text();
    }
    if let Some(t) = &r.topology {
        let _ = writeln!(
            out,
            "cantor open {}  cantor closed {}  alph open {}  alph closed {}",
            yes(t.cantor_open),
            yes(t.cantor_closed),
            yes(t.alph_open),
            yes(t.alph_closed)
        );
    }
    out
}

pub fn corpus(r: &CorpusResponse) -> String {
    let mut out = format!("{} automata\n", r.automata.len());
    if let Some(e) = r.expected {
        let _ = writeln!(out, "expected by the count formula: {e}");
    }
    if let (Some(c), Some(ratio)) = (r.candidates, r.acceptance_ratio) {
        let _ = writeln!(out, "candidates: {c}  acceptance ratio: {ratio:.4}");
    }
    for (i, a) in r.automata.iter().enumerate() {
        let _ = write!(out, "#{i} {}", automaton_text(a));
    }
    out
}

pub fn crosscheck(r: &CrosscheckResponse) -> String {
    let mut out = format!(
        "{} automata, {} checks, {} disagreements, {} errors, {} witnesses replayed\n",
        r.automata,
        r.checks,
        r.disagreements.len(),
        r.errors.len(),
        r.witnesses_verified
    );
    for d in &r.disagreements {
        let _ = writeln!(
            out,
            "  #{} {}: pattern {} algebra {}",
            d.index, d.disagreement.check, d.disagreement.pattern, d.disagreement.algebra
        );
    }
    for e in &r.errors {
        let _ = writeln!(out, "  #{} error: {}", e.index, e.error.error);
    }
    if let Some(t) = &r.self_test {
        let _ = writeln!(out, "self-test: fault {}", if t.detected { "detected" } else { "NOT detected" });
    }
    out
}

pub fn hardness(r: &HardnessResponse) -> String {
    let mut out = format!(
        "target reachable: {}  empty language: {}\n",
        yes(r.reachable),
        yes(r.empty_language)
    );
    if let Some(cm) = r.carton_michel {
        let _ = writeln!(out, "Carton-Michel: {}", yes(cm));
    }
    out + &automaton_text(&r.automaton)
}
