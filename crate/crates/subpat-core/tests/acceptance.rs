//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the report is never captured.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::{Duration, Instant};
use subpat_core::algebra::{fin_inf_syntactic, syntactic_monoid_finite, OrderedMonoid, Variety};
use subpat_core::automata::{AnyAutomaton, Buchi, Dfa, PROFILE_CAP};
use subpat_core::classify::{
    cached_pattern, classify_infinite, crosscheck_finite, crosscheck_infinite, ClassifyConfig, CrosscheckReport, Engine,
    Level, PatternOracle,
};
use subpat_core::corpus::{exhaustive_count, exhaustive_dfas, random_cm, random_dfas};
use subpat_core::hardness::{hardness_instance, Digraph};
use subpat_core::matcher::{present, verify_witness, MatchConfig, Prepared, Strategy};
use subpat_core::patterns::wellformedness;
use subpat_core::{samples, Result};

/// Forward built-ins meaningful over finite words.
const FINITE: [&str; 10] = [
    "builtin:da",
    "builtin:da-rooted",
    "builtin:da-rooted:lift-kd",
    "builtin:r:2",
    "builtin:r:3",
    "builtin:l:2",
    "builtin:l:3",
    "builtin:si:1",
    "builtin:si:2",
    "builtin:si:3",
];

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn line(&self, n: &str) -> String {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!("criterion {n}: {verdict}");
        if !self.notes.is_empty() {
            s += &format!(" ({})", self.notes.join("; "));
        }
        for f in self.failures.iter().take(5) {
            s += &format!("\n    {f}");
        }
        if self.failures.len() > 5 {
            s += &format!("\n    ... {} more", self.failures.len() - 5);
        }
        s
    }
}

/// Witness bookkeeping across every run: the oracles replay each witness
/// they return and fail loudly otherwise.
#[derive(Default)]
struct Witnesses {
    verified: u64,
    failures: Vec<String>,
}

impl Witnesses {
    fn absorb(&mut self, oracle: &PatternOracle) {
        self.verified += oracle.verified();
    }

    fn error(&mut self, context: String, e: subpat_core::Error) {
        self.failures.push(format!("{context}: {e}"));
    }
}

struct Crosscheck {
    automata: usize,
    checks: usize,
    out: Outcome,
}

impl Crosscheck {
    fn new() -> Self {
        Crosscheck { automata: 0, checks: 0, out: Outcome::default() }
    }

    fn record(&mut self, label: &str, r: Result<CrosscheckReport>, w: &mut Witnesses) {
        self.automata += 1;
        match r {
            Ok(r) => {
                self.checks += r.checks;
                w.verified += r.witnesses_verified;
                for d in r.disagreements {
                    self.out.failures.push(format!("{label}: {} pattern={} algebra={}", d.check, d.pattern, d.algebra));
                }
            }
            Err(e) => {
                self.out.failures.push(format!("{label}: {e}"));
                w.error(label.to_string(), e);
            }
        }
    }
}

/// Structural properties checked over both corpora, one outcome each.
#[derive(Default)]
struct Properties {
    lift: Outcome,
    implied: Outcome,
    duality: Outcome,
    redundancy: Outcome,
    minimization: Outcome,
    reverse_terms: Outcome,
    counts: [u64; 6],
}

fn identity_varieties() -> [Variety; 4] {
    [Variety::R, Variety::L, Variety::DA, Variety::J1]
}

fn check_reverse_terms(props: &mut Properties, label: &str, m: &OrderedMonoid) {
    let r = m.reverse();
    for v in identity_varieties() {
        for id in v.identities() {
            props.counts[5] += 1;
            let (a, b) = (id.holds_in(m), id.reverse().holds_in(&r));
            props.reverse_terms.expect(a == b, || format!("{label}: {id} gives {a}, reversed {b}"));
        }
    }
}

/// (a), (b), (c), (e) and (f) on one DFA.
fn dfa_properties(d: &Dfa, label: &str, cfg: &ClassifyConfig, props: &mut Properties, w: &mut Witnesses) -> Result<()> {
    let mut fwd = PatternOracle::new(Prepared::dfa(d), cfg.matcher);
    lift_and_implied(&mut fwd, label, "", props)?;

    let rev = d.reverse();
    let mut back = PatternOracle::new(Prepared::reverse(&rev), cfg.matcher);
    for name in FINITE {
        props.counts[2] += 1;
        let (a, b) = (fwd.present(name)?, back.present(&format!("{name}:rev"))?);
        props.duality.expect(a == b, || format!("{label}: {name} forward {a}, reverse {b}"));
    }

    let min = d.minimize();
    let mut small = PatternOracle::new(Prepared::dfa(&min), cfg.matcher);
    for name in FINITE {
        let wf = wellformedness(&*cached_pattern(name)?);
        if wf.simple && wf.balanced {
            props.counts[4] += 1;
            let (a, b) = (fwd.present(name)?, small.present(name)?);
            props.minimization.expect(a == b, || format!("{label}: {name} {a}, minimal {b}"));
        }
    }

    check_reverse_terms(props, label, &syntactic_monoid_finite(d, cfg.monoid_cap)?);
    for o in [&fwd, &back, &small] {
        w.absorb(o);
    }
    Ok(())
}

/// (a) and (b) with every pattern name suffixed by `suffix`.
fn lift_and_implied(o: &mut PatternOracle, label: &str, suffix: &str, props: &mut Properties) -> Result<()> {
    let name = |n: &str| format!("{n}{suffix}");
    props.counts[0] += 1;
    let (da, lifted) = (o.present(&name("builtin:da"))?, o.present(&name("builtin:da-rooted:lift-kd"))?);
    props.lift.expect(da == lifted, || format!("{label}: P_DA {da}, lift(P_DA', kd) {lifted}"));

    if o.present(&name("builtin:da-rooted"))? {
        let mut implied: Vec<String> = (2..=3).flat_map(|m| [format!("builtin:r:{m}"), format!("builtin:l:{m}")]).collect();
        implied.extend((1..=3).map(|m| format!("builtin:si:{m}")));
        for n in implied {
            props.counts[1] += 1;
            let hit = o.present(&name(&n))?;
            props.implied.expect(hit, || format!("{label}: P_DA' present but {} absent", name(&n)));
        }
    }
    Ok(())
}

/// (a), (b), (d) and (f) on one Carton-Michel automaton.
fn cm_properties(b: &Buchi, label: &str, cfg: &ClassifyConfig, props: &mut Properties, w: &mut Witnesses) -> Result<()> {
    let mut o = PatternOracle::new(Prepared::cm(b)?, cfg.matcher);
    lift_and_implied(&mut o, label, ":rev", props)?;

    let any = |o: &mut PatternOracle, family: &str| -> Result<bool> {
        Ok(o.present(&format!("builtin:{family}:1"))? || o.present(&format!("builtin:{family}:2"))?)
    };
    props.counts[3] += 2;
    if !o.present("builtin:si:1:rev")? && any(&mut o, "si1-inf")? {
        let c = o.present("builtin:cantor:open")?;
        props.redundancy.expect(c, || format!("{label}: Si1-inf present, reverse Si1 absent, P_cantor absent"));
    }
    if any(&mut o, "da-inf")? {
        let ok = o.present("builtin:alph:open")? || o.present("builtin:da:rev")?;
        props.redundancy.expect(ok, || format!("{label}: DA-inf present, neither P_alph nor reverse P_DA"));
    }

    let ms = fin_inf_syntactic(b, cfg.monoid_cap)?;
    check_reverse_terms(props, &format!("{label} fin"), &ms.fin);
    check_reverse_terms(props, &format!("{label} inf"), &ms.inf);
    w.absorb(&o);
    Ok(())
}

fn criterion_1(cfg: &ClassifyConfig, props: &mut Properties, w: &mut Witnesses) -> Outcome {
    let start = Instant::now();
    let mut cc = Crosscheck::new();
    for n in [2, 3] {
        let dfas = match exhaustive_dfas(n, 2) {
            Ok(it) => it,
            Err(e) => {
                cc.out.failures.push(format!("corpus {n}: {e}"));
                continue;
            }
        };
        let mut seen = 0u64;
        for (i, d) in dfas.enumerate() {
            seen += 1;
            let label = format!("dfa {n}/{i}");
            cc.record(&label, crosscheck_finite(&d, 3, cfg), w);
            if let Err(e) = dfa_properties(&d, &label, cfg, props, w) {
                w.error(label, e);
            }
        }
        let expected = exhaustive_count(n, 2);
        cc.out.expect(seen == expected, || format!("{n} states: {seen} automata, expected {expected}"));
    }
    let mut out = cc.out;
    out.notes.push(format!("{} automata, {} checks, {:.1?}", cc.automata, cc.checks, start.elapsed()));
    out
}

fn cm_corpus() -> Result<Vec<Buchi>> {
    let mut all = Vec::new();
    for (n, count) in [(2, 5), (3, 50), (4, 500)] {
        all.extend(random_cm(n, 2, count, n as u64)?.automata);
    }
    Ok(all)
}

fn criterion_2(cfg: &ClassifyConfig, props: &mut Properties, w: &mut Witnesses) -> Outcome {
    let start = Instant::now();
    let mut cc = Crosscheck::new();
    let corpus = match cm_corpus() {
        Ok(c) => c,
        Err(e) => {
            cc.out.failures.push(format!("corpus: {e}"));
            return cc.out;
        }
    };
    for (i, b) in corpus.iter().enumerate() {
        let label = format!("cm {}/{i}", b.num_states());
        let valid = b.validate_cm(PROFILE_CAP).map(|r| r.is_cm()).unwrap_or(false);
        cc.out.expect(valid, || format!("{label}: not Carton-Michel"));
        cc.record(&label, crosscheck_infinite(b, 3, cfg), w);
        if let Err(e) = cm_properties(b, &label, cfg, props, w) {
            w.error(label, e);
        }
    }
    cc.out.expect(corpus.len() >= 500, || format!("only {} automata", corpus.len()));
    let mut out = cc.out;
    out.notes.push(format!("{} automata, {} checks, {:.1?}", cc.automata, cc.checks, start.elapsed()));
    out
}

fn presence(aut: subpat_core::matcher::Automaton, name: &str, w: &mut Witnesses) -> Result<bool> {
    let p = cached_pattern(name)?;
    let prep = Prepared::new(aut)?;
    let out = present(&prep, &p, &MatchConfig::default())?;
    if let Some(wit) = &out.witness {
        match verify_witness(aut, &p, wit) {
            Ok(()) => w.verified += 1,
            Err(e) => w.failures.push(format!("{name}: {e}")),
        }
    }
    Ok(out.present())
}

fn criterion_3(cfg: &ClassifyConfig, w: &mut Witnesses) -> Result<Outcome> {
    use subpat_core::matcher::Automaton;
    let mut out = Outcome::default();
    let diamond = samples::diamond_pattern();
    let diamond_in = |d: &Dfa, w: &mut Witnesses| -> Result<bool> {
        let a = Automaton::Dfa(d);
        let res = present(&Prepared::new(a)?, &diamond, &MatchConfig::default())?;
        if let Some(wit) = &res.witness {
            match verify_witness(a, &diamond, wit) {
                Ok(()) => w.verified += 1,
                Err(e) => w.failures.push(format!("diamond: {e}")),
            }
        }
        Ok(res.present())
    };
    out.expect(diamond_in(&samples::dfa_a_prime(), w)?, || "diamond pattern absent in A'".into());
    out.expect(!diamond_in(&samples::dfa_a(), w)?, || "diamond pattern present in A".into());

    let rev = samples::rev_ends_with_a();
    out.expect(!presence(Automaton::Reverse(&rev), "builtin:r:2:rev", w)?, || {
        "reverse P^R_2 present in the A*a reverse DFA".into()
    });

    let b = samples::cm_figure();
    out.expect(b.validate_cm(PROFILE_CAP)?.is_cm(), || "figure automaton is not Carton-Michel".into());
    let trim: Vec<&str> = (0..b.num_states()).filter(|&q| b.trim_part()[q]).map(|q| b.state_name(q)).collect();
    out.expect(trim == ["k1", "k2", "k3", "k4"], || format!("trim part {trim:?}"));
    out.expect(!presence(Automaton::Cm(&b), "builtin:si:1:rev", w)?, || "reverse P^Si_1 present".into());
    let report = classify_infinite(&b, 1, Engine::Pattern, cfg)?;
    out.expect(report.get(Level::Sigma2(1)) == Some(true), || "Σ²_1 not true".into());
    out.notes.push("8 checks".into());
    Ok(out)
}

fn criterion_4(props: &Properties) -> Outcome {
    let parts = [
        ("a", &props.lift),
        ("b", &props.implied),
        ("c", &props.duality),
        ("d", &props.redundancy),
        ("e", &props.minimization),
        ("f", &props.reverse_terms),
    ];
    let mut out = Outcome::default();
    for (i, (tag, o)) in parts.iter().enumerate() {
        out.notes.push(format!("{tag}: {} instances", props.counts[i]));
        out.expect(props.counts[i] > 0, || format!("({tag}) never exercised"));
        out.failures.extend(o.failures.iter().map(|f| format!("({tag}) {f}")));
    }
    out
}

fn criterion_5(w: &Witnesses) -> Outcome {
    let mut out = Outcome::default();
    out.notes.push(format!("{} witnesses replayed", w.verified));
    out.expect(w.verified > 0, || "no witnesses produced".into());
    out.failures.extend(w.failures.iter().cloned());
    out
}

/// Least-squares slope of `ys` against `xs`.
fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn criterion_6(w: &mut Witnesses) -> Result<Outcome> {
    const PER_SIZE: usize = 20;
    const LIMIT: Duration = Duration::from_secs(60);
    let mut out = Outcome::default();
    let p = cached_pattern("builtin:r:2")?;
    let bound = (p.vars().len() + p.edges().len() + 1) as f64;
    let cfg = MatchConfig { strategy: Strategy::PerAssignment, ..MatchConfig::default() };
    let (mut xs, mut ys, mut table) = (Vec::new(), Vec::new(), Vec::new());
    for n in 3..=8 {
        let mut total = 0u64;
        let mut slowest = Duration::ZERO;
        for (i, d) in random_dfas(n, 2, PER_SIZE, 600 + n as u64).iter().enumerate() {
            let start = Instant::now();
            let res = present(&Prepared::dfa(d), &p, &cfg)?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            out.expect(took <= LIMIT, || format!("{n} states #{i}: {took:.1?}"));
            if let Some(wit) = &res.witness {
                match verify_witness(subpat_core::matcher::Automaton::Dfa(d), &p, wit) {
                    Ok(()) => w.verified += 1,
                    Err(e) => w.failures.push(format!("P^R_2 on {n} states #{i}: {e}")),
                }
            }
            total += res.stats.configurations;
        }
        let mean = (total as f64 / PER_SIZE as f64).max(1.0);
        xs.push((n as f64).ln());
        ys.push(mean.ln());
        table.push(format!("|Q|={n}: {mean:.0} configurations, max {slowest:.1?}"));
    }
    let s = slope(&xs, &ys);
    out.notes.extend(table);
    out.notes.push(format!("log-log slope {s:.2} < {bound}"));
    out.expect(s < bound, || format!("slope {s:.2} not below {bound}"));
    Ok(out)
}

fn criterion_7() -> Result<Outcome> {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    let bad_dfa = AnyAutomaton::Dfa(samples::dfa_ab_star());
    let bad_cm = AnyAutomaton::Cm(samples::cm_finitely_many_a());
    let mut reachable = 0;
    for i in 0..50 {
        let n = rng.gen_range(1..=12);
        let g = Digraph::random(n, rng.gen_range(0.02..0.25), &mut rng);
        let j = g.vertices[rng.gen_range(0..n)].clone();
        let k = g.vertices[rng.gen_range(0..n)].clone();
        let path = g.reaches(&j, &k)?;
        reachable += usize::from(path);
        for bad in [&bad_dfa, &bad_cm] {
            let c = hardness_instance(&g, &j, &k, bad)?;
            let empty = c.is_empty_language();
            out.expect(empty != path, || format!("graph {i} ({}): path {path}, empty {empty}", c.kind()));
            if let AnyAutomaton::Cm(b) = &c {
                let cm = b.validate_cm(PROFILE_CAP)?.is_cm();
                out.expect(cm, || format!("graph {i}: CM variant does not validate"));
            }
        }
    }
    out.notes.push(format!("50 digraphs, {reachable} with a path, 100 instances"));
    Ok(out)
}

fn run<F: FnOnce() -> Result<Outcome>>(f: F) -> Outcome {
    f().unwrap_or_else(|e| Outcome { failures: vec![format!("error: {e}")], notes: Vec::new() })
}

fn main() -> ExitCode {
    let cfg = ClassifyConfig::default();
    let mut props = Properties::default();
    let mut w = Witnesses::default();
    let c1 = criterion_1(&cfg, &mut props, &mut w);
    let c2 = criterion_2(&cfg, &mut props, &mut w);
    let c3 = run(|| criterion_3(&cfg, &mut w));
    let c4 = criterion_4(&props);
    let c6 = run(|| criterion_6(&mut w));
    let c7 = run(criterion_7);
    let c5 = criterion_5(&w);

    let all = [("1", c1), ("2", c2), ("3", c3), ("4", c4), ("5", c5), ("6", c6), ("7", c7)];
    for (n, o) in &all {
        println!("{}", o.line(n));
    }
    if all.iter().all(|(_, o)| o.failures.is_empty()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
