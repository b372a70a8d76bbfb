//! Levels of the Σ² and FO² hierarchies, decided by pattern absence or by the
//! syntactic monoids and topology oracles, plus a crosscheck of the two.

mod oracle;

pub use oracle::{cached_pattern, PatternOracle};

use crate::algebra::{
    fin_inf_syntactic, in_variety, syntactic_monoid_finite, topology_report, OrderedMonoid, Topology, Variety,
    DEFAULT_MONOID_CAP,
};
use crate::automata::{Buchi, Dfa, PROFILE_CAP};
use crate::error::{Error, Result};
use crate::matcher::{MatchConfig, Prepared};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Pattern,
    Algebra,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Pattern => "pattern",
            Engine::Algebra => "algebra",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pattern" => Ok(Engine::Pattern),
            "algebra" => Ok(Engine::Algebra),
            _ => Err(Error::Invalid(format!("unknown engine `{s}` (pattern or algebra)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Sigma2(u32),
    Fo2(u32),
    /// Unbounded alternation; finite words only.
    Fo2All,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Sigma2(m) => write!(f, "sigma2.{m}"),
            Level::Fo2(m) => write!(f, "fo2.{m}"),
            Level::Fo2All => write!(f, "fo2_all"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Levels {
    pub sigma2: BTreeMap<u32, bool>,
    pub fo2: BTreeMap<u32, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fo2_all: Option<bool>,
}

/// Per-level verdicts with the pattern or monoid fact that decided each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub levels: Levels,
    pub evidence: BTreeMap<String, String>,
    pub engine: Engine,
}

impl LevelReport {
    fn new(engine: Engine) -> Self {
        LevelReport { levels: Levels::default(), evidence: BTreeMap::new(), engine }
    }

    fn record(&mut self, level: Level, verdict: bool, evidence: String) {
        match level {
            Level::Sigma2(m) => self.levels.sigma2.insert(m, verdict),
            Level::Fo2(m) => self.levels.fo2.insert(m, verdict),
            Level::Fo2All => self.levels.fo2_all.replace(verdict),
        };
        self.evidence.insert(level.to_string(), evidence);
    }

    pub fn get(&self, level: Level) -> Option<bool> {
        match level {
            Level::Sigma2(m) => self.levels.sigma2.get(&m).copied(),
            Level::Fo2(m) => self.levels.fo2.get(&m).copied(),
            Level::Fo2All => self.levels.fo2_all,
        }
    }

    /// All verdicts in level order.
    pub fn verdicts(&self) -> Vec<(Level, bool)> {
        let mut out: Vec<(Level, bool)> = self.levels.sigma2.iter().map(|(&m, &v)| (Level::Sigma2(m), v)).collect();
        out.extend(self.levels.fo2.iter().map(|(&m, &v)| (Level::Fo2(m), v)));
        out.extend(self.levels.fo2_all.map(|v| (Level::Fo2All, v)));
        out
    }

    /// Each hierarchy is monotone, `Σ²_m ⊆ FO²_m ⊆ Σ²_{m+1}`, and every
    /// level lies in FO².
    pub fn is_consistent(&self) -> bool {
        let s = &self.levels.sigma2;
        let f = &self.levels.fo2;
        let implies = |a: Option<&bool>, b: Option<&bool>| !matches!((a, b), (Some(true), Some(false)));
        s.keys().chain(f.keys()).all(|&m| {
            implies(s.get(&m), s.get(&(m + 1)))
                && implies(f.get(&m), f.get(&(m + 1)))
                && implies(s.get(&m), f.get(&m))
                && implies(f.get(&m), s.get(&(m + 1)))
                && implies(f.get(&m), self.levels.fo2_all.as_ref())
        })
    }
}

/// Patterns whose joint absence decides a level; each inner group counts
/// as present if any member is.
type Plan = Vec<Vec<String>>;

fn group(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn finite_plan(level: Level) -> Plan {
    match level {
        Level::Sigma2(m) => vec![group(&[&format!("builtin:si:{m}")])],
        Level::Fo2(m) => vec![group(&[&format!("builtin:r:{}", m + 1)]), group(&[&format!("builtin:l:{}", m + 1)])],
        Level::Fo2All => vec![group(&["builtin:da"])],
    }
}

const SI1_INF: [&str; 2] = ["builtin:si1-inf:1", "builtin:si1-inf:2"];
const DA_INF: [&str; 2] = ["builtin:da-inf:1", "builtin:da-inf:2"];

/// Reversed patterns for the finite behaviour, infinite-behaviour and
/// topology patterns for the rest. `da-inf` is only meaningful once the
/// reversed `P_DA` is absent, so it always follows it. The optimized plans
/// drop groups implied by the others.
fn infinite_plan(level: Level, optimized: bool) -> Plan {
    let rev = |s: String| vec![format!("{s}:rev")];
    let mut plan = match level {
        Level::Sigma2(1) => {
            let mut p = vec![rev("builtin:si:1".into())];
            if !optimized {
                p.push(group(&SI1_INF));
            }
            p.push(group(&["builtin:cantor:open"]));
            p
        }
        Level::Sigma2(2) => {
            let mut p = vec![rev("builtin:si:2".into()), rev("builtin:da".into())];
            if !optimized {
                p.push(group(&DA_INF));
            }
            p.push(group(&["builtin:alph:open"]));
            p
        }
        Level::Sigma2(m) => vec![rev(format!("builtin:si:{m}")), rev("builtin:da".into()), group(&DA_INF)],
        Level::Fo2(1) => {
            let mut p = vec![rev("builtin:r:2".into()), rev("builtin:l:2".into())];
            if !optimized {
                p.push(rev("builtin:da".into()));
                p.push(group(&DA_INF));
            }
            p.push(group(&["builtin:alph:clopen"]));
            p
        }
        Level::Fo2(m) => vec![
            rev(format!("builtin:r:{}", m + 1)),
            rev(format!("builtin:l:{}", m + 1)),
            rev("builtin:da".into()),
            group(&DA_INF),
        ],
        Level::Fo2All => Vec::new(),
    };
    plan.retain(|g| !g.is_empty());
    plan
}

fn levels(max_m: u32, with_fo2_all: bool) -> Vec<Level> {
    let mut out: Vec<Level> = (1..=max_m).map(Level::Sigma2).collect();
    out.extend((1..=max_m).map(Level::Fo2));
    if with_fo2_all {
        out.push(Level::Fo2All);
    }
    out
}

fn check_max(max_m: u32) -> Result<()> {
    if max_m == 0 {
        return Err(Error::Invalid("max level must be at least 1".into()));
    }
    Ok(())
}

fn at_level(level: Level) -> impl Fn(Error) -> Error {
    move |e| Error::AtLevel { level: level.to_string(), source: Box::new(e) }
}

/// Evaluates a plan, stopping at the first present group.
fn run_plan(oracle: &mut PatternOracle, plan: &Plan) -> Result<(bool, String)> {
    for g in plan {
        for name in g {
            if oracle.present(name)? {
                return Ok((false, format!("{name} present; {}", oracle.describe(name))));
            }
        }
    }
    let all: Vec<&str> = plan.iter().flatten().map(String::as_str).collect();
    Ok((true, format!("absent: {}", all.join(", "))))
}

fn pattern_report(oracle: &mut PatternOracle, lv: &[Level], plan: impl Fn(Level) -> Plan) -> Result<LevelReport> {
    let mut report = LevelReport::new(Engine::Pattern);
    for &level in lv {
        let (verdict, evidence) = run_plan(oracle, &plan(level)).map_err(at_level(level))?;
        report.record(level, verdict, evidence);
    }
    Ok(report)
}

/// Options shared by both engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub matcher: MatchConfig,
    pub monoid_cap: usize,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { matcher: MatchConfig::default(), monoid_cap: DEFAULT_MONOID_CAP }
    }
}

fn member(m: &OrderedMonoid, v: Variety) -> Result<bool> {
    in_variety(m, v)
}

fn monoid_fact(what: &str, m: &OrderedMonoid, v: Variety, yes: bool) -> String {
    format!("{what} ({} elements) {} {v}", m.len(), if yes { "in" } else { "not in" })
}

pub fn classify_finite(dfa: &Dfa, max_m: u32, engine: Engine, cfg: &ClassifyConfig) -> Result<LevelReport> {
    check_max(max_m)?;
    let lv = levels(max_m, true);
    match engine {
        Engine::Pattern => {
            let mut oracle = PatternOracle::new(Prepared::dfa(dfa), cfg.matcher);
            pattern_report(&mut oracle, &lv, finite_plan)
        }
        Engine::Algebra => {
            let m = syntactic_monoid_finite(dfa, cfg.monoid_cap)?;
            let mut report = LevelReport::new(Engine::Algebra);
            for &level in &lv {
                let (verdict, evidence) = finite_algebra_level(&m, level).map_err(at_level(level))?;
                report.record(level, verdict, evidence);
            }
            Ok(report)
        }
    }
}

fn finite_algebra_level(m: &OrderedMonoid, level: Level) -> Result<(bool, String)> {
    let vs = match level {
        Level::Sigma2(k) => vec![Variety::Sim(k)],
        Level::Fo2(k) => vec![Variety::Rm(k + 1), Variety::Lm(k + 1)],
        Level::Fo2All => vec![Variety::DA],
    };
    conjunction(m, "syntactic monoid", &vs)
}

/// Membership in every variety of `vs`, reporting the first failure.
fn conjunction(m: &OrderedMonoid, what: &str, vs: &[Variety]) -> Result<(bool, String)> {
    for &v in vs {
        if !member(m, v)? {
            return Ok((false, monoid_fact(what, m, v, false)));
        }
    }
    let names: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    Ok((true, format!("{what} ({} elements) in {}", m.len(), names.join(" ∩ "))))
}

/// Infinite words; `buchi` must validate as Carton-Michel. No verdict is
/// given for unbounded FO².
pub fn classify_infinite(buchi: &Buchi, max_m: u32, engine: Engine, cfg: &ClassifyConfig) -> Result<LevelReport> {
    check_max(max_m)?;
    let lv = levels(max_m, false);
    match engine {
        Engine::Pattern => {
            let mut oracle = PatternOracle::new(Prepared::cm(buchi)?, cfg.matcher);
            pattern_report(&mut oracle, &lv, |l| infinite_plan(l, true))
        }
        Engine::Algebra => {
            require_cm(buchi)?;
            infinite_algebra(buchi, &lv, cfg.monoid_cap)
        }
    }
}

fn require_cm(b: &Buchi) -> Result<()> {
    if !b.validate_cm(PROFILE_CAP)?.is_cm() {
        return Err(Error::Invalid("automaton is not a Carton-Michel automaton".into()));
    }
    Ok(())
}

fn infinite_algebra(buchi: &Buchi, lv: &[Level], cap: usize) -> Result<LevelReport> {
    let ms = fin_inf_syntactic(buchi, cap)?;
    let topo = topology_report(buchi, cap)?;
    let mut report = LevelReport::new(Engine::Algebra);
    for &level in lv {
        let (vs, topology) = match level {
            Level::Sigma2(1) => (vec![Variety::Sim(1)], Some(Topology::CantorOpen)),
            Level::Sigma2(2) => (vec![Variety::Sim(2)], Some(Topology::AlphOpen)),
            Level::Sigma2(k) => (vec![Variety::Sim(k)], None),
            Level::Fo2(1) => (vec![Variety::Rm(2), Variety::Lm(2)], Some(Topology::AlphClopen)),
            Level::Fo2(k) => (vec![Variety::Rm(k + 1), Variety::Lm(k + 1)], None),
            Level::Fo2All => continue,
        };
        let (mut verdict, mut evidence) = conjunction(&ms.full, "syntactic monoid", &vs).map_err(at_level(level))?;
        if let Some(t) = topology {
            let open = topo.get(t);
            evidence = format!("{evidence}; {}{t:?}", if open { "" } else { "not " });
            verdict &= open;
        }
        report.record(level, verdict, evidence);
    }
    Ok(report)
}

/// One comparison where the engines differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub check: String,
    pub pattern: bool,
    pub algebra: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub checks: usize,
    pub disagreements: Vec<Disagreement>,
    /// Witnesses found by the pattern side, each replayed successfully.
    pub witnesses_verified: u64,
    pub configurations: u64,
}

impl CrosscheckReport {
    fn compare(&mut self, check: impl Into<String>, pattern: bool, algebra: bool) {
        self.checks += 1;
        if pattern != algebra {
            self.disagreements.push(Disagreement { check: check.into(), pattern, algebra });
        }
    }

    fn compare_reports(&mut self, suffix: &str, p: &LevelReport, a: &LevelReport) {
        for (level, pv) in p.verdicts() {
            if let Some(av) = a.get(level) {
                self.compare(format!("{level}{suffix}"), pv, av);
            }
        }
    }

    fn absorb(&mut self, oracle: &PatternOracle) {
        self.witnesses_verified = oracle.verified();
        self.configurations = oracle.configurations();
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Variety memberships and levels of a DFA language, pattern engine against
/// algebra engine. The pattern side reads `pattern_side`, the algebra side
/// `algebra_side`; they differ only in fault-injection runs.
pub fn crosscheck_finite_pair(
    pattern_side: &Dfa,
    algebra_side: &Dfa,
    max_m: u32,
    cfg: &ClassifyConfig,
) -> Result<CrosscheckReport> {
    check_max(max_m)?;
    let mut out = CrosscheckReport::default();
    let mut oracle = PatternOracle::new(Prepared::dfa(pattern_side), cfg.matcher);
    let m = syntactic_monoid_finite(algebra_side, cfg.monoid_cap)?;
    let mut varieties = vec![("builtin:da".to_string(), Variety::DA)];
    for k in 2..=max_m + 1 {
        varieties.push((format!("builtin:r:{k}"), Variety::Rm(k)));
        varieties.push((format!("builtin:l:{k}"), Variety::Lm(k)));
    }
    varieties.extend((1..=max_m).map(|k| (format!("builtin:si:{k}"), Variety::Sim(k))));
    for (name, v) in varieties {
        out.compare(format!("monoid {v}"), !oracle.present(&name)?, member(&m, v)?);
    }
    let lv = levels(max_m, true);
    let p = pattern_report(&mut oracle, &lv, finite_plan)?;
    let mut a = LevelReport::new(Engine::Algebra);
    for &level in &lv {
        let (verdict, evidence) = finite_algebra_level(&m, level)?;
        a.record(level, verdict, evidence);
    }
    out.compare_reports("", &p, &a);
    out.absorb(&oracle);
    Ok(out)
}

pub fn crosscheck_finite(dfa: &Dfa, max_m: u32, cfg: &ClassifyConfig) -> Result<CrosscheckReport> {
    crosscheck_finite_pair(dfa, dfa, max_m, cfg)
}

/// As [`crosscheck_finite`] for a Carton-Michel automaton: the fin and inf
/// monoids, the topology oracles, and the levels under both the full and
/// the optimized pattern plans.
pub fn crosscheck_infinite(buchi: &Buchi, max_m: u32, cfg: &ClassifyConfig) -> Result<CrosscheckReport> {
    check_max(max_m)?;
    let mut out = CrosscheckReport::default();
    let mut oracle = PatternOracle::new(Prepared::cm(buchi)?, cfg.matcher);
    let ms = fin_inf_syntactic(buchi, cfg.monoid_cap)?;
    let topo = topology_report(buchi, cfg.monoid_cap)?;

    let rev = |s: String| format!("{s}:rev");
    let mut fin_checks = vec![(vec![rev("builtin:da".into())], vec![Variety::DA])];
    for k in 1..=max_m {
        fin_checks.push((vec![rev(format!("builtin:si:{k}"))], vec![Variety::Sim(k)]));
    }
    for k in 2..=max_m {
        fin_checks.push((
            vec![rev(format!("builtin:r:{k}")), rev(format!("builtin:l:{k}"))],
            vec![Variety::Rm(k), Variety::Lm(k)],
        ));
    }
    for (names, vs) in fin_checks {
        let mut alg = true;
        for &v in &vs {
            alg &= member(&ms.fin, v)?;
        }
        let label: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        out.compare(format!("fin monoid {}", label.join(" ∩ ")), absent_all(&mut oracle, &names)?, alg);
    }

    let si1_inf: Vec<String> = group(&SI1_INF);
    out.compare("inf monoid Si1", absent_all(&mut oracle, &si1_inf)?, member(&ms.inf, Variety::Sim(1))?);
    if !oracle.present("builtin:da:rev")? {
        out.compare("inf monoid DA", absent_all(&mut oracle, &group(&DA_INF))?, member(&ms.inf, Variety::DA)?);
    }

    let topologies = [
        ("builtin:cantor:open", Topology::CantorOpen),
        ("builtin:cantor:closed", Topology::CantorClosed),
        ("builtin:cantor:clopen", Topology::CantorClopen),
        ("builtin:alph:open", Topology::AlphOpen),
        ("builtin:alph:closed", Topology::AlphClosed),
        ("builtin:alph:clopen", Topology::AlphClopen),
    ];
    for (name, t) in topologies {
        out.compare(format!("topology {t:?}"), !oracle.present(name)?, topo.get(t));
    }

    let lv = levels(max_m, false);
    let a = infinite_algebra(buchi, &lv, cfg.monoid_cap)?;
    let optimized = pattern_report(&mut oracle, &lv, |l| infinite_plan(l, true))?;
    let full = pattern_report(&mut oracle, &lv, |l| infinite_plan(l, false))?;
    out.compare_reports("", &full, &a);
    out.compare_reports(" (optimized)", &optimized, &a);
    out.absorb(&oracle);
    Ok(out)
}

fn absent_all(oracle: &mut PatternOracle, names: &[String]) -> Result<bool> {
    for n in names {
        if oracle.present(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Harness self-test: the pattern side reads `A*a` and the algebra side the
/// same DFA with its non-final state made final, which accepts everything.
/// Returns the disagreements, which must be nonempty.
pub fn fault_injection_self_test(cfg: &ClassifyConfig) -> Result<Vec<Disagreement>> {
    let d = crate::samples::dfa_ends_with_a();
    let q = (0..d.num_states()).find(|&q| !d.is_final(q)).expect("sample has a non-final state");
    Ok(crosscheck_finite_pair(&d, &d.with_final_flipped(q), 3, cfg)?.disagreements)
}

#[cfg(test)]
mod tests;
