//! The service operations as plain blocking functions of a request.

use std::thread;
use subpat_api::*;
use subpat_core::algebra::{fin_inf_syntactic, syntactic_monoid_finite, topology_report, MonoidDump, DEFAULT_MONOID_CAP};
use subpat_core::automata::{AnyAutomaton, Alphabet, Lasso, PROFILE_CAP};
use subpat_core::classify::{
    classify_finite, classify_infinite, crosscheck_finite, crosscheck_infinite, fault_injection_self_test,
    ClassifyConfig, CrosscheckReport, Engine, LevelReport,
};
use subpat_core::corpus::{exhaustive_count, generate, Corpus, Count, CorpusKind, CorpusSpec};
use subpat_core::hardness::hardness_instance;
use subpat_core::matcher::{present, verify_witness, MatchConfig, MatchStats, Prepared};
use subpat_core::patterns::{builtin_variants, wellformedness, Pattern, PatternJson};
use subpat_core::{samples, Error, Result};

fn match_config(budget: Option<u64>) -> MatchConfig {
    let mut cfg = MatchConfig::default();
    if let Some(b) = budget {
        cfg.budget = b;
    }
    cfg
}

fn classify_config(budget: Option<u64>) -> ClassifyConfig {
    ClassifyConfig { matcher: match_config(budget), ..ClassifyConfig::default() }
}

fn lasso(sigma: &Alphabet, l: &Lasso) -> LassoJson {
    LassoJson { prefix: sigma.format_word(&l.prefix), period: sigma.format_word(&l.period) }
}

pub fn validate(req: ValidateRequest) -> Result<ValidateResponse> {
    let a = req.automaton.build(req.complete)?;
    let mut out = ValidateResponse {
        kind: AutomatonJson::from(&a).kind,
        states: a.num_states(),
        alphabet: a.alphabet().len(),
        valid: true,
        empty_language: a.is_empty_language(),
        accessible: None,
        minimal_states: None,
        cm: None,
    };
    match &a {
        AnyAutomaton::Dfa(d) => {
            out.accessible = Some(d.reachable().iter().filter(|&&r| r).count());
            out.minimal_states = Some(d.minimize().num_states());
        }
        AnyAutomaton::Reverse(r) => {
            out.accessible = Some(r.coreachable_final().iter().filter(|&&r| r).count());
        }
        AnyAutomaton::Cm(b) => {
            let rep = b.validate_cm(PROFILE_CAP)?;
            let sigma = b.alphabet();
            out.valid = rep.is_cm();
            out.cm = Some(CmValidation {
                complete: rep.complete,
                unambiguous: rep.unambiguous,
                uncovered: rep.uncovered.as_ref().map(|l| lasso(sigma, l)),
                ambiguous: rep.ambiguous.as_ref().map(|l| lasso(sigma, l)),
                trim: rep.trim.iter().map(|&q| b.state_name(q).to_string()).collect(),
                empty_language: rep.empty_language,
            });
        }
    }
    Ok(out)
}

fn classify_one(a: &AnyAutomaton, max_level: u32, engine: Engine, cfg: &ClassifyConfig) -> Result<LevelReport> {
    match a {
        AnyAutomaton::Dfa(d) => classify_finite(d, max_level, engine, cfg),
        AnyAutomaton::Cm(b) => classify_infinite(b, max_level, engine, cfg),
        AnyAutomaton::Reverse(_) => {
            Err(Error::Invalid("levels are decided for DFAs and Carton-Michel automata only".into()))
        }
    }
}

pub fn classify(req: ClassifyRequest) -> Result<ClassifyResponse> {
    let a = req.automaton.build(req.complete)?;
    let cfg = classify_config(req.budget);
    let engines: &[Engine] = match req.engine {
        EngineChoice::Pattern => &[Engine::Pattern],
        EngineChoice::Algebra => &[Engine::Algebra],
        EngineChoice::Both => &[Engine::Pattern, Engine::Algebra],
    };
    let reports =
        engines.iter().map(|&e| classify_one(&a, req.max_level, e, &cfg)).collect::<Result<Vec<_>>>()?;
    let disagreements = match reports.as_slice() {
        [p, q] => p
            .verdicts()
            .into_iter()
            .filter(|&(level, v)| q.get(level).is_some_and(|w| w != v))
            .map(|(level, _)| level.to_string())
            .collect(),
        _ => Vec::new(),
    };
    let words = if matches!(a, AnyAutomaton::Cm(_)) { Words::Infinite } else { Words::Finite };
    Ok(ClassifyResponse { words, reports, disagreements })
}

fn resolve_patterns(arg: PatternArg) -> Result<Vec<(String, Pattern)>> {
    match arg {
        PatternArg::Name(name) if name.starts_with("builtin:") => builtin_variants(&name),
        PatternArg::Name(name) => Err(Error::Invalid(format!(
            "`{name}` is not a built-in pattern; send pattern files inline"
        ))),
        PatternArg::Inline(j) => Ok(vec![("inline".to_string(), Pattern::try_from(j)?)]),
    }
}

pub fn check_pattern(req: CheckPatternRequest) -> Result<CheckPatternResponse> {
    let a = req.automaton.build(req.complete)?;
    let variants = resolve_patterns(req.pattern)?;
    let mut cfg = match_config(req.budget);
    if let Some(s) = req.strategy {
        cfg.strategy = s;
    }
    let prep = Prepared::new(a.view())?;
    let mut stats = MatchStats::default();
    for (i, (name, p)) in variants.iter().enumerate() {
        let out = present(&prep, p, &cfg)?;
        stats.configurations += out.stats.configurations;
        stats.assignments += out.stats.assignments;
        if let Some(w) = out.witness {
            let verified = verify_witness(a.view(), p, &w).is_ok();
            return Ok(CheckPatternResponse {
                present: true,
                pattern: name.clone(),
                variant: (variants.len() > 1).then_some(i),
                witness: Some(WitnessJson::new(&w, a.view(), p, i)),
                witness_text: Some(w.describe(a.view(), p)),
                verified,
                stats,
            });
        }
    }
    Ok(CheckPatternResponse {
        present: false,
        pattern: variants[0].0.clone(),
        variant: None,
        witness: None,
        witness_text: None,
        verified: true,
        stats,
    })
}

pub fn pattern_gen(req: PatternGenRequest) -> Result<PatternGenResponse> {
    let patterns = builtin_variants(&req.name)?
        .into_iter()
        .map(|(name, p)| GeneratedPattern { pattern: PatternJson::from(&p), wellformedness: wellformedness(&p), name })
        .collect();
    Ok(PatternGenResponse { patterns })
}

pub fn monoid(req: MonoidRequest) -> Result<MonoidResponse> {
    let a = req.automaton.build(req.complete)?;
    let named = |name: &str, monoid| NamedMonoid { name: name.to_string(), monoid };
    match &a {
        AnyAutomaton::Dfa(d) => {
            let m = syntactic_monoid_finite(d, DEFAULT_MONOID_CAP)?;
            Ok(MonoidResponse {
                monoids: vec![named("syntactic", MonoidDump::new(&m, d.alphabet(), req.max_level)?)],
                profiles: None,
                topology: None,
            })
        }
        AnyAutomaton::Cm(b) => {
            let ms = fin_inf_syntactic(b, DEFAULT_MONOID_CAP)?;
            let sigma = b.alphabet();
            Ok(MonoidResponse {
                monoids: vec![
                    named("fin", MonoidDump::new(&ms.fin, sigma, req.max_level)?),
                    named("inf", MonoidDump::new(&ms.inf, sigma, req.max_level)?),
                    named("full", MonoidDump::new(&ms.full, sigma, req.max_level)?),
                ],
                profiles: Some(ms.profiles),
                topology: Some(topology_report(b, DEFAULT_MONOID_CAP)?),
            })
        }
        AnyAutomaton::Reverse(_) => {
            Err(Error::Invalid("syntactic monoids are built from DFAs and Carton-Michel automata".into()))
        }
    }
}

fn corpus_automata(spec: &CorpusSpec) -> Result<(Vec<AnyAutomaton>, Option<(u64, u64)>)> {
    Ok(match generate(spec)? {
        Corpus::Dfa(ds) => (ds.into_iter().map(AnyAutomaton::Dfa).collect(), None),
        Corpus::Cm(c) => {
            let stats = (c.candidates, c.accepted);
            (c.automata.into_iter().map(AnyAutomaton::Cm).collect(), Some(stats))
        }
    })
}

pub fn corpus_gen(req: CorpusRequest) -> Result<CorpusResponse> {
    let spec = req.spec;
    let (automata, cm) = corpus_automata(&spec)?;
    let expected = (spec.kind == CorpusKind::Dfa && spec.count == Count::Exhaustive)
        .then(|| exhaustive_count(spec.n_states, spec.alphabet_size));
    Ok(CorpusResponse {
        spec,
        automata: automata.iter().map(AutomatonJson::from).collect(),
        expected,
        candidates: cm.map(|c| c.0),
        accepted: cm.map(|c| c.1),
        acceptance_ratio: cm.map(|(c, a)| if c == 0 { 0.0 } else { a as f64 / c as f64 }),
    })
}

fn crosscheck_one(a: &AnyAutomaton, max_level: u32, cfg: &ClassifyConfig) -> Result<CrosscheckReport> {
    match a {
        AnyAutomaton::Dfa(d) => crosscheck_finite(d, max_level, cfg),
        AnyAutomaton::Cm(b) => crosscheck_infinite(b, max_level, cfg),
        AnyAutomaton::Reverse(_) => Err(Error::Invalid("reverse DFAs are not crosschecked".into())),
    }
}

/// Runs `f` over `items` on a pool of scoped workers; results keep input order.
fn fan_out<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    if workers == 1 {
        return items.iter().map(f).collect();
    }
    let f = &f;
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    items.iter().enumerate().skip(w).step_by(workers).map(|(i, x)| (i, f(x))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("crosscheck worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every index is computed")).collect()
}

pub fn crosscheck(req: CrosscheckRequest) -> Result<CrosscheckResponse> {
    let mut automata =
        req.automata.into_iter().map(|j| j.build(req.complete)).collect::<Result<Vec<_>>>()?;
    if let Some(spec) = &req.corpus {
        automata.extend(corpus_automata(spec)?.0);
    }
    let cfg = classify_config(req.budget);
    let results = fan_out(&automata, |a| crosscheck_one(a, req.max_level, &cfg));
    let mut out = CrosscheckResponse {
        automata: automata.len(),
        checks: 0,
        disagreements: Vec::new(),
        errors: Vec::new(),
        witnesses_verified: 0,
        configurations: 0,
        self_test: None,
    };
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(rep) => {
                out.checks += rep.checks;
                out.witnesses_verified += rep.witnesses_verified;
                out.configurations += rep.configurations;
                out.disagreements
                    .extend(rep.disagreements.into_iter().map(|disagreement| IndexedDisagreement { index, disagreement }));
            }
            Err(e) => out.errors.push(IndexedError { index, error: e.into() }),
        }
    }
    if req.self_test {
        let disagreements = fault_injection_self_test(&cfg)?;
        out.self_test = Some(SelfTest { detected: !disagreements.is_empty(), disagreements });
    }
    Ok(out)
}

pub fn hardness_gen(req: HardnessRequest) -> Result<HardnessResponse> {
    let bad = match req.bad {
        Some(j) => j.build(false)?,
        None => match req.kind {
            CorpusKind::Dfa => AnyAutomaton::Dfa(samples::dfa_ab_star()),
            CorpusKind::Cm => AnyAutomaton::Cm(samples::cm_finitely_many_a()),
        },
    };
    let kind_matches = matches!(
        (req.kind, &bad),
        (CorpusKind::Dfa, AnyAutomaton::Dfa(_)) | (CorpusKind::Cm, AnyAutomaton::Cm(_))
    );
    if !kind_matches {
        return Err(Error::Invalid(format!("base automaton is a {}, not of the requested kind", bad.kind())));
    }
    let c = hardness_instance(&req.digraph, &req.from, &req.to, &bad)?;
    let carton_michel = match &c {
        AnyAutomaton::Cm(b) => Some(b.validate_cm(PROFILE_CAP)?.is_cm()),
        _ => None,
    };
    Ok(HardnessResponse {
        automaton: AutomatonJson::from(&c),
        reachable: req.digraph.reaches(&req.from, &req.to)?,
        empty_language: c.is_empty_language(),
        carton_michel,
    })
}
