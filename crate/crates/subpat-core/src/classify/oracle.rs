use crate::error::{Error, Result};
use crate::matcher::{present, verify_witness, MatchConfig, Prepared, Witness};
use crate::patterns::{builtin, Pattern};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Built-in patterns by name, constructed once per process.
pub fn cached_pattern(name: &str) -> Result<Arc<Pattern>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Pattern>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("pattern cache poisoned").get(name) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(builtin(name)?);
    cache.lock().expect("pattern cache poisoned").insert(name.to_string(), Arc::clone(&p));
    Ok(p)
}

/// Memoized presence of built-in patterns in one automaton. Every witness
/// is replayed before it is trusted.
pub struct PatternOracle<'a> {
    prep: Prepared<'a>,
    cfg: MatchConfig,
    found: HashMap<String, Option<Witness>>,
    verified: u64,
    configurations: u64,
}

impl<'a> PatternOracle<'a> {
    pub fn new(prep: Prepared<'a>, cfg: MatchConfig) -> Self {
        PatternOracle { prep, cfg, found: HashMap::new(), verified: 0, configurations: 0 }
    }

    pub fn present(&mut self, name: &str) -> Result<bool> {
        if let Some(w) = self.found.get(name) {
            return Ok(w.is_some());
        }
        let p = cached_pattern(name)?;
        let out = present(&self.prep, &p, &self.cfg)?;
        self.configurations += out.stats.configurations;
        if let Some(w) = &out.witness {
            verify_witness(self.prep.automaton(), &p, w)
                .map_err(|e| Error::Invariant(format!("witness for {name} does not replay: {e}")))?;
            self.verified += 1;
        }
        let hit = out.witness.is_some();
        self.found.insert(name.to_string(), out.witness);
        Ok(hit)
    }

    pub fn witness(&self, name: &str) -> Option<&Witness> {
        self.found.get(name).and_then(Option::as_ref)
    }

    /// The witness of a pattern found present, in automaton names.
    pub fn describe(&self, name: &str) -> String {
        match (self.witness(name), cached_pattern(name)) {
            (Some(w), Ok(p)) => w.describe(self.prep.automaton(), &p),
            _ => String::from("no witness"),
        }
    }

    pub fn verified(&self) -> u64 {
        self.verified
    }

    pub fn configurations(&self) -> u64 {
        self.configurations
    }
}
