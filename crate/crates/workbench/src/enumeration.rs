//! Parallel enumeration with identity filters.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use semiwork_core::enumerate::{
    branch_prefixes, enumerate_branch, EnumerationMode, MAX_ENUMERATION_ORDER,
};
use semiwork_core::{CayleyTable, Identity};

use crate::WorkbenchError;

/// Default enumeration cap; `WORKBENCH_MAX_ORDER` may raise it up to
/// [`MAX_ENUMERATION_ORDER`].
pub const DEFAULT_MAX_ORDER: usize = 4;

pub const MAX_ORDER_VAR: &str = "WORKBENCH_MAX_ORDER";

/// The enumeration cap in effect.
pub fn max_order() -> Result<usize, WorkbenchError> {
    match std::env::var(MAX_ORDER_VAR) {
        Err(_) => Ok(DEFAULT_MAX_ORDER),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_ENUMERATION_ORDER).contains(&n) => Ok(n),
            _ => Err(WorkbenchError::Usage(format!(
                "{MAX_ORDER_VAR} must be an integer between 1 and {MAX_ENUMERATION_ORDER}, got {v:?}"
            ))),
        },
    }
}

/// Parses `iso`, `iso-anti` or `raw` (long forms also accepted).
pub fn parse_mode(s: &str) -> Result<EnumerationMode, WorkbenchError> {
    match s {
        "iso" | "up-to-isomorphism" => Ok(EnumerationMode::UpToIsomorphism),
        "iso-anti" | "anti" | "up-to-iso-and-anti-iso" => Ok(EnumerationMode::UpToIsoAndAntiIso),
        "raw" | "raw-tables" => Ok(EnumerationMode::RawTables),
        _ => Err(WorkbenchError::Usage(format!(
            "unknown mode {s:?} (expected iso, iso-anti or raw)"
        ))),
    }
}

pub fn mode_name(mode: EnumerationMode) -> &'static str {
    match mode {
        EnumerationMode::UpToIsomorphism => "iso",
        EnumerationMode::UpToIsoAndAntiIso => "iso-anti",
        EnumerationMode::RawTables => "raw",
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationSpec {
    pub order: usize,
    pub mode: EnumerationMode,
    pub must_satisfy: Vec<Identity>,
    pub must_fail: Vec<Identity>,
}

impl EnumerationSpec {
    /// Checks `order` against [`max_order`].
    pub fn new(order: usize, mode: EnumerationMode) -> Result<Self, WorkbenchError> {
        let cap = max_order()?;
        if order == 0 || order > cap {
            return Err(WorkbenchError::Usage(format!(
                "order must be between 1 and {cap} (set {MAX_ORDER_VAR} to raise the cap up to {MAX_ENUMERATION_ORDER})"
            )));
        }
        Ok(EnumerationSpec {
            order,
            mode,
            must_satisfy: Vec::new(),
            must_fail: Vec::new(),
        })
    }

    pub fn satisfying(mut self, ids: impl IntoIterator<Item = Identity>) -> Self {
        self.must_satisfy.extend(ids);
        self
    }

    pub fn failing(mut self, ids: impl IntoIterator<Item = Identity>) -> Self {
        self.must_fail.extend(ids);
        self
    }

    fn accepts(&self, s: &CayleyTable) -> bool {
        s.satisfies_all(&self.must_satisfy)
            && self.must_fail.iter().all(|e| !s.satisfies(e).holds())
    }

    /// Runs the enumeration, in lexicographic order of tables. `workers`
    /// picks a dedicated thread pool; `None` uses the global one. The
    /// result does not depend on the number of workers.
    pub fn run(&self, workers: Option<usize>) -> Result<Vec<CayleyTable>, WorkbenchError> {
        match workers {
            None => self.run_here(),
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .map_err(|e| WorkbenchError::Usage(e.to_string()))?;
                pool.install(|| self.run_here())
            }
        }
    }

    fn run_here(&self) -> Result<Vec<CayleyTable>, WorkbenchError> {
        let n = self.order;
        let prefixes = branch_prefixes(n, self.mode, n)?;
        let branches: Vec<Vec<CayleyTable>> = prefixes
            .par_iter()
            .map(|prefix| {
                let mut out = Vec::new();
                enumerate_branch(n, self.mode, prefix, &mut |cells| {
                    let t = CayleyTable::from_cells(n, cells.to_vec())
                        .expect("enumerated tables associate");
                    if self.accepts(&t) {
                        out.push(t);
                    }
                })
                .map(|_| out)
            })
            .collect::<Result<_, _>>()?;
        Ok(branches.into_iter().flatten().collect())
    }
}

type Cache = Mutex<HashMap<(usize, EnumerationMode), Arc<Vec<CayleyTable>>>>;

/// All semigroups of orders `1..=max_order`, one per class, cached for
/// the life of the process. Not subject to the environment cap.
pub fn small_semigroups(
    max_order: usize,
    mode: EnumerationMode,
) -> Result<Arc<Vec<CayleyTable>>, WorkbenchError> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(max_order, mode)) {
        return Ok(hit.clone());
    }
    let mut all = Vec::new();
    for n in 1..=max_order {
        if n > MAX_ENUMERATION_ORDER {
            return Err(WorkbenchError::Usage(format!(
                "order {n} exceeds the hard cap {MAX_ENUMERATION_ORDER}"
            )));
        }
        let spec = EnumerationSpec {
            order: n,
            mode,
            must_satisfy: Vec::new(),
            must_fail: Vec::new(),
        };
        all.extend(spec.run_here()?);
    }
    let all = Arc::new(all);
    cache.lock().unwrap().insert((max_order, mode), all.clone());
    Ok(all)
}
