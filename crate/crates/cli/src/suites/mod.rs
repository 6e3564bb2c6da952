//! Named verification suites. Each suite is a fixed list of checks; a check
//! measures one number and compares it with its tolerance.

mod algebra;
mod fields;
mod symmetry;

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superharmonic::fields::FieldError;
use superharmonic::functionals::FunctionalError;
use superharmonic::geometry::{DerivativeMode, GeometryError, TorusGrid};
use superharmonic::grassmann::GrassmannError;
use superharmonic::symmetry::{Sample, SampleConfig, SymmetryError};
use thiserror::Error;

use crate::config::SuiteConfig;
use crate::record::{CheckKind, CheckRecord};

/// Environment variable holding the worker thread count for `all`.
pub const THREADS_ENV: &str = "VERIFY_THREADS";

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Clifford,
    Geometry,
    Dirac,
    Torsion,
    Couplings,
    Weyl,
    SuperWeyl,
    SusyBasic,
    SusyFull,
    Varform1,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Algebra,
        Suite::Clifford,
        Suite::Geometry,
        Suite::Dirac,
        Suite::Torsion,
        Suite::Couplings,
        Suite::Weyl,
        Suite::SuperWeyl,
        Suite::SusyBasic,
        Suite::SusyFull,
        Suite::Varform1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Clifford => "clifford",
            Suite::Geometry => "geometry",
            Suite::Dirac => "dirac",
            Suite::Torsion => "torsion",
            Suite::Couplings => "couplings",
            Suite::Weyl => "weyl",
            Suite::SuperWeyl => "super-weyl",
            Suite::SusyBasic => "susy-basic",
            Suite::SusyFull => "susy-full",
            Suite::Varform1 => "varform1",
        }
    }

    pub fn checks(self) -> &'static [Check] {
        match self {
            Suite::Algebra => algebra::ALGEBRA,
            Suite::Clifford => algebra::CLIFFORD,
            Suite::Geometry => fields::GEOMETRY,
            Suite::Dirac => fields::DIRAC,
            Suite::Torsion => fields::TORSION,
            Suite::Couplings => fields::COUPLINGS,
            Suite::Weyl => symmetry::WEYL,
            Suite::SuperWeyl => symmetry::SUPER_WEYL,
            Suite::SusyBasic => symmetry::SUSY_BASIC,
            Suite::SusyFull => symmetry::SUSY_FULL,
            Suite::Varform1 => symmetry::VARFORM1,
        }
    }
}

/// A suite selection on the command line: one suite or `all`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection(pub Vec<Suite>);

impl FromStr for Selection {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        if s == "all" {
            return Ok(Self(Suite::ALL.to_vec()));
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|x| Self(vec![*x]))
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Value measured by a check and where it was measured.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub value: f64,
    pub grid: String,
    pub mode: String,
}

pub type CheckResult = Result<Measurement, CheckError>;

pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    pub kind: CheckKind,
    pub tolerance: f64,
    pub run: fn(&Ctx) -> CheckResult,
}

/// Per-run context handed to each check.
pub struct Ctx<'a> {
    pub config: &'a SuiteConfig,
}

impl Ctx<'_> {
    pub fn sizes(&self) -> [usize; 2] {
        self.config.grid.0
    }

    pub fn grid(&self) -> Result<TorusGrid, CheckError> {
        self.grid_with(self.sizes(), self.config.mode)
    }

    pub fn grid_with(
        &self,
        sizes: [usize; 2],
        mode: DerivativeMode,
    ) -> Result<TorusGrid, CheckError> {
        Ok(TorusGrid::new(sizes, [1.0, 1.0], mode)?)
    }

    /// Random stream private to one check.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(stream);
        rng
    }

    /// Sampled configuration with seed offset `offset` from the base seed.
    pub fn sample(
        &self,
        grid: &TorusGrid,
        offset: u64,
        base: SampleConfig,
    ) -> Result<Sample, CheckError> {
        let c = SampleConfig {
            seed: self.config.seed.wrapping_add(offset),
            generators: self.config.generators,
            ..base
        };
        Ok(c.build(grid)?)
    }

    pub fn measured(&self, value: f64) -> CheckResult {
        Ok(Measurement {
            value,
            grid: self.config.grid.to_string(),
            mode: self.config.mode.name().to_string(),
        })
    }

    /// Measurement that needs no grid.
    pub fn pointwise(&self, value: f64) -> CheckResult {
        Ok(Measurement {
            value,
            grid: "-".into(),
            mode: "-".into(),
        })
    }

    pub fn measured_on(
        &self,
        value: f64,
        grids: &[[usize; 2]],
        mode: DerivativeMode,
    ) -> CheckResult {
        let grid = grids
            .iter()
            .map(|g| format!("{}x{}", g[0], g[1]))
            .collect::<Vec<_>>()
            .join("/");
        Ok(Measurement {
            value,
            grid,
            mode: mode.name().to_string(),
        })
    }
}

fn run_check(check: &Check, ctx: &Ctx) -> CheckRecord {
    let tolerance = ctx.config.tolerance(check.id, check.tolerance);
    let start = Instant::now();
    let outcome = (check.run)(ctx);
    let wall_ms = ctx
        .config
        .timings
        .then(|| start.elapsed().as_secs_f64() * 1e3);
    let m = outcome.unwrap_or_else(|e| {
        eprintln!("{}: {e}", check.id);
        Measurement {
            value: f64::NAN,
            grid: ctx.config.grid.to_string(),
            mode: ctx.config.mode.name().to_string(),
        }
    });
    CheckRecord {
        id: check.id.to_string(),
        claim: check.claim.to_string(),
        mode: m.mode,
        grid: m.grid,
        measured: m.value,
        tolerance,
        kind: check.kind,
        pass: check.kind.passes(m.value, tolerance),
        wall_ms,
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Vec<CheckRecord> {
    let ctx = Ctx { config };
    suite.checks().iter().map(|c| run_check(c, &ctx)).collect()
}

/// Every check id across all suites, in report order.
pub fn all_check_ids() -> Vec<&'static str> {
    Suite::ALL
        .iter()
        .flat_map(|s| s.checks().iter().map(|c| c.id))
        .collect()
}

fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Run the selected suites on worker threads; records come back in suite
/// order regardless of completion order.
pub fn run_selection(selection: &Selection, config: &SuiteConfig) -> Vec<CheckRecord> {
    let suites = &selection.0;
    let slots: Vec<Mutex<Vec<CheckRecord>>> =
        suites.iter().map(|_| Mutex::new(Vec::new())).collect();
    let next = AtomicUsize::new(0);
    let workers = thread_count().min(suites.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(suite) = suites.get(i) else { break };
                let records = run_suite(*suite, config);
                *slots[i].lock().expect("suite slot") = records;
            });
        }
    });
    slots
        .into_iter()
        .flat_map(|m| m.into_inner().expect("suite slot"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn selection_names() {
        assert_eq!(
            "susy-full".parse::<Selection>().unwrap().0,
            vec![Suite::SusyFull]
        );
        assert_eq!("all".parse::<Selection>().unwrap().0.len(), 11);
        assert_eq!(
            "bogus".parse::<Selection>(),
            Err(UnknownSuite("bogus".into()))
        );
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Selection>().unwrap().0, vec![s]);
        }
    }

    #[test]
    fn check_ids_are_unique_and_prefixed() {
        let ids = all_check_ids();
        assert_eq!(ids.iter().collect::<HashSet<_>>().len(), ids.len());
        for s in Suite::ALL {
            assert!(!s.checks().is_empty());
            for c in s.checks() {
                assert!(c.id.starts_with(&format!("{}.", s.name())), "{}", c.id);
            }
        }
    }
}
