use serde_json::{Map, Value};
use thiserror::Error;

use crate::grassmann::{Blade, GrassmannElement, Ring};

/// JSON keys of the breakdown entries, in serialization order.
pub const TERM_NAMES: [&str; 7] = [
    "harmonic",
    "dirac",
    "quartic_coupling",
    "mixed_coupling",
    "f_squared",
    "scal_term",
    "total",
];

/// Per-term values of an action functional.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionBreakdown<R> {
    pub harmonic: R,
    pub dirac: R,
    pub quartic_coupling: R,
    pub mixed_coupling: R,
    pub f_squared: R,
    pub scal_term: R,
    pub total: R,
}

impl<R: Ring> ActionBreakdown<R> {
    /// Builds the breakdown; the total is the plain sum of the entries.
    pub fn new(
        harmonic: R,
        dirac: R,
        quartic_coupling: R,
        mixed_coupling: R,
        f_squared: R,
        scal_term: R,
    ) -> Self {
        let total = harmonic.clone()
            + &dirac
            + &quartic_coupling
            + &mixed_coupling
            + &f_squared
            + &scal_term;
        Self {
            harmonic,
            dirac,
            quartic_coupling,
            mixed_coupling,
            f_squared,
            scal_term,
            total,
        }
    }

    pub fn zero_like(template: &R) -> Self {
        let z = template.zero_like();
        Self::new(z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z)
    }

    /// Apply `f` to every entry, including the stored total.
    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> ActionBreakdown<S> {
        ActionBreakdown {
            harmonic: f(&self.harmonic),
            dirac: f(&self.dirac),
            quartic_coupling: f(&self.quartic_coupling),
            mixed_coupling: f(&self.mixed_coupling),
            f_squared: f(&self.f_squared),
            scal_term: f(&self.scal_term),
            total: f(&self.total),
        }
    }

    /// Entries paired with their names, in [`TERM_NAMES`] order.
    pub fn entries(&self) -> [(&'static str, &R); 7] {
        [
            (TERM_NAMES[0], &self.harmonic),
            (TERM_NAMES[1], &self.dirac),
            (TERM_NAMES[2], &self.quartic_coupling),
            (TERM_NAMES[3], &self.mixed_coupling),
            (TERM_NAMES[4], &self.f_squared),
            (TERM_NAMES[5], &self.scal_term),
            (TERM_NAMES[6], &self.total),
        ]
    }

    /// Entry-wise difference, total included.
    pub fn difference(&self, other: &Self) -> Self {
        ActionBreakdown {
            harmonic: self.harmonic.clone() - &other.harmonic,
            dirac: self.dirac.clone() - &other.dirac,
            quartic_coupling: self.quartic_coupling.clone() - &other.quartic_coupling,
            mixed_coupling: self.mixed_coupling.clone() - &other.mixed_coupling,
            f_squared: self.f_squared.clone() - &other.f_squared,
            scal_term: self.scal_term.clone() - &other.scal_term,
            total: self.total.clone() - &other.total,
        }
    }

    /// Largest absolute coefficient over all entries.
    pub fn max_abs(&self) -> f64 {
        self.entries()
            .iter()
            .map(|(_, v)| v.max_abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BreakdownParseError {
    #[error("expected a JSON object for {0}")]
    NotAnObject(String),
    #[error("missing term `{0}`")]
    MissingTerm(&'static str),
    #[error("bad monomial key `{0}`")]
    BadMonomial(String),
    #[error("coefficient of {0} is not a number")]
    BadCoefficient(String),
}

fn monomial_key(b: Blade) -> String {
    serde_json::to_string(&b.indices()).unwrap_or_default()
}

fn element_json(x: &GrassmannElement<f64>) -> Value {
    let mut m = Map::new();
    for (b, c) in x.terms() {
        m.insert(monomial_key(*b), Value::from(*c));
    }
    Value::Object(m)
}

fn element_from_json(
    v: &Value,
    term: &str,
    generators: usize,
) -> Result<GrassmannElement<f64>, BreakdownParseError> {
    let obj = v
        .as_object()
        .ok_or_else(|| BreakdownParseError::NotAnObject(term.to_string()))?;
    let mut terms = Vec::with_capacity(obj.len());
    for (key, c) in obj {
        let idx: Vec<usize> =
            serde_json::from_str(key).map_err(|_| BreakdownParseError::BadMonomial(key.clone()))?;
        let sorted = idx.windows(2).all(|w| w[0] < w[1]);
        if !sorted || idx.iter().any(|&i| i >= generators) {
            return Err(BreakdownParseError::BadMonomial(key.clone()));
        }
        let mask = idx.iter().fold(0u16, |m, &i| m | (1 << i));
        let c = c
            .as_f64()
            .ok_or_else(|| BreakdownParseError::BadCoefficient(key.clone()))?;
        terms.push((Blade(mask), c));
    }
    GrassmannElement::from_terms(generators, terms)
        .map_err(|_| BreakdownParseError::BadMonomial(term.to_string()))
}

impl ActionBreakdown<GrassmannElement<f64>> {
    /// `{term: {monomial: coefficient}}`, where a monomial key is the JSON
    /// list of its sorted generator indices (`"[]"` for the body).
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (name, v) in self.entries() {
            m.insert(name.to_string(), element_json(v));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value, generators: usize) -> Result<Self, BreakdownParseError> {
        let obj = v
            .as_object()
            .ok_or_else(|| BreakdownParseError::NotAnObject("breakdown".into()))?;
        let get = |i: usize| {
            let name = TERM_NAMES[i];
            obj.get(name)
                .ok_or(BreakdownParseError::MissingTerm(name))
                .and_then(|t| element_from_json(t, name, generators))
        };
        Ok(Self {
            harmonic: get(0)?,
            dirac: get(1)?,
            quartic_coupling: get(2)?,
            mixed_coupling: get(3)?,
            f_squared: get(4)?,
            scal_term: get(5)?,
            total: get(6)?,
        })
    }
}
