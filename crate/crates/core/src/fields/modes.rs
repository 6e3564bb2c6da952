//! Mode tables: fields as finite sums of `amplitude·cos(2π(k₁x¹/L₁ + k₂x²/L₂) + phase)`
//! times a generator (or the unit, for commuting data).

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::ops::Range;
use std::str::FromStr;

use super::{FieldError, GravitinoField, MapField, SpinorField, TwistedSpinorField};
use crate::clifford::MajoranaSpinor;
use crate::geometry::{OneForm, SpinPhase, TorusGrid};
use crate::grassmann::{GrassmannElement, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// φ; component = target index.
    Map,
    /// ψ; component = 2·(target index) + spinor index.
    Spinor,
    /// χ; component = 2·(coordinate index) + spinor index.
    Gravitino,
    /// Transformation parameter 𝔰; component = spinor index.
    Parameter,
    /// Torsion one-form A; component = coordinate index.
    Torsion,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Map => "map",
            Self::Spinor => "spinor",
            Self::Gravitino => "gravitino",
            Self::Parameter => "parameter",
            Self::Torsion => "torsion",
        }
    }

    fn is_spinorial(self) -> bool {
        matches!(self, Self::Spinor | Self::Gravitino | Self::Parameter)
    }

    fn components(self, dim: usize) -> usize {
        match self {
            Self::Map => dim,
            Self::Spinor => 2 * dim,
            Self::Gravitino => 4,
            Self::Parameter | Self::Torsion => 2,
        }
    }
}

impl FromStr for FieldKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [
            Self::Map,
            Self::Spinor,
            Self::Gravitino,
            Self::Parameter,
            Self::Torsion,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| format!("unknown field kind `{s}`"))
    }
}

/// Disjoint generator ranges for ψ, χ and 𝔰.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorBlocks {
    pub total: usize,
    pub psi: Range<usize>,
    pub chi: Range<usize>,
    pub s: Range<usize>,
}

impl GeneratorBlocks {
    /// 𝔰 takes the last two generators (one if fewer than six), the rest is
    /// split between ψ and χ with ψ getting the larger half.
    pub fn for_count(total: usize) -> Self {
        let s_len = if total >= 6 { 2 } else { 1.min(total) };
        let rest = total - s_len;
        let psi_len = rest.div_ceil(2);
        Self {
            total,
            psi: 0..psi_len,
            chi: psi_len..rest,
            s: rest..total,
        }
    }

    pub fn block(&self, kind: FieldKind) -> Range<usize> {
        match kind {
            FieldKind::Spinor => self.psi.clone(),
            FieldKind::Gravitino => self.chi.clone(),
            FieldKind::Parameter => self.s.clone(),
            FieldKind::Map | FieldKind::Torsion => 0..0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeRecord {
    pub kind: FieldKind,
    pub k: [f64; 2],
    pub amplitude: f64,
    /// `None` for a commuting (body) contribution.
    pub generator: Option<usize>,
    pub component: usize,
    pub phase: f64,
}

impl ModeRecord {
    pub fn value_at(&self, grid: &TorusGrid, x: [f64; 2]) -> f64 {
        let [l1, l2] = grid.periods();
        self.amplitude
            * (2.0 * PI * (self.k[0] * x[0] / l1 + self.k[1] * x[1] / l2) + self.phase).cos()
    }
}

impl fmt::Display for ModeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let generator = self.generator.map_or("-".to_string(), |g| g.to_string());
        write!(
            f,
            "{} {:?} {:?} {:?} {} {}",
            self.kind.name(),
            self.k[0],
            self.k[1],
            self.amplitude,
            generator,
            self.component
        )?;
        if self.phase != 0.0 {
            write!(f, " {:?}", self.phase)?;
        }
        Ok(())
    }
}

/// Ordered list of mode records; a single table may describe several fields.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModeTable {
    pub records: Vec<ModeRecord>,
}

impl ModeTable {
    pub fn new(records: Vec<ModeRecord>) -> Self {
        Self { records }
    }

    pub fn of_kind(&self, kind: FieldKind) -> impl Iterator<Item = &ModeRecord> {
        self.records.iter().filter(move |r| r.kind == kind)
    }

    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let mut records = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| FieldError::Parse {
                line: n + 1,
                message,
            };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 6 && f.len() != 7 {
                return Err(err(format!("expected 6 or 7 fields, found {}", f.len())));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| err(format!("`{s}`: {e}")));
            let kind = f[0].parse::<FieldKind>().map_err(&err)?;
            let generator = match f[4] {
                "-" => None,
                g => Some(
                    g.parse::<usize>()
                        .map_err(|e| err(format!("generator `{g}`: {e}")))?,
                ),
            };
            let component = f[5]
                .parse::<usize>()
                .map_err(|e| err(format!("component `{}`: {e}", f[5])))?;
            let phase = if f.len() == 7 { num(f[6])? } else { 0.0 };
            records.push(ModeRecord {
                kind,
                k: [num(f[1])?, num(f[2])?],
                amplitude: num(f[3])?,
                generator,
                component,
                phase,
            });
        }
        Ok(Self { records })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# kind k1 k2 amplitude generator component [phase]\n");
        for r in &self.records {
            let _ = writeln!(out, "{r}");
        }
        out
    }
}

/// Output of [`make_trig_field`], tagged by kind.
#[derive(Debug, Clone, PartialEq)]
pub enum TrigField {
    Map(MapField<GrassmannElement>),
    Spinor(TwistedSpinorField<GrassmannElement>),
    Gravitino(GravitinoField<GrassmannElement>),
    Parameter(SpinorField<GrassmannElement>),
    Torsion(OneForm<GrassmannElement>),
}

fn check_record(
    r: &ModeRecord,
    grid: &TorusGrid,
    blocks: &GeneratorBlocks,
    dim: usize,
) -> Result<(), FieldError> {
    if r.component >= r.kind.components(dim) {
        return Err(FieldError::InvalidMode(format!(
            "component {} out of range for a {} field",
            r.component,
            r.kind.name()
        )));
    }
    if let Some(g) = r.generator {
        if !blocks.block(r.kind).contains(&g) {
            return Err(FieldError::GeneratorBudgetExceeded {
                generator: g,
                kind: r.kind.name(),
            });
        }
    }
    for axis in 0..2 {
        let k = r.k[axis];
        let half = r.kind.is_spinorial() && grid.spin()[axis] == SpinPhase::Antiperiodic;
        let offset = if half { 0.5 } else { 0.0 };
        if (k - offset).fract() != 0.0 {
            return Err(FieldError::InvalidMode(format!(
                "wavenumber {k} along axis {axis} does not match the boundary condition"
            )));
        }
        let n = grid.sizes()[axis] as f64;
        let limit = if half { n / 2.0 - 1.5 } else { n / 2.0 - 1.0 };
        if k.abs() > limit {
            return Err(FieldError::AliasingDetected {
                axis,
                wavenumber: k,
                limit,
            });
        }
    }
    Ok(())
}

/// Evaluate all records of `kind` on the grid. Fields live in the algebra
/// with `blocks.total` generators.
pub fn make_trig_field(
    table: &ModeTable,
    grid: &TorusGrid,
    blocks: &GeneratorBlocks,
    kind: FieldKind,
    dim: usize,
) -> Result<TrigField, FieldError> {
    let zero = GrassmannElement::zero(blocks.total);
    let mut comps = vec![vec![zero.clone(); grid.len()]; kind.components(dim)];
    for r in table.of_kind(kind) {
        check_record(r, grid, blocks, dim)?;
        let unit = match r.generator {
            None => zero.one_like(),
            Some(g) => GrassmannElement::generator(g, blocks.total)
                .map_err(|e| FieldError::InvalidMode(e.to_string()))?,
        };
        for (idx, slot) in comps[r.component].iter_mut().enumerate() {
            let v = r.value_at(grid, grid.point(idx));
            if v != 0.0 {
                *slot += &unit.scale(v);
            }
        }
    }
    let spinors =
        |a: &[GrassmannElement], b: &[GrassmannElement]| -> SpinorField<GrassmannElement> {
            a.iter()
                .zip(b)
                .map(|(x, y)| MajoranaSpinor([x.clone(), y.clone()]))
                .collect()
        };
    Ok(match kind {
        FieldKind::Map => TrigField::Map(MapField { comps }),
        FieldKind::Spinor => TrigField::Spinor(TwistedSpinorField {
            comps: comps.chunks(2).map(|c| spinors(&c[0], &c[1])).collect(),
        }),
        FieldKind::Gravitino => TrigField::Gravitino(GravitinoField {
            coord: [spinors(&comps[0], &comps[1]), spinors(&comps[2], &comps[3])],
        }),
        FieldKind::Parameter => TrigField::Parameter(spinors(&comps[0], &comps[1])),
        FieldKind::Torsion => {
            let mut it = comps.into_iter();
            let a1 = it.next().expect("two components");
            let a2 = it.next().expect("two components");
            TrigField::Torsion([a1, a2])
        }
    })
}

impl TrigField {
    pub fn into_map(self) -> Option<MapField<GrassmannElement>> {
        match self {
            Self::Map(f) => Some(f),
            _ => None,
        }
    }
    pub fn into_spinor(self) -> Option<TwistedSpinorField<GrassmannElement>> {
        match self {
            Self::Spinor(f) => Some(f),
            _ => None,
        }
    }
    pub fn into_gravitino(self) -> Option<GravitinoField<GrassmannElement>> {
        match self {
            Self::Gravitino(f) => Some(f),
            _ => None,
        }
    }
    pub fn into_parameter(self) -> Option<SpinorField<GrassmannElement>> {
        match self {
            Self::Parameter(f) => Some(f),
            _ => None,
        }
    }
    pub fn into_torsion(self) -> Option<OneForm<GrassmannElement>> {
        match self {
            Self::Torsion(f) => Some(f),
            _ => None,
        }
    }
}

/// Recipe for a random band-limited mode table.
#[derive(Debug, Clone)]
pub struct RandomModes {
    pub kind: FieldKind,
    pub count: usize,
    /// Largest |k| per axis (integer part for antiperiodic spinor axes).
    pub kmax: i32,
    pub amplitude: f64,
    pub dim: usize,
    /// Draw commuting (body) records instead of generators from the block.
    pub commuting: bool,
}

pub fn random_table<G: rand::Rng>(
    rng: &mut G,
    grid: &TorusGrid,
    blocks: &GeneratorBlocks,
    recipe: &RandomModes,
) -> ModeTable {
    let block = blocks.block(recipe.kind);
    let mut records = Vec::with_capacity(recipe.count);
    for _ in 0..recipe.count {
        let k = [0, 1].map(|axis| {
            let half = recipe.kind.is_spinorial() && grid.spin()[axis] == SpinPhase::Antiperiodic;
            if half {
                rng.gen_range(-recipe.kmax..recipe.kmax.max(1)) as f64 + 0.5
            } else {
                rng.gen_range(-recipe.kmax..=recipe.kmax) as f64
            }
        });
        let generator = if recipe.commuting || block.is_empty() {
            None
        } else {
            Some(rng.gen_range(block.clone()))
        };
        records.push(ModeRecord {
            kind: recipe.kind,
            k,
            amplitude: rng.gen_range(-recipe.amplitude..=recipe.amplitude),
            generator,
            component: rng.gen_range(0..recipe.kind.components(recipe.dim)),
            phase: rng.gen_range(0.0..2.0 * PI),
        });
    }
    ModeTable { records }
}
