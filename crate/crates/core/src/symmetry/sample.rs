use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{SuperFields, SymmetryError};
use crate::fields::{
    make_trig_field, random_table, torsion_from_gravitino, FieldError, FieldKind, GeneratorBlocks,
    RandomModes, SpinorField, TrigField,
};
use crate::geometry::{FrameField, FrameGeometry, TorusGrid};
use crate::grassmann::GrassmannElement;

type G = GrassmannElement;

/// Frame of a sampled configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrameChoice {
    Flat,
    /// e = e^{−u}·id with u = amplitude·sin 2π(x + 2y).
    Conformal {
        amplitude: f64,
    },
}

/// Seeded random band-limited configuration: fields drawn from the
/// generator blocks, A slaved to χ, and a variation parameter 𝔰.
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub seed: u64,
    pub generators: usize,
    pub target_dim: usize,
    pub frame: FrameChoice,
    /// Constant 𝔰 if true, otherwise a few |k| ≤ 1 modes.
    pub constant_s: bool,
    pub amplitude: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            generators: 8,
            target_dim: 2,
            frame: FrameChoice::Flat,
            constant_s: true,
            amplitude: 0.5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub geometry: FrameGeometry<G>,
    pub fields: SuperFields<G>,
    pub s: SpinorField<G>,
}

impl SampleConfig {
    pub fn build(&self, grid: &TorusGrid) -> Result<Sample, SymmetryError> {
        let blocks = GeneratorBlocks::for_count(self.generators);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let z = G::zero(self.generators);
        let frame = match self.frame {
            FrameChoice::Flat => FrameField::flat(grid, &z),
            FrameChoice::Conformal { amplitude } => {
                let u = grid.sample(|[x, y]| {
                    amplitude * (2.0 * std::f64::consts::PI * (x + 2.0 * y)).sin()
                });
                FrameField::conformal(grid, &u, &z)
            }
        };
        let geometry = FrameGeometry::new(grid, frame)?;
        let amp = self.amplitude;
        let d = self.target_dim;
        let mut take = |kind, dim, commuting, kmax, count| -> Result<TrigField, FieldError> {
            let recipe = RandomModes {
                kind,
                count,
                kmax,
                amplitude: amp,
                dim,
                commuting,
            };
            make_trig_field(
                &random_table(&mut rng, grid, &blocks, &recipe),
                grid,
                &blocks,
                kind,
                dim,
            )
        };
        let phi = take(FieldKind::Map, d, true, 1, 8)?.into_map();
        let psi = take(FieldKind::Spinor, d, false, 1, 12)?.into_spinor();
        let chi = take(FieldKind::Gravitino, 1, false, 1, 12)?.into_gravitino();
        let s = if self.constant_s {
            take(FieldKind::Parameter, 1, false, 0, 4)?
        } else {
            take(FieldKind::Parameter, 1, false, 1, 6)?
        }
        .into_parameter();
        let (Some(phi), Some(psi), Some(chi), Some(s)) = (phi, psi, chi, s) else {
            unreachable!("make_trig_field returns the requested kind")
        };
        let a = torsion_from_gravitino(&geometry, &chi);
        Ok(Sample {
            geometry,
            fields: SuperFields { phi, psi, chi, a },
            s,
        })
    }
}
