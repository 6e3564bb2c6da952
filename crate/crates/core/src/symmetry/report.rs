use std::hash::Hasher;

use fnv::FnvHasher;

use super::{SuperFields, SymmetryError, VariedFields};
use crate::clifford::MajoranaSpinor;
use crate::fields::{GravitinoField, MapField, TwistedSpinorField};
use crate::functionals::{super_action, ActionBreakdown};
use crate::geometry::FrameGeometry;
use crate::grassmann::{Dual, GrassmannElement, RealLinear, Ring};

/// First variation of an action, term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct SusyVariationReport {
    pub terms: ActionBreakdown<GrassmannElement>,
    /// Largest absolute coefficient of the total variation.
    pub total_norm: f64,
    /// Largest absolute coefficient of each entry, in breakdown order.
    pub term_norms: [f64; 7],
    pub digest: String,
}

impl SusyVariationReport {
    pub fn new(terms: ActionBreakdown<GrassmannElement>, digest: String) -> Self {
        let term_norms = terms.entries().map(|(_, v)| v.max_abs());
        Self {
            total_norm: terms.total.max_abs(),
            term_norms,
            terms,
            digest,
        }
    }
}

/// Stable 64-bit FNV-1a digest of the grid shape and every coefficient of
/// the frame, the fields and any extra spinors.
pub fn config_digest<R: RealLinear>(
    geom: &FrameGeometry<R>,
    fields: &SuperFields<R>,
    extra: &[MajoranaSpinor<R>],
) -> String {
    let mut h = FnvHasher::default();
    let mut feed = |v: &R| {
        v.for_each_coeff(|k, c| {
            h.write_u32(k);
            h.write_u64(c.to_bits());
        });
        h.write_u8(0xff);
    };
    let [n1, n2] = geom.grid.sizes();
    feed(&geom.density[0].real_like(n1 as f64));
    feed(&geom.density[0].real_like(n2 as f64));
    geom.frame.e.iter().flatten().flatten().for_each(&mut feed);
    fields.phi.comps.iter().flatten().for_each(&mut feed);
    fields
        .psi
        .comps
        .iter()
        .flatten()
        .flat_map(|s| &s.0)
        .for_each(&mut feed);
    fields
        .chi
        .coord
        .iter()
        .flatten()
        .flat_map(|s| &s.0)
        .for_each(&mut feed);
    fields.a.iter().flatten().for_each(&mut feed);
    extra.iter().flat_map(|v| &v.0).for_each(&mut feed);
    format!("{:016x}", h.finish())
}

/// Ordinary fields at value + t·variation.
pub fn deformed(
    varied: &VariedFields,
    t: f64,
) -> Result<
    (
        FrameGeometry<GrassmannElement>,
        SuperFields<GrassmannElement>,
    ),
    SymmetryError,
> {
    let at = |d: &Dual<GrassmannElement>| d.value.clone() + &d.variation.scale(t);
    let f = &varied.fields;
    let fields = SuperFields {
        phi: MapField {
            comps: f
                .phi
                .comps
                .iter()
                .map(|c| c.iter().map(at).collect())
                .collect(),
        },
        psi: TwistedSpinorField {
            comps: f
                .psi
                .comps
                .iter()
                .map(|c| c.iter().map(|s| s.map(at)).collect())
                .collect(),
        },
        chi: GravitinoField {
            coord: [0, 1].map(|m| f.chi.coord[m].iter().map(|s| s.map(at)).collect()),
        },
        a: [0, 1].map(|m| f.a[m].iter().map(at).collect()),
    };
    let geom = FrameGeometry::new(&varied.geometry.grid, varied.geometry.frame.map(at))?;
    Ok((geom, fields))
}

/// Richardson-extrapolated central difference of the super action along the
/// deformation: (4·D(h/2) − D(h))/3 with D(h) = (S(h) − S(−h))/2h.
pub fn difference_quotient(
    varied: &VariedFields,
    h: f64,
) -> Result<ActionBreakdown<GrassmannElement>, SymmetryError> {
    let action = |t: f64| -> Result<ActionBreakdown<GrassmannElement>, SymmetryError> {
        let (geom, f) = deformed(varied, t)?;
        Ok(super_action(&geom, &f.phi, &f.psi, &f.chi, &f.a)?)
    };
    let central = |h: f64| -> Result<ActionBreakdown<GrassmannElement>, SymmetryError> {
        Ok(action(h)?
            .difference(&action(-h)?)
            .map(|v| v.scale(0.5 / h)))
    };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    Ok(fine
        .map(|v| v.scale(4.0 / 3.0))
        .difference(&coarse.map(|v| v.scale(1.0 / 3.0))))
}
