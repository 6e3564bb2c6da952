use std::f64::consts::PI;

use superharmonic::clifford::MajoranaSpinor;
use superharmonic::fields::{
    holomorphy_residual, make_trig_field, q_part, random_table, FieldKind, GeneratorBlocks,
    MapField, RandomModes, TwistedSpinorField,
};
use superharmonic::functionals::{coupling_ruled_out, TargetPairing};
use superharmonic::geometry::{DerivativeMode, FrameGeometry, TorusGrid};
use superharmonic::grassmann::{Blade, GrassmannElement, Ring};
use superharmonic::symmetry::{
    difference_quotient, first_variation, super_weyl_shift, susy_varied_fields, varform1_check,
    variation_identities, ConformalWeights, FrameChoice, SampleConfig, SuperFields,
    SusyCoefficients, TorsionMode, TransformationSpec, VariationIdentityReport,
};

use super::{Check, CheckError, CheckResult, Ctx};
use crate::record::CheckKind::{Invariance, Witness};

type G = GrassmannElement;

pub const WEYL: &[Check] = &[
    Check {
        id: "weyl.invariance",
        claim: "super action is invariant under conformal rescaling with the frozen weights",
        kind: Invariance,
        tolerance: 1e-9,
        run: weyl_invariance,
    },
    Check {
        id: "weyl.fd2-order",
        claim: "second-order difference drift shrinks by 4 per grid halving (|ratio - 4|)",
        kind: Invariance,
        tolerance: 0.5,
        run: weyl_fd2_order,
    },
];

pub const SUPER_WEYL: &[Check] = &[
    Check {
        id: "super-weyl.invariance",
        claim: "super action is invariant under gravitino shifts by gamma(v)s",
        kind: Invariance,
        tolerance: 1e-9,
        run: super_weyl_invariance,
    },
    Check {
        id: "super-weyl.q-part",
        claim: "super Weyl shifts leave the q-part of the gravitino unchanged",
        kind: Invariance,
        tolerance: 1e-14,
        run: super_weyl_q_part,
    },
    Check {
        id: "super-weyl.ruled-out-drift",
        claim: "the ruled-out coupling changes under super Weyl shifts",
        kind: Witness,
        tolerance: 1e-3,
        run: ruled_out_drift,
    },
];

pub const SUSY_BASIC: &[Check] = &[
    Check {
        id: "susy-basic.stationary",
        claim:
            "harmonic plus Dirac action is stationary under the basic variation with constant odd s",
        kind: Invariance,
        tolerance: 1e-8,
        run: basic_stationary,
    },
    Check {
        id: "susy-basic.holomorphy-residual",
        claim: "the non-holomorphic parameter is far from holomorphic",
        kind: Witness,
        tolerance: 0.1,
        run: basic_holomorphy_residual,
    },
    Check {
        id: "susy-basic.nonholomorphic",
        claim: "a non-holomorphic parameter breaks stationarity",
        kind: Witness,
        tolerance: 1e-3,
        run: basic_nonholomorphic,
    },
    Check {
        id: "susy-basic.difference-quotient",
        claim: "first variation agrees with extrapolated difference quotients",
        kind: Invariance,
        tolerance: 1e-8,
        run: basic_difference_quotient,
    },
];

pub const SUSY_FULL: &[Check] = &[
    Check {
        id: "susy-full.stationary",
        claim: "full action is stationary when the torsion is slaved to the gravitino",
        kind: Invariance,
        tolerance: 1e-8,
        run: full_stationary,
    },
    Check {
        id: "susy-full.unfactorized",
        claim: "offsetting the torsion by a closed one-form breaks stationarity",
        kind: Witness,
        tolerance: 1e-3,
        run: full_unfactorized,
    },
    Check {
        id: "susy-full.difference-quotient",
        claim: "first variation agrees with extrapolated difference quotients",
        kind: Invariance,
        tolerance: 1e-8,
        run: full_difference_quotient,
    },
];

pub const VARFORM1: &[Check] = &[
    Check {
        id: "varform1.harmonic-identity",
        claim: "variation of the energy density is bulk plus divergence, pointwise",
        kind: Invariance,
        tolerance: 1e-9,
        run: varform1_harmonic,
    },
    Check {
        id: "varform1.dirac-identity",
        claim: "variation of the symplectic Dirac density is bulk plus divergence, pointwise",
        kind: Invariance,
        tolerance: 1e-9,
        run: varform1_dirac,
    },
    Check {
        id: "varform1.fd2-order",
        claim: "second-order difference residuals shrink by 4 per grid halving (|ratio - 4|)",
        kind: Invariance,
        tolerance: 0.5,
        run: varform1_fd2_order,
    },
    Check {
        id: "varform1.witness",
        claim: "symplectic-target functional is not invariant on the frozen configuration",
        kind: Witness,
        tolerance: 1e-3,
        run: varform1_witness,
    },
    Check {
        id: "varform1.divergence-integral",
        claim: "every reported current integrates to zero divergence",
        kind: Invariance,
        tolerance: 1e-12,
        run: varform1_divergence_integral,
    },
    Check {
        id: "varform1.current-identity",
        claim: "odd-field variation equals bulk plus twice the divergence of the supercurrent",
        kind: Invariance,
        tolerance: 1e-9,
        run: current_identity,
    },
    Check {
        id: "varform1.current-divergence-integral",
        claim: "odd-field currents integrate to zero divergence",
        kind: Invariance,
        tolerance: 1e-12,
        run: current_divergence_integral,
    },
];

fn single_mode_u(g: &TorusGrid) -> Vec<f64> {
    g.sample(|[x, y]| 0.2 * (2.0 * PI * (x - y)).cos())
}

fn weyl_drift(
    ctx: &Ctx,
    g: &TorusGrid,
    offset: u64,
    frame: FrameChoice,
) -> Result<f64, CheckError> {
    let smp = ctx.sample(
        g,
        offset,
        SampleConfig {
            frame,
            ..Default::default()
        },
    )?;
    let spec = TransformationSpec::Weyl {
        u: single_mode_u(g),
        weights: ConformalWeights::default(),
    };
    Ok(spec
        .action_change(&smp.geometry, &smp.fields)?
        .total
        .max_abs())
}

fn weyl_invariance(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let flat = weyl_drift(ctx, &g, 0, FrameChoice::Flat)?;
    let conformal = weyl_drift(ctx, &g, 11, FrameChoice::Conformal { amplitude: 0.2 })?;
    ctx.measured(flat.max(conformal))
}

fn weyl_fd2_order(ctx: &Ctx) -> CheckResult {
    let fine = ctx.sizes();
    let coarse = fine.map(|n| n / 2);
    let drift = |sizes| -> Result<f64, CheckError> {
        let g = ctx.grid_with(sizes, DerivativeMode::Fd2)?;
        weyl_drift(ctx, &g, 13, FrameChoice::Flat)
    };
    let ratio = drift(coarse)? / drift(fine)?;
    ctx.measured_on((ratio - 4.0).abs(), &[coarse, fine], DerivativeMode::Fd2)
}

fn nonconstant(
    ctx: &Ctx,
    g: &TorusGrid,
    offset: u64,
) -> Result<superharmonic::symmetry::Sample, CheckError> {
    ctx.sample(
        g,
        offset,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    )
}

fn super_weyl_invariance(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = nonconstant(ctx, &g, 0)?;
    let spec = TransformationSpec::SuperWeyl { s: smp.s.clone() };
    ctx.measured(
        spec.action_change(&smp.geometry, &smp.fields)?
            .total
            .max_abs(),
    )
}

fn super_weyl_q_part(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = nonconstant(ctx, &g, 0)?;
    let shifted = super_weyl_shift(&smp.geometry, &smp.fields.chi, &smp.s)?;
    let before = q_part(&smp.geometry, &smp.fields.chi);
    let after = q_part(&smp.geometry, &shifted);
    let worst = before
        .iter()
        .zip(&after)
        .map(|(a, b)| (a.clone() - b.clone()).max_abs())
        .fold(0.0, f64::max);
    ctx.measured(worst)
}

fn ruled_out_drift(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = nonconstant(ctx, &g, 0)?;
    let shifted = super_weyl_shift(&smp.geometry, &smp.fields.chi, &smp.s)?;
    let before = coupling_ruled_out(&smp.geometry, &smp.fields.chi, &smp.fields.psi)?;
    let after = coupling_ruled_out(&smp.geometry, &shifted, &smp.fields.psi)?;
    ctx.measured((after - &before).max_abs())
}

fn zero_torsion(fields: &SuperFields<G>, n: usize) -> SuperFields<G> {
    let len = fields.a[0].len();
    SuperFields {
        a: [vec![G::zero(n); len], vec![G::zero(n); len]],
        ..fields.clone()
    }
}

/// Max over monomials of the harmonic plus Dirac first variation under the
/// basic transformation with A = 0.
fn basic_variation(ctx: &Ctx, smp: &superharmonic::symmetry::Sample) -> Result<f64, CheckError> {
    let fields = zero_torsion(&smp.fields, ctx.config.generators);
    let v = susy_varied_fields(
        &smp.geometry,
        &fields,
        &smp.s,
        SusyCoefficients::BASIC,
        TorsionMode::Independent,
    )?;
    let t = first_variation(&v)?.terms;
    Ok((t.harmonic + &t.dirac).max_abs())
}

fn basic_stationary(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let mut worst = 0.0f64;
    for offset in 0..3 {
        let smp = ctx.sample(&g, offset, SampleConfig::default())?;
        worst = worst.max(basic_variation(ctx, &smp)?);
    }
    ctx.measured(worst)
}

fn basic_holomorphy_residual(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = nonconstant(ctx, &g, 2)?;
    let flat = FrameGeometry::flat(&g, &0.0)?;
    let a0 = [vec![0.0; g.len()], vec![0.0; g.len()]];
    let mut worst = 0.0f64;
    for i in GeneratorBlocks::for_count(ctx.config.generators).s {
        let c: Vec<MajoranaSpinor<f64>> = smp
            .s
            .iter()
            .map(|v| v.map(|x| x.coefficient(Blade::generator(i))))
            .collect();
        worst = worst.max(holomorphy_residual(&flat, &c, &a0)?);
    }
    ctx.measured(worst)
}

fn basic_nonholomorphic(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = nonconstant(ctx, &g, 2)?;
    ctx.measured(basic_variation(ctx, &smp)?)
}

fn quotient_gap(
    coeffs: SusyCoefficients,
    mode: TorsionMode,
    smp: &superharmonic::symmetry::Sample,
) -> Result<f64, CheckError> {
    let v = susy_varied_fields(&smp.geometry, &smp.fields, &smp.s, coeffs, mode)?;
    let exact = first_variation(&v)?.terms;
    let quotient = difference_quotient(&v, 1e-3)?;
    Ok(exact.difference(&quotient).max_abs())
}

fn basic_difference_quotient(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = ctx.sample(&g, 9, SampleConfig::default())?;
    ctx.measured(quotient_gap(
        SusyCoefficients::BASIC,
        TorsionMode::Independent,
        &smp,
    )?)
}

fn full_stationary(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let configs = [
        (0, SampleConfig::default()),
        (
            4,
            SampleConfig {
                constant_s: false,
                ..Default::default()
            },
        ),
        (
            5,
            SampleConfig {
                frame: FrameChoice::Conformal { amplitude: 0.2 },
                ..Default::default()
            },
        ),
    ];
    let mut worst = 0.0f64;
    for (offset, c) in configs {
        let smp = ctx.sample(&g, offset, c)?;
        let v = susy_varied_fields(
            &smp.geometry,
            &smp.fields,
            &smp.s,
            SusyCoefficients::FULL,
            TorsionMode::Slaved,
        )?;
        worst = worst.max(first_variation(&v)?.total_norm);
    }
    ctx.measured(worst)
}

fn full_unfactorized(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = ctx.sample(&g, 0, SampleConfig::default())?;
    let mut fields = smp.fields.clone();
    let offset = G::scalar(0.5, ctx.config.generators);
    fields.a[0].iter_mut().for_each(|v| *v += &offset);
    let v = susy_varied_fields(
        &smp.geometry,
        &fields,
        &smp.s,
        SusyCoefficients::FULL,
        TorsionMode::Independent,
    )?;
    ctx.measured(first_variation(&v)?.total_norm)
}

fn full_difference_quotient(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = nonconstant(ctx, &g, 0)?;
    ctx.measured(quotient_gap(
        SusyCoefficients::FULL,
        TorsionMode::Slaved,
        &smp,
    )?)
}

/// Constant parameter of the planar-target checks.
const S0: MajoranaSpinor<f64> = MajoranaSpinor([0.6, -0.8]);

type PlanarFields = (FrameGeometry<f64>, MapField<f64>, TwistedSpinorField<f64>);

/// Commuting map and spinor into the symplectic plane on a flat frame.
fn planar_fields(ctx: &Ctx, g: &TorusGrid, offset: u64) -> Result<PlanarFields, CheckError> {
    use rand::SeedableRng;
    let blocks = GeneratorBlocks::for_count(8);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ctx.config.seed.wrapping_add(offset));
    let mut take = |kind, count| {
        let recipe = RandomModes {
            kind,
            count,
            kmax: 1,
            amplitude: 0.5,
            dim: 2,
            commuting: true,
        };
        make_trig_field(
            &random_table(&mut rng, g, &blocks, &recipe),
            g,
            &blocks,
            kind,
            2,
        )
    };
    let phi = take(FieldKind::Map, 6)?
        .into_map()
        .expect("map field")
        .map(|v| v.body());
    let psi = take(FieldKind::Spinor, 8)?
        .into_spinor()
        .expect("spinor field")
        .map(|v| v.body());
    Ok((FrameGeometry::flat(g, &0.0)?, phi, psi))
}

fn varform1_report(
    ctx: &Ctx,
    g: &TorusGrid,
    offset: u64,
) -> Result<VariationIdentityReport<f64>, CheckError> {
    let (geom, phi, psi) = planar_fields(ctx, g, offset)?;
    Ok(varform1_check(&geom, &phi, &psi, S0)?)
}

fn varform1_reports(ctx: &Ctx) -> Result<Vec<VariationIdentityReport<f64>>, CheckError> {
    let g = ctx.grid()?;
    [30, 31]
        .into_iter()
        .map(|o| varform1_report(ctx, &g, o))
        .collect()
}

fn varform1_harmonic(ctx: &Ctx) -> CheckResult {
    let worst = varform1_reports(ctx)?
        .iter()
        .map(|r| r.harmonic_residual)
        .fold(0.0, f64::max);
    ctx.measured(worst)
}

fn varform1_dirac(ctx: &Ctx) -> CheckResult {
    let worst = varform1_reports(ctx)?
        .iter()
        .map(|r| r.dirac_residual)
        .fold(0.0, f64::max);
    ctx.measured(worst)
}

fn varform1_divergence_integral(ctx: &Ctx) -> CheckResult {
    let worst = varform1_reports(ctx)?
        .iter()
        .map(|r| r.divergence_integral)
        .fold(0.0, f64::max);
    ctx.measured(worst)
}

fn varform1_witness(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    ctx.measured(varform1_report(ctx, &g, 30)?.total_variation.abs())
}

fn varform1_fd2_order(ctx: &Ctx) -> CheckResult {
    let coarse = ctx.sizes();
    let fine = coarse.map(|n| 2 * n);
    let residual = |sizes| -> Result<f64, CheckError> {
        let g = ctx.grid_with(sizes, DerivativeMode::Fd2)?;
        let r = varform1_report(ctx, &g, 34)?;
        Ok(r.harmonic_residual.max(r.dirac_residual))
    };
    let ratio = residual(coarse)? / residual(fine)?;
    ctx.measured_on((ratio - 4.0).abs(), &[coarse, fine], DerivativeMode::Fd2)
}

fn odd_currents(ctx: &Ctx) -> Result<VariationIdentityReport<G>, CheckError> {
    let g = ctx.grid()?;
    let smp = ctx.sample(&g, 39, SampleConfig::default())?;
    let f = &smp.fields;
    Ok(variation_identities(
        TargetPairing::Euclidean,
        &smp.geometry,
        &f.phi,
        &f.psi,
        &smp.s,
    )?)
}

fn current_identity(ctx: &Ctx) -> CheckResult {
    ctx.measured(odd_currents(ctx)?.susy_current_residual)
}

fn current_divergence_integral(ctx: &Ctx) -> CheckResult {
    ctx.measured(odd_currents(ctx)?.divergence_integral)
}
