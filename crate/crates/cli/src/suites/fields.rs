use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use superharmonic::clifford::{apply, omega, project_q, theta_insert, MajoranaSpinor, GAMMA};
use superharmonic::fields::{
    factorize_torsion, make_trig_field, pairing_recovery, random_table, FieldKind, GeneratorBlocks,
    GravitinoField, RandomModes, TrigField,
};
use superharmonic::functionals::{
    coupling_mixed, coupling_quartic, dirac_action, dirac_cross_action, quartic_density,
    ruled_out_coefficient, super_action,
};
use superharmonic::geometry::{
    cartan_residual, divergence, gradient, integrate, Bundle, DerivativeMode, FrameField,
    FrameGeometry, OneForm, TorusGrid,
};
use superharmonic::grassmann::{GrassmannElement, RealLinear, Ring};
use superharmonic::symmetry::{FrameChoice, SampleConfig};

use super::{Check, CheckError, CheckResult, Ctx};
use crate::record::CheckKind::{Invariance, Witness};

type G = GrassmannElement;

pub const GEOMETRY: &[Check] = &[
    Check {
        id: "geometry.cartan",
        claim: "spin connection of a rotating conformal frame solves the torsion-free structure equation",
        kind: Invariance,
        tolerance: 1e-10,
        run: cartan,
    },
    Check {
        id: "geometry.divergence-integral",
        claim: "integral of a divergence vanishes on the torus",
        kind: Invariance,
        tolerance: 1e-12,
        run: divergence_integral,
    },
    Check {
        id: "geometry.spectral-exactness",
        claim: "spectral derivative is exact on band-limited modes",
        kind: Invariance,
        tolerance: 1e-10,
        run: spectral_exactness,
    },
    Check {
        id: "geometry.fd2-order",
        claim: "second-order differences lose a factor 4 per grid halving (|ratio - 4|)",
        kind: Invariance,
        tolerance: 0.5,
        run: fd2_order,
    },
];

pub const DIRAC: &[Check] = &[
    Check {
        id: "dirac.majorana-vanishing",
        claim: "Dirac action vanishes on commuting Majorana spinors (100 fields)",
        kind: Invariance,
        tolerance: 1e-12,
        run: majorana_vanishing,
    },
    Check {
        id: "dirac.connection-independence",
        claim: "Dirac action of odd spinors does not depend on the torsion (20 one-forms)",
        kind: Invariance,
        tolerance: 1e-10,
        run: connection_independence,
    },
    Check {
        id: "dirac.connection-independence-total",
        claim: "super action total does not depend on the torsion (20 one-forms)",
        kind: Invariance,
        tolerance: 1e-10,
        run: connection_independence_total,
    },
    Check {
        id: "dirac.symmetry",
        claim: "torsion-free Dirac operator is symmetric on odd spinors (20 pairs)",
        kind: Invariance,
        tolerance: 1e-10,
        run: dirac_symmetry,
    },
    Check {
        id: "dirac.odd-nontrivial",
        claim: "Dirac action of odd spinors is nonzero",
        kind: Witness,
        tolerance: 1e-3,
        run: odd_nontrivial,
    },
];

pub const TORSION: &[Check] = &[
    Check {
        id: "torsion.factorization",
        claim:
            "real torsion factors through a gravitino and is recovered pointwise (100 one-forms)",
        kind: Invariance,
        tolerance: 1e-10,
        run: factorization,
    },
    Check {
        id: "torsion.rotating-frame",
        claim: "factorization recovery on a rotating conformal frame (20 one-forms)",
        kind: Invariance,
        tolerance: 1e-10,
        run: factorization_rotating,
    },
    Check {
        id: "torsion.branch-cut",
        claim: "winding torsion is flagged at the square-root branch cut (flagged points)",
        kind: Witness,
        tolerance: 1.0,
        run: branch_cut,
    },
];

pub const COUPLINGS: &[Check] = &[
    Check {
        id: "couplings.quartic-expansion",
        claim: "quartic density equals its component expansion",
        kind: Invariance,
        tolerance: 1e-13,
        run: quartic_expansion,
    },
    Check {
        id: "couplings.p-image",
        claim: "both couplings vanish when the gravitino has no q-part",
        kind: Invariance,
        tolerance: 1e-14,
        run: p_image,
    },
    Check {
        id: "couplings.even-output",
        claim: "every action term is even (largest odd coefficient)",
        kind: Invariance,
        tolerance: 0.0,
        run: even_output,
    },
    Check {
        id: "couplings.ruled-out-q-part",
        claim: "the ruled-out coupling depends on the gravitino only through its q-part",
        kind: Invariance,
        tolerance: 1e-14,
        run: ruled_out_q_part,
    },
    Check {
        id: "couplings.quartic-nontrivial",
        claim: "quartic coupling is nonzero on the frozen configuration",
        kind: Witness,
        tolerance: 1e-4,
        run: quartic_nontrivial,
    },
];

fn random_field(
    rng: &mut ChaCha8Rng,
    g: &TorusGrid,
    n: usize,
    recipe: RandomModes,
) -> Result<TrigField, CheckError> {
    let blocks = GeneratorBlocks::for_count(n);
    let kind = recipe.kind;
    let dim = recipe.dim;
    Ok(make_trig_field(
        &random_table(rng, g, &blocks, &recipe),
        g,
        &blocks,
        kind,
        dim,
    )?)
}

fn modes(
    kind: FieldKind,
    count: usize,
    amplitude: f64,
    dim: usize,
    commuting: bool,
) -> RandomModes {
    RandomModes {
        kind,
        count,
        kmax: 2,
        amplitude,
        dim,
        commuting,
    }
}

fn real_one_form(
    rng: &mut ChaCha8Rng,
    g: &TorusGrid,
    amplitude: f64,
) -> Result<OneForm<f64>, CheckError> {
    let a = random_field(rng, g, 8, modes(FieldKind::Torsion, 8, amplitude, 1, true))?
        .into_torsion()
        .expect("torsion field");
    Ok(a.map(|c| c.into_iter().map(|v| v.body()).collect()))
}

fn lift(a: &OneForm<f64>, n: usize) -> OneForm<G> {
    a.clone()
        .map(|c| c.into_iter().map(|v| G::scalar(v, n)).collect())
}

fn max_dev<R: Ring>(a: &[R], b: &[R]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y).max_abs())
        .fold(0.0, f64::max)
}

/// e_k = e^{−u} R(α) ∂_k with α = 0.4 sin 2π(x+y) and u = 0.2 sin 2π(x−y).
fn rotating_geometry(g: &TorusGrid) -> Result<FrameGeometry<f64>, CheckError> {
    let points = g.sample(|[x, y]| {
        let (s, c) = (0.4 * (2.0 * PI * (x + y)).sin()).sin_cos();
        let scale = (-0.2 * (2.0 * PI * (x - y)).sin()).exp();
        [[c * scale, s * scale], [-s * scale, c * scale]]
    });
    Ok(FrameGeometry::new(g, FrameField::from_points(points))?)
}

fn cartan(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let geom = rotating_geometry(&g)?;
    ctx.measured(cartan_residual(&g, &geom.frame, &geom.connection)?)
}

fn divergence_integral(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let mut rng = ctx.rng(20);
    let geom = rotating_geometry(&g)?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let j = real_one_form(&mut rng, &g, 1.0)?;
        worst = worst.max(integrate(&geom, &divergence(&geom, &j)?)?.abs());
    }
    ctx.measured(worst)
}

fn spectral_exactness(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid_with(ctx.sizes(), DerivativeMode::Spectral)?;
    let geom = FrameGeometry::flat(&g, &0.0)?;
    let f = g.sample(|[x, y]| (2.0 * PI * (3.0 * x - 2.0 * y) + 0.4).sin());
    let grad = gradient(&geom, &f)?;
    let arg = |x: f64, y: f64| 2.0 * PI * (3.0 * x - 2.0 * y) + 0.4;
    let want = [
        g.sample(|[x, y]| 6.0 * PI * arg(x, y).cos()),
        g.sample(|[x, y]| -4.0 * PI * arg(x, y).cos()),
    ];
    let dev = max_dev(&grad[0], &want[0]).max(max_dev(&grad[1], &want[1]));
    ctx.measured_on(dev, &[ctx.sizes()], DerivativeMode::Spectral)
}

fn fd2_order(ctx: &Ctx) -> CheckResult {
    let coarse = ctx.sizes();
    let fine = coarse.map(|n| 2 * n);
    let err = |sizes| -> Result<f64, CheckError> {
        let g = ctx.grid_with(sizes, DerivativeMode::Fd2)?;
        let f = g.sample(|[x, y]| (2.0 * PI * (x + y)).sin());
        let d = g.derivative(&f, 0, Bundle::Tensor)?;
        let want = g.sample(|[x, y]| 2.0 * PI * (2.0 * PI * (x + y)).cos());
        Ok(max_dev(&d, &want))
    };
    let ratio = err(coarse)? / err(fine)?;
    ctx.measured_on((ratio - 4.0).abs(), &[coarse, fine], DerivativeMode::Fd2)
}

fn majorana_vanishing(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let geom = FrameGeometry::flat(&g, &0.0)?;
    let a = [vec![0.0; g.len()], vec![0.0; g.len()]];
    let mut rng = ctx.rng(30);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let psi = random_field(&mut rng, &g, 8, modes(FieldKind::Spinor, 10, 1.0, 2, true))?
            .into_spinor()
            .expect("spinor field")
            .map(|v| v.body());
        worst = worst.max(dirac_action(&geom, &psi, &a)?.abs());
    }
    ctx.measured(worst)
}

fn frozen_sample(ctx: &Ctx, g: &TorusGrid) -> Result<superharmonic::symmetry::Sample, CheckError> {
    ctx.sample(
        g,
        0,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    )
}

fn connection_independence(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = frozen_sample(ctx, &g)?;
    let (geom, f) = (&smp.geometry, &smp.fields);
    let n = ctx.config.generators;
    let base = dirac_action(geom, &f.psi, &f.a)?;
    let mut rng = ctx.rng(31);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = lift(&real_one_form(&mut rng, &g, 1.0)?, n);
        worst = worst.max((dirac_action(geom, &f.psi, &a)? - &base).max_abs());
    }
    ctx.measured(worst)
}

fn connection_independence_total(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = frozen_sample(ctx, &g)?;
    let (geom, f) = (&smp.geometry, &smp.fields);
    let n = ctx.config.generators;
    let base = super_action(geom, &f.phi, &f.psi, &f.chi, &f.a)?.total;
    let mut rng = ctx.rng(32);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = lift(&real_one_form(&mut rng, &g, 1.0)?, n);
        worst =
            worst.max((super_action(geom, &f.phi, &f.psi, &f.chi, &a)?.total - &base).max_abs());
    }
    ctx.measured(worst)
}

fn dirac_symmetry(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let n = ctx.config.generators;
    let smp = frozen_sample(ctx, &g)?;
    let geom = &smp.geometry;
    let zero = [vec![G::zero(n); g.len()], vec![G::zero(n); g.len()]];
    let mut rng = ctx.rng(33);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let mut odd = || -> Result<_, CheckError> {
            Ok(
                random_field(&mut rng, &g, n, modes(FieldKind::Spinor, 10, 1.0, 2, false))?
                    .into_spinor()
                    .expect("spinor field"),
            )
        };
        let (phi, psi) = (odd()?, odd()?);
        let lhs = dirac_cross_action(geom, &psi, &phi, &zero)?;
        let rhs = dirac_cross_action(geom, &phi, &psi, &zero)?;
        worst = worst.max((lhs - &rhs).max_abs());
    }
    ctx.measured(worst)
}

fn odd_nontrivial(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = frozen_sample(ctx, &g)?;
    ctx.measured(dirac_action(&smp.geometry, &smp.fields.psi, &smp.fields.a)?.max_abs())
}

/// Distance of a₁ − i a₂ from the cut along the non-positive reals.
fn cut_distance(af: [f64; 2]) -> f64 {
    let (re, im) = (af[0], -af[1]);
    if re >= 0.0 {
        re.hypot(im)
    } else {
        im.abs()
    }
}

fn one_form_away_from_cut(
    rng: &mut ChaCha8Rng,
    geom: &FrameGeometry<f64>,
) -> Result<OneForm<f64>, CheckError> {
    let e = &geom.frame.e;
    loop {
        let mut a = real_one_form(rng, &geom.grid, 0.3)?;
        let (r, t) = (rng.gen_range(0.5..2.0), rng.gen_range(-2.6..2.6f64));
        for (mu, c) in a.iter_mut().enumerate() {
            let offset = if mu == 0 { r * t.cos() } else { -r * t.sin() };
            c.iter_mut().for_each(|v| *v += offset);
        }
        let clear = (0..geom.len()).all(|i| {
            let af = [0, 1].map(|k| e[k][0][i] * a[0][i] + e[k][1][i] * a[1][i]);
            cut_distance(af) >= 0.2
        });
        if clear {
            return Ok(a);
        }
    }
}

fn recovery(
    geom: &FrameGeometry<f64>,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Result<f64, CheckError> {
    let mut worst = 0.0f64;
    for _ in 0..count {
        let a = one_form_away_from_cut(rng, geom)?;
        let f = factorize_torsion(geom, &a)?;
        if !f.branch_cut.is_empty() {
            return Ok(f64::INFINITY);
        }
        let back = pairing_recovery(geom, &f.chi);
        worst = worst
            .max(max_dev(&back[0], &a[0]))
            .max(max_dev(&back[1], &a[1]));
    }
    Ok(worst)
}

fn factorization(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let geom = FrameGeometry::flat(&g, &0.0)?;
    ctx.measured(recovery(&geom, &mut ctx.rng(40), 100)?)
}

fn factorization_rotating(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let geom = rotating_geometry(&g)?;
    ctx.measured(recovery(&geom, &mut ctx.rng(41), 20)?)
}

fn branch_cut(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let geom = FrameGeometry::flat(&g, &0.0)?;
    let a = [
        g.sample(|[x, _]| (2.0 * PI * x).cos()),
        g.sample(|[x, _]| -(2.0 * PI * x).sin()),
    ];
    ctx.measured(factorize_torsion(&geom, &a)?.branch_cut.len() as f64)
}

/// q(z)_i = z_i − ½ γ^i γ^j z_j by components.
fn q_slot(z: &[MajoranaSpinor<G>; 2], i: usize) -> MajoranaSpinor<G> {
    let mut acc = z[i].clone();
    for (j, zj) in z.iter().enumerate() {
        acc = acc - apply(&GAMMA[i], &apply(&GAMMA[j], zj)).scale(0.5);
    }
    acc
}

fn quartic_expansion(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = ctx.sample(&g, 0, SampleConfig::default())?;
    let (geom, f) = (&smp.geometry, &smp.fields);
    let n = ctx.config.generators;
    let density = quartic_density(geom, &f.chi, &f.psi)?;
    let mut worst = 0.0f64;
    for idx in (0..g.len()).step_by(7) {
        let z = [f.chi.coord[0][idx].clone(), f.chi.coord[1][idx].clone()];
        let chi_sq = omega(&z[0], &q_slot(&z, 0)) + &omega(&z[1], &q_slot(&z, 1));
        let psi_sq = f
            .psi
            .comps
            .iter()
            .fold(G::zero(n), |acc, c| acc + &omega(&c[idx], &c[idx]));
        worst = worst.max((density[idx].clone() + &(chi_sq * &psi_sq)).max_abs());
    }
    ctx.measured(worst)
}

fn p_image(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = ctx.sample(
        &g,
        0,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    )?;
    let (geom, f) = (&smp.geometry, &smp.fields);
    let forms: Vec<_> = smp.s.iter().map(theta_insert).collect();
    let chi = GravitinoField::from_frame_forms(geom, &forms);
    let m = coupling_mixed(geom, &chi, &f.phi, &f.psi)?.max_abs();
    let q = coupling_quartic(geom, &chi, &f.psi)?.max_abs();
    ctx.measured(m.max(q))
}

fn even_output(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = ctx.sample(
        &g,
        0,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    )?;
    let (geom, f) = (&smp.geometry, &smp.fields);
    let b = super_action(geom, &f.phi, &f.psi, &f.chi, &f.a)?;
    let worst = b
        .entries()
        .iter()
        .map(|(_, v)| v.parity_max()[1])
        .fold(0.0, f64::max);
    ctx.measured(worst)
}

fn ruled_out_q_part(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = ctx.sample(
        &g,
        0,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    )?;
    let (geom, f) = (&smp.geometry, &smp.fields);
    let worst = (0..g.len())
        .map(|idx| {
            let z = f.chi.frame_form(geom, idx);
            (ruled_out_coefficient(&z) - &ruled_out_coefficient(&project_q(&z))).max_abs()
        })
        .fold(0.0, f64::max);
    ctx.measured(worst)
}

fn quartic_nontrivial(ctx: &Ctx) -> CheckResult {
    let g = ctx.grid()?;
    let smp = ctx.sample(
        &g,
        0,
        SampleConfig {
            frame: FrameChoice::Flat,
            ..Default::default()
        },
    )?;
    ctx.measured(coupling_quartic(&smp.geometry, &smp.fields.chi, &smp.fields.psi)?.max_abs())
}
