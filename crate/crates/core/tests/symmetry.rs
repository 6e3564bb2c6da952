use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superharmonic::clifford::{project_q, MajoranaSpinor};
use superharmonic::fields::{
    holomorphy_residual, make_trig_field, q_part, random_table, FieldKind, GeneratorBlocks,
    GravitinoField, MapField, RandomModes, TwistedSpinorField,
};
use superharmonic::functionals::{
    coupling_ruled_out, harmonic_energy, ruled_out_coefficient, TargetPairing,
};
use superharmonic::geometry::{DerivativeMode, FrameGeometry, TorusGrid};
use superharmonic::grassmann::{Blade, GrassmannElement, Parity, Ring};
use superharmonic::symmetry::*;

type G = GrassmannElement;

fn grid(n: usize) -> TorusGrid {
    TorusGrid::unit(n, DerivativeMode::Spectral).unwrap()
}

fn sample(n: usize, config: SampleConfig) -> Sample {
    config.build(&grid(n)).unwrap()
}

fn zero_a(g: &TorusGrid) -> [Vec<G>; 2] {
    [vec![G::zero(8); g.len()], vec![G::zero(8); g.len()]]
}

fn max_variation<'a>(
    it: impl IntoIterator<Item = &'a MajoranaSpinor<superharmonic::grassmann::Dual<G>>>,
) -> f64 {
    it.into_iter()
        .flat_map(|s| s.0.iter().map(|c| c.variation.max_abs()))
        .fold(0.0, f64::max)
}

#[test]
fn zero_parameter_gives_zero_variations() {
    let smp = sample(8, SampleConfig::default());
    let s = vec![MajoranaSpinor([G::zero(8), G::zero(8)]); smp.geometry.len()];
    let v = susy_varied_fields(
        &smp.geometry,
        &smp.fields,
        &s,
        SusyCoefficients::FULL,
        TorsionMode::Slaved,
    )
    .unwrap();
    let r = first_variation(&v).unwrap();
    assert!(r.terms.entries().iter().all(|(_, e)| e.is_zero()));
    assert_eq!(r.total_norm, 0.0);
    assert_eq!(max_variation(v.fields.chi.coord.iter().flatten()), 0.0);
    assert_eq!(max_variation(v.fields.psi.comps.iter().flatten()), 0.0);
}

#[test]
fn zero_deformation_gives_zero_report() {
    let smp = sample(8, SampleConfig::default());
    let v = susy_varied_fields(
        &smp.geometry,
        &smp.fields,
        &smp.s,
        SusyCoefficients::ZERO,
        TorsionMode::Independent,
    )
    .unwrap();
    assert_eq!(first_variation(&v).unwrap().total_norm, 0.0);
}

#[test]
fn variation_without_gravitino_degenerates() {
    let smp = sample(8, SampleConfig::default());
    let g = &smp.geometry.grid;
    let fields = SuperFields {
        chi: GravitinoField::zero(g, &G::zero(8)),
        a: zero_a(g),
        ..smp.fields.clone()
    };
    let v = susy_varied_fields(
        &smp.geometry,
        &fields,
        &smp.s,
        SusyCoefficients::FULL,
        TorsionMode::Independent,
    )
    .unwrap();
    assert_eq!(max_variation(v.fields.chi.coord.iter().flatten()), 0.0);
    let de = v
        .geometry
        .frame
        .e
        .iter()
        .flatten()
        .flatten()
        .map(|c| c.variation.max_abs())
        .fold(0.0, f64::max);
    assert_eq!(de, 0.0);
    let expected = basic_spinor_variation(&smp.geometry, &fields.phi, &smp.s).unwrap();
    for (a, (got, want)) in v.fields.psi.comps.iter().zip(&expected.comps).enumerate() {
        for (idx, (g, w)) in got.iter().zip(want).enumerate() {
            for k in 0..2 {
                assert!(
                    (g.0[k].variation.clone() - &w.0[k]).max_abs() < 1e-13,
                    "δψ^{a} at {idx}"
                );
            }
        }
        for idx in 0..got.len() {
            let p = &fields.psi.comps[a][idx];
            let s = &smp.s[idx];
            let want = p.0[0].clone() * &s.0[0] + &(p.0[1].clone() * &s.0[1]);
            assert_eq!(v.fields.phi.comps[a][idx].variation, want);
        }
    }
}

#[test]
fn variation_parities() {
    let smp = sample(
        8,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    );
    let v = susy_varied_fields(
        &smp.geometry,
        &smp.fields,
        &smp.s,
        SusyCoefficients::FULL,
        TorsionMode::Slaved,
    )
    .unwrap();
    let parity_ok = |e: &G, want: Parity| e.is_zero() || e.parity() == Some(want);
    let f = &v.fields;
    assert!(f
        .phi
        .comps
        .iter()
        .flatten()
        .all(|d| parity_ok(&d.variation, Parity::Even)));
    assert!(f
        .psi
        .comps
        .iter()
        .flatten()
        .flat_map(|s| &s.0)
        .all(|d| parity_ok(&d.variation, Parity::Odd)));
    assert!(v
        .geometry
        .frame
        .e
        .iter()
        .flatten()
        .flatten()
        .all(|d| parity_ok(&d.variation, Parity::Even)));
    assert!(f
        .chi
        .coord
        .iter()
        .flatten()
        .flat_map(|s| &s.0)
        .all(|d| parity_ok(&d.variation, Parity::Odd)));
    let r = first_variation(&v).unwrap();
    assert!(r
        .terms
        .entries()
        .iter()
        .all(|(_, e)| parity_ok(e, Parity::Even)));
}

#[test]
fn report_total_is_the_sum_of_entries() {
    let smp = sample(
        8,
        SampleConfig {
            seed: 4,
            ..Default::default()
        },
    );
    let v = susy_varied_fields(
        &smp.geometry,
        &smp.fields,
        &smp.s,
        SusyCoefficients::BASIC,
        TorsionMode::Slaved,
    )
    .unwrap();
    let t = first_variation(&v).unwrap().terms;
    let sum = t.harmonic.clone()
        + &t.dirac
        + &t.quartic_coupling
        + &t.mixed_coupling
        + &t.f_squared
        + &t.scal_term;
    assert_eq!(t.total, sum);
}

#[test]
fn report_digest_is_stable_and_sensitive() {
    let a = sample(8, SampleConfig::default());
    let b = sample(
        8,
        SampleConfig {
            seed: 2,
            ..Default::default()
        },
    );
    let d = |s: &Sample| config_digest(&s.geometry, &s.fields, &s.s);
    assert_eq!(d(&a), d(&sample(8, SampleConfig::default())));
    assert_ne!(d(&a), d(&b));
    assert_eq!(d(&a).len(), 16);
}

#[test]
fn basic_variation_is_stationary_for_constant_parameters() {
    for seed in [1, 2, 3] {
        let smp = sample(
            32,
            SampleConfig {
                seed,
                ..Default::default()
            },
        );
        let fields = SuperFields {
            a: zero_a(&smp.geometry.grid),
            ..smp.fields.clone()
        };
        let v = susy_varied_fields(
            &smp.geometry,
            &fields,
            &smp.s,
            SusyCoefficients::BASIC,
            TorsionMode::Independent,
        )
        .unwrap();
        let t = first_variation(&v).unwrap().terms;
        let total = (t.harmonic.clone() + &t.dirac).max_abs();
        assert!(total <= 1e-8, "seed {seed}: {total:e}");
        assert!(t.harmonic.max_abs() > 1e-3);
    }
}

fn generator_components(
    s: &[MajoranaSpinor<G>],
    generators: std::ops::Range<usize>,
) -> Vec<Vec<MajoranaSpinor<f64>>> {
    generators
        .map(|i| {
            s.iter()
                .map(|v| v.map(|c| c.coefficient(Blade::generator(i))))
                .collect()
        })
        .collect()
}

#[test]
fn basic_variation_needs_a_holomorphic_parameter() {
    let smp = sample(
        32,
        SampleConfig {
            constant_s: false,
            seed: 3,
            ..Default::default()
        },
    );
    let g = &smp.geometry.grid;
    let flat = FrameGeometry::flat(g, &0.0).unwrap();
    let a0 = [vec![0.0; g.len()], vec![0.0; g.len()]];
    let residual = generator_components(&smp.s, GeneratorBlocks::for_count(8).s)
        .iter()
        .map(|c| holomorphy_residual(&flat, c, &a0).unwrap())
        .fold(0.0, f64::max);
    assert!(residual >= 0.1, "{residual}");
    let fields = SuperFields {
        a: zero_a(g),
        ..smp.fields.clone()
    };
    let v = susy_varied_fields(
        &smp.geometry,
        &fields,
        &smp.s,
        SusyCoefficients::BASIC,
        TorsionMode::Independent,
    )
    .unwrap();
    let t = first_variation(&v).unwrap().terms;
    assert!((t.harmonic + &t.dirac).max_abs() >= 1e-3);
}

#[test]
fn full_variation_is_stationary_when_torsion_factorizes() {
    let configs = [
        SampleConfig::default(),
        SampleConfig {
            seed: 5,
            constant_s: false,
            ..Default::default()
        },
        SampleConfig {
            seed: 6,
            frame: FrameChoice::Conformal { amplitude: 0.2 },
            ..Default::default()
        },
    ];
    for c in configs {
        let smp = sample(32, c.clone());
        let v = susy_varied_fields(
            &smp.geometry,
            &smp.fields,
            &smp.s,
            SusyCoefficients::FULL,
            TorsionMode::Slaved,
        )
        .unwrap();
        let r = first_variation(&v).unwrap();
        assert!(r.total_norm <= 1e-8, "{c:?}: {:e}", r.total_norm);
        assert!(
            r.term_norms[0] > 1e-3 && r.term_norms[2] > 1e-4,
            "{c:?}: trivial configuration"
        );
    }
}

#[test]
fn full_variation_detects_unfactorized_torsion() {
    let smp = sample(32, SampleConfig::default());
    let mut fields = smp.fields.clone();
    for v in &mut fields.a[0] {
        *v += &G::scalar(0.5, 8);
    }
    let v = susy_varied_fields(
        &smp.geometry,
        &fields,
        &smp.s,
        SusyCoefficients::FULL,
        TorsionMode::Independent,
    )
    .unwrap();
    assert!(first_variation(&v).unwrap().total_norm >= 1e-3);
}

#[test]
fn no_single_piece_is_stationary_alone() {
    let smp = sample(
        16,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    );
    let full = first_variation(
        &susy_varied_fields(
            &smp.geometry,
            &smp.fields,
            &smp.s,
            SusyCoefficients::FULL,
            TorsionMode::Slaved,
        )
        .unwrap(),
    )
    .unwrap();
    for (name, c) in SusyCoefficients::pieces() {
        let c = SusyCoefficients {
            map: SusyCoefficients::FULL.map - c.map,
            spinor_gradient: SusyCoefficients::FULL.spinor_gradient - c.spinor_gradient,
            spinor_ev: SusyCoefficients::FULL.spinor_ev - c.spinor_ev,
            frame: SusyCoefficients::FULL.frame - c.frame,
            gravitino: SusyCoefficients::FULL.gravitino - c.gravitino,
            torsion: SusyCoefficients::FULL.torsion - c.torsion,
        };
        let v =
            susy_varied_fields(&smp.geometry, &smp.fields, &smp.s, c, TorsionMode::Slaved).unwrap();
        let r = first_variation(&v).unwrap();
        assert!(
            r.total_norm > 1e-4 + full.total_norm,
            "dropping {name} keeps stationarity"
        );
    }
}

#[test]
fn first_variation_matches_difference_quotients() {
    let configs = [
        (
            16,
            SusyCoefficients::FULL,
            TorsionMode::Slaved,
            SampleConfig {
                constant_s: false,
                ..Default::default()
            },
        ),
        (
            32,
            SusyCoefficients::FULL,
            TorsionMode::Independent,
            SampleConfig {
                seed: 9,
                frame: FrameChoice::Conformal { amplitude: 0.2 },
                ..Default::default()
            },
        ),
        (
            16,
            SusyCoefficients::BASIC,
            TorsionMode::Independent,
            SampleConfig {
                seed: 10,
                ..Default::default()
            },
        ),
    ];
    for (n, coeffs, mode, c) in configs {
        let smp = sample(n, c);
        let v = susy_varied_fields(&smp.geometry, &smp.fields, &smp.s, coeffs, mode).unwrap();
        let exact = first_variation(&v).unwrap().terms;
        let quotient = difference_quotient(&v, 1e-3).unwrap();
        let dev = exact.difference(&quotient).max_abs();
        assert!(dev <= 1e-8, "{dev:e}");
        assert!(exact.harmonic.max_abs() > 1e-3);
    }
}

fn single_mode_u(g: &TorusGrid) -> Vec<f64> {
    g.sample(|[x, y]| 0.2 * (2.0 * PI * (x - y)).cos())
}

#[test]
fn weyl_rescale_with_zero_u_is_the_identity() {
    let smp = sample(8, SampleConfig::default());
    let u = vec![0.0; smp.geometry.len()];
    let (g, f) = weyl_rescale(&smp.geometry, &smp.fields, &u, ConformalWeights::default()).unwrap();
    assert_eq!(g.frame.e, smp.geometry.frame.e);
    assert_eq!(f.phi.comps, smp.fields.phi.comps);
    assert_eq!(f.psi.comps, smp.fields.psi.comps);
    assert_eq!(f.chi.coord, smp.fields.chi.coord);
    assert_eq!(f.a, smp.fields.a);
}

#[test]
fn constant_weyl_rescale_scales_volume_and_keeps_harmonic_energy() {
    let smp = sample(16, SampleConfig::default());
    let c = 0.3;
    let u = vec![c; smp.geometry.len()];
    let (g, f) = weyl_rescale(&smp.geometry, &smp.fields, &u, ConformalWeights::default()).unwrap();
    for (after, before) in g.density.iter().zip(&smp.geometry.density) {
        assert!((after.clone() - &before.scale((2.0 * c).exp())).max_abs() < 1e-13);
    }
    let e0 = harmonic_energy(&smp.geometry, &smp.fields.phi).unwrap();
    let e1 = harmonic_energy(&g, &f.phi).unwrap();
    assert!((e1 - &e0).max_abs() < 1e-12);
}

#[test]
fn super_action_is_weyl_invariant_with_the_frozen_weights() {
    for c in [
        SampleConfig::default(),
        SampleConfig {
            seed: 12,
            frame: FrameChoice::Conformal { amplitude: 0.2 },
            ..Default::default()
        },
    ] {
        let smp = sample(32, c);
        let u = single_mode_u(&smp.geometry.grid);
        let spec = TransformationSpec::Weyl {
            u,
            weights: ConformalWeights::default(),
        };
        let drift = spec.action_change(&smp.geometry, &smp.fields).unwrap();
        assert!(drift.total.max_abs() <= 1e-9, "{:e}", drift.total.max_abs());
        assert!(drift.dirac.max_abs() <= 1e-9 && drift.quartic_coupling.max_abs() <= 1e-9);
    }
}

#[test]
fn weight_search_singles_out_the_frozen_table() {
    let smp = sample(
        16,
        SampleConfig {
            seed: 21,
            ..Default::default()
        },
    );
    let u = single_mode_u(&smp.geometry.grid);
    let results = weyl_weight_search(&smp.geometry, &smp.fields, &u).unwrap();
    let passing: Vec<_> = results
        .iter()
        .filter(|(_, d)| *d <= 1e-9)
        .map(|(w, _)| *w)
        .collect();
    assert_eq!(passing, vec![ConformalWeights::default()]);
}

#[test]
fn weyl_drift_converges_at_second_order_in_fd_mode() {
    let drift = |n: usize| {
        let g = TorusGrid::unit(n, DerivativeMode::Fd2).unwrap();
        let smp = SampleConfig {
            seed: 14,
            ..Default::default()
        }
        .build(&g)
        .unwrap();
        let spec = TransformationSpec::Weyl {
            u: single_mode_u(&g),
            weights: ConformalWeights::default(),
        };
        spec.action_change(&smp.geometry, &smp.fields)
            .unwrap()
            .total
            .max_abs()
    };
    let (coarse, fine) = (drift(16), drift(32));
    let ratio = coarse / fine;
    assert!(
        (3.5..=4.5).contains(&ratio),
        "{coarse:e} / {fine:e} = {ratio}"
    );
}

#[test]
fn super_weyl_shift_keeps_q_part_and_action() {
    let smp = sample(
        32,
        SampleConfig {
            constant_s: false,
            ..Default::default()
        },
    );
    let shifted = super_weyl_shift(&smp.geometry, &smp.fields.chi, &smp.s).unwrap();
    assert_eq!(
        q_part(&smp.geometry, &shifted),
        q_part(&smp.geometry, &smp.fields.chi)
    );
    let spec = TransformationSpec::SuperWeyl { s: smp.s.clone() };
    let drift = spec.action_change(&smp.geometry, &smp.fields).unwrap();
    assert!(drift.total.max_abs() <= 1e-9, "{:e}", drift.total.max_abs());
}

#[test]
fn super_weyl_shift_with_zero_parameter_is_the_identity() {
    let smp = sample(8, SampleConfig::default());
    let s = vec![MajoranaSpinor([G::zero(8), G::zero(8)]); smp.geometry.len()];
    let shifted = super_weyl_shift(&smp.geometry, &smp.fields.chi, &s).unwrap();
    for (a, b) in shifted
        .coord
        .iter()
        .flatten()
        .zip(smp.fields.chi.coord.iter().flatten())
    {
        assert!(
            (a.0[0].clone() - &b.0[0]).max_abs() < 1e-15
                && (a.0[1].clone() - &b.0[1]).max_abs() < 1e-15
        );
    }
}

#[test]
fn super_weyl_shift_rejects_even_parameters() {
    let smp = sample(8, SampleConfig::default());
    let s = vec![MajoranaSpinor([G::scalar(1.0, 8), G::zero(8)]); smp.geometry.len()];
    assert!(matches!(
        super_weyl_shift(&smp.geometry, &smp.fields.chi, &s),
        Err(SymmetryError::ParityMismatch(_))
    ));
}

#[test]
fn susy_variation_rejects_even_parameters() {
    let smp = sample(8, SampleConfig::default());
    let s = vec![MajoranaSpinor([G::scalar(1.0, 8), G::zero(8)]); smp.geometry.len()];
    assert!(matches!(
        susy_varied_fields(
            &smp.geometry,
            &smp.fields,
            &s,
            SusyCoefficients::FULL,
            TorsionMode::Slaved
        ),
        Err(SymmetryError::ParityMismatch(_))
    ));
}

fn real_fields(
    n: usize,
    mode: DerivativeMode,
    seed: u64,
) -> (FrameGeometry<f64>, MapField<f64>, TwistedSpinorField<f64>) {
    let g = TorusGrid::unit(n, mode).unwrap();
    let blocks = GeneratorBlocks::for_count(8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
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
            &random_table(&mut rng, &g, &blocks, &recipe),
            &g,
            &blocks,
            kind,
            2,
        )
        .unwrap()
    };
    let phi = take(FieldKind::Map, 6)
        .into_map()
        .unwrap()
        .map(|v| v.body());
    let psi = take(FieldKind::Spinor, 8)
        .into_spinor()
        .unwrap()
        .map(|v| v.body());
    (FrameGeometry::flat(&g, &0.0).unwrap(), phi, psi)
}

const S0: MajoranaSpinor<f64> = MajoranaSpinor([0.6, -0.8]);

#[test]
fn varform1_identities_hold_pointwise() {
    for seed in [31, 32] {
        let (geom, phi, psi) = real_fields(32, DerivativeMode::Spectral, seed);
        let r = varform1_check(&geom, &phi, &psi, S0).unwrap();
        assert!(
            r.harmonic_residual <= 1e-9 && r.dirac_residual <= 1e-9,
            "{r:?}"
        );
        assert!(r.total_variation.abs() >= 1e-3, "{r:?}");
        assert!(r.divergence_integral <= 1e-12);
    }
}

#[test]
fn varform1_vanishes_for_zero_spinor() {
    let (geom, phi, _) = real_fields(16, DerivativeMode::Spectral, 33);
    let psi = TwistedSpinorField::zero(&geom.grid, 2, &0.0);
    let r = varform1_check(&geom, &phi, &psi, S0).unwrap();
    assert_eq!(r.total_variation, 0.0);
    assert!(r.harmonic_residual <= 1e-12 && r.dirac_residual <= 1e-12);
}

#[test]
fn varform1_with_constant_map_is_a_pure_divergence() {
    let (geom, _, psi) = real_fields(16, DerivativeMode::Spectral, 34);
    let phi = MapField {
        comps: vec![vec![0.4; geom.len()], vec![-1.1; geom.len()]],
    };
    let r = varform1_check(&geom, &phi, &psi, S0).unwrap();
    assert!(r.total_variation.abs() <= 1e-9);
}

#[test]
fn varform1_residuals_are_second_order_in_fd_mode() {
    let residual = |n| {
        let (geom, phi, psi) = real_fields(n, DerivativeMode::Fd2, 35);
        let r = varform1_check(&geom, &phi, &psi, S0).unwrap();
        r.harmonic_residual.max(r.dirac_residual)
    };
    let ratio = residual(32) / residual(64);
    assert!((3.5..=4.5).contains(&ratio), "{ratio}");
}

#[test]
fn varform1_requires_a_planar_target() {
    let (geom, _, _) = real_fields(8, DerivativeMode::Spectral, 36);
    let phi = MapField::zero(&geom.grid, 3, &0.0);
    let psi = TwistedSpinorField::zero(&geom.grid, 3, &0.0);
    assert!(matches!(
        varform1_check(&geom, &phi, &psi, S0),
        Err(SymmetryError::TargetDimension(3))
    ));
}

#[test]
fn susy_current_identity_for_odd_fields() {
    let smp = sample(
        32,
        SampleConfig {
            seed: 40,
            ..Default::default()
        },
    );
    let r = variation_identities(
        TargetPairing::Euclidean,
        &smp.geometry,
        &smp.fields.phi,
        &smp.fields.psi,
        &smp.s,
    )
    .unwrap();
    assert!(r.susy_current_residual <= 1e-9, "{r:?}");
    assert!(r.harmonic_residual <= 1e-9 && r.dirac_residual <= 1e-9);
    assert!(r.divergence_integral <= 1e-12);
    assert!(r.total_variation.max_abs() <= 1e-8);
}

#[test]
fn susy_currents_vanish_for_zero_parameter() {
    let smp = sample(8, SampleConfig::default());
    let s = vec![MajoranaSpinor([G::zero(8), G::zero(8)]); smp.geometry.len()];
    let c = susy_current(
        TargetPairing::Euclidean,
        &smp.geometry,
        &smp.fields.phi,
        &smp.fields.psi,
        &s,
    )
    .unwrap();
    assert!(c
        .j_susy
        .iter()
        .chain(&c.j_phi)
        .chain(&c.j_psi)
        .flatten()
        .all(|v| v.is_zero()));
}

#[test]
fn ruled_out_coupling_sees_only_the_q_part() {
    let smp = sample(
        16,
        SampleConfig {
            constant_s: false,
            seed: 42,
            ..Default::default()
        },
    );
    let shifted = super_weyl_shift(&smp.geometry, &smp.fields.chi, &smp.s).unwrap();
    let before = coupling_ruled_out(&smp.geometry, &smp.fields.chi, &smp.fields.psi).unwrap();
    let after = coupling_ruled_out(&smp.geometry, &shifted, &smp.fields.psi).unwrap();
    assert!(before.max_abs() > 1e-3);
    assert!((after - &before).max_abs() <= 1e-12);
    for idx in 0..smp.geometry.len() {
        let z = smp.fields.chi.frame_form(&smp.geometry, idx);
        let q = project_q(&z);
        assert!((ruled_out_coefficient(&z) - &ruled_out_coefficient(&q)).max_abs() <= 1e-14);
    }
}
