use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::{theta_insert, SpinorForm};
use crate::fields::{make_trig_field, random_table, FieldKind, GeneratorBlocks, RandomModes};
use crate::geometry::{DerivativeMode, TorusGrid};
use crate::grassmann::GrassmannElement;

type G = GrassmannElement;

fn grid() -> TorusGrid {
    TorusGrid::unit(16, DerivativeMode::Spectral).unwrap()
}

fn random(
    rng: &mut ChaCha8Rng,
    grid: &TorusGrid,
    kind: FieldKind,
    dim: usize,
    commuting: bool,
) -> crate::fields::TrigField {
    let blocks = GeneratorBlocks::for_count(8);
    let recipe = RandomModes {
        kind,
        count: 10,
        kmax: 1,
        amplitude: 1.0,
        dim,
        commuting,
    };
    let table = random_table(rng, grid, &blocks, &recipe);
    make_trig_field(&table, grid, &blocks, kind, dim).unwrap()
}

fn th(i: usize) -> G {
    G::generator(i, 4).unwrap()
}

#[test]
fn pairing_of_basis_spinors() {
    let z = [MajoranaSpinor([th(1), G::zero(4)])];
    let w = [MajoranaSpinor([G::zero(4), th(2)])];
    assert_eq!(pairing_e(&z, &w).unwrap(), th(1) * th(2));
    assert_eq!(pairing_e(&w, &z).unwrap(), th(1) * th(2));
}

#[test]
fn pairing_of_equal_real_spinors_vanishes() {
    let z = [MajoranaSpinor([0.3, -1.7]), MajoranaSpinor([2.0, 0.5])];
    assert_eq!(pairing_e(&z, &z).unwrap(), 0.0);
}

#[test]
fn pairing_rejects_mismatched_targets() {
    let z = [MajoranaSpinor([1.0, 0.0])];
    let w = [MajoranaSpinor([1.0, 0.0]), MajoranaSpinor([0.0, 1.0])];
    assert_eq!(pairing_e(&z, &w), Err(FunctionalError::ShapeMismatch(1, 2)));
}

#[test]
fn harmonic_energy_of_constant_and_sine_maps() {
    let g = grid();
    let geom = FrameGeometry::flat(&g, &0.0).unwrap();
    let c = MapField {
        comps: vec![vec![1.3; g.len()]],
    };
    assert!(harmonic_energy(&geom, &c).unwrap().abs() < 1e-12);
    let s = MapField {
        comps: vec![g.sample(|[x, _]| (2.0 * PI * x).sin())],
    };
    let e = harmonic_energy(&geom, &s).unwrap();
    assert!((e - (2.0 * PI).powi(2) / 2.0).abs() < 1e-10);
}

#[test]
fn dirac_action_vanishes_for_commuting_spinors() {
    let g = grid();
    let geom = FrameGeometry::flat(&g, &0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let psi = random(&mut rng, &g, FieldKind::Spinor, 2, true)
            .into_spinor()
            .unwrap();
        let psi = psi.map(|x| x.body());
        let a = [vec![0.0; g.len()], vec![0.0; g.len()]];
        assert!(dirac_action(&geom, &psi, &a).unwrap().abs() < 1e-12);
    }
}

#[test]
fn dirac_action_does_not_see_the_torsion() {
    let g = grid();
    let geom = FrameGeometry::flat(&g, &G::zero(8)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let psi = random(&mut rng, &g, FieldKind::Spinor, 2, false)
        .into_spinor()
        .unwrap();
    let a0 = random(&mut rng, &g, FieldKind::Torsion, 1, true)
        .into_torsion()
        .unwrap();
    let a1 = random(&mut rng, &g, FieldKind::Torsion, 1, true)
        .into_torsion()
        .unwrap();
    let d0 = dirac_action(&geom, &psi, &a0).unwrap();
    let d1 = dirac_action(&geom, &psi, &a1).unwrap();
    assert!(d0.max_abs() > 1e-3);
    assert!((d0.clone() - &d1).max_abs() < 1e-10);
    assert_eq!(d0.parity_max()[1], 0.0);
}

#[test]
fn quartic_and_ruled_out_vanish_on_the_p_image() {
    let g = TorusGrid::unit(8, DerivativeMode::Spectral).unwrap();
    let geom = FrameGeometry::flat(&g, &G::zero(8)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let psi = random(&mut rng, &g, FieldKind::Spinor, 1, false)
        .into_spinor()
        .unwrap();
    let s = random(&mut rng, &g, FieldKind::Parameter, 1, false)
        .into_parameter()
        .unwrap();
    let forms: Vec<SpinorForm<G>> = s.iter().map(theta_insert).collect();
    let chi = GravitinoField::from_frame_forms(&geom, &forms);
    assert!(coupling_quartic(&geom, &chi, &psi).unwrap().max_abs() < 1e-14);
    assert!(coupling_ruled_out(&geom, &chi, &psi).unwrap().max_abs() < 1e-14);
}

#[test]
fn couplings_vanish_for_commuting_psi() {
    let g = TorusGrid::unit(8, DerivativeMode::Spectral).unwrap();
    let geom = FrameGeometry::flat(&g, &0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let psi = random(&mut rng, &g, FieldKind::Spinor, 1, true)
        .into_spinor()
        .unwrap()
        .map(|x| x.body());
    let chi = random(&mut rng, &g, FieldKind::Gravitino, 1, true)
        .into_gravitino()
        .unwrap()
        .map(|x| x.body());
    assert!(coupling_quartic(&geom, &chi, &psi).unwrap().abs() < 1e-12);
    assert!(coupling_ruled_out(&geom, &chi, &psi).unwrap().abs() < 1e-12);
}

#[test]
fn mixed_coupling_vanishes_for_constant_maps() {
    let g = TorusGrid::unit(8, DerivativeMode::Spectral).unwrap();
    let geom = FrameGeometry::flat(&g, &G::zero(8)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let psi = random(&mut rng, &g, FieldKind::Spinor, 2, false)
        .into_spinor()
        .unwrap();
    let chi = random(&mut rng, &g, FieldKind::Gravitino, 2, false)
        .into_gravitino()
        .unwrap();
    let phi = MapField {
        comps: vec![
            vec![G::scalar(0.7, 8); g.len()],
            vec![G::scalar(-2.0, 8); g.len()],
        ],
    };
    assert!(coupling_mixed(&geom, &chi, &phi, &psi).unwrap().max_abs() < 1e-13);
}

#[test]
fn super_action_without_gravitino_is_harmonic_plus_dirac() {
    let g = grid();
    let geom = FrameGeometry::flat(&g, &G::zero(8)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let phi = random(&mut rng, &g, FieldKind::Map, 2, true)
        .into_map()
        .unwrap();
    let psi = random(&mut rng, &g, FieldKind::Spinor, 2, false)
        .into_spinor()
        .unwrap();
    let chi = GravitinoField::zero(&g, &G::zero(8));
    let zero = [vec![G::zero(8); g.len()], vec![G::zero(8); g.len()]];
    let b = super_action(&geom, &phi, &psi, &chi, &zero).unwrap();
    let expected =
        harmonic_energy(&geom, &phi).unwrap() + &dirac_action(&geom, &psi, &zero).unwrap();
    assert_eq!(b.total, expected);
    assert!(b.quartic_coupling.is_zero() && b.mixed_coupling.is_zero());
}

#[test]
fn all_zero_fields_give_a_zero_breakdown() {
    let g = TorusGrid::unit(8, DerivativeMode::Spectral).unwrap();
    let geom = FrameGeometry::flat(&g, &G::zero(8)).unwrap();
    let z = G::zero(8);
    let b = super_action(
        &geom,
        &MapField::zero(&g, 2, &z),
        &TwistedSpinorField::zero(&g, 2, &z),
        &GravitinoField::zero(&g, &z),
        &[vec![z.clone(); g.len()], vec![z.clone(); g.len()]],
    )
    .unwrap();
    assert_eq!(b, ActionBreakdown::zero_like(&z));
}

#[test]
fn torsion_functional_curvature_term() {
    let g = grid();
    let geom = FrameGeometry::flat(&g, &0.0).unwrap();
    let psi = TwistedSpinorField::zero(&g, 1, &0.0);
    let closed = [vec![0.8; g.len()], vec![0.0; g.len()]];
    let b = dym_dhym_action(&geom, None, &psi, &closed).unwrap();
    assert!(b.f_squared.abs() < 1e-12);
    assert_eq!(b.scal_term, 0.0);
    let a = [g.sample(|[_, y]| (2.0 * PI * y).sin()), vec![0.0; g.len()]];
    let b = dym_dhym_action(&geom, None, &psi, &a).unwrap();
    assert!((b.f_squared - (2.0 * PI).powi(2) / 2.0).abs() < 1e-10);
    assert_eq!(b.scal_term, 0.0);
}

#[test]
fn symplectic_target_pairing_is_symmetric_on_real_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    use rand::Rng;
    for _ in 0..20 {
        let mut draw = || MajoranaSpinor([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]);
        let z = [draw(), draw()];
        let w = [draw(), draw()];
        let a = pairing_e_with(TargetPairing::Symplectic, &z, &w).unwrap();
        let b = pairing_e_with(TargetPairing::Symplectic, &w, &z).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
