use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;
use superharmonic::clifford::*;
use superharmonic::grassmann::{Blade, Dual, GrassmannElement, GrassmannError, Parity, Ring};

const N: usize = 6;

type G = GrassmannElement;
type Q = GrassmannElement<Rational64>;

fn element() -> impl Strategy<Value = G> {
    prop::collection::vec((0u16..(1 << N), -2.0f64..2.0), 0..12)
        .prop_map(|terms| G::from_terms(N, terms.into_iter().map(|(b, c)| (Blade(b), c))).unwrap())
}

fn rational() -> impl Strategy<Value = Q> {
    prop::collection::vec((0u16..(1 << N), -20i64..20, 1i64..8), 0..10).prop_map(|terms| {
        Q::from_terms(
            N,
            terms
                .into_iter()
                .map(|(b, p, q)| (Blade(b), Rational64::new(p, q))),
        )
        .unwrap()
    })
}

fn homogeneous() -> impl Strategy<Value = G> {
    (element(), any::<bool>()).prop_map(|(a, odd)| {
        let (even, o) = a.parity_split();
        if odd {
            o
        } else {
            even
        }
    })
}

fn l1(a: &G) -> f64 {
    a.terms().iter().map(|(_, c)| c.abs()).sum()
}

/// Per monomial, the sum of |coefficient products| contributing to abc.
fn triple_scale(a: &G, b: &G, c: &G) -> HashMap<u16, f64> {
    let mut out = HashMap::new();
    for &(x, u) in a.terms() {
        for &(y, v) in b.terms() {
            for &(z, w) in c.terms() {
                if x.0 & y.0 == 0 && (x.0 | y.0) & z.0 == 0 {
                    *out.entry(x.0 | y.0 | z.0).or_insert(0.0) += (u * v * w).abs();
                }
            }
        }
    }
    out
}

/// Per-coefficient deviation relative to the contributing magnitudes.
fn relative_gap(x: &G, y: &G, scale: &HashMap<u16, f64>) -> f64 {
    let d = x.clone() - y;
    d.terms()
        .iter()
        .map(|&(b, c)| c.abs() / scale.get(&b.0).copied().unwrap_or(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

fn spinor() -> impl Strategy<Value = MajoranaSpinor<G>> {
    (element(), element()).prop_map(|(a, b)| MajoranaSpinor([a, b]))
}

fn odd_spinor() -> impl Strategy<Value = MajoranaSpinor<G>> {
    (element(), element())
        .prop_map(|(a, b)| MajoranaSpinor([a.parity_split().1, b.parity_split().1]))
}

fn form() -> impl Strategy<Value = SpinorForm<G>> {
    (spinor(), spinor()).prop_map(|(a, b)| SpinorForm::from_slots([a, b]))
}

fn covector() -> impl Strategy<Value = [f64; 2]> {
    [-2.0f64..2.0, -2.0f64..2.0]
}

fn form_metric(z: &SpinorForm<G>, w: &SpinorForm<G>) -> G {
    metric(&z.slot(0), &w.slot(0)) + &metric(&z.slot(1), &w.slot(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_associative(a in element(), b in element(), c in element()) {
        let lhs = (a.clone() * &b) * &c;
        let rhs = a.clone() * &(b.clone() * &c);
        let scale = triple_scale(&a, &b, &c);
        prop_assert!(relative_gap(&lhs, &rhs, &scale) <= 1e-14);
    }

    #[test]
    fn rational_product_is_exactly_associative(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((a.clone() * &b) * &c, a * &(b * &c));
    }

    #[test]
    fn product_is_graded_commutative(a in homogeneous(), b in homogeneous()) {
        let sign = if a.parity() == Some(Parity::Odd) && b.parity() == Some(Parity::Odd) { -1.0 } else { 1.0 };
        let tol = 1e-14 * l1(&a) * l1(&b);
        prop_assert!((a.clone() * &b - &(b * &a).scale(sign)).max_abs() <= tol);
    }

    #[test]
    fn soul_is_nilpotent(a in element()) {
        let s = a.soul();
        let mut p = s.clone();
        for _ in 0..N {
            p = p * &s;
        }
        prop_assert!(p.is_zero());
    }

    #[test]
    fn inverse_round_trips(a in element(), body in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0]) {
        let a = a.soul() + &G::scalar(body, N);
        let one = a.clone() * &a.inverse().unwrap();
        prop_assert!((one - &G::scalar(1.0, N)).max_abs() <= 1e-12);
    }

    #[test]
    fn dual_product_obeys_leibniz(a in element(), b in element(), c in element(), d in element()) {
        let p = Dual::new(a.clone(), b.clone()) * Dual::new(c.clone(), d.clone());
        prop_assert_eq!(p.value, a.clone() * &c);
        prop_assert_eq!(p.variation, a * &d + &(b * &c));
    }

    #[test]
    fn parity_split_recombines(a in element()) {
        let (even, odd) = a.parity_split();
        prop_assert!(even.terms().iter().all(|(b, _)| !b.is_odd()));
        prop_assert!(odd.terms().iter().all(|(b, _)| b.is_odd()));
        prop_assert_eq!(even + &odd, a);
    }

    #[test]
    fn clifford_relation(alpha in covector(), beta in covector(), s in spinor()) {
        let lhs = clifford_act(alpha, &clifford_act(beta, &s)) + clifford_act(beta, &clifford_act(alpha, &s));
        let rhs = s.scale(2.0 * (alpha[0] * beta[0] + alpha[1] * beta[1]));
        prop_assert!((lhs - rhs).max_abs() <= 1e-14 * (1.0 + s.max_abs()) * 16.0);
    }

    #[test]
    fn gamma_is_metric_symmetric_and_symplectic_skew(alpha in covector(), s in spinor(), t in spinor()) {
        let gs = clifford_act(alpha, &s);
        let gt = clifford_act(alpha, &t);
        let tol = 1e-14 * 16.0 * (1.0 + s.max_abs() * t.max_abs()) * 8.0;
        prop_assert!((metric(&gs, &t) - &metric(&s, &gt)).max_abs() <= tol);
        prop_assert!((omega(&s, &gt) + &omega(&gs, &t)).max_abs() <= tol);
    }

    #[test]
    fn odd_spinor_pairings_swap_with_flipped_symmetry(s in odd_spinor(), t in odd_spinor()) {
        let tol = 1e-14 * (l1(&s.0[0]) + l1(&s.0[1])) * (l1(&t.0[0]) + l1(&t.0[1]));
        prop_assert!((metric(&s, &t) + &metric(&t, &s)).max_abs() <= tol);
        prop_assert!((omega(&s, &t) - &omega(&t, &s)).max_abs() <= tol);
    }

    #[test]
    fn projector_algebra(z in form(), w in form()) {
        let p = project_p(&z);
        let q = project_q(&z);
        let tol = 1e-14 * (1.0 + z.max_abs()) * 8.0;
        prop_assert!((project_p(&p) - p.clone()).max_abs() <= tol);
        prop_assert!((project_q(&q) - q.clone()).max_abs() <= tol);
        prop_assert!(project_q(&p).max_abs() <= tol && project_p(&q).max_abs() <= tol);
        prop_assert!((p.clone() + q.clone() - z.clone()).max_abs() <= tol);
        let tol2 = tol * (1.0 + w.max_abs()) * 8.0;
        prop_assert!((form_metric(&p, &w) - &form_metric(&z, &project_p(&w))).max_abs() <= tol2);
        prop_assert!((form_metric(&q, &w) - &form_metric(&z, &project_q(&w))).max_abs() <= tol2);
    }

    #[test]
    fn decomposition_is_unique_and_orthogonal(z in form()) {
        let (s, g) = decompose_form(&z);
        let tol = 1e-14 * (1.0 + z.max_abs()) * 8.0;
        prop_assert!((theta_insert(&s) + g.clone() - z.clone()).max_abs() <= tol);
        prop_assert!(quantize(&g).max_abs() <= tol);
        prop_assert!((quantize(&theta_insert(&s)) - s.clone()).max_abs() <= tol);
    }
}

fn rational_form(v: [[i64; 2]; 2]) -> SpinorForm<Q> {
    SpinorForm(v.map(|r| {
        r.map(|x| {
            Q::scalar(Rational64::new(x, 3), 2) + &Q::generator(0, 2).unwrap().scale(x as f64)
        })
    }))
}

#[test]
fn projector_algebra_is_exact_in_rational_mode() {
    for v in [[[1, 0], [0, 0]], [[2, -5], [7, 1]], [[-3, 4], [0, 9]]] {
        let z = rational_form(v);
        let p = project_p(&z);
        let q = project_q(&z);
        assert_eq!(project_p(&p), p);
        assert_eq!(project_q(&q), q);
        assert_eq!(project_p(&q), SpinorForm::zero_like(&Q::zero(2)));
        assert_eq!(p + q, z);
    }
}

#[test]
fn clifford_relation_is_exact_in_rational_mode() {
    let s = MajoranaSpinor([
        Q::scalar(Rational64::new(2, 7), 2),
        Q::generator(1, 2).unwrap(),
    ]);
    for (i, j) in [(0, 0), (0, 1), (1, 1)] {
        let lhs = apply(&GAMMA[i], &apply(&GAMMA[j], &s)) + apply(&GAMMA[j], &apply(&GAMMA[i], &s));
        let rhs = if i == j {
            s.scale(2.0)
        } else {
            MajoranaSpinor::zero_like(&Q::zero(2))
        };
        assert_eq!(lhs, rhs);
    }
}

fn complex_form(s: &MajoranaSpinor<Complex64>, theta: [Complex64; 2]) -> SpinorForm<Complex64> {
    SpinorForm([0, 1].map(|a| [0, 1].map(|mu| s.0[a] * theta[mu])))
}

#[test]
fn complexified_images_of_the_projectors() {
    let w = weyl_frame();
    let wbar = w.map(|c| c.conj());
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    // θ = dz = e¹ + i e²
    let theta = [one, i];
    let theta_bar = [one, -i];
    let tol = 1e-14;
    let gap =
        |a: &SpinorForm<Complex64>, b: &SpinorForm<Complex64>| (a.clone() - b.clone()).max_abs();
    let zero = SpinorForm::zero_like(&Complex64::new(0.0, 0.0));
    let p_image = [complex_form(&w, theta), complex_form(&wbar, theta_bar)];
    let q_image = [complex_form(&w, theta_bar), complex_form(&wbar, theta)];
    for z in &p_image {
        assert!(gap(&project_p(z), z) <= tol && gap(&project_q(z), &zero) <= tol);
    }
    for z in &q_image {
        assert!(gap(&project_q(z), z) <= tol && gap(&project_p(z), &zero) <= tol);
        assert!(quantize(z).max_abs() <= tol);
    }
}

#[test]
fn mismatched_generator_counts_are_reported() {
    let a = G::generator(0, 3).unwrap();
    let b = G::generator(0, 4).unwrap();
    assert_eq!(
        a.checked_mul(&b),
        Err(GrassmannError::GeneratorMismatch(3, 4))
    );
}
