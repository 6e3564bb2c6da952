use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use superharmonic::clifford::{
    apply, clifford_act, metric, omega, project_p, project_q, quantize, weyl_frame, MajoranaSpinor,
    SpinorForm, GAMMA,
};
use superharmonic::grassmann::{Blade, Dual, GrassmannElement, Parity, Ring};

use super::{Check, CheckResult, Ctx};
use crate::record::CheckKind::{Invariance, Witness};

type G = GrassmannElement;
type Q = GrassmannElement<Rational64>;

const CASES: usize = 200;

pub const ALGEBRA: &[Check] = &[
    Check {
        id: "algebra.associativity",
        claim: "supernumber product is associative",
        kind: Invariance,
        tolerance: 1e-14,
        run: associativity,
    },
    Check {
        id: "algebra.graded-commutativity",
        claim: "homogeneous supernumbers commute up to the Koszul sign",
        kind: Invariance,
        tolerance: 1e-14,
        run: graded_commutativity,
    },
    Check {
        id: "algebra.inversion",
        claim: "supernumbers with nonzero body are invertible",
        kind: Invariance,
        tolerance: 1e-14,
        run: inversion,
    },
    Check {
        id: "algebra.dual-leibniz",
        claim: "dual-number product obeys the Leibniz rule",
        kind: Invariance,
        tolerance: 1e-14,
        run: dual_leibniz,
    },
    Check {
        id: "algebra.exact-associativity",
        claim: "rational supernumber product is exactly associative",
        kind: Invariance,
        tolerance: 0.0,
        run: exact_associativity,
    },
];

pub const CLIFFORD: &[Check] = &[
    Check {
        id: "clifford.relation",
        claim: "gamma(a)gamma(b) + gamma(b)gamma(a) = 2 g(a,b)",
        kind: Invariance,
        tolerance: 1e-14,
        run: clifford_relation,
    },
    Check {
        id: "clifford.relation-exact",
        claim: "Clifford relation in rational arithmetic",
        kind: Invariance,
        tolerance: 0.0,
        run: clifford_relation_exact,
    },
    Check {
        id: "clifford.symmetry-swap",
        claim: "gamma is metric-symmetric and symplectic-skew",
        kind: Invariance,
        tolerance: 1e-14,
        run: symmetry_swap,
    },
    Check {
        id: "clifford.odd-swap",
        claim: "on odd spinors the metric is skew and the symplectic form symmetric",
        kind: Invariance,
        tolerance: 1e-14,
        run: odd_swap,
    },
    Check {
        id: "clifford.projectors",
        claim: "p and q are complementary self-adjoint projectors",
        kind: Invariance,
        tolerance: 1e-14,
        run: projectors,
    },
    Check {
        id: "clifford.projectors-exact",
        claim: "projector algebra in rational arithmetic",
        kind: Invariance,
        tolerance: 0.0,
        run: projectors_exact,
    },
    Check {
        id: "clifford.projector-images",
        claim: "p keeps w(x)dz and its conjugate, q keeps w(x)dzbar and its conjugate",
        kind: Invariance,
        tolerance: 1e-14,
        run: projector_images,
    },
    Check {
        id: "clifford.odd-pairing-nontrivial",
        claim: "symplectic pairing of random odd spinors is nonzero",
        kind: Witness,
        tolerance: 1e-3,
        run: odd_pairing_nontrivial,
    },
];

fn element(rng: &mut ChaCha8Rng, n: usize) -> G {
    let terms = rng.gen_range(0..12);
    let terms = (0..terms).map(|_| (Blade(rng.gen_range(0..1u16 << n)), rng.gen_range(-2.0..2.0)));
    G::from_terms(n, terms.collect::<Vec<_>>()).expect("blade within range")
}

fn rational(rng: &mut ChaCha8Rng, n: usize) -> Q {
    let terms = rng.gen_range(0..10);
    let terms = (0..terms).map(|_| {
        let c = Rational64::new(rng.gen_range(-20..20), rng.gen_range(1..8));
        (Blade(rng.gen_range(0..1u16 << n)), c)
    });
    Q::from_terms(n, terms.collect::<Vec<_>>()).expect("blade within range")
}

fn homogeneous(rng: &mut ChaCha8Rng, n: usize) -> G {
    let (even, odd) = element(rng, n).parity_split();
    if rng.gen() {
        odd
    } else {
        even
    }
}

fn odd(rng: &mut ChaCha8Rng, n: usize) -> G {
    element(rng, n).parity_split().1
}

/// Per monomial, the sum of |coefficient products| that can contribute to xy.
fn pair_scale(x: &G, y: &G) -> HashMap<u16, f64> {
    let mut out = HashMap::new();
    for &(a, u) in x.terms() {
        for &(b, v) in y.terms() {
            if a.0 & b.0 == 0 {
                *out.entry(a.0 | b.0).or_insert(0.0) += (u * v).abs();
            }
        }
    }
    out
}

fn triple_scale(x: &G, y: &G, z: &G) -> HashMap<u16, f64> {
    let mut out = HashMap::new();
    for (ab, s) in pair_scale(x, y) {
        for &(c, w) in z.terms() {
            if ab & c.0 == 0 {
                *out.entry(ab | c.0).or_insert(0.0) += s * w.abs();
            }
        }
    }
    out
}

fn merge(mut a: HashMap<u16, f64>, b: HashMap<u16, f64>) -> HashMap<u16, f64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0.0) += v;
    }
    a
}

/// Largest coefficient of `d` relative to the magnitudes that produced it.
fn relative(d: &G, scale: &HashMap<u16, f64>) -> f64 {
    d.terms()
        .iter()
        .map(|&(b, c)| match scale.get(&b.0) {
            Some(&s) if s > 0.0 => c.abs() / s,
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

fn associativity(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(1);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let (a, b, c) = (
            element(&mut rng, n),
            element(&mut rng, n),
            element(&mut rng, n),
        );
        let d = (a.clone() * &b) * &c - &(a.clone() * &(b.clone() * &c));
        worst = worst.max(relative(&d, &triple_scale(&a, &b, &c)));
    }
    ctx.pointwise(worst)
}

fn graded_commutativity(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(2);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let (a, b) = (homogeneous(&mut rng, n), homogeneous(&mut rng, n));
        let both_odd = a.parity() == Some(Parity::Odd) && b.parity() == Some(Parity::Odd);
        let sign = if both_odd { -1.0 } else { 1.0 };
        let d = a.clone() * &b - &(b.clone() * &a).scale(sign);
        worst = worst.max(relative(&d, &pair_scale(&a, &b)));
    }
    ctx.pointwise(worst)
}

fn inversion(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(3);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let body = rng.gen_range(0.5..2.0) * if rng.gen() { 1.0 } else { -1.0 };
        let a = element(&mut rng, n).soul() + &G::scalar(body, n);
        let inv = a.inverse()?;
        let d = a.clone() * &inv - &G::scalar(1.0, n);
        worst = worst.max(relative(&d, &pair_scale(&a, &inv)));
    }
    ctx.pointwise(worst)
}

fn dual_leibniz(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(4);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let [a, b, c, d] = [0; 4].map(|_| element(&mut rng, n));
        let p = Dual::new(a.clone(), b.clone()) * Dual::new(c.clone(), d.clone());
        let value = p.value - &(a.clone() * &c);
        let variation = p.variation - &(a.clone() * &d + &(b.clone() * &c));
        let scale = merge(pair_scale(&a, &d), pair_scale(&b, &c));
        worst = worst
            .max(relative(&value, &pair_scale(&a, &c)))
            .max(relative(&variation, &scale));
    }
    ctx.pointwise(worst)
}

fn exact_associativity(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(5);
    let mismatches = (0..CASES)
        .filter(|_| {
            let (a, b, c) = (
                rational(&mut rng, n),
                rational(&mut rng, n),
                rational(&mut rng, n),
            );
            (a.clone() * &b) * &c != a * &(b * &c)
        })
        .count();
    ctx.pointwise(mismatches as f64)
}

fn spinor(rng: &mut ChaCha8Rng, n: usize) -> MajoranaSpinor<G> {
    MajoranaSpinor([element(rng, n), element(rng, n)])
}

fn form(rng: &mut ChaCha8Rng, n: usize) -> SpinorForm<G> {
    SpinorForm::from_slots([spinor(rng, n), spinor(rng, n)])
}

fn covector(rng: &mut ChaCha8Rng) -> [f64; 2] {
    [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]
}

fn l1(a: &G) -> f64 {
    a.terms().iter().map(|(_, c)| c.abs()).sum()
}

fn spinor_l1(s: &MajoranaSpinor<G>) -> f64 {
    l1(&s.0[0]) + l1(&s.0[1])
}

fn form_l1(z: &SpinorForm<G>) -> f64 {
    spinor_l1(&z.slot(0)) + spinor_l1(&z.slot(1))
}

/// Spinor deviation relative to `scale`, zero when both vanish.
fn ratio(dev: f64, scale: f64) -> f64 {
    if dev == 0.0 {
        0.0
    } else {
        dev / scale
    }
}

fn clifford_relation(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(6);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let (a, b, s) = (covector(&mut rng), covector(&mut rng), spinor(&mut rng, n));
        let lhs = clifford_act(a, &clifford_act(b, &s)) + clifford_act(b, &clifford_act(a, &s));
        let rhs = s.scale(2.0 * (a[0] * b[0] + a[1] * b[1]));
        let scale = (a[0].abs() + a[1].abs()) * (b[0].abs() + b[1].abs()) * spinor_l1(&s);
        worst = worst.max(ratio((lhs - rhs).max_abs(), scale));
    }
    ctx.pointwise(worst)
}

fn clifford_relation_exact(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(7);
    let mut mismatches = 0;
    for _ in 0..CASES {
        let s = MajoranaSpinor([rational(&mut rng, n), rational(&mut rng, n)]);
        let zero = MajoranaSpinor::zero_like(&Q::zero(n));
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let lhs =
                apply(&GAMMA[i], &apply(&GAMMA[j], &s)) + apply(&GAMMA[j], &apply(&GAMMA[i], &s));
            let rhs = if i == j {
                s.clone() + s.clone()
            } else {
                zero.clone()
            };
            mismatches += usize::from(lhs != rhs);
        }
    }
    ctx.pointwise(mismatches as f64)
}

fn symmetry_swap(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(8);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let (a, s, t) = (covector(&mut rng), spinor(&mut rng, n), spinor(&mut rng, n));
        let (gs, gt) = (clifford_act(a, &s), clifford_act(a, &t));
        let scale = (a[0].abs() + a[1].abs()) * spinor_l1(&s) * spinor_l1(&t);
        let dm = (metric(&gs, &t) - &metric(&s, &gt)).max_abs();
        let dw = (omega(&s, &gt) + &omega(&gs, &t)).max_abs();
        worst = worst.max(ratio(dm.max(dw), scale));
    }
    ctx.pointwise(worst)
}

fn odd_spinor(rng: &mut ChaCha8Rng, n: usize) -> MajoranaSpinor<G> {
    MajoranaSpinor([odd(rng, n), odd(rng, n)])
}

fn odd_swap(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(9);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let (s, t) = (odd_spinor(&mut rng, n), odd_spinor(&mut rng, n));
        let scale = spinor_l1(&s) * spinor_l1(&t);
        let dm = (metric(&s, &t) + &metric(&t, &s)).max_abs();
        let dw = (omega(&s, &t) - &omega(&t, &s)).max_abs();
        worst = worst.max(ratio(dm.max(dw), scale));
    }
    ctx.pointwise(worst)
}

fn form_metric<R: Ring>(z: &SpinorForm<R>, w: &SpinorForm<R>) -> R {
    metric(&z.slot(0), &w.slot(0)) + metric(&z.slot(1), &w.slot(1))
}

fn projectors(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(10);
    let mut worst = 0.0f64;
    for _ in 0..CASES {
        let (z, w) = (form(&mut rng, n), form(&mut rng, n));
        let (p, q) = (project_p(&z), project_q(&z));
        let scale = form_l1(&z);
        let devs = [
            (project_p(&p) - p.clone()).max_abs(),
            (project_q(&q) - q.clone()).max_abs(),
            project_q(&p).max_abs(),
            project_p(&q).max_abs(),
            (p.clone() + q.clone() - z.clone()).max_abs(),
        ];
        worst = worst.max(ratio(devs.into_iter().fold(0.0, f64::max), scale));
        let adj = (form_metric(&p, &w) - &form_metric(&z, &project_p(&w))).max_abs();
        worst = worst.max(ratio(adj, scale * form_l1(&w)));
    }
    ctx.pointwise(worst)
}

fn projectors_exact(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(11);
    let zero = SpinorForm::zero_like(&Q::zero(n));
    let mut mismatches = 0;
    for _ in 0..CASES {
        let z = SpinorForm([[0; 2]; 2].map(|r| r.map(|_| rational(&mut rng, n))));
        let (p, q) = (project_p(&z), project_q(&z));
        mismatches += usize::from(project_p(&p) != p);
        mismatches += usize::from(project_q(&q) != q);
        mismatches += usize::from(project_p(&q) != zero);
        mismatches += usize::from(project_q(&p) != zero);
        mismatches += usize::from(p + q != z);
        mismatches +=
            usize::from(quantize(&project_q(&z)) != MajoranaSpinor::zero_like(&Q::zero(n)));
    }
    ctx.pointwise(mismatches as f64)
}

fn projector_images(ctx: &Ctx) -> CheckResult {
    let w = weyl_frame();
    let wbar = w.map(|c| c.conj());
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    // dz = e¹ + i e²
    let (dz, dzbar) = ([one, i], [one, -i]);
    let tensor = |s: &MajoranaSpinor<Complex64>, t: [Complex64; 2]| {
        SpinorForm([0, 1].map(|a| [0, 1].map(|mu| s.0[a] * t[mu])))
    };
    let gap =
        |a: &SpinorForm<Complex64>, b: &SpinorForm<Complex64>| (a.clone() - b.clone()).max_abs();
    let mut worst = 0.0f64;
    for z in [tensor(&w, dz), tensor(&wbar, dzbar)] {
        worst = worst
            .max(gap(&project_p(&z), &z))
            .max(project_q(&z).max_abs());
    }
    for z in [tensor(&w, dzbar), tensor(&wbar, dz)] {
        worst = worst
            .max(gap(&project_q(&z), &z))
            .max(project_p(&z).max_abs());
    }
    ctx.pointwise(worst)
}

fn odd_pairing_nontrivial(ctx: &Ctx) -> CheckResult {
    let n = ctx.config.generators;
    let mut rng = ctx.rng(12);
    let s = MajoranaSpinor([
        G::generator(0, n)? + &G::generator(1, n)?.scale(0.5),
        G::generator(2, n)? - &G::generator(3, n)?,
    ]);
    let t = odd_spinor(&mut rng, n);
    ctx.pointwise(omega(&s, &t).max_abs().max(omega(&s, &s).max_abs()))
}
