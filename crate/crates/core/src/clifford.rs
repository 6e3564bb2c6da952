//! Real Majorana spinor module of Cl(2,0).
//!
//! Conventions (fixed for the whole crate):
//!
//! * γ¹ = diag(1, −1), γ² = [[0, 1], [1, 0]], both real symmetric.
//! * The spinor almost complex structure is `ACI = −γ¹γ² = [[0, −1], [1, 0]]`.
//! * The symplectic form is ω(s, s') = g(ACI·s, s') = s₁s'₂ − s₂s'₁, so that
//!   ω(𝔰₁, 𝔰₂) = +1. Both ε_{kl} and ε^{kl} have ε₁₂ = ε¹² = +1.
//! * Components of dual spinors transform with the same matrices as spinor
//!   components, so the Clifford action on 𝕊* is the same componentwise
//!   formula.
//!
//! Products of ring scalars keep their left-to-right order everywhere, which
//! is what makes the odd (Grassmann) sign rules come out right.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::grassmann::Ring;

pub type Mat2 = [[f64; 2]; 2];

pub const GAMMA: [Mat2; 2] = [[[1.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [1.0, 0.0]]];
/// γ¹γ².
pub const GAMMA12: Mat2 = [[0.0, 1.0], [-1.0, 0.0]];
pub const ACI: Mat2 = [[0.0, -1.0], [1.0, 0.0]];
/// ε_{kl} = ε^{kl}.
pub const EPS: Mat2 = [[0.0, 1.0], [-1.0, 0.0]];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// The gamma matrices and complex structure in use, with a self-check of the
/// algebraic relations they must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordConvention {
    pub gamma: [Mat2; 2],
    pub aci: Mat2,
    pub eps: Mat2,
}

impl Default for CliffordConvention {
    fn default() -> Self {
        Self {
            gamma: GAMMA,
            aci: ACI,
            eps: EPS,
        }
    }
}

impl CliffordConvention {
    /// Largest deviation from: the Clifford relation, ACI² = −1,
    /// ACI = −γ¹γ², and ω(𝔰₁, 𝔰₂) = +1.
    pub fn defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                let ab = mat_mul(&self.gamma[a], &self.gamma[b]);
                let ba = mat_mul(&self.gamma[b], &self.gamma[a]);
                let target = if a == b { 2.0 } else { 0.0 };
                for i in 0..2 {
                    for j in 0..2 {
                        let id = if i == j { target } else { 0.0 };
                        worst = worst.max((ab[i][j] + ba[i][j] - id).abs());
                    }
                }
            }
        }
        let sq = mat_mul(&self.aci, &self.aci);
        let g12 = mat_mul(&self.gamma[0], &self.gamma[1]);
        for i in 0..2 {
            for j in 0..2 {
                let id = if i == j { -1.0 } else { 0.0 };
                worst = worst.max((sq[i][j] - id).abs());
                worst = worst.max((self.aci[i][j] + g12[i][j]).abs());
            }
        }
        // ω(𝔰₁, 𝔰₂) = g(ACI 𝔰₁, 𝔰₂) = ACI[1][0]
        worst.max((self.aci[1][0] - 1.0).abs())
    }
}

/// Spinor with components in the orthonormal frame 𝔰₁, 𝔰₂.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaSpinor<R>(pub [R; 2]);

/// Element of 𝕊* in the dual frame 𝔰¹, 𝔰².
#[derive(Debug, Clone, PartialEq)]
pub struct DualSpinor<R>(pub [R; 2]);

/// Spinor-valued one-form at a point: `z[a][k]` is spinor component `a`
/// against orthonormal coframe element `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorForm<R>(pub [[R; 2]; 2]);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingKind {
    Metric,
    Symplectic,
}

impl<R: Ring> MajoranaSpinor<R> {
    pub fn new(a: R, b: R) -> Self {
        Self([a, b])
    }

    pub fn zero_like(r: &R) -> Self {
        Self([r.zero_like(), r.zero_like()])
    }

    /// Frame vector 𝔰_index embedded in the ring of `r`.
    pub fn basis(index: usize, r: &R) -> Self {
        let mut s = Self::zero_like(r);
        s.0[index] = r.one_like();
        s
    }

    pub fn scale(&self, k: f64) -> Self {
        Self([self.0[0].scale(k), self.0[1].scale(k)])
    }

    /// `c · s`, ring factor on the left.
    pub fn left_mul(&self, c: &R) -> Self {
        Self([c.clone() * &self.0[0], c.clone() * &self.0[1]])
    }

    /// `s · c`, ring factor on the right.
    pub fn right_mul(&self, c: &R) -> Self {
        Self([self.0[0].clone() * c, self.0[1].clone() * c])
    }

    pub fn max_abs(&self) -> f64 {
        self.0[0].max_abs().max(self.0[1].max_abs())
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> MajoranaSpinor<S> {
        MajoranaSpinor([f(&self.0[0]), f(&self.0[1])])
    }
}

impl<R: Ring> Add for MajoranaSpinor<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a, b] = self.0;
        let [c, d] = rhs.0;
        Self([a + c, b + d])
    }
}

impl<R: Ring> Sub for MajoranaSpinor<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [a, b] = self.0;
        let [c, d] = rhs.0;
        Self([a - c, b - d])
    }
}

impl<R: Ring> Neg for MajoranaSpinor<R> {
    type Output = Self;
    fn neg(self) -> Self {
        let [a, b] = self.0;
        Self([-a, -b])
    }
}

impl<R: Ring> SpinorForm<R> {
    pub fn zero_like(r: &R) -> Self {
        Self([
            [r.zero_like(), r.zero_like()],
            [r.zero_like(), r.zero_like()],
        ])
    }

    /// The spinor `z(e_k)`.
    pub fn slot(&self, k: usize) -> MajoranaSpinor<R> {
        MajoranaSpinor([self.0[0][k].clone(), self.0[1][k].clone()])
    }

    pub fn from_slots(slots: [MajoranaSpinor<R>; 2]) -> Self {
        let [MajoranaSpinor([a0, b0]), MajoranaSpinor([a1, b1])] = slots;
        Self([[a0, a1], [b0, b1]])
    }

    /// `s ⊗ e^k`.
    pub fn tensor(s: &MajoranaSpinor<R>, k: usize) -> Self {
        let mut z = Self::zero_like(&s.0[0]);
        z.0[0][k] = s.0[0].clone();
        z.0[1][k] = s.0[1].clone();
        z
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0.clone().map(|row| row.map(|c| c.scale(k))))
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(Ring::max_abs)
            .fold(0.0, f64::max)
    }
}

impl<R: Ring> Add for SpinorForm<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Self([[a + e, b + f], [c + g, d + h]])
    }
}

impl<R: Ring> Sub for SpinorForm<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Self([[a - e, b - f], [c - g, d - h]])
    }
}

/// Apply a constant real 2×2 matrix to spinor components.
pub fn apply<R: Ring>(m: &Mat2, s: &MajoranaSpinor<R>) -> MajoranaSpinor<R> {
    let [a, b] = &s.0;
    MajoranaSpinor([
        a.scale(m[0][0]) + &b.scale(m[0][1]),
        a.scale(m[1][0]) + &b.scale(m[1][1]),
    ])
}

/// Clifford action γ(α)s of a covector with real orthonormal components.
pub fn clifford_act<R: Ring>(alpha: [f64; 2], s: &MajoranaSpinor<R>) -> MajoranaSpinor<R> {
    let m = [
        [
            alpha[0] * GAMMA[0][0][0] + alpha[1] * GAMMA[1][0][0],
            alpha[0] * GAMMA[0][0][1] + alpha[1] * GAMMA[1][0][1],
        ],
        [
            alpha[0] * GAMMA[0][1][0] + alpha[1] * GAMMA[1][1][0],
            alpha[0] * GAMMA[0][1][1] + alpha[1] * GAMMA[1][1][1],
        ],
    ];
    apply(&m, s)
}

/// Clifford action of a covector with ring-valued orthonormal components;
/// the covector components multiply from the left.
pub fn clifford_act_ring<R: Ring>(alpha: &[R; 2], s: &MajoranaSpinor<R>) -> MajoranaSpinor<R> {
    apply(&GAMMA[0], s).left_mul(&alpha[0]) + apply(&GAMMA[1], s).left_mul(&alpha[1])
}

/// Quantization map δ_γ(z) = γ^k z_k.
pub fn quantize<R: Ring>(z: &SpinorForm<R>) -> MajoranaSpinor<R> {
    apply(&GAMMA[0], &z.slot(0)) + apply(&GAMMA[1], &z.slot(1))
}

/// δ_Θ s = ½ γ^k s ⊗ e^k, a right inverse of [`quantize`].
pub fn theta_insert<R: Ring>(s: &MajoranaSpinor<R>) -> SpinorForm<R> {
    SpinorForm::from_slots([
        apply(&GAMMA[0], s).scale(0.5),
        apply(&GAMMA[1], s).scale(0.5),
    ])
}

/// Spin-1/2 projector 𝔭 = δ_Θ ∘ δ_γ.
pub fn project_p<R: Ring>(z: &SpinorForm<R>) -> SpinorForm<R> {
    theta_insert(&quantize(z))
}

/// Spin-3/2 projector 𝔮 = 1 − 𝔭.
pub fn project_q<R: Ring>(z: &SpinorForm<R>) -> SpinorForm<R> {
    z.clone() - project_p(z)
}

/// Unique split z = δ_Θ s + g with s = δ_γ z and δ_γ g = 0.
pub fn decompose_form<R: Ring>(z: &SpinorForm<R>) -> (MajoranaSpinor<R>, SpinorForm<R>) {
    let s = quantize(z);
    let g = z.clone() - theta_insert(&s);
    (s, g)
}

/// Metric g(s, s') = s₁s'₁ + s₂s'₂ or symplectic ω(s, s') = s₁s'₂ − s₂s'₁.
pub fn spinor_pair<R: Ring>(kind: PairingKind, s: &MajoranaSpinor<R>, t: &MajoranaSpinor<R>) -> R {
    let [a, b] = &s.0;
    let [c, d] = &t.0;
    match kind {
        PairingKind::Metric => a.clone() * c + &(b.clone() * d),
        PairingKind::Symplectic => a.clone() * d - &(b.clone() * c),
    }
}

pub fn metric<R: Ring>(s: &MajoranaSpinor<R>, t: &MajoranaSpinor<R>) -> R {
    spinor_pair(PairingKind::Metric, s, t)
}

pub fn omega<R: Ring>(s: &MajoranaSpinor<R>, t: &MajoranaSpinor<R>) -> R {
    spinor_pair(PairingKind::Symplectic, s, t)
}

/// s̃ = ω(s, ·); in components s̃_j = s_k ε_{kj}, i.e. 𝔰₁ ↦ 𝔰², 𝔰₂ ↦ −𝔰¹.
pub fn symplectic_dual<R: Ring>(s: &MajoranaSpinor<R>) -> DualSpinor<R> {
    let [a, b] = &s.0;
    DualSpinor([-b.clone(), a.clone()])
}

/// 𝕊* → 𝕊 via 𝔰̃^l = −ε^{li}𝔰_i. With ε¹² = ε₁₂ = +1 this is the inverse of
/// [`symplectic_dual`].
pub fn dual_to_spinor<R: Ring>(d: &DualSpinor<R>) -> MajoranaSpinor<R> {
    let [a, b] = &d.0;
    MajoranaSpinor([b.clone(), -a.clone()])
}

/// Evaluation d(s) = d_k s_k.
pub fn evaluate<R: Ring>(d: &DualSpinor<R>, s: &MajoranaSpinor<R>) -> R {
    d.0[0].clone() * &s.0[0] + &(d.0[1].clone() * &s.0[1])
}

/// Hermitian spinor frame 𝔴 = (𝔰₁ − i𝔰₂)/√2.
pub fn weyl_frame() -> MajoranaSpinor<Complex64> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    MajoranaSpinor([Complex64::new(r, 0.0), Complex64::new(0.0, -r)])
}

/// Coordinates of a complex spinor in the frame (𝔴, 𝔴̄): s = z_W 𝔴 + z_W̄ 𝔴̄.
pub fn weyl_split(s: &MajoranaSpinor<Complex64>) -> (Complex64, Complex64) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    let [a, b] = s.0;
    ((a + i * b) * r, (a - i * b) * r)
}

/// Identification of the symmetric square of spinors with tangent vectors:
/// σ ⊗ σ' ↦ 2^{-1/2} Σ_k (σᵀγ^kσ') e_k. It sends 𝔴 ⊗ 𝔴 to e = (e₁ − ie₂)/√2.
pub fn spinor_square_to_vector(
    s: &MajoranaSpinor<Complex64>,
    t: &MajoranaSpinor<Complex64>,
) -> [Complex64; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [0, 1].map(|k| {
        let gt = apply(&GAMMA[k], t);
        (s.0[0] * gt.0[0] + s.0[1] * gt.0[1]) * r
    })
}
