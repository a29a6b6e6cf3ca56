//! Two-fold permutation orbifold `(A ⊗ A)^{Z2}`.
//!
//! Sectors come in three families: unordered pairs `λ ≠ μ`, the two
//! summands `(λ, ε)` of each diagonal `λ ⊗ λ`, and the twisted sectors
//! `^(λ, ε)`. All modular data of the orbifold is written in closed form in
//! terms of `S`, the weights and the matrix `P = T^{1/2} S T² S T^{1/2}` of
//! the input theory.

use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::modular::{
    max_abs, rational_to_f64, unit_phase, wrap, CMatrix, FusionRing, ModularData, ValidatedTheory,
    EPS_INT, EPS_MOD,
};

/// A sector label of the orbifold, in terms of input-theory label indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbifoldLabelZ2 {
    /// `λ ⊗ μ ⊕ μ ⊗ λ` restricted, with `lambda < mu`.
    Pair { lambda: usize, mu: usize },
    /// One of the two summands of `λ ⊗ λ`.
    Diag { lambda: usize, eps: u8 },
    /// Twisted sector.
    Twist { lambda: usize, eps: u8 },
}

impl OrbifoldLabelZ2 {
    /// Display name using the input theory's label names.
    pub fn name(&self, md: &ModularData) -> String {
        let n = |i: usize| md.labels()[i].name.as_str();
        match *self {
            Self::Pair { lambda, mu } => format!("({},{})", n(lambda), n(mu)),
            Self::Diag { lambda, eps } => format!("({};{eps})", n(lambda)),
            Self::Twist { lambda, eps } => format!("^({};{eps})", n(lambda)),
        }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, Self::Twist { .. })
    }
}

impl fmt::Display for OrbifoldLabelZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pair { lambda, mu } => write!(f, "pair({lambda},{mu})"),
            Self::Diag { lambda, eps } => write!(f, "diag({lambda},{eps})"),
            Self::Twist { lambda, eps } => write!(f, "twist({lambda},{eps})"),
        }
    }
}

/// Index arithmetic for the fixed label order.
#[derive(Debug, Clone, Copy)]
struct Layout {
    m: usize,
}

impl Layout {
    fn pairs(&self) -> usize {
        self.m * (self.m - 1) / 2
    }

    fn len(&self) -> usize {
        self.pairs() + 4 * self.m
    }

    fn diag(&self, lambda: usize, eps: u8) -> usize {
        self.pairs() + 2 * lambda + eps as usize
    }

    #[cfg(test)]
    fn twist(&self, lambda: usize, eps: u8) -> usize {
        self.pairs() + 2 * self.m + 2 * lambda + eps as usize
    }
}

/// Orbifold labels: pairs (lexicographic), diagonals (λ-major, ε-minor),
/// then twisted sectors.
pub fn z2_labels(md: &ModularData) -> Vec<OrbifoldLabelZ2> {
    let m = md.rank();
    let mut out = Vec::with_capacity(Layout { m }.len());
    for lambda in 0..m {
        for mu in lambda + 1..m {
            out.push(OrbifoldLabelZ2::Pair { lambda, mu });
        }
    }
    for lambda in 0..m {
        for eps in 0..2 {
            out.push(OrbifoldLabelZ2::Diag { lambda, eps });
        }
    }
    for lambda in 0..m {
        for eps in 0..2 {
            out.push(OrbifoldLabelZ2::Twist { lambda, eps });
        }
    }
    out
}

/// `P` together with `P̃ = e^{2πi(c−c₀)/8} P`.
#[derive(Debug, Clone)]
pub struct PMatrix {
    pub p: CMatrix,
    pub p_tilde: CMatrix,
}

/// `P = T^{1/2} S T² S T^{1/2}` with `T^{1/2}_λ = e^{πi(Δ_λ − c₀/24)}`,
/// `Δ ∈ [0, 1)` and `c₀ ∈ [0, 8)`.
pub fn p_matrix(md: &ValidatedTheory) -> PMatrix {
    let c0 = md.c0();
    let half: Vec<Complex64> = md
        .weights()
        .iter()
        .map(|w| unit_phase((rational_to_f64(w) - c0 / 24.0) / 2.0))
        .collect();
    let t2: Vec<Complex64> = md.t_diagonal(c0).iter().map(|t| t * t).collect();
    let half = CMatrix::from_diagonal(&DVector::from_vec(half));
    let t2 = CMatrix::from_diagonal(&DVector::from_vec(t2));
    let s = md.s();
    let p = &half * s * t2 * s * &half;
    let phase = unit_phase((rational_to_f64(&md.central_charge()) - c0) / 8.0);
    let p_tilde = &p * phase;
    PMatrix { p, p_tilde }
}

fn sign(e: u8) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Orbifold S-matrix in the order of [`z2_labels`].
pub fn z2_s_matrix(md: &ValidatedTheory) -> Result<CMatrix> {
    let labels = z2_labels(md);
    let s = md.s();
    let p = p_matrix(md).p;
    let half = 0.5;
    use OrbifoldLabelZ2::*;
    let entry = |a: &OrbifoldLabelZ2, b: &OrbifoldLabelZ2| -> Complex64 {
        match (*a, *b) {
            (Pair { lambda: l, mu: u }, Pair { lambda: l1, mu: u1 }) => {
                s[(l, l1)] * s[(u, u1)] + s[(l, u1)] * s[(u, l1)]
            }
            (Pair { lambda: l, mu: u }, Diag { lambda: k, .. })
            | (Diag { lambda: k, .. }, Pair { lambda: l, mu: u }) => s[(l, k)] * s[(u, k)],
            (Pair { .. }, Twist { .. }) | (Twist { .. }, Pair { .. }) => Complex64::zero(),
            (Diag { lambda: l, .. }, Diag { lambda: l1, .. }) => s[(l, l1)] * s[(l, l1)] * half,
            (Diag { lambda: l, eps }, Twist { lambda: l1, .. })
            | (Twist { lambda: l1, .. }, Diag { lambda: l, eps }) => {
                s[(l, l1)] * (half * sign(eps))
            }
            (
                Twist { lambda: l, eps: e },
                Twist {
                    lambda: l1,
                    eps: e1,
                },
            ) => p[(l, l1)] * (half * sign(e + e1)),
        }
    };
    let n = labels.len();
    let out = CMatrix::from_fn(n, n, |i, j| entry(&labels[i], &labels[j]));
    let residual = max_abs(&(&out * out.adjoint() - CMatrix::identity(n, n)));
    if residual >= EPS_MOD {
        return Err(Error::Inconsistent(format!(
            "orbifold S-matrix is not unitary (residual {residual:.3e})"
        )));
    }
    Ok(out)
}

/// Orbifold conformal weights (reduced mod 1) and central charge `2c`.
pub fn z2_weights(md: &ModularData) -> (Vec<Rational64>, Rational64) {
    let w = md.weights();
    let c = md.central_charge();
    let weights = z2_labels(md)
        .iter()
        .map(|l| {
            let x = match *l {
                OrbifoldLabelZ2::Pair { lambda, mu } => w[lambda] + w[mu],
                OrbifoldLabelZ2::Diag { lambda, .. } => w[lambda] * 2,
                OrbifoldLabelZ2::Twist { lambda, eps } => {
                    w[lambda] / 2 + c / 16 + Rational64::new(eps as i64, 2)
                }
            };
            crate::modular::frac(x)
        })
        .collect();
    (weights, c * 2)
}

struct ClosedForm<'a> {
    ring: &'a FusionRing,
    s: &'a CMatrix,
    p: &'a CMatrix,
    inv_s1: Vec<Complex64>,
}

impl ClosedForm<'_> {
    fn n(&self, a: usize, b: usize, c: usize) -> f64 {
        self.ring.get(a, b, c) as f64
    }

    /// `Σ_e N_{ab}^e N_{cd}^e`
    fn f4(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        (0..self.ring.rank())
            .map(|e| self.n(a, b, e) * self.n(c, d, e))
            .sum()
    }

    /// `Σ_e N_{ab}^e N_{ec}^d`
    fn chain(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        (0..self.ring.rank())
            .map(|e| self.n(a, b, e) * self.n(e, c, d))
            .sum()
    }

    /// `Σ_ρ S_{kρ} P_{k'ρ} P*_{νρ} / S_{1ρ}`
    fn q(&self, k: usize, kk: usize, nu: usize) -> Complex64 {
        (0..self.ring.rank())
            .map(|r| self.s[(k, r)] * self.p[(kk, r)] * self.p[(nu, r)].conj() * self.inv_s1[r])
            .sum()
    }

    /// `Σ_ρ P_{aρ} P_{bρ} S*_{νρ} / S_{1ρ}`
    fn r(&self, a: usize, b: usize, nu: usize) -> Complex64 {
        (0..self.ring.rank())
            .map(|r| self.p[(a, r)] * self.p[(b, r)] * self.s[(nu, r)].conj() * self.inv_s1[r])
            .sum()
    }

    fn coefficient(&self, a: OrbifoldLabelZ2, b: OrbifoldLabelZ2, c: OrbifoldLabelZ2) -> Complex64 {
        use OrbifoldLabelZ2::*;
        let re = |x: f64| Complex64::new(x, 0.0);
        // Order the inputs as Diag < Twist < Pair; the rules are symmetric in them.
        let rank = |l: &OrbifoldLabelZ2| match l {
            Diag { .. } => 0,
            Twist { .. } => 1,
            Pair { .. } => 2,
        };
        let (a, b) = if rank(&a) > rank(&b) { (b, a) } else { (a, b) };
        match (a, b, c) {
            (
                Pair { lambda: l, mu: u },
                Pair { lambda: l1, mu: u1 },
                Pair { lambda: l2, mu: u2 },
            ) => re(self.n(l, l1, l2) * self.n(u, u1, u2)
                + self.n(l, l1, u2) * self.n(u, u1, l2)
                + self.n(l, u1, l2) * self.n(u, l1, u2)
                + self.n(l, u1, u2) * self.n(u, l1, l2)),
            (Pair { lambda: l, mu: u }, Pair { lambda: l1, mu: u1 }, Diag { lambda: k, .. }) => {
                re(self.n(l, l1, k) * self.n(u, u1, k) + self.n(l, u1, k) * self.n(u, l1, k))
            }
            (Diag { lambda: k, .. }, Pair { lambda: l, mu: u }, Pair { lambda: l2, mu: u2 }) => {
                re(self.n(l, k, l2) * self.n(u, k, u2) + self.n(l, k, u2) * self.n(u, k, l2))
            }
            (Diag { lambda: k, .. }, Pair { lambda: l, mu: u }, Diag { lambda: nu, .. }) => {
                re(self.n(l, k, nu) * self.n(u, k, nu))
            }
            (Twist { lambda: k, .. }, Pair { lambda: l, mu: u }, Twist { lambda: nu, .. }) => {
                re(self.chain(l, u, k, nu))
            }
            (Diag { lambda: k, .. }, Diag { lambda: k1, .. }, Pair { lambda: l, mu: u }) => {
                re(self.n(k, k1, l) * self.n(k, k1, u))
            }
            (
                Diag { lambda: k, eps: e },
                Diag {
                    lambda: k1,
                    eps: e1,
                },
                Diag {
                    lambda: k2,
                    eps: e2,
                },
            ) => {
                let x = self.n(k, k1, k2);
                re(0.5 * x * (x + sign(e + e1 + e2)))
            }
            (
                Diag { lambda: k, eps: e },
                Twist {
                    lambda: k1,
                    eps: e1,
                },
                Twist {
                    lambda: nu,
                    eps: e2,
                },
            ) => re(0.5 * self.chain(k, k, k1, nu)) + self.q(k, k1, nu) * (0.5 * sign(e + e1 + e2)),
            (Twist { lambda: l, .. }, Twist { lambda: l1, .. }, Pair { lambda: u1, mu: u2 }) => {
                re(self.f4(l, l1, u1, u2))
            }
            (
                Twist { lambda: l, eps: e },
                Twist {
                    lambda: l1,
                    eps: e1,
                },
                Diag {
                    lambda: nu,
                    eps: e2,
                },
            ) => re(0.5 * self.f4(l, l1, nu, nu)) + self.r(l, l1, nu) * (0.5 * sign(e + e1 + e2)),
            _ => Complex64::zero(),
        }
    }
}

/// Orbifold fusion rules evaluated from their closed forms in terms of the
/// input fusion ring, `S` and `P`.
pub fn z2_closed_form_fusion(md: &ValidatedTheory) -> Result<FusionRing> {
    let labels = z2_labels(md);
    let pm = p_matrix(md);
    let v = md.vacuum();
    let cf = ClosedForm {
        ring: md.fusion(),
        s: md.s(),
        p: &pm.p,
        inv_s1: (0..md.rank()).map(|r| md.s()[(v, r)].inv()).collect(),
    };
    let n = labels.len();
    let mut coeffs = vec![0u32; n * n * n];
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            for (k, c) in labels.iter().enumerate() {
                let z = cf.coefficient(*a, *b, *c);
                let r = z.re.round();
                if (z - Complex64::new(r, 0.0)).norm() > EPS_INT || r < 0.0 {
                    return Err(Error::Inconsistent(format!(
                        "closed-form fusion coefficient N[{a}][{b}][{c}] = {z} is not a non-negative integer"
                    )));
                }
                coeffs[(i * n + j) * n + k] = r as u32;
            }
        }
    }
    FusionRing::new(
        orbifold_label_structs(md, &labels),
        Layout { m: md.rank() }.diag(v, 0),
        coeffs,
    )
}

fn orbifold_label_structs(
    md: &ModularData,
    labels: &[OrbifoldLabelZ2],
) -> Vec<crate::modular::Label> {
    labels
        .iter()
        .enumerate()
        .map(|(index, l)| crate::modular::Label {
            index,
            name: l.name(md),
        })
        .collect()
}

/// Assembled orbifold: its labels and validated modular data.
#[derive(Debug, Clone)]
pub struct Z2Orbifold {
    pub labels: Vec<OrbifoldLabelZ2>,
    pub theory: ValidatedTheory,
    input_rank: usize,
    input_vacuum: usize,
}

impl Z2Orbifold {
    pub fn index_of(&self, label: OrbifoldLabelZ2) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    pub fn vacuum_label(&self) -> OrbifoldLabelZ2 {
        OrbifoldLabelZ2::Diag {
            lambda: self.input_vacuum,
            eps: 0,
        }
    }

    fn layout(&self) -> Layout {
        Layout { m: self.input_rank }
    }
}

/// Builds, validates and cross-checks the orbifold modular data.
///
/// Fails with the validation report if any modular check fails, and with an
/// inconsistency error if Verlinde fusion differs from the closed form, if
/// `ċ₀ ≢ 2c₀ (mod 8)` or if `μ_orb ≠ 4μ²`.
pub fn z2_assemble(md: &ValidatedTheory) -> Result<Z2Orbifold> {
    let labels = z2_labels(md);
    let s = z2_s_matrix(md)?;
    let (weights, c) = z2_weights(md);
    let names = labels.iter().map(|l| l.name(md)).collect();
    let vacuum = Layout { m: md.rank() }.diag(md.vacuum(), 0);
    let data = ModularData::new(format!("{}^Z2", md.name()), names, vacuum, s, weights, c)?;
    let theory = data.validated()?;

    let closed = z2_closed_form_fusion(md)?;
    if closed.coefficients() != theory.fusion().coefficients() {
        let n = labels.len();
        let i = closed
            .coefficients()
            .iter()
            .zip(theory.fusion().coefficients())
            .position(|(a, b)| a != b)
            .unwrap_or(0);
        return Err(Error::Inconsistent(format!(
            "Verlinde fusion differs from closed form at ({}, {}, {})",
            labels[i / (n * n)],
            labels[(i / n) % n],
            labels[i % n]
        )));
    }

    let drift = wrap(theory.c0() - 2.0 * md.c0() + 4.0, 8.0) - 4.0;
    if drift.abs() >= EPS_MOD {
        return Err(Error::Inconsistent(format!(
            "orbifold c0 = {} is not 2c0 = {} mod 8",
            theory.c0(),
            2.0 * md.c0()
        )));
    }
    let expected_mu = 4.0 * md.mu() * md.mu();
    if (theory.mu() - expected_mu).abs() >= EPS_MOD * expected_mu {
        return Err(Error::Inconsistent(format!(
            "orbifold index {} differs from 4 mu^2 = {expected_mu}",
            theory.mu()
        )));
    }

    Ok(Z2Orbifold {
        labels,
        theory,
        input_rank: md.rank(),
        input_vacuum: md.vacuum(),
    })
}

/// One row of the integrality sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralityRow {
    pub triple: (usize, usize, usize),
    /// `+1` or `-1`.
    pub sign: i8,
    pub value: Complex64,
    pub nearest: i64,
    pub residual: f64,
    pub integral: bool,
    pub nonnegative: bool,
}

/// Evaluates `½Σ_μ S_{aμ}²S_{bμ}S_{cμ}/S_{1μ}² ± ½Σ_μ S_{aμ}P_{bμ}P_{cμ}/S_{1μ}`
/// for every label triple and both signs.
pub fn integrality_report(md: &ValidatedTheory) -> Vec<IntegralityRow> {
    let m = md.rank();
    let s = md.s();
    let p = p_matrix(md).p;
    let v = md.vacuum();
    let inv: Vec<Complex64> = (0..m).map(|r| s[(v, r)].inv()).collect();
    let mut rows = Vec::with_capacity(2 * m * m * m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let t1: Complex64 = (0..m)
                    .map(|r| s[(a, r)] * s[(a, r)] * s[(b, r)] * s[(c, r)] * inv[r] * inv[r])
                    .sum();
                let t2: Complex64 = (0..m)
                    .map(|r| s[(a, r)] * p[(b, r)] * p[(c, r)] * inv[r])
                    .sum();
                for sign in [1i8, -1] {
                    let value = (t1 + t2 * f64::from(sign)) * 0.5;
                    let nearest = value.re.round();
                    let residual = (value - Complex64::new(nearest, 0.0)).norm();
                    rows.push(IntegralityRow {
                        triple: (a, b, c),
                        sign,
                        value,
                        nearest: nearest as i64,
                        residual,
                        integral: residual < EPS_INT,
                        nonnegative: nearest >= 0.0,
                    });
                }
            }
        }
    }
    rows
}

/// `G(α) = S_{(1;1),α} / S_{(1;0),α}`: `+1` on untwisted and `-1` on
/// twisted sectors.
pub fn z2_grading(orb: &Z2Orbifold) -> Result<Vec<i8>> {
    let layout = orb.layout();
    let v = orb.input_vacuum;
    let s = orb.theory.s();
    let (i0, i1) = (layout.diag(v, 0), layout.diag(v, 1));
    (0..orb.labels.len())
        .map(|a| {
            let ratio = s[(i1, a)] / s[(i0, a)];
            if (ratio - 1.0).norm() < EPS_MOD {
                Ok(1)
            } else if (ratio + 1.0).norm() < EPS_MOD {
                Ok(-1)
            } else {
                Err(Error::Inconsistent(format!(
                    "grading ratio {ratio} at {} is not ±1",
                    orb.labels[a]
                )))
            }
        })
        .collect()
}

/// `Σ d²` over pairs, diagonals and twisted sectors.
pub fn family_dimension_sums(orb: &Z2Orbifold) -> [f64; 3] {
    let mut sums = [0.0; 3];
    for (l, d) in orb.labels.iter().zip(orb.theory.dims()) {
        let f = match l {
            OrbifoldLabelZ2::Pair { .. } => 0,
            OrbifoldLabelZ2::Diag { .. } => 1,
            OrbifoldLabelZ2::Twist { .. } => 2,
        };
        sums[f] += d * d;
    }
    sums
}

/// Expected family sums `2(μ² − Σd⁴)`, `2Σd⁴`, `2μ²` of the input theory.
pub fn expected_family_sums(md: &ValidatedTheory) -> [f64; 3] {
    let mu = md.mu();
    let d4: f64 = md.dims().iter().map(|d| d.powi(4)).sum();
    [2.0 * (mu * mu - d4), 2.0 * d4, 2.0 * mu * mu]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::{builtin_ising, builtin_su2, builtin_trivial};

    fn su2(k: u32) -> ValidatedTheory {
        builtin_su2(k).unwrap().validated().unwrap()
    }

    fn ising() -> ValidatedTheory {
        builtin_ising().validated().unwrap()
    }

    #[test]
    fn label_counts() {
        assert_eq!(z2_labels(&su2(1)).len(), 9);
        assert_eq!(z2_labels(&ising()).len(), 15);
        assert_eq!(z2_labels(&builtin_trivial()).len(), 4);
    }

    #[test]
    fn su2_level1_vacuum_entry() {
        let md = su2(1);
        let s = z2_s_matrix(&md).unwrap();
        let v = Layout { m: 2 }.diag(0, 0);
        assert!((s[(v, v)] - 0.25).norm() < 1e-12);
    }

    #[test]
    fn pair_twist_block_vanishes() {
        let md = ising();
        let labels = z2_labels(&md);
        let s = z2_s_matrix(&md).unwrap();
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                if matches!(a, OrbifoldLabelZ2::Pair { .. }) && b.is_twisted() {
                    assert_eq!(s[(i, j)], Complex64::zero());
                }
            }
        }
    }

    #[test]
    fn quantum_dimensions_by_family() {
        let md = ising();
        let orb = z2_assemble(&md).unwrap();
        let d = md.dims();
        let root_mu = md.mu().sqrt();
        for (l, x) in orb.labels.iter().zip(orb.theory.dims()) {
            let expect = match *l {
                OrbifoldLabelZ2::Pair { lambda, mu } => 2.0 * d[lambda] * d[mu],
                OrbifoldLabelZ2::Diag { lambda, .. } => d[lambda] * d[lambda],
                OrbifoldLabelZ2::Twist { lambda, .. } => d[lambda] * root_mu,
            };
            assert!((x - expect).abs() < 1e-9, "{l}");
        }
    }

    #[test]
    fn twisted_weights() {
        let (w, c) = z2_weights(&builtin_ising());
        let layout = Layout { m: 3 };
        assert_eq!(w[layout.twist(0, 0)], Rational64::new(1, 32));
        assert_eq!(c, Rational64::from_integer(1));
        let (w, _) = z2_weights(&builtin_su2(1).unwrap());
        assert_eq!(w[Layout { m: 2 }.twist(1, 1)], Rational64::new(11, 16));
    }

    #[test]
    fn diagonal_weights_agree() {
        let md = builtin_su2(3).unwrap();
        let (w, _) = z2_weights(&md);
        let layout = Layout { m: 4 };
        for l in 0..4 {
            assert_eq!(w[layout.diag(l, 0)], w[layout.diag(l, 1)]);
            assert_eq!(
                w[layout.diag(l, 0)],
                crate::modular::frac(md.weights()[l] * 2)
            );
        }
    }

    #[test]
    fn p_matrix_is_unitary_and_symmetric() {
        for md in [
            su2(1),
            su2(3),
            ising(),
            builtin_trivial().validated().unwrap(),
        ] {
            let p = p_matrix(&md).p;
            let n = p.nrows();
            assert!(max_abs(&(&p * p.adjoint() - CMatrix::identity(n, n))) < EPS_MOD);
            assert!(max_abs(&(&p - p.transpose())) < EPS_MOD);
        }
        let p = p_matrix(&builtin_trivial().validated().unwrap()).p;
        assert!((p[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn assembled_indices() {
        let orb = z2_assemble(&su2(1)).unwrap();
        assert_eq!(orb.theory.rank(), 9);
        assert!((orb.theory.mu() - 16.0).abs() < 1e-9);
        assert!((z2_assemble(&ising()).unwrap().theory.mu() - 64.0).abs() < 1e-8);
        let triv = z2_assemble(&builtin_trivial().validated().unwrap()).unwrap();
        assert_eq!(triv.theory.rank(), 4);
        assert!((triv.theory.mu() - 4.0).abs() < 1e-9);
        assert!(triv.theory.dims().iter().all(|d| (d - 1.0).abs() < 1e-9));
    }

    #[test]
    fn twist_square_has_total_dimension_two() {
        let md = su2(1);
        let orb = z2_assemble(&md).unwrap();
        let t = orb
            .index_of(OrbifoldLabelZ2::Twist { lambda: 0, eps: 0 })
            .unwrap();
        let f = orb.theory.fusion();
        let total: f64 = (0..orb.labels.len())
            .map(|c| f.get(t, t, c) as f64 * orb.theory.dims()[c])
            .sum();
        assert!((total - 2.0).abs() < 1e-9);
        assert!((orb.theory.dims()[t].powi(2) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn diag_diag_rule() {
        let md = ising();
        let f = z2_closed_form_fusion(&md).unwrap();
        let layout = Layout { m: 3 };
        let sigma = 2;
        // σ ⊗ σ ∋ 1 once: ½·1·(1 + (-1)^ε)
        assert_eq!(
            f.get(
                layout.diag(sigma, 0),
                layout.diag(sigma, 0),
                layout.diag(0, 0)
            ),
            1
        );
        assert_eq!(
            f.get(
                layout.diag(sigma, 0),
                layout.diag(sigma, 0),
                layout.diag(0, 1)
            ),
            0
        );
        assert_eq!(
            f.get(
                layout.diag(sigma, 1),
                layout.diag(sigma, 0),
                layout.diag(0, 1)
            ),
            1
        );
    }

    #[test]
    fn grading_signs() {
        let orb = z2_assemble(&ising()).unwrap();
        let g = z2_grading(&orb).unwrap();
        for (l, s) in orb.labels.iter().zip(&g) {
            assert_eq!(*s, if l.is_twisted() { -1 } else { 1 });
        }
    }

    #[test]
    fn trivial_integrality() {
        let rows = integrality_report(&builtin_trivial().validated().unwrap());
        assert_eq!(rows.len(), 2);
        let mut vals: Vec<i64> = rows.iter().map(|r| r.nearest).collect();
        vals.sort();
        assert_eq!(vals, vec![0, 1]);
        assert!(rows.iter().all(|r| r.integral));
    }
}
