//! Genus-0 modular data: S-matrix, conformal weights and central charge.

mod fusion;
mod validate;

use std::collections::HashSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use fusion::FusionRing;
pub use validate::{ValidatedTheory, ValidationCheck, ValidationReport};

/// Tolerance for matrix residuals.
pub const EPS_MOD: f64 = 1e-9;
/// Tolerance for rounding Verlinde-type sums to integers.
pub const EPS_INT: f64 = 1e-6;

pub type CMatrix = DMatrix<Complex64>;

/// A sector label of a theory.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Label {
    pub index: usize,
    pub name: String,
}

/// `e^{2πi x}`.
pub fn unit_phase(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

pub fn rational_to_f64(r: &Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Reduces a rational to `[0, 1)`.
pub fn frac(r: Rational64) -> Rational64 {
    let f = r - r.floor();
    if f < Rational64::zero() {
        f + Rational64::from_integer(1)
    } else {
        f
    }
}

/// Reduces a real number to `[0, m)`, snapping values within `1e-12` of `m` to zero.
pub(crate) fn wrap(x: f64, m: f64) -> f64 {
    let r = x.rem_euclid(m);
    if m - r < 1e-12 {
        0.0
    } else {
        r
    }
}

/// Modular data of one rational theory.
///
/// Weights are exact rationals stored in `[0, 1)`; the central charge is an
/// exact rational. Construction only checks shapes; the modular axioms are
/// checked by [`ModularData::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    name: String,
    labels: Vec<Label>,
    vacuum: usize,
    s: CMatrix,
    weights: Vec<Rational64>,
    central_charge: Rational64,
}

impl ModularData {
    pub fn new(
        name: impl Into<String>,
        label_names: Vec<String>,
        vacuum: usize,
        s: CMatrix,
        weights: Vec<Rational64>,
        central_charge: Rational64,
    ) -> Result<Self> {
        let rank = label_names.len();
        if rank == 0 {
            return Err(Error::Shape("a theory needs at least one label".into()));
        }
        if s.nrows() != rank || s.ncols() != rank {
            return Err(Error::Shape(format!(
                "S is {}x{} but there are {} labels",
                s.nrows(),
                s.ncols(),
                rank
            )));
        }
        if weights.len() != rank {
            return Err(Error::Shape(format!(
                "{} weights for {} labels",
                weights.len(),
                rank
            )));
        }
        if vacuum >= rank {
            return Err(Error::Shape(format!(
                "vacuum index {vacuum} out of range for {rank} labels"
            )));
        }
        let mut seen = HashSet::new();
        for n in &label_names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DataInvalid(format!("duplicate label name `{n}`")));
            }
        }
        let labels = label_names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Label { index, name })
            .collect();
        Ok(Self {
            name: name.into(),
            labels,
            vacuum,
            s,
            weights: weights.into_iter().map(frac).collect(),
            central_charge,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn vacuum(&self) -> usize {
        self.vacuum
    }

    pub fn s(&self) -> &CMatrix {
        &self.s
    }

    pub fn weights(&self) -> &[Rational64] {
        &self.weights
    }

    pub fn central_charge(&self) -> Rational64 {
        self.central_charge
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    /// Twists `ω_λ = e^{2πiΔ_λ}`.
    pub fn twists(&self) -> Vec<Complex64> {
        self.weights
            .iter()
            .map(|w| unit_phase(rational_to_f64(w)))
            .collect()
    }

    fn vacuum_row_positive(&self) -> Result<()> {
        let v = self.vacuum;
        for l in 0..self.rank() {
            let x = self.s[(v, l)];
            if !(x.re > 0.0) || x.im.abs() >= EPS_MOD {
                return Err(Error::DataInvalid(format!(
                    "vacuum row entry S[{}][{}] = {} is not positive real",
                    self.labels[v].name, self.labels[l].name, x
                )));
            }
        }
        Ok(())
    }

    /// Quantum dimensions `d(λ) = S_{λ,1} / S_{1,1}`.
    pub fn quantum_dims(&self) -> Result<Vec<f64>> {
        self.vacuum_row_positive()?;
        let v = self.vacuum;
        let s11 = self.s[(v, v)].re;
        Ok((0..self.rank()).map(|l| self.s[(l, v)].re / s11).collect())
    }

    /// Global index `μ = 1 / |S_{1,1}|²`.
    pub fn mu_index(&self) -> Result<f64> {
        self.vacuum_row_positive()?;
        Ok(1.0 / self.s[(self.vacuum, self.vacuum)].norm_sqr())
    }

    /// Charge conjugation read off from `S² = Ĉ`.
    pub fn conjugation(&self) -> Result<Vec<usize>> {
        let (perm, residual) = self.conjugation_with_residual();
        match perm {
            Some(p) if residual < EPS_MOD => Ok(p),
            _ => Err(Error::DataInvalid(format!(
                "S^2 is not a permutation matrix (residual {residual:.3e})"
            ))),
        }
    }

    /// Nearest involutive permutation to `S²` fixing the vacuum, and the max
    /// entrywise distance from it. `None` when no such permutation exists.
    pub(crate) fn conjugation_with_residual(&self) -> (Option<Vec<usize>>, f64) {
        let s2 = &self.s * &self.s;
        let m = self.rank();
        let perm: Vec<usize> = (0..m)
            .map(|i| {
                (0..m)
                    .max_by(|&a, &b| s2[(i, a)].norm().total_cmp(&s2[(i, b)].norm()))
                    .unwrap_or(i)
            })
            .collect();
        let mut residual = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let target = if perm[i] == j { 1.0 } else { 0.0 };
                residual = residual.max((s2[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        let involutive = (0..m).all(|i| perm[perm[i]] == i);
        if involutive && perm[self.vacuum] == self.vacuum {
            (Some(perm), residual)
        } else {
            (None, residual.max(1.0))
        }
    }

    /// Raw Verlinde sums `Σ_δ S_{λδ} S_{μδ} S*_{νδ} / S_{1δ}`, flattened as
    /// `[(λ * m + μ) * m + ν]`.
    pub fn verlinde_raw(&self) -> Vec<Complex64> {
        let m = self.rank();
        let v = self.vacuum;
        let s = &self.s;
        let inv: Vec<Complex64> = (0..m).map(|d| s[(v, d)].inv()).collect();
        let mut out = vec![Complex64::zero(); m * m * m];
        for a in 0..m {
            for b in a..m {
                let ab: Vec<Complex64> = (0..m).map(|d| s[(a, d)] * s[(b, d)] * inv[d]).collect();
                for c in 0..m {
                    let val: Complex64 = (0..m).map(|d| ab[d] * s[(c, d)].conj()).sum();
                    out[(a * m + b) * m + c] = val;
                    out[(b * m + a) * m + c] = val;
                }
            }
        }
        out
    }

    /// Fusion rules from the Verlinde formula.
    pub fn verlinde_fusion(&self) -> Result<FusionRing> {
        self.vacuum_row_positive()?;
        let conj = self.conjugation()?;
        self.fusion_from_raw(&self.verlinde_raw(), &conj)
    }

    /// Rounds raw Verlinde sums and checks the ring axioms.
    pub(crate) fn fusion_from_raw(&self, raw: &[Complex64], conj: &[usize]) -> Result<FusionRing> {
        let m = self.rank();
        let mut coeffs = vec![0u32; m * m * m];
        for (i, z) in raw.iter().enumerate() {
            let r = z.re.round();
            if (z - Complex64::new(r, 0.0)).norm() > EPS_INT || r < 0.0 {
                return Err(Error::NotModular {
                    a: i / (m * m),
                    b: (i / m) % m,
                    c: i % m,
                    value: z.re,
                });
            }
            coeffs[i] = r as u32;
        }
        let ring = FusionRing::new(self.labels.clone(), self.vacuum, coeffs)?;
        ring.check_invariants(conj)?;
        Ok(ring)
    }

    /// Gauss-sum invariant `c₀ ∈ [0, 8)` defined by
    /// `a = Σ d_λ² ω_λ⁻¹ = |a| e^{-2πi c₀/8}`.
    pub fn gauss_sum_c0(&self) -> Result<f64> {
        let (a, _) = self.gauss_sum()?;
        if a.norm() <= EPS_MOD {
            return Err(Error::DegenerateGaussSum(a.norm()));
        }
        Ok(wrap(-8.0 * a.arg() / (2.0 * PI), 8.0))
    }

    /// Returns `(a, Σ d²)`.
    pub(crate) fn gauss_sum(&self) -> Result<(Complex64, f64)> {
        let dims = self.quantum_dims()?;
        let twists = self.twists();
        let a = dims
            .iter()
            .zip(&twists)
            .map(|(d, w)| w.conj() * (d * d))
            .sum();
        Ok((a, dims.iter().map(|d| d * d).sum()))
    }

    /// Diagonal of `T = e^{-2πic₀/24} Diag(ω_λ)`.
    pub fn t_diagonal(&self, c0: f64) -> Vec<Complex64> {
        self.weights
            .iter()
            .map(|w| unit_phase(rational_to_f64(w) - c0 / 24.0))
            .collect()
    }
}

/// `Y_{λμ} = Σ_ν N_{λμ}^ν (ω_λ ω_μ / ω_ν) d(ν)`.
pub fn y_matrix(fusion: &FusionRing, twists: &[Complex64], dims: &[f64]) -> Result<CMatrix> {
    let m = fusion.rank();
    if twists.len() != m || dims.len() != m {
        return Err(Error::Shape(format!(
            "fusion ring has {m} labels, got {} twists and {} dimensions",
            twists.len(),
            dims.len()
        )));
    }
    Ok(CMatrix::from_fn(m, m, |a, b| {
        (0..m)
            .filter(|&c| fusion.get(a, b, c) != 0)
            .map(|c| twists[a] * twists[b] / twists[c] * (fusion.get(a, b, c) as f64 * dims[c]))
            .sum()
    }))
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::{builtin_ising, builtin_su2, builtin_trivial};

    #[test]
    fn ising_dims() {
        let d = builtin_ising().quantum_dims().unwrap();
        assert!((d[0] - 1.0).abs() < 1e-9);
        assert!((d[1] - 1.0).abs() < 1e-9);
        assert!((d[2] - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn su2_level1_dims_equal() {
        let d = builtin_su2(1).unwrap().quantum_dims().unwrap();
        assert!((d[0] - 1.0).abs() < 1e-12 && (d[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu_index_values() {
        assert!((builtin_su2(1).unwrap().mu_index().unwrap() - 2.0).abs() < 1e-9);
        assert!((builtin_ising().mu_index().unwrap() - 4.0).abs() < 1e-9);
        assert!((builtin_trivial().mu_index().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_positive_vacuum_row_is_rejected() {
        let mut s = builtin_su2(1).unwrap().s().clone();
        s[(0, 1)] = -s[(0, 1)];
        s[(1, 0)] = -s[(1, 0)];
        let md = ModularData::new(
            "bad",
            vec!["0".into(), "1".into()],
            0,
            s,
            vec![Rational64::zero(), Rational64::new(1, 4)],
            Rational64::from_integer(1),
        )
        .unwrap();
        assert!(matches!(md.quantum_dims(), Err(Error::DataInvalid(_))));
    }

    #[test]
    fn conjugation_is_identity_for_self_conjugate() {
        let c = builtin_ising().conjugation().unwrap();
        assert_eq!(c, vec![0, 1, 2]);
        let c = builtin_su2(3).unwrap().conjugation().unwrap();
        assert_eq!(c, vec![0, 1, 2, 3]);
    }

    #[test]
    fn ising_sigma_sigma_fusion() {
        let ising = builtin_ising();
        let f = ising.verlinde_fusion().unwrap();
        let (one, psi, sigma) = (0, 1, 2);
        assert_eq!(
            [
                f.get(sigma, sigma, one),
                f.get(sigma, sigma, psi),
                f.get(sigma, sigma, sigma)
            ],
            [1, 1, 0]
        );
        assert_eq!(f.get(psi, psi, one), 1);
        assert_eq!(f.get(psi, sigma, sigma), 1);
    }

    #[test]
    fn su2_level2_fusion_matches_ising() {
        let ising = builtin_ising().verlinde_fusion().unwrap();
        let su2 = builtin_su2(2).unwrap().verlinde_fusion().unwrap();
        // j = 0, 2, 1  <->  1, psi, sigma
        let map = [0usize, 2, 1];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(ising.get(a, b, c), su2.get(map[a], map[b], map[c]));
                }
            }
        }
    }

    #[test]
    fn non_integral_verlinde_reports_triple() {
        let s = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.8, 0.0),
                Complex64::new(0.6, 0.0),
                Complex64::new(0.6, 0.0),
                Complex64::new(-0.8, 0.0),
            ],
        );
        let md = ModularData::new(
            "x",
            vec!["a".into(), "b".into()],
            0,
            s,
            vec![Rational64::zero(); 2],
            Rational64::zero(),
        )
        .unwrap();
        assert!(matches!(
            md.verlinde_fusion(),
            Err(Error::NotModular { .. })
        ));
    }

    #[test]
    fn y_matrix_su2_level1() {
        let md = builtin_su2(1).unwrap();
        let f = md.verlinde_fusion().unwrap();
        let y = y_matrix(&f, &md.twists(), &md.quantum_dims().unwrap()).unwrap();
        let expect = [[1.0, 1.0], [1.0, -1.0]];
        for a in 0..2 {
            for b in 0..2 {
                assert!((y[(a, b)] - Complex64::new(expect[a][b], 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn y_matrix_normalised_reproduces_ising_s() {
        let md = builtin_ising();
        let f = md.verlinde_fusion().unwrap();
        let y = y_matrix(&f, &md.twists(), &md.quantum_dims().unwrap()).unwrap();
        // |a| = sqrt(Σ d²) = 2
        assert!(max_abs(&(y / Complex64::new(2.0, 0.0) - md.s())) < 1e-9);
    }

    #[test]
    fn gauss_sum_values() {
        assert!((builtin_ising().gauss_sum_c0().unwrap() - 0.5).abs() < 1e-9);
        assert!(builtin_trivial().gauss_sum_c0().unwrap().abs() < 1e-12);
        assert!((builtin_su2(1).unwrap().gauss_sum_c0().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn frac_reduces_into_unit_interval() {
        assert_eq!(frac(Rational64::new(5, 4)), Rational64::new(1, 4));
        assert_eq!(frac(Rational64::new(-1, 4)), Rational64::new(3, 4));
        assert_eq!(frac(Rational64::from_integer(2)), Rational64::zero());
    }
}
