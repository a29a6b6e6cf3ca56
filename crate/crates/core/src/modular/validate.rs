use std::ops::Deref;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{max_abs, CMatrix, FusionRing, ModularData, EPS_INT, EPS_MOD};

pub const CHECK_SYMMETRY: &str = "symmetry";
pub const CHECK_UNITARITY: &str = "unitarity";
pub const CHECK_VACUUM_ROW: &str = "vacuum-row-positivity";
pub const CHECK_CONJUGATION: &str = "S2-is-conjugation";
pub const CHECK_STS: &str = "STS-relation";
pub const CHECK_TC: &str = "TC-relation";
pub const CHECK_VERLINDE: &str = "verlinde-integrality";
pub const CHECK_GAUSS: &str = "gauss-sum-modulus";

/// One named check with its worst residual.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    fn push(&mut self, name: &str, residual: f64, tol: f64) {
        self.push_with(name, residual, residual < tol);
    }

    fn push_with(&mut self, name: &str, residual: f64, passed: bool) {
        debug_assert!(self.get(name).is_none());
        self.checks.push(ValidationCheck {
            name: name.to_string(),
            passed,
            residual,
        });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let failed: Vec<_> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} ({:.3e})", c.name, c.residual))
            .collect();
        if failed.is_empty() {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "failed checks: {}", failed.join(", "))
        }
    }
}

fn diag(d: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}

impl ModularData {
    /// Runs the eight modular-axiom checks. Never fails on bad data; failures
    /// are report rows.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.validate_with_ring().map(|(report, _)| report)
    }

    fn validate_with_ring(&self) -> Result<(ValidationReport, Option<FusionRing>)> {
        let m = self.rank();
        if self.s.nrows() != m || self.s.ncols() != m || self.weights.len() != m {
            return Err(Error::Shape(
                "S, weights and labels disagree in size".into(),
            ));
        }
        let s = &self.s;
        let mut report = ValidationReport::default();

        report.push(CHECK_SYMMETRY, max_abs(&(s - s.transpose())), EPS_MOD);

        let id = CMatrix::identity(m, m);
        report.push(CHECK_UNITARITY, max_abs(&(s * s.adjoint() - &id)), EPS_MOD);

        let v = self.vacuum;
        let vac_row: Vec<Complex64> = (0..m).map(|l| s[(v, l)]).collect();
        let vac_residual = vac_row
            .iter()
            .map(|z| z.im.abs() + (-z.re).max(0.0))
            .fold(0.0, f64::max);
        let vac_ok = vac_row.iter().all(|z| z.re > 0.0) && vac_residual < EPS_MOD;
        report.push_with(CHECK_VACUUM_ROW, vac_residual, vac_ok);

        let (conj, conj_residual) = self.conjugation_with_residual();
        let conj = conj.filter(|_| conj_residual < EPS_MOD);
        report.push_with(CHECK_CONJUGATION, conj_residual, conj.is_some());

        let c0 = if vac_ok {
            self.gauss_sum_c0().ok()
        } else {
            None
        };
        match c0 {
            Some(c0) => {
                let t = diag(&self.t_diagonal(c0));
                let t_inv = diag(
                    &self
                        .t_diagonal(c0)
                        .iter()
                        .map(|z| z.inv())
                        .collect::<Vec<_>>(),
                );
                let sts = s * &t * s - &t_inv * s * &t_inv;
                report.push(CHECK_STS, max_abs(&sts), EPS_MOD);
                match &conj {
                    Some(perm) => {
                        let c = CMatrix::from_fn(m, m, |i, j| {
                            if perm[i] == j {
                                Complex64::new(1.0, 0.0)
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                        });
                        let r = max_abs(&(&t * &c - &t)).max(max_abs(&(&c * &t - &t)));
                        report.push(CHECK_TC, r, EPS_MOD);
                    }
                    None => report.push_with(CHECK_TC, f64::INFINITY, false),
                }
            }
            None => {
                report.push_with(CHECK_STS, f64::INFINITY, false);
                report.push_with(CHECK_TC, f64::INFINITY, false);
            }
        }

        let mut ring = None;
        if vac_ok {
            let raw = self.verlinde_raw();
            let residual = raw
                .iter()
                .map(|z| {
                    let r = z.re.round().max(0.0);
                    (z - Complex64::new(r, 0.0)).norm()
                })
                .fold(0.0, f64::max);
            ring = match &conj {
                Some(perm) if residual < EPS_INT => self.fusion_from_raw(&raw, perm).ok(),
                _ => None,
            };
            let ring_ok = ring.is_some();
            let residual = if residual < EPS_INT && !ring_ok {
                1.0
            } else {
                residual
            };
            report.push_with(CHECK_VERLINDE, residual, ring_ok);
        } else {
            report.push_with(CHECK_VERLINDE, f64::INFINITY, false);
        }

        match self.gauss_sum() {
            Ok((a, total)) if vac_ok => {
                report.push(CHECK_GAUSS, (a.norm_sqr() / total - 1.0).abs(), EPS_MOD)
            }
            _ => report.push_with(CHECK_GAUSS, f64::INFINITY, false),
        }

        Ok((report, ring))
    }

    /// Validates and wraps the data, caching derived quantities.
    pub fn validated(self) -> Result<ValidatedTheory> {
        let (report, ring) = self.validate_with_ring()?;
        let fusion = match ring {
            Some(ring) if report.all_passed() => ring,
            _ => return Err(Error::ValidationFailed(Box::new(report))),
        };
        let dims = self.quantum_dims()?;
        let mu = self.mu_index()?;
        let conjugation = self.conjugation()?;
        let c0 = self.gauss_sum_c0()?;
        Ok(ValidatedTheory {
            data: self,
            report,
            dims,
            mu,
            conjugation,
            fusion,
            c0,
        })
    }
}

/// Modular data that passed [`ModularData::validate`], with its derived
/// invariants.
#[derive(Debug, Clone)]
pub struct ValidatedTheory {
    data: ModularData,
    report: ValidationReport,
    dims: Vec<f64>,
    mu: f64,
    conjugation: Vec<usize>,
    fusion: FusionRing,
    c0: f64,
}

impl ValidatedTheory {
    pub fn data(&self) -> &ModularData {
        &self.data
    }

    pub fn into_data(self) -> ModularData {
        self.data
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn conjugation(&self) -> &[usize] {
        &self.conjugation
    }

    pub fn fusion(&self) -> &FusionRing {
        &self.fusion
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// `T = e^{-2πic₀/24} Diag(ω)` with the cached `c₀`.
    pub fn t_matrix(&self) -> DMatrix<Complex64> {
        diag(&self.data.t_diagonal(self.c0))
    }
}

impl Deref for ValidatedTheory {
    type Target = ModularData;

    fn deref(&self) -> &ModularData {
        &self.data
    }
}
