use crate::error::{Error, Result};

use super::Label;

/// Non-negative integer structure constants `N_{λμ}^ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<Label>,
    vacuum: usize,
    coeffs: Vec<u32>,
}

impl FusionRing {
    /// `coeffs` is flattened as `[(λ * m + μ) * m + ν]`.
    pub fn new(labels: Vec<Label>, vacuum: usize, coeffs: Vec<u32>) -> Result<Self> {
        let m = labels.len();
        if coeffs.len() != m * m * m {
            return Err(Error::Shape(format!(
                "{} fusion coefficients for {m} labels",
                coeffs.len()
            )));
        }
        if vacuum >= m {
            return Err(Error::Shape(format!("vacuum {vacuum} out of range")));
        }
        Ok(Self {
            labels,
            vacuum,
            coeffs,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vacuum(&self) -> usize {
        self.vacuum
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        let m = self.rank();
        self.coeffs[(a * m + b) * m + c]
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    /// Fusion matrix `(N_a)_{bc} = N_{ab}^c`, row-major.
    pub fn fusion_matrix(&self, a: usize) -> Vec<u64> {
        let m = self.rank();
        (0..m * m)
            .map(|i| self.get(a, i / m, i % m) as u64)
            .collect()
    }

    /// `Tr(N_a N_b N_c)`, computed in integer arithmetic.
    pub fn triple_trace(&self, a: usize, b: usize, c: usize) -> u64 {
        let m = self.rank();
        let mut total = 0u64;
        for x in 0..m {
            for y in 0..m {
                let nay = self.get(a, x, y) as u64;
                if nay == 0 {
                    continue;
                }
                for z in 0..m {
                    total += nay * self.get(b, y, z) as u64 * self.get(c, z, x) as u64;
                }
            }
        }
        total
    }

    /// Checks commutativity, unit, conjugation and associativity.
    pub fn check_invariants(&self, conjugation: &[usize]) -> Result<()> {
        let m = self.rank();
        let one = self.vacuum;
        if conjugation.len() != m {
            return Err(Error::Shape("conjugation has the wrong length".into()));
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if self.get(a, b, c) != self.get(b, a, c) {
                        return Err(self.violation("commutativity", a, b, c));
                    }
                }
                if self.get(one, a, b) != u32::from(a == b) {
                    return Err(self.violation("unit", one, a, b));
                }
                if self.get(a, b, one) != u32::from(b == conjugation[a]) {
                    return Err(self.violation("conjugation", a, b, one));
                }
            }
        }
        // Σ_δ N_{ab}^δ N_{δc}^ρ = Σ_δ N_{bc}^δ N_{aδ}^ρ; swapping a and c gives
        // the same identity once commutativity holds.
        let mut lhs = vec![0u64; m];
        let mut rhs = vec![0u64; m];
        for a in 0..m {
            for b in 0..m {
                for c in a..m {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for d in 0..m {
                        let ab = self.get(a, b, d) as u64;
                        let bc = self.get(b, c, d) as u64;
                        if ab == 0 && bc == 0 {
                            continue;
                        }
                        for r in 0..m {
                            lhs[r] += ab * self.get(d, c, r) as u64;
                            rhs[r] += bc * self.get(a, d, r) as u64;
                        }
                    }
                    if lhs != rhs {
                        return Err(self.violation("associativity", a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    fn violation(&self, what: &str, a: usize, b: usize, c: usize) -> Error {
        Error::Inconsistent(format!(
            "fusion ring violates {what} at ({}, {}, {})",
            self.labels[a].name, self.labels[b].name, self.labels[c].name
        ))
    }
}
