//! Sectors of the permutation orbifolds `(A^{⊗n})^{Z_n}` and `(A^{⊗n})^{P_n}`.
//!
//! A sector is labelled by a triple `(ψ, p, σ)`: a permutation `p` of the
//! group, a colouring `ψ` of the cycles of `p` by labels of `A`, and an irrep
//! `σ` of the joint stabilizer of `(ψ, p)`, taken up to simultaneous
//! conjugation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{character_table_seeded, CharacterTable, Perm, PermGroup};
use crate::modular::{ModularData, ValidatedTheory, EPS_INT};
use crate::orbifold_z2::{OrbifoldLabelZ2, Z2Orbifold};

/// Default guard for the full symmetric group.
pub const MAX_N_FULL: usize = 5;
/// Default guard for the cyclic group.
pub const MAX_N_CYCLIC: usize = 8;

/// Knobs for [`enumerate_spectrum_with`] and [`ba_label_count_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Lift the limit on `n` (a warning is logged).
    pub override_guard: bool,
    /// Seed for the character-table splitting.
    pub seed: u64,
}

/// The permutation group acting on the tensor factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumGroup {
    Cyclic,
    Full,
}

impl SpectrumGroup {
    pub fn build(self, n: usize) -> Result<PermGroup> {
        match self {
            Self::Cyclic => PermGroup::cyclic(n),
            Self::Full => PermGroup::symmetric(n),
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            Self::Cyclic => MAX_N_CYCLIC,
            Self::Full => MAX_N_FULL,
        }
    }
}

impl FromStr for SpectrumGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Self::Cyclic),
            "full" => Ok(Self::Full),
            _ => Err(Error::Parameter(format!(
                "group must be `cyclic` or `full`, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for SpectrumGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cyclic => "cyclic",
            Self::Full => "full",
        })
    }
}

/// `(ψ, p)`: a permutation and a label for each of its canonical cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SectorSeed {
    pub p: Perm,
    /// `psi[i]` labels the `i`-th cycle of `p.cycles()`.
    pub psi: Vec<usize>,
}

impl SectorSeed {
    pub fn new(p: Perm, psi: Vec<usize>) -> Result<Self> {
        let k = p.cycles().len();
        if psi.len() != k {
            return Err(Error::Parameter(format!(
                "{p} has {k} cycles but {} labels were given",
                psi.len()
            )));
        }
        Ok(Self { p, psi })
    }

    pub fn psi_names(&self, md: &ModularData) -> Vec<String> {
        self.psi
            .iter()
            .map(|&l| md.labels()[l].name.clone())
            .collect()
    }
}

/// `d(π_{ψ,p}) = Π_c d(ψ(c)) · μ^{(n−k)/2}` with `k` the number of cycles.
pub fn soliton_dim(seed: &SectorSeed, md: &ValidatedTheory) -> f64 {
    let n = seed.p.degree();
    let k = seed.psi.len();
    let prod: f64 = seed.psi.iter().map(|&l| md.dims()[l]).product();
    prod * md.mu().powf((n - k) as f64 / 2.0)
}

/// One irreducible sector.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub seed: SectorSeed,
    pub stabilizer: Arc<PermGroup>,
    /// Irrep index into the stabilizer's character table.
    pub sigma: usize,
    pub sigma_dim: usize,
    pub dim: f64,
    pub orbit_size: usize,
}

/// One `(ψ, p)` orbit with its stabilizer.
struct SeedOrbit {
    seed: SectorSeed,
    stabilizer: Vec<usize>,
}

/// Orbits of `Γ` on pairs `(p, ψ)`, found one conjugacy class of `p` at a
/// time as orbits of the centralizer of `p` on colourings of its cycles.
fn seed_orbits(gamma: &PermGroup, m: usize) -> Result<Vec<SeedOrbit>> {
    let mut out = Vec::new();
    for class in gamma.conjugacy_classes() {
        let p = gamma.elements()[class[0]].clone();
        let cycles = p.cycles();
        let k = cycles.len();
        let mut cycle_of = vec![0; p.degree()];
        for (i, c) in cycles.iter().enumerate() {
            for &x in c {
                cycle_of[x] = i;
            }
        }
        let centralizer = gamma.centralizer(&p)?;
        let actions: Vec<(usize, Vec<usize>)> = centralizer
            .elements()
            .iter()
            .map(|h| {
                let idx = gamma.index_of(h).expect("subgroup element");
                (
                    idx,
                    cycles.iter().map(|c| cycle_of[h.apply(c[0])]).collect(),
                )
            })
            .collect();
        let total = (m as u64)
            .checked_pow(k as u32)
            .ok_or_else(|| Error::SizeGuard("too many colourings".into()))?;
        let pow: Vec<u64> = (0..k).map(|i| (m as u64).pow(i as u32)).collect();
        let mut digits = vec![0usize; k];
        'codes: for code in 0..total {
            let mut rest = code;
            for d in digits.iter_mut() {
                *d = (rest % m as u64) as usize;
                rest /= m as u64;
            }
            let mut stab = Vec::new();
            for (gi, perm) in &actions {
                let image: u64 = (0..k).map(|i| digits[i] as u64 * pow[perm[i]]).sum();
                if image < code {
                    continue 'codes;
                }
                if image == code {
                    stab.push(*gi);
                }
            }
            out.push(SeedOrbit {
                seed: SectorSeed {
                    p: p.clone(),
                    psi: digits.clone(),
                },
                stabilizer: stab,
            });
        }
    }
    Ok(out)
}

type StabCache = HashMap<Vec<usize>, (Arc<PermGroup>, Arc<CharacterTable>)>;

fn stabilizer_data(
    gamma: &PermGroup,
    idx: &[usize],
    seed: u64,
    cache: &mut StabCache,
) -> Result<(Arc<PermGroup>, Arc<CharacterTable>)> {
    if let Some(v) = cache.get(idx) {
        return Ok(v.clone());
    }
    let elems: Vec<Perm> = idx.iter().map(|&i| gamma.elements()[i].clone()).collect();
    let group = PermGroup::from_sorted(gamma.degree(), elems.clone(), elems);
    let table = character_table_seeded(&group, seed)?;
    let v = (Arc::new(group), Arc::new(table));
    cache.insert(idx.to_vec(), v.clone());
    Ok(v)
}

fn check_guard(n: usize, group: SpectrumGroup, override_guard: bool) -> Result<()> {
    if n < 2 {
        return Err(Error::Parameter(format!("n must be at least 2, got {n}")));
    }
    if n > group.max_n() {
        if !override_guard {
            return Err(Error::SizeGuard(format!(
                "n = {n} exceeds the limit {} for the {group} group",
                group.max_n()
            )));
        }
        log::warn!(
            "n = {n} exceeds the usual limit {} for the {group} group",
            group.max_n()
        );
    }
    Ok(())
}

/// All sectors of the permutation orbifold of `A^{⊗n}`, with the default
/// size guard.
pub fn enumerate_spectrum(
    md: &ValidatedTheory,
    n: usize,
    group: SpectrumGroup,
) -> Result<Vec<SpectrumEntry>> {
    enumerate_spectrum_with(md, n, group, SpectrumOptions::default())
}

/// As [`enumerate_spectrum`] with explicit options.
///
/// Fails with an inconsistency error if `Σ dim² ≠ |Γ|² μⁿ`.
pub fn enumerate_spectrum_with(
    md: &ValidatedTheory,
    n: usize,
    group: SpectrumGroup,
    opts: SpectrumOptions,
) -> Result<Vec<SpectrumEntry>> {
    check_guard(n, group, opts.override_guard)?;
    let gamma = group.build(n)?;
    let order = gamma.order();
    let mut cache = StabCache::new();
    let mut entries = Vec::new();
    for orbit in seed_orbits(&gamma, md.rank())? {
        let (stab, table) = stabilizer_data(&gamma, &orbit.stabilizer, opts.seed, &mut cache)?;
        let orbit_size = order / stab.order();
        let base = soliton_dim(&orbit.seed, md) * orbit_size as f64;
        for (sigma, &sigma_dim) in table.dims().iter().enumerate() {
            entries.push(SpectrumEntry {
                seed: orbit.seed.clone(),
                stabilizer: stab.clone(),
                sigma,
                sigma_dim,
                dim: base * sigma_dim as f64,
                orbit_size,
            });
        }
    }
    let total = dim_square_sum(&entries);
    let expected = (order * order) as f64 * md.mu().powi(n as i32);
    if ((total - expected) / expected).abs() >= 1e-6 {
        return Err(Error::Inconsistent(format!(
            "sum of squared dimensions {total} differs from |G|^2 mu^n = {expected}"
        )));
    }
    Ok(entries)
}

pub fn dim_square_sum(entries: &[SpectrumEntry]) -> f64 {
    entries.iter().map(|e| e.dim * e.dim).sum()
}

/// Recounts the spectrum as pairs (ψ, irrep of the quantum double of the
/// stabilizer `F_ψ` of ψ), and checks the count against the `(ψ, p, σ)`
/// enumeration.
pub fn ba_label_count(md: &ModularData, n: usize, group: SpectrumGroup) -> Result<usize> {
    ba_label_count_with(md, n, group, SpectrumOptions::default())
}

pub fn ba_label_count_with(
    md: &ModularData,
    n: usize,
    group: SpectrumGroup,
    opts: SpectrumOptions,
) -> Result<usize> {
    check_guard(n, group, opts.override_guard)?;
    let gamma = group.build(n)?;
    let m = md.rank();
    let total = (m as u64)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::SizeGuard("too many colourings".into()))?;
    let pow: Vec<u64> = (0..n).map(|i| (m as u64).pow(i as u32)).collect();
    let mut digits = vec![0usize; n];
    let mut double_ranks: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut count = 0;
    'codes: for code in 0..total {
        let mut rest = code;
        for d in digits.iter_mut() {
            *d = (rest % m as u64) as usize;
            rest /= m as u64;
        }
        let mut stab = Vec::new();
        for (gi, h) in gamma.elements().iter().enumerate() {
            // (h.ψ)(h(x)) = ψ(x)
            let image: u64 = (0..n).map(|x| digits[x] as u64 * pow[h.apply(x)]).sum();
            if image < code {
                continue 'codes;
            }
            if image == code {
                stab.push(gi);
            }
        }
        let rank = match double_ranks.get(&stab) {
            Some(&r) => r,
            None => {
                let elems: Vec<Perm> = stab.iter().map(|&i| gamma.elements()[i].clone()).collect();
                let f = PermGroup::from_sorted(n, elems.clone(), elems);
                let r = double_rank(&f)?;
                double_ranks.insert(stab.clone(), r);
                r
            }
        };
        count += rank;
    }

    let direct: usize = seed_orbits(&gamma, m)?
        .iter()
        .map(|o| {
            let elems: Vec<Perm> = o
                .stabilizer
                .iter()
                .map(|&i| gamma.elements()[i].clone())
                .collect();
            PermGroup::from_sorted(n, elems.clone(), elems)
                .conjugacy_classes()
                .len()
        })
        .sum();
    if direct != count {
        return Err(Error::Inconsistent(format!(
            "quantum-double count {count} differs from (psi, p, sigma) count {direct}"
        )));
    }
    Ok(count)
}

/// Number of irreps of the quantum double of `f`: pairs (class of `g`,
/// irrep of the centralizer of `g`).
fn double_rank(f: &PermGroup) -> Result<usize> {
    let mut total = 0;
    for class in f.conjugacy_classes() {
        let g = &f.elements()[class[0]];
        total += f.centralizer(g)?.conjugacy_classes().len();
    }
    Ok(total)
}

/// `M = Σ_λ S_{1λ}^{2−2g} Π_i S_{λ_i λ} / S_{1λ}`, rounded to an integer.
pub fn genus_blocks(md: &ModularData, insertions: &[usize], g: u32) -> Result<u64> {
    let m = md.rank();
    if let Some(&bad) = insertions.iter().find(|&&l| l >= m) {
        return Err(Error::Parameter(format!("label index {bad} out of range")));
    }
    let s = md.s();
    let v = md.vacuum();
    let value: Complex64 = (0..m)
        .map(|l| {
            let s1 = s[(v, l)];
            let mut term = s1.powi(2 - 2 * g as i32);
            for &a in insertions {
                term *= s[(a, l)] / s1;
            }
            term
        })
        .sum();
    let r = value.re.round();
    let residual = (value - Complex64::new(r, 0.0)).norm();
    if residual >= EPS_INT || r < 0.0 {
        return Err(Error::Inconsistent(format!(
            "genus-{g} block value {value} is not a non-negative integer"
        )));
    }
    Ok(r as u64)
}

/// One identity `N_{(λ0)(μ0)}^{(δ0)} − N_{(λ0)(μ0)}^{(δ1)} = N_{λμ}^δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseIdentityRow {
    pub lambda: usize,
    pub mu: usize,
    pub delta: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// Checks the identity for every triple of input labels.
pub fn cyclic_phase_identity(orb: &Z2Orbifold, md: &ValidatedTheory) -> Vec<PhaseIdentityRow> {
    let m = md.rank();
    let f = orb.theory.fusion();
    let idx = |lambda, eps| {
        orb.index_of(OrbifoldLabelZ2::Diag { lambda, eps })
            .expect("diagonal label present")
    };
    let mut rows = Vec::with_capacity(m * m * m);
    for lambda in 0..m {
        for mu in 0..m {
            for delta in 0..m {
                let (a, b) = (idx(lambda, 0), idx(mu, 0));
                let lhs = f.get(a, b, idx(delta, 0)) as i64 - f.get(a, b, idx(delta, 1)) as i64;
                let rhs = md.fusion().get(lambda, mu, delta) as i64;
                rows.push(PhaseIdentityRow {
                    lambda,
                    mu,
                    delta,
                    lhs,
                    rhs,
                    holds: lhs == rhs,
                });
            }
        }
    }
    rows
}
