use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{Perm, PermGroup};

/// Largest group order accepted by [`character_table`].
pub const MAX_CHARTABLE_ORDER: usize = 10_080;

const ATTEMPTS: usize = 32;
const TOL: f64 = 1e-8;

/// Ordinary character table of a finite group.
///
/// Irreps are sorted by dimension, then by their values with real parts in
/// decreasing order, so the trivial character is always row 0. Class 0 is
/// the identity class.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    representatives: Vec<Perm>,
    values: Vec<Vec<Complex64>>,
    dims: Vec<usize>,
}

impl CharacterTable {
    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn num_irreps(&self) -> usize {
        self.values.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Element indices (into the group's element list) of each class.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.representatives
    }

    /// Class index of the group element with index `element`.
    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `χ_irrep(class)`.
    pub fn value(&self, irrep: usize, class: usize) -> Complex64 {
        self.values[irrep][class]
    }

    pub fn row(&self, irrep: usize) -> &[Complex64] {
        &self.values[irrep]
    }

    /// Largest deviation from row orthogonality, column orthogonality and
    /// `Σ χ(1)² = |G|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let sizes = self.class_sizes();
        let g = self.order as f64;
        let r = self.num_irreps();
        let k = self.num_classes();
        let mut worst = 0.0f64;
        for a in 0..r {
            for b in 0..r {
                let s: Complex64 = (0..k)
                    .map(|j| self.values[a][j] * self.values[b][j].conj() * sizes[j] as f64)
                    .sum();
                let target = if a == b { g } else { 0.0 };
                worst = worst.max((s - target).norm() / g);
            }
        }
        for i in 0..k {
            for j in 0..k {
                let s: Complex64 = (0..r)
                    .map(|a| self.values[a][i] * self.values[a][j].conj())
                    .sum();
                let target = if i == j { g / sizes[i] as f64 } else { 0.0 };
                worst = worst.max((s - target).norm() / g);
            }
        }
        let dim_sq: usize = self.dims.iter().map(|d| d * d).sum();
        if dim_sq != self.order {
            worst = worst.max(1.0);
        }
        worst
    }
}

/// Character table with the default random seed.
pub fn character_table(group: &PermGroup) -> Result<CharacterTable> {
    character_table_seeded(group, 0)
}

/// Burnside–Dixon: the normalized class sums act on class functions as a
/// commuting family of normal matrices; a random Hermitian combination of
/// them has the central characters as eigenvectors.
pub fn character_table_seeded(group: &PermGroup, seed: u64) -> Result<CharacterTable> {
    let order = group.order();
    if order > MAX_CHARTABLE_ORDER {
        return Err(Error::SizeGuard(format!(
            "character tables are limited to order {MAX_CHARTABLE_ORDER}, got {order}"
        )));
    }
    let classes = group.conjugacy_classes();
    let k = classes.len();
    let mut class_of = vec![0; order];
    for (c, members) in classes.iter().enumerate() {
        for &e in members {
            class_of[e] = c;
        }
    }
    let sizes: Vec<f64> = classes.iter().map(|c| c.len() as f64).collect();
    let elems = group.elements();
    let inverses: Vec<usize> = elems
        .iter()
        .map(|x| group.index_of(&x.inverse()).expect("group is closed"))
        .collect();

    // m[j][(kk, l)] = #{x ∈ C_j : x⁻¹ z_l ∈ C_kk}
    let mut m = vec![DMatrix::<f64>::zeros(k, k); k];
    for l in 0..k {
        let z = &elems[classes[l][0]];
        for (xi, _) in elems.iter().enumerate() {
            let y = elems[inverses[xi]].compose(z);
            let kk = class_of[group.index_of(&y).expect("group is closed")];
            m[class_of[xi]][(kk, l)] += 1.0;
        }
    }

    let sqrt_d: Vec<f64> = sizes.iter().map(|s| s.sqrt()).collect();
    let a: Vec<DMatrix<f64>> = m
        .iter()
        .map(|mj| DMatrix::from_fn(k, k, |r, c| mj[(r, c)] * sqrt_d[c] / sqrt_d[r]))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 0..ATTEMPTS {
        let mut h = DMatrix::<Complex64>::zeros(k, k);
        for aj in &a {
            let x: f64 = rng.gen_range(-1.0..1.0);
            let y: f64 = rng.gen_range(-1.0..1.0);
            let sym = aj + aj.transpose();
            let anti = aj - aj.transpose();
            h += sym.map(|v| Complex64::new(x * v, 0.0)) + anti.map(|v| Complex64::new(0.0, y * v));
        }
        match split(&h, &m, &sizes, order) {
            Ok((values, dims)) => {
                let mut table = CharacterTable {
                    order,
                    classes: classes.clone(),
                    class_of: class_of.clone(),
                    representatives: classes.iter().map(|c| elems[c[0]].clone()).collect(),
                    values,
                    dims,
                };
                sort_irreps(&mut table);
                let r = table.orthogonality_residual();
                if r < TOL {
                    return Ok(table);
                }
                last = format!("orthogonality residual {r:.3e}");
            }
            Err(e) => last = e,
        }
        log::debug!("character table attempt {attempt} failed: {last}");
    }
    Err(Error::CharacterTable(format!(
        "no separating combination after {ATTEMPTS} attempts ({last})"
    )))
}

type Split = (Vec<Vec<Complex64>>, Vec<usize>);

fn split(
    h: &DMatrix<Complex64>,
    m: &[DMatrix<f64>],
    sizes: &[f64],
    order: usize,
) -> std::result::Result<Split, String> {
    let k = sizes.len();
    let eig = h.clone().symmetric_eigen();
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let scale = ev.iter().map(|x| x.abs()).fold(1.0, f64::max);
    if ev.windows(2).any(|w| w[1] - w[0] < 1e-6 * scale) {
        return Err("eigenvalues not separated".into());
    }
    let mut values = Vec::with_capacity(k);
    let mut dims = Vec::with_capacity(k);
    for col in 0..k {
        let v = eig.eigenvectors.column(col);
        let raw: Vec<Complex64> = (0..k).map(|j| v[j] * sizes[j].sqrt()).collect();
        if raw[0].norm() < 1e-12 {
            return Err("eigenvector vanishes on the identity class".into());
        }
        let omega: Vec<Complex64> = raw.iter().map(|x| x / raw[0]).collect();
        for (j, mj) in m.iter().enumerate() {
            for r in 0..k {
                let lhs: Complex64 = (0..k).map(|c| omega[c] * mj[(r, c)]).sum();
                if (lhs - omega[j] * omega[r]).norm() > 1e-7 * (1.0 + omega[j].norm()) {
                    return Err("not a simultaneous eigenvector".into());
                }
            }
        }
        let ratio: Vec<Complex64> = omega.iter().zip(sizes).map(|(w, s)| w / *s).collect();
        let norm: f64 = ratio.iter().zip(sizes).map(|(r, s)| r.norm_sqr() * s).sum();
        let d = (order as f64 / norm).sqrt();
        let rd = d.round();
        if (d - rd).abs() > 1e-6 || rd < 1.0 {
            return Err(format!("non-integral dimension {d}"));
        }
        values.push(ratio.iter().map(|r| r * rd).collect());
        dims.push(rd as usize);
    }
    Ok((values, dims))
}

fn sort_irreps(t: &mut CharacterTable) {
    let key = |row: &[Complex64]| -> Vec<(i64, i64)> {
        row.iter()
            .map(|z| (-(z.re * 1e6).round() as i64, -(z.im * 1e6).round() as i64))
            .collect()
    };
    let mut idx: Vec<usize> = (0..t.values.len()).collect();
    idx.sort_by(|&a, &b| {
        t.dims[a]
            .cmp(&t.dims[b])
            .then_with(|| key(&t.values[a]).cmp(&key(&t.values[b])))
    });
    t.values = idx.iter().map(|&i| t.values[i].clone()).collect();
    t.dims = idx.iter().map(|&i| t.dims[i]).collect();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    fn dims(spec: &str) -> Vec<usize> {
        character_table(&build_group(spec).unwrap())
            .unwrap()
            .dims()
            .to_vec()
    }

    #[test]
    fn z2_table() {
        let t = character_table(&PermGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(t.dims(), &[1, 1]);
        assert!((t.value(0, 1) - 1.0).norm() < 1e-9);
        assert!((t.value(1, 1) + 1.0).norm() < 1e-9);
    }

    #[test]
    fn small_group_dimensions() {
        assert_eq!(dims("sym:3"), vec![1, 1, 2]);
        assert_eq!(dims("sym:4"), vec![1, 1, 2, 3, 3]);
        assert_eq!(dims("quaternion"), vec![1, 1, 1, 1, 2]);
        assert_eq!(dims("cyclic:5"), vec![1; 5]);
    }

    #[test]
    fn complex_characters_of_z3() {
        let t = character_table(&PermGroup::cyclic(3).unwrap()).unwrap();
        let nonreal = (0..3)
            .filter(|&i| t.row(i).iter().any(|z| z.im.abs() > 0.1))
            .count();
        assert_eq!(nonreal, 2);
    }

    #[test]
    fn irreps_match_classes() {
        for spec in ["cyclic:6", "sym:5", "gens:(0 1 2 3),(0 2)", "quaternion"] {
            let g = build_group(spec).unwrap();
            let t = character_table(&g).unwrap();
            assert_eq!(t.num_irreps(), g.conjugacy_classes().len(), "{spec}");
            assert!(t.orthogonality_residual() < 1e-8, "{spec}");
        }
    }

    #[test]
    fn seeds_agree() {
        let g = PermGroup::symmetric(4).unwrap();
        let a = character_table_seeded(&g, 1).unwrap();
        let b = character_table_seeded(&g, 99).unwrap();
        for i in 0..a.num_irreps() {
            for j in 0..a.num_classes() {
                assert!((a.value(i, j) - b.value(i, j)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn order_guard() {
        let s8 = PermGroup::symmetric(8).unwrap();
        assert!(matches!(character_table(&s8), Err(Error::SizeGuard(_))));
    }
}
