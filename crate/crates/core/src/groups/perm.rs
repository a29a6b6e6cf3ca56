use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}` stored by images: `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Group(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(Error::Group(format!(
                        "point {x} out of range for degree {n}"
                    )));
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::Group(format!("point {x} appears twice in cycles")));
                }
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    /// Canonical cycle decomposition: every cycle starts at its minimum, cycles
    /// are sorted by minimum, fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted list of cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }
}

/// Canonical cycle decomposition of `p`.
pub fn cycle_decompose(p: &Perm) -> Vec<Vec<usize>> {
    p.cycles()
}

/// `h p h⁻¹`.
pub fn conjugate(h: &Perm, p: &Perm) -> Result<Perm> {
    if h.degree() != p.degree() {
        return Err(Error::Group(format!(
            "degree mismatch: {} vs {}",
            h.degree(),
            p.degree()
        )));
    }
    Ok(h.compose(p).compose(&h.inverse()))
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_cycles() {
        assert_eq!(Perm::identity(3).cycles(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn long_cycle() {
        let p = Perm::from_images(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(p.to_string(), "(0 1 2 3)");
    }

    #[test]
    fn double_transposition() {
        let p = Perm::from_images(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(cycle_decompose(&p), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn conjugate_by_identity() {
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(conjugate(&Perm::identity(3), &p).unwrap(), p);
    }

    #[test]
    fn conjugate_pointwise() {
        let h = Perm::from_images(vec![1, 0, 2]).unwrap();
        let p = Perm::from_images(vec![1, 2, 0]).unwrap();
        let q = conjugate(&h, &p).unwrap();
        let hinv = h.inverse();
        for x in 0..3 {
            assert_eq!(q.apply(x), h.apply(p.apply(hinv.apply(x))));
        }
        assert_eq!(q.images(), &[2, 0, 1]);
    }

    #[test]
    fn degree_mismatch() {
        assert!(conjugate(&Perm::identity(2), &Perm::identity(3)).is_err());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
    }

    fn perm_strategy() -> impl Strategy<Value = Perm> {
        (1usize..8)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn cycles_recompose(p in perm_strategy()) {
            let q = Perm::from_cycles(p.degree(), &p.cycles()).unwrap();
            prop_assert_eq!(q, p);
        }

        #[test]
        fn conjugation_preserves_cycle_type(
            (p, h) in (1usize..8).prop_flat_map(|n| {
                let v = Just((0..n).collect::<Vec<_>>());
                (v.clone().prop_shuffle(), v.prop_shuffle())
            })
        ) {
            let p = Perm::from_images(p).unwrap();
            let h = Perm::from_images(h).unwrap();
            prop_assert_eq!(conjugate(&h, &p).unwrap().cycle_type(), p.cycle_type());
        }
    }
}
