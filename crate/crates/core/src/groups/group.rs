use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

use super::perm::Perm;

/// Upper bound on enumerated group orders.
const MAX_ORDER: usize = 100_000;

/// A finite permutation group stored by full enumeration of its elements.
///
/// Elements are sorted lexicographically by images, so the identity is
/// always element 0.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl PermGroup {
    /// Closure of `generators` under composition.
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Group(format!(
                "all generators must have degree {degree}"
            )));
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_ORDER {
                        return Err(Error::SizeGuard(format!("group order exceeds {MAX_ORDER}")));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_sorted(
            degree,
            seen.into_iter().collect(),
            generators,
        ))
    }

    /// Builds a group from an explicit element list, checking closure.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let set: HashSet<&Perm> = elements.iter().collect();
        if !set.contains(&Perm::identity(degree)) {
            return Err(Error::Group("element list lacks the identity".into()));
        }
        for a in &elements {
            if a.degree() != degree {
                return Err(Error::Group("mixed degrees in element list".into()));
            }
            if !set.contains(&a.inverse()) {
                return Err(Error::Group(format!("inverse of {a} missing")));
            }
            for b in &elements {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::Group(format!("product of {a} and {b} missing")));
                }
            }
        }
        let unique: Vec<Perm> = set.into_iter().cloned().collect();
        let gens = unique.clone();
        Ok(Self::from_sorted(degree, unique, gens))
    }

    /// Caller guarantees `elements` is a closed group.
    pub(crate) fn from_sorted(
        degree: usize,
        mut elements: Vec<Perm>,
        generators: Vec<Perm>,
    ) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Self {
            degree,
            elements,
            generators,
            index,
        }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Group("cyclic group needs n >= 1".into()));
        }
        let gen = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
        Self::generate(n, vec![gen])
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Group("symmetric group needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        if n > 1 {
            gens.push(Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?);
            gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
        }
        Self::generate(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// `{h ∈ G : hp = ph}`.
    pub fn centralizer(&self, p: &Perm) -> Result<PermGroup> {
        if !self.contains(p) {
            return Err(Error::Group(format!("{p} is not an element of the group")));
        }
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|h| h.compose(p) == p.compose(h))
            .cloned()
            .collect();
        Ok(PermGroup::from_sorted(self.degree, elems.clone(), elems))
    }

    pub fn center(&self) -> PermGroup {
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|z| self.generators.iter().all(|g| g.compose(z) == z.compose(g)))
            .cloned()
            .collect();
        PermGroup::from_sorted(self.degree, elems.clone(), elems)
    }

    /// Conjugacy classes as element-index lists. Classes are ordered by their
    /// smallest element, so the identity class `{e}` comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        // Generators suffice: the class is the orbit under conjugation by them.
        let gens: &[Perm] = if self.generators.is_empty() {
            &[]
        } else {
            &self.generators
        };
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = &self.elements[members[i]];
                for g in gens {
                    let y = g.compose(x).compose(&g.inverse());
                    let yi = self.index[&y];
                    if class_of[yi] == usize::MAX {
                        class_of[yi] = id;
                        members.push(yi);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

/// One orbit of a group action.
#[derive(Debug, Clone)]
pub struct Orbit<T> {
    pub representative: T,
    pub members: Vec<T>,
    /// Indices (into the group's element list) of the stabilizer of the representative.
    pub stabilizer: Vec<usize>,
}

impl<T> Orbit<T> {
    pub fn stabilizer_order(&self) -> usize {
        self.stabilizer.len()
    }
}

/// Orbits of `group` acting on `points` through `act(g, x)`.
///
/// The action axioms are checked on a deterministic sample; the orbit
/// representative is the first member met in `points` order.
pub fn orbits<T, F>(group: &PermGroup, points: &[T], act: F) -> Result<Vec<Orbit<T>>>
where
    T: Clone + Eq + Hash,
    F: Fn(&Perm, &T) -> T,
{
    check_action(group, points, &act)?;
    let position: HashMap<&T, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut visited = vec![false; points.len()];
    let mut out = Vec::new();
    for (i, x) in points.iter().enumerate() {
        if visited[i] {
            continue;
        }
        let mut members = Vec::new();
        let mut stabilizer = Vec::new();
        for (gi, g) in group.elements().iter().enumerate() {
            let y = act(g, x);
            let yi = *position
                .get(&y)
                .ok_or_else(|| Error::InvalidAction("action leaves the point set".into()))?;
            if yi == i {
                stabilizer.push(gi);
            }
            if !visited[yi] {
                visited[yi] = true;
                members.push(y);
            }
        }
        if members.len() * stabilizer.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "orbit-stabilizer fails: {} * {} != {}",
                members.len(),
                stabilizer.len(),
                group.order()
            )));
        }
        out.push(Orbit {
            representative: x.clone(),
            members,
            stabilizer,
        });
    }
    Ok(out)
}

fn check_action<T, F>(group: &PermGroup, points: &[T], act: &F) -> Result<()>
where
    T: Clone + Eq + Hash,
    F: Fn(&Perm, &T) -> T,
{
    const SAMPLES: usize = 12;
    let id = Perm::identity(group.degree());
    let elems = group.elements();
    let stride_p = (points.len() / SAMPLES).max(1);
    let stride_g = (elems.len() / 4).max(1);
    for x in points.iter().step_by(stride_p).take(SAMPLES) {
        if act(&id, x) != *x {
            return Err(Error::InvalidAction(
                "identity does not act trivially".into(),
            ));
        }
        for g in elems.iter().skip(1).step_by(stride_g).take(4) {
            for h in elems
                .iter()
                .skip(stride_g / 2 + 1)
                .step_by(stride_g)
                .take(4)
            {
                if act(&g.compose(h), x) != act(g, &act(h, x)) {
                    return Err(Error::InvalidAction(format!(
                        "act(gh, x) != act(g, act(h, x)) for g = {g}, h = {h}"
                    )));
                }
            }
        }
    }
    Ok(())
}
