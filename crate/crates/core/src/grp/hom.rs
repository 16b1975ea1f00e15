use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::group::{FinGroup, Group};

/// A homomorphism stored as an index table `map[a] = f(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub src: Group,
    pub dst: Group,
    pub map: Vec<u32>,
}

impl GroupHom {
    /// Validates `map` exhaustively on all pairs.
    pub fn new(src: Group, dst: Group, map: Vec<u32>) -> Result<Self> {
        if map.len() != src.order() {
            return Err(Error::Shape(format!(
                "hom table has length {}, source has order {}",
                map.len(),
                src.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x as usize >= dst.order()) {
            return Err(Error::Shape(format!("hom value {bad} outside target")));
        }
        for a in src.elements() {
            for b in src.elements() {
                if map[src.mul(a, b) as usize] != dst.mul(map[a as usize], map[b as usize]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { src, dst, map })
    }

    /// For maps produced by constructions that are homomorphisms by design;
    /// checked only in debug builds.
    pub(crate) fn trusted(src: Group, dst: Group, map: Vec<u32>) -> Self {
        debug_assert!(GroupHom::new(src.clone(), dst.clone(), map.clone()).is_ok());
        GroupHom { src, dst, map }
    }

    pub fn identity(g: &Group) -> Self {
        GroupHom {
            src: g.clone(),
            dst: g.clone(),
            map: g.elements().collect(),
        }
    }

    pub fn trivial(src: &Group, dst: &Group) -> Self {
        GroupHom {
            src: src.clone(),
            dst: dst.clone(),
            map: vec![0; src.order()],
        }
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            src: self.src.clone(),
            dst: other.dst.clone(),
            map: self.map.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().filter(|&&x| x == 0).count() == 1
    }

    pub fn is_bijective(&self) -> bool {
        if self.src.order() != self.dst.order() {
            return false;
        }
        let mut seen = vec![false; self.dst.order()];
        for &x in &self.map {
            if std::mem::replace(&mut seen[x as usize], true) {
                return false;
            }
        }
        true
    }

    /// Inverse of a bijective hom.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0u32; self.dst.order()];
        for (a, &b) in self.map.iter().enumerate() {
            inv[b as usize] = a as u32;
        }
        Some(GroupHom {
            src: self.dst.clone(),
            dst: self.src.clone(),
            map: inv,
        })
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup {
            parent: self.src.clone(),
            elements: self.src.elements().filter(|&a| self.apply(a) == 0).collect(),
        }
    }

    pub fn image(&self) -> Subgroup {
        let mut els = self.map.clone();
        els.sort_unstable();
        els.dedup();
        Subgroup {
            parent: self.dst.clone(),
            elements: els,
        }
    }
}

/// A subgroup given by its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub parent: Group,
    pub elements: Vec<u32>,
}

impl Subgroup {
    /// Validates closure under products and inverses.
    pub fn new(parent: Group, mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::Shape("subgroup must contain the identity".into()));
        }
        let mut member = vec![false; parent.order()];
        for &x in &elements {
            *member
                .get_mut(x as usize)
                .ok_or_else(|| Error::Shape(format!("element {x} outside parent")))? = true;
        }
        for &a in &elements {
            if !member[parent.inv(a) as usize] {
                return Err(Error::Shape(format!("subset not closed under inverse at {a}")));
            }
            for &b in &elements {
                if !member[parent.mul(a, b) as usize] {
                    return Err(Error::Shape(format!(
                        "subset not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(Subgroup { parent, elements })
    }

    /// Subgroup generated by `gens`.
    pub fn generated(parent: &Group, gens: &[u32]) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: parent.closure(gens),
        }
    }

    pub fn whole(parent: &Group) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: parent.elements().collect(),
        }
    }

    pub fn trivial(parent: &Group) -> Self {
        Subgroup {
            parent: parent.clone(),
            elements: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn membership(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &x in &self.elements {
            m[x as usize] = true;
        }
        m
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let m = other.membership();
        Subgroup {
            parent: self.parent.clone(),
            elements: self.elements.iter().copied().filter(|&x| m[x as usize]).collect(),
        }
    }

    /// First `(g, n)` with `g n g^-1` outside, if any.
    pub fn normality_witness(&self) -> Option<(u32, u32)> {
        let m = self.membership();
        for g in self.parent.elements() {
            for &n in &self.elements {
                if !m[self.parent.conj(g, n) as usize] {
                    return Some((g, n));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    pub fn ensure_normal(&self) -> Result<()> {
        match self.normality_witness() {
            Some((g, n)) => Err(Error::NotNormal { g, n }),
            None => Ok(()),
        }
    }

    /// Position of a parent element in the sorted element list.
    pub fn position(&self, a: u32) -> Option<u32> {
        self.elements.binary_search(&a).ok().map(|i| i as u32)
    }

    /// The subgroup as a group in its own right, together with the inclusion.
    /// Element `i` of the new group is `elements[i]`.
    pub fn to_group(&self) -> (Group, GroupHom) {
        let n = self.order();
        let mut flat = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                let c = self.parent.mul(a, b);
                flat.push(self.position(c).expect("subgroup closed"));
            }
        }
        let labels = self
            .parent
            .labels()
            .map(|_| self.elements.iter().map(|&a| self.parent.label(a)).collect());
        let g = Arc::new(FinGroup::from_flat_trusted(n, flat, labels));
        let inc = GroupHom {
            src: g.clone(),
            dst: self.parent.clone(),
            map: self.elements.clone(),
        };
        (g, inc)
    }
}

/// Quotient `G/N` with coset representatives chosen as the minimal index in
/// each coset, ordered by representative.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    pub projection: GroupHom,
    /// Minimal representative of each coset.
    pub representatives: Vec<u32>,
}

pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    n.ensure_normal()?;
    Ok(quotient_unchecked(g, n))
}

pub(crate) fn quotient_unchecked(g: &Group, n: &Subgroup) -> Quotient {
    let order = g.order();
    let mut coset_of = vec![u32::MAX; order];
    let mut reps = Vec::new();
    for a in g.elements() {
        if coset_of[a as usize] != u32::MAX {
            continue;
        }
        let idx = reps.len() as u32;
        reps.push(a);
        for &x in &n.elements {
            coset_of[g.mul(a, x) as usize] = idx;
        }
    }
    let q = reps.len();
    let mut flat = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            flat.push(coset_of[g.mul(a, b) as usize]);
        }
    }
    let labels = g
        .labels()
        .map(|_| reps.iter().map(|&a| format!("{}N", g.label(a))).collect());
    let group = Arc::new(FinGroup::from_flat_trusted(q, flat, labels));
    let projection = GroupHom {
        src: g.clone(),
        dst: group.clone(),
        map: coset_of,
    };
    Quotient {
        group,
        projection,
        representatives: reps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        Arc::new(FinGroup::dihedral(3))
    }

    fn c2() -> Group {
        Arc::new(FinGroup::cyclic(2))
    }

    fn sign() -> GroupHom {
        // r^k s^j -> j
        GroupHom::new(s3(), c2(), vec![0, 0, 0, 1, 1, 1]).unwrap()
    }

    #[test]
    fn make_hom_examples() {
        assert!(GroupHom::new(c2(), c2(), vec![0, 1]).is_ok());
        assert!(GroupHom::new(s3(), c2(), vec![0; 6]).is_ok());
        assert!(GroupHom::new(s3(), c2(), vec![0, 0, 0, 1, 1, 1]).is_ok());
        let err = GroupHom::new(s3(), c2(), vec![0, 1, 0, 0, 0, 0]).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism { .. }));
    }

    #[test]
    fn kernels_and_images() {
        assert_eq!(GroupHom::identity(&c2()).kernel().elements, vec![0]);
        let k = sign().kernel();
        assert_eq!(k.elements, vec![0, 1, 2]);
        assert!(k.is_normal());
        assert_eq!(GroupHom::trivial(&s3(), &c2()).image().elements, vec![0]);
    }

    #[test]
    fn d4_mod_center() {
        let d4: Group = Arc::new(FinGroup::dihedral(4));
        let z = Subgroup::generated(&d4, &[2]);
        let q = quotient(&d4, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert_eq!(q.projection.kernel().elements, z.elements);
        assert_eq!(q.projection.image().order(), 4);
    }

    #[test]
    fn quotient_edge_cases() {
        let d4: Group = Arc::new(FinGroup::dihedral(4));
        let q = quotient(&d4, &Subgroup::trivial(&d4)).unwrap();
        assert_eq!(q.group.order(), 8);
        let q = quotient(&d4, &Subgroup::whole(&d4)).unwrap();
        assert_eq!(q.group.order(), 1);
        let s = Subgroup::generated(&d4, &[4]);
        assert!(matches!(quotient(&d4, &s), Err(Error::NotNormal { .. })));
    }
}
