//! Groups realised as sets of tuples over a shared ambient group, multiplied
//! componentwise. Every level of every simplicial object in the crate is a
//! `Level`; plain finite groups are the width-one full case.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{FinGroup, Group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    ambient: Group,
    width: usize,
    /// Sorted, deduplicated tuples, `width` entries each. Empty when `full`.
    data: Vec<u32>,
    len: usize,
    /// Width one and every ambient element present: index = element.
    full: bool,
}

impl Level {
    pub fn from_group(g: &Group) -> Self {
        Level {
            ambient: g.clone(),
            width: 1,
            data: Vec::new(),
            len: g.order(),
            full: true,
        }
    }

    /// Builds a level from unsorted tuples. The identity tuple must be
    /// present; closure is the caller's responsibility.
    pub fn from_tuples(ambient: &Group, width: usize, flat: Vec<u32>) -> Self {
        assert!(width > 0 && flat.len() % width == 0);
        let n = flat.len() / width;
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_unstable_by(|&a, &b| flat[a * width..(a + 1) * width].cmp(&flat[b * width..(b + 1) * width]));
        let mut data = Vec::with_capacity(flat.len());
        let mut last: Option<usize> = None;
        for i in idx {
            let t = &flat[i * width..(i + 1) * width];
            if let Some(l) = last {
                if &flat[l * width..(l + 1) * width] == t {
                    continue;
                }
            }
            data.extend_from_slice(t);
            last = Some(i);
        }
        let len = data.len() / width;
        debug_assert!(data[..width].iter().all(|&x| x == 0), "identity tuple missing");
        Level {
            ambient: ambient.clone(),
            width,
            data,
            len,
            full: false,
        }
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn order(&self) -> usize {
        self.len
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.len as u32
    }

    /// The tuple of element `i`.
    pub fn elem(&self, i: u32) -> std::borrow::Cow<'_, [u32]> {
        if self.full {
            std::borrow::Cow::Owned(vec![i])
        } else {
            let w = self.width;
            std::borrow::Cow::Borrowed(&self.data[i as usize * w..(i as usize + 1) * w])
        }
    }

    /// Component `j` of element `i`.
    #[inline]
    pub fn comp(&self, i: u32, j: usize) -> u32 {
        if self.full {
            i
        } else {
            self.data[i as usize * self.width + j]
        }
    }

    pub fn index_of(&self, t: &[u32]) -> Option<u32> {
        if t.len() != self.width {
            return None;
        }
        if self.full {
            return ((t[0] as usize) < self.len).then_some(t[0]);
        }
        let w = self.width;
        let (mut lo, mut hi) = (0usize, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.data[mid * w..(mid + 1) * w].cmp(t) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid as u32),
            }
        }
        None
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.index_of(t).is_some()
    }

    /// Componentwise product of two tuples.
    pub fn mul_tuples(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.ambient.mul(x, y)).collect()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.full {
            return self.ambient.mul(a, b);
        }
        let t = self.mul_tuples(&self.elem(a), &self.elem(b));
        self.index_of(&t).expect("level is closed under products")
    }

    pub fn inv(&self, a: u32) -> u32 {
        if self.full {
            return self.ambient.inv(a);
        }
        let t: Vec<u32> = self.elem(a).iter().map(|&x| self.ambient.inv(x)).collect();
        self.index_of(&t).expect("level is closed under inverses")
    }

    pub fn mul_all(&self, xs: &[u32]) -> u32 {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul_all(&[g, h, self.inv(g)])
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul_all(&[a, b, self.inv(a), self.inv(b)])
    }

    /// Checks closure under products and inverses and that the identity is
    /// present; returns the first offending pair.
    pub fn closure_witness(&self) -> Option<(u32, u32)> {
        if self.full {
            return None;
        }
        if self.elem(0).iter().any(|&x| x != 0) {
            return Some((0, 0));
        }
        for a in self.elements() {
            let inv: Vec<u32> = self.elem(a).iter().map(|&x| self.ambient.inv(x)).collect();
            if !self.contains(&inv) {
                return Some((a, a));
            }
        }
        let gens = self.generators();
        for &g in &gens {
            for b in self.elements() {
                if !self.contains(&self.mul_tuples(&self.elem(g), &self.elem(b))) {
                    return Some((g, b));
                }
            }
        }
        None
    }

    /// Subgroup generated by `gens`, as sorted element indices.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.len];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A generating set chosen greedily: repeatedly add the first element
    /// outside the current span and re-close.
    pub fn generators(&self) -> Vec<u32> {
        if self.full {
            return self.ambient.generators();
        }
        let mut inside = vec![false; self.len];
        inside[0] = true;
        let mut span = vec![0u32];
        let mut gens = Vec::new();
        let mut next = 1u32;
        while span.len() < self.len {
            while inside[next as usize] {
                next += 1;
            }
            gens.push(next);
            // close span ∪ {next} under right multiplication by all gens
            let start = span.len();
            for i in 0..start {
                let y = self.mul(span[i], next);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    span.push(y);
                }
            }
            let mut i = start;
            while i < span.len() {
                let x = span[i];
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        span.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// The subgroup on `elements` (sorted level indices) as a `FinGroup`;
    /// element `i` of the result is `elements[i]`.
    pub fn subgroup_as_group(&self, elements: &[u32]) -> Result<Group> {
        let n = elements.len();
        if n > 4096 {
            return Err(Error::SizeBound {
                what: "materialised subgroup".into(),
                order: n as u128,
                cap: 4096,
            });
        }
        let pos = |x: u32| elements.binary_search(&x).ok().map(|i| i as u32);
        let mut flat = Vec::with_capacity(n * n);
        for &a in elements {
            for &b in elements {
                flat.push(pos(self.mul(a, b)).ok_or_else(|| Error::Shape("subset is not closed".into()))?);
            }
        }
        Ok(Arc::new(FinGroup::from_flat_trusted(n, flat, None)))
    }

    pub fn to_group(&self) -> Result<Group> {
        if self.full {
            return Ok(self.ambient.clone());
        }
        let all: Vec<u32> = self.elements().collect();
        self.subgroup_as_group(&all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_over_c2() {
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let lvl = Level::from_tuples(&c2, 2, vec![1, 1, 0, 0, 0, 1, 1, 0, 1, 1]);
        assert_eq!(lvl.order(), 4);
        assert_eq!(&*lvl.elem(0), &[0, 0]);
        let a = lvl.index_of(&[0, 1]).unwrap();
        let b = lvl.index_of(&[1, 0]).unwrap();
        assert_eq!(&*lvl.elem(lvl.mul(a, b)), &[1, 1]);
        assert_eq!(lvl.closure_witness(), None);
        assert_eq!(lvl.generators().len(), 2);
        assert!(lvl.to_group().unwrap().is_abelian());
    }

    #[test]
    fn full_levels_are_the_group() {
        let d4: Group = Arc::new(FinGroup::dihedral(4));
        let lvl = Level::from_group(&d4);
        assert_eq!(lvl.mul(1, 4), d4.mul(1, 4));
        assert_eq!(lvl.index_of(&[5]), Some(5));
        assert_eq!(lvl.closure(&[1]).len(), 4);
    }

    #[test]
    fn diagonal_is_a_subgroup_but_a_line_is_not() {
        let c3: Group = Arc::new(FinGroup::cyclic(3));
        let diag = Level::from_tuples(&c3, 2, vec![0, 0, 1, 1, 2, 2]);
        assert_eq!(diag.closure_witness(), None);
        let bad = Level::from_tuples(&c3, 2, vec![0, 0, 1, 0]);
        assert!(bad.closure_witness().is_some());
    }
}
