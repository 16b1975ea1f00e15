use crate::error::{Error, Result};
use crate::grp::{abelian_invariants, quotient, Group, GroupHom, Subgroup};
use crate::simp::simplicial::TruncatedSimplicialGroup;

/// The Moore complex `NG_n = ⋂_{i<n} Ker dᵢ` with `∂_n = d_n`.
///
/// `elements[n]` lists `NG_n` as sorted indices into `G_n`; `boundary[n][j]`
/// is `d_n` of the `j`-th element, as an index into `G_{n-1}`. At a capped
/// top level the elements are positions in the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalComplex {
    pub elements: Vec<Vec<u32>>,
    pub boundary: Vec<Vec<u32>>,
    pub orders: Vec<usize>,
}

impl NormalComplex {
    pub fn depth(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn order(&self, n: usize) -> usize {
        self.orders[n]
    }

    /// Largest `n` with `NG_n ≠ 1`, within the window.
    pub fn length(&self) -> usize {
        (0..=self.depth()).rev().find(|&n| self.orders[n] > 1).unwrap_or(0)
    }

    /// Image of `∂_{n+1}` as sorted indices into `G_n`.
    pub fn boundary_image(&self, n: usize) -> Vec<u32> {
        let mut v = self.boundary[n + 1].clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn moore(g: &TruncatedSimplicialGroup) -> NormalComplex {
    let k = g.full_depth();
    let mut elements = Vec::with_capacity(k + 2);
    let mut boundary = Vec::with_capacity(k + 2);
    for n in 0..=k {
        let els: Vec<u32> = g.levels[n]
            .elements()
            .filter(|&x| (0..n).all(|i| g.d(n, i, x) == 0))
            .collect();
        let bd = if n == 0 {
            vec![0; els.len()]
        } else {
            els.iter().map(|&x| g.d(n, n, x)).collect()
        };
        elements.push(els);
        boundary.push(bd);
    }
    if let Some(cap) = &g.cap {
        elements.push((0..cap.normal.len() as u32).collect());
        boundary.push(cap.boundary.clone());
    }
    let orders = elements.iter().map(|e| e.len()).collect();
    NormalComplex {
        elements,
        boundary,
        orders,
    }
}

/// `π_n` with its carrier group and, when abelian, elementary divisors.
#[derive(Clone, Debug)]
pub struct HomotopyGroup {
    pub n: usize,
    pub group: Group,
    pub invariants: Option<Vec<u64>>,
}

impl HomotopyGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.order() == 1
    }

    pub fn from_group(n: usize, group: Group) -> Self {
        let invariants = abelian_invariants(&group).ok();
        HomotopyGroup { n, group, invariants }
    }
}

/// `π_n(G) = (NG_n ∩ Ker d_n) / d_{n+1}(NG_{n+1})`.
pub fn homotopy_group(g: &TruncatedSimplicialGroup, n: usize) -> Result<HomotopyGroup> {
    g.need_depth(n + 1)?;
    let nc = moore(g);
    homotopy_from_moore(g, &nc, n)
}

pub fn homotopy_from_moore(g: &TruncatedSimplicialGroup, nc: &NormalComplex, n: usize) -> Result<HomotopyGroup> {
    if nc.depth() < n + 1 {
        return Err(Error::DepthTooShallow {
            need: n + 1,
            have: nc.depth(),
        });
    }
    let cycles: Vec<u32> = nc.elements[n]
        .iter()
        .zip(&nc.boundary[n])
        .filter(|&(_, &b)| n == 0 || b == 0)
        .map(|(&x, _)| x)
        .collect();
    let lvl = g.level(n);
    let z = lvl.subgroup_as_group(&cycles)?;
    let bimg = nc.boundary_image(n);
    let pos: Result<Vec<u32>> = bimg
        .iter()
        .map(|x| {
            cycles
                .binary_search(x)
                .map(|i| i as u32)
                .map_err(|_| Error::Shape(format!("boundary leaves the cycles at level {n}")))
        })
        .collect();
    let b = Subgroup::new(z.clone(), pos?)?;
    let q = quotient(&z, &b)?;
    Ok(HomotopyGroup::from_group(n, q.group))
}

/// A finite chain complex of groups `C_0 ← C_1 ← …` with `∂_n: C_n → C_{n-1}`.
#[derive(Clone, Debug)]
pub struct GroupComplex {
    pub groups: Vec<Group>,
    /// `boundaries[n-1] = ∂_n` for `n ≥ 1`.
    pub boundaries: Vec<GroupHom>,
}

impl GroupComplex {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundaries.len() + 1 != self.groups.len().max(1) {
            return Err(Error::Shape("need one boundary per positive degree".into()));
        }
        for w in self.boundaries.windows(2) {
            if let Some(x) = w[1].src.elements().find(|&x| w[0].apply(w[1].apply(x)) != 0) {
                return Err(Error::Shape(format!("boundary squared is nontrivial at {x}")));
            }
        }
        for d in &self.boundaries {
            d.image().ensure_normal()?;
        }
        Ok(())
    }

    /// `H_n = Ker ∂_n / Im ∂_{n+1}`, with zero groups outside the range.
    pub fn homology(&self, n: usize) -> Result<Group> {
        let c = &self.groups[n];
        let z = if n == 0 {
            Subgroup::whole(c)
        } else {
            self.boundaries[n - 1].kernel()
        };
        let b = match self.boundaries.get(n) {
            Some(d) => d.image(),
            None => Subgroup::trivial(c),
        };
        let (zg, _) = z.to_group();
        let pos = b
            .elements
            .iter()
            .map(|x| z.position(*x).ok_or_else(|| Error::Shape("boundary leaves the cycles".into())))
            .collect::<Result<Vec<_>>>()?;
        let bz = Subgroup::new(zg.clone(), pos)?;
        Ok(quotient(&zg, &bz)?.group)
    }

    /// `t_{n]}`: keep `C_i` for `i < n`, replace `C_n` by `C_n / Im ∂_{n+1}`,
    /// drop everything above.
    pub fn truncate(&self, n: usize) -> Result<GroupComplex> {
        if n >= self.groups.len() {
            return Ok(self.clone());
        }
        let b = match self.boundaries.get(n) {
            Some(d) => d.image(),
            None => Subgroup::trivial(&self.groups[n]),
        };
        let q = quotient(&self.groups[n], &b)?;
        let mut groups = self.groups[..n].to_vec();
        groups.push(q.group.clone());
        let mut boundaries = self.boundaries[..n.saturating_sub(1)].to_vec();
        if n >= 1 {
            let d = &self.boundaries[n - 1];
            // ∂_n factors through the quotient since ∂_n ∂_{n+1} = 1
            let map = q.representatives.iter().map(|&r| d.apply(r)).collect();
            boundaries.push(GroupHom::new(q.group.clone(), d.dst.clone(), map)?);
        }
        Ok(GroupComplex { groups, boundaries })
    }
}

impl NormalComplex {
    /// Materialises each `NG_n` as a group, for small windows.
    pub fn to_complex(&self, g: &TruncatedSimplicialGroup) -> Result<GroupComplex> {
        let k = g.full_depth();
        let mut groups = Vec::with_capacity(k + 1);
        for n in 0..=k {
            groups.push(g.level(n).subgroup_as_group(&self.elements[n])?);
        }
        let mut boundaries = Vec::with_capacity(k);
        for n in 1..=k {
            let map = self.boundary[n]
                .iter()
                .map(|x| {
                    self.elements[n - 1]
                        .binary_search(x)
                        .map(|i| i as u32)
                        .map_err(|_| Error::Shape("boundary leaves the Moore complex".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            boundaries.push(GroupHom::new(groups[n].clone(), groups[n - 1].clone(), map)?);
        }
        Ok(GroupComplex { groups, boundaries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::FinGroup;
    use crate::simp::simplicial::constant;
    use std::sync::Arc;

    #[test]
    fn constant_c2() {
        let c2 = Arc::new(FinGroup::cyclic(2));
        let g = constant(&c2, 3);
        let nc = moore(&g);
        assert_eq!(nc.orders, vec![2, 1, 1, 1]);
        assert_eq!(homotopy_group(&g, 0).unwrap().invariants, Some(vec![2]));
        assert!(homotopy_group(&g, 1).unwrap().is_trivial());
        assert!(matches!(homotopy_group(&g, 3), Err(Error::DepthTooShallow { .. })));
    }

    #[test]
    fn truncation_of_a_short_complex() {
        // C4 --(x2)--> C4 --(x2)--> C4 (valid: 4x = 0 mod 4)
        let c4: Group = Arc::new(FinGroup::cyclic(4));
        let dbl = GroupHom::new(c4.clone(), c4.clone(), vec![0, 2, 0, 2]).unwrap();
        let cx = GroupComplex {
            groups: vec![c4.clone(), c4.clone(), c4.clone()],
            boundaries: vec![dbl.clone(), dbl],
        };
        cx.validate().unwrap();
        let t = cx.truncate(1).unwrap();
        t.validate().unwrap();
        assert_eq!(t.len(), 2);
        for n in 0..=1 {
            let a = abelian_invariants(&cx.homology(n).unwrap()).unwrap();
            let b = abelian_invariants(&t.homology(n).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
}
