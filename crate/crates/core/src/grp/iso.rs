//! Exact isomorphism search for small groups.
//!
//! Candidates for each generator image are restricted to elements with the
//! same invariant (element order, centralizer size); the partial map is
//! extended over the generated subgroup after each choice and any clash
//! prunes the branch.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::grp::group::{FinGroup, Group};
use crate::grp::hom::GroupHom;

pub const DEFAULT_ISO_BOUND: usize = 512;

fn invariants(g: &FinGroup) -> Vec<(usize, usize)> {
    g.elements()
        .map(|a| {
            let cent = g.elements().filter(|&b| g.mul(a, b) == g.mul(b, a)).count();
            (g.element_order(a), cent)
        })
        .collect()
}

struct Search<'a> {
    g: &'a FinGroup,
    h: &'a FinGroup,
    gens: Vec<u32>,
    cands: Vec<Vec<u32>>,
    map: Vec<u32>,
    used: Vec<bool>,
    domain: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a FinGroup, h: &'a FinGroup) -> Option<Self> {
        let ig = invariants(g);
        let ih = invariants(h);
        let mut sg = ig.clone();
        let mut sh = ih.clone();
        sg.sort_unstable();
        sh.sort_unstable();
        if sg != sh {
            return None;
        }
        // rarest invariant class first keeps the branching low
        let mut count = std::collections::HashMap::new();
        for x in &ig {
            *count.entry(*x).or_insert(0usize) += 1;
        }
        let mut order: Vec<u32> = g.elements().skip(1).collect();
        order.sort_by_key(|&a| (count[&ig[a as usize]], std::cmp::Reverse(ig[a as usize].0), a));
        let mut gens = Vec::new();
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        let mut size = 1;
        for a in order {
            if size == g.order() {
                break;
            }
            if inside[a as usize] {
                continue;
            }
            gens.push(a);
            let sub = g.closure(&gens);
            size = sub.len();
            for x in sub {
                inside[x as usize] = true;
            }
        }
        let cands = gens
            .iter()
            .map(|&a| h.elements().filter(|&b| ih[b as usize] == ig[a as usize]).collect())
            .collect();
        let mut map = vec![UNSET; g.order()];
        map[0] = 0;
        let mut used = vec![false; h.order()];
        used[0] = true;
        Some(Search {
            g,
            h,
            gens,
            cands,
            map,
            used,
            domain: vec![0],
        })
    }

    /// Extends the map after fixing the image of generator `k`; returns false
    /// on a clash. Domain entries before `old` have already been multiplied by
    /// the earlier generators.
    fn extend(&mut self, k: usize, old: usize) -> bool {
        let mut i = 0;
        while i < self.domain.len() {
            let x = self.domain[i];
            let range = if i < old { k..k + 1 } else { 0..k + 1 };
            for j in range {
                let gj = self.gens[j];
                let y = self.g.mul(x, gj);
                let fy = self.h.mul(self.map[x as usize], self.map[gj as usize]);
                let cur = self.map[y as usize];
                if cur == UNSET {
                    if self.used[fy as usize] {
                        return false;
                    }
                    self.map[y as usize] = fy;
                    self.used[fy as usize] = true;
                    self.domain.push(y);
                } else if cur != fy {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        for &x in &self.domain[mark..] {
            self.used[self.map[x as usize] as usize] = false;
            self.map[x as usize] = UNSET;
        }
        self.domain.truncate(mark);
    }

    fn run<F: FnMut(&[u32]) -> ControlFlow<()>>(&mut self, k: usize, f: &mut F) -> ControlFlow<()> {
        if k == self.gens.len() {
            return f(&self.map);
        }
        let gk = self.gens[k];
        if self.map[gk as usize] != UNSET {
            // already determined by earlier generators
            return self.run(k + 1, f);
        }
        for ci in 0..self.cands[k].len() {
            let b = self.cands[k][ci];
            if self.used[b as usize] {
                continue;
            }
            let mark = self.domain.len();
            self.map[gk as usize] = b;
            self.used[b as usize] = true;
            self.domain.push(gk);
            if self.extend(k, mark) {
                self.run(k + 1, f)?;
            }
            self.rollback(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f` with every isomorphism `g → h` until it breaks.
pub fn for_each_isomorphism<F>(g: &Group, h: &Group, mut f: F)
where
    F: FnMut(&GroupHom) -> ControlFlow<()>,
{
    if g.order() != h.order() {
        return;
    }
    let Some(mut s) = Search::new(g, h) else {
        return;
    };
    let _ = s.run(0, &mut |map: &[u32]| {
        let hom = GroupHom {
            src: g.clone(),
            dst: h.clone(),
            map: map.to_vec(),
        };
        f(&hom)
    });
}

pub fn all_isomorphisms(g: &Group, h: &Group) -> Vec<GroupHom> {
    let mut out = Vec::new();
    for_each_isomorphism(g, h, |iso| {
        out.push(iso.clone());
        ControlFlow::Continue(())
    });
    out
}

pub fn iso_check(g: &Group, h: &Group) -> Result<Option<GroupHom>> {
    iso_check_bounded(g, h, DEFAULT_ISO_BOUND)
}

/// Returns a witness isomorphism or `None`. Errors if both orders exceed
/// `bound`.
pub fn iso_check_bounded(g: &Group, h: &Group, bound: usize) -> Result<Option<GroupHom>> {
    if g.order() > bound && h.order() > bound {
        return Err(Error::TooLarge {
            order: g.order().max(h.order()),
            bound,
        });
    }
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return Ok(None);
    }
    let mut found = None;
    for_each_isomorphism(g, h, |iso| {
        found = Some(iso.clone());
        ControlFlow::Break(())
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::action::{semidirect, GroupAction};
    use std::sync::Arc;

    fn g(x: FinGroup) -> Group {
        Arc::new(x)
    }

    fn validated(w: &GroupHom) {
        assert!(GroupHom::new(w.src.clone(), w.dst.clone(), w.map.clone()).is_ok());
        assert!(w.is_bijective());
    }

    #[test]
    fn examples() {
        let c2 = g(FinGroup::cyclic(2));
        let w = iso_check(&c2, &c2).unwrap().unwrap();
        assert_eq!(w.map, vec![0, 1]);

        let act = GroupAction::from_rows(
            c2.clone(),
            g(FinGroup::cyclic(3)),
            &[vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        let sd = semidirect(&act).group;
        let s3 = g(FinGroup::dihedral(3));
        validated(&iso_check(&sd, &s3).unwrap().unwrap());

        let c4 = g(FinGroup::cyclic(4));
        let v4 = g(FinGroup::direct_product(&c2, &c2));
        assert!(iso_check(&c4, &v4).unwrap().is_none());
    }

    #[test]
    fn d4_and_q8_are_not_isomorphic() {
        let d4 = g(FinGroup::dihedral(4));
        let q8 = g(FinGroup::quaternion());
        assert!(iso_check(&d4, &q8).unwrap().is_none());
        assert!(iso_check(&q8, &d4).unwrap().is_none());
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(D4)| = 8, |Aut(Q8)| = 24, |Aut(C2xC2)| = 6, |Aut(S3)| = 6
        let d4 = g(FinGroup::dihedral(4));
        assert_eq!(all_isomorphisms(&d4, &d4).len(), 8);
        let q8 = g(FinGroup::quaternion());
        assert_eq!(all_isomorphisms(&q8, &q8).len(), 24);
        let c2 = FinGroup::cyclic(2);
        let v4 = g(FinGroup::direct_product(&c2, &c2));
        assert_eq!(all_isomorphisms(&v4, &v4).len(), 6);
        let s3 = g(FinGroup::dihedral(3));
        assert_eq!(all_isomorphisms(&s3, &s3).len(), 6);
        for w in all_isomorphisms(&d4, &d4) {
            validated(&w);
        }
    }

    #[test]
    fn too_large() {
        let big = g(FinGroup::cyclic(600));
        assert!(matches!(iso_check(&big, &big), Err(Error::TooLarge { .. })));
        assert!(iso_check_bounded(&big, &big, 1000).unwrap().is_some());
    }
}
