//! Internal nerves of cat¹ structures.
//!
//! Arrows live in a [`Level`] with source and target given as index tables;
//! level `n ≥ 1` of the nerve is the set of chains `(f₁, …, fₙ)` with
//! `t(fᵢ) = s(fᵢ₊₁)`, stored as concatenated arrow tuples, and level 0 is the
//! set of objects `Im s`. Faces: at level 1, `d₀ = t` and `d₁ = s`; above,
//! `d₀` drops `f₁`, `dₙ` drops `fₙ`, and `dᵢ` composes `fᵢ₊₁ ∘ fᵢ =
//! fᵢ₊₁ y⁻¹ fᵢ` with `y = t(fᵢ)`. Degeneracy `sᵢ` inserts the identity at the
//! `i`-th object of the chain.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simp::level::Level;
use crate::simp::simplicial::TruncatedSimplicialGroup;
use crate::xmod::Cat1Group;

pub const DEFAULT_LEVEL_CAP: u128 = 1 << 20;

/// A cat¹ structure on a level: `s`, `t` as index tables on `arrows`.
#[derive(Clone, Debug)]
pub struct ArrowData {
    pub arrows: Arc<Level>,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
    /// Objects `Im s`, sorted.
    pub objects: Vec<u32>,
    /// Arrows grouped by source object: `by_source[j]` for `objects[j]`.
    pub by_source: Vec<Vec<u32>>,
}

impl ArrowData {
    pub fn new(arrows: Arc<Level>, s: Vec<u32>, t: Vec<u32>) -> Self {
        let mut objects = s.clone();
        objects.sort_unstable();
        objects.dedup();
        let mut by_source = vec![Vec::new(); objects.len()];
        for (f, &x) in s.iter().enumerate() {
            let j = objects.binary_search(&x).expect("source is an object");
            by_source[j].push(f as u32);
        }
        ArrowData {
            arrows,
            s,
            t,
            objects,
            by_source,
        }
    }

    fn w(&self) -> usize {
        self.arrows.width()
    }

    /// `|Ker s|^n |Im s|`.
    pub fn predicted_order(&self, n: usize) -> u128 {
        let k = (self.arrows.order() / self.objects.len()) as u128;
        k.pow(n as u32) * self.objects.len() as u128
    }

    fn fiber(&self, obj: u32) -> &[u32] {
        let j = self.objects.binary_search(&obj).expect("object");
        &self.by_source[j]
    }

    /// Arrow indices of a level-`n` element (the single object at level 0).
    pub fn split(&self, lvl: &Level, n: usize, x: u32) -> Vec<u32> {
        let e = lvl.elem(x);
        let w = self.w();
        (0..n.max(1))
            .map(|i| self.arrows.index_of(&e[i * w..(i + 1) * w]).expect("chain of arrows"))
            .collect()
    }

    fn join(&self, lvl: &Level, fs: &[u32]) -> u32 {
        let mut t = Vec::with_capacity(fs.len() * self.w());
        for &f in fs {
            t.extend_from_slice(&self.arrows.elem(f));
        }
        lvl.index_of(&t).expect("nerve levels are closed under the operators")
    }

    /// `g ∘ f = g s(g)⁻¹ f`.
    fn compose(&self, f: u32, g: u32) -> u32 {
        let a = &self.arrows;
        a.mul_all(&[g, a.inv(self.s[g as usize]), f])
    }

    pub fn level(&self, n: usize, cap: u128) -> Result<Level> {
        let order = self.predicted_order(n);
        if order > cap {
            return Err(Error::SizeBound {
                what: format!("nerve level {n}"),
                order,
                cap,
            });
        }
        let ambient = self.arrows.ambient();
        let w = self.w();
        if n == 0 {
            let mut flat = Vec::with_capacity(self.objects.len() * w);
            for &x in &self.objects {
                flat.extend_from_slice(&self.arrows.elem(x));
            }
            return Ok(Level::from_tuples(ambient, w, flat));
        }
        let mut chains: Vec<Vec<u32>> = (0..self.arrows.order() as u32).map(|f| vec![f]).collect();
        for _ in 1..n {
            let mut next = Vec::with_capacity(chains.len() * self.by_source[0].len());
            for c in &chains {
                let y = self.t[*c.last().unwrap() as usize];
                for &f in self.fiber(y) {
                    let mut d = c.clone();
                    d.push(f);
                    next.push(d);
                }
            }
            chains = next;
        }
        let mut flat = Vec::with_capacity(chains.len() * n * w);
        for c in &chains {
            for &f in c {
                flat.extend_from_slice(&self.arrows.elem(f));
            }
        }
        let lvl = Level::from_tuples(ambient, n * w, flat);
        debug_assert_eq!(lvl.order() as u128, order);
        Ok(lvl)
    }

    /// `dᵢ: level n → level n−1`.
    pub fn face(&self, src: &Level, dst: &Level, n: usize, i: usize) -> Vec<u32> {
        src.elements()
            .map(|x| {
                let fs = self.split(src, n, x);
                if n == 1 {
                    let y = if i == 0 { self.t[fs[0] as usize] } else { self.s[fs[0] as usize] };
                    return self.join(dst, &[y]);
                }
                let out: Vec<u32> = if i == 0 {
                    fs[1..].to_vec()
                } else if i == n {
                    fs[..n - 1].to_vec()
                } else {
                    let mut v = fs[..i - 1].to_vec();
                    v.push(self.compose(fs[i - 1], fs[i]));
                    v.extend_from_slice(&fs[i + 1..]);
                    v
                };
                self.join(dst, &out)
            })
            .collect()
    }

    /// `sᵢ: level n → level n+1`.
    pub fn degen(&self, src: &Level, dst: &Level, n: usize, i: usize) -> Vec<u32> {
        src.elements()
            .map(|x| {
                let fs = self.split(src, n, x);
                if n == 0 {
                    return self.join(dst, &fs);
                }
                let obj = if i == 0 { self.s[fs[0] as usize] } else { self.t[fs[i - 1] as usize] };
                let mut v = fs[..i].to_vec();
                v.push(obj);
                v.extend_from_slice(&fs[i..]);
                self.join(dst, &v)
            })
            .collect()
    }

    /// Levels `0..=k` with all operators.
    pub fn nerve(&self, k: usize, cap: u128) -> Result<TruncatedSimplicialGroup> {
        let levels: Vec<Arc<Level>> = (0..=k)
            .map(|n| self.level(n, cap).map(Arc::new))
            .collect::<Result<_>>()?;
        let faces = (0..=k)
            .map(|n| {
                if n == 0 {
                    vec![]
                } else {
                    (0..=n).map(|i| self.face(&levels[n], &levels[n - 1], n, i)).collect()
                }
            })
            .collect();
        let degens = (0..k)
            .map(|n| (0..=n).map(|i| self.degen(&levels[n], &levels[n + 1], n, i)).collect())
            .collect();
        Ok(TruncatedSimplicialGroup {
            levels,
            faces,
            degens,
            cap: None,
        })
    }
}

/// The nerve of a cat¹-group up to depth `k`, validated. Level `n` has
/// order `|Ker s|ⁿ |Im s|`.
pub fn nerve_cat1(c: &Cat1Group, k: usize) -> Result<TruncatedSimplicialGroup> {
    nerve_cat1_capped(c, k, DEFAULT_LEVEL_CAP)
}

pub fn nerve_cat1_capped(c: &Cat1Group, k: usize, cap: u128) -> Result<TruncatedSimplicialGroup> {
    let ad = ArrowData::new(Arc::new(Level::from_group(&c.g)), c.s.map.clone(), c.t.map.clone());
    let g = ad.nerve(k, cap)?;
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{FinGroup, Group, Subgroup};
    use crate::simp::moore::{homotopy_group, moore};
    use crate::xmod::{cat1_from_crossed, inclusion_crossed_module};

    fn a3_s3_nerve(k: usize) -> TruncatedSimplicialGroup {
        let s3: Group = Arc::new(FinGroup::dihedral(3));
        let cm = inclusion_crossed_module(&s3, &Subgroup::generated(&s3, &[1])).unwrap();
        nerve_cat1(&cat1_from_crossed(&cm), k).unwrap()
    }

    #[test]
    fn a3_s3_orders_and_moore() {
        let g = a3_s3_nerve(3);
        let orders: Vec<usize> = g.levels.iter().map(|l| l.order()).collect();
        assert_eq!(orders, vec![6, 18, 54, 162]);
        let nc = moore(&g);
        assert_eq!(nc.orders, vec![6, 3, 1, 1]);
        assert_eq!(homotopy_group(&g, 0).unwrap().invariants, Some(vec![2]));
        assert!(homotopy_group(&g, 1).unwrap().is_trivial());
    }

    #[test]
    fn swapped_faces_are_caught() {
        let mut g = a3_s3_nerve(3);
        g.faces[2].swap(0, 1);
        match g.validate() {
            Err(Error::IdentityViolation { relation, .. }) => assert!(relation.starts_with('d')),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn d0_is_boundary_times_p() {
        // level 1 element (m, p) sits at m + 3p in M ⋊ P; d₀(m,p) = μ(m)p
        let s3: Group = Arc::new(FinGroup::dihedral(3));
        let cm = inclusion_crossed_module(&s3, &Subgroup::generated(&s3, &[1])).unwrap();
        let g = nerve_cat1(&cat1_from_crossed(&cm), 1).unwrap();
        for m in 0..3u32 {
            for p in 0..6u32 {
                let x = g.levels[1].index_of(&[m + 3 * p]).unwrap();
                let obj = g.levels[0].elem(g.d(1, 0, x))[0];
                assert_eq!(obj, 3 * s3.mul(cm.boundary.apply(m), p));
            }
        }
    }

    #[test]
    fn trivial_nerve() {
        let t: Group = Arc::new(FinGroup::trivial());
        let cm = inclusion_crossed_module(&t, &Subgroup::whole(&t)).unwrap();
        let g = nerve_cat1(&cat1_from_crossed(&cm), 3).unwrap();
        assert!(g.levels.iter().all(|l| l.order() == 1));
    }
}
