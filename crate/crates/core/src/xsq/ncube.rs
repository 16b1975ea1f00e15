//! Crossed n-cubes with subsets of `{1..n}` encoded as bitmasks (bit `i-1`
//! for `i`).

use crate::error::{Error, Result, Violation};
use crate::grp::{Group, GroupAction, GroupHom, Subgroup};
use crate::xmod::CrossedModule;
use crate::xsq::square::CrossedSquare;

const CUBE: &str = "crossed n-cube";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedNCube {
    pub n: usize,
    /// `groups[A]` for every mask `A < 2^n`.
    pub groups: Vec<Group>,
    /// `mu[A][i]: M_A → M_{A∖{i}}`, present exactly for `i ∈ A`.
    pub mu: Vec<Vec<Option<GroupHom>>>,
    /// `h[A * 2^n + B]`, a `|M_A| × |M_B|` table into `M_{A∪B}`.
    pub h: Vec<Vec<u32>>,
}

fn bit(i: usize) -> usize {
    1 << i
}

impl CrossedNCube {
    pub fn subsets(&self) -> usize {
        1 << self.n
    }

    pub fn group(&self, a: usize) -> &Group {
        &self.groups[a]
    }

    /// `μᵢ` on `x ∈ M_A`; returns the new mask and element.
    #[inline]
    pub fn mu(&self, i: usize, a: usize, x: u32) -> (usize, u32) {
        match &self.mu[a][i] {
            Some(f) => (a & !bit(i), f.apply(x)),
            None => (a, x),
        }
    }

    #[inline]
    pub fn h(&self, a: usize, x: u32, b: usize, y: u32) -> u32 {
        let nb = self.groups[b].order();
        self.h[a * self.subsets() + b][x as usize * nb + y as usize]
    }

    /// `ᵃb = h(a,b) b` for `A ⊆ B`.
    #[inline]
    pub fn act(&self, a: usize, x: u32, b: usize, y: u32) -> u32 {
        debug_assert_eq!(a & b, a);
        self.groups[b].mul(self.h(a, x, b, y), y)
    }

    fn shape_check(&self) -> Result<()> {
        let s = self.subsets();
        if self.groups.len() != s || self.mu.len() != s || self.h.len() != s * s {
            return Err(Error::Shape("n-cube needs data for every subset".into()));
        }
        for a in 0..s {
            if self.mu[a].len() != self.n {
                return Err(Error::Shape(format!("mu[{a}] has the wrong length")));
            }
            for i in 0..self.n {
                if let Some(f) = &self.mu[a][i] {
                    let t = a & !bit(i);
                    if f.src.order() != self.groups[a].order()
                        || f.dst.order() != self.groups[t].order()
                        || f.map.iter().any(|&x| x as usize >= self.groups[t].order())
                    {
                        return Err(Error::Shape(format!("mu_{} on {a} has the wrong shape", i + 1)));
                    }
                }
            }
            for b in 0..s {
                let t = &self.h[a * s + b];
                let bound = self.groups[a | b].order();
                if t.len() != self.groups[a].order() * self.groups[b].order()
                    || t.iter().any(|&x| x as usize >= bound)
                {
                    return Err(Error::Shape(format!("h on ({a}, {b}) has the wrong shape")));
                }
            }
        }
        Ok(())
    }

    /// First failing axiom, in the order 1, 2, 6, 7, 3, 4, 5, 8, 9, 10, 11.
    /// Witnesses name the subsets as masks `A`, `B`, `C`.
    pub fn violation(&self) -> Option<Violation> {
        let checks: [fn(&Self) -> Option<Violation>; 11] = [
            Self::ax1,
            Self::ax2,
            Self::ax6,
            Self::ax7,
            Self::ax3,
            Self::ax4,
            Self::ax5,
            Self::ax8,
            Self::ax9,
            Self::ax10,
            Self::ax11,
        ];
        checks.iter().find_map(|f| f(self))
    }

    fn ax1(&self) -> Option<Violation> {
        let s = self.subsets();
        for a in 0..s {
            for i in 0..self.n {
                let inside = a & bit(i) != 0;
                match (&self.mu[a][i], inside) {
                    (None, true) => {
                        return Some(Violation::new(CUBE, "1").with("A", a as u32).with("i", i as u32 + 1))
                    }
                    (Some(_), false) => {
                        return Some(Violation::new(CUBE, "1").with("A", a as u32).with("i", i as u32 + 1))
                    }
                    (Some(f), true) => {
                        if let Some(v) = crate::xmod::hom_violation(CUBE, "mu", f) {
                            return Some(Violation {
                                axiom: "1".into(),
                                ..v.with("A", a as u32).with("i", i as u32 + 1)
                            });
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        None
    }

    fn ax2(&self) -> Option<Violation> {
        for a in 0..self.subsets() {
            for i in 0..self.n {
                for j in 0..self.n {
                    for x in self.groups[a].elements() {
                        let (a1, y) = self.mu(j, a, x);
                        let l = self.mu(i, a1, y);
                        let (a2, z) = self.mu(i, a, x);
                        let r = self.mu(j, a2, z);
                        if l != r {
                            return Some(
                                Violation::new(CUBE, "2")
                                    .with("A", a as u32)
                                    .with("i", i as u32 + 1)
                                    .with("j", j as u32 + 1)
                                    .with("a", x),
                            );
                        }
                    }
                }
            }
        }
        None
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, u32, usize, u32)> + '_ {
        let s = self.subsets();
        (0..s).flat_map(move |a| {
            (0..s).flat_map(move |b| {
                self.groups[a]
                    .elements()
                    .flat_map(move |x| self.groups[b].elements().map(move |y| (a, x, b, y)))
            })
        })
    }

    fn wit(ax: &str, a: usize, x: u32, b: usize, y: u32) -> Violation {
        Violation::new(CUBE, ax)
            .with("A", a as u32)
            .with("B", b as u32)
            .with("a", x)
            .with("b", y)
    }

    fn ax6(&self) -> Option<Violation> {
        self.pairs().find_map(|(a, x, b, y)| {
            let g = &self.groups[a | b];
            (self.h(a, x, b, y) != g.inv(self.h(b, y, a, x))).then(|| Self::wit("6", a, x, b, y))
        })
    }

    fn ax7(&self) -> Option<Violation> {
        self.pairs().find_map(|(a, x, b, y)| {
            ((x == 0 || y == 0) && self.h(a, x, b, y) != 0).then(|| Self::wit("7", a, x, b, y))
        })
    }

    fn ax3(&self) -> Option<Violation> {
        self.pairs().find_map(|(a, x, b, y)| {
            (0..self.n).find_map(|i| {
                let (_, l) = self.mu(i, a | b, self.h(a, x, b, y));
                let (a2, x2) = self.mu(i, a, x);
                let (b2, y2) = self.mu(i, b, y);
                (l != self.h(a2, x2, b2, y2)).then(|| Self::wit("3", a, x, b, y).with("i", i as u32 + 1))
            })
        })
    }

    fn ax4(&self) -> Option<Violation> {
        self.pairs().find_map(|(a, x, b, y)| {
            (0..self.n).filter(|&i| a & b & bit(i) != 0).find_map(|i| {
                let h = self.h(a, x, b, y);
                let (a2, x2) = self.mu(i, a, x);
                let (b2, y2) = self.mu(i, b, y);
                (h != self.h(a2, x2, b, y) || h != self.h(a, x, b2, y2))
                    .then(|| Self::wit("4", a, x, b, y).with("i", i as u32 + 1))
            })
        })
    }

    fn ax5(&self) -> Option<Violation> {
        (0..self.subsets()).find_map(|a| {
            let g = &self.groups[a];
            g.elements().find_map(|x| {
                g.elements()
                    .find(|&y| self.h(a, x, a, y) != g.commutator(x, y))
                    .map(|y| Self::wit("5", a, x, a, y))
            })
        })
    }

    fn ax8(&self) -> Option<Violation> {
        // h(aa', b) = ᵃh(a', b) h(a, b)
        self.pairs().find_map(|(a, x, b, y)| {
            let g = &self.groups[a];
            let d = a | b;
            let gd = &self.groups[d];
            g.elements().find_map(|x2| {
                let lhs = self.h(a, g.mul(x, x2), b, y);
                let rhs = gd.mul(self.act(a, x, d, self.h(a, x2, b, y)), self.h(a, x, b, y));
                (lhs != rhs).then(|| Self::wit("8", a, x, b, y).with("a'", x2))
            })
        })
    }

    fn ax9(&self) -> Option<Violation> {
        // h(a, bb') = h(a, b) ᵇh(a, b')
        self.pairs().find_map(|(a, x, b, y)| {
            let g = &self.groups[b];
            let d = a | b;
            let gd = &self.groups[d];
            g.elements().find_map(|y2| {
                let lhs = self.h(a, x, b, g.mul(y, y2));
                let rhs = gd.mul(self.h(a, x, b, y), self.act(b, y, d, self.h(a, x, b, y2)));
                (lhs != rhs).then(|| Self::wit("9", a, x, b, y).with("b'", y2))
            })
        })
    }

    fn ax10(&self) -> Option<Violation> {
        // ᵃh(b, c) = h(ᵃb, ᵃc) for A ⊆ B ∩ C
        let s = self.subsets();
        for a in 0..s {
            for b in (0..s).filter(|&b| b & a == a) {
                for c in (0..s).filter(|&c| c & a == a) {
                    let d = b | c;
                    for x in self.groups[a].elements() {
                        for y in self.groups[b].elements() {
                            let ay = self.act(a, x, b, y);
                            for z in self.groups[c].elements() {
                                let lhs = self.act(a, x, d, self.h(b, y, c, z));
                                let rhs = self.h(b, ay, c, self.act(a, x, c, z));
                                if lhs != rhs {
                                    return Some(
                                        Self::wit("10", a, x, b, y)
                                            .with("C", c as u32)
                                            .with("c", z),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn ax11(&self) -> Option<Violation> {
        // ᵃh(h(a⁻¹,b),c) · ᶜh(h(c⁻¹,a),b) · ᵇh(h(b⁻¹,c),a) = 1
        let s = self.subsets();
        let term = |a: usize, x: u32, b: usize, y: u32, c: usize, z: u32| {
            let ab = a | b;
            let inner = self.h(a, self.groups[a].inv(x), b, y);
            let outer = self.h(ab, inner, c, z);
            self.act(a, x, ab | c, outer)
        };
        for a in 0..s {
            for b in 0..s {
                for c in 0..s {
                    let g = &self.groups[a | b | c];
                    for x in self.groups[a].elements() {
                        for y in self.groups[b].elements() {
                            for z in self.groups[c].elements() {
                                let t = g.mul_all(&[
                                    term(a, x, b, y, c, z),
                                    term(c, z, a, x, b, y),
                                    term(b, y, c, z, a, x),
                                ]);
                                if t != 0 {
                                    return Some(
                                        Self::wit("11", a, x, b, y)
                                            .with("C", c as u32)
                                            .with("c", z),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

pub fn make_crossed_ncube(cube: CrossedNCube) -> Result<CrossedNCube> {
    cube.shape_check()?;
    match cube.violation() {
        Some(v) => Err(v.into()),
        None => Ok(cube),
    }
}

/// `M_A = ⋂_{i∈A} Nᵢ`, `M_∅ = G`, inclusions, `h = [a, b]`.
pub fn inclusion_ncube(g: &Group, ns: &[Subgroup]) -> Result<CrossedNCube> {
    for s in ns {
        s.ensure_normal()?;
    }
    let n = ns.len();
    let subs: Vec<Subgroup> = (0..1usize << n)
        .map(|a| {
            (0..n)
                .filter(|&i| a & bit(i) != 0)
                .fold(Subgroup::whole(g), |acc, i| acc.intersect(&ns[i]))
        })
        .collect();
    let groups: Vec<Group> = subs.iter().map(|s| s.to_group().0).collect();
    let s = subs.len();
    let mu = (0..s)
        .map(|a| {
            (0..n)
                .map(|i| {
                    (a & bit(i) != 0).then(|| {
                        let t = a & !bit(i);
                        let map = subs[a]
                            .elements
                            .iter()
                            .map(|&x| subs[t].position(x).expect("inclusion"))
                            .collect();
                        GroupHom::trusted(groups[a].clone(), groups[t].clone(), map)
                    })
                })
                .collect()
        })
        .collect();
    let mut h = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            let d = &subs[a | b];
            let mut t = Vec::with_capacity(subs[a].order() * subs[b].order());
            for &x in &subs[a].elements {
                for &y in &subs[b].elements {
                    t.push(d.position(g.commutator(x, y)).expect("[M_A, M_B] lies in M_A ∩ M_B"));
                }
            }
            h.push(t);
        }
    }
    make_crossed_ncube(CrossedNCube { n, groups, mu, h })
}

/// Builds the `h` tables of an n-cube whose `h` is determined by actions
/// for nested pairs: `h(a, b) = [a, b]` on equal subsets, `h(a, b) =
/// ^{κ(a)}b · b⁻¹` for `A ⊊ B` (with `κ: M_A → M_∅` the composite of the
/// `μᵢ` and `p_act[B]` the `M_∅`-action on `M_B`), `h(b, a) = h(a, b)⁻¹`,
/// and `cross` for incomparable pairs.
fn tables_from_actions(
    n: usize,
    groups: &[Group],
    mu: &[Vec<Option<GroupHom>>],
    p_act: &[GroupAction],
    mut cross: impl FnMut(usize, u32, usize, u32) -> u32,
) -> Vec<Vec<u32>> {
    let s = 1usize << n;
    let to_base = |a: usize, mut x: u32| {
        let mut m = a;
        for i in 0..n {
            if let Some(f) = &mu[m][i] {
                x = f.apply(x);
                m &= !bit(i);
            }
        }
        x
    };
    let mut h = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            let (ga, gb) = (&groups[a], &groups[b]);
            let d = &groups[a | b];
            let mut t = Vec::with_capacity(ga.order() * gb.order());
            for x in ga.elements() {
                for y in gb.elements() {
                    let v = if a == b {
                        ga.commutator(x, y)
                    } else if a & b == a {
                        gb.mul(p_act[b].act(to_base(a, x), y), gb.inv(y))
                    } else if a & b == b {
                        ga.inv(ga.mul(p_act[a].act(to_base(b, y), x), ga.inv(x)))
                    } else {
                        cross(a, x, b, y)
                    };
                    debug_assert!((v as usize) < d.order());
                    t.push(v);
                }
            }
            h.push(t);
        }
    }
    h
}

/// `M_{1} = M`, `M_∅ = P`, `μ₁ = ∂`.
pub fn ncube_from_crossed_module(cm: &CrossedModule) -> CrossedNCube {
    let groups = vec![cm.p.clone(), cm.m.clone()];
    let mu = vec![vec![None], vec![Some(cm.boundary.clone())]];
    let p_act = vec![crate::grp::inner_action(&cm.p), cm.action.clone()];
    let h = tables_from_actions(1, &groups, &mu, &p_act, |_, _, _, _| unreachable!());
    CrossedNCube { n: 1, groups, mu, h }
}

/// `M_{12} = L`, `M_{1} = M`, `M_{2} = N`, `M_∅ = P`; `μ₁` is `λ'` on `L`
/// and `μ` on `M`, `μ₂` is `λ` on `L` and `ν` on `N`; `h` on `M_{1} × M_{2}`
/// is the square's `h`.
pub fn ncube_from_square(sq: &CrossedSquare) -> CrossedNCube {
    let groups = vec![sq.p.clone(), sq.m.clone(), sq.n.clone(), sq.l.clone()];
    let mu = vec![
        vec![None, None],
        vec![Some(sq.mu.clone()), None],
        vec![None, Some(sq.nu.clone())],
        vec![Some(sq.lambda_p.clone()), Some(sq.lambda.clone())],
    ];
    let p_act = vec![
        crate::grp::inner_action(&sq.p),
        sq.act_m.clone(),
        sq.act_n.clone(),
        sq.act_l.clone(),
    ];
    let h = tables_from_actions(2, &groups, &mu, &p_act, |a, x, _, y| {
        if a == 1 {
            sq.h(x, y)
        } else {
            sq.l.inv(sq.h(y, x))
        }
    });
    CrossedNCube { n: 2, groups, mu, h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::FinGroup;
    use crate::xmod::inclusion_crossed_module;
    use crate::xsq::square::inclusion_crossed_square;
    use std::sync::Arc;

    fn d4() -> Group {
        Arc::new(FinGroup::dihedral(4))
    }

    #[test]
    fn d4_three_cube() {
        let g = d4();
        let ns = [
            Subgroup::generated(&g, &[1]),
            Subgroup::generated(&g, &[2, 4]),
            Subgroup::generated(&g, &[2]),
        ];
        let cube = inclusion_ncube(&g, &ns).unwrap();
        assert_eq!(cube.groups[0b111].order(), 2);
    }

    #[test]
    fn two_cube_matches_inclusion_square() {
        let g = d4();
        let m = Subgroup::generated(&g, &[1]);
        let n = Subgroup::generated(&g, &[2, 4]);
        let sq = inclusion_crossed_square(&g, &m, &n).unwrap();
        let from_sq = ncube_from_square(&sq);
        assert_eq!(from_sq.violation(), None);
        let direct = inclusion_ncube(&g, &[m, n]).unwrap();
        assert_eq!(from_sq.h, direct.h);
        assert_eq!(from_sq.mu, direct.mu);
    }

    #[test]
    fn one_cube_is_a_crossed_module() {
        let s3: Group = Arc::new(FinGroup::dihedral(3));
        let cm = inclusion_crossed_module(&s3, &Subgroup::generated(&s3, &[1])).unwrap();
        assert_eq!(ncube_from_crossed_module(&cm).violation(), None);
    }

    #[test]
    fn trivial_subgroups() {
        let g = d4();
        let t = Subgroup::trivial(&g);
        let cube = inclusion_ncube(&g, &[t.clone(), t.clone(), t]).unwrap();
        assert!((1..8).all(|a| cube.groups[a].order() == 1));
    }

    #[test]
    fn mutated_h_breaks_antisymmetry() {
        let g = d4();
        let m = Subgroup::generated(&g, &[1]);
        let n = Subgroup::generated(&g, &[2, 4]);
        let mut cube = inclusion_ncube(&g, &[m, n]).unwrap();
        // h(r, s) on (M_1, M_2): r is 1, s is 2
        let k = 1 * 4 + 2;
        let t = &mut cube.h[1 * 4 + 2];
        t[k] = 1 - t[k];
        match make_crossed_ncube(cube).unwrap_err() {
            Error::Axiom(v) => assert_eq!(v.axiom, "6"),
            e => panic!("{e}"),
        }
    }
}
