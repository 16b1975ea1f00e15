use crate::error::{Error, Result, Violation};
use crate::grp::{semidirect, Group, GroupAction, GroupHom, Subgroup};
use crate::xmod::{cat1_violation, hom_violation};
use crate::xsq::square::{make_crossed_square, CrossedSquare};

const CAT2: &str = "cat2-group";

/// `(G, s1, t1, s2, t2)`: two commuting cat¹ structures on `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cat2Group {
    pub g: Group,
    pub s1: GroupHom,
    pub t1: GroupHom,
    pub s2: GroupHom,
    pub t2: GroupHom,
}

impl Cat2Group {
    pub fn violation(&self) -> Option<Violation> {
        for (name, f) in [("s1", &self.s1), ("t1", &self.t1), ("s2", &self.s2), ("t2", &self.t2)] {
            if f.src.order() != self.g.order() || f.dst.order() != self.g.order() {
                return Some(Violation::new(CAT2, format!("{name} is an endomorphism")));
            }
            if let Some(v) = hom_violation(CAT2, name, f) {
                return Some(v);
            }
        }
        if let Some(v) = cat1_violation(CAT2, " (1)", &self.g, &self.s1, &self.t1) {
            return Some(v);
        }
        if let Some(v) = cat1_violation(CAT2, " (2)", &self.g, &self.s2, &self.t2) {
            return Some(v);
        }
        let pairs = [
            ("s1s2 = s2s1", &self.s1, &self.s2),
            ("t1t2 = t2t1", &self.t1, &self.t2),
            ("s1t2 = t2s1", &self.s1, &self.t2),
            ("s2t1 = t1s2", &self.s2, &self.t1),
        ];
        for (name, a, b) in pairs {
            if let Some(x) = self.g.elements().find(|&x| a.apply(b.apply(x)) != b.apply(a.apply(x))) {
                return Some(Violation::new(CAT2, name).with("x", x));
            }
        }
        None
    }
}

pub fn make_cat2(g: Group, s1: GroupHom, t1: GroupHom, s2: GroupHom, t2: GroupHom) -> Result<Cat2Group> {
    let c = Cat2Group { g, s1, t1, s2, t2 };
    match c.violation() {
        Some(v) => Err(v.into()),
        None => Ok(c),
    }
}

/// Index arithmetic for the big group `(L ⋊ N) ⋊ (M ⋊ P)`: the element
/// `(l, n, m, p)` sits at `a + |A| b` with `a = l + |L| n`, `b = m + |M| p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cat2Layout {
    pub l: u32,
    pub n: u32,
    pub m: u32,
    pub p: u32,
}

impl Cat2Layout {
    pub fn of(sq: &CrossedSquare) -> Self {
        Cat2Layout {
            l: sq.l.order() as u32,
            n: sq.n.order() as u32,
            m: sq.m.order() as u32,
            p: sq.p.order() as u32,
        }
    }

    #[inline]
    pub fn pack(&self, l: u32, n: u32, m: u32, p: u32) -> u32 {
        (l + self.l * n) + self.l * self.n * (m + self.m * p)
    }

    #[inline]
    pub fn unpack(&self, x: u32) -> (u32, u32, u32, u32) {
        let na = self.l * self.n;
        let (a, b) = (x % na, x / na);
        (a % self.l, a / self.l, b % self.m, b / self.m)
    }
}

/// The cat²-group of a crossed square. Direction 1 has `s1(l,n,m,p) =
/// (1,1,m,p)` and `t1 = (1, ∂(l,n)(m,p))` with `∂ = (λ, ν)`; direction 2 has
/// `s2 = (1,n,1,p)` and `t2 = (1, λ'(l)n, 1, μ(m)p)`.
pub fn cat2_from_square(sq: &CrossedSquare) -> Cat2Group {
    let lay = Cat2Layout::of(sq);
    let a = semidirect(&sq.act_l.pull_back(&sq.nu)).group;
    let b = semidirect(&sq.act_m).group;
    // ^{(m,p)}(l,n) = (^{μ(m)p} l · h(m, ᵖn), ᵖn)
    let mut table = Vec::with_capacity(a.order() * b.order());
    for bx in b.elements() {
        let (m, p) = (bx % lay.m, bx / lay.m);
        let q = sq.p.mul(sq.mu.apply(m), p);
        for ax in a.elements() {
            let (l, n) = (ax % lay.l, ax / lay.l);
            let pn = sq.act_n.act(p, n);
            let l2 = sq.l.mul(sq.act_l.act(q, l), sq.h(m, pn));
            table.push(l2 + lay.l * pn);
        }
    }
    let act = GroupAction::trusted(b.clone(), a.clone(), table);
    let g = semidirect(&act).group;
    let mut s1 = Vec::with_capacity(g.order());
    let mut t1 = Vec::with_capacity(g.order());
    let mut s2 = Vec::with_capacity(g.order());
    let mut t2 = Vec::with_capacity(g.order());
    for x in g.elements() {
        let (l, n, m, p) = lay.unpack(x);
        s1.push(lay.pack(0, 0, m, p));
        let dm = sq.m.mul(sq.lambda.apply(l), sq.n_on_m(n, m));
        let dp = sq.p.mul(sq.nu.apply(n), p);
        t1.push(lay.pack(0, 0, dm, dp));
        s2.push(lay.pack(0, n, 0, p));
        t2.push(lay.pack(
            0,
            sq.n.mul(sq.lambda_p.apply(l), n),
            0,
            sq.p.mul(sq.mu.apply(m), p),
        ));
    }
    let e = |map| GroupHom::trusted(g.clone(), g.clone(), map);
    Cat2Group {
        s1: e(s1),
        t1: e(t1),
        s2: e(s2),
        t2: e(t2),
        g: g.clone(),
    }
}

/// The four corner subgroups of a cat²-group:
/// `L = Ker s1 ∩ Ker s2`, `M = Im s1 ∩ Ker s2`, `N = Ker s1 ∩ Im s2`,
/// `P = Im s1 ∩ Im s2`.
#[derive(Clone, Debug)]
pub struct Corners {
    pub l: Subgroup,
    pub m: Subgroup,
    pub n: Subgroup,
    pub p: Subgroup,
}

impl Corners {
    pub fn of(c: &Cat2Group) -> Self {
        let (k1, i1) = (c.s1.kernel(), c.s1.image());
        let (k2, i2) = (c.s2.kernel(), c.s2.image());
        Corners {
            l: k1.intersect(&k2),
            m: i1.intersect(&k2),
            n: k1.intersect(&i2),
            p: i1.intersect(&i2),
        }
    }
}

fn restrict(f: &GroupHom, src: &Subgroup, dst: &Subgroup, sg: &Group, dg: &Group) -> Result<GroupHom> {
    let mut map = Vec::with_capacity(src.order());
    for &x in &src.elements {
        let y = f.apply(x);
        map.push(dst.position(y).ok_or_else(|| {
            Error::from(Violation::new(CAT2, "corner maps land in corners").with("x", x))
        })?);
    }
    Ok(GroupHom::trusted(sg.clone(), dg.clone(), map))
}

fn conj(g: &Group, actor: &Subgroup, ag: &Group, target: &Subgroup, tg: &Group) -> Result<GroupAction> {
    let mut table = Vec::with_capacity(actor.order() * target.order());
    for &x in &actor.elements {
        for &y in &target.elements {
            let z = g.conj(x, y);
            table.push(target.position(z).ok_or_else(|| {
                Error::from(Violation::new(CAT2, "corners are P-stable").with("p", x).with("x", y))
            })?);
        }
    }
    GroupAction::new(ag.clone(), tg.clone(), table)
}

/// Crossed square on the corners with `λ = t1|`, `ν = t1|`, `λ' = t2|`,
/// `μ = t2|`, conjugation actions and `h = [m, n]` in `G`.
pub fn square_from_cat2(c: &Cat2Group) -> Result<CrossedSquare> {
    Ok(square_from_cat2_with_corners(c)?.0)
}

pub fn square_from_cat2_with_corners(c: &Cat2Group) -> Result<(CrossedSquare, Corners)> {
    let cs = Corners::of(c);
    let (l, _) = cs.l.to_group();
    let (m, _) = cs.m.to_group();
    let (n, _) = cs.n.to_group();
    let (p, _) = cs.p.to_group();
    let mut h = Vec::with_capacity(m.order() * n.order());
    for &x in &cs.m.elements {
        for &y in &cs.n.elements {
            let z = c.g.commutator(x, y);
            h.push(cs.l.position(z).ok_or_else(|| {
                Error::from(Violation::new(CAT2, "[M, N] lies in L").with("m", x).with("n", y))
            })?);
        }
    }
    let sq = CrossedSquare {
        lambda: restrict(&c.t1, &cs.l, &cs.m, &l, &m)?,
        lambda_p: restrict(&c.t2, &cs.l, &cs.n, &l, &n)?,
        mu: restrict(&c.t2, &cs.m, &cs.p, &m, &p)?,
        nu: restrict(&c.t1, &cs.n, &cs.p, &n, &p)?,
        act_l: conj(&c.g, &cs.p, &p, &cs.l, &l)?,
        act_m: conj(&c.g, &cs.p, &p, &cs.m, &m)?,
        act_n: conj(&c.g, &cs.p, &p, &cs.n, &n)?,
        h,
        l,
        m,
        n,
        p,
    };
    Ok((make_crossed_square(sq)?, cs))
}

/// Checks that `f: a.g → b.g` is an isomorphism of cat²-groups.
pub fn cat2_morphism_violation(a: &Cat2Group, b: &Cat2Group, f: &GroupHom) -> Option<Violation> {
    const MOR: &str = "cat2-group morphism";
    if let Some(v) = hom_violation(MOR, "f", f) {
        return Some(v);
    }
    for (name, x, y) in [
        ("s1", &a.s1, &b.s1),
        ("t1", &a.t1, &b.t1),
        ("s2", &a.s2, &b.s2),
        ("t2", &a.t2, &b.t2),
    ] {
        if let Some(g) = a.g.elements().find(|&g| f.apply(x.apply(g)) != y.apply(f.apply(g))) {
            return Some(Violation::new(MOR, format!("commutes with {name}")).with("g", g));
        }
    }
    None
}

/// The canonical comparison `c → cat2_from_square(square_from_cat2(c))`,
/// `g ↦ (l, n, m, p)` with `mp = s1(g)`, `p = s2 s1(g)`, `n = s2(g) p⁻¹` and
/// `l = g s1(g)⁻¹ n⁻¹`. Returned unvalidated together with the target.
pub fn cat2_roundtrip_witness(c: &Cat2Group) -> Result<(GroupHom, Cat2Group)> {
    let (sq, cs) = square_from_cat2_with_corners(c)?;
    let back = cat2_from_square(&sq);
    let lay = Cat2Layout::of(&sq);
    let g = &c.g;
    let mut map = Vec::with_capacity(g.order());
    for x in g.elements() {
        let sx = c.s1.apply(x);
        let p = c.s2.apply(sx);
        let m = g.mul(sx, g.inv(p));
        let n = g.mul(c.s2.apply(x), g.inv(p));
        let l = g.mul_all(&[x, g.inv(sx), g.inv(n)]);
        let pos = |s: &Subgroup, y: u32, what: &str| {
            s.position(y).ok_or_else(|| {
                Error::from(Violation::new(CAT2, format!("decomposition lands in {what}")).with("g", x))
            })
        };
        map.push(lay.pack(pos(&cs.l, l, "L")?, pos(&cs.n, n, "N")?, pos(&cs.m, m, "M")?, pos(&cs.p, p, "P")?));
    }
    Ok((
        GroupHom {
            src: c.g.clone(),
            dst: back.g.clone(),
            map,
        },
        back,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::FinGroup;
    use crate::xsq::square::{inclusion_crossed_square, square_morphism_violation, SquareMorphism};
    use std::sync::Arc;

    fn d4_square() -> CrossedSquare {
        let d4: Group = Arc::new(FinGroup::dihedral(4));
        let m = Subgroup::generated(&d4, &[1]);
        let n = Subgroup::generated(&d4, &[2, 4]);
        inclusion_crossed_square(&d4, &m, &n).unwrap()
    }

    #[test]
    fn d4_cat2() {
        let sq = d4_square();
        let c = cat2_from_square(&sq);
        assert_eq!(c.g.order(), 256);
        assert_eq!(c.violation(), None);
    }

    #[test]
    fn roundtrip_square_is_identity_indexed() {
        let sq = d4_square();
        let back = square_from_cat2(&cat2_from_square(&sq)).unwrap();
        let f = SquareMorphism {
            fl: GroupHom::identity(&sq.l),
            fm: GroupHom::identity(&sq.m),
            fn_: GroupHom::identity(&sq.n),
            fp: GroupHom::identity(&sq.p),
        };
        assert_eq!(square_morphism_violation(&back, &sq, &f), None);
    }

    #[test]
    fn roundtrip_cat2_witness() {
        let c = cat2_from_square(&d4_square());
        let (f, back) = cat2_roundtrip_witness(&c).unwrap();
        assert!(f.is_bijective());
        assert_eq!(cat2_morphism_violation(&c, &back, &f), None);
    }

    #[test]
    fn corner_square_cat2_is_c2_with_trivial_endos() {
        let t: Group = Arc::new(FinGroup::trivial());
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let sq = make_crossed_square(CrossedSquare {
            l: c2.clone(),
            m: t.clone(),
            n: t.clone(),
            p: t.clone(),
            lambda: GroupHom::trivial(&c2, &t),
            lambda_p: GroupHom::trivial(&c2, &t),
            mu: GroupHom::identity(&t),
            nu: GroupHom::identity(&t),
            act_l: GroupAction::trivial(&t, &c2),
            act_m: GroupAction::trivial(&t, &t),
            act_n: GroupAction::trivial(&t, &t),
            h: vec![0],
        })
        .unwrap();
        let c = cat2_from_square(&sq);
        assert_eq!(c.g.order(), 2);
        for f in [&c.s1, &c.t1, &c.s2, &c.t2] {
            assert_eq!(f.map, vec![0, 0]);
        }
        let back = square_from_cat2(&c).unwrap();
        assert_eq!(back.l.order(), 2);
    }

    #[test]
    fn broken_cat2_is_rejected() {
        let c = cat2_from_square(&d4_square());
        let bad = make_cat2(c.g.clone(), c.s1.clone(), c.t1.clone(), c.t1.clone(), c.t2.clone());
        assert!(bad.is_err());
    }
}
