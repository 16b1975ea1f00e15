use std::ops::ControlFlow;

use crate::error::{Error, Result, Violation};
use crate::grp::{for_each_isomorphism, Group, GroupAction, GroupHom, Subgroup};
use crate::xmod::{action_violation, hom_violation, morphism_violation, CrossedModule};

const SQ: &str = "crossed square";

/// A crossed square
///
/// ```text
///   L --λ--> M
///   |λ'      |μ
///   v        v
///   N --ν--> P
/// ```
///
/// with `P` acting on `L`, `M`, `N` and `h: M × N → L` stored densely at
/// `h[m * |N| + n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedSquare {
    pub l: Group,
    pub m: Group,
    pub n: Group,
    pub p: Group,
    pub lambda: GroupHom,
    pub lambda_p: GroupHom,
    pub mu: GroupHom,
    pub nu: GroupHom,
    pub act_l: GroupAction,
    pub act_m: GroupAction,
    pub act_n: GroupAction,
    pub h: Vec<u32>,
}

impl CrossedSquare {
    #[inline]
    pub fn h(&self, m: u32, n: u32) -> u32 {
        self.h[m as usize * self.n.order() + n as usize]
    }

    pub fn set_h(&mut self, m: u32, n: u32, l: u32) {
        let k = self.n.order();
        self.h[m as usize * k + n as usize] = l;
    }

    /// `ⁿm` via `ν`.
    #[inline]
    pub fn n_on_m(&self, n: u32, m: u32) -> u32 {
        self.act_m.act(self.nu.apply(n), m)
    }

    /// `ᵐn` via `μ`.
    #[inline]
    pub fn m_on_n(&self, m: u32, n: u32) -> u32 {
        self.act_n.act(self.mu.apply(m), n)
    }

    #[inline]
    pub fn m_on_l(&self, m: u32, l: u32) -> u32 {
        self.act_l.act(self.mu.apply(m), l)
    }

    #[inline]
    pub fn n_on_l(&self, n: u32, l: u32) -> u32 {
        self.act_l.act(self.nu.apply(n), l)
    }

    /// `κ = μλ`.
    pub fn kappa(&self) -> GroupHom {
        self.lambda.then(&self.mu)
    }

    /// The five edge crossed modules `λ, λ', μ, ν, κ`, with the induced
    /// actions. Not validated.
    pub fn edges(&self) -> [(&'static str, CrossedModule); 5] {
        let xm = |m: &Group, p: &Group, d: GroupHom, a: GroupAction| CrossedModule {
            m: m.clone(),
            p: p.clone(),
            boundary: d,
            action: a,
        };
        [
            ("lambda", xm(&self.l, &self.m, self.lambda.clone(), self.act_l.pull_back(&self.mu))),
            ("lambda'", xm(&self.l, &self.n, self.lambda_p.clone(), self.act_l.pull_back(&self.nu))),
            ("mu", xm(&self.m, &self.p, self.mu.clone(), self.act_m.clone())),
            ("nu", xm(&self.n, &self.p, self.nu.clone(), self.act_n.clone())),
            ("kappa", xm(&self.l, &self.p, self.kappa(), self.act_l.clone())),
        ]
    }

    fn shape_check(&self) -> Result<()> {
        let (l, m, n, p) = (self.l.order(), self.m.order(), self.n.order(), self.p.order());
        let homs = [
            (&self.lambda, l, m, "lambda"),
            (&self.lambda_p, l, n, "lambda'"),
            (&self.mu, m, p, "mu"),
            (&self.nu, n, p, "nu"),
        ];
        for (f, s, d, name) in homs {
            if f.src.order() != s
                || f.dst.order() != d
                || f.map.len() != s
                || f.map.iter().any(|&x| x as usize >= d)
            {
                return Err(Error::Shape(format!("{name} has the wrong shape")));
            }
        }
        let acts = [(&self.act_l, l, "P on L"), (&self.act_m, m, "P on M"), (&self.act_n, n, "P on N")];
        for (a, t, name) in acts {
            if a.actor.order() != p
                || a.target.order() != t
                || a.table.len() != p * t
                || a.table.iter().any(|&x| x as usize >= t)
            {
                return Err(Error::Shape(format!("action {name} has the wrong shape")));
            }
        }
        if self.h.len() != m * n || self.h.iter().any(|&x| x as usize >= l) {
            return Err(Error::Shape("h table has the wrong shape".into()));
        }
        Ok(())
    }

    /// First failing axiom, checked in order 1 to 8.
    pub fn violation(&self) -> Option<Violation> {
        let ax1 = |v: Violation, what: &str| Violation {
            structure: SQ.into(),
            axiom: format!("1 ({what}: {})", v.axiom),
            witnesses: v.witnesses,
        };
        for (name, f) in [
            ("lambda", &self.lambda),
            ("lambda'", &self.lambda_p),
            ("mu", &self.mu),
            ("nu", &self.nu),
        ] {
            if let Some(v) = hom_violation(SQ, name, f) {
                return Some(ax1(v, name));
            }
        }
        for (name, a) in [("P on L", &self.act_l), ("P on M", &self.act_m), ("P on N", &self.act_n)] {
            if let Some(v) = action_violation(SQ, name, a) {
                return Some(ax1(v, name));
            }
        }
        for l in self.l.elements() {
            if self.mu.apply(self.lambda.apply(l)) != self.nu.apply(self.lambda_p.apply(l)) {
                return Some(Violation::new(SQ, "1 (square commutes)").with("l", l));
            }
        }
        let edges = self.edges();
        for (name, cm) in &edges {
            if let Some(v) = cm.violation() {
                return Some(ax1(v, name));
            }
        }
        // (λ) → (κ), (κ) → (μ), (λ') → (κ), (κ) → (ν)
        let id_l = GroupHom::identity(&self.l);
        let id_p = GroupHom::identity(&self.p);
        let [lam, lamp, mu, nu, kappa] = &edges;
        let morphisms = [
            ("(lambda) -> (kappa)", &lam.1, &kappa.1, &id_l, &self.mu),
            ("(kappa) -> (mu)", &kappa.1, &mu.1, &self.lambda, &id_p),
            ("(lambda') -> (kappa)", &lamp.1, &kappa.1, &id_l, &self.nu),
            ("(kappa) -> (nu)", &kappa.1, &nu.1, &self.lambda_p, &id_p),
        ];
        for (name, a, b, fm, fp) in morphisms {
            let v = morphism_violation(
                SQ,
                (&a.boundary, &a.action),
                (&b.boundary, &b.action),
                fm,
                fp,
            );
            if let Some(v) = v {
                return Some(ax1(v, name));
            }
        }
        self.h_violation()
    }

    /// Axioms 2 to 8, assuming axiom 1.
    pub fn h_violation(&self) -> Option<Violation> {
        let (lg, mg, ng) = (&self.l, &self.m, &self.n);
        // 2: λh(m,n) = m (ⁿm)⁻¹
        // 3: λ'h(m,n) = ᵐn n⁻¹
        for m in mg.elements() {
            for n in ng.elements() {
                let h = self.h(m, n);
                if self.lambda.apply(h) != mg.mul(m, mg.inv(self.n_on_m(n, m))) {
                    return Some(Violation::new(SQ, "2").with("m", m).with("n", n));
                }
                if self.lambda_p.apply(h) != ng.mul(self.m_on_n(m, n), ng.inv(n)) {
                    return Some(Violation::new(SQ, "3").with("m", m).with("n", n));
                }
            }
        }
        // 4: h(λl, n) = l (ⁿl)⁻¹
        // 5: h(m, λ'l) = ᵐl l⁻¹
        for l in lg.elements() {
            for n in ng.elements() {
                let want = lg.mul(l, lg.inv(self.n_on_l(n, l)));
                if self.h(self.lambda.apply(l), n) != want {
                    return Some(Violation::new(SQ, "4").with("l", l).with("n", n));
                }
            }
            for m in mg.elements() {
                let want = lg.mul(self.m_on_l(m, l), lg.inv(l));
                if self.h(m, self.lambda_p.apply(l)) != want {
                    return Some(Violation::new(SQ, "5").with("m", m).with("l", l));
                }
            }
        }
        // 6: h(mm', n) = ᵐh(m',n) h(m,n)
        for m in mg.elements() {
            for m2 in mg.elements() {
                let mm = mg.mul(m, m2);
                for n in ng.elements() {
                    let want = lg.mul(self.m_on_l(m, self.h(m2, n)), self.h(m, n));
                    if self.h(mm, n) != want {
                        return Some(
                            Violation::new(SQ, "6").with("m", m).with("m'", m2).with("n", n),
                        );
                    }
                }
            }
        }
        // 7: h(m, nn') = h(m,n) ⁿh(m,n')
        for m in mg.elements() {
            for n in ng.elements() {
                for n2 in ng.elements() {
                    let want = lg.mul(self.h(m, n), self.n_on_l(n, self.h(m, n2)));
                    if self.h(m, ng.mul(n, n2)) != want {
                        return Some(
                            Violation::new(SQ, "7").with("m", m).with("n", n).with("n'", n2),
                        );
                    }
                }
            }
        }
        // 8: h(ᵖm, ᵖn) = ᵖh(m,n)
        for p in self.p.elements() {
            for m in mg.elements() {
                for n in ng.elements() {
                    let lhs = self.h(self.act_m.act(p, m), self.act_n.act(p, n));
                    if lhs != self.act_l.act(p, self.h(m, n)) {
                        return Some(
                            Violation::new(SQ, "8").with("p", p).with("m", m).with("n", n),
                        );
                    }
                }
            }
        }
        None
    }
}

pub fn make_crossed_square(sq: CrossedSquare) -> Result<CrossedSquare> {
    sq.shape_check()?;
    match sq.violation() {
        Some(v) => Err(v.into()),
        None => Ok(sq),
    }
}

fn position_hom(src: &Subgroup, dst: &Subgroup, sg: &Group, dg: &Group) -> GroupHom {
    let map = src.elements.iter().map(|&x| dst.position(x).expect("subgroup inclusion")).collect();
    GroupHom::trusted(sg.clone(), dg.clone(), map)
}

fn conj_on(g: &Group, p_sub: &Subgroup, pg: &Group, t: &Subgroup, tg: &Group) -> GroupAction {
    let mut table = Vec::with_capacity(pg.order() * tg.order());
    for &x in &p_sub.elements {
        for &y in &t.elements {
            table.push(t.position(g.conj(x, y)).expect("normal subgroup"));
        }
    }
    GroupAction::trusted(pg.clone(), tg.clone(), table)
}

/// Square of normal subgroups `(M ∩ N; M, N; G)` with `h(m,n) = [m,n]` and
/// conjugation actions.
pub fn inclusion_crossed_square(g: &Group, m: &Subgroup, n: &Subgroup) -> Result<CrossedSquare> {
    m.ensure_normal()?;
    n.ensure_normal()?;
    let l = m.intersect(n);
    let whole = Subgroup::whole(g);
    let (lg, _) = l.to_group();
    let (mg, _) = m.to_group();
    let (ng, _) = n.to_group();
    let mut h = Vec::with_capacity(mg.order() * ng.order());
    for &a in &m.elements {
        for &b in &n.elements {
            h.push(l.position(g.commutator(a, b)).expect("[M, N] lies in M ∩ N"));
        }
    }
    make_crossed_square(CrossedSquare {
        lambda: position_hom(&l, m, &lg, &mg),
        lambda_p: position_hom(&l, n, &lg, &ng),
        mu: position_hom(m, &whole, &mg, g),
        nu: position_hom(n, &whole, &ng, g),
        act_l: conj_on(g, &whole, g, &l, &lg),
        act_m: conj_on(g, &whole, g, m, &mg),
        act_n: conj_on(g, &whole, g, n, &ng),
        h,
        l: lg,
        m: mg,
        n: ng,
        p: g.clone(),
    })
}

/// Four homomorphisms between the corners of two squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMorphism {
    pub fl: GroupHom,
    pub fm: GroupHom,
    pub fn_: GroupHom,
    pub fp: GroupHom,
}

/// Checks commutation with the four edges, `P`-equivariance on each corner,
/// and `f_L h = h (f_M × f_N)`.
pub fn square_morphism_violation(
    a: &CrossedSquare,
    b: &CrossedSquare,
    f: &SquareMorphism,
) -> Option<Violation> {
    const MOR: &str = "crossed square morphism";
    let edge = |name: &str, src: &GroupHom, dst: &GroupHom, fs: &GroupHom, fd: &GroupHom| {
        src.src
            .elements()
            .find(|&x| fd.apply(src.apply(x)) != dst.apply(fs.apply(x)))
            .map(|x| Violation::new(MOR, format!("commutes with {name}")).with("x", x))
    };
    let checks = [
        edge("lambda", &a.lambda, &b.lambda, &f.fl, &f.fm),
        edge("lambda'", &a.lambda_p, &b.lambda_p, &f.fl, &f.fn_),
        edge("mu", &a.mu, &b.mu, &f.fm, &f.fp),
        edge("nu", &a.nu, &b.nu, &f.fn_, &f.fp),
    ];
    if let Some(v) = checks.into_iter().flatten().next() {
        return Some(v);
    }
    for (name, aa, ab, ft) in [
        ("L", &a.act_l, &b.act_l, &f.fl),
        ("M", &a.act_m, &b.act_m, &f.fm),
        ("N", &a.act_n, &b.act_n, &f.fn_),
    ] {
        for p in a.p.elements() {
            for x in aa.target.elements() {
                if ft.apply(aa.act(p, x)) != ab.act(f.fp.apply(p), ft.apply(x)) {
                    return Some(
                        Violation::new(MOR, format!("equivariant on {name}"))
                            .with("p", p)
                            .with("x", x),
                    );
                }
            }
        }
    }
    for m in a.m.elements() {
        for n in a.n.elements() {
            if f.fl.apply(a.h(m, n)) != b.h(f.fm.apply(m), f.fn_.apply(n)) {
                return Some(Violation::new(MOR, "preserves h").with("m", m).with("n", n));
            }
        }
    }
    None
}

/// Searches for an isomorphism of crossed squares, building `f_P`, then
/// `f_M`, `f_N`, then `f_L`, pruning on every partial compatibility.
pub fn square_isomorphism(a: &CrossedSquare, b: &CrossedSquare) -> Result<Option<SquareMorphism>> {
    for (x, y) in [(&a.l, &b.l), (&a.m, &b.m), (&a.n, &b.n), (&a.p, &b.p)] {
        if crate::grp::iso_check(x, y)?.is_none() {
            return Ok(None);
        }
    }
    let equivariant = |aa: &GroupAction, ab: &GroupAction, ft: &GroupHom, fp: &GroupHom| {
        aa.actor.elements().all(|p| {
            aa.target
                .elements()
                .all(|x| ft.apply(aa.act(p, x)) == ab.act(fp.apply(p), ft.apply(x)))
        })
    };
    let commutes = |src: &GroupHom, dst: &GroupHom, fs: &GroupHom, fd: &GroupHom| {
        src.src.elements().all(|x| fd.apply(src.apply(x)) == dst.apply(fs.apply(x)))
    };
    let mut found = None;
    for_each_isomorphism(&a.p, &b.p, |fp| {
        let mut fms = Vec::new();
        for_each_isomorphism(&a.m, &b.m, |fm| {
            if commutes(&a.mu, &b.mu, fm, fp) && equivariant(&a.act_m, &b.act_m, fm, fp) {
                fms.push(fm.clone());
            }
            ControlFlow::Continue(())
        });
        let mut fns = Vec::new();
        for_each_isomorphism(&a.n, &b.n, |fn_| {
            if commutes(&a.nu, &b.nu, fn_, fp) && equivariant(&a.act_n, &b.act_n, fn_, fp) {
                fns.push(fn_.clone());
            }
            ControlFlow::Continue(())
        });
        if fms.is_empty() || fns.is_empty() {
            return ControlFlow::Continue(());
        }
        let mut fls = Vec::new();
        for_each_isomorphism(&a.l, &b.l, |fl| {
            if equivariant(&a.act_l, &b.act_l, fl, fp) {
                fls.push(fl.clone());
            }
            ControlFlow::Continue(())
        });
        for fm in &fms {
            for fn_ in &fns {
                for fl in &fls {
                    let f = SquareMorphism {
                        fl: fl.clone(),
                        fm: fm.clone(),
                        fn_: fn_.clone(),
                        fp: fp.clone(),
                    };
                    if square_morphism_violation(a, b, &f).is_none() {
                        found = Some(f);
                        return ControlFlow::Break(());
                    }
                }
            }
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::FinGroup;
    use std::sync::Arc;

    fn d4_square() -> CrossedSquare {
        let d4: Group = Arc::new(FinGroup::dihedral(4));
        let m = Subgroup::generated(&d4, &[1]);
        let n = Subgroup::generated(&d4, &[2, 4]);
        inclusion_crossed_square(&d4, &m, &n).unwrap()
    }

    #[test]
    fn trivial_square() {
        let t: Group = Arc::new(FinGroup::trivial());
        let sq = inclusion_crossed_square(&t, &Subgroup::whole(&t), &Subgroup::whole(&t)).unwrap();
        assert_eq!(sq.h, vec![0]);
    }

    #[test]
    fn d4_inclusion_square() {
        let sq = d4_square();
        assert_eq!(
            (sq.l.order(), sq.m.order(), sq.n.order(), sq.p.order()),
            (2, 4, 4, 8)
        );
        // M = {1, r, r2, r3}, N = {1, r2, s, r2 s}; h(r, s) = r2 = element 1 of L
        assert_eq!(sq.h(1, 2), 1);
        assert_eq!(sq.lambda.apply(1), 2);
    }

    #[test]
    fn h_identity_breaks_axiom_two() {
        let mut sq = d4_square();
        sq.h = vec![0; sq.h.len()];
        match make_crossed_square(sq).unwrap_err() {
            Error::Axiom(v) => {
                assert_eq!(v.axiom, "2");
                // first witness: m = r, n = s
                assert_eq!(v.witnesses, vec![("m".into(), 1), ("n".into(), 2)]);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn inclusion_examples() {
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let sq = inclusion_crossed_square(&c2, &Subgroup::whole(&c2), &Subgroup::whole(&c2)).unwrap();
        assert_eq!(sq.l.order(), 2);
        assert!(sq.h.iter().all(|&x| x == 0));

        let s3: Group = Arc::new(FinGroup::dihedral(3));
        let a3 = Subgroup::generated(&s3, &[1]);
        let sq = inclusion_crossed_square(&s3, &a3, &a3).unwrap();
        assert_eq!(sq.l.order(), 3);
        assert!(sq.h.iter().all(|&x| x == 0));

        let d4: Group = Arc::new(FinGroup::dihedral(4));
        let refl = Subgroup::generated(&d4, &[4]);
        assert!(matches!(
            inclusion_crossed_square(&d4, &refl, &refl),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn self_isomorphism() {
        let sq = d4_square();
        let f = square_isomorphism(&sq, &sq).unwrap().unwrap();
        assert!(square_morphism_violation(&sq, &sq, &f).is_none());
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let other = inclusion_crossed_square(&c2, &Subgroup::whole(&c2), &Subgroup::whole(&c2)).unwrap();
        assert!(square_isomorphism(&sq, &other).unwrap().is_none());
    }
}
