//! Crossed modules and cat¹-groups.

use std::ops::ControlFlow;

use crate::error::{Error, Result, Violation};
use crate::grp::{
    conjugation_action, for_each_isomorphism, semidirect, Group, GroupAction, GroupHom, Subgroup,
};

const XMOD: &str = "crossed module";
const CAT1: &str = "cat1-group";

/// `∂: M → P` with a `P`-action on `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub m: Group,
    pub p: Group,
    pub boundary: GroupHom,
    pub action: GroupAction,
}

fn shape(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Shape(what.to_string()))
    }
}

pub(crate) fn hom_violation(structure: &str, name: &str, f: &GroupHom) -> Option<Violation> {
    for a in f.src.elements() {
        for b in f.src.elements() {
            if f.apply(f.src.mul(a, b)) != f.dst.mul(f.apply(a), f.apply(b)) {
                return Some(
                    Violation::new(structure, format!("{name} is a homomorphism"))
                        .with("a", a)
                        .with("b", b),
                );
            }
        }
    }
    None
}

pub(crate) fn action_violation(structure: &str, name: &str, act: &GroupAction) -> Option<Violation> {
    act.violation().map(|v| Violation {
        structure: structure.to_string(),
        axiom: format!("{name}: {}", v.axiom),
        witnesses: v.witnesses,
    })
}

impl CrossedModule {
    /// First failing axiom: structure maps, then C1, then C2.
    pub fn violation(&self) -> Option<Violation> {
        if let Some(v) = hom_violation(XMOD, "boundary", &self.boundary) {
            return Some(v);
        }
        if let Some(v) = action_violation(XMOD, "P-action", &self.action) {
            return Some(v);
        }
        let (m, p, d) = (&self.m, &self.p, &self.boundary);
        for x in p.elements() {
            for a in m.elements() {
                if d.apply(self.action.act(x, a)) != p.conj(x, d.apply(a)) {
                    return Some(Violation::new(XMOD, "C1").with("p", x).with("m", a));
                }
            }
        }
        for a in m.elements() {
            for b in m.elements() {
                if self.action.act(d.apply(a), b) != m.conj(a, b) {
                    return Some(Violation::new(XMOD, "C2").with("m", a).with("m'", b));
                }
            }
        }
        None
    }

    #[inline]
    pub fn act(&self, p: u32, m: u32) -> u32 {
        self.action.act(p, m)
    }
}

pub fn make_crossed_module(
    m: Group,
    p: Group,
    boundary: GroupHom,
    action: GroupAction,
) -> Result<CrossedModule> {
    shape(
        boundary.src.order() == m.order() && boundary.dst.order() == p.order(),
        "boundary must go from M to P",
    )?;
    shape(
        boundary.map.len() == m.order() && boundary.map.iter().all(|&x| (x as usize) < p.order()),
        "boundary table has the wrong shape",
    )?;
    shape(
        action.actor.order() == p.order() && action.target.order() == m.order(),
        "action must be of P on M",
    )?;
    shape(
        action.table.len() == p.order() * m.order()
            && action.table.iter().all(|&x| (x as usize) < m.order()),
        "action table has the wrong shape",
    )?;
    let cm = CrossedModule {
        m,
        p,
        boundary,
        action,
    };
    match cm.violation() {
        Some(v) => Err(v.into()),
        None => Ok(cm),
    }
}

/// Normal subgroup inclusion `N → G` with conjugation.
pub fn inclusion_crossed_module(g: &Group, n: &Subgroup) -> Result<CrossedModule> {
    let (action, inc) = conjugation_action(g, n)?;
    make_crossed_module(inc.src.clone(), g.clone(), inc, action)
}

/// Trivial boundary `L → P` from an abelian `P`-module `L`.
pub fn module_crossed_module(l: &Group, p: &Group, action: GroupAction) -> Result<CrossedModule> {
    if let Some((a, b)) = l.abelian_witness() {
        return Err(Error::NotAbelian { a, b });
    }
    make_crossed_module(l.clone(), p.clone(), GroupHom::trivial(l, p), action)
}

/// `(G, s, t)` with `st = t`, `ts = s` and `[Ker s, Ker t] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cat1Group {
    pub g: Group,
    pub s: GroupHom,
    pub t: GroupHom,
}

impl Cat1Group {
    pub fn violation(&self) -> Option<Violation> {
        if let Some(v) = hom_violation(CAT1, "s", &self.s) {
            return Some(v);
        }
        if let Some(v) = hom_violation(CAT1, "t", &self.t) {
            return Some(v);
        }
        cat1_violation(CAT1, "", &self.g, &self.s, &self.t)
    }
}

/// `st = t`, `ts = s`, `[Ker s, Ker t] = 1` for endomorphisms `s, t` of `g`.
pub(crate) fn cat1_violation(
    structure: &str,
    suffix: &str,
    g: &Group,
    s: &GroupHom,
    t: &GroupHom,
) -> Option<Violation> {
    for x in g.elements() {
        if s.apply(t.apply(x)) != t.apply(x) {
            return Some(Violation::new(structure, format!("st = t{suffix}")).with("x", x));
        }
        if t.apply(s.apply(x)) != s.apply(x) {
            return Some(Violation::new(structure, format!("ts = s{suffix}")).with("x", x));
        }
    }
    let ks = s.kernel().elements;
    let kt = t.kernel().elements;
    for &a in &ks {
        for &b in &kt {
            if g.mul(a, b) != g.mul(b, a) {
                return Some(
                    Violation::new(structure, format!("[Ker s, Ker t] = 1{suffix}"))
                        .with("a", a)
                        .with("b", b),
                );
            }
        }
    }
    None
}

pub fn make_cat1(g: Group, s: GroupHom, t: GroupHom) -> Result<Cat1Group> {
    shape(
        [&s, &t]
            .iter()
            .all(|f| f.src.order() == g.order() && f.dst.order() == g.order()),
        "s and t must be endomorphisms of G",
    )?;
    let c = Cat1Group { g, s, t };
    match c.violation() {
        Some(v) => Err(v.into()),
        None => Ok(c),
    }
}

/// `G = M ⋊ P`, `s(m,p) = (1,p)`, `t(m,p) = (1, ∂(m)p)`. Element `(m,p)` sits
/// at index `m + |M| p`.
pub fn cat1_from_crossed(cm: &CrossedModule) -> Cat1Group {
    let sd = semidirect(&cm.action);
    let nm = cm.m.order() as u32;
    let g = sd.group.clone();
    let s = g.elements().map(|x| nm * (x / nm)).collect();
    let t = g
        .elements()
        .map(|x| nm * cm.p.mul(cm.boundary.apply(x % nm), x / nm))
        .collect();
    let c = Cat1Group {
        s: GroupHom::trusted(g.clone(), g.clone(), s),
        t: GroupHom::trusted(g.clone(), g.clone(), t),
        g,
    };
    debug_assert!(c.violation().is_none());
    c
}

/// `Ker s → Im s` by `t`, with conjugation. The groups are realized via
/// [`Subgroup::to_group`], so element `i` of `M` is the `i`-th smallest
/// element of `Ker s`.
pub fn crossed_from_cat1(c: &Cat1Group) -> Result<CrossedModule> {
    let ker = c.s.kernel();
    let im = c.s.image();
    let (m, _) = ker.to_group();
    let (p, _) = im.to_group();
    let mut boundary = Vec::with_capacity(m.order());
    for &x in &ker.elements {
        let y = c.t.apply(x);
        let pos = im.position(y).ok_or_else(|| {
            Error::from(Violation::new(CAT1, "st = t").with("x", x))
        })?;
        boundary.push(pos);
    }
    let mut table = Vec::with_capacity(p.order() * m.order());
    for &y in &im.elements {
        for &x in &ker.elements {
            let z = c.g.conj(y, x);
            table.push(ker.position(z).expect("kernel is normal"));
        }
    }
    let boundary = GroupHom::new(m.clone(), p.clone(), boundary)?;
    let action = GroupAction::new(p.clone(), m.clone(), table)?;
    make_crossed_module(m, p, boundary, action)
}

/// Checks that `(fm, fp)` is a morphism `a → b`: `∂ fm = fp ∂` and
/// `fm(ᵖm) = ^{fp(p)} fm(m)`.
pub fn xmod_morphism_violation(
    structure: &str,
    a: &CrossedModule,
    b: &CrossedModule,
    fm: &GroupHom,
    fp: &GroupHom,
) -> Option<Violation> {
    morphism_violation(structure, (&a.boundary, &a.action), (&b.boundary, &b.action), fm, fp)
}

/// Shared with crossed squares, whose edges are crossed modules with
/// possibly pulled-back actions.
pub(crate) fn morphism_violation(
    structure: &str,
    (da, aa): (&GroupHom, &GroupAction),
    (db, ab): (&GroupHom, &GroupAction),
    fm: &GroupHom,
    fp: &GroupHom,
) -> Option<Violation> {
    for m in da.src.elements() {
        if db.apply(fm.apply(m)) != fp.apply(da.apply(m)) {
            return Some(Violation::new(structure, "morphism commutes with boundary").with("m", m));
        }
    }
    for p in aa.actor.elements() {
        for m in aa.target.elements() {
            if fm.apply(aa.act(p, m)) != ab.act(fp.apply(p), fm.apply(m)) {
                return Some(
                    Violation::new(structure, "morphism is equivariant")
                        .with("p", p)
                        .with("m", m),
                );
            }
        }
    }
    None
}

/// Pair of group isomorphisms `(fm, fp)` forming an isomorphism of crossed
/// modules, if one exists.
pub fn xmod_isomorphism(
    a: &CrossedModule,
    b: &CrossedModule,
) -> Result<Option<(GroupHom, GroupHom)>> {
    // order and bound checks
    if crate::grp::iso_check(&a.m, &b.m)?.is_none() || crate::grp::iso_check(&a.p, &b.p)?.is_none()
    {
        return Ok(None);
    }
    let mut found = None;
    for_each_isomorphism(&a.p, &b.p, |fp| {
        let mut inner = ControlFlow::Continue(());
        for_each_isomorphism(&a.m, &b.m, |fm| {
            if xmod_morphism_violation(XMOD, a, b, fm, fp).is_none() {
                found = Some((fm.clone(), fp.clone()));
                inner = ControlFlow::Break(());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        inner
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{FinGroup, GroupAction};
    use std::sync::Arc;

    fn s3() -> Group {
        Arc::new(FinGroup::dihedral(3))
    }

    fn a3_s3() -> CrossedModule {
        let s3 = s3();
        inclusion_crossed_module(&s3, &Subgroup::generated(&s3, &[1])).unwrap()
    }

    #[test]
    fn make_crossed_module_examples() {
        let cm = a3_s3();
        assert_eq!(cm.m.order(), 3);

        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let id = GroupHom::identity(&c2);
        assert!(make_crossed_module(c2.clone(), c2.clone(), id, GroupAction::trivial(&c2, &c2)).is_ok());

        let bad = make_crossed_module(
            cm.m.clone(),
            cm.p.clone(),
            cm.boundary.clone(),
            GroupAction::trivial(&cm.p, &cm.m),
        )
        .unwrap_err();
        match bad {
            Error::Axiom(v) => {
                assert_eq!(v.axiom, "C1");
                // p is a reflection, m a rotation
                assert!(v.witnesses[0].1 >= 3);
                assert!(v.witnesses[1].1 != 0);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn inclusion_examples() {
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let cm = inclusion_crossed_module(&c2, &Subgroup::trivial(&c2)).unwrap();
        assert_eq!(cm.boundary.map, vec![0]);
        let d4: Group = Arc::new(FinGroup::dihedral(4));
        let cm = inclusion_crossed_module(&d4, &Subgroup::generated(&d4, &[1])).unwrap();
        assert!(cm.boundary.image().is_normal());
        assert!(inclusion_crossed_module(&d4, &Subgroup::generated(&d4, &[4])).is_err());
    }

    #[test]
    fn module_examples() {
        let t: Group = Arc::new(FinGroup::trivial());
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let c3: Group = Arc::new(FinGroup::cyclic(3));
        assert!(module_crossed_module(&c2, &t, GroupAction::trivial(&t, &c2)).is_ok());
        let inv = GroupAction::from_rows(c2.clone(), c3.clone(), &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert!(module_crossed_module(&c3, &c2, inv).is_ok());
        let s3 = s3();
        assert!(matches!(
            module_crossed_module(&s3, &t, GroupAction::trivial(&t, &s3)),
            Err(Error::NotAbelian { .. })
        ));
    }

    #[test]
    fn cat1_examples() {
        let t: Group = Arc::new(FinGroup::trivial());
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let cm = inclusion_crossed_module(&c2, &Subgroup::trivial(&c2)).unwrap();
        let c = cat1_from_crossed(&cm);
        assert_eq!(c.g.order(), 2);
        assert_eq!(c.s, GroupHom::identity(&c.g));
        assert_eq!(c.t, c.s);

        let c = cat1_from_crossed(&a3_s3());
        assert!(c.violation().is_none());
        assert_eq!(c.g.order(), 18);
        assert_eq!(c.s.kernel().order(), 3);

        let cm = module_crossed_module(&c2, &c2, GroupAction::trivial(&c2, &c2)).unwrap();
        let c = cat1_from_crossed(&cm);
        assert!(c.g.is_abelian());
        assert_eq!(c.s, c.t);
        let _ = t;
    }

    #[test]
    fn crossed_from_cat1_examples() {
        let c2: Group = Arc::new(FinGroup::cyclic(2));
        let id = GroupHom::identity(&c2);
        let c = make_cat1(c2.clone(), id.clone(), id).unwrap();
        let cm = crossed_from_cat1(&c).unwrap();
        assert_eq!((cm.m.order(), cm.p.order()), (1, 2));

        let cm = a3_s3();
        let back = crossed_from_cat1(&cat1_from_crossed(&cm)).unwrap();
        let (fm, fp) = xmod_isomorphism(&back, &cm).unwrap().unwrap();
        assert!(fm.is_bijective() && fp.is_bijective());

        // C2 x C2 with s = t = projection onto the second factor
        let v4: Group = Arc::new(FinGroup::direct_product(&c2, &c2));
        let proj = GroupHom::new(v4.clone(), v4.clone(), vec![0, 0, 2, 2]).unwrap();
        let c = make_cat1(v4, proj.clone(), proj).unwrap();
        let cm = crossed_from_cat1(&c).unwrap();
        assert_eq!((cm.m.order(), cm.p.order()), (2, 2));
        assert_eq!(cm.boundary.map, vec![0, 0]);
    }

    #[test]
    fn cat1_axiom_failures() {
        let s3 = s3();
        // s = t = identity has Ker s = 1, fine; s = id, t = trivial breaks ts = s
        let c = make_cat1(s3.clone(), GroupHom::identity(&s3), GroupHom::trivial(&s3, &s3));
        assert!(matches!(c, Err(Error::Axiom(_))));
    }

    #[test]
    fn every_action_entry_mutation_is_detected() {
        let cm = a3_s3();
        let n = cm.m.order() as u32;
        for i in 0..cm.action.table.len() {
            for delta in 1..n {
                let mut act = cm.action.clone();
                act.table[i] = (act.table[i] + delta) % n;
                let err = make_crossed_module(cm.m.clone(), cm.p.clone(), cm.boundary.clone(), act);
                match err {
                    Err(Error::Axiom(v)) => assert!(!v.witnesses.is_empty()),
                    other => panic!("mutation at {i} not detected: {other:?}"),
                }
            }
        }
    }
}
