use std::ops::ControlFlow;

use crate::error::{Error, Result, Violation};
use crate::grp::{for_each_isomorphism, quotient, Group, GroupAction, GroupHom, Subgroup};
use crate::simp::HomotopyGroup;
use crate::xmod::{action_violation, hom_violation, CrossedModule};

const X2: &str = "2-crossed module";

/// `L → M → N` with `N` acting on `L` and `M`, and the Peiffer lifting
/// `{m, m'}` stored at `peiffer[m * |M| + m']`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCrossedModule {
    pub l: Group,
    pub m: Group,
    pub n: Group,
    pub d2: GroupHom,
    pub d1: GroupHom,
    pub act_l: GroupAction,
    pub act_m: GroupAction,
    pub peiffer: Vec<u32>,
}

impl TwoCrossedModule {
    #[inline]
    pub fn pf(&self, a: u32, b: u32) -> u32 {
        self.peiffer[(a as usize) * self.m.order() + b as usize]
    }

    /// `ᵐl = {∂₂l, m} l`.
    pub fn m_on_l(&self, m: u32, l: u32) -> u32 {
        self.l.mul(self.pf(self.d2.apply(l), m), l)
    }

    fn n_on_l(&self, n: u32, l: u32) -> u32 {
        self.act_l.act(n, l)
    }

    fn n_on_m(&self, n: u32, m: u32) -> u32 {
        self.act_m.act(n, m)
    }

    /// The action of `M` on `L` given by `ᵐl = {∂₂l, m} l`, unvalidated.
    pub fn derived_action_table(&self) -> Vec<u32> {
        let mut t = Vec::with_capacity(self.m.order() * self.l.order());
        for m in self.m.elements() {
            for l in self.l.elements() {
                t.push(self.m_on_l(m, l));
            }
        }
        t
    }

    fn shape_violation(&self) -> Option<Violation> {
        let same = |a: &Group, b: &Group| std::sync::Arc::ptr_eq(a, b) || a == b;
        let ok = same(&self.d2.src, &self.l)
            && same(&self.d2.dst, &self.m)
            && same(&self.d1.src, &self.m)
            && same(&self.d1.dst, &self.n)
            && same(&self.act_l.actor, &self.n)
            && same(&self.act_l.target, &self.l)
            && same(&self.act_m.actor, &self.n)
            && same(&self.act_m.target, &self.m)
            && self.peiffer.len() == self.m.order() * self.m.order()
            && self.peiffer.iter().all(|&x| (x as usize) < self.l.order());
        (!ok).then(|| Violation::new(X2, "components fit together"))
    }

    /// First failing axiom. Order: structure maps, complex, equivariance,
    /// 2CM1, 2CM2, 2CM4 with its (a)/(b) split, 2CM5, 2CM3, then the derived
    /// crossed module.
    pub fn violation(&self) -> Option<Violation> {
        if let Some(v) = self.shape_violation() {
            return Some(v);
        }
        for (name, f) in [("d2", &self.d2), ("d1", &self.d1)] {
            if let Some(v) = hom_violation(X2, name, f) {
                return Some(v);
            }
        }
        for (name, a) in [("N on L", &self.act_l), ("N on M", &self.act_m)] {
            if let Some(v) = action_violation(X2, name, a) {
                return Some(v);
            }
        }
        let (l, m, n) = (&self.l, &self.m, &self.n);
        if let Some(x) = l.elements().find(|&x| self.d1.apply(self.d2.apply(x)) != 0) {
            return Some(Violation::new(X2, "d1 d2 = 1").with("l", x));
        }
        for g in n.elements() {
            for x in l.elements() {
                if self.d2.apply(self.n_on_l(g, x)) != self.n_on_m(g, self.d2.apply(x)) {
                    return Some(Violation::new(X2, "d2 is N-equivariant").with("n", g).with("l", x));
                }
            }
            for x in m.elements() {
                if self.d1.apply(self.n_on_m(g, x)) != n.conj(g, self.d1.apply(x)) {
                    return Some(Violation::new(X2, "d1 is N-equivariant").with("n", g).with("m", x));
                }
            }
        }
        // 2CM1: ∂₂{m, m'} = (^{∂₁m}m')(m m'⁻¹ m⁻¹)
        for a in m.elements() {
            let da = self.d1.apply(a);
            for b in m.elements() {
                let rhs = m.mul(self.n_on_m(da, b), m.mul_all(&[a, m.inv(b), m.inv(a)]));
                if self.d2.apply(self.pf(a, b)) != rhs {
                    return Some(Violation::new(X2, "2CM1").with("m", a).with("m'", b));
                }
            }
        }
        // 2CM2: {∂₂l, ∂₂l'} = [l', l]
        for x in l.elements() {
            for y in l.elements() {
                if self.pf(self.d2.apply(x), self.d2.apply(y)) != l.commutator(y, x) {
                    return Some(Violation::new(X2, "2CM2").with("l", x).with("l'", y));
                }
            }
        }
        // 2CM4: {m, ∂₂l}{∂₂l, m} = ^{∂₁m}l · l⁻¹, then (a) and (b)
        for a in m.elements() {
            let da = self.d1.apply(a);
            for x in l.elements() {
                let dx = self.d2.apply(x);
                let lhs = l.mul(self.pf(a, dx), self.pf(dx, a));
                if lhs != l.mul(self.n_on_l(da, x), l.inv(x)) {
                    return Some(Violation::new(X2, "2CM4").with("m", a).with("l", x));
                }
                if self.pf(dx, a) != l.mul(self.m_on_l(a, x), l.inv(x)) {
                    return Some(Violation::new(X2, "2CM4(a)").with("l", x).with("m", a));
                }
                if self.pf(a, dx) != l.mul(self.n_on_l(da, x), l.inv(self.m_on_l(a, x))) {
                    return Some(Violation::new(X2, "2CM4(b)").with("m", a).with("l", x));
                }
            }
        }
        // 2CM5: ⁿ{m, m'} = {ⁿm, ⁿm'}
        for g in n.elements() {
            for a in m.elements() {
                for b in m.elements() {
                    if self.n_on_l(g, self.pf(a, b)) != self.pf(self.n_on_m(g, a), self.n_on_m(g, b)) {
                        return Some(Violation::new(X2, "2CM5").with("n", g).with("m", a).with("m'", b));
                    }
                }
            }
        }
        // 2CM3 (i) {mm', m''} = ^{∂₁m}{m', m''} {m, m'm''m'⁻¹}
        //      (ii) {m, m'm''} = {m, m'} ^{mm'm⁻¹}{m, m''}
        for a in m.elements() {
            let da = self.d1.apply(a);
            for b in m.elements() {
                let ab = m.mul(a, b);
                let aba = m.mul_all(&[a, b, m.inv(a)]);
                for c in m.elements() {
                    let lhs = self.pf(ab, c);
                    let rhs = l.mul(self.n_on_l(da, self.pf(b, c)), self.pf(a, m.mul_all(&[b, c, m.inv(b)])));
                    if lhs != rhs {
                        return Some(Violation::new(X2, "2CM3(i)").with("m", a).with("m'", b).with("m''", c));
                    }
                    let lhs = self.pf(a, m.mul(b, c));
                    let rhs = l.mul(self.pf(a, b), self.m_on_l(aba, self.pf(a, c)));
                    if lhs != rhs {
                        return Some(Violation::new(X2, "2CM3(ii)").with("m", a).with("m'", b).with("m''", c));
                    }
                }
            }
        }
        let derived = GroupAction {
            actor: m.clone(),
            target: l.clone(),
            table: self.derived_action_table(),
        };
        if let Some(v) = action_violation(X2, "derived M-action on L", &derived) {
            return Some(v);
        }
        let cm = CrossedModule {
            m: l.clone(),
            p: m.clone(),
            boundary: self.d2.clone(),
            action: derived,
        };
        cm.violation().map(|v| Violation {
            structure: X2.to_string(),
            axiom: format!("derived crossed module {}", v.axiom),
            witnesses: v.witnesses,
        })
    }

    /// `(L, M, ∂₂)` with the derived action.
    pub fn derived_crossed_module(&self) -> Result<CrossedModule> {
        let action = GroupAction::new(self.m.clone(), self.l.clone(), self.derived_action_table())?;
        crate::xmod::make_crossed_module(self.l.clone(), self.m.clone(), self.d2.clone(), action)
    }
}

pub fn make_2crossed(t: TwoCrossedModule) -> Result<TwoCrossedModule> {
    match t.violation() {
        Some(v) => Err(v.into()),
        None => Ok(t),
    }
}

/// `L = M = 1` over any `N`.
pub fn trivial_2crossed(n: &Group) -> Result<TwoCrossedModule> {
    let t: Group = std::sync::Arc::new(crate::grp::FinGroup::trivial());
    make_2crossed(TwoCrossedModule {
        d2: GroupHom::identity(&t),
        d1: GroupHom::trivial(&t, n),
        act_l: GroupAction::trivial(n, &t),
        act_m: GroupAction::trivial(n, &t),
        peiffer: vec![0],
        l: t.clone(),
        m: t,
        n: n.clone(),
    })
}

/// `π₀ = N / Im ∂₁`, `π₁ = Ker ∂₁ / Im ∂₂`, `π₂ = Ker ∂₂`.
pub fn homotopy_groups_2cm(t: &TwoCrossedModule) -> Result<[HomotopyGroup; 3]> {
    let im1 = t.d1.image();
    im1.ensure_normal()?;
    let pi0 = quotient(&t.n, &im1)?.group;
    let k1 = t.d1.kernel();
    let (k1g, _) = k1.to_group();
    let im2 = t.d2.image();
    let pos = im2
        .elements
        .iter()
        .map(|&x| k1.position(x).ok_or_else(|| Error::Shape("Im d2 leaves Ker d1".into())))
        .collect::<Result<Vec<_>>>()?;
    let pi1 = quotient(&k1g, &Subgroup::new(k1g.clone(), pos)?)?.group;
    let (pi2, _) = t.d2.kernel().to_group();
    if let Some((a, b)) = pi2.abelian_witness() {
        return Err(Error::NotAbelian { a, b });
    }
    Ok([
        HomotopyGroup::from_group(0, pi0),
        HomotopyGroup::from_group(1, pi1),
        HomotopyGroup::from_group(2, pi2),
    ])
}

/// An isomorphism of 2-crossed modules `(f₂, f₁, f₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCrossedIso {
    pub f2: GroupHom,
    pub f1: GroupHom,
    pub f0: GroupHom,
}

/// Searches for `(f₂, f₁, f₀)` commuting with the boundaries and the
/// actions, and with the Peiffer liftings when `with_peiffer` is set.
pub fn compare_2cm_with(a: &TwoCrossedModule, b: &TwoCrossedModule, with_peiffer: bool) -> Result<Option<TwoCrossedIso>> {
    const BOUND: usize = 512;
    for (x, y) in [(&a.l, &b.l), (&a.m, &b.m), (&a.n, &b.n)] {
        if x.order() > BOUND && y.order() > BOUND {
            return Err(Error::TooLarge {
                order: x.order().max(y.order()),
                bound: BOUND,
            });
        }
        if x.order() != y.order() || x.order_profile() != y.order_profile() {
            return Ok(None);
        }
    }
    let (ka, kb) = (a.d2.kernel().order(), b.d2.kernel().order());
    if ka != kb {
        return Ok(None);
    }
    let mut found = None;
    for_each_isomorphism(&a.n, &b.n, |f0| {
        for_each_isomorphism(&a.m, &b.m, |f1| {
            let ok1 = a.m.elements().all(|x| f0.apply(a.d1.apply(x)) == b.d1.apply(f1.apply(x)))
                && a.n.elements().all(|g| {
                    a.m.elements()
                        .all(|x| f1.apply(a.act_m.act(g, x)) == b.act_m.act(f0.apply(g), f1.apply(x)))
                });
            if !ok1 {
                return ControlFlow::Continue(());
            }
            for_each_isomorphism(&a.l, &b.l, |f2| {
                let ok2 = a.l.elements().all(|x| f1.apply(a.d2.apply(x)) == b.d2.apply(f2.apply(x)))
                    && a.n.elements().all(|g| {
                        a.l.elements()
                            .all(|x| f2.apply(a.act_l.act(g, x)) == b.act_l.act(f0.apply(g), f2.apply(x)))
                    })
                    && (!with_peiffer
                        || a.m.elements().all(|x| {
                            a.m.elements()
                                .all(|y| f2.apply(a.pf(x, y)) == b.pf(f1.apply(x), f1.apply(y)))
                        }));
                if ok2 {
                    found = Some(TwoCrossedIso {
                        f2: f2.clone(),
                        f1: f1.clone(),
                        f0: f0.clone(),
                    });
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            if found.is_some() {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if found.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(found)
}

pub fn compare_2cm(a: &TwoCrossedModule, b: &TwoCrossedModule) -> Result<Option<TwoCrossedIso>> {
    compare_2cm_with(a, b, true)
}
