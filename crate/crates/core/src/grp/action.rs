use std::sync::Arc;

use crate::error::{Error, Result, Violation};
use crate::grp::group::{FinGroup, Group};
use crate::grp::hom::{GroupHom, Subgroup};

/// A left action of `actor` on `target` by automorphisms:
/// `table[g * |target| + h] = ^g h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub actor: Group,
    pub target: Group,
    pub table: Vec<u32>,
}

impl GroupAction {
    pub fn new(actor: Group, target: Group, table: Vec<u32>) -> Result<Self> {
        let a = GroupAction {
            actor,
            target,
            table,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn from_rows(actor: Group, target: Group, rows: &[Vec<u32>]) -> Result<Self> {
        if rows.len() != actor.order() || rows.iter().any(|r| r.len() != target.order()) {
            return Err(Error::Shape("action table has the wrong shape".into()));
        }
        Self::new(actor, target, rows.concat())
    }

    pub(crate) fn trusted(actor: Group, target: Group, table: Vec<u32>) -> Self {
        let a = GroupAction {
            actor,
            target,
            table,
        };
        debug_assert!(a.validate().is_ok(), "{:?}", a.validate());
        a
    }

    pub fn trivial(actor: &Group, target: &Group) -> Self {
        let t = target.order();
        GroupAction {
            actor: actor.clone(),
            target: target.clone(),
            table: (0..actor.order() * t).map(|k| (k % t) as u32).collect(),
        }
    }

    /// Action of `actor` on `target` through a hom into a group that already
    /// acts: `^g h = ^{f(g)} h`.
    pub fn pull_back(&self, f: &GroupHom) -> Self {
        let t = self.target.order();
        let mut table = Vec::with_capacity(f.src.order() * t);
        for g in f.src.elements() {
            let fg = f.apply(g);
            table.extend((0..t as u32).map(|h| self.act(fg, h)));
        }
        GroupAction {
            actor: f.src.clone(),
            target: self.target.clone(),
            table,
        }
    }

    #[inline]
    pub fn act(&self, g: u32, h: u32) -> u32 {
        self.table[g as usize * self.target.order() + h as usize]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.target.order()).map(|r| r.to_vec()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let (na, nt) = (self.actor.order(), self.target.order());
        if self.table.len() != na * nt {
            return Err(Error::Shape("action table has the wrong size".into()));
        }
        if self.table.iter().any(|&x| x as usize >= nt) {
            return Err(Error::Shape("action value outside target".into()));
        }
        match self.violation() {
            Some(v) => Err(Error::InvalidAction(v.to_string())),
            None => Ok(()),
        }
    }

    /// First failure of the action laws, with witnesses. Assumes the table
    /// has the right shape.
    pub fn violation(&self) -> Option<Violation> {
        let nt = self.target.order();
        let bad = |ax: &str| Violation::new("action", ax);
        for h in self.target.elements() {
            if self.act(0, h) != h {
                return Some(bad("identity acts trivially").with("h", h));
            }
        }
        for g in self.actor.elements() {
            let mut seen = vec![u32::MAX; nt];
            for h in self.target.elements() {
                let x = self.act(g, h) as usize;
                if seen[x] != u32::MAX {
                    return Some(bad("bijective").with("g", g).with("h", seen[x]).with("h'", h));
                }
                seen[x] = h;
            }
            for h in self.target.elements() {
                for k in self.target.elements() {
                    if self.act(g, self.target.mul(h, k))
                        != self.target.mul(self.act(g, h), self.act(g, k))
                    {
                        return Some(bad("automorphism").with("g", g).with("h", h).with("k", k));
                    }
                }
            }
        }
        for g in self.actor.elements() {
            for g2 in self.actor.elements() {
                let gg = self.actor.mul(g, g2);
                for h in self.target.elements() {
                    if self.act(gg, h) != self.act(g, self.act(g2, h)) {
                        return Some(bad("compatible").with("g", g).with("g'", g2).with("h", h));
                    }
                }
            }
        }
        None
    }
}

/// Conjugation action of `g` on a normal subgroup `h`, with `h` realised as
/// a group via [`Subgroup::to_group`].
pub fn conjugation_action(g: &Group, h: &Subgroup) -> Result<(GroupAction, GroupHom)> {
    h.ensure_normal()?;
    let (hg, inc) = h.to_group();
    let n = hg.order();
    let mut table = Vec::with_capacity(g.order() * n);
    for x in g.elements() {
        for &y in &h.elements {
            table.push(h.position(g.conj(x, y)).expect("normal"));
        }
    }
    Ok((GroupAction::trusted(g.clone(), hg, table), inc))
}

/// Conjugation of a group on itself.
pub fn inner_action(g: &Group) -> GroupAction {
    let n = g.order();
    let mut table = Vec::with_capacity(n * n);
    for x in g.elements() {
        table.extend(g.elements().map(|y| g.conj(x, y)));
    }
    GroupAction {
        actor: g.clone(),
        target: g.clone(),
        table,
    }
}

/// `K ⋊ Q` on pairs `(k, q)` stored at index `k + |K| * q`, with
/// `(k, q)(k', q') = (k · ^q k', q q')`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: Group,
    pub inj_k: GroupHom,
    pub inj_q: GroupHom,
    pub proj: GroupHom,
}

impl Semidirect {
    #[inline]
    pub fn pair(&self, k: u32, q: u32) -> u32 {
        k + self.inj_k.src.order() as u32 * q
    }

    #[inline]
    pub fn split(&self, x: u32) -> (u32, u32) {
        let nk = self.inj_k.src.order() as u32;
        (x % nk, x / nk)
    }
}

pub fn semidirect(act: &GroupAction) -> Semidirect {
    let (k, q) = (&act.target, &act.actor);
    let (nk, nq) = (k.order(), q.order());
    let n = nk * nq;
    let mut flat = vec![0u32; n * n];
    for x in 0..n {
        let (k1, q1) = ((x % nk) as u32, (x / nk) as u32);
        for y in 0..n {
            let (k2, q2) = ((y % nk) as u32, (y / nk) as u32);
            let kk = k.mul(k1, act.act(q1, k2));
            let qq = q.mul(q1, q2);
            flat[x * n + y] = kk + nk as u32 * qq;
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", k.label((x % nk) as u32), q.label((x / nk) as u32)))
        .collect();
    let group = Arc::new(FinGroup::from_flat_trusted(n, flat, Some(labels)));
    let inj_k = GroupHom::trusted(k.clone(), group.clone(), k.elements().collect());
    let inj_q = GroupHom::trusted(
        q.clone(),
        group.clone(),
        q.elements().map(|b| b * nk as u32).collect(),
    );
    let proj = GroupHom::trusted(
        group.clone(),
        q.clone(),
        (0..n as u32).map(|x| x / nk as u32).collect(),
    );
    Semidirect {
        group,
        inj_k,
        inj_q,
        proj,
    }
}
