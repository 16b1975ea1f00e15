//! The 2-crossed module of a simplicial group whose Moore complex has
//! length at most 2.

use crate::error::{Error, Result};
use crate::grp::{GroupAction, GroupHom};
use crate::simp::{moore, TruncatedSimplicialGroup};
use crate::x2mod::two_crossed::{make_2crossed, TwoCrossedModule};

fn pos(sub: &[u32], x: u32) -> Result<u32> {
    sub.binary_search(&x)
        .map(|i| i as u32)
        .map_err(|_| Error::Shape(format!("element {x} leaves the Moore group")))
}

/// `L = NG₂`, `M = NG₁`, `N = G₀` with `∂₂ = d₂`, `∂₁ = d₁`, actions by
/// conjugation with `s₀(n)` and `s₁s₀(n)`, and
/// `{x, y} = s₀x s₁y s₀x⁻¹ s₁(x y⁻¹ x⁻¹)`.
///
/// Needs depth 3 so that `NG₃` can be seen to vanish, and then
/// `∂₃NG₃ = 1`. Any nontrivial `NG_n` with `n ≥ 3` gives `MooreTooLong`.
pub fn from_simplicial(g: &TruncatedSimplicialGroup) -> Result<TwoCrossedModule> {
    g.need_depth(3)?;
    let nc = moore(g);
    if let Some(level) = (3..nc.orders.len()).find(|&n| nc.orders[n] > 1) {
        return Err(Error::MooreTooLong { level });
    }
    let (g0, g1, g2) = (g.level(0), g.level(1), g.level(2));
    let ne = &nc.elements[1];
    let le = &nc.elements[2];
    let n = g0.to_group()?;
    let m = g1.subgroup_as_group(ne)?;
    let l = g2.subgroup_as_group(le)?;

    let d2 = le.iter().map(|&x| pos(ne, g.d(2, 2, x))).collect::<Result<Vec<_>>>()?;
    let d1 = ne.iter().map(|&x| g.d(1, 1, x)).collect();
    let d2 = GroupHom::new(l.clone(), m.clone(), d2)?;
    let d1 = GroupHom::new(m.clone(), n.clone(), d1)?;

    let mut act_m = Vec::with_capacity(n.order() * ne.len());
    let mut act_l = Vec::with_capacity(n.order() * le.len());
    for x in g0.elements() {
        let s0 = g.s(0, 0, x);
        for &y in ne {
            act_m.push(pos(ne, g1.conj(s0, y))?);
        }
        let s10 = g.s(1, 1, s0);
        for &y in le {
            act_l.push(pos(le, g2.conj(s10, y))?);
        }
    }
    let act_m = GroupAction::new(n.clone(), m.clone(), act_m)?;
    let act_l = GroupAction::new(n.clone(), l.clone(), act_l)?;

    let mut peiffer = Vec::with_capacity(ne.len() * ne.len());
    for &x in ne {
        let s0x = g.s(1, 0, x);
        for &y in ne {
            let w = g1.mul_all(&[x, g1.inv(y), g1.inv(x)]);
            let z = g2.mul_all(&[s0x, g.s(1, 1, y), g2.inv(s0x), g.s(1, 1, w)]);
            peiffer.push(pos(le, z)?);
        }
    }
    make_2crossed(TwoCrossedModule {
        l,
        m,
        n,
        d2,
        d1,
        act_l,
        act_m,
        peiffer,
    })
}
