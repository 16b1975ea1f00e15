//! Décalage and the low-dimensional crossed n-cube functor.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{quotient, Group, GroupAction, GroupHom, Subgroup};
use crate::simp::level::Level;
use crate::simp::moore::moore;
use crate::simp::simplicial::TruncatedSimplicialGroup;
use crate::xmod::{make_crossed_module, CrossedModule};
use crate::xsq::{make_crossed_square, CrossedSquare};

/// `Dec G_n = G_{n+1}` with `dᵢ ↦ dᵢ₊₁`, `sᵢ ↦ sᵢ₊₁`. A capped top level is
/// dropped.
pub fn decalage(g: &TruncatedSimplicialGroup) -> Result<TruncatedSimplicialGroup> {
    let k = g.full_depth();
    if k < 1 {
        return Err(Error::DepthTooShallow { need: 1, have: k });
    }
    let levels = g.levels[1..].to_vec();
    let faces = (0..k)
        .map(|n| {
            if n == 0 {
                vec![]
            } else {
                g.faces[n + 1][1..].to_vec()
            }
        })
        .collect();
    let degens = (0..k - 1).map(|n| g.degens[n + 1][1..].to_vec()).collect();
    Ok(TruncatedSimplicialGroup {
        levels,
        faces,
        degens,
        cap: None,
    })
}

/// Sub-level on sorted indices, with the restriction of an operator table.
fn sublevel(lvl: &Level, els: &[u32]) -> Level {
    let mut flat = Vec::with_capacity(els.len() * lvl.width());
    for &x in els {
        flat.extend_from_slice(&lvl.elem(x));
    }
    Level::from_tuples(lvl.ambient(), lvl.width(), flat)
}

fn restrict(src: &[u32], f: &[u32], dst: &[u32]) -> Vec<u32> {
    src.iter()
        .map(|&x| dst.binary_search(&f[x as usize]).expect("operator preserves the kernel") as u32)
        .collect()
}

/// The kernel of the augmentation `d₀: Dec G → G`: levels `Ker d₀ ⊆ G_{n+1}`
/// with the décalage operators.
pub fn decalage_kernel(g: &TruncatedSimplicialGroup) -> Result<TruncatedSimplicialGroup> {
    let k = g.full_depth();
    if k < 1 {
        return Err(Error::DepthTooShallow { need: 1, have: k });
    }
    let kers: Vec<Vec<u32>> = (1..=k)
        .map(|n| g.levels[n].elements().filter(|&x| g.d(n, 0, x) == 0).collect())
        .collect();
    let levels = (1..=k).map(|n| Arc::new(sublevel(&g.levels[n], &kers[n - 1]))).collect();
    let faces = (0..k)
        .map(|n| {
            if n == 0 {
                vec![]
            } else {
                (1..=n + 1)
                    .map(|i| restrict(&kers[n], &g.faces[n + 1][i], &kers[n - 1]))
                    .collect()
            }
        })
        .collect();
    let degens = (0..k - 1)
        .map(|n| {
            (1..=n + 1)
                .map(|i| restrict(&kers[n], &g.degens[n + 1][i], &kers[n + 1]))
                .collect()
        })
        .collect();
    Ok(TruncatedSimplicialGroup {
        levels,
        faces,
        degens,
        cap: None,
    })
}

fn positions(sub: &[u32], xs: impl Iterator<Item = u32>) -> Result<Vec<u32>> {
    xs.map(|x| {
        sub.binary_search(&x)
            .map(|i| i as u32)
            .map_err(|_| Error::Shape(format!("element {x} leaves the expected subgroup")))
    })
    .collect()
}

/// `NG_n / ∂_{n+1} NG_{n+1}`: the Moore group as a `FinGroup`, the quotient,
/// and the Moore element list.
struct MooreQuotient {
    els: Vec<u32>,
    proj: GroupHom,
    reps: Vec<u32>,
    group: Group,
}

fn moore_quotient(g: &TruncatedSimplicialGroup, n: usize) -> Result<MooreQuotient> {
    let nc = moore(g);
    let els = nc.elements[n].clone();
    let full = g.level(n).subgroup_as_group(&els)?;
    let bimg = nc.boundary_image(n);
    let b = Subgroup::new(full.clone(), positions(&els, bimg.into_iter())?)?;
    let q = quotient(&full, &b)?;
    let reps = q.representatives.iter().map(|&r| els[r as usize]).collect();
    Ok(MooreQuotient {
        els,
        proj: q.projection,
        reps,
        group: q.group,
    })
}

/// `𝔐(G, 1)`: `NG₁/∂₂NG₂ → G₀` induced by `d₁`, with `G₀` acting through
/// `s₀`-conjugation.
pub fn m_functor_1(g: &TruncatedSimplicialGroup) -> Result<CrossedModule> {
    g.need_depth(2)?;
    let mq = moore_quotient(g, 1)?;
    let l0 = g.level(0);
    let l1 = g.level(1);
    let p = l0.to_group()?;
    let boundary: Vec<u32> = mq.reps.iter().map(|&r| g.d(1, 1, r)).collect();
    let mut table = Vec::with_capacity(p.order() * mq.reps.len());
    for x in l0.elements() {
        let sx = g.s(0, 0, x);
        for &r in &mq.reps {
            let y = l1.conj(sx, r);
            let pos = positions(&mq.els, std::iter::once(y))?[0];
            table.push(mq.proj.apply(pos));
        }
    }
    let boundary = GroupHom::new(mq.group.clone(), p.clone(), boundary)?;
    let action = GroupAction::new(p.clone(), mq.group.clone(), table)?;
    make_crossed_module(mq.group, p, boundary, action)
}

/// `𝔐(G, 2)` on `(NG₂/∂₃NG₃; Ker d₀¹; Ker d₁¹; G₁)` with `λ = λ' = d₂`,
/// inclusions below, `G₁` acting on the corner by `s₁`-conjugation and on the
/// kernels by conjugation, and `h(x, y) = [s₁x, s₁y·s₀y⁻¹] ∂₃NG₃`.
pub fn m_functor_2(g: &TruncatedSimplicialGroup) -> Result<CrossedSquare> {
    g.need_depth(3)?;
    let mq = moore_quotient(g, 2)?;
    let l1 = g.level(1);
    let l2 = g.level(2);
    let ker0: Vec<u32> = l1.elements().filter(|&x| g.d(1, 0, x) == 0).collect();
    let ker1: Vec<u32> = l1.elements().filter(|&x| g.d(1, 1, x) == 0).collect();
    let p = l1.to_group()?;
    let m = l1.subgroup_as_group(&ker0)?;
    let n = l1.subgroup_as_group(&ker1)?;
    let lift = |y: u32| -> Result<u32> {
        let pos = positions(&mq.els, std::iter::once(y))?[0];
        Ok(mq.proj.apply(pos))
    };
    let lambda = GroupHom::new(
        mq.group.clone(),
        m.clone(),
        positions(&ker0, mq.reps.iter().map(|&r| g.d(2, 2, r)))?,
    )?;
    let lambda_p = GroupHom::new(
        mq.group.clone(),
        n.clone(),
        positions(&ker1, mq.reps.iter().map(|&r| g.d(2, 2, r)))?,
    )?;
    let mu = GroupHom::new(m.clone(), p.clone(), ker0.clone())?;
    let nu = GroupHom::new(n.clone(), p.clone(), ker1.clone())?;
    let mut act_l = Vec::with_capacity(p.order() * mq.reps.len());
    let mut act_m = Vec::with_capacity(p.order() * ker0.len());
    let mut act_n = Vec::with_capacity(p.order() * ker1.len());
    for x in l1.elements() {
        let sx = g.s(1, 1, x);
        for &r in &mq.reps {
            act_l.push(lift(l2.conj(sx, r))?);
        }
        act_m.extend(positions(&ker0, ker0.iter().map(|&y| l1.conj(x, y)))?);
        act_n.extend(positions(&ker1, ker1.iter().map(|&y| l1.conj(x, y)))?);
    }
    let mut h = Vec::with_capacity(ker0.len() * ker1.len());
    for &x in &ker0 {
        let s1x = g.s(1, 1, x);
        for &y in &ker1 {
            let w = l2.mul(g.s(1, 1, y), l2.inv(g.s(1, 0, y)));
            h.push(lift(l2.commutator(s1x, w))?);
        }
    }
    make_crossed_square(CrossedSquare {
        act_l: GroupAction::new(p.clone(), mq.group.clone(), act_l)?,
        act_m: GroupAction::new(p.clone(), m.clone(), act_m)?,
        act_n: GroupAction::new(p.clone(), n.clone(), act_n)?,
        l: mq.group,
        m,
        n,
        p,
        lambda,
        lambda_p,
        mu,
        nu,
        h,
    })
}

/// Either output of the functor.
#[derive(Clone, Debug)]
pub enum MFunctor {
    Module(CrossedModule),
    Square(Box<CrossedSquare>),
}

pub fn m_functor(g: &TruncatedSimplicialGroup, n: usize) -> Result<MFunctor> {
    match n {
        1 => Ok(MFunctor::Module(m_functor_1(g)?)),
        2 => Ok(MFunctor::Square(Box::new(m_functor_2(g)?))),
        _ => Err(Error::Shape(format!("the functor is implemented for n = 1, 2, not {n}"))),
    }
}

/// `Ker λ'` of a square as a group; for `𝔐(G, 2)` this is `π₂(G)`.
pub fn vertical_kernel_corner(sq: &CrossedSquare) -> Group {
    sq.lambda_p.kernel().to_group().0
}

/// The subgroup of `G₁` generated by `[Ker d₁, Ker d₀]`, and `d₂(NG₂)`, both
/// as sorted indices into `G₁`.
pub fn kernel_commutator_vs_boundary(g: &TruncatedSimplicialGroup) -> Result<(Vec<u32>, Vec<u32>)> {
    g.need_depth(2)?;
    let l1 = g.level(1);
    let ker0: Vec<u32> = l1.elements().filter(|&x| g.d(1, 0, x) == 0).collect();
    let ker1: Vec<u32> = l1.elements().filter(|&x| g.d(1, 1, x) == 0).collect();
    let mut gens: Vec<u32> = Vec::new();
    for &a in &ker1 {
        for &b in &ker0 {
            gens.push(l1.commutator(a, b));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let comm = l1.closure(&gens);
    let bd = moore(g).boundary_image(1);
    Ok((comm, bd))
}
