//! The Artin–Mazur codiagonal, the diagonal, and the Moore length bound.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::bisimp::bisimplicial::TruncatedBisimplicialGroup;
use crate::error::{Direction, Error, Result};
use crate::simp::{moore, Level, MooreCap, TruncatedSimplicialGroup};

/// Widths of the parts `x_p ∈ X_{p,n−p}` of a level-`n` element of `∇X`.
pub fn codiagonal_widths(x: &TruncatedBisimplicialGroup, n: usize) -> Result<Vec<usize>> {
    (0..=n).map(|p| Ok(x.cell(p, n - p)?.width())).collect()
}

/// Splits a level-`n` tuple of `∇X` into its parts.
pub fn codiagonal_parts<'a>(widths: &[usize], t: &'a [u32]) -> Vec<&'a [u32]> {
    let mut out = Vec::with_capacity(widths.len());
    let mut at = 0;
    for &w in widths {
        out.push(&t[at..at + w]);
        at += w;
    }
    out
}

/// `∇X_n`: tuples `(x_0, …, x_n)` with `x_p ∈ X_{p,n−p}` and
/// `d₀ᵛ x_p = dʰ_{p+1} x_{p+1}`, found by extending each `x_0` through the
/// fibers of `dʰ_{p+1}`.
fn codiagonal_level(x: &TruncatedBisimplicialGroup, n: usize) -> Result<Level> {
    let cells: Vec<Arc<Level>> = (0..=n).map(|p| x.cell(p, n - p)).collect::<Result<_>>()?;
    let width: usize = cells.iter().map(|c| c.width()).sum();
    let ambient = cells[0].ambient().clone();
    if n == 0 {
        return Ok((*cells[0]).clone());
    }
    let fibers: Vec<HashMap<Vec<u32>, Vec<u32>>> = (0..=n)
        .map(|p| {
            let mut f: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            if p >= 1 {
                for y in cells[p].elements() {
                    f.entry(x.dh(p, n - p, p, &cells[p].elem(y))).or_default().push(y);
                }
            }
            f
        })
        .collect();
    let cap = x.cap();
    let mut flat: Vec<u32> = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(n + 1);
    #[allow(clippy::too_many_arguments)]
    fn go(
        x: &TruncatedBisimplicialGroup,
        n: usize,
        cells: &[Arc<Level>],
        fibers: &[HashMap<Vec<u32>, Vec<u32>>],
        stack: &mut Vec<u32>,
        flat: &mut Vec<u32>,
        width: usize,
        cap: u128,
    ) -> Result<()> {
        let p = stack.len() - 1;
        if p == n {
            if (flat.len() / width) as u128 >= cap {
                return Err(Error::SizeBound {
                    what: format!("codiagonal level {n}"),
                    order: cap + 1,
                    cap,
                });
            }
            for (r, &y) in stack.iter().enumerate() {
                flat.extend_from_slice(&cells[r].elem(y));
            }
            return Ok(());
        }
        let key = x.dv(p, n - p, 0, &cells[p].elem(stack[p]));
        if let Some(next) = fibers[p + 1].get(&key) {
            for &y in next {
                stack.push(y);
                go(x, n, cells, fibers, stack, flat, width, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }
    for y in cells[0].elements() {
        stack.push(y);
        go(x, n, &cells, &fibers, &mut stack, &mut flat, width, cap)?;
        stack.pop();
    }
    Ok(Level::from_tuples(&ambient, width, flat))
}

fn nabla_face(x: &TruncatedBisimplicialGroup, widths: &[usize], n: usize, j: usize, t: &[u32]) -> Vec<u32> {
    let parts = codiagonal_parts(widths, t);
    let mut out = Vec::new();
    for (p, xp) in parts.iter().enumerate() {
        if p < j {
            out.extend(x.dv(p, n - p, j - p, xp));
        } else if p > j {
            out.extend(x.dh(p, n - p, j, xp));
        }
    }
    out
}

fn nabla_degen(x: &TruncatedBisimplicialGroup, widths: &[usize], n: usize, i: usize, t: &[u32]) -> Vec<u32> {
    let parts = codiagonal_parts(widths, t);
    let mut out = Vec::new();
    for (p, xp) in parts.iter().enumerate().take(i + 1) {
        out.extend(x.sv(p, n - p, i - p, xp));
    }
    for (p, xp) in parts.iter().enumerate().skip(i) {
        out.extend(x.sh(p, n - p, i, xp));
    }
    out
}

fn tables(
    levels: &[Arc<Level>],
    k: usize,
    face: impl Fn(usize, usize, &[u32]) -> Vec<u32>,
    degen: impl Fn(usize, usize, &[u32]) -> Vec<u32>,
) -> Result<(Vec<Vec<Vec<u32>>>, Vec<Vec<Vec<u32>>>)> {
    let lookup = |dst: &Level, t: Vec<u32>, what: &str, n: usize, x: u32| {
        dst.index_of(&t)
            .ok_or_else(|| Error::Shape(format!("{what} on level {n} leaves the next level at element {x}")))
    };
    let mut faces = vec![vec![]];
    for n in 1..=k {
        let mut fs = Vec::with_capacity(n + 1);
        for j in 0..=n {
            fs.push(
                levels[n]
                    .elements()
                    .map(|x| lookup(&levels[n - 1], face(n, j, &levels[n].elem(x)), "face", n, x))
                    .collect::<Result<Vec<u32>>>()?,
            );
        }
        faces.push(fs);
    }
    let mut degens = Vec::with_capacity(k);
    for n in 0..k {
        let mut ss = Vec::with_capacity(n + 1);
        for i in 0..=n {
            ss.push(
                levels[n]
                    .elements()
                    .map(|x| lookup(&levels[n + 1], degen(n, i, &levels[n].elem(x)), "degeneracy", n, x))
                    .collect::<Result<Vec<u32>>>()?,
            );
        }
        degens.push(ss);
    }
    Ok((faces, degens))
}

/// `∇X` up to level `k`, validated as a simplicial group.
pub fn codiagonal(x: &TruncatedBisimplicialGroup, k: usize) -> Result<TruncatedSimplicialGroup> {
    if k > x.depth() {
        return Err(Error::DepthTooShallow {
            need: k,
            have: x.depth(),
        });
    }
    let levels: Vec<Arc<Level>> = (0..=k).map(|n| codiagonal_level(x, n).map(Arc::new)).collect::<Result<_>>()?;
    let widths: Vec<Vec<usize>> = (0..=k).map(|n| codiagonal_widths(x, n)).collect::<Result<_>>()?;
    let (faces, degens) = tables(
        &levels,
        k,
        |n, j, t| nabla_face(x, &widths[n], n, j, t),
        |n, i, t| nabla_degen(x, &widths[n], n, i, t),
    )?;
    let g = TruncatedSimplicialGroup {
        levels,
        faces,
        degens,
        cap: None,
    };
    g.validate()?;
    Ok(g)
}

fn diag_face(x: &TruncatedBisimplicialGroup, n: usize, i: usize, t: &[u32]) -> Vec<u32> {
    x.dh(n, n - 1, i, &x.dv(n, n, i, t))
}

fn diag_degen(x: &TruncatedBisimplicialGroup, n: usize, i: usize, t: &[u32]) -> Vec<u32> {
    x.sh(n, n + 1, i, &x.sv(n, n, i, t))
}

/// `NX_{n,n}` of the diagonal for a binerve, by enumerating only the
/// horizontal chains `(f₁, …, fₙ)` with `f₂, …, fₙ ∈ Ker d₀ᵛ`: the other
/// chains already fail `d₀ = dʰ₀dᵛ₀`.
fn diagonal_cap(x: &TruncatedBisimplicialGroup, n: usize, below: &Level) -> Result<MooreCap> {
    let b = x
        .binerve_data()
        .ok_or_else(|| Error::Shape("capped diagonals need a binerve".into()))?;
    let v = b.inner_level(n, x.cap())?;
    let inner = b.inner_ops();
    let outer = b.outer_ops(n);
    let ker: Vec<u32> = v
        .elements()
        .filter(|&f| inner.face(n, 0, &v.elem(f)).iter().all(|&y| y == 0))
        .collect();
    let mut by_src: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
    for &f in &ker {
        by_src.entry(outer.src(&v.elem(f))).or_default().push(f);
    }
    let mut normal = Vec::new();
    let mut boundary = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(n);
    let mut visit = |stack: &[u32]| -> Result<()> {
        let mut t = Vec::with_capacity(n * n);
        for &f in stack {
            t.extend_from_slice(&v.elem(f));
        }
        if (0..n).all(|i| diag_face(x, n, i, &t).iter().all(|&y| y == 0)) {
            let d = diag_face(x, n, n, &t);
            boundary.push(
                below
                    .index_of(&d)
                    .ok_or_else(|| Error::Shape("diagonal face leaves the level below".into()))?,
            );
            normal.push(t);
        }
        Ok(())
    };
    fn go(
        n: usize,
        v: &Level,
        outer: &crate::bisimp::chains::ChainOps,
        by_src: &HashMap<Vec<u32>, Vec<u32>>,
        stack: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> Result<()>,
    ) -> Result<()> {
        if stack.len() == n {
            return visit(stack);
        }
        let y = outer.tgt(&v.elem(*stack.last().unwrap()));
        if let Some(next) = by_src.get(&y) {
            for &f in next {
                stack.push(f);
                go(n, v, outer, by_src, stack, visit)?;
                stack.pop();
            }
        }
        Ok(())
    }
    for f in v.elements() {
        stack.push(f);
        go(n, &v, &outer, &by_src, &mut stack, &mut visit)?;
        stack.pop();
    }
    let mut order: Vec<usize> = (0..normal.len()).collect();
    order.sort_by(|&a, &b| normal[a].cmp(&normal[b]));
    Ok(MooreCap {
        normal: order.iter().map(|&i| normal[i].clone()).collect(),
        boundary: order.iter().map(|&i| boundary[i]).collect(),
        full_order: Some(x.predicted_order(n, n)),
    })
}

/// `diag(X)_n = X_{n,n}` with `dᵢ = dʰᵢdᵛᵢ`, `sᵢ = sʰᵢsᵛᵢ`, validated. For a
/// binerve whose top cell exceeds the order cap, the top level is replaced by
/// its Moore group.
pub fn diagonal(x: &TruncatedBisimplicialGroup, k: usize) -> Result<TruncatedSimplicialGroup> {
    if k > x.depth() {
        return Err(Error::DepthTooShallow {
            need: k,
            have: x.depth(),
        });
    }
    let capped = k >= 2 && x.binerve_data().is_some() && x.predicted_order(k, k) > x.cap();
    let full = if capped { k - 1 } else { k };
    let levels: Vec<Arc<Level>> = (0..=full).map(|n| x.cell(n, n)).collect::<Result<_>>()?;
    let (faces, degens) = tables(
        &levels,
        full,
        |n, i, t| diag_face(x, n, i, t),
        |n, i, t| diag_degen(x, n, i, t),
    )?;
    let cap = if capped {
        Some(diagonal_cap(x, k, &levels[full])?)
    } else {
        None
    };
    let g = TruncatedSimplicialGroup {
        levels,
        faces,
        degens,
        cap,
    };
    g.validate()?;
    Ok(g)
}

/// What `check_length_bound` verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthReport {
    pub m: usize,
    pub depth: usize,
    /// `(p, Moore orders of X_{p,*})` for every column checked.
    pub columns: Vec<(usize, Vec<usize>)>,
    /// `(q, Moore orders of X_{*,q})` for every row checked.
    pub rows: Vec<(usize, Vec<usize>)>,
    /// Moore orders of `∇X` up to the depth.
    pub nabla_orders: Vec<usize>,
    /// Levels `n ≥ m + 1` checked for `N(∇X)_n = 1`.
    pub checked_levels: Vec<usize>,
    pub holds: bool,
}

/// Hypotheses: every column `X_{p,*}` has Moore length ≤ 1 and every row
/// `X_{*,q}` has Moore length ≤ `m − 1`, checked on the cells with
/// `p + q ≤ depth`. Conclusion checked: `N(∇X)_n = 1` for `m < n ≤ depth`.
pub fn check_length_bound(x: &TruncatedBisimplicialGroup, m: usize) -> Result<LengthReport> {
    let k = x.depth();
    let mut columns = Vec::new();
    for p in 0..=k {
        let orders = moore(&x.column(p, k - p)?).orders;
        if orders.iter().skip(2).any(|&o| o > 1) {
            return Err(Error::HypothesisFailed {
                direction: Direction::Vertical,
                index: p,
            });
        }
        columns.push((p, orders));
    }
    let mut rows = Vec::new();
    for q in 0..=k {
        let orders = moore(&x.row(q, k - q)?).orders;
        if orders.iter().skip(m).any(|&o| o > 1) {
            return Err(Error::HypothesisFailed {
                direction: Direction::Horizontal,
                index: q,
            });
        }
        rows.push((q, orders));
    }
    let nabla_orders = moore(&codiagonal(x, k)?).orders;
    let checked_levels: Vec<usize> = (m + 1..=k).collect();
    let holds = checked_levels.iter().all(|&n| nabla_orders[n] == 1);
    Ok(LengthReport {
        m,
        depth: k,
        columns,
        rows,
        nabla_orders,
        checked_levels,
        holds,
    })
}
