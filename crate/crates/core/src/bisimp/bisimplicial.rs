use std::sync::{Arc, OnceLock};

use crate::bisimp::chains::ChainOps;
use crate::error::{Error, Result};
use crate::grp::{iso_check, Group};
use crate::simp::{Level, TruncatedSimplicialGroup, DEFAULT_LEVEL_CAP};
use crate::xsq::{cat2_from_square, Cat2Group, CrossedSquare};

/// Binerve of a cat²-group. The inner nerve is taken in `G` itself, the
/// outer one levelwise on the inner levels; a cell `(a, b)` has `a` outer and
/// `b` inner arrows and is stored as `max(a,1)` outer chunks of width
/// `max(b,1)`.
#[derive(Clone, Debug)]
pub(crate) struct BinerveData {
    pub g: Group,
    inner: (Vec<u32>, Vec<u32>),
    outer: (Vec<u32>, Vec<u32>),
    /// `|Ker o ∩ Ker i|`, `|Ker o ∩ Im i|`, `|Im o ∩ Ker i|`, `|Im o ∩ Im i|`.
    corners: [u128; 4],
    inner_levels: Vec<OnceLock<Arc<Level>>>,
}

impl BinerveData {
    /// `swapped = false`: inner `(s2, t2)`, outer `(s1, t1)`.
    pub fn new(c: &Cat2Group, swapped: bool, max_inner: usize) -> Self {
        let d1 = (c.s1.map.clone(), c.t1.map.clone());
        let d2 = (c.s2.map.clone(), c.t2.map.clone());
        let (inner, outer) = if swapped { (d1, d2) } else { (d2, d1) };
        let mut corners = [0u128; 4];
        for x in c.g.elements() {
            let ko = outer.0[x as usize] == 0;
            let io = outer.0[x as usize] == x;
            let ki = inner.0[x as usize] == 0;
            let ii = inner.0[x as usize] == x;
            corners[0] += (ko && ki) as u128;
            corners[1] += (ko && ii) as u128;
            corners[2] += (io && ki) as u128;
            corners[3] += (io && ii) as u128;
        }
        BinerveData {
            g: c.g.clone(),
            inner,
            outer,
            corners,
            inner_levels: (0..=max_inner).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn inner_ops(&self) -> ChainOps<'_> {
        ChainOps {
            g: &self.g,
            w: 1,
            s: &self.inner.0,
            t: &self.inner.1,
        }
    }

    pub fn outer_ops(&self, b: usize) -> ChainOps<'_> {
        ChainOps {
            g: &self.g,
            w: b.max(1),
            s: &self.outer.0,
            t: &self.outer.1,
        }
    }

    pub fn predicted_order(&self, a: usize, b: usize) -> u128 {
        let [l, n, m, p] = self.corners;
        l.pow((a * b) as u32) * n.pow(a as u32) * m.pow(b as u32) * p
    }

    fn inner_order(&self, b: usize) -> u128 {
        let im = self.corners[1] + self.corners[3];
        (self.g.order() as u128 / im).pow(b as u32) * im
    }

    pub fn inner_level(&self, b: usize, cap: u128) -> Result<Arc<Level>> {
        if let Some(l) = self.inner_levels.get(b).and_then(|c| c.get()) {
            return Ok(l.clone());
        }
        let order = self.inner_order(b);
        if order > cap {
            return Err(Error::SizeBound {
                what: format!("inner nerve level {b}"),
                order,
                cap,
            });
        }
        let lvl = Arc::new(self.inner_ops().chains(&Level::from_group(&self.g), b));
        if let Some(c) = self.inner_levels.get(b) {
            let _ = c.set(lvl.clone());
        }
        Ok(lvl)
    }

    pub fn cell(&self, a: usize, b: usize, cap: u128) -> Result<Level> {
        let order = self.predicted_order(a, b);
        if order > cap {
            return Err(Error::SizeBound {
                what: format!("binerve cell ({a}, {b})"),
                order,
                cap,
            });
        }
        let inner = self.inner_level(b, cap)?;
        let lvl = self.outer_ops(b).chains(&inner, a);
        if lvl.order() as u128 != order {
            return Err(Error::Shape(format!(
                "binerve cell ({a}, {b}) has order {}, expected {order}",
                lvl.order()
            )));
        }
        Ok(lvl)
    }

    fn chunks(&self, a: usize, b: usize, x: &[u32], f: impl Fn(&[u32]) -> Vec<u32>) -> Vec<u32> {
        x.chunks(b.max(1)).take(a.max(1)).flat_map(f).collect()
    }

    pub fn inner_face(&self, a: usize, b: usize, j: usize, x: &[u32]) -> Vec<u32> {
        let ops = self.inner_ops();
        self.chunks(a, b, x, |c| ops.face(b, j, c))
    }

    pub fn inner_degen(&self, a: usize, b: usize, j: usize, x: &[u32]) -> Vec<u32> {
        let ops = self.inner_ops();
        self.chunks(a, b, x, |c| ops.degen(b, j, c))
    }
}

/// Operator tables of a finite bisimplicial group, indexed `[p][q][i]`.
#[derive(Clone, Debug, Default)]
pub struct BiTables {
    pub dh: Vec<Vec<Vec<Vec<u32>>>>,
    pub sh: Vec<Vec<Vec<Vec<u32>>>>,
    pub dv: Vec<Vec<Vec<Vec<u32>>>>,
    pub sv: Vec<Vec<Vec<Vec<u32>>>>,
}

#[derive(Clone, Debug)]
enum Source {
    Binerve(BinerveData),
    Tables(BiTables),
}

/// Cells `X_{p,q}` for `p, q ≤ k`; horizontal operators act in `p`,
/// vertical ones in `q`. Binerve cells are enumerated on first use, subject
/// to the order cap.
#[derive(Clone, Debug)]
pub struct TruncatedBisimplicialGroup {
    depth: usize,
    cap: u128,
    source: Source,
    cells: Vec<OnceLock<Arc<Level>>>,
}

fn op_table(src: &Level, dst: &Level, f: impl Fn(&[u32]) -> Vec<u32>, what: &str) -> Result<Vec<u32>> {
    src.elements()
        .map(|x| {
            dst.index_of(&f(&src.elem(x)))
                .ok_or_else(|| Error::Shape(format!("{what} leaves its target cell at element {x}")))
        })
        .collect()
}

impl TruncatedBisimplicialGroup {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub(crate) fn binerve_data(&self) -> Option<&BinerveData> {
        match &self.source {
            Source::Binerve(b) => Some(b),
            Source::Tables(_) => None,
        }
    }

    fn slot(&self, p: usize, q: usize) -> &OnceLock<Arc<Level>> {
        &self.cells[p * (self.depth + 1) + q]
    }

    pub fn predicted_order(&self, p: usize, q: usize) -> u128 {
        match &self.source {
            Source::Binerve(b) => b.predicted_order(p, q),
            Source::Tables(_) => self.slot(p, q).get().map_or(0, |c| c.order() as u128),
        }
    }

    pub fn cell(&self, p: usize, q: usize) -> Result<Arc<Level>> {
        if p > self.depth || q > self.depth {
            return Err(Error::DepthTooShallow {
                need: p.max(q),
                have: self.depth,
            });
        }
        let slot = self.slot(p, q);
        if let Some(c) = slot.get() {
            return Ok(c.clone());
        }
        let Source::Binerve(b) = &self.source else {
            return Err(Error::Shape(format!("cell ({p}, {q}) is missing")));
        };
        let lvl = Arc::new(b.cell(p, q, self.cap)?);
        let _ = slot.set(lvl.clone());
        Ok(lvl)
    }

    fn via_table(&self, p: usize, q: usize, t: &[u32], dst: (usize, usize), x: &[u32]) -> Vec<u32> {
        let src = self.slot(p, q).get().expect("table cells are present");
        let i = src.index_of(x).expect("element of the cell");
        let dst = self.slot(dst.0, dst.1).get().expect("table cells are present");
        dst.elem(t[i as usize]).into_owned()
    }

    /// `dʰᵢ: X_{p,q} → X_{p−1,q}`.
    pub fn dh(&self, p: usize, q: usize, i: usize, x: &[u32]) -> Vec<u32> {
        match &self.source {
            Source::Binerve(b) => b.outer_ops(q).face(p, i, x),
            Source::Tables(t) => self.via_table(p, q, &t.dh[p][q][i], (p - 1, q), x),
        }
    }

    /// `sʰᵢ: X_{p,q} → X_{p+1,q}`.
    pub fn sh(&self, p: usize, q: usize, i: usize, x: &[u32]) -> Vec<u32> {
        match &self.source {
            Source::Binerve(b) => b.outer_ops(q).degen(p, i, x),
            Source::Tables(t) => self.via_table(p, q, &t.sh[p][q][i], (p + 1, q), x),
        }
    }

    /// `dᵛⱼ: X_{p,q} → X_{p,q−1}`.
    pub fn dv(&self, p: usize, q: usize, j: usize, x: &[u32]) -> Vec<u32> {
        match &self.source {
            Source::Binerve(b) => b.inner_face(p, q, j, x),
            Source::Tables(t) => self.via_table(p, q, &t.dv[p][q][j], (p, q - 1), x),
        }
    }

    /// `sᵛⱼ: X_{p,q} → X_{p,q+1}`.
    pub fn sv(&self, p: usize, q: usize, j: usize, x: &[u32]) -> Vec<u32> {
        match &self.source {
            Source::Binerve(b) => b.inner_degen(p, q, j, x),
            Source::Tables(t) => self.via_table(p, q, &t.sv[p][q][j], (p, q + 1), x),
        }
    }

    /// The horizontal simplicial group `X_{*,q}` up to `p = depth`.
    pub fn row(&self, q: usize, depth: usize) -> Result<TruncatedSimplicialGroup> {
        let levels: Vec<Arc<Level>> = (0..=depth).map(|p| self.cell(p, q)).collect::<Result<_>>()?;
        let mut faces = vec![vec![]];
        for p in 1..=depth {
            faces.push(
                (0..=p)
                    .map(|i| op_table(&levels[p], &levels[p - 1], |x| self.dh(p, q, i, x), "dh"))
                    .collect::<Result<_>>()?,
            );
        }
        let degens = (0..depth)
            .map(|p| {
                (0..=p)
                    .map(|i| op_table(&levels[p], &levels[p + 1], |x| self.sh(p, q, i, x), "sh"))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        Ok(TruncatedSimplicialGroup {
            levels,
            faces,
            degens,
            cap: None,
        })
    }

    /// The vertical simplicial group `X_{p,*}` up to `q = depth`.
    pub fn column(&self, p: usize, depth: usize) -> Result<TruncatedSimplicialGroup> {
        let levels: Vec<Arc<Level>> = (0..=depth).map(|q| self.cell(p, q)).collect::<Result<_>>()?;
        let mut faces = vec![vec![]];
        for q in 1..=depth {
            faces.push(
                (0..=q)
                    .map(|j| op_table(&levels[q], &levels[q - 1], |x| self.dv(p, q, j, x), "dv"))
                    .collect::<Result<_>>()?,
            );
        }
        let degens = (0..depth)
            .map(|q| {
                (0..=q)
                    .map(|j| op_table(&levels[q], &levels[q + 1], |x| self.sv(p, q, j, x), "sv"))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        Ok(TruncatedSimplicialGroup {
            levels,
            faces,
            degens,
            cap: None,
        })
    }

    /// Every row and column on the cells with `p + q ≤ depth` is a valid
    /// simplicial group, and horizontal operators commute with vertical ones
    /// wherever all cells involved lie in that window.
    pub fn validate(&self) -> Result<()> {
        let k = self.depth;
        for q in 0..=k {
            self.row(q, k - q)?.validate()?;
        }
        for p in 0..=k {
            self.column(p, k - p)?.validate()?;
        }
        let bad = |relation: String, p: usize, q: usize, x: u32| Error::IdentityViolation {
            relation: format!("{relation} on X({p},{q})"),
            level: p + q,
            element: x,
        };
        for p in 0..=k {
            for q in 0..=k - p {
                let cell = self.cell(p, q)?;
                for x in cell.elements() {
                    let e = cell.elem(x);
                    for i in 0..=p {
                        for j in 0..=q {
                            if p >= 1 && q >= 1 {
                                let a = self.dh(p, q - 1, i, &self.dv(p, q, j, &e));
                                let b = self.dv(p - 1, q, j, &self.dh(p, q, i, &e));
                                if a != b {
                                    return Err(bad(format!("dh{i}dv{j} = dv{j}dh{i}"), p, q, x));
                                }
                            }
                            if p >= 1 && p + q < k {
                                let a = self.dh(p, q + 1, i, &self.sv(p, q, j, &e));
                                let b = self.sv(p - 1, q, j, &self.dh(p, q, i, &e));
                                if a != b {
                                    return Err(bad(format!("dh{i}sv{j} = sv{j}dh{i}"), p, q, x));
                                }
                            }
                            if q >= 1 && p + q < k {
                                let a = self.dv(p + 1, q, j, &self.sh(p, q, i, &e));
                                let b = self.sh(p, q - 1, i, &self.dv(p, q, j, &e));
                                if a != b {
                                    return Err(bad(format!("sh{i}dv{j} = dv{j}sh{i}"), p, q, x));
                                }
                            }
                            if p + q + 2 <= k {
                                let a = self.sv(p + 1, q, j, &self.sh(p, q, i, &e));
                                let b = self.sh(p, q + 1, i, &self.sv(p, q, j, &e));
                                if a != b {
                                    return Err(bad(format!("sh{i}sv{j} = sv{j}sh{i}"), p, q, x));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The binerve of a crossed square through its cat²-group, validated on the
/// cells with `p + q ≤ k`. `X_{p,q}` has order `|L|^{pq} |N|^p |M|^q |P|`.
pub fn binerve(sq: &CrossedSquare, k: usize) -> Result<TruncatedBisimplicialGroup> {
    binerve_capped(sq, k, DEFAULT_LEVEL_CAP)
}

pub fn binerve_capped(sq: &CrossedSquare, k: usize, cap: u128) -> Result<TruncatedBisimplicialGroup> {
    binerve_cat2(&cat2_from_square(sq), k, cap)
}

pub fn binerve_cat2(c: &Cat2Group, k: usize, cap: u128) -> Result<TruncatedBisimplicialGroup> {
    let x = TruncatedBisimplicialGroup {
        depth: k,
        cap,
        source: Source::Binerve(BinerveData::new(c, false, k)),
        cells: (0..(k + 1) * (k + 1)).map(|_| OnceLock::new()).collect(),
    };
    x.validate()?;
    Ok(x)
}

fn check_tables(cells: &[Vec<Arc<Level>>], t: &BiTables) -> Result<()> {
    let k = cells.len() - 1;
    let ord = |p: usize, q: usize| cells[p][q].order();
    let check = |name: &str, tabs: &Vec<Vec<Vec<Vec<u32>>>>, count: &dyn Fn(usize, usize) -> usize, dst: &dyn Fn(usize, usize) -> (usize, usize)| -> Result<()> {
        if tabs.len() != k + 1 || tabs.iter().any(|r| r.len() != k + 1) {
            return Err(Error::Shape(format!("{name} tables must be indexed by (p, q) ≤ {k}")));
        }
        for p in 0..=k {
            for q in 0..=k {
                let n = count(p, q);
                if tabs[p][q].len() != n {
                    return Err(Error::Shape(format!("{name} at ({p}, {q}) needs {n} maps")));
                }
                if n == 0 {
                    continue;
                }
                let (dp, dq) = dst(p, q);
                if tabs[p][q]
                    .iter()
                    .any(|f| f.len() != ord(p, q) || f.iter().any(|&y| y as usize >= ord(dp, dq)))
                {
                    return Err(Error::Shape(format!("a {name} map at ({p}, {q}) has the wrong shape")));
                }
            }
        }
        Ok(())
    };
    check("dh", &t.dh, &|p, _| if p == 0 { 0 } else { p + 1 }, &|p, q| (p.saturating_sub(1), q))?;
    check("sh", &t.sh, &|p, _| if p == k { 0 } else { p + 1 }, &|p, q| (p + 1, q))?;
    check("dv", &t.dv, &|_, q| if q == 0 { 0 } else { q + 1 }, &|p, q| (p, q.saturating_sub(1)))?;
    check("sv", &t.sv, &|_, q| if q == k { 0 } else { q + 1 }, &|p, q| (p, q + 1))?;
    Ok(())
}

/// A bisimplicial group from explicit cells `cells[p][q]` and operator
/// tables; validated.
pub fn make_bisimplicial(cells: Vec<Vec<Arc<Level>>>, tables: BiTables) -> Result<TruncatedBisimplicialGroup> {
    if cells.is_empty() || cells.iter().any(|r| r.len() != cells.len()) {
        return Err(Error::Shape("cells must form a square grid".into()));
    }
    check_tables(&cells, &tables)?;
    let k = cells.len() - 1;
    let slots: Vec<OnceLock<Arc<Level>>> = cells
        .into_iter()
        .flatten()
        .map(|c| {
            let s = OnceLock::new();
            let _ = s.set(c);
            s
        })
        .collect();
    let x = TruncatedBisimplicialGroup {
        depth: k,
        cap: DEFAULT_LEVEL_CAP,
        source: Source::Tables(tables),
        cells: slots,
    };
    x.validate()?;
    Ok(x)
}

/// `X_{p,q} = Y_p` with identity vertical operators: every row is `y`.
pub fn repeat_rows(y: &TruncatedSimplicialGroup) -> Result<TruncatedBisimplicialGroup> {
    let k = y.full_depth();
    let id = |p: usize| -> Vec<u32> { y.levels[p].elements().collect() };
    let grid = |f: &dyn Fn(usize, usize) -> Vec<Vec<u32>>| -> Vec<Vec<Vec<Vec<u32>>>> {
        (0..=k).map(|p| (0..=k).map(|q| f(p, q)).collect()).collect()
    };
    let tables = BiTables {
        dh: grid(&|p, _| y.faces[p].clone()),
        sh: grid(&|p, _| if p < k { y.degens[p].clone() } else { vec![] }),
        dv: grid(&|p, q| if q == 0 { vec![] } else { vec![id(p); q + 1] }),
        sv: grid(&|p, q| if q == k { vec![] } else { vec![id(p); q + 1] }),
    };
    let cells = (0..=k).map(|p| vec![y.levels[p].clone(); k + 1]).collect();
    make_bisimplicial(cells, tables)
}

/// The constant bisimplicial group on `g`.
pub fn constant_bisimplicial(g: &Group, k: usize) -> Result<TruncatedBisimplicialGroup> {
    repeat_rows(&crate::simp::constant(g, k))
}

/// Result of comparing one cell of the binerve with the cell built in the
/// opposite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryCell {
    pub p: usize,
    pub q: usize,
    pub order: usize,
    /// Transposing the `p × q` grid maps one cell onto the other.
    pub transpose_matches: bool,
    /// `Some(found)` when the cells were small enough for `iso_check`.
    pub iso_found: Option<bool>,
}

/// Builds every cell with `p + q ≤ k` in both orders and compares them.
pub fn binerve_symmetry(sq: &CrossedSquare, k: usize, cap: u128) -> Result<Vec<SymmetryCell>> {
    let c = cat2_from_square(sq);
    let std = BinerveData::new(&c, false, k);
    let opp = BinerveData::new(&c, true, k);
    let mut out = Vec::new();
    for p in 0..=k {
        for q in 0..=k - p {
            let a = std.cell(p, q, cap)?;
            let b = opp.cell(q, p, cap)?;
            let (pw, qw) = (p.max(1), q.max(1));
            let transpose_matches = a.order() == b.order()
                && a.elements().all(|x| {
                    let e = a.elem(x);
                    let mut t = vec![0u32; e.len()];
                    for i in 0..pw {
                        for j in 0..qw {
                            t[j * pw + i] = e[i * qw + j];
                        }
                    }
                    b.contains(&t)
                });
            let iso_found = if a.order() <= 512 && b.order() <= 512 {
                Some(iso_check(&a.to_group()?, &b.to_group()?)?.is_some())
            } else {
                None
            };
            out.push(SymmetryCell {
                p,
                q,
                order: a.order(),
                transpose_matches,
                iso_found,
            });
        }
    }
    Ok(out)
}
