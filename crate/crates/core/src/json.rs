//! JSON forms of the structures, one `*.v1` schema per kind. Groups may be
//! given inline or by builtin name.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bisimp::TruncatedBisimplicialGroup;
use crate::catalog;
use crate::error::{Error, Result};
use crate::grp::{FinGroup, Group, GroupAction, GroupHom};
use crate::simp::{make_simplicial, HomotopyGroup, Level, TruncatedSimplicialGroup};
use crate::x2mod::{make_2crossed, TwoCrossedModule};
use crate::xmod::{make_crossed_module, CrossedModule};
use crate::xsq::{make_crossed_ncube, make_crossed_square, make_squared_complex, ChainTail, CrossedNCube, CrossedSquare, SquaredComplex};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupJson),
}

impl GroupRef {
    pub fn resolve(&self) -> Result<Group> {
        match self {
            GroupRef::Name(n) => catalog::group(n),
            GroupRef::Inline(g) => {
                if g.table.len() != g.order {
                    return Err(Error::Parse(format!("order {} but {} table rows", g.order, g.table.len())));
                }
                let g = match &g.labels {
                    Some(l) => FinGroup::from_table_with_labels(&g.table, l.clone())?,
                    None => FinGroup::from_table(&g.table)?,
                };
                Ok(Arc::new(g))
            }
        }
    }
}

pub fn group_json(g: &FinGroup) -> GroupJson {
    GroupJson {
        schema: None,
        order: g.order(),
        table: g.rows(),
        labels: g.labels().map(|l| l.to_vec()),
    }
}

fn inline(g: &FinGroup) -> GroupRef {
    GroupRef::Inline(group_json(g))
}

fn hom(src: &Group, dst: &Group, map: &[u32]) -> Result<GroupHom> {
    GroupHom::new(src.clone(), dst.clone(), map.to_vec())
}

fn action(actor: &Group, target: &Group, rows: &[Vec<u32>]) -> Result<GroupAction> {
    GroupAction::from_rows(actor.clone(), target.clone(), rows)
}

fn rows(flat: &[u32], width: usize) -> Vec<Vec<u32>> {
    if width == 0 {
        return Vec::new();
    }
    flat.chunks(width).map(|c| c.to_vec()).collect()
}

fn flat(rows: &[Vec<u32>], len: usize, width: usize, what: &str) -> Result<Vec<u32>> {
    if rows.len() != len || rows.iter().any(|r| r.len() != width) {
        return Err(Error::Parse(format!("{what} table must be {len} x {width}")));
    }
    Ok(rows.concat())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XmodJson {
    pub schema: String,
    #[serde(rename = "M")]
    pub m: GroupRef,
    #[serde(rename = "P")]
    pub p: GroupRef,
    pub boundary: Vec<u32>,
    pub action: Vec<Vec<u32>>,
}

impl XmodJson {
    pub fn of(c: &CrossedModule) -> Self {
        XmodJson {
            schema: "xmod.v1".into(),
            m: inline(&c.m),
            p: inline(&c.p),
            boundary: c.boundary.map.clone(),
            action: c.action.rows(),
        }
    }

    pub fn build(&self) -> Result<CrossedModule> {
        let (m, p) = (self.m.resolve()?, self.p.resolve()?);
        let b = hom(&m, &p, &self.boundary)?;
        make_crossed_module(m.clone(), p.clone(), b, action(&p, &m, &self.action)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XsqJson {
    pub schema: String,
    #[serde(rename = "L")]
    pub l: GroupRef,
    #[serde(rename = "M")]
    pub m: GroupRef,
    #[serde(rename = "N")]
    pub n: GroupRef,
    #[serde(rename = "P")]
    pub p: GroupRef,
    pub lambda: Vec<u32>,
    pub lambda_prime: Vec<u32>,
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub act_l: Vec<Vec<u32>>,
    pub act_m: Vec<Vec<u32>>,
    pub act_n: Vec<Vec<u32>>,
    pub h: Vec<Vec<u32>>,
}

impl XsqJson {
    pub fn of(s: &CrossedSquare) -> Self {
        XsqJson {
            schema: "xsq.v1".into(),
            l: inline(&s.l),
            m: inline(&s.m),
            n: inline(&s.n),
            p: inline(&s.p),
            lambda: s.lambda.map.clone(),
            lambda_prime: s.lambda_p.map.clone(),
            mu: s.mu.map.clone(),
            nu: s.nu.map.clone(),
            act_l: s.act_l.rows(),
            act_m: s.act_m.rows(),
            act_n: s.act_n.rows(),
            h: rows(&s.h, s.n.order()),
        }
    }

    /// The square without running the square axioms.
    pub fn parts(&self) -> Result<CrossedSquare> {
        let (l, m, n, p) = (self.l.resolve()?, self.m.resolve()?, self.n.resolve()?, self.p.resolve()?);
        Ok(CrossedSquare {
            lambda: hom(&l, &m, &self.lambda)?,
            lambda_p: hom(&l, &n, &self.lambda_prime)?,
            mu: hom(&m, &p, &self.mu)?,
            nu: hom(&n, &p, &self.nu)?,
            act_l: action(&p, &l, &self.act_l)?,
            act_m: action(&p, &m, &self.act_m)?,
            act_n: action(&p, &n, &self.act_n)?,
            h: flat(&self.h, m.order(), n.order(), "h")?,
            l,
            m,
            n,
            p,
        })
    }

    pub fn build(&self) -> Result<CrossedSquare> {
        make_crossed_square(self.parts()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XncubeJson {
    pub schema: String,
    pub n: usize,
    /// Indexed by subset bitmask.
    pub groups: Vec<GroupRef>,
    /// `mu[A][i]`, null when `i ∉ A`.
    pub mu: Vec<Vec<Option<Vec<u32>>>>,
    /// `h[A][B]` as a `|M_A| × |M_B|` table.
    pub h: Vec<Vec<Vec<Vec<u32>>>>,
}

impl XncubeJson {
    pub fn of(c: &CrossedNCube) -> Self {
        let s = c.subsets();
        XncubeJson {
            schema: "xncube.v1".into(),
            n: c.n,
            groups: c.groups.iter().map(|g| inline(g)).collect(),
            mu: c.mu.iter().map(|r| r.iter().map(|f| f.as_ref().map(|f| f.map.clone())).collect()).collect(),
            h: (0..s)
                .map(|a| (0..s).map(|b| rows(&c.h[a * s + b], c.groups[b].order())).collect())
                .collect(),
        }
    }

    pub fn build(&self) -> Result<CrossedNCube> {
        let s = 1usize
            .checked_shl(self.n as u32)
            .filter(|&s| s <= 1 << 8)
            .ok_or_else(|| Error::Parse(format!("n = {} is too large", self.n)))?;
        if self.groups.len() != s || self.mu.len() != s || self.h.len() != s {
            return Err(Error::Parse("n-cube needs data for every subset".into()));
        }
        let groups = self.groups.iter().map(|g| g.resolve()).collect::<Result<Vec<_>>>()?;
        let mut mu = Vec::with_capacity(s);
        for a in 0..s {
            if self.mu[a].len() != self.n {
                return Err(Error::Parse(format!("mu[{a}] must have {} entries", self.n)));
            }
            let mut row = Vec::with_capacity(self.n);
            for (i, f) in self.mu[a].iter().enumerate() {
                row.push(match f {
                    Some(map) if a & (1 << i) != 0 => Some(hom(&groups[a], &groups[a & !(1 << i)], map)?),
                    None if a & (1 << i) == 0 => None,
                    _ => return Err(Error::Parse(format!("mu[{a}][{i}] present iff {} is in the subset", i + 1))),
                });
            }
            mu.push(row);
        }
        let mut h = Vec::with_capacity(s * s);
        for a in 0..s {
            if self.h[a].len() != s {
                return Err(Error::Parse(format!("h[{a}] must have {s} entries")));
            }
            for b in 0..s {
                h.push(flat(&self.h[a][b], groups[a].order(), groups[b].order(), "h")?);
            }
        }
        make_crossed_ncube(CrossedNCube {
            n: self.n,
            groups,
            mu,
            h,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailJson {
    #[serde(rename = "C")]
    pub groups: Vec<GroupRef>,
    pub boundaries: Vec<Vec<u32>>,
    pub actions: Vec<Vec<Vec<u32>>>,
}

impl TailJson {
    pub fn of(t: &ChainTail) -> Self {
        TailJson {
            groups: t.groups.iter().map(|g| inline(g)).collect(),
            boundaries: t.boundaries.iter().map(|f| f.map.clone()).collect(),
            actions: t.actions.iter().map(|a| a.rows()).collect(),
        }
    }

    fn build(&self, top: &Group, base: &Group) -> Result<ChainTail> {
        let k = self.groups.len();
        if self.boundaries.len() != k || self.actions.len() != k {
            return Err(Error::Parse("tail needs one boundary and one action per group".into()));
        }
        let groups = self.groups.iter().map(|g| g.resolve()).collect::<Result<Vec<_>>>()?;
        let mut boundaries = Vec::with_capacity(k);
        let mut actions = Vec::with_capacity(k);
        for i in 0..k {
            let dst = if i == 0 { top } else { &groups[i - 1] };
            boundaries.push(hom(&groups[i], dst, &self.boundaries[i])?);
            actions.push(action(base, &groups[i], &self.actions[i])?);
        }
        Ok(ChainTail {
            groups,
            boundaries,
            actions,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqComplexJson {
    pub schema: String,
    pub square: XsqJson,
    pub tail: TailJson,
}

impl SqComplexJson {
    pub fn of(c: &SquaredComplex) -> Self {
        SqComplexJson {
            schema: "sqcomplex.v1".into(),
            square: XsqJson::of(&c.square),
            tail: TailJson::of(&c.tail),
        }
    }

    pub fn build(&self) -> Result<SquaredComplex> {
        let square = self.square.parts()?;
        let tail = self.tail.build(&square.l, &square.p)?;
        make_squared_complex(SquaredComplex { square, tail })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelJson {
    pub width: usize,
    /// Tuples over the ambient group.
    pub elements: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpJson {
    pub schema: String,
    pub ambient: GroupRef,
    pub levels: Vec<LevelJson>,
    /// `faces[n][i]` for `n ≥ 1`; `faces[0]` is empty.
    pub faces: Vec<Vec<Vec<u32>>>,
    pub degens: Vec<Vec<Vec<u32>>>,
}

impl SimpJson {
    /// Fails on capped structures, whose top level is not enumerated.
    pub fn of(g: &TruncatedSimplicialGroup) -> Result<Self> {
        if g.cap.is_some() {
            return Err(Error::Shape("a capped top level has no tuple listing".into()));
        }
        let ambient = g.level(0).ambient().clone();
        if g.levels.iter().any(|l| !Arc::ptr_eq(l.ambient(), &ambient) && **l.ambient() != *ambient) {
            return Err(Error::Shape("levels over different ambient groups".into()));
        }
        Ok(SimpJson {
            schema: "simp.v1".into(),
            ambient: inline(&ambient),
            levels: g
                .levels
                .iter()
                .map(|l| LevelJson {
                    width: l.width(),
                    elements: l.elements().map(|x| l.elem(x).to_vec()).collect(),
                })
                .collect(),
            faces: g.faces.clone(),
            degens: g.degens.clone(),
        })
    }

    /// Element `i` of each level is the `i`-th tuple in sorted order; the
    /// listed tuples must already be sorted so that tables keep their
    /// meaning.
    pub fn build(&self) -> Result<TruncatedSimplicialGroup> {
        let ambient = self.ambient.resolve()?;
        let mut levels = Vec::with_capacity(self.levels.len());
        for (n, l) in self.levels.iter().enumerate() {
            if l.width == 0 || l.elements.iter().any(|t| t.len() != l.width) {
                return Err(Error::Parse(format!("level {n} has tuples of the wrong width")));
            }
            if l.elements.iter().flatten().any(|&x| x as usize >= ambient.order()) {
                return Err(Error::Parse(format!("level {n} leaves the ambient group")));
            }
            if !l.elements.windows(2).all(|w| w[0] < w[1]) || l.elements.first().map(|t| t.iter().any(|&x| x != 0)).unwrap_or(true) {
                return Err(Error::Parse(format!("level {n} must list distinct tuples in sorted order, identity first")));
            }
            let lvl = Level::from_tuples(&ambient, l.width, l.elements.concat());
            if let Some((a, b)) = lvl.closure_witness() {
                return Err(Error::Parse(format!("level {n} is not closed: {a}, {b}")));
            }
            levels.push(Arc::new(lvl));
        }
        make_simplicial(levels, self.faces.clone(), self.degens.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BisimpJson {
    pub schema: &'static str,
    pub depth: usize,
    /// `orders[p][q]` for `p + q ≤ depth`.
    pub orders: Vec<Vec<String>>,
    /// Horizontal and vertical operator tables on the cells with
    /// `p + q ≤ tables_depth`, as `[p][q][i]` index arrays.
    pub tables_depth: usize,
    pub dh: Vec<Vec<Vec<Vec<u32>>>>,
    pub dv: Vec<Vec<Vec<Vec<u32>>>>,
    pub sh: Vec<Vec<Vec<Vec<u32>>>>,
    pub sv: Vec<Vec<Vec<Vec<u32>>>>,
}

impl BisimpJson {
    /// Orders on the whole window; tables only up to `tables_depth`.
    pub fn of(x: &TruncatedBisimplicialGroup, tables_depth: usize) -> Result<Self> {
        let k = x.depth();
        let td = tables_depth.min(k);
        let orders = (0..=k)
            .map(|p| (0..=k - p).map(|q| x.predicted_order(p, q).to_string()).collect())
            .collect();
        let mut out = BisimpJson {
            schema: "bisimp.v1",
            depth: k,
            orders,
            tables_depth: td,
            dh: Vec::new(),
            dv: Vec::new(),
            sh: Vec::new(),
            sv: Vec::new(),
        };
        for p in 0..=td {
            let (mut dh, mut dv, mut sh, mut sv) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for q in 0..=td - p {
                let c = x.cell(p, q)?;
                let table = |f: &dyn Fn(&[u32]) -> Vec<u32>, dst: &Level| -> Result<Vec<u32>> {
                    c.elements()
                        .map(|e| {
                            let t = f(&c.elem(e));
                            dst.index_of(&t).ok_or_else(|| Error::Shape(format!("operator leaves cell at ({p}, {q})")))
                        })
                        .collect()
                };
                let (mut a, mut b, mut cc, mut d) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
                if p > 0 {
                    let dst = x.cell(p - 1, q)?;
                    for i in 0..=p {
                        a.push(table(&|t| x.dh(p, q, i, t), &dst)?);
                    }
                }
                if q > 0 {
                    let dst = x.cell(p, q - 1)?;
                    for j in 0..=q {
                        b.push(table(&|t| x.dv(p, q, j, t), &dst)?);
                    }
                }
                if p + q < td {
                    let dst = x.cell(p + 1, q)?;
                    for i in 0..=p {
                        cc.push(table(&|t| x.sh(p, q, i, t), &dst)?);
                    }
                    let dst = x.cell(p, q + 1)?;
                    for j in 0..=q {
                        d.push(table(&|t| x.sv(p, q, j, t), &dst)?);
                    }
                }
                dh.push(a);
                dv.push(b);
                sh.push(cc);
                sv.push(d);
            }
            out.dh.push(dh);
            out.dv.push(dv);
            out.sh.push(sh);
            out.sv.push(sv);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct X2Json {
    pub schema: String,
    #[serde(rename = "L")]
    pub l: GroupRef,
    #[serde(rename = "M")]
    pub m: GroupRef,
    #[serde(rename = "N")]
    pub n: GroupRef,
    pub d2: Vec<u32>,
    pub d1: Vec<u32>,
    pub act_l: Vec<Vec<u32>>,
    pub act_m: Vec<Vec<u32>>,
    pub peiffer: Vec<Vec<u32>>,
}

impl X2Json {
    pub fn of(t: &TwoCrossedModule) -> Self {
        X2Json {
            schema: "x2mod.v1".into(),
            l: inline(&t.l),
            m: inline(&t.m),
            n: inline(&t.n),
            d2: t.d2.map.clone(),
            d1: t.d1.map.clone(),
            act_l: t.act_l.rows(),
            act_m: t.act_m.rows(),
            peiffer: rows(&t.peiffer, t.m.order()),
        }
    }

    pub fn build(&self) -> Result<TwoCrossedModule> {
        let (l, m, n) = (self.l.resolve()?, self.m.resolve()?, self.n.resolve()?);
        make_2crossed(TwoCrossedModule {
            d2: hom(&l, &m, &self.d2)?,
            d1: hom(&m, &n, &self.d1)?,
            act_l: action(&n, &l, &self.act_l)?,
            act_m: action(&n, &m, &self.act_m)?,
            peiffer: flat(&self.peiffer, m.order(), m.order(), "peiffer")?,
            l,
            m,
            n,
        })
    }
}

/// `πₙ` as order plus, when abelian, elementary divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyJson {
    pub n: usize,
    pub order: usize,
    pub abelian_invariants: Option<Vec<u64>>,
}

impl HomotopyJson {
    pub fn of(h: &HomotopyGroup) -> Self {
        HomotopyJson {
            n: h.n,
            order: h.order(),
            abelian_invariants: h.invariants.clone(),
        }
    }
}

/// Reads the `schema` field of a JSON document.
pub fn schema_of(v: &serde_json::Value) -> Option<&str> {
    v.get("schema").and_then(|s| s.as_str())
}

pub fn from_value<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}
