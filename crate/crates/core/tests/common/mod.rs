#![allow(dead_code)]

use homotopy3::catalog;
use homotopy3::error::Violation;
use homotopy3::simp::DEFAULT_LEVEL_CAP;
use homotopy3::x2mod::{from_simplicial, mapping_cone, trivial_2crossed, TwoCrossedModule};
use homotopy3::xmod::CrossedModule;
use homotopy3::xsq::{CrossedNCube, CrossedSquare};

#[derive(Clone, Debug)]
pub enum Structure {
    Xmod(CrossedModule),
    Square(CrossedSquare),
    Cube(CrossedNCube),
    X2(TwoCrossedModule),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Xmod(_) => "xmod",
            Structure::Square(_) => "xsq",
            Structure::Cube(_) => "ncube",
            Structure::X2(_) => "x2",
        }
    }

    pub fn violation(&self) -> Option<Violation> {
        match self {
            Structure::Xmod(c) => c.violation(),
            Structure::Square(s) => s.violation(),
            Structure::Cube(c) => c.violation(),
            Structure::X2(t) => t.violation(),
        }
    }

    /// Action, h and Peiffer tables with the order of their value group.
    pub fn tables(&self) -> Vec<(String, Vec<u32>, usize)> {
        match self {
            Structure::Xmod(c) => vec![("action".into(), c.action.table.clone(), c.m.order())],
            Structure::Square(s) => vec![
                ("act_l".into(), s.act_l.table.clone(), s.l.order()),
                ("act_m".into(), s.act_m.table.clone(), s.m.order()),
                ("act_n".into(), s.act_n.table.clone(), s.n.order()),
                ("h".into(), s.h.clone(), s.l.order()),
            ],
            Structure::Cube(c) => {
                let s = c.subsets();
                (0..s * s)
                    .map(|ab| (format!("h[{}][{}]", ab / s, ab % s), c.h[ab].clone(), c.groups[(ab / s) | (ab % s)].order()))
                    .collect()
            }
            Structure::X2(t) => vec![
                ("act_l".into(), t.act_l.table.clone(), t.l.order()),
                ("act_m".into(), t.act_m.table.clone(), t.m.order()),
                ("peiffer".into(), t.peiffer.clone(), t.l.order()),
            ],
        }
    }

    pub fn with_table(&self, i: usize, table: Vec<u32>) -> Structure {
        let mut s = self.clone();
        match &mut s {
            Structure::Xmod(c) => c.action.table = table,
            Structure::Square(q) => match i {
                0 => q.act_l.table = table,
                1 => q.act_m.table = table,
                2 => q.act_n.table = table,
                _ => q.h = table,
            },
            Structure::Cube(c) => c.h[i] = table,
            Structure::X2(t) => match i {
                0 => t.act_l.table = table,
                1 => t.act_m.table = table,
                _ => t.peiffer = table,
            },
        }
        s
    }
}

/// Up to `k` single-entry mutations, `x ↦ x + 1 mod |target|`, spread
/// round-robin over the tables that have a group of order > 1 to land in.
pub fn mutations(s: &Structure, k: usize) -> Vec<(String, Structure)> {
    let tables: Vec<(usize, (String, Vec<u32>, usize))> =
        s.tables().into_iter().enumerate().filter(|(_, t)| t.2 > 1 && !t.1.is_empty()).collect();
    let total: usize = tables.iter().map(|(_, t)| t.1.len()).sum();
    let mut picks: Vec<(usize, usize)> = Vec::new();
    let mut round = 0;
    while picks.len() < k.min(total) {
        for (ti, (_, t)) in tables.iter().enumerate() {
            let len = t.1.len();
            if round < len {
                // a stride coprime to most table lengths scatters the picks
                let pos = (round * 7919 + ti * 31) % len;
                let pos = (0..len).map(|d| (pos + d) % len).find(|p| !picks.contains(&(ti, *p))).unwrap();
                picks.push((ti, pos));
                if picks.len() == k.min(total) {
                    break;
                }
            }
        }
        round += 1;
    }
    picks
        .into_iter()
        .map(|(ti, pos)| {
            let (i, (name, table, order)) = &tables[ti];
            let mut t = table.clone();
            t[pos] = (t[pos] + 1) % *order as u32;
            (format!("{name}[{pos}]"), s.with_table(*i, t))
        })
        .collect()
}

/// Every catalog crossed module, square, cube, and the 2-crossed modules
/// built from them.
pub fn catalog_structures() -> Vec<(String, Structure)> {
    let mut out = Vec::new();
    for n in catalog::CROSSED_MODULES {
        out.push((n.to_string(), Structure::Xmod(catalog::crossed_module(n).unwrap())));
    }
    for n in catalog::all_squares() {
        let sq = catalog::square(n).unwrap();
        out.push((format!("cone/{n}"), Structure::X2(mapping_cone(&sq).unwrap())));
        out.push((n.to_string(), Structure::Square(sq)));
    }
    for n in catalog::CUBES {
        out.push((n.to_string(), Structure::Cube(catalog::cube(n).unwrap())));
    }
    let g = catalog::simplicial("nerve/a3-s3", 3, DEFAULT_LEVEL_CAP).unwrap();
    out.push(("nerve/a3-s3".into(), Structure::X2(from_simplicial(&g).unwrap())));
    out.push(("trivial/s3".into(), Structure::X2(trivial_2crossed(&catalog::group("s3").unwrap()).unwrap())));
    out
}
