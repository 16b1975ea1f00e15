//! Builtin example structures, addressed by name.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grp::{FinGroup, Group, GroupAction, GroupHom, Subgroup};
use crate::xmod::{inclusion_crossed_module, module_crossed_module, CrossedModule};
use crate::bisimp::{binerve_capped, codiagonal, diagonal};
use crate::simp::{constant, nerve_cat1_capped, TruncatedSimplicialGroup};
use crate::xmod::cat1_from_crossed;
use crate::xsq::{inclusion_crossed_square, inclusion_ncube, make_crossed_square, CrossedNCube, CrossedSquare};

pub const GROUPS: [&str; 8] = ["triv", "c2", "c3", "c4", "c2xc2", "s3", "d4", "q8"];
pub const CROSSED_MODULES: [&str; 6] = ["a3-s3", "r-d4", "c2-id", "c3-c2-module", "triv-c2", "q8-center"];
pub const SQUARES: [&str; 6] = [
    "trivial-square",
    "c2-corner-square",
    "d4-square",
    "s3-square",
    "c4-square",
    "c2-square",
];
/// Squares with nonabelian `N`; their depth-3 codiagonals are too large
/// to enumerate, so the simplicial pipeline only runs on [`SQUARES`].
pub const WIDE_SQUARES: [&str; 2] = ["s3-full-square", "d4-full-square"];
pub const CUBES: [&str; 1] = ["d4-cube"];
/// Simplicial fixtures as `kind/source`: constant groups, nerves of crossed
/// modules, and codiagonals and diagonals of binerves.
pub const SIMPLICIAL: [&str; 12] = [
    "constant/c2",
    "constant/s3",
    "nerve/a3-s3",
    "nerve/r-d4",
    "nerve/c2-id",
    "nerve/c3-c2-module",
    "nerve/triv-c2",
    "nerve/q8-center",
    "nabla/c2-corner-square",
    "nabla/c2-square",
    "nabla/c4-square",
    "diag/c2-corner-square",
];

fn unknown(kind: &str, name: &str) -> Error {
    Error::Parse(format!("no builtin {kind} named {name:?}"))
}

pub fn group(name: &str) -> Result<Group> {
    let g = match name {
        "triv" => FinGroup::trivial(),
        "c2" => FinGroup::cyclic(2),
        "c3" => FinGroup::cyclic(3),
        "c4" => FinGroup::cyclic(4),
        "c2xc2" => FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2)),
        "s3" => FinGroup::dihedral(3),
        "d4" => FinGroup::dihedral(4),
        "q8" => FinGroup::quaternion(),
        _ => return Err(unknown("group", name)),
    };
    Ok(Arc::new(g))
}

pub fn crossed_module(name: &str) -> Result<CrossedModule> {
    match name {
        "a3-s3" => {
            let s3 = group("s3")?;
            inclusion_crossed_module(&s3, &Subgroup::generated(&s3, &[1]))
        }
        "r-d4" => {
            let d4 = group("d4")?;
            inclusion_crossed_module(&d4, &Subgroup::generated(&d4, &[1]))
        }
        "c2-id" => {
            let c2 = group("c2")?;
            inclusion_crossed_module(&c2, &Subgroup::whole(&c2))
        }
        "c3-c2-module" => {
            let (c3, c2) = (group("c3")?, group("c2")?);
            let act = GroupAction::new(c2.clone(), c3.clone(), vec![0, 1, 2, 0, 2, 1])?;
            module_crossed_module(&c3, &c2, act)
        }
        "triv-c2" => {
            let c2 = group("c2")?;
            inclusion_crossed_module(&c2, &Subgroup::trivial(&c2))
        }
        "q8-center" => {
            let q8 = group("q8")?;
            inclusion_crossed_module(&q8, &Subgroup::generated(&q8, &[1]))
        }
        _ => Err(unknown("crossed module", name)),
    }
}

/// `(C2; 1, 1; 1)`: only the top corner is nontrivial.
pub fn corner_square() -> Result<CrossedSquare> {
    let t = group("triv")?;
    let c2 = group("c2")?;
    make_crossed_square(CrossedSquare {
        lambda: GroupHom::trivial(&c2, &t),
        lambda_p: GroupHom::trivial(&c2, &t),
        mu: GroupHom::identity(&t),
        nu: GroupHom::identity(&t),
        act_l: GroupAction::trivial(&t, &c2),
        act_m: GroupAction::trivial(&t, &t),
        act_n: GroupAction::trivial(&t, &t),
        h: vec![0],
        l: c2,
        m: t.clone(),
        n: t.clone(),
        p: t,
    })
}

pub fn square(name: &str) -> Result<CrossedSquare> {
    let incl = |g: &str, m: &[u32], n: &[u32]| -> Result<CrossedSquare> {
        let g = group(g)?;
        inclusion_crossed_square(&g, &Subgroup::generated(&g, m), &Subgroup::generated(&g, n))
    };
    match name {
        "trivial-square" => incl("triv", &[], &[]),
        "c2-corner-square" => corner_square(),
        // ⟨r⟩ and ⟨r², s⟩
        "d4-square" => incl("d4", &[1], &[2, 4]),
        "s3-square" => incl("s3", &[1], &[1]),
        // ⟨r²⟩ twice
        "c4-square" => incl("c4", &[2], &[2]),
        "c2-square" => incl("c2", &[1], &[1]),
        "s3-full-square" => incl("s3", &[1, 3], &[1, 3]),
        "d4-full-square" => incl("d4", &[1, 4], &[1, 4]),
        _ => Err(unknown("crossed square", name)),
    }
}

/// [`SQUARES`] followed by [`WIDE_SQUARES`].
pub fn all_squares() -> impl Iterator<Item = &'static str> {
    SQUARES.into_iter().chain(WIDE_SQUARES)
}

pub fn cube(name: &str) -> Result<CrossedNCube> {
    match name {
        "d4-cube" => {
            let d4 = group("d4")?;
            let ns = [
                Subgroup::generated(&d4, &[1]),
                Subgroup::generated(&d4, &[2, 4]),
                Subgroup::generated(&d4, &[2]),
            ];
            inclusion_ncube(&d4, &ns)
        }
        _ => Err(unknown("crossed cube", name)),
    }
}

/// A simplicial fixture truncated at `depth`, with levels capped at `cap`.
pub fn simplicial(name: &str, depth: usize, cap: u128) -> Result<TruncatedSimplicialGroup> {
    let (kind, src) = name.split_once('/').ok_or_else(|| unknown("simplicial group", name))?;
    match kind {
        "constant" => Ok(constant(&group(src)?, depth)),
        "nerve" => nerve_cat1_capped(&cat1_from_crossed(&crossed_module(src)?), depth, cap),
        "nabla" => codiagonal(&binerve_capped(&square(src)?, depth, cap)?, depth),
        "diag" => diagonal(&binerve_capped(&square(src)?, depth, cap)?, depth),
        _ => Err(unknown("simplicial group", name)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_loads() {
        for g in GROUPS {
            group(g).unwrap();
        }
        for c in CROSSED_MODULES {
            crossed_module(c).unwrap();
        }
        for s in all_squares() {
            square(s).unwrap();
        }
        for c in CUBES {
            cube(c).unwrap();
        }
        for s in SIMPLICIAL {
            simplicial(s, 2, crate::simp::DEFAULT_LEVEL_CAP).unwrap().validate().unwrap();
        }
        assert_eq!(group("d4").unwrap().order(), 8);
        assert_eq!(square("d4-square").unwrap().l.order(), 2);
        assert!(group("nope").is_err());
    }
}
