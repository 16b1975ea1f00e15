//! 2-crossed modules and complexes: axioms, the mapping cone of a crossed
//! square, extraction from simplicial groups and homotopy groups.

pub mod complex;
pub mod cone;
pub mod simplicial;
pub mod two_crossed;

pub use complex::{make_2crossed_complex, two_crossed_complex_from_squared, TwoCrossedComplex};
pub use cone::{mapping_cone, mapping_cone_with, peiffer_search, PeifferFormula, PeifferSearch, Word, PINNED};
pub use simplicial::from_simplicial;
pub use two_crossed::{
    compare_2cm, compare_2cm_with, homotopy_groups_2cm, make_2crossed, trivial_2crossed, TwoCrossedIso,
    TwoCrossedModule,
};

use crate::catalog;
use crate::error::Result;
use crate::xsq::CrossedSquare;

/// The squares the lifting search runs over: the whole square catalog.
pub fn search_squares() -> Result<Vec<(&'static str, CrossedSquare)>> {
    catalog::all_squares().map(|s| Ok((s, catalog::square(s)?))).collect()
}

/// Path of the pinned search result, relative to the crate root.
pub const GOLDEN_PEIFFER: &str = "golden/peiffer_lifting.json";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisimp::{binerve, codiagonal, diagonal};
    use crate::error::Error;
    use crate::grp::{GroupAction, GroupHom};
    use crate::simp::nerve_cat1;
    use crate::xmod::cat1_from_crossed;
    use crate::xsq::{ChainTail, SquaredComplex};

    fn orders(t: &TwoCrossedModule) -> [usize; 3] {
        let p = homotopy_groups_2cm(t).unwrap();
        [p[0].order(), p[1].order(), p[2].order()]
    }

    #[test]
    fn golden_lifting_search() {
        let s = peiffer_search(&search_squares().unwrap());
        let json = serde_json::to_string_pretty(&s).unwrap() + "\n";
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(GOLDEN_PEIFFER);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &json).unwrap();
        }
        assert_eq!(std::fs::read_to_string(&path).unwrap(), json);
        assert_eq!(s.pinned, Some(PINNED.text()));
    }

    #[test]
    fn trivial_is_valid() {
        let t = trivial_2crossed(&catalog::group("s3").unwrap()).unwrap();
        assert_eq!(orders(&t), [6, 1, 1]);
    }

    #[test]
    fn cone_homotopy() {
        let c = mapping_cone(&catalog::square("c2-corner-square").unwrap()).unwrap();
        assert_eq!(orders(&c), [1, 1, 2]);
        let sq = catalog::square("d4-square").unwrap();
        let c = mapping_cone(&sq).unwrap();
        assert_eq!(c.m.order(), 16);
        assert_eq!(c.d1.image().order(), 8);
        assert_eq!(c.d2.image().order(), 2);
        assert_eq!(orders(&c), [1, 1, 1]);
        let c = mapping_cone(&catalog::square("c4-square").unwrap()).unwrap();
        assert_eq!(orders(&c), [2, 1, 1]);
    }

    #[test]
    fn zero_lifting_breaks_2cm1() {
        let mut c = mapping_cone(&catalog::square("d4-square").unwrap()).unwrap();
        c.peiffer.iter_mut().for_each(|x| *x = 0);
        match make_2crossed(c) {
            Err(Error::Axiom(v)) => {
                assert_eq!(v.axiom, "2CM1");
                assert_eq!(v.witnesses.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nerve_gives_trivial_top() {
        let cm = catalog::crossed_module("a3-s3").unwrap();
        let g = nerve_cat1(&cat1_from_crossed(&cm), 3).unwrap();
        let t = from_simplicial(&g).unwrap();
        assert_eq!((t.l.order(), t.m.order(), t.n.order()), (1, 3, 6));
        assert_eq!(orders(&t), [2, 1, 1]);
        let g = nerve_cat1(&cat1_from_crossed(&cm), 2).unwrap();
        assert!(matches!(from_simplicial(&g), Err(Error::DepthTooShallow { .. })));
    }

    #[test]
    fn cone_matches_codiagonal_on_corner() {
        let sq = catalog::square("c2-corner-square").unwrap();
        let x = binerve(&sq, 3).unwrap();
        let a = mapping_cone(&sq).unwrap();
        let b = from_simplicial(&codiagonal(&x, 3).unwrap()).unwrap();
        assert!(compare_2cm(&a, &b).unwrap().is_some());
        assert!(compare_2cm(&a, &a).unwrap().is_some());
        let d = from_simplicial(&diagonal(&x, 3).unwrap()).unwrap();
        assert_eq!(orders(&d), [1, 1, 2]);
    }

    #[test]
    fn cone_matches_codiagonal_on_s3() {
        let sq = catalog::square("s3-square").unwrap();
        let x = binerve(&sq, 3).unwrap();
        let a = mapping_cone(&sq).unwrap();
        let b = from_simplicial(&codiagonal(&x, 3).unwrap()).unwrap();
        assert!(compare_2cm_with(&a, &b, false).unwrap().is_some());
        assert_eq!(orders(&a), orders(&b));
    }

    #[test]
    fn different_pi2_refused() {
        let a = mapping_cone(&catalog::square("c2-corner-square").unwrap()).unwrap();
        let b = mapping_cone(&catalog::square("trivial-square").unwrap()).unwrap();
        assert!(compare_2cm(&a, &b).unwrap().is_none());
    }

    #[test]
    fn squared_complex_tail() {
        let sq = catalog::square("c2-corner-square").unwrap();
        let c2 = catalog::group("c2").unwrap();
        let tail = ChainTail {
            boundaries: vec![GroupHom::trivial(&c2, &sq.l)],
            actions: vec![GroupAction::trivial(&sq.p, &c2)],
            groups: vec![c2.clone()],
        };
        let sc = SquaredComplex { square: sq.clone(), tail };
        let t = two_crossed_complex_from_squared(&sc).unwrap();
        assert_eq!(t.homotopy_group(2).unwrap().order(), 2);
        assert_eq!(t.homotopy_group(3).unwrap().order(), 2);
        assert_eq!(t.base, mapping_cone(&sq).unwrap());

        let empty = SquaredComplex {
            square: sq.clone(),
            tail: ChainTail::empty(),
        };
        assert_eq!(two_crossed_complex_from_squared(&empty).unwrap().base, t.base);

        // nonabelian C₃
        let s3 = catalog::group("s3").unwrap();
        let bad = SquaredComplex {
            square: sq.clone(),
            tail: ChainTail {
                boundaries: vec![GroupHom::trivial(&s3, &sq.l)],
                actions: vec![GroupAction::trivial(&sq.p, &s3)],
                groups: vec![s3],
            },
        };
        match two_crossed_complex_from_squared(&bad) {
            Err(Error::Axiom(v)) => assert_eq!(v.axiom, "(ii)"),
            other => panic!("{other:?}"),
        }
    }
}
