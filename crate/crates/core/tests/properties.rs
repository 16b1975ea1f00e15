mod common;

use std::sync::Arc;

use proptest::prelude::*;

use homotopy3::catalog;
use homotopy3::grp::{iso_check, semidirect, FinGroup, Group, GroupHom, Subgroup};
use homotopy3::simp::{moore, nerve_cat1};
use homotopy3::xmod::cat1_from_crossed;
use homotopy3::xsq::{cat2_from_square, inclusion_crossed_square, square_from_cat2, square_isomorphism};

use common::{catalog_structures, Structure};

/// `g` with elements renamed by `perm`, which must fix 0.
fn relabel(g: &FinGroup, perm: &[u32]) -> FinGroup {
    let n = g.order();
    let mut inv = vec![0u32; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u32;
    }
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).map(|b| perm[g.mul(inv[a], inv[b]) as usize]).collect())
        .collect();
    FinGroup::from_table(&rows).unwrap()
}

fn group_and_perm() -> impl Strategy<Value = (Group, Vec<u32>)> {
    prop::sample::select(catalog::GROUPS.to_vec()).prop_flat_map(|name| {
        let g = catalog::group(name).unwrap();
        let rest: Vec<u32> = (1..g.order() as u32).collect();
        (Just(g), Just(rest).prop_shuffle()).prop_map(|(g, rest)| {
            let mut p = vec![0];
            p.extend(rest);
            (g, p)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelled_groups_are_isomorphic((g, perm) in group_and_perm()) {
        let h: Group = Arc::new(relabel(&g, &perm));
        let f = iso_check(&g, &h).unwrap().expect("relabelling is an isomorphism");
        prop_assert!(GroupHom::new(g.clone(), h.clone(), f.map.clone()).is_ok());
        prop_assert!(f.is_bijective());
        prop_assert!(iso_check(&h, &g).unwrap().is_some());
    }

    #[test]
    fn iso_check_is_symmetric(a in prop::sample::select(catalog::GROUPS.to_vec()),
                              b in prop::sample::select(catalog::GROUPS.to_vec())) {
        let (ga, gb) = (catalog::group(a).unwrap(), catalog::group(b).unwrap());
        let ab = iso_check(&ga, &gb).unwrap();
        let ba = iso_check(&gb, &ga).unwrap();
        prop_assert_eq!(ab.is_some(), ba.is_some());
        prop_assert_eq!(ab.is_some(), a == b);
    }

    #[test]
    fn nerve_truncation_is_restriction(name in prop::sample::select(catalog::CROSSED_MODULES.to_vec()), k in 1usize..4) {
        let c = cat1_from_crossed(&catalog::crossed_module(name).unwrap());
        let short = nerve_cat1(&c, k).unwrap();
        let long = nerve_cat1(&c, k + 1).unwrap();
        for n in 0..=k {
            prop_assert_eq!(short.levels[n].order(), long.levels[n].order());
            prop_assert_eq!(&short.faces[n], &long.faces[n]);
        }
        for n in 0..k {
            prop_assert_eq!(&short.degens[n], &long.degens[n]);
        }
        let (a, b) = (moore(&short), moore(&long));
        prop_assert_eq!(&a.orders[..], &b.orders[..=k]);
    }

    #[test]
    fn semidirect_products_are_groups(name in prop::sample::select(catalog::CROSSED_MODULES.to_vec())) {
        let cm = catalog::crossed_module(name).unwrap();
        let sd = semidirect(&cm.action);
        prop_assert!(FinGroup::from_table(&sd.group.rows()).is_ok());
        prop_assert_eq!(sd.group.order(), cm.m.order() * cm.p.order());
        prop_assert!(sd.proj.kernel().is_normal());
    }

    #[test]
    fn inclusion_squares_round_trip(g in prop::sample::select(vec!["c4", "c2xc2", "s3", "d4", "q8"]),
                                    x in 0u32..8, y in 0u32..8) {
        let g = catalog::group(g).unwrap();
        let m = Subgroup::generated(&g, &[x % g.order() as u32]);
        let n = Subgroup::generated(&g, &[y % g.order() as u32]);
        prop_assume!(m.is_normal() && n.is_normal());
        let sq = inclusion_crossed_square(&g, &m, &n).unwrap();
        prop_assert!(sq.violation().is_none());
        let back = square_from_cat2(&cat2_from_square(&sq)).unwrap();
        prop_assert!(square_isomorphism(&sq, &back).unwrap().is_some());
    }
}

fn structures() -> Vec<(String, Structure)> {
    catalog_structures()
        .into_iter()
        .filter(|(_, s)| s.tables().iter().any(|t| t.2 > 1))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Any single changed entry of an action, h or Peiffer table is caught.
    #[test]
    fn single_entry_mutations_are_detected(si in any::<prop::sample::Index>(), ti in any::<prop::sample::Index>(),
                                           pos in any::<prop::sample::Index>(), delta in 1u32..64) {
        let all = structures();
        let (name, s) = &all[si.index(all.len())];
        let tables: Vec<_> = s.tables().into_iter().enumerate().filter(|(_, t)| t.2 > 1).collect();
        let (i, (tname, table, order)) = &tables[ti.index(tables.len())];
        let p = pos.index(table.len());
        let mut t = table.clone();
        t[p] = (t[p] + delta % (*order as u32 - 1) + 1) % *order as u32;
        prop_assume!(t[p] != table[p]);
        let m = s.with_table(*i, t);
        let v = m.violation();
        prop_assert!(v.is_some(), "{} {}[{}] undetected", name, tname, p);
        prop_assert!(!v.unwrap().witnesses.is_empty());
    }
}

#[test]
fn json_round_trips() {
    use homotopy3::json::{X2Json, XmodJson, XsqJson};
    use homotopy3::x2mod::mapping_cone;
    let same = |a: &dyn erased::Ser, b: &dyn erased::Ser| assert_eq!(a.value(), b.value());
    for name in catalog::CROSSED_MODULES {
        let j = XmodJson::of(&catalog::crossed_module(name).unwrap());
        same(&j, &XmodJson::of(&j.build().unwrap()));
    }
    for name in catalog::all_squares() {
        let sq = catalog::square(name).unwrap();
        let j = XsqJson::of(&sq);
        let back = j.build().unwrap();
        assert!(back.violation().is_none());
        same(&j, &XsqJson::of(&back));
        let t = X2Json::of(&mapping_cone(&sq).unwrap());
        let text = serde_json::to_string(&t).unwrap();
        let parsed: X2Json = serde_json::from_str(&text).unwrap();
        same(&t, &X2Json::of(&parsed.build().unwrap()));
    }
}

mod erased {
    pub trait Ser {
        fn value(&self) -> serde_json::Value;
    }
    impl<T: serde::Serialize> Ser for T {
        fn value(&self) -> serde_json::Value {
            serde_json::to_value(self).unwrap()
        }
    }
}
