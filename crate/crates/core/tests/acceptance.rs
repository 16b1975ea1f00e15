//! The acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use homotopy3::bisimp::{binerve, codiagonal, codiagonal_parts, codiagonal_widths, diagonal};
use homotopy3::catalog;
use homotopy3::grp::{iso_check, GroupHom};
use homotopy3::simp::{
    decalage, homotopy_group, m_functor_1, m_functor_2, moore, nerve_cat1, vertical_kernel_corner,
    DEFAULT_LEVEL_CAP,
};
use homotopy3::x2mod::{
    compare_2cm_with, from_simplicial, homotopy_groups_2cm, mapping_cone, mapping_cone_with, peiffer_search,
    search_squares, TwoCrossedModule, GOLDEN_PEIFFER, PINNED,
};
use homotopy3::xmod::{cat1_from_crossed, xmod_isomorphism};
use homotopy3::xsq::{
    cat2_from_square, cat2_morphism_violation, cat2_roundtrip_witness, square_from_cat2, square_isomorphism,
    square_morphism_violation,
};

use common::mutations;

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    if e > limit {
        return Err(format!("{what} took {e:?}, limit {limit:?}"));
    }
    Ok(())
}

/// Axiom suites and mutation detection.
fn c1() -> Outcome {
    let t = Instant::now();
    let all = common::catalog_structures();
    let count = |k: &str| all.iter().filter(|(_, s)| s.kind() == k).count();
    check!(count("xmod") >= 3 && count("xsq") >= 3 && count("ncube") >= 1 && count("x2") >= 2, "catalog too small");
    let mut mutated = 0;
    let mut small = Vec::new();
    for (name, s) in &all {
        if let Some(v) = s.violation() {
            return Err(format!("{name} fails its verifier: {v}"));
        }
        let ms = mutations(s, 5);
        if ms.len() < 5 {
            small.push(format!("{name}:{}", ms.len()));
        }
        for (what, m) in ms {
            match m.violation() {
                Some(v) if !v.witnesses.is_empty() => mutated += 1,
                Some(v) => return Err(format!("{name} mutation {what} detected without witnesses: {v}")),
                None => return Err(format!("{name} mutation {what} not detected")),
            }
        }
    }
    let with5 = |k: &str| {
        all.iter()
            .filter(|(_, s)| s.kind() == k && mutations(s, 5).len() >= 5)
            .count()
    };
    check!(
        with5("xmod") >= 3 && with5("xsq") >= 3 && with5("ncube") >= 1 && with5("x2") >= 2,
        "too few structures admit five mutations"
    );
    within(t, Duration::from_secs(60), "axiom suites")?;
    Ok(format!(
        "{} structures, {mutated} mutations detected; fewer than 5 possible: {}",
        all.len(),
        small.join(" ")
    ))
}

/// Square and cat²-group round trips.
fn c2() -> Outcome {
    let t = Instant::now();
    let mut n = 0;
    for name in catalog::all_squares() {
        let sq = catalog::square(name).map_err(|e| e.to_string())?;
        let c = cat2_from_square(&sq);
        let back = square_from_cat2(&c).map_err(|e| e.to_string())?;
        let f = square_isomorphism(&sq, &back)
            .map_err(|e| e.to_string())?
            .ok_or(format!("{name}: no square isomorphism"))?;
        check!(square_morphism_violation(&sq, &back, &f).is_none(), "{name}: witness fails");
        for h in [&f.fl, &f.fm, &f.fn_, &f.fp] {
            check!(h.is_bijective(), "{name}: witness not bijective");
        }
        let (phi, c2) = cat2_roundtrip_witness(&c).map_err(|e| e.to_string())?;
        check!(phi.is_bijective(), "{name}: cat2 witness not bijective");
        check!(cat2_morphism_violation(&c, &c2, &phi).is_none(), "{name}: cat2 witness fails");
        n += 1;
    }
    within(t, Duration::from_secs(60), "round trips")?;
    Ok(format!("{n} squares"))
}

/// Nerves of crossed modules have trivial Moore groups from level 2.
fn c3() -> Outcome {
    for name in catalog::CROSSED_MODULES {
        let cm = catalog::crossed_module(name).map_err(|e| e.to_string())?;
        let g = nerve_cat1(&cat1_from_crossed(&cm), 4).map_err(|e| e.to_string())?;
        let nc = moore(&g);
        check!(nc.orders.len() == 5, "{name}: depth {}", nc.orders.len() - 1);
        for n in 2..=4 {
            check!(nc.orders[n] == 1, "{name}: NG_{n} has order {}", nc.orders[n]);
        }
    }
    Ok(format!("{} crossed modules, levels 2..4", catalog::CROSSED_MODULES.len()))
}

/// `N(∇)₃ = 1` and the last part of `N(∇)₂` is trivial.
fn c4() -> Outcome {
    let t = Instant::now();
    for name in ["c2-corner-square", "d4-square"] {
        let x = binerve(&catalog::square(name).unwrap(), 3).map_err(|e| e.to_string())?;
        let nab = codiagonal(&x, 3).map_err(|e| e.to_string())?;
        let nc = moore(&nab);
        check!(nc.orders.len() == 4 && nc.orders[3] == 1, "{name}: Moore orders {:?}", nc.orders);
        let widths = codiagonal_widths(&x, 2).map_err(|e| e.to_string())?;
        for &e in &nc.elements[2] {
            let tup = nab.levels[2].elem(e);
            check!(codiagonal_parts(&widths, &tup)[2].iter().all(|&y| y == 0), "{name}: x2 part of {e} is not 1");
        }
    }
    within(t, Duration::from_secs(600), "length bound")?;
    Ok("corner and D4 squares".into())
}

fn boundaries_match(a: &TwoCrossedModule, b: &TwoCrossedModule, f: [&GroupHom; 3]) -> bool {
    let [f2, f1, f0] = f;
    f.iter().all(|h| h.is_bijective())
        && a.l.elements().all(|x| f1.apply(a.d2.apply(x)) == b.d2.apply(f2.apply(x)))
        && a.m.elements().all(|x| f0.apply(a.d1.apply(x)) == b.d1.apply(f1.apply(x)))
}

/// `N(∇)₀,₁,₂` against `P`, `M⋊N`, `L` and the cone's boundaries.
fn c5() -> Outcome {
    for name in ["c2-corner-square", "d4-square"] {
        let sq = catalog::square(name).unwrap();
        let x = binerve(&sq, 3).map_err(|e| e.to_string())?;
        let n = from_simplicial(&codiagonal(&x, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let cone = mapping_cone(&sq).map_err(|e| e.to_string())?;
        check!(iso_check(&n.n, &sq.p).unwrap().is_some(), "{name}: N0 is not P");
        check!(iso_check(&n.m, &cone.m).unwrap().is_some(), "{name}: N1 is not M x| N");
        check!(iso_check(&n.l, &sq.l).unwrap().is_some(), "{name}: N2 is not L");
        let w = compare_2cm_with(&cone, &n, false)
            .map_err(|e| e.to_string())?
            .ok_or(format!("{name}: no chain isomorphism"))?;
        check!(boundaries_match(&cone, &n, [&w.f2, &w.f1, &w.f0]), "{name}: witness fails");
    }
    Ok("corner and D4 squares".into())
}

fn pi_orders(p: &[homotopy3::simp::HomotopyGroup]) -> Vec<usize> {
    p.iter().map(|h| h.order()).collect()
}

/// `π₀, π₁, π₂` three ways.
fn c6() -> Outcome {
    let mut seen = Vec::new();
    for name in catalog::SQUARES {
        let sq = catalog::square(name).unwrap();
        let cone = homotopy_groups_2cm(&mapping_cone(&sq).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let x = binerve(&sq, 3).map_err(|e| e.to_string())?;
        let nab = codiagonal(&x, 3).map_err(|e| e.to_string())?;
        let dg = diagonal(&x, 3).map_err(|e| e.to_string())?;
        for n in 0..=2 {
            let a = homotopy_group(&nab, n).map_err(|e| e.to_string())?;
            let b = homotopy_group(&dg, n).map_err(|e| e.to_string())?;
            for (what, g) in [("nabla", &a.group), ("diag", &b.group)] {
                check!(
                    iso_check(&cone[n].group, g).unwrap().is_some(),
                    "{name}: pi_{n} of the cone differs from {what}"
                );
            }
        }
        seen.push(format!("{name}={:?}", pi_orders(&cone)));
        let expect: Option<(Vec<usize>, Option<Vec<u64>>)> = match name {
            "c2-corner-square" => Some((vec![1, 1, 2], Some(vec![2]))),
            "d4-square" => Some((vec![1, 1, 1], Some(vec![]))),
            _ => None,
        };
        if let Some((orders, inv)) = expect {
            check!(pi_orders(&cone) == orders, "{name}: pi orders {:?}", pi_orders(&cone));
            check!(cone[2].invariants == inv, "{name}: pi_2 invariants {:?}", cone[2].invariants);
        }
    }
    Ok(seen.join(" "))
}

/// `𝔐(−, 1)` on nerves and `𝔐(−, 2)` on the depth-3 fixtures.
fn c7() -> Outcome {
    for name in catalog::CROSSED_MODULES {
        let cm = catalog::crossed_module(name).unwrap();
        let g = nerve_cat1(&cat1_from_crossed(&cm), 2).map_err(|e| e.to_string())?;
        let m = m_functor_1(&g).map_err(|e| format!("{name}: {e}"))?;
        check!(xmod_isomorphism(&cm, &m).map_err(|e| e.to_string())?.is_some(), "{name}: M(nerve, 1) is not cm");
    }
    for name in catalog::SIMPLICIAL {
        let g = catalog::simplicial(name, 3, DEFAULT_LEVEL_CAP).map_err(|e| format!("{name}: {e}"))?;
        let sq = m_functor_2(&g).map_err(|e| format!("{name}: {e}"))?;
        check!(sq.violation().is_none(), "{name}: M(G, 2) fails the square verifier");
        let pi2 = homotopy_group(&g, 2).map_err(|e| e.to_string())?;
        check!(
            iso_check(&vertical_kernel_corner(&sq), &pi2.group).unwrap().is_some(),
            "{name}: vertical kernel corner is not pi_2"
        );
    }
    Ok(format!("{} crossed modules, {} fixtures", catalog::CROSSED_MODULES.len(), catalog::SIMPLICIAL.len()))
}

/// `π₀(Dec G) ≅ G₀`.
fn c8() -> Outcome {
    let mut n = 0;
    for depth in [2, 3] {
        for name in catalog::SIMPLICIAL {
            let g = catalog::simplicial(name, depth, DEFAULT_LEVEL_CAP).map_err(|e| format!("{name}: {e}"))?;
            let d = decalage(&g).map_err(|e| format!("{name}: {e}"))?;
            let pi0 = homotopy_group(&d, 0).map_err(|e| e.to_string())?;
            let g0 = g.level(0).to_group().map_err(|e| e.to_string())?;
            check!(iso_check(&pi0.group, &g0).unwrap().is_some(), "{name} at depth {depth}");
            n += 1;
        }
    }
    Ok(format!("{n} fixtures"))
}

/// The lifting search, the pin and the golden file.
fn c9() -> Outcome {
    let squares = search_squares().map_err(|e| e.to_string())?;
    let s = peiffer_search(&squares);
    check!(!s.accepted.is_empty() || s.fallback, "search produced nothing");
    check!(s.pinned == Some(PINNED.text()), "pinned {:?}, code uses {}", s.pinned, PINNED.text());
    for (name, sq) in &squares {
        if let Some(v) = mapping_cone_with(sq, PINNED).violation() {
            return Err(format!("{name}: {v}"));
        }
    }
    let json = serde_json::to_string_pretty(&s).unwrap() + "\n";
    let again = serde_json::to_string_pretty(&peiffer_search(&squares)).unwrap() + "\n";
    check!(json == again, "search output is not deterministic");
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(GOLDEN_PEIFFER);
    let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    check!(golden == json, "golden file differs from a fresh search");
    Ok(format!("{} accepted, pinned {}", s.accepted.len(), PINNED.text()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axiom suites and mutations", c1),
        ("square / cat2 round trips", c2),
        ("nerve Moore triviality", c3),
        ("codiagonal length bound", c4),
        ("codiagonal Moore complex vs mapping cone", c5),
        ("homotopy groups three ways", c6),
        ("M functor", c7),
        ("decalage", c8),
        ("Peiffer lifting pin", c9),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = t.elapsed().as_millis();
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name} ({ms} ms) {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name} ({ms} ms) {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
