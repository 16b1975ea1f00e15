//! The mapping cone `L → M⋊N → P` of a crossed square and the choice of its
//! Peiffer lifting.

use serde::Serialize;

use crate::error::{Result, Violation};
use crate::grp::{semidirect, GroupAction, GroupHom};
use crate::x2mod::two_crossed::{make_2crossed, TwoCrossedModule};
use crate::xsq::CrossedSquare;

/// Second argument of the lifting `h(α, β)`, as a word in `n` and `n'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Word {
    N2,
    N2Inv,
    Conj,
    ConjInv,
    InvConj,
    InvConjInv,
    NN2,
    N2N,
}

impl Word {
    pub const ALL: [Word; 8] = [
        Word::N2,
        Word::N2Inv,
        Word::Conj,
        Word::ConjInv,
        Word::InvConj,
        Word::InvConjInv,
        Word::NN2,
        Word::N2N,
    ];

    pub fn text(self) -> &'static str {
        match self {
            Word::N2 => "n'",
            Word::N2Inv => "n'^-1",
            Word::Conj => "n n' n^-1",
            Word::ConjInv => "n n'^-1 n^-1",
            Word::InvConj => "n^-1 n' n",
            Word::InvConjInv => "n^-1 n'^-1 n",
            Word::NN2 => "n n'",
            Word::N2N => "n' n",
        }
    }

    fn eval(self, sq: &CrossedSquare, n: u32, n2: u32) -> u32 {
        let g = &sq.n;
        match self {
            Word::N2 => n2,
            Word::N2Inv => g.inv(n2),
            Word::Conj => g.conj(n, n2),
            Word::ConjInv => g.conj(n, g.inv(n2)),
            Word::InvConj => g.conj(g.inv(n), n2),
            Word::InvConjInv => g.conj(g.inv(n), g.inv(n2)),
            Word::NN2 => g.mul(n, n2),
            Word::N2N => g.mul(n2, n),
        }
    }
}

/// `{(m, n), (m', n')} = h(α, β)` with `α ∈ {m, m⁻¹}` and `β` a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeifferFormula {
    pub m_inverted: bool,
    pub word: Word,
}

impl PeifferFormula {
    pub fn text(&self) -> String {
        let a = if self.m_inverted { "m^-1" } else { "m" };
        format!("h({a}, {})", self.word.text())
    }

    pub fn candidates() -> Vec<PeifferFormula> {
        [false, true]
            .into_iter()
            .flat_map(|m_inverted| Word::ALL.into_iter().map(move |word| PeifferFormula { m_inverted, word }))
            .collect()
    }
}

/// The lifting used by [`mapping_cone`], fixed by the search recorded in
/// `golden/peiffer_lifting.json`.
pub const PINNED: PeifferFormula = PeifferFormula {
    m_inverted: false,
    word: Word::Conj,
};

/// The cone with a given lifting, unvalidated. `M⋊N` has `(m, n)` at
/// `m + |M| n` with `n` acting through `ν`; `∂₂l = (λl⁻¹, λ'l)`,
/// `∂₁(m, n) = μ(m)ν(n)`; `P` acts diagonally.
pub fn mapping_cone_with(sq: &CrossedSquare, f: PeifferFormula) -> TwoCrossedModule {
    let mn = semidirect(&sq.act_m.pull_back(&sq.nu));
    let g = mn.group.clone();
    let nm = sq.m.order() as u32;
    let d2 = GroupHom::trusted(
        sq.l.clone(),
        g.clone(),
        sq.l.elements()
            .map(|l| sq.m.inv(sq.lambda.apply(l)) + nm * sq.lambda_p.apply(l))
            .collect(),
    );
    let d1 = GroupHom::trusted(
        g.clone(),
        sq.p.clone(),
        g.elements()
            .map(|x| sq.p.mul(sq.mu.apply(x % nm), sq.nu.apply(x / nm)))
            .collect(),
    );
    let mut act_m = Vec::with_capacity(sq.p.order() * g.order());
    for p in sq.p.elements() {
        for x in g.elements() {
            act_m.push(sq.act_m.act(p, x % nm) + nm * sq.act_n.act(p, x / nm));
        }
    }
    let mut peiffer = Vec::with_capacity(g.order() * g.order());
    for x in g.elements() {
        let (m, n) = (x % nm, x / nm);
        let a = if f.m_inverted { sq.m.inv(m) } else { m };
        for y in g.elements() {
            peiffer.push(sq.h(a, f.word.eval(sq, n, y / nm)));
        }
    }
    TwoCrossedModule {
        act_l: sq.act_l.clone(),
        act_m: GroupAction {
            actor: sq.p.clone(),
            target: g.clone(),
            table: act_m,
        },
        l: sq.l.clone(),
        m: g,
        n: sq.p.clone(),
        d2,
        d1,
        peiffer,
    }
}

/// The mapping cone with the pinned lifting, validated.
pub fn mapping_cone(sq: &CrossedSquare) -> Result<TwoCrossedModule> {
    make_2crossed(mapping_cone_with(sq, PINNED))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateResult {
    pub square: String,
    pub passes: bool,
    pub first_failure: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub formula: String,
    pub results: Vec<CandidateResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeifferSearch {
    pub schema: &'static str,
    pub convention: &'static str,
    pub candidates: Vec<CandidateReport>,
    pub accepted: Vec<String>,
    pub pinned: Option<String>,
    pub fallback: bool,
}

/// Runs every candidate lifting on every named square and keeps those that
/// pass all axioms everywhere. The first accepted candidate is pinned; with
/// none accepted, `fallback` is set.
pub fn peiffer_search(squares: &[(&str, CrossedSquare)]) -> PeifferSearch {
    let mut candidates = Vec::new();
    let mut accepted = Vec::new();
    for f in PeifferFormula::candidates() {
        let results: Vec<CandidateResult> = squares
            .iter()
            .map(|(name, sq)| {
                let v = mapping_cone_with(sq, f).violation();
                CandidateResult {
                    square: name.to_string(),
                    passes: v.is_none(),
                    first_failure: v,
                }
            })
            .collect();
        if results.iter().all(|r| r.passes) {
            accepted.push(f.text());
        }
        candidates.push(CandidateReport {
            formula: f.text(),
            results,
        });
    }
    PeifferSearch {
        schema: "peiffer_search.v1",
        convention: "{(m,n),(m',n')} in L for (m,n) in M x| N, n acting on M through nu; d2(l) = (lambda(l)^-1, lambda'(l)); d1(m,n) = mu(m) nu(n)",
        pinned: accepted.first().cloned(),
        fallback: accepted.is_empty(),
        candidates,
        accepted,
    }
}
