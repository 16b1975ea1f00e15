//! Crossed squares with an abelian tail `… → C₄ → C₃ → L`.

use crate::error::{Result, Violation};
use crate::grp::{Group, GroupAction, GroupHom};
use crate::xmod::{action_violation, hom_violation};
use crate::xsq::square::CrossedSquare;

const SQC: &str = "squared complex";

/// `C₃, C₄, …` with `boundaries[0]: C₃ → top` and
/// `boundaries[i]: C_{i+3} → C_{i+2}`, each acted on by the base group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTail {
    pub groups: Vec<Group>,
    pub boundaries: Vec<GroupHom>,
    pub actions: Vec<GroupAction>,
}

impl ChainTail {
    pub fn empty() -> Self {
        ChainTail {
            groups: Vec::new(),
            boundaries: Vec::new(),
            actions: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Shared checks against a top group `top` acted on by `top_act`.
    /// `trivially` lists base elements that must act trivially on every
    /// `Cₙ`, and `in_kernel` tests where `∂₃` may land. Axiom names are
    /// supplied by the caller as `[abelian, complex, trivial, equivariant]`.
    pub(crate) fn violation(
        &self,
        structure: &str,
        names: [&str; 4],
        top: &Group,
        top_act: &GroupAction,
        trivially: &[u32],
        in_kernel: impl Fn(u32) -> bool,
    ) -> Option<Violation> {
        let k = self.groups.len();
        let base = &top_act.actor;
        if self.boundaries.len() != k || self.actions.len() != k {
            return Some(Violation::new(structure, "tail components fit together"));
        }
        for i in 0..k {
            let c = &self.groups[i];
            let dst = if i == 0 { top } else { &self.groups[i - 1] };
            let (d, a) = (&self.boundaries[i], &self.actions[i]);
            if d.src != *c || d.dst != *dst || a.target != *c || a.actor != *base {
                return Some(Violation::new(structure, "tail components fit together").with("n", i as u32 + 3));
            }
            if let Some(v) = hom_violation(structure, &format!("d{}", i + 3), d) {
                return Some(v);
            }
            if let Some(v) = action_violation(structure, &format!("action on C{}", i + 3), a) {
                return Some(v);
            }
        }
        for (i, c) in self.groups.iter().enumerate() {
            if let Some((a, b)) = c.abelian_witness() {
                return Some(
                    Violation::new(structure, names[0])
                        .with("n", i as u32 + 3)
                        .with("a", a)
                        .with("b", b),
                );
            }
        }
        for i in 0..k {
            let d = &self.boundaries[i];
            for x in self.groups[i].elements() {
                let y = d.apply(x);
                let ok = if i == 0 { in_kernel(y) } else { self.boundaries[i - 1].apply(y) == 0 };
                if !ok {
                    return Some(Violation::new(structure, names[1]).with("n", i as u32 + 3).with("c", x));
                }
            }
        }
        for (i, a) in self.actions.iter().enumerate() {
            for &p in trivially {
                if let Some(x) = a.target.elements().find(|&x| a.act(p, x) != x) {
                    return Some(
                        Violation::new(structure, names[2])
                            .with("n", i as u32 + 3)
                            .with("p", p)
                            .with("c", x),
                    );
                }
            }
        }
        for i in 0..k {
            let (d, a) = (&self.boundaries[i], &self.actions[i]);
            let dst_act = if i == 0 { top_act } else { &self.actions[i - 1] };
            for p in base.elements() {
                if let Some(x) = a.target.elements().find(|&x| d.apply(a.act(p, x)) != dst_act.act(p, d.apply(x))) {
                    return Some(
                        Violation::new(structure, names[3])
                            .with("n", i as u32 + 3)
                            .with("p", p)
                            .with("c", x),
                    );
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaredComplex {
    pub square: CrossedSquare,
    pub tail: ChainTail,
}

impl SquaredComplex {
    /// Axioms (i)-(v): the square, abelian tail, `∂∂ = 1` with
    /// `∂₃C₃ ⊆ Ker λ ∩ Ker λ'`, `μM` and `νN` acting trivially, and
    /// equivariant boundaries.
    pub fn violation(&self) -> Option<Violation> {
        let sq = &self.square;
        if let Some(v) = sq.violation() {
            return Some(Violation {
                structure: SQC.into(),
                axiom: format!("(i) {}", v.axiom),
                witnesses: v.witnesses,
            });
        }
        let mut trivially: Vec<u32> = sq
            .m
            .elements()
            .map(|m| sq.mu.apply(m))
            .chain(sq.n.elements().map(|n| sq.nu.apply(n)))
            .collect();
        trivially.sort_unstable();
        trivially.dedup();
        self.tail.violation(
            SQC,
            ["(ii)", "(iii)", "(iv)", "(v)"],
            &sq.l,
            &sq.act_l,
            &trivially,
            |l| sq.lambda.apply(l) == 0 && sq.lambda_p.apply(l) == 0,
        )
    }
}

pub fn make_squared_complex(sc: SquaredComplex) -> Result<SquaredComplex> {
    match sc.violation() {
        Some(v) => Err(v.into()),
        None => Ok(sc),
    }
}
