//! 2-crossed modules with an abelian tail, and the passage from squared
//! complexes.

use crate::error::{Error, Result, Violation};
use crate::grp::{quotient, Subgroup};
use crate::simp::HomotopyGroup;
use crate::x2mod::cone::mapping_cone;
use crate::x2mod::two_crossed::{homotopy_groups_2cm, TwoCrossedModule};
use crate::xsq::{make_squared_complex, ChainTail, SquaredComplex};

const X2C: &str = "2-crossed complex";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCrossedComplex {
    pub base: TwoCrossedModule,
    pub tail: ChainTail,
}

impl TwoCrossedComplex {
    /// Axiom (iv) first, then (i)-(iii) on the tail.
    pub fn violation(&self) -> Option<Violation> {
        if let Some(v) = self.base.violation() {
            return Some(Violation {
                structure: X2C.into(),
                axiom: format!("(iv) {}", v.axiom),
                witnesses: v.witnesses,
            });
        }
        let b = &self.base;
        let trivially = b.d1.image().elements;
        self.tail.violation(
            X2C,
            ["(i)", "(iii)", "(ii)", "(iii)"],
            &b.l,
            &b.act_l,
            &trivially,
            |l| b.d2.apply(l) == 0,
        )
    }

    /// `πₙ`: from the base for `n ≤ 1`, `Ker ∂₂ / Im ∂₃` for `n = 2`,
    /// `Ker ∂ₙ / Im ∂ₙ₊₁` above.
    pub fn homotopy_group(&self, n: usize) -> Result<HomotopyGroup> {
        if n <= 1 {
            return Ok(homotopy_groups_2cm(&self.base)?[n].clone());
        }
        let i = n - 2;
        if i > self.tail.len() {
            return Err(Error::DepthTooShallow {
                need: n,
                have: self.tail.len() + 2,
            });
        }
        let kernel = if i == 0 { self.base.d2.kernel() } else { self.tail.boundaries[i - 1].kernel() };
        let image = match self.tail.boundaries.get(i) {
            Some(d) => d.image().elements,
            None => vec![0],
        };
        let (kg, _) = kernel.to_group();
        let pos = image
            .iter()
            .map(|&x| kernel.position(x).ok_or_else(|| Error::Shape(format!("image of d{} leaves the kernel", n + 1))))
            .collect::<Result<Vec<_>>>()?;
        let q = quotient(&kg, &Subgroup::new(kg.clone(), pos)?)?;
        Ok(HomotopyGroup::from_group(n, q.group))
    }
}

pub fn make_2crossed_complex(c: TwoCrossedComplex) -> Result<TwoCrossedComplex> {
    match c.violation() {
        Some(v) => Err(v.into()),
        None => Ok(c),
    }
}

/// `… → C₃ → L → M⋊N → P`: the mapping cone with the tail kept as is.
pub fn two_crossed_complex_from_squared(sc: &SquaredComplex) -> Result<TwoCrossedComplex> {
    let sc = make_squared_complex(sc.clone())?;
    let base = mapping_cone(&sc.square)?;
    make_2crossed_complex(TwoCrossedComplex { base, tail: sc.tail })
}
