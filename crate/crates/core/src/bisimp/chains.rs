//! Nerve operators on chains of arrows given as tuples.
//!
//! An arrow is a `w`-tuple over a finite group; source and target act
//! componentwise through endomorphism tables. A chain of length `n ≥ 1` is the
//! concatenation of `n` arrows with `t(fᵢ) = s(fᵢ₊₁)`; a chain of length 0 is
//! a single object.

use std::collections::HashMap;

use crate::grp::FinGroup;
use crate::simp::Level;

#[derive(Clone, Copy)]
pub(crate) struct ChainOps<'a> {
    pub g: &'a FinGroup,
    pub w: usize,
    pub s: &'a [u32],
    pub t: &'a [u32],
}

impl<'a> ChainOps<'a> {
    fn arrow<'b>(&self, c: &'b [u32], i: usize) -> &'b [u32] {
        &c[i * self.w..(i + 1) * self.w]
    }

    pub fn src(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.s[x as usize]).collect()
    }

    pub fn tgt(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.t[x as usize]).collect()
    }

    /// `g ∘ f = g s(g)⁻¹ f`, componentwise.
    fn compose(&self, f: &[u32], g: &[u32]) -> Vec<u32> {
        f.iter()
            .zip(g)
            .map(|(&a, &b)| self.g.mul_all(&[b, self.g.inv(self.s[b as usize]), a]))
            .collect()
    }

    pub fn face(&self, n: usize, i: usize, c: &[u32]) -> Vec<u32> {
        let w = self.w;
        if n == 1 {
            return if i == 0 { self.tgt(c) } else { self.src(c) };
        }
        if i == 0 {
            c[w..].to_vec()
        } else if i == n {
            c[..(n - 1) * w].to_vec()
        } else {
            let mut v = c[..(i - 1) * w].to_vec();
            v.extend(self.compose(self.arrow(c, i - 1), self.arrow(c, i)));
            v.extend_from_slice(&c[(i + 1) * w..]);
            v
        }
    }

    pub fn degen(&self, n: usize, i: usize, c: &[u32]) -> Vec<u32> {
        if n == 0 {
            return c.to_vec();
        }
        let obj = if i == 0 {
            self.src(self.arrow(c, 0))
        } else {
            self.tgt(self.arrow(c, i - 1))
        };
        let mut v = c[..i * self.w].to_vec();
        v.extend(obj);
        v.extend_from_slice(&c[i * self.w..]);
        v
    }

    /// All chains of length `n` whose arrows are elements of `arrows`, as a
    /// level of width `max(n, 1) · w`.
    pub fn chains(&self, arrows: &Level, n: usize) -> Level {
        let w = self.w;
        let ambient = arrows.ambient();
        if n == 0 {
            let mut flat = Vec::new();
            for a in arrows.elements() {
                flat.extend(self.src(&arrows.elem(a)));
            }
            return Level::from_tuples(ambient, w, flat);
        }
        let mut fibers: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
        for a in arrows.elements() {
            fibers.entry(self.src(&arrows.elem(a))).or_default().push(a);
        }
        let mut flat: Vec<u32> = Vec::new();
        let mut stack: Vec<u32> = Vec::with_capacity(n);
        fn go(
            ops: &ChainOps,
            arrows: &Level,
            fibers: &HashMap<Vec<u32>, Vec<u32>>,
            n: usize,
            stack: &mut Vec<u32>,
            flat: &mut Vec<u32>,
        ) {
            if stack.len() == n {
                for &a in stack.iter() {
                    flat.extend_from_slice(&arrows.elem(a));
                }
                return;
            }
            let y = ops.tgt(&arrows.elem(*stack.last().unwrap()));
            if let Some(next) = fibers.get(&y) {
                for &b in next {
                    stack.push(b);
                    go(ops, arrows, fibers, n, stack, flat);
                    stack.pop();
                }
            }
        }
        for a in arrows.elements() {
            stack.push(a);
            go(self, arrows, &fibers, n, &mut stack, &mut flat);
            stack.pop();
        }
        Level::from_tuples(ambient, n * w, flat)
    }
}
