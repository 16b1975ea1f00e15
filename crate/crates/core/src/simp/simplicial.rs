use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simp::level::Level;

/// Top level replaced by its Moore group: used when `G_k` is too large to
/// enumerate but `NG_k` and `∂_k` are still needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreCap {
    /// Tuples of `NG_k` over the ambient group, `width` entries each.
    pub normal: Vec<Vec<u32>>,
    /// `∂_k = d_k` of each element, as indices into `G_{k-1}`.
    pub boundary: Vec<u32>,
    /// Order of the full level `G_k`, when known.
    pub full_order: Option<u128>,
}

/// Levels `G_0..G_k` with faces `faces[n][i]: G_n → G_{n-1}` (`n ≥ 1`) and
/// degeneracies `degens[n][i]: G_n → G_{n+1}` (`n < k`), all stored as index
/// tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSimplicialGroup {
    pub levels: Vec<Arc<Level>>,
    pub faces: Vec<Vec<Vec<u32>>>,
    pub degens: Vec<Vec<Vec<u32>>>,
    pub cap: Option<MooreCap>,
}

fn violation(relation: String, level: usize, element: u32) -> Error {
    Error::IdentityViolation {
        relation,
        level,
        element,
    }
}

impl TruncatedSimplicialGroup {
    /// Highest level with data, including a capped top level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1 + self.cap.is_some() as usize
    }

    /// Highest fully enumerated level.
    pub fn full_depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n]
    }

    #[inline]
    pub fn d(&self, n: usize, i: usize, x: u32) -> u32 {
        self.faces[n][i][x as usize]
    }

    #[inline]
    pub fn s(&self, n: usize, i: usize, x: u32) -> u32 {
        self.degens[n][i][x as usize]
    }

    pub fn need_depth(&self, need: usize) -> Result<()> {
        if self.depth() < need {
            return Err(Error::DepthTooShallow {
                need,
                have: self.depth(),
            });
        }
        Ok(())
    }

    fn shape_check(&self) -> Result<()> {
        let k = self.full_depth();
        if self.faces.len() != k + 1 || self.degens.len() != k {
            return Err(Error::Shape("face/degeneracy lists do not match the depth".into()));
        }
        if !self.faces[0].is_empty() {
            return Err(Error::Shape("level 0 has no faces".into()));
        }
        for n in 1..=k {
            if self.faces[n].len() != n + 1 {
                return Err(Error::Shape(format!("level {n} needs {} faces", n + 1)));
            }
            for f in &self.faces[n] {
                if f.len() != self.levels[n].order()
                    || f.iter().any(|&x| x as usize >= self.levels[n - 1].order())
                {
                    return Err(Error::Shape(format!("a face on level {n} has the wrong shape")));
                }
            }
        }
        for n in 0..k {
            if self.degens[n].len() != n + 1 {
                return Err(Error::Shape(format!("level {n} needs {} degeneracies", n + 1)));
            }
            for f in &self.degens[n] {
                if f.len() != self.levels[n].order()
                    || f.iter().any(|&x| x as usize >= self.levels[n + 1].order())
                {
                    return Err(Error::Shape(format!("a degeneracy on level {n} has the wrong shape")));
                }
            }
        }
        Ok(())
    }

    /// Homomorphism property of every face and degeneracy, checked on a
    /// generating set of the source: `f(gx) = f(g)f(x)` for all generators
    /// `g` and all `x`.
    pub fn check_homs(&self) -> Result<()> {
        let k = self.full_depth();
        for n in 0..=k {
            let src = &self.levels[n];
            let gens = src.generators();
            let mut maps: Vec<(String, &Vec<u32>, &Level)> = Vec::new();
            if n >= 1 {
                for (i, f) in self.faces[n].iter().enumerate() {
                    maps.push((format!("d{i} is a homomorphism"), f, &self.levels[n - 1]));
                }
            }
            if n < k {
                for (i, f) in self.degens[n].iter().enumerate() {
                    maps.push((format!("s{i} is a homomorphism"), f, &self.levels[n + 1]));
                }
            }
            for (name, f, dst) in maps {
                for &g in &gens {
                    for x in src.elements() {
                        let lhs = f[src.mul(g, x) as usize];
                        if lhs != dst.mul(f[g as usize], f[x as usize]) {
                            return Err(violation(name, n, x));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every simplicial identity expressible within the enumerated window.
    pub fn check_identities(&self) -> Result<()> {
        let k = self.full_depth();
        // dᵢdⱼ = dⱼ₋₁dᵢ, i < j, on level n ≥ 2
        for n in 2..=k {
            for j in 1..=n {
                for i in 0..j {
                    for x in self.levels[n].elements() {
                        if self.d(n - 1, i, self.d(n, j, x)) != self.d(n - 1, j - 1, self.d(n, i, x)) {
                            return Err(violation(format!("d{i}d{j} = d{}d{i}", j - 1), n, x));
                        }
                    }
                }
            }
        }
        // sᵢsⱼ = sⱼ₊₁sᵢ, i ≤ j, on level n with n + 2 ≤ k
        for n in 0..k.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in self.levels[n].elements() {
                        if self.s(n + 1, i, self.s(n, j, x)) != self.s(n + 1, j + 1, self.s(n, i, x)) {
                            return Err(violation(format!("s{i}s{j} = s{}s{i}", j + 1), n, x));
                        }
                    }
                }
            }
        }
        // mixed relations on level n, sⱼ: G_n → G_{n+1}, then dᵢ: G_{n+1} → G_n
        for n in 0..k {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in self.levels[n].elements() {
                        let lhs = self.d(n + 1, i, self.s(n, j, x));
                        let (rhs, rel) = if i < j {
                            (self.s(n - 1, j - 1, self.d(n, i, x)), format!("d{i}s{j} = s{}d{i}", j - 1))
                        } else if i == j || i == j + 1 {
                            (x, format!("d{i}s{j} = id"))
                        } else {
                            (self.s(n - 1, j, self.d(n, i - 1, x)), format!("d{i}s{j} = s{j}d{}", i - 1))
                        };
                        if lhs != rhs {
                            return Err(violation(rel, n, x));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of the levels, hom property of the operators, and all
    /// identities.
    pub fn validate(&self) -> Result<()> {
        self.shape_check()?;
        for (n, l) in self.levels.iter().enumerate() {
            if let Some((a, _)) = l.closure_witness() {
                return Err(violation("level is a group".into(), n, a));
            }
        }
        self.check_homs()?;
        self.check_identities()
    }
}

pub fn make_simplicial(
    levels: Vec<Arc<Level>>,
    faces: Vec<Vec<Vec<u32>>>,
    degens: Vec<Vec<Vec<u32>>>,
) -> Result<TruncatedSimplicialGroup> {
    if levels.is_empty() {
        return Err(Error::Shape("a simplicial group needs level 0".into()));
    }
    let g = TruncatedSimplicialGroup {
        levels,
        faces,
        degens,
        cap: None,
    };
    g.validate()?;
    Ok(g)
}

/// The constant simplicial group on `g` up to depth `k`.
pub fn constant(g: &crate::grp::Group, k: usize) -> TruncatedSimplicialGroup {
    let lvl = Arc::new(Level::from_group(g));
    let id: Vec<u32> = g.elements().collect();
    TruncatedSimplicialGroup {
        levels: vec![lvl; k + 1],
        faces: (0..=k).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect(),
        degens: (0..k).map(|n| vec![id.clone(); n + 1]).collect(),
        cap: None,
    }
}
