use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to a finite group. Every higher structure holds its groups
/// through this alias so that subgroups, homs and actions can point at the
/// same table.
pub type Group = Arc<FinGroup>;

/// A finite group stored as a Cayley table on the indices `0..order`.
///
/// Index `0` is always the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FinGroup {
    /// Validates a square multiplication table and builds the group.
    ///
    /// If the identity is not at index 0 it is swapped there.
    pub fn from_table(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "table row has length {}, expected {n}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat, None)
    }

    pub fn from_table_with_labels(rows: &[Vec<u32>], labels: Vec<String>) -> Result<Self> {
        let mut g = Self::from_table(rows)?;
        if labels.len() != g.order {
            return Err(Error::Shape(format!(
                "{} labels for a group of order {}",
                labels.len(),
                g.order
            )));
        }
        // from_table may have swapped the identity into slot 0; callers that
        // pass labels are expected to have the identity there already.
        g.labels = Some(labels);
        Ok(g)
    }

    /// Builds a group from a row-major table, validating all group axioms.
    pub fn from_flat(n: usize, mut flat: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        if flat.len() != n * n {
            return Err(Error::Shape("table is not square".into()));
        }
        if let Some(bad) = flat.iter().find(|&&x| x as usize >= n) {
            return Err(Error::Shape(format!("entry {bad} out of range for order {n}")));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| flat[e * n + a] == a as u32 && flat[a * n + e] == a as u32))
            .ok_or(Error::NoIdentity)?;
        let mut labels = labels;
        if e != 0 {
            flat = swap_labels(n, &flat, 0, e);
            if let Some(l) = labels.as_mut() {
                l.swap(0, e);
            }
        }
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| flat[a * n + b] == 0 && flat[b * n + a] == 0)
                .ok_or(Error::NoInverse(a as u32))?;
            inverse[a] = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b] as usize;
                for c in 0..n {
                    let bc = flat[b * n + c] as usize;
                    if flat[ab * n + c] != flat[a * n + bc] {
                        return Err(Error::NotAssociative {
                            a: a as u32,
                            b: b as u32,
                            c: c as u32,
                        });
                    }
                }
            }
        }
        Ok(FinGroup {
            order: n,
            table: flat,
            inverse,
            labels,
        })
    }

    pub fn trivial() -> Self {
        FinGroup {
            order: 1,
            table: vec![0],
            inverse: vec![0],
            labels: Some(vec!["1".into()]),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let flat = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "r".to_string(),
                _ => format!("r{k}"),
            })
            .collect();
        Self::from_flat(n, flat, Some(labels)).expect("cyclic group table")
    }

    /// Dihedral group of order `2n`; element `k + n*j` is `r^k s^j`.
    pub fn dihedral(n: usize) -> Self {
        let order = 2 * n;
        let mut flat = vec![0u32; order * order];
        for x in 0..order {
            let (a, b) = (x % n, x / n);
            for y in 0..order {
                let (c, d) = (y % n, y / n);
                let k = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                flat[x * order + y] = (k + n * ((b + d) % 2)) as u32;
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (k, j) = (x % n, x / n);
                let r = match k {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r{k}"),
                };
                match (r.is_empty(), j) {
                    (true, 0) => "1".to_string(),
                    (false, 0) => r,
                    (_, _) => format!("{r}s"),
                }
            })
            .collect();
        Self::from_flat(order, flat, Some(labels)).expect("dihedral group table")
    }

    /// Quaternion group: indices 0..8 are `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion() -> Self {
        // unit (0..4 = 1,i,j,k) products with sign
        const MUL: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let mut flat = vec![0u32; 64];
        for x in 0..8 {
            for y in 0..8 {
                let (ux, sx) = (x / 2, x % 2 == 1);
                let (uy, sy) = (y / 2, y % 2 == 1);
                let (u, s) = MUL[ux][uy];
                let neg = sx ^ sy ^ s;
                flat[x * 8 + y] = (2 * u + neg as usize) as u32;
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_flat(8, flat, Some(labels)).expect("quaternion table")
    }

    /// Direct product; element `a + |A| * b` is `(a, b)`.
    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut flat = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = a.mul((x % na) as u32, (y % na) as u32) as usize;
                let q = b.mul((x / na) as u32, (y / na) as u32) as usize;
                flat[x * n + y] = (p + na * q) as u32;
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.label((x % na) as u32), b.label((x / na) as u32)))
            .collect();
        Self::from_flat(n, flat, Some(labels)).expect("direct product table")
    }

    /// Builds a group from an already-closed table without re-checking
    /// associativity. Only for tables produced by a structure-preserving
    /// construction inside this crate.
    pub(crate) fn from_flat_trusted(n: usize, flat: Vec<u32>, labels: Option<Vec<String>>) -> Self {
        debug_assert_eq!(flat.len(), n * n);
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let row = &flat[a * n..(a + 1) * n];
            inverse[a] = row.iter().position(|&x| x == 0).expect("inverse exists") as u32;
        }
        FinGroup {
            order: n,
            table: flat,
            inverse,
            labels,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    /// `g h g^-1`
    #[inline]
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `[a, b] = a b a^-1 b^-1`
    #[inline]
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn mul_all(&self, xs: &[u32]) -> u32 {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_witness().is_none()
    }

    pub fn abelian_witness(&self) -> Option<(u32, u32)> {
        for a in self.elements() {
            for b in a + 1..self.order as u32 {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: u32) -> String {
        match &self.labels {
            Some(l) => l[a as usize].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Self {
        if let Some(l) = &labels {
            assert_eq!(l.len(), self.order);
        }
        self.labels = labels;
        self
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// A generating set chosen greedily, preferring elements of large order.
    pub fn generators(&self) -> Vec<u32> {
        let mut by_order: Vec<u32> = self.elements().skip(1).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut count = 1;
        for a in by_order {
            if count == self.order {
                break;
            }
            if inside[a as usize] {
                continue;
            }
            gens.push(a);
            let sub = self.closure(&gens);
            count = sub.len();
            for x in sub {
                inside[x as usize] = true;
            }
        }
        gens
    }
}

fn swap_labels(n: usize, flat: &[u32], a: usize, b: usize) -> Vec<u32> {
    let relabel = |x: usize| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    };
    let mut out = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let z = flat[relabel(x) * n + relabel(y)] as usize;
            out[x * n + y] = relabel(z) as u32;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2() {
        let t = FinGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let c2 = FinGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.inv(1), 1);
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C2 with the identity stored at index 1
        let g = FinGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn d4_has_two_elements_of_order_four() {
        let d4 = FinGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        let fours = d4.elements().filter(|&a| d4.element_order(a) == 4).count();
        assert_eq!(fours, 2);
    }

    #[test]
    fn errors_name_witnesses() {
        assert_eq!(
            FinGroup::from_table(&[vec![0, 0], vec![0, 0]]),
            Err(Error::NoIdentity)
        );
        // identity 0, but 1*1 = 1 so 1 has no inverse
        let err = FinGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NoInverse(1));
        // a Latin square of order 5 with every element an involution: a loop,
        // not a group
        let t = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
        assert!(matches!(FinGroup::from_table(&t), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn quaternion_is_nonabelian_with_unique_involution() {
        let q = FinGroup::quaternion();
        assert!(!q.is_abelian());
        assert_eq!(q.elements().filter(|&a| q.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn generators_generate() {
        for g in [FinGroup::dihedral(4), FinGroup::quaternion(), FinGroup::cyclic(6)] {
            let gens = g.generators();
            assert_eq!(g.closure(&gens).len(), g.order());
        }
    }
}
