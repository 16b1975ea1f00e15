use crate::error::{Error, Result};
use crate::grp::group::FinGroup;

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

/// Elementary divisors (prime powers) of a finite abelian group, ascending.
///
/// For each prime `p`, the number of elements killed by `p^k` is
/// `p^(Σ min(k, e_i))`; the exponents `e_i` are read off from the jumps.
pub fn abelian_invariants(g: &FinGroup) -> Result<Vec<u64>> {
    if let Some((a, b)) = g.abelian_witness() {
        return Err(Error::NotAbelian { a, b });
    }
    let orders: Vec<u64> = g.elements().map(|a| g.element_order(a) as u64).collect();
    let mut out = Vec::new();
    for p in prime_factors(g.order() as u64) {
        // r[k] = log_p #{x : x^(p^k) = 1}
        let mut r = vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let mut e = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                e += 1;
            }
            if e == *r.last().unwrap() {
                break;
            }
            r.push(e);
        }
        // number of cyclic factors of exponent >= k is r[k] - r[k-1]
        let ge: Vec<u32> = (1..r.len()).map(|k| r[k] - r[k - 1]).collect();
        for k in 1..=ge.len() {
            let next = ge.get(k).copied().unwrap_or(0);
            let exactly = ge[k - 1] - next;
            for _ in 0..exactly {
                out.push(p.pow(k as u32));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::hom::{quotient, Subgroup};
    use std::sync::Arc;

    #[test]
    fn examples() {
        assert_eq!(abelian_invariants(&FinGroup::trivial()).unwrap(), Vec::<u64>::new());
        assert_eq!(abelian_invariants(&FinGroup::cyclic(2)).unwrap(), vec![2]);
        let d4 = Arc::new(FinGroup::dihedral(4));
        let q = quotient(&d4, &Subgroup::generated(&d4, &[2])).unwrap();
        assert_eq!(abelian_invariants(&q.group).unwrap(), vec![2, 2]);
    }

    #[test]
    fn mixed_primes_and_powers() {
        assert_eq!(abelian_invariants(&FinGroup::cyclic(12)).unwrap(), vec![3, 4]);
        let c2 = FinGroup::cyclic(2);
        let c4 = FinGroup::cyclic(4);
        let g = FinGroup::direct_product(&c2, &c4);
        assert_eq!(abelian_invariants(&g).unwrap(), vec![2, 4]);
        let g = FinGroup::direct_product(&FinGroup::direct_product(&c2, &c2), &c2);
        assert_eq!(abelian_invariants(&g).unwrap(), vec![2, 2, 2]);
    }

    #[test]
    fn nonabelian_is_rejected() {
        assert!(matches!(
            abelian_invariants(&FinGroup::dihedral(3)),
            Err(Error::NotAbelian { .. })
        ));
    }
}
