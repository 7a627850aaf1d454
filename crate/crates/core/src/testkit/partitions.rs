//! Congruences by filtering every set partition.

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

const LIMIT: usize = 8;

/// Every partition of the elements of `l` compatible with join and meet,
/// checked pair by pair on the definition. Partitions are generated as
/// restricted growth strings. Limited to 8 elements.
pub fn congruences_by_partition_filter(l: &Lattice) -> Result<Vec<Congruence>> {
    let n = l.len();
    if n > LIMIT {
        return Err(Error::BoundExceeded {
            requested: n,
            limit: LIMIT,
        });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        if compatible(l, &rgs) {
            out.push(Congruence::from_block_labels(&rgs));
        }
        // advance to the next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            if rgs[i] <= rgs[..i].iter().copied().max().unwrap_or(0) {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|r| *r = 0);
                break;
            }
        }
    }
}

/// `x θ y` and `u θ v` imply `x ∨ u θ y ∨ v` and `x ∧ u θ y ∧ v`.
fn compatible(l: &Lattice, block: &[usize]) -> bool {
    let n = l.len();
    for x in 0..n {
        for y in (x..n).filter(|&y| block[x] == block[y]) {
            for u in 0..n {
                for v in (u..n).filter(|&v| block[u] == block[v]) {
                    if block[l.join(x, u)] != block[l.join(y, v)]
                        || block[l.meet(x, u)] != block[l.meet(y, v)]
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::all_congruences;
    use std::collections::BTreeSet;

    #[test]
    fn chains() {
        assert_eq!(
            congruences_by_partition_filter(&Lattice::chain(2)).unwrap().len(),
            2
        );
        assert_eq!(
            congruences_by_partition_filter(&Lattice::chain(3)).unwrap().len(),
            4
        );
    }

    #[test]
    fn pentagon_agrees() {
        let l = Lattice::n5();
        let a: BTreeSet<_> = congruences_by_partition_filter(&l).unwrap().into_iter().collect();
        let b: BTreeSet<_> = all_congruences(&l).into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn bound() {
        assert!(congruences_by_partition_filter(&Lattice::chain(9)).is_err());
    }
}
