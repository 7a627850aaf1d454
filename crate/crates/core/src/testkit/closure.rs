//! Random families of down-sets satisfying F∩, F↓ and Pr.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elemset::ElemSet;
use crate::faigle::FaigleGeometry;
use crate::poset::Poset;

/// Every down-set of `p`, or a sample of down-closures of random subsets
/// when `p` is too large to list them.
fn down_sets(p: &Poset, rng: &mut ChaCha8Rng) -> Vec<ElemSet> {
    let n = p.len();
    if n <= 12 {
        (0u64..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| p.is_down_set(s))
            .collect()
    } else {
        (0..256)
            .map(|_| {
                let s: ElemSet = (0..n).filter(|_| rng.random_bool(0.3)).collect();
                p.down_closure(&s)
            })
            .collect()
    }
}

/// Closes `family` under pairwise intersection.
fn intersection_closure(mut family: Vec<ElemSet>) -> Vec<ElemSet> {
    family.sort();
    family.dedup();
    loop {
        let mut added = Vec::new();
        for (i, x) in family.iter().enumerate() {
            for y in &family[i + 1..] {
                let z = x & y;
                if family.binary_search(&z).is_err() {
                    added.push(z);
                }
            }
        }
        if added.is_empty() {
            return family;
        }
        family.extend(added);
        family.sort();
        family.dedup();
    }
}

/// `count` unverified geometries on `p`. Each family holds `∅`, `P`, every
/// `↓u` and `⇓u`, and each further down-set independently with a
/// probability drawn per sample, and is then closed under intersection.
/// The output depends only on `p`, `count` and `seed`.
pub fn random_closure_candidates(p: &Poset, count: usize, seed: u64) -> Vec<FaigleGeometry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = down_sets(p, &mut rng);
    let mut base = vec![ElemSet::new(), p.elements()];
    for u in 0..p.len() {
        base.push(p.down_set(u).expect("in range").clone());
        base.push(p.strict_down_set(u).expect("in range"));
    }
    (0..count)
        .map(|_| {
            let density: f64 = rng.random();
            let mut family = base.clone();
            family.extend(all.iter().filter(|_| rng.random_bool(density)).cloned());
            FaigleGeometry::new(p.clone(), intersection_closure(family))
                .expect("down-sets of p stay in range")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_request() {
        assert!(random_closure_candidates(&Poset::chain(3), 0, 1).is_empty());
    }

    #[test]
    fn reproducible_and_well_formed() {
        let p = Poset::from_covers(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let a = random_closure_candidates(&p, 30, 7);
        let b = random_closure_candidates(&p, 30, 7);
        assert_eq!(a, b);
        for g in &a {
            let r = g.check_axioms();
            assert!(r.holds_cap() && r.holds_down() && r.holds_pr());
        }
        let c = random_closure_candidates(&p, 30, 8);
        assert_ne!(a, c);
    }

    #[test]
    fn both_outcomes_occur() {
        let p = Poset::antichain(3);
        let samples = random_closure_candidates(&p, 200, 3);
        let cp: Vec<bool> = samples.iter().map(|g| g.check_axioms().holds_cp()).collect();
        assert!(cp.iter().any(|&x| x) && cp.iter().any(|&x| !x));
    }
}
