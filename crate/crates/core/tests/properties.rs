//! Invariants checked on lattices drawn from the enumerator.

use std::sync::OnceLock;

use faigle::congruence::restriction;
use faigle::geometric_extension::lowering_step;
use faigle::rectangular_extension::rect_step;
use faigle::testkit::{enumerate_lattices, random_closure_candidates, EnumConfig, LatticeFilter};
use faigle::{
    all_congruences, corner_insert, delta, epsilon_extend, extend_to_geometric, geom_of_lattice,
    principal_congruence, Embedding, Lattice, Poset,
};
use proptest::prelude::*;

fn all_up_to_eight() -> &'static [Lattice] {
    static CACHE: OnceLock<Vec<Lattice>> = OnceLock::new();
    CACHE.get_or_init(|| enumerate_lattices(&EnumConfig::new(8, LatticeFilter::All)).unwrap())
}

fn semimodular() -> Vec<&'static Lattice> {
    all_up_to_eight().iter().filter(|l| l.is_semimodular()).collect()
}

fn slim_non_chains() -> Vec<&'static Lattice> {
    all_up_to_eight()
        .iter()
        .filter(|l| l.is_semimodular() && l.is_slim() && !l.is_chain())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruences_are_stable_and_convex(i in any::<prop::sample::Index>()) {
        let l = i.get(all_up_to_eight());
        for theta in all_congruences(l) {
            prop_assert!(theta.is_congruence_of(l));
            prop_assert!(theta.has_convex_sublattice_blocks(l));
            // translations u ∨ · and u ∧ · keep related pairs related
            for x in l.elements() {
                for y in l.elements().filter(|&y| theta.related(x, y)) {
                    for u in l.elements() {
                        prop_assert!(theta.related(l.join(u, x), l.join(u, y)));
                        prop_assert!(theta.related(l.meet(u, x), l.meet(u, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn principal_congruence_is_least(i in any::<prop::sample::Index>(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let l = i.get(all_up_to_eight());
        let (x, y) = (x.index(l.len()), y.index(l.len()));
        let con = principal_congruence(l, x, y).unwrap();
        for theta in all_congruences(l) {
            prop_assert_eq!(theta.related(x, y), con.refines(&theta));
        }
    }

    #[test]
    fn restrictions_along_corners_are_congruences(i in any::<prop::sample::Index>()) {
        let l = i.get(all_up_to_eight());
        let corners: Vec<_> = l.covers().into_iter()
            .flat_map(|(a, c)| l.upper_covers(c).iter().map(move |&b| (a, c, b)).collect::<Vec<_>>())
            .filter(|&(a, _, b)| l.is_meet_irreducible(a) && l.is_join_irreducible(b))
            .collect();
        for (a, c, b) in corners {
            let (k, data) = corner_insert(l, a, c, b).unwrap();
            for theta in all_congruences(&k) {
                let r = restriction(&theta, &data.embedding).unwrap();
                prop_assert!(r.is_congruence_of(l));
            }
            let cons = all_congruences(l);
            for beta in &cons {
                for gamma in &cons {
                    if beta.refines(gamma) {
                        let (eb, eg) = (epsilon_extend(&data, beta).unwrap(), epsilon_extend(&data, gamma).unwrap());
                        prop_assert!(eb.refines(&eg));
                    }
                }
            }
        }
    }

    #[test]
    fn lowering_steps_shrink_the_order(i in any::<prop::sample::Index>()) {
        let sm = semimodular();
        let l = *i.get(&sm);
        let g = geom_of_lattice(l).unwrap();
        for a in faigle::geometric_extension::lowering_candidates(&g).unwrap() {
            let step = lowering_step(&g, a).unwrap();
            prop_assert!(step.k_after < step.k_before);
            prop_assert!(step.n.iter().all(|x| !g.is_flat(x)));
            let k = step.geometry.lattice_of_flats().unwrap();
            prop_assert!(k.is_semimodular());
            prop_assert_eq!(k.length(), l.length());
        }
    }

    #[test]
    fn geometric_extension_is_a_cover_preserving_sublattice(i in any::<prop::sample::Index>()) {
        let sm = semimodular();
        let l = *i.get(&sm);
        let ext = extend_to_geometric(l).unwrap();
        prop_assert!(ext.embedding.is_cover_preserving_sublattice());
        prop_assert_eq!(ext.lattice.atoms().len(), l.join_irreducibles().len());
    }

    #[test]
    fn rect_steps_keep_down_sets_away_from_a(i in any::<prop::sample::Index>()) {
        let slim = slim_non_chains();
        let l = *i.get(&slim);
        let pair = delta(l).unwrap();
        prop_assume!(pair.delta > 0);
        let (k, step) = rect_step(l, &pair).unwrap();
        let p = l.jir_poset();
        for d in (0..p.len()).filter(|&d| d != step.a) {
            prop_assert_eq!(step.q.down_set(d).unwrap(), p.down_set(d).unwrap());
        }
        prop_assert!(step.q.down_set(step.a).unwrap().is_proper_subset(p.down_set(step.a).unwrap()));
        prop_assert_eq!(k.len(), l.len() + 1);
        prop_assert!(step.delta_after < step.delta_before);
        prop_assert!(k.is_join_irreducible(step.z2) && k.is_meet_irreducible(step.z2));
        prop_assert_eq!(all_congruences(&k).len(), all_congruences(l).len());
    }

    #[test]
    fn closure_candidates_satisfy_the_structural_axioms(seed in any::<u64>(), n in 1usize..6) {
        let p = Poset::antichain(n);
        for g in random_closure_candidates(&p, 5, seed) {
            let r = g.check_axioms();
            prop_assert!(r.holds_cap() && r.holds_down() && r.holds_pr());
            prop_assert_eq!(r.holds_cp(), r.holds_fep());
        }
    }
}

#[test]
fn identity_is_congruence_preserving() {
    for l in all_up_to_eight().iter().take(40) {
        assert!(faigle::is_congruence_preserving_extension(&Embedding::identity(l)).unwrap());
    }
}
