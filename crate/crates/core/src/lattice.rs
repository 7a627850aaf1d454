//! Finite lattices with materialized join and meet tables.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::poset::{check_index, Poset};

/// A finite lattice on the elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    order: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl Lattice {
    /// Builds a lattice from `n` elements and cover pairs `(lower, upper)`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Lattice> {
        Self::from_poset(Poset::from_covers(n, covers)?)
    }

    /// Checks that every pair has a least upper and greatest lower bound and
    /// fills the tables.
    pub fn from_poset(order: Poset) -> Result<Lattice> {
        let n = order.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let ub = order.up(x) & order.up(y);
                let lub = ub
                    .iter()
                    .find(|&u| order.up(u) == &ub)
                    .ok_or(Error::NotALattice(x, y))?;
                let lb = order.down(x) & order.down(y);
                let glb = lb
                    .iter()
                    .find(|&l| order.down(l) == &lb)
                    .ok_or(Error::NotALattice(x, y))?;
                join[x * n + y] = lub;
                join[y * n + x] = lub;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        let lower = (0..n).map(|x| order.lower_covers(x)).collect();
        let upper = (0..n).map(|x| order.upper_covers(x)).collect();
        Ok(Lattice {
            order,
            join,
            meet,
            bottom,
            top,
            lower,
            upper,
        })
    }

    pub fn chain(n: usize) -> Lattice {
        Self::from_poset(Poset::chain(n)).expect("a nonempty chain is a lattice")
    }

    /// The Boolean lattice of all subsets of a `k`-element set; element `i`
    /// is the subset whose bitmask is `i`.
    pub fn boolean(k: usize) -> Lattice {
        let n = 1usize << k;
        let order = Poset::from_relation(n, |x, y| x & y == x).expect("subset order");
        Self::from_poset(order).expect("a power set is a lattice")
    }

    /// `M_k`: a bottom, `k` pairwise incomparable atoms, and a top.
    pub fn m(k: usize) -> Lattice {
        let top = k + 1;
        let covers: Vec<_> = (1..=k).flat_map(|a| [(0, a), (a, top)]).collect();
        Self::from_covers(k + 2, &covers).expect("M_k is a lattice")
    }

    /// The pentagon `N_5`: `0 < a < c < 1` and `0 < b < 1`, numbered
    /// `0, a = 1, b = 2, c = 3, 1 = 4`.
    pub fn n5() -> Lattice {
        Self::from_covers(5, &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]).expect("N_5")
    }

    /// Direct product of two chains with `p` and `q` elements; element
    /// `(i, j)` is numbered `i * q + j`.
    pub fn chain_product(p: usize, q: usize) -> Lattice {
        let order =
            Poset::from_relation(p * q, |x, y| x / q <= y / q && x % q <= y % q).expect("product order");
        Self::from_poset(order).expect("a product of chains is a lattice")
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// Lattices are never empty; provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    /// Join of any collection; the join of nothing is the bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of any collection; the meet of nothing is the top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.leq(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.order.lt(x, y)
    }

    /// Whether `y` covers `x`.
    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].contains(&y)
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.upper[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn name(&self, x: usize) -> String {
        self.order.name(x)
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        check_index(x, self.len())
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.lower[x].len() == 1
    }

    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.upper[x].len() == 1
    }

    /// Nonzero elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> ElemSet {
        self.elements().filter(|&x| self.is_join_irreducible(x)).collect()
    }

    /// Non-top elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> ElemSet {
        self.elements().filter(|&x| self.is_meet_irreducible(x)).collect()
    }

    pub fn atoms(&self) -> ElemSet {
        self.upper[self.bottom].iter().copied().collect()
    }

    /// The join-irreducible elements in ascending index order.
    pub fn jir_elements(&self) -> Vec<usize> {
        self.join_irreducibles().to_vec()
    }

    /// The poset of join-irreducibles; its element `i` is the `i`-th entry of
    /// [`Lattice::jir_elements`].
    pub fn jir_poset(&self) -> Poset {
        self.order.induced(&self.jir_elements())
    }

    /// Length of the longest chain from bottom to every element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for x in self.order.linear_extension() {
            h[x] = self.lower[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Number of edges in a longest chain.
    pub fn length(&self) -> usize {
        self.heights()[self.top]
    }

    /// Whether every maximal chain has the same length.
    pub fn has_uniform_chains(&self) -> bool {
        // shortest and longest distance from the bottom agree everywhere
        let mut shortest = vec![0; self.len()];
        for x in self.order.linear_extension() {
            shortest[x] = self.lower[x].iter().map(|&y| shortest[y] + 1).min().unwrap_or(0);
        }
        shortest == self.heights()
    }

    pub fn is_chain(&self) -> bool {
        self.elements().all(|x| self.upper[x].len() <= 1)
    }

    /// `x ∧ y ≺ x` implies `y ≺ x ∨ y`, for all `x`, `y`.
    pub fn is_semimodular(&self) -> bool {
        self.semimodularity_violation().is_none()
    }

    /// A pair `(x, y)` with `x ∧ y ≺ x` but not `y ≺ x ∨ y`.
    pub fn semimodularity_violation(&self) -> Option<(usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                if self.is_cover(self.meet(x, y), x) && !self.is_cover(y, self.join(x, y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Semimodular and every join-irreducible is an atom.
    pub fn is_geometric(&self) -> bool {
        self.is_semimodular() && self.join_irreducibles() == self.atoms()
    }

    /// The join-irreducibles have width at most two.
    pub fn is_slim(&self) -> bool {
        self.jir_poset().width() <= 2
    }

    /// Semimodular, and the join-irreducibles split into two nonempty chains
    /// with no comparabilities across.
    pub fn is_slim_rectangular(&self) -> bool {
        self.is_semimodular() && self.rectangular_split().is_some()
    }

    /// A split `(C, D)` of the join-irreducibles (as lattice elements) into two
    /// nonempty chains that are pairwise incomparable across, searching all
    /// two-colourings with the first join-irreducible in `C`.
    pub fn rectangular_split(&self) -> Option<(ElemSet, ElemSet)> {
        let jir = self.jir_elements();
        let k = jir.len();
        if k < 2 {
            return None;
        }
        let p = &self.order;
        for mask in 0u64..1 << (k - 1) {
            // bit i of mask places jir[i + 1] in D
            let (mut c, mut d) = (ElemSet::singleton(jir[0]), ElemSet::new());
            for (i, &x) in jir.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    d.insert(x);
                } else {
                    c.insert(x);
                }
            }
            if d.is_empty() || !p.is_chain(&c) || !p.is_chain(&d) {
                continue;
            }
            if c.iter().all(|x| d.iter().all(|y| !p.comparable(x, y))) {
                return Some((c, d));
            }
        }
        None
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// `0 < a, b < t < 1` with `a ∥ b`: B2 with a pendant top.
    /// Numbered `0, a = 1, b = 2, t = 3, 1 = 4`.
    pub(crate) fn pendant_top() -> Lattice {
        Lattice::from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    /// The six-element "hexagon": `0 < a < c < 1`, `0 < b < d < 1`.
    fn hexagon() -> Result<Lattice> {
        Lattice::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)])
    }

    #[test]
    fn chain_tables() {
        let c = Lattice::chain(3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(c.join(x, y), x.max(y));
                assert_eq!(c.meet(x, y), x.min(y));
            }
        }
        assert_eq!((c.bottom(), c.top()), (0, 2));
    }

    #[test]
    fn diamond_is_b2() {
        let d = Lattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(d.join(1, 2), 3);
        assert_eq!(d.meet(1, 2), 0);
        assert_eq!(d, Lattice::boolean(2));
    }

    #[test]
    fn hexagon_is_a_lattice() {
        // oracle: brute-force all 15 unordered pairs for a unique lub and glb
        let l = hexagon().unwrap();
        let p = l.order();
        for x in 0..6 {
            for y in x + 1..6 {
                let ub: Vec<_> = (0..6).filter(|&u| p.leq(x, u) && p.leq(y, u)).collect();
                let least: Vec<_> = ub.iter().filter(|&&u| ub.iter().all(|&v| p.leq(u, v))).collect();
                assert_eq!(least.len(), 1);
                assert_eq!(*least[0], l.join(x, y));
            }
        }
        assert_eq!(l.join(1, 4), 5);
        assert_eq!(l.meet(3, 2), 0);
    }

    #[test]
    fn non_lattices_are_rejected() {
        // two incomparable maxima
        assert_eq!(
            Lattice::from_covers(3, &[(0, 1), (0, 2)]),
            Err(Error::NotALattice(1, 2))
        );
        // bowtie: a, b both below c, d
        let r = Lattice::from_covers(
            6,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
        );
        assert!(matches!(r, Err(Error::NotALattice(..))));
        assert!(matches!(
            Lattice::from_covers(2, &[(0, 1), (1, 0)]),
            Err(Error::NotAPoset(_))
        ));
        assert_eq!(Lattice::from_covers(0, &[]), Err(Error::EmptyLattice));
    }

    #[test]
    fn irreducibles() {
        let c3 = Lattice::chain(3);
        assert_eq!(c3.join_irreducibles(), ElemSet::from([1, 2]));
        assert_eq!(c3.meet_irreducibles(), ElemSet::from([0, 1]));
        assert_eq!(c3.atoms(), ElemSet::from([1]));

        let b2 = Lattice::boolean(2);
        assert_eq!(b2.join_irreducibles(), ElemSet::from([1, 2]));
        assert_eq!(b2.atoms(), ElemSet::from([1, 2]));
        assert_eq!(b2.meet_irreducibles(), ElemSet::from([1, 2]));

        let m3 = Lattice::m(3);
        assert_eq!(m3.join_irreducibles(), ElemSet::from([1, 2, 3]));
        assert_eq!(m3.atoms(), m3.join_irreducibles());

        let one = Lattice::chain(1);
        assert!(one.join_irreducibles().is_empty());
        assert!(one.meet_irreducibles().is_empty());
    }

    #[test]
    fn lengths() {
        assert_eq!(Lattice::chain(4).length(), 3);
        assert_eq!(Lattice::boolean(2).length(), 2);
        assert_eq!(Lattice::n5().length(), 3);
        assert!(!Lattice::n5().has_uniform_chains());
        assert!(Lattice::m(3).has_uniform_chains());
    }

    #[test]
    fn semimodularity() {
        assert!(Lattice::chain(5).is_semimodular());
        assert!(Lattice::m(3).is_semimodular());
        let n5 = Lattice::n5();
        assert!(!n5.is_semimodular());
        // b ∧ a = 0 ≺ b, but a ∨ b = 1 does not cover a
        assert!(n5.is_cover(n5.meet(2, 1), 2));
        assert!(!n5.is_cover(1, n5.join(2, 1)));
        let (x, y) = n5.semimodularity_violation().unwrap();
        assert!(n5.is_cover(n5.meet(x, y), x) && !n5.is_cover(y, n5.join(x, y)));
    }

    #[test]
    fn structural_predicates() {
        let b2 = Lattice::boolean(2);
        assert!(b2.is_geometric() && b2.is_slim() && b2.is_slim_rectangular());

        let c3 = Lattice::chain(3);
        assert!(!c3.is_geometric());
        assert!(c3.is_slim());
        assert!(!c3.is_slim_rectangular());

        let m3 = Lattice::m(3);
        assert!(m3.is_geometric());
        assert!(!m3.is_slim());

        // degenerate: the one-element lattice is slim but not rectangular
        let one = Lattice::chain(1);
        assert!(one.is_slim() && !one.is_slim_rectangular());

        assert!(Lattice::chain_product(2, 3).is_slim_rectangular());
        assert!(!pendant_top().is_slim_rectangular());
        assert!(pendant_top().is_semimodular() && pendant_top().is_slim());
    }

    #[test]
    fn joins_are_lattice_operations() {
        for l in [
            Lattice::boolean(3),
            Lattice::n5(),
            Lattice::m(4),
            hexagon().unwrap(),
        ] {
            for x in l.elements() {
                assert_eq!(l.join(x, x), x);
                for y in l.elements() {
                    assert_eq!(l.join(x, y), l.join(y, x));
                    assert_eq!(l.meet(x, l.join(x, y)), x);
                    assert_eq!(l.join(x, l.meet(x, y)), x);
                    for z in l.elements() {
                        assert_eq!(l.join(x, l.join(y, z)), l.join(l.join(x, y), z));
                        if l.leq(y, z) {
                            assert!(l.leq(l.join(x, y), l.join(x, z)));
                            assert!(l.leq(l.meet(x, y), l.meet(x, z)));
                        }
                    }
                }
            }
        }
    }
}
