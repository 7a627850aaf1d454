//! Finite partially ordered sets on `0..n`.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// A finite poset whose elements are the indices `0..n`.
///
/// The order relation is materialized: for every element we keep its
/// principal down-set and up-set. Labels are optional names used only for
/// input and output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
    labels: Vec<Option<String>>,
}

impl Poset {
    /// Builds the poset generated by the cover pairs `(lower, upper)`.
    ///
    /// The pairs need not be exactly the cover relation; the order is the
    /// reflexive-transitive closure of whatever is given. Cycles are rejected.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            check_index(lo, n)?;
            check_index(hi, n)?;
            if lo == hi {
                return Err(Error::NotAPoset(format!("element {lo} covers itself")));
            }
            below[hi].push(lo);
        }
        // memoized DFS; `state` 1 = on stack, 2 = done
        let mut down: Vec<ElemSet> = vec![ElemSet::new(); n];
        let mut state = vec![0u8; n];
        for start in 0..n {
            if state[start] == 0 {
                visit(start, &below, &mut state, &mut down)?;
            }
        }
        Ok(Self::from_down_sets(down))
    }

    /// Builds a poset from an explicit order relation `leq(x, y)`.
    ///
    /// The relation is validated as given: it must already be reflexive,
    /// antisymmetric and transitive.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let down: Vec<ElemSet> = (0..n).map(|y| (0..n).filter(|&x| leq(x, y)).collect()).collect();
        for x in 0..n {
            if !down[x].contains(x) {
                return Err(Error::NotAPoset(format!("not reflexive at {x}")));
            }
            for y in down[x].iter() {
                if y != x && down[y].contains(x) {
                    return Err(Error::NotAPoset(format!("{x} and {y} are mutually below")));
                }
                if !down[y].is_subset(&down[x]) {
                    return Err(Error::NotAPoset(format!("not transitive through {y} <= {x}")));
                }
            }
        }
        Ok(Self::from_down_sets(down))
    }

    fn from_down_sets(down: Vec<ElemSet>) -> Poset {
        let n = down.len();
        let mut up = vec![ElemSet::new(); n];
        for (y, d) in down.iter().enumerate() {
            for x in d.iter() {
                up[x].insert(y);
            }
        }
        Poset {
            down,
            up,
            labels: vec![None; n],
        }
    }

    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Poset {
        Self::from_covers(n, &[]).expect("an antichain is a poset")
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Poset {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn set_label(&mut self, x: usize, label: impl Into<String>) {
        self.labels[x] = Some(label.into());
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels[x].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// The label of `x`, or its index when unlabeled.
    pub fn name(&self, x: usize) -> String {
        self.label(x).map_or_else(|| x.to_string(), str::to_owned)
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn elements(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{x : x <= u}`
    pub fn down_set(&self, u: usize) -> Result<&ElemSet> {
        check_index(u, self.len())?;
        Ok(&self.down[u])
    }

    /// `{x : x < u}`
    pub fn strict_down_set(&self, u: usize) -> Result<ElemSet> {
        Ok(self.down_set(u)?.without(u))
    }

    /// `{x : x >= u}`
    pub fn up_set(&self, u: usize) -> Result<&ElemSet> {
        check_index(u, self.len())?;
        Ok(&self.up[u])
    }

    /// `{x : x > u}`
    pub fn strict_up_set(&self, u: usize) -> Result<ElemSet> {
        Ok(self.up_set(u)?.without(u))
    }

    // Unchecked accessors for internal hot paths.
    pub(crate) fn down(&self, u: usize) -> &ElemSet {
        &self.down[u]
    }

    pub(crate) fn up(&self, u: usize) -> &ElemSet {
        &self.up[u]
    }

    pub(crate) fn strict_down(&self, u: usize) -> ElemSet {
        self.down[u].without(u)
    }

    pub fn is_down_set(&self, xs: &ElemSet) -> bool {
        xs.iter().all(|x| x < self.len() && self.down[x].is_subset(xs))
    }

    /// Smallest down-set containing `xs`.
    pub fn down_closure(&self, xs: &ElemSet) -> ElemSet {
        xs.iter().fold(ElemSet::new(), |acc, x| &acc | &self.down[x])
    }

    /// Whether `y` covers `x`.
    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && self.down[y].intersection(&self.up[x]).len() == 2
    }

    /// All cover pairs `(lower, upper)`, sorted lexicographically.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].iter() {
                if self.is_cover(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.down[x].iter().filter(|&y| self.is_cover(y, x)).collect()
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.up[x].iter().filter(|&y| self.is_cover(x, y)).collect()
    }

    pub fn minimal_elements(&self) -> ElemSet {
        (0..self.len()).filter(|&x| self.down[x].len() == 1).collect()
    }

    pub fn maximal_elements(&self) -> ElemSet {
        (0..self.len()).filter(|&x| self.up[x].len() == 1).collect()
    }

    /// Number of pairs `(x, y)` with `x <= y`, reflexive pairs included.
    pub fn comparability_count(&self) -> usize {
        self.down.iter().map(ElemSet::len).sum()
    }

    pub fn is_chain(&self, xs: &ElemSet) -> bool {
        let v = xs.to_vec();
        v.iter()
            .enumerate()
            .all(|(i, &x)| v[i + 1..].iter().all(|&y| self.comparable(x, y)))
    }

    pub fn is_antichain(&self, xs: &ElemSet) -> bool {
        let v = xs.to_vec();
        v.iter()
            .enumerate()
            .all(|(i, &x)| v[i + 1..].iter().all(|&y| !self.comparable(x, y)))
    }

    /// Size of a largest antichain.
    ///
    /// By Dilworth's theorem this is `n` minus a maximum matching in the
    /// bipartite graph of strict comparabilities `x < y`.
    pub fn width(&self) -> usize {
        let n = self.len();
        let mut matched_to: Vec<Option<usize>> = vec![None; n];
        let mut matching = 0;
        for x in 0..n {
            let mut seen = vec![false; n];
            if self.augment(x, &mut seen, &mut matched_to) {
                matching += 1;
            }
        }
        n - matching
    }

    fn augment(&self, x: usize, seen: &mut [bool], matched_to: &mut [Option<usize>]) -> bool {
        for y in self.up[x].iter() {
            if y == x || seen[y] {
                continue;
            }
            seen[y] = true;
            let free = match matched_to[y] {
                None => true,
                Some(x2) => self.augment(x2, seen, matched_to),
            };
            if free {
                matched_to[y] = Some(x);
                return true;
            }
        }
        false
    }

    /// Elements sorted so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&x| (self.down[x].len(), x));
        v
    }

    /// The subposet induced on `xs`, renumbered in ascending order of `xs`.
    pub fn induced(&self, xs: &[usize]) -> Poset {
        let sub = Self::from_relation(xs.len(), |i, j| self.leq(xs[i], xs[j]))
            .expect("an induced order is a partial order");
        let labels = xs.iter().map(|&x| self.labels[x].clone()).collect();
        sub.with_labels(labels)
    }
}

fn visit(x: usize, below: &[Vec<usize>], state: &mut [u8], down: &mut [ElemSet]) -> Result<()> {
    state[x] = 1;
    let mut acc = ElemSet::singleton(x);
    for &y in &below[x] {
        match state[y] {
            0 => visit(y, below, state, down)?,
            1 => return Err(Error::NotAPoset(format!("cycle through {y} and {x}"))),
            _ => {}
        }
        acc = &acc | &down[y];
    }
    down[x] = acc;
    state[x] = 2;
    Ok(())
}

pub(crate) fn check_index(x: usize, n: usize) -> Result<()> {
    if x < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: x, size: n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diamond() -> Poset {
        // 0 < 1, 2 < 3
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn down_and_up_sets() {
        let c = Poset::chain(3);
        assert_eq!(c.down_set(1).unwrap(), &ElemSet::from([0, 1]));
        assert_eq!(c.strict_down_set(1).unwrap(), ElemSet::from([0]));
        assert_eq!(c.up_set(1).unwrap(), &ElemSet::from([1, 2]));
        assert_eq!(c.strict_up_set(1).unwrap(), ElemSet::from([2]));

        let a = Poset::antichain(2);
        assert_eq!(a.down_set(0).unwrap(), &ElemSet::from([0]));
        assert!(a.strict_down_set(0).unwrap().is_empty());

        let v = Poset::from_covers(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(v.strict_down_set(2).unwrap(), ElemSet::from([0, 1]));

        assert!(matches!(
            c.down_set(3),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        ));
    }

    #[test]
    fn down_set_predicate() {
        let c = Poset::chain(3);
        assert!(c.is_down_set(&ElemSet::from([0, 1])));
        assert!(!c.is_down_set(&ElemSet::from([1])));
        assert!(c.is_down_set(&ElemSet::new()));
        assert!(Poset::antichain(0).is_down_set(&ElemSet::new()));
    }

    #[test]
    fn cover_lists() {
        assert_eq!(Poset::chain(3).covers(), vec![(0, 1), (1, 2)]);
        assert!(Poset::antichain(3).covers().is_empty());
        assert_eq!(diamond().covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        // redundant input pairs are not covers
        let p = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn widths() {
        assert_eq!(Poset::chain(4).width(), 1);
        assert_eq!(Poset::antichain(3).width(), 3);
        assert_eq!(diamond().width(), 2);
        assert_eq!(Poset::antichain(0).width(), 0);
    }

    #[test]
    fn chains() {
        let d = diamond();
        assert!(d.is_chain(&ElemSet::from([0, 1, 3])));
        assert!(!d.is_chain(&ElemSet::from([1, 2])));
        assert!(d.is_chain(&ElemSet::new()));
    }

    #[test]
    fn rejects_cycles() {
        assert!(matches!(
            Poset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotAPoset(_))
        ));
        assert!(matches!(
            Poset::from_covers(2, &[(1, 1)]),
            Err(Error::NotAPoset(_))
        ));
        assert!(matches!(
            Poset::from_covers(2, &[(0, 2)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn relation_validation() {
        assert!(Poset::from_relation(2, |x, y| x <= y).is_ok());
        assert!(Poset::from_relation(2, |_, _| true).is_err());
        assert!(Poset::from_relation(2, |x, y| x < y).is_err());
        // 0<1, 1<2 but not 0<2
        let r = Poset::from_relation(3, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2));
        assert!(r.is_err());
    }

    /// Strictly upper-triangular random relations, closed transitively.
    fn arb_poset() -> impl Strategy<Value = Poset> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let pairs: Vec<_> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| bits[i * n + j])
                    .collect();
                Poset::from_covers(n, &pairs).unwrap()
            })
        })
    }

    fn brute_width(p: &Poset) -> usize {
        let n = p.len();
        (0u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<ElemSet>())
            .filter(|s| p.is_antichain(s))
            .map(|s| s.len())
            .max()
            .unwrap()
    }

    proptest! {
        #[test]
        fn covers_generate_the_order(p in arb_poset()) {
            let q = Poset::from_covers(p.len(), &p.covers()).unwrap();
            prop_assert_eq!(&q.down, &p.down);
        }

        #[test]
        fn down_sets_are_down_sets(p in arb_poset()) {
            for u in 0..p.len() {
                prop_assert!(p.is_down_set(p.down_set(u).unwrap()));
                prop_assert!(p.is_down_set(&p.strict_down_set(u).unwrap()));
                prop_assert_eq!(p.strict_down_set(u).unwrap(), p.down_set(u).unwrap().without(u));
            }
        }

        #[test]
        fn width_matches_exhaustive_antichains(p in arb_poset()) {
            let w = p.width();
            prop_assert_eq!(w, brute_width(&p));
            prop_assert_eq!(w == 1, p.is_chain(&p.elements()));
        }
    }
}
