//! Isomorphism search for posets and lattices.

use std::ops::ControlFlow;

use crate::lattice::Lattice;
use crate::poset::Poset;

/// Per-element invariants that any isomorphism must preserve.
fn signature(p: &Poset, heights: &[usize], x: usize) -> (usize, usize, usize, usize, usize) {
    (
        heights[x],
        p.down(x).len(),
        p.up(x).len(),
        p.lower_covers(x).len(),
        p.upper_covers(x).len(),
    )
}

fn heights(p: &Poset) -> Vec<usize> {
    let mut h = vec![0; p.len()];
    for x in p.linear_extension() {
        h[x] = p.lower_covers(x).iter().map(|&y| h[y] + 1).max().unwrap_or(0);
    }
    h
}

/// Calls `visit` with every order isomorphism `p -> q` (as an index map)
/// until it returns `ControlFlow::Break`.
pub fn for_each_poset_isomorphism(p: &Poset, q: &Poset, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
    let n = p.len();
    if n != q.len() || p.comparability_count() != q.comparability_count() {
        return;
    }
    let (hp, hq) = (heights(p), heights(q));
    let sp: Vec<_> = (0..n).map(|x| signature(p, &hp, x)).collect();
    let sq: Vec<_> = (0..n).map(|x| signature(q, &hq, x)).collect();
    let (mut a, mut b) = (sp.clone(), sq.clone());
    a.sort();
    b.sort();
    if a != b {
        return;
    }
    // assign in a linear extension so lower covers are placed first
    let order = p.linear_extension();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| sq[y] == sp[x]).collect())
        .collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let _ = extend(p, q, &order, 0, &candidates, &mut map, &mut used, &mut visit);
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &Poset,
    q: &Poset,
    order: &[usize],
    depth: usize,
    candidates: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if depth == order.len() {
        return visit(map);
    }
    let x = order[depth];
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let fw = map[w];
            p.leq(w, x) == q.leq(fw, y) && p.leq(x, w) == q.leq(y, fw)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        extend(p, q, order, depth + 1, candidates, map, used, visit)?;
        used[y] = false;
        map[x] = usize::MAX;
    }
    ControlFlow::Continue(())
}

/// Some order isomorphism `p -> q`, if one exists.
pub fn find_poset_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_poset_isomorphism(p, q, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// A lattice isomorphism `l1 -> l2`, if one exists.
///
/// Order isomorphisms between lattices preserve joins and meets, so this is
/// a search over order isomorphisms.
pub fn find_isomorphism(l1: &Lattice, l2: &Lattice) -> Option<Vec<usize>> {
    find_poset_isomorphism(l1.order(), l2.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_square() {
        // b2 with top numbered 0
        let d = Lattice::from_covers(4, &[(3, 1), (3, 2), (1, 0), (2, 0)]).unwrap();
        let b2 = Lattice::boolean(2);
        let f = find_isomorphism(&d, &b2).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(b2.join(f[x], f[y]), f[d.join(x, y)]);
                assert_eq!(b2.meet(f[x], f[y]), f[d.meet(x, y)]);
            }
        }
    }

    #[test]
    fn different_shapes() {
        assert!(find_isomorphism(&Lattice::boolean(2), &Lattice::chain(4)).is_none());
        assert!(find_isomorphism(&Lattice::n5(), &Lattice::m(3)).is_none());
        assert!(find_isomorphism(&Lattice::n5(), &Lattice::chain(4)).is_none());
    }

    #[test]
    fn counts_automorphisms() {
        let mut count = 0;
        let m3 = Lattice::m(3);
        for_each_poset_isomorphism(m3.order(), m3.order(), |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 6);
        let mut count = 0;
        let b3 = Lattice::boolean(3);
        for_each_poset_isomorphism(b3.order(), b3.order(), |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 6);
    }
}
