//! Lattices and posets up to isomorphism.
//!
//! The main enumerator grows lattices one element at a time: removing a
//! coatom from a lattice with at least three elements leaves a lattice, so
//! every such lattice arises from a smaller one by adding a new element
//! whose strict down-set is a down-set avoiding the top and whose only
//! strict upper bound is the top. Isomorphic duplicates are removed by
//! bucketing on cheap invariants and testing isomorphism inside a bucket.
//!
//! The brute-force enumerators share no code with it: they list every
//! naturally labelled order relation, filter, and keep the lexicographically
//! smallest relabelling of each.

use std::collections::HashMap;

use super::{EnumConfig, LatticeFilter};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::iso::find_poset_isomorphism;
use crate::lattice::Lattice;
use crate::poset::Poset;

/// Every lattice with `1..=cfg.max_elements` elements up to isomorphism that
/// passes `cfg.filter`, by increasing size. Elements are numbered along a
/// linear extension, so the bottom is 0 and the top is last.
pub fn enumerate_lattices(cfg: &EnumConfig) -> Result<Vec<Lattice>> {
    cfg.validate()?;
    let mut out = Vec::new();
    let mut level: Vec<Lattice> = Vec::new();
    for n in 1..=cfg.max_elements {
        level = match n {
            1 | 2 => vec![Lattice::chain(n)],
            _ => grow(&level),
        };
        out.extend(level.iter().filter(|l| cfg.filter.accepts(l)).cloned());
    }
    Ok(out)
}

type Invariant = Vec<(usize, usize, usize, usize, usize)>;

fn invariant(p: &Poset) -> Invariant {
    let mut height = vec![0usize; p.len()];
    for x in p.linear_extension() {
        height[x] = p
            .lower_covers(x)
            .iter()
            .map(|&y| height[y] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut v: Invariant = (0..p.len())
        .map(|x| {
            (
                height[x],
                p.down_set(x).map_or(0, |d| d.len()),
                p.up_set(x).map_or(0, |u| u.len()),
                p.lower_covers(x).len(),
                p.upper_covers(x).len(),
            )
        })
        .collect();
    v.sort();
    v
}

/// All down-sets of `p` not containing `exclude`, nonempty.
fn down_sets_avoiding(p: &Poset, exclude: usize) -> Vec<ElemSet> {
    // grow down-sets along a linear extension: a down-set is determined by
    // which minimal-first elements it takes, so branch element by element
    let order = p.linear_extension();
    let mut out = Vec::new();
    let mut current = ElemSet::new();
    fn rec(
        p: &Poset,
        order: &[usize],
        i: usize,
        exclude: usize,
        current: &mut ElemSet,
        out: &mut Vec<ElemSet>,
    ) {
        if i == order.len() {
            if !current.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        let x = order[i];
        rec(p, order, i + 1, exclude, current, out);
        let below_in = p
            .down_set(x)
            .map(|d| d.without(x).is_subset(current))
            .unwrap_or(false);
        if x != exclude && below_in {
            current.insert(x);
            rec(p, order, i + 1, exclude, current, out);
            current.remove(x);
        }
    }
    rec(p, &order, 0, exclude, &mut current, &mut out);
    out
}

fn grow(smaller: &[Lattice]) -> Vec<Lattice> {
    let mut buckets: HashMap<Invariant, Vec<usize>> = HashMap::new();
    let mut found: Vec<Lattice> = Vec::new();
    for m in smaller {
        let n = m.len();
        let top = m.top();
        for d in down_sets_avoiding(m.order(), top) {
            let leq = |x: usize, y: usize| match (x == n, y == n) {
                (true, true) => true,
                (true, false) => y == top,
                (false, true) => d.contains(x),
                (false, false) => m.leq(x, y),
            };
            let Ok(order) = Poset::from_relation(n + 1, leq) else {
                continue;
            };
            let Ok(candidate) = Lattice::from_poset(order) else {
                continue;
            };
            let key = invariant(candidate.order());
            let bucket = buckets.entry(key).or_default();
            if bucket
                .iter()
                .any(|&i| find_poset_isomorphism(found[i].order(), candidate.order()).is_some())
            {
                continue;
            }
            bucket.push(found.len());
            found.push(renumber(&candidate));
        }
    }
    found
}

/// Renumbers along a linear extension.
fn renumber(l: &Lattice) -> Lattice {
    let order = l.order().linear_extension();
    Lattice::from_poset(l.order().induced(&order)).expect("relabelling keeps the lattice")
}

/// Lexicographically smallest strict-order bit pattern over all
/// relabellings of a relation given as `lt[i][j]`.
fn canonical(lt: &[Vec<bool>]) -> Vec<bool> {
    let n = lt.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&mut perm, 0, &mut |p| {
        let code: Vec<bool> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| lt[p[i]][p[j]])
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Every strict order on `0..n` contained in `<` (naturally labelled),
/// as full `lt` matrices.
fn natural_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut lt = vec![vec![false; n]; n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            lt[i][j] = mask >> bit & 1 == 1;
        }
        let transitive = (0..n).all(|i| (0..n).all(|j| !lt[i][j] || (0..n).all(|k| !lt[j][k] || lt[i][k])));
        if transitive {
            out.push(lt);
        }
    }
    out
}

/// Every poset with `n` elements up to isomorphism, by brute force over
/// naturally labelled relations. Limited to 6 elements.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    const LIMIT: usize = 6;
    if n > LIMIT {
        return Err(Error::BoundExceeded {
            requested: n,
            limit: LIMIT,
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for lt in natural_orders(n) {
        if seen.insert(canonical(&lt)) {
            out.push(Poset::from_relation(n, |x, y| x == y || lt[x][y])?);
        }
    }
    Ok(out)
}

/// Every lattice with exactly `n` elements up to isomorphism, by brute
/// force: naturally labelled orders on the inner elements, bottom and top
/// added, bounds checked by scanning. Limited to 8 elements.
pub fn enumerate_lattices_brute_force(n: usize, filter: LatticeFilter) -> Result<Vec<Lattice>> {
    const LIMIT: usize = 8;
    if n > LIMIT {
        return Err(Error::BoundExceeded {
            requested: n,
            limit: LIMIT,
        });
    }
    if n <= 2 {
        let all = if n == 0 { vec![] } else { vec![Lattice::chain(n)] };
        return Ok(all.into_iter().filter(|l| filter.accepts(l)).collect());
    }
    let inner = n - 2;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for lt_inner in natural_orders(inner) {
        // element 0 is the bottom, n - 1 the top, inner element i is i + 1
        let leq = |x: usize, y: usize| {
            x == y || x == 0 || y == n - 1 || (x != n - 1 && y != 0 && lt_inner[x - 1][y - 1])
        };
        if !has_bounds(n, leq) {
            continue;
        }
        if !seen.insert(canonical(&lt_inner)) {
            continue;
        }
        let l = Lattice::from_poset(Poset::from_relation(n, leq)?)?;
        if filter.accepts(&l) {
            out.push(l);
        }
    }
    Ok(out)
}

/// Whether every pair has a least upper bound and a greatest lower bound.
fn has_bounds(n: usize, leq: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| {
            let ub: Vec<usize> = (0..n).filter(|&u| leq(x, u) && leq(y, u)).collect();
            let lb: Vec<usize> = (0..n).filter(|&u| leq(u, x) && leq(u, y)).collect();
            ub.iter().any(|&u| ub.iter().all(|&v| leq(u, v)))
                && lb.iter().any(|&u| lb.iter().all(|&v| leq(v, u)))
        })
    })
}
