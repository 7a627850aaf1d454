//! Congruences of finite lattices, restriction along sublattice embeddings,
//! and the corner construction that adds one doubly irreducible element
//! without changing the congruence lattice.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::embedding::Embedding;
use crate::error::{ensure, Error, Result};
use crate::lattice::Lattice;
use crate::poset::{check_index, Poset};

/// A partition of the elements of a lattice, stored as a block number per
/// element. Blocks are numbered in order of first appearance, so two equal
/// partitions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Congruence {
    block_of: Vec<usize>,
}

impl Congruence {
    /// Renumbers an arbitrary block labelling into first-appearance order.
    pub fn from_block_labels(labels: &[usize]) -> Congruence {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let block_of = labels
            .iter()
            .map(|&l| match seen.iter().find(|&&(k, _)| k == l) {
                Some(&(_, b)) => b,
                None => {
                    seen.push((l, seen.len()));
                    seen.len() - 1
                }
            })
            .collect();
        Congruence { block_of }
    }

    /// Builds a partition of `0..n` from its blocks; every element must
    /// appear in exactly one block.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Congruence> {
        let mut labels = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                check_index(x, n)?;
                if labels[x] != usize::MAX {
                    return Err(Error::precondition(format!("{x} lies in two blocks")));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::precondition(format!("{x} lies in no block")));
        }
        Ok(Congruence::from_block_labels(&labels))
    }

    /// The identity relation Δ on `n` elements.
    pub fn identity(n: usize) -> Congruence {
        Congruence {
            block_of: (0..n).collect(),
        }
    }

    /// The full relation ∇ on `n` elements.
    pub fn full(n: usize) -> Congruence {
        Congruence { block_of: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Blocks in order of their smallest element.
    pub fn blocks(&self) -> Vec<ElemSet> {
        let mut out = vec![ElemSet::new(); self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].insert(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        // each block of self must map into a single block of other
        let mut target = vec![usize::MAX; self.block_count()];
        self.block_of.iter().zip(&other.block_of).all(|(&b, &o)| {
            if target[b] == usize::MAX {
                target[b] = o;
            }
            target[b] == o
        })
    }

    /// The equivalence generated by both relations.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            uf.union(x, self.representative(x));
            uf.union(x, other.representative(x));
        }
        uf.into_congruence()
    }

    fn representative(&self, x: usize) -> usize {
        let b = self.block_of[x];
        self.block_of.iter().position(|&c| c == b).unwrap_or(x)
    }

    /// Whether the partition is compatible with joins and meets of `l`.
    ///
    /// For an equivalence it suffices that every translation `t ↦ t ∨ u` and
    /// `t ↦ t ∧ u` maps related pairs to related pairs.
    pub fn is_congruence_of(&self, l: &Lattice) -> bool {
        self.len() == l.len()
            && l.elements().all(|x| {
                l.elements().filter(|&y| y > x && self.related(x, y)).all(|y| {
                    l.elements().all(|u| {
                        self.related(l.join(x, u), l.join(y, u)) && self.related(l.meet(x, u), l.meet(y, u))
                    })
                })
            })
    }

    /// Whether every block is an interval-closed sublattice of `l`.
    pub fn has_convex_sublattice_blocks(&self, l: &Lattice) -> bool {
        self.blocks().iter().all(|block| {
            block.iter().all(|x| {
                block.iter().all(|y| {
                    block.contains(l.join(x, y))
                        && block.contains(l.meet(x, y))
                        && (!l.leq(x, y)
                            || l.elements()
                                .filter(|&z| l.leq(x, z) && l.leq(z, y))
                                .all(|z| block.contains(z)))
                })
            })
        })
    }
}

/// Plain union-find with path halving.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_block_labels(&labels)
    }
}

/// The smallest congruence containing every pair in `pairs`.
fn generate(l: &Lattice, pairs: &[(usize, usize)]) -> Congruence {
    let mut uf = UnionFind::new(l.len());
    for &(x, y) in pairs {
        uf.union(x, y);
    }
    // translate every element against its block root until nothing merges;
    // the pairs (x, root x) generate the current equivalence, so their
    // translates generate all translates
    loop {
        let mut changed = false;
        for x in l.elements() {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for u in l.elements() {
                changed |= uf.union(l.join(x, u), l.join(r, u));
                changed |= uf.union(l.meet(x, u), l.meet(r, u));
            }
        }
        if !changed {
            break;
        }
    }
    uf.into_congruence()
}

/// The congruence generated by collapsing `x` and `y`.
pub fn principal_congruence(l: &Lattice, x: usize, y: usize) -> Result<Congruence> {
    l.check_element(x)?;
    l.check_element(y)?;
    Ok(generate(l, &[(x, y)]))
}

/// Every congruence of `l`, sorted by decreasing number of blocks and then
/// by block numbering. Δ comes first and ∇ last.
///
/// Every congruence of a finite lattice is the join of the principal
/// congruences of the covers it collapses, so the family is the closure of
/// `{Δ}` under joins with those principal congruences.
pub fn all_congruences(l: &Lattice) -> Vec<Congruence> {
    let generators: BTreeSet<Congruence> = l
        .covers()
        .into_iter()
        .map(|(x, y)| generate(l, &[(x, y)]))
        .collect();
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    let mut queue = vec![Congruence::identity(l.len())];
    found.insert(queue[0].clone());
    while let Some(theta) = queue.pop() {
        for g in &generators {
            let next = theta.join(g);
            if found.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let mut out: Vec<Congruence> = found.into_iter().collect();
    out.sort_by(|p, q| q.block_count().cmp(&p.block_count()).then_with(|| p.cmp(q)));
    out
}

/// `Con L` ordered by refinement, with element `i` the `i`-th entry of the
/// returned list.
pub fn congruence_lattice(l: &Lattice) -> Result<(Lattice, Vec<Congruence>)> {
    let cons = all_congruences(l);
    let order = Poset::from_relation(cons.len(), |i, j| cons[i].refines(&cons[j]))?;
    Ok((Lattice::from_poset(order)?, cons))
}

/// `Θ ∩ (L × L)` pulled back along a sublattice embedding `e: L ↪ K`.
pub fn restriction(theta: &Congruence, e: &Embedding) -> Result<Congruence> {
    if !e.is_sublattice() {
        return Err(Error::NotASublattice);
    }
    restrict_unchecked(theta, e)
}

fn restrict_unchecked(theta: &Congruence, e: &Embedding) -> Result<Congruence> {
    if theta.len() != e.target().len() {
        return Err(Error::precondition(
            "congruence and embedding target have different sizes",
        ));
    }
    let labels: Vec<usize> = e.map().iter().map(|&y| theta.block_of[y]).collect();
    let r = Congruence::from_block_labels(&labels);
    ensure(
        r.is_congruence_of(e.source()),
        "restriction of a congruence is a congruence",
    )?;
    Ok(r)
}

/// Whether restriction `Con K → Con L` is an order isomorphism.
pub fn is_congruence_preserving_extension(e: &Embedding) -> Result<bool> {
    is_congruence_preserving_extension_with(e, |l| Ok(all_congruences(l)))
}

/// As [`is_congruence_preserving_extension`] with the congruence lists
/// supplied by `enumerate`, so that an independent oracle can be used.
pub fn is_congruence_preserving_extension_with(
    e: &Embedding,
    mut enumerate: impl FnMut(&Lattice) -> Result<Vec<Congruence>>,
) -> Result<bool> {
    if !e.is_sublattice() {
        return Err(Error::NotASublattice);
    }
    let con_k = enumerate(e.target())?;
    let con_l: BTreeSet<Congruence> = enumerate(e.source())?.into_iter().collect();
    let restricted: Vec<Congruence> = con_k
        .iter()
        .map(|t| restrict_unchecked(t, e))
        .collect::<Result<_>>()?;
    let image: BTreeSet<&Congruence> = restricted.iter().collect();
    if image.len() != con_k.len() || image.len() != con_l.len() {
        return Ok(false);
    }
    if !restricted.iter().all(|r| con_l.contains(r)) {
        return Ok(false);
    }
    for i in 0..con_k.len() {
        for j in 0..con_k.len() {
            if con_k[i].refines(&con_k[j]) != restricted[i].refines(&restricted[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The result of [`corner_insert`]: `K = L ∪ {d}` with `a ≺ c ≺ b` and
/// `a ≺ d ≺ b` in `K`. `a`, `c`, `b` are indices in `L`, which keep their
/// index in `K`; `d` is an index in `K`.
#[derive(Clone, Debug)]
pub struct CornerData {
    pub a: usize,
    pub c: usize,
    pub b: usize,
    pub d: usize,
    pub embedding: Embedding,
}

impl CornerData {
    pub fn lower(&self) -> &Lattice {
        self.embedding.source()
    }

    pub fn upper(&self) -> &Lattice {
        self.embedding.target()
    }

    /// Checks every structural requirement of a corner.
    pub fn validate(&self) -> Result<()> {
        let (l, k, e) = (self.lower(), self.upper(), &self.embedding);
        for x in [self.a, self.c, self.b] {
            l.check_element(x)?;
        }
        k.check_element(self.d)?;
        let (a, c, b, d) = (e.apply(self.a), e.apply(self.c), e.apply(self.b), self.d);
        let checks = [
            (k.is_cover(a, c) && k.is_cover(c, b), "a ≺ c ≺ b in K"),
            (k.is_cover(a, d) && k.is_cover(d, b), "a ≺ d ≺ b in K"),
            (l.is_meet_irreducible(self.a), "a is meet-irreducible in L"),
            (l.is_join_irreducible(self.b), "b is join-irreducible in L"),
            (
                k.is_join_irreducible(d) && k.is_meet_irreducible(d),
                "d is doubly irreducible in K",
            ),
            (k.len() == l.len() + 1 && e.preimage(d).is_none(), "K is L plus d"),
        ];
        for (ok, name) in checks {
            if !ok {
                return Err(Error::precondition(format!("invalid corner: {name}")));
            }
        }
        Ok(())
    }
}

/// Adds a new element `d` with `a ≺ d ≺ b` next to the covers
/// `a ≺ c ≺ b`, where `a` is meet-irreducible and `b` join-irreducible.
/// `d` gets index `l.len()`; the other elements keep their indices.
pub fn corner_insert(l: &Lattice, a: usize, c: usize, b: usize) -> Result<(Lattice, CornerData)> {
    for x in [a, c, b] {
        l.check_element(x)?;
    }
    if !l.is_cover(a, c) || !l.is_cover(c, b) {
        return Err(Error::precondition(format!(
            "{} ≺ {} ≺ {} does not hold",
            l.name(a),
            l.name(c),
            l.name(b)
        )));
    }
    if !l.is_meet_irreducible(a) {
        return Err(Error::precondition(format!(
            "{} is not meet-irreducible",
            l.name(a)
        )));
    }
    if !l.is_join_irreducible(b) {
        return Err(Error::precondition(format!(
            "{} is not join-irreducible",
            l.name(b)
        )));
    }
    let n = l.len();
    let leq = |x: usize, y: usize| match (x == n, y == n) {
        (true, true) => true,
        (true, false) => l.leq(b, y),
        (false, true) => l.leq(x, a),
        (false, false) => l.leq(x, y),
    };
    let mut labels = l.order().labels().to_vec();
    labels.push(None);
    let k = Lattice::from_poset(Poset::from_relation(n + 1, leq)?.with_labels(labels))?;
    let embedding = Embedding::new(l.clone(), k.clone(), l.elements().collect())?;
    ensure(
        embedding.is_cover_preserving_sublattice(),
        "L is a cover-preserving sublattice of L plus d",
    )?;
    let data = CornerData {
        a,
        c,
        b,
        d: n,
        embedding,
    };
    data.validate()
        .map_err(|e| Error::invariant(format!("inserted corner fails validation: {e}")))?;
    Ok((k, data))
}

/// `ε(β)`: the transitive closure of `β ∪ γ` on `K`, where `γ` is the
/// congruence of the square `{a, c, d, b}` that restricts to `β` on
/// `{a, c, b}`.
pub fn epsilon_extend(data: &CornerData, beta: &Congruence) -> Result<Congruence> {
    let (l, k, e) = (data.lower(), data.upper(), &data.embedding);
    if beta.len() != l.len() {
        return Err(Error::precondition("β is not a partition of L"));
    }
    let (a, c, b, d) = (e.apply(data.a), e.apply(data.c), e.apply(data.b), data.d);
    let gamma: Vec<(usize, usize)> = match (beta.related(data.a, data.c), beta.related(data.c, data.b)) {
        (false, false) => vec![],
        (true, false) => vec![(a, c), (d, b)],
        (false, true) => vec![(c, b), (a, d)],
        (true, true) => vec![(a, c), (c, b), (a, d)],
    };
    let mut uf = UnionFind::new(k.len());
    for x in l.elements() {
        uf.union(e.apply(x), e.apply(beta.representative(x)));
    }
    for (x, y) in gamma {
        uf.union(x, y);
    }
    let eps = uf.into_congruence();
    ensure(eps.is_congruence_of(k), "ε(β) is a congruence of K")?;
    ensure(&restrict_unchecked(&eps, e)? == beta, "ε(β) restricts to β")?;
    Ok(eps)
}

/// Checks that `ε` and restriction are mutually inverse order isomorphisms
/// between `Con L` and `Con K`.
pub fn verify_corner_lemma(data: &CornerData) -> Result<bool> {
    data.validate()?;
    let con_l = all_congruences(data.lower());
    let con_k: BTreeSet<Congruence> = all_congruences(data.upper()).into_iter().collect();
    let eps: Vec<Congruence> = con_l
        .iter()
        .map(|beta| epsilon_extend(data, beta))
        .collect::<Result<_>>()?;
    let image: BTreeSet<&Congruence> = eps.iter().collect();
    ensure(image.len() == eps.len(), "ε is injective")?;
    ensure(
        image.len() == con_k.len() && eps.iter().all(|t| con_k.contains(t)),
        "ε is onto Con K",
    )?;
    for theta in &con_k {
        let r = restrict_unchecked(theta, &data.embedding)?;
        ensure(epsilon_extend(data, &r)? == *theta, "ε inverts restriction")?;
    }
    for i in 0..con_l.len() {
        for j in 0..con_l.len() {
            ensure(
                con_l[i].refines(&con_l[j]) == eps[i].refines(&eps[j]),
                "ε preserves and reflects order",
            )?;
        }
    }
    Ok(true)
}
