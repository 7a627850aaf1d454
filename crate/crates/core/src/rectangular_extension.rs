//! Congruence-preserving, length-preserving extension of a slim semimodular
//! lattice to a slim rectangular lattice.
//!
//! The join-irreducibles of a slim semimodular lattice that is not a chain
//! split into two disjoint chains `A` and `B`. The defect `δ` counts the
//! comparable pairs across such a split, minimized over all splits; it is
//! zero exactly for rectangular lattices. Each step picks a cover `b ≺ a`
//! across the split, cuts `a` loose from part of `B`, and adds a single new
//! flat. The old lattice sits in the new one as a corner, so the congruence
//! lattice is unchanged, while `δ` strictly drops.

use serde::Serialize;

use crate::congruence::{corner_insert, is_congruence_preserving_extension, verify_corner_lemma, CornerData};
use crate::elemset::ElemSet;
use crate::embedding::Embedding;
use crate::error::{ensure, Error, Result};
use crate::faigle::{geom_of_lattice, FaigleGeometry};
use crate::lattice::Lattice;
use crate::poset::Poset;

/// A split of the join-irreducibles into two disjoint chains. Both sets
/// hold indices into [`Lattice::jir_elements`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPair {
    pub a_chain: ElemSet,
    pub b_chain: ElemSet,
    pub delta: usize,
}

fn cross_comparabilities(p: &Poset, a: &ElemSet, b: &ElemSet) -> usize {
    a.iter()
        .map(|x| b.iter().filter(|&y| p.comparable(x, y)).count())
        .sum()
}

fn require_slim_semimodular(l: &Lattice) -> Result<()> {
    if !l.is_semimodular() {
        return Err(Error::NotSemimodular);
    }
    if !l.is_slim() {
        return Err(Error::NotSlim);
    }
    Ok(())
}

/// `δ(L)` with a minimizing split. Splits are enumerated with the first
/// join-irreducible in `A`; ties go to the lexicographically smallest
/// `(A, B)`.
pub fn delta(l: &Lattice) -> Result<ChainPair> {
    require_slim_semimodular(l)?;
    if l.is_chain() {
        return Err(Error::IsAChain);
    }
    let p = l.jir_poset();
    let m = p.len();
    let mut best: Option<(usize, Vec<usize>, Vec<usize>, ChainPair)> = None;
    for mask in 0u64..(1 << (m - 1)) {
        let b: ElemSet = (1..m).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let a = &ElemSet::full(m) - &b;
        if b.is_empty() || !p.is_chain(&a) || !p.is_chain(&b) {
            continue;
        }
        let d = cross_comparabilities(&p, &a, &b);
        let key = (d, a.to_vec(), b.to_vec());
        if best
            .as_ref()
            .is_none_or(|(bd, ba, bb, _)| key < (*bd, ba.clone(), bb.clone()))
        {
            best = Some((
                key.0,
                key.1,
                key.2,
                ChainPair {
                    a_chain: a,
                    b_chain: b,
                    delta: d,
                },
            ));
        }
    }
    let pair = best
        .map(|(_, _, _, pair)| pair)
        .ok_or_else(|| Error::invariant("a slim non-chain has a split into two chains"))?;
    ensure(
        (pair.delta == 0) == l.is_slim_rectangular(),
        "δ vanishes exactly on rectangular lattices",
    )?;
    Ok(pair)
}

/// One application of the defect-reducing step.
#[derive(Clone, Debug)]
pub struct RectStep {
    /// The split after orienting it so that `a ∈ a_chain`, `b ∈ b_chain`.
    pub a_chain: ElemSet,
    pub b_chain: ElemSet,
    /// Ground indices (into the join-irreducibles of the old lattice) of
    /// the chosen cover `b ≺ a`.
    pub a: usize,
    pub b: usize,
    /// `⋁⇓_Q a` and `⋁⇓_P a`, as elements of the old lattice.
    pub z0: usize,
    pub z1: usize,
    /// The new flat `↓_Q a`, as an element of the new lattice.
    pub z2: usize,
    /// Ground indices of `B₀`.
    pub b0: ElemSet,
    pub q: Poset,
    pub geometry: FaigleGeometry,
    pub corner: CornerData,
    pub delta_before: usize,
    pub delta_after: usize,
}

/// Machine-readable summary of a [`RectStep`] in lattice indices of the
/// old lattice (`z2` and `size` refer to the new one).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectRecord {
    pub a: usize,
    pub b: usize,
    pub z0: usize,
    pub z1: usize,
    pub z2: usize,
    #[serde(rename = "B0")]
    pub b0: Vec<usize>,
    pub delta_before: usize,
    pub delta_after: usize,
    pub size: usize,
}

impl RectStep {
    pub fn record(&self) -> RectRecord {
        let l = self.corner.lower();
        let jir = l.jir_elements();
        RectRecord {
            a: jir[self.a],
            b: jir[self.b],
            z0: self.z0,
            z1: self.z1,
            z2: self.z2,
            b0: self.b0.iter().map(|i| jir[i]).collect(),
            delta_before: self.delta_before,
            delta_after: self.delta_after,
            size: self.corner.upper().len(),
        }
    }
}

fn validate_pair(p: &Poset, pair: &ChainPair) -> Result<()> {
    let ok = pair.a_chain.is_disjoint(&pair.b_chain)
        && (&pair.a_chain | &pair.b_chain) == p.elements()
        && p.is_chain(&pair.a_chain)
        && p.is_chain(&pair.b_chain)
        && !pair.a_chain.is_empty()
        && !pair.b_chain.is_empty()
        && cross_comparabilities(p, &pair.a_chain, &pair.b_chain) == pair.delta;
    if ok {
        Ok(())
    } else {
        Err(Error::precondition(
            "pair is not a split of the join-irreducibles into two chains",
        ))
    }
}

/// Performs one step on a split with positive defect.
pub fn rect_step(l: &Lattice, pair: &ChainPair) -> Result<(Lattice, RectStep)> {
    require_slim_semimodular(l)?;
    if l.is_chain() {
        return Err(Error::IsAChain);
    }
    let g = geom_of_lattice(l)?;
    let p = g.ground();
    validate_pair(p, pair)?;
    if pair.delta == 0 {
        return Err(Error::precondition("the split has no cross comparabilities"));
    }
    let jir = l.jir_elements();

    // choose the cross cover b ≺ a minimizing (a, b) over both orientations
    let (a, b) = p
        .covers()
        .into_iter()
        .filter(|&(lo, hi)| {
            (pair.a_chain.contains(hi) && pair.b_chain.contains(lo))
                || (pair.b_chain.contains(hi) && pair.a_chain.contains(lo))
        })
        .map(|(lo, hi)| (hi, lo))
        .min()
        .ok_or_else(|| Error::invariant("a split with positive defect has a cross cover"))?;
    let (a_chain, b_chain) = if pair.a_chain.contains(a) {
        (pair.a_chain.clone(), pair.b_chain.clone())
    } else {
        (pair.b_chain.clone(), pair.a_chain.clone())
    };

    let join_of = |xs: &ElemSet| l.join_all(xs.iter().map(|i| jir[i]));
    let below_a = p.strict_down(a);
    let below_a_in_a = &below_a & &a_chain;
    let z1 = join_of(&below_a);
    let s_a = join_of(&below_a_in_a);
    let b0: ElemSet = b_chain
        .iter()
        .filter(|&y| l.lt(l.join(jir[y], s_a), z1))
        .collect();
    ensure(
        below_a == &below_a_in_a | &(p.down(b) & &b_chain),
        "⇓a splits as ⇓_A a ∪ ↓_B b",
    )?;
    ensure(!b0.contains(b), "b lies outside B₀")?;

    let keep_below_a = &below_a_in_a | &b0;
    let q = Poset::from_relation(p.len(), |y, x| {
        y == x || (x != a && p.lt(y, x)) || (x == a && keep_below_a.contains(y))
    })?
    .with_labels(p.labels().to_vec());
    for d in (0..p.len()).filter(|&d| d != a) {
        ensure(q.down_set(d)? == p.down(d), "↓d is unchanged for d ≠ a")?;
    }
    ensure(
        q.down_set(a)?.is_proper_subset(p.down(a)),
        "↓_Q a is strictly smaller than ↓_P a",
    )?;
    for chain in [&a_chain, &b_chain] {
        for x in chain.iter() {
            for y in chain.iter() {
                ensure(p.leq(x, y) == q.leq(x, y), "A and B keep their order")?;
            }
        }
    }

    let new_flat = q.down_set(a)?.clone();
    let z0_flat = q.strict_down_set(a)?;
    ensure(new_flat == keep_below_a.with(a), "↓_Q a = ↓_A a ∪ B₀")?;
    ensure(g.is_flat(&z0_flat), "⇓_Q a is a flat")?;
    ensure(!g.is_flat(&new_flat), "↓_Q a is a new flat")?;
    let z0 = join_of(&z0_flat);
    ensure(l.upper_covers(z0) == [z1], "z₁ is the only cover of z₀")?;

    let geometry = FaigleGeometry::new(q.clone(), g.flats().iter().cloned().chain([new_flat.clone()]))?;
    let report = geometry.check_axioms();
    ensure(
        report.is_faigle_geometry() && report.holds_fep(),
        "extended family is a Faigle geometry",
    )?;
    let geometry = geometry.verify()?;
    let k = geometry.lattice_of_flats()?;
    let map: Vec<usize> = l
        .elements()
        .map(|x| {
            let flat: ElemSet = (0..jir.len()).filter(|&i| l.leq(jir[i], x)).collect();
            geometry
                .flat_index(&flat)
                .ok_or_else(|| Error::invariant("old flats survive"))
        })
        .collect::<Result<_>>()?;
    let embedding = Embedding::new(l.clone(), k.clone(), map)?;
    ensure(k.len() == l.len() + 1, "one element is added")?;
    ensure(k.length() == l.length(), "the length is unchanged")?;
    ensure(
        k.is_semimodular() && k.is_slim(),
        "the result is slim semimodular",
    )?;
    embedding.wild_sublattice_check()?;
    ensure(
        embedding.is_cover_preserving_sublattice(),
        "old lattice is a cover-preserving sublattice",
    )?;
    let delta_after = delta(&k)?.delta;
    ensure(delta_after < pair.delta, "δ decreases")?;

    let z2 = geometry
        .flat_index(&new_flat)
        .ok_or_else(|| Error::invariant("new flat is present"))?;
    let corner = CornerData {
        a: z0,
        c: z1,
        b: jir[a],
        d: z2,
        embedding: embedding.clone(),
    };
    corner
        .validate()
        .map_err(|e| Error::invariant(format!("corner fails validation: {e}")))?;
    ensure(
        k.upper_covers(z2) == [embedding.apply(jir[a])],
        "a is the only cover of z₂",
    )?;
    ensure(k.is_cover(embedding.apply(z0), z2), "z₀ ≺ z₂")?;
    ensure(verify_corner_lemma(&corner)?, "corner lemma holds")?;
    ensure(
        is_congruence_preserving_extension(&embedding)?,
        "restriction is an isomorphism of congruence lattices",
    )?;
    let step = RectStep {
        a_chain,
        b_chain,
        a,
        b,
        z0,
        z1,
        z2,
        b0,
        q,
        geometry,
        corner,
        delta_before: pair.delta,
        delta_after,
    };
    Ok((k, step))
}

/// A step of [`extend_to_rectangular`].
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum RectangularStep {
    /// A corner added to a chain so that the defect is defined.
    ChainCorner(CornerData),
    Rect(Box<RectStep>),
}

/// Machine-readable summary of a [`RectangularStep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepRecord {
    ChainCorner {
        a: usize,
        c: usize,
        b: usize,
        d: usize,
        size: usize,
    },
    Rect(RectRecord),
}

impl RectangularStep {
    pub fn corner(&self) -> &CornerData {
        match self {
            RectangularStep::ChainCorner(c) => c,
            RectangularStep::Rect(s) => &s.corner,
        }
    }

    pub fn record(&self) -> StepRecord {
        match self {
            RectangularStep::ChainCorner(c) => StepRecord::ChainCorner {
                a: c.a,
                c: c.c,
                b: c.b,
                d: c.d,
                size: c.upper().len(),
            },
            RectangularStep::Rect(s) => StepRecord::Rect(s.record()),
        }
    }
}

/// Result of [`extend_to_rectangular`].
#[derive(Clone, Debug)]
pub struct RectangularExtension {
    pub lattice: Lattice,
    pub embedding: Embedding,
    pub steps: Vec<RectangularStep>,
}

/// Extends a slim semimodular lattice with at least three elements to a
/// slim rectangular lattice of the same length with an isomorphic
/// congruence lattice. A chain first receives a corner beside its top two
/// covers.
pub fn extend_to_rectangular(l: &Lattice) -> Result<RectangularExtension> {
    if l.len() < 3 {
        return Err(Error::TooSmall(l.len()));
    }
    require_slim_semimodular(l)?;
    let mut current = l.clone();
    let mut embedding = Embedding::identity(l);
    let mut steps = Vec::new();
    if l.is_chain() {
        let mut chain: Vec<usize> = l.elements().collect();
        chain.sort_by_key(|&x| l.order().down(x).len());
        let n = chain.len();
        let (k, data) = corner_insert(l, chain[n - 3], chain[n - 2], chain[n - 1])?;
        ensure(verify_corner_lemma(&data)?, "corner lemma holds")?;
        embedding = embedding.then(&data.embedding)?;
        current = k;
        steps.push(RectangularStep::ChainCorner(data));
    }
    loop {
        let pair = delta(&current)?;
        if pair.delta == 0 {
            break;
        }
        let (k, step) = rect_step(&current, &pair)?;
        embedding = embedding.then(&step.corner.embedding)?;
        current = k;
        steps.push(RectangularStep::Rect(Box::new(step)));
    }
    ensure(current.is_slim_rectangular(), "result is slim rectangular")?;
    ensure(current.length() == l.length(), "result has the original length")?;
    ensure(
        current.len() == l.len() + steps.len(),
        "each step adds one element",
    )?;
    ensure(
        is_congruence_preserving_extension(&embedding)?,
        "composite extension preserves congruences",
    )?;
    Ok(RectangularExtension {
        lattice: current,
        embedding,
        steps,
    })
}
