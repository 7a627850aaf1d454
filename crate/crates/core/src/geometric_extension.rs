//! Length-preserving extension of a finite semimodular lattice to a
//! geometric lattice with as many atoms as the original has
//! join-irreducibles.
//!
//! Each step works on the geometry `(P, F)` of the current lattice: a
//! maximal non-minimal element `a` of `P` is made incomparable to everything
//! (giving the poset `Q`), and for every flat `X` that avoids `a` and has no
//! cover containing `a`, the set `X ∪ {a}` is added as a new flat. The number
//! of comparable pairs of the ground poset strictly decreases, and when no
//! candidate is left every join-irreducible is an atom.

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::embedding::Embedding;
use crate::error::{ensure, Error, Result};
use crate::faigle::{geom_of_lattice, FaigleGeometry};
use crate::lattice::Lattice;
use crate::poset::{check_index, Poset};

/// One application of the lowering construction.
#[derive(Clone, Debug)]
pub struct LoweringStep {
    /// The ground element made incomparable to all others.
    pub a: usize,
    /// `P` with every comparability involving `a` removed.
    pub q: Poset,
    /// Flats avoiding `a` none of whose covers contains `a`.
    pub t: Vec<ElemSet>,
    /// `{X ∪ {a} : X ∈ t}`.
    pub n: Vec<ElemSet>,
    /// `(Q, F ∪ N)`, verified.
    pub geometry: FaigleGeometry,
    /// `|≤_P|`, reflexive pairs included.
    pub k_before: usize,
    /// `|≤_Q|`.
    pub k_after: usize,
}

/// Machine-readable summary of a [`LoweringStep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoweringRecord {
    pub a: usize,
    pub t: usize,
    pub n: usize,
    pub k_before: usize,
    pub k_after: usize,
}

impl LoweringStep {
    pub fn record(&self) -> LoweringRecord {
        LoweringRecord {
            a: self.a,
            t: self.t.len(),
            n: self.n.len(),
            k_before: self.k_before,
            k_after: self.k_after,
        }
    }
}

/// Ground elements `u` whose principal flat `↓u` is a maximal element of
/// `Jir L \ At L` in `L = Lat G`, in ascending order.
pub fn lowering_candidates(g: &FaigleGeometry) -> Result<Vec<usize>> {
    let l = g.lattice_of_flats()?;
    let p = g.ground();
    let element = |u: usize| {
        g.flat_index(p.down(u))
            .ok_or_else(|| Error::invariant("↓u is a flat"))
    };
    let elements: Vec<usize> = (0..p.len()).map(element).collect::<Result<_>>()?;
    let non_atom_jir = |x: usize| l.is_join_irreducible(x) && !l.atoms().contains(x);
    Ok((0..p.len())
        .filter(|&u| {
            let x = elements[u];
            non_atom_jir(x) && !l.elements().any(|y| l.lt(x, y) && non_atom_jir(y))
        })
        .collect())
}

/// Applies the lowering construction at `a`.
pub fn lowering_step(g: &FaigleGeometry, a: usize) -> Result<LoweringStep> {
    if !g.is_verified() {
        return Err(Error::NotVerifiedGeometry);
    }
    let p = g.ground();
    check_index(a, p.len())?;
    if !lowering_candidates(g)?.contains(&a) {
        return Err(Error::precondition(format!(
            "↓{} is not a maximal non-atom join-irreducible",
            p.name(a)
        )));
    }
    let q = Poset::from_relation(p.len(), |x, y| x == y || (x != a && y != a && p.leq(x, y)))?
        .with_labels(p.labels().to_vec());

    let flats = g.flats();
    let covers = g.flat_upper_covers();
    let t: Vec<ElemSet> = flats
        .iter()
        .zip(&covers)
        .filter(|(x, ys)| !x.contains(a) && ys.iter().all(|&j| !flats[j].contains(a)))
        .map(|(x, _)| x.clone())
        .collect();
    let n: Vec<ElemSet> = t.iter().map(|x| x.with(a)).collect();
    ensure(
        n.iter().all(|x| !g.is_flat(x)),
        "new flats are disjoint from the old ones",
    )?;

    let geometry = FaigleGeometry::new(q.clone(), flats.iter().chain(&n).cloned())?;
    ensure(
        geometry.flats().len() == flats.len() + n.len(),
        "merging new flats removes no duplicates",
    )?;
    // N ∪ T is closed downwards inside G, and T on its own as well
    let in_t = |y: &ElemSet| t.binary_search(y).is_ok();
    let in_n = |y: &ElemSet| n.binary_search(y).is_ok();
    for x in t.iter().chain(&n) {
        for y in geometry.flats().iter().filter(|y| y.is_subset(x)) {
            ensure(in_t(y) || in_n(y), "subflats of N ∪ T stay in N ∪ T")?;
            ensure(!in_t(x) || in_t(y), "subflats of T stay in T")?;
        }
    }
    let report = geometry.check_axioms();
    ensure(
        report.is_faigle_geometry() && report.holds_fep(),
        "lowered family is a Faigle geometry",
    )?;
    let geometry = geometry.verify()?;
    let (k_before, k_after) = (p.comparability_count(), q.comparability_count());
    ensure(k_after < k_before, "comparability count decreases")?;
    Ok(LoweringStep {
        a,
        q,
        t,
        n,
        geometry,
        k_before,
        k_after,
    })
}

/// Result of [`extend_to_geometric`].
#[derive(Clone, Debug)]
pub struct GeometricExtension {
    pub lattice: Lattice,
    pub embedding: Embedding,
    pub steps: Vec<LoweringStep>,
}

/// Embedding of `Lat G` into `Lat G'` for `F ⊆ G` by flat inclusion.
fn inclusion(
    from: &FaigleGeometry,
    from_lattice: &Lattice,
    to: &FaigleGeometry,
    to_lattice: &Lattice,
) -> Result<Embedding> {
    let map = from
        .flats()
        .iter()
        .map(|x| {
            to.flat_index(x)
                .ok_or_else(|| Error::invariant("old flats survive"))
        })
        .collect::<Result<_>>()?;
    Embedding::new(from_lattice.clone(), to_lattice.clone(), map)
}

/// Extends `l` to a geometric lattice of the same length. The candidate
/// with the smallest index is lowered at every step. A lattice that is
/// already geometric is returned unchanged with no steps.
pub fn extend_to_geometric(l: &Lattice) -> Result<GeometricExtension> {
    if !l.is_semimodular() {
        return Err(Error::NotSemimodular);
    }
    if l.is_geometric() {
        return Ok(GeometricExtension {
            lattice: l.clone(),
            embedding: Embedding::identity(l),
            steps: Vec::new(),
        });
    }
    let mut g = geom_of_lattice(l)?;
    let mut current = g.lattice_of_flats()?;
    let jir = l.jir_elements();
    let lambda: Vec<usize> = l
        .elements()
        .map(|x| {
            let flat: ElemSet = (0..jir.len()).filter(|&i| l.leq(jir[i], x)).collect();
            g.flat_index(&flat)
                .ok_or_else(|| Error::invariant("λ(x) is a flat"))
        })
        .collect::<Result<_>>()?;
    let mut embedding = Embedding::new(l.clone(), current.clone(), lambda)?;
    let mut steps = Vec::new();
    while let Some(&a) = lowering_candidates(&g)?.first() {
        let step = lowering_step(&g, a)?;
        let next = step.geometry.lattice_of_flats()?;
        let e = inclusion(&g, &current, &step.geometry, &next)?;
        ensure(e.is_meet_subsemilattice(), "old lattice is a meet-subsemilattice")?;
        ensure(next.length() == current.length(), "lowering keeps the length")?;
        e.wild_sublattice_check()?;
        ensure(
            e.is_cover_preserving_sublattice(),
            "old lattice is cover-preserving",
        )?;
        embedding = embedding.then(&e)?;
        g = step.geometry.clone();
        current = next;
        steps.push(step);
    }
    ensure(current.is_geometric(), "result is geometric")?;
    ensure(current.length() == l.length(), "result has the original length")?;
    ensure(
        current.atoms().len() == jir.len(),
        "result has one atom per original join-irreducible",
    )?;
    ensure(
        embedding.is_sublattice(),
        "composite map is a sublattice embedding",
    )?;
    ensure(
        embedding.is_cover_preserving_sublattice(),
        "composite map is cover-preserving",
    )?;
    Ok(GeometricExtension {
        lattice: current,
        embedding,
        steps,
    })
}
