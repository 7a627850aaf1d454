//! Faigle geometries and their correspondence with finite semimodular
//! lattices.
//!
//! A Faigle geometry is a finite poset `P` together with a family `F` of
//! down-sets of `P` (the *flats*) such that
//!
//! * **F∩**: `P ∈ F` and `F` is closed under intersection;
//! * **F↓**: every flat is a down-set;
//! * **Pr**: `∅ ∈ F`, and `↓u` and `⇓u = ↓u \ {u}` are flats for every `u`;
//! * **CP**: whenever `u ∉ X ∈ F` and `⇓u ⊆ X`, some flat covering `X` in
//!   `(F, ⊆)` contains `u`.
//!
//! Under the first three axioms, CP is equivalent to the exchange property
//! **FEP**: for `u, v ∉ S ∈ F` with `⇓u ⊆ S`, `v ∈ cl(S ∪ {u})` implies
//! `u ∈ cl(S ∪ {v})`, where `cl` is intersection of all flats containing a set.
//!
//! [`geom_of_lattice`] and [`FaigleGeometry::lattice_of_flats`] are mutually
//! inverse up to isomorphism between semimodular lattices and geometries.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{ensure, Error, Result};
use crate::iso::for_each_poset_isomorphism;
use crate::lattice::Lattice;
use crate::poset::{check_index, Poset};

/// A poset with a family of flats. Validity is not enforced on
/// construction; [`FaigleGeometry::verify`] runs the full axiom check and
/// records the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaigleGeometry {
    ground: Poset,
    flats: Vec<ElemSet>,
    verified: bool,
}

/// Failure of F∩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CapWitness {
    GroundMissing,
    Intersection { x: ElemSet, y: ElemSet },
}

/// Failure of F↓: `member ∈ flat`, `below <= member`, `below ∉ flat`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DownWitness {
    pub flat: ElemSet,
    pub member: usize,
    pub below: usize,
}

/// Failure of Pr.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "u", rename_all = "snake_case")]
pub enum PrWitness {
    EmptyMissing,
    PrincipalMissing(usize),
    StrictPrincipalMissing(usize),
}

/// Failure of CP at `(u, X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpWitness {
    pub u: usize,
    pub x: ElemSet,
}

/// Failure of FEP at `(u, v, S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FepWitness {
    pub u: usize,
    pub v: usize,
    pub s: ElemSet,
}

/// Outcome of [`FaigleGeometry::check_axioms`]. Each axiom holds exactly
/// when its witness is absent. Witnesses are the first failure found when
/// scanning flats in canonical order, then `u`, then `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    holds_cap: bool,
    holds_down: bool,
    holds_pr: bool,
    holds_cp: bool,
    holds_fep: bool,
    cap: Option<CapWitness>,
    down: Option<DownWitness>,
    pr: Option<PrWitness>,
    cp: Option<CpWitness>,
    fep: Option<FepWitness>,
}

impl AxiomReport {
    fn new(
        cap: Option<CapWitness>,
        down: Option<DownWitness>,
        pr: Option<PrWitness>,
        cp: Option<CpWitness>,
        fep: Option<FepWitness>,
    ) -> Self {
        AxiomReport {
            holds_cap: cap.is_none(),
            holds_down: down.is_none(),
            holds_pr: pr.is_none(),
            holds_cp: cp.is_none(),
            holds_fep: fep.is_none(),
            cap,
            down,
            pr,
            cp,
            fep,
        }
    }

    pub fn holds_cap(&self) -> bool {
        self.holds_cap
    }
    pub fn holds_down(&self) -> bool {
        self.holds_down
    }
    pub fn holds_pr(&self) -> bool {
        self.holds_pr
    }
    pub fn holds_cp(&self) -> bool {
        self.holds_cp
    }
    pub fn holds_fep(&self) -> bool {
        self.holds_fep
    }
    pub fn cap_witness(&self) -> Option<&CapWitness> {
        self.cap.as_ref()
    }
    pub fn down_witness(&self) -> Option<&DownWitness> {
        self.down.as_ref()
    }
    pub fn pr_witness(&self) -> Option<&PrWitness> {
        self.pr.as_ref()
    }
    pub fn cp_witness(&self) -> Option<&CpWitness> {
        self.cp.as_ref()
    }
    pub fn fep_witness(&self) -> Option<&FepWitness> {
        self.fep.as_ref()
    }

    /// F∩, F↓, Pr and CP all hold.
    pub fn is_faigle_geometry(&self) -> bool {
        self.holds_cap && self.holds_down && self.holds_pr && self.holds_cp
    }

    /// Names of the failed axioms.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.holds_cap, "F∩"),
            (self.holds_down, "F↓"),
            (self.holds_pr, "Pr"),
            (self.holds_cp, "CP"),
            (self.holds_fep, "FEP"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

impl FaigleGeometry {
    /// Stores the family sorted in canonical order without duplicates.
    pub fn new(ground: Poset, flats: impl IntoIterator<Item = ElemSet>) -> Result<Self> {
        let mut flats: Vec<ElemSet> = flats.into_iter().collect();
        for f in &flats {
            if let Some(x) = f.iter().last() {
                check_index(x, ground.len())?;
            }
        }
        flats.sort();
        flats.dedup();
        Ok(FaigleGeometry {
            ground,
            flats,
            verified: false,
        })
    }

    /// Runs the axiom check and marks the geometry verified if it passes.
    pub fn verify(mut self) -> Result<Self> {
        let report = self.check_axioms();
        if !report.is_faigle_geometry() || !report.holds_fep() {
            return Err(Error::NotAFaigleGeometry(format!(
                "failed {}",
                report.failures().join(", ")
            )));
        }
        self.verified = true;
        Ok(self)
    }

    pub fn ground(&self) -> &Poset {
        &self.ground
    }

    pub fn flats(&self) -> &[ElemSet] {
        &self.flats
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Position of `x` in the canonical flat order.
    pub fn flat_index(&self, x: &ElemSet) -> Option<usize> {
        self.flats.binary_search(x).ok()
    }

    pub fn is_flat(&self, x: &ElemSet) -> bool {
        self.flat_index(x).is_some()
    }

    fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::NotVerifiedGeometry)
        }
    }

    /// Intersection of all flats containing `x`.
    pub fn closure(&self, x: &ElemSet) -> Result<ElemSet> {
        if !self.is_flat(&self.ground.elements()) {
            return Err(Error::GroundNotInFamily);
        }
        Ok(self.closure_or_ground(x))
    }

    /// As [`closure`](Self::closure), reading an empty intersection as the
    /// whole ground set so the checker can run on arbitrary families.
    fn closure_or_ground(&self, x: &ElemSet) -> ElemSet {
        self.flats
            .iter()
            .filter(|f| x.is_subset(f))
            .fold(self.ground.elements(), |acc, f| &acc & f)
    }

    /// Upper covers of every flat in `(F, ⊆)`, by flat index.
    pub fn flat_upper_covers(&self) -> Vec<Vec<usize>> {
        let f = &self.flats;
        (0..f.len())
            .map(|i| {
                // flats are sorted by size, so strict supersets come later and
                // a non-cover superset always contains an earlier cover
                let mut covers: Vec<usize> = Vec::new();
                for j in i + 1..f.len() {
                    if f[i].is_proper_subset(&f[j]) && !covers.iter().any(|&k| f[k].is_proper_subset(&f[j])) {
                        covers.push(j);
                    }
                }
                covers
            })
            .collect()
    }

    /// Whether flat `y` covers flat `x` in `(F, ⊆)`, by direct scan.
    pub fn is_flat_cover(&self, x: &ElemSet, y: &ElemSet) -> bool {
        x.is_proper_subset(y)
            && self.is_flat(x)
            && self.is_flat(y)
            && !self
                .flats
                .iter()
                .any(|z| x.is_proper_subset(z) && z.is_proper_subset(y))
    }

    /// Evaluates F∩, F↓, Pr, CP and FEP exhaustively.
    pub fn check_axioms(&self) -> AxiomReport {
        let covers = self.flat_upper_covers();
        AxiomReport::new(
            self.cap_witness(),
            self.down_witness(),
            self.pr_witness(),
            self.cp_witness(&covers),
            self.fep_witness(true),
        )
    }

    fn cap_witness(&self) -> Option<CapWitness> {
        if !self.is_flat(&self.ground.elements()) {
            return Some(CapWitness::GroundMissing);
        }
        for (i, x) in self.flats.iter().enumerate() {
            for y in &self.flats[i + 1..] {
                if !self.is_flat(&(x & y)) {
                    return Some(CapWitness::Intersection {
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }
        None
    }

    fn down_witness(&self) -> Option<DownWitness> {
        for f in &self.flats {
            for member in f.iter() {
                if let Some(below) = (self.ground.down(member) - f).first() {
                    return Some(DownWitness {
                        flat: f.clone(),
                        member,
                        below,
                    });
                }
            }
        }
        None
    }

    fn pr_witness(&self) -> Option<PrWitness> {
        if !self.is_flat(&ElemSet::new()) {
            return Some(PrWitness::EmptyMissing);
        }
        for u in 0..self.ground.len() {
            if !self.is_flat(self.ground.down(u)) {
                return Some(PrWitness::PrincipalMissing(u));
            }
            if !self.is_flat(&self.ground.strict_down(u)) {
                return Some(PrWitness::StrictPrincipalMissing(u));
            }
        }
        None
    }

    fn cp_witness(&self, covers: &[Vec<usize>]) -> Option<CpWitness> {
        for (i, x) in self.flats.iter().enumerate() {
            for u in 0..self.ground.len() {
                if x.contains(u) || !self.ground.strict_down(u).is_subset(x) {
                    continue;
                }
                if !covers[i].iter().any(|&j| self.flats[j].contains(u)) {
                    return Some(CpWitness { u, x: x.clone() });
                }
            }
        }
        None
    }

    /// First FEP counterexample. With `require_u_outside = false` the
    /// hypothesis `u ∉ S` is dropped, which must not change the outcome.
    pub fn fep_witness(&self, require_u_outside: bool) -> Option<FepWitness> {
        let n = self.ground.len();
        for s in &self.flats {
            let cl: Vec<ElemSet> = (0..n).map(|w| self.closure_or_ground(&s.with(w))).collect();
            for u in 0..n {
                if require_u_outside && s.contains(u) {
                    continue;
                }
                if !self.ground.strict_down(u).is_subset(s) {
                    continue;
                }
                for v in 0..n {
                    if s.contains(v) || !cl[u].contains(v) {
                        continue;
                    }
                    if !cl[v].contains(u) {
                        return Some(FepWitness { u, v, s: s.clone() });
                    }
                }
            }
        }
        None
    }

    /// Whether `(u, X)` violates CP.
    pub fn is_cp_counterexample(&self, u: usize, x: &ElemSet) -> bool {
        self.is_flat(x)
            && !x.contains(u)
            && self.ground.strict_down(u).is_subset(x)
            && !self
                .flats
                .iter()
                .any(|y| y.contains(u) && self.is_flat_cover(x, y))
    }

    /// Whether `(u, v, S)` violates FEP.
    pub fn is_fep_counterexample(&self, u: usize, v: usize, s: &ElemSet) -> bool {
        self.is_flat(s)
            && !s.contains(u)
            && !s.contains(v)
            && self.ground.strict_down(u).is_subset(s)
            && self.closure_or_ground(&s.with(u)).contains(v)
            && !self.closure_or_ground(&s.with(v)).contains(u)
    }

    /// The unique flat `Y` with `X ≺ Y` and `u ∈ Y` promised by CP.
    pub fn cp_unique_cover(&self, u: usize, x: &ElemSet) -> Result<ElemSet> {
        self.require_verified()?;
        check_index(u, self.ground.len())?;
        if !self.is_flat(x) {
            return Err(Error::precondition(format!("{x} is not a flat")));
        }
        if x.contains(u) {
            return Err(Error::precondition(format!("{u} already lies in {x}")));
        }
        if !self.ground.strict_down(u).is_subset(x) {
            return Err(Error::precondition(format!("⇓{u} is not contained in {x}")));
        }
        let found: Vec<&ElemSet> = self
            .flats
            .iter()
            .filter(|y| y.contains(u) && self.is_flat_cover(x, y))
            .collect();
        match found.as_slice() {
            [y] => Ok((*y).clone()),
            _ => Err(Error::invariant(format!(
                "{} flats cover {x} and contain {u}",
                found.len()
            ))),
        }
    }

    /// The lattice `(F, ⊆)`. Element `i` is the flat `self.flats()[i]`, so
    /// the empty flat is element 0 and the ground set is the last element.
    pub fn lattice_of_flats(&self) -> Result<Lattice> {
        self.require_verified()?;
        let f = &self.flats;
        let names: Vec<String> = (0..self.ground.len()).map(|x| self.ground.name(x)).collect();
        let labels = f
            .iter()
            .map(|x| {
                let parts: Vec<&str> = x.iter().map(|i| names[i].as_str()).collect();
                Some(format!("{{{}}}", parts.join(",")))
            })
            .collect();
        let order = Poset::from_relation(f.len(), |i, j| f[i].is_subset(&f[j]))?.with_labels(labels);
        let lattice = Lattice::from_poset(order)?;
        for i in 0..f.len() {
            for j in i..f.len() {
                ensure(
                    self.flat_index(&(&f[i] & &f[j])) == Some(lattice.meet(i, j)),
                    "meet of flats is their intersection",
                )?;
                ensure(
                    self.flat_index(&self.closure_or_ground(&(&f[i] | &f[j]))) == Some(lattice.join(i, j)),
                    "join of flats is the closure of their union",
                )?;
            }
        }
        ensure(lattice.is_semimodular(), "lattice of flats is semimodular")?;
        Ok(lattice)
    }

    /// Evaluates the right-hand side of the flat cover characterization,
    /// `∃u ∈ Y \ X: ⇓u ⊆ X and Y = cl(X ∪ {u})`, compares it with the cover
    /// relation of `(F, ⊆)`, and returns the cover bit.
    pub fn flat_cover_characterization(&self, x: &ElemSet, y: &ElemSet) -> Result<bool> {
        self.require_verified()?;
        if !self.is_flat(x) || !self.is_flat(y) {
            return Err(Error::precondition("both arguments must be flats"));
        }
        let by_generator = (y - x)
            .iter()
            .any(|u| self.ground.strict_down(u).is_subset(x) && &self.closure_or_ground(&x.with(u)) == y);
        let direct = self.is_flat_cover(x, y);
        ensure(
            by_generator == direct,
            &format!("cover characterization disagrees on {x} ≺ {y}"),
        )?;
        Ok(direct)
    }
}

/// `{i : jir[i] <= x}`, the flat of `x` in the associated geometry.
fn flat_of(l: &Lattice, jir: &[usize], x: usize) -> ElemSet {
    jir.iter()
        .enumerate()
        .filter(|&(_, &j)| l.leq(j, x))
        .map(|(i, _)| i)
        .collect()
}

/// The geometry `(Jir L, {Jir L ∩ ↓x : x ∈ L})` of a semimodular lattice.
///
/// Ground element `i` is the `i`-th join-irreducible of `l` in ascending
/// index order (see [`Lattice::jir_elements`]). The result is verified.
pub fn geom_of_lattice(l: &Lattice) -> Result<FaigleGeometry> {
    if !l.is_semimodular() {
        return Err(Error::NotSemimodular);
    }
    let jir = l.jir_elements();
    let flats: Vec<ElemSet> = l.elements().map(|x| flat_of(l, &jir, x)).collect();
    let g = FaigleGeometry::new(l.jir_poset(), flats)?;
    ensure(g.flats.len() == l.len(), "distinct elements have distinct flats")?;
    let report = g.check_axioms();
    ensure(
        report.is_faigle_geometry() && report.holds_fep(),
        "geometry of a semimodular lattice satisfies every axiom",
    )?;
    Ok(FaigleGeometry { verified: true, ..g })
}

/// Checks `cl(X) = Jir L ∩ ↓(⋁X)` for a set `X` of ground indices of
/// `geom_of_lattice(l)`.
pub fn closure_description_check(l: &Lattice, x: &ElemSet) -> Result<bool> {
    let g = geom_of_lattice(l)?;
    closure_description_check_in(l, &g, x)
}

/// As [`closure_description_check`] with the geometry already built.
pub fn closure_description_check_in(l: &Lattice, g: &FaigleGeometry, x: &ElemSet) -> Result<bool> {
    let jir = l.jir_elements();
    if let Some(i) = x.iter().last() {
        check_index(i, jir.len())?;
    }
    let join = l.join_all(x.iter().map(|i| jir[i]));
    Ok(g.closure(x)? == flat_of(l, &jir, join))
}

/// Builds `Lat(Geom L)` and checks that `x ↦ Jir L ∩ ↓x` is an isomorphism
/// whose inverse is `Y ↦ ⋁Y`.
pub fn roundtrip_lattice(l: &Lattice) -> Result<bool> {
    let g = geom_of_lattice(l)?;
    let k = g.lattice_of_flats()?;
    let jir = l.jir_elements();
    ensure(k.len() == l.len(), "Lat(Geom L) has as many elements as L")?;
    let lambda: Vec<usize> = l
        .elements()
        .map(|x| {
            g.flat_index(&flat_of(l, &jir, x))
                .ok_or_else(|| Error::invariant("λ(x) is a flat"))
        })
        .collect::<Result<_>>()?;
    let mut hit = vec![false; k.len()];
    for &i in &lambda {
        ensure(!std::mem::replace(&mut hit[i], true), "λ is injective")?;
    }
    for x in l.elements() {
        for y in l.elements() {
            ensure(
                l.leq(x, y) == k.leq(lambda[x], lambda[y]),
                "λ preserves and reflects order",
            )?;
            ensure(
                k.join(lambda[x], lambda[y]) == lambda[l.join(x, y)],
                "λ preserves joins",
            )?;
            ensure(
                k.meet(lambda[x], lambda[y]) == lambda[l.meet(x, y)],
                "λ preserves meets",
            )?;
        }
    }
    let psi: Vec<usize> = g
        .flats()
        .iter()
        .map(|f| l.join_all(f.iter().map(|i| jir[i])))
        .collect();
    for x in l.elements() {
        ensure(psi[lambda[x]] == x, "ψ₁ ∘ λ is the identity")?;
    }
    for (i, &x) in psi.iter().enumerate() {
        ensure(lambda[x] == i, "λ ∘ ψ₁ is the identity")?;
    }
    Ok(true)
}

/// Builds `Geom(Lat G)` and checks that `u ↦ ↓u` is a poset isomorphism onto
/// its join-irreducibles that carries the flats of `G` onto its flats.
pub fn roundtrip_geometry(g: &FaigleGeometry) -> Result<bool> {
    let k = g.lattice_of_flats()?;
    let g2 = geom_of_lattice(&k)?;
    let kjir = k.jir_elements();
    let p = g.ground();
    let phi: Vec<usize> = (0..p.len())
        .map(|u| {
            let flat = g
                .flat_index(p.down(u))
                .ok_or_else(|| Error::invariant("↓u is a flat"))?;
            kjir.iter()
                .position(|&j| j == flat)
                .ok_or_else(|| Error::invariant("↓u is join-irreducible in Lat G"))
        })
        .collect::<Result<_>>()?;
    ensure(phi.len() == kjir.len(), "φ is surjective")?;
    for u in 0..p.len() {
        for v in 0..p.len() {
            ensure(
                p.leq(u, v) == g2.ground().leq(phi[u], phi[v]),
                "φ preserves and reflects order",
            )?;
        }
    }
    let mut image: Vec<ElemSet> = g.flats().iter().map(|f| f.map(|u| phi[u])).collect();
    image.sort();
    ensure(
        image == g2.flats,
        "φ̄ maps the flats onto the flats of Geom(Lat G)",
    )?;
    Ok(true)
}

/// A poset isomorphism `φ` between the grounds with `φ̄(F₁) = F₂`, if any.
pub fn geometry_isomorphic(g1: &FaigleGeometry, g2: &FaigleGeometry) -> Option<Vec<usize>> {
    if g1.flats.len() != g2.flats.len() {
        return None;
    }
    let mut found = None;
    for_each_poset_isomorphism(g1.ground(), g2.ground(), |phi| {
        let mut image: Vec<ElemSet> = g1.flats.iter().map(|f| f.map(|u| phi[u])).collect();
        image.sort();
        if image == g2.flats {
            found = Some(phi.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}
