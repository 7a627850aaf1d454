//! Order embeddings between lattices and the sub-structure checks on them.

use crate::error::{ensure, Error, Result};
use crate::lattice::Lattice;

/// An injective map from `source` into `target` that preserves and reflects
/// the order.
///
/// Both lattices are owned so that extension results can be returned
/// together with the embedding that certifies them.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Lattice,
    target: Lattice,
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(source: Lattice, target: Lattice, map: Vec<usize>) -> Result<Embedding> {
        if map.len() != source.len() {
            return Err(Error::NotAnEmbedding(format!(
                "map has {} entries for {} elements",
                map.len(),
                source.len()
            )));
        }
        let mut hit = vec![false; target.len()];
        for &y in &map {
            target.check_element(y)?;
            if std::mem::replace(&mut hit[y], true) {
                return Err(Error::NotAnEmbedding(format!("{y} is hit twice")));
            }
        }
        for x in source.elements() {
            for y in source.elements() {
                if source.leq(x, y) != target.leq(map[x], map[y]) {
                    return Err(Error::NotAnEmbedding(format!(
                        "order between {x} and {y} is not preserved and reflected"
                    )));
                }
            }
        }
        Ok(Embedding { source, target, map })
    }

    pub fn identity(l: &Lattice) -> Embedding {
        Embedding {
            source: l.clone(),
            target: l.clone(),
            map: l.elements().collect(),
        }
    }

    pub fn source(&self) -> &Lattice {
        &self.source
    }

    pub fn target(&self) -> &Lattice {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// The element of the source mapped to `y`, if any.
    pub fn preimage(&self, y: usize) -> Option<usize> {
        self.map.iter().position(|&m| m == y)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        if self.target != other.source {
            return Err(Error::precondition("embeddings do not compose"));
        }
        Ok(Embedding {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    /// The image is closed under target meets and they agree with source meets.
    pub fn is_meet_subsemilattice(&self) -> bool {
        let (l, k, e) = (&self.source, &self.target, &self.map);
        l.elements()
            .all(|x| l.elements().all(|y| k.meet(e[x], e[y]) == e[l.meet(x, y)]))
    }

    pub fn is_join_subsemilattice(&self) -> bool {
        let (l, k, e) = (&self.source, &self.target, &self.map);
        l.elements()
            .all(|x| l.elements().all(|y| k.join(e[x], e[y]) == e[l.join(x, y)]))
    }

    pub fn is_sublattice(&self) -> bool {
        self.is_meet_subsemilattice() && self.is_join_subsemilattice()
    }

    /// A sublattice whose covers are exactly the target covers between image
    /// elements.
    pub fn is_cover_preserving_sublattice(&self) -> bool {
        let (l, k, e) = (&self.source, &self.target, &self.map);
        self.is_sublattice()
            && l.elements()
                .all(|x| l.elements().all(|y| l.is_cover(x, y) == k.is_cover(e[x], e[y])))
    }

    /// For semimodular lattices of the same length, a meet-subsemilattice is
    /// automatically a sublattice. Checks the hypotheses, then confirms the
    /// conclusion by comparing joins.
    pub fn wild_sublattice_check(&self) -> Result<bool> {
        if !self.source.is_semimodular() || !self.target.is_semimodular() {
            return Err(Error::precondition("both lattices must be semimodular"));
        }
        if self.source.length() != self.target.length() {
            return Err(Error::precondition(format!(
                "lengths differ: {} vs {}",
                self.source.length(),
                self.target.length()
            )));
        }
        if !self.is_meet_subsemilattice() {
            return Err(Error::precondition("image is not closed under meets"));
        }
        ensure(
            self.is_join_subsemilattice(),
            "equal-length semimodular meet-subsemilattice is not join-closed",
        )?;
        Ok(true)
    }
}
