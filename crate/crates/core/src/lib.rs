//! Finite semimodular lattices, Faigle geometries, and the constructions
//! that extend a semimodular lattice to a geometric or a slim rectangular
//! one while keeping control of congruences.
//!
//! ```
//! use faigle::{geom_of_lattice, Lattice};
//!
//! let m3 = Lattice::m(3);
//! let g = geom_of_lattice(&m3).unwrap();
//! assert_eq!(g.flats().len(), 5);
//! assert!(g.check_axioms().holds_cp());
//! ```

pub mod congruence;
pub mod dot;
pub mod elemset;
pub mod embedding;
pub mod error;
pub mod faigle;
pub mod geometric_extension;
pub mod iso;
pub mod lattice;
pub mod poset;
pub mod rectangular_extension;
pub mod testkit;
pub mod text;

pub use congruence::{
    all_congruences, corner_insert, epsilon_extend, is_congruence_preserving_extension, principal_congruence,
    restriction, verify_corner_lemma, Congruence, CornerData,
};
pub use elemset::ElemSet;
pub use embedding::Embedding;
pub use error::{Error, Result};
pub use faigle::{
    closure_description_check, geom_of_lattice, geometry_isomorphic, roundtrip_geometry, roundtrip_lattice,
    AxiomReport, FaigleGeometry,
};
pub use geometric_extension::{extend_to_geometric, lowering_step, GeometricExtension, LoweringStep};
pub use iso::{find_isomorphism, find_poset_isomorphism};
pub use lattice::Lattice;
pub use poset::Poset;
pub use rectangular_extension::{
    delta, extend_to_rectangular, rect_step, ChainPair, RectStep, RectangularExtension, RectangularStep,
};
