//! Periodic two-layer weaving designs and their parallel-axis symmetry groups.
//!
//! A *design* is a doubly periodic dark/pale colouring of unit cells: dark
//! means the warp (vertical strand) is uppermost at that crossing. This crate
//! models designs as square binary grids, provides an exact integer algebra of
//! the grid isometries that can occur in their symmetry groups (including the
//! layer-exchange flag `τ`), and builds the ten species of symmetry groups
//! with parallel diagonal axes and no rotations.
//!
//! On top of that sit the combinatorial tools:
//!
//! - [`species`]: parameter feasibility rules, canonical generator sets,
//!   order/period formulas, and the order-driven candidate search.
//! - [`enumeration`]: orbit colouring of a lattice fundamental domain and
//!   exhaustive enumeration of all designs of a family, with rejection of
//!   extra symmetry and deduplication up to a configurable equivalence.
//! - [`analysis`]: isonemality (strand transitivity), hangs-together
//!   (strong connectivity of the over/under relation), strand doubling, and
//!   quadrant halving with the cell-numbering bookkeeping it needs.
//! - [`catalog`]: the order-driven catalog pipeline and falls-apart sublists.
//! - [`render`]: deterministic SVG rendering with axis and lattice-unit
//!   overlays.

pub mod analysis;
pub mod catalog;
pub mod design;
pub mod enumeration;
pub mod isometry;
pub mod render;
pub mod species;

pub use analysis::{
    double, halve, hangs_together, is_isonemal, numbering_action, NumberingAction,
    NumberingEffect, Quadrant, QuadrantNumbering,
};
pub use catalog::{catalog, falls_apart_list, CatalogEntry, CatalogOutput, FamilyCatalog};
pub use design::{Compass, Design, DesignError, GenusFlag, GenusReport, ViewId, ViewSide};
pub use enumeration::{
    canonical_key, enumerate_family, enumerate_family_designs, enumerate_family_raw,
    full_symmetry_group, orbits, EnumError, EnumOptions, EquivalencePolicy, FamilyDesign,
    FamilyEnumeration, OrbitSystem, ProjectedType, SymmetryGroupInfo,
};
pub use isometry::{Cell, Lattice, Linear, OpClass, OpKind, QCoord, Side, SymmetryOp};
pub use species::{
    candidates_for_order, group_for, twill_name, validate_params, GroupSpec, LatticeUnit,
    ParamVerdict, RuleViolation, SpeciesError, SpeciesParams, SpeciesTag, UnitShape,
};
