//! Cubical cell complex of a box in Z^m with integer chains and Z_n-valued
//! forms: boundary and coboundary, exterior derivative and coderivative,
//! connected components, the order `<|` on forms, and the combinatorics of
//! rectangular paths (corner plaquettes, bordering plaquettes, event E).
//!
//! Directions are 0-based. Only positively oriented cells are stored; values
//! on negative cells follow from the orientation rules.

pub mod cell;
pub mod chain;
pub mod complex;
pub mod error;
pub mod form;
pub mod geometry;
pub mod inequalities;
pub mod lattice_box;
pub mod path;

pub use cell::OrientedCell;
pub use chain::Chain;
pub use complex::IndexedComplex;
pub use error::{LatticeError, Result};
pub use form::{random_form, FormZn};
pub use geometry::{
    component_count, connected_components, corner_count, corner_plaquettes, corner_set, delta_on_path, in_event_e, lhd, p_gamma, restrict_gamma,
    restrict_gamma2, restrict_to_edges, v_set,
};
pub use inequalities::{check_all, FormStats, InequalityCheck};
pub use lattice_box::LatticeBox;
pub use path::{LatticePath, PathKind, Rectangle};
