//! Structural graph machinery: delta-wye transformations and families,
//! planarity and duals, minor containment and the forbidden-minor scan,
//! the well-connected gadget, primitive divergence, and builders for the
//! named graphs.

pub mod builders;
pub mod deltay;
pub mod divergence;
pub mod gadgets;
pub mod minors;
pub mod planar;

pub use builders::{builtin, parse_builtin_ref, BuiltinError};
pub use deltay::{delta_to_y, delta_y_family, y_to_delta, DeltaYError, DeltaYSite};
pub use divergence::{primitive_divergent, DivergenceReport};
pub use gadgets::{
    has_well_connected_s2, s2_gadget, three_cut_edge_ordering, verify_three_cut_ordering,
    GadgetError, OrderingResult,
};
pub use minors::{forbidden_minor_scan, has_minor, has_minor_certificate, ForbiddenMinor};
pub use planar::{
    euler_check, is_planar, planar_dual, rotation_contract_edge, rotation_delete_edge,
    trace_faces, PlanarError, RotationSystem,
};
