//! Finite posets, finite frames (finite distributive lattices) and frame
//! homomorphisms.

mod frame;
mod hom;
mod poset;

pub use frame::{
    validate_frame, FinFrame, FrameError, FrameLaw, FrameTables, FrameValidation, LawViolation,
    StructuralError,
};
pub use hom::{enumerate_homs, hom_violation, FrameHom, HomError, HomViolation};
pub use poset::{FinPoset, OrderError};
