#![allow(clippy::needless_range_loop)]

pub mod bits;
pub mod capacity;
pub mod cli;
pub mod closure;
pub mod conditions;
pub mod coproduct;
pub mod dframe;
pub mod lattice;
pub mod presentation;
pub mod search;
pub mod text;

pub use bits::ElemSet;
pub use capacity::{Capacity, CapacityError};
pub use lattice::{FinFrame, FinPoset, FrameHom};
