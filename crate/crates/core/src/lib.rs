//! Certified analysis of real slices of projective hypersurfaces.

mod par;
pub mod poly;
pub mod interval;
pub mod topology;
pub mod projective;
pub mod catalog;
