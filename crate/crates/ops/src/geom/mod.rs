//! Internal planar-geometry algorithms shared by the operations.

pub mod alg;
pub mod boolops;
pub mod noding;
pub mod offset;
