//! Exact construction and verification of twisted multiloop, toroidal and
//! extended affine Lie algebras together with their vertex representations.

pub mod affroot;
pub mod cliffordtkk;
pub mod cycfield;
pub mod glvirmod;
pub mod linalg;
pub mod liestruct;
pub mod presets;
pub mod runner;
pub mod toroidal;
pub mod verma;
pub mod vertexrep;
