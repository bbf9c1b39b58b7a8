//! Eccentricity matrices of trees, their spectra, closed forms for caterpillar
//! families, equitable partitions and exhaustive extremal search.

pub mod closed_forms;
pub mod enumeration;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod partitions;
pub mod spectral;

pub use families::{FamilyError, FamilySpec};
pub use graph::{Graph, GraphError};
pub use matrix::{IntSymMatrix, MatrixError};
pub use spectral::{Inertia, SpectralError, Spectrum};
