//! Hamiltonian tetrahedralizations of point sets in general position.
//!
//! Coordinates are exact rationals and every geometric predicate is exact.

pub mod ccplab;
pub mod corpus;
pub mod error;
pub mod format;
pub mod geom;
pub mod graph;
pub mod hull;
pub mod matching;
pub mod mesh;
pub mod pipeline;
pub mod verify;

pub use error::{Error, Result};
pub use geom::{orient3d, Point3, Sign, Tetra, VertexId};
pub use mesh::{Origin, TetId, TetMesh};
