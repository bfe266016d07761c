//! Simplicial complexes with vertices in `N^n \ {0}`, atomic and flat
//! building sets, nested complexes, iterated nested complexes in flat form,
//! combinatorial blowups, and exact fan checks.
//!
//! ```
//! use nestohedra::{catalog, flat, ground::GroundSet};
//!
//! let g = GroundSet::new(["x", "y", "z"]).unwrap();
//! let tri = catalog::simplex_boundary(&g).unwrap();
//! let d = flat::FlatBuildingSet::new([g.parse_sum("x+y").unwrap()]);
//! let square = flat::et(&tri, &d).unwrap();
//! assert_eq!(square.f_vector(), vec![4, 4]);
//! ```

pub mod blowup;
pub mod building;
pub mod catalog;
pub mod complexes;
pub mod error;
pub mod fan;
pub mod flat;
pub mod ground;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod pipeline;

pub use building::{AtomSet, AtomicBuildingSet, Hypergraph};
pub use complexes::{Complex, Face, Vertex};
pub use error::{Error, ErrorKind, Result};
pub use fan::{faithfully_realizes, FaithfulnessReport};
pub use flat::{et, et_iter, FlatBuildingSet};
pub use ground::{GroundSet, SumVec};
pub use pipeline::{run, PipelineSpec, Report};
