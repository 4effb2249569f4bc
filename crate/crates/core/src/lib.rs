//! Finite topological spaces, preorders and their Alexandrov spaces,
//! decompositions and stratifications, with exhaustive checks on small
//! instances.
//!
//! ```
//! use stratkit::{classify, io, Level};
//!
//! let doc = io::fixture("quadrant_4").unwrap().document;
//! let d = doc.into_decomposition().unwrap();
//! assert_eq!(classify(&d).unwrap().level, Level::Stratification);
//! ```

mod bitset;
pub mod decomposition;
mod error;
pub mod io;
pub mod oracle;
pub mod order;
pub mod topology;

pub use bitset::PointSet;
pub use decomposition::{
    classify, is_stratification, theorem_a, theorem_b, ClassificationReport, Decomposition, Level,
    PosetStratification,
};
pub use error::{Error, Result};
pub use io::Document;
pub use oracle::SweepReport;
pub use order::{MonotoneMap, Poset, Proset, SymbolicFamily};
pub use topology::{FiniteSpace, MapProperty, MapVerdict, SpaceMap};
