//! Order-minimal spanning trees of ordered simplicial complexes, cofiltrations
//! of spanning trees over finite posets, and upper set precovers of the
//! 1-cycle persistence module, with an exact normal-form oracle.

pub mod chains;
pub mod complex;
pub mod fixtures;
pub mod format;
pub mod oracle;
pub mod persistence;
pub mod poset;
pub mod random;
pub mod spanning;

pub use chains::{Chain, ChainError, Coefficient, Ring};
pub use format::{parse_filtration, write_filtration, FormatError};
pub use complex::{ComplexError, OrderedSimplicialComplex, Simplex, SimplicialMap, Vertex};
pub use persistence::{Filtration, PersistenceError};
pub use poset::{Poset, PosetError, UpperSet};
pub use spanning::{order_minimal_spanning_tree, SpanningError, SpanningTree};
