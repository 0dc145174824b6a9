//! The representation category: k-copy DGA, A∞ operations, Hom complexes
//! and homotopy cardinality.

pub mod ainf;
pub mod card;
pub mod hom;
pub mod multicopy;

pub use ainf::{chord_index, op_degree, HomElement, HomShape, PreparedOp, RepCategory, X, Y};
pub use card::{closed_form, homotopy_cardinality, homotopy_cardinality_of, ruling_side, three_way, Cardinality, ClassSummary, ThreeWay};
pub use hom::{aut_order, hom_complex, inverse_cocycle, HomComplex};
pub use multicopy::{multi_copy_dga, twisted_differential, MGen, MultiCopyDga};
