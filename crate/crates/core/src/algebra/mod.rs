pub mod field;
pub mod laurent;
pub mod matrix;
pub mod ncpoly;
pub mod ratfunc;
pub mod sqrtq;

pub use field::{gl_order, Elem, Field};
pub use laurent::LaurentZ;
pub use matrix::FqMatrix;
pub use ncpoly::{Letter, NcPoly, Word};
pub use ratfunc::{color_normalizer, eval_laurent_at_z, QPoly, RationalFunctionS};
pub use sqrtq::SqrtQ;
