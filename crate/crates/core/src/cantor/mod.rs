//! A finite-depth model of the Fraïssé limit: rational step functions on
//! dyadic cylinders of the Cantor set, and the prefix-exchange maps acting on
//! them.

pub mod dyadic;
pub mod subalgebra;
pub mod treepair;
pub mod word;

pub use dyadic::{DyadicElement, ModelOp, Rational};
pub use subalgebra::{
    embed_algebra_in_model, extend_isomorphism, generated_model_subalgebra, Block, ModelEmbedding,
    ModelIso, ModelSubalgebra, DEFAULT_DENOMINATOR_CAP,
};
pub use treepair::TreePair;
pub use word::{PrefixCode, Word};
