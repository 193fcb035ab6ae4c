//! Exact sparse linear algebra on free vector spaces with named bases.

mod endo;
mod label;
mod sum;
pub(crate) mod text;

pub use endo::LinearEndo;
pub use label::{is_valid_name, Basis, BasisLabel};
pub use sum::{tensor_vv, FormalSum, FreeVector, Tensor2, Tensor3, TensorN};
pub use text::{format_tensor2, format_tensor3, format_tensor_n, format_vector};

pub(crate) use endo::{invert_dense, read_matrix_text};
