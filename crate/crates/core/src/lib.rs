//! Symmetric tensors over free associative algebras and invariants of
//! several matrices.
//!
//! The crate has two halves that meet in [`verify`]:
//!
//! * the tensor side: words in a free monoid ([`words`]), the orbit-sum basis
//!   of `TS^n(F)` and its stable lift with the Product Formula
//!   ([`symtensor`]), a brute-force tensor model used as an oracle
//!   ([`tensor_oracle`]), classical symmetric functions ([`symmfunc`]) and
//!   the abelianization as a free polynomial ring ([`abelian`]);
//! * the matrix side: generic matrices, division-free characteristic
//!   polynomials, the determinant map and invariant dimensions ([`genmat`]).
//!
//! All arithmetic is exact ([`polyring`]).

pub mod abelian;
pub mod error;
pub mod genmat;
pub mod limits;
pub mod polyring;
pub mod symmfunc;
pub mod symtensor;
pub mod tensor_oracle;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
