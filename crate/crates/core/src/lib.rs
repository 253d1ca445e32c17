//! Exact symbolic and numeric kernel for q-deformed matrix algebras:
//! Laurent scalars, free noncommutative algebra, rewriting, R-matrices and
//! the Yang–Baxter equation, the FRT construction with its Hopf structure,
//! a numerical quantized enveloping algebra, the duality pairing between
//! the two, Hopf twisting at the matrix level, and the Moyal star product.

pub mod cmatrix;
pub mod duality;
pub mod freealg;
pub mod frt;
pub mod moyal;
pub mod ratfunc;
pub mod sample;
pub mod uqnum;
pub mod rewrite;
pub mod rmatrix;
pub mod scalar;
pub mod twist;
