//! Self-orthogonal codes from equitable partitions of association schemes.
//!
//! The crate follows a single pipeline: a distance-regular graph yields an
//! association scheme, the scheme yields intersection numbers, an equitable
//! (typically orbit) partition yields quotient matrices, and quotient matrices
//! whose squares vanish modulo a prime span self-orthogonal codes. The same
//! quotient matrices, closed under multiplication, give self-orthogonal
//! subspace codes.
//!
//! The crate is `no_std` and only needs `alloc`. The `parallel` feature pulls
//! in `std` and rayon for the enumeration kernels.
//!
//! Fields are restricted to prime order. Codes "over F_{p^m}" spanned by
//! integer matrices carry the same self-orthogonality certificate as over
//! F_p, so extension fields are not modelled.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod algebra;
pub mod bitset;
pub mod codes;
mod error;
mod par;
pub mod graphs;
pub mod groups;
pub mod partitions;
pub mod schemes;
pub mod subspaces;

pub use error::{Error, Result};
