#![cfg_attr(not(test), no_std)]
//! Brenke polynomial families with certified real-root analysis.

extern crate alloc;

pub mod numerics;
pub mod error;
pub mod families;
pub mod lpdiag;
pub mod operators;
pub mod poly;
pub mod powerseries;
pub mod realroots;
pub mod zetacoeffs;

pub use error::{Error, Result};
