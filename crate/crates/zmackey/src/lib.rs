//! Exact computations with cohomological Mackey functors (`ℤ`-modules in the
//! sense of Mackey functors over the constant functor) for finite cyclic
//! groups `C_n`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

use alloc::string::String;
use core::fmt;

pub mod boxhom;
pub mod bredon;
pub mod burnside;
pub mod exactalg;
pub mod families;
pub mod groupchange;
pub mod mackey;
pub mod resolutions;

/// Errors raised by constructors and checked operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Bad parameters or shapes.
    Invalid(String),
    /// A Mackey-functor relation fails; the string names the relation and where.
    Axiom(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(s) => write!(f, "invalid input: {}", s),
            Error::Axiom(s) => write!(f, "relation violated: {}", s),
        }
    }
}

impl core::error::Error for Error {}
