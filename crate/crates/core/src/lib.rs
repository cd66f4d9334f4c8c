// SPDX-License-Identifier: MIT OR Apache-2.0

pub mod arith;
pub mod cli;
pub mod divell;
pub mod ec;
pub mod endo;
pub mod error;
pub mod ff_poly;
pub mod isogeny;
pub mod pathfind;
pub mod quad;
pub mod quat;
pub mod walk;

pub use error::{Error, Result};
