//! Exact character restriction to Sylow subgroups and decompositions into
//! characters induced from subgroups of prescribed index.

mod error;
mod limits;

pub mod chartab;
pub mod checker;
pub mod decomp;
pub mod families;
pub mod permgrp;
pub mod psub;

pub use error::{Error, Result};
pub use limits::Limits;
