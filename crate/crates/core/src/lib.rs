pub mod atlas;
pub mod chain;
pub mod classify;
pub mod cli;
pub mod error;
pub mod fusion;
pub mod group;
pub mod grp;
pub mod perm;
pub mod ptheory;

pub use error::{FswError, Result};
pub use group::PermGroup;
pub use perm::Perm;
