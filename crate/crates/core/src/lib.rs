pub mod certify;
pub mod classify;
pub mod cli;
pub mod closure;
pub mod error;
pub mod generators;
pub mod invariant;
pub mod partition;
pub mod perm_group;
pub mod rank;
pub mod tables;
pub mod transformation;

pub use error::{Error, Result};
pub use partition::{Partition, PartitionSignature};
pub use transformation::{Membership, Transformation};
