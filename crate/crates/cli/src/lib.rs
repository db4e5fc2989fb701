//! Command-line front end for the p-subgroup topology pipeline: the group
//! spec DSL, the run plumbing, and the verification battery.

pub mod groupspec;
pub mod pipeline;
pub mod verify;
