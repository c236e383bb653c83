//! Command-line front end for `nclosed-core`: single-object analyses, the
//! subset scanner and the corpus verification harness.

pub mod commands;
pub mod corpus;
pub mod mutant;
pub mod report;
pub mod scan;
pub mod verify;
