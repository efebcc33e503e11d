//! File formats, subcommands, verification suites and the backend benchmark
//! behind the `spinor-pair` binary.

pub mod bench;
pub mod commands;
pub mod error;
pub mod formats;
pub mod verify;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod book_cli {}
