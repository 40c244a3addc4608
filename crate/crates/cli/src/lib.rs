//! Text formats and subcommands for the `cideal` binary.

pub mod commands;
pub mod document;
pub mod error;
pub mod workspace;

pub use commands::{batch, certificate_document, run, run_text, Command, Report};
pub use document::{parse, Document, IdealData, Item, ParseError, PointSpec};
pub use error::CliError;
pub use workspace::{Object, Workspace};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
