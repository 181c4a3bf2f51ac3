//! Session scripts for the `relcoh` tool: parsing, printing and running.

pub mod ast;
mod error;
mod lexer;
mod parser;
mod printer;
mod runner;

pub use ast::{Command, Pos, Session, Statement};
pub use error::{ParseError, ParseErrorKind};
pub use parser::{build_module, parse_session};
pub use printer::print_session;
pub use runner::{run_session, Config, Report, Status};
