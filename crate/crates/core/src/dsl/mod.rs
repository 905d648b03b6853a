//! A small text language for charts, multivectors and mixed elements.
//!
//! ```text
//! chart { base:[u,v]; fiber:[x,y,z]; }
//! let p = x*(d/dy ^ d/dz) + y*(d/dz ^ d/dx) + z*(d/dx ^ d/dy);
//! check jacobi(p);
//! ```
//!
//! `^` wedges (or raises a scalar to an integer literal), `dx[u]` is a
//! covariant basis element, and `w & X` is the tensor of a form with a
//! multivector. Every program also sees the formal period symbol `PI`.

mod ast;
mod error;
mod exec;
mod lexer;
mod parser;
mod report;

pub use ast::{BinOp, ChartDecl, Command, Expr, Item, Program};
pub use error::ParseError;
pub use exec::{execute, execute_with, program_context, ExecOptions, Value};
pub use parser::parse;
pub use report::{Format, Record, Report, REPORT_VERSION};

/// Parses and executes in one step.
pub fn run(src: &str, opts: ExecOptions) -> Result<Report, ParseError> {
    Ok(execute_with(&parse(src)?, opts))
}
