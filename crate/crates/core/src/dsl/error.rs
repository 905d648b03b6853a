use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown identifier '{name}' at {line}:{col}")]
    UnknownIdentifier { name: String, line: usize, col: usize },
    #[error("chart redeclared at {line}:{col}")]
    ChartRedeclared { line: usize, col: usize },
}
