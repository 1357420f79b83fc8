//! Text formats: expressions, declaration files and the printer.

mod expr;
mod files;
pub mod printer;

pub use expr::{parse_expr, parse_expr_in, parse_scalar, parse_tensor, parse_word, Span};
pub use files::{parse_document, strip_comment, word_list, write_action, write_presentation, Document};
