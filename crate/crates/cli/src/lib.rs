//! Front end for the `kmalg` binary: the text format and the verbs that act
//! on parsed values. The binary only handles argument parsing and I/O.

pub mod dsl;
mod report;
mod verbs;

pub use dsl::{parse_dsl, parse_poly_text, DslError, Item, OpBlock, PairedBlock, SymbolBlock, Value};
pub use report::{Report, Verdict};
pub use verbs::{run, CliError, Options, Verb};
