//! A small scripting language for polynomial computer algebra.
//!
//! Source text is tokenized and parsed into statements, evaluated into
//! symbolic expression trees (with numeric subterms folded exactly), and
//! handed to a sparse polynomial and Gröbner basis engine when ring
//! operations are requested.
//!
//! ```
//! use casdsl::Interpreter;
//!
//! let mut cas = Interpreter::default();
//! let f = cas.eval_expr_str("x**3 * y + x**2 * z - 5/9").unwrap();
//! assert_eq!(f.to_string(), "x^3*y+x^2*z-5/9");
//! ```

pub mod convert;
pub mod error;
pub mod expr;
pub mod groebner;
pub mod interp;
pub mod lexer;
pub mod number;
pub mod parser;
pub mod poly;
pub mod repl;

pub use error::{Diagnostic, Error, Pos, Result};
pub use expr::{Expr, Sym};
pub use groebner::Ideal;
pub use interp::{Config, Interpreter, Value};
pub use number::{BinOp, Number, NumberType};
pub use poly::{MonomialOrder, Polynomial, Ring};
