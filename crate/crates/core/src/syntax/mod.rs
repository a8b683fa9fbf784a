//! Formulas, intervals and their concrete syntax.

mod formula;
mod interval;
mod parse;
mod print;
mod transform;

pub use formula::{alphabet, Alphabet, Atom, Formula};
pub use interval::{Interval, IntervalError};
pub use parse::{is_valid_atom_name, parse_formula, parse_formula_any, ParseError, ParseErrorKind};
pub use print::print_formula;
pub use transform::{
    classify_fragment, constant_product, gap_bound, restrict_time, to_nnf, FragmentClass,
    RestrictError, RESTRICT_ATOM,
};
