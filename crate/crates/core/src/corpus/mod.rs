//! Deterministic test corpora: exhaustively enumerated formulas, seeded
//! random words and formulas.

mod formulas;
mod random;

pub use formulas::{enumerate_formulas, swap_atoms, CorpusConfig};
pub use random::{random_formula, random_lasso_word, RandomWordConfig};
