pub mod bounds;
pub mod cli;
pub mod expr;
pub mod lemma;
pub mod repro;
pub mod specfun;
