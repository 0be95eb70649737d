//! Compressed indexing structures computed from the compact directed acyclic
//! word graph (CDAWG) of a terminated text.
//!
//! The pipeline is: build the CDAWG of a sentinel-terminated text, annotate it
//! with upper/lower path tables and primary/secondary edge flags, then convert
//! it by forward/backward DFS into
//!
//! * the run-length BWT ([`rlbwt`]),
//! * sparse ("quasi-irreducible") GLPF arrays that expand to PLCP and LPF
//!   ([`glpf`]),
//! * the irreducible PLCP samples, and
//! * the greedy lex-parse and LZ-parse ([`parse`]).
//!
//! Every conversion also works in text-free mode, where edge labels carry only
//! a length and a first symbol. The [`oracle`] module holds brute-force ground
//! truth for all of the above; the binary `cdawg-index` ties everything
//! together on the command line.

pub mod cdawg;
pub mod fmt;
pub mod glpf;
pub mod oracle;
pub mod order;
pub mod parse;
pub mod rlbwt;
pub mod text;
pub mod verify;

/// The lower path order parameterizing downward tables, GLPF arrays, and
/// parses: `Lex` yields PLCP / lex-parse, `Pos` yields LPF / LZ-parse.
///
/// Text order compares suffixes by length: `X <= Y` iff `|X| >= |Y|`, so the
/// longest suffix (position 1) is smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LowerOrder {
    Lex,
    Pos,
}

impl LowerOrder {
    pub fn name(self) -> &'static str {
        match self {
            LowerOrder::Lex => "lex",
            LowerOrder::Pos => "pos",
        }
    }
}

impl std::fmt::Display for LowerOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
