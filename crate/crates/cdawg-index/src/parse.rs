//! Greedy lex-parse and LZ-parse extraction from sparse GLPF arrays.
//!
//! Both parses are greedy left-to-right partitions with phrase length
//! `max(L[p], 1)`, for L = PLCP (lex-parse) or L = LPF (LZ-parse, the
//! self-referential variant: previous occurrences may overlap the phrase).
//! Phrases carry no source pointers; the parse is a length partition.

use crate::glpf::{GlpfError, SparseGlpf};
use crate::LowerOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseKind {
    Lex,
    Lz,
}

impl ParseKind {
    pub fn name(self) -> &'static str {
        match self {
            ParseKind::Lex => "lex",
            ParseKind::Lz => "lz",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parse {
    pub kind: ParseKind,
    pub phrases: Vec<(usize, usize)>,
}

impl Parse {
    pub fn u(&self) -> usize {
        self.phrases.len()
    }
}

pub fn lex_parse(s_lex: &SparseGlpf, n: usize) -> Result<Parse, GlpfError> {
    assert_eq!(s_lex.lower_order, LowerOrder::Lex);
    greedy(s_lex, n, ParseKind::Lex)
}

pub fn lz_parse(s_pos: &SparseGlpf, n: usize) -> Result<Parse, GlpfError> {
    assert_eq!(s_pos.lower_order, LowerOrder::Pos);
    greedy(s_pos, n, ParseKind::Lz)
}

/// Walks the sparse entries with a merged cursor: entries are
/// position-sorted and the parse position only moves right, so each parse is
/// O(u + e) without full expansion.
fn greedy(s: &SparseGlpf, n: usize, kind: ParseKind) -> Result<Parse, GlpfError> {
    let mut phrases = Vec::new();
    let mut cursor = 0usize; // index of the last entry with pos <= p
    let mut p = 1usize;
    while p <= n {
        while cursor + 1 < s.entries.len() && s.entries[cursor + 1].0 <= p {
            cursor += 1;
        }
        let (q, val) = *s
            .entries
            .get(cursor)
            .filter(|&&(q, _)| q <= p)
            .ok_or(GlpfError::NoSampleAtOrBefore(p))?;
        let l = val
            .checked_sub(p - q)
            .ok_or(GlpfError::NegativeInterpolation(p))?;
        let len = l.max(1);
        phrases.push((p, len));
        p += len;
    }
    debug_assert_eq!(p, n + 1, "greedy phrases must cover exactly [1..n]");
    Ok(Parse { kind, phrases })
}
