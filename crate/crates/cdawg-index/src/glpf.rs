//! Quasi-irreducible GLPF arrays by backward DFS, interpolation expansion,
//! point lookup, and irreducible-PLCP extraction.
//!
//! The GLPF array under a lower order stores, per position, the maximum lcp
//! of that suffix against any strictly smaller suffix; it instantiates PLCP
//! (lex order) and LPF (text order). The backward DFS from the sink visits
//! in-edges in descending `repr_minus_len(src) + label length` order,
//! recurses through (+)-primary edges, and emits one `(position, value)`
//! sample per (+)-secondary edge. Samples arrive in increasing text position
//! (a checked property, not an implementation convenience) and the full
//! array is recovered by the `A[p] = A[p-1] - 1` interpolation rule.

use thiserror::Error;

use crate::order::OrderedCdawg;
use crate::rlbwt::RunLengthBwt;
use crate::LowerOrder;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GlpfError {
    #[error("position 1 is not sampled (it must always be quasi-irreducible)")]
    MissingFirstPosition,
    #[error("interpolation produced a negative value at position {0}")]
    NegativeInterpolation(usize),
    #[error("no sampled position at or before {0}")]
    NoSampleAtOrBefore(usize),
}

/// Position-sorted `(pos, value)` samples of a GLPF array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseGlpf {
    pub lower_order: LowerOrder,
    pub n: usize,
    pub entries: Vec<(usize, usize)>,
    /// Edges iterated during the backward DFS.
    pub visited: u64,
}

/// Computes the quasi-irreducible GLPF array under `lower_order`.
/// The algorithm reads only lengths, so both label modes give the same
/// result.
pub fn qirr_glpf(oc: &OrderedCdawg, lower_order: LowerOrder) -> SparseGlpf {
    let g = oc.graph();
    let n = g.n();
    let tables = oc.lower(lower_order);
    let mut entries: Vec<(usize, usize)> = Vec::new();
    let mut visited = 0u64;

    let push = |entries: &mut Vec<(usize, usize)>, p: usize, val: usize| {
        assert!(
            entries.last().map_or(true, |&(q, _)| q < p),
            "emission out of text order: {p} after {:?}",
            entries.last()
        );
        entries.push((p, val));
    };

    let mut stack: Vec<(u32, usize)> = vec![(g.sink(), 0)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = (top.0, top.1);
        if v == g.root() {
            // trivial suffix: the all-(+)-primary path, repr_+ of the root
            let p = n + 1 - tables.repr_plus_len[v as usize] as usize;
            push(&mut entries, p, 0);
            stack.pop();
            continue;
        }
        if i == g.inc(v).len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let f = g.inc(v)[i];
        visited += 1;
        let e = g.edge(f);
        if tables.is_primary_plus[f as usize] {
            stack.push((e.src, 0));
        } else {
            let val = oc.repr_minus_len[e.src as usize] as usize;
            let p = n + 1
                - val
                - e.len as usize
                - tables.repr_plus_len[v as usize] as usize;
            push(&mut entries, p, val);
        }
    }

    SparseGlpf {
        lower_order,
        n,
        entries,
        visited,
    }
}

/// Expands a sparse GLPF to the full length-`n` array via the interpolation
/// rule.
pub fn expand_glpf(s: &SparseGlpf, n: usize) -> Result<Vec<usize>, GlpfError> {
    if s.entries.first().map(|&(p, _)| p) != Some(1) {
        return Err(GlpfError::MissingFirstPosition);
    }
    let mut out = Vec::with_capacity(n);
    let mut next = 0usize;
    for p in 1..=n {
        if next < s.entries.len() && s.entries[next].0 == p {
            out.push(s.entries[next].1);
            next += 1;
        } else {
            let prev = *out.last().expect("p = 1 is sampled");
            if prev == 0 {
                return Err(GlpfError::NegativeInterpolation(p));
            }
            out.push(prev - 1);
        }
    }
    Ok(out)
}

/// Point lookup: value at `p` from the largest sampled position `q <= p`.
pub fn glpf_at(s: &SparseGlpf, p: usize) -> Result<usize, GlpfError> {
    let idx = s.entries.partition_point(|&(q, _)| q <= p);
    if idx == 0 {
        return Err(GlpfError::NoSampleAtOrBefore(p));
    }
    let (q, val) = s.entries[idx - 1];
    val.checked_sub(p - q)
        .ok_or(GlpfError::NegativeInterpolation(p))
}

/// Irreducible PLCP samples, of size `r`: one `(pos, PLCP[pos])` pair per
/// BWT run head, in rank order. `s_lex` and `r` must come from the same
/// ordered CDAWG.
pub fn irreducible_plcp(
    s_lex: &SparseGlpf,
    r: &RunLengthBwt,
) -> Result<Vec<(usize, usize)>, GlpfError> {
    debug_assert_eq!(s_lex.lower_order, LowerOrder::Lex);
    let mut out = Vec::with_capacity(r.runs.len());
    let mut prev: Option<u8> = None;
    for em in &r.emissions {
        if prev != Some(em.sym) {
            out.push((em.start_pos, glpf_at(s_lex, em.start_pos)?));
        }
        prev = Some(em.sym);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdawg::Cdawg;
    use crate::oracle;
    use crate::order::OrderedCdawg;
    use crate::rlbwt::rec_rbwt;
    use crate::text::{self, Text};

    fn annotated(t: &Text) -> OrderedCdawg {
        OrderedCdawg::annotate(Cdawg::build(t))
    }

    #[test]
    fn worked_example() {
        let t = Text::normalize(b"aabaababb").unwrap();
        let oc = annotated(&t);
        let lex = qirr_glpf(&oc, LowerOrder::Lex);
        let pos = qirr_glpf(&oc, LowerOrder::Pos);
        assert_eq!(
            expand_glpf(&lex, 10).unwrap(),
            vec![0, 1, 1, 4, 3, 2, 2, 1, 0, 0]
        );
        assert_eq!(
            expand_glpf(&pos, 10).unwrap(),
            vec![0, 1, 0, 4, 3, 2, 2, 1, 1, 0]
        );
        assert_eq!(glpf_at(&pos, 5).unwrap(), 3);
    }

    #[test]
    fn sentinel_only() {
        let t = Text::normalize(b"").unwrap();
        let oc = annotated(&t);
        for order in [LowerOrder::Lex, LowerOrder::Pos] {
            let s = qirr_glpf(&oc, order);
            assert_eq!(s.entries, vec![(1, 0)]);
            assert_eq!(expand_glpf(&s, 1).unwrap(), vec![0]);
        }
    }

    #[test]
    fn worked_example_irreducible_plcp() {
        let t = Text::normalize(b"aabaababb").unwrap();
        let oc = annotated(&t);
        let lex = qirr_glpf(&oc, LowerOrder::Lex);
        let r = rec_rbwt(&oc);
        let irr = irreducible_plcp(&lex, &r).unwrap();
        assert_eq!(irr, vec![(10, 0), (1, 0), (4, 4), (2, 1), (7, 2), (3, 1)]);
        assert_eq!(irr.len(), r.r());
    }

    #[test]
    fn matches_oracle_on_random_texts() {
        for seed in 0..60 {
            let t = text::random_text(1 + (seed as usize * 13) % 250, 2 + (seed % 4) as u16, seed)
                .unwrap();
            let g = Cdawg::build(&t);
            let oc = OrderedCdawg::annotate(g.clone());
            let oc_free = OrderedCdawg::annotate(g.strip_text());
            for (order, expected) in [
                (LowerOrder::Lex, oracle::plcp(&t)),
                (LowerOrder::Pos, oracle::lpf(&t)),
            ] {
                let s = qirr_glpf(&oc, order);
                assert_eq!(expand_glpf(&s, t.n()).unwrap(), expected, "seed {seed}");
                assert_eq!(qirr_glpf(&oc_free, order), s, "mode equality");
                // sample count bound and traversal bound
                let es_plus = oc
                    .lower(order)
                    .is_primary_plus
                    .iter()
                    .filter(|&&b| !b)
                    .count();
                assert!(s.entries.len() <= es_plus + 1);
                assert!(s.entries.len() <= g.e_r());
                assert!(s.visited <= 2 * g.e_r() as u64);
                // glpf_at agrees with expansion everywhere
                let full = expand_glpf(&s, t.n()).unwrap();
                for p in 1..=t.n() {
                    assert_eq!(glpf_at(&s, p).unwrap(), full[p - 1]);
                }
            }
        }
    }

    #[test]
    fn sampled_positions_are_canonical_positions() {
        for order in [LowerOrder::Lex, LowerOrder::Pos] {
            for seed in 0..25 {
                let t = text::random_text(1 + (seed as usize * 5) % 64, 2, seed).unwrap();
                let g = Cdawg::build(&t);
                let oc = OrderedCdawg::annotate(g.clone());
                let s = qirr_glpf(&oc, order);
                let (_, plus) = oracle::enumerate_canonical(&t, &g, order);
                let canon: std::collections::BTreeSet<usize> =
                    plus.iter().map(|c| c.pos).collect();
                let sampled: std::collections::BTreeSet<usize> =
                    s.entries.iter().map(|&(p, _)| p).collect();
                assert_eq!(sampled, canon, "order {order} seed {seed}");
            }
        }
    }

    #[test]
    fn emitted_prefixes_are_left_maximal() {
        for order in [LowerOrder::Lex, LowerOrder::Pos] {
            for seed in 0..15 {
                let t = text::random_text(1 + (seed as usize * 9) % 128, 2, seed).unwrap();
                let oc = annotated(&t);
                let s = qirr_glpf(&oc, order);
                let expected = oracle::glpf(&t, order);
                for &(p, l) in &s.entries {
                    assert_eq!(expected[p - 1], l);
                    if l > 0 {
                        let prefix = &t.bytes()[p - 1..p - 1 + l];
                        let occ: Vec<usize> = (1..=t.n() - l + 1)
                            .filter(|&q| &t.bytes()[q - 1..q - 1 + l] == prefix)
                            .collect();
                        let at_start = occ.contains(&1);
                        let preceding: std::collections::BTreeSet<u8> =
                            occ.iter().filter(|&&q| q > 1).map(|&q| t.at(q - 1)).collect();
                        assert!(at_start || preceding.len() >= 2, "not left-maximal");
                    }
                }
            }
        }
    }

    #[test]
    fn interpolation_property_of_oracle_arrays() {
        // at every unsampled position the oracle array steps down by one
        for order in [LowerOrder::Lex, LowerOrder::Pos] {
            for seed in 0..30 {
                let t = text::random_text(100, 3, seed).unwrap();
                let oc = annotated(&t);
                let s = qirr_glpf(&oc, order);
                let full = oracle::glpf(&t, order);
                let sampled: std::collections::BTreeSet<usize> =
                    s.entries.iter().map(|&(p, _)| p).collect();
                assert!(sampled.contains(&1));
                for p in 2..=t.n() {
                    if !sampled.contains(&p) {
                        assert_eq!(full[p - 1], full[p - 2] - 1, "pos {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn irreducible_plcp_matches_oracle_rule() {
        for seed in 0..40 {
            let t = text::random_text(1 + (seed as usize * 7) % 200, 2 + (seed % 3) as u16, seed)
                .unwrap();
            let oc = annotated(&t);
            let lex = qirr_glpf(&oc, LowerOrder::Lex);
            let r = rec_rbwt(&oc);
            let got = irreducible_plcp(&lex, &r).unwrap();
            let arrays = oracle::full_arrays(&t);
            let mut expected = Vec::new();
            for i in 1..=t.n() {
                if i == 1 || arrays.bwt[i - 1] != arrays.bwt[i - 2] {
                    let p = arrays.sa[i - 1];
                    expected.push((p, arrays.plcp[p - 1]));
                }
            }
            assert_eq!(got, expected, "seed {seed}");
            assert_eq!(got.len(), r.r());
        }
    }

    #[test]
    fn expand_rejects_missing_first_position() {
        let s = SparseGlpf {
            lower_order: LowerOrder::Pos,
            n: 3,
            entries: vec![(2, 0), (3, 0)],
            visited: 0,
        };
        assert_eq!(expand_glpf(&s, 3), Err(GlpfError::MissingFirstPosition));
        assert_eq!(glpf_at(&s, 1), Err(GlpfError::NoSampleAtOrBefore(1)));
    }

    #[test]
    fn expand_rejects_negative_interpolation() {
        let s = SparseGlpf {
            lower_order: LowerOrder::Pos,
            n: 3,
            entries: vec![(1, 0)],
            visited: 0,
        };
        assert_eq!(expand_glpf(&s, 3), Err(GlpfError::NegativeInterpolation(2)));
    }
}
