//! Run-length BWT by forward DFS over the ordered CDAWG.
//!
//! The DFS starts at the root and visits out-edges in ascending first-symbol
//! order. It recurses through (-)-primary edges (they form a forward spanning
//! tree, so each node is entered exactly once) and at every (-)-secondary
//! edge emits an equal-symbol run: the preceding symbol of the canonical
//! suffix certified by that edge, repeated once per sink path below the
//! edge's destination. Bottoming out at the sink contributes the sentinel
//! run of the trivial suffix. Concatenating the emissions in visit order and
//! merging at the seams yields the run-length BWT.

use crate::order::OrderedCdawg;
use crate::text::SENTINEL;

/// One pre-merge emission: an equal-symbol BWT interval together with the
/// text position of the lex-first suffix in that interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Emission {
    pub sym: u8,
    pub count: u64,
    pub start_pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthBwt {
    /// Maximal runs: adjacent symbols are distinct, counts sum to n.
    pub runs: Vec<(u8, u64)>,
    /// Emissions in lex order of their BWT intervals, recorded before run
    /// merging (irreducible-PLCP sampling needs interval starts even when
    /// adjacent intervals share a symbol).
    pub emissions: Vec<Emission>,
    /// Edges iterated during the DFS.
    pub visited: u64,
}

impl RunLengthBwt {
    pub fn r(&self) -> usize {
        self.runs.len()
    }
}

/// Computes the run-length BWT. Works identically in with-text and text-free
/// modes (the preceding symbol is read from the text when available and from
/// the shortest-upper-path tables otherwise).
pub fn rec_rbwt(oc: &OrderedCdawg) -> RunLengthBwt {
    let g = oc.graph();
    let n = g.n();
    let mut emissions: Vec<Emission> = Vec::new();
    let mut visited = 0u64;

    let mut stack: Vec<(u32, usize)> = vec![(g.root(), 0)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = (top.0, top.1);
        if v == g.sink() {
            // trivial suffix: the all-primary path spells T itself
            let start_pos = n + 1 - oc.repr_minus_len[v as usize] as usize;
            emissions.push(Emission {
                sym: SENTINEL,
                count: 1,
                start_pos,
            });
            stack.pop();
            continue;
        }
        if i == g.out(v).len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let f = g.out(v)[i];
        visited += 1;
        let e = g.edge(f);
        if oc.is_primary_minus[f as usize] {
            stack.push((e.dst, 0));
        } else {
            emissions.push(Emission {
                sym: oc.precsym_for_mode(f),
                count: oc.nleaves[e.dst as usize],
                start_pos: oc.cano_minus_pos(f),
            });
        }
    }

    // merge at the seams only
    let mut runs: Vec<(u8, u64)> = Vec::new();
    for em in &emissions {
        match runs.last_mut() {
            Some((sym, count)) if *sym == em.sym => *count += em.count,
            _ => runs.push((em.sym, em.count)),
        }
    }
    RunLengthBwt {
        runs,
        emissions,
        visited,
    }
}

/// Concatenates the runs back into the full BWT.
pub fn expand_bwt(r: &RunLengthBwt) -> Vec<u8> {
    let mut out = Vec::new();
    for &(sym, count) in &r.runs {
        out.extend(std::iter::repeat(sym).take(count as usize));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdawg::Cdawg;
    use crate::oracle;
    use crate::order::OrderedCdawg;
    use crate::text::{self, Text};

    fn pipeline(t: &Text) -> RunLengthBwt {
        rec_rbwt(&OrderedCdawg::annotate(Cdawg::build(t)))
    }

    #[test]
    fn worked_example() {
        let t = Text::normalize(b"aabaababb").unwrap();
        let r = pipeline(&t);
        assert_eq!(
            r.runs,
            vec![(b'b', 1), (0, 1), (b'b', 1), (b'a', 2), (b'b', 2), (b'a', 3)]
        );
        assert_eq!(r.r(), 6);
        assert_eq!(expand_bwt(&r), b"b\0baabbaaa".to_vec());
    }

    #[test]
    fn sentinel_only() {
        let t = Text::normalize(b"").unwrap();
        let r = pipeline(&t);
        assert_eq!(r.runs, vec![(0, 1)]);
        assert_eq!(r.emissions.len(), 1);
        assert_eq!(r.emissions[0].start_pos, 1);
    }

    #[test]
    fn emission_intervals_partition_ranks() {
        // emission start positions are lex-increasing by rank and the
        // interval lengths tile [1..n]
        let t = Text::normalize(b"aabaababb").unwrap();
        let arrays = oracle::full_arrays(&t);
        let r = pipeline(&t);
        let mut rank = 1usize;
        for em in &r.emissions {
            assert_eq!(
                arrays.isa[em.start_pos - 1], rank,
                "interval must start at the lex-first suffix"
            );
            rank += em.count as usize;
        }
        assert_eq!(rank, t.n() + 1);
    }

    #[test]
    fn matches_oracle_on_random_texts() {
        for seed in 0..60 {
            let t = text::random_text(1 + (seed as usize * 17) % 300, 2 + (seed % 4) as u16, seed)
                .unwrap();
            let g = Cdawg::build(&t);
            let oc = OrderedCdawg::annotate(g.clone());
            let r = rec_rbwt(&oc);
            assert_eq!(expand_bwt(&r), oracle::bwt(&t), "seed {seed}");
            // text-free mode produces the identical structure
            let oc_free = OrderedCdawg::annotate(g.strip_text());
            assert_eq!(rec_rbwt(&oc_free), r, "mode equality, seed {seed}");
            // size bounds
            let e_r = g.e_r();
            assert!(r.r() <= e_r, "r <= e_R");
            let es_minus = oc.is_primary_minus.iter().filter(|&&b| !b).count();
            assert!(r.emissions.len() <= es_minus + 1);
            assert!(r.visited <= 2 * e_r as u64);
            // run structure
            assert!(r.runs.windows(2).all(|w| w[0].0 != w[1].0));
            assert_eq!(r.runs.iter().map(|&(_, c)| c).sum::<u64>(), t.n() as u64);
            assert_eq!(r.runs.iter().filter(|&&(s, c)| s == 0 && c == 1).count(), 1);
        }
    }

    #[test]
    fn interpolation_property() {
        // at any rank that is not an emission boundary, BWT[i] = BWT[i-1]
        for seed in 0..30 {
            let t = text::random_text(120, 3, seed).unwrap();
            let bwt = oracle::bwt(&t);
            let r = pipeline(&t);
            let mut boundaries = std::collections::BTreeSet::new();
            let mut rank = 1u64;
            for em in &r.emissions {
                boundaries.insert(rank);
                rank += em.count;
            }
            for i in 2..=t.n() as u64 {
                if !boundaries.contains(&i) {
                    assert_eq!(bwt[i as usize - 1], bwt[i as usize - 2], "rank {i}");
                }
            }
            // I_BWT is contained in the quasi-irreducible boundary set
            for i in 2..=t.n() as u64 {
                if bwt[i as usize - 1] != bwt[i as usize - 2] {
                    assert!(boundaries.contains(&i), "irreducible rank {i} not sampled");
                }
            }
        }
    }
}
