//! Preprocessing tables and edge classification over the CDAWG.
//!
//! For every node this computes, in one pass per table,
//!
//! * `repr_minus_len(v)`: length of the longest root-to-v path string,
//! * `shortest_minus_len(v)` and `fstsym_shortest(v)`: length and first
//!   symbol of the shortest root-to-v path string,
//! * `repr_plus_len(v)` per lower order: length of the smallest v-to-sink
//!   path string (lex-first under lex, longest under text order),
//! * `nleaves(v)`: number of v-to-sink paths,
//!
//! plus per-edge primary flags: an edge is (-)-primary if the longest upper
//! path of its destination routes through it, (+)-primary if the smallest
//! lower path of its source routes through it. Adjacency is sorted: out-edges
//! ascending by label first symbol, in-edges descending by
//! `repr_minus_len(src) + label length`. Sibling keys are pairwise distinct
//! on a valid CDAWG; a tie is an invariant violation and asserts.
//!
//! Everything runs on `(length, first symbol)` labels only, so the tables are
//! identical in with-text and text-free modes.

use crate::cdawg::{Cdawg, EdgeId, LabelMode, NodeId};
use crate::LowerOrder;

/// Downward tables under one lower order.
#[derive(Debug, Clone)]
pub struct LowerTables {
    pub repr_plus_len: Vec<u32>,
    pub is_primary_plus: Vec<bool>,
}

/// Visited-edge counters, one per preprocessing pass. Each pass touches every
/// edge at most twice; tests pin `<= 2 * e_R`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PrepCounters {
    pub upward: u64,
    pub downward_lex: u64,
    pub downward_pos: u64,
    pub nleaves: u64,
}

#[derive(Debug, Clone)]
pub struct OrderedCdawg {
    graph: Cdawg,
    pub repr_minus_len: Vec<u32>,
    pub shortest_minus_len: Vec<u32>,
    /// First symbol of the shortest upper path; undefined (0) at the root.
    pub fstsym_shortest: Vec<u8>,
    pub is_primary_minus: Vec<bool>,
    pub nleaves: Vec<u64>,
    lex: LowerTables,
    pos: LowerTables,
    /// Rank of each edge within the sorted in-edge list of its destination.
    in_index: Vec<u32>,
    pub counters: PrepCounters,
}

impl OrderedCdawg {
    /// Annotates a CDAWG with all tables and sorts its adjacency.
    pub fn annotate(graph: Cdawg) -> OrderedCdawg {
        let nodes = graph.node_count();
        let e_r = graph.e_r();
        let mut oc = OrderedCdawg {
            repr_minus_len: vec![0; nodes],
            shortest_minus_len: vec![0; nodes],
            fstsym_shortest: vec![0; nodes],
            is_primary_minus: vec![false; e_r],
            nleaves: vec![0; nodes],
            lex: LowerTables {
                repr_plus_len: vec![0; nodes],
                is_primary_plus: vec![false; e_r],
            },
            pos: LowerTables {
                repr_plus_len: vec![0; nodes],
                is_primary_plus: vec![false; e_r],
            },
            in_index: vec![0; e_r],
            counters: PrepCounters::default(),
            graph,
        };
        oc.prep_upward();
        oc.prep_downward(LowerOrder::Lex);
        oc.prep_downward(LowerOrder::Pos);
        oc.count_sink_paths();
        oc.sort_edges();
        oc
    }

    pub fn graph(&self) -> &Cdawg {
        &self.graph
    }

    pub fn lower(&self, order: LowerOrder) -> &LowerTables {
        match order {
            LowerOrder::Lex => &self.lex,
            LowerOrder::Pos => &self.pos,
        }
    }

    /// Node ids are topological; in-edges of `v` only reference nodes already
    /// processed, so one ascending sweep visits each edge once.
    fn prep_upward(&mut self) {
        let g = &self.graph;
        for v in 1..g.node_count() as NodeId {
            let mut best_len = 0u32;
            let mut best_edge = EdgeId::MAX;
            let mut short_len = u32::MAX;
            let mut short_fst = 0u8;
            for &f in g.inc(v) {
                self.counters.upward += 1;
                let e = g.edge(f);
                let len = self.repr_minus_len[e.src as usize] + e.len;
                assert!(
                    best_edge == EdgeId::MAX || len != best_len,
                    "tie among sibling in-edge keys at node {v}"
                );
                if best_edge == EdgeId::MAX || len > best_len {
                    best_len = len;
                    best_edge = f;
                }
                let slen = self.shortest_minus_len[e.src as usize] + e.len;
                if slen < short_len {
                    short_len = slen;
                    short_fst = if self.shortest_minus_len[e.src as usize] == 0 {
                        e.first
                    } else {
                        self.fstsym_shortest[e.src as usize]
                    };
                }
            }
            self.repr_minus_len[v as usize] = best_len;
            self.shortest_minus_len[v as usize] = short_len;
            self.fstsym_shortest[v as usize] = short_fst;
            self.is_primary_minus[best_edge as usize] = true;
        }
    }

    /// One descending sweep from the sink. The order comparison is O(1): text
    /// order compares total lengths (longer is smaller), lex compares label
    /// first symbols (pairwise distinct among siblings by determinism).
    fn prep_downward(&mut self, order: LowerOrder) {
        let g = &self.graph;
        let sink = g.sink();
        let mut repr = vec![0u32; g.node_count()];
        let mut primary = vec![false; g.e_r()];
        let mut visited = 0u64;
        for v in (0..sink).rev() {
            let mut best_edge = EdgeId::MAX;
            let mut best_len = 0u32;
            let mut best_fst = 0u8;
            for &f in g.out(v) {
                visited += 1;
                let e = g.edge(f);
                let cand_len = e.len + repr[e.dst as usize];
                let better = match order {
                    LowerOrder::Lex => best_edge == EdgeId::MAX || e.first < best_fst,
                    LowerOrder::Pos => {
                        assert!(
                            best_edge == EdgeId::MAX || cand_len != best_len,
                            "tie among sibling out-edge keys at node {v}"
                        );
                        best_edge == EdgeId::MAX || cand_len > best_len
                    }
                };
                if better {
                    best_edge = f;
                    best_len = cand_len;
                    best_fst = e.first;
                }
            }
            repr[v as usize] = best_len;
            primary[best_edge as usize] = true;
        }
        match order {
            LowerOrder::Lex => {
                self.lex = LowerTables {
                    repr_plus_len: repr,
                    is_primary_plus: primary,
                };
                self.counters.downward_lex = visited;
            }
            LowerOrder::Pos => {
                self.pos = LowerTables {
                    repr_plus_len: repr,
                    is_primary_plus: primary,
                };
                self.counters.downward_pos = visited;
            }
        }
    }

    fn count_sink_paths(&mut self) {
        let g = &self.graph;
        let sink = g.sink();
        self.nleaves[sink as usize] = 1;
        for v in (0..sink).rev() {
            let mut total = 0u64;
            for &f in g.out(v) {
                self.counters.nleaves += 1;
                total = total
                    .checked_add(self.nleaves[g.edge(f).dst as usize])
                    .expect("nleaves overflow");
            }
            self.nleaves[v as usize] = total;
        }
    }

    fn sort_edges(&mut self) {
        let nodes = self.graph.node_count() as NodeId;
        for v in 0..nodes {
            self.graph.sort_out_by(v, |e| e.first);
            let firsts: Vec<u8> = self
                .graph
                .out(v)
                .iter()
                .map(|&f| self.graph.edge(f).first)
                .collect();
            assert!(
                firsts.windows(2).all(|w| w[0] < w[1]),
                "tie among sibling out-edge first symbols at node {v}"
            );
            let mut pos_keys: Vec<u32> = self
                .graph
                .out(v)
                .iter()
                .map(|&f| {
                    let e = self.graph.edge(f);
                    e.len + self.pos.repr_plus_len[e.dst as usize]
                })
                .collect();
            pos_keys.sort_unstable();
            assert!(
                pos_keys.windows(2).all(|w| w[0] < w[1]),
                "tie among sibling out-edge text-order keys at node {v}"
            );
            let repr = &self.repr_minus_len;
            self.graph
                .sort_inc_by(v, |e| std::cmp::Reverse(repr[e.src as usize] + e.len));
            for (i, &f) in self.graph.inc(v).iter().enumerate() {
                self.in_index[f as usize] = i as u32;
            }
            let keys: Vec<u32> = self
                .graph
                .inc(v)
                .iter()
                .map(|&f| {
                    let e = self.graph.edge(f);
                    self.repr_minus_len[e.src as usize] + e.len
                })
                .collect();
            assert!(
                keys.windows(2).all(|w| w[0] > w[1]),
                "tie among sibling in-edge keys at node {v}"
            );
        }
    }

    /// 1-based start position of the (-)-canonical suffix certified by `f`:
    /// `repr_-(src) . label(f) . repr_+lex(dst)`.
    pub fn cano_minus_pos(&self, f: EdgeId) -> usize {
        let e = self.graph.edge(f);
        let total = self.repr_minus_len[e.src as usize]
            + e.len
            + self.lex.repr_plus_len[e.dst as usize];
        self.graph.n() + 1 - total as usize
    }

    /// Preceding symbol of the (-)-canonical suffix certified by a
    /// (-)-secondary edge `f`, from the tables alone (text-free route).
    ///
    /// The predecessor suffix (one symbol longer) enters `dst(f)` through the
    /// in-edge immediately preceding `f` in the sorted in-edge order; its
    /// upper part is the shortest upper path of that edge's source. The
    /// length bookkeeping relies on upper-path length contiguity, asserted in
    /// debug builds.
    pub fn precsym(&self, f: EdgeId) -> u8 {
        debug_assert!(!self.is_primary_minus[f as usize]);
        let e = self.graph.edge(f);
        let idx = self.in_index[f as usize] as usize;
        debug_assert!(idx > 0, "secondary edge cannot be first in text order");
        let pred = self.graph.inc(e.dst)[idx - 1];
        let pe = self.graph.edge(pred);
        debug_assert_eq!(
            self.shortest_minus_len[pe.src as usize] + pe.len,
            self.repr_minus_len[e.src as usize] + e.len + 1,
            "upper-path length contiguity violated at edge {f}"
        );
        if self.shortest_minus_len[pe.src as usize] == 0 {
            pe.first
        } else {
            self.fstsym_shortest[pe.src as usize]
        }
    }

    /// Preceding symbol via direct text lookup (with-text route).
    pub fn precsym_text(&self, f: EdgeId) -> u8 {
        let t = self
            .graph
            .text()
            .expect("precsym_text requires with-text mode");
        let p = self.cano_minus_pos(f);
        debug_assert!(p > 1, "only the trivial suffix starts at position 1");
        t[p - 2]
    }

    /// Table route in text-free mode, text route otherwise (used by the
    /// RLBWT conversion so both routes stay exercised).
    pub fn precsym_for_mode(&self, f: EdgeId) -> u8 {
        match self.graph.mode() {
            LabelMode::WithText => self.precsym_text(f),
            LabelMode::TextFree => self.precsym(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdawg::Cdawg;
    use crate::oracle;
    use crate::text::{self, Text};

    fn annotated(body: &[u8]) -> OrderedCdawg {
        OrderedCdawg::annotate(Cdawg::build(&Text::normalize(body).unwrap()))
    }

    #[test]
    fn worked_example_tables() {
        let oc = annotated(b"aabaababb");
        let g = oc.graph();
        let (root, sink) = (g.root() as usize, g.sink() as usize);
        assert_eq!(oc.repr_minus_len[root], 0);
        assert_eq!(oc.shortest_minus_len[root], 0);
        assert_eq!(oc.repr_minus_len[sink], 10);
        assert_eq!(oc.lex.repr_plus_len[sink], 0);
        assert_eq!(oc.lex.repr_plus_len[root], 1); // the path spelling "$"
        assert_eq!(oc.pos.repr_plus_len[root], 10); // the path spelling T
        assert_eq!(oc.nleaves[sink], 1);
        assert_eq!(oc.nleaves[root], 10);
    }

    #[test]
    fn primary_flags_match_oracle() {
        for seed in 0..40 {
            let t = text::random_text(1 + (seed as usize * 7) % 100, 2 + (seed % 3) as u16, seed)
                .unwrap();
            let g = Cdawg::build(&t);
            let oc = OrderedCdawg::annotate(g.clone());
            for (lower, tables) in [(LowerOrder::Lex, &oc.lex), (LowerOrder::Pos, &oc.pos)] {
                let classes = oracle::classify(&g, lower);
                assert_eq!(oc.is_primary_minus, classes.is_primary_minus);
                assert_eq!(tables.is_primary_plus, classes.is_primary_plus);
                for v in 0..g.node_count() {
                    assert_eq!(
                        oc.repr_minus_len[v] as usize,
                        classes.repr_minus[v].len(),
                        "repr_minus length at {v}"
                    );
                    assert_eq!(
                        tables.repr_plus_len[v] as usize,
                        classes.repr_plus[v].len(),
                        "repr_plus length at {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn shortest_and_fstsym_match_enumeration() {
        for seed in 0..30 {
            let t = text::random_text(1 + (seed as usize * 5) % 64, 2, seed).unwrap();
            let g = Cdawg::build(&t);
            let oc = OrderedCdawg::annotate(g.clone());
            // enumerate all upper path strings per node
            let mut uppers: Vec<Vec<Vec<u8>>> = vec![Vec::new(); g.node_count()];
            let mut stack = vec![(g.root(), Vec::new())];
            uppers[0].push(Vec::new());
            while let Some((v, s)) = stack.pop() {
                for &e in g.out(v) {
                    let mut ns = s.clone();
                    ns.extend_from_slice(g.label(e));
                    uppers[g.edge(e).dst as usize].push(ns.clone());
                    stack.push((g.edge(e).dst, ns));
                }
            }
            for v in 0..g.node_count() {
                let lens: std::collections::BTreeSet<usize> =
                    uppers[v].iter().map(|s| s.len()).collect();
                let min = *lens.iter().next().unwrap();
                let max = *lens.iter().last().unwrap();
                assert_eq!(oc.shortest_minus_len[v] as usize, min);
                assert_eq!(oc.repr_minus_len[v] as usize, max);
                // contiguous interval of lengths
                assert_eq!(lens.len(), max - min + 1);
                if v != 0 {
                    let shortest = uppers[v].iter().find(|s| s.len() == min).unwrap();
                    assert_eq!(oc.fstsym_shortest[v], shortest[0], "fstsym at node {v}");
                }
                // nleaves equals enumerated lower path count
                let mut count = 0u64;
                let mut st2 = vec![v as u32];
                while let Some(w) = st2.pop() {
                    if w == g.sink() {
                        count += 1;
                    }
                    for &e in g.out(w) {
                        st2.push(g.edge(e).dst);
                    }
                }
                assert_eq!(oc.nleaves[v], count);
            }
        }
    }

    #[test]
    fn primary_edges_form_spanning_trees() {
        for seed in 0..30 {
            let oc = annotated(text::random_text(80, 2, seed).unwrap().body());
            let g = oc.graph();
            // every non-root node has exactly one primary-minus in-edge
            for v in 1..g.node_count() as u32 {
                let count = g
                    .inc(v)
                    .iter()
                    .filter(|&&f| oc.is_primary_minus[f as usize])
                    .count();
                assert_eq!(count, 1);
            }
            // forward DFS over primary-minus edges reaches every node once
            let mut seen = vec![false; g.node_count()];
            seen[0] = true;
            let mut stack = vec![g.root()];
            let mut visits = 0usize;
            while let Some(v) = stack.pop() {
                for &f in g.out(v) {
                    if oc.is_primary_minus[f as usize] {
                        let d = g.edge(f).dst as usize;
                        assert!(!seen[d], "node {d} reached twice");
                        seen[d] = true;
                        visits += 1;
                        stack.push(d as u32);
                    }
                }
            }
            assert!(seen.iter().all(|&b| b));
            assert_eq!(visits, g.node_count() - 1);
            // symmetric: backward over primary-plus from the sink
            for order in [LowerOrder::Lex, LowerOrder::Pos] {
                let tables = oc.lower(order);
                let mut seen = vec![false; g.node_count()];
                seen[g.sink() as usize] = true;
                let mut stack = vec![g.sink()];
                while let Some(v) = stack.pop() {
                    for &f in g.inc(v) {
                        if tables.is_primary_plus[f as usize] {
                            let s = g.edge(f).src as usize;
                            assert!(!seen[s], "node {s} reached twice");
                            seen[s] = true;
                            stack.push(s as u32);
                        }
                    }
                }
                assert!(seen.iter().all(|&b| b));
            }
        }
    }

    #[test]
    fn search_paths_prefix_and_suffix_free() {
        for seed in 0..20 {
            let oc = annotated(text::random_text(60, 2, seed).unwrap().body());
            let g = oc.graph();
            // primary-minus chain from the root to each node
            let mut chain_to = vec![Vec::new(); g.node_count()];
            for v in 1..g.node_count() as u32 {
                let f = *g
                    .inc(v)
                    .iter()
                    .find(|&&f| oc.is_primary_minus[f as usize])
                    .unwrap();
                let mut path = chain_to[g.edge(f).src as usize].clone();
                path.push(f);
                chain_to[v as usize] = path;
            }
            let mut sp_minus: Vec<Vec<u32>> = Vec::new();
            for (f, e) in g.edges().iter().enumerate() {
                if !oc.is_primary_minus[f] {
                    let mut p = chain_to[e.src as usize].clone();
                    p.push(f as u32);
                    sp_minus.push(p);
                }
            }
            sp_minus.push(chain_to[g.sink() as usize].clone()); // trivial
            for i in 0..sp_minus.len() {
                for j in 0..sp_minus.len() {
                    if i != j {
                        assert!(
                            !sp_minus[j].starts_with(&sp_minus[i]),
                            "SP- not prefix-free"
                        );
                    }
                }
            }
            // (+) side: primary-plus chain down to the sink, search path X.U
            for order in [LowerOrder::Lex, LowerOrder::Pos] {
                let tables = oc.lower(order);
                let mut chain_down = vec![Vec::new(); g.node_count()];
                for v in (0..g.sink()).rev() {
                    let f = *g
                        .out(v)
                        .iter()
                        .find(|&&f| tables.is_primary_plus[f as usize])
                        .unwrap();
                    let mut path = vec![f];
                    path.extend_from_slice(&chain_down[g.edge(f).dst as usize]);
                    chain_down[v as usize] = path;
                }
                let mut sp_plus: Vec<Vec<u32>> = Vec::new();
                for (f, e) in g.edges().iter().enumerate() {
                    if !tables.is_primary_plus[f] {
                        let mut p = vec![f as u32];
                        p.extend_from_slice(&chain_down[e.dst as usize]);
                        sp_plus.push(p);
                    }
                }
                sp_plus.push(chain_down[g.root() as usize].clone()); // trivial
                for i in 0..sp_plus.len() {
                    for j in 0..sp_plus.len() {
                        if i != j {
                            assert!(
                                !sp_plus[j].ends_with(&sp_plus[i]),
                                "SP+ not suffix-free"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn precsym_matches_text_route() {
        let mut texts = vec![Text::normalize(b"ab").unwrap()];
        for seed in 0..40 {
            texts.push(text::random_text(1 + (seed as usize * 11) % 120, 2 + (seed % 3) as u16, seed).unwrap());
        }
        for t in &texts {
            let oc = OrderedCdawg::annotate(Cdawg::build(t));
            for f in 0..oc.graph().e_r() as u32 {
                if !oc.is_primary_minus[f as usize] {
                    let p = oc.cano_minus_pos(f);
                    assert_eq!(oc.precsym(f), t.at(p - 1), "edge {f} pos {p}");
                    assert_eq!(oc.precsym(f), oc.precsym_text(f));
                }
            }
        }
    }

    #[test]
    fn repr_minus_is_left_maximal() {
        for seed in 0..20 {
            let t = text::random_text(1 + (seed as usize * 9) % 128, 2, seed).unwrap();
            let g = Cdawg::build(&t);
            let classes = oracle::classify(&g, LowerOrder::Lex);
            for v in 1..g.node_count() {
                let p = &classes.repr_minus[v];
                // all occurrences of p in T, by scan
                let occ: Vec<usize> = (1..=t.n() - p.len() + 1)
                    .filter(|&q| &t.bytes()[q - 1..q - 1 + p.len()] == p.as_slice())
                    .collect();
                let at_start = occ.contains(&1);
                let preceding: std::collections::BTreeSet<u8> = occ
                    .iter()
                    .filter(|&&q| q > 1)
                    .map(|&q| t.at(q - 1))
                    .collect();
                assert!(
                    at_start || preceding.len() >= 2,
                    "repr_-(v) not left-maximal at node {v}"
                );
            }
        }
    }

    #[test]
    fn counters_within_two_e_r() {
        for seed in 0..10 {
            let oc = annotated(text::random_text(300, 4, seed).unwrap().body());
            let bound = 2 * oc.graph().e_r() as u64;
            assert!(oc.counters.upward <= bound);
            assert!(oc.counters.downward_lex <= bound);
            assert!(oc.counters.downward_pos <= bound);
            assert!(oc.counters.nleaves <= bound);
        }
    }
}
