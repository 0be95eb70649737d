//! CDAWG construction and the graph model shared by all conversions.
//!
//! The CDAWG of a terminated text is the minimal compacted automaton for the
//! set of its suffixes: an edge-labeled DAG with one root and one sink in
//! which every root-to-sink path spells a distinct suffix. Labels are stored
//! as `(start, length, first symbol)`; in text-free mode the start position
//! is erased and every downstream conversion must still work.
//!
//! Construction route: build the suffix automaton (DAWG) of the text online,
//! then compact it by keeping the initial state, the sink state, and every
//! state with at least two out-transitions, contracting unary chains into
//! single labeled edges. The result is cross-checked against
//! [`crate::oracle::naive_cdawg`] in tests.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{Text, SENTINEL};

pub type NodeId = u32;
pub type EdgeId = u32;

/// Marker for an erased start position (text-free mode).
pub const NO_START: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LabelMode {
    #[serde(rename = "with-text")]
    WithText,
    #[serde(rename = "text-free")]
    TextFree,
}

/// A labeled edge. The label is the factor `T[start..start+len-1]`
/// (1-based); only `(len, first)` survive in text-free mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub len: u32,
    pub first: u8,
    pub start: u32,
}

#[derive(Debug, Clone)]
pub struct Cdawg {
    n: usize,
    mode: LabelMode,
    text: Option<Vec<u8>>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    inc: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub n: usize,
    pub nodes: usize,
    pub e_r: usize,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported graph format version {0}")]
    Version(u32),
    #[error("edge {0} violates topological order (src >= dst)")]
    NotTopological(usize),
    #[error("node {0} has sibling out-edges with equal first symbols (determinism)")]
    Determinism(NodeId),
    #[error("expected a unique root; node {0} has no in-edges")]
    ExtraRoot(NodeId),
    #[error("expected a unique sink; node {0} has no out-edges")]
    ExtraSink(NodeId),
    #[error("root-to-sink path count {got} does not equal n = {n}")]
    PathCount { got: u64, n: u64 },
    #[error("total root-to-sink path length {got} does not equal n(n+1)/2 = {want}")]
    PathLengthSum { got: u64, want: u64 },
    #[error("edge {0} has an empty label")]
    EmptyLabel(usize),
    #[error("edge {edge} label is out of range (start {start}, len {len}, n {n})")]
    LabelRange { edge: usize, start: u32, len: u32, n: usize },
    #[error("edge {0} first symbol does not match the text at its start position")]
    FirstSymbolMismatch(usize),
    #[error("with-text graph must carry a text of length n ending in the sentinel")]
    BadText,
    #[error("graph with fewer than 2 nodes or without edges")]
    TooSmall,
}

impl Cdawg {
    /// Builds the CDAWG of `t` (with-text mode).
    pub fn build(t: &Text) -> Cdawg {
        let sam = Sam::build(t.bytes());
        sam.compact(t)
    }

    /// Returns a copy in text-free mode: start positions and the text are
    /// erased, `(len, first)` remain.
    pub fn strip_text(&self) -> Cdawg {
        let mut g = self.clone();
        g.mode = LabelMode::TextFree;
        g.text = None;
        for e in &mut g.edges {
            e.start = NO_START;
        }
        g
    }

    pub fn stats(&self) -> Stats {
        Stats {
            n: self.n,
            nodes: self.out.len(),
            e_r: self.edges.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> LabelMode {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn e_r(&self) -> usize {
        self.edges.len()
    }

    /// Node ids are assigned in topological order: the root is 0 and the
    /// sink is `node_count() - 1`.
    pub fn root(&self) -> NodeId {
        0
    }

    pub fn sink(&self) -> NodeId {
        (self.out.len() - 1) as NodeId
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out(&self, v: NodeId) -> &[EdgeId] {
        &self.out[v as usize]
    }

    pub fn inc(&self, v: NodeId) -> &[EdgeId] {
        &self.inc[v as usize]
    }

    pub fn text(&self) -> Option<&[u8]> {
        self.text.as_deref()
    }

    /// Label content of an edge. Panics in text-free mode.
    pub fn label(&self, e: EdgeId) -> &[u8] {
        let t = self
            .text
            .as_ref()
            .expect("label content requires with-text mode");
        let e = &self.edges[e as usize];
        &t[(e.start - 1) as usize..(e.start - 1 + e.len) as usize]
    }

    /// Number of distinct root-to-sink paths; equals `n` for a valid CDAWG.
    pub fn path_count(&self) -> u64 {
        let mut ways = vec![0u64; self.out.len()];
        ways[self.root() as usize] = 1;
        for v in 0..self.out.len() {
            for &e in &self.out[v] {
                ways[self.edges[e as usize].dst as usize] += ways[v];
            }
        }
        ways[self.sink() as usize]
    }

    pub(crate) fn sort_out_by<F, K: Ord>(&mut self, v: NodeId, key: F)
    where
        F: Fn(&Edge) -> K,
    {
        let edges = &self.edges;
        self.out[v as usize].sort_by_key(|&e| key(&edges[e as usize]));
    }

    pub(crate) fn sort_inc_by<F, K: Ord>(&mut self, v: NodeId, key: F)
    where
        F: Fn(&Edge) -> K,
    {
        let edges = &self.edges;
        self.inc[v as usize].sort_by_key(|&e| key(&edges[e as usize]));
    }

    /// Assembles a graph from raw edges over arbitrary node ids, relabeling
    /// nodes in topological order. `start` positions are 1-based.
    pub(crate) fn from_parts(
        n: usize,
        text: Option<Vec<u8>>,
        node_count: usize,
        raw_edges: Vec<(usize, usize, u32, u32)>, // (src, dst, start, len)
        root: usize,
    ) -> Cdawg {
        // topological ids via Kahn from the root
        let mut indeg = vec![0usize; node_count];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); node_count];
        for &(s, d, _, _) in &raw_edges {
            indeg[d] += 1;
            adj[s].push(d);
        }
        let mut order = vec![u32::MAX; node_count];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        let mut next_id = 0u32;
        while let Some(v) = queue.pop_front() {
            order[v] = next_id;
            next_id += 1;
            for &d in &adj[v] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    queue.push_back(d);
                }
            }
        }
        assert_eq!(next_id as usize, node_count, "graph is not connected/acyclic");

        let mode = if text.is_some() {
            LabelMode::WithText
        } else {
            LabelMode::TextFree
        };
        let mut g = Cdawg {
            n,
            mode,
            edges: Vec::with_capacity(raw_edges.len()),
            out: vec![Vec::new(); node_count],
            inc: vec![Vec::new(); node_count],
            text,
        };
        for (s, d, start, len) in raw_edges {
            let first = match &g.text {
                Some(t) => t[(start - 1) as usize],
                None => unreachable!("from_parts is only used in with-text mode"),
            };
            let id = g.edges.len() as EdgeId;
            let (src, dst) = (order[s], order[d]);
            g.edges.push(Edge {
                src,
                dst,
                len,
                first,
                start,
            });
            g.out[src as usize].push(id);
            g.inc[dst as usize].push(id);
        }
        debug_assert!(g.out[g.sink() as usize].is_empty(), "sink must be last in topo order");
        g
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            version: FORMAT_VERSION,
            n: self.n as u64,
            mode: self.mode,
            nodes: self.out.len() as u64,
            root: self.root(),
            sink: self.sink(),
            text: self.text.clone(),
            edges: self.edges.clone(),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    /// Parses and fully validates a serialized graph. Every structural
    /// invariant violation is reported as a named error.
    pub fn from_json(s: &str) -> Result<Cdawg, GraphError> {
        let file: GraphFile = serde_json::from_str(s)?;
        if file.version != FORMAT_VERSION {
            return Err(GraphError::Version(file.version));
        }
        let n = file.n as usize;
        let node_count = file.nodes as usize;
        if node_count < 2 || file.edges.is_empty() {
            return Err(GraphError::TooSmall);
        }
        let mut out: Vec<Vec<EdgeId>> = vec![Vec::new(); node_count];
        let mut inc: Vec<Vec<EdgeId>> = vec![Vec::new(); node_count];
        for (i, e) in file.edges.iter().enumerate() {
            if e.src >= e.dst || e.dst as usize >= node_count {
                return Err(GraphError::NotTopological(i));
            }
            if e.len == 0 {
                return Err(GraphError::EmptyLabel(i));
            }
            out[e.src as usize].push(i as EdgeId);
            inc[e.dst as usize].push(i as EdgeId);
        }
        for v in 0..node_count as NodeId {
            if v != 0 && inc[v as usize].is_empty() {
                return Err(GraphError::ExtraRoot(v));
            }
            if v + 1 != node_count as NodeId && out[v as usize].is_empty() {
                return Err(GraphError::ExtraSink(v));
            }
            let mut firsts: Vec<u8> = out[v as usize]
                .iter()
                .map(|&e| file.edges[e as usize].first)
                .collect();
            firsts.sort_unstable();
            if firsts.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::Determinism(v));
            }
        }
        match file.mode {
            LabelMode::WithText => {
                let t = file.text.as_ref().ok_or(GraphError::BadText)?;
                if t.len() != n || t.last() != Some(&SENTINEL) {
                    return Err(GraphError::BadText);
                }
                if t[..n - 1].contains(&SENTINEL) {
                    return Err(GraphError::BadText);
                }
                for (i, e) in file.edges.iter().enumerate() {
                    if e.start == 0 || e.start as usize + e.len as usize - 1 > n {
                        return Err(GraphError::LabelRange {
                            edge: i,
                            start: e.start,
                            len: e.len,
                            n,
                        });
                    }
                    if t[(e.start - 1) as usize] != e.first {
                        return Err(GraphError::FirstSymbolMismatch(i));
                    }
                }
            }
            LabelMode::TextFree => {
                if file.text.is_some() {
                    return Err(GraphError::BadText);
                }
            }
        }
        let g = Cdawg {
            n,
            mode: file.mode,
            text: file.text,
            edges: file.edges,
            out,
            inc,
        };
        let got = g.path_count();
        if got != n as u64 {
            return Err(GraphError::PathCount { got, n: n as u64 });
        }
        // The n paths spell the n distinct suffixes, so their lengths are a
        // permutation of 1..n; checking the total length catches label-length
        // corruption that leaves the path count intact.
        let mut ways = vec![0u64; g.out.len()];
        let mut sumlen = vec![0u64; g.out.len()];
        ways[0] = 1;
        for v in 0..g.out.len() {
            for &e in &g.out[v] {
                let edge = &g.edges[e as usize];
                let d = edge.dst as usize;
                ways[d] += ways[v];
                sumlen[d] = sumlen[d]
                    .saturating_add(sumlen[v])
                    .saturating_add(ways[v].saturating_mul(edge.len as u64));
            }
        }
        let got = sumlen[g.sink() as usize];
        let want = n as u64 * (n as u64 + 1) / 2;
        if got != want {
            return Err(GraphError::PathLengthSum { got, want });
        }
        Ok(g)
    }
}

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct GraphFile {
    version: u32,
    n: u64,
    mode: LabelMode,
    nodes: u64,
    root: NodeId,
    sink: NodeId,
    #[serde(skip_serializing_if = "Option::is_none")]
    text: Option<Vec<u8>>,
    edges: Vec<Edge>,
}

// ---------------------------------------------------------------------------
// Suffix automaton (DAWG) and its compaction.

const NIL: u32 = u32::MAX;

struct Sam {
    len: Vec<u32>,
    link: Vec<u32>,
    trans: Vec<Vec<(u8, u32)>>,
    /// One end position (1-based) of the factor class of each state.
    witness: Vec<u32>,
    last: u32,
}

impl Sam {
    fn build(bytes: &[u8]) -> Sam {
        let mut sam = Sam {
            len: vec![0],
            link: vec![NIL],
            trans: vec![Vec::new()],
            witness: vec![0],
            last: 0,
        };
        for (i, &c) in bytes.iter().enumerate() {
            sam.extend(c, (i + 1) as u32);
        }
        sam
    }

    fn get(&self, v: u32, c: u8) -> Option<u32> {
        self.trans[v as usize]
            .iter()
            .find(|&&(s, _)| s == c)
            .map(|&(_, d)| d)
    }

    fn set(&mut self, v: u32, c: u8, d: u32) {
        for t in &mut self.trans[v as usize] {
            if t.0 == c {
                t.1 = d;
                return;
            }
        }
        self.trans[v as usize].push((c, d));
    }

    fn new_state(&mut self, len: u32, link: u32, trans: Vec<(u8, u32)>, witness: u32) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.trans.push(trans);
        self.witness.push(witness);
        (self.len.len() - 1) as u32
    }

    fn extend(&mut self, c: u8, pos: u32) {
        let cur = self.new_state(self.len[self.last as usize] + 1, NIL, Vec::new(), pos);
        let mut p = self.last;
        while p != NIL && self.get(p, c).is_none() {
            self.set(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NIL {
            self.link[cur as usize] = 0;
        } else {
            let q = self.get(p, c).unwrap();
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.new_state(
                    self.len[p as usize] + 1,
                    self.link[q as usize],
                    self.trans[q as usize].clone(),
                    self.witness[q as usize],
                );
                while p != NIL && self.get(p, c) == Some(q) {
                    self.set(p, c, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }

    /// Contracts unary chains. Kept states: the initial state, the sink
    /// (the state of the whole text, unique because of the sentinel), and
    /// every state with >= 2 out-transitions.
    fn compact(&self, t: &Text) -> Cdawg {
        let states = self.len.len();
        let sink = self.last;
        let mut kept = vec![false; states];
        kept[0] = true;
        kept[sink as usize] = true;
        for s in 0..states {
            if self.trans[s].len() >= 2 {
                kept[s] = true;
            }
        }
        // dense ids for kept states
        let mut id = vec![usize::MAX; states];
        let mut count = 0usize;
        for s in 0..states {
            if kept[s] {
                id[s] = count;
                count += 1;
            }
        }
        // Memoized chain contraction. Chains converge (distinct edges can
        // enter the same unary tail at different depths), so walking each
        // chain per edge is quadratic on non-repetitive texts; resolve each
        // chain state once instead.
        let mut memo: Vec<(u32, u32)> = vec![(NIL, 0); states]; // (kept dst, steps)
        let mut path: Vec<u32> = Vec::new();
        let mut resolve = |u: u32, memo: &mut Vec<(u32, u32)>| -> (u32, u32) {
            if kept[u as usize] {
                return (u, 0);
            }
            path.clear();
            let mut v = u;
            while !kept[v as usize] && memo[v as usize].0 == NIL {
                path.push(v);
                debug_assert_eq!(self.trans[v as usize].len(), 1);
                v = self.trans[v as usize][0].1;
            }
            let (dst, mut steps) = if kept[v as usize] {
                (v, 0)
            } else {
                memo[v as usize]
            };
            for &w in path.iter().rev() {
                steps += 1;
                memo[w as usize] = (dst, steps);
            }
            memo[u as usize]
        };
        let mut raw_edges = Vec::new();
        for s in 0..states {
            if !kept[s] {
                continue;
            }
            for &(_, u) in &self.trans[s] {
                let (dst, extra) = resolve(u, &mut memo);
                let len = 1 + extra;
                let start = self.witness[dst as usize] - len + 1;
                raw_edges.push((id[s], id[dst as usize], start, len));
            }
        }
        Cdawg::from_parts(t.n(), Some(t.bytes().to_vec()), count, raw_edges, id[0])
    }
}
