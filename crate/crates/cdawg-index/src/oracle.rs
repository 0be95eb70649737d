//! Independent brute-force ground truth for every array, parse, and
//! structural claim. Everything here may be quadratic or worse: these are
//! correctness anchors for tests and the `verify` command, not performance
//! code. lcp is a direct symbol scan, the suffix array is a comparison sort
//! of suffixes, and the naive CDAWG goes through an explicit suffix tree.

use std::collections::HashMap;

use crate::cdawg::{Cdawg, EdgeId, NodeId};
use crate::text::Text;
use crate::LowerOrder;

/// SA, ISA, BWT, PLCP, LPF for a text, all of length `n`.
/// Arrays are stored 0-indexed: `sa[k-1]` is the 1-based position of the
/// suffix with rank `k`, `plcp[p-1]` is the PLCP value at position `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullArrays {
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub bwt: Vec<u8>,
    pub plcp: Vec<usize>,
    pub lpf: Vec<usize>,
}

/// Length of the longest common prefix, by direct symbol scan.
pub fn lcp(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).take_while(|(a, b)| a == b).count()
}

/// Ranks all suffixes lexicographically; the sentinel sorts first.
pub fn suffix_array(t: &Text) -> Vec<usize> {
    let mut sa: Vec<usize> = (1..=t.n()).collect();
    sa.sort_by(|&p, &q| t.suffix(p).cmp(t.suffix(q)));
    sa
}

pub fn bwt(t: &Text) -> Vec<u8> {
    suffix_array(t)
        .iter()
        .map(|&p| if p == 1 { t.at(t.n()) } else { t.at(p - 1) })
        .collect()
}

pub fn plcp(t: &Text) -> Vec<usize> {
    let sa = suffix_array(t);
    let n = t.n();
    let mut isa = vec![0usize; n];
    for (k, &p) in sa.iter().enumerate() {
        isa[p - 1] = k + 1;
    }
    (1..=n)
        .map(|p| {
            let k = isa[p - 1];
            if k == 1 {
                0
            } else {
                lcp(t.suffix(p), t.suffix(sa[k - 2]))
            }
        })
        .collect()
}

pub fn lpf(t: &Text) -> Vec<usize> {
    glpf(t, LowerOrder::Pos)
}

/// GLPF under the given lower order, directly from the definition:
/// the maximum lcp of `T_p` against any strictly smaller suffix.
pub fn glpf(t: &Text, order: LowerOrder) -> Vec<usize> {
    let n = t.n();
    (1..=n)
        .map(|p| {
            (1..=n)
                .filter(|&q| q != p)
                .filter(|&q| match order {
                    LowerOrder::Pos => q < p,
                    LowerOrder::Lex => t.suffix(q) < t.suffix(p),
                })
                .map(|q| lcp(t.suffix(p), t.suffix(q)))
                .max()
                .unwrap_or(0)
        })
        .collect()
}

pub fn full_arrays(t: &Text) -> FullArrays {
    let sa = suffix_array(t);
    let mut isa = vec![0usize; t.n()];
    for (k, &p) in sa.iter().enumerate() {
        isa[p - 1] = k + 1;
    }
    FullArrays {
        isa,
        bwt: bwt(t),
        plcp: plcp(t),
        lpf: lpf(t),
        sa,
    }
}

/// Greedy left-to-right parse with phrase length `max(L[p], 1)`.
pub fn greedy_parse(l: &[usize], n: usize) -> Vec<(usize, usize)> {
    assert_eq!(l.len(), n);
    let mut phrases = Vec::new();
    let mut p = 1;
    while p <= n {
        let len = l[p - 1].max(1);
        phrases.push((p, len));
        p += len;
    }
    assert_eq!(p, n + 1);
    phrases
}

// ---------------------------------------------------------------------------
// Naive CDAWG via an explicit suffix tree and bottom-up subtree merging.

struct SuffixTree {
    // children: (start, len, child), labels reference the text
    children: Vec<Vec<(u32, u32, usize)>>,
}

impl SuffixTree {
    fn build(t: &Text) -> SuffixTree {
        let mut st = SuffixTree {
            children: vec![Vec::new()],
        };
        for p in 1..=t.n() {
            st.insert(t, p);
        }
        st
    }

    fn insert(&mut self, t: &Text, p: usize) {
        let n = t.n();
        let mut v = 0usize;
        let mut i = p; // next unmatched text position
        'walk: loop {
            let pos = self.children[v]
                .iter()
                .position(|&(s, _, _)| t.at(s as usize) == t.at(i));
            let Some(pos) = pos else {
                let leaf = self.new_node();
                self.children[v].push((i as u32, (n - i + 1) as u32, leaf));
                return;
            };
            let (s, len, child) = self.children[v][pos];
            for d in 1..len as usize {
                if t.at(s as usize + d) != t.at(i + d) {
                    // split the edge at offset d
                    let mid = self.new_node();
                    let leaf = self.new_node();
                    self.children[v][pos] = (s, d as u32, mid);
                    self.children[mid].push((s + d as u32, len - d as u32, child));
                    self.children[mid].push(((i + d) as u32, (n - (i + d) + 1) as u32, leaf));
                    return;
                }
            }
            // whole edge matched; the sentinel guarantees we never run out
            i += len as usize;
            v = child;
            continue 'walk;
        }
    }

    fn new_node(&mut self) -> usize {
        self.children.push(Vec::new());
        self.children.len() - 1
    }
}

/// Builds the CDAWG by inserting all suffixes into a suffix tree, then
/// merging isomorphic subtrees bottom-up. Signatures compare full label
/// content and child class ids, so merging is exact.
pub fn naive_cdawg(t: &Text) -> Cdawg {
    let st = SuffixTree::build(t);
    type Sig = Vec<(Vec<u8>, usize)>;
    let mut sig_to_class: HashMap<Sig, usize> = HashMap::new();
    let mut class_edges: Vec<Vec<(u32, u32, usize)>> = Vec::new();
    let mut class_of = vec![usize::MAX; st.children.len()];

    // post-order over the tree (children of a node were created after it,
    // except for split nodes, so do an explicit DFS)
    let mut stack = vec![(0usize, false)];
    while let Some((v, expanded)) = stack.pop() {
        if !expanded {
            stack.push((v, true));
            for &(_, _, c) in &st.children[v] {
                stack.push((c, false));
            }
            continue;
        }
        let mut sig: Sig = st.children[v]
            .iter()
            .map(|&(s, len, c)| {
                let label = t.bytes()[(s - 1) as usize..(s - 1 + len) as usize].to_vec();
                (label, class_of[c])
            })
            .collect();
        sig.sort();
        let next = sig_to_class.len();
        let class = *sig_to_class.entry(sig).or_insert(next);
        if class == next {
            class_edges.push(
                st.children[v]
                    .iter()
                    .map(|&(s, len, c)| (s, len, class_of[c]))
                    .collect(),
            );
        }
        class_of[v] = class;
    }

    let mut raw_edges = Vec::new();
    for (class, edges) in class_edges.iter().enumerate() {
        for &(start, len, dst) in edges {
            raw_edges.push((class, dst, start, len));
        }
    }
    Cdawg::from_parts(
        t.n(),
        Some(t.bytes().to_vec()),
        class_edges.len(),
        raw_edges,
        class_of[0],
    )
}

// ---------------------------------------------------------------------------
// Brute-force path machinery: representatives, edge classes, canonical
// suffixes. All by explicit string DP; usable for small n only.

/// Per-edge primary flags and per-node representative strings, computed by
/// string dynamic programming over the DAG (independent of the order module).
pub struct EdgeClasses {
    pub repr_minus: Vec<Vec<u8>>,
    pub repr_plus: Vec<Vec<u8>>,
    pub is_primary_minus: Vec<bool>,
    pub is_primary_plus: Vec<bool>,
}

pub fn classify(g: &Cdawg, lower: LowerOrder) -> EdgeClasses {
    let nodes = g.node_count();
    // repr_minus(v): the longest root-to-v path string (min under text order)
    let mut repr_minus: Vec<Vec<u8>> = vec![Vec::new(); nodes];
    let mut seen = vec![false; nodes];
    seen[0] = true;
    for v in 0..nodes as NodeId {
        for &e in g.out(v) {
            let mut cand = repr_minus[v as usize].clone();
            cand.extend_from_slice(g.label(e));
            let dst = g.edge(e).dst as usize;
            if !seen[dst] || cand.len() > repr_minus[dst].len() {
                repr_minus[dst] = cand;
                seen[dst] = true;
            }
        }
    }
    // repr_plus(v): the smallest v-to-sink path string under the lower order
    let mut repr_plus: Vec<Vec<u8>> = vec![Vec::new(); nodes];
    for v in (0..nodes as NodeId).rev() {
        let mut best: Option<Vec<u8>> = None;
        for &e in g.out(v) {
            let mut cand = g.label(e).to_vec();
            cand.extend_from_slice(&repr_plus[g.edge(e).dst as usize]);
            let better = match &best {
                None => true,
                Some(b) => match lower {
                    LowerOrder::Lex => cand < *b,
                    LowerOrder::Pos => cand.len() > b.len(),
                },
            };
            if better {
                best = Some(cand);
            }
        }
        if let Some(b) = best {
            repr_plus[v as usize] = b;
        }
    }
    let mut is_primary_minus = vec![false; g.e_r()];
    let mut is_primary_plus = vec![false; g.e_r()];
    for (i, e) in g.edges().iter().enumerate() {
        let mut via = repr_minus[e.src as usize].clone();
        via.extend_from_slice(g.label(i as EdgeId));
        is_primary_minus[i] = via == repr_minus[e.dst as usize];
        let mut via = g.label(i as EdgeId).to_vec();
        via.extend_from_slice(&repr_plus[e.dst as usize]);
        is_primary_plus[i] = via == repr_plus[e.src as usize];
    }
    EdgeClasses {
        repr_minus,
        repr_plus,
        is_primary_minus,
        is_primary_plus,
    }
}

/// The unique root-to-sink path spelling the suffix at position `p`.
pub fn trace_suffix(t: &Text, g: &Cdawg, p: usize) -> Vec<EdgeId> {
    let mut path = Vec::new();
    let mut v = g.root();
    let mut i = p;
    while v != g.sink() {
        let e = *g
            .out(v)
            .iter()
            .find(|&&e| g.edge(e).first == t.at(i))
            .expect("suffix must trace through the CDAWG");
        assert_eq!(g.label(e), &t.bytes()[i - 1..i - 1 + g.edge(e).len as usize]);
        i += g.edge(e).len as usize;
        path.push(e);
        v = g.edge(e).dst;
    }
    assert_eq!(i, t.n() + 1);
    path
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// A canonical suffix found by explicit inspection. `cert` is `None` for the
/// trivial suffix (imaginary certificate edge); `k` is the 1-based index of
/// the certificate in the suffix's edge path, with the conventions `k = 0`
/// for the trivial (+)-suffix and `k = path_len + 1` for the trivial
/// (-)-suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canonical {
    pub pos: usize,
    pub cert: Option<EdgeId>,
    pub k: usize,
    pub side: Side,
}

/// Tests the canonical-factoring conditions of every suffix on both sides by
/// explicit inspection. Panics if a suffix admits more than one factoring on
/// a side (uniqueness is a structural claim this oracle enforces).
pub fn enumerate_canonical(
    t: &Text,
    g: &Cdawg,
    lower: LowerOrder,
) -> (Vec<Canonical>, Vec<Canonical>) {
    let classes = classify(g, lower);
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for p in 1..=t.n() {
        let path = trace_suffix(t, g, p);
        let l = path.len();
        let ep_minus: Vec<bool> = path
            .iter()
            .map(|&e| classes.is_primary_minus[e as usize])
            .collect();
        let ep_plus: Vec<bool> = path
            .iter()
            .map(|&e| classes.is_primary_plus[e as usize])
            .collect();

        // (-) side
        if ep_minus.iter().all(|&b| b) {
            minus.push(Canonical {
                pos: p,
                cert: None,
                k: l + 1,
                side: Side::Minus,
            });
        } else {
            let candidates: Vec<usize> = (1..=l)
                .filter(|&k| {
                    !ep_minus[k - 1]                       // (i) f_k is (-)-secondary
                        && ep_minus[..k - 1].iter().all(|&b| b) // (i)+(ii) highest, upper all EP-
                        && ep_plus[k..].iter().all(|&b| b)      // (iii) lower all EP+
                })
                .collect();
            assert!(candidates.len() <= 1, "non-unique (-)-canonical factoring");
            if let Some(&k) = candidates.first() {
                minus.push(Canonical {
                    pos: p,
                    cert: Some(path[k - 1]),
                    k,
                    side: Side::Minus,
                });
            }
        }

        // (+) side
        if ep_plus.iter().all(|&b| b) {
            plus.push(Canonical {
                pos: p,
                cert: None,
                k: 0,
                side: Side::Plus,
            });
        } else {
            let candidates: Vec<usize> = (1..=l)
                .filter(|&k| {
                    !ep_plus[k - 1]                         // (i) f_k is (+)-secondary
                        && ep_plus[k..].iter().all(|&b| b)  // (i) lowest, (iii) lower all EP+
                        && ep_minus[..k - 1].iter().all(|&b| b) // (ii) upper all EP-
                })
                .collect();
            assert!(candidates.len() <= 1, "non-unique (+)-canonical factoring");
            if let Some(&k) = candidates.first() {
                plus.push(Canonical {
                    pos: p,
                    cert: Some(path[k - 1]),
                    k,
                    side: Side::Plus,
                });
            }
        }
    }
    (minus, plus)
}

/// Label-respecting graph isomorphism for deterministic CDAWGs. Both graphs
/// must be in with-text mode; labels are compared by content, never by start
/// position.
pub fn isomorphic(a: &Cdawg, b: &Cdawg) -> bool {
    if a.node_count() != b.node_count() || a.e_r() != b.e_r() {
        return false;
    }
    let mut map = vec![u32::MAX; a.node_count()];
    map[a.root() as usize] = b.root();
    let mut stack = vec![(a.root(), b.root())];
    while let Some((va, vb)) = stack.pop() {
        if a.out(va).len() != b.out(vb).len() {
            return false;
        }
        for &ea in a.out(va) {
            let Some(&eb) = b
                .out(vb)
                .iter()
                .find(|&&eb| b.edge(eb).first == a.edge(ea).first)
            else {
                return false;
            };
            if a.label(ea) != b.label(eb) {
                return false;
            }
            let (da, db) = (a.edge(ea).dst, b.edge(eb).dst);
            if map[da as usize] == u32::MAX {
                map[da as usize] = db;
                stack.push((da, db));
            } else if map[da as usize] != db {
                return false;
            }
        }
    }
    true
}
