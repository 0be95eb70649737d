//! End-to-end oracle verification used by the CLI `verify` command.
//!
//! Runs the whole conversion pipeline on a text and compares every output
//! against the brute-force oracles, in both label modes, plus the size and
//! traversal-counter bounds. Oracles are quadratic, so inputs are capped.

use crate::cdawg::Cdawg;
use crate::glpf::{expand_glpf, irreducible_plcp, qirr_glpf};
use crate::oracle;
use crate::order::OrderedCdawg;
use crate::parse::{lex_parse, lz_parse};
use crate::rlbwt::{expand_bwt, rec_rbwt};
use crate::text::Text;
use crate::LowerOrder;

/// Largest n the quadratic oracles are asked to handle.
pub const ORACLE_CAP: usize = 1 << 13;

/// Texts up to this size are also cross-checked against the suffix-tree
/// CDAWG construction (it is far slower than the array oracles).
const ISO_CAP: usize = 512;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.ok)
}

/// Runs every oracle equivalence and bound check for one text.
/// Panics if `t.n() > ORACLE_CAP`; callers gate on the cap.
pub fn verify_text(t: &Text) -> Vec<Check> {
    assert!(t.n() <= ORACLE_CAP, "text exceeds the oracle cap");
    let n = t.n();
    let arrays = oracle::full_arrays(t);

    let g = Cdawg::build(t);
    let oc = OrderedCdawg::annotate(g.clone());
    let oc_free = OrderedCdawg::annotate(g.strip_text());

    let r = rec_rbwt(&oc);
    let s_lex = qirr_glpf(&oc, LowerOrder::Lex);
    let s_pos = qirr_glpf(&oc, LowerOrder::Pos);

    let mut checks = Vec::new();
    let mut push = |name: &'static str, ok: bool, detail: String| {
        checks.push(Check { name, ok, detail });
    };

    if n <= ISO_CAP {
        let ok = oracle::isomorphic(&g, &oracle::naive_cdawg(t));
        push("cdawg-isomorphic-to-naive", ok, String::new());
    }

    let bwt = expand_bwt(&r);
    push(
        "rlbwt-matches-oracle-bwt",
        bwt == arrays.bwt,
        format!("r={}", r.r()),
    );

    match expand_glpf(&s_lex, n) {
        Ok(a) => push("glpf-lex-matches-plcp", a == arrays.plcp, String::new()),
        Err(e) => push("glpf-lex-matches-plcp", false, e.to_string()),
    }
    match expand_glpf(&s_pos, n) {
        Ok(a) => push("glpf-pos-matches-lpf", a == arrays.lpf, String::new()),
        Err(e) => push("glpf-pos-matches-lpf", false, e.to_string()),
    }

    // irreducible-position sampling rule computed straight from the oracle arrays
    let mut want_irr = Vec::new();
    for i in 1..=n {
        let p = arrays.sa[i - 1];
        if i == 1 || arrays.bwt[i - 1] != arrays.bwt[i - 2] {
            want_irr.push((p, arrays.plcp[p - 1]));
        }
    }
    match irreducible_plcp(&s_lex, &r) {
        Ok(got) => push(
            "irreducible-plcp-matches-oracle",
            got == want_irr,
            format!("size={}", got.len()),
        ),
        Err(e) => push("irreducible-plcp-matches-oracle", false, e.to_string()),
    }

    let lex = lex_parse(&s_lex, n);
    match &lex {
        Ok(p) => push(
            "lex-parse-matches-oracle",
            p.phrases == oracle::greedy_parse(&arrays.plcp, n),
            format!("phrases={}", p.u()),
        ),
        Err(e) => push("lex-parse-matches-oracle", false, e.to_string()),
    }
    let lz = lz_parse(&s_pos, n);
    match &lz {
        Ok(p) => push(
            "lz-parse-matches-oracle",
            p.phrases == oracle::greedy_parse(&arrays.lpf, n),
            format!("z={}", p.u()),
        ),
        Err(e) => push("lz-parse-matches-oracle", false, e.to_string()),
    }

    let mode_ok = rec_rbwt(&oc_free) == r
        && qirr_glpf(&oc_free, LowerOrder::Lex) == s_lex
        && qirr_glpf(&oc_free, LowerOrder::Pos) == s_pos;
    push("text-free-mode-identical", mode_ok, String::new());

    let e_r = g.e_r();
    let bounds_ok = r.r() <= e_r
        && s_lex.entries.len() <= e_r
        && s_pos.entries.len() <= e_r
        && lz.as_ref().map_or(false, |p| p.u() <= e_r)
        && lex.as_ref().map_or(false, |p| p.u() <= 2 * r.r());
    push(
        "size-bounds",
        bounds_ok,
        format!("e_r={e_r} r={}", r.r()),
    );

    let budget = 2 * e_r as u64;
    let c = &oc.counters;
    let counters_ok = c.upward <= budget
        && c.downward_lex <= budget
        && c.downward_pos <= budget
        && c.nleaves <= budget
        && r.visited <= budget
        && s_lex.visited <= budget
        && s_pos.visited <= budget;
    push("visited-counters-within-2e", counters_ok, String::new());

    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text;

    #[test]
    fn worked_example_passes() {
        let t = Text::normalize(b"aabaababb").unwrap();
        let checks = verify_text(&t);
        assert!(checks.len() >= 9);
        for c in &checks {
            assert!(c.ok, "{} failed: {}", c.name, c.detail);
        }
    }

    #[test]
    fn random_texts_pass() {
        for seed in 0..20 {
            let t = text::random_text(1 + seed as usize * 13, 2 + (seed % 3) as u16, seed).unwrap();
            assert!(all_passed(&verify_text(&t)), "seed {seed}");
        }
    }
}
