//! Line-oriented text formats for the conversion outputs.
//!
//! Every format is UTF-8, TAB-separated, and starts with a one-line typed
//! header so files are self-describing and diff-able. Symbols are escaped:
//! the sentinel prints as `$`, printable ASCII (except `$` and `\`) prints
//! literally, and everything else prints as `\xHH`.

use std::fmt::Write as _;

use crate::glpf::SparseGlpf;
use crate::parse::Parse;
use crate::rlbwt::RunLengthBwt;
use crate::text::SENTINEL;

/// Renders one symbol for the text formats.
pub fn escape_symbol(sym: u8) -> String {
    match sym {
        SENTINEL => "$".to_string(),
        b'!'..=b'~' if sym != b'$' && sym != b'\\' => (sym as char).to_string(),
        _ => format!("\\x{sym:02x}"),
    }
}

pub fn write_rlbwt(r: &RunLengthBwt, n: usize) -> String {
    let mut out = format!("rlbwt\tn={n}\tr={}\n", r.r());
    for &(sym, count) in &r.runs {
        writeln!(out, "{}\t{count}", escape_symbol(sym)).unwrap();
    }
    out
}

pub fn write_sparse(s: &SparseGlpf) -> String {
    let mut out = format!(
        "sparse-glpf\torder={}\tn={}\tentries={}\n",
        s.lower_order.name(),
        s.n,
        s.entries.len()
    );
    for &(pos, val) in &s.entries {
        writeln!(out, "{pos}\t{val}").unwrap();
    }
    out
}

/// Full array (PLCP or LPF): one value per line after the header.
pub fn write_array(kind: &str, values: &[usize]) -> String {
    let mut out = format!("array\tkind={kind}\tn={}\n", values.len());
    for v in values {
        writeln!(out, "{v}").unwrap();
    }
    out
}

pub fn write_irr_plcp(samples: &[(usize, usize)], n: usize) -> String {
    let mut out = format!("irr-plcp\tn={n}\tr={}\n", samples.len());
    for &(pos, val) in samples {
        writeln!(out, "{pos}\t{val}").unwrap();
    }
    out
}

pub fn write_parse(p: &Parse, n: usize) -> String {
    let mut out = format!("parse\tkind={}\tn={n}\tphrases={}\n", p.kind.name(), p.u());
    for &(pos, len) in &p.phrases {
        writeln!(out, "{pos}\t{len}").unwrap();
    }
    out
}
