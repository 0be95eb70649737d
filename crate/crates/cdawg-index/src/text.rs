//! Terminated texts and generators for test/benchmark families.
//!
//! A [`Text`] is a byte string whose last symbol is the sentinel (byte 0),
//! which occurs nowhere else and compares smaller than every other symbol.
//! Positions are 1-based throughout the public model.

use thiserror::Error;

/// The end-marker appended to every text body. Byte 0 is strictly smaller
/// than every alphabet symbol under byte order.
pub const SENTINEL: u8 = 0;

/// Default cap on the terminated length `n`.
pub const DEFAULT_MAX_N: usize = 1 << 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("input contains the sentinel byte 0 at offset {0}")]
    SentinelInInput(usize),
    #[error("text length {n} exceeds the size cap {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("sigma must be in 2..=255, got {0}")]
    BadSigma(u16),
}

/// A sentinel-terminated text. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    data: Vec<u8>,
}

impl Text {
    /// Appends the sentinel to a raw body. Rejects bodies containing byte 0.
    pub fn normalize(raw: &[u8]) -> Result<Text, TextError> {
        Text::normalize_with_cap(raw, DEFAULT_MAX_N)
    }

    pub fn normalize_with_cap(raw: &[u8], cap: usize) -> Result<Text, TextError> {
        if let Some(off) = raw.iter().position(|&b| b == SENTINEL) {
            return Err(TextError::SentinelInInput(off));
        }
        if raw.len() + 1 > cap {
            return Err(TextError::SizeCap {
                n: raw.len() + 1,
                cap,
            });
        }
        let mut data = Vec::with_capacity(raw.len() + 1);
        data.extend_from_slice(raw);
        data.push(SENTINEL);
        Ok(Text { data })
    }

    /// Terminated length `n` (body plus sentinel).
    pub fn n(&self) -> usize {
        self.data.len()
    }

    /// Symbol at 1-based position `p`, `1 <= p <= n`.
    pub fn at(&self, p: usize) -> u8 {
        self.data[p - 1]
    }

    /// The whole text including the sentinel.
    pub fn bytes(&self) -> &[u8] {
        &self.data
    }

    /// The body without the sentinel.
    pub fn body(&self) -> &[u8] {
        &self.data[..self.data.len() - 1]
    }

    /// Suffix starting at 1-based position `p`.
    pub fn suffix(&self, p: usize) -> &[u8] {
        &self.data[p - 1..]
    }

    /// Number of distinct symbols, sentinel included.
    pub fn sigma(&self) -> usize {
        let mut seen = [false; 256];
        for &b in &self.data {
            seen[b as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }
}

/// `k`-th iterate of the Thue-Morse morphism 0 -> 01, 1 -> 10 applied to "0",
/// over the symbols b'0', b'1'. Body length is `2^k`.
pub fn thue_morse(k: u32) -> Result<Text, TextError> {
    thue_morse_with_cap(k, DEFAULT_MAX_N)
}

pub fn thue_morse_with_cap(k: u32, cap: usize) -> Result<Text, TextError> {
    if k >= 62 || (1usize << k) + 1 > cap {
        let n = if k >= 62 { usize::MAX } else { (1usize << k) + 1 };
        return Err(TextError::SizeCap { n, cap });
    }
    let mut cur = vec![b'0'];
    for _ in 0..k {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &c in &cur {
            if c == b'0' {
                next.extend_from_slice(b"01");
            } else {
                next.extend_from_slice(b"10");
            }
        }
        cur = next;
    }
    Text::normalize_with_cap(&cur, cap)
}

/// `k`-th Fibonacci word under F1 = "a", F2 = "ab", F_k = F_{k-1} F_{k-2}.
pub fn fibonacci(k: u32) -> Result<Text, TextError> {
    fibonacci_with_cap(k, DEFAULT_MAX_N)
}

pub fn fibonacci_with_cap(k: u32, cap: usize) -> Result<Text, TextError> {
    assert!(k >= 1, "fibonacci order must be >= 1");
    let mut prev = b"a".to_vec(); // F1
    if k == 1 {
        return Text::normalize_with_cap(&prev, cap);
    }
    let mut cur = b"ab".to_vec(); // F2
    for _ in 2..k {
        if prev.len() + cur.len() + 1 > cap {
            return Err(TextError::SizeCap {
                n: prev.len() + cur.len() + 1,
                cap,
            });
        }
        let mut next = Vec::with_capacity(cur.len() + prev.len());
        next.extend_from_slice(&cur);
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
    }
    Text::normalize_with_cap(&cur, cap)
}

/// Deterministic pseudo-random body of `len` symbols over bytes `1..=sigma`.
/// Equal `(len, sigma, seed)` triples yield identical texts.
pub fn random_text(len: usize, sigma: u16, seed: u64) -> Result<Text, TextError> {
    random_text_with_cap(len, sigma, seed, DEFAULT_MAX_N)
}

pub fn random_text_with_cap(
    len: usize,
    sigma: u16,
    seed: u64,
    cap: usize,
) -> Result<Text, TextError> {
    use rand::{Rng, SeedableRng};
    if !(2..=255).contains(&sigma) {
        return Err(TextError::BadSigma(sigma));
    }
    if len + 1 > cap {
        return Err(TextError::SizeCap { n: len + 1, cap });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let body: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=sigma as u8)).collect();
    Text::normalize_with_cap(&body, cap)
}
