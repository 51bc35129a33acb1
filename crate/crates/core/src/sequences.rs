//! Deterministic sequence substrates: the Thue–Morse binary sequence and a
//! square-free ternary word derived from it.
//!
//! Both evaluators are pure functions first; the memoizing wrappers only
//! cache an append-only prefix so repeated window scans stay cheap.

use alloc::vec::Vec;

/// n-th term of the Thue–Morse sequence: parity of the number of ones in the
/// binary expansion of `n`.
pub fn thue_morse(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// n-th term of the square-free ternary word: the number of ones between the
/// n-th and (n+1)-th zero of the Thue–Morse sequence. Always in {0,1,2}
/// because Thue–Morse contains no factor 111.
pub fn squarefree_ternary(n: u64) -> u8 {
    // Position of the n-th zero (0-based), then count ones up to the next zero.
    let mut zeros_seen = 0u64;
    let mut pos = 0u64;
    let start = loop {
        if thue_morse(pos) == 0 {
            if zeros_seen == n {
                break pos;
            }
            zeros_seen += 1;
        }
        pos += 1;
    };
    let mut ones = 0u8;
    let mut p = start + 1;
    while thue_morse(p) != 0 {
        ones += 1;
        p += 1;
    }
    ones
}

/// Memoized prefix of the Thue–Morse sequence.
#[derive(Debug, Default, Clone)]
pub struct BinarySeq {
    cache: Vec<u8>,
}

impl BinarySeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: u64) -> u8 {
        let n = n as usize;
        while self.cache.len() <= n {
            self.cache.push(thue_morse(self.cache.len() as u64));
        }
        self.cache[n]
    }

    pub fn prefix(&mut self, len: usize) -> &[u8] {
        if len > 0 {
            self.get(len as u64 - 1);
        }
        &self.cache[..len]
    }
}

/// Memoized prefix of the square-free ternary word.
#[derive(Debug, Default, Clone)]
pub struct TernarySeq {
    cache: Vec<u8>,
    // scan state over the underlying Thue-Morse word
    tm_pos: u64,
}

impl TernarySeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: u64) -> u8 {
        while self.cache.len() <= n as usize {
            self.extend_one();
        }
        self.cache[n as usize]
    }

    pub fn prefix(&mut self, len: usize) -> &[u8] {
        if len > 0 {
            self.get(len as u64 - 1);
        }
        &self.cache[..len]
    }

    fn extend_one(&mut self) {
        // advance to the next zero of Thue-Morse
        while thue_morse(self.tm_pos) != 0 {
            self.tm_pos += 1;
        }
        let mut ones = 0u8;
        let mut p = self.tm_pos + 1;
        while thue_morse(p) != 0 {
            ones += 1;
            p += 1;
        }
        self.tm_pos = p;
        self.cache.push(ones);
    }
}

/// True iff `word` contains a nonempty contiguous factor of the form WW.
///
/// Runs in O(n · p_max): for each candidate period p we track the longest run
/// of positions with word[i] == word[i+p]; a run of length p is a square.
pub fn has_square<T: Eq>(word: &[T]) -> bool {
    let n = word.len();
    for p in 1..=n / 2 {
        let mut run = 0usize;
        for i in 0..n - p {
            if word[i] == word[i + p] {
                run += 1;
                if run >= p {
                    return true;
                }
            } else {
                run = 0;
            }
        }
    }
    false
}
