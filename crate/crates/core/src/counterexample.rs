//! ℕ is not a limit-aperiodic G-set for the group generated by the shift
//! s(n) = n+1 and the transposition t = (0,1): for any finite coloring of a
//! long enough initial segment, a monochromatic subsequence yields
//! transposition products whose pulled-back patterns are constant.
//!
//! Indices are 0-based; 0 is never swapped, the monochromatic subsequence
//! starts at index 1 or later.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors from the counterexample pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DemoError {
    /// The colored window is too small for the pigeonhole argument.
    WindowTooSmall { needed: usize, got: usize },
    /// A requested index falls outside the colored domain.
    DomainEscape { index: u64, domain: usize },
    /// Transposition product did not realize h_n(k) = a_k.
    Collision { k: u64 },
    /// Sequence shorter than the requested prefix length.
    SequenceTooShort { needed: usize, got: usize },
}

impl fmt::Display for DemoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DemoError::WindowTooSmall { needed, got } => write!(
                f,
                "window of {got} points is below the pigeonhole bound {needed} (count x palette)"
            ),
            DemoError::DomainEscape { index, domain } => {
                write!(f, "index {index} escapes the colored domain [0..{domain})")
            }
            DemoError::Collision { k } => {
                write!(f, "transposition product failed to map {k} to its target")
            }
            DemoError::SequenceTooShort { needed, got } => {
                write!(f, "sequence of length {got} shorter than requested {needed}")
            }
        }
    }
}

impl core::error::Error for DemoError {}

/// Finitely supported permutation of ℕ: bijective on its finite support,
/// identity elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FinPerm {
    map: BTreeMap<u64, u64>,
}

impl FinPerm {
    pub fn identity() -> FinPerm {
        FinPerm::default()
    }

    /// The transposition (i, j). (i, i) is the identity.
    pub fn transposition(i: u64, j: u64) -> FinPerm {
        let mut map = BTreeMap::new();
        if i != j {
            map.insert(i, j);
            map.insert(j, i);
        }
        FinPerm { map }
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.map.get(&x).copied().unwrap_or(x)
    }

    /// Composition p∘q: apply q first, then p.
    pub fn compose(&self, q: &FinPerm) -> FinPerm {
        let mut map = BTreeMap::new();
        let mut domain: Vec<u64> = self.map.keys().chain(q.map.keys()).copied().collect();
        domain.sort_unstable();
        domain.dedup();
        for x in domain {
            let y = self.apply(q.apply(x));
            if y != x {
                map.insert(x, y);
            }
        }
        FinPerm { map }
    }

    pub fn invert(&self) -> FinPerm {
        let map = self.map.iter().map(|(&k, &v)| (v, k)).collect();
        FinPerm { map }
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.map.keys().copied()
    }

    /// Disjoint cycle notation, e.g. "(1 7)(2 9)"; the identity is "()".
    pub fn cycle_notation(&self) -> String {
        use core::fmt::Write;
        let mut seen: Vec<u64> = Vec::new();
        let mut out = String::new();
        for &start in self.map.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            loop {
                cycle.push(x);
                seen.push(x);
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            if cycle.len() > 1 {
                out.push('(');
                for (i, v) in cycle.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    let _ = write!(out, "{v}");
                }
                out.push(')');
            }
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Pick the most frequent color of `f` (smallest color index on ties) and
/// the `count` smallest indices ≥ 1 carrying it, strictly increasing.
///
/// Requires the pigeonhole bound: the window must hold at least
/// `count · palette-size` points.
pub fn find_monochromatic(f: &[u8], count: usize) -> Result<(u8, Vec<u64>), DemoError> {
    let palette: usize = f.iter().copied().max().map(|m| m as usize + 1).unwrap_or(0);
    let needed = count * palette.max(1);
    if f.len() < needed {
        return Err(DemoError::WindowTooSmall {
            needed,
            got: f.len(),
        });
    }
    let mut freq: BTreeMap<u8, usize> = BTreeMap::new();
    for &c in &f[1..] {
        *freq.entry(c).or_insert(0) += 1;
    }
    // most frequent, ties to the smallest color
    let (&color, _) = freq
        .iter()
        .max_by_key(|(c, n)| (**n, core::cmp::Reverse(**c)))
        .expect("window is nonempty");
    let indices: Vec<u64> = (1..f.len() as u64)
        .filter(|&i| f[i as usize] == color)
        .take(count)
        .collect();
    if indices.len() < count {
        return Err(DemoError::WindowTooSmall {
            needed,
            got: f.len(),
        });
    }
    Ok((color, indices))
}

/// h_n = (1,a₁)(2,a₂)…(n,aₙ), transpositions applied right to left.
/// Verifies h_n(k) = a_k for every k ≤ n and fails loudly otherwise.
pub fn build_hn(seq: &[u64], n: usize) -> Result<FinPerm, DemoError> {
    if seq.len() < n {
        return Err(DemoError::SequenceTooShort {
            needed: n,
            got: seq.len(),
        });
    }
    let mut h = FinPerm::identity();
    for (k, &a) in seq.iter().enumerate().take(n) {
        h = h.compose(&FinPerm::transposition(k as u64 + 1, a));
    }
    for (k, &a) in seq.iter().enumerate().take(n) {
        if h.apply(k as u64 + 1) != a {
            return Err(DemoError::Collision { k: k as u64 + 1 });
        }
    }
    Ok(h)
}

/// Pattern of the pulled-back coloring (h⁻¹∗f)(k) = f(h(k)) on the window
/// [1..=window].
pub fn pullback_pattern(f: &[u8], h: &FinPerm, window: u64) -> Result<Vec<u8>, DemoError> {
    let mut out = Vec::with_capacity(window as usize);
    for k in 1..=window {
        let target = h.apply(k);
        let Some(&c) = f.get(target as usize) else {
            return Err(DemoError::DomainEscape {
                index: target,
                domain: f.len(),
            });
        };
        out.push(c);
    }
    Ok(out)
}

/// Generators of the ambient group ⟨s, t⟩ with s(n) = n+1, t = (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    S,
    SInv,
    T,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::S => write!(f, "s"),
            Gen::SInv => write!(f, "s^-1"),
            Gen::T => write!(f, "t"),
        }
    }
}

/// Word in {s, t, s⁻¹} realizing the transposition (i, j) for i < j:
/// adjacent swaps (i, i+1) = sⁱ t s⁻ⁱ, composed by the recursion
/// (i, j) = (i+1, j)·(i, i+1)·(i+1, j).
pub fn transposition_word(i: u64, j: u64) -> Vec<Gen> {
    assert!(i < j, "transposition_word requires i < j");
    if j == i + 1 {
        let mut word = Vec::new();
        for _ in 0..i {
            word.push(Gen::S);
        }
        word.push(Gen::T);
        for _ in 0..i {
            word.push(Gen::SInv);
        }
        word
    } else {
        let inner = transposition_word(i + 1, j);
        let mut word = inner.clone();
        word.extend(transposition_word(i, i + 1));
        word.extend(inner);
        word
    }
}

/// Evaluate a generator word at a point, applying the rightmost generator
/// first. The generators act on ℤ; intermediate values may be negative even
/// when the induced permutation preserves ℕ.
pub fn apply_word(word: &[Gen], x: i64) -> i64 {
    let mut v = x;
    for g in word.iter().rev() {
        v = match g {
            Gen::S => v + 1,
            Gen::SInv => v - 1,
            Gen::T => match v {
                0 => 1,
                1 => 0,
                _ => v,
            },
        };
    }
    v
}

pub fn word_text(word: &[Gen]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, g) in word.iter().enumerate() {
        if i > 0 {
            out.push('.');
        }
        let _ = write!(out, "{g}");
    }
    out
}

/// Small deterministic mixer for seeded demo colorings; the whole pipeline
/// must be byte-reproducible from a single seed.
pub fn seeded_coloring(seed: u64, colors: u8, len: usize) -> Vec<u8> {
    let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        out.push((z % colors as u64) as u8);
    }
    out
}
