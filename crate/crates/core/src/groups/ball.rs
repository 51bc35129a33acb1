use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::element::{conforms, generators, identity, inverse_unchecked, multiply_unchecked};
use super::spec::GroupSpec;
use super::{GroupElement, GroupError};

/// Hard cap on ball enumeration; overflow is an explicit error, never a
/// silent truncation.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

/// Word-metric ball around the identity, with the norm of every member.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: u32,
    norms: BTreeMap<GroupElement, u32>,
    /// members sorted by (norm, canonical serialization)
    ordered: Vec<GroupElement>,
}

impl Ball {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.ordered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.norms.contains_key(g)
    }

    pub fn norm(&self, g: &GroupElement) -> Option<u32> {
        self.norms.get(g).copied()
    }

    /// Members in the deterministic scan order: ascending (norm, bytes).
    pub fn elements(&self) -> &[GroupElement] {
        &self.ordered
    }

    pub fn sphere(&self, k: u32) -> impl Iterator<Item = &GroupElement> {
        self.ordered
            .iter()
            .filter(move |g| self.norms[*g] == k)
    }
}

/// Enumerate the ball of radius `r` around the identity by breadth-first
/// search with normal-form deduplication.
pub fn ball(spec: &GroupSpec, r: u32, max_elements: usize) -> Result<Ball, GroupError> {
    spec.validate()?;
    let gens = generators(spec);
    let mut norms: BTreeMap<GroupElement, u32> = BTreeMap::new();
    let mut queue: VecDeque<GroupElement> = VecDeque::new();
    let e = identity(spec);
    norms.insert(e.clone(), 0);
    queue.push_back(e);
    while let Some(g) = queue.pop_front() {
        let d = norms[&g];
        if d == r {
            continue;
        }
        for s in &gens {
            let next = multiply_unchecked(spec, &g, s);
            if !norms.contains_key(&next) {
                if norms.len() >= max_elements {
                    return Err(GroupError::Overflow { max_elements });
                }
                norms.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    let mut ordered: Vec<GroupElement> = norms.keys().cloned().collect();
    ordered.sort_by(|a, b| {
        (norms[a], a.canonical_bytes()).cmp(&(norms[b], b.canonical_bytes()))
    });
    Ok(Ball {
        radius: r,
        norms,
        ordered,
    })
}

/// Word norm ‖g‖ = d(g, e), by BFS until `g` is found.
pub fn word_norm(spec: &GroupSpec, g: &GroupElement, max_elements: usize) -> Result<u32, GroupError> {
    conforms(spec, g)?;
    let gens = generators(spec);
    let mut seen: BTreeMap<GroupElement, u32> = BTreeMap::new();
    let mut queue: VecDeque<GroupElement> = VecDeque::new();
    let e = identity(spec);
    if *g == e {
        return Ok(0);
    }
    seen.insert(e.clone(), 0);
    queue.push_back(e);
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        for s in &gens {
            let next = multiply_unchecked(spec, &x, s);
            if !seen.contains_key(&next) {
                if next == *g {
                    return Ok(d + 1);
                }
                if seen.len() >= max_elements {
                    return Err(GroupError::Overflow { max_elements });
                }
                seen.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("BFS on an infinite group either finds g or hits the cap")
}

/// Displacement d_g(h) = d(gh, h) = ‖h⁻¹gh‖ by left-invariance.
pub fn displacement(
    spec: &GroupSpec,
    g: &GroupElement,
    h: &GroupElement,
    max_elements: usize,
) -> Result<u32, GroupError> {
    conforms(spec, g)?;
    conforms(spec, h)?;
    let h_inv = inverse_unchecked(spec, h);
    let conj = multiply_unchecked(spec, &multiply_unchecked(spec, &h_inv, g), h);
    word_norm(spec, &conj, max_elements)
}
