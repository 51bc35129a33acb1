//! Bass–Serre tree geometry for a free product A⋆B, in its barycentric
//! subdivision: vertices are cosets wA, wB and the barycenters of the edges
//! [wA, wB], which are in bijection with the group. The tree is rooted at
//! the barycenter of [A, B].

use alloc::vec::Vec;

use super::element::{multiply_unchecked, Side};
use super::spec::GroupSpec;
use super::{GroupElement, GroupError};

/// Vertex of the barycentric subdivision, with coset representatives
/// canonicalized to the unique shortest representative: a CosetA rep never
/// ends in a Left letter, a CosetB rep never ends in a Right letter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeVertex {
    Barycenter(GroupElement),
    CosetA(GroupElement),
    CosetB(GroupElement),
}

impl TreeVertex {
    pub fn root() -> TreeVertex {
        TreeVertex::Barycenter(GroupElement::Word(Vec::new()))
    }

    /// Barycenter of the edge [wA, wB]; `w` must be a reduced word.
    pub fn barycenter(w: GroupElement) -> TreeVertex {
        TreeVertex::Barycenter(w)
    }

    /// Vertex wA, canonicalized: wA = w′A when w = w′·a with a in the left
    /// factor, so a trailing Left letter is stripped.
    pub fn coset_a(w: GroupElement) -> TreeVertex {
        TreeVertex::CosetA(strip_trailing(w, Side::Left))
    }

    /// Vertex wB, canonicalized by stripping a trailing Right letter.
    pub fn coset_b(w: GroupElement) -> TreeVertex {
        TreeVertex::CosetB(strip_trailing(w, Side::Right))
    }

    pub fn word(&self) -> &GroupElement {
        match self {
            TreeVertex::Barycenter(w) | TreeVertex::CosetA(w) | TreeVertex::CosetB(w) => w,
        }
    }

    /// Barycenters form the free transitive G-orbit X.
    pub fn in_orbit_x(&self) -> bool {
        matches!(self, TreeVertex::Barycenter(_))
    }
}

fn strip_trailing(w: GroupElement, side: Side) -> GroupElement {
    let GroupElement::Word(mut letters) = w else {
        unreachable!("tree vertices carry free-product words");
    };
    if letters.last().map(|l| l.side) == Some(side) {
        letters.pop();
    }
    GroupElement::Word(letters)
}

fn letter_count(w: &GroupElement) -> u32 {
    match w {
        GroupElement::Word(letters) => letters.len() as u32,
        _ => unreachable!("tree vertices carry free-product words"),
    }
}

/// Distance to the root: 2|w| for barycenters, 2|w|+1 for canonical coset
/// vertices.
pub fn tree_norm(v: &TreeVertex) -> u32 {
    match v {
        TreeVertex::Barycenter(w) => 2 * letter_count(w),
        TreeVertex::CosetA(w) | TreeVertex::CosetB(w) => 2 * letter_count(w) + 1,
    }
}

/// Unique neighbor of `v` with tree norm one less. The root is excluded.
pub fn pred(v: &TreeVertex) -> Result<TreeVertex, GroupError> {
    match v {
        TreeVertex::Barycenter(w) => {
            let GroupElement::Word(letters) = w else {
                unreachable!("tree vertices carry free-product words");
            };
            match letters.last() {
                None => Err(GroupError::RootHasNoPredecessor),
                Some(last) => {
                    // the barycenter of [wA, wB] hangs off the coset vertex
                    // that absorbs the final letter
                    if last.side == Side::Left {
                        Ok(TreeVertex::coset_a(w.clone()))
                    } else {
                        Ok(TreeVertex::coset_b(w.clone()))
                    }
                }
            }
        }
        // canonical coset reps are their own shortest defining word
        TreeVertex::CosetA(w) | TreeVertex::CosetB(w) => {
            Ok(TreeVertex::Barycenter(w.clone()))
        }
    }
}

/// Left action of the group on the tree: an isometry permuting each vertex
/// type.
pub fn act_on_tree(spec: &GroupSpec, g: &GroupElement, v: &TreeVertex) -> TreeVertex {
    match v {
        TreeVertex::Barycenter(w) => TreeVertex::Barycenter(multiply_unchecked(spec, g, w)),
        TreeVertex::CosetA(w) => TreeVertex::coset_a(multiply_unchecked(spec, g, w)),
        TreeVertex::CosetB(w) => TreeVertex::coset_b(multiply_unchecked(spec, g, w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Letter;

    fn spec() -> GroupSpec {
        GroupSpec::free(GroupSpec::Z, GroupSpec::Z)
    }

    fn w(ls: &[(Side, i64)]) -> GroupElement {
        GroupElement::word(
            &spec(),
            ls.iter()
                .map(|&(side, n)| Letter {
                    side,
                    elem: GroupElement::Int(n),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn norms() {
        assert_eq!(tree_norm(&TreeVertex::root()), 0);
        assert_eq!(tree_norm(&TreeVertex::coset_a(w(&[]))), 1);
        assert_eq!(
            tree_norm(&TreeVertex::barycenter(w(&[(Side::Left, 1), (Side::Right, 1)]))),
            4
        );
        // canonicalization: L1 ends in a Left letter, so coset_a strips it
        assert_eq!(
            tree_norm(&TreeVertex::coset_a(w(&[(Side::Left, 1)]))),
            1
        );
        assert_eq!(
            tree_norm(&TreeVertex::coset_b(w(&[(Side::Left, 1)]))),
            3
        );
    }

    #[test]
    fn coset_rep_uniqueness() {
        assert_eq!(
            TreeVertex::coset_a(w(&[(Side::Left, 7)])),
            TreeVertex::coset_a(w(&[]))
        );
        assert_ne!(
            TreeVertex::coset_a(w(&[(Side::Right, 1)])),
            TreeVertex::coset_a(w(&[]))
        );
    }

    #[test]
    fn preds() {
        assert_eq!(
            pred(&TreeVertex::root()).unwrap_err(),
            GroupError::RootHasNoPredecessor
        );
        assert_eq!(
            pred(&TreeVertex::barycenter(w(&[(Side::Left, 1)]))).unwrap(),
            TreeVertex::coset_a(w(&[]))
        );
        assert_eq!(
            pred(&TreeVertex::coset_b(w(&[(Side::Left, 1)]))).unwrap(),
            TreeVertex::barycenter(w(&[(Side::Left, 1)]))
        );
        assert_eq!(pred(&TreeVertex::coset_a(w(&[]))).unwrap(), TreeVertex::root());
    }

    #[test]
    fn pred_lowers_norm_by_one() {
        let s = spec();
        let b = crate::groups::ball(&s, 4, crate::groups::DEFAULT_MAX_ELEMENTS).unwrap();
        for g in b.elements() {
            let v = TreeVertex::barycenter(g.clone());
            if v != TreeVertex::root() {
                assert_eq!(tree_norm(&pred(&v).unwrap()), tree_norm(&v) - 1);
            }
            for c in [TreeVertex::coset_a(g.clone()), TreeVertex::coset_b(g.clone())] {
                assert_eq!(tree_norm(&pred(&c).unwrap()), tree_norm(&c) - 1);
            }
        }
    }

    #[test]
    fn action_basics() {
        let s = spec();
        let g = w(&[(Side::Left, 1)]);
        assert_eq!(
            act_on_tree(&s, &g, &TreeVertex::root()),
            TreeVertex::barycenter(w(&[(Side::Left, 1)]))
        );
        let e = GroupElement::Word(alloc::vec![]);
        let v = TreeVertex::coset_b(w(&[(Side::Left, 2)]));
        assert_eq!(act_on_tree(&s, &e, &v), v);
    }
}
