use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::spec::GroupSpec;
use super::GroupError;

/// Which free-product factor a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One letter of a reduced free-product word: a nonidentity element of the
/// tagged factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub side: Side,
    pub elem: GroupElement,
}

/// Canonical normal form of a group element, variant matching its GroupSpec.
///
/// Two elements are equal iff their normal forms are identical, so derived
/// equality and ordering are the group-theoretic ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Z
    Int(i64),
    /// Prod: pair of factor elements
    Pair(Box<GroupElement>, Box<GroupElement>),
    /// Free: reduced alternating word of nonidentity letters
    Word(Vec<Letter>),
    /// Hnn: t^power · base
    Hnn { power: i64, base: Box<GroupElement> },
}

impl GroupElement {
    pub fn int(n: i64) -> GroupElement {
        GroupElement::Int(n)
    }

    pub fn pair(a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement::Pair(Box::new(a), Box::new(b))
    }

    /// Construct a free-product word. Letters must alternate between factors
    /// and identity letters are rejected rather than silently reduced.
    pub fn word(spec: &GroupSpec, letters: Vec<Letter>) -> Result<GroupElement, GroupError> {
        let (left, right) = match spec {
            GroupSpec::Free(a, b) => (a.as_ref(), b.as_ref()),
            other => {
                return Err(GroupError::ShapeMismatch {
                    expected: "free(..) spec".to_string(),
                    found: other.describe(),
                })
            }
        };
        let mut prev: Option<Side> = None;
        for l in &letters {
            if prev == Some(l.side) {
                return Err(GroupError::NonAlternating);
            }
            let factor = if l.side == Side::Left { left } else { right };
            conforms(factor, &l.elem)?;
            if l.elem == identity(factor) {
                return Err(GroupError::IdentityLetter);
            }
            prev = Some(l.side);
        }
        Ok(GroupElement::Word(letters))
    }

    pub fn hnn(power: i64, base: GroupElement) -> GroupElement {
        GroupElement::Hnn {
            power,
            base: Box::new(base),
        }
    }

    pub fn as_word(&self) -> Option<&[Letter]> {
        match self {
            GroupElement::Word(w) => Some(w),
            _ => None,
        }
    }

    /// Byte-exact serialization of the normal form: length-prefixed,
    /// factor-tagged integer sequences. Stable across runs, used for
    /// deduplication and deterministic tie-breaking.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_bytes(&mut out);
        out
    }

    fn write_bytes(&self, out: &mut Vec<u8>) {
        match self {
            GroupElement::Int(n) => {
                out.push(0);
                out.extend_from_slice(&n.to_be_bytes());
            }
            GroupElement::Pair(a, b) => {
                out.push(1);
                a.write_bytes(out);
                b.write_bytes(out);
            }
            GroupElement::Word(letters) => {
                out.push(2);
                out.extend_from_slice(&(letters.len() as u64).to_be_bytes());
                for l in letters {
                    out.push(match l.side {
                        Side::Left => 0,
                        Side::Right => 1,
                    });
                    l.elem.write_bytes(out);
                }
            }
            GroupElement::Hnn { power, base } => {
                out.push(3);
                out.extend_from_slice(&power.to_be_bytes());
                base.write_bytes(out);
            }
        }
    }
}

/// Check that an element's shape matches a spec.
pub fn conforms(spec: &GroupSpec, g: &GroupElement) -> Result<(), GroupError> {
    let ok = match (spec, g) {
        (GroupSpec::Z, GroupElement::Int(_)) => true,
        (GroupSpec::Prod(a, b), GroupElement::Pair(x, y)) => {
            conforms(a, x)?;
            conforms(b, y)?;
            true
        }
        (GroupSpec::Free(a, b), GroupElement::Word(letters)) => {
            let mut prev: Option<Side> = None;
            for l in letters {
                if prev == Some(l.side) {
                    return Err(GroupError::NonAlternating);
                }
                let factor = if l.side == Side::Left { a } else { b };
                conforms(factor, &l.elem)?;
                if l.elem == identity(factor) {
                    return Err(GroupError::IdentityLetter);
                }
                prev = Some(l.side);
            }
            true
        }
        (GroupSpec::Hnn { base, .. }, GroupElement::Hnn { base: h, .. }) => {
            conforms(base, h)?;
            true
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(GroupError::ShapeMismatch {
            expected: spec.describe(),
            found: format!("{g}"),
        })
    }
}

/// Normal form of the identity element for a spec.
pub fn identity(spec: &GroupSpec) -> GroupElement {
    match spec {
        GroupSpec::Z => GroupElement::Int(0),
        GroupSpec::Prod(a, b) => GroupElement::pair(identity(a), identity(b)),
        GroupSpec::Free(_, _) => GroupElement::Word(Vec::new()),
        GroupSpec::Hnn { base, .. } => GroupElement::hnn(0, identity(base)),
    }
}

/// Product of two elements in canonical normal form.
pub fn multiply(
    spec: &GroupSpec,
    x: &GroupElement,
    y: &GroupElement,
) -> Result<GroupElement, GroupError> {
    conforms(spec, x)?;
    conforms(spec, y)?;
    Ok(multiply_unchecked(spec, x, y))
}

pub(crate) fn multiply_unchecked(
    spec: &GroupSpec,
    x: &GroupElement,
    y: &GroupElement,
) -> GroupElement {
    match (spec, x, y) {
        (GroupSpec::Z, GroupElement::Int(a), GroupElement::Int(b)) => GroupElement::Int(a + b),
        (GroupSpec::Prod(sa, sb), GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => {
            GroupElement::pair(
                multiply_unchecked(sa, a1, a2),
                multiply_unchecked(sb, b1, b2),
            )
        }
        (GroupSpec::Free(sa, sb), GroupElement::Word(u), GroupElement::Word(v)) => {
            let mut acc: Vec<Letter> = u.clone();
            for l in v {
                push_reduced(sa, sb, &mut acc, l.clone());
            }
            GroupElement::Word(acc)
        }
        (
            GroupSpec::Hnn { base, auto },
            GroupElement::Hnn { power: i, base: h },
            GroupElement::Hnn { power: j, base: k },
        ) => {
            // (t^i h)(t^j k) = t^{i+j} θ^j(h) k, from t^{-1} x t = θ(x)
            let (GroupElement::Int(h), GroupElement::Int(k)) = (h.as_ref(), k.as_ref()) else {
                unreachable!("hnn base is Z");
            };
            let _ = base;
            GroupElement::hnn(i + j, GroupElement::Int(auto.pow(*j, *h) + k))
        }
        _ => unreachable!("conformance checked by caller"),
    }
}

/// Append one letter to a reduced word, cancelling or merging at the junction.
fn push_reduced(left: &GroupSpec, right: &GroupSpec, acc: &mut Vec<Letter>, l: Letter) {
    match acc.last() {
        Some(top) if top.side == l.side => {
            let factor = if l.side == Side::Left { left } else { right };
            let merged = multiply_unchecked(factor, &top.elem, &l.elem);
            acc.pop();
            if merged != identity(factor) {
                acc.push(Letter {
                    side: l.side,
                    elem: merged,
                });
            }
            // full cancellation exposes a letter of the other side, which
            // cannot merge with the next incoming letter of this word since
            // the incoming word is itself alternating
        }
        _ => acc.push(l),
    }
}

/// Inverse in canonical normal form: multiply(x, inverse(x)) = identity.
pub fn inverse(spec: &GroupSpec, x: &GroupElement) -> Result<GroupElement, GroupError> {
    conforms(spec, x)?;
    Ok(inverse_unchecked(spec, x))
}

pub(crate) fn inverse_unchecked(spec: &GroupSpec, x: &GroupElement) -> GroupElement {
    match (spec, x) {
        (GroupSpec::Z, GroupElement::Int(n)) => GroupElement::Int(-n),
        (GroupSpec::Prod(sa, sb), GroupElement::Pair(a, b)) => {
            GroupElement::pair(inverse_unchecked(sa, a), inverse_unchecked(sb, b))
        }
        (GroupSpec::Free(sa, sb), GroupElement::Word(letters)) => {
            let inv: Vec<Letter> = letters
                .iter()
                .rev()
                .map(|l| {
                    let factor = if l.side == Side::Left { sa } else { sb };
                    Letter {
                        side: l.side,
                        elem: inverse_unchecked(factor, &l.elem),
                    }
                })
                .collect();
            GroupElement::Word(inv)
        }
        (GroupSpec::Hnn { auto, .. }, GroupElement::Hnn { power: i, base }) => {
            // (t^i h)^{-1} = t^{-i} θ^{-i}(h^{-1})
            let GroupElement::Int(h) = base.as_ref() else {
                unreachable!("hnn base is Z");
            };
            GroupElement::hnn(-i, GroupElement::Int(auto.pow(-i, -h)))
        }
        _ => unreachable!("conformance checked by caller"),
    }
}

/// Symmetric generating set fixing the word metric for a spec.
pub fn generators(spec: &GroupSpec) -> Vec<GroupElement> {
    match spec {
        GroupSpec::Z => vec![GroupElement::Int(1), GroupElement::Int(-1)],
        GroupSpec::Prod(a, b) => {
            let mut gens = Vec::new();
            for g in generators(a) {
                gens.push(GroupElement::pair(g, identity(b)));
            }
            for g in generators(b) {
                gens.push(GroupElement::pair(identity(a), g));
            }
            gens
        }
        GroupSpec::Free(a, b) => {
            let mut gens = Vec::new();
            for g in generators(a) {
                gens.push(GroupElement::Word(vec![Letter {
                    side: Side::Left,
                    elem: g,
                }]));
            }
            for g in generators(b) {
                gens.push(GroupElement::Word(vec![Letter {
                    side: Side::Right,
                    elem: g,
                }]));
            }
            gens
        }
        GroupSpec::Hnn { base, .. } => {
            let mut gens = Vec::new();
            for g in generators(base) {
                gens.push(GroupElement::hnn(0, g));
            }
            gens.push(GroupElement::hnn(1, identity(base)));
            gens.push(GroupElement::hnn(-1, identity(base)));
            gens
        }
    }
}

/// Retraction onto the left factor: product of the Left letters in order.
pub fn pi_retract(spec: &GroupSpec, w: &GroupElement) -> Result<GroupElement, GroupError> {
    retract(spec, w, Side::Left)
}

/// Retraction onto the right factor: product of the Right letters in order.
pub fn theta_retract(spec: &GroupSpec, w: &GroupElement) -> Result<GroupElement, GroupError> {
    retract(spec, w, Side::Right)
}

fn retract(spec: &GroupSpec, w: &GroupElement, side: Side) -> Result<GroupElement, GroupError> {
    conforms(spec, w)?;
    let (GroupSpec::Free(sa, sb), GroupElement::Word(letters)) = (spec, w) else {
        return Err(GroupError::ShapeMismatch {
            expected: "free(..) spec".to_string(),
            found: spec.describe(),
        });
    };
    let factor = if side == Side::Left { sa } else { sb };
    let mut acc = identity(factor);
    for l in letters.iter().filter(|l| l.side == side) {
        acc = multiply_unchecked(factor, &acc, &l.elem);
    }
    Ok(acc)
}

/// Unique decomposition g = t^i · h of an Hnn element; i is the coset index
/// of g in G/H ≅ Z.
pub fn hnn_decompose(g: &GroupElement) -> Result<(i64, GroupElement), GroupError> {
    match g {
        GroupElement::Hnn { power, base } => Ok((*power, base.as_ref().clone())),
        other => Err(GroupError::ShapeMismatch {
            expected: "hnn element t^i.h".to_string(),
            found: format!("{other}"),
        }),
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Int(n) => write!(f, "{n}"),
            GroupElement::Pair(a, b) => write!(f, "({a},{b})"),
            GroupElement::Word(letters) => {
                if letters.is_empty() {
                    return write!(f, "e");
                }
                for (i, l) in letters.iter().enumerate() {
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    let tag = match l.side {
                        Side::Left => "L",
                        Side::Right => "R",
                    };
                    match &l.elem {
                        GroupElement::Int(n) => write!(f, "{tag}{n}")?,
                        GroupElement::Pair(_, _) => write!(f, "{tag}{}", l.elem)?,
                        other => write!(f, "{tag}({other})")?,
                    }
                }
                Ok(())
            }
            GroupElement::Hnn { power, base } => write!(f, "t^{power}.h{base}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Auto;

    fn free_zz() -> GroupSpec {
        GroupSpec::free(GroupSpec::Z, GroupSpec::Z)
    }

    fn hnn_inv() -> GroupSpec {
        GroupSpec::hnn(GroupSpec::Z, Auto::Inversion).unwrap()
    }

    fn letters(spec: &GroupSpec, ls: &[(Side, i64)]) -> GroupElement {
        GroupElement::word(
            spec,
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
    fn identities() {
        assert_eq!(identity(&GroupSpec::Z), GroupElement::Int(0));
        assert_eq!(identity(&free_zz()), GroupElement::Word(vec![]));
        assert_eq!(
            identity(&hnn_inv()),
            GroupElement::hnn(0, GroupElement::Int(0))
        );
    }

    #[test]
    fn free_cancellation() {
        let spec = free_zz();
        let a = letters(&spec, &[(Side::Left, 2)]);
        let b = letters(&spec, &[(Side::Left, -2)]);
        assert_eq!(multiply(&spec, &a, &b).unwrap(), identity(&spec));
    }

    #[test]
    fn free_junction_cancel_then_merge() {
        let spec = free_zz();
        let a = letters(&spec, &[(Side::Left, 1), (Side::Right, 1)]);
        let b = letters(&spec, &[(Side::Right, -1), (Side::Left, 3)]);
        let expect = letters(&spec, &[(Side::Left, 4)]);
        assert_eq!(multiply(&spec, &a, &b).unwrap(), expect);
    }

    #[test]
    fn hnn_multiply_applies_automorphism() {
        let spec = hnn_inv();
        let a = GroupElement::hnn(1, GroupElement::Int(2));
        let b = GroupElement::hnn(1, GroupElement::Int(3));
        // (t·a^2)(t·a^3) = t^2 θ(a^2) a^3 = t^2 a
        assert_eq!(
            multiply(&spec, &a, &b).unwrap(),
            GroupElement::hnn(2, GroupElement::Int(1))
        );
    }

    #[test]
    fn hnn_mixed_powers_cancel() {
        let spec = hnn_inv();
        let a = GroupElement::hnn(1, GroupElement::Int(0));
        let b = GroupElement::hnn(-1, GroupElement::Int(5));
        // t · t^{-1} a^5 = a^5
        assert_eq!(
            multiply(&spec, &a, &b).unwrap(),
            GroupElement::hnn(0, GroupElement::Int(5))
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(
            inverse(&GroupSpec::Z, &GroupElement::Int(5)).unwrap(),
            GroupElement::Int(-5)
        );
        let spec = free_zz();
        let w = letters(&spec, &[(Side::Left, 1), (Side::Right, 2)]);
        let winv = letters(&spec, &[(Side::Right, -2), (Side::Left, -1)]);
        assert_eq!(inverse(&spec, &w).unwrap(), winv);

        let hspec = hnn_inv();
        let g = GroupElement::hnn(1, GroupElement::Int(2));
        assert_eq!(
            inverse(&hspec, &g).unwrap(),
            GroupElement::hnn(-1, GroupElement::Int(2))
        );
        assert_eq!(
            multiply(&hspec, &g, &inverse(&hspec, &g).unwrap()).unwrap(),
            identity(&hspec)
        );
    }

    #[test]
    fn generator_sets() {
        assert_eq!(generators(&GroupSpec::Z).len(), 2);
        assert_eq!(generators(&free_zz()).len(), 4);
        let hid = GroupSpec::hnn(GroupSpec::Z, Auto::Identity).unwrap();
        assert_eq!(generators(&hid).len(), 4);
    }

    #[test]
    fn retractions() {
        let spec = free_zz();
        let w = letters(&spec, &[(Side::Left, 1), (Side::Right, 2), (Side::Left, 3)]);
        assert_eq!(pi_retract(&spec, &w).unwrap(), GroupElement::Int(4));
        assert_eq!(theta_retract(&spec, &w).unwrap(), GroupElement::Int(2));
        assert_eq!(
            pi_retract(&spec, &identity(&spec)).unwrap(),
            GroupElement::Int(0)
        );
        let r = letters(&spec, &[(Side::Right, 5)]);
        assert_eq!(pi_retract(&spec, &r).unwrap(), GroupElement::Int(0));
        assert_eq!(theta_retract(&spec, &r).unwrap(), GroupElement::Int(5));
    }

    #[test]
    fn hnn_decompose_roundtrip() {
        let spec = hnn_inv();
        assert_eq!(
            hnn_decompose(&identity(&spec)).unwrap(),
            (0, GroupElement::Int(0))
        );
        let g = GroupElement::hnn(3, GroupElement::Int(-2));
        assert_eq!(hnn_decompose(&g).unwrap(), (3, GroupElement::Int(-2)));
    }

    #[test]
    fn rejects_identity_letters_and_nonalternating() {
        let spec = free_zz();
        let bad = GroupElement::word(
            &spec,
            vec![Letter {
                side: Side::Left,
                elem: GroupElement::Int(0),
            }],
        );
        assert_eq!(bad.unwrap_err(), GroupError::IdentityLetter);
        let bad2 = GroupElement::word(
            &spec,
            vec![
                Letter {
                    side: Side::Left,
                    elem: GroupElement::Int(1),
                },
                Letter {
                    side: Side::Left,
                    elem: GroupElement::Int(2),
                },
            ],
        );
        assert_eq!(bad2.unwrap_err(), GroupError::NonAlternating);
    }

    #[test]
    fn shape_mismatch_reported() {
        let err = multiply(&GroupSpec::Z, &GroupElement::Int(1), &GroupElement::Word(vec![]));
        assert!(matches!(err, Err(GroupError::ShapeMismatch { .. })));
    }

    #[test]
    fn display_syntax() {
        let spec = free_zz();
        let w = letters(&spec, &[(Side::Left, 1), (Side::Right, 2), (Side::Left, -1)]);
        assert_eq!(format!("{w}"), "L1.R2.L-1");
        assert_eq!(format!("{}", identity(&spec)), "e");
        assert_eq!(
            format!("{}", GroupElement::pair(GroupElement::Int(3), GroupElement::Int(-2))),
            "(3,-2)"
        );
        assert_eq!(
            format!("{}", GroupElement::hnn(2, GroupElement::Int(3))),
            "t^2.h3"
        );
    }
}
