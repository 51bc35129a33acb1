use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use core::fmt;

use super::GroupError;

/// Automorphism of the Z base of an HNN node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Auto {
    Identity,
    Inversion,
}

impl Auto {
    /// Apply the j-th power of the automorphism to a base-Z element.
    pub fn pow(self, j: i64, h: i64) -> i64 {
        match self {
            Auto::Identity => h,
            Auto::Inversion => {
                if j.rem_euclid(2) == 0 {
                    h
                } else {
                    -h
                }
            }
        }
    }
}

/// Constructor expression tree for a finitely generated group.
///
/// Structural equality of specs is the identity of the group's type: two
/// elements are only comparable when their specs are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupSpec {
    Z,
    Prod(Box<GroupSpec>, Box<GroupSpec>),
    Free(Box<GroupSpec>, Box<GroupSpec>),
    Hnn { base: Box<GroupSpec>, auto: Auto },
}

impl GroupSpec {
    pub fn prod(left: GroupSpec, right: GroupSpec) -> GroupSpec {
        GroupSpec::Prod(Box::new(left), Box::new(right))
    }

    pub fn free(left: GroupSpec, right: GroupSpec) -> GroupSpec {
        GroupSpec::Free(Box::new(left), Box::new(right))
    }

    /// HNN node; the base is restricted to Z in this artifact.
    pub fn hnn(base: GroupSpec, auto: Auto) -> Result<GroupSpec, GroupError> {
        if base != GroupSpec::Z {
            return Err(GroupError::UnsupportedHnnBase);
        }
        Ok(GroupSpec::Hnn {
            base: Box::new(base),
            auto,
        })
    }

    /// Check the Hnn-over-Z restriction recursively.
    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            GroupSpec::Z => Ok(()),
            GroupSpec::Prod(a, b) | GroupSpec::Free(a, b) => {
                a.validate()?;
                b.validate()
            }
            GroupSpec::Hnn { base, .. } => {
                if **base == GroupSpec::Z {
                    Ok(())
                } else {
                    Err(GroupError::UnsupportedHnnBase)
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Z => write!(f, "Z"),
            GroupSpec::Prod(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::Free(a, b) => write!(f, "free({a},{b})"),
            GroupSpec::Hnn { base, auto } => {
                let name = match auto {
                    Auto::Identity => "id",
                    Auto::Inversion => "inv",
                };
                write!(f, "hnn({base},{name})")
            }
        }
    }
}
