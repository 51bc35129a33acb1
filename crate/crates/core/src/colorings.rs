//! Compile a group constructor expression into an aperiodic coloring by
//! structural recursion: Thue–Morse on ℤ, composite colorings for products
//! and HNN extensions, and the 4-tuple tree coloring with predecessor data
//! for free products.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::groups::{
    ball, hnn_decompose, identity, inverse, multiply, pi_retract, pred, theta_retract, tree_norm,
    Auto, GroupElement, GroupError, GroupSpec, TreeVertex,
};
use crate::sequences::{squarefree_ternary, thue_morse};

/// A color: a finite atom or a tuple of colors. Total order and equality are
/// derived, so palettes are plain ordered sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Bit(u8),
    Trit(u8),
    /// filler for the A-component on non-barycenter tree vertices
    Alpha,
    /// filler for the B-component on non-barycenter tree vertices
    Beta,
    /// second component of the free-product coloring at the identity, where
    /// no predecessor exists
    RootSentinel,
    Tuple(Vec<Color>),
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Bit(b) => write!(f, "{b}"),
            Color::Trit(t) => write!(f, "{t}"),
            Color::Alpha => write!(f, "alpha"),
            Color::Beta => write!(f, "beta"),
            Color::RootSentinel => write!(f, "root"),
            Color::Tuple(items) => {
                write!(f, "(")?;
                for (i, c) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Errors from coloring compilation and composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringError {
    Group(GroupError),
    /// A spec node the compiler does not support, with its tree location.
    UnsupportedNode { location: String },
    /// The decomposition oracle returned (a, h) with a·h ≠ g.
    DecompInconsistent { element: String },
    /// Factor colorings passed to a combinator do not match the expected
    /// factor specs.
    FactorMismatch,
}

impl From<GroupError> for ColoringError {
    fn from(e: GroupError) -> Self {
        ColoringError::Group(e)
    }
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::Group(e) => write!(f, "{e}"),
            ColoringError::UnsupportedNode { location } => {
                write!(f, "unsupported spec node at {location}")
            }
            ColoringError::DecompInconsistent { element } => {
                write!(f, "decomposition oracle inconsistent at {element}")
            }
            ColoringError::FactorMismatch => write!(f, "factor coloring spec mismatch"),
        }
    }
}

impl core::error::Error for ColoringError {}

/// Finite-palette evaluator attached to a group spec.
pub trait GroupColoring {
    fn spec(&self) -> &GroupSpec;
    fn eval(&self, g: &GroupElement) -> Color;
    fn palette(&self) -> &BTreeSet<Color>;
}

/// Derivation tree of a compiled coloring; mirrors the spec tree and is the
/// coloring's provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// n ↦ thue_morse(|n|)
    ThueMorseZ,
    /// (g,h) ↦ (right(h), left(g))
    Product(Box<Rule>, Box<Rule>),
    /// t^i·h ↦ (thue_morse(|i|), base(h))
    HnnMorse(Box<Rule>),
    /// w ↦ (tree color at barycenter(w), tree color at its predecessor)
    FreeTree(Box<Rule>, Box<Rule>),
}

/// Structurally compiled coloring in canonical normal form.
#[derive(Debug, Clone)]
pub struct Coloring {
    spec: GroupSpec,
    rule: Rule,
    palette: BTreeSet<Color>,
}

impl Coloring {
    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    /// Text rendering of the compile derivation.
    pub fn provenance(&self) -> String {
        fn render(rule: &Rule, out: &mut String, indent: usize) {
            for _ in 0..indent {
                out.push_str("  ");
            }
            match rule {
                Rule::ThueMorseZ => out.push_str("thue-morse on Z (n -> m(|n|))\n"),
                Rule::Product(l, r) => {
                    out.push_str("product coloring ((g,h) -> (right(h), left(g)))\n");
                    render(l, out, indent + 1);
                    render(r, out, indent + 1);
                }
                Rule::HnnMorse(b) => {
                    out.push_str("hnn coloring (t^i.h -> (m(|i|), base(h)))\n");
                    render(b, out, indent + 1);
                }
                Rule::FreeTree(l, r) => {
                    out.push_str(
                        "free-product tree coloring (w -> (f(bary w), f(pred)));\n",
                    );
                    for _ in 0..indent {
                        out.push_str("  ");
                    }
                    out.push_str(
                        "  note: the predecessor component always lands on a coset vertex, \
                         so its factor entries are constantly (alpha,beta)\n",
                    );
                    render(l, out, indent + 1);
                    render(r, out, indent + 1);
                }
            }
        }
        let mut out = format!("coloring for {}\n", self.spec);
        render(&self.rule, &mut out, 0);
        out
    }
}

impl GroupColoring for Coloring {
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    fn eval(&self, g: &GroupElement) -> Color {
        eval_rule(&self.spec, &self.rule, g)
    }

    fn palette(&self) -> &BTreeSet<Color> {
        &self.palette
    }
}

fn eval_rule(spec: &GroupSpec, rule: &Rule, g: &GroupElement) -> Color {
    match (spec, rule, g) {
        (GroupSpec::Z, Rule::ThueMorseZ, GroupElement::Int(n)) => {
            Color::Bit(thue_morse(n.unsigned_abs()))
        }
        (GroupSpec::Prod(sa, sb), Rule::Product(ra, rb), GroupElement::Pair(x, y)) => {
            Color::Tuple(vec![eval_rule(sb, rb, y), eval_rule(sa, ra, x)])
        }
        (GroupSpec::Hnn { base, .. }, Rule::HnnMorse(rb), g) => {
            let (i, h) = hnn_decompose(g).expect("hnn element");
            Color::Tuple(vec![
                Color::Bit(thue_morse(i.unsigned_abs())),
                eval_rule(base, rb, &h),
            ])
        }
        (GroupSpec::Free(_, _), Rule::FreeTree(_, _), GroupElement::Word(letters)) => {
            let bary = TreeVertex::barycenter(g.clone());
            let first = eval_tree(spec, rule, &bary);
            let second = if letters.is_empty() {
                Color::RootSentinel
            } else {
                eval_tree(spec, rule, &pred(&bary).expect("non-root barycenter"))
            };
            Color::Tuple(vec![first, second])
        }
        _ => unreachable!("element conforms to compiled spec"),
    }
}

fn eval_tree(spec: &GroupSpec, rule: &Rule, v: &TreeVertex) -> Color {
    let (GroupSpec::Free(sa, sb), Rule::FreeTree(ra, rb)) = (spec, rule) else {
        unreachable!("tree colors exist only for free-product rules");
    };
    let norm = tree_norm(v);
    let nu = Color::Trit(squarefree_ternary(norm as u64));
    let residue = Color::Trit((norm % 3) as u8);
    let (fa, fb) = if v.in_orbit_x() {
        let w = v.word();
        let pa = pi_retract(spec, w).expect("barycenter word");
        let pb = theta_retract(spec, w).expect("barycenter word");
        (eval_rule(sa, ra, &pa), eval_rule(sb, rb, &pb))
    } else {
        (Color::Alpha, Color::Beta)
    };
    Color::Tuple(vec![nu, residue, fa, fb])
}

fn static_palette(spec: &GroupSpec, rule: &Rule) -> BTreeSet<Color> {
    match (spec, rule) {
        (GroupSpec::Z, Rule::ThueMorseZ) => {
            [Color::Bit(0), Color::Bit(1)].into_iter().collect()
        }
        (GroupSpec::Prod(sa, sb), Rule::Product(ra, rb)) => {
            let left = static_palette(sa, ra);
            let right = static_palette(sb, rb);
            let mut out = BTreeSet::new();
            for b in &right {
                for a in &left {
                    out.insert(Color::Tuple(vec![b.clone(), a.clone()]));
                }
            }
            out
        }
        (GroupSpec::Hnn { base, .. }, Rule::HnnMorse(rb)) => {
            let inner = static_palette(base, rb);
            let mut out = BTreeSet::new();
            for bit in [0u8, 1] {
                for c in &inner {
                    out.insert(Color::Tuple(vec![Color::Bit(bit), c.clone()]));
                }
            }
            out
        }
        (GroupSpec::Free(sa, sb), Rule::FreeTree(ra, rb)) => {
            let pa = static_palette(sa, ra);
            let pb = static_palette(sb, rb);
            // group elements evaluate at barycenters, so the first component
            // carries factor colors; the predecessor is always a coset
            // vertex, so the second carries the sentinels
            let mut firsts = Vec::new();
            for nu in 0..3u8 {
                for k in 0..3u8 {
                    for a in &pa {
                        for b in &pb {
                            firsts.push(Color::Tuple(vec![
                                Color::Trit(nu),
                                Color::Trit(k),
                                a.clone(),
                                b.clone(),
                            ]));
                        }
                    }
                }
            }
            let mut seconds = vec![Color::RootSentinel];
            for nu in 0..3u8 {
                for k in 0..3u8 {
                    seconds.push(Color::Tuple(vec![
                        Color::Trit(nu),
                        Color::Trit(k),
                        Color::Alpha,
                        Color::Beta,
                    ]));
                }
            }
            let mut out = BTreeSet::new();
            for f in &firsts {
                for s in &seconds {
                    out.insert(Color::Tuple(vec![f.clone(), s.clone()]));
                }
            }
            out
        }
        _ => unreachable!("rule mirrors spec"),
    }
}

/// Thue–Morse base coloring of ℤ: n ↦ m(|n|).
pub fn base_z_coloring() -> Coloring {
    let spec = GroupSpec::Z;
    let rule = Rule::ThueMorseZ;
    let palette = static_palette(&spec, &rule);
    Coloring { spec, rule, palette }
}

/// Composite coloring of a direct product from colorings of its factors.
pub fn product_coloring(left: Coloring, right: Coloring) -> Coloring {
    let spec = GroupSpec::prod(left.spec.clone(), right.spec.clone());
    let rule = Rule::Product(Box::new(left.rule), Box::new(right.rule));
    let palette = static_palette(&spec, &rule);
    Coloring { spec, rule, palette }
}

/// Composite coloring of an HNN extension of ℤ: t^i·h ↦ (m(|i|), base(h)).
pub fn hnn_coloring(base: Coloring, auto: Auto) -> Result<Coloring, ColoringError> {
    if base.spec != GroupSpec::Z {
        return Err(ColoringError::FactorMismatch);
    }
    let spec = GroupSpec::hnn(GroupSpec::Z, auto)?;
    let rule = Rule::HnnMorse(Box::new(base.rule));
    let palette = static_palette(&spec, &rule);
    Ok(Coloring { spec, rule, palette })
}

/// 4-tuple coloring of the barycentric Bass–Serre tree:
/// (ν(‖x‖), ‖x‖ mod 3, A-color or α, B-color or β).
#[derive(Debug, Clone)]
pub struct TreeColoring {
    spec: GroupSpec,
    rule: Rule,
}

impl TreeColoring {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn eval(&self, v: &TreeVertex) -> Color {
        eval_tree(&self.spec, &self.rule, v)
    }
}

/// Tree coloring assembled from factor colorings.
pub fn tree_coloring(col_a: Coloring, col_b: Coloring) -> TreeColoring {
    let spec = GroupSpec::free(col_a.spec.clone(), col_b.spec.clone());
    let rule = Rule::FreeTree(Box::new(col_a.rule), Box::new(col_b.rule));
    TreeColoring { spec, rule }
}

/// Free-product coloring: w ↦ (tree color at barycenter(w), tree color at
/// its predecessor), with a sentinel second component at the identity.
pub fn free_product_coloring(col_a: Coloring, col_b: Coloring) -> Coloring {
    let spec = GroupSpec::free(col_a.spec.clone(), col_b.spec.clone());
    let rule = Rule::FreeTree(Box::new(col_a.rule), Box::new(col_b.rule));
    let palette = static_palette(&spec, &rule);
    Coloring { spec, rule, palette }
}

/// Structural compiler dispatching on the spec tree.
pub fn compile(spec: &GroupSpec) -> Result<Coloring, ColoringError> {
    compile_at(spec, "root")
}

fn compile_at(spec: &GroupSpec, location: &str) -> Result<Coloring, ColoringError> {
    match spec {
        GroupSpec::Z => Ok(base_z_coloring()),
        GroupSpec::Prod(a, b) => {
            let left = compile_at(a, &format!("{location}.left"))?;
            let right = compile_at(b, &format!("{location}.right"))?;
            Ok(product_coloring(left, right))
        }
        GroupSpec::Free(a, b) => {
            let left = compile_at(a, &format!("{location}.left"))?;
            let right = compile_at(b, &format!("{location}.right"))?;
            Ok(free_product_coloring(left, right))
        }
        GroupSpec::Hnn { base, auto } => {
            if **base != GroupSpec::Z {
                return Err(ColoringError::UnsupportedNode {
                    location: String::from(location),
                });
            }
            hnn_coloring(base_z_coloring(), *auto)
        }
    }
}

/// Constant coloring, the negative control for the scans.
#[derive(Debug, Clone)]
pub struct ConstantColoring {
    spec: GroupSpec,
    color: Color,
    palette: BTreeSet<Color>,
}

impl ConstantColoring {
    pub fn new(spec: GroupSpec, color: Color) -> Self {
        let palette = [color.clone()].into_iter().collect();
        Self { spec, color, palette }
    }
}

impl GroupColoring for ConstantColoring {
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    fn eval(&self, _g: &GroupElement) -> Color {
        self.color.clone()
    }

    fn palette(&self) -> &BTreeSet<Color> {
        &self.palette
    }
}

pub type ColorFn = Box<dyn Fn(&GroupElement) -> Color + Send + Sync>;
pub type DecompFn = Box<dyn Fn(&GroupElement) -> (GroupElement, GroupElement) + Send + Sync>;

/// Composite coloring f = (f₁, f₂) on G from a coloring of a transitive
/// G-orbit and a coloring of the point stabilizer, glued along an explicit
/// coset-representative oracle g ↦ (a_j, h) with g = a_j·h.
pub struct ComposedColoring {
    spec: GroupSpec,
    orbit: ColorFn,
    stab: ColorFn,
    decomp: DecompFn,
    palette: BTreeSet<Color>,
}

impl fmt::Debug for ComposedColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComposedColoring")
            .field("spec", &self.spec)
            .field("palette", &self.palette)
            .finish_non_exhaustive()
    }
}

impl GroupColoring for ComposedColoring {
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    fn eval(&self, g: &GroupElement) -> Color {
        let (a, _h) = (self.decomp)(g);
        let a_inv = inverse(&self.spec, &a).expect("representative conforms");
        let rem = multiply(&self.spec, &a_inv, g).expect("conforming product");
        Color::Tuple(vec![(self.orbit)(g), (self.stab)(&rem)])
    }

    fn palette(&self) -> &BTreeSet<Color> {
        &self.palette
    }
}

/// Build a composed coloring, validating the decomposition oracle on the
/// ball of radius `check_radius`.
pub fn compose_transitive(
    spec: GroupSpec,
    orbit: ColorFn,
    orbit_palette: BTreeSet<Color>,
    stab: ColorFn,
    stab_palette: BTreeSet<Color>,
    decomp: DecompFn,
    check_radius: u32,
    max_elements: usize,
) -> Result<ComposedColoring, ColoringError> {
    let check = ball(&spec, check_radius, max_elements)?;
    for g in check.elements() {
        let (a, h) = decomp(g);
        let prod = multiply(&spec, &a, &h)?;
        if prod != *g {
            return Err(ColoringError::DecompInconsistent {
                element: format!("{g}"),
            });
        }
    }
    let mut palette = BTreeSet::new();
    for p in &orbit_palette {
        for q in &stab_palette {
            palette.insert(Color::Tuple(vec![p.clone(), q.clone()]));
        }
    }
    Ok(ComposedColoring {
        spec,
        orbit,
        stab,
        decomp,
        palette,
    })
}

/// The explicit decomposition used by the HNN construction: g = t^i·h with
/// representative a_i = t^i.
pub fn hnn_composition(base: Coloring, auto: Auto) -> Result<ComposedColoring, ColoringError> {
    if base.spec != GroupSpec::Z {
        return Err(ColoringError::FactorMismatch);
    }
    let spec = GroupSpec::hnn(GroupSpec::Z, auto)?;
    let base_palette = base.palette.clone();
    let orbit: ColorFn = Box::new(|g: &GroupElement| {
        let (i, _) = hnn_decompose(g).expect("hnn element");
        Color::Bit(thue_morse(i.unsigned_abs()))
    });
    let stab: ColorFn = Box::new(move |h: &GroupElement| {
        let (_, k) = hnn_decompose(h).expect("hnn element");
        base.eval(&k)
    });
    let decomp: DecompFn = Box::new(|g: &GroupElement| {
        let (i, h) = hnn_decompose(g).expect("hnn element");
        (
            GroupElement::hnn(i, GroupElement::Int(0)),
            GroupElement::hnn(0, h),
        )
    });
    let bit_palette: BTreeSet<Color> = [Color::Bit(0), Color::Bit(1)].into_iter().collect();
    compose_transitive(
        spec,
        orbit,
        bit_palette,
        stab,
        base_palette,
        decomp,
        4,
        crate::groups::DEFAULT_MAX_ELEMENTS,
    )
}

/// The explicit decomposition used by the product construction:
/// (g,h) = (e,h)·(g,e) with representative a = (e,h).
pub fn product_composition(
    left: Coloring,
    right: Coloring,
) -> Result<ComposedColoring, ColoringError> {
    let spec = GroupSpec::prod(left.spec.clone(), right.spec.clone());
    let left_spec = left.spec.clone();
    let right_spec = right.spec.clone();
    let left_palette = left.palette.clone();
    let right_palette = right.palette.clone();
    let orbit: ColorFn = Box::new(move |g: &GroupElement| {
        let GroupElement::Pair(_, h) = g else {
            unreachable!("pair element");
        };
        right.eval(h)
    });
    let stab: ColorFn = Box::new(move |rem: &GroupElement| {
        let GroupElement::Pair(a, _) = rem else {
            unreachable!("pair element");
        };
        left.eval(a)
    });
    let le = identity(&left_spec);
    let re = identity(&right_spec);
    let decomp: DecompFn = Box::new(move |g: &GroupElement| {
        let GroupElement::Pair(a, h) = g else {
            unreachable!("pair element");
        };
        (
            GroupElement::pair(le.clone(), h.as_ref().clone()),
            GroupElement::pair(a.as_ref().clone(), re.clone()),
        )
    });
    compose_transitive(
        spec,
        orbit,
        right_palette,
        stab,
        left_palette,
        decomp,
        4,
        crate::groups::DEFAULT_MAX_ELEMENTS,
    )
}
