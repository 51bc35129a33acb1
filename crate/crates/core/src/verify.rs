//! Finite-window verification: the shift action on colorings, periodicity
//! scans, witness-set searches, uniform-aperiodicity constant estimation and
//! orbit pattern sampling.
//!
//! A scan can never prove a coloring limit aperiodic; a failure at a cap is
//! reported as inconclusive, never as a refutation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::colorings::{Color, GroupColoring};
use crate::groups::{
    ball, displacement, inverse, multiply, Ball, GroupElement, GroupError, GroupSpec,
};

/// Scan verdict. `InconclusiveAtCap` means a witness was not found within
/// the configured caps; the finite window cannot refute limit aperiodicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING-KEBAB-CASE"))]
pub enum Verdict {
    Pass,
    Fail,
    InconclusiveAtCap,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::InconclusiveAtCap => write!(f, "INCONCLUSIVE-AT-CAP"),
        }
    }
}

/// One per-case outcome line of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Case {
    pub label: String,
    pub outcome: String,
}

/// Deterministic, serializable outcome of a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScanReport {
    pub kind: String,
    pub params: Vec<(String, String)>,
    pub cases: Vec<Case>,
    pub verdict: Verdict,
    pub seed: u64,
    pub wall_time_ms: u64,
}

/// Restriction of a coloring to a finite ball, together with the shift that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub shift: GroupElement,
    pub values: BTreeMap<GroupElement, Color>,
}

/// The left shift action on colorings: (g∗f)(a) = f(g⁻¹·a).
pub struct ActedColoring<'a> {
    g_inv: GroupElement,
    inner: &'a dyn GroupColoring,
}

impl<'a> GroupColoring for ActedColoring<'a> {
    fn spec(&self) -> &GroupSpec {
        self.inner.spec()
    }

    fn eval(&self, a: &GroupElement) -> Color {
        let shifted = multiply(self.inner.spec(), &self.g_inv, a).expect("conforming element");
        self.inner.eval(&shifted)
    }

    fn palette(&self) -> &BTreeSet<Color> {
        self.inner.palette()
    }
}

pub fn act<'a>(
    g: &GroupElement,
    f: &'a dyn GroupColoring,
) -> Result<ActedColoring<'a>, GroupError> {
    let g_inv = inverse(f.spec(), g)?;
    Ok(ActedColoring { g_inv, inner: f })
}

/// Some window point `a` with f(b⁻¹a) ≠ f(a), or None if `b` is a period of
/// `f` on the whole window. Deterministic: first witness in (norm, bytes)
/// order.
pub fn period_violation(
    f: &dyn GroupColoring,
    b: &GroupElement,
    window: &Ball,
) -> Result<Option<GroupElement>, GroupError> {
    let spec = f.spec();
    let b_inv = inverse(spec, b)?;
    for a in window.elements() {
        let shifted = multiply(spec, &b_inv, a)?;
        if f.eval(&shifted) != f.eval(a) {
            return Ok(Some(a.clone()));
        }
    }
    Ok(None)
}

/// For every b ≠ e with ‖b‖ ≤ `b_radius`, search the window for a violation
/// witness. PASS iff every such b has one.
pub fn aperiodicity_scan(
    f: &dyn GroupColoring,
    b_radius: u32,
    window_radius: u32,
    max_elements: usize,
) -> Result<ScanReport, GroupError> {
    let spec = f.spec();
    let window = ball(spec, window_radius, max_elements)?;
    let b_ball = ball(spec, b_radius, max_elements)?;
    let e = crate::groups::identity(spec);
    let mut cases = Vec::new();
    let mut all_found = true;
    for b in b_ball.elements() {
        if *b == e {
            continue;
        }
        match period_violation(f, b, &window)? {
            Some(a) => cases.push(Case {
                label: format!("b={b}"),
                outcome: format!("witness a={a}"),
            }),
            None => {
                all_found = false;
                cases.push(Case {
                    label: format!("b={b}"),
                    outcome: String::from("window-period: no violation in window"),
                });
            }
        }
    }
    Ok(ScanReport {
        kind: String::from("aperiodicity"),
        params: alloc::vec![
            (String::from("spec"), format!("{spec}")),
            (String::from("b_radius"), format!("{b_radius}")),
            (String::from("window_radius"), format!("{window_radius}")),
        ],
        cases,
        verdict: if all_found { Verdict::Pass } else { Verdict::Fail },
        seed: 0,
        wall_time_ms: 0,
    })
}

/// Result of an LA2 witness-set search for one g.
#[derive(Debug, Clone)]
pub struct La2Scan {
    pub report: ScanReport,
    /// Smallest r such that every tested translate h admits a witness c with
    /// ‖c‖ ≤ r, if one exists below the cap.
    pub minimal_radius: Option<u32>,
    /// A translate with no witness below the cap, when the scan fails.
    pub offending: Option<GroupElement>,
}

/// Search the smallest witness-set radius for g: for every h in the ball of
/// radius `h_radius`, find the smallest c with f(hc) ≠ f(hgc).
pub fn la2_scan(
    f: &dyn GroupColoring,
    g: &GroupElement,
    h_radius: u32,
    s_radius_cap: u32,
    max_elements: usize,
) -> Result<La2Scan, GroupError> {
    let spec = f.spec();
    let s_ball = ball(spec, s_radius_cap, max_elements)?;
    let h_ball = ball(spec, h_radius, max_elements)?;
    let mut minimal = 0u32;
    let mut argmax: Option<GroupElement> = None;
    let mut offending = None;
    'outer: for h in h_ball.elements() {
        let hg = multiply(spec, h, g)?;
        for c in s_ball.elements() {
            let hc = multiply(spec, h, c)?;
            let hgc = multiply(spec, &hg, c)?;
            if f.eval(&hc) != f.eval(&hgc) {
                let r = s_ball.norm(c).unwrap();
                if r > minimal {
                    minimal = r;
                    argmax = Some(h.clone());
                }
                continue 'outer;
            }
        }
        offending = Some(h.clone());
        break;
    }
    let (verdict, cases) = match &offending {
        Some(h) => (
            Verdict::InconclusiveAtCap,
            alloc::vec![Case {
                label: format!("h={h}"),
                outcome: format!("no witness within radius {s_radius_cap}"),
            }],
        ),
        None => (
            Verdict::Pass,
            alloc::vec![Case {
                label: String::from("all h"),
                outcome: match &argmax {
                    Some(h) => format!("minimal radius r={minimal}, attained at h={h}"),
                    None => format!("minimal radius r={minimal}"),
                },
            }],
        ),
    };
    let failed = offending.is_some();
    Ok(La2Scan {
        report: ScanReport {
            kind: String::from("la2"),
            params: alloc::vec![
                (String::from("spec"), format!("{spec}")),
                (String::from("g"), format!("{g}")),
                (String::from("h_radius"), format!("{h_radius}")),
                (String::from("s_radius_cap"), format!("{s_radius_cap}")),
            ],
            cases,
            verdict,
            seed: 0,
            wall_time_ms: 0,
        },
        minimal_radius: if failed { None } else { Some(minimal) },
        offending,
    })
}

/// Result of the uniform-aperiodicity constant sweep. The constant is kept
/// in half-units so the scan stays integer-exact: λ = lambda_halves / 2.
#[derive(Debug, Clone)]
pub struct UaScan {
    pub report: ScanReport,
    pub lambda_halves: Option<u32>,
}

/// Smallest λ from the grid {0.5, 1, 1.5, …, cap} such that for all tested
/// g ≠ e and h a witness b with f(gb) ≠ f(b) lies in the ball of radius
/// λ·d_g(h) around h.
pub fn ua_lambda_scan(
    f: &dyn GroupColoring,
    g_radius: u32,
    h_radius: u32,
    lambda_cap_halves: u32,
    max_elements: usize,
) -> Result<UaScan, GroupError> {
    let spec = f.spec();
    let g_ball = ball(spec, g_radius, max_elements)?;
    let h_ball = ball(spec, h_radius, max_elements)?;
    let e = crate::groups::identity(spec);

    // displacements first, so the witness ball is enumerated once
    let mut disps: BTreeMap<(GroupElement, GroupElement), u32> = BTreeMap::new();
    let mut d_max = 0u32;
    for g in g_ball.elements() {
        if *g == e {
            continue;
        }
        for h in h_ball.elements() {
            let d = displacement(spec, g, h, max_elements)?;
            d_max = d_max.max(d);
            disps.insert((g.clone(), h.clone()), d);
        }
    }
    let witness_cap = (lambda_cap_halves * d_max).div_ceil(2);
    let s_ball = ball(spec, witness_cap, max_elements)?;

    let mut needed_halves = 1u32; // the grid starts at 0.5
    let mut worst: Option<(GroupElement, GroupElement)> = None;
    for ((g, h), d) in &disps {
        let limit = (lambda_cap_halves * d).div_ceil(2);
        let mut found = None;
        for c in s_ball.elements() {
            let r = s_ball.norm(c).unwrap();
            if r > limit {
                break;
            }
            let b = multiply(spec, h, c)?;
            let gb = multiply(spec, g, &b)?;
            if f.eval(&gb) != f.eval(&b) {
                found = Some(r);
                break;
            }
        }
        match found {
            Some(rho) => {
                // smallest grid value with λ·d ≥ rho
                let halves = (2 * rho).div_ceil(*d).max(1);
                if halves > needed_halves {
                    needed_halves = halves;
                    worst = Some((g.clone(), h.clone()));
                }
            }
            None => {
                return Ok(UaScan {
                    report: ScanReport {
                        kind: String::from("ua"),
                        params: ua_params(spec, g_radius, h_radius, lambda_cap_halves),
                        cases: alloc::vec![Case {
                            label: format!("g={g} h={h}"),
                            outcome: format!(
                                "no witness within radius {limit} (cap λ={lambda_cap_halves}/2)"
                            ),
                        }],
                        verdict: Verdict::InconclusiveAtCap,
                        seed: 0,
                        wall_time_ms: 0,
                    },
                    lambda_halves: None,
                });
            }
        }
    }
    let case = Case {
        label: String::from("all (g,h)"),
        outcome: match &worst {
            Some((g, h)) => format!(
                "minimal λ={needed_halves}/2, attained at g={g} h={h}"
            ),
            None => format!("minimal λ={needed_halves}/2"),
        },
    };
    Ok(UaScan {
        report: ScanReport {
            kind: String::from("ua"),
            params: ua_params(spec, g_radius, h_radius, lambda_cap_halves),
            cases: alloc::vec![case],
            verdict: Verdict::Pass,
            seed: 0,
            wall_time_ms: 0,
        },
        lambda_halves: Some(needed_halves),
    })
}

fn ua_params(
    spec: &GroupSpec,
    g_radius: u32,
    h_radius: u32,
    lambda_cap_halves: u32,
) -> Vec<(String, String)> {
    alloc::vec![
        (String::from("spec"), format!("{spec}")),
        (String::from("g_radius"), format!("{g_radius}")),
        (String::from("h_radius"), format!("{h_radius}")),
        (String::from("lambda_cap_halves"), format!("{lambda_cap_halves}")),
    ]
}

/// Compute the pattern of g∗f on a window ball.
pub fn pattern_of(
    f: &dyn GroupColoring,
    shift: &GroupElement,
    window: &Ball,
) -> Result<Pattern, GroupError> {
    let shifted = act(shift, f)?;
    let mut values = BTreeMap::new();
    for a in window.elements() {
        values.insert(a.clone(), shifted.eval(a));
    }
    Ok(Pattern {
        shift: shift.clone(),
        values,
    })
}

fn pattern_has_window_period(
    spec: &GroupSpec,
    pattern: &Pattern,
    b: &GroupElement,
) -> Result<bool, GroupError> {
    let b_inv = inverse(spec, b)?;
    for (a, color) in &pattern.values {
        let shifted = multiply(spec, &b_inv, a)?;
        if let Some(other) = pattern.values.get(&shifted) {
            if other != color {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Finite approximation of limit aperiodicity: compute the pattern of every
/// scheduled translate on the window and check that no distinct pattern has
/// a small period.
pub fn orbit_pattern_scan(
    f: &dyn GroupColoring,
    schedule: &[GroupElement],
    window_radius: u32,
    b_radius: u32,
    max_elements: usize,
) -> Result<ScanReport, GroupError> {
    let spec = f.spec();
    let window = ball(spec, window_radius, max_elements)?;
    let b_ball = ball(spec, b_radius, max_elements)?;
    let e = crate::groups::identity(spec);

    // deduplicate patterns by their value vector in window order
    let mut distinct: BTreeMap<Vec<Color>, GroupElement> = BTreeMap::new();
    for shift in schedule {
        let p = pattern_of(f, shift, &window)?;
        let key: Vec<Color> = window
            .elements()
            .iter()
            .map(|a| p.values[a].clone())
            .collect();
        distinct.entry(key).or_insert_with(|| shift.clone());
    }

    let mut cases = Vec::new();
    let mut any_periodic = false;
    for (key, shift) in &distinct {
        let pattern = Pattern {
            shift: shift.clone(),
            values: window
                .elements()
                .iter()
                .cloned()
                .zip(key.iter().cloned())
                .collect(),
        };
        let mut small_period = None;
        for b in b_ball.elements() {
            if *b == e {
                continue;
            }
            if pattern_has_window_period(spec, &pattern, b)? {
                small_period = Some(b.clone());
                break;
            }
        }
        match small_period {
            Some(b) => {
                any_periodic = true;
                cases.push(Case {
                    label: format!("pattern shift={shift}"),
                    outcome: format!("window-period b={b}"),
                });
            }
            None => cases.push(Case {
                label: format!("pattern shift={shift}"),
                outcome: String::from("aperiodic on window"),
            }),
        }
    }
    Ok(ScanReport {
        kind: String::from("orbit-pattern"),
        params: alloc::vec![
            (String::from("spec"), format!("{spec}")),
            (String::from("schedule_len"), format!("{}", schedule.len())),
            (String::from("distinct_patterns"), format!("{}", distinct.len())),
            (String::from("window_radius"), format!("{window_radius}")),
            (String::from("b_radius"), format!("{b_radius}")),
        ],
        cases,
        verdict: if any_periodic { Verdict::Fail } else { Verdict::Pass },
        seed: 0,
        wall_time_ms: 0,
    })
}

/// Number of distinct length-L factors of the one-sided word n ↦ f(n) over
/// the first `positions` indices, for L = 1..=max_len. The coloring must be
/// over Z.
pub fn distinct_factor_counts(
    f: &dyn GroupColoring,
    positions: u64,
    max_len: usize,
) -> Result<Vec<usize>, GroupError> {
    if *f.spec() != GroupSpec::Z {
        return Err(GroupError::ShapeMismatch {
            expected: String::from("Z"),
            found: f.spec().describe(),
        });
    }
    let word: Vec<Color> = (0..positions)
        .map(|n| f.eval(&GroupElement::Int(n as i64)))
        .collect();
    let mut counts = Vec::new();
    for l in 1..=max_len {
        let mut factors: BTreeSet<&[Color]> = BTreeSet::new();
        for w in word.windows(l) {
            factors.insert(w);
        }
        counts.push(factors.len());
    }
    Ok(counts)
}
