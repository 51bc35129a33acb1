//! Raster rendering of colorings over prod(Z,Z) as binary PGM (P5).

use anyhow::{bail, Result};

use aperiodic_core::colorings::{Color, GroupColoring};
use aperiodic_core::groups::{GroupElement, GroupSpec};

/// Render f on the grid [-n..n]² as an 8-bit P5 image, rows from y = n down
/// to y = -n. Colors map to gray levels through the sorted palette, so the
/// mapping is independent of the grid size.
pub fn render_grid(f: &dyn GroupColoring, n: u32) -> Result<Vec<u8>> {
    let GroupSpec::Prod(a, b) = f.spec() else {
        bail!("render grid requires a prod(Z,Z) coloring, got {}", f.spec());
    };
    if **a != GroupSpec::Z || **b != GroupSpec::Z {
        bail!("render grid requires a prod(Z,Z) coloring, got {}", f.spec());
    }
    let palette: Vec<&Color> = f.palette().iter().collect();
    if palette.len() > 256 {
        bail!("palette of {} colors exceeds 8-bit grayscale", palette.len());
    }
    let gray = |c: &Color| -> Result<u8> {
        let Some(i) = palette.iter().position(|p| *p == c) else {
            bail!("color {c} missing from the declared palette");
        };
        Ok(if palette.len() == 1 {
            0
        } else {
            (i * 255 / (palette.len() - 1)) as u8
        })
    };
    let side = 2 * n as usize + 1;
    let mut out = format!("P5\n{side} {side}\n255\n").into_bytes();
    for y in (-(n as i64)..=n as i64).rev() {
        for x in -(n as i64)..=n as i64 {
            let g = GroupElement::pair(GroupElement::Int(x), GroupElement::Int(y));
            out.push(gray(&f.eval(&g))?);
        }
    }
    Ok(out)
}
