//! `aperiodic` — construct and verify aperiodic colorings of groups built
//! from Z by products, free products and HNN extensions.
//!
//! Exit codes: 0 = PASS, 1 = FAIL, 2 = INCONCLUSIVE-AT-CAP, 3 = usage or
//! input error. All output is deterministic for fixed arguments and seed.

use aperiodic_cli::{dsl, elem, render};

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use aperiodic_core::colorings::{compile, GroupColoring};
use aperiodic_core::counterexample::{
    build_hn, find_monochromatic, pullback_pattern, seeded_coloring,
};
use aperiodic_core::groups::{ball, GroupElement, GroupSpec};
use aperiodic_core::sequences::{squarefree_ternary, thue_morse};
use aperiodic_core::verify::{
    aperiodicity_scan, la2_scan, orbit_pattern_scan, ua_lambda_scan, ScanReport, Verdict,
};

#[derive(Parser)]
#[command(name = "aperiodic", version, about = "Aperiodic coloring toolkit")]
struct Cli {
    /// Seed recorded in reports and used by seeded demos.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Hard cap on enumerated ball elements before aborting.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_elements: usize,

    /// Worker cap. Scans are deterministic regardless of this value; the
    /// current scans run on a single worker.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a group expression and print its canonical form.
    Parse {
        #[arg(long)]
        spec: String,
    },
    /// Compile the coloring of a group and dump it on a ball.
    Color {
        #[arg(long)]
        spec: String,
        /// Ball radius to enumerate.
        #[arg(long)]
        radius: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a verification scan and emit a JSON report.
    Verify {
        #[command(subcommand)]
        scan: VerifyCmd,
    },
    /// Deterministic demonstrations.
    Demo {
        #[command(subcommand)]
        demo: DemoCmd,
    },
    /// Raster output.
    Render {
        #[command(subcommand)]
        target: RenderCmd,
    },
    /// Dump the base sequences.
    Seq {
        #[command(subcommand)]
        seq: SeqCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check that every small b fails to be a window period.
    Aperiodic {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 4)]
        b_radius: u32,
        #[arg(long, default_value_t = 16)]
        window: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimal witness-set radius for one g over a range of translates.
    La2 {
        #[arg(long)]
        spec: String,
        /// Element text in the spec's element syntax.
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 64)]
        h_radius: u32,
        /// Witness radius cap; exceeding it is INCONCLUSIVE-AT-CAP.
        #[arg(long, default_value_t = 64)]
        cap: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smallest uniform constant λ (in half-units) on a (g,h) grid.
    Ua {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 3)]
        g_radius: u32,
        #[arg(long, default_value_t = 6)]
        h_radius: u32,
        /// Grid cap for λ, in half-units (8 means λ ≤ 4).
        #[arg(long, default_value_t = 8)]
        lambda_cap: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Periodicity of distinct translate patterns on a window.
    Orbit {
        #[arg(long)]
        spec: String,
        /// Number of translates: the first N elements in ball order.
        #[arg(long, default_value_t = 64)]
        schedule_len: usize,
        #[arg(long, default_value_t = 16)]
        window: u32,
        #[arg(long, default_value_t = 3)]
        b_radius: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// ℕ fails limit aperiodicity: pull a seeded coloring back through a
    /// finitely supported permutation to a constant pattern.
    Counterexample {
        /// Palette size of the seeded coloring.
        #[arg(long, default_value_t = 3)]
        colors: u8,
        /// Colored domain is [0..=domain].
        #[arg(long, default_value_t = 5000)]
        domain: u64,
        /// Length of the pulled-back window [1..=window].
        #[arg(long, default_value_t = 50)]
        window: u64,
    },
}

#[derive(Subcommand)]
enum RenderCmd {
    /// Grayscale PGM of a prod(Z,Z) coloring on [-n..n]².
    Grid {
        #[arg(long, default_value = "prod(Z,Z)")]
        spec: String,
        #[arg(long, default_value_t = 128)]
        n: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqKind {
    /// Thue–Morse binary sequence.
    Tm,
    /// Squarefree ternary sequence.
    Ternary,
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Print the first n terms as a digit string.
    Dump {
        #[arg(long, value_enum)]
        which: SeqKind,
        #[arg(long, default_value_t = 64)]
        n: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn write_out(output: Option<&PathBuf>, data: &[u8]) -> Result<()> {
    match output {
        Some(path) => fs::write(path, data).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(data)?;
            Ok(())
        }
    }
}

fn emit_report(mut report: ScanReport, seed: u64, output: Option<&PathBuf>) -> Result<u8> {
    report.seed = seed;
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    write_out(output, json.as_bytes())?;
    Ok(match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::InconclusiveAtCap => 2,
    })
}

fn parse_spec_arg(text: &str) -> Result<GroupSpec> {
    dsl::parse_spec(text).map_err(|e| anyhow::anyhow!("invalid --spec: {e}"))
}

/// First `len` group elements in (norm, serialization) ball order, growing
/// the radius until the ball is large enough.
fn schedule(spec: &GroupSpec, len: usize, max_elements: usize) -> Result<Vec<GroupElement>> {
    let mut radius = 1;
    loop {
        let b = ball(spec, radius, max_elements)?;
        if b.len() >= len {
            return Ok(b.elements()[..len].to_vec());
        }
        if spec == &GroupSpec::Z {
            // |B(r)| = 2r+1, jump straight to the needed radius
            radius = (len as u32).div_ceil(2);
        } else {
            radius += 1;
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    if cli.threads == 0 {
        anyhow::bail!("--threads must be at least 1");
    }
    match cli.cmd {
        Cmd::Parse { spec } => {
            let parsed = parse_spec_arg(&spec)?;
            println!("{parsed}");
            Ok(0)
        }
        Cmd::Color {
            spec,
            radius,
            output,
        } => {
            let spec = parse_spec_arg(&spec)?;
            let f = compile(&spec).map_err(|e| anyhow::anyhow!("{e}"))?;
            let b = ball(&spec, radius, cli.max_elements)?;
            let mut text = String::new();
            for g in b.elements() {
                text.push_str(&format!("{g}\t{}\n", f.eval(g)));
            }
            write_out(output.as_ref(), text.as_bytes())?;
            Ok(0)
        }
        Cmd::Verify { scan } => match scan {
            VerifyCmd::Aperiodic {
                spec,
                b_radius,
                window,
                output,
            } => {
                let spec = parse_spec_arg(&spec)?;
                let f = compile(&spec).map_err(|e| anyhow::anyhow!("{e}"))?;
                let report = aperiodicity_scan(&f, b_radius, window, cli.max_elements)?;
                emit_report(report, cli.seed, output.as_ref())
            }
            VerifyCmd::La2 {
                spec,
                g,
                h_radius,
                cap,
                output,
            } => {
                let spec = parse_spec_arg(&spec)?;
                let g = elem::parse_element(&spec, &g)
                    .map_err(|e| anyhow::anyhow!("invalid --g: {e}"))?;
                let f = compile(&spec).map_err(|e| anyhow::anyhow!("{e}"))?;
                let scan = la2_scan(&f, &g, h_radius, cap, cli.max_elements)?;
                emit_report(scan.report, cli.seed, output.as_ref())
            }
            VerifyCmd::Ua {
                spec,
                g_radius,
                h_radius,
                lambda_cap,
                output,
            } => {
                let spec = parse_spec_arg(&spec)?;
                let f = compile(&spec).map_err(|e| anyhow::anyhow!("{e}"))?;
                let scan = ua_lambda_scan(&f, g_radius, h_radius, lambda_cap, cli.max_elements)?;
                emit_report(scan.report, cli.seed, output.as_ref())
            }
            VerifyCmd::Orbit {
                spec,
                schedule_len,
                window,
                b_radius,
                output,
            } => {
                let spec = parse_spec_arg(&spec)?;
                let f = compile(&spec).map_err(|e| anyhow::anyhow!("{e}"))?;
                let shifts = schedule(&spec, schedule_len, cli.max_elements)?;
                let report =
                    orbit_pattern_scan(&f, &shifts, window, b_radius, cli.max_elements)?;
                emit_report(report, cli.seed, output.as_ref())
            }
        },
        Cmd::Demo { demo } => match demo {
            DemoCmd::Counterexample {
                colors,
                domain,
                window,
            } => {
                let f = seeded_coloring(cli.seed, colors, domain as usize + 1);
                let (color, seq) =
                    find_monochromatic(&f, window as usize).map_err(|e| anyhow::anyhow!("{e}"))?;
                let h = build_hn(&seq, seq.len()).map_err(|e| anyhow::anyhow!("{e}"))?;
                let pattern =
                    pullback_pattern(&f, &h, window).map_err(|e| anyhow::anyhow!("{e}"))?;
                println!(
                    "seeded coloring: seed={} colors={} domain=[0..={}]",
                    cli.seed, colors, domain
                );
                let seq_text: Vec<String> = seq.iter().map(u64::to_string).collect();
                println!("monochromatic color {color} at {}", seq_text.join(","));
                println!("h_n = {}", h.cycle_notation());
                let pat_text: Vec<String> = pattern.iter().map(u8::to_string).collect();
                println!("pulled-back pattern on [1..={window}]: {}", pat_text.join(","));
                let constant = pattern.iter().all(|&c| c == color);
                println!("verdict: {}", if constant { "PASS" } else { "FAIL" });
                Ok(if constant { 0 } else { 1 })
            }
        },
        Cmd::Render { target } => match target {
            RenderCmd::Grid { spec, n, output } => {
                let spec = parse_spec_arg(&spec)?;
                let f = compile(&spec).map_err(|e| anyhow::anyhow!("{e}"))?;
                let img = render::render_grid(&f, n)?;
                fs::write(&output, img)
                    .with_context(|| format!("writing {}", output.display()))?;
                Ok(0)
            }
        },
        Cmd::Seq { seq } => match seq {
            SeqCmd::Dump { which, n, output } => {
                let mut text = String::with_capacity(n as usize + 1);
                for i in 0..n {
                    let d = match which {
                        SeqKind::Tm => thue_morse(i),
                        SeqKind::Ternary => squarefree_ternary(i),
                    };
                    text.push((b'0' + d) as char);
                }
                text.push('\n');
                write_out(output.as_ref(), text.as_bytes())?;
                Ok(0)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
