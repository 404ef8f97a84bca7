mod render;
mod stress;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use troplift::schema::{Artifact, Body};
use troplift::*;

/// Exact tropical intersection and lifting certificates for plane curves.
#[derive(Parser)]
#[command(name = "troplift", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Inputs {
    /// First polynomial (file path, or text with --inline).
    #[arg(short = 'f')]
    f: String,
    /// Second polynomial.
    #[arg(short = 'g')]
    g: Option<String>,
    /// Treat -f/-g as polynomial text instead of paths.
    #[arg(long)]
    inline: bool,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout. With both --json and --svg the SVG goes
    /// next to it with an .svg extension.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit the JSON artifact (the default).
    #[arg(long)]
    json: bool,
    /// Emit an SVG drawing.
    #[arg(long)]
    svg: bool,
    /// Lattice length of drawn ray stubs.
    #[arg(long, default_value = "2")]
    ray_len: Rat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tropical curve of one polynomial.
    Tropicalize {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Set-theoretic intersection of two tropical curves.
    Intersect {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Stable intersection divisor.
    Stable {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Full pipeline: tropical images of the intersection points and their
    /// certificate. Exits 2 if no certificate exists.
    Lift {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Search for a function with divisor D − E on a curve.
    Certify {
        /// trop_curve artifact.
        #[arg(long)]
        curve: PathBuf,
        /// intersection_complex artifact marking the subcomplex.
        #[arg(long)]
        complex: PathBuf,
        /// divisor artifact for D.
        #[arg(long = "d")]
        d: PathBuf,
        /// divisor artifact for E.
        #[arg(long = "e")]
        e: PathBuf,
        /// Exit 2 when no certificate is found.
        #[arg(long)]
        expect: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Cells of divisors equivalent to the stable intersection.
    Configspace {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        output: Output,
    },
    /// Draw any JSON artifact.
    Plot {
        artifact: PathBuf,
        /// Output path; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "2")]
        ray_len: Rat,
    },
    /// Perturb the fixture families randomly and check that every pair
    /// gets a certificate. Exits 2 on the first failure.
    Stress {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturbations per family.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

enum Outcome {
    Ok,
    Falsified,
}

fn read_poly(src: &str, inline: bool) -> anyhow::Result<BivariatePoly> {
    if inline {
        return parse_poly(src).map_err(|e| anyhow!("{e}"));
    }
    let text = std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?;
    parse_poly(&text).map_err(|e| anyhow!("{src}: {e}"))
}

fn read_pair(i: &Inputs) -> anyhow::Result<(BivariatePoly, BivariatePoly)> {
    let g = i.g.as_deref().ok_or_else(|| anyhow!("-g is required"))?;
    Ok((read_poly(&i.f, i.inline)?, read_poly(g, i.inline)?))
}

fn read_artifact(path: &Path) -> anyhow::Result<Artifact> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Artifact::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

fn curve(p: &BivariatePoly) -> anyhow::Result<TropCurve> {
    Ok(curve_of(&tropicalize_poly(p))?)
}

/// Writes via a temporary file in the target directory and a rename.
fn write_atomic(path: &Path, content: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating file in {}", dir.display()))?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(a: &Artifact, o: &Output) -> anyhow::Result<()> {
    let json = o.json || !o.svg;
    let svg = o.svg.then(|| render::scene_for(a, &o.ray_len).render());
    match &o.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            if json {
                stdout.write_all(a.to_json().as_bytes())?;
            }
            if let Some(s) = svg {
                stdout.write_all(s.as_bytes())?;
            }
        }
        Some(path) => {
            if json {
                write_atomic(path, &a.to_json())?;
            }
            if let Some(s) = svg {
                let target = if json { path.with_extension("svg") } else { path.clone() };
                write_atomic(&target, &s)?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.cmd {
        Cmd::Tropicalize { input, output } => {
            if input.g.is_some() {
                bail!("tropicalize takes a single polynomial");
            }
            let f = read_poly(&input.f, input.inline)?;
            let body = Body::TropCurve { polynomial: print_poly(&f), curve: curve(&f)? };
            emit(&Artifact::new(body), &output)?;
        }
        Cmd::Intersect { input, output } => {
            let (f, g) = read_pair(&input)?;
            let complex = intersect_complex(&curve(&f)?, &curve(&g)?);
            emit(&Artifact::new(Body::IntersectionComplex { complex }), &output)?;
        }
        Cmd::Stable { input, output } => {
            let (f, g) = read_pair(&input)?;
            let divisor = stable_divisor(&curve(&f)?, &curve(&g)?)?;
            emit(&Artifact::new(Body::Divisor { divisor }), &output)?;
        }
        Cmd::Lift { input, output } => {
            let (f, g) = read_pair(&input)?;
            let report = verify_main_theorem(&f, &g)?;
            let falsified = report.falsified;
            emit(&Artifact::new(Body::LiftReport { report: Box::new(report) }), &output)?;
            if falsified {
                eprintln!("no certificate: D and E are not linearly equivalent on the marked subcomplex");
                return Ok(Outcome::Falsified);
            }
        }
        Cmd::Certify { curve, complex, d, e, expect, output } => {
            let c = match read_artifact(&curve)?.body {
                Body::TropCurve { curve, .. } => curve,
                _ => bail!("{} is not a trop_curve artifact", curve.display()),
            };
            let i = match read_artifact(&complex)?.body {
                Body::IntersectionComplex { complex } => complex,
                _ => bail!("{} is not an intersection_complex artifact", complex.display()),
            };
            let divisor = |p: &Path| -> anyhow::Result<Divisor> {
                match read_artifact(p)?.body {
                    Body::Divisor { divisor } => Ok(divisor),
                    _ => bail!("{} is not a divisor artifact", p.display()),
                }
            };
            let (d, e) = (divisor(&d)?, divisor(&e)?);
            let graph = graph_of_curve(&c, &i)?;
            let function = find_certificate(&graph, &d, &e)?;
            let found = function.is_some();
            if !found && output.out.is_none() && !output.svg {
                println!("none");
            } else {
                emit(&Artifact::new(Body::PlFunc { graph, function }), &output)?;
            }
            if !found && expect {
                return Ok(Outcome::Falsified);
            }
        }
        Cmd::Configspace { input, output } => {
            let (f, g) = read_pair(&input)?;
            let (cf, cg) = (curve(&f)?, curve(&g)?);
            let graph = graph_of_curve(&cf, &intersect_complex(&cf, &cg))?;
            let space = configuration_space(&graph, &stable_divisor(&cf, &cg)?)?;
            emit(&Artifact::new(Body::ConfigCells { space }), &output)?;
        }
        Cmd::Plot { artifact, out, ray_len } => {
            let a = read_artifact(&artifact)?;
            let svg = render::scene_for(&a, &ray_len).render();
            match out {
                Some(path) => write_atomic(&path, &svg)?,
                None => std::io::stdout().write_all(svg.as_bytes())?,
            }
        }
        Cmd::Stress { seed, count } => {
            if !stress::run(seed, count)? {
                return Ok(Outcome::Falsified);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    // clap's own usage errors exit 2, which is reserved for falsification.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Falsified) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
