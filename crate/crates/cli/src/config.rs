//! Command-line configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(
    name = "fractal-bound",
    version,
    about = "Dimension bounds and numerical checks for Weierstrass-type graphs"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Hypothesis checks, contraction factor and dimension bounds (JSON).
    Bounds(CurveArgs),
    /// Empirical contraction and self-affinity checks (JSON).
    Verify(VerifyArgs),
    /// Point cloud approximating the attractor (CSV).
    Attractor(AttractorArgs),
    /// Box-counting dimension estimate (CSV + JSON summary).
    Boxcount(BoxcountArgs),
    /// Root of sum u_i^s = 1.
    Moran(MoranArgs),
    /// SVG polyline of the curve.
    Render(RenderArgs),
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct CurveArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long)]
    pub b: u32,
    /// Base function: cos2pi, cos-unit or sin-unit.
    #[arg(long, default_value = "cos-unit")]
    pub phi: String,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Random point pairs for the contraction check.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Abscissas per branch for the self-affinity check.
    #[arg(long, default_value_t = 1000)]
    pub affinity_samples: usize,
    /// Series tolerance for the self-affinity check.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Chaos,
    Iterate,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Chaos => "chaos",
            Method::Iterate => "iterate",
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct AttractorArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, value_enum, default_value_t = Method::Chaos)]
    pub method: Method,
    /// Chaos game: number of points kept.
    #[arg(long, default_value_t = 10_000)]
    pub points: usize,
    /// Chaos game: iterates discarded first.
    #[arg(long, default_value_t = 100)]
    pub burn_in: usize,
    /// Deterministic iteration: composition depth from the seed (0.5, 0).
    #[arg(long, default_value_t = 8)]
    pub depth: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct BoxcountArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 4)]
    pub kmin: u32,
    #[arg(long, default_value_t = 12)]
    pub kmax: u32,
    #[arg(long, default_value_t = 16)]
    pub oversample: usize,
    /// Per-scale counts (columns k, epsilon, count).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Copy of the JSON summary printed on stdout.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
#[group(required = true, multiple = false)]
pub struct MoranArgs {
    /// Comma-separated contraction factors.
    #[arg(long, value_delimiter = ',')]
    pub factors: Option<Vec<f64>>,
    /// File with one factor per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq)]
pub struct RenderArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long)]
    pub out: PathBuf,
}

impl CurveArgs {
    fn push_args(&self, out: &mut Vec<String>) {
        push(out, "--a", self.a);
        push(out, "--b", self.b);
        push(out, "--phi", &self.phi);
    }
}

fn push(out: &mut Vec<String>, flag: &str, value: impl std::fmt::Display) {
    out.push(flag.to_string());
    out.push(value.to_string());
}

fn push_path(out: &mut Vec<String>, flag: &str, path: &std::path::Path) {
    out.push(flag.to_string());
    out.push(path.to_string_lossy().into_owned());
}

impl RunConfig {
    /// Command line (without the program name) that parses back to `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.command {
            Command::Bounds(c) => {
                out.push("bounds".into());
                c.push_args(&mut out);
            }
            Command::Verify(v) => {
                out.push("verify".into());
                v.curve.push_args(&mut out);
                push(&mut out, "--samples", v.samples);
                push(&mut out, "--seed", v.seed);
                push(&mut out, "--affinity-samples", v.affinity_samples);
                push(&mut out, "--tol", v.tol);
            }
            Command::Attractor(t) => {
                out.push("attractor".into());
                t.curve.push_args(&mut out);
                push(&mut out, "--method", t.method.as_str());
                push(&mut out, "--points", t.points);
                push(&mut out, "--burn-in", t.burn_in);
                push(&mut out, "--depth", t.depth);
                push(&mut out, "--seed", t.seed);
                push_path(&mut out, "--out", &t.out);
            }
            Command::Boxcount(bx) => {
                out.push("boxcount".into());
                bx.curve.push_args(&mut out);
                push(&mut out, "--kmin", bx.kmin);
                push(&mut out, "--kmax", bx.kmax);
                push(&mut out, "--oversample", bx.oversample);
                if let Some(p) = &bx.csv {
                    push_path(&mut out, "--csv", p);
                }
                if let Some(p) = &bx.summary {
                    push_path(&mut out, "--summary", p);
                }
            }
            Command::Moran(m) => {
                out.push("moran".into());
                if let Some(f) = &m.factors {
                    let joined: Vec<String> = f.iter().map(f64::to_string).collect();
                    push(&mut out, "--factors", joined.join(","));
                }
                if let Some(p) = &m.file {
                    push_path(&mut out, "--file", p);
                }
            }
            Command::Render(r) => {
                out.push("render".into());
                r.curve.push_args(&mut out);
                push(&mut out, "--samples", r.samples);
                push(&mut out, "--tol", r.tol);
                push_path(&mut out, "--out", &r.out);
            }
        }
        out
    }
}
