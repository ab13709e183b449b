//! Command-line front end. [`dispatch`] runs one command and returns the
//! process exit code: 0 on success, 1 on a domain error, 2 on a usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use colfam_core::family::{self, FamilySamples};
use colfam_core::iwasawa::{lambda_constancy_sweep, mu_zero_criterion, ModuleFile};
use colfam_core::pseudo::{check_wiles_relations, pseudo_from_matrix, reconstruct, MatrixRepFile, WordSample};
use colfam_core::series::{newton_interpolate, power_bounded_check, weierstrass_prep, KPoly, SeriesFile};
use colfam_core::weight::{classical_points, Disk};
use colfam_core::{Chart, Elem, Error, KElem, Rational, Result, RingParams, Series};

#[derive(Parser, Debug)]
#[command(name = "colfam", version, about = "p-adic families, pseudo-representations and Iwasawa invariants")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RingArgs {
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = 1)]
    ram_index: u32,
    #[arg(long, default_value_t = 20)]
    precision: u32,
}

impl RingArgs {
    fn params(self) -> Result<RingParams> {
        RingParams::new(self.prime, self.ram_index, self.precision)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weierstrass preparation of a one-variable series file.
    Wprep { file: PathBuf },
    /// mu and lambda of a one-variable series file.
    Invariants { file: PathBuf },
    /// Evaluate a series at a point `--at u` or at a weight `--weight k`.
    Evaluate {
        file: PathBuf,
        #[arg(long, conflicts_with = "weight", required_unless_present = "weight")]
        at: Option<String>,
        #[arg(long)]
        weight: Option<i64>,
    },
    /// Newton interpolation through the points of a points file.
    Interpolate {
        file: PathBuf,
        #[arg(long, default_value_t = 32)]
        trunc_u: usize,
    },
    /// Classical weights of a disk, one per line.
    ClassicalPoints {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        k0: i64,
        #[arg(long)]
        radius_exp: u32,
        #[arg(long, default_value = "0")]
        slope: String,
        #[arg(long)]
        bound: i64,
        /// Use the closed disk instead of the open one.
        #[arg(long)]
        closed: bool,
    },
    /// Pseudo-representations attached to matrix-representation files.
    #[command(subcommand)]
    Pseudo(PseudoCommand),
    /// The degree-1 series taking value x at u1 and y at u2.
    Glue {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        u1: String,
        #[arg(long)]
        u2: String,
        #[arg(long, default_value_t = 32)]
        trunc_u: usize,
    },
    /// Specialize a module file at `--at u` or at a weight `--weight k`.
    Specialize {
        file: PathBuf,
        #[arg(long, conflicts_with = "weight", required_unless_present = "weight")]
        at: Option<String>,
        #[arg(long)]
        weight: Option<i64>,
    },
    /// Rank of a one-variable module at every classical point of a disk.
    SweepLambda {
        file: PathBuf,
        #[arg(long)]
        radius_exp: u32,
        #[arg(long, default_value = "0")]
        slope: String,
        #[arg(long)]
        bound: i64,
        #[arg(long)]
        closed: bool,
    },
    /// Whether a two-variable torsion module has vanishing mu.
    MuCriterion { file: PathBuf },
    /// Eigenform families.
    #[command(subcommand)]
    Family(FamilyCommand),
}

#[derive(Subcommand, Debug)]
enum PseudoCommand {
    /// Check the Wiles relations on all words up to a total length.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Rebuild a matrix representation from the pseudo-representation.
    Reconstruct {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        search_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    /// Interpolate the coefficient a_n across the weights of a manifest.
    Interpolate {
        manifest: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 32)]
        trunc_u: usize,
    },
    /// Supersingularity, slope and residual window of a q-expansion.
    CheckHyp {
        file: PathBuf,
        #[arg(long)]
        precision: Option<u32>,
    },
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match run(cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_series(path: &Path) -> Result<SeriesFile> {
    SeriesFile::parse(&read(path)?)
}

fn parse_slope(s: &str) -> Result<Rational> {
    family::parse_rational(s).ok_or_else(|| Error::InvalidParams(format!("bad slope `{s}`")))
}

fn point(chart: &Chart, params: RingParams, at: Option<&str>, weight: Option<i64>) -> Result<Elem> {
    match (at, weight) {
        (Some(u), _) => Elem::parse(params, u),
        (None, Some(k)) => chart.coordinate(k),
        (None, None) => Err(Error::InvalidParams("need --at or --weight".into())),
    }
}

fn run(cmd: Command) -> Result<String> {
    let mut out = String::new();
    match cmd {
        Command::Wprep { file } => {
            let f = load_series(&file)?.into_uni()?;
            let w = weierstrass_prep(&f)?;
            writeln!(out, "mu={} lambda={}", w.mu, w.lambda).unwrap();
            writeln!(out, "# distinguished").unwrap();
            out.push_str(&SeriesFile::Uni(w.distinguished).to_string());
            writeln!(out, "# unit").unwrap();
            out.push_str(&SeriesFile::Uni(w.unit).to_string());
        }
        Command::Invariants { file } => {
            let (mu, lambda) = load_series(&file)?.into_uni()?.invariants()?;
            writeln!(out, "mu={mu} lambda={lambda}").unwrap();
        }
        Command::Evaluate { file, at, weight } => match load_series(&file)? {
            SeriesFile::Uni(f) => {
                let u = point(f.chart(), f.params(), at.as_deref(), weight)?;
                let v = f.evaluate(&u)?;
                writeln!(out, "value={}", v.value).unwrap();
                writeln!(out, "tail-valuation>={}", v.tail_valuation).unwrap();
            }
            SeriesFile::Bi(f) => {
                let u = point(f.chart(), f.params(), at.as_deref(), weight)?;
                out.push_str(&SeriesFile::Uni(f.evaluate_u(&u)?).to_string());
            }
        },
        Command::Interpolate { file, trunc_u } => {
            let (chart, points) = parse_points(&read(&file)?)?;
            let it = newton_interpolate(&points)?;
            write_interpolant(&mut out, &it.poly, &chart, trunc_u)?;
            writeln!(out, "# min-abs-prec={}", it.min_abs_prec).unwrap();
        }
        Command::ClassicalPoints {
            prime,
            k0,
            radius_exp,
            slope,
            bound,
            closed,
        } => {
            let disk = if closed { Disk::Closed } else { Disk::Open };
            let set = classical_points(prime, k0, radius_exp, parse_slope(&slope)?, bound, disk)?;
            for k in &set.points {
                writeln!(out, "{k}").unwrap();
            }
        }
        Command::Pseudo(PseudoCommand::Check { file, max_len }) => {
            let m = MatrixRepFile::parse(&read(&file)?)?;
            let sample = WordSample::exhaustive(m.rep.generators(), max_len);
            let report = check_wiles_relations(&pseudo_from_matrix(m.rep), &sample);
            writeln!(
                out,
                "checked={} skipped={} violations={}",
                report.checked,
                report.skipped,
                report.violations.len()
            )
            .unwrap();
            for v in &report.violations {
                writeln!(out, "{v}").unwrap();
            }
        }
        Command::Pseudo(PseudoCommand::Reconstruct { file, search_len }) => {
            let m = MatrixRepFile::parse(&read(&file)?)?;
            let params = m.params;
            let r = reconstruct(&pseudo_from_matrix(m.rep), search_len)?;
            writeln!(out, "# sigma={} tau={} mu={} unit={}", r.sigma, r.tau, r.mu, r.unit).unwrap();
            out.push_str(&MatrixRepFile { params, rep: r.rep }.to_string());
        }
        Command::Glue {
            ring,
            x,
            y,
            u1,
            u2,
            trunc_u,
        } => {
            let r = ring.params()?;
            let e = |s: &str| Elem::parse(r, s);
            let f = colfam_core::pseudo::glue_crt(&e(&x)?, &e(&y)?, &e(&u1)?, &e(&u2)?, trunc_u)?;
            out.push_str(&SeriesFile::Uni(f).to_string());
        }
        Command::Specialize { file, at, weight } => match ModuleFile::load(&file)? {
            ModuleFile::Uni(m) => {
                let chart = module_chart(m.torsion().first().map(|t| t.0.chart()), m.params());
                let s = m.specialize_at(&point(&chart, m.params(), at.as_deref(), weight)?)?;
                writeln!(out, "rank={} finite-length={}", s.rank, s.finite_length()).unwrap();
                for x in &s.finite_part {
                    writeln!(out, "order {x}").unwrap();
                }
            }
            ModuleFile::Bi(m) => {
                let chart = module_chart(m.torsion().first().map(|t| t.0.chart()), m.params());
                let s = m.specialize_at(&point(&chart, m.params(), at.as_deref(), weight)?)?;
                writeln!(out, "free-rank={} pieces={}", s.free_rank(), s.torsion().len()).unwrap();
                if s.free_rank() == 0 {
                    writeln!(out, "mu={} lambda={}", s.mu()?, s.lambda()?).unwrap();
                }
            }
        },
        Command::SweepLambda {
            file,
            radius_exp,
            slope,
            bound,
            closed,
        } => {
            let ModuleFile::Uni(m) = ModuleFile::load(&file)? else {
                return Err(Error::InvalidParams("sweep-lambda needs a one-variable module".into()));
            };
            let chart = module_chart(m.torsion().first().map(|t| t.0.chart()), m.params());
            let disk = if closed { Disk::Closed } else { Disk::Open };
            let points = classical_points(m.params().p(), chart.center, radius_exp, parse_slope(&slope)?, bound, disk)?;
            let rep = lambda_constancy_sweep(&m, &points, &chart)?;
            for (k, r) in &rep.ranks {
                writeln!(out, "{k} {r}").unwrap();
            }
            for (k, i) in &rep.ambiguous {
                writeln!(out, "{k} ambiguous piece={i}").unwrap();
            }
            let exc: Vec<String> = rep
                .exceptions
                .iter()
                .zip(&rep.certified)
                .map(|(k, c)| format!("{k}{}", if *c { "" } else { "?" }))
                .collect();
            writeln!(
                out,
                "generic={} free-rank={} exceptions=[{}] bound={} consistent={}",
                rep.generic_lambda,
                rep.free_rank,
                exc.join(","),
                rep.exception_bound,
                rep.is_consistent()
            )
            .unwrap();
        }
        Command::MuCriterion { file } => {
            let ModuleFile::Bi(m) = ModuleFile::load(&file)? else {
                return Err(Error::InvalidParams("mu-criterion needs a two-variable module".into()));
            };
            writeln!(out, "mu-zero={}", mu_zero_criterion(&m)?).unwrap();
        }
        Command::Family(FamilyCommand::Interpolate { manifest, n, trunc_u }) => {
            let fam = FamilySamples::load(&manifest)?;
            let it = family::interpolate_family(&fam, n, trunc_u)?;
            write_interpolant(&mut out, &it.interpolant.poly, &fam.chart, trunc_u)?;
        }
        Command::Family(FamilyCommand::CheckHyp { file, precision }) => {
            let f = family::ingest_qexp(&file)?;
            let params = RingParams::new(f.p, 1, precision.unwrap_or(20))?;
            let slope = match family::slope(&f, params) {
                Ok(s) => s.to_string(),
                Err(Error::ZeroAtPrecision) => "inf".to_string(),
                Err(e) => return Err(e),
            };
            let window = family::check_edixhoven_window(&f, f.p)?;
            writeln!(
                out,
                "label={} supersingular={} slope={} window={}",
                f.label,
                family::check_supersingular(&f, f.p)?,
                slope,
                window.holds
            )
            .unwrap();
            if let Some(reason) = window.reason {
                writeln!(out, "reason: {reason}").unwrap();
            }
        }
    }
    Ok(out)
}

fn module_chart(chart: Option<&Chart>, params: RingParams) -> Chart {
    chart.cloned().unwrap_or_else(|| Chart::identity(params))
}

fn write_interpolant(out: &mut String, poly: &KPoly, chart: &Chart, trunc: usize) -> Result<()> {
    let bound = power_bounded_check(poly);
    writeln!(
        out,
        "power-bounded={} denominator-exponent={}",
        bound.bounded, bound.denominator_exponent
    )
    .unwrap();
    if bound.bounded {
        let s: Series = poly.to_series(trunc)?.with_chart(chart.clone());
        out.push_str(&SeriesFile::Uni(s).to_string());
    } else {
        for (i, c) in poly.coeffs().iter().enumerate() {
            writeln!(out, "{i} {c}").unwrap();
        }
    }
    Ok(())
}

/// Points file: header `p e N k0 e0`, then `u v` per line; `v` may carry a
/// negative power of `p`.
fn parse_points(text: &str) -> Result<(Chart, Vec<(Elem, KElem)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |n: usize, msg: &str| Error::Parse { line: n, msg: msg.to_string() };
    let (hn, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [p, e, prec, k0, e0] = toks[..] else {
        return Err(bad(hn, "header must be `p e N k0 e0`"));
    };
    let num = |t: &str| t.parse::<i64>().map_err(|_| bad(hn, &format!("bad number `{t}`")));
    let params = RingParams::new(num(p)? as u64, num(e)? as u32, num(prec)? as u32)?;
    let chart = Chart::new(num(k0)?, Elem::parse(params, e0)?);
    let mut points = Vec::new();
    for (n, line) in lines {
        let groups = group_prec_tokens(line);
        let [u, v] = &groups[..] else {
            return Err(bad(n, "expected `u v`"));
        };
        let with_line = |e: Error| match e {
            Error::Parse { msg, .. } => Error::Parse { line: n, msg },
            other => other,
        };
        points.push((
            Elem::parse(params, u).map_err(with_line)?,
            KElem::parse(params, v).map_err(with_line)?,
        ));
    }
    Ok((chart, points))
}

/// Splits on whitespace, attaching each `prec=k` token to the one before.
fn group_prec_tokens(line: &str) -> Vec<String> {
    let mut groups: Vec<String> = Vec::new();
    for tok in line.split_whitespace() {
        match groups.last_mut() {
            Some(g) if tok.starts_with("prec=") => {
                g.push(' ');
                g.push_str(tok);
            }
            _ => groups.push(tok.to_string()),
        }
    }
    groups
}
