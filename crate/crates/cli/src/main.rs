//! `mtc`: command-line front end for modular data and permutation orbifolds.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use mtc_core::fixedpoint::{fixed_set, h8_example, h8_input, resolution_count, ResolutionInput};
use mtc_core::groups::{build_group, character_table_seeded};
use mtc_core::orbifold_z2::{integrality_report, z2_assemble};
use mtc_core::spectrum::{
    dim_square_sum, enumerate_spectrum_with, genus_blocks, SpectrumGroup, SpectrumOptions,
};
use mtc_core::theories::{serialize_theory, TheorySpec};
use mtc_core::{Error, ModularData, ValidationReport};

use report::{render_report, Cell, Mode, Report};

#[derive(Debug, Parser)]
#[command(
    name = "mtc",
    version,
    about = "Modular data, fusion rules and permutation orbifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of an aligned text table.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized character-table splitting.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the theory document (validate, orbifold-z2) or the report to FILE.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the modular-axiom checks on a theory.
    Validate { theory: String },
    /// Print the non-zero Verlinde fusion coefficients.
    Fuse { theory: String },
    /// Assemble the two-fold permutation orbifold.
    #[command(name = "orbifold-z2")]
    OrbifoldZ2 { theory: String },
    /// Enumerate the sectors of the cyclic or full permutation orbifold.
    Spectrum {
        theory: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "full")]
        group: String,
        /// Raise the size limit on n to this value.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Integrality sweep over all label triples and both signs.
    Integrality { theory: String },
    /// Evaluate a genus-g block with the given insertions.
    #[command(name = "genus-blocks")]
    GenusBlocks {
        theory: String,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Comma-separated label names or indices.
        #[arg(long, value_delimiter = ',')]
        insertions: Vec<String>,
    },
    /// Count fixed-point resolutions from a JSON input or a preset.
    Fixedpoint {
        input: Option<PathBuf>,
        /// Built-in example (`h8`).
        #[arg(long)]
        example: Option<String>,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Character table of a permutation group given by a group spec.
    Chartable { group: String },
}

/// Exit 1: usage and input errors. Exit 2: validation or consistency failures.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Schema { .. }
        | Error::Parameter(_)
        | Error::Shape(_)
        | Error::Group(_)
        | Error::SizeGuard(_) => 1,
        _ => 2,
    }
}

fn validation_report(r: &ValidationReport) -> Report {
    let mut rep = Report::new(["check", "passed", "residual"]);
    for c in &r.checks {
        rep.push(vec![
            c.name.as_str().into(),
            c.passed.into(),
            Cell::Sci(c.residual),
        ]);
    }
    rep
}

struct Outcome {
    report: Report,
    /// Theory document to write with `-o`.
    theory: Option<ModularData>,
    code: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report,
            theory: None,
            code: 0,
        }
    }
}

/// Failure that still produces a report.
struct Failed {
    error: Error,
    report: Option<Report>,
}

impl From<Error> for Failed {
    fn from(error: Error) -> Self {
        let report = match &error {
            Error::ValidationFailed(r) => Some(validation_report(r)),
            _ => None,
        };
        Self { error, report }
    }
}

fn load(spec: &str) -> Result<ModularData, Error> {
    TheorySpec::from_str(spec)?.load()
}

fn resolve_label(md: &ModularData, s: &str) -> Result<usize, Error> {
    md.label_index(s)
        .or_else(|| s.parse::<usize>().ok().filter(|&i| i < md.rank()))
        .ok_or_else(|| Error::Parameter(format!("unknown label `{s}`")))
}

fn execute(cli: &Cli) -> Result<Outcome, Failed> {
    match &cli.command {
        Command::Validate { theory } => {
            let md = load(theory)?;
            let r = md.validate()?;
            let code = if r.all_passed() { 0 } else { 2 };
            Ok(Outcome {
                report: validation_report(&r),
                theory: Some(md),
                code,
            })
        }
        Command::Fuse { theory } => {
            let md = load(theory)?.validated()?;
            let f = md.fusion();
            let names: Vec<&str> = md.labels().iter().map(|l| l.name.as_str()).collect();
            let mut rep = Report::new(["a", "b", "c", "N"]);
            for a in 0..md.rank() {
                for b in 0..md.rank() {
                    for c in 0..md.rank() {
                        let n = f.get(a, b, c);
                        if n != 0 {
                            rep.push(vec![
                                names[a].into(),
                                names[b].into(),
                                names[c].into(),
                                (n as usize).into(),
                            ]);
                        }
                    }
                }
            }
            Ok(Outcome::ok(rep))
        }
        Command::OrbifoldZ2 { theory } => {
            let md = load(theory)?.validated()?;
            let orb = z2_assemble(&md)?;
            let t = &orb.theory;
            let mut rep = Report::new(["label", "family", "dim", "weight"]);
            for (i, l) in orb.labels.iter().enumerate() {
                let family = match l {
                    mtc_core::orbifold_z2::OrbifoldLabelZ2::Pair { .. } => "pair",
                    mtc_core::orbifold_z2::OrbifoldLabelZ2::Diag { .. } => "diag",
                    mtc_core::orbifold_z2::OrbifoldLabelZ2::Twist { .. } => "twist",
                };
                rep.push(vec![
                    t.labels()[i].name.clone().into(),
                    family.into(),
                    t.dims()[i].into(),
                    t.weights()[i].to_string().into(),
                ]);
            }
            rep.footer.push(format!(
                "labels: {}, mu: {:.10}, central charge: {}, c0: {:.10}",
                t.rank(),
                t.mu(),
                t.central_charge(),
                t.c0()
            ));
            Ok(Outcome {
                report: rep,
                theory: Some(orb.theory.into_data()),
                code: 0,
            })
        }
        Command::Spectrum {
            theory,
            n,
            group,
            max_n,
        } => {
            let group = SpectrumGroup::from_str(group)?;
            let md = load(theory)?.validated()?;
            let opts = SpectrumOptions {
                override_guard: max_n.is_some_and(|m| *n <= m),
                seed: cli.seed,
            };
            let entries = enumerate_spectrum_with(&md, *n, group, opts)?;
            let mut rep = Report::new([
                "p",
                "psi",
                "stabilizer_order",
                "sigma",
                "sigma_dim",
                "dim",
                "orbit_size",
            ]);
            for e in &entries {
                rep.push(vec![
                    e.seed.p.to_string().into(),
                    Cell::List(e.seed.psi_names(&md)),
                    e.stabilizer.order().into(),
                    e.sigma.into(),
                    e.sigma_dim.into(),
                    e.dim.into(),
                    e.orbit_size.into(),
                ]);
            }
            rep.footer.push(format!(
                "sectors: {}, sum of squared dimensions: {:.10}",
                entries.len(),
                dim_square_sum(&entries)
            ));
            Ok(Outcome::ok(rep))
        }
        Command::Integrality { theory } => {
            let md = load(theory)?.validated()?;
            let names: Vec<&str> = md.labels().iter().map(|l| l.name.as_str()).collect();
            let rows = integrality_report(&md);
            let mut rep = Report::new([
                "a",
                "b",
                "c",
                "sign",
                "value",
                "nearest",
                "residual",
                "integral",
                "nonnegative",
            ]);
            let mut ok = true;
            for r in &rows {
                ok &= r.integral && r.nonnegative;
                let (a, b, c) = r.triple;
                rep.push(vec![
                    names[a].into(),
                    names[b].into(),
                    names[c].into(),
                    i64::from(r.sign).into(),
                    Cell::Complex(r.value),
                    r.nearest.into(),
                    Cell::Sci(r.residual),
                    r.integral.into(),
                    r.nonnegative.into(),
                ]);
            }
            Ok(Outcome {
                report: rep,
                theory: None,
                code: if ok { 0 } else { 2 },
            })
        }
        Command::GenusBlocks {
            theory,
            genus,
            insertions,
        } => {
            let md = load(theory)?.validated()?;
            let idx = insertions
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| resolve_label(&md, s))
                .collect::<Result<Vec<_>, _>>()?;
            let value = genus_blocks(&md, &idx, *genus)?;
            let mut rep = Report::new(["genus", "insertions", "value"]);
            let names: Vec<&str> = idx.iter().map(|&i| md.labels()[i].name.as_str()).collect();
            rep.push(vec![
                (*genus as usize).into(),
                names.join(",").into(),
                (value as usize).into(),
            ]);
            Ok(Outcome::ok(rep))
        }
        Command::Fixedpoint {
            input,
            example,
            level,
        } => {
            let mut rep = Report::new(["sigma", "fixed_set_order", "count"]);
            match (input, example.as_deref()) {
                (None, Some("h8")) => {
                    for (s, count) in h8_example(*level)? {
                        let order = fixed_set(&h8_input(*level, s)?)?.len();
                        rep.push(vec![(s as i64).into(), order.into(), count.into()]);
                    }
                }
                (None, Some(other)) => {
                    return Err(Error::Parameter(format!(
                        "unknown example `{other}` (expected h8)"
                    ))
                    .into())
                }
                (Some(path), None) => {
                    let bytes = std::fs::read(path).map_err(|e| {
                        Error::Parameter(format!("cannot read {}: {e}", path.display()))
                    })?;
                    let inp = ResolutionInput::from_json(&bytes)?;
                    let order = fixed_set(&inp)?.len();
                    let count = resolution_count(&inp)?;
                    rep.push(vec![inp.sigma().into(), order.into(), count.into()]);
                }
                _ => {
                    return Err(Error::Parameter(
                        "fixedpoint needs either an input file or --example h8".into(),
                    )
                    .into())
                }
            }
            Ok(Outcome::ok(rep))
        }
        Command::Chartable { group } => {
            let g = build_group(group)?;
            let t = character_table_seeded(&g, cli.seed)?;
            let sizes = t.class_sizes();
            let mut columns = vec!["irrep".to_string(), "dim".to_string()];
            columns.extend(
                t.representatives()
                    .iter()
                    .zip(&sizes)
                    .map(|(p, s)| format!("{p}[{s}]")),
            );
            let mut rep = Report::new(columns);
            for i in 0..t.num_irreps() {
                let mut row: Vec<Cell> = vec![i.into(), t.dims()[i].into()];
                row.extend(t.row(i).iter().map(|z| Cell::Complex(*z)));
                rep.push(row);
            }
            rep.footer.push(format!(
                "order: {}, classes: {}, orthogonality residual: {:.3e}",
                t.group_order(),
                t.num_classes(),
                t.orthogonality_residual()
            ));
            Ok(Outcome::ok(rep))
        }
    }
}

fn write_out(path: Option<&PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => std::io::stdout().write_all(bytes),
    }
}

fn run(cli: Cli) -> u8 {
    let mode = if cli.json { Mode::Json } else { Mode::Text };
    match execute(&cli) {
        Ok(outcome) => {
            let rendered = render_report(&outcome.report, mode);
            let result = match (&outcome.theory, &cli.output) {
                (Some(md), Some(path)) => std::fs::write(path, serialize_theory(md))
                    .and_then(|_| std::io::stdout().write_all(&rendered)),
                (None, path) => write_out(path.as_ref(), &rendered),
                (Some(_), None) => std::io::stdout().write_all(&rendered),
            };
            if let Err(e) = result {
                eprintln!("error: {e}");
                return 1;
            }
            outcome.code
        }
        Err(Failed { error, report }) => {
            if let Some(r) = report {
                let _ = std::io::stdout().write_all(&render_report(&r, mode));
            }
            eprintln!("error: {error}");
            exit_code(&error)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}
