//! `fflattice`: standard polynomials, embeddings, lattice checks and Conway
//! tables from the command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fflattice::arith::numtheory::divisors;
use fflattice::bench::{self, BenchRow};
use fflattice::cyclo::DEFAULT_WORK_BOUND;
use fflattice::{ConwayTable, CycloLattice, Error, ExtField, FFElem, FpPoly, Prime, SearchMode, StdLattice};

#[derive(Parser)]
#[command(name = "fflattice", version, about = "Standard lattices of compatibly embedded finite fields")]
struct Cli {
    /// Characteristic.
    #[arg(short = 'p', long = "prime", global = true, default_value_t = 2)]
    p: u64,
    /// Conway table file (`p a c_0 ... c_a` per line) replacing the built-in one.
    #[arg(long, global = true)]
    conway_table: Option<PathBuf>,
    /// Skip irreducibility, primitivity and compatibility checks of `--conway-table`.
    #[arg(long, global = true)]
    skip_table_validation: bool,
    /// Seed for the defining polynomials of the fields.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Largest candidate space a Conway search may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_BOUND)]
    work_bound: u128,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the standard polynomial P_l.
    Stdpoly {
        #[arg(short = 'l')]
        l: usize,
    },
    /// Print the image of s_l in F_{p^m}, written over the basis of powers of s_m.
    Embed {
        #[arg(short = 'l')]
        l: usize,
        #[arg(short = 'm')]
        m: usize,
        /// Recompute the minimal polynomial of the image.
        #[arg(long)]
        verify: bool,
    },
    /// Check every triangle l | m | n among the reachable degrees up to `--max`.
    Verify {
        #[arg(long)]
        max: usize,
    },
    /// Time decoration and embedding for each reachable degree up to `--max` (CSV).
    Bench {
        #[arg(long)]
        max: usize,
    },
    /// Print the Conway polynomial of degree `a`.
    Conway {
        #[arg(short = 'a')]
        a: u32,
        /// Accept the first compatible primitive polynomial instead of the smallest.
        #[arg(long)]
        pseudo: bool,
    },
    /// Write the lattice of reachable degrees up to `--max` with all embeddings.
    Export {
        #[arg(long)]
        max: usize,
        /// Output file; standard output when absent.
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Load and re-validate a lattice file, then check its triangles.
    Import { path: PathBuf },
}

/// Exit status with a message.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConwayUnavailable { .. } | Error::ResourceBound(_) => 3,
            Error::Invariant(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn bad_input(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let p = Prime::new(cli.p)?;
    match &cli.cmd {
        Cmd::Conway { a, pseudo } => conway(cli, p, *a, *pseudo),
        Cmd::Import { path } => {
            let text = fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
            let lat = StdLattice::from_text(&text, cyclo(cli, p)?, cli.seed)?;
            println!("loaded {} fields and {} embeddings", lat.degrees().len(), lat.cached_pairs().len());
            report(cli, &lat)
        }
        cmd => {
            let lat = StdLattice::with_cyclo(cyclo(cli, p)?, cli.seed);
            match cmd {
                Cmd::Stdpoly { l } => stdpoly(cli, &lat, *l),
                Cmd::Embed { l, m, verify } => embed(cli, &lat, *l, *m, *verify),
                Cmd::Verify { max } => {
                    for l in bench::table_degrees(&lat, *max) {
                        lat.add_field(l, None)?;
                    }
                    report(cli, &lat)
                }
                Cmd::Bench { max } => {
                    let degrees = bench::table_degrees(&lat, *max);
                    let mut out = std::io::stdout().lock();
                    writeln!(out, "{}", BenchRow::CSV_HEADER).ok();
                    bench::run(&lat, &degrees, |row| {
                        writeln!(out, "{}", row.to_csv()).ok();
                    })?;
                    Ok(0)
                }
                Cmd::Export { max, out } => export(&lat, *max, out.as_ref()),
                Cmd::Conway { .. } | Cmd::Import { .. } => unreachable!(),
            }
        }
    }
}

fn table(cli: &Cli, p: Prime) -> Result<ConwayTable, Failure> {
    let Some(path) = &cli.conway_table else { return Ok(ConwayTable::builtin(p)) };
    let text = fs::read_to_string(path).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
    let mut t = ConwayTable::parse(&text, p)?;
    if !cli.skip_table_validation {
        t.validate()?;
    }
    t.set_provenance(&path.display().to_string());
    Ok(t)
}

fn cyclo(cli: &Cli, p: Prime) -> Result<CycloLattice, Failure> {
    Ok(CycloLattice::with_table(table(cli, p)?, SearchMode::Conway, cli.work_bound))
}

fn show(cli: &Cli, f: &FpPoly) -> String {
    match cli.format {
        Format::Human => f.to_human(),
        Format::Machine => f.to_machine(),
    }
}

fn conway(cli: &Cli, p: Prime, a: u32, pseudo: bool) -> CmdResult {
    let mut t = table(cli, p)?;
    let mode = if pseudo { SearchMode::Pseudo { seed: cli.seed } } else { SearchMode::Conway };
    let f = t.lookup_or_search(a, mode, cli.work_bound)?;
    println!("{}", show(cli, &f));
    if !t.is_canonical() {
        eprintln!("note: table {} is not canonical", t.provenance());
    }
    Ok(0)
}

fn stdpoly(cli: &Cli, lat: &StdLattice, l: usize) -> CmdResult {
    let d = lat.add_field(l, None)?;
    println!("{}", show(cli, d.standard_poly()));
    Ok(0)
}

fn embed(cli: &Cli, lat: &StdLattice, l: usize, m: usize, verify: bool) -> CmdResult {
    if l == 0 || !m.is_multiple_of(l) {
        return Err(bad_input(format!("{l} does not divide {m}")));
    }
    let (src, dst) = (lat.add_field(l, None)?, lat.add_field(m, None)?);
    let t = lat.image_over_standard_basis(l, m)?;
    match cli.format {
        Format::Human => {
            println!("P_{l} = {}", src.standard_poly().to_human());
            println!("P_{m} = {}", dst.standard_poly().to_human());
            println!("t = {}", t.to_human());
        }
        Format::Machine => {
            println!("{}", src.standard_poly().to_machine());
            println!("{}", dst.standard_poly().to_machine());
            println!("{}", t.padded(m).iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
        }
    }
    if verify {
        let field = ExtField::new(dst.standard_poly().clone())?;
        let mp = FFElem::new(&field, t)?.minimal_polynomial();
        if mp != *src.standard_poly() {
            eprintln!("verification failed: minimal polynomial of t is {}", mp.to_human());
            return Ok(1);
        }
        eprintln!("verified: minimal polynomial of t is P_{l}");
    }
    Ok(0)
}

fn report(cli: &Cli, lat: &StdLattice) -> CmdResult {
    let r = lat.verify_lattice();
    for t in &r.triangles {
        match cli.format {
            Format::Human => {
                let status = if t.passed { "ok" } else { "FAILED" };
                let detail = t.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
                println!("{} | {} | {}: {status}{detail}", t.l, t.m, t.n);
            }
            Format::Machine => println!("{} {} {} {}", t.l, t.m, t.n, u8::from(t.passed)),
        }
    }
    let failed = r.failures().count();
    if cli.format == Format::Human {
        println!("{} triangles, {failed} failed", r.triangles.len());
    }
    Ok(u8::from(failed > 0))
}

fn export(lat: &StdLattice, max: usize, out: Option<&PathBuf>) -> CmdResult {
    let degrees = bench::table_degrees(lat, max);
    for &l in &degrees {
        lat.add_field(l, None)?;
    }
    for &m in &degrees {
        for l in divisors(m as u64).into_iter().map(|d| d as usize).filter(|&d| d < m) {
            lat.get_embedding(l, m)?;
        }
    }
    let text = lat.to_text();
    match out {
        Some(path) => fs::write(path, text).map_err(|e| bad_input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}
