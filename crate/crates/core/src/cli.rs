//! The `k3sig` command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success |
//! | 1    | a verification failed (table mismatch, unequal classes) |
//! | 2    | input rejected (not well-formed, not quasismooth, not du Val, bound violated) |
//! | 64   | usage error |
//! | 65   | malformed catalog data |
//! | 66   | catalog file cannot be opened |

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ade::{form_signature, is_negative_definite, plumbing_form, AdeType};
use crate::basket::Basket;
use crate::bsy::{bsy_check, novikov_assembly, sigma_k3, KawamataDiagram};
use crate::catalog::{self, load_catalog, verify_row, CatalogRow};
use crate::search::{self, K3Family, DEFAULT_MAX_WEIGHT, STABILIZE_STEP};
use crate::wps::{self, HypersurfaceFamily};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_REJECTED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATAERR: u8 = 65;
pub const EXIT_NOINPUT: u8 = 66;

/// Environment variable naming the default catalog for `table verify`.
pub const CATALOG_ENV: &str = "K3SIG_CATALOG";

#[derive(Debug, Parser)]
#[command(name = "k3sig", version, about = "Signatures and L-classes of du Val K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Singularity basket and signature of a general X_d ⊂ P(a0,a1,a2,a3).
    Basket {
        #[arg(num_args = 4, required = true, value_name = "WEIGHT")]
        weights: Vec<u64>,
        /// Degree; defaults to the sum of the weights.
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Signature of a surface with trivial canonical class from its basket.
    Sigma {
        /// Basket tokens such as `A_1 3A_2`; omit for a smooth surface.
        #[arg(value_name = "TOKEN")]
        basket: Vec<String>,
        /// Irregularity q(F).
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
        q: u8,
    },
    /// Plumbing intersection form of an ADE configuration.
    Plumbing {
        #[arg(value_name = "TYPE")]
        ade: String,
        /// Euler number of every disc bundle.
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        euler: i64,
    },
    /// Catalog operations.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Compare T_1*(X) and L_*(X) for a 3-fold covered by F × E.
    Bsy {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        q: u8,
        /// Basket of the surface fiber (q = 1 only).
        #[arg(long, default_value = "")]
        basket: String,
        /// Degree of the cover F × E → X.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
    },
    /// Enumerate K3 hypersurfaces X_d ⊂ P(a0,...,a3) with d = Σ a_i.
    Search {
        /// Keep only families of this signature.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_MAX_WEIGHT)]
        max_weight: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Raise the weight bound until the family count stops changing.
        #[arg(long)]
        stabilize: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum TableAction {
    /// Recompute every row of a catalog.
    Verify {
        /// Catalog file; defaults to $K3SIG_CATALOG, then the embedded table.
        #[arg(long)]
        catalog: Option<std::path::PathBuf>,
    },
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Basket {
            weights,
            degree,
            format,
        } => cmd_basket(&weights, degree, format, out, err),
        Command::Sigma { basket, q } => cmd_sigma(&basket.join(" "), q, out, err),
        Command::Plumbing { ade, euler } => cmd_plumbing(&ade, euler, out, err),
        Command::Table {
            action: TableAction::Verify { catalog },
        } => cmd_table_verify(catalog, out, err),
        Command::Bsy { q, basket, degree } => cmd_bsy(q, &basket, degree, out, err),
        Command::Search {
            target,
            max_weight,
            jobs,
            stabilize,
            format,
        } => cmd_search(target, max_weight, jobs, stabilize, format, out),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "k3sig: i/o error: {e}");
        EXIT_CHECK_FAILED
    })
}

type CmdResult = std::io::Result<u8>;

fn cmd_basket(
    weights: &[u64],
    degree: Option<u64>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let Ok(weights): Result<[u64; 4], _> = weights.to_vec().try_into() else {
        writeln!(err, "k3sig: expected exactly 4 weights")?;
        return Ok(EXIT_USAGE);
    };
    let degree = degree.unwrap_or_else(|| weights.iter().sum());
    let family = match HypersurfaceFamily::new(weights, degree) {
        Ok(f) => f,
        Err(e) => {
            writeln!(err, "k3sig: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let basket = match wps::basket(&family) {
        Ok(b) => b,
        Err(e) => {
            writeln!(err, "rejected: {e}")?;
            return Ok(EXIT_REJECTED);
        }
    };
    if !family.is_canonical_trivial() {
        writeln!(out, "{family}: {basket}")?;
        writeln!(
            err,
            "rejected: {family} is not a K3 family (degree {} ≠ {})",
            family.degree,
            family.weights.sum()
        )?;
        return Ok(EXIT_REJECTED);
    }
    let sigma = match sigma_k3(&basket, 0) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "rejected: {e}")?;
            return Ok(EXIT_REJECTED);
        }
    };
    match format {
        Format::Text => {
            writeln!(out, "{family}")?;
            writeln!(out, "basket: {basket}")?;
            writeln!(out, "σ = {sigma}")?;
        }
        Format::Tsv => writeln!(out, "{}", CatalogRow::from_family(&family, basket, sigma).to_line())?,
    }
    Ok(EXIT_OK)
}

fn cmd_sigma(tokens: &str, q: u8, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let basket = match Basket::parse_tokens(tokens) {
        Ok(b) => b,
        Err(e) => {
            writeln!(err, "k3sig: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let sigma = match sigma_k3(&basket, q) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "rejected: {e}")?;
            return Ok(EXIT_REJECTED);
        }
    };
    writeln!(out, "basket: {basket}")?;
    writeln!(out, "Σ d_i = {}", basket.total_d())?;
    if q == 0 {
        let n = novikov_assembly(&basket).expect("bound already checked");
        let tubes: Vec<String> = n.tube_signatures.iter().map(i64::to_string).collect();
        writeln!(out, "σ(F_0) = {}", n.sigma_resolution)?;
        writeln!(out, "tube signatures: [{}]", tubes.join(", "))?;
        writeln!(out, "σ(M, ∂M) = {}", n.sigma_complement)?;
    }
    writeln!(out, "σ = {sigma}")?;
    Ok(EXIT_OK)
}

fn cmd_plumbing(token: &str, euler: i64, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let t: AdeType = match token.parse() {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "k3sig: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let n = t.dynkin_graph().vertex_count();
    let graph = t
        .dynkin_graph()
        .with_euler_weights(vec![euler; n])
        .expect("weight count matches");
    let form = plumbing_form(&graph);
    let sig = form_signature(&form);
    writeln!(out, "plumbing form of {t} (Euler number {euler}):")?;
    write!(out, "{form}")?;
    writeln!(out, "inertia: {sig}")?;
    writeln!(out, "negative definite: {}", is_negative_definite(&form))?;
    Ok(EXIT_OK)
}

fn cmd_table_verify(
    path: Option<std::path::PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let path = path.or_else(|| std::env::var_os(CATALOG_ENV).map(Into::into));
    let text = match &path {
        Some(p) => match std::fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => {
                writeln!(err, "k3sig: cannot open {}: {e}", p.display())?;
                return Ok(EXIT_NOINPUT);
            }
        },
        None => catalog::EMBEDDED_CATALOG.to_string(),
    };
    let rows = match load_catalog(&text) {
        Ok(rows) => rows,
        Err(e) => {
            writeln!(err, "k3sig: catalog error: {e}")?;
            return Ok(EXIT_DATAERR);
        }
    };
    let mut passed = 0;
    for row in &rows {
        let report = verify_row(row);
        if report.passed() {
            passed += 1;
        }
        writeln!(out, "{report}")?;
    }
    writeln!(out, "{passed}/{} rows pass", rows.len())?;
    Ok(if passed == rows.len() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_bsy(q: u8, tokens: &str, degree: u32, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let basket = match Basket::parse_tokens(tokens) {
        Ok(b) => b,
        Err(e) => {
            writeln!(err, "k3sig: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let diagram = if q == 1 {
        KawamataDiagram::with_k3_fiber(basket, degree)
    } else if basket.is_empty() {
        KawamataDiagram::for_irregularity(q, degree)
    } else {
        writeln!(err, "k3sig: --basket only applies to q = 1")?;
        return Ok(EXIT_USAGE);
    };
    let report = match diagram.and_then(|k| bsy_check(&k)) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "rejected: {e}")?;
            return Ok(EXIT_REJECTED);
        }
    };
    writeln!(out, "{report}")?;
    Ok(if report.equal {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn format_set(set: &BTreeSet<i64>) -> String {
    let items: Vec<String> = set.iter().map(i64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_search(
    target: Option<i64>,
    max_weight: u64,
    jobs: usize,
    stabilize: bool,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let (bound, note, families) = if stabilize {
        let s = search::stabilize(max_weight, STABILIZE_STEP, jobs);
        let note = format!(
            "stabilized at max weight {} (count unchanged through {})",
            s.max_weight, s.checked_up_to
        );
        (s.max_weight, Some(note), s.families)
    } else {
        (max_weight, None, search::enumerate_k3_hypersurfaces(max_weight, jobs))
    };
    let all_sigmas = search::realized(&families);
    let selected: Vec<K3Family> = match target {
        Some(t) => families.into_iter().filter(|f| f.sigma == t).collect(),
        None => families,
    };
    let prefix = match format {
        Format::Text => "",
        Format::Tsv => "# ",
    };
    for f in &selected {
        match format {
            Format::Text => writeln!(out, "{}  {}  σ = {}", f.family, f.basket, f.sigma)?,
            Format::Tsv => writeln!(out, "{}", f.to_row().to_line())?,
        }
    }
    if let Some(note) = note {
        writeln!(out, "{prefix}{note}")?;
    }
    match target {
        Some(t) => {
            writeln!(
                out,
                "{prefix}{} families with σ = {t} among hypersurfaces with max weight ≤ {bound}",
                selected.len()
            )?;
            if selected.is_empty() {
                writeln!(
                    out,
                    "{prefix}not realized by these hypersurfaces; other codimensions and larger weights are not covered"
                )?;
            }
        }
        None => {
            writeln!(out, "{prefix}{} families with max weight ≤ {bound}", selected.len())?;
        }
    }
    writeln!(out, "{prefix}realized signatures: {}", format_set(&all_sigmas))?;
    Ok(EXIT_OK)
}
