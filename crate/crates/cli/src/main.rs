//! Batch front end for the convfam library.
//!
//! Exit codes: 0 = success/verified, 1 = identity violated, 2 = input
//! error (bad arguments, unreadable or malformed files), 3 = library
//! precondition error (surfaced verbatim).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use convfam::convolution::{
    builtin_psi, check_convolution, check_multinomial, check_weak_convolution, family_from_psi,
    recover_psi, IdentityCheck, PolyFamily, Psi, RecoveredPsi, CATALOG_KEYS,
};
use convfam::pascal::{
    check_matrix_identity, classify_corollary4, classify_nogo, column_interpolation_bridge,
    matrices_from_spec, recover_spec as recover_matrix_spec, riordan_array, Corollary4,
    MatrixBlock, MatrixCheck, RowSeriesSpec,
};
use convfam::sheffer::{
    check_generalized_convolution, recover_spec as recover_sheffer_spec, FamilyTriple,
};
use convfam::{Rational, TruncSeries};

#[derive(Parser)]
#[command(
    name = "convfam",
    version,
    about = "Exact toolkit for convolution families, Sheffer-type triples, and Pascal-like matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Convolution,
    Weak,
    Multinomial,
    Generalized,
    Matrix,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecomposeKind {
    Psi,
    Sheffer,
    Matrix,
    Nogo,
    Corollary4,
}

#[derive(Subcommand)]
enum Command {
    /// Build a convolution family from Ψ (a catalog key or a series JSON
    /// file) and print it with its integer-evaluation table
    Family {
        /// catalog key (binomial, falling-factorial, rising-factorial,
        /// bell) or path to a Ψ series JSON file
        source: String,
        /// family order N: entries f_0 .. f_N
        order: usize,
        /// write the output here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// emit only the JSON document or only the TSV table
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check one of the exact identities on input files
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        /// a family file (convolution/weak/multinomial), a triple file
        /// (generalized), or one or three block files (matrix)
        inputs: Vec<PathBuf>,
        /// number of variables for the multinomial identity
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// cap the checked order (defaults to the input's own order)
        #[arg(long)]
        order: Option<usize>,
    },
    /// Recover the generating data behind a family, triple, or block triple
    Decompose {
        #[arg(value_enum)]
        kind: DecomposeKind,
        /// a family file (psi), a triple file (sheffer), three block files
        /// (matrix, corollary4), or one block file (nogo)
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the A, B, C blocks from a row-series spec file
    Matrix {
        spec: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Build a wide-sense Riordan array from series files f and h
    Riordan {
        f: PathBuf,
        h: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Interpolate matrix columns by family polynomials (needs h(0) = 1)
    /// and verify the correspondence
    Bridge {
        spec: PathBuf,
        /// highest column index n_max
        #[arg(long)]
        order: usize,
        /// highest row index i_max (defaults to --order)
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in Ψ catalog with first family entries
    Examples,
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn library_error(err: impl std::fmt::Display) -> Failure {
    Failure {
        code: 3,
        message: err.to_string(),
    }
}

fn violation(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    // restore default SIGPIPE handling so `convfam ... | head` exits quietly
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if failure.code == 1 {
                println!("{}", failure.message);
            } else {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| input_error(format!("cannot parse {}: {e}", path.display())))
}

fn emit(payload: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, payload.as_bytes())
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{payload}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("library types serialize infallibly")
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Family {
            source,
            order,
            out,
            format,
        } => cmd_family(&source, order, &out, format),
        Command::Verify {
            kind,
            inputs,
            m,
            order,
        } => cmd_verify(kind, &inputs, m, order),
        Command::Decompose { kind, inputs, out } => cmd_decompose(kind, &inputs, &out),
        Command::Matrix {
            spec,
            rows,
            cols,
            out,
            format,
        } => cmd_matrix(&spec, rows, cols, &out, format),
        Command::Riordan {
            f,
            h,
            rows,
            cols,
            out,
            format,
        } => cmd_riordan(&f, &h, rows, cols, &out, format),
        Command::Bridge {
            spec,
            order,
            rows,
            out,
        } => cmd_bridge(&spec, order, rows, &out),
        Command::Examples => cmd_examples(),
    }
}

fn load_psi(source: &str, order: usize) -> Result<Psi, Failure> {
    if CATALOG_KEYS.contains(&source) {
        return builtin_psi(source, order).map_err(library_error);
    }
    read_json(Path::new(source))
}

/// The Pascal-style table: row n lists f_n(i) for i = 0..=order.
fn family_table(fam: &PolyFamily) -> String {
    let points: Vec<Rational> = (0..=fam.order())
        .map(|i| Rational::from_int(i as i64))
        .collect();
    fam.entries()
        .iter()
        .map(|entry| {
            points
                .iter()
                .map(|p| entry.eval(p).to_string())
                .collect::<Vec<_>>()
                .join("\t")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_family(
    source: &str,
    order: usize,
    out: &Option<PathBuf>,
    format: Option<Format>,
) -> Result<(), Failure> {
    let psi = load_psi(source, order)?;
    let fam = family_from_psi(&psi, order).map_err(library_error)?;
    let payload = match format {
        Some(Format::Json) => to_json(&fam),
        Some(Format::Tsv) => family_table(&fam),
        None => format!("{}\n\n{}", to_json(&fam), family_table(&fam)),
    };
    emit(&payload, out)
}

fn expect_arity(inputs: &[PathBuf], allowed: &[usize], what: &str) -> Result<(), Failure> {
    if !allowed.contains(&inputs.len()) {
        return Err(input_error(format!(
            "{what} (got {} input files)",
            inputs.len()
        )));
    }
    Ok(())
}

/// Reads one block file, or three; a single file is used for all of A, B, C.
fn load_block_triple(
    inputs: &[PathBuf],
) -> Result<(MatrixBlock, MatrixBlock, MatrixBlock), Failure> {
    if inputs.len() == 1 {
        let l: MatrixBlock = read_json(&inputs[0])?;
        Ok((l.clone(), l.clone(), l))
    } else {
        Ok((
            read_json(&inputs[0])?,
            read_json(&inputs[1])?,
            read_json(&inputs[2])?,
        ))
    }
}

fn report_family_check(name: &str, check: &IdentityCheck) -> Result<(), Failure> {
    match check {
        IdentityCheck::Verified { order } => {
            println!("verified: {name} identity holds up to order {order}");
            Ok(())
        }
        IdentityCheck::Violated { n } => Err(violation(format!(
            "FAILED: {name} identity violated at n = {n}"
        ))),
    }
}

fn cmd_verify(
    kind: VerifyKind,
    inputs: &[PathBuf],
    m: usize,
    order: Option<usize>,
) -> Result<(), Failure> {
    // --order caps the checked range; never extends it
    let cap = |own: usize| order.map_or(own, |o| o.min(own));
    match kind {
        VerifyKind::Convolution => {
            expect_arity(inputs, &[1], "verify convolution takes one family file")?;
            let fam: PolyFamily = read_json(&inputs[0])?;
            let fam = fam.truncated(cap(fam.order()));
            report_family_check("convolution", &check_convolution(&fam))
        }
        VerifyKind::Weak => {
            expect_arity(inputs, &[1], "verify weak takes one family file")?;
            let fam: PolyFamily = read_json(&inputs[0])?;
            let fam = fam.truncated(cap(fam.order()));
            report_family_check("weak convolution", &check_weak_convolution(&fam))
        }
        VerifyKind::Multinomial => {
            expect_arity(inputs, &[1], "verify multinomial takes one family file")?;
            if m < 1 {
                return Err(input_error("--m must be at least 1"));
            }
            let fam: PolyFamily = read_json(&inputs[0])?;
            let n_max = cap(fam.order());
            report_family_check(
                &format!("multinomial (m = {m})"),
                &check_multinomial(&fam, m, n_max),
            )
        }
        VerifyKind::Generalized => {
            expect_arity(inputs, &[1], "verify generalized takes one triple file")?;
            let triple: FamilyTriple = read_json(&inputs[0])?;
            let triple = triple.truncated(cap(triple.order()));
            report_family_check(
                "generalized convolution",
                &check_generalized_convolution(&triple),
            )
        }
        VerifyKind::Matrix => {
            expect_arity(
                inputs,
                &[1, 3],
                "verify matrix takes one or three block files",
            )?;
            let (a, b, c) = load_block_triple(inputs)?;
            // --order caps the checked column index by dropping columns
            let capped = |m: &MatrixBlock| match order {
                Some(o) if o + 1 < m.cols() => {
                    MatrixBlock::from_fn(m.rows(), o + 1, |i, j| m.entry(i, j).clone())
                }
                _ => m.clone(),
            };
            let (a, b, c) = (capped(&a), capped(&b), capped(&c));
            match check_matrix_identity(&a, &b, &c) {
                MatrixCheck::Verified {
                    max_row_sum,
                    max_col,
                } => {
                    println!(
                        "verified: matrix identity holds for i+l <= {max_row_sum}, n <= {max_col}"
                    );
                    Ok(())
                }
                MatrixCheck::Violated { i, l, n } => Err(violation(format!(
                    "FAILED: matrix identity violated at (i, l, n) = ({i}, {l}, {n})"
                ))),
            }
        }
    }
}

fn cmd_decompose(
    kind: DecomposeKind,
    inputs: &[PathBuf],
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let payload = match kind {
        DecomposeKind::Psi => {
            expect_arity(inputs, &[1], "decompose psi takes one family file")?;
            let fam: PolyFamily = read_json(&inputs[0])?;
            match recover_psi(&fam).map_err(library_error)? {
                RecoveredPsi::Psi(psi) => to_json(&psi),
                RecoveredPsi::ZeroFamily => to_json(&json!({ "zero_family": true })),
            }
        }
        DecomposeKind::Sheffer => {
            expect_arity(inputs, &[1], "decompose sheffer takes one triple file")?;
            let triple: FamilyTriple = read_json(&inputs[0])?;
            to_json(&recover_sheffer_spec(&triple).map_err(library_error)?)
        }
        DecomposeKind::Matrix => {
            expect_arity(inputs, &[3], "decompose matrix takes three block files")?;
            let (a, b, c) = load_block_triple(inputs)?;
            to_json(&recover_matrix_spec(&a, &b, &c).map_err(library_error)?)
        }
        DecomposeKind::Nogo => {
            expect_arity(inputs, &[1], "decompose nogo takes one block file")?;
            let l: MatrixBlock = read_json(&inputs[0])?;
            to_json(&classify_nogo(&l).map_err(library_error)?)
        }
        DecomposeKind::Corollary4 => {
            expect_arity(inputs, &[3], "decompose corollary4 takes three block files")?;
            let (a, b, c) = load_block_triple(inputs)?;
            match classify_corollary4(&a, &b, &c).map_err(library_error)? {
                Corollary4::PowerRows { alpha, beta, h } => to_json(&json!({
                    "alpha": alpha,
                    "beta": beta,
                    "h": h,
                })),
                Corollary4::RescaledPascal {
                    alpha,
                    beta,
                    kappa,
                    lambda,
                } => to_json(&json!({
                    "alpha": alpha,
                    "beta": beta,
                    "kappa": kappa,
                    "lambda": lambda,
                })),
            }
        }
    };
    emit(&payload, out)
}

fn cmd_matrix(
    spec_path: &Path,
    rows: usize,
    cols: usize,
    out: &Option<PathBuf>,
    format: Option<Format>,
) -> Result<(), Failure> {
    let spec: RowSeriesSpec = read_json(spec_path)?;
    let (a, b, c) = matrices_from_spec(&spec, rows, cols).map_err(library_error)?;
    let payload = match format {
        Some(Format::Tsv) => format!("{}\n\n{}\n\n{}", a.to_tsv(), b.to_tsv(), c.to_tsv()),
        _ => to_json(&json!({ "A": a, "B": b, "C": c })),
    };
    emit(&payload, out)
}

fn cmd_riordan(
    f_path: &Path,
    h_path: &Path,
    rows: usize,
    cols: usize,
    out: &Option<PathBuf>,
    format: Option<Format>,
) -> Result<(), Failure> {
    let f: TruncSeries<Rational> = read_json(f_path)?;
    let h: TruncSeries<Rational> = read_json(h_path)?;
    let block = riordan_array(&f, &h, rows, cols).map_err(library_error)?;
    let payload = match format {
        Some(Format::Tsv) => block.to_tsv(),
        _ => to_json(&block),
    };
    emit(&payload, out)
}

fn cmd_bridge(
    spec_path: &Path,
    order: usize,
    rows: Option<usize>,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let spec: RowSeriesSpec = read_json(spec_path)?;
    let i_max = rows.unwrap_or(order);
    let report = column_interpolation_bridge(&spec, order, i_max).map_err(library_error)?;
    println!(
        "bridge verified: f_n(i) = A[i][n], g_n(i) = B[i][n], h_n(i) = C[i][n] \
         for 0 <= i <= {}, 0 <= n <= {}",
        report.i_max, report.n_max
    );
    emit(&to_json(&report.interpolants), out)
}

fn cmd_examples() -> Result<(), Failure> {
    for key in CATALOG_KEYS {
        let psi = builtin_psi(key, 4).expect("catalog keys are valid");
        let fam = family_from_psi(&psi, 3).expect("order 3 <= psi order");
        println!("{key}");
        println!("  psi(t) = {}", psi.series().to_pretty("t"));
        let entries: Vec<String> = fam.entries().iter().map(|p| p.to_string()).collect();
        println!("  f_n:          {}", entries.join(",  "));
        let rescaled: Vec<String> = fam
            .entries()
            .iter()
            .enumerate()
            .map(|(n, p)| p.scale(&Rational::factorial(n)).to_string())
            .collect();
        println!("  F_n = n!*f_n: {}", rescaled.join(",  "));
    }
    println!("use `convfam family <key> <order>` to expand any of these further");
    Ok(())
}
