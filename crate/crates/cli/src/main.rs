//! Command-line surface over the sign-vector poset engine: build and export
//! posets, run verification suites, emit vector tables with their closed-form
//! cross-checks, sweep the at-most family for the Sperner property, and dump
//! labeled maximal chains.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage or domain errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use signpost::enumeration::{
    f_d_closed, fh_vectors, flag_f_brute, flag_f_closed, flag_h, flag_h_descents,
    h_series_closed, max_chain_count, maximal_chains, FlagVector,
};
use signpost::export::{flow_json, flow_report_json, poset_dot, poset_json, Table};
use signpost::flows::{flow_p, flow_r, verify_flow, FlowReport};
use signpost::poset::{Family, GradedPoset, LatticeReport};
use signpost::shelling::{atom_order_is_lex, verify_el, ElReport};
use signpost::sperner::{sperner_sweep, whitney};
use signpost::{exec, BigInt};

#[derive(Parser)]
#[command(
    name = "signpost",
    version,
    about = "Exact combinatorics of graded sign-vector posets",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Ground set size.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Sign-change parameter.
    #[arg(long, global = true)]
    l: Option<usize>,

    /// Poset family.
    #[arg(long, global = true, value_enum, default_value_t = FamilyArg::R)]
    family: FamilyArg,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Thread count for the parallel sections (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Override the size guards (also honored: SIGNPOST_FORCE=1).
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a poset and serialize it (JSON schema, DOT diagram, or a text
    /// summary).
    Build,
    /// Run a verification suite and report pass/fail.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
    },
    /// Emit a vector table with enumerated and closed-form columns.
    Vectors {
        #[arg(value_enum)]
        which: VectorKind,
    },
    /// Check the Sperner property of the at-most family for all parameter
    /// pairs up to a bound.
    Sweep {
        /// Largest ground set size to include.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Dump every maximal chain of the bounded exactly-l poset with its
    /// labels and descent positions.
    Chains,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    /// Unique increasing chains and lexicographic minimality on every
    /// closed interval of the bounded poset.
    El,
    /// Normalized flow: rank-wise constant up- and down-sums.
    Flow,
    /// Meets, joins, and distributivity of the bounded poset.
    Lattice,
    /// Cover order by edge label agrees with lexicographic tuple order.
    Atoms,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VectorKind {
    /// Chain counts by length.
    F,
    /// The h-vector.
    H,
    /// Chain counts by rank subset.
    Flagf,
    /// The flag h-vector, Moebius inversion against descent counting.
    Flagh,
    /// Rank sizes.
    Whitney,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Exactly l sign changes.
    R,
    /// At most l sign changes.
    P,
    /// R with adjoined bottom and top.
    #[value(alias = "rhat")]
    RHat,
    /// P with adjoined bottom and top.
    #[value(alias = "phat")]
    PHat,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::R => Family::R,
            FamilyArg::P => Family::P,
            FamilyArg::RHat => Family::RHat,
            FamilyArg::PHat => Family::PHat,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    match exec::with_threads(jobs, || run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Dispatch; `Ok(passed)` distinguishes clean runs from mathematical
/// violations, `Err` marks usage and domain errors.
fn run(cli: Cli) -> Result<bool> {
    let (output, passed) = match &cli.command {
        Command::Build => cmd_build(&cli)?,
        Command::Verify { kind } => cmd_verify(&cli, *kind)?,
        Command::Vectors { which } => cmd_vectors(&cli, *which)?,
        Command::Sweep { n_max } => cmd_sweep(&cli, *n_max)?,
        Command::Chains => cmd_chains(&cli)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, output)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{output}"),
    }
    Ok(passed)
}

fn require_params(cli: &Cli) -> Result<(usize, usize)> {
    let n = cli.n.ok_or_else(|| anyhow!("--n is required"))?;
    let l = cli.l.ok_or_else(|| anyhow!("--l is required"))?;
    Ok((n, l))
}

/// Enforce a size guard unless `--force` (or SIGNPOST_FORCE=1) lifts it.
fn guard(cli: &Cli, what: &str, value: usize, limit: usize) -> Result<()> {
    if value <= limit {
        return Ok(());
    }
    let forced = cli.force
        || std::env::var("SIGNPOST_FORCE").is_ok_and(|v| v == "1" || v == "true");
    if forced {
        eprintln!(
            "warning: {what} = {value} exceeds the default limit {limit}; \
             proceeding under --force, expect a long runtime"
        );
        Ok(())
    } else {
        bail!("{what} = {value} exceeds the default limit {limit} (pass --force to override)")
    }
}

fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON value renders");
    s.push('\n');
    s
}

fn cmd_build(cli: &Cli) -> Result<(String, bool)> {
    let (n, l) = require_params(cli)?;
    let p = GradedPoset::build(n, l, cli.family.into())?;
    let output = match cli.format {
        Format::Json => render_json(&poset_json(&p)),
        Format::Dot => poset_dot(&p),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "family {}, n = {n}, l = {l}", p.family()).unwrap();
            writeln!(s, "elements: {}", p.len()).unwrap();
            writeln!(s, "cover relations: {}", p.edge_count()).unwrap();
            let sizes: Vec<String> = p.rank_sizes().iter().map(usize::to_string).collect();
            writeln!(s, "rank sizes: [{}]", sizes.join(", ")).unwrap();
            let mut t = Table::new("", &["element", "rank", "covered by"]);
            for i in 0..p.len() {
                let ups: Vec<String> = p.covers(i).iter().map(|&j| p.label(j)).collect();
                t.push_row(vec![p.label(i), p.rank(i).to_string(), ups.join(" ")]);
            }
            s.push_str(&t.to_text());
            s
        }
        Format::Csv => bail!("build emits json, dot, or text, not csv"),
    };
    Ok((output, true))
}

fn cmd_verify(cli: &Cli, kind: VerifyKind) -> Result<(String, bool)> {
    let (n, l) = require_params(cli)?;
    match kind {
        VerifyKind::El => {
            guard(cli, "n for interval verification", n, 7)?;
            let report = verify_el(n, l)?;
            let output = match cli.format {
                Format::Json => render_json(&serde_json::to_value(&report)?),
                _ => el_text(&report),
            };
            Ok((output, report.passed))
        }
        VerifyKind::Flow => {
            guard(cli, "n for flow verification", n, 12)?;
            let family: Family = cli.family.into();
            let p = GradedPoset::build(n, l, family.base())?;
            let flow = match family.base() {
                Family::R => flow_r(&p)?,
                _ => flow_p(&p)?,
            };
            let report = verify_flow(&flow);
            let output = match cli.format {
                Format::Json => render_json(&json!({
                    "report": flow_report_json(&report),
                    "flow": flow_json(&flow),
                })),
                _ => flow_text(&report),
            };
            Ok((output, report.passed()))
        }
        VerifyKind::Lattice => {
            guard(cli, "n for lattice verification", n, 7)?;
            let family: Family = cli.family.into();
            let hat = GradedPoset::build(n, l, family.base())?.bounded_extension();
            let report = hat.lattice_report();
            let output = match cli.format {
                Format::Json => render_json(&serde_json::to_value(&report)?),
                _ => lattice_text(&report),
            };
            Ok((output, report.is_lattice))
        }
        VerifyKind::Atoms => {
            guard(cli, "n for atom-order verification", n, 12)?;
            let ok = atom_order_is_lex(n, l)?;
            let output = match cli.format {
                Format::Json => render_json(&json!({"n": n, "l": l, "atom_order_lex": ok})),
                _ => format!("cover order by label matches lexicographic tuple order: {ok}\n"),
            };
            Ok((output, ok))
        }
    }
}

fn el_text(report: &ElReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "closed intervals checked: {} (cases {}/{}/{}/{})",
        report.intervals,
        report.case_counts[0],
        report.case_counts[1],
        report.case_counts[2],
        report.case_counts[3]
    )
    .unwrap();
    for v in &report.violations {
        writeln!(s, "violation in [{}, {}] (case {}): {}", v.x, v.y, v.case, v.reason).unwrap();
    }
    writeln!(s, "passed: {}", report.passed).unwrap();
    s
}

fn flow_text(report: &FlowReport) -> String {
    let mut s = String::new();
    writeln!(s, "family {}, n = {}, l = {}", report.family, report.n, report.l).unwrap();
    writeln!(s, "nonnegative weights: {}", report.nonnegative).unwrap();
    writeln!(s, "constant up-sums per rank: {}", report.nf1).unwrap();
    for (r, sum) in &report.up_sums {
        writeln!(s, "  rank {r}: up-sum {sum}").unwrap();
    }
    writeln!(s, "constant down-sums per rank: {}", report.nf2).unwrap();
    for (r, sum) in &report.down_sums {
        writeln!(s, "  rank {r}: down-sum {sum}").unwrap();
    }
    writeln!(s, "matches the family formulas: {}", report.matches_family_formula).unwrap();
    for v in &report.violations {
        writeln!(s, "violation: {v}").unwrap();
    }
    writeln!(s, "passed: {}", report.passed()).unwrap();
    s
}

fn lattice_text(report: &LatticeReport) -> String {
    let mut s = String::new();
    writeln!(s, "lattice: {}", report.is_lattice).unwrap();
    writeln!(s, "distributive: {}", report.is_distributive).unwrap();
    if let Some((a, b)) = &report.meet_witness {
        writeln!(s, "no meet: {a}, {b}").unwrap();
    }
    if let Some((a, b)) = &report.join_witness {
        writeln!(s, "no join: {a}, {b}").unwrap();
    }
    if let Some((x, y, z)) = &report.distributivity_witness {
        writeln!(s, "distributivity fails at: {x}, {y}, {z}").unwrap();
    }
    s
}

fn set_string(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn cmd_vectors(cli: &Cli, which: VectorKind) -> Result<(String, bool)> {
    let (n, l) = require_params(cli)?;
    guard(cli, "n for vector tables", n, 12)?;
    if cli.format == Format::Dot {
        bail!("vector tables emit text, csv, or json, not dot");
    }

    // Each variant fills a table whose last column flags agreement between
    // the enumerated and closed-form routes.
    let mut all_equal = true;
    let mut flag_sets: Vec<(Vec<usize>, BigInt, BigInt)> = Vec::new();
    let table = match which {
        VectorKind::F => {
            let p = GradedPoset::build(n, l, Family::R)?;
            let (f, _) = fh_vectors(&p)?;
            let mut t = Table::new(
                format!("chain counts by length, n = {n}, l = {l}"),
                &["d", "enumerated", "closed", "equal"],
            );
            for d in 0..=n - l {
                let enumerated = f.coeff(d);
                let closed = if d == 0 { BigInt::from(1) } else { f_d_closed(n, l, d - 1)? };
                let equal = enumerated == closed;
                all_equal &= equal;
                t.push_row(vec![
                    d.to_string(),
                    enumerated.to_string(),
                    closed.to_string(),
                    equal.to_string(),
                ]);
            }
            t
        }
        VectorKind::H => {
            let p = GradedPoset::build(n, l, Family::R)?;
            let (_, h) = fh_vectors(&p)?;
            let closed = h_series_closed(n, l)?;
            let mut t = Table::new(
                format!("h-vector, n = {n}, l = {l}"),
                &["d", "enumerated", "closed", "equal"],
            );
            for d in 0..=n - l {
                let equal = h.coeff(d) == closed.coeff(d);
                all_equal &= equal;
                t.push_row(vec![
                    d.to_string(),
                    h.coeff(d).to_string(),
                    closed.coeff(d).to_string(),
                    equal.to_string(),
                ]);
            }
            t
        }
        VectorKind::Flagf => {
            let p = GradedPoset::build(n, l, Family::R)?;
            let alpha = flag_f_brute(&p)?;
            let mut t = Table::new(
                format!("flag chain counts, n = {n}, l = {l}"),
                &["set", "enumerated", "closed", "equal"],
            );
            for (mask, value) in alpha.iter() {
                let set = FlagVector::set_of(mask);
                let closed = flag_f_closed(n, l, &set)?;
                let equal = value == &closed;
                all_equal &= equal;
                t.push_row(vec![
                    set_string(&set),
                    value.to_string(),
                    closed.to_string(),
                    equal.to_string(),
                ]);
                flag_sets.push((set, value.clone(), closed));
            }
            t
        }
        VectorKind::Flagh => {
            let p = GradedPoset::build(n, l, Family::R)?;
            let moebius = flag_h(&flag_f_brute(&p)?);
            let descents = flag_h_descents(n, l)?;
            let mut t = Table::new(
                format!("flag h-vector, n = {n}, l = {l}"),
                &["set", "moebius", "descents", "equal"],
            );
            for (mask, value) in moebius.iter() {
                let set = FlagVector::set_of(mask);
                let other = descents.get(mask);
                let equal = value == other;
                all_equal &= equal;
                t.push_row(vec![
                    set_string(&set),
                    value.to_string(),
                    other.to_string(),
                    equal.to_string(),
                ]);
                flag_sets.push((set, value.clone(), other.clone()));
            }
            t
        }
        VectorKind::Whitney => {
            let family: Family = cli.family.into();
            let p = GradedPoset::build(n, l, family.base())?;
            let closed = whitney(n, l, family.base())?;
            let counted = p.rank_sizes();
            let mut t = Table::new(
                format!("rank sizes of family {}, n = {n}, l = {l}", family.base()),
                &["r", "enumerated", "closed", "equal"],
            );
            for (i, w) in closed.iter().enumerate() {
                let enumerated = BigInt::from(counted[i]);
                let equal = &enumerated == w;
                all_equal &= equal;
                t.push_row(vec![
                    (p.min_rank() + i).to_string(),
                    enumerated.to_string(),
                    w.to_string(),
                    equal.to_string(),
                ]);
            }
            t
        }
    };

    let output = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json if !flag_sets.is_empty() => {
            // Flag tables carry their subsets as real arrays in JSON.
            let (enum_col, closed_col) = match which {
                VectorKind::Flagh => ("moebius", "descents"),
                _ => ("enumerated", "closed"),
            };
            let rows: Vec<Value> = flag_sets
                .iter()
                .map(|(set, a, b)| {
                    json!({
                        "set": set,
                        enum_col: a.to_string(),
                        closed_col: b.to_string(),
                        "equal": a == b,
                    })
                })
                .collect();
            render_json(&json!({
                "title": table.title,
                "n": n,
                "l": l,
                "rows": rows,
            }))
        }
        Format::Json => render_json(&table.to_json()),
        _ => table.to_text(),
    };
    Ok((output, all_equal))
}

fn cmd_sweep(cli: &Cli, n_max: usize) -> Result<(String, bool)> {
    guard(cli, "n_max for the Sperner sweep", n_max, 9)?;
    if cli.format == Format::Dot {
        bail!("sweep emits text, csv, or json, not dot");
    }
    let table = sperner_sweep(n_max)?;
    let passed = table.all_sperner();
    let output = match cli.format {
        Format::Json => render_json(&serde_json::to_value(&table)?),
        Format::Csv => table.to_csv(),
        _ => {
            let mut t = Table::new(
                format!("Sperner sweep of the at-most family, n <= {n_max}"),
                &["n", "l", "elements", "max antichain", "max rank size", "sperner"],
            );
            for row in &table.rows {
                t.push_row(vec![
                    row.n.to_string(),
                    row.l.to_string(),
                    row.elements.to_string(),
                    row.max_antichain.to_string(),
                    row.max_rank_size.to_string(),
                    row.sperner.to_string(),
                ]);
            }
            let mut s = t.to_text();
            writeln!(s, "all Sperner: {passed}").unwrap();
            s
        }
    };
    Ok((output, passed))
}

fn cmd_chains(cli: &Cli) -> Result<(String, bool)> {
    let (n, l) = require_params(cli)?;
    guard(cli, "n for chain enumeration", n, 7)?;
    if cli.format == Format::Dot {
        bail!("chains emit text, csv, or json, not dot");
    }
    let hat = GradedPoset::build(n, l, Family::RHat)?;
    let chains = maximal_chains(&hat)?;
    // The dump doubles as a count check against the closed formula.
    let expected = max_chain_count(n, l)?;
    let count_ok = BigInt::from(chains.len()) == expected;

    let output = match cli.format {
        Format::Json => {
            let rows: Vec<Value> = chains
                .iter()
                .map(|c| {
                    json!({
                        "elements": c.elements.iter().map(|&i| hat.label(i)).collect::<Vec<_>>(),
                        "labels": c.labels.iter().map(|lab| lab.to_string()).collect::<Vec<_>>(),
                        "descents": c.descent_set(),
                    })
                })
                .collect();
            render_json(&json!({
                "n": n,
                "l": l,
                "count": chains.len(),
                "count_formula": expected.to_string(),
                "chains": rows,
            }))
        }
        _ => {
            let mut t = Table::new(
                format!("maximal chains, n = {n}, l = {l} ({} total)", chains.len()),
                &["chain", "labels", "descents"],
            );
            for c in &chains {
                let elements: Vec<String> =
                    c.elements.iter().map(|&i| hat.label(i)).collect();
                let labels: Vec<String> = c.labels.iter().map(ToString::to_string).collect();
                t.push_row(vec![
                    elements.join(" < "),
                    labels.join(" "),
                    set_string(&c.descent_set()),
                ]);
            }
            match cli.format {
                Format::Csv => t.to_csv(),
                _ => t.to_text(),
            }
        }
    };
    Ok((output, count_ok))
}
