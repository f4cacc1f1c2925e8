//! `garside`: normal forms, coset transversals, coset automata and growth
//! series from the command line.

mod expr;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use garside::providers::{structure_from_selector, validate_table};
use garside::{
    make_parabolic, parabolic_by_name, rational_series, transfer_counts, Budget, Element, Error, GarsideTable,
    NormalFormView, ParabolicData, SimpleId, ViewKind,
};

#[derive(Parser, Debug)]
#[command(name = "garside", version, about = "Garside groups, parabolic cosets and coset growth")]
struct Cli {
    /// `braid:n`, `dihedral:m`, `abelian:n` or `file:<path>`.
    #[arg(long, global = true, default_value = "braid:3")]
    structure: String,

    /// Name of the simple element delta selecting the parabolic subgroup.
    #[arg(long, global = true)]
    parabolic: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the table axioms and the parabolic selection.
    Validate,
    /// Print every normal form of an element.
    Nf { expr: String },
    /// The transversal representative of the coset of an element.
    CosetRep { expr: String },
    /// The minimal length in the coset of an element.
    CosetLength { expr: String },
    /// Write the coset automaton as Graphviz or as a transition listing.
    Automaton {
        #[arg(long, conflicts_with = "table")]
        dot: bool,
        #[arg(long)]
        table: bool,
        /// Output path, `-` for stdout.
        out: PathBuf,
    },
    /// Coset growth coefficients `n,e(n)`.
    Growth {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// The rational coset growth series.
    Series,
    /// Projection of an element onto the parabolic subgroup.
    Project { expr: String },
    /// Fellow projection audit over short elements.
    AuditFellow {
        #[arg(long)]
        max_len: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Certificate that projections onto the subgroup are unbounded.
    UnboundedWitness {
        #[arg(long)]
        k: u64,
    },
    /// Compare the algorithms against the brute-force oracle.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: verify::Level,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::BudgetExceeded(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure { code: 1, message: e.to_string() }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parabolic<'t>(cli: &Cli, t: &'t GarsideTable) -> Result<ParabolicData<'t>, Failure> {
    let name = cli.parabolic.as_deref().ok_or_else(|| fail("this command needs --parabolic <simple-name>"))?;
    Ok(parabolic_by_name(t, name)?)
}

fn write_out(path: &PathBuf, text: &str) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        return Ok(text.to_string());
    }
    fs::write(path, text)?;
    Ok(String::new())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let t = structure_from_selector(&cli.structure)?;
    let mut budget = Budget::from_env();
    let mut out = String::new();
    match &cli.command {
        Command::Validate => {
            let violations = validate_table(&t);
            if !violations.is_empty() {
                let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                return Err(fail(format!("table {}: {} violations\n{}", t.name(), violations.len(), lines.join("\n"))));
            }
            out.push_str(&format!("table {}: ok, {} simples, Delta = {}\n", t.name(), t.len(), t.simple_name(t.delta())));
            match &cli.parabolic {
                Some(_) => {
                    let p = parabolic(cli, &t)?;
                    out.push_str(&describe_parabolic(&t, &p));
                }
                None => {
                    for u in t.generators() {
                        if let Ok(p) = make_parabolic(&t, u) {
                            out.push_str(&describe_parabolic(&t, &p));
                        }
                    }
                }
            }
        }
        Command::Nf { expr } => {
            let x = expr::parse_element(&t, expr)?;
            out.push_str(&normal_forms(&t, &x));
        }
        Command::CosetRep { expr } => {
            let p = parabolic(cli, &t)?;
            let key = p.coset_representative(&expr::parse_element(&t, expr)?)?;
            out.push_str(&format!("{}\n", t.format_element(&key.rep)));
        }
        Command::CosetLength { expr } => {
            let p = parabolic(cli, &t)?;
            out.push_str(&format!("{}\n", p.coset_length(&expr::parse_element(&t, expr)?)?));
        }
        Command::Automaton { dot, table: _, out: path } => {
            let p = parabolic(cli, &t)?;
            let aut = p.automaton();
            let text = if *dot { aut.to_dot() } else { aut.to_table() };
            out.push_str(&write_out(path, &text)?);
        }
        Command::Growth { max_n, csv } => {
            let p = parabolic(cli, &t)?;
            budget.spend(*max_n)?;
            let e = transfer_counts(p.automaton(), *max_n);
            let rows: String = e.iter().enumerate().map(|(n, x)| format!("{n},{x}\n")).collect();
            match csv {
                Some(path) => fs::write(path, format!("n,e(n)\n{rows}"))?,
                None => out.push_str(&rows),
            }
        }
        Command::Series => {
            let p = parabolic(cli, &t)?;
            out.push_str(&format!("{}\n", rational_series(p.automaton())?));
        }
        Command::Project { expr } => {
            let p = parabolic(cli, &t)?;
            let x = expr::parse_element(&t, expr)?;
            let proj = p.projection(&x, &mut budget)?;
            let members: Vec<String> = proj.members.iter().map(|m| t.format_element(m)).collect();
            out.push_str(&format!("members: {}\n", members.join(" ")));
            out.push_str(&format!("distance: {}\n", proj.distance));
            out.push_str(&format!("diameter: {}\n", p.projection_diameter(&x, &mut budget)?));
        }
        Command::AuditFellow { max_len, csv } => {
            let p = parabolic(cli, &t)?;
            let report = p.fellow_projection_audit(*max_len, &mut budget)?;
            if let Some(path) = csv {
                fs::write(path, report.to_csv(&p))?;
            }
            let summary = report.summary(&p);
            if report.budget_exceeded {
                return Err(Failure { code: 2, message: format!("budget exhausted\n{summary}") });
            }
            if !report.passed() {
                return Err(fail(summary));
            }
            out.push_str(&summary);
        }
        Command::UnboundedWitness { k } => {
            let p = parabolic(cli, &t)?;
            let cert = p.unbounded_certificate(*k, &mut budget)?;
            let members: Vec<String> = cert.projection.members.iter().map(|m| t.format_element(m)).collect();
            let text = format!(
                "k: {}\nd_k: {}\nlength(d_k): {}\ndelta^-k: {}\nprojection: {}\ncontains 1: {}\ncontains delta^-k: {}\ndistance(1, delta^-k): {}\ndiameter: {}\nresult: {}\n",
                cert.k,
                t.format_element(&cert.d_k),
                cert.length_d_k,
                t.format_element(&cert.delta_neg_k),
                members.join(" "),
                cert.contains_identity,
                cert.contains_delta_neg_k,
                cert.distance_identity_delta_neg_k,
                cert.diameter,
                if cert.holds() { "PASS" } else { "FAIL" }
            );
            if !cert.holds() {
                return Err(fail(text));
            }
            out.push_str(&text);
        }
        Command::Verify { level } => {
            let parabolics: Vec<ParabolicData<'_>> = match &cli.parabolic {
                Some(_) => vec![parabolic(cli, &t)?],
                None => t
                    .generators()
                    .filter(|&u| u != t.delta())
                    .filter_map(|u| make_parabolic(&t, u).ok())
                    .collect(),
            };
            let checks = verify::run(&t, &parabolics, *level, &mut budget)?;
            let mut failed = 0;
            for c in &checks {
                match &c.outcome {
                    Ok(detail) => out.push_str(&format!("ok   {}: {detail}\n", c.name)),
                    Err(why) => {
                        failed += 1;
                        out.push_str(&format!("FAIL {}: {why}\n", c.name));
                    }
                }
            }
            if failed > 0 {
                return Err(fail(format!("{out}{failed} checks failed")));
            }
            out.push_str(&format!("all {} checks passed\n", checks.len()));
        }
    }
    Ok(out)
}

fn describe_parabolic(t: &GarsideTable, p: &ParabolicData<'_>) -> String {
    let div: Vec<&str> = p.div_delta().iter().map(|&u| t.simple_name(u)).collect();
    format!(
        "parabolic {}: ok, Div = [{}], omega = {}{}\n",
        t.simple_name(p.delta_sub()),
        div.join(", "),
        t.simple_name(p.omega()),
        if p.is_improper() { ", improper" } else { "" }
    )
}

fn simples(t: &GarsideTable, seq: &[SimpleId]) -> String {
    t.format_simples(seq)
}

fn normal_forms(t: &GarsideTable, x: &Element) -> String {
    let mut out = format!("element: {}\n", t.format_element(x));
    for kind in ViewKind::ALL {
        let line = match t.view(x, kind) {
            NormalFormView::LeftGreedy { negative, positive } => {
                format!("left-greedy: negative={} positive={}", simples(t, &negative), simples(t, &positive))
            }
            NormalFormView::RightGreedy { positive, negative } => {
                format!("right-greedy: positive={} negative={}", simples(t, &positive), simples(t, &negative))
            }
            NormalFormView::LeftOrthogonal { numerator, denominator } => format!(
                "left-orthogonal: numerator={} denominator={}",
                t.format_element(&numerator),
                t.format_element(&denominator)
            ),
            NormalFormView::RightOrthogonal { numerator, denominator } => format!(
                "right-orthogonal: numerator={} denominator={}",
                t.format_element(&numerator),
                t.format_element(&denominator)
            ),
            NormalFormView::LeftDelta { power, body } => format!("left-delta: p={power} body={}", simples(t, &body)),
            NormalFormView::RightDelta { body, power } => format!("right-delta: body={} p={power}", simples(t, &body)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!("length: {}\n", x.length()));
    out
}
