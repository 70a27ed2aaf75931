//! Command-line front end. `run` does all the work and returns what should
//! be printed plus the exit code, so the binary stays a thin wrapper.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bijection::{phi, phi_inverse, phi_with_trace};
use crate::enumeration::{distribution_table_with_jobs, verify, VerificationReport, Verifier};
use crate::perm::Permutation;
use crate::stats::{StatProfile, Statistic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sucfix", version, about = "Successions, fixed points and the bijection between them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Relations,
    Pfee,
    Counting,
    Triple,
    #[default]
    All,
}

impl CheckArg {
    fn verifiers(self) -> Vec<Verifier> {
        match self {
            CheckArg::Relations => vec![Verifier::Relations],
            CheckArg::Pfee => vec![Verifier::Pfee],
            CheckArg::Counting => vec![Verifier::Counting],
            CheckArg::Triple => vec![Verifier::Triple],
            CheckArg::All => Verifier::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map a permutation through the bijection.
    Apply {
        /// One-line notation, e.g. "7 2 6 4 1 3 5".
        #[arg(long)]
        perm: String,
        /// Print every intermediate stage.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Map a permutation back through the inverse bijection.
    Invert {
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print all six set-valued statistics of a permutation.
    Stats {
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Exhaustively check the identities over all permutations of size n.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        check: CheckArg,
        /// Worker threads; 1 runs sequentially.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Emit the distribution table of one statistic over all permutations of size n.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_statistic)]
        stat: Statistic,
        #[arg(long, value_enum, default_value_t)]
        format: TableFormat,
    },
}

fn parse_statistic(s: &str) -> Result<Statistic, String> {
    s.parse().map_err(|e: crate::stats::UnknownStatistic| e.to_string())
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE }
    }
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn parse_perm(text: &str) -> Result<Permutation, Outcome> {
    text.parse::<Permutation>()
        .map_err(|e| Outcome::usage(format_args!("invalid permutation: {e}")))
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Apply { perm, trace, format } => cmd_apply(&perm, trace, format),
        Command::Invert { perm, format } => cmd_invert(&perm, format),
        Command::Stats { perm, format } => cmd_stats(&perm, format),
        Command::Verify { n, check, jobs, format } => cmd_verify(n, check, jobs, format),
        Command::Table { n, stat, format } => cmd_table(n, stat, format),
    };
    result.unwrap_or_else(|e| e)
}

pub fn cmd_apply(perm: &str, trace: bool, format: OutputFormat) -> Result<Outcome, Outcome> {
    let sigma = parse_perm(perm)?;
    let out = match (trace, format) {
        (false, OutputFormat::Text) => format!("{}\n", phi(&sigma)),
        (false, OutputFormat::Json) => json_line(&json!({ "sigma": sigma, "tau": phi(&sigma) })),
        (true, OutputFormat::Json) => json_line(&phi_with_trace(&sigma)),
        (true, OutputFormat::Text) => {
            let t = phi_with_trace(&sigma);
            let rows = [
                ("sigma", t.sigma.to_string()),
                ("sigma_bar", t.sigma_bar.to_string()),
                ("sigma_hat", t.sigma_hat.to_string()),
                ("cycle_form", t.cycle_form.to_string()),
                ("tau_bar", t.tau_bar.to_string()),
                ("tau_bar_inv", t.tau_bar_inv.to_string()),
                ("tau", t.tau.to_string()),
            ];
            rows.iter().map(|(k, v)| format!("{k:<12}{v}\n")).collect()
        }
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_invert(perm: &str, format: OutputFormat) -> Result<Outcome, Outcome> {
    let tau = parse_perm(perm)?;
    let sigma = phi_inverse(&tau);
    Ok(Outcome::ok(match format {
        OutputFormat::Text => format!("{sigma}\n"),
        OutputFormat::Json => json_line(&json!({ "tau": tau, "sigma": sigma })),
    }))
}

pub fn cmd_stats(perm: &str, format: OutputFormat) -> Result<Outcome, Outcome> {
    let p = parse_perm(perm)?;
    let prof = StatProfile::of(&p);
    Ok(Outcome::ok(match format {
        OutputFormat::Text => Statistic::ALL
            .iter()
            .map(|&st| format!("{:<9}{}\n", st.name(), prof.get(st)))
            .collect(),
        OutputFormat::Json => {
            let mut v = serde_json::to_value(&prof).expect("serializable");
            v["perm"] = serde_json::to_value(&p).expect("serializable");
            json_line(&v)
        }
    }))
}

fn render_report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "{} n={}: {} ({} permutations, {:.1} ms)\n",
        r.verifier.name(),
        r.n,
        if r.passed { "PASS" } else { "FAIL" },
        r.permutations_examined,
        r.elapsed.as_secs_f64() * 1e3,
    );
    for c in &r.checks {
        s.push_str(&format!("  {:<28}{}\n", c.name, if c.passed { "ok" } else { "FAILED" }));
    }
    if let Some(c) = &r.counterexample {
        s.push_str(&format!(
            "  counterexample: {}\n",
            serde_json::to_string(c).expect("serializable")
        ));
    }
    s
}

pub fn cmd_verify(n: usize, check: CheckArg, jobs: usize, format: OutputFormat) -> Result<Outcome, Outcome> {
    if jobs == 0 {
        return Err(Outcome::usage("--jobs must be at least 1"));
    }
    let verifiers = check.verifiers();
    // Validate every size bound before running anything.
    for v in &verifiers {
        if !(1..=v.max_n()).contains(&n) {
            return Err(Outcome::usage(format_args!(
                "--n {n} out of range for {}: expected 1..={}",
                v.name(),
                v.max_n()
            )));
        }
    }
    let mut reports = Vec::new();
    for v in verifiers {
        reports.push(verify(v, n, jobs).map_err(Outcome::usage)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let stdout = match format {
        OutputFormat::Text => reports.iter().map(render_report_text).collect(),
        OutputFormat::Json => json_line(&json!({ "n": n, "passed": passed, "reports": reports })),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if passed { EXIT_OK } else { EXIT_FAILED },
    })
}

pub fn cmd_table(n: usize, stat: Statistic, format: TableFormat) -> Result<Outcome, Outcome> {
    let table = distribution_table_with_jobs(n, stat, 1).map_err(Outcome::usage)?;
    Ok(Outcome::ok(match format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => json_line(&table),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> Outcome {
        let mut argv = vec!["sucfix"];
        argv.extend_from_slice(args);
        run(Cli::try_parse_from(argv).expect("valid arguments"))
    }

    #[test]
    fn apply_and_invert() {
        let o = invoke(&["apply", "--perm", "7 2 6 4 1 3 5"]);
        assert_eq!((o.stdout.as_str(), o.code), ("4 1 2 6 7 5 3\n", 0));
        assert_eq!(invoke(&["apply", "--perm", "1"]).stdout, "1\n");
        assert_eq!(invoke(&["invert", "--perm", "4,1,2,6,7,5,3"]).stdout, "7 2 6 4 1 3 5\n");
        assert_eq!(invoke(&["invert", "--perm", "1"]).stdout, "1\n");
    }

    #[test]
    fn bad_permutation_is_usage_error() {
        let o = invoke(&["apply", "--perm", "1 1"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("duplicate value `1`"), "{}", o.stderr);
        let o = invoke(&["stats", "--perm", "1 two"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("`two`"));
    }

    #[test]
    fn trace_text_lists_stages_in_order() {
        let o = invoke(&["apply", "--perm", "7 2 6 4 1 3 5", "--trace"]);
        let labels: Vec<&str> = o.stdout.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
        assert_eq!(
            labels,
            ["sigma", "sigma_bar", "sigma_hat", "cycle_form", "tau_bar", "tau_bar_inv", "tau"]
        );
        assert!(o.stdout.contains("cycle_form  (3 4 2 7)(1 5 6)\n"));
    }

    #[test]
    fn stats_output() {
        let o = invoke(&["stats", "--perm", "2 1", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["pred"], json!([2]));
        assert_eq!(v["exc_bar"], json!([2]));
        for k in ["suc", "fix_bar", "naj_suc", "drop_bar"] {
            assert_eq!(v[k], json!([]), "{k}");
        }
        let text = invoke(&["stats", "--perm", "4 1 2 6 7 5 3"]).stdout;
        assert!(text.contains("suc      {2,4}\n"));
        assert!(text.contains("naj_suc  {1,3}\n"));
        assert!(text.contains("pred     {6,7}\n"));
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(invoke(&["verify", "--n", "1"]).code, EXIT_OK);
        assert_eq!(invoke(&["verify", "--n", "0"]).code, EXIT_USAGE);
        assert_eq!(invoke(&["verify", "--n", "11", "--check", "counting"]).code, EXIT_USAGE);
        assert_eq!(invoke(&["verify", "--n", "3", "--jobs", "0"]).code, EXIT_USAGE);
        let o = invoke(&["verify", "--n", "5", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["reports"].as_array().unwrap().len(), 4);
        assert_eq!(v["reports"][0]["permutations_examined"], 120);
    }

    #[test]
    fn table_output() {
        let o = invoke(&["table", "--n", "1", "--stat", "fix_bar"]);
        assert_eq!(o.stdout, "subset,count\n,1\n");
        assert_eq!(
            invoke(&["table", "--n", "3", "--stat", "suc"]).stdout,
            invoke(&["table", "--n", "3", "--stat", "fix_bar"]).stdout
        );
        assert!(Cli::try_parse_from(["sucfix", "table", "--n", "3", "--stat", "des"]).is_err());
        assert_eq!(invoke(&["table", "--n", "11", "--stat", "suc"]).code, EXIT_USAGE);
    }
}
