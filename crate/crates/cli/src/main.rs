//! `posnd`: check, normalize, probe and translate position-decorated proofs.
//!
//! Exit codes: 0 success, 1 a derivation fails to check (or normalization
//! cannot start), 2 unreadable or unparsable input, 3 an internal invariant
//! breach such as a rank increase or a bounded countermodel to a checking
//! derivation.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use posnd::kernel::{builtin, check, print_proof, proof_from_sexp, print_report, Axiom, Flavor, Logic, ProofFile, System};
use posnd::normalizer::{normalize, NormalizeError};
use posnd::semantics::{print_countermodel, soundness_countermodel, Bounds};
use posnd::sexpr;
use posnd::translate::{classical_to_intuitionistic, derivation_to_labelled};

#[derive(Parser, Debug)]
#[command(name = "posnd", version, about = "Position-decorated natural deduction for K, D, T, K4, D4 and S4")]
struct Cli {
    /// Override the logic named in the proof file.
    #[arg(long, global = true)]
    logic: Option<Logic>,
    /// Override the flavor named in the proof file.
    #[arg(long, global = true)]
    flavor: Option<Flavor>,
    /// Require β = () on BoxE/DiaI in T.
    #[arg(long, global = true)]
    t_strict_empty_beta: bool,
    /// Where to write the result; `-` is standard output.
    #[arg(short, long, global = true, default_value = "-")]
    output: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every proof in FILE and print a report per proof.
    Check { file: String },
    /// Normalize an intuitionistic proof.
    Normalize {
        file: String,
        /// Append the rank trace as a comment line.
        #[arg(long)]
        trace: bool,
    },
    /// Emit builtin axiom derivations as proof files.
    Axioms {
        #[arg(long)]
        axiom: Option<Axiom>,
    },
    /// Probe soundness of each proof within bounded models.
    Eval {
        file: String,
        #[arg(long, default_value = "3,2,1")]
        bounds: Bounds,
    },
    /// Translate a classical proof into an intuitionistic proof of its g-image.
    TranslateG { file: String },
    /// Print the labelled-sequent sketch of each proof.
    ExportLabelled { file: String },
}

enum Failure {
    Check(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

impl Cli {
    fn system(&self, from_file: System) -> System {
        let mut sys = from_file;
        if let Some(l) = self.logic {
            sys.logic = l;
        }
        if let Some(f) = self.flavor {
            sys.flavor = f;
        }
        sys.t_strict_empty_beta |= self.t_strict_empty_beta;
        sys
    }

    /// Every proof in the file, with flag overrides applied.
    fn proofs(&self, path: &str) -> Result<Vec<ProofFile>, Failure> {
        let text = read_input(path).map_err(|e| Failure::Input(format!("{e:#}")))?;
        let items = sexpr::parse_all(&text).map_err(|e| Failure::Input(e.to_string()))?;
        if items.is_empty() {
            return Err(Failure::Input(format!("{path}: no proof found")));
        }
        items
            .iter()
            .map(|e| {
                let p = proof_from_sexp(e).map_err(|e| Failure::Input(e.to_string()))?;
                Ok(ProofFile {
                    system: self.system(p.system),
                    derivation: p.derivation,
                })
            })
            .collect()
    }
}

fn require_checks(p: &ProofFile) -> Result<(), Failure> {
    let r = check(&p.derivation, p.system);
    if r.ok {
        Ok(())
    } else {
        Err(Failure::Check(print_report(&r, p.system)))
    }
}

/// Appends to `out` as it goes, so output for earlier proofs survives a
/// later failure.
fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    match &cli.command {
        Command::Check { file } => {
            let mut failed = false;
            for p in cli.proofs(file)? {
                let r = check(&p.derivation, p.system);
                failed |= !r.ok;
                out.push_str(&print_report(&r, p.system));
            }
            if failed {
                return Err(Failure::Check("some proofs failed to check".into()));
            }
        }
        Command::Normalize { file, trace } => {
            for p in cli.proofs(file)? {
                require_checks(&p)?;
                let n = normalize(&p.derivation, p.system).map_err(|e| match e {
                    NormalizeError::RankIncreased { .. } | NormalizeError::Unsound(_) | NormalizeError::SpineOrder(_) => {
                        Failure::Internal(e.to_string())
                    }
                    _ => Failure::Check(e.to_string()),
                })?;
                out.push_str(&print_proof(&n.derivation, p.system));
                if *trace {
                    let ranks: Vec<String> = n.trace.iter().map(ToString::to_string).collect();
                    out.push_str(&format!("; trace {}\n", ranks.join(" ")));
                }
            }
        }
        Command::Axioms { axiom } => {
            let logic = cli
                .logic
                .ok_or_else(|| Failure::Input("`axioms` needs --logic".into()))?;
            let sys = cli.system(System::classical(logic));
            let axioms: Vec<Axiom> = match axiom {
                Some(a) => vec![*a],
                None => Axiom::ALL.into_iter().filter(|a| a.supports(logic)).collect(),
            };
            for a in axioms {
                let d = builtin(a, logic).map_err(|e| Failure::Input(e.to_string()))?;
                out.push_str(&format!("; {a} in {logic}\n"));
                out.push_str(&print_proof(&d, sys));
            }
        }
        Command::Eval { file, bounds } => {
            for p in cli.proofs(file)? {
                require_checks(&p)?;
                match soundness_countermodel(&p.derivation, p.system, *bounds) {
                    Ok(None) => out.push_str("valid-within-bounds\n"),
                    Ok(Some(c)) => {
                        out.push_str(&print_countermodel(&c));
                        return Err(Failure::Internal(format!(
                            "a checking derivation has a countermodel within bounds {bounds}"
                        )));
                    }
                    Err(m) => return Err(Failure::Check(m)),
                }
            }
        }
        Command::TranslateG { file } => {
            for p in cli.proofs(file)? {
                require_checks(&p)?;
                let t = classical_to_intuitionistic(&p.derivation, p.system)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                let target = p.system.with_flavor(Flavor::Intuitionistic);
                let r = check(&t, target);
                if !r.ok {
                    return Err(Failure::Internal(format!(
                        "translation fails to check:\n{}",
                        print_report(&r, target)
                    )));
                }
                out.push_str(&print_proof(&t, target));
            }
        }
        Command::ExportLabelled { file } => {
            for p in cli.proofs(file)? {
                require_checks(&p)?;
                let s = derivation_to_labelled(&p.derivation, p.system)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                out.push_str(&s.print());
            }
        }
    }
    Ok(())
}

fn write_output(path: &str, text: &str) -> anyhow::Result<()> {
    if path == "-" {
        let mut so = io::stdout().lock();
        so.write_all(text.as_bytes()).context("writing standard output")?;
        so.flush().context("writing standard output")
    } else {
        fs::write(path, text).with_context(|| format!("writing {path}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    if let Err(e) = write_output(&cli.output, &out) {
        eprintln!("posnd: {e:#}");
        return ExitCode::from(2);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("posnd: {}", f.message().trim_end());
            ExitCode::from(f.code())
        }
    }
}
