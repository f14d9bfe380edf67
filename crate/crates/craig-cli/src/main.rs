use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use craig::construct::{
    enumerate_cutfree, prove_cutfree, realize_interpolant_with, realize_pruned, Countermodel, ProveError,
};
use craig::formulas::{
    clause_set_to_text, cnf, enumerate_interpolants, equiv, parse_clause_set, parse_formula, prune, ClauseSet,
    Formula,
};
use craig::maehara::maehara;
use craig::resolution::{interpolant_from_refutation, refute, refute_partitioned, Partition, RefuteOutcome, ResolutionProof};
use craig::sequent::{check_proof, Proof, SplitSequent, System};
use craig::transform::{cnf_to_string, eliminate_cuts, Elimination};

mod repro;

#[derive(Parser)]
#[command(name = "craig", version, about = "Craig interpolants from resolution and sequent proofs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Sexpr,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Formula,
    Sequent,
    Clauses,
    Proof,
    Refutation,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an input and print it in canonical form.
    Parse {
        /// Input kind; inferred from the file extension when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        input: String,
    },
    /// Search for a cut-free proof of a split sequent.
    Prove {
        #[arg(long, default_value = "lk-minus")]
        system: String,
        #[arg(long, value_enum, default_value = "sexpr")]
        format: Format,
        sequent: String,
    },
    /// Check a proof against a calculus.
    CheckProof {
        #[arg(long, default_value = "lk")]
        system: String,
        proof: String,
    },
    /// Annotate every node of a proof with its interpolant.
    Interpolate {
        #[arg(long, default_value = "lk")]
        system: String,
        proof: String,
    },
    /// Refute a clause set, or two clause sets as an A/B partition.
    Refute { a: String, b: Option<String> },
    /// Interpolant of a resolution refutation.
    ResInterpolate { refutation: String },
    /// Every interpolant of `a → b` up to equivalence.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_shared_vars: usize,
        /// Also report which classes cut-free proofs of this depth reach.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value = "lk-minus")]
        system: String,
        a: String,
        b: String,
    },
    /// Resolve away every atom occurring in both polarities.
    Prune { clauses: String },
    /// A proof of `a ; ⇒ ; b` whose interpolant is equivalent to the target.
    Realize {
        #[arg(long, default_value = "lk-at")]
        system: String,
        #[arg(long)]
        interpolant: String,
        #[arg(long, default_value_t = 4096)]
        cminus_cap: usize,
        /// Realize the clause form of the target exactly, as a tame proof
        /// accepted by `cut-eliminate`.
        #[arg(long)]
        pruned: bool,
        #[arg(long, value_enum, default_value = "sexpr")]
        format: Format,
        a: String,
        b: String,
    },
    /// Eliminate the cuts of a tame atomic-cut proof.
    CutEliminate {
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "sexpr")]
        format: Format,
        proof: String,
    },
    /// Realize a pruned interpolant with cuts, then eliminate them.
    Pipeline {
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "sexpr")]
        format: Format,
        a: String,
        b: String,
        clauses: String,
    },
    /// Rerun one of the worked examples with its checks.
    Repro {
        #[arg(value_enum)]
        name: repro::Name,
        #[arg(long, default_value_t = craig::gen::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Reasons to stop, with exit code 2 and 1 respectively.
pub enum Failure {
    Usage(String),
    Logic(String),
}

pub type Outcome = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn logic(e: impl std::fmt::Display) -> Failure {
    Failure::Logic(e.to_string())
}

/// The contents of `arg` if it names a file, otherwise `arg` itself.
fn text(arg: &str) -> Result<String, Failure> {
    let p = Path::new(arg);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| usage(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn formula(arg: &str) -> Result<Formula, Failure> {
    parse_formula(text(arg)?.trim()).map_err(usage)
}

fn clauses(arg: &str) -> Result<ClauseSet, Failure> {
    parse_clause_set(&text(arg)?).map_err(usage)
}

fn proof(arg: &str) -> Result<Proof, Failure> {
    Proof::parse(&text(arg)?).map_err(usage)
}

fn system(name: &str) -> Result<System, Failure> {
    System::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = System::ALL.iter().map(|s| s.name()).collect();
        usage(format!("unknown system `{name}`; expected one of {}", names.join(", ")))
    })
}

fn render(p: &Proof, format: Format) -> String {
    match format {
        Format::Sexpr => p.to_sexpr() + "\n",
        Format::Text => p.to_text(),
    }
}

fn trace_text(e: &Elimination) -> String {
    let mut out = format!("start cnf={}\n", cnf_to_string(&e.initial));
    for s in &e.trace {
        out.push_str(&format!("{s}\n"));
    }
    out
}

fn kind_of(arg: &str) -> Kind {
    match Path::new(arg).extension().and_then(|e| e.to_str()) {
        Some("cls") => Kind::Clauses,
        Some("prf") => Kind::Proof,
        Some("res") => Kind::Refutation,
        _ if arg.contains("=>") => Kind::Sequent,
        _ => Kind::Formula,
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Parse { kind, input } => {
            let t = text(&input)?;
            Ok(match kind.unwrap_or_else(|| kind_of(&input)) {
                Kind::Formula => format!("{}\n", formula(&input)?),
                Kind::Sequent => format!("{}\n", SplitSequent::parse(t.trim()).map_err(usage)?),
                Kind::Clauses => clause_set_to_text(&clauses(&input)?),
                Kind::Proof => proof(&input)?.to_sexpr() + "\n",
                Kind::Refutation => ResolutionProof::parse(&t).map_err(usage)?.to_string(),
            })
        }
        Cmd::Prove { system: s, format, sequent } => {
            let sys = system(&s)?;
            let seq = SplitSequent::parse(text(&sequent)?.trim()).map_err(usage)?;
            match prove_cutfree(&seq, sys) {
                Ok(p) => Ok(render(&p, format)),
                Err(ProveError::NotProvable(Some(Countermodel::Assignment(a)))) => {
                    let vals: Vec<String> = a.iter().map(|(k, v)| format!("{k}={}", u8::from(*v))).collect();
                    Err(logic(format!("not provable; countermodel: {}", vals.join(" "))))
                }
                Err(ProveError::NotProvable(Some(Countermodel::Kripke(m)))) => {
                    Err(logic(format!("not provable; countermodel at w0:\n{}", m.to_string().trim_end())))
                }
                Err(e) => Err(logic(e)),
            }
        }
        Cmd::CheckProof { system: s, proof: p } => {
            let sys = system(&s)?;
            let p = proof(&p)?;
            check_proof(&p, sys).map_err(logic)?;
            Ok(format!("ok: {} nodes, {} cuts, proves {}\n", p.node_count(), p.count_cuts(), p.seq))
        }
        Cmd::Interpolate { system: s, proof: p } => {
            let a = maehara(&proof(&p)?, system(&s)?).map_err(logic)?;
            Ok(a.to_text())
        }
        Cmd::Refute { a, b } => {
            let out = match b {
                None => refute(&clauses(&a)?),
                Some(b) => refute_partitioned(&clauses(&a)?, &clauses(&b)?),
            };
            match out.map_err(usage)? {
                RefuteOutcome::Refuted(r) => Ok(r.to_string()),
                RefuteOutcome::Satisfiable(m) => {
                    let vals: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", u8::from(*v))).collect();
                    Err(logic(format!("satisfiable: {}", vals.join(" "))))
                }
            }
        }
        Cmd::ResInterpolate { refutation } => {
            let rp = ResolutionProof::parse(&text(&refutation)?).map_err(usage)?;
            let c = interpolant_from_refutation(&rp, &Partition::from_proof(&rp)).map_err(logic)?;
            Ok(format!("{c}\n"))
        }
        Cmd::Enumerate { max_shared_vars, depth, system: s, a, b } => {
            let (a, b) = (formula(&a)?, formula(&b)?);
            let all = enumerate_interpolants(&a, &b, max_shared_vars).map_err(logic)?;
            let mut out: String = all.iter().map(|c| format!("{c}\n")).collect();
            if let Some(d) = depth {
                let seq = SplitSequent::new(vec![a], vec![], vec![], vec![b]);
                let e = enumerate_cutfree(&seq, system(&s)?, d);
                out.push_str(&format!("cut-free proofs of depth <= {d}: {}\n", e.proofs));
                for c in &all {
                    let hit = e.interpolants.iter().any(|m| equiv(m, c).unwrap_or(false));
                    out.push_str(&format!("{} {c}\n", if hit { "reached" } else { "missed " }));
                }
            }
            Ok(out)
        }
        Cmd::Prune { clauses: c } => Ok(clause_set_to_text(&prune(&clauses(&c)?))),
        Cmd::Realize { system: s, interpolant, cminus_cap, pruned, format, a, b } => {
            let sys = system(&s)?;
            let (a, b, c) = (formula(&a)?, formula(&b)?, formula(&interpolant)?);
            let p = if pruned {
                realize_pruned(&a, &b, &cnf(&c))
            } else {
                realize_interpolant_with(&a, &b, &c, sys, cminus_cap)
            };
            let p = p.map_err(logic)?;
            Ok(render(&p, format))
        }
        Cmd::CutEliminate { trace, format, proof: p } => {
            let e = eliminate_cuts(&proof(&p)?).map_err(logic)?;
            let mut out = if trace { trace_text(&e) } else { String::new() };
            out.push_str(&render(&e.proof, format));
            Ok(out)
        }
        Cmd::Pipeline { trace, format, a, b, clauses: c } => {
            let (a, b, cs) = (formula(&a)?, formula(&b)?, clauses(&c)?);
            let p = realize_pruned(&a, &b, &cs).map_err(logic)?;
            let e = eliminate_cuts(&p).map_err(logic)?;
            let m = craig::maehara::interpolant(&e.proof).map_err(logic)?;
            let mut out = if trace { trace_text(&e) } else { String::new() };
            out.push_str(&format!("target {}\nresult {}\n", cnf_to_string(&cs), cnf_to_string(&cnf(&m))));
            out.push_str(&render(&e.proof, format));
            Ok(out)
        }
        Cmd::Repro { name, seed } => repro::run(name, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Logic(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
