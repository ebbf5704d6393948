use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use formgroup_core::{Builtin, FormalGroupLaw};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "formgroup", version, about = "Exact formal group laws, their Lie algebras and cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Formal group law utilities.
    Fgl {
        #[command(subcommand)]
        action: FglAction,
    },
    /// Print the formal inverse s(X).
    Antipode(Common),
    /// Print the Lie algebra structure constants.
    Lie(Common),
    /// Betti numbers of the Chevalley-Eilenberg complex.
    Cohomology(Common),
    /// Apply the comparison map to a cochain, or to the coordinate witnesses.
    Phi {
        #[command(flatten)]
        common: Common,
        /// Cochain degree.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Cochain body in variables t1..t_{n*m}; defaults to the basis witnesses.
        #[arg(long)]
        cochain: Option<String>,
    },
    /// Check that the comparison map commutes with the differentials.
    Chainmap {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Leading terms of tals(t^j) for every monomial up to a degree.
    TalsGraded {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Sample conjugates x y x^-1 with x in G(0) and y in G(h).
    PadicNormality {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        prime: u32,
        /// The level h.
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value_t = 12)]
        precision: u32,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Convergence certificates for a series on discs of radius p^-k.
    Convergence {
        #[command(flatten)]
        common: Common,
        /// Series text, or `exp` for the truncated exponential.
        #[arg(long, default_value = "exp")]
        series: String,
        #[arg(long, default_value_t = 2)]
        prime: u32,
        /// The level h of the rescaled law.
        #[arg(long, default_value_t = 0)]
        level: u32,
        /// Disc exponents k to test.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        k: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum FglAction {
    /// Check the unit and associativity axioms.
    Check(Common),
    /// Print a law in the JSON file format.
    Export(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// multiplicative, heisenberg, ax_plus_b, additive or additive(m).
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Law in the JSON file format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Dimension for `--builtin additive`.
    #[arg(long)]
    dim: Option<usize>,
    /// Truncation degree D.
    #[arg(long, conflicts_with = "file")]
    trunc: Option<u32>,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for JSON reports named after the subcommand.
    #[arg(long, env = "FORMGROUP_OUT_DIR")]
    out_dir: Option<PathBuf>,
}

impl Common {
    fn law(&self, default_trunc: u32) -> anyhow::Result<FormalGroupLaw> {
        match (&self.builtin, &self.file) {
            (Some(name), None) => {
                let mut which: Builtin = name.parse()?;
                if let Some(m) = self.dim {
                    match which {
                        Builtin::Additive(_) => which = Builtin::Additive(m),
                        other if other.dim() != m => bail!("{other} has dimension {}", other.dim()),
                        _ => {}
                    }
                }
                let trunc = self.trunc.unwrap_or(default_trunc);
                if trunc < 2 {
                    bail!("truncation degree must be at least 2");
                }
                Ok(FormalGroupLaw::builtin(which, trunc))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(formgroup_core::io::parse_fgl(&text).with_context(|| format!("in {}", path.display()))?)
            }
            _ => bail!("give exactly one of --builtin or --file"),
        }
    }

    fn report_path(&self, name: &str) -> Option<PathBuf> {
        self.out
            .clone()
            .or_else(|| self.out_dir.as_ref().map(|d| d.join(format!("{name}.json"))))
    }
}

/// What a command prints, writes and how it exits.
pub struct Outcome {
    pub lines: Vec<String>,
    pub report: serde_json::Value,
    pub passed: bool,
}

fn run(cli: Cli) -> anyhow::Result<(Outcome, Option<PathBuf>)> {
    let (outcome, common, name) = match &cli.command {
        Command::Fgl { action } => match action {
            FglAction::Check(c) => (commands::fgl_check(&c.law(6)?), c, "fgl-check"),
            FglAction::Export(c) => (commands::fgl_export(&c.law(6)?), c, "fgl-export"),
        },
        Command::Antipode(c) => (commands::antipode(&c.law(6)?), c, "antipode"),
        Command::Lie(c) => (commands::lie(&c.law(6)?)?, c, "lie"),
        Command::Cohomology(c) => (commands::cohomology(&c.law(6)?)?, c, "cohomology"),
        Command::Phi { common, n, cochain } => {
            (commands::phi(&common.law(6)?, *n, cochain.as_deref())?, common, "phi")
        }
        Command::Chainmap {
            common,
            n,
            trials,
            seed,
        } => (commands::chainmap(&common.law(6)?, *n, *trials, *seed)?, common, "chainmap"),
        Command::TalsGraded { common, max_degree } => {
            let g = common.law(*max_degree)?;
            (commands::tals_graded(&g, *max_degree)?, common, "tals-graded")
        }
        Command::PadicNormality {
            common,
            prime,
            level,
            precision,
            samples,
            seed,
        } => {
            let g = common.law(30)?;
            let out = commands::padic_normality(&g, *prime, *level, *precision, *samples, *seed)?;
            (out, common, "padic-normality")
        }
        Command::Convergence {
            common,
            series,
            prime,
            level,
            k,
        } => {
            let trunc = common.trunc.unwrap_or(16);
            let m = common.dim.unwrap_or(1);
            (commands::convergence(series, m, trunc, *prime, *level, k)?, common, "convergence")
        }
    };
    Ok((outcome, common.report_path(name)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, path)) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            if let Some(path) = path {
                let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
                if let Err(e) = std::fs::write(&path, text) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
