use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kjdt_cli::commands::{self, InputError, Outcome, RectifyOutput};

/// Jeu de taquin, unique rectification targets and K-theoretic structure
/// constants on finite posets.
#[derive(Parser)]
#[command(name = "kjdt", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named poset (or a slant-sum tree with --tree).
    Catalog {
        /// rectangle, shifted_staircase, dtd, chained_dtd, cayley_moufang, bat, chain
        family: Option<String>,
        params: Vec<usize>,
        #[arg(long)]
        prefix: Option<String>,
        /// Slant-sum tree specification (JSON).
        #[arg(long, conflicts_with = "family")]
        tree: Option<PathBuf>,
        /// Allow attachment at nodes that are not acyclic.
        #[arg(long, requires = "tree")]
        allow_any_node: bool,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Validate a poset file or render it as Graphviz.
    Poset {
        #[command(subcommand)]
        cmd: PosetCmd,
    },
    /// Test d-completeness.
    Dcomplete {
        #[command(subcommand)]
        cmd: DcompleteCmd,
    },
    /// All rectifications of a skew tableau.
    Rectify {
        #[command(flatten)]
        input: TableauInput,
        #[arg(long, conflicts_with_all = ["count", "slide"])]
        all: bool,
        #[arg(long, conflicts_with = "slide")]
        count: bool,
        /// Perform one slide at these inner corners instead.
        #[arg(long)]
        slide: Option<String>,
    },
    /// Test unique rectification targets.
    Urt {
        #[command(subcommand)]
        cmd: UrtCmd,
    },
    /// Structure constants of the K-theory ring.
    Kring {
        #[command(subcommand)]
        cmd: KringCmd,
    },
    /// Exhaustive searches for counterexamples.
    Conjecture {
        #[command(subcommand)]
        cmd: ConjectureCmd,
    },
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Check a poset file and print a summary.
    Validate { file: PathBuf },
    /// Print the Hasse diagram in DOT format.
    Dot { file: PathBuf },
}

#[derive(Subcommand)]
enum DcompleteCmd {
    /// List incomplete or overlapping intervals; exits 1 when not d-complete.
    Check {
        #[arg(long)]
        poset: PathBuf,
        /// Report format; `json` prints the full violation list.
        #[arg(long, value_parser = ["json", "text"], default_value = "text")]
        report: String,
    },
}

#[derive(Args)]
struct TableauInput {
    #[arg(long)]
    poset: PathBuf,
    #[arg(long)]
    tableau: PathBuf,
}

#[derive(Subcommand)]
enum UrtCmd {
    /// Decide whether a straight tableau is a URT; exits 1 when it is not.
    Check {
        #[command(flatten)]
        input: TableauInput,
        /// Check the chain-URT property at these points (names, comma-separated or a JSON array).
        #[arg(long)]
        points: Option<String>,
        #[arg(long, requires = "points")]
        max_chain: Option<usize>,
    },
}

#[derive(Subcommand)]
enum KringCmd {
    /// One constant, one product, or the full table.
    Constants {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, requires = "mu")]
        lambda: Option<String>,
        #[arg(long, requires = "lambda")]
        mu: Option<String>,
        #[arg(long, requires = "mu")]
        nu: Option<String>,
        #[arg(long, conflicts_with = "lambda")]
        table: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConjectureCmd {
    /// Check every minimal tableau of a d-complete poset.
    Urt {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Check tableaux supported on the bottom tree for unique rectification.
    BottomTree {
        #[arg(long)]
        poset: PathBuf,
        /// Largest label range searched; defaults to the number of elements.
        #[arg(long)]
        max_label: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<Outcome, InputError> {
    match cli.cmd {
        Cmd::Catalog {
            family,
            params,
            prefix,
            tree,
            allow_any_node,
            json: _,
            dot,
        } => match (family, tree) {
            (_, Some(spec)) => commands::catalog_tree(&spec, allow_any_node, dot),
            (Some(f), None) => commands::catalog(&f, &params, prefix.as_deref(), dot),
            (None, None) => Err(InputError("catalog needs a family or --tree".into())),
        },
        Cmd::Poset {
            cmd: PosetCmd::Validate { file },
        } => commands::poset_validate(&file),
        Cmd::Poset {
            cmd: PosetCmd::Dot { file },
        } => commands::poset_dot(&file),
        Cmd::Dcomplete {
            cmd: DcompleteCmd::Check { poset, report },
        } => commands::dcomplete_check(&poset, report == "json"),
        Cmd::Rectify {
            input,
            all: _,
            count,
            slide,
        } => {
            let out = match (count, slide) {
                (_, Some(g)) => RectifyOutput::Slide(g),
                (true, None) => RectifyOutput::Count,
                (false, None) => RectifyOutput::All,
            };
            commands::rectify(&input.poset, &input.tableau, out)
        }
        Cmd::Urt {
            cmd:
                UrtCmd::Check {
                    input,
                    points,
                    max_chain,
                },
        } => commands::urt_check(&input.poset, &input.tableau, points.as_deref(), max_chain),
        Cmd::Kring {
            cmd:
                KringCmd::Constants {
                    poset,
                    lambda,
                    mu,
                    nu,
                    table,
                },
        } => commands::kring_constants(
            &poset,
            lambda.as_deref(),
            mu.as_deref(),
            nu.as_deref(),
            table.as_deref(),
        ),
        Cmd::Conjecture {
            cmd: ConjectureCmd::Urt { poset },
        } => commands::conjecture_urt(&poset),
        Cmd::Conjecture {
            cmd: ConjectureCmd::BottomTree { poset, max_label },
        } => commands::conjecture_bottom_tree(&poset, max_label),
    }
}

fn main() -> ExitCode {
    kjdt_core::init_threads_from_env();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                commands::INPUT_ERROR
            } else {
                commands::OK
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::INPUT_ERROR as u8)
        }
    }
}
