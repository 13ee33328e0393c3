//! `tc`: command-line front end for counting and constructing r-th roots on
//! twisted curves given by their decorated dual graphs.

mod commands;
mod input;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {0}: {1}")]
    Io(String, io::Error),
    #[error("cannot parse {0}: {1}")]
    Parse(String, serde_json::Error),
    #[error(transparent)]
    Domain(#[from] twisted_roots::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tc", version, about = "r-th roots of line bundles on twisted nodal curves")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Cap on the number of discrete candidates enumerated per count.
    #[arg(long, global = true, env = "TC_MAX_DOMAIN", default_value_t = twisted_roots::picard::DEFAULT_MAX_DOMAIN)]
    pub max_domain: u64,
    /// Cap on the number of vertices of enumerated graphs.
    #[arg(long, global = true, default_value_t = twisted_roots::graphs::DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for sweeps; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct BundleArgs {
    /// Bundle builder, `omega:k=K[,h=ID:VAL,...]`. Defaults to the trivial bundle.
    #[arg(long)]
    pub bundle: Option<String>,
    /// Bundle as JSON `{"int_part":[...],"mult":[...]}`; `-` reads stdin.
    #[arg(long)]
    pub bundle_file: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus, Betti number and stability of a graph.
    Genus { graph: String },
    /// Node type of every edge.
    Classify { graph: String },
    /// Order of the r-torsion of the Picard group.
    Torsion {
        graph: String,
        #[arg(short)]
        r: u64,
    },
    /// Number of r-th roots of a bundle.
    Roots {
        graph: String,
        #[arg(short)]
        r: u64,
        #[command(flatten)]
        bundle: BundleArgs,
        /// Also print one representative per discrete root class.
        #[arg(long)]
        list: bool,
    },
    /// Edge-by-edge numerical criterion for the full count of roots.
    Criterion {
        graph: String,
        #[arg(short)]
        r: u64,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Membership of a vertex vector in the image of the boundary map, with a lift.
    Lift {
        graph: String,
        #[arg(short)]
        r: u64,
        /// Comma-separated target, one entry per vertex.
        #[arg(long, value_parser = input::parse_list::<u64>)]
        target: std::vec::Vec<u64>,
    },
    /// Ghost-automorphism orbits on root classes of a rational graph.
    Orbits {
        graph: String,
        #[arg(short)]
        r: u64,
        #[command(flatten)]
        bundle: BundleArgs,
        /// Also quotient by the involution (mult, gluing) -> (-mult, -gluing).
        #[arg(long)]
        involution: bool,
    },
    /// All stable graphs of genus g with n legs, one JSON graph per line.
    Enumerate {
        #[arg(short)]
        g: u64,
        #[arg(short, default_value_t = 0)]
        n: usize,
        /// Allowed stabilizers.
        #[arg(long, default_value = "1", value_parser = input::parse_list::<u64>)]
        stabilizers: std::vec::Vec<u64>,
    },
    /// Compare the root criterion with brute-force counts over all stable graphs.
    VerifyRootsnum {
        #[arg(long, default_value_t = 2)]
        min_genus: u64,
        #[arg(long, default_value_t = 3)]
        max_genus: u64,
        #[arg(long, default_value = "1,2,3,4,6", value_parser = input::parse_list::<u64>)]
        stabilizers: std::vec::Vec<u64>,
        #[arg(short, default_value = "2,3,4,6", value_parser = input::parse_list::<u64>)]
        r: std::vec::Vec<u64>,
        /// Random bundles per graph and r.
        #[arg(long, default_value_t = 50)]
        random: usize,
    },
    /// Compare the l-stability condition with root counts on all l-stable graphs.
    VerifyCond {
        #[arg(short)]
        g: u64,
        #[arg(short)]
        r: u64,
        #[arg(short, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        /// Stabilizer per node type; omit to sweep all with entries up to --max-entry.
        #[arg(short, long, value_parser = input::parse_list::<u64>)]
        l: Option<std::vec::Vec<u64>>,
        /// Largest entry in the sweep; defaults to 2r.
        #[arg(long)]
        max_entry: Option<u64>,
    },
    /// Fibre data and genus of the curve of nontrivial r-spin structures in genus 1.
    Nr {
        #[arg(short)]
        r: u64,
    },
    /// Automorphism ratio r^m / prod d_i against Abramovich-Jarvis curves.
    Ratio {
        #[arg(short)]
        r: u64,
        /// Comma-separated node orders d_i.
        #[arg(long, default_value = "", value_parser = input::parse_list::<u64>)]
        orders: std::vec::Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
