use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use covera::exec::Mode;
use covera::report::{self, presets, Campaign, Settings};
use covera::lie::EXCEPTIONAL_PAIRS;
use covera::roots::{GraphAut, RootLattice};
use covera::Ring;

#[derive(Parser, Debug)]
#[command(name = "covera", version, about = "Exact checks for lattice vertex algebras, Chevalley algebras and the covering procedure")]
struct Cli {
    /// coefficient ring: Z, Q, F2, F3, F9, Z12 (Z[1/2]) or GZ12 (Z[i,1/2])
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    /// truncation weight
    #[arg(long, global = true, default_value_t = 4)]
    wmax: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// run on the calling thread only
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// root counts for the given types
    Roots {
        #[arg(long = "type", value_delimiter = ',', default_value = "A1,A2,A3,D4,D5,E6,E7,E8")]
        types: Vec<String>,
    },
    /// cocycle identities and graph-automorphism lifts
    CocycleCheck {
        #[arg(long = "type", value_delimiter = ',', default_value = "A2,D4,E6,E8")]
        types: Vec<String>,
    },
    /// Jacobi over --ring, or reduced algebra of an exceptional pair
    Lie {
        #[arg(long = "type", conflicts_with = "exceptional")]
        lattice: Option<String>,
        /// exceptional pair type, used with --prime
        #[arg(long, requires = "prime")]
        exceptional: Option<String>,
        #[arg(long)]
        prime: Option<u32>,
    },
    /// graded dimensions and vertex algebra axioms
    Va {
        #[arg(long, default_value = "A2")]
        lattice: String,
        /// inclusive weight range `a..b` for graded dimensions, at most --wmax
        #[arg(long, value_parser = parse_range)]
        dims: Option<(usize, usize)>,
    },
    /// covering identity for a lattice with a graph automorphism
    Covering {
        #[arg(long)]
        ancestor: String,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 2)]
        weight: usize,
    },
    /// cube, regrading and real-form checks
    MoonshineDesk,
    /// every preset
    All,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?);
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn lattice(name: &str) -> Result<RootLattice, String> {
    RootLattice::parse(name).map_err(|e| e.to_string())
}

/// Rejects arguments that cannot name a computation.
fn validate(cmd: &Command, wmax: usize) -> Result<(), String> {
    match cmd {
        Command::Va { dims: Some((_, hi)), .. } if *hi > wmax => Err(format!("weight {hi} exceeds truncation weight {wmax}")),
        Command::Roots { types } | Command::CocycleCheck { types } => types.iter().try_for_each(|t| lattice(t).map(drop)),
        Command::Lie { lattice: Some(l), .. } | Command::Va { lattice: l, .. } => lattice(l).map(drop),
        Command::Lie { exceptional: Some(pair), prime: Some(p), .. } => {
            if EXCEPTIONAL_PAIRS.contains(&(pair.as_str(), *p)) {
                Ok(())
            } else {
                Err(format!("({pair}, {p}) is not an exceptional pair"))
            }
        }
        Command::Covering { ancestor, order, .. } => GraphAut::new(&lattice(ancestor)?, *order).map(drop).map_err(|e| e.to_string()),
        _ => Ok(()),
    }
}

fn build(cli: &Cli) -> Result<Campaign, String> {
    Ring::parse(&cli.ring).map_err(|e| e.to_string())?;
    validate(&cli.command, cli.wmax)?;
    let cfg = Settings { ring: cli.ring.clone(), wmax: cli.wmax, seed: cli.seed };
    Ok(match &cli.command {
        Command::Roots { types } => presets::roots(types, &cfg),
        Command::CocycleCheck { types } => presets::cocycle(types, &cfg),
        Command::Lie { lattice, exceptional, prime } => match (lattice, exceptional, prime) {
            (_, Some(pair), Some(p)) => presets::exceptional(pair, *p, &cfg),
            (Some(l), None, _) => presets::lie(l, &cfg),
            _ => return Err("lie needs --type or --exceptional with --prime".into()),
        },
        Command::Va { lattice, dims } => presets::va(lattice, dims.unwrap_or((0, cli.wmax)), &cfg),
        Command::Covering { ancestor, order, weight } => presets::covering(ancestor, *order, *weight, &cfg),
        Command::MoonshineDesk => presets::moonshine_desk(&cfg),
        Command::All => presets::all(&cfg),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let campaign = match build(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mode = if cli.sequential || !Mode::available() { Mode::Sequential } else { Mode::Parallel };
    let rep = report::run(campaign, mode);
    let json = rep.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, json + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    for c in rep.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {} {}: {}", c.name, c.target, c.witnesses.first().map(String::as_str).unwrap_or(""));
    }
    if rep.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
