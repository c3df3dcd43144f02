mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{DecoArgs, KindArg, MethodArg};
use report::Report;
use weildeco::decorations::SampleConfig;

/// Weil decorations of reflexive sheaves on toric varieties.
#[derive(Parser, Debug)]
#[command(name = "weildeco", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed of every randomized check.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Samples per randomized check.
    #[arg(long, global = true, default_value_t = 500)]
    samples: usize,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fans.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Matrix data of HM(u).
    #[command(subcommand)]
    U(UCmd),
    /// Generators and membership for HM(u).
    #[command(subcommand)]
    Hm(HmCmd),
    /// Decorations.
    #[command(subcommand)]
    Deco(DecoCmd),
    /// The monad of the classical bundle.
    #[command(subcommand)]
    Monad(MonadCmd),
    /// Built-in golden checks.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum FanCmd {
    /// Rays, cones and validity of a fan (`P4`, `affine(3)`, `P1xP1` or `@fan.json`).
    Show {
        #[arg(long)]
        fan: String,
    },
}

#[derive(Subcommand, Debug)]
enum UCmd {
    Validate {
        #[arg(long)]
        fan: String,
        /// JSON matrix, `classical`, `zero`, or `@file`.
        #[arg(long)]
        u: String,
    },
}

#[derive(Subcommand, Debug)]
enum HmCmd {
    Gens {
        #[arg(long)]
        fan: String,
        #[arg(long)]
        u: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Intersect)]
        method: MethodArg,
    },
    Member {
        #[arg(long)]
        fan: String,
        #[arg(long)]
        u: String,
        /// JSON pair `["f", "g"]`.
        #[arg(long)]
        element: String,
    },
}

#[derive(Args, Debug)]
struct DecoOpts {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    fan: String,
    #[arg(long)]
    u: Option<String>,
    /// Divisor of a rank-one decoration, e.g. `{"H0": 2, "H1": -1}`.
    #[arg(long)]
    divisor: Option<String>,
    /// Residue targets of a seminorm decoration, e.g. `{"H1": "x2*x3"}`.
    #[arg(long)]
    targets: Option<String>,
}

impl DecoOpts {
    fn args(&self) -> DecoArgs<'_> {
        DecoArgs {
            kind: self.kind,
            fan: &self.fan,
            u: self.u.as_deref(),
            divisor: self.divisor.as_deref(),
            targets: self.targets.as_deref(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum DecoCmd {
    /// Coefficients of `W(v)` at one prime, or at every toric prime.
    Eval {
        #[command(flatten)]
        opts: DecoOpts,
        #[arg(long)]
        element: String,
        #[arg(long)]
        prime: Option<String>,
    },
    /// Randomized check of the decoration axioms.
    Axioms {
        #[command(flatten)]
        opts: DecoOpts,
        /// Extra hypersurface primes.
        #[arg(long = "hypersurface")]
        hypersurfaces: Vec<String>,
    },
    /// Values on the toric slice and, with --ray, the filtration at a ray.
    Slice {
        #[command(flatten)]
        opts: DecoOpts,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long)]
        ray: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum MonadCmd {
    Verify,
}

fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Fan(_) => "fan show",
        Command::U(_) => "u validate",
        Command::Hm(HmCmd::Gens { .. }) => "hm gens",
        Command::Hm(HmCmd::Member { .. }) => "hm member",
        Command::Deco(DecoCmd::Eval { .. }) => "deco eval",
        Command::Deco(DecoCmd::Axioms { .. }) => "deco axioms",
        Command::Deco(DecoCmd::Slice { .. }) => "deco slice",
        Command::Monad(_) => "monad verify",
        Command::Selftest => "selftest",
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let config = SampleConfig { samples: cli.samples, seed: cli.seed };
    match &cli.command {
        Command::Fan(FanCmd::Show { fan }) => commands::fan_show(fan),
        Command::U(UCmd::Validate { fan, u }) => commands::u_validate(fan, u),
        Command::Hm(HmCmd::Gens { fan, u, method }) => commands::hm_gens(fan, u, *method),
        Command::Hm(HmCmd::Member { fan, u, element }) => commands::hm_member(fan, u, element),
        Command::Deco(DecoCmd::Eval { opts, element, prime }) => commands::deco_eval(&opts.args(), element, prime.as_deref()),
        Command::Deco(DecoCmd::Axioms { opts, hypersurfaces }) => commands::deco_axioms(&opts.args(), hypersurfaces, config),
        Command::Deco(DecoCmd::Slice { opts, radius, ray }) => commands::deco_slice(&opts.args(), *radius, ray.as_deref()),
        Command::Monad(MonadCmd::Verify) => commands::monad(),
        Command::Selftest => commands::selftest(config),
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
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = run(&cli).unwrap_or_else(|e| Report::failure(name(&cli.command), &e));
    let _ = writeln!(std::io::stdout().lock(), "{}", report.render(cli.json));
    if report.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
