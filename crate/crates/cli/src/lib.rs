//! Argument handling for the `rtbasis` binary, kept in a library so the
//! integration tests can drive it without spawning processes.

use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use rtbasis::fuzz::{round_trip_trials, FuzzConfig};
use rtbasis::laurent::weight_label;
use rtbasis::pairing::{gram_matrix, unimodular_check};
use rtbasis::{standard_basis, steinberg_basis, Family, GroupType, LaurentPoly, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rtbasis", version, about = "Free bases of R(T) over R(G) for SU(n) and SO(2n)")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupArg {
    Su,
    SoEven,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum BasisArg {
    #[default]
    Standard,
    Steinberg,
}

#[derive(Debug, clap::Args)]
struct GroupOpts {
    #[arg(long, value_enum)]
    group: GroupArg,
    /// `n` for SU(n), rank for SO(2n).
    #[arg(long)]
    n: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// List a basis of R(T) over R(G).
    Basis {
        #[command(flatten)]
        g: GroupOpts,
        #[arg(long, value_enum, default_value_t)]
        basis: BasisArg,
    },
    /// Write an element of R(T) over the standard basis.
    Decompose {
        #[command(flatten)]
        g: GroupOpts,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t)]
        basis: BasisArg,
    },
    /// List the Steinberg basis of SU(n).
    Steinberg {
        #[command(flatten)]
        g: GroupOpts,
    },
    /// Gram matrix of the index pairing on a basis, with its determinant.
    Gram {
        #[command(flatten)]
        g: GroupOpts,
        #[arg(long, value_enum, default_value_t)]
        basis: BasisArg,
    },
    /// Seeded decompose/recompose round trips.
    Verify {
        #[command(flatten)]
        g: GroupOpts,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Output { code, stdout: String::new(), stderr }
    }
}

enum Failure {
    User(String),
    Internal(String),
}

impl From<rtbasis::Error> for Failure {
    fn from(e: rtbasis::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

/// Runs one command line. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Output::fail(EXIT_USER, text) } else { Output::ok(text) };
        }
    };
    guarded(|| dispatch(cli.verb))
}

/// Maps a verb's outcome, or a panic inside it, onto an exit code.
fn guarded(body: impl FnOnce() -> Outcome) -> Output {
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let result = panic::catch_unwind(AssertUnwindSafe(body));
    panic::set_hook(hook);
    match result {
        Ok(Ok(stdout)) => Output::ok(stdout),
        Ok(Err(Failure::User(msg))) => Output::fail(EXIT_USER, format!("error: {msg}\n")),
        Ok(Err(Failure::Internal(msg))) => Output::fail(EXIT_INTERNAL, format!("internal error: {msg}\n")),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Output::fail(EXIT_INTERNAL, format!("internal error: {msg}\n"))
        }
    }
}

fn group(opts: &GroupOpts) -> Result<GroupType, Failure> {
    let family = match opts.group {
        GroupArg::Su => Family::SU,
        GroupArg::SoEven => Family::SOEven,
    };
    Ok(GroupType::new(family, opts.n)?)
}

fn steinberg(g: GroupType) -> Result<Vec<Weight>, Failure> {
    if g.family() != Family::SU {
        return Err(Failure::User(format!("the Steinberg basis is only available for SU(n), not {g}")));
    }
    Ok(steinberg_basis(g.n())?)
}

fn chosen_basis(g: GroupType, which: BasisArg) -> Result<Vec<Weight>, Failure> {
    match which {
        BasisArg::Standard => Ok(standard_basis(g).basis().to_vec()),
        BasisArg::Steinberg => steinberg(g),
    }
}

fn list(g: GroupType, basis: &[Weight], json: bool) -> String {
    let labels: Vec<String> = basis.iter().map(weight_label).collect();
    if json {
        format!("{}\n", json!({ "group": g.to_string(), "basis": labels }))
    } else {
        format!("{}\n", labels.join(" "))
    }
}

fn dispatch(verb: Verb) -> Outcome {
    match verb {
        Verb::Basis { g: opts, basis } => {
            let g = group(&opts)?;
            Ok(list(g, &chosen_basis(g, basis)?, opts.json))
        }
        Verb::Steinberg { g: opts } => {
            let g = group(&opts)?;
            Ok(list(g, &steinberg(g)?, opts.json))
        }
        Verb::Decompose { g: opts, expr, basis } => {
            let g = group(&opts)?;
            if let BasisArg::Steinberg = basis {
                return Err(Failure::User("decompose supports only the standard basis".into()));
            }
            let f = LaurentPoly::parse(g, &expr)?;
            let d = standard_basis(g).decompose(&f)?;
            if d.recompose() != f {
                return Err(Failure::Internal(format!("decomposition of {f} does not recompose")));
            }
            Ok(if opts.json { format!("{}\n", d.to_json()) } else { format!("{d}\n") })
        }
        Verb::Gram { g: opts, basis } => {
            let g = group(&opts)?;
            let b = chosen_basis(g, basis)?;
            let gm = gram_matrix(&b, g)?;
            let (det, unit) = unimodular_check(&gm)?;
            if opts.json {
                let mut v = gm.to_json();
                v["determinant"] = json!(det.to_string());
                v["unimodular"] = json!(unit);
                Ok(format!("{v}\n"))
            } else {
                let mut out = gm.to_table();
                let _ = writeln!(out, "det = {det}{}", if unit { " (unit)" } else { "" });
                Ok(out)
            }
        }
        Verb::Verify { g: opts, trials, seed } => {
            let g = group(&opts)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ok = round_trip_trials(&mut rng, g, trials, &FuzzConfig::default())?;
            let text = if opts.json {
                format!("{}\n", json!({ "group": g.to_string(), "seed": seed, "trials": trials, "passed": ok }))
            } else {
                format!("{ok}/{trials} round-trips OK\n")
            };
            if ok == trials {
                Ok(text)
            } else {
                Err(Failure::Internal(format!("{ok}/{trials} round-trips matched (seed {seed})")))
            }
        }
    }
}
