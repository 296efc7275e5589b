use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use langparam::corpus::Family;
use langparam::dsl::{parse_kind, parse_rep, print_irred};
use langparam::json::{
    bessel_json, character_json, enhanced_json, exact_json, fj_json, theta_json,
};
use langparam::lfactors::{epsilon_half_psi, generic_obstruction};
use langparam::localfield::{hilbert_symbol, FormVariant, OrthSpaceLabel};
use langparam::packets::EnhancedParam;
use langparam::sweep::{parse_checks, run_sweep, Check, SweepConfig};
use langparam::thetaggp::{bessel_recipe, fj_recipe, mp_theta_odd, prasad_p1, prasad_p2};
use langparam::{Error, GroupKind, PAdicField, Sign, SquareClass, WdRep};

#[derive(Parser)]
#[command(
    name = "langparam",
    version,
    about = "Exact L-parameter calculus over Q_p"
)]
struct Cli {
    /// Residue characteristic.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Emit JSON where a plain form exists.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert symbol (a, b).
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
    /// Canonical square-class label of n.
    Sqclass {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Component group and character table of an enhanced parameter.
    Packet {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep: String,
        /// Values on a1, a2, ... as a comma-separated ±1 list.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        /// Whittaker datum class.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
    },
    /// epsilon(1/2, rep, psi_c).
    Epsilon {
        #[arg(long)]
        rep: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        c: i64,
    },
    /// Whether L(s, Ad ∘ rep) is regular at s = 1.
    Generic {
        #[arg(long)]
        group: String,
        #[arg(long)]
        rep: String,
    },
    /// Branching-recipe character tables.
    Recipe {
        which: RecipeKind,
        #[arg(long = "repM")]
        rep_m: String,
        #[arg(long = "repN")]
        rep_n: String,
    },
    /// Parameter-level theta maps.
    Theta {
        #[command(subcommand)]
        map: ThetaMap,
    },
    /// Consistency verifiers.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Seeded sweep over random corpora, JSONL on stdout.
    Sweep {
        /// Comma-separated primes.
        #[arg(long, default_value = "3,5")]
        primes: String,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        group: Option<FamilyArg>,
        #[arg(long, default_value_t = 8)]
        max_dim: u32,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        allow_nontempered: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RecipeKind {
    Bessel,
    Fj,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sp,
    SoOdd,
    SoEven,
    Mp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Sp => Family::Sp,
            FamilyArg::SoOdd => Family::SoOdd,
            FamilyArg::SoEven => Family::SoEven,
            FamilyArg::Mp => Family::Mp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plus,
    Minus,
}

#[derive(Args)]
struct EnhancedArgs {
    #[arg(long)]
    rep: String,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Whittaker or psi label.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    label: i64,
}

#[derive(Subcommand)]
enum ThetaMap {
    /// Sp(W) to O(V) with dim V = dim W + 2.
    P1 {
        #[command(flatten)]
        e: EnhancedArgs,
        /// Discriminant of V.
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        variant: Option<VariantArg>,
    },
    /// O(V) to Sp(W) with dim W = dim V.
    P2 {
        #[command(flatten)]
        e: EnhancedArgs,
    },
    /// Mp(W) to SO(V) odd, discriminant c.
    Mp {
        #[command(flatten)]
        e: EnhancedArgs,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        c: i64,
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Fourier–Jacobi against Bessel through the see-saw.
    Seesaw {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_dim: u32,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        allow_nontempered: bool,
    },
}

enum Outcome {
    Text(String),
    Json(Value),
    Report { body: String, pass: bool },
}

fn field(cli: &Cli) -> langparam::Result<PAdicField> {
    let p = cli
        .p
        .ok_or_else(|| Error::MalformedParameter("--p is required".into()))?;
    PAdicField::new(p)
}

fn parse_signs(text: &str) -> langparam::Result<Vec<Sign>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .ok()
                .and_then(Sign::from_i64)
                .ok_or_else(|| Error::NotASign(s.trim().to_string()))
        })
        .collect()
}

fn group_kind(text: &str, rep: &WdRep) -> langparam::Result<GroupKind> {
    parse_kind(text, rep.field(), Some(&rep.det()))
}

fn enhanced(
    kind: GroupKind,
    rep: WdRep,
    eta: Option<&str>,
    label: SquareClass,
) -> langparam::Result<EnhancedParam> {
    match eta {
        None => EnhancedParam::trivial(kind, rep, label),
        Some(text) => EnhancedParam::with_basis_values(kind, rep, &parse_signs(text)?, label),
    }
}

fn primes(text: &str) -> langparam::Result<Vec<u64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::MalformedParameter(format!("bad prime {s:?}")))
        })
        .collect()
}

fn sweep_outcome(cfg: SweepConfig) -> langparam::Result<Outcome> {
    let report = run_sweep(&cfg)?;
    Ok(Outcome::Report {
        body: report.to_jsonl(),
        pass: report.all_pass(),
    })
}

fn run(cli: &Cli) -> langparam::Result<Outcome> {
    match &cli.command {
        Command::Hilbert { a, b } => {
            let f = field(cli)?;
            let s = hilbert_symbol(f.class_of(*a)?, f.class_of(*b)?)?;
            Ok(if cli.json {
                Outcome::Json(json!({"p": f.p(), "a": a, "b": b, "symbol": s.as_i32()}))
            } else {
                Outcome::Text(s.to_string())
            })
        }
        Command::Sqclass { n } => {
            let c = field(cli)?.class_of(*n)?;
            Ok(if cli.json {
                Outcome::Json(json!({"n": n, "label": c.label()}))
            } else {
                Outcome::Text(c.to_string())
            })
        }
        Command::Packet { group, rep, eta, c } => {
            let f = field(cli)?;
            let phi = parse_rep(rep, f)?;
            let kind = group_kind(group, &phi)?;
            let label = f.class_of(c.unwrap_or(1))?;
            let e = enhanced(kind, phi, eta.as_deref(), label)?;
            let mut doc = enhanced_json(&e);
            if c.is_some() {
                let shift = e.group.eta_c(label)?;
                doc["eta_c"] = character_json(&e.group, &shift);
            }
            Ok(Outcome::Json(doc))
        }
        Command::Epsilon { rep, c } => {
            let f = field(cli)?;
            let value = epsilon_half_psi(&parse_rep(rep, f)?, f.class_of(*c)?)?;
            Ok(if cli.json {
                Outcome::Json(exact_json(&value))
            } else {
                Outcome::Text(value.to_string())
            })
        }
        Command::Generic { group, rep } => {
            let phi = parse_rep(rep, field(cli)?)?;
            let kind = group_kind(group, &phi)?;
            let obstruction = generic_obstruction(&phi, kind)?;
            Ok(match (cli.json, obstruction) {
                (true, o) => Outcome::Json(json!({
                    "generic": o.is_none(),
                    "pole": o.map(|x| print_irred(&x)),
                })),
                (false, None) => Outcome::Text("true".into()),
                (false, Some(x)) => Outcome::Text(format!(
                    "false (pole at s=1 from {} in the adjoint)",
                    print_irred(&x)
                )),
            })
        }
        Command::Recipe {
            which,
            rep_m,
            rep_n,
        } => {
            let f = field(cli)?;
            let (m, n) = (parse_rep(rep_m, f)?, parse_rep(rep_n, f)?);
            Ok(Outcome::Json(match which {
                RecipeKind::Bessel => bessel_json(&bessel_recipe(&m, &n)?),
                RecipeKind::Fj => fj_json(&fj_recipe(&m, &n)?),
            }))
        }
        Command::Theta { map } => {
            let f = field(cli)?;
            match map {
                ThetaMap::P1 { e, disc, variant } => {
                    let phi = parse_rep(&e.rep, f)?;
                    let v =
                        OrthSpaceLabel::new(phi.dim() + 1, f.class_of(*disc)?, FormVariant::Plus)?;
                    let src = enhanced(GroupKind::Sp, phi, e.eta.as_deref(), f.class_of(e.label)?)?;
                    let lift = prasad_p1(&src, &v)?;
                    let mut doc = theta_json(&lift);
                    if let Some(var) = variant {
                        let var = match var {
                            VariantArg::Plus => FormVariant::Plus,
                            VariantArg::Minus => FormVariant::Minus,
                        };
                        doc["selected"] = enhanced_json(&lift.select(var)?);
                    }
                    Ok(Outcome::Json(doc))
                }
                ThetaMap::P2 { e } => {
                    let phi = parse_rep(&e.rep, f)?;
                    let kind = group_kind("so-even", &phi)?;
                    let src = enhanced(kind, phi, e.eta.as_deref(), f.class_of(e.label)?)?;
                    Ok(Outcome::Json(theta_json(&prasad_p2(&src)?)))
                }
                ThetaMap::Mp { e, c, dual } => {
                    let phi = parse_rep(&e.rep, f)?;
                    let src = enhanced(GroupKind::Mp, phi, e.eta.as_deref(), f.class_of(e.label)?)?;
                    Ok(Outcome::Json(enhanced_json(&mp_theta_odd(
                        &src,
                        f.class_of(*c)?,
                        *dual,
                    )?)))
                }
            }
        }
        Command::Verify {
            what:
                VerifyCmd::Seesaw {
                    count,
                    max_dim,
                    output,
                    allow_nontempered,
                },
        } => {
            let f = field(cli)?;
            sweep_outcome(SweepConfig {
                primes: vec![f.p()],
                family: None,
                max_dim: *max_dim,
                count: *count,
                seed: cli.seed,
                checks: vec![Check::Seesaw],
                output: output.clone(),
                allow_nontempered: *allow_nontempered,
            })
        }
        Command::Sweep {
            primes: list,
            checks,
            group,
            max_dim,
            count,
            output,
            allow_nontempered,
        } => {
            let primes = match cli.p {
                Some(p) => vec![p],
                None => primes(list)?,
            };
            sweep_outcome(SweepConfig {
                primes,
                family: group.map(Family::from),
                max_dim: *max_dim,
                count: *count,
                seed: cli.seed,
                checks: parse_checks(checks)?,
                output: output.clone(),
                allow_nontempered: *allow_nontempered,
            })
        }
    }
}

/// Write to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Text(s)) => {
            emit(&format!("{s}\n"));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Json(v)) => {
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("values serialize")
            ));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Report { body, pass }) => {
            emit(&body);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
