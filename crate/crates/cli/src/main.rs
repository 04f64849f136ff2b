use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use metacyc::oracle::{self, OracleOptions, DEFAULT_MAX_BITS};
use metacyc::suites::{self, Suite, SuiteOptions, SuiteReport};
use metacyc::{structure, Automorphism, Error, Family, GroupParams};

#[derive(Parser)]
#[command(
    name = "metacyc",
    version,
    about = "Automorphisms of nonsplit metacyclic 2-groups"
)]
struct Cli {
    /// Print tables instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    /// Worker threads for the oracle.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Cap on the candidate-space exponent 2(a+b).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate parameters and print derived constants.
    Classify { spec: String },
    /// Structure of Aut(H): X, Y, X ∩ Y and the order.
    Structure { spec: String },
    /// Automorphism counting, listing and application.
    #[command(subcommand)]
    Aut(AutCommand),
    /// Group element arithmetic.
    #[command(subcommand)]
    Elem(ElemCommand),
    /// Run a property suite; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum AutCommand {
    Count {
        spec: String,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    List {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    Apply {
        spec: String,
        /// x1,x2,y,y2
        #[arg(long, allow_hyphen_values = true)]
        quad: String,
        /// Element as a^u*b^v.
        #[arg(long)]
        elem: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
}

#[derive(Subcommand)]
enum ElemCommand {
    Mul {
        spec: String,
        g: String,
        h: String,
    },
    Pow {
        spec: String,
        g: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    Inv {
        spec: String,
        g: String,
    },
    Order {
        spec: String,
        g: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    spec: String,
    #[arg(long, default_value = "all")]
    suite: String,
    /// Random pairs per law on groups too large for exhaustive checks.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

enum Failure {
    Lib(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn parse(spec: &str) -> Result<GroupParams, Error> {
    spec.parse()
}

fn oracle_opts(cli: &Cli) -> OracleOptions {
    OracleOptions {
        max_bits: cli.max_bits,
        jobs: cli.jobs,
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Classify { spec } => classify(cli, &parse(spec)?),
        Command::Structure { spec } => {
            let p = parse(spec)?;
            let r = structure::structure_report(&p)?;
            if cli.human {
                println!("{} (family {}, {})", r.spec, r.family, r.branch);
                for (name, s) in [("X", &r.x), ("Y", &r.y), ("X cap Y", &r.x_cap_y)] {
                    println!("{name:8} 2^{:<3} {}", s.order_log2, s.description);
                    for g in &s.generators {
                        let q = g.aut.quad();
                        println!(
                            "           {:14} ({}, {}; {}, {})",
                            g.name, q.x1, q.x2, q.y, q.y2
                        );
                    }
                }
                println!("|Aut|    2^{}", r.aut_order_log2);
            } else {
                emit(&serde_json::to_value(&r).expect("json"));
            }
            Ok(())
        }
        Command::Aut(cmd) => aut(cli, cmd),
        Command::Elem(cmd) => elem(cli, cmd),
        Command::Verify(args) => verify(cli, args),
    }
}

fn classify(cli: &Cli, p: &GroupParams) -> Result<(), Failure> {
    let classified = p.is_classified();
    let v = json!({
        "spec": p.spec_string(),
        "family": p.family(),
        "a": p.a(),
        "b": p.b(),
        "c": p.c(),
        "r": p.r(),
        "d": p.d(),
        "e": p.e(),
        "f": p.f(),
        "z": p.z(),
        "w": p.w().map(|w| w.value()),
        "order_log2": p.order_bits(),
        "aut_order_log2": if classified { Some(structure::aut_order_log2(p)?) } else { None },
    });
    if cli.human {
        println!("{}  family {}", p.spec_string(), p.family());
        println!(
            "a={} b={} c={} r={} d={} f={} z={}",
            p.a(),
            p.b(),
            p.c(),
            p.r(),
            p.d(),
            p.f(),
            p.z()
        );
        if let Some(e) = p.e() {
            println!("e={e}");
        }
        if let Some(w) = p.w() {
            println!("w={w} (mod 2^{})", w.bits());
        }
        println!("|H| = 2^{}", p.order_bits());
        if classified {
            println!("|Aut(H)| = 2^{}", structure::aut_order_log2(p)?);
        }
    } else {
        emit(&v);
    }
    Ok(())
}

fn aut(cli: &Cli, cmd: &AutCommand) -> Result<(), Failure> {
    match cmd {
        AutCommand::Count { spec, method } => {
            let p = parse(spec)?;
            let (count, name) = match method {
                Method::Formula => (1u64 << structure::aut_order_log2(&p)?, "formula"),
                Method::Oracle => (
                    oracle::count_automorphisms(&p, &oracle_opts(cli))?,
                    "oracle",
                ),
            };
            if cli.human {
                println!("{count}");
            } else {
                emit(&json!({ "spec": p.spec_string(), "method": name, "count": count }));
            }
            Ok(())
        }
        AutCommand::List {
            spec,
            format: Format::Jsonl,
        } => {
            let p = parse(spec)?;
            let auts = oracle::enumerate_automorphisms(&p, &oracle_opts(cli))?;
            let stdout = io::stdout();
            let mut out = io::BufWriter::new(stdout.lock());
            oracle::write_jsonl(&mut out, &p, &auts)?;
            out.flush()
                .map_err(|e| Error::Parse(format!("write failed: {e}")))?;
            Ok(())
        }
        AutCommand::Apply { spec, quad, elem } => {
            let p = parse(spec)?;
            let q: Vec<i64> = quad
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad quadruple `{quad}`")))?;
            let [x1, x2, y, y2] = q[..] else {
                return Err(
                    Error::Parse(format!("quadruple needs 4 entries, got `{quad}`")).into(),
                );
            };
            let a = Automorphism::new(&p, x1, x2, y, y2)?;
            let g = p.parse_element(elem)?;
            let image = a.apply(g);
            if cli.human {
                println!("{a}: {g} -> {image}");
            } else {
                emit(&json!({ "automorphism": a, "elem": g, "image": image }));
            }
            Ok(())
        }
    }
}

fn elem(cli: &Cli, cmd: &ElemCommand) -> Result<(), Failure> {
    let (spec, result): (&String, Value) = match cmd {
        ElemCommand::Mul { spec, g, h } => {
            let p = parse(spec)?;
            let r = p.mul(p.parse_element(g)?, p.parse_element(h)?);
            (spec, json!(r))
        }
        ElemCommand::Pow { spec, g, k } => {
            let p = parse(spec)?;
            (spec, json!(p.pow(p.parse_element(g)?, *k)))
        }
        ElemCommand::Inv { spec, g } => {
            let p = parse(spec)?;
            (spec, json!(p.inv(p.parse_element(g)?)))
        }
        ElemCommand::Order { spec, g } => {
            let p = parse(spec)?;
            (spec, json!(p.order_of(p.parse_element(g)?)))
        }
    };
    if cli.human {
        match &result {
            Value::Array(uv) => println!("a^{}*b^{}", uv[0], uv[1]),
            other => println!("{other}"),
        }
    } else {
        emit(&json!({ "spec": spec, "result": result }));
    }
    Ok(())
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<(), Failure> {
    let p = parse(&args.spec)?;
    if p.family() == Family::Unclassified {
        return Err(Error::Unclassified.into());
    }
    let suite: Suite = args.suite.parse()?;
    let opts = SuiteOptions {
        oracle: oracle_opts(cli),
        samples: args.samples,
        seed: args.seed,
        ..SuiteOptions::default()
    };
    let report = suites::run_suite(&p, suite, &opts)?;
    print_report(cli, &report);
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn print_report(cli: &Cli, r: &SuiteReport) {
    if cli.human {
        println!("{} suite {}", r.spec, r.suite);
        for c in &r.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                println!("  {mark} {}", c.name);
            } else {
                println!("  {mark} {} ({})", c.name, c.detail);
            }
        }
        let failed = r.checks.iter().filter(|c| !c.passed).count();
        println!("{} checks, {failed} failed", r.checks.len());
    } else {
        emit(&serde_json::to_value(r).expect("json"));
    }
}
