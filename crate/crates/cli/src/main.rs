use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use sorank::ball::{log_q, radius_for};
use sorank::io::{read_code, read_code_words, read_form, write_code};
use sorank::quadratic::RootSampler;
use sorank::{
    ball_size_exact, ball_size_upper_bound, construct_so_code, count_roots_brute,
    count_roots_formula, dual, max_list_size_experiment, rng_from_seed, Ambient, Error,
    ExperimentConfig, ExtField, LinearCode, Repr, RootCount,
};

#[derive(Parser, Debug)]
#[command(
    name = "sorank",
    version,
    about = "Random self-orthogonal rank-metric codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a random self-orthogonal code and print it as a code file.
    Construct(ConstructArgs),
    /// Print the dual of a code file.
    Dual(InputArgs),
    /// Check that a code file holds an independent self-orthogonal basis.
    Verify(InputArgs),
    /// Size of a rank-metric ball.
    Ball(BallArgs),
    /// Count or sample roots of a quadratic form file.
    Roots(RootsArgs),
    /// Find a self-dual basis of GF(q^m) over GF(q).
    SelfdualBasis(SelfDualArgs),
    /// Run a list-size experiment from a config file.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReprArg {
    Matrix,
    Vector,
}

impl From<ReprArg> for Repr {
    fn from(r: ReprArg) -> Repr {
        match r {
            ReprArg::Matrix => Repr::Matrix,
            ReprArg::Vector => Repr::Vector,
        }
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum, default_value = "matrix")]
    repr: ReprArg,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file; standard input when omitted or `-`.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BallArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Radius; defaults to floor(tau * n) when --tau is given.
    #[arg(long, required_unless_present = "tau")]
    r: Option<usize>,
    #[arg(long)]
    tau: Option<f64>,
    /// Print the exact size as a decimal integer (the default).
    #[arg(long, conflicts_with = "bound")]
    exact: bool,
    /// Print log_q of the exact size and of the closed-form upper bound as CSV.
    #[arg(long)]
    bound: bool,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Print this many uniform roots instead of the count.
    #[arg(long)]
    sample: Option<u64>,
    /// Exclude the zero vector.
    #[arg(long)]
    nonzero: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SelfDualArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Also write a `list_size,count` histogram CSV here.
    #[arg(long)]
    emit_hist: Option<PathBuf>,
}

fn read_input(input: &InputArgs) -> Result<String, Error> {
    let mut text = String::new();
    match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p)
                .map_err(|e| Error::Format(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Format(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

enum Outcome {
    Ok(String),
    /// Printed on stdout, exit status 1.
    Failed(String),
}

fn construct(a: &ConstructArgs) -> Result<Outcome, Error> {
    let amb = Ambient::from_params(a.repr.into(), a.q, a.n, a.m)?;
    let code = construct_so_code(&amb, a.k, &mut rng_from_seed(a.seed))?;
    Ok(Outcome::Ok(write_code(&code)))
}

fn verify(text: &str) -> Result<Outcome, Error> {
    let (amb, words) = read_code_words(text)?;
    let code = match LinearCode::new(amb.clone(), words.clone()) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome::Failed(format!("FAIL independence: {e}\n"))),
    };
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate().skip(i) {
            if amb.inner_product(a, b) != 0 {
                return Ok(Outcome::Failed(format!(
                    "FAIL self-orthogonality: words {i} and {j} are not orthogonal\n"
                )));
            }
        }
    }
    let d = dual(&code);
    if let Some(i) = words.iter().position(|w| !d.contains(w)) {
        return Ok(Outcome::Failed(format!(
            "FAIL dual containment: word {i} is not in the dual\n"
        )));
    }
    Ok(Outcome::Ok("OK\n".into()))
}

fn ball(a: &BallArgs) -> Result<Outcome, Error> {
    let r = match (a.r, a.tau) {
        (Some(r), _) => r,
        (None, Some(tau)) => radius_for(tau, a.n),
        (None, None) => unreachable!("clap requires one of --r and --tau"),
    };
    let exact = ball_size_exact(a.n, a.m, a.q, r)?;
    if !a.bound {
        return Ok(Outcome::Ok(format!("{exact}\n")));
    }
    let tau = a.tau.unwrap_or(r as f64 / a.n as f64);
    let bound = if r == 0 {
        0.0
    } else {
        ball_size_upper_bound(a.n, a.m, a.q, tau)?
    };
    Ok(Outcome::Ok(format!(
        "q,n,m,r,tau,log_q_size,log_q_bound\n{},{},{},{},{},{:.9},{:.9}\n",
        a.q,
        a.n,
        a.m,
        r,
        tau,
        log_q(&exact, a.q),
        bound
    )))
}

fn roots(a: &RootsArgs) -> Result<Outcome, Error> {
    let form = read_form(&read_input(&a.input)?)?;
    if let Some(count) = a.sample {
        let sampler = RootSampler::new(form, a.nonzero)?;
        let mut rng = rng_from_seed(a.seed);
        let mut out = String::new();
        for _ in 0..count {
            let x: Vec<String> = sampler
                .sample(&mut rng)?
                .iter()
                .map(u32::to_string)
                .collect();
            out.push_str(&x.join(" "));
            out.push('\n');
        }
        return Ok(Outcome::Ok(out));
    }
    let total = match count_roots_brute(&form) {
        Ok(c) => BigUint::from(c),
        // too large to enumerate, but the closed form may still pin it down
        Err(e @ Error::TooLarge { .. }) => match count_roots_formula(&form) {
            RootCount::Exact(v) => v,
            RootCount::EitherOf(..) => return Err(e),
        },
        Err(e) => return Err(e),
    };
    let count = if a.nonzero { total - 1u32 } else { total };
    Ok(Outcome::Ok(format!("{count}\n")))
}

fn selfdual_basis(a: &SelfDualArgs) -> Result<Outcome, Error> {
    let ext = ExtField::from_q(a.q, a.m)?;
    match ext.find_self_dual_basis(&mut rng_from_seed(a.seed))? {
        Some(b) => {
            let elems: Vec<String> = b.elems().iter().map(u32::to_string).collect();
            Ok(Outcome::Ok(format!(
                "field={} base={}\n{}\n",
                sorank::io::field_tag(ext.field()),
                sorank::io::field_tag(ext.base()),
                elems.join(" ")
            )))
        }
        None => Err(Error::InvalidParameter(format!(
            "GF({}^{}) has no self-dual basis over GF({}): q is odd and m is even",
            a.q, a.m, a.q
        ))),
    }
}

fn experiment(a: &ExperimentArgs) -> Result<Outcome, Error> {
    let text = fs::read_to_string(&a.config)
        .map_err(|e| Error::Format(format!("{}: {e}", a.config.display())))?;
    let cfg: ExperimentConfig = text.parse()?;
    eprintln!(
        "config: {}",
        cfg.to_config_string().trim_end().replace('\n', " ")
    );
    let report = max_list_size_experiment(&cfg)?;
    eprintln!(
        "finished {} trials in {:.3}s",
        cfg.trials,
        report.wall_time.as_secs_f64()
    );
    if let Some(path) = &a.emit_hist {
        fs::write(path, report.histogram_csv())
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome::Ok(report.to_csv()))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Dual(a) => Ok(Outcome::Ok(write_code(&dual(&read_code(&read_input(a)?)?)))),
        Command::Verify(a) => verify(&read_input(a)?),
        Command::Ball(a) => ball(a),
        Command::Roots(a) => roots(a),
        Command::SelfdualBasis(a) => selfdual_basis(a),
        Command::Experiment(a) => experiment(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    eprintln!("sorank: {:?}", cli.command);
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("sorank: done in {:.3}s", start.elapsed().as_secs_f64());
    let mut stdout = io::stdout().lock();
    match result {
        Ok(Outcome::Ok(out)) => {
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(out)) => {
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.code());
            ExitCode::from(1)
        }
    }
}
