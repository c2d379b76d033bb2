//! Command-line front end. Text output for matrices and orbits, JSON for
//! reports; every verb is deterministic for a fixed argument list.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use satmat::{
    build_tp, census_with_threads, ex_exact, greedy_saturate, is_ordinary, orbit, pad_middle,
    reduces_to_class, sample_fraction, sat_exact, verify_lift_lemma, verify_saturating, ClassId,
    Error, Matrix01, PermutationMatrix,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "satmat",
    version,
    about = "Saturating constructions for forbidden 0-1 patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Pattern input, either inline or from a matrix file.
#[derive(Args)]
#[command(group(ArgGroup::new("pattern").required(true).args(["perm", "file"])))]
struct PatternArgs {
    /// pattern as a one-line permutation, e.g. "4 1 3 5 2"
    #[arg(long)]
    perm: Option<String>,
    /// pattern as a text file of 0/1 rows
    #[arg(long)]
    file: Option<PathBuf>,
}

impl PatternArgs {
    fn matrix(&self) -> Result<Matrix01, Failure> {
        match (&self.perm, &self.file) {
            (Some(text), None) => {
                let p: PermutationMatrix = text.parse().map_err(usage("--perm"))?;
                Ok(p.to_matrix())
            }
            (None, Some(path)) => read_matrix(path),
            _ => unreachable!("clap enforces the group"),
        }
    }

    /// Like `matrix`, for verbs that only make sense on permutations.
    fn permutation(&self) -> Result<PermutationMatrix, Failure> {
        match (&self.perm, &self.file) {
            (Some(text), None) => text.parse().map_err(usage("--perm")),
            (None, Some(path)) => {
                let m = read_matrix(path)?;
                let mut sigma = Vec::with_capacity(m.rows());
                for r in 1..=m.rows() {
                    let cols: Vec<_> = (1..=m.cols()).filter(|&c| m.get(r, c)).collect();
                    let [c] = cols[..] else {
                        return Err(Failure::Usage(format!(
                            "--file: row {r} has {} ones, a permutation needs exactly one",
                            cols.len()
                        )));
                    };
                    sigma.push(c);
                }
                PermutationMatrix::from_sigma(&sigma).map_err(usage("--file"))
            }
            _ => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report class witnesses and ordinariness of a permutation (JSON)
    Classify {
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// List the images of a permutation under the eight symmetries
    Orbit {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        json: bool,
    },
    /// Emit the four-section frame for a permutation as matrix text
    Construct {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        json: bool,
    },
    /// Complete a matrix to a saturating one and print it
    Saturate {
        #[command(flatten)]
        pattern: PatternArgs,
        /// host matrix file to complete; defaults to the constructed frame
        #[arg(long)]
        input: Option<PathBuf>,
        /// widen the middle by this many zero rows and columns first
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check that a matrix saturates a pattern; fails with the reason if not
    Verify {
        /// matrix file to check
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        json: bool,
    },
    /// Exact minimum ones over saturating n x n matrices (JSON)
    Sat {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Exact maximum ones over avoiding n x n matrices (JSON)
    Ex {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Classify every permutation of size k and tally the classes
    Census {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Estimate the ordinary fraction at size k by seeded sampling (JSON)
    Sample {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the tensor lift of the saturation value at one size (JSON)
    LiftCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        pattern: PatternArgs,
    },
}

/// A failed run: usage problems exit 2, domain verdicts exit 1.
enum Failure {
    Usage(String),
    Domain(String),
}

fn usage(option: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("{option}: {e}"))
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::AlreadyContains | Error::NoAvoidingMatrix => Failure::Domain(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read_matrix(path: &PathBuf) -> Result<Matrix01, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("--input/--file {}: {e}", path.display())))?;
    text.parse().map_err(usage("--file"))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { pattern } => {
            let p = pattern.permutation()?;
            let mut witnesses = serde_json::Map::new();
            for (name, class) in [
                ("class1", ClassId::Class1),
                ("class2", ClassId::Class2),
                ("class3", ClassId::Class3),
                ("class4", ClassId::Class4),
            ] {
                let value = match reduces_to_class(&p, class) {
                    Some(w) => serde_json::to_value(&w).unwrap(),
                    None => serde_json::Value::Null,
                };
                witnesses.insert(name.into(), value);
            }
            print_json(&json!({
                "pattern": p.to_string(),
                "k": p.k(),
                "ordinary": is_ordinary(&p),
                "witnesses": witnesses,
            }));
        }
        Command::Orbit { pattern, json } => {
            let p = pattern.permutation()?;
            let images: Vec<String> = orbit(&p).iter().map(|m| m.to_string()).collect();
            if json {
                print_json(&json!({ "pattern": p.to_string(), "orbit": images }));
            } else {
                for image in images {
                    println!("{image}");
                }
            }
        }
        Command::Construct { pattern, json } => {
            let p = pattern.permutation()?;
            let frame = build_tp(&p);
            if json {
                print_json(&json!({
                    "k": p.k(),
                    "n": frame.rows(),
                    "matrix": frame.to_string(),
                }));
            } else {
                print!("{frame}");
            }
        }
        Command::Saturate {
            pattern,
            input,
            pad,
            json,
        } => {
            let target = pattern.matrix()?;
            let start = match &input {
                Some(path) => read_matrix(path)?,
                None => build_tp(&pattern.permutation()?),
            };
            let mut done = greedy_saturate(&start, &target)?;
            if pad > 0 {
                done = pad_middle(&done, pad)?;
            }
            if json {
                match verify_saturating(&done, &target) {
                    Ok(cert) => print_json(&serde_json::to_value(&cert).unwrap()),
                    Err(fail) => return Err(Failure::Domain(fail.to_string())),
                }
            } else {
                print!("{done}");
            }
        }
        Command::Verify {
            input,
            pattern,
            json,
        } => {
            let host = read_matrix(&input)?;
            let target = pattern.matrix()?;
            match verify_saturating(&host, &target) {
                Ok(cert) => {
                    if json {
                        print_json(&serde_json::to_value(&cert).unwrap());
                    } else {
                        println!("saturating");
                    }
                }
                Err(fail) => {
                    if json {
                        print_json(&json!({ "saturating": false, "reason": fail.to_string() }));
                    } else {
                        println!("not saturating: {fail}");
                    }
                    return Err(Failure::Domain(String::new()));
                }
            }
        }
        Command::Sat { n, pattern } => {
            let result = sat_exact(n, &pattern.matrix()?)?;
            print_json(&serde_json::to_value(&result).unwrap());
        }
        Command::Ex { n, pattern } => {
            let result = ex_exact(n, &pattern.matrix()?)?;
            print_json(&serde_json::to_value(&result).unwrap());
        }
        Command::Census { k, threads, json } => {
            let report = census_with_threads(k, threads)?;
            if json {
                print_json(&serde_json::to_value(&report).unwrap());
            } else {
                println!("k            {}", report.k);
                println!("total        {}", report.total);
                println!("class1       {}", report.class1);
                println!("class2       {}", report.class2);
                println!("class3       {}", report.class3);
                println!("class4       {}", report.class4);
                println!("non-ordinary {}", report.non_ordinary);
                println!("ordinary     {}", report.ordinary);
                println!("fraction     {}", report.fraction);
            }
        }
        Command::Sample { k, trials, seed } => {
            let estimate = sample_fraction(k, trials, seed)?;
            print_json(&serde_json::to_value(&estimate).unwrap());
        }
        Command::LiftCheck { n, d, pattern } => {
            let report = verify_lift_lemma(n, &pattern.matrix()?, d)?;
            print_json(&serde_json::to_value(&report).unwrap());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(reason)) => {
            if !reason.is_empty() {
                eprintln!("{reason}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(reason)) => {
            eprintln!("{reason}");
            ExitCode::from(2)
        }
    }
}
