use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use quintic_resolvent::fieldres::construct_resolvent;
use quintic_resolvent::json::{self as qjson, Report};
use quintic_resolvent::latres::{self, SearchBudget};
use quintic_resolvent::quintic::{GridSet, QuinticRing};
use quintic_resolvent::registry::{self, Stars};
use quintic_resolvent::resolvent::ResolventData;
use quintic_resolvent::{selfcheck, Error, RationalLattice, Scalar, ScalarRing};

#[derive(Parser)]
#[command(name = "qres", version, about = "Sextic resolvents of quintic rings")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the resolvent identity for a ring and resolvent.
    Verify {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        resolvent: PathBuf,
    },
    /// Rebuild the ring of a resolvent.
    RingFromResolvent {
        #[arg(long)]
        resolvent: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Resolvent of an algebra over a field (rings over ℤ are read over ℚ).
    ConstructResolvent {
        #[arg(long)]
        ring: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Very-degeneracy test, optionally after reduction mod p.
    VeryDegenerate {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Conductor of a ring over ℤ.
    Conductor {
        #[arg(long)]
        ring: PathBuf,
        /// Rational resolvent fixing the coordinate frame.
        #[arg(long)]
        resolvent: Option<PathBuf>,
    },
    /// Numerical resolvents, or all resolvents with --all.
    Resolvents {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        resolvent: Option<PathBuf>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        index_cap: Option<u64>,
    },
    /// Integral-class dimensions and the unique-resolvent prediction.
    StrongMaximal {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        resolvent: Option<PathBuf>,
    },
    /// Build one of the worked examples.
    Example {
        id: u32,
        #[arg(long)]
        p: Option<u64>,
        /// Twelve star entries for Example 5, row by row.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        stars: Option<Vec<i64>>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run every invariant suite.
    Selfcheck,
}

enum Failure {
    Usage(String),
    Math(String, Option<Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Json(_)
            | Error::UnknownExample(_)
            | Error::MissingPrime(_)
            | Error::NotPrime(_) => Failure::Usage(e.to_string()),
            other => Failure::Math(other.to_string(), None),
        }
    }
}

type Out = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_ring(path: &Path) -> Result<QuinticRing, Failure> {
    Ok(qjson::ring_from_json(&read(path)?)?)
}

fn load_resolvent(path: &Path) -> Result<ResolventData, Failure> {
    Ok(qjson::resolvent_from_json(&read(path)?)?.0)
}

fn common_ring(a: ScalarRing, b: ScalarRing) -> ScalarRing {
    match (a, b) {
        (ScalarRing::PrimeField(p), _) | (_, ScalarRing::PrimeField(p)) => {
            ScalarRing::PrimeField(p)
        }
        (ScalarRing::Rational, _) | (_, ScalarRing::Rational) => ScalarRing::Rational,
        _ => ScalarRing::Integer,
    }
}

fn strs(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn verify(seed: u64, ring: &Path, res: &Path) -> Out {
    let (q, r) = (load_ring(ring)?, load_resolvent(res)?);
    let target = common_ring(q.ring(), r.ring());
    let (q, r) = (q.change_ring(target)?, r.change_ring(target)?);
    let report = r.verify_seeded(&q, seed)?;
    let mut out = json!({
        "passed": report.passed(),
        "grid_checked": report.grid_checked,
        "random_checked": report.random_checked,
    });
    match report.failures.first() {
        None => Ok(out),
        Some(f) => {
            out["first_failure"] = json!({
                "x": strs(&f.x), "y": strs(&f.y), "z": strs(&f.z),
                "resolvent_side": f.resolvent_side.to_string(),
                "ring_side": f.ring_side.to_string(),
            });
            let msg = format!(
                "identity fails at x = {:?}, y = {:?}, z = {:?}: {} vs {}",
                strs(&f.x),
                strs(&f.y),
                strs(&f.z),
                f.resolvent_side,
                f.ring_side
            );
            Err(Failure::Math(msg, Some(out)))
        }
    }
}

fn emit_or_print(text: String, output: Option<&Path>) -> Out {
    match output {
        Some(p) => {
            write(p, &text)?;
            Ok(json!({ "written": p.display().to_string() }))
        }
        None => Ok(serde_json::from_str(&text).expect("valid json")),
    }
}

fn very_degenerate(ring: &Path, modulus: Option<u64>) -> Out {
    let mut q = load_ring(ring)?;
    if let Some(p) = modulus {
        q = q.change_ring(ScalarRing::prime_field(p)?)?;
    } else if q.ring() == ScalarRing::Integer {
        q = q.change_ring(ScalarRing::Rational)?;
    }
    let (vd, counterexample) = match q.ring() {
        ScalarRing::PrimeField(p) if p <= 7 => {
            let rep = q.is_very_degenerate()?;
            (rep.very_degenerate, rep.counterexample)
        }
        _ => {
            let c = q.grid_table().first_nonzero();
            (c.is_none(), c)
        }
    };
    let mut out = json!({ "scalar": q.ring().to_string(), "very_degenerate": vd });
    if vd {
        out["type"] = json!(q.classify_very_degenerate()?.to_string());
    }
    if let Some((idx, val)) = counterexample {
        out["nonzero_F"] = json!({
            "tuple": idx.iter().map(|&i| GridSet::label(i)).collect::<Vec<_>>(),
            "value": val.to_string(),
        });
    }
    Ok(out)
}

fn bounding(ring: &Path, res: Option<&Path>) -> Result<latres::BoundingLattice, Failure> {
    let q = load_ring(ring)?;
    let r = res.map(load_resolvent).transpose()?;
    Ok(latres::compute_m0(&q, r.as_ref())?)
}

fn conductor(ring: &Path, res: Option<&Path>) -> Out {
    let bl = bounding(ring, res)?;
    let c = latres::conductor(&bl)?;
    Ok(json!({
        "conductor": c.c.to_string(),
        "factorization": c.factorization.iter().map(|(p, e)| json!([p, e])).collect::<Vec<_>>(),
        "from_theta": c.from_theta.to_string(),
        "from_F_values": c.from_f_values.to_string(),
        "M0": qjson::lattice_rows(&bl.m0),
    }))
}

fn resolvents(ring: &Path, res: Option<&Path>, all: bool, index_cap: Option<u64>) -> Out {
    let bl = bounding(ring, res)?;
    let c = latres::conductor(&bl)?;
    let budget = SearchBudget {
        max_index: index_cap,
        ..SearchBudget::default()
    };
    let report = if all {
        Report::all(
            &bl,
            &c,
            &latres::enumerate_all_resolvents(&bl, &c, &budget, &[])?,
        )
    } else {
        Report::numerical(
            &bl,
            &c,
            &latres::enumerate_numerical_resolvents(&bl, &c, &budget)?,
        )
    };
    Ok(serde_json::to_value(report).expect("serializable"))
}

fn strong_maximal(ring: &Path, primes: &[u64], res: Option<&Path>) -> Out {
    let bl = bounding(ring, res)?;
    let c = latres::conductor(&bl)?;
    let rep = latres::check_strong_maximal_hypothesis(&bl, &c, primes, &SearchBudget::default())?;
    Ok(json!({
        "dims": rep.dims.iter().map(|(p, d)| json!({"p": p, "dim": d})).collect::<Vec<_>>(),
        "hypothesis_holds": rep.hypothesis_holds,
        "covers_conductor": rep.covers_conductor,
        "predicts_unique": rep.predicts_unique,
        "enumerated": rep.enumerated,
    }))
}

fn parse_stars(v: Option<&[i64]>) -> Result<Stars, Failure> {
    let mut stars = [[0i64; 3]; 4];
    if let Some(v) = v {
        if v.len() != 12 {
            return Err(Failure::Usage(format!(
                "--stars needs 12 values, got {}",
                v.len()
            )));
        }
        for (k, x) in v.iter().enumerate() {
            stars[k / 3][k % 3] = *x;
        }
    }
    Ok(stars)
}

fn example(id: u32, p: Option<u64>, stars: Option<&[i64]>, emit: Option<&Path>) -> Out {
    let built = registry::build_example_with_stars(id, p, &parse_stars(stars)?)?;
    let mut cases = Vec::new();
    let many = built.cases.len() > 1;
    if let Some(dir) = emit {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    }
    for (k, case) in built.cases.iter().enumerate() {
        let suffix = if many {
            format!("_{}", k + 1)
        } else {
            String::new()
        };
        let mut files = Vec::new();
        if let Some(dir) = emit {
            let ring_file = dir.join(format!("ring{suffix}.json"));
            write(&ring_file, &qjson::ring_to_json(&case.ring))?;
            files.push(ring_file.display().to_string());
            if let Some(r) = &case.resolvent {
                let res_file = dir.join(format!("res{suffix}.json"));
                write(
                    &res_file,
                    &qjson::resolvent_to_json(r, case.lattice.as_ref()),
                )?;
                files.push(res_file.display().to_string());
            }
        }
        let verified = match &case.resolvent {
            Some(r) => {
                let target = common_ring(case.ring.ring(), r.ring());
                Some(
                    r.change_ring(target)?
                        .verify(&case.ring.change_ring(target)?)?
                        .passed(),
                )
            }
            None => None,
        };
        cases.push(json!({ "name": case.name, "verified": verified, "files": files }));
    }
    let e = &built.expected;
    Ok(json!({
        "id": built.id,
        "p": built.p,
        "cases": cases,
        "expected": {
            "conductor": e.conductor,
            "numerical_count": e.numerical_count,
            "non_numerical_count": e.non_numerical_count,
            "theta_index": e.theta_index,
        },
    }))
}

fn run_selfcheck(seed: u64) -> Out {
    let suites = selfcheck::run_all(seed);
    let out = json!({
        "seed": seed,
        "suites": suites.iter().map(|s| json!({
            "name": s.name,
            "cases": s.cases,
            "passed": s.passed(),
            "first_failure": s.failures.first(),
        })).collect::<Vec<_>>(),
    });
    match suites.iter().find(|s| !s.passed()) {
        None => Ok(out),
        Some(s) => Err(Failure::Math(
            format!("suite '{}' failed", s.name),
            Some(out),
        )),
    }
}

fn text(cmd: &Command, v: &Value) -> String {
    match cmd {
        Command::Verify { .. } => format!(
            "pass: {} grid triples and {} random triples",
            v["grid_checked"], v["random_checked"]
        ),
        Command::Selfcheck => v["suites"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|s| {
                let mark = if s["passed"] == json!(true) {
                    "ok  "
                } else {
                    "FAIL"
                };
                format!(
                    "{mark} {} ({} cases)",
                    s["name"].as_str().unwrap_or(""),
                    s["cases"]
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Command::Conductor { .. } => format!("conductor {}", v["conductor"].as_str().unwrap_or("")),
        Command::Resolvents { .. } => {
            let list = v["resolvents"].as_array().cloned().unwrap_or_default();
            let mut lines = vec![format!(
                "conductor {}, {} resolvent(s)",
                v["conductor"].as_str().unwrap_or(""),
                list.len()
            )];
            if v["partial"] == json!(true) {
                lines.push("search was cut by the budget; the list may be incomplete".into());
            }
            for r in list {
                lines.push(format!(
                    "  {} theta index {}: {}",
                    if r["numerical"] == json!(true) {
                        "numerical"
                    } else {
                        "non-numerical"
                    },
                    r["theta_index"].as_str().unwrap_or(""),
                    r["basis"]
                ));
            }
            lines.join("\n")
        }
        _ => serde_json::to_string_pretty(v).expect("serializable"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Verify { ring, resolvent } => verify(cli.seed, ring, resolvent),
        Command::RingFromResolvent { resolvent, output } => load_resolvent(resolvent)
            .and_then(|r| Ok(r.ring_from_resolvent()?))
            .and_then(|q| emit_or_print(qjson::ring_to_json(&q), output.as_deref())),
        Command::ConstructResolvent { ring, output } => load_ring(ring)
            .and_then(|q| {
                let q = if q.ring() == ScalarRing::Integer {
                    q.change_ring(ScalarRing::Rational)?
                } else {
                    q
                };
                Ok(construct_resolvent(&q)?)
            })
            .and_then(|r| {
                emit_or_print(
                    qjson::resolvent_to_json(&r, None::<&RationalLattice>),
                    output.as_deref(),
                )
            }),
        Command::VeryDegenerate { ring, modulus } => very_degenerate(ring, *modulus),
        Command::Conductor { ring, resolvent } => conductor(ring, resolvent.as_deref()),
        Command::Resolvents {
            ring,
            resolvent,
            all,
            index_cap,
        } => resolvents(ring, resolvent.as_deref(), *all, *index_cap),
        Command::StrongMaximal {
            ring,
            primes,
            resolvent,
        } => strong_maximal(ring, primes, resolvent.as_deref()),
        Command::Example { id, p, stars, emit } => {
            example(*id, *p, stars.as_deref(), emit.as_deref())
        }
        Command::Selfcheck => run_selfcheck(cli.seed),
    };
    match result {
        Ok(v) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                println!("{}", text(&cli.cmd, &v));
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qres: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg, report)) => {
            match (cli.json, report) {
                (true, Some(mut v)) => {
                    v["error"] = json!(msg);
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&v).expect("serializable")
                    );
                }
                (true, None) => println!("{}", json!({ "error": msg })),
                (false, Some(v)) if matches!(cli.cmd, Command::Selfcheck) => {
                    println!("{}", text(&cli.cmd, &v));
                    println!("FAIL: {msg}");
                }
                _ => println!("FAIL: {msg}"),
            }
            ExitCode::from(1)
        }
    }
}
