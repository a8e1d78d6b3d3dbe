//! `walkcert`: certify and refute inequalities among graph walk counts.
//!
//! Every subcommand prints a single machine-readable JSON document on
//! stdout; diagnostics go to stderr. Exit codes: 0 when the run succeeds
//! and nothing was refuted, 1 when a violation or refutation was found,
//! 2 on usage or input errors. Exact values are printed as decimal-string
//! rationals so pipelines never lose precision.

use clap::{Args, Parser, Subcommand};
use num::rational::BigRational;
use serde_json::{json, Value};
use std::path::Path;
use std::process::ExitCode;
use walkcert::certificate::{
    agm_sos, psd_obstructions, sample_negative_witness, sandwich_certificate, shift_certificate,
    square_certificate, two_factor_characterize, univariate_certificate, Certificate,
    TwoFactorOutcome,
};
use walkcert::graph::{Graph, GraphFormat};
use walkcert::inequality::{search_counterexamples, Corpus, FamilySpec, SearchOptions};
use walkcert::poly::{newton_vertex_check, NewtonCheck, Permutation, Polynomial};
use walkcert::ratio::{parse_rational, rational_to_string};
use walkcert::spectral::{spectral_decompose, symmetrization_identity_residual};
use walkcert::{Error, WalkInequality};

#[derive(Parser)]
#[command(
    name = "walkcert",
    about = "Certify and refute inequalities among walk counts in simple graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// A graph6 string, or a path to a file in graph6 or edge-list format
    /// (edge-list files start with an "n <count>" header line).
    graph: Option<String>,
    /// Build a named graph instead, e.g. "path:3" or "union(complete:3,star:5)".
    #[arg(long)]
    family: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact walk counts w_0..w_K of a graph.
    Walks {
        #[command(flatten)]
        graph: GraphArg,
        /// Largest walk length to report.
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Evaluate an inequality (JSON file) exactly on one graph.
    Check {
        inequality: String,
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Scan a corpus or graph family for counterexamples.
    Search {
        inequality: String,
        /// All labeled graphs on N nodes (cap 7; WALKCERT_MAX_N raises it).
        #[arg(long, conflicts_with = "family")]
        exhaustive: Option<usize>,
        /// Parametric family, e.g. "union(complete:3,star:m)".
        #[arg(long)]
        family: Option<String>,
        /// Range for the family parameter, e.g. "m=1..10" (inclusive).
        #[arg(long, requires = "family")]
        range: Option<String>,
        /// A file with one graph6 string per line.
        #[arg(long, conflicts_with_all = ["exhaustive", "family"])]
        graphs: Option<String>,
        /// Evaluate only on regular graphs.
        #[arg(long)]
        regular_only: bool,
        /// Stop at the first violation.
        #[arg(long)]
        stop_at_first: bool,
        /// Collapse violations sharing a degree-sequence/walk-vector profile.
        #[arg(long)]
        dedup: bool,
        /// Worker threads for exhaustive scans.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Build and verify a nonnegativity certificate.
    Certify {
        #[command(subcommand)]
        kind: CertifyKind,
    },
    /// Run the psd-certification obstructions against a candidate.
    Obstruct {
        /// Inequality or polynomial JSON file.
        candidate: String,
        /// Additionally sample N random rational points for a negative
        /// witness (diagnostic; needs --seed for reproducibility).
        #[arg(long)]
        sample: Option<u32>,
        /// Seed for the sampling diagnostic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eigenvalues and all-ones weights of the adjacency matrix.
    Spectral {
        #[command(flatten)]
        graph: GraphArg,
        /// Also report the symmetrization-identity residual for this
        /// polynomial (JSON file).
        #[arg(long)]
        verify_prop31: Option<String>,
    },
    /// Symmetrize a polynomial (JSON file) over all variable permutations.
    Symmetrize { polynomial: String },
    /// Newton-polytope vertex check of a polynomial (JSON file).
    Newton { polynomial: String },
}

#[derive(Subcommand)]
enum CertifyKind {
    /// (x^alpha - x^{alpha∘sigma})²; sigma in 1-indexed one-line notation.
    Square {
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
        /// Raise all walk indices by 2*SHIFT.
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// w_{2a+c}·w_{2(a+b)+c} <= w_{2a}·w_{2(a+b+c)}.
    Sandwich {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// AM-GM sum of squares: w_{alpha_1}···w_{alpha_k} <= w_0^{k-1}·w_{|alpha|}.
    Agm {
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        shift: u32,
    },
    /// Characterize w_{a1}·w_{a2} <= w_{b1}·w_{b2} via the sandwich family.
    TwoFactor {
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<u32>,
    },
    /// Certified-minimum bound: w_{2k} - L·w_0 >= a_1·w_{2k-1} + … + a_{2k-1}·w_1.
    Univariate {
        #[arg(long)]
        k: u32,
        /// The 2k-1 nonnegative coefficients a_1..a_{2k-1}.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
        /// Tolerance on the minimum bound, e.g. "1e-4" or "1/10000".
        #[arg(long, default_value = "1e-6")]
        tol: String,
    },
}

struct Outcome {
    payload: Value,
    refuted: bool,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { payload, refuted: false }
    }

    fn refutation(payload: Value) -> Self {
        Outcome { payload, refuted: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if err.use_stderr() => {
            let rendered = err.to_string();
            eprint!("{rendered}");
            let first_line = rendered.lines().next().unwrap_or("usage error");
            println!("{}", json!({ "error": first_line }));
            return ExitCode::from(2);
        }
        Err(help_or_version) => {
            // --help and --version print on stdout and succeed
            let _ = help_or_version.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.payload);
            if outcome.refuted {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            let message = err.to_string();
            eprintln!("error: {message}");
            println!("{}", json!({ "error": message }));
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Walks { graph, max } => {
            let g = resolve_graph(&graph)?;
            let table = g.walk_counts(max);
            let counts: Vec<String> = table.counts().iter().map(|c| c.to_string()).collect();
            Ok(Outcome::ok(json!({
                "n": g.node_count(),
                "m": g.edge_count(),
                "w": counts,
            })))
        }
        Command::Check { inequality, graph } => {
            let ineq = load_inequality(&inequality)?;
            let g = resolve_graph(&graph)?;
            let value = ineq.evaluate(&g.walk_counts(ineq.max_index() as usize))?;
            let holds = value >= BigRational::from_integer(0.into());
            let payload = json!({
                "value": rational_to_string(&value),
                "holds": holds,
            });
            Ok(if holds { Outcome::ok(payload) } else { Outcome::refutation(payload) })
        }
        Command::Search {
            inequality,
            exhaustive,
            family,
            range,
            graphs,
            regular_only,
            stop_at_first,
            dedup,
            jobs,
        } => {
            let ineq = load_inequality(&inequality)?;
            let corpus = match (exhaustive, family, graphs) {
                (Some(n), None, None) => Corpus::Exhaustive { n },
                (None, Some(spec), None) => {
                    let family = FamilySpec::parse(&spec)?;
                    let (lo, hi) = resolve_range(&family, range.as_deref())?;
                    Corpus::FamilyScan { family, lo, hi }
                }
                (None, None, Some(path)) => {
                    let graphs = read_input(&path)?
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(Graph::from_graph6)
                        .collect::<Result<Vec<_>, _>>()?;
                    Corpus::Graphs { description: format!("file-list({path})"), graphs }
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "need exactly one of --exhaustive N, --family SPEC, or --graphs FILE".into(),
                    ))
                }
            };
            let options = SearchOptions {
                stop_at_first,
                regular_only,
                dedup_violations: dedup,
                jobs,
                max_enum_n: enum_cap_from_env()?,
            };
            let report = search_counterexamples(&ineq, &corpus, &options)?;
            let refuted = report.found_violation();
            let payload = serde_json::to_value(&report)?;
            Ok(if refuted { Outcome::refutation(payload) } else { Outcome::ok(payload) })
        }
        Command::Certify { kind } => certify(kind),
        Command::Obstruct { candidate, sample, seed } => {
            let f = load_polynomial_candidate(&candidate)?;
            let obstructions = psd_obstructions(&f)?;
            let witness = match sample {
                Some(count) => {
                    let sym = f.symmetrize()?;
                    sample_negative_witness(&sym, count, seed).map(|(point, value)| {
                        json!({
                            "point": point.iter().map(rational_to_string).collect::<Vec<_>>(),
                            "value": rational_to_string(&value),
                        })
                    })
                }
                None => None,
            };
            let refuted = !obstructions.is_empty() || witness.is_some();
            let payload = json!({
                "obstructions": obstructions,
                "sample_witness": witness,
            });
            Ok(if refuted { Outcome::refutation(payload) } else { Outcome::ok(payload) })
        }
        Command::Spectral { graph, verify_prop31 } => {
            let g = resolve_graph(&graph)?;
            let data = spectral_decompose(&g)?;
            let mut payload = json!({
                "eigenvalues": data.eigenvalues(),
                "weights": data.weights(),
                "residuals": data.residuals(),
            });
            if let Some(path) = verify_prop31 {
                let f = Polynomial::from_json(&read_input(&path)?)?;
                let residual = symmetrization_identity_residual(&f, &g)?;
                payload["prop31_residual"] = json!(residual);
            }
            Ok(Outcome::ok(payload))
        }
        Command::Symmetrize { polynomial } => {
            let f = Polynomial::from_json(&read_input(&polynomial)?)?;
            Ok(Outcome::ok(serde_json::to_value(f.symmetrize()?)?))
        }
        Command::Newton { polynomial } => {
            let f = Polynomial::from_json(&read_input(&polynomial)?)?;
            match newton_vertex_check(&f)? {
                NewtonCheck::Pass { vertices } => {
                    Ok(Outcome::ok(json!({ "pass": true, "vertices": vertices })))
                }
                NewtonCheck::Refuted { vertex, coefficient, violation } => {
                    Ok(Outcome::refutation(json!({
                        "pass": false,
                        "refuted": {
                            "vertex": vertex,
                            "coefficient": rational_to_string(&coefficient),
                            "violation": violation,
                        },
                    })))
                }
            }
        }
    }
}

fn certify(kind: CertifyKind) -> Result<Outcome, Error> {
    let with_shift = |cert: Certificate, shift: u32| {
        if shift > 0 {
            shift_certificate(&cert, shift)
        } else {
            cert
        }
    };
    let certificate_payload = |cert: &Certificate| -> Result<Value, Error> {
        Ok(json!({
            "certificate": serde_json::to_value(cert)?,
            "inequality": serde_json::to_value(cert.compiled())?,
        }))
    };
    match kind {
        CertifyKind::Square { alpha, sigma, shift } => {
            let sigma = Permutation::from_one_indexed(&sigma)?;
            let cert = with_shift(square_certificate(&alpha, &sigma)?, shift);
            Ok(Outcome::ok(certificate_payload(&cert)?))
        }
        CertifyKind::Sandwich { a, b, c, shift } => {
            let cert = with_shift(sandwich_certificate(a, b, c)?, shift);
            Ok(Outcome::ok(certificate_payload(&cert)?))
        }
        CertifyKind::Agm { alpha, shift } => {
            let cert = with_shift(agm_sos(&alpha)?, shift);
            Ok(Outcome::ok(certificate_payload(&cert)?))
        }
        CertifyKind::TwoFactor { alpha, beta } => {
            let [a1, a2] = alpha[..] else {
                return Err(Error::InvalidArgument("--alpha needs two entries".into()));
            };
            let [b1, b2] = beta[..] else {
                return Err(Error::InvalidArgument("--beta needs two entries".into()));
            };
            match two_factor_characterize((a1, a2), (b1, b2))? {
                TwoFactorOutcome::Params { a, b, c, certificate } => {
                    let mut payload = certificate_payload(&certificate)?;
                    payload["params"] = json!({ "a": a, "b": b, "c": c });
                    Ok(Outcome::ok(payload))
                }
                TwoFactorOutcome::Refuted(obstruction) => {
                    Ok(Outcome::refutation(json!({ "refuted": obstruction })))
                }
            }
        }
        CertifyKind::Univariate { k, coeffs, tol } => {
            let coeffs: Vec<BigRational> = coeffs
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?;
            let tol = parse_rational(&tol)?;
            let report = univariate_certificate(k, &coeffs, &tol)?;
            let mut payload = certificate_payload(&report.certificate)?;
            payload["bound"] = json!(rational_to_string(&report.min_bound));
            payload["root_bracket"] = json!({
                "lo": rational_to_string(&report.root_bracket.0),
                "hi": rational_to_string(&report.root_bracket.1),
            });
            Ok(Outcome::ok(payload))
        }
    }
}

fn resolve_graph(arg: &GraphArg) -> Result<Graph, Error> {
    match (&arg.graph, &arg.family) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument(
            "give either a graph argument or --family, not both".into(),
        )),
        (None, None) => Err(Error::InvalidArgument(
            "need a graph argument or --family".into(),
        )),
        (None, Some(spec)) => {
            let family = FamilySpec::parse(spec)?;
            if family.parameter().is_some() {
                return Err(Error::InvalidArgument(
                    "a concrete graph cannot use a scan parameter; give a fixed size".into(),
                ));
            }
            family.instantiate(0)
        }
        (Some(text), None) => {
            if Path::new(text).exists() {
                let contents = std::fs::read_to_string(text)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {text:?}: {e}")))?;
                let format = if contents.trim_start().starts_with("n ") {
                    GraphFormat::EdgeList
                } else {
                    GraphFormat::Graph6
                };
                let (graph, warnings) = walkcert::graph::load_graph(&contents, format)?;
                for w in warnings {
                    eprintln!("warning: {w}");
                }
                Ok(graph)
            } else {
                Graph::from_graph6(text)
            }
        }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {path:?}: {e}")))
}

fn load_inequality(path: &str) -> Result<WalkInequality, Error> {
    WalkInequality::from_json(&read_input(path)?)
}

/// `obstruct` accepts either a polynomial (object with "k") or an
/// inequality whose terms all have the same factor count.
fn load_polynomial_candidate(path: &str) -> Result<Polynomial, Error> {
    let text = read_input(path)?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("k").is_some() {
        Polynomial::from_json(&text)
    } else {
        WalkInequality::from_json(&text)?.to_polynomial()
    }
}

fn resolve_range(family: &FamilySpec, range: Option<&str>) -> Result<(usize, usize), Error> {
    match (family.parameter(), range) {
        (None, None) => Ok((0, 0)),
        (None, Some(_)) => Err(Error::InvalidArgument(
            "--range given but the family has no parameter".into(),
        )),
        (Some(name), None) => Err(Error::InvalidArgument(format!(
            "family parameter {name:?} needs --range {name}=LO..HI"
        ))),
        (Some(name), Some(range)) => {
            let (var, span) = range.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("--range must look like {name}=LO..HI"))
            })?;
            if var != name {
                return Err(Error::InvalidArgument(format!(
                    "range variable {var:?} does not match family parameter {name:?}"
                )));
            }
            let (lo, hi) = span.split_once("..").ok_or_else(|| {
                Error::InvalidArgument("range bounds must look like LO..HI".into())
            })?;
            let lo: usize = lo
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad range bound {lo:?}")))?;
            let hi: usize = hi
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad range bound {hi:?}")))?;
            Ok((lo, hi))
        }
    }
}

fn enum_cap_from_env() -> Result<usize, Error> {
    match std::env::var("WALKCERT_MAX_N") {
        Ok(value) => value.parse().map_err(|_| {
            Error::InvalidArgument(format!("WALKCERT_MAX_N={value:?} is not a number"))
        }),
        Err(_) => Ok(walkcert::graph::DEFAULT_MAX_ENUM_N),
    }
}
