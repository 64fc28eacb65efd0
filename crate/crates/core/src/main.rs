use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use lie_hermitian::catalog::{catalog_build, catalog_emit, catalog_list, parse_params};
use lie_hermitian::dsl::{format_rhs, load_structure, print_structure_equations, structure_to_json};
use lie_hermitian::error::Error;
use lie_hermitian::metric::{classify_metric, is_positive_metric, load_metric, MetricCoefficients};
use lie_hermitian::reproduce::{run_verify_paper, VerifyOptions};
use lie_hermitian::sasakian::{bundle_extend, format_real_form, heisenberg5, load_contact, non_normal5, solvable5, ContactData};
use lie_hermitian::scalar::format_q;
use lie_hermitian::search::{find_metric, FamilyContext, SearchStatus, Target, TargetKind, DEFAULT_BUDGET, DEFAULT_SEED};
use lie_hermitian::structure::StructureEquations;

#[derive(Parser)]
#[command(name = "lie-hermitian", version, about = "Invariant Hermitian metrics on Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a structure (and optionally a metric) and validate it.
    Check {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        metric: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Metric classes and Gauduchon scalars of a metric (standard metric if omitted).
    Classify {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Only report the k-th scalar.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Search for a metric meeting a target such as `gamma1<0`, `gamma1=0`, `skt`, `balanced`.
    Search {
        #[arg(long, conflicts_with = "family")]
        structure: Option<PathBuf>,
        /// Catalog family; enables closed-form certificates.
        #[arg(long)]
        family: Option<String>,
        /// Family parameter `key=value`, repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List or emit catalog structures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Build the circle-bundle extension of contact data.
    BundleExtend {
        /// Contact data JSON.
        #[arg(long, conflicts_with = "model")]
        contact: Option<PathBuf>,
        /// Built-in model: solvable5, heisenberg5, non-normal5.
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the reproduction suite.
    VerifyPaper {
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random draws per randomized claim.
        #[arg(long, default_value_t = 200)]
        draws: usize,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        name: String,
        /// `key=value` parameters.
        params: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

/// Failure classes mapped to exit codes: 1 for a failed check, 2 for bad input.
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// Structural failures are check failures; everything else is bad input.
fn classify_error(e: Error) -> Failure {
    match e {
        Error::JacobiViolation { .. }
        | Error::NotIntegrable { .. }
        | Error::NotSkewHermitian(..)
        | Error::NotPositive
        | Error::NotQuasiSasakian(_) => Failure::Check(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn load_metric_or_standard(path: Option<&Path>, se: &StructureEquations) -> Result<MetricCoefficients, Failure> {
    let x = match path {
        Some(p) => load_metric(&read(p)?)?,
        None => MetricCoefficients::standard(se.n()),
    };
    if x.n() != se.n() {
        return Err(Error::DimensionMismatch { expected: se.n(), found: x.n() }.into());
    }
    Ok(x)
}

fn check(structure: &Path, metric: Option<&Path>, as_json: bool) -> Result<(), Failure> {
    let se = load_structure(&read(structure)?).map_err(classify_error)?;
    let positive = match metric {
        Some(p) => {
            let x = load_metric(&read(p)?).map_err(classify_error)?;
            if x.n() != se.n() {
                return Err(Error::DimensionMismatch { expected: se.n(), found: x.n() }.into());
            }
            Some(is_positive_metric(&x))
        }
        None => None,
    };
    if as_json {
        println!(
            "{}",
            pretty(&json!({
                "ok": positive != Some(false),
                "n": se.n(),
                "unimodular": se.is_unimodular(),
                "structure": structure_to_json(&se),
                "metric_positive": positive,
            }))
        );
    } else {
        print!("{}", print_structure_equations(&se));
        println!("unimodular: {}", se.is_unimodular());
        if let Some(p) = positive {
            println!("metric positive: {p}");
        }
    }
    if positive == Some(false) {
        return Err(Failure::Check("metric is not positive definite".into()));
    }
    Ok(())
}

fn classify(structure: &Path, metric: Option<&Path>, k: Option<usize>, as_json: bool) -> Result<(), Failure> {
    let se = load_structure(&read(structure)?)?;
    let x = load_metric_or_standard(metric, &se)?;
    let rep = classify_metric(&x, &se).map_err(classify_error)?;
    if let Some(k) = k {
        if k == 0 || k + 1 > se.n() {
            return Err(Error::BadK { k, max: se.n().saturating_sub(1) }.into());
        }
    }
    if as_json {
        let mut v = rep.to_json();
        if let Some(k) = k {
            v = json!({"k": k, "gamma": format_q(rep.gamma_k(k)), "kth_gauduchon": rep.kth_gauduchon_k(k)});
        }
        println!("{}", pretty(&v));
        return Ok(());
    }
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (1..se.n()).collect(),
    };
    for k in &ks {
        println!("gamma{k:<3} {:>12}   {k}-Gauduchon: {}", format_q(rep.gamma_k(*k)), rep.kth_gauduchon_k(*k));
    }
    if k.is_none() {
        println!("kahler    {}", rep.kahler);
        println!("skt       {}", rep.skt);
        println!("astheno   {}", rep.astheno);
        println!("balanced  {}", rep.balanced);
        println!("lee form  {}", format_rhs(&rep.lee_form));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn search(
    structure: Option<&Path>,
    family: Option<&str>,
    params: &[String],
    target: &str,
    budget: usize,
    seed: u64,
    out: Option<&Path>,
    as_json: bool,
) -> Result<(), Failure> {
    let kind: TargetKind = target.parse()?;
    let (se, target_full, source) = match (structure, family) {
        (Some(p), None) => {
            (load_structure(&read(p)?)?, Target::new(kind), format!("--structure {}", p.display()))
        }
        (None, Some(name)) => {
            let pm = parse_params(params)?;
            let se = catalog_build(name, &pm)?;
            let t = match FamilyContext::from_catalog(name, &pm)? {
                Some(ctx) => Target::with_family(kind, ctx),
                None => Target::new(kind),
            };
            let ps: String = params.iter().map(|p| format!(" --param {p}")).collect();
            (se, t, format!("--family {name}{ps}"))
        }
        _ => return Err(Failure::Input("give exactly one of --structure or --family".into())),
    };
    let outcome = find_metric(&se, &target_full, budget, seed)?;
    let replay = format!("lie-hermitian search {source} --target '{kind}' --budget {budget} --seed {seed}");
    let js = outcome.to_json(Some(&replay));
    if let Some(path) = out {
        write(path, &(pretty(&js) + "\n"))?;
    }
    if as_json {
        println!("{}", pretty(&js));
    } else {
        println!("status: {}  ({} samples, seed {seed})", outcome.status, outcome.samples_used);
        if let Some(x) = &outcome.witness {
            println!("witness X (rows):");
            for row in x.matrix() {
                let cells: Vec<String> = row.iter().map(lie_hermitian::scalar::format_cx).collect();
                println!("  [{}]", cells.join(", "));
            }
        }
        if let Some(c) = &outcome.certificate {
            println!("certificate {}: {}", c.name, c.detail);
        }
        println!("replay: {replay}");
    }
    match outcome.status {
        SearchStatus::Witness => Ok(()),
        other => Err(Failure::Check(format!("target {kind} not attained ({other})"))),
    }
}

fn contact_model(name: &str) -> Result<ContactData, Failure> {
    match name {
        "solvable5" => Ok(solvable5()),
        "heisenberg5" => Ok(heisenberg5(lie_hermitian::form::Form::zero(5, 2))?),
        "non-normal5" => Ok(non_normal5()?),
        other => Err(Failure::Input(format!("unknown model `{other}`; expected solvable5, heisenberg5 or non-normal5"))),
    }
}

fn bundle(contact: Option<&Path>, model: Option<&str>, as_json: bool) -> Result<(), Failure> {
    let c = match (contact, model) {
        (Some(p), None) => load_contact(&read(p)?).map_err(classify_error)?,
        (None, Some(m)) => contact_model(m)?,
        _ => return Err(Failure::Input("give exactly one of --contact or --model".into())),
    };
    let ext = bundle_extend(&c).map_err(classify_error)?;
    let gamma = ext.gamma()?;
    let criterion = format_real_form(&ext.criterion);
    if as_json {
        println!(
            "{}",
            pretty(&json!({
                "structure": structure_to_json(&ext.frame.se),
                "structure_dsl": print_structure_equations(&ext.frame.se),
                "metric": lie_hermitian::metric::metric_to_json(&ext.metric),
                "criterion": criterion,
                "criterion_top": format_q(&ext.criterion_top),
                "volume_top": format_q(&ext.volume_top),
                "oriented_sign": ext.oriented_sign(),
                "gamma1": format_q(&gamma),
                "first_gauduchon": ext.criterion.is_zero(),
            }))
        );
    } else {
        print!("{}", print_structure_equations(&ext.frame.se));
        println!("criterion (d eta ^ d eta + F ^ F) ^ Phi^(n-3) = {criterion}");
        println!("criterion sign against Omega^n: {}", ext.oriented_sign());
        println!("gamma1 = {}", format_q(&gamma));
        println!("first Gauduchon: {}", ext.criterion.is_zero());
    }
    Ok(())
}

fn verify(only: Option<String>, seed: u64, draws: usize, out: Option<&Path>, as_json: bool) -> Result<(), Failure> {
    let opts = VerifyOptions { seed, only, draws, ..VerifyOptions::default() };
    let report = run_verify_paper(&opts)?;
    let js = report.to_json();
    if let Some(path) = out {
        write(path, &(pretty(&js) + "\n"))?;
    }
    if as_json {
        println!("{}", pretty(&js));
    } else {
        print!("{}", report.to_text());
    }
    match report.first_failure() {
        None => Ok(()),
        Some(r) => Err(Failure::Check(format!("first failing claim: {}", r.id))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { structure, metric, json } => check(&structure, metric.as_deref(), json),
        Command::Classify { structure, metric, k, json } => classify(&structure, metric.as_deref(), k, json),
        Command::Search { structure, family, params, target, budget, seed, out, json } => {
            search(structure.as_deref(), family.as_deref(), &params, &target, budget, seed, out.as_deref(), json)
        }
        Command::Catalog { action: CatalogAction::List } => {
            print!("{}", catalog_list());
            Ok(())
        }
        Command::Catalog { action: CatalogAction::Emit { name, params, json } } => {
            let pm = parse_params(&params)?;
            if json {
                println!("{}", pretty(&serde_json::to_value(structure_to_json(&catalog_build(&name, &pm)?)).expect("serializes")));
            } else {
                print!("{}", catalog_emit(&name, &pm)?);
            }
            Ok(())
        }
        Command::BundleExtend { contact, model, json } => bundle(contact.as_deref(), model.as_deref(), json),
        Command::VerifyPaper { only, seed, draws, out, json } => verify(only, seed, draws, out.as_deref(), json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
