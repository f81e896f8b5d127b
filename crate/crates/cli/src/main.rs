//! `qwig`: branching data, Wigner coefficient tables, invariants and the
//! matrix verification suites from the command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qwig_core::branching::{branch_candidates, index_sets};
use qwig_core::invariants::all_invariants;
use qwig_core::oracle::suite::{run_suite, Suite, SuiteOptions};
use qwig_core::superweight::{char_roots, check_generic, RootVariant, Signature, Weight};
use qwig_core::wigner::{coupled_table, gamma_table, mu_table, omega, CoefficientTable, Form, MuConvention, Variant};

#[derive(Parser, Debug)]
#[command(name = "qwig", version, about = "Reduced Wigner coefficients for U_q[gl(m|n)]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic roots of a highest weight.
    Roots(RootsArgs),
    /// Subalgebra labels that branch from a highest weight, with index sets.
    Branch(BranchArgs),
    /// Coefficient tables for one branching.
    Wigner(WignerArgs),
    /// Eigenvalues of the central elements and first-order invariants.
    Invariants(WeightArgs),
    /// Explicit-matrix verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct WeightArgs {
    /// Highest weight, e.g. "1,0|0".
    #[arg(long)]
    weight: String,
    /// Even block size; inferred from the weight when omitted.
    #[arg(long, requires = "n")]
    m: Option<usize>,
    /// Odd block size.
    #[arg(long, requires = "m")]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[command(flatten)]
    w: WeightArgs,
    #[arg(long, value_enum, default_value = "adjoint")]
    variant: VariantArg,
}

#[derive(Args, Debug)]
struct BranchArgs {
    #[command(flatten)]
    w: WeightArgs,
}

#[derive(Args, Debug)]
struct WignerArgs {
    #[command(flatten)]
    w: WeightArgs,
    /// Subalgebra label, e.g. "0,0" for gl(2|0) or "1|0" for gl(1|1).
    #[arg(long)]
    lower: String,
    #[arg(long, value_enum, default_value = "lower")]
    kind: KindArg,
    /// Coupled coefficients omega_kr instead of omega_k.
    #[arg(long, conflicts_with = "table")]
    coupled: bool,
    #[arg(long, value_enum, default_value = "omega")]
    table: TableArg,
    #[arg(long, value_enum, default_value = "root_product")]
    form: FormArg,
    /// Which subalgebra label the mu table is keyed by.
    #[arg(long, value_enum, default_value = "coupled_label")]
    mu_label: MuArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// One suite name, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Evaluate at q = q0 in floating point.
    #[arg(long)]
    numeric: Option<f64>,
    /// Largest tensor power of the vector module used to realize modules.
    #[arg(long, default_value_t = 3)]
    kmax: usize,
    #[arg(long, env = "QWIG_JOBS")]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Adjoint,
    Dual,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Lower,
    Raise,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableArg {
    Omega,
    Gamma,
    Mu,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FormArg {
    RootProduct,
    QnumberPhase,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum MuArg {
    CoupledLabel,
    ModuleLabel,
}

/// A computation error, reported as JSON with exit status 1.
struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(kind: &'static str, e: impl std::fmt::Display) -> Self {
        Failure { kind, message: e.to_string() }
    }
}

enum Output {
    Json(Value),
    /// Coefficient table: JSON on stdout, CSV when written to a `.csv` path.
    Table(Value, Vec<CoefficientTable>),
}

fn parse_weight(a: &WeightArgs) -> Result<Weight, Failure> {
    let w = match (a.m, a.n) {
        (Some(m), Some(n)) => Signature::new(m, n).and_then(|s| Weight::parse(s, &a.weight)),
        _ => Weight::parse_infer(&a.weight),
    }
    .map_err(|e| Failure::new("weight", e))?;
    w.dominant_ints().map_err(|e| Failure::new("weight", e))?;
    Ok(w)
}

fn roots(a: &RootsArgs) -> Result<Output, Failure> {
    let lam = parse_weight(&a.w)?;
    let variant = match a.variant {
        VariantArg::Adjoint => RootVariant::Adjoint,
        VariantArg::Dual => RootVariant::Dual,
    };
    let rs = char_roots(&lam, variant).map_err(|e| Failure::new("weight", e))?;
    let gen = check_generic(&lam).map_err(|e| Failure::new("weight", e))?;
    let mut v = rs.to_json();
    v["weight"] = json!(lam.to_string());
    v["generic"] = json!(gen.generic());
    Ok(Output::Json(v))
}

fn branch(a: &BranchArgs) -> Result<Output, Failure> {
    let lam = parse_weight(&a.w)?;
    let cands = branch_candidates(&lam).map_err(|e| Failure::new("weight", e))?;
    let items = cands
        .iter()
        .map(|l0| index_sets(&lam, l0).map(|b| b.to_json()).map_err(|e| Failure::new("branching", e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Output::Json(json!({ "weight": lam.to_string(), "branchings": items })))
}

fn one_table(a: &WignerArgs, b: &qwig_core::branching::BranchingData, variant: Variant, form: Form) -> Result<CoefficientTable, Failure> {
    let conv = match a.mu_label {
        MuArg::CoupledLabel => MuConvention::CoupledLabel,
        MuArg::ModuleLabel => MuConvention::ModuleLabel,
    };
    let t = if a.coupled {
        coupled_table(b, variant, form)
    } else {
        match a.table {
            TableArg::Omega => omega(b, variant, form),
            TableArg::Gamma => gamma_table(b, variant, form),
            TableArg::Mu => mu_table(b, variant, form, conv),
        }
    };
    t.map_err(|e| Failure::new("wigner", e))
}

fn wigner(a: &WignerArgs) -> Result<Output, Failure> {
    let lam = parse_weight(&a.w)?;
    let lam0 = Weight::parse(lam.sig.subalgebra(), &a.lower).map_err(|e| Failure::new("weight", e))?;
    let b = index_sets(&lam, &lam0).map_err(|e| Failure::new("branching", e))?;
    let variant = match a.kind {
        KindArg::Lower => Variant::Lower,
        KindArg::Raise => Variant::Raise,
    };
    match a.form {
        FormArg::RootProduct | FormArg::QnumberPhase => {
            let form = if matches!(a.form, FormArg::RootProduct) { Form::RootProduct } else { Form::QNumberPhase };
            let t = one_table(a, &b, variant, form)?;
            Ok(Output::Table(t.to_json(), vec![t]))
        }
        FormArg::Both => {
            let rp = one_table(a, &b, variant, Form::RootProduct)?;
            let qp = one_table(a, &b, variant, Form::QNumberPhase)?;
            let agree = rp.entries == qp.entries;
            let v = json!({
                "root_product": rp.to_json(),
                "qnumber_phase": qp.to_json(),
                "forms_agree": agree,
            });
            Ok(Output::Table(v, vec![rp, qp]))
        }
    }
}

fn invariants(a: &WeightArgs) -> Result<Output, Failure> {
    let lam = parse_weight(a)?;
    let vals = all_invariants(&lam).map_err(|e| Failure::new("weight", e))?;
    let items: Vec<Value> = vals
        .iter()
        .map(|v| json!({ "name": v.name, "value": v.value.to_pretty(), "value_json": v.value.to_json() }))
        .collect();
    Ok(Output::Json(json!({ "weight": lam.to_string(), "invariants": items })))
}

fn verify(a: &VerifyArgs) -> Result<(Value, bool), Failure> {
    let sig = Signature::new(a.m, a.n).map_err(|e| Failure::new("signature", e))?;
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(|e: String| Failure::new("suite", e))?]
    };
    let opts = SuiteOptions { kmax: a.kmax, numeric: a.numeric, ..Default::default() };
    let run = || suites.iter().map(|&s| run_suite(sig, s, &opts)).collect::<Vec<_>>();
    let reports = match a.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Failure::new("threads", e))?
            .install(run),
        None => run(),
    };
    let ok = reports.iter().all(|r| r.passed());
    let v = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({
            "suite": "all",
            "result": if ok { "PASS" } else { "FAIL" },
            "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    };
    Ok((v, ok))
}

fn table_csv(tables: &[CoefficientTable]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::new("io", e);
    w.write_record(["k", "r", "value_string", "value_json"]).map_err(io)?;
    for t in tables {
        for ((k, r), v) in &t.entries {
            let r = r.map(|x| x.to_string()).unwrap_or_default();
            w.write_record([k.to_string(), r, v.to_pretty(), v.to_json().to_string()]).map_err(io)?;
        }
    }
    w.into_inner().map_err(|e| Failure::new("io", e))
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::new("io", e)),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(bytes).and_then(|_| so.flush()).map_err(|e| Failure::new("io", e))
        }
    }
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s.into_bytes()
}

fn dispatch(cli: &Cli) -> Result<bool, Failure> {
    let (out, path) = match &cli.command {
        Command::Roots(a) => (roots(a)?, a.w.out.as_deref()),
        Command::Branch(a) => (branch(a)?, a.w.out.as_deref()),
        Command::Wigner(a) => (wigner(a)?, a.w.out.as_deref()),
        Command::Invariants(a) => (invariants(a)?, a.out.as_deref()),
        Command::Verify(a) => {
            let (v, ok) = verify(a)?;
            emit(&json_bytes(&v), a.out.as_deref())?;
            return Ok(ok);
        }
    };
    match out {
        Output::Table(_, tables) if path.is_some_and(|p| p.extension().is_some_and(|e| e == "csv")) => {
            emit(&table_csv(&tables)?, path)?;
        }
        Output::Json(v) | Output::Table(v, _) => emit(&json_bytes(&v), path)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let v = json!({ "error": { "kind": f.kind, "message": f.message } });
            println!("{}", serde_json::to_string_pretty(&v).expect("json serializes"));
            ExitCode::from(1)
        }
    }
}
