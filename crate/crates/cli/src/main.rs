use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use orthopoly::distributions::{esf_pmf, Partition};
use orthopoly::hahn::{hahn_jacobi_limit_diag, limit_csv, HahnRoute};
use orthopoly::index::parse_index;
use orthopoly::jacobi::GemVariant;
use orthopoly::laguerre::{connection_table, ConnectionMethod, ConnectionTable, LaguerreIndex, LaguerreSystem, LauricellaVariant};
use orthopoly::meixner::meixner_connection_check;
use orthopoly::oracle::{fourier_expand, gram_matrix, ClosedForm, Family, OrthogonalFamily};
use orthopoly::{Basis, Error, Exact, MultiIndex, Poly};

const EXIT_VALIDATION: u8 = 2;
const EXIT_DISCREPANCY: u8 = 3;
const EXIT_IO: u8 = 1;

#[derive(Parser)]
#[command(name = "orthopoly", version, about = "Exact multivariate orthogonal polynomials and their verification")]
struct Cli {
    /// Worker threads for Gram and connection computations (output order is unaffected).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output file; relative paths are resolved against --out-dir when it is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Default output directory; the report is written to <dir>/<verb>.<format> unless --out is given.
    #[arg(long, global = true, env = "ORTHOPOLY_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the coefficients of one family member.
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        /// Multi-index, e.g. 1,0.
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
    },
    /// Exact Gram matrix with the diagonal compared against a closed form.
    Gram {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = ClosedFormArg::Tabulated)]
        closed_form: ClosedFormArg,
    },
    /// Connection coefficients between the star and product systems, per method.
    Connect {
        /// Laguerre parameters α_1,...,α_d.
        #[arg(long)]
        alpha: String,
        /// Source index n of the star system.
        #[arg(long)]
        n: String,
        /// Negative Binomial parameter; adds the Meixner column.
        #[arg(long)]
        p: Option<String>,
        /// Methods to tabulate; the oracle is always included.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = vec![MethodArg::LauricellaPrinted, MethodArg::LauricellaDerived, MethodArg::HahnPrinted, MethodArg::HahnDerived])]
        methods: Vec<MethodArg>,
    },
    /// Fourier coefficients of a polynomial and the reconstruction residual.
    Expand {
        #[command(flatten)]
        family: FamilyArgs,
        /// Polynomial as JSON {"dim","basis","terms"}, or @path to a JSON file.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Hahn to Jacobi convergence table.
    Limit {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Degrees, e.g. 1,2,3.
        #[arg(long, default_value = "1,2,3")]
        n: String,
        /// Lattice sizes N.
        #[arg(long, default_value = "100,1000,10000")]
        big_n: String,
        /// The grid is k/grid for k = 0..grid.
        #[arg(long, default_value_t = 10)]
        grid: u32,
    },
    /// Ewens sampling formula over all partitions of n.
    Esf {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        n: u32,
    },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Poly { .. } => "poly",
            Command::Gram { .. } => "gram",
            Command::Connect { .. } => "connect",
            Command::Expand { .. } => "expand",
            Command::Limit { .. } => "limit",
            Command::Esf { .. } => "esf",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Monomial,
    FallingFactorial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClosedFormArg {
    Tabulated,
    Derived,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    LauricellaPrinted,
    LauricellaDerived,
    HahnPrinted,
    HahnDerived,
}

impl MethodArg {
    fn method(self) -> ConnectionMethod {
        match self {
            MethodArg::LauricellaPrinted => ConnectionMethod::Lauricella(LauricellaVariant::PRINTED),
            MethodArg::LauricellaDerived => ConnectionMethod::Lauricella(LauricellaVariant::DERIVED),
            MethodArg::HahnPrinted => ConnectionMethod::Hahn(LauricellaVariant::PRINTED),
            MethodArg::HahnDerived => ConnectionMethod::Hahn(LauricellaVariant::DERIVED),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Jacobi,
    GemJacobi,
    GemJacobiFinite,
    Laguerre,
    LaguerreStar,
    GemLaguerre,
    Hahn,
    HahnProduct,
    HahnEps,
    Meixner,
    MeixnerStar,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Rational parameters α_1,...,α_d as integers or p/q.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    /// Truncation depth d of the GEM families.
    #[arg(long)]
    d: Option<usize>,
    /// Lattice total |r| of the Hahn families.
    #[arg(long)]
    total: Option<u32>,
    /// Urn sizes ε of the hypergeometric weight.
    #[arg(long)]
    eps: Option<String>,
    /// Negative Binomial parameter of the Meixner families.
    #[arg(long)]
    p: Option<String>,
}

fn rational(s: &str) -> Result<Exact, Error> {
    s.parse()
}

fn rationals(s: &str) -> Result<Vec<Exact>, Error> {
    s.split(',').map(rational).collect()
}

fn integers(s: &str) -> Result<Vec<u32>, Error> {
    Ok(parse_index(s)?.entries().to_vec())
}

fn required<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str, Error> {
    v.as_deref().ok_or_else(|| Error::InvalidParameter(format!("--{name} is required for this family")))
}

impl FamilyArgs {
    fn build(&self) -> Result<Family, Error> {
        let alpha = || rationals(required(&self.alpha, "alpha")?);
        let theta = || rational(required(&self.theta, "theta")?);
        let d = || self.d.ok_or_else(|| Error::InvalidParameter("--d is required for this family".into()));
        let total = || self.total.ok_or_else(|| Error::InvalidParameter("--total is required for this family".into()));
        let p = || rational(required(&self.p, "p")?);
        let family = match self.family {
            FamilyName::Jacobi => Family::Jacobi { alpha: alpha()? },
            FamilyName::GemJacobi => Family::GemJacobi { theta: theta()?, d: d()?, variant: GemVariant::Limit },
            FamilyName::GemJacobiFinite => Family::GemJacobi { theta: theta()?, d: d()?, variant: GemVariant::FiniteSymmetric },
            FamilyName::Laguerre => Family::Laguerre { alpha: alpha()?, system: LaguerreSystem::Product },
            FamilyName::LaguerreStar => Family::Laguerre { alpha: alpha()?, system: LaguerreSystem::Star },
            FamilyName::GemLaguerre => Family::GemLaguerre { theta: theta()?, d: d()? },
            FamilyName::Hahn => Family::Hahn { alpha: alpha()?, total: total()?, route: HahnRoute::Mixture },
            FamilyName::HahnProduct => Family::Hahn { alpha: alpha()?, total: total()?, route: HahnRoute::Product },
            FamilyName::HahnEps => Family::HahnEps { eps: integers(required(&self.eps, "eps")?)?, total: total()? },
            FamilyName::Meixner => Family::Meixner { alpha: alpha()?, p: p()?, system: LaguerreSystem::Product },
            FamilyName::MeixnerStar => Family::Meixner { alpha: alpha()?, p: p()?, system: LaguerreSystem::Star },
        };
        family.validate()?;
        Ok(family)
    }
}

/// A rendered report and whether it lists any discrepancy.
struct Output {
    body: String,
    discrepancy: bool,
}

fn to_json(v: &impl serde::Serialize) -> Result<String, Error> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Error::Parse(e.to_string()))
}

fn csv_rows(header: &[String], rows: &[Vec<String>]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn run_poly(family: &FamilyArgs, n: &str, basis: BasisArg, format: Format) -> Result<Output, Error> {
    let fam = family.build()?;
    let n = parse_index(n)?;
    let basis = match basis {
        BasisArg::Monomial => Basis::Monomial,
        BasisArg::FallingFactorial => Basis::FallingFactorial,
    };
    let p = fam.polynomial(&n)?.convert_basis(basis);
    let body = match format {
        Format::Json => to_json(&json!({ "family": fam.label(), "index": n, "polynomial": p }))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = p.terms().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();
            csv_rows(&["index".into(), "coeff".into()], &rows)?
        }
    };
    Ok(Output { body, discrepancy: false })
}

fn run_gram(family: &FamilyArgs, max_degree: u32, closed_form: ClosedFormArg, format: Format) -> Result<Output, Error> {
    let fam = family.build()?;
    let which = match closed_form {
        ClosedFormArg::Tabulated => ClosedForm::Tabulated,
        ClosedFormArg::Derived => ClosedForm::Derived,
    };
    let report = gram_matrix(&fam, max_degree, which)?;
    let body = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => report.to_csv()?,
    };
    Ok(Output { body, discrepancy: !report.discrepancies.is_empty() })
}

fn meixner_table(alpha: &[Exact], p: &Exact, n: &MultiIndex, oracle: &ConnectionTable) -> Result<ConnectionTable, Error> {
    let mut entries = std::collections::BTreeMap::new();
    let mut discrepancies = Vec::new();
    for m in MultiIndex::with_total(n.dim(), n.total()) {
        let value = meixner_connection_check(alpha, p, n, &m)?;
        let expected = oracle.entries[&m.to_string()].clone();
        if value != expected {
            discrepancies.push(orthopoly::laguerre::ConnectionDiscrepancy { m: m.clone(), oracle: expected, value: value.clone() });
        }
        entries.insert(m.to_string(), value);
    }
    Ok(ConnectionTable { source: n.clone(), method: "meixner".into(), entries, discrepancies })
}

fn run_connect(alpha: &str, n: &str, p: &Option<String>, methods: &[MethodArg], format: Format) -> Result<Output, Error> {
    let alpha = rationals(alpha)?;
    let n = parse_index(n)?;
    let idx = LaguerreIndex::unit(alpha.clone(), n.clone())?;
    let oracle = connection_table(&idx, ConnectionMethod::Oracle)?;
    let mut tables = Vec::new();
    for m in methods {
        tables.push(connection_table(&idx, m.method())?);
    }
    if let Some(p) = p {
        let p = rational(p)?;
        tables.push(meixner_table(&alpha, &p, &n, &oracle)?);
    }
    tables.insert(0, oracle);
    let discrepancy = tables.iter().any(|t| !t.discrepancies.is_empty());
    let body = match format {
        Format::Json => {
            let discrepancies: Vec<Value> = tables
                .iter()
                .flat_map(|t| {
                    t.discrepancies.iter().map(move |d| json!({ "method": t.method, "m": d.m, "oracle": d.oracle, "value": d.value }))
                })
                .collect();
            to_json(&json!({ "source": n, "alpha": alpha, "tables": tables, "discrepancies": discrepancies }))?
        }
        Format::Csv => {
            let mut header = vec!["m".to_string()];
            header.extend(tables.iter().map(|t| t.method.clone()));
            let rows: Vec<Vec<String>> = tables[0]
                .entries
                .keys()
                .map(|k| {
                    let mut row = vec![k.clone()];
                    row.extend(tables.iter().map(|t| t.entries[k].to_string()));
                    row
                })
                .collect();
            csv_rows(&header, &rows)?
        }
    };
    Ok(Output { body, discrepancy })
}

fn read_poly(spec: &str) -> Result<Poly, Error> {
    let text = match spec.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
        None => spec.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("polynomial JSON: {e}")))
}

fn run_expand(family: &FamilyArgs, poly: &str, max_degree: u32, format: Format) -> Result<Output, Error> {
    let fam = family.build()?;
    let f = read_poly(poly)?;
    let e = fourier_expand(&f, &fam, max_degree)?;
    let discrepancies: Vec<Value> = if e.residual_is_zero {
        Vec::new()
    } else {
        vec![json!({ "kind": "residual", "residual": e.residual })]
    };
    let body = match format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("family".into(), json!(e.family));
            obj.insert("terms".into(), json!(e.terms));
            obj.insert("residual".into(), json!(e.residual));
            obj.insert("residual_is_zero".into(), json!(e.residual_is_zero));
            obj.insert("discrepancies".into(), json!(discrepancies));
            to_json(&Value::Object(obj))?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = e
                .terms
                .iter()
                .map(|t| vec![t.index.to_string(), t.coefficient.to_string(), t.norm_sq.to_string()])
                .collect();
            csv_rows(&["index".into(), "coefficient".into(), "norm_sq".into()], &rows)?
        }
    };
    Ok(Output { body, discrepancy: !discrepancies.is_empty() })
}

fn run_limit(alpha: &str, beta: &str, n: &str, big_n: &str, grid: u32, format: Format) -> Result<Output, Error> {
    let (alpha, beta) = (rational(alpha)?, rational(beta)?);
    if grid == 0 {
        return Err(Error::InvalidParameter("--grid must be positive".into()));
    }
    let points: Vec<Exact> = (0..=grid).map(|k| Exact::from(k) / Exact::from(grid)).collect();
    let ns = integers(big_n)?;
    let mut rows = Vec::new();
    for k in integers(n)? {
        rows.extend(hahn_jacobi_limit_diag(&alpha, &beta, k, &ns, &points)?);
    }
    let body = match format {
        Format::Json => to_json(&json!({ "alpha": alpha, "beta": beta, "rows": rows }))?,
        Format::Csv => limit_csv(&rows),
    };
    Ok(Output { body, discrepancy: false })
}

fn run_esf(theta: &str, n: u32, format: Format) -> Result<Output, Error> {
    let theta = rational(theta)?;
    if n == 0 {
        return Err(Error::InvalidParameter("--n must be positive".into()));
    }
    let mut probs = Vec::new();
    for part in Partition::all(n) {
        probs.push((part.to_string(), esf_pmf(&theta, &part)?));
    }
    let body = match format {
        Format::Json => {
            let obj: Map<String, Value> = probs.into_iter().map(|(k, v)| (k, json!(v))).collect();
            to_json(&Value::Object(obj))?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = probs.into_iter().map(|(k, v)| vec![k, v.to_string()]).collect();
            csv_rows(&["partition".into(), "probability".into()], &rows)?
        }
    };
    Ok(Output { body, discrepancy: false })
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let f = cli.format;
    match &cli.command {
        Command::Poly { family, n, basis } => run_poly(family, n, *basis, f),
        Command::Gram { family, max_degree, closed_form } => run_gram(family, *max_degree, *closed_form, f),
        Command::Connect { alpha, n, p, methods } => run_connect(alpha, n, p, methods, f),
        Command::Expand { family, poly, max_degree } => run_expand(family, poly, *max_degree, f),
        Command::Limit { alpha, beta, n, big_n, grid } => run_limit(alpha, beta, n, big_n, *grid, f),
        Command::Esf { theta, n } => run_esf(theta, *n, f),
    }
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    let ext = match cli.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    match (&cli.out, &cli.out_dir) {
        (Some(out), Some(dir)) if out.is_relative() => Some(dir.join(out)),
        (Some(out), _) => Some(out.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{ext}", cli.command.verb()))),
        (None, None) => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    }
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let written = match destination(&cli) {
        Some(path) => std::fs::write(&path, &out.body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(out.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_IO);
    }
    if out.discrepancy {
        eprintln!("verification discrepancies reported");
        ExitCode::from(EXIT_DISCREPANCY)
    } else {
        ExitCode::SUCCESS
    }
}
