use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use posetpoly::bernoulli::{bernoulli_from_shrub, bernoulli_multinomial, BernoulliTable};
use posetpoly::eulerian::{eulerian_from_chains, eulerian_recursive, eulerian_tilde_recursive};
use posetpoly::framework::{qsym_direct, qsym_recursive, run_invariant, CarrierValue, FrameworkError, InvariantSpec};
use posetpoly::order_poly::{
    order_poly_bruteforce_bounded, order_poly_matrix, order_poly_recursive, phi, InvariantError, DEFAULT_ORACLE_MAX,
};
use posetpoly::poset::MAX_ELEMENTS;
use posetpoly::unlabeled::{order_poly_unlabeled, signed_order_poly_nabla, strict_order_poly};
use posetpoly::validation::{run_check_suite, CheckOutcome};
use posetpoly::{LabeledPoset, OmegaGraph, Poly, Rational};
use serde::Serialize;

use crate::document::{fraction, GraphValue, LocalizedValue, ResultDocument, Value};
use crate::parse::parse_poset_file;
use crate::{CliError, ORACLE_MAX_VAR};

const CHECK_SIZE_LIMIT: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "posetpoly", version, about = "Exact invariants of finite labeled posets")]
pub struct Cli {
    /// Emit a JSON result document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report the computation time (adds `elapsed_ms` to JSON metadata).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PosetInput {
    /// Poset file, or `-` for standard input.
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderRoute {
    Matrix,
    Recursive,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Unlabeled {
    Weak,
    Strict,
    Nabla,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EulerianRoute {
    Chains,
    Recursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BernoulliRoute {
    Oracle,
    Shrub,
    Multinomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QSymRoute {
    Direct,
    Recursive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the order ideals.
    Ideals {
        #[command(flatten)]
        input: PosetInput,
        /// Only the ω-natural ideals.
        #[arg(long)]
        omega_natural: bool,
    },
    /// The ω-graph on the ideals.
    OmegaGraph {
        #[command(flatten)]
        input: PosetInput,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// The order polynomial.
    OrderPoly {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long, value_enum, conflicts_with = "unlabeled")]
        route: Option<OrderRoute>,
        /// Ignore the labels and compute an invariant of the underlying poset.
        #[arg(long, value_enum)]
        unlabeled: Option<Unlabeled>,
        /// Compute every route and fail with exit code 3 on disagreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// The Eulerian polynomial.
    Eulerian {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long, value_enum, default_value = "chains")]
        route: EulerianRoute,
        /// Print the rational form in the localized ring instead.
        #[arg(long)]
        tilde: bool,
        #[arg(long)]
        cross_check: bool,
    },
    /// The φ-invariant.
    Phi {
        #[command(flatten)]
        input: PosetInput,
    },
    /// A Bernoulli number.
    Bernoulli {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "oracle")]
        route: BernoulliRoute,
    },
    /// The quasi-symmetric generating function in finitely many variables.
    Qsym {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long)]
        vars: usize,
        #[arg(long, value_enum, default_value = "direct")]
        route: QSymRoute,
        #[arg(long)]
        cross_check: bool,
    },
    /// Run a recursive invariant: omega, etilde, eulerian or qsym:N.
    Invariant {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long)]
        spec: String,
    },
    /// Run the cross-validation suite over all small posets.
    Check {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
}

fn read_poset(path: &Path) -> Result<LabeledPoset, CliError> {
    let io_err = |source| CliError::Io { path: path.to_path_buf(), source };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io_err)?
    };
    parse_poset_file(&text).map(|f| f.poset).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn oracle_max() -> Result<usize, CliError> {
    match std::env::var(ORACLE_MAX_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::usage(format!("{ORACLE_MAX_VAR}={v} is not a size"))),
        Err(_) => Ok(DEFAULT_ORACLE_MAX),
    }
}

fn oracle(lp: &LabeledPoset) -> Result<Poly, CliError> {
    order_poly_bruteforce_bounded(lp, oracle_max()?).map_err(|e| match e {
        InvariantError::OracleBound { .. } => CliError::usage(format!("{e}; raise {ORACLE_MAX_VAR} to allow it")),
        other => CliError::Disagreement(other.to_string()),
    })
}

fn agree<T: PartialEq + std::fmt::Display>(what: &str, values: &[(&str, T)]) -> Result<(), CliError> {
    let (first_name, first) = &values[0];
    for (name, v) in &values[1..] {
        if v != first {
            return Err(CliError::Disagreement(format!("{what}: {first_name} gives {first}, {name} gives {v}")));
        }
    }
    Ok(())
}

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        Rational::from_integer(1.into())
    } else {
        Rational::from_integer((-1).into())
    }
}

struct Output {
    doc: ResultDocument,
    text: String,
}

fn route_name<T: ValueEnum>(route: T) -> String {
    route.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn order_poly_command(
    lp: &LabeledPoset,
    route: Option<OrderRoute>,
    unlabeled: Option<Unlabeled>,
    cross_check: bool,
) -> Result<Output, CliError> {
    if let Some(flavor) = unlabeled {
        let p = lp.poset();
        let value = match flavor {
            Unlabeled::Weak => order_poly_unlabeled(p),
            Unlabeled::Strict => strict_order_poly(p),
            Unlabeled::Nabla => signed_order_poly_nabla(p),
        };
        if cross_check {
            let labeled = match flavor {
                Unlabeled::Weak => order_poly_matrix(&LabeledPoset::natural(p.clone())),
                Unlabeled::Strict => order_poly_matrix(&LabeledPoset::strict(p.clone())),
                Unlabeled::Nabla => order_poly_matrix(&LabeledPoset::natural(p.clone())).scale(&sign(p.len())),
            };
            agree("order polynomial", &[("unlabeled recursion", &value), ("labeled matrix", &labeled)])?;
        }
        let doc = ResultDocument::for_poset(
            lp,
            "order-poly",
            Some(&format!("unlabeled-{}", route_name(flavor))),
            Value::poly(&value),
        );
        return Ok(Output { doc, text: value.to_string() });
    }
    let route = route.unwrap_or(OrderRoute::Matrix);
    let value = match route {
        OrderRoute::Matrix => order_poly_matrix(lp),
        OrderRoute::Recursive => order_poly_recursive(lp),
        OrderRoute::Oracle => oracle(lp)?,
    };
    if cross_check {
        let mut routes = vec![("matrix", order_poly_matrix(lp)), ("recursive", order_poly_recursive(lp))];
        if lp.len() <= oracle_max()? {
            routes.push(("oracle", oracle(lp)?));
        }
        agree("order polynomial", &routes)?;
    }
    let doc = ResultDocument::for_poset(lp, "order-poly", Some(&route_name(route)), Value::poly(&value));
    Ok(Output { doc, text: value.to_string() })
}

fn eulerian_command(
    lp: &LabeledPoset,
    route: EulerianRoute,
    tilde: bool,
    cross_check: bool,
) -> Result<Output, CliError> {
    let (e, t) = match route {
        EulerianRoute::Chains => {
            let pair = eulerian_from_chains(lp);
            (pair.e, pair.tilde)
        }
        EulerianRoute::Recursive => (eulerian_recursive(lp), eulerian_tilde_recursive(lp)),
    };
    if cross_check {
        let pair = eulerian_from_chains(lp);
        agree("eulerian polynomial", &[("chains", &pair.e), ("recursive", &eulerian_recursive(lp))])?;
        agree("localized eulerian", &[("chains", &pair.tilde), ("recursive", &eulerian_tilde_recursive(lp))])?;
    }
    let route = route_name(route);
    if tilde {
        let doc =
            ResultDocument::for_poset(lp, "eulerian-tilde", Some(&route), Value::Localized(LocalizedValue::new(&t)));
        Ok(Output { doc, text: t.to_string() })
    } else {
        let doc = ResultDocument::for_poset(lp, "eulerian", Some(&route), Value::poly(&e));
        Ok(Output { doc, text: e.to_string() })
    }
}

fn bernoulli_command(n: usize, route: BernoulliRoute) -> Result<Output, CliError> {
    if route != BernoulliRoute::Oracle && n == 0 {
        return Err(CliError::usage("the shrub and multinomial routes need --n >= 1"));
    }
    if route == BernoulliRoute::Shrub && n + 1 > MAX_ELEMENTS {
        return Err(CliError::usage(format!("the shrub route supports --n <= {}", MAX_ELEMENTS - 1)));
    }
    let value = match route {
        BernoulliRoute::Oracle => BernoulliTable::new(n).number(n).clone(),
        BernoulliRoute::Shrub => bernoulli_from_shrub(n),
        BernoulliRoute::Multinomial => bernoulli_multinomial(n),
    };
    let doc = ResultDocument {
        poset: None,
        invariant: format!("bernoulli-{n}"),
        route: Some(route_name(route)),
        value: Value::Scalar(fraction(&value)),
        metadata: None,
        elapsed_ms: None,
    };
    Ok(Output { doc, text: value.to_string() })
}

fn qsym_command(lp: &LabeledPoset, vars: usize, route: QSymRoute, cross_check: bool) -> Result<Output, CliError> {
    if vars == 0 {
        return Err(CliError::usage("--vars must be at least 1"));
    }
    let value = match route {
        QSymRoute::Direct => qsym_direct(lp, vars),
        QSymRoute::Recursive => qsym_recursive(lp, vars),
    };
    if cross_check {
        agree(
            "quasi-symmetric function",
            &[("direct", qsym_direct(lp, vars)), ("recursive", qsym_recursive(lp, vars))],
        )?;
    }
    let carrier = CarrierValue::QSym(value);
    let doc = ResultDocument::for_poset(lp, "qsym", Some(&route_name(route)), Value::carrier(&carrier));
    Ok(Output { doc, text: carrier.to_string() })
}

fn ideals_command(lp: &LabeledPoset, omega_natural: bool) -> Output {
    let ideals = if omega_natural { lp.omega_natural_ideals() } else { OmegaGraph::build(lp).ideals().to_vec() };
    let text = ideals.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    let listed = ideals.iter().map(|s| s.iter().collect()).collect();
    let name = if omega_natural { "omega-natural-ideals" } else { "ideals" };
    Output { doc: ResultDocument::for_poset(lp, name, None, Value::Ideals(listed)), text }
}

fn omega_graph_command(lp: &LabeledPoset, dot: bool) -> Output {
    let graph = OmegaGraph::build(lp);
    let text = if dot {
        graph.to_dot().trim_end().to_string()
    } else {
        let mut lines: Vec<String> = graph.ideals().iter().enumerate().map(|(i, s)| format!("v{i} = {s}")).collect();
        lines.extend(graph.arcs().map(|(i, j)| format!("v{i} -> v{j}")));
        lines.join("\n")
    };
    let value = GraphValue {
        vertices: graph.ideals().iter().map(|s| s.iter().collect()).collect(),
        arcs: graph.arcs().map(|(i, j)| [i, j]).collect(),
    };
    Output { doc: ResultDocument::for_poset(lp, "omega-graph", None, Value::Graph(value)), text }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    name: &'a str,
    passed: bool,
    cases: usize,
    failed: usize,
    failures: &'a [String],
}

fn check_command(cli: &Cli, max_size: usize, out: &mut dyn Write) -> Result<(), CliError> {
    if !(1..=CHECK_SIZE_LIMIT).contains(&max_size) {
        return Err(CliError::usage(format!("--max-size must be between 1 and {CHECK_SIZE_LIMIT}")));
    }
    let start = Instant::now();
    let outcomes: Vec<CheckOutcome> = run_check_suite(max_size);
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    if cli.json {
        let rows: Vec<CheckRow<'_>> = outcomes
            .iter()
            .map(|o| CheckRow {
                name: &o.name,
                passed: o.passed(),
                cases: o.cases,
                failed: o.failed,
                failures: &o.failures,
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("rows serialize"))?;
    } else {
        for o in &outcomes {
            writeln!(out, "{o}")?;
        }
        writeln!(
            out,
            "{} of {} checks passed (posets up to {max_size} elements)",
            outcomes.len() - failed,
            outcomes.len()
        )?;
    }
    if cli.timing {
        eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    }
    if failed > 0 {
        return Err(CliError::CheckFailed(failed));
    }
    Ok(())
}

pub(crate) fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let output = match &cli.command {
        Command::Check { max_size } => return check_command(cli, *max_size, out),
        Command::Bernoulli { n, route } => bernoulli_command(*n, *route)?,
        Command::Ideals { input, omega_natural } => ideals_command(&read_poset(&input.file)?, *omega_natural),
        Command::OmegaGraph { input, dot } => {
            let lp = read_poset(&input.file)?;
            if *dot && !cli.json {
                write!(out, "{}", OmegaGraph::build(&lp).to_dot())?;
                return Ok(());
            }
            omega_graph_command(&lp, *dot)
        }
        Command::OrderPoly { input, route, unlabeled, cross_check } => {
            order_poly_command(&read_poset(&input.file)?, *route, *unlabeled, *cross_check)?
        }
        Command::Eulerian { input, route, tilde, cross_check } => {
            eulerian_command(&read_poset(&input.file)?, *route, *tilde, *cross_check)?
        }
        Command::Phi { input } => {
            let lp = read_poset(&input.file)?;
            let value = phi(&lp);
            let doc = ResultDocument::for_poset(&lp, "phi", None, Value::Scalar(fraction(&value)));
            Output { doc, text: value.to_string() }
        }
        Command::Qsym { input, vars, route, cross_check } => {
            qsym_command(&read_poset(&input.file)?, *vars, *route, *cross_check)?
        }
        Command::Invariant { input, spec } => {
            let parsed: InvariantSpec = spec.parse().map_err(|e: FrameworkError| CliError::usage(e.to_string()))?;
            let lp = read_poset(&input.file)?;
            let value = run_invariant(&parsed, &lp).map_err(|e| CliError::usage(e.to_string()))?;
            let doc = ResultDocument::for_poset(&lp, spec, None, Value::carrier(&value));
            Output { doc, text: value.to_string() }
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    if cli.json {
        let mut doc = output.doc;
        if cli.timing {
            doc.elapsed_ms = Some(elapsed);
        }
        writeln!(out, "{}", doc.to_json())?;
    } else {
        writeln!(out, "{}", output.text)?;
        if cli.timing {
            eprintln!("elapsed: {elapsed} ms");
        }
    }
    Ok(())
}
