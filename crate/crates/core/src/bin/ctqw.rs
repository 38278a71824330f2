use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cliquewalk::dynamics::{finite_time_average, limiting_distribution, Propagator, Start};
use cliquewalk::ipr::{dynamical_ipr, eigenstate_ipr, vertex_class_report};
use cliquewalk::jacobi::NUMERIC_DIM_CAP;
use cliquewalk::reference::{Subject, CATALOG};
use cliquewalk::report::{sweep, Cell, Provenance, Table};
use cliquewalk::spectrum::compare_systems;
use cliquewalk::verify::{run_all, VerifyConfig};
use cliquewalk::{build_graph, solve, ClassTag, Error, Family, GraphInstance, SpectralPath};

const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Eigenvalue and projector tolerances for `spectrum --method both`.
const BOTH_EIGENVALUE_TOL: f64 = 1e-9;
const BOTH_PROJECTOR_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "ctqw", version, about = "Quantum walks on barbell graphs and stars of cliques")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "CTQW_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Largest dimension accepted by the numeric eigensolver.
    #[arg(long, global = true, default_value_t = NUMERIC_DIM_CAP)]
    numeric_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Analytic,
    Numeric,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Path {
    Analytic,
    Numeric,
}

impl From<Path> for SpectralPath {
    fn from(p: Path) -> Self {
        match p {
            Path::Analytic => SpectralPath::Analytic,
            Path::Numeric => SpectralPath::Numeric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IprMode {
    Eigenstate,
    Dynamical,
}

#[derive(Args)]
struct Instance {
    /// barbell, star1 or star2.
    #[arg(long, value_parser = Family::from_str)]
    family: Family,
    #[arg(long)]
    n: usize,
}

impl Instance {
    fn build(&self) -> Result<GraphInstance, Error> {
        build_graph(self.family, self.n)
    }
}

/// `class:<Name>`, `index:<i>` or a bare vertex index.
#[derive(Clone, Debug)]
enum StartSpec {
    Class(ClassTag),
    Index(usize),
}

impl FromStr for StartSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, value) = s.split_once(':').unwrap_or(("index", s));
        match kind {
            "class" => ClassTag::from_str(value).map(StartSpec::Class).map_err(|e| e.to_string()),
            "index" => value
                .parse()
                .map(StartSpec::Index)
                .map_err(|_| format!("bad vertex index `{value}`")),
            _ => Err(format!("start must be class:<Name> or index:<i>, got `{s}`")),
        }
    }
}

impl StartSpec {
    fn vertex(&self, g: &GraphInstance) -> Result<usize, Error> {
        match *self {
            StartSpec::Class(c) => g.representative(c),
            StartSpec::Index(i) if i < g.vertex_count() => Ok(i),
            StartSpec::Index(i) => Err(Error::IndexOutOfRange {
                index: i,
                len: g.vertex_count(),
            }),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Distinct eigenvalues, multiplicities and mode labels.
    Spectrum {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        /// Include an orthonormal basis of every eigenspace.
        #[arg(long)]
        full_vectors: bool,
    },
    /// Eigenstate or dynamical inverse participation ratios.
    Ipr {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum)]
        mode: IprMode,
        #[arg(long, value_enum, default_value_t = Path::Analytic)]
        method: Path,
        /// Start vertex for dynamical IPR.
        #[arg(long)]
        start: Option<StartSpec>,
        /// Dynamical IPR from one representative of every vertex class.
        #[arg(long)]
        all_classes: bool,
        /// Eigenstate IPR of every mode (the default for eigenstate mode).
        #[arg(long)]
        all_modes: bool,
    },
    /// Limiting distribution from one or more start vertices.
    Limit {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Path::Analytic)]
        method: Path,
        #[arg(long)]
        start: Option<StartSpec>,
        /// One row per vertex instead of one per class representative.
        #[arg(long)]
        all_vertices: bool,
        /// Also report the trapezoid time average over [0, T].
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
    },
    /// Transition probabilities on a uniform time grid.
    Evolve {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, value_enum, default_value_t = Path::Analytic)]
        method: Path,
        #[arg(long)]
        start: StartSpec,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 0.1)]
        dt: f64,
    },
    /// A catalogued quantity over a list of sizes.
    Sweep {
        /// Model id (see `ctqw sweep --list`).
        #[arg(long, required_unless_present = "list")]
        metric: Option<String>,
        #[arg(long, value_delimiter = ',', required_unless_present = "list")]
        n: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Path::Analytic)]
        method: Path,
        /// Print the catalog and exit.
        #[arg(long)]
        list: bool,
    },
    /// Acceptance criteria and the catalog table.
    Verify {
        /// Restrict to one family.
        #[arg(long, value_parser = Family::from_str)]
        scope: Option<Family>,
        /// Largest dimension for the numeric oracle.
        #[arg(long)]
        n_cap: Option<usize>,
        /// Criterion tolerance override, `id=value`.
        #[arg(long = "tol", value_parser = parse_tol)]
        tolerances: Vec<(u8, f64)>,
        /// Skip the catalog table.
        #[arg(long)]
        criteria_only: bool,
    },
    /// Edge list and vertex classes.
    Export {
        #[command(flatten)]
        instance: Instance,
    },
}

fn parse_tol(s: &str) -> Result<(u8, f64), String> {
    let (id, v) = s.split_once('=').ok_or("expected id=value")?;
    let id: u8 = id.parse().map_err(|_| format!("bad criterion id `{id}`"))?;
    if !(1..=11).contains(&id) {
        return Err(format!("criterion id {id} out of range 1..=11"));
    }
    let v: f64 = v.parse().map_err(|_| format!("bad tolerance `{v}`"))?;
    Ok((id, v))
}

enum Failure {
    Usage(String),
    Verify(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) => Failure::Io(e.to_string()),
            Error::NoConvergence { .. } | Error::IncompleteEigensystem { .. } => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    table: Table,
    /// Written verbatim in JSON mode instead of the table.
    document: Option<serde_json::Value>,
    provenance: Provenance,
    /// Exit with the verification code after writing.
    failed: bool,
}

fn start_label(v: usize, g: &GraphInstance) -> String {
    format!("{}:{v}", g.classes()[v].tag)
}

fn check_numeric(path: SpectralPath, g: &GraphInstance, cap: usize) -> Result<(), Failure> {
    if path == SpectralPath::Numeric && g.vertex_count() > cap {
        return Err(Failure::Usage(format!(
            "numeric path limited to {cap} vertices, instance has {} (raise --numeric-cap)",
            g.vertex_count()
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cap = cli.global.numeric_cap;
    match &cli.command {
        Command::Spectrum {
            instance,
            method,
            full_vectors,
        } => {
            let g = instance.build()?;
            let paths = match method {
                Method::Analytic => vec![SpectralPath::Analytic],
                Method::Numeric => vec![SpectralPath::Numeric],
                Method::Both => vec![SpectralPath::Analytic, SpectralPath::Numeric],
            };
            let mut systems = Vec::new();
            for &p in &paths {
                check_numeric(p, &g, cap)?;
                systems.push(solve(&g, p)?);
            }
            let mut columns = vec!["path", "eigenvalue", "multiplicity", "label"];
            if *full_vectors {
                columns.push("vectors");
            }
            let mut table = Table::new(columns);
            for es in &systems {
                for s in es.summary(*full_vectors) {
                    let mut row: Vec<Cell> = vec![
                        es.path().to_string().into(),
                        s.eigenvalue.into(),
                        s.multiplicity.into(),
                        s.label.into(),
                    ];
                    if let Some(vs) = s.vectors {
                        row.push(Cell::Floats(vs));
                    }
                    table.push(row);
                }
            }
            let method_name = match method {
                Method::Analytic => "analytic",
                Method::Numeric => "numeric",
                Method::Both => "both",
            };
            let mut provenance = Provenance::new("spectrum").instance(g.family(), g.n()).method(method_name);
            let mut failed = false;
            if let [a, b] = systems.as_slice() {
                let cmp = compare_systems(a, b);
                failed = !(cmp.same_structure
                    && cmp.max_eigenvalue_gap <= BOTH_EIGENVALUE_TOL
                    && cmp.max_projector_distance <= BOTH_PROJECTOR_TOL);
                provenance = provenance
                    .tolerance("both_eigenvalue", BOTH_EIGENVALUE_TOL)
                    .tolerance("both_projector", BOTH_PROJECTOR_TOL)
                    .note("same_structure", cmp.same_structure)
                    .note("max_eigenvalue_gap", format!("{:e}", cmp.max_eigenvalue_gap))
                    .note("max_projector_distance", format!("{:e}", cmp.max_projector_distance))
                    .note("agreement", if failed { "fail" } else { "pass" });
            }
            Ok(Output {
                table,
                document: None,
                provenance,
                failed,
            })
        }
        Command::Ipr {
            instance,
            mode,
            method,
            start,
            all_classes,
            all_modes,
        } => {
            let g = instance.build()?;
            let path = SpectralPath::from(*method);
            check_numeric(path, &g, cap)?;
            let es = solve(&g, path)?;
            let mut table = Table::new([
                "kind",
                "subject",
                "eigenvalue",
                "value",
                "effective_support",
                "symmetry_deviation",
                "reference_formula",
                "reference",
                "residual",
            ]);
            let mut push = |kind: &str, subject: String, eig: Option<f64>, value: f64, sym: Option<f64>, reference: Option<(&str, f64)>| {
                table.push(vec![
                    kind.into(),
                    subject.into(),
                    eig.into(),
                    value.into(),
                    (1.0 / value).into(),
                    sym.into(),
                    reference.map_or(Cell::Empty, |r| r.0.into()),
                    reference.map(|r| r.1).into(),
                    reference.map(|r| value - r.1).into(),
                ]);
            };
            match mode {
                IprMode::Eigenstate => {
                    if start.is_some() || *all_classes {
                        return Err(Failure::Usage("--start and --all-classes apply to dynamical mode".into()));
                    }
                    let _ = all_modes;
                    for (lambda, m) in es.modes() {
                        let value = eigenstate_ipr(&m.vector)?;
                        let reference = mode_reference(&g, m.label, m.index, m.block);
                        push("eigenstate", m.name(), Some(lambda), value, None, reference);
                    }
                }
                IprMode::Dynamical => match (start, *all_classes) {
                    (Some(_), true) => return Err(Failure::Usage("use either --start or --all-classes".into())),
                    (None, false) => return Err(Failure::Usage("dynamical mode needs --start or --all-classes".into())),
                    (Some(s), false) => {
                        let v = s.vertex(&g)?;
                        let value = dynamical_ipr(&es, &Start::Vertex(v))?;
                        let reference = class_reference(&g, g.classes()[v].tag);
                        push("dynamical", start_label(v, &g), None, value, None, reference);
                    }
                    (None, true) => {
                        for e in vertex_class_report(&g, &es)?.entries {
                            let reference = class_reference(&g, e.class);
                            let subject = start_label(e.representative, &g);
                            push("dynamical", subject, None, e.value, Some(e.symmetry_deviation), reference);
                        }
                    }
                },
            }
            Ok(Output {
                table,
                document: None,
                provenance: Provenance::new("ipr").instance(g.family(), g.n()).method(&path.to_string()),
                failed: false,
            })
        }
        Command::Limit {
            instance,
            method,
            start,
            all_vertices,
            t_max,
            dt,
        } => {
            let g = instance.build()?;
            let path = SpectralPath::from(*method);
            check_numeric(path, &g, cap)?;
            let es = solve(&g, path)?;
            let starts: Vec<usize> = match (start, *all_vertices) {
                (Some(_), true) => return Err(Failure::Usage("use either --start or --all-vertices".into())),
                (Some(s), false) => vec![s.vertex(&g)?],
                (None, true) => (0..g.vertex_count()).collect(),
                (None, false) => g
                    .family()
                    .class_tags()
                    .iter()
                    .map(|&c| g.representative(c))
                    .collect::<Result<_, _>>()?,
            };
            let mut columns = vec!["start".to_string(), "quantity".to_string()];
            columns.extend((0..g.vertex_count()).map(|i| format!("p{i}")));
            let mut table = Table::new(columns);
            let mut provenance = Provenance::new("limit").instance(g.family(), g.n()).method(&path.to_string());
            for &v in &starts {
                let limit = limiting_distribution(&es, &Start::Vertex(v))?;
                let mut row: Vec<Cell> = vec![start_label(v, &g).into(), "limit".into()];
                row.extend(limit.probabilities.iter().map(|&p| Cell::Float(p)));
                table.push(row);
                if let Some(t) = t_max {
                    let avg = finite_time_average(&es, &Start::Vertex(v), *t, *dt)?;
                    let mut row: Vec<Cell> = vec![start_label(v, &g).into(), format!("average_T={t}").into()];
                    row.extend(avg.iter().map(|&p| Cell::Float(p)));
                    table.push(row);
                }
            }
            if t_max.is_some() {
                provenance = provenance.tolerance("dt", *dt);
            }
            Ok(Output {
                table,
                document: None,
                provenance,
                failed: false,
            })
        }
        Command::Evolve {
            instance,
            method,
            start,
            t_max,
            dt,
        } => {
            use rayon::prelude::*;
            if !(*t_max >= 0.0 && *dt > 0.0) {
                return Err(Failure::Usage("need --t-max >= 0 and --dt > 0".into()));
            }
            let g = instance.build()?;
            let path = SpectralPath::from(*method);
            check_numeric(path, &g, cap)?;
            let es = solve(&g, path)?;
            let v = start.vertex(&g)?;
            let propagator = Propagator::new(&es, &Start::Vertex(v))?;
            let steps = (t_max / dt).round() as usize;
            let rows: Vec<Vec<Cell>> = (0..=steps)
                .into_par_iter()
                .map(|k| {
                    let t = k as f64 * dt;
                    let mut row = vec![Cell::Float(t)];
                    row.extend(propagator.probabilities(t).into_iter().map(Cell::Float));
                    row
                })
                .collect();
            let mut columns = vec!["t".to_string()];
            columns.extend((0..g.vertex_count()).map(|i| format!("p{i}")));
            let mut table = Table::new(columns);
            rows.into_iter().for_each(|r| table.push(r));
            Ok(Output {
                table,
                document: None,
                provenance: Provenance::new("evolve")
                    .instance(g.family(), g.n())
                    .method(&path.to_string())
                    .note("start", start_label(v, &g)),
                failed: false,
            })
        }
        Command::Sweep { metric, n, method, list } => {
            if *list {
                let mut table = Table::new(["id", "family", "subject", "expression", "exact", "summary_row"]);
                for m in CATALOG {
                    table.push(vec![
                        m.id.into(),
                        m.family.cli_name().into(),
                        m.subject.to_string().into(),
                        m.expression.into(),
                        m.is_exact().into(),
                        m.summary_row.map_or(Cell::Empty, Cell::from),
                    ]);
                }
                return Ok(Output {
                    table,
                    document: None,
                    provenance: Provenance::new("sweep --list"),
                    failed: false,
                });
            }
            let metric = metric.as_deref().unwrap_or_default();
            let path = SpectralPath::from(*method);
            if path == SpectralPath::Numeric {
                let family = cliquewalk::reference::model(metric)?.family;
                for &k in n {
                    check_numeric(path, &build_graph(family, k)?, cap)?;
                }
            }
            let report = sweep(metric, n, path)?;
            let mut provenance = Provenance::new("sweep")
                .method(&path.to_string())
                .note("family", report.family.cli_name())
                .note("metric", &report.metric)
                .note("passed", report.passed_overall())
                .note("runtime_ms", report.runtime_ms);
            if let Some(fit) = report.fit {
                provenance = provenance.note("fitted_slope", format!("{:.6}", fit.slope));
                if let Some(order) = fit.expected_order {
                    provenance = provenance.note("expected_order", order);
                }
            }
            Ok(Output {
                table: report.to_table(),
                document: None,
                provenance,
                failed: false,
            })
        }
        Command::Verify {
            scope,
            n_cap,
            tolerances,
            criteria_only,
        } => {
            let cfg = VerifyConfig {
                scope: *scope,
                numeric_cap: n_cap.unwrap_or(cap),
                tolerance_overrides: tolerances.iter().copied().collect::<BTreeMap<_, _>>(),
            };
            let outcomes = run_all(&cfg)?;
            let mut table = Table::new(["section", "id", "check", "value", "reference", "tolerance", "passed"]);
            for o in &outcomes {
                eprintln!("{o}");
                for c in &o.checks {
                    table.push(vec![
                        "criterion".into(),
                        format!("{:02}", o.id).into(),
                        c.label.clone().into(),
                        c.value.into(),
                        c.reference.into(),
                        c.tolerance.into(),
                        c.passed.into(),
                    ]);
                }
            }
            if !criteria_only {
                for m in CATALOG.iter().filter(|m| scope.is_none_or(|f| f == m.family)) {
                    let grid: &[usize] = match m.family {
                        Family::Barbell => &[8, 16, 32, 64],
                        _ => &[4, 8, 16],
                    };
                    let r = sweep(m.id, grid, SpectralPath::Analytic)?;
                    for i in 0..r.grid.len() {
                        table.push(vec![
                            "model".into(),
                            m.id.into(),
                            format!("n={}", r.grid[i]).into(),
                            r.values[i].into(),
                            r.predictions[i].into(),
                            r.tolerances[i].into(),
                            r.passed[i].into(),
                        ]);
                    }
                    if let (Some(fit), Some(dev)) = (r.fit, r.fit.and_then(|f| f.deviation())) {
                        table.push(vec![
                            "model".into(),
                            m.id.into(),
                            "slope".into(),
                            fit.slope.into(),
                            fit.expected_order.map(f64::from).into(),
                            cliquewalk::report::SLOPE_TOL.into(),
                            (dev.abs() <= cliquewalk::report::SLOPE_TOL).into(),
                        ]);
                    }
                }
            }
            let failed_ids: Vec<String> = outcomes
                .iter()
                .filter(|o| !o.passed())
                .map(|o| format!("{:02}", o.id))
                .collect();
            let passed = outcomes.len() - failed_ids.len();
            let mut provenance = Provenance::new("verify")
                .note("criteria_passed", passed)
                .note("criteria_failed", failed_ids.len());
            if !failed_ids.is_empty() {
                provenance = provenance.note("failed_ids", failed_ids.join(" "));
            }
            for (id, v) in &cfg.tolerance_overrides {
                provenance = provenance.tolerance(&format!("criterion_{id:02}"), *v);
            }
            Ok(Output {
                table,
                document: None,
                provenance,
                failed: !failed_ids.is_empty(),
            })
        }
        Command::Export { instance } => {
            let g = instance.build()?;
            let provenance = Provenance::new("export").instance(g.family(), g.n());
            if let Format::Json = cli.global.format {
                let doc = serde_json::json!({ "provenance": provenance, "graph": g.to_export() });
                return Ok(Output {
                    table: Table::default(),
                    document: Some(doc),
                    provenance,
                    failed: false,
                });
            }
            let mut table = Table::new(["u", "v", "class_u", "class_v"]);
            for [u, v] in g.edges() {
                table.push(vec![
                    u.into(),
                    v.into(),
                    g.classes()[u].tag.to_string().into(),
                    g.classes()[v].tag.to_string().into(),
                ]);
            }
            Ok(Output {
                table,
                document: None,
                provenance,
                failed: false,
            })
        }
    }
}

fn mode_reference(g: &GraphInstance, label: cliquewalk::ModeLabel, index: usize, block: Option<usize>) -> Option<(&'static str, f64)> {
    CATALOG.iter().find_map(|m| {
        let hit = m.family == g.family()
            && match m.subject {
                Subject::Mode(l, i, b) => l == label && i == index && b == block,
                Subject::MaxOfModes(ls) => ls.contains(&label),
                _ => false,
            };
        if !hit {
            return None;
        }
        m.predict(g.n() as f64).ok()?.value().map(|v| (m.expression, v))
    })
}

fn class_reference(g: &GraphInstance, class: ClassTag) -> Option<(&'static str, f64)> {
    CATALOG.iter().find_map(|m| {
        if m.family != g.family() || m.subject != Subject::Class(class) {
            return None;
        }
        m.predict(g.n() as f64).ok()?.value().map(|v| (m.expression, v))
    })
}

fn write_text(cli: &Cli, text: &str) -> Result<(), Failure> {
    use std::io::Write;
    match &cli.global.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = run(&cli).and_then(|out| {
        let text = match (&out.document, cli.global.format) {
            (Some(doc), _) => serde_json::to_string_pretty(doc).map_err(Error::from)? + "\n",
            (None, Format::Csv) => out.table.to_csv(&out.provenance),
            (None, Format::Json) => out.table.to_json(&out.provenance),
        };
        write_text(&cli, &text)?;
        Ok(out.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Io(m)) => {
            eprintln!("i/o error: {m}");
            ExitCode::from(EXIT_IO)
        }
    }
}
