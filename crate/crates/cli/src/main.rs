//! `idensity` command-line front end.
//!
//! Inputs are JSON, given inline, as `@path`, or bundled in one `--file`.
//! Exit status: 0 ok, 2 bad input or failed precondition, 3 internal error.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use idensity::continuity::{
    critical_thresholds, is_iac_at, is_iac_global, is_iac_global_pointwise, pointwise_test_points, semicontinuity_at,
};
use idensity::density::{i_density_with_table, is_i_d_closed, is_i_d_open, theta};
use idensity::error::{Error, Result};
use idensity::ideal::{Ideal, IdealRegistry};
use idensity::json::{
    self, ClassifyDto, DensityReportDto, FunctionDto, GeneratorDto, GlobalIacDto, IacDto, LimitsDto, OracleDto,
    SeparationDto, SequenceDto, SetDto,
};
use idensity::limits::{classical_limsup, i_liminf, i_limit, i_limsup, pattern_limit_set};
use idensity::oracle::{default_grid_step, horizon_oracle_liminf, horizon_oracle_limsup, OracleConfig, DEFAULT_DELTA, DEFAULT_HORIZON};
use idensity::rational::{format_rational, parse_rational, to_f64, Rational};
use idensity::reproduce::{ExampleRegistry, Reproduction, Table, TABLE_ROWS};
use idensity::sets::grid;
use idensity::urysohn::separating_function;

#[derive(Parser, Debug)]
#[command(name = "idensity", version, about = "Exact ideal densities, limits and approximate continuity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Common {
    /// Ideal by registry name.
    #[arg(long, default_value = "natdens", global = true)]
    ideal: String,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// JSON object bundling named inputs (`set`, `generator`, `sequence`,
    /// `function`, `closed`, `point`); explicit flags win.
    #[arg(long, global = true)]
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower, upper and two-sided density of a set along a generator.
    Density {
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        generator: Option<String>,
        /// Quotient rows to report.
        #[arg(long, default_value_t = TABLE_ROWS)]
        rows: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Ideal limit superior and inferior of a described sequence.
    Limsup {
        #[arg(long)]
        sequence: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Open/closed verdicts in the density topology.
    Classify {
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Essential interior of a set.
    Theta {
        #[arg(long)]
        set: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Approximate continuity at a point, or everywhere without `--point`.
    Iac {
        #[arg(long)]
        function: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Separating function for a closed set and an outside point.
    Separate {
        #[arg(long)]
        closed: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value = "-6")]
        grid_lo: String,
        #[arg(long, default_value = "6")]
        grid_hi: String,
        #[arg(long, default_value = "3/250")]
        grid_step: String,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in worked examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Cross-check exact limits against a finite-horizon estimate.
    Oracle {
        #[arg(long)]
        sequence: Option<String>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
        /// Defaults to 1/1000.
        #[arg(long)]
        grid_step: Option<String>,
        /// Density proxy, also the agreement tolerance.
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum ExamplesAction {
    List {
        #[command(flatten)]
        common: Common,
    },
    Run {
        id: String,
        #[command(flatten)]
        common: Common,
    },
}

/// Named inputs, resolved from flags first and the bundle second.
struct Inputs {
    bundle: Option<Value>,
}

impl Inputs {
    fn new(file: &Option<String>) -> Result<Self> {
        let bundle = match file {
            Some(path) => {
                let text = read(path)?;
                Some(json::from_str::<Value>(&text)?)
            }
            None => None,
        };
        Ok(Inputs { bundle })
    }

    /// Raw JSON text for `name` plus the path prefix for error messages.
    fn text(&self, name: &str, flag: &Option<String>) -> Result<(String, String)> {
        if let Some(v) = flag {
            let text = match v.strip_prefix('@') {
                Some(path) => read(path)?,
                None => v.clone(),
            };
            return Ok((text, "$".into()));
        }
        match self.bundle.as_ref().and_then(|b| b.get(name)) {
            Some(v) => Ok((v.to_string(), format!("$.{name}"))),
            None => Err(Error::parse("$", format!("missing input --{name}"))),
        }
    }

    fn dto<T: DeserializeOwned>(&self, name: &str, flag: &Option<String>) -> Result<(T, String)> {
        let (text, root) = self.text(name, flag)?;
        let dto = json::from_str::<T>(&text).map_err(|e| rebase(e, &root))?;
        Ok((dto, root))
    }

    fn point(&self, name: &str, flag: &Option<String>) -> Result<Rational> {
        let (text, root) = self.text(name, flag)?;
        json::parse_point(&text).map_err(|e| rebase(e, &root))
    }
}

fn rebase(e: Error, root: &str) -> Error {
    match e {
        Error::Parse { path, message } if root != "$" => Error::Parse { path: path.replacen('$', root, 1), message },
        other => other,
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::parse("$", format!("cannot read {path}: {e}")))
}

fn ideal(name: &str) -> Result<Arc<dyn Ideal>> {
    let reg = IdealRegistry::builtin();
    reg.get(name).ok_or_else(|| Error::parse("--ideal", format!("unknown ideal {name:?}; known: {}", reg.names().join(", "))))
}

fn flag_rational(flag: &str, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::parse(flag, e.to_string()))
}

/// Rendered report: JSON text, or CSV records followed by `label: value` lines.
enum Report {
    Json(String),
    Csv { header: Vec<String>, rows: Vec<Vec<String>>, summary: Vec<(String, String)> },
}

impl Report {
    fn json<T: Serialize>(value: &T) -> Self {
        Report::Json(json::to_string(value))
    }

    fn table(table: Table, summary: Vec<(String, String)>) -> Self {
        Report::Csv { header: table.header, rows: table.rows, summary }
    }

    fn pairs(pairs: Vec<(&str, String)>) -> Self {
        Report::Csv {
            header: vec!["key".into(), "value".into()],
            rows: pairs.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect(),
            summary: Vec::new(),
        }
    }

    fn render(&self) -> String {
        match self {
            Report::Json(text) => format!("{text}\n"),
            Report::Csv { header, rows, summary } => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header).expect("in-memory write");
                for r in rows {
                    w.write_record(r).expect("in-memory write");
                }
                let mut out = String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 records");
                if !summary.is_empty() {
                    out.push('\n');
                    for (label, value) in summary {
                        out.push_str(&format!("{label}: {value}\n"));
                    }
                }
                out
            }
        }
    }
}

fn reproduction_report(r: &Reproduction, format: Format) -> Report {
    match format {
        Format::Json => Report::json(r),
        Format::Csv => {
            let mut summary = r.summary.clone();
            summary.extend(r.checks.iter().map(|c| (format!("check {}", c.name), if c.passed { "pass" } else { "FAIL" }.to_string())));
            Report::table(r.table.clone(), summary)
        }
    }
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Density { set, generator, rows, common } => {
            let inputs = Inputs::new(&common.file)?;
            let (s, root) = inputs.dto::<SetDto>("set", &set)?;
            let set = s.build(&root)?;
            let (g, root) = inputs.dto::<GeneratorDto>("generator", &generator)?;
            let g = g.build(&root)?;
            let ideal = ideal(&common.ideal)?;
            let report = i_density_with_table(&set, &g, ideal.as_ref(), rows)?;
            Ok(match common.format {
                Format::Json => Report::json(&DensityReportDto::from_report(&report)),
                Format::Csv => Report::table(
                    Table::quotients(report.quotient_table.as_deref().unwrap_or_default()),
                    vec![
                        ("ideal".into(), ideal.name().into()),
                        ("admissible".into(), report.admissible.to_string()),
                        ("s_set".into(), report.s_set.to_string()),
                        ("lower".into(), format_rational(&report.lower)),
                        ("upper".into(), format_rational(&report.upper)),
                        ("two_sided".into(), report.two_sided.as_ref().map_or("does not exist".into(), format_rational)),
                    ],
                ),
            })
        }
        Command::Limsup { sequence, common } => {
            let inputs = Inputs::new(&common.file)?;
            let (x, root) = inputs.dto::<SequenceDto>("sequence", &sequence)?;
            let x = x.build(&root)?;
            let ideal = ideal(&common.ideal)?;
            let dto = LimitsDto {
                ideal: ideal.name().into(),
                limsup: format_rational(&i_limsup(&x, ideal.as_ref())?),
                liminf: format_rational(&i_liminf(&x, ideal.as_ref())?),
                limit: i_limit(&x, ideal.as_ref())?.as_ref().map(format_rational),
                classical_limsup: format_rational(&classical_limsup(&x)),
                pattern_limits: pattern_limit_set(&x, ideal.as_ref())?.iter().map(format_rational).collect(),
            };
            Ok(match common.format {
                Format::Json => Report::json(&dto),
                Format::Csv => Report::pairs(vec![
                    ("ideal", dto.ideal),
                    ("limsup", dto.limsup),
                    ("liminf", dto.liminf),
                    ("limit", dto.limit.unwrap_or_else(|| "does not exist".into())),
                    ("classical_limsup", dto.classical_limsup),
                    ("pattern_limits", dto.pattern_limits.join(" ")),
                ]),
            })
        }
        Command::Classify { set, common } => {
            let inputs = Inputs::new(&common.file)?;
            let (s, root) = inputs.dto::<SetDto>("set", &set)?;
            let set = s.build(&root)?;
            let ideal = ideal(&common.ideal)?;
            let t = theta(&set, ideal.as_ref());
            let dto = ClassifyDto {
                i_d_open: is_i_d_open(&set, ideal.as_ref()),
                i_d_closed: is_i_d_closed(&set, ideal.as_ref()),
                measure: set.measure().to_string(),
                theta: SetDto::from_set(&t),
            };
            Ok(match common.format {
                Format::Json => Report::json(&dto),
                Format::Csv => Report::pairs(vec![
                    ("i_d_open", dto.i_d_open.to_string()),
                    ("i_d_closed", dto.i_d_closed.to_string()),
                    ("measure", dto.measure),
                    ("theta", t.to_string()),
                ]),
            })
        }
        Command::Theta { set, common } => {
            let inputs = Inputs::new(&common.file)?;
            let (s, root) = inputs.dto::<SetDto>("set", &set)?;
            let set = s.build(&root)?;
            let t = theta(&set, ideal(&common.ideal)?.as_ref());
            let dto = SetDto::from_set(&t);
            Ok(match common.format {
                Format::Json => Report::json(&dto),
                Format::Csv => {
                    let mut rows: Vec<Vec<String>> = dto
                        .components
                        .iter()
                        .map(|c| {
                            let class = serde_json::to_value(c.class).expect("enum").as_str().unwrap_or_default().to_string();
                            vec!["component".into(), c.lo.clone(), c.hi.clone(), c.lo_open.to_string(), c.hi_open.to_string(), class]
                        })
                        .collect();
                    for (kind, xs) in [("plus", &dto.plus), ("minus", &dto.minus)] {
                        rows.extend(xs.iter().map(|x| vec![kind.into(), x.clone(), x.clone(), "false".into(), "false".into(), String::new()]));
                    }
                    let header = ["kind", "lo", "hi", "lo_open", "hi_open", "class"].map(String::from).to_vec();
                    Report::Csv { header, rows, summary: Vec::new() }
                }
            })
        }
        Command::Iac { function, point, common } => {
            let inputs = Inputs::new(&common.file)?;
            let (f, root) = inputs.dto::<FunctionDto>("function", &function)?;
            let f = f.build(&root)?;
            let ideal = ideal(&common.ideal)?;
            let at = |p: &Rational| -> Result<IacDto> {
                let v = is_iac_at(&f, p, ideal.as_ref());
                let s = semicontinuity_at(&f, p, ideal.as_ref())?;
                Ok(IacDto::new(p, &f.eval(p), &v, &s))
            };
            let has_point = point.is_some() || inputs.bundle.as_ref().is_some_and(|b| b.get("point").is_some());
            let points = if has_point {
                vec![at(&inputs.point("point", &point)?)?]
            } else {
                pointwise_test_points(&f)?.iter().map(&at).collect::<Result<Vec<_>>>()?
            };
            let csv_rows = || {
                points
                    .iter()
                    .map(|p| {
                        vec![
                            p.point.clone(),
                            p.value.clone(),
                            p.holds.to_string(),
                            p.upper_semicontinuous.to_string(),
                            p.lower_semicontinuous.to_string(),
                        ]
                    })
                    .collect()
            };
            let header = ["point", "value", "iac", "upper_semicontinuous", "lower_semicontinuous"].map(String::from).to_vec();
            if has_point {
                return Ok(match common.format {
                    Format::Json => Report::json(&points[0]),
                    Format::Csv => Report::Csv { header, rows: csv_rows(), summary: Vec::new() },
                });
            }
            let dto = GlobalIacDto {
                level_set_route: is_iac_global(&f, ideal.as_ref())?,
                pointwise_route: is_iac_global_pointwise(&f, ideal.as_ref())?,
                critical_thresholds: critical_thresholds(&f)?.iter().map(format_rational).collect(),
                points: points.clone(),
            };
            if dto.level_set_route != dto.pointwise_route {
                return Err(Error::Internal("level-set and pointwise routes disagree".into()));
            }
            Ok(match common.format {
                Format::Json => Report::json(&dto),
                Format::Csv => Report::Csv {
                    header,
                    rows: csv_rows(),
                    summary: vec![
                        ("iac everywhere".into(), dto.level_set_route.to_string()),
                        ("critical thresholds".into(), dto.critical_thresholds.join(" ")),
                    ],
                },
            })
        }
        Command::Separate { closed, point, grid_lo, grid_hi, grid_step, common } => {
            let inputs = Inputs::new(&common.file)?;
            let (c, root) = inputs.dto::<SetDto>("closed", &closed)?;
            let closed = c.build(&root)?;
            let p = inputs.point("point", &point)?;
            let (lo, hi) = (flag_rational("--grid-lo", &grid_lo)?, flag_rational("--grid-hi", &grid_hi)?);
            let step = flag_rational("--grid-step", &grid_step)?;
            if step <= Rational::from_integer(0.into()) || hi <= lo {
                return Err(Error::parse("--grid-step", "need a positive step and grid-lo < grid-hi"));
            }
            let ideal = ideal(&common.ideal)?;
            let s = separating_function(&closed, &p)?;
            let xs = grid(&lo, &hi, &step);
            let report = s.verify(&xs, ideal.as_ref());
            let samples = s.sample(&xs);
            let dto = SeparationDto::new(&s, &report, &samples);
            Ok(match common.format {
                Format::Json => Report::json(&dto),
                Format::Csv => Report::Csv {
                    header: ["x", "g1", "g2", "g"].map(String::from).to_vec(),
                    rows: dto.samples.iter().map(|r| vec![r.x.clone(), r.g1.clone(), r.g2.clone(), r.g.clone()]).collect(),
                    summary: vec![
                        ("ok".into(), dto.report.ok.to_string()),
                        ("zero on closed".into(), dto.report.zero_on_closed.to_string()),
                        ("one at point".into(), dto.report.one_at_point.to_string()),
                        ("in unit range".into(), dto.report.in_unit_range.to_string()),
                        ("iac everywhere".into(), dto.report.iac_everywhere.to_string()),
                    ],
                },
            })
        }
        Command::Examples { action } => {
            let reg = ExampleRegistry::builtin();
            match action {
                ExamplesAction::List { common } => {
                    let list = reg.list();
                    Ok(match common.format {
                        Format::Json => Report::json(
                            &list.iter().map(|(id, title)| serde_json::json!({"id": id, "title": title})).collect::<Vec<_>>(),
                        ),
                        Format::Csv => Report::Csv {
                            header: vec!["id".into(), "title".into()],
                            rows: list.iter().map(|(id, title)| vec![id.to_string(), title.to_string()]).collect(),
                            summary: Vec::new(),
                        },
                    })
                }
                ExamplesAction::Run { id, common } => {
                    let ex = reg.get(&id).ok_or_else(|| {
                        let known: Vec<&str> = reg.list().iter().map(|(id, _)| *id).collect();
                        Error::parse("$", format!("unknown example {id:?}; known: {}", known.join(", ")))
                    })?;
                    let r = ex.run()?;
                    if !r.passed() {
                        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                        return Err(Error::Internal(format!("{} failed: {}", r.id, failed.join("; "))));
                    }
                    Ok(reproduction_report(&r, common.format))
                }
            }
        }
        Command::Oracle { sequence, horizon, grid_step, delta, common } => {
            let inputs = Inputs::new(&common.file)?;
            let (x, root) = inputs.dto::<SequenceDto>("sequence", &sequence)?;
            let x = x.build(&root)?;
            let ideal = ideal(&common.ideal)?;
            let grid_step = match grid_step {
                Some(t) => flag_rational("--grid-step", &t)?,
                None => default_grid_step(),
            };
            if horizon < 10 || !(delta > 0.0 && delta < 1.0) || grid_step <= Rational::from_integer(0.into()) {
                return Err(Error::parse("--horizon", "need horizon >= 10, 0 < delta < 1 and a positive grid step"));
            }
            let cfg = OracleConfig { horizon, grid_step, delta };
            let (sup, inf) = (i_limsup(&x, ideal.as_ref())?, i_liminf(&x, ideal.as_ref())?);
            let (osup, oinf) = (horizon_oracle_limsup(&x, ideal.as_ref(), &cfg), horizon_oracle_liminf(&x, ideal.as_ref(), &cfg));
            let close = |a: &Rational, b: &Rational| (to_f64(a) - to_f64(b)).abs() <= delta + 1e-12;
            let dto = OracleDto {
                ideal: ideal.name().into(),
                horizon,
                grid_step: format_rational(&cfg.grid_step),
                delta,
                engine_limsup: format_rational(&sup),
                engine_liminf: format_rational(&inf),
                oracle_limsup: format_rational(&osup),
                oracle_liminf: format_rational(&oinf),
                agree: close(&sup, &osup) && close(&inf, &oinf),
            };
            Ok(match common.format {
                Format::Json => Report::json(&dto),
                Format::Csv => Report::pairs(vec![
                    ("ideal", dto.ideal),
                    ("horizon", dto.horizon.to_string()),
                    ("grid_step", dto.grid_step),
                    ("delta", dto.delta.to_string()),
                    ("engine_limsup", dto.engine_limsup),
                    ("engine_liminf", dto.engine_liminf),
                    ("oracle_limsup", dto.oracle_limsup),
                    ("oracle_liminf", dto.oracle_liminf),
                    ("agree", dto.agree.to_string()),
                ]),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            let mut out = io::stdout().lock();
            if out.write_all(report.render().as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
