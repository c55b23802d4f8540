use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qzeta::graph_series::{census, graph_series_of};
use qzeta::graphs::parse_graph_spec;
use qzeta::modular::{
    j_one, j_tilde, p_function, q_block, qm_generators, recognize, sigma_series, theta3_fourth, weierstrass,
    weierstrass_prime, QmLevel,
};
use qzeta::qmzv::{lie_sum, parse_composition, zq_standard, zq_star, zq_strict, RootSystem};
use qzeta::series::json::{from_json_str, SeriesJson};
use qzeta::series::{ct, ZetaSeries};
use qzeta::verify::{run_suite, Report};
use qzeta::vertexchar::{arakawa_char, conjecture_probe, fm_recognize, fm_stripped, sch_u, ProbeParams};
use qzeta::QSeries;

#[derive(Parser)]
#[command(name = "qzeta", version, about = "Exact q-series: graph series, q-zeta values, constant terms, characters")]
struct Cli {
    /// Truncation order: series are exact through q^order.
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,
    /// Extra coefficients a recognized combination must also match.
    #[arg(long, global = true, default_value_t = 10)]
    margin: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single object and print it.
    Compute {
        #[command(subcommand)]
        object: Object,
    },
    /// Run an identity suite; exits nonzero if any check fails.
    Verify {
        #[arg(value_parser = ["section2", "section3", "characters", "all"])]
        suite: String,
    },
    /// Run a quasi-modularity probe; always exits 0 once it has run.
    Probe {
        #[arg(value_parser = ["arakawa-qm", "zeta-g-even", "symmetrized", "bibracket-sym"])]
        name: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        kvals: Option<Vec<u32>>,
    },
    /// Count isomorphism classes and distinct graph series per vertex count.
    Census {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Star,
    Strict,
    Standard,
}

#[derive(Subcommand)]
enum Object {
    /// Standard-framed graph series of a graph spec (`cycle:5`, `T:2+pt`, JSON).
    GraphSeries {
        #[arg(long)]
        graph: String,
    },
    /// q-analogue of a multiple zeta value.
    Qmzv {
        #[arg(long, value_enum, default_value_t = Model::Star)]
        model: Model,
        /// Composition, e.g. `2,1,1`.
        #[arg(long)]
        a: String,
    },
    /// Lie-algebra q-zeta sum over the positive roots of sl(rank+1).
    LieQzeta {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// One exponent per positive root, or a single value for all.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u32>,
        /// Polynomial weight per positive root, or a single value for all.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        s: Vec<u32>,
    },
    /// Constant term in zeta of a product of Jacobi-type factors.
    Ct {
        /// Factors: `wp`, `wp'`, `J1`, `P<k>`, `Jt<l>`, `Q<k>`.
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<String>,
    },
    /// Vertex-algebra characters.
    Char {
        #[command(subcommand)]
        which: CharKind,
    },
    /// Recognize a series as a quasi-modular form.
    Recognize(RecognizeArgs),
}

#[derive(Subcommand)]
enum CharKind {
    Arakawa {
        #[arg(long = "type", default_value = "A")]
        kind: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long)]
        k: u32,
    },
    SchU {
        #[arg(long)]
        m: u64,
        /// Also recognize the stripped series at weight m-1.
        #[arg(long)]
        recognize: bool,
    },
}

#[derive(Args)]
struct RecognizeArgs {
    /// Series JSON (inline, or `@path`), or a builtin: `sigma:K`, `theta3^4`,
    /// `fm:M`, `zeta-g-s:RANK:S:K`.
    #[arg(long)]
    target: String,
    /// 1 for full level, 2 for the theta ring, m for Gamma0(m).
    #[arg(long, default_value_t = 1)]
    level: u64,
    #[arg(long, default_value_t = 0)]
    wmin: u32,
    #[arg(long)]
    wmax: u32,
}

fn root_values(roots: &RootSystem, v: &[u32], what: &str) -> Result<Vec<u32>> {
    match v.len() {
        1 => Ok(vec![v[0]; roots.num_positive()]),
        n if n == roots.num_positive() => Ok(v.to_vec()),
        n => bail!("--{what} has {n} values; need 1 or {}", roots.num_positive()),
    }
}

fn factor(name: &str, order: i64) -> Result<ZetaSeries> {
    let num =
        |prefix: &str| -> Result<u32> { name[prefix.len()..].parse().with_context(|| format!("bad factor {name:?}")) };
    Ok(match name {
        "wp" => weierstrass(order)?,
        "wp'" => weierstrass_prime(order)?,
        "J1" => j_one(order)?,
        _ if name.starts_with("Jt") => j_tilde(num("Jt")?, order)?,
        _ if name.starts_with('P') => p_function(num("P")?, order, true)?,
        _ if name.starts_with('Q') => q_block(num("Q")?, order)?,
        _ => bail!("unknown factor {name:?}; known: wp, wp', J1, P<k>, Jt<l>, Q<k>"),
    })
}

fn builtin_target(spec: &str, order: i64) -> Result<QSeries> {
    let parts: Vec<&str> = spec.split(':').collect();
    let int = |i: usize| -> Result<u64> {
        parts
            .get(i)
            .ok_or_else(|| anyhow!("{spec:?} is missing an argument"))?
            .parse()
            .with_context(|| format!("bad integer in {spec:?}"))
    };
    Ok(match parts[0] {
        "sigma" => sigma_series(int(1)? as u32, order),
        "theta3^4" => theta3_fourth(order),
        "fm" => fm_stripped(int(1)?, order)?,
        "zeta-g-s" => {
            let roots = RootSystem::type_a(int(1)? as usize)?;
            qzeta::qmzv::zeta_g_s(&roots, int(2)? as u32, int(3)? as u32, order)?
        }
        _ => bail!("unknown target {spec:?}"),
    })
}

fn recognize_target(args: &RecognizeArgs, order: i64, margin: usize) -> Result<qzeta::modular::Recognition> {
    let t = args.target.trim();
    let target = if t.starts_with('{') {
        from_json_str(t)?
    } else if let Some(path) = t.strip_prefix('@') {
        from_json_str(&std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?)?
    } else {
        builtin_target(t, order)?
    };
    let gens = qm_generators(QmLevel::from_number(args.level)?, order)?;
    Ok(recognize(&target, &gens, args.wmin, args.wmax, margin)?)
}

/// Output in either format. Plain text is a coefficient table for series and
/// one line per entry for reports.
enum Output {
    Series(QSeries),
    Value(String, String),
}

fn series_table(s: &QSeries) -> String {
    let rows: Vec<(String, String)> = s.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect();
    let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(1).max(3);
    let mut out = format!("{:>w$}  coefficient\n", "exp");
    for (e, c) in rows {
        let _ = writeln!(out, "{e:>w$}  {c}");
    }
    let _ = writeln!(out, "{:>w$}  O(q^{})", "", s.prec());
    out
}

fn value<T: Serialize>(v: &T, plain: String) -> Result<Output> {
    Ok(Output::Value(serde_json::to_string(v)?, plain))
}

fn report_plain(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let _ = writeln!(out, "{} {} [{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.reference, c.detail);
    }
    let passed = r.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{}: {passed}/{} passed at order {}", r.suite, r.checks.len(), r.order);
    out
}

fn compute(object: &Object, order: i64, margin: usize) -> Result<Output> {
    Ok(match object {
        Object::GraphSeries { graph } => Output::Series(graph_series_of(&parse_graph_spec(graph)?, order)),
        Object::Qmzv { model, a } => {
            let a = parse_composition(a)?;
            Output::Series(match model {
                Model::Star => zq_star(&a, order)?,
                Model::Strict => zq_strict(&a, order)?,
                Model::Standard => zq_standard(&a, order)?,
            })
        }
        Object::LieQzeta { rank, k, s } => {
            let roots = RootSystem::type_a(*rank)?;
            let k = root_values(&roots, k, "k")?;
            let s = root_values(&roots, s, "s")?;
            Output::Series(lie_sum(&roots, &k, &s, order)?)
        }
        Object::Ct { factors } => {
            let fs = factors.iter().map(|f| factor(f.trim(), order)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&ZetaSeries> = fs.iter().collect();
            Output::Series(ct(&refs)?)
        }
        Object::Char { which: CharKind::Arakawa { kind, rank, k } } => {
            if !kind.eq_ignore_ascii_case("A") {
                bail!("only type A is supported, got {kind:?}");
            }
            let r = arakawa_char(*rank, *k, order)?;
            let plain = format!("eta power {}, level {}\n{}", r.eta_power, r.level, series_table(&r.series));
            value(&r, plain)?
        }
        Object::Char { which: CharKind::SchU { m, recognize } } => {
            let mut r = sch_u(*m, order)?;
            if *recognize {
                r.recognition = Some(fm_recognize(*m, order, margin)?);
            }
            let mut plain = format!("eta power {}, level {}\n{}", r.eta_power, r.level, series_table(&r.series));
            if let Some(rec) = &r.recognition {
                plain.push_str(&recognition_plain(rec));
            }
            value(&r, plain)?
        }
        Object::Recognize(args) => {
            let r = recognize_target(args, order, margin)?;
            let plain = recognition_plain(&r);
            value(&r, plain)?
        }
    })
}

fn recognition_plain(r: &qzeta::modular::Recognition) -> String {
    let mut out =
        format!("found: {} (fitted {}, verified {} coefficients)\n", r.found, r.fitted_up_to, r.verified_through);
    for m in &r.monomials {
        let _ = writeln!(out, "  {}  {}", m.coeff, m.label);
    }
    out
}

fn emit(out: Output, format: Format) -> Result<()> {
    let text = match (out, format) {
        (Output::Series(s), Format::Json) => serde_json::to_string(&SeriesJson::from(&s))?,
        (Output::Series(s), Format::Plain) => series_table(&s),
        (Output::Value(v, _), Format::Json) => v,
        (Output::Value(_, p), Format::Plain) => p,
    };
    println!("{}", text.trim_end());
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("thread pool")?;
    }
    match &cli.command {
        Command::Compute { object } => emit(compute(object, cli.order, cli.margin)?, cli.format)?,
        Command::Verify { suite } => {
            let report = run_suite(suite, cli.order, cli.margin)?;
            let passed = report.passed;
            let plain = report_plain(&report);
            emit(value(&report, plain)?, cli.format)?;
            if !passed {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Probe { name, rank, k, kvals } => {
            let params = ProbeParams { rank: *rank, k: *k, kvals: kvals.clone(), margin: cli.margin };
            let r = conjecture_probe(name, &params, cli.order);
            let mut plain = format!("{} (order {}, level {}, weights 0..{})\n", r.name, r.order, r.level, r.weight_max);
            match (&r.error, &r.recognition) {
                (Some(e), _) => plain.push_str(&format!("error: {e}\n")),
                (None, Some(rec)) => plain.push_str(&recognition_plain(rec)),
                (None, None) => {}
            }
            emit(value(&r, plain)?, cli.format)?;
        }
        Command::Census { nmax } => {
            let rows = census(*nmax, cli.order)?;
            let mut plain = String::from("n  classes  distinct\n");
            for r in &rows {
                let _ = writeln!(plain, "{}  {:>7}  {:>8}", r.vertices, r.isomorphism_classes, r.distinct_series);
            }
            emit(value(&rows, plain)?, cli.format)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
