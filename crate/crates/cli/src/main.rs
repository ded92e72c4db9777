use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use flagq_core::class::Coefficient;
use flagq_core::ktheory::{self, KEngine};
use flagq_core::qh::grading::verify_filtration;
use flagq_core::qh::pw::verify_pw;
use flagq_core::qh::reduction::{verify_grassmannian_reduction, verify_reduction};
use flagq_core::qh::table::{load_engine, save_engine, StructureTable};
use flagq_core::qh::{reduce_trace, QhEngine, Quad};
use flagq_core::report::{Counterexample, VerifyReport, SCHEMA};
use flagq_core::seidel::{self, pieri_cases, quantum_pieri};
use flagq_core::weyl::{all_permutations, Permutation};
use flagq_core::{Class, DegreeVector, Error, Strategy};

#[derive(Parser)]
#[command(
    name = "flagq",
    version,
    about = "Quantum cohomology and quantum K-theory of Fl_n"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for cached tables (FLAGQ_CACHE takes precedence)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Run sweeps on one thread
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum product of two Schubert classes
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "u_word")]
        u: Option<String>,
        #[arg(long)]
        u_word: Option<String>,
        #[arg(long, conflicts_with = "v_word")]
        v: Option<String>,
        #[arg(long)]
        v_word: Option<String>,
        /// Cup product only (q = 0)
        #[arg(long)]
        classical: bool,
    },
    /// Hook product O^{s_{n-m}...s_{n-1}} . O^v in K(Fl_n)
    KProduct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hook: usize,
        #[arg(long, conflicts_with = "v_word")]
        v: Option<String>,
        #[arg(long)]
        v_word: Option<String>,
    },
    /// Conjectured quantum K hook product, optionally pushed to G/P
    QkConjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        hook: usize,
        #[arg(long, conflicts_with = "u_word")]
        u: Option<String>,
        #[arg(long)]
        u_word: Option<String>,
        /// Simple roots of the parabolic, e.g. "1,2,4,5"
        #[arg(long)]
        project: Option<String>,
    },
    /// Computes a structure-constant table and writes it to the cache
    Table {
        #[arg(long)]
        n: usize,
        /// Only pairs with l(u) + l(v) up to this
        #[arg(long)]
        degree_cap: Option<usize>,
    },
    /// Verification sweeps
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long)]
        n: usize,
        /// Compare closed forms with full engine products
        #[arg(long)]
        engine_check: bool,
        /// Degree cap for the filtration sweep (default n(n-1))
        #[arg(long)]
        degree_cap: Option<usize>,
    },
    /// Quantum-to-classical reduction trace of N_{u,v}^{w,lambda}
    Reduce {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "u_word")]
        u: Option<String>,
        #[arg(long)]
        u_word: Option<String>,
        #[arg(long, conflicts_with = "v_word")]
        v: Option<String>,
        #[arg(long)]
        v_word: Option<String>,
        #[arg(long, conflicts_with = "w_word")]
        w: Option<String>,
        #[arg(long)]
        w_word: Option<String>,
        #[arg(long, default_value = "")]
        lambda: String,
    },
    /// For each u, whether s_i...s_j * u has no quantum terms
    Explore {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Seidel,
    Pieri,
    Support,
    CycleCup,
    Filtration,
    Pw,
    Reduction,
    K,
    All,
}

enum Failure {
    Usage(String),
    Counterexample,
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("invalid value for --{flag}: {msg}"))
}

fn check_n(n: usize, max: usize) -> Result<(), Failure> {
    if (2..=max).contains(&n) {
        Ok(())
    } else {
        Err(usage("n", format!("expected 2 <= n <= {max}, got {n}")))
    }
}

fn perm(
    n: usize,
    name: &str,
    one_line: &Option<String>,
    word: &Option<String>,
) -> Result<Permutation, Failure> {
    let p = match (one_line, word) {
        (Some(s), None) => Permutation::parse(s).map_err(|e| usage(name, e))?,
        (None, Some(s)) => {
            Permutation::parse_word(n, s).map_err(|e| usage(&format!("{name}-word"), e))?
        }
        (None, None) => {
            return Err(Failure::Usage(format!(
                "one of --{name} or --{name}-word is required"
            )))
        }
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(format!(
                "--{name} and --{name}-word conflict"
            )))
        }
    };
    if p.n() != n {
        return Err(usage(name, format!("{p} is not in S_{n}")));
    }
    Ok(p)
}

fn parse_indices(flag: &str, s: &str, n: usize) -> Result<Vec<usize>, Failure> {
    let v = flagq_core::weyl::parse_word_letters(s).map_err(|e| usage(flag, e))?;
    if let Some(bad) = v.iter().find(|&&i| i == 0 || i >= n) {
        return Err(usage(flag, format!("index {bad} out of range for S_{n}")));
    }
    Ok(v)
}

fn term_json<C: Coefficient>(c: &Class<C>) -> Vec<serde_json::Value> {
    c.ordered_terms()
        .into_iter()
        .map(|(lambda, w, x)| {
            json!({
                "q": lambda.coeffs(),
                "w": w.to_string(),
                "word": w.word_string(),
                "coeff": x.to_string(),
            })
        })
        .collect()
}

struct Ctx {
    format: Format,
    cache: Option<PathBuf>,
    strategy: Strategy,
}

impl Ctx {
    fn engine(&self, n: usize) -> Result<QhEngine, Failure> {
        Ok(load_engine(n, self.cache.as_deref())?)
    }

    fn save(&self, engine: &QhEngine) -> Outcome {
        if let Some(dir) = &self.cache {
            save_engine(engine, dir)?;
        }
        Ok(())
    }

    fn emit(&self, text: &str, value: serde_json::Value) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = std::env::var_os("FLAGQ_CACHE")
        .filter(|s| !s.is_empty())
        .map(PathBuf::from)
        .or(cli.cache_dir.clone());
    let ctx = Ctx {
        format: cli.format,
        cache,
        strategy: if cli.sequential {
            Strategy::Sequential
        } else {
            Strategy::Parallel
        },
    };
    match run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::InvariantViolation(_) | Error::FormulaViolation(_) | Error::NotInSpan(_) => {
                    ExitCode::from(1)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Product {
            n,
            u,
            u_word,
            v,
            v_word,
            classical,
        } => {
            check_n(n, 8)?;
            let u = perm(n, "u", &u, &u_word)?;
            let v = perm(n, "v", &v, &v_word)?;
            let engine = ctx.engine(n)?;
            let p = if classical {
                engine.classical_product(&u, &v)?
            } else {
                engine.quantum_product(&u, &v)?
            };
            ctx.save(&engine)?;
            let text = p.render("s");
            ctx.emit(
                &text,
                json!({
                    "schema": SCHEMA,
                    "n": n,
                    "u": u.to_string(),
                    "v": v.to_string(),
                    "classical": classical,
                    "terms": term_json(&p),
                    "text": text,
                }),
            );
            Ok(())
        }
        Command::KProduct { n, hook, v, v_word } => {
            check_n(n, 8)?;
            if !(1..n).contains(&hook) {
                return Err(usage("hook", format!("expected 1 <= m < {n}")));
            }
            let v = perm(n, "v", &v, &v_word)?;
            let k = KEngine::new(n)?;
            let p = ktheory::k_cup_special(&k, hook, &v)?;
            let text = p.render("O");
            ctx.emit(
                &text,
                json!({
                    "schema": SCHEMA,
                    "n": n,
                    "hook": hook,
                    "v": v.to_string(),
                    "terms": term_json(&p),
                    "text": text,
                }),
            );
            Ok(())
        }
        Command::QkConjecture {
            n,
            hook,
            u,
            u_word,
            project,
        } => {
            check_n(n, 8)?;
            if !(1..n).contains(&hook) {
                return Err(usage("hook", format!("expected 1 <= m < {n}")));
            }
            let u = perm(n, "u", &u, &u_word)?;
            let k = KEngine::new(n)?;
            let c = ktheory::qk_conjecture_product(&k, hook, &u)?;
            let text = c.render("O");
            let mut value = json!({
                "schema": SCHEMA,
                "n": n,
                "hook": hook,
                "u": u.to_string(),
                "terms": term_json(&c),
                "text": text,
            });
            let mut lines = vec![text];
            if let Some(p) = project {
                let delta = parse_indices("project", &p, n)?;
                let img = ktheory::pi_star(&delta, &c);
                // a single missing root means a Grassmannian: label by partitions
                let missing: Vec<usize> = (1..n).filter(|i| !delta.contains(i)).collect();
                let projected = match missing.as_slice() {
                    [k] => ktheory::render_grassmannian(&img, *k)?,
                    _ => img.render("O"),
                };
                value["projected"] =
                    json!({ "delta_p": delta, "terms": term_json(&img), "text": projected });
                lines.push(projected);
            }
            ctx.emit(&lines.join("\n"), value);
            Ok(())
        }
        Command::Table { n, degree_cap } => {
            check_n(n, 6)?;
            let Some(dir) = ctx.cache.clone() else {
                return Err(Failure::Usage(
                    "table needs --cache-dir or FLAGQ_CACHE".into(),
                ));
            };
            let max = n * (n - 1);
            let cap = degree_cap.unwrap_or(max);
            if cap > max {
                return Err(usage("degree-cap", format!("at most {max} for n = {n}")));
            }
            let engine = ctx.engine(n)?;
            let perms = all_permutations(n);
            let pairs: Vec<(Permutation, Permutation)> = perms
                .iter()
                .flat_map(|u| perms.iter().map(move |v| (u.clone(), v.clone())))
                .filter(|(u, v)| u <= v && u.length() + v.length() <= cap)
                .collect();
            ctx.strategy
                .try_map(&pairs, |(u, v)| engine.quantum_product(u, v).map(|_| ()))?;
            save_engine(&engine, &dir)?;
            let table = StructureTable::from_engine(&engine);
            let path = flagq_core::qh::table::table_path(&dir, n);
            let text = format!("{}: {} entries", path.display(), table.entries.len());
            ctx.emit(
                &text,
                json!({ "schema": SCHEMA, "n": n, "path": path, "entries": table.entries.len() }),
            );
            Ok(())
        }
        Command::Verify {
            check,
            n,
            engine_check,
            degree_cap,
        } => verify(ctx, check, n, engine_check, degree_cap),
        Command::Reduce {
            n,
            u,
            u_word,
            v,
            v_word,
            w,
            w_word,
            lambda,
        } => {
            check_n(n, 6)?;
            let u = perm(n, "u", &u, &u_word)?;
            let v = perm(n, "v", &v, &v_word)?;
            let w = perm(n, "w", &w, &w_word)?;
            let lambda = if lambda.trim().is_empty() {
                DegreeVector::zero(n)
            } else {
                DegreeVector::parse_csv(n, &lambda).map_err(|e| usage("lambda", e))?
            };
            let engine = ctx.engine(n)?;
            let trace = reduce_trace(&engine, &Quad::new(u, v, w, lambda))?;
            ctx.save(&engine)?;
            ctx.emit(
                &trace.render(),
                json!({ "schema": SCHEMA, "n": n, "trace": trace }),
            );
            Ok(())
        }
        Command::Explore { n, i, j } => {
            check_n(n, 6)?;
            if !(1 <= i && i <= j && j < n) {
                return Err(Failure::Usage(format!(
                    "--i and --j need 1 <= i <= j < n, got i = {i}, j = {j}"
                )));
            }
            let engine = ctx.engine(n)?;
            let rows = seidel::explore_classical_equality(&engine, i, j, ctx.strategy)?;
            ctx.save(&engine)?;
            let text: Vec<String> = rows
                .iter()
                .map(|r| {
                    let d: Vec<String> = r.descents.iter().map(|x| x.to_string()).collect();
                    format!(
                        "{} {} descents={} last={} {}",
                        r.u,
                        r.word,
                        d.join(","),
                        r.last,
                        r.equal
                    )
                })
                .collect();
            ctx.emit(
                &text.join("\n"),
                json!({ "schema": SCHEMA, "n": n, "i": i, "j": j, "rows": rows }),
            );
            Ok(())
        }
    }
}

fn from_filtration(
    engine: &QhEngine,
    cap: usize,
    strategy: Strategy,
) -> Result<VerifyReport, Error> {
    let n = engine.n();
    let mut rep = VerifyReport::new("filtration", n);
    for i in 1..n {
        let f = verify_filtration(engine, i, cap, strategy)?;
        rep.total += f.terms;
        rep.passed += f.terms - f.violations.len() as u64;
        rep.counterexamples
            .extend(f.violations.into_iter().map(|v| Counterexample {
                case: format!(
                    "alpha_{}: ({}) * ({}) -> {}",
                    v.alpha, v.left, v.right, v.term
                ),
                expected: format!("grade <= {}", v.input_grade),
                got: v.term_grade.to_string(),
            }));
    }
    Ok(rep)
}

fn from_reduction(engine: &QhEngine, strategy: Strategy) -> Result<VerifyReport, Error> {
    let r = verify_reduction(engine, strategy)?;
    let g = verify_grassmannian_reduction(engine, strategy)?;
    let mut rep = VerifyReport::new("reduction", engine.n());
    rep.total = r.total() + g.checked;
    rep.passed = rep.total - r.failures.len() as u64 - g.stuck.len() as u64;
    rep.counterexamples
        .extend(r.failures.into_iter().map(|f| Counterexample {
            case: format!(
                "{} at alpha_{}: {} vs {}",
                f.identity, f.alpha, f.left, f.right
            ),
            expected: f.left_value.to_string(),
            got: f.right_value.to_string(),
        }));
    rep.counterexamples
        .extend(g.stuck.into_iter().map(|q| Counterexample {
            case: q,
            expected: "chain to a classical constant".into(),
            got: "stuck".into(),
        }));
    Ok(rep)
}

fn from_k(n: usize, qh: &QhEngine, strategy: Strategy) -> Result<VerifyReport, Error> {
    let k = KEngine::new(n)?;
    let r = ktheory::k_verify(&k, qh, strategy)?;
    let mut rep = VerifyReport::new("k", n);
    rep.total = r.total;
    rep.passed = r.passed;
    rep.counterexamples
        .extend(r.failures.into_iter().map(|f| Counterexample {
            case: format!("m={} v={}", f.m, f.v),
            expected: "K-theoretic structure".into(),
            got: f.reason,
        }));
    Ok(rep)
}

fn pieri_without_engine(engine: &QhEngine, strategy: Strategy) -> Result<VerifyReport, Error> {
    let n = engine.n();
    let cases = pieri_cases(n);
    let outcomes = strategy.map(&cases, |(m, u)| match quantum_pieri(engine, *m, u, false) {
        Ok(_) => None,
        Err(e) => Some(Counterexample {
            case: format!("m={m} u={u}"),
            expected: "q-polynomial closed form".into(),
            got: e.to_string(),
        }),
    });
    let mut rep = VerifyReport::new("pieri", n);
    outcomes.into_iter().for_each(|o| rep.record(o));
    Ok(rep)
}

fn verify(
    ctx: &Ctx,
    check: Check,
    n: usize,
    engine_check: bool,
    degree_cap: Option<usize>,
) -> Outcome {
    check_n(n, 6)?;
    let max = n * (n - 1);
    let cap = degree_cap.unwrap_or(max);
    if cap > max {
        return Err(usage("degree-cap", format!("at most {max} for n = {n}")));
    }
    let engine = ctx.engine(n)?;
    let s = ctx.strategy;
    let checks = match check {
        Check::All => vec![
            Check::Seidel,
            Check::Pieri,
            Check::Support,
            Check::CycleCup,
            Check::Filtration,
            Check::Pw,
            Check::Reduction,
            Check::K,
        ],
        c => vec![c],
    };
    let mut reports = Vec::new();
    for c in checks {
        let rep = match c {
            Check::Seidel => seidel::verify_seidel(&engine, s)?,
            Check::Pieri if engine_check || check == Check::All => {
                seidel::verify_pieri(&engine, &pieri_cases(n), s)?
            }
            Check::Pieri => pieri_without_engine(&engine, s)?,
            Check::Support => seidel::verify_support(&engine, s)?,
            Check::CycleCup => seidel::verify_cycle_cup(&engine, s)?,
            Check::Filtration => from_filtration(&engine, cap, s)?,
            Check::Pw => verify_pw(n, 3, -3, 6, s),
            Check::Reduction => from_reduction(&engine, s)?,
            Check::K => from_k(n, &engine, s)?,
            Check::All => unreachable!(),
        };
        reports.push(rep);
    }
    ctx.save(&engine)?;
    let ok = reports.iter().all(VerifyReport::ok);
    match ctx.format {
        Format::Text => {
            let single = reports.len() == 1;
            for r in &reports {
                if single {
                    println!("{}", r.summary());
                } else {
                    println!("{}: {}", r.check, r.summary());
                }
                for c in r.counterexamples.iter().take(20) {
                    println!("  {}: expected {}, got {}", c.case, c.expected, c.got);
                }
            }
        }
        Format::Json => {
            let out = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&AllReport {
                    schema: SCHEMA,
                    n,
                    ok,
                    checks: &reports,
                })
            };
            println!("{}", out.expect("json"));
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

#[derive(Serialize)]
struct AllReport<'a> {
    schema: u32,
    n: usize,
    ok: bool,
    checks: &'a [VerifyReport],
}
