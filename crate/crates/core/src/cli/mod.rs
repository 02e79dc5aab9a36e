//! Command-line front end. Every command writes JSON to standard output (or
//! `--out`) and a one-line summary to standard error.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for
//! malformed input, 3 for contract violations.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    check_axioms, check_morphism, check_rota_baxter, AlgebraJson, AxiomSuite, Domain,
    FiniteRelativeAlgebra, MorphismJson, RotaBaxterFamily, RotaBaxterJson, Role,
};
use crate::constructions::{self, examples, Construction};
use crate::error::{Error, Result};
use crate::free::{eval_expr, pair_op, FreeDendCarrier, Tree};
use crate::index::{
    check_cocycle, check_dimonoid, check_semigroup, CocycleJson, DimonoidJson, Elem, SemigroupJson,
};
use crate::json;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "semirel", version, about = "Exact checks for semigroup- and dimonoid-relative algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check associativity (and declared unit/commutativity) of a table.
    CheckSemigroup {
        #[arg(long, value_name = "FILE")]
        semigroup: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the five dimonoid identities.
    CheckDimonoid {
        #[arg(long, value_name = "FILE")]
        dimonoid: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the 2-cocycle identity.
    CheckCocycle {
        #[arg(long, value_name = "FILE")]
        cocycle: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run an axiom suite exhaustively on a finite algebra.
    CheckAlgebra {
        #[arg(long, value_name = "FILE")]
        algebra: PathBuf,
        #[arg(long, value_name = "NAME")]
        suite: AxiomSuite,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the Rota–Baxter identity of a family of operators.
    CheckRb {
        /// Carrier for matrix operators; not needed for built-in families.
        #[arg(long, value_name = "FILE")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        rb: PathBuf,
        /// Check indices 1..=N of a virtual semigroup.
        #[arg(long, value_name = "N", default_value_t = 20)]
        window: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check that a family of linear maps preserves the operations of a suite.
    CheckMorphism {
        #[arg(long, value_name = "FILE")]
        morphism: PathBuf,
        /// Source and target when the morphism file names neither.
        #[arg(long, value_name = "FILE")]
        algebra: Option<PathBuf>,
        #[arg(long, value_name = "NAME")]
        suite: AxiomSuite,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Apply a named construction to a finite algebra.
    Derive {
        #[arg(long, value_name = "NAME")]
        construction: Construction,
        #[arg(long, value_name = "FILE")]
        algebra: PathBuf,
        #[arg(long, value_name = "FILE")]
        cocycle: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        rb: Option<PathBuf>,
        /// Check the result against this suite.
        #[arg(long, value_name = "NAME")]
        suite: Option<AxiomSuite>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Collapse a finite relative algebra to an ordinary one on V⊗KS.
    Collapse {
        #[arg(long, value_name = "FILE")]
        algebra: PathBuf,
        /// Check the input and the collapsed algebra against this suite.
        #[arg(long, value_name = "NAME")]
        suite: Option<AxiomSuite>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate an expression in the free dendriform algebra.
    FreeEval {
        #[arg(long, value_name = "STRING")]
        expr: String,
        #[command(flatten)]
        carrier: CarrierArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run an axiom suite on seeded random trees of the free algebra.
    FreeCheck {
        #[arg(long, value_name = "NAME")]
        suite: AxiomSuite,
        #[arg(long, value_name = "N", default_value_t = 200)]
        samples: usize,
        #[arg(long, value_name = "N", default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        carrier: CarrierArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write the JSON output to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Index structure and decorations of a free carrier.
#[derive(Debug, Args)]
pub struct CarrierArgs {
    /// Edge labels from a semigroup (⊣ = ⊢ = its product).
    #[arg(long, value_name = "FILE", group = "edges")]
    pub semigroup: Option<PathBuf>,
    #[arg(long, value_name = "FILE", group = "edges")]
    pub dimonoid: Option<PathBuf>,
    /// Edge labels from the projection dimonoid on N elements `a`, `b`, ….
    #[arg(long, value_name = "N", group = "edges")]
    pub matching: Option<usize>,
    /// Vertex labels.
    #[arg(long, value_name = "LIST", value_delimiter = ',', default_value = "x,y")]
    pub decorations: Vec<String>,
}

impl CarrierArgs {
    fn carrier(&self) -> Result<FreeDendCarrier> {
        let decorations: Vec<String> = self.decorations.iter().map(|d| d.trim().to_string()).collect();
        if let Some(p) = &self.semigroup {
            let s = json::read_file::<SemigroupJson>(p)?.into_table()?;
            FreeDendCarrier::over_semigroup(decorations, &s)
        } else if let Some(p) = &self.dimonoid {
            let d = json::read_file::<DimonoidJson>(p)?.into_table()?;
            FreeDendCarrier::over_dimonoid(decorations, d)
        } else if let Some(n) = self.matching {
            FreeDendCarrier::matching(decorations, n)
        } else {
            Err(Error::schema(
                "arguments",
                "one of --semigroup, --dimonoid or --matching is required",
            ))
        }
    }
}

/// What a command produced: a JSON document and whether every check passed.
struct Outcome {
    value: Value,
    summary: String,
    passed: bool,
}

impl Outcome {
    fn report(r: Report) -> Result<Self> {
        Ok(Outcome {
            summary: r.summary(),
            passed: r.passed,
            value: to_value(&r)?,
        })
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v).expect("report types serialize"))
}

fn parent(p: &Path) -> Option<&Path> {
    p.parent()
}

fn load_algebra(p: &Path) -> Result<FiniteRelativeAlgebra> {
    json::read_file::<AlgebraJson>(p)?.into_algebra(parent(p))
}

fn exhaustive_check(alg: &FiniteRelativeAlgebra, suite: AxiomSuite) -> Result<Report> {
    let carrier = alg.to_algebra().lift_family()?;
    check_axioms(&carrier, suite, &Domain::exhaustive(&carrier)?)
}

fn derived(alg: &FiniteRelativeAlgebra, suite: Option<AxiomSuite>) -> Result<Outcome> {
    let report = suite.map(|s| exhaustive_check(alg, s)).transpose()?;
    let passed = report.as_ref().is_none_or(|r| r.passed);
    let summary = match &report {
        Some(r) => r.summary(),
        None => format!("derived algebra of dimension {}", alg.dim()),
    };
    Ok(Outcome {
        value: json!({ "algebra": to_value(&alg.to_json())?, "report": report }),
        summary,
        passed,
    })
}

fn rb_family(rb: &Path, algebra: Option<&Path>) -> Result<RotaBaxterFamily<usize>> {
    match json::read_file::<RotaBaxterJson>(rb)? {
        RotaBaxterJson::Builtin { builtin } if builtin == "harmonic" => {
            Ok(examples::harmonic_rota_baxter())
        }
        RotaBaxterJson::Builtin { builtin } => Err(Error::UnknownName {
            kind: "built-in Rota-Baxter family",
            name: builtin,
        }),
        RotaBaxterJson::Matrices { maps } => {
            let path = algebra.ok_or_else(|| {
                Error::schema("arguments", "matrix operators need --algebra")
            })?;
            let carrier = load_algebra(path)?.to_algebra();
            let maps = RotaBaxterJson::matrices(&maps, carrier.index())?;
            RotaBaxterFamily::from_matrices(carrier, maps)
        }
    }
}

fn rb_window(rb: &RotaBaxterFamily<usize>, window: usize) -> Vec<Elem> {
    match rb.carrier().index().size() {
        Some(n) => (0..n).collect(),
        None => (1..=window).collect(),
    }
}

/// The free carrier as an algebra with every operation it supports:
/// single-indexed `prec`/`succ`, their pair lifts, `mul`, and over a
/// commutative index also `circ` and `bracket`.
fn free_algebra(c: &FreeDendCarrier) -> Result<crate::algebra::Algebra<Tree>> {
    let mut alg = c.algebra().lift_family()?;
    alg = alg.with_pair(Role::Mul, pair_op(c, Role::Mul)?)?;
    if c.index().is_commutative() {
        alg = alg
            .with_pair(Role::Circ, pair_op(c, Role::Circ)?)?
            .with_pair(Role::Bracket, pair_op(c, Role::Bracket)?)?;
    }
    Ok(alg)
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::CheckSemigroup { semigroup, .. } => {
            let t = json::read_file::<SemigroupJson>(semigroup)?.into_table()?;
            Outcome::report(check_semigroup(&t))
        }
        Command::CheckDimonoid { dimonoid, .. } => {
            let t = json::read_file::<DimonoidJson>(dimonoid)?.into_table()?;
            Outcome::report(check_dimonoid(&t))
        }
        Command::CheckCocycle { cocycle, .. } => {
            let c = json::read_file::<CocycleJson>(cocycle)?.into_cocycle()?;
            Outcome::report(check_cocycle(&c)?)
        }
        Command::CheckAlgebra { algebra, suite, .. } => {
            Outcome::report(exhaustive_check(&load_algebra(algebra)?, *suite)?)
        }
        Command::CheckRb {
            algebra, rb, window, ..
        } => {
            let rb = rb_family(rb, algebra.as_deref())?;
            let w = rb_window(&rb, *window);
            Outcome::report(check_rota_baxter(&rb, &w)?)
        }
        Command::CheckMorphism {
            morphism,
            algebra,
            suite,
            ..
        } => {
            let parsed = json::read_file::<MorphismJson>(morphism)?;
            let dir = parent(morphism).unwrap_or(Path::new(""));
            let side = |named: &Option<String>| -> Result<FiniteRelativeAlgebra> {
                match (named, algebra) {
                    (Some(p), _) => load_algebra(&dir.join(p)),
                    (None, Some(p)) => load_algebra(p),
                    (None, None) => Err(Error::schema(
                        "source",
                        "no source/target in the morphism file and no --algebra given",
                    )),
                }
            };
            let (source, target) = (side(&parsed.source)?, side(&parsed.target)?);
            let f = parsed.into_family(source, target)?;
            Outcome::report(check_morphism(&f, *suite)?)
        }
        Command::Derive {
            construction,
            algebra,
            cocycle,
            rb,
            suite,
            ..
        } => {
            let out = match construction {
                Construction::CocycleTwist => {
                    let path = cocycle.as_ref().ok_or_else(|| {
                        Error::schema("arguments", "cocycle-twist needs --cocycle")
                    })?;
                    let c = json::read_file::<CocycleJson>(path)?.into_cocycle()?;
                    constructions::cocycle_twist(&load_algebra(algebra)?, &c)?
                }
                Construction::DendFromRb => {
                    let path = rb
                        .as_ref()
                        .ok_or_else(|| Error::schema("arguments", "dend-from-rb needs --rb"))?;
                    let base = load_algebra(algebra)?;
                    let fam = rb_family(path, Some(algebra))?;
                    let window = rb_window(&fam, 0);
                    let (p, s) = constructions::dend_from_rb(&fam, &window)?;
                    let alg = fam.carrier().clone().with_pair(Role::Prec, p)?.with_pair(Role::Succ, s)?;
                    FiniteRelativeAlgebra::materialize(&alg, base.basis().to_vec())?
                }
                c => c.apply(&load_algebra(algebra)?)?,
            };
            derived(&out, *suite)
        }
        Command::Collapse { algebra, suite, .. } => {
            let alg = load_algebra(algebra)?;
            if let Some(s) = suite {
                let r = exhaustive_check(&alg, *s)?;
                if let Some(cx) = r.counterexample {
                    return Err(Error::PreconditionFailed {
                        what: format!("input passes {s}"),
                        counterexample: Box::new(cx),
                    });
                }
            }
            derived(&constructions::collapse(&alg)?, *suite)
        }
        Command::FreeEval { expr, carrier, .. } => {
            let c = carrier.carrier()?;
            let v = eval_expr(expr, &c)?;
            let rendered = c.render(&v);
            let terms = v.to_pairs(|t| c.print(t));
            Ok(Outcome {
                value: json!({ "expression": expr, "result": rendered, "terms": terms }),
                summary: rendered,
                passed: true,
            })
        }
        Command::FreeCheck {
            suite,
            samples,
            max_vertices,
            seed,
            carrier,
            ..
        } => {
            if *max_vertices == 0 {
                return Err(Error::schema("max-vertices", "must be at least 1"));
            }
            let c = carrier.carrier()?;
            let alg = free_algebra(&c)?;
            let domain = c.sampled_domain(*samples, *max_vertices, *seed);
            Outcome::report(check_axioms(&alg, *suite, &domain)?)
        }
    }
}

fn out_path(cmd: &Command) -> Option<&Path> {
    let o = match cmd {
        Command::CheckSemigroup { out, .. }
        | Command::CheckDimonoid { out, .. }
        | Command::CheckCocycle { out, .. }
        | Command::CheckAlgebra { out, .. }
        | Command::CheckRb { out, .. }
        | Command::CheckMorphism { out, .. }
        | Command::Derive { out, .. }
        | Command::Collapse { out, .. }
        | Command::FreeEval { out, .. }
        | Command::FreeCheck { out, .. } => out,
    };
    o.out.as_deref()
}

fn emit(cmd: &Command, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json values serialize") + "\n";
    match out_path(cmd) {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Runs a parsed command and returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(&cli.command).and_then(|o| emit(&cli.command, &o.value).map(|_| o));
    match result {
        Ok(o) => {
            eprintln!("{}", o.summary);
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let value = json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            let _ = emit(&cli.command, &value);
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses the process arguments and runs; usage errors exit with status 2.
pub fn main() -> i32 {
    let cli = Cli::parse();
    run(&cli)
}
