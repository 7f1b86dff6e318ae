use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quiverdef::bimodule::{transfer_invariants, verify_stable_morita, Check, MoritaPair};
use quiverdef::complex::complex_tangent;
use quiverdef::corpus::{self, ReportOptions};
use quiverdef::deform::{versal_classify, DEFAULT_MAX_ORDER};
use quiverdef::formats::{self, FileError, ModuleFile};
use quiverdef::homalg::{
    ext_dim, is_self_injective, is_symmetric, orbit_probe, stable_end_dim, stable_hom_dim, strip_projectives, syzygy,
    HomalgError, OrbitFunctor, OrbitResult, DEFAULT_ORBIT_CAP,
};
use quiverdef::module::hom_dim;
use quiverdef::{Algebra, BimoduleError, DeformError, Field, Verdict};

#[derive(Parser)]
#[command(name = "quiverdef", version, about = "Deformation rings of modules over quiver algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// Characteristic of the ground field.
    #[arg(long, global = true, default_value_t = 2)]
    field: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra presentations.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Module summaries.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    Hom {
        m: PathBuf,
        n: PathBuf,
    },
    Ext {
        m: PathBuf,
        n: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Prints the projective-free part of Ωⁿ M as a module file.
    Syzygy {
        m: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    StableEnd {
        m: PathBuf,
    },
    Versal {
        m: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    Orbit {
        m: PathBuf,
        #[arg(long)]
        functor: OrbitFunctor,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    Bimodule {
        #[command(subcommand)]
        cmd: BimoduleCmd,
    },
    /// Compares invariants of V and of its image under X ⊗ −.
    /// Without --x/--y the bimodule syzygy pair is used.
    Transfer {
        m: PathBuf,
        #[arg(long, requires = "y")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        y: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Builds an algebra file (or `corpus:NAME`) and prints its invariants.
    Check { file: String },
}

#[derive(Subcommand)]
enum ModuleCmd {
    Info { file: PathBuf },
}

#[derive(Subcommand)]
enum ComplexCmd {
    Tangent { file: PathBuf },
}

#[derive(Subcommand)]
enum BimoduleCmd {
    /// Certifies one-sided projectivity; with --inverse checks a stable
    /// equivalence of Morita type.
    Verify {
        file: PathBuf,
        #[arg(long)]
        inverse: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    /// `NAME` is e.g. `D3R^1,2,2,2`, or `D3R` followed by `1,2,2,2`.
    Report {
        name: String,
        params: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Bimodule(b) => b.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<DeformError> for Failure {
    fn from(e: DeformError) -> Self {
        match e {
            DeformError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<HomalgError> for Failure {
    fn from(e: HomalgError) -> Self {
        match e {
            HomalgError::Inconclusive { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<BimoduleError> for Failure {
    fn from(e: BimoduleError) -> Self {
        match e {
            BimoduleError::Deform(d) => d.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<corpus::CorpusError> for Failure {
    fn from(e: corpus::CorpusError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Result value, its text form and the exit code.
struct Output {
    value: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(value: Value, text: String) -> Self {
        Output { value, text, code: 0 }
    }
}

fn verdict_name(v: &Verdict) -> String {
    match v {
        Verdict::Trivial => "Trivial".into(),
        Verdict::Truncated { m } => format!("Truncated({m})"),
        Verdict::SmoothToOrder { n } => format!("SmoothToOrder({n})"),
        Verdict::TangentDimAtLeast2 { d } => format!("TangentDimAtLeast2({d})"),
    }
}

fn check_code(c: Check) -> u8 {
    match c {
        Check::Holds => 0,
        Check::Fails => 1,
        Check::Inconclusive => 3,
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn load(path: &Path, field: Field) -> Result<formats::LoadedModule, Failure> {
    Ok(formats::load_module(path, field)?)
}

fn algebra_check(file: &str, field: Field) -> Result<Output, Failure> {
    let alg: std::sync::Arc<Algebra> = formats::load_algebra(file, Path::new(""), field)?;
    let si = is_self_injective(&alg);
    let sym = si && is_symmetric(&alg);
    let value = json!({
        "name": alg.name(),
        "field": field.p(),
        "dim": alg.dim(),
        "vertices": alg.num_vertices(),
        "arrows": alg.arrows().len(),
        "relations": alg.relations().len(),
        "loewy_bound": alg.loewy_bound(),
        "self_injective": si,
        "symmetric": sym,
    });
    let text = format!(
        "{}: dim {}, {} vertices, {} arrows, {} relations\nself-injective: {si}\nsymmetric: {sym}\n",
        alg.name(),
        alg.dim(),
        alg.num_vertices(),
        alg.arrows().len(),
        alg.relations().len()
    );
    Ok(Output::ok(value, text))
}

fn run(cmd: Command, g: Global) -> Result<Output, Failure> {
    let field = Field::new(g.field).map_err(|e| Failure::Usage(e.to_string()))?;
    match cmd {
        Command::Algebra {
            cmd: AlgebraCmd::Check { file },
        } => algebra_check(&file, field),
        Command::Module {
            cmd: ModuleCmd::Info { file },
        } => {
            let m = load(&file, field)?.module;
            let ts = m.top_socle();
            let value = json!({
                "dims": m.dims(),
                "dim": m.dim(),
                "end_dim": hom_dim(&m, &m),
                "stable_end_dim": stable_end_dim(&m),
                "top": ts.top.dims(),
                "socle": ts.socle.dims(),
            });
            let text = format!(
                "dims {}\nEnd {}\nstable End {}\ntop {}\nsocle {}\n",
                join(m.dims()),
                value["end_dim"],
                value["stable_end_dim"],
                join(ts.top.dims()),
                join(ts.socle.dims())
            );
            Ok(Output::ok(value, text))
        }
        Command::Hom { m, n } => {
            let (m, n) = (load(&m, field)?.module, load(&n, field)?.module);
            let (h, s) = (hom_dim(&m, &n), stable_hom_dim(&m, &n));
            Ok(Output::ok(
                json!({"hom_dim": h, "stable_hom_dim": s}),
                format!("dim Hom {h}\ndim stable Hom {s}\n"),
            ))
        }
        Command::Ext { m, n, degree } => {
            if degree == 0 {
                return Err(Failure::Usage("Ext degree must be at least 1".into()));
            }
            let (m, n) = (load(&m, field)?.module, load(&n, field)?.module);
            let d = ext_dim(&m, &n, degree);
            Ok(Output::ok(
                json!({"degree": degree, "ext_dim": d}),
                format!("dim Ext^{degree} {d}\n"),
            ))
        }
        Command::Syzygy { m, times } => {
            let l = load(&m, field)?;
            let core = strip_projectives(&syzygy(&l.module, times)).core;
            let file = ModuleFile::from_module(&l.reference, &core);
            Ok(Output::ok(to_value(&file), file.to_toml()))
        }
        Command::StableEnd { m } => {
            let m = load(&m, field)?.module;
            let d = stable_end_dim(&m);
            Ok(Output::ok(json!({"stable_end_dim": d}), format!("dim stable End {d}\n")))
        }
        Command::Versal { m, max_order } => {
            let label = m.display().to_string();
            let v = versal_classify(&load(&m, field)?.module, max_order)?.labelled(label);
            let text = format!(
                "verdict {}\nR = {}\ntangent dim {}\nuniversal {}\n",
                verdict_name(&v.verdict),
                v.verdict,
                v.tangent_dim,
                v.universal
            );
            Ok(Output::ok(to_value(&v), text))
        }
        Command::Complex {
            cmd: ComplexCmd::Tangent { file },
        } => {
            let c = formats::load_complex(&file, field)?;
            let t = complex_tangent(&c);
            Ok(Output::ok(
                to_value(&t),
                format!("t_F {}\nt_F proflat {}\n", t.t_f, t.t_f_proflat),
            ))
        }
        Command::Orbit { m, functor, cap } => {
            if cap == 0 {
                return Err(Failure::Usage("--cap must be positive".into()));
            }
            let r = orbit_probe(&load(&m, field)?.module, functor, cap, g.seed)?;
            let line = match r.result {
                OrbitResult::Periodic { preperiod, period } => format!("period {period} (preperiod {preperiod})"),
                OrbitResult::Collapsed { step } => format!("collapsed to 0 at step {step}"),
                OrbitResult::NoRepetition { cap } => format!("no repetition within {cap} steps"),
            };
            let dims: Vec<String> = r.dims.iter().map(|d| join(d)).collect();
            Ok(Output::ok(to_value(&r), format!("{line}\ndims {}\n", dims.join(" → "))))
        }
        Command::Bimodule {
            cmd: BimoduleCmd::Verify { file, inverse },
        } => {
            let x = formats::load_bimodule(&file, field)?;
            match inverse {
                None => {
                    let c = x.bimodule.certificates();
                    let ok = !x.file.certify || (c.left_projective && c.right_projective);
                    let text = format!(
                        "dim {}\nleft projective {}\nright projective {}\n",
                        x.bimodule.dim(),
                        c.left_projective,
                        c.right_projective
                    );
                    Ok(Output {
                        value: json!({"dim": x.bimodule.dim(), "certificates": c, "certified": ok}),
                        text,
                        code: if ok { 0 } else { 1 },
                    })
                }
                Some(y) => {
                    let y = formats::load_bimodule(&y, field)?;
                    let r = verify_stable_morita(&x.bimodule, &y.bimodule)?;
                    let text = format!(
                        "Y⊗X core ≅ regular: {:?} ({} projective summands)\nX⊗Y core ≅ regular: {:?} ({} projective summands)\nverdict {:?}\n",
                        r.yx_core, r.yx_projective_summands, r.xy_core, r.xy_projective_summands, r.verdict
                    );
                    Ok(Output {
                        value: to_value(&r),
                        text,
                        code: check_code(r.verdict),
                    })
                }
            }
        }
        Command::Transfer { m, x, y, max_order } => {
            let v = load(&m, field)?.module;
            let pair = match (x, y) {
                (Some(x), Some(y)) => MoritaPair::new(
                    formats::load_bimodule(&x, field)?.bimodule,
                    formats::load_bimodule(&y, field)?.bimodule,
                )?,
                _ => MoritaPair::syzygy(v.algebra())?,
            };
            let r = transfer_invariants(&pair, &v, max_order)?;
            let text = format!(
                "source dims {} stable End {} verdict {}\ntarget dims {} stable End {} verdict {}\nequal {}\n",
                join(&r.source.dims),
                r.source.stable_end_dim,
                verdict_name(&r.source.versal.verdict),
                join(&r.target.dims),
                r.target.stable_end_dim,
                verdict_name(&r.target.versal.verdict),
                r.equal()
            );
            Ok(Output {
                value: to_value(&r),
                text,
                code: if r.equal() { 0 } else { 1 },
            })
        }
        Command::Corpus { cmd: CorpusCmd::List } => {
            let entries = corpus::corpus_list();
            let mut text = String::new();
            for f in corpus::Family::ALL {
                let ps: String = f.parameters().iter().collect();
                let _ = writeln!(text, "{f} (parameters {ps})");
            }
            for e in &entries {
                let _ = writeln!(text, "{}: {} tabled modules", e.name(), e.modules.len());
            }
            Ok(Output::ok(to_value(&entries), text))
        }
        Command::Corpus {
            cmd: CorpusCmd::Report { name, params, max_order },
        } => {
            let (family, params) = match params {
                Some(p) => {
                    let family: corpus::Family = name.parse()?;
                    (family, corpus::parse_params(family, &p)?)
                }
                None => corpus::parse_name(&name)?,
            };
            let entry = corpus::corpus_get(family, &params)?;
            let r = corpus::run_report(&entry, ReportOptions { field, max_order })?;
            Ok(Output {
                value: to_value(&r),
                text: r.to_text(),
                code: r.exit_code() as u8,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = cli.global;
    match run(cli.command, g) {
        Ok(out) => {
            if g.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            let (kind, msg, code) = match f {
                Failure::Usage(m) => ("usage", m, 2),
                Failure::Budget(m) => ("budget", m, 3),
            };
            if g.json {
                println!("{}", json!({"error": {"kind": kind, "message": msg}}));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
