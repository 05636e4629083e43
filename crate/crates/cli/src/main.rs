//! `sunlab`: command-line front end for the sunlab toolkit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sunlab::classification::classify;
use sunlab::l1_convexity::{is_l1_convex, is_strictly_l1_convex};
use sunlab::projection::project;
use sunlab::scenario_lab::{
    generate, suite, validate_bh, validate_prop1, validate_theorem1, validate_theorem_a, Family, FamilySpec,
    ScenarioReport,
};
use sunlab::set_model::{load_scene, save_scene, scene_to_json};
use sunlab::sun_checker::{check_strict_sun, check_sun, cone_contains, cone_contains_by_definition, ob_condition, ConeSpec};
use sunlab::verdict::Verdict;
use sunlab::{Config, Norm, Point, Scalar, SetModel};

#[derive(Parser, Debug)]
#[command(name = "sunlab", version, about = "Exact checks for suns, strict suns and l1-convexity in l-infinity")]
struct Cli {
    /// Render rationals with this many decimal places.
    #[arg(long, global = true, value_name = "K")]
    decimal: Option<usize>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Run configuration (JSON); missing fields take their defaults.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Seed for sampling and generation.
    #[arg(long, global = true, env = "SUNLAB_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cross / cocross classification.
    Classify { scene: PathBuf },
    /// Distance and nearest points.
    Project {
        scene: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "linf")]
        norm: NormArg,
    },
    /// Menger l1-convexity.
    CheckL1 { scene: PathBuf },
    /// Strict l1-convexity.
    CheckStrictL1 { scene: PathBuf },
    /// Sun property over the sweep.
    CheckSun { scene: PathBuf },
    /// Strict-sun property over the sweep.
    CheckStrictSun { scene: PathBuf },
    /// Both forms of the supporting cone test at z, plus the cone condition.
    ConeTest {
        scene: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Writes a generated scene.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Truncation half-width (default from the configuration).
        #[arg(long)]
        extent: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cross-checks a theorem on one scene.
    Validate {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        scene: PathBuf,
    },
    /// Runs the full acceptance sweep.
    Suite {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormArg {
    Linf,
    L1,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    #[value(name = "1")]
    One,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "BH", alias = "bh")]
    Bh,
    #[value(name = "prop1")]
    Prop1,
}

/// Process outcome: pass, or refutation / disagreement.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("configuring the thread pool")?;
    }
    let config = load_config(cli)?;
    let print = |v: Value| emit(v, cli.decimal);
    match &cli.command {
        Command::Classify { scene } => {
            let m = read_scene(scene)?;
            let c = classify(&m);
            print(json!({ "scene": m.name(), "classification": c }));
            Ok(Outcome::Pass)
        }
        Command::Project { scene, point, norm } => {
            let m = read_scene(scene)?;
            let x = parse_point(point, &m)?;
            let which = match norm {
                NormArg::Linf => Norm::Linf,
                NormArg::L1 => Norm::L1,
            };
            let p = project(&m, &x, which)?;
            let witnesses: Vec<Value> = p
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "primitive": w.primitive,
                        "point": w.minimizer.render(cli.decimal),
                        "unique": w.is_unique,
                    })
                })
                .collect();
            print(json!({
                "point": x.render(cli.decimal),
                "norm": p.norm_used,
                "rho": p.rho,
                "witnesses": witnesses,
                "unique": p.is_unique(),
            }));
            Ok(Outcome::Pass)
        }
        Command::CheckL1 { scene } => {
            let m = read_scene(scene)?;
            let v = is_l1_convex(&m, &config.budget());
            Ok(report_verdict(&m, "l1_convex", v, None, cli.decimal))
        }
        Command::CheckStrictL1 { scene } => {
            let m = read_scene(scene)?;
            let v = is_strictly_l1_convex(&m, &config.budget());
            Ok(report_verdict(&m, "strictly_l1_convex", v, None, cli.decimal))
        }
        Command::CheckSun { scene } => {
            let m = read_scene(scene)?;
            let v = check_sun(&m, &config.sweep(m.dim()), &config.lambda_schedule);
            Ok(report_verdict(&m, "sun", v, None, cli.decimal))
        }
        Command::CheckStrictSun { scene } => {
            let m = read_scene(scene)?;
            let r = check_strict_sun(&m, &config.sweep(m.dim()), &config.lambda_schedule);
            let stats = serde_json::to_value(&r.stats)?;
            Ok(report_verdict(&m, "strict_sun", r.verdict, Some(stats), cli.decimal))
        }
        Command::ConeTest { scene, x, y, z } => {
            let m = read_scene(scene)?;
            let (x, y, z) = (parse_point(x, &m)?, parse_point(y, &m)?, parse_point(z, &m)?);
            let spec = ConeSpec::new(&x, &y)?;
            let dual = cone_contains(&spec, &z)?;
            let direct = cone_contains_by_definition(&spec, &z)?;
            let nearest = m.contains(&y)?
                && sunlab::numerics::dist(&x, &y, Norm::Linf) == sunlab::projection::distance(&m, &x, Norm::Linf)?;
            let ob = nearest.then(|| ob_condition(&m, &spec)).transpose()?;
            print(json!({
                "x": x.render(cli.decimal),
                "y": y.render(cli.decimal),
                "z": z.render(cli.decimal),
                "active": spec.active,
                "radius": spec.r,
                "in_cone": dual,
                "in_cone_by_definition": direct,
                "y_is_nearest": nearest,
                "cone_condition": ob,
            }));
            Ok(if dual == direct { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Generate {
            family,
            dim,
            extent,
            output,
        } => {
            let family: Family = family.parse()?;
            let extent = match extent {
                Some(e) => e.parse::<Scalar>()?,
                None => config.extent.clone(),
            };
            let m = generate(&FamilySpec::new(family, *dim, extent), config.seed)?;
            match output {
                Some(path) => save_scene(&m, path).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", scene_to_json(&m)),
            }
            Ok(Outcome::Pass)
        }
        Command::Validate { theorem, scene } => {
            let m = read_scene(scene)?;
            let (report, agreement) = match theorem {
                TheoremArg::One => {
                    let r = validate_theorem1(&m, &config)?;
                    let a = r.agreements().theorem1;
                    (r, a)
                }
                TheoremArg::A => {
                    let r = validate_theorem_a(&m, &config)?;
                    let a = r.agreements().theorem_a;
                    (r, a)
                }
                TheoremArg::Bh => {
                    let r = validate_bh(&m, &config)?;
                    let a = r.agreements().berens_hetzelt;
                    (r, a)
                }
                TheoremArg::Prop1 => {
                    let r = validate_prop1(&m, &config)?;
                    let a = r.agreements().prop1;
                    (r, a)
                }
            };
            print(scenario_json(&report));
            match agreement {
                Some(true) => Ok(Outcome::Pass),
                Some(false) => Ok(Outcome::Fail),
                None => bail!("the theorem does not apply to this scene"),
            }
        }
        Command::Suite { output } => {
            let report = suite(&config)?;
            let summary = serde_json::to_value(report.summary())?;
            if let Some(path) = output {
                std::fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            print(json!({ "seed": report.seed, "summary": summary }));
            Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<Config> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    config.validate()?;
    Ok(config)
}

fn read_scene(path: &Path) -> anyhow::Result<SetModel> {
    load_scene(path).with_context(|| format!("loading {}", path.display()))
}

fn parse_point(text: &str, m: &SetModel) -> anyhow::Result<Point> {
    let p: Point = text.parse().with_context(|| format!("parsing point {text:?}"))?;
    if p.dim() != m.dim() {
        bail!("point {text:?} has dimension {}, scene has {}", p.dim(), m.dim());
    }
    Ok(p)
}

fn report_verdict(m: &SetModel, check: &str, v: Verdict, stats: Option<Value>, decimal: Option<usize>) -> Outcome {
    let outcome = if v.is_refuted() { Outcome::Fail } else { Outcome::Pass };
    let mut out = json!({ "scene": m.name(), "check": check, "verdict": v });
    if let Some(stats) = stats {
        out["stats"] = stats;
    }
    emit(out, decimal);
    outcome
}

fn scenario_json(r: &ScenarioReport) -> Value {
    r.to_json_value()
}

fn emit(mut v: Value, decimal: Option<usize>) {
    if let Some(k) = decimal {
        to_decimals(&mut v, k);
    }
    println!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
}

/// Rewrites every rational-valued string with `k` decimal places.
fn to_decimals(v: &mut Value, k: usize) {
    match v {
        Value::String(s) => {
            if let Ok(x) = s.parse::<Scalar>() {
                *s = x.to_decimal_string(k);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| to_decimals(x, k)),
        Value::Object(map) => map.values_mut().for_each(|x| to_decimals(x, k)),
        _ => {}
    }
}
