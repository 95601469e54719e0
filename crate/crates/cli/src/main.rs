//! `sl2lab`: command-line front end.

mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{Config, Format, CONFIG_ENV};
use output::{Doc, Failure};
use serde::Serialize;
use serde_json::{json, Value};
use sl2lab::finring::parse_ring_spec_with_cap;
use sl2lab::group::{abelianization, derived_subgroup, GroupTable, Limits};
use sl2lab::normlab::{delta_k, level_sum, norm_profile, normally_generates, pi_set};
use sl2lab::quadfields::{delta_verdict, scan_range, v_profile};
use sl2lab::sandwich::{f3_hom, hq_hom, q_hom, sandwich_check, z4_hom, AbelianHom};
use sl2lab::sl2::{parse_matrix, parse_matrix_list, Mat2};
use sl2lab::verify::{run_suite, Suite};
use sl2lab::FiniteRing;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "sl2lab", version, about = "SL2 over small finite commutative rings")]
struct Cli {
    /// Output format [default: json, or output_format from the config file].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest ring order accepted (at most 256).
    #[arg(long, global = true)]
    ring_order_cap: Option<usize>,
    /// Largest SL2 order enumerated.
    #[arg(long, global = true)]
    group_order_cap: Option<usize>,
    /// Largest number of class sets evaluated by `delta`.
    #[arg(long, global = true)]
    delta_budget: Option<u64>,
    /// TOML config file; defaults to $SL2LAB_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ring structure.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// SL2 enumeration and abelianization.
    Sl2 {
        #[command(subcommand)]
        command: Sl2Command,
    },
    /// Conjugation-invariant word norm of a set of matrices.
    Norm(SetArgs),
    /// Exhaustive Delta_k.
    Delta {
        #[arg(long)]
        ring: String,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Maximal ideals modulo which a set of matrices is scalar.
    Pi(SetArgs),
    /// Check [E(2,R), G(N)] <= N <= G(N) for N the normal closure of a matrix.
    Sandwich {
        #[arg(long)]
        ring: String,
        #[arg(long = "gen")]
        generator: String,
    },
    /// Explicit abelianization maps.
    Hom {
        #[arg(value_enum)]
        name: HomName,
        /// Print the image of every element.
        #[arg(long)]
        table: bool,
        /// Override the domain ring.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Real quadratic integer rings.
    Quad {
        #[command(subcommand)]
        command: QuadCommand,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "full")]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
enum RingCommand {
    Info { spec: String },
}

#[derive(Subcommand, Debug)]
enum Sl2Command {
    Enumerate { spec: String },
    Abelianization { spec: String },
}

#[derive(Args, Debug)]
struct SetArgs {
    #[arg(long)]
    ring: String,
    /// Comma-separated matrices: E12(x), E21(x), h(u), C(x), [[a,b],[c,d]], I, -I.
    #[arg(long)]
    set: String,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum HomName {
    Q,
    Hq,
    Z4,
    F3,
}

#[derive(Subcommand, Debug)]
enum QuadCommand {
    V {
        #[arg(long = "D", allow_hyphen_values = true)]
        d: i64,
    },
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    Verdict {
        #[arg(long = "D", allow_hyphen_values = true)]
        d: i64,
        #[arg(short = 'k')]
        k: u32,
    },
}

struct Ctx {
    config: Config,
}

impl Ctx {
    fn ring(&self, spec: &str) -> Result<FiniteRing, Failure> {
        Ok(parse_ring_spec_with_cap(spec, self.config.ring_order_cap)?)
    }

    fn group(&self, spec: &str) -> Result<GroupTable, Failure> {
        let r = self.ring(spec)?;
        Ok(GroupTable::enumerate_with_limits(
            &r,
            Limits {
                group_order_cap: self.config.group_order_cap,
            },
        )?)
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
    let config = match resolve_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = config.parallelism {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let format = config.output_format;
    let ctx = Ctx { config };
    match run(&ctx, cli.command) {
        Ok((doc, code)) => {
            print!("{}", doc.render(format));
            ExitCode::from(code)
        }
        Err(f) => {
            eprint!("{}", f.render(format));
            ExitCode::from(2)
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<Config, String> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut config = match path {
        Some(p) => Config::load(&p)?,
        None => Config::default(),
    };
    if let Some(f) = cli.format {
        config.output_format = f;
    }
    if let Some(n) = cli.jobs {
        config.parallelism = Some(n);
    }
    if let Some(n) = cli.ring_order_cap {
        config.ring_order_cap = n;
    }
    if let Some(n) = cli.group_order_cap {
        config.group_order_cap = n;
    }
    if let Some(n) = cli.delta_budget {
        config.delta_budget = Some(n);
    }
    config.validate()?;
    Ok(config)
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run(ctx: &Ctx, command: Command) -> Result<(Doc, u8), Failure> {
    let doc = match command {
        Command::Ring {
            command: RingCommand::Info { spec },
        } => Doc::object(value(&ctx.ring(&spec)?.info())),
        Command::Sl2 {
            command: Sl2Command::Enumerate { spec },
        } => {
            let g = ctx.group(&spec)?;
            let r = g.ring();
            let elements: Vec<String> = g.elements().iter().map(|m| m.format(r)).collect();
            let rows = g
                .elements()
                .iter()
                .map(|m| vec![m.dense_id(r).to_string(), m.format(r)])
                .collect();
            let mut v = value(&g.report());
            v["elements"] = json!(elements);
            Doc::table(v, vec!["id", "matrix"], rows)
        }
        Command::Sl2 {
            command: Sl2Command::Abelianization { spec },
        } => {
            let g = ctx.group(&spec)?;
            let ab = abelianization(&g);
            Doc::object(json!({
                "ring_spec": g.ring().spec(),
                "group_order": g.elements().len(),
                "invariant_factors": ab.factors,
                "abelianization_order": ab.order(),
                "derived_subgroup_order": derived_subgroup(&g).order(),
                "perfect": ab.factors.is_empty(),
            }))
        }
        Command::Norm(args) => {
            let (g, t) = set(ctx, &args)?;
            let r = g.ring();
            let idx = indices(&g, &t)?;
            let profile = norm_profile(&g, &idx);
            let verdict = normally_generates(&g, &idx);
            Doc::object(json!({
                "ring_spec": r.spec(),
                "T": formatted(r, &t),
                "diameter": profile.diameter,
                "ball_sizes": profile.ball_sizes,
                "pi_set": pi_set(r, &t).iter().map(|p| p.describe(r)).collect::<Vec<_>>(),
                "verdict": verdict,
            }))
        }
        Command::Delta { ring, k } => {
            let g = ctx.group(&ring)?;
            let rep = delta_k(&g, k, ctx.config.delta_budget)?;
            let r = g.ring();
            let reps: Vec<String> = rep
                .witness_representatives
                .iter()
                .map(|&i| g.element(i).format(r))
                .collect();
            let mut v = value(&rep);
            v["ring_spec"] = json!(r.spec());
            v["witness_representatives"] = json!(reps);
            Doc::object(v)
        }
        Command::Pi(args) => {
            let (g, t) = set(ctx, &args)?;
            let r = g.ring();
            let pi: Vec<String> = pi_set(r, &t).iter().map(|p| p.describe(r)).collect();
            Doc::object(json!({
                "ring_spec": r.spec(),
                "T": formatted(r, &t),
                "level_sum": level_sum(r, &t).describe(r),
                "pi_empty": pi.is_empty(),
                "pi_set": pi,
            }))
        }
        Command::Sandwich { ring, generator } => {
            let g = ctx.group(&ring)?;
            let a = parse_matrix(g.ring(), &generator)?;
            let rep = sandwich_check(&g, &a)?;
            let mut v = value(&rep);
            v["passed"] = json!(rep.passed());
            Doc::object(v)
        }
        Command::Hom { name, table, ring } => hom(ctx, name, table, ring)?,
        Command::Quad { command } => match command {
            QuadCommand::V { d } => Doc::object(value(&v_profile(d)?)),
            QuadCommand::Scan { from, to } => {
                let s = scan_range(from, to);
                let rows = s
                    .rows
                    .iter()
                    .map(|r| {
                        [
                            r.d.to_string(),
                            r.split2.to_string(),
                            r.split3.to_string(),
                            r.r1.to_string(),
                            r.r2.to_string(),
                            r.q.to_string(),
                            r.v.to_string(),
                        ]
                        .to_vec()
                    })
                    .collect();
                Doc::table(value(&s), vec!["D", "split2", "split3", "r1", "r2", "q", "v"], rows)
            }
            QuadCommand::Verdict { d, k } => {
                let mut v = value(&delta_verdict(d, k)?);
                v["D"] = json!(d);
                v["k"] = json!(k);
                Doc::object(v)
            }
        },
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite);
            let code = if report.passed { 0 } else { 1 };
            return Ok((Doc::verify(report), code));
        }
    };
    Ok((doc, 0))
}

fn set(ctx: &Ctx, args: &SetArgs) -> Result<(GroupTable, Vec<Mat2>), Failure> {
    let g = ctx.group(&args.ring)?;
    let t = parse_matrix_list(g.ring(), &args.set)?;
    Ok((g, t))
}

fn indices(g: &GroupTable, t: &[Mat2]) -> Result<Vec<u32>, Failure> {
    Ok(t.iter().map(|m| g.require(m)).collect::<Result<_, _>>()?)
}

fn formatted(r: &FiniteRing, t: &[Mat2]) -> Vec<String> {
    t.iter().map(|m| m.format(r)).collect()
}

fn hom(ctx: &Ctx, name: HomName, table: bool, ring: Option<String>) -> Result<Doc, Failure> {
    let (default_ring, build): (&str, fn(&FiniteRing) -> sl2lab::Result<AbelianHom>) = match name {
        HomName::Q => ("F2[T]/(T^2)", q_hom),
        HomName::Hq => ("F2[T]/(T^2)", hq_hom),
        HomName::Z4 => ("Z/4", z4_hom),
        HomName::F3 => ("F3", f3_hom),
    };
    let r = ctx.ring(ring.as_deref().unwrap_or(default_ring))?;
    let h = build(&r)?;
    let mut samples = vec!["E12(1)", "E21(1)", "-I"];
    if matches!(name, HomName::Q | HomName::Hq) {
        samples.push("E12(T)");
    }
    let sample_images: Vec<Value> = samples
        .iter()
        .map(|s| {
            let m = parse_matrix(&r, s)?;
            Ok(json!({ "matrix": s, "image": h.image(&m)? }))
        })
        .collect::<sl2lab::Result<_>>()?;
    let mut v = json!({
        "name": h.name,
        "domain": h.hom.domain,
        "codomain": h.hom.codomain,
        "multiplicative": h.is_multiplicative(),
        "surjective": h.is_surjective(),
        "image_size": h.hom.image_size(),
        "kernel_order": h.kernel().order(),
        "samples": sample_images,
    });
    if !table {
        return Ok(Doc::object(v));
    }
    let g = &h.group;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (i, m) in g.elements().iter().enumerate() {
        let image = h.target.decode(h.hom.apply(i as u32));
        let joined: Vec<String> = image.iter().map(u64::to_string).collect();
        rows.push(vec![m.dense_id(&r).to_string(), m.format(&r), joined.join(",")]);
        entries.push(json!({ "id": m.dense_id(&r), "matrix": m.format(&r), "image": image }));
    }
    v["table"] = json!(entries);
    Ok(Doc::table(v, vec!["id", "matrix", "image"], rows))
}
