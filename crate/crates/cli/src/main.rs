use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superq::correspondence::{verify_isomorphism_with, CorrespondencePair, VerificationReport, VerifyOptions, ZeroRule};
use superq::hopf::{verify_hopf_correspondence, verify_twist};
use superq::presentation::Presentation;
use superq::rootdata::{enumerate_orders, Algebra, FundamentalSystem};
use superq::{CartanData, DynkinDiagram};

#[derive(Parser)]
#[command(name = "superq", version, about = "Quantized enveloping superalgebras and their q <-> -q correspondences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the algebra families related by a q <-> -q correspondence.
    Pairs(OutputArgs),
    /// Enumerate the fundamental systems of an algebra.
    Systems(TargetArgs),
    /// Draw the Dynkin diagram of each system and of its image under φ.
    Dynkin(TargetArgs),
    /// Dump the defining relations as JSON.
    Present {
        #[command(flatten)]
        target: TargetArgs,
        /// Present U_{-q} instead of U_q.
        #[arg(long)]
        negate_q: bool,
    },
    /// Check that the generator images define an isomorphism U_q(g) ≅ U_{-q}(g').
    VerifyIso(VerifyArgs),
    /// Check the Hopf axioms, the twist and the twisted coproduct on the images.
    VerifyHopf(VerifyArgs),
    /// Check the twist element: cocycle, counit and self-inverse conditions.
    VerifyTwist(VerifyArgs),
}

#[derive(Args)]
struct TargetArgs {
    /// Algebra tag: osp-odd (alias osp), osp-even, sl, sl-aff1, osp-odd-aff1,
    /// osp-even-aff1, sl-odd-aff2, sl-even-aff2, osp-aff2, sl-aff4.
    algebra: String,
    /// Number of ε directions. Omit together with N to sweep all ranks.
    m: Option<usize>,
    /// Number of δ directions.
    n: Option<usize>,
    /// Order index as listed by `systems`, an order code such as `ede`, or `all`.
    #[arg(long, default_value = "all")]
    order: String,
    /// Largest m+n in a sweep. Defaults to 3 for classical and 2 for affine algebras.
    #[arg(long)]
    rank: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Screen ideal-membership columns modulo a random prime first.
    #[arg(long)]
    prescreen: bool,
    /// Seed for the prescreen.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// verify-iso only: use the printed node-0 images of the reverse map for
    /// osp(2m+2|2n)^(2) instead of the partner-row images. Known to fail.
    #[arg(long)]
    printed_zero_images: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<superq::Error> for Failure {
    fn from(e: superq::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("superq: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Pairs(out) => pairs(&out),
        Command::Systems(t) => systems(&t),
        Command::Dynkin(t) => dynkin(&t),
        Command::Present { target, negate_q } => present(&target, negate_q),
        Command::VerifyIso(v) => verify(&v, Kind::Iso),
        Command::VerifyHopf(v) => verify(&v, Kind::Hopf),
        Command::VerifyTwist(v) => verify(&v, Kind::Twist),
    }
}

fn parse_algebra(tag: &str) -> Result<Algebra, Failure> {
    if tag == "osp" {
        return Ok(Algebra::OspOdd);
    }
    tag.parse().map_err(|_| Failure::Usage(format!("unknown algebra {tag:?}")))
}

/// Family name with symbolic `m`, `n`, e.g. `osp(2m+1|2n)`.
fn generic_name(alg: Algebra) -> &'static str {
    match alg {
        Algebra::Sl => "sl(m|n)",
        Algebra::OspOdd => "osp(2m+1|2n)",
        Algebra::OspEven => "osp(2m|2n)",
        Algebra::SlAff1 => "sl(m|n)^(1)",
        Algebra::OspOddAff1 => "osp(2m+1|2n)^(1)",
        Algebra::OspEvenAff1 => "osp(2m|2n)^(1)",
        Algebra::SlOddAff2 => "sl(2m+1|2n)^(2)",
        Algebra::SlEvenAff2 => "sl(2m|2n)^(2)",
        Algebra::OspAff2 => "osp(2m+2|2n)^(2)",
        Algebra::SlAff4 => "sl(2m+1|2n+1)^(4)",
    }
}

fn swap_mn(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            'm' => 'n',
            'n' => 'm',
            c => c,
        })
        .collect()
}

fn emit(out: &OutputArgs, body: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn emit_json(out: &OutputArgs, v: &Value) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    emit(out, &s)
}

fn no_dot(out: &OutputArgs, what: &str) -> Result<(), Failure> {
    if out.format == Format::Dot {
        return Err(Failure::Usage(format!("--format dot is only available for dynkin, not {what}")));
    }
    Ok(())
}

fn pairs(out: &OutputArgs) -> Result<(), Failure> {
    no_dot(out, "pairs")?;
    let rows: Vec<(Algebra, Algebra)> = Algebra::correspondence_sources()
        .into_iter()
        .map(|a| (a, a.partner().expect("sources have partners").0))
        .collect();
    if out.format == Format::Json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(a, b)| {
                json!({
                    "source": a.tag(),
                    "partner": b.tag(),
                    "source_name": generic_name(*a),
                    "partner_name": swap_mn(generic_name(*b)),
                })
            })
            .collect();
        return emit_json(out, &Value::Array(v));
    }
    let mut s = String::new();
    for (a, b) in rows {
        let _ = writeln!(s, "{:<18} <-> {:<18} ({} / {})", generic_name(a), swap_mn(generic_name(b)), a.tag(), b.tag());
    }
    emit(out, &s)
}

/// An enumerated order: its index in `enumerate_orders` and its system.
struct Selected {
    index: usize,
    system: FundamentalSystem,
}

fn select(t: &TargetArgs) -> Result<Vec<Selected>, Failure> {
    let alg = parse_algebra(&t.algebra)?;
    let bound = t.rank.unwrap_or(if alg.is_affine() { 2 } else { 3 });
    let ranks: Vec<(usize, usize)> = match (t.m, t.n) {
        (Some(m), Some(n)) => {
            if t.rank.is_some_and(|r| m + n > r) {
                return Err(Failure::Usage(format!("m+n = {} exceeds --rank {bound}", m + n)));
            }
            vec![(m, n)]
        }
        (None, None) => (1..=bound).flat_map(|r| (0..=r).rev().map(move |m| (m, r - m))).collect(),
        _ => return Err(Failure::Usage("give both M and N, or neither".into())),
    };
    let sweep = t.m.is_none();
    if sweep && t.order != "all" {
        return Err(Failure::Usage("--order needs M and N".into()));
    }
    let mut out = Vec::new();
    for (m, n) in ranks {
        let orders = match enumerate_orders(m, n, alg.is_affine()) {
            Ok(o) => o,
            Err(_) if sweep => continue,
            Err(e) => return Err(e.into()),
        };
        let picked: Vec<usize> = if t.order == "all" {
            (0..orders.len()).collect()
        } else if let Ok(i) = t.order.parse::<usize>() {
            if i >= orders.len() {
                return Err(Failure::Usage(format!("order index {i} out of range 0..{}", orders.len())));
            }
            vec![i]
        } else {
            let i = orders
                .iter()
                .position(|sp| sp.order_code() == t.order)
                .ok_or_else(|| Failure::Usage(format!("{:?} is not an order of {}", t.order, alg.name(m, n))))?;
            vec![i]
        };
        for i in picked {
            match FundamentalSystem::new(alg, &orders[i]) {
                Ok(system) => out.push(Selected { index: i, system }),
                Err(e) if t.order == "all" => {
                    eprintln!("superq: skipping {} {}: {e}", alg.name(m, n), orders[i].order_code());
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    if out.is_empty() {
        return Err(Failure::Usage(format!("no fundamental system of {} matches", alg.tag())));
    }
    Ok(out)
}

fn system_json(s: &Selected) -> Value {
    let sys = &s.system;
    json!({
        "index": s.index,
        "algebra": sys.algebra.tag(),
        "name": sys.name(),
        "m": sys.space.m,
        "n": sys.space.n,
        "order": sys.space.order_code(),
        "nodes": sys.nodes.iter().map(|nd| json!({
            "label": nd.label,
            "root": sys.space.format_vector(&nd.root),
            "odd": nd.odd,
        })).collect::<Vec<_>>(),
    })
}

fn systems(t: &TargetArgs) -> Result<(), Failure> {
    no_dot(&t.output, "systems")?;
    let sel = select(t)?;
    if t.output.format == Format::Json {
        return emit_json(&t.output, &Value::Array(sel.iter().map(system_json).collect()));
    }
    let mut s = String::new();
    for x in &sel {
        let _ = writeln!(s, "[{}] {} {}", x.index, x.system.name(), x.system.space.order_code());
        for line in x.system.describe() {
            let _ = writeln!(s, "    {line}");
        }
    }
    emit(&t.output, &s)
}

fn dynkin(t: &TargetArgs) -> Result<(), Failure> {
    let sel = select(t)?;
    let mut text = String::new();
    let mut json_out = Vec::new();
    for x in &sel {
        let sys = &x.system;
        let cartan = CartanData::new(sys)?;
        let diagram = DynkinDiagram::new(&cartan);
        let image = match sys.phi_system() {
            Ok((img, _)) => Some(img),
            Err(_) => None,
        };
        let image_data = match &image {
            Some(img) => {
                let c = CartanData::new(img)?;
                Some((DynkinDiagram::new(&c), c))
            }
            None => None,
        };
        match t.output.format {
            Format::Dot => {
                text.push_str(&diagram.to_dot());
                if let Some((d, _)) = &image_data {
                    text.push_str(&d.to_dot());
                }
            }
            Format::Text => {
                let _ = writeln!(text, "[{}] {} {}", x.index, sys.name(), sys.space.order_code());
                text.push_str(&diagram.to_ascii());
                match (&image, &image_data) {
                    (Some(img), Some((d, _))) => {
                        let _ = writeln!(text, "φ -> {} {}", img.name(), img.space.order_code());
                        text.push_str(&d.to_ascii());
                    }
                    _ => text.push_str("φ -> no tabulated partner\n"),
                }
                text.push('\n');
            }
            Format::Json => {
                let mut v = system_json(x);
                v["cartan"] = cartan.to_json();
                v["phi"] = match (&image, &image_data) {
                    (Some(img), Some((_, c))) => json!({
                        "algebra": img.algebra.tag(),
                        "name": img.name(),
                        "order": img.space.order_code(),
                        "cartan": c.to_json(),
                    }),
                    _ => Value::Null,
                };
                json_out.push(v);
            }
        }
    }
    if t.output.format == Format::Json {
        return emit_json(&t.output, &Value::Array(json_out));
    }
    emit(&t.output, &text)
}

fn present(t: &TargetArgs, negate_q: bool) -> Result<(), Failure> {
    no_dot(&t.output, "present")?;
    let sign = if negate_q { -1 } else { 1 };
    let mut docs = Vec::new();
    for x in select(t)? {
        docs.push(Presentation::new(&x.system, sign)?.to_json());
    }
    if t.output.format == Format::Json {
        return emit_json(&t.output, &Value::Array(docs));
    }
    let mut s = String::new();
    for d in &docs {
        let _ = writeln!(s, "{} {} over {}", d["name"].as_str().unwrap_or(""), d["order"].as_str().unwrap_or(""), d["sign"].as_str().unwrap_or(""));
        for r in d["relations"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "    {:<8} {}", r["family"].as_str().unwrap_or(""), r["element"].as_str().unwrap_or(""));
        }
    }
    emit(&t.output, &s)
}

#[derive(Clone, Copy)]
enum Kind {
    Iso,
    Hopf,
    Twist,
}

fn verify(v: &VerifyArgs, kind: Kind) -> Result<(), Failure> {
    let t = &v.target;
    no_dot(&t.output, "verification")?;
    let opts = VerifyOptions { prescreen: v.prescreen.then_some(v.seed) };
    let rule = if v.printed_zero_images { ZeroRule::Printed } else { ZeroRule::PartnerRow };
    let sel = select(t)?;
    let pairs = sel
        .iter()
        .map(|x| CorrespondencePair::new(&x.system))
        .collect::<Result<Vec<_>, _>>()?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for (x, pair) in sel.iter().zip(&pairs) {
        reports.push(match kind {
            Kind::Iso => verify_isomorphism_with(pair, &opts, rule)?,
            Kind::Hopf => verify_hopf_correspondence(pair)?,
            Kind::Twist => verify_twist(&x.system)?,
        });
    }
    let ok = reports.iter().all(|r| r.ok());
    if t.output.format == Format::Json {
        let v = json!({ "ok": ok, "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>() });
        emit_json(&t.output, &v)?;
    } else {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(s, "{} {}", if r.ok() { "ok  " } else { "FAIL" }, r.summary_line());
        }
        let bad = reports.iter().filter(|r| !r.ok()).count();
        let _ = writeln!(s, "{} of {} reports passed", reports.len() - bad, reports.len());
        emit(&t.output, &s)?;
        if !ok {
            let witness: Vec<Value> = reports
                .iter()
                .filter(|r| !r.ok())
                .map(|r| json!({ "subject": r.subject, "failures": r.failures().collect::<Vec<_>>() }))
                .collect();
            eprintln!("{}", serde_json::to_string_pretty(&witness).expect("JSON values serialize"));
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}
