use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use danielewski::expmap::{expmap_canonical, ExpMap, ExpMapFile};
use danielewski::morphism::{auto_from_seed, build_iso, compare_tuples, solve_fiber_conditions, verify_auto_properties};
use danielewski::morphism::{FiberSolutions, IsoData, IsoDataFile, TupleVerdict};
use danielewski::report::Report;
use danielewski::stable::{
    build_stable_iso, cancellation_demo, check_stable_hypotheses, failed_stage, CertificateFile, StableIsoCertificate,
};
use danielewski::surface::SurfaceSpecFile;
use danielewski::{poly_parse, Field, Surface, SurfaceExt, SymbolTable, Var};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "danielewski", version, about = "Double Danielewski surfaces: normal forms, maps and certificates")]
struct Cli {
    /// Coefficient field `Q` or `Fp:<p>`, used when an input file does not name one.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tuple (d,e,r,s), double/mlc flags and the stable hypotheses.
    Info { spec: PathBuf },
    /// Normal form and Laurent image of an element.
    Normalize { spec: PathBuf, expr: String },
    /// Checks the exponential-map axioms (canonical map without a map file).
    ExpmapVerify { spec: PathBuf, map: Option<PathBuf> },
    #[command(subcommand)]
    Iso(IsoCommand),
    /// Extends a seed `x -> lambda x`, `z -> lambda2 z + mu2(x)` and checks the automorphism.
    Auto {
        spec: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        mu2: String,
    },
    #[command(subcommand)]
    Stable(StableCommand),
    /// Non-isomorphism of B(d,e) and B(d,e+1) plus the stable certificate.
    CancelDemo { spec: PathBuf },
}

#[derive(Subcommand, Debug)]
enum IsoCommand {
    /// Builds the isomorphism source -> target from data and checks both composites.
    Verify { source: PathBuf, target: PathBuf, data: PathBuf },
    /// Solves the fiber conditions for (gamma, delta0).
    Solve { source: PathBuf, target: PathBuf },
}

#[derive(Subcommand, Debug)]
enum StableCommand {
    /// Emits the certificate JSON for B(d,e)[w] = B(d,e-1)[v].
    Build { spec: PathBuf },
    /// Runs the seven certificate checks.
    Verify { cert: PathBuf },
}

enum Failure {
    /// Bad input: exit code 2.
    Input(anyhow::Error),
    /// A mathematical check failed: exit code 1.
    Math(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn math<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Math(e.into())
}

struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn report(report: Report, mut json: Value) -> Output {
        let sorted = report.sorted();
        json["report"] = serde_json::to_value(&sorted).expect("report serializes");
        Output { text: sorted.to_string(), json, passed: sorted.passed() }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(value)
}

fn load_spec(path: &Path, field: Option<Field>) -> Result<Surface, Failure> {
    let file: SurfaceSpecFile = read_json(path)?;
    Ok(file.load(field).with_context(|| format!("invalid surface in {}", path.display()))?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(spec: &Surface) -> Output {
    let (d, e, r, s) = spec.tuple();
    let hyp = check_stable_hypotheses(spec);
    let stage = match failed_stage(&hyp) {
        None => "pass".to_string(),
        Some(name) => format!("fail ({name})"),
    };
    let text = format!(
        "{spec}\ntuple=({d},{e},{r},{s}) double={} mlc={} stable-hyp={stage}\n{hyp}",
        yes_no(spec.is_double()),
        yes_no(spec.is_mlc())
    );
    let json = json!({
        "surface": spec.to_file(),
        "tuple": [d, e, r, s],
        "double": spec.is_double(),
        "mlc": spec.is_mlc(),
        "stable_hypotheses": hyp,
    });
    // informational: hypothesis failures do not fail the command
    Output { text, json, passed: true }
}

fn normalize(spec: &Surface, expr: &str) -> Result<Output, Failure> {
    let el = spec.parse_element(expr).context("parsing the element")?;
    let nf = el.normalize().map_err(math)?;
    let laurent = el.laurent().display_with(&SymbolTable::element()).to_string();
    let in_r = el.in_xyz_subring().map_err(math)?;
    let text = format!("normal form: {}\nlaurent: {laurent}\nin k[x,y,z]: {}", nf.display(), yes_no(in_r));
    let json = json!({ "input": el.display(), "normal_form": nf.display(), "laurent": laurent, "in_xyz_subring": in_r });
    Ok(Output { text, json, passed: true })
}

fn expmap_verify(spec: &Surface, map: Option<&Path>) -> Result<Output, Failure> {
    let phi = match map {
        Some(path) => {
            let file: ExpMapFile = read_json(path)?;
            ExpMap::from_file(spec.clone(), &file).with_context(|| format!("invalid map in {}", path.display()))?
        }
        None => expmap_canonical(spec).map_err(math)?,
    };
    Ok(Output::report(phi.verify(), json!({ "map": phi.to_file() })))
}

fn iso_verify(source: &Surface, target: &Surface, data_path: &Path) -> Result<Output, Failure> {
    let file: IsoDataFile = read_json(data_path)?;
    let data = IsoData::from_file(&file, source.field()).context("invalid isomorphism data")?;
    data.validate(source).context("invalid isomorphism data")?;
    if source.is_mlc() && target.is_mlc() {
        if let TupleVerdict::NotIsomorphic { differing } = compare_tuples(source, target)? {
            let verdict = TupleVerdict::NotIsomorphic { differing };
            return Err(math(anyhow!("{verdict}")));
        }
    }
    let iso = build_iso(source, target, &data).map_err(math)?;
    let mut report = Report::new(format!("isomorphism {source} -> {target}"));
    report.pass("relations of the source are killed");
    report.pass("inverse after forward is the identity");
    report.pass("forward after inverse is the identity");
    let images: Vec<String> = iso.forward.display_images().into_iter().map(|(v, i)| format!("{v} -> {i}")).collect();
    let inverse: Vec<String> = iso.inverse.display_images().into_iter().map(|(v, i)| format!("{v} -> {i}")).collect();
    let mut out = Output::report(report, json!({ "data": data.to_file(), "forward": images, "inverse": inverse }));
    out.text = format!("forward: {}\ninverse: {}\n{}", images.join(", "), inverse.join(", "), out.text);
    Ok(out)
}

fn iso_solve(source: &Surface, target: &Surface) -> Result<Output, Failure> {
    let verdict = if source.is_mlc() && target.is_mlc() {
        Some(compare_tuples(source, target)?)
    } else {
        None
    };
    let solutions = solve_fiber_conditions(source, target).map_err(math)?;
    let mut text = format!("fiber solutions: {solutions}");
    if let Some(v) = &verdict {
        text = format!("{v}\n{text}");
    }
    let sols = match &solutions {
        FiberSolutions::Finite(list) => {
            json!({ "finite": list.iter().map(|(g, d)| json!({"gamma": g.to_string(), "delta0": d.to_string()})).collect::<Vec<_>>() })
        }
        FiberSolutions::Pencil { slope, offset } => json!({ "pencil": {"slope": slope.to_string(), "offset": offset.to_string()} }),
    };
    let json = json!({ "tuples": verdict.map(|v| v.to_string()), "solutions": sols });
    Ok(Output { text, json, passed: true })
}

fn auto(spec: &Surface, lambda: &str, lambda2: &str, mu2: &str) -> Result<Output, Failure> {
    let scalar = |text: &str, name: &str| -> Result<_, Failure> {
        let p = poly_parse(text, &[], spec.field()).with_context(|| format!("parsing {name}"))?;
        Ok(p.constant_term())
    };
    let lambda = scalar(lambda, "--lambda")?;
    let lambda2 = scalar(lambda2, "--lambda2")?;
    let mu2 = poly_parse(mu2, &[Var::X], spec.field()).context("parsing --mu2")?;
    let iso = auto_from_seed(spec, lambda, lambda2, mu2).map_err(math)?;
    let report = verify_auto_properties(&iso.forward);
    let images: Vec<String> = iso.forward.display_images().into_iter().map(|(v, i)| format!("{v} -> {i}")).collect();
    let mut out = Output::report(report, json!({ "data": iso.data.to_file(), "images": images }));
    out.text = format!("data: {}\nimages: {}\n{}", iso.data.summary(), images.join(", "), out.text);
    Ok(out)
}

fn stable_build(spec: &Surface) -> Result<Output, Failure> {
    let hyp = check_stable_hypotheses(spec);
    if !hyp.passed() {
        return Err(math(anyhow!("stable hypotheses fail:\n{hyp}")));
    }
    let cert = build_stable_iso(spec).map_err(math)?;
    let file = cert.to_file();
    let text = serde_json::to_string_pretty(&file)?;
    let json = serde_json::to_value(&file)?;
    Ok(Output { text, json, passed: true })
}

fn stable_verify(path: &Path, field: Option<Field>) -> Result<Output, Failure> {
    let file: CertificateFile = read_json(path)?;
    if let (Some(flag), Some(own)) = (field, file.source.field) {
        if flag != own {
            return Err(anyhow!("certificate is over {own} but --field is {flag}").into());
        }
    }
    let mut file = file;
    if file.source.field.is_none() {
        file.source.field = field;
    }
    let cert = StableIsoCertificate::from_file(&file).with_context(|| format!("invalid certificate in {}", path.display()))?;
    Ok(Output::report(cert.verify(), json!({})))
}

fn cancel_demo(spec: &Surface) -> Result<Output, Failure> {
    let demo = cancellation_demo(spec).map_err(math)?;
    let text = format!(
        "{} vs {}: {}\nstable isomorphism B(d={d}, e={})[w] = B(d={d}, e={})[v]\n{}",
        demo.lower,
        demo.upper,
        demo.verdict,
        demo.upper.e(),
        demo.lower.e(),
        demo.report.sorted(),
        d = demo.lower.d()
    );
    let json = json!({
        "lower": demo.lower.to_file(),
        "upper": demo.upper.to_file(),
        "verdict": demo.verdict.to_string(),
        "certificate": demo.certificate.to_file(),
        "report": demo.report.sorted(),
    });
    Ok(Output { text, json, passed: demo.report.passed() })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let field = cli.field;
    match &cli.command {
        Command::Info { spec } => Ok(info(&load_spec(spec, field)?)),
        Command::Normalize { spec, expr } => normalize(&load_spec(spec, field)?, expr),
        Command::ExpmapVerify { spec, map } => expmap_verify(&load_spec(spec, field)?, map.as_deref()),
        Command::Iso(IsoCommand::Verify { source, target, data }) => {
            let source = load_spec(source, field)?;
            let target = load_spec(target, Some(field.unwrap_or(source.field())))?;
            iso_verify(&source, &target, data)
        }
        Command::Iso(IsoCommand::Solve { source, target }) => {
            let source = load_spec(source, field)?;
            let target = load_spec(target, Some(field.unwrap_or(source.field())))?;
            iso_solve(&source, &target)
        }
        Command::Auto { spec, lambda, lambda2, mu2 } => auto(&load_spec(spec, field)?, lambda, lambda2, mu2),
        Command::Stable(StableCommand::Build { spec }) => {
            let spec = load_spec(spec, field)?;
            if spec.e() < 2 {
                return Err(anyhow!("stable build needs e >= 2, got e = {}", spec.e()).into());
            }
            stable_build(&spec)
        }
        Command::Stable(StableCommand::Verify { cert }) => stable_verify(cert, field),
        Command::CancelDemo { spec } => cancel_demo(&load_spec(spec, field)?),
    }
}

fn emit(cli: &Cli, out: &Output) -> anyhow::Result<()> {
    let certificate = matches!(cli.command, Command::Stable(StableCommand::Build { .. }));
    let body = if cli.json && !certificate {
        serde_json::to_string_pretty(&json!({ "passed": out.passed, "result": out.json }))?
    } else {
        out.text.clone()
    };
    match &cli.out {
        Some(path) => {
            fs::write(path, format!("{body}\n")).with_context(|| format!("writing {}", path.display()))?;
            if !cli.json {
                println!("wrote {}", path.display());
            }
        }
        None => println!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Math(e)) => {
            if cli.json {
                println!("{}", json!({ "passed": false, "error": format!("{e:#}") }));
            }
            eprintln!("failed: {e:#}");
            ExitCode::from(1)
        }
    }
}
