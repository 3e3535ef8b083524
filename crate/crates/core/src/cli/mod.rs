//! Command-line front end. Rationals cross the boundary as strings only.

pub mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumeration::{classify, run_octagons, run_q10, write_audit, Q10Config, XBound};
use crate::exact_geom::json::{
    lattice_from_json, lattice_to_value, polygon_from_value, polygon_to_json, polygon_to_value,
};
use crate::exact_geom::{parse_rat, CSPolygon, Lattice, Rat, Rat2};
use crate::families::{
    decagon_from_midpoints, family_midpoints, freedom_region, DecagonFamily, FamilyError,
    MidpointSpec, OctagonVariant,
};
use crate::tiling_core::{bolle_check, find_tiling_lattice_report, verify_kfold, TilingError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "sixfold",
    version,
    about = "Exact verification and enumeration of multiple lattice tiles"
)]
pub struct Cli {
    /// Print the full run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for oracle sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of generic oracle sample points.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify a polygon and lattice, or search for a lattice.
    Verify {
        /// Polygon JSON file, or `-` for stdin.
        polygon: String,
        /// Lattice JSON file, or `integer`.
        lattice: Option<String>,
        /// Search all lattices giving a K-fold tiling instead.
        #[arg(long, value_name = "K", conflicts_with = "lattice")]
        search_k: Option<u64>,
        /// Required multiplicity.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Build a member of a stored family.
    Family {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        /// Free vertex `x,y` for decagon families.
        #[arg(long, allow_hyphen_values = true)]
        free_vertex: Option<String>,
        #[arg(long)]
        anchor: Option<usize>,
        /// Also certify the instance.
        #[arg(long)]
        certificate: bool,
    },
    /// Run a classification search.
    Enumerate {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        k: u64,
        /// Write rejected candidates as line-delimited JSON.
        #[arg(long)]
        audit: Option<String>,
        /// Abscissa bound for the decagon sweep.
        #[arg(long, value_enum, default_value_t = BoundArg::Pick)]
        bound: BoundArg,
    },
    /// Draw the translates of a polygon by a lattice as SVG.
    Render {
        polygon: String,
        lattice: Option<String>,
        /// Half-width of the square window.
        #[arg(long, default_value = "3")]
        window: String,
        /// Grid resolution for multiplicity shading, 0 for none.
        #[arg(long, default_value_t = 0)]
        heat: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Free-vertex region of a midpoint-specified decagon family.
    Region {
        /// `A`, `B`, `five` or a family name.
        #[arg(long, conflicts_with = "midpoints")]
        family: Option<String>,
        /// JSON file `{"midpoints": [["x","y"], ...]}`.
        #[arg(long)]
        midpoints: Option<String>,
        #[arg(long)]
        anchor: Option<usize>,
        #[arg(long)]
        svg: Option<String>,
    },
    /// Classify a polygon as a k-fold lattice tile with k <= 6.
    Classify { polygon: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Decagons,
    Octagons,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    Area,
    Pick,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Arguments and file contents exactly as received.
    pub inputs: BTreeMap<String, Value>,
    pub verdicts: Vec<Value>,
    pub certificates: Vec<Value>,
    pub timings_ms: BTreeMap<String, f64>,
    pub version: String,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            verdicts: Vec::new(),
            certificates: Vec::new(),
            timings_ms: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            text: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.to_string(), v.into());
    }

    fn time(&mut self, key: &str, start: Instant) {
        self.timings_ms
            .insert(key.to_string(), start.elapsed().as_secs_f64() * 1e3);
    }

    fn say(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn input_err(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn tiling_code(e: &TilingError) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_FAIL
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| input_err(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| input_err(format!("{path}: {e}")))
        }
    }
}

fn parse_polygon_text(text: &str) -> Result<CSPolygon, Failure> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| input_err(format!("malformed polygon JSON: {e}")))?;
    let v = match v {
        Value::Object(mut o) if o.contains_key("polygon") => o.remove("polygon").expect("checked"),
        v => v,
    };
    polygon_from_value(v).map_err(|e| input_err(format!("invalid polygon: {e}")))
}

fn load_lattice(
    io: &mut Io,
    arg: Option<&str>,
    report: &mut RunReport,
) -> Result<Lattice, Failure> {
    match arg {
        None | Some("integer") | Some("Z2") => {
            report.input("lattice", arg.unwrap_or("integer"));
            Ok(Lattice::integer())
        }
        Some(path) => {
            let text = io.read(path)?;
            report.input("lattice_path", path);
            report.input("lattice", text.clone());
            lattice_from_json(&text).map_err(|e| input_err(format!("invalid lattice: {e}")))
        }
    }
}

/// Parses and runs one command line, writing to `out` and `err`; returns the
/// process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut io = Io { stdin };
    let mut report = RunReport::new(command_name(&cli.command));
    report.input("seed", cli.seed);
    report.input("samples", cli.samples as u64);
    let result = dispatch(&cli, &mut io, &mut report);
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let code = match &result {
        Ok(code) => *code,
        Err(f) => f.code,
    };
    if let Err(f) = &result {
        let _ = writeln!(err, "error: {}", f.message);
        if f.code == EXIT_INPUT {
            return code;
        }
        report
            .verdicts
            .push(json!({ "verdict": "error", "message": f.message }));
    }
    if cli.json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        for line in &report.text {
            let _ = writeln!(out, "{line}");
        }
    }
    code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Family { .. } => "family",
        Command::Enumerate { .. } => "enumerate",
        Command::Render { .. } => "render",
        Command::Region { .. } => "region",
        Command::Classify { .. } => "classify",
    }
}

fn dispatch(cli: &Cli, io: &mut Io, report: &mut RunReport) -> Result<i32, Failure> {
    match &cli.command {
        Command::Verify {
            polygon,
            lattice,
            search_k,
            k,
        } => cmd_verify(cli, io, report, polygon, lattice.as_deref(), *search_k, *k),
        Command::Family {
            name,
            param,
            free_vertex,
            anchor,
            certificate,
        } => cmd_family(
            cli,
            report,
            name,
            param.as_deref(),
            free_vertex.as_deref(),
            *anchor,
            *certificate,
        ),
        Command::Enumerate {
            target,
            k,
            audit,
            bound,
        } => cmd_enumerate(cli, report, *target, *k, audit.as_deref(), *bound),
        Command::Render {
            polygon,
            lattice,
            window,
            heat,
            out,
        } => cmd_render(
            io,
            report,
            polygon,
            lattice.as_deref(),
            window,
            *heat,
            out.as_deref(),
        ),
        Command::Region {
            family,
            midpoints,
            anchor,
            svg,
        } => cmd_region(
            io,
            report,
            family.as_deref(),
            midpoints.as_deref(),
            *anchor,
            svg.as_deref(),
        ),
        Command::Classify { polygon } => cmd_classify(io, report, polygon),
    }
}

fn cmd_verify(
    cli: &Cli,
    io: &mut Io,
    report: &mut RunReport,
    polygon: &str,
    lattice: Option<&str>,
    search_k: Option<u64>,
    k: Option<u64>,
) -> Result<i32, Failure> {
    let text = io.read(polygon)?;
    report.input("polygon_path", polygon);
    report.input("polygon", text.clone());
    let p = parse_polygon_text(&text)?;
    if let Some(k) = k {
        report.input("k", k);
    }
    let start = Instant::now();
    if let Some(sk) = search_k {
        report.input("search_k", sk);
        let search = find_tiling_lattice_report(&p, sk).map_err(|e| Failure {
            code: tiling_code(&e),
            message: e.to_string(),
        })?;
        report.time("search", start);
        if search.lattices.is_empty() {
            report.verdicts.push(json!({ "verdict": "fail", "k": sk, "reason": "no certifying lattice", "search": search }));
            report.say(format!(
                "FAIL: no certifying lattice for k={sk} ({} candidate lattices checked)",
                search.superlattices_checked
            ));
            return Ok(EXIT_FAIL);
        }
        let mut code = EXIT_PASS;
        for l in &search.lattices {
            match verify_kfold(&p, l, sk, cli.samples, cli.seed) {
                Ok(c) => {
                    report.say(format!("PASS: k={sk} with lattice {}", lattice_to_value(l)));
                    report.certificates.push(c.to_json());
                }
                Err(e) => {
                    code = code.max(tiling_code(&e));
                    report.say(format!("FAIL: lattice {}: {e}", lattice_to_value(l)));
                }
            }
        }
        report.time("verify", start);
        report.verdicts.push(json!({
            "verdict": if code == EXIT_PASS { "pass" } else { "fail" },
            "k": sk,
            "lattices": search.lattices.iter().map(lattice_to_value).collect::<Vec<_>>(),
            "search": search,
        }));
        return Ok(code);
    }
    let l = load_lattice(io, lattice, report)?;
    let result = match k {
        Some(k) => verify_kfold(&p, &l, k, cli.samples, cli.seed),
        None => bolle_check(&p, &l).and_then(|c| verify_kfold(&p, &l, c.k, cli.samples, cli.seed)),
    };
    report.time("verify", start);
    match result {
        Ok(c) => {
            report.say(format!(
                "PASS: {}-fold lattice tiling (area {}, det {})",
                c.k,
                p.area(),
                l.det()
            ));
            report.verdicts.push(json!({ "verdict": "pass", "k": c.k }));
            report.certificates.push(c.to_json());
            Ok(EXIT_PASS)
        }
        Err(e) => {
            report.say(format!("FAIL: {e}"));
            report.verdicts.push(
                json!({ "verdict": "fail", "reason": e.to_string(), "detail": failure_detail(&e) }),
            );
            Ok(tiling_code(&e))
        }
    }
}

fn failure_detail(e: &TilingError) -> Value {
    match e {
        TilingError::BolleFailed(f) | TilingError::NotCertified(f) => json!(f),
        TilingError::MultiplicityMismatch { expected, observed } => {
            json!({ "expected": expected, "observed": observed })
        }
        _ => Value::Null,
    }
}

fn family_error(e: FamilyError) -> Failure {
    input_err(e.to_string())
}

fn decagon_family_name(s: &str) -> Option<DecagonFamily> {
    match s {
        "A" | "a" => Some(DecagonFamily::A),
        "B" | "b" => Some(DecagonFamily::B),
        "five" | "5" => Some(DecagonFamily::FiveFold),
        other => DecagonFamily::from_cli_name(other),
    }
}

fn cmd_family(
    cli: &Cli,
    report: &mut RunReport,
    name: &str,
    param: Option<&str>,
    free_vertex: Option<&str>,
    anchor: Option<usize>,
    certificate: bool,
) -> Result<i32, Failure> {
    report.input("name", name);
    let start = Instant::now();
    let (poly, k, lattice) = if let Some(v) = OctagonVariant::from_cli_name(name) {
        let param = param.ok_or_else(|| input_err(format!("{name} needs --param")))?;
        report.input("param", param);
        let t = parse_rat(param).map_err(|e| input_err(e.to_string()))?;
        let fam = v.family();
        (
            fam.instantiate(&t).map_err(family_error)?,
            fam.k,
            fam.lattice.clone(),
        )
    } else if let Some(d) = decagon_family_name(name) {
        let spec = family_midpoints(d);
        let anchor = anchor.unwrap_or(d.reference_anchor());
        report.input("anchor", anchor as u64);
        let f = match free_vertex {
            Some(s) => {
                report.input("free_vertex", s);
                Rat2::parse_pair(s).map_err(|e| input_err(e.to_string()))?
            }
            None => d.default_free_vertex(),
        };
        (
            decagon_from_midpoints(&spec, &f, anchor).map_err(family_error)?,
            d.k(),
            Some(Lattice::integer()),
        )
    } else {
        return Err(family_error(FamilyError::UnknownFamily(name.to_string())));
    };
    report.time("construct", start);
    report.verdicts.push(
        json!({ "polygon": polygon_to_value(&poly), "area": poly.area().to_string(), "k": k }),
    );
    report.say(polygon_to_json(&poly));
    if !certificate {
        return Ok(EXIT_PASS);
    }
    let Some(l) = lattice else {
        let msg = format!("{name} has no certifying lattice");
        report.warnings.push(msg.clone());
        report
            .certificates
            .push(json!({ "verdict": "fail", "reason": msg }));
        return Ok(EXIT_FAIL);
    };
    match verify_kfold(&poly, &l, k, cli.samples, cli.seed) {
        Ok(c) => {
            report.certificates.push(c.to_json());
            report.time("certify", start);
            Ok(EXIT_PASS)
        }
        Err(e) => {
            report.warnings.push(e.to_string());
            report
                .certificates
                .push(json!({ "verdict": "fail", "reason": e.to_string() }));
            Ok(tiling_code(&e))
        }
    }
}

fn cmd_enumerate(
    cli: &Cli,
    report: &mut RunReport,
    target: Target,
    k: u64,
    audit: Option<&str>,
    bound: BoundArg,
) -> Result<i32, Failure> {
    report.input("k", k);
    if k == 0 {
        return Err(input_err("k must be positive"));
    }
    let start = Instant::now();
    let records = match target {
        Target::Decagons => {
            report.input("target", "decagons");
            let xb = match bound {
                BoundArg::Area => XBound::AreaOnly,
                BoundArg::Pick => XBound::PickRefined,
            };
            report.input("bound", format!("{xb:?}"));
            let cfg = Q10Config {
                samples: cli.samples,
                seed: cli.seed,
                ..Q10Config::new(k, xb)
            };
            let run = run_q10(&cfg);
            report.time("enumerate", start);
            let matching = run.matching();
            let n = matching.len();
            report.say(format!(
                "{n} {} with k={k}",
                if n == 1 { "class" } else { "classes" }
            ));
            for c in &matching {
                let pts: Vec<String> = c
                    .canonical
                    .iter()
                    .map(|[x, y]| format!("({x},{y})"))
                    .collect();
                report.say(format!(
                    "  u' = {}  labels: {}",
                    pts.join(","),
                    c.labels.join(", ")
                ));
            }
            let others: Vec<_> = run.classes.iter().filter(|c| c.k != Some(k)).collect();
            if !others.is_empty() {
                report.say(format!(
                    "{} further classes within the area bound with other multiplicities",
                    others.len()
                ));
            }
            report.verdicts.push(json!({ "classes": n, "run": run }));
            run.audit
        }
        Target::Octagons => {
            report.input("target", "octagons");
            let run = run_octagons(k, cli.samples, cli.seed);
            report.time("enumerate", start);
            let n = run.families.len();
            report.say(format!(
                "{n} parametric {} with k={k}",
                if n == 1 { "family" } else { "families" }
            ));
            for f in &run.families {
                report.say(format!(
                    "  {}: {} in ({}, {}){}",
                    f.family.name,
                    f.family.symbol,
                    f.family.lo,
                    f.family.hi,
                    if f.certified { "" } else { " (not certified)" }
                ));
            }
            report.say(format!("{} isolated tiles", run.isolated.len()));
            report.verdicts.push(json!({ "families": n, "run": run }));
            run.audit
        }
    };
    if let Some(path) = audit {
        report.input("audit", path);
        let file = fs::File::create(path).map_err(|e| input_err(format!("{path}: {e}")))?;
        write_audit(std::io::BufWriter::new(file), &records)
            .map_err(|e| input_err(format!("{path}: {e}")))?;
        report.say(format!("{} audit records written to {path}", records.len()));
    }
    Ok(EXIT_PASS)
}

fn cmd_render(
    io: &mut Io,
    report: &mut RunReport,
    polygon: &str,
    lattice: Option<&str>,
    window: &str,
    heat: usize,
    out: Option<&str>,
) -> Result<i32, Failure> {
    let text = io.read(polygon)?;
    report.input("polygon_path", polygon);
    report.input("polygon", text.clone());
    report.input("window", window);
    report.input("heat", heat as u64);
    let p = parse_polygon_text(&text)?;
    let l = load_lattice(io, lattice, report)?;
    let w: Rat = parse_rat(window).map_err(|e| input_err(e.to_string()))?;
    if w <= Rat::from_integer(0.into()) {
        return Err(input_err("window must be positive"));
    }
    let warning = match bolle_check(&p, &l) {
        Ok(_) => None,
        Err(e) => Some(format!("pair is not certified: {e}")),
    };
    if let Some(w) = &warning {
        report.warnings.push(w.clone());
    }
    let start = Instant::now();
    let (svg, summary) = render::render_svg(&p, &l, &w, heat, warning.as_deref());
    report.time("render", start);
    match out {
        Some(path) => {
            report.input("out", path);
            fs::write(path, &svg).map_err(|e| input_err(format!("{path}: {e}")))?;
            report.say(format!("wrote {path}: {} translates", summary.translates));
            if let Some(h) = &summary.heat {
                report.say(format!(
                    "heat grid: {} cells, {} defects, {} on boundaries",
                    h.cells, h.defects, h.on_boundary
                ));
            }
        }
        None => report.say(svg.trim_end().to_string()),
    }
    report
        .verdicts
        .push(json!({ "certified": warning.is_none(), "render": summary }));
    Ok(EXIT_PASS)
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct MidpointsDoc {
    midpoints: Vec<[String; 2]>,
}

fn cmd_region(
    io: &mut Io,
    report: &mut RunReport,
    family: Option<&str>,
    midpoints: Option<&str>,
    anchor: Option<usize>,
    svg: Option<&str>,
) -> Result<i32, Failure> {
    let (spec, default_anchor) = match (family, midpoints) {
        (Some(f), _) => {
            report.input("family", f);
            let d = decagon_family_name(f)
                .ok_or_else(|| family_error(FamilyError::UnknownFamily(f.to_string())))?;
            (family_midpoints(d), d.reference_anchor())
        }
        (None, Some(path)) => {
            let text = io.read(path)?;
            report.input("midpoints_path", path);
            report.input("midpoints", text.clone());
            let doc: MidpointsDoc = serde_json::from_str(&text)
                .map_err(|e| input_err(format!("malformed midpoints JSON: {e}")))?;
            let u = doc
                .midpoints
                .iter()
                .map(|[x, y]| Rat2::parse(x, y))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| input_err(e.to_string()))?;
            (MidpointSpec { u }, 0)
        }
        (None, None) => return Err(input_err("region needs --family or --midpoints")),
    };
    let anchor = anchor.unwrap_or(default_anchor);
    report.input("anchor", anchor as u64);
    let region = freedom_region(&spec, anchor).map_err(family_error)?;
    let pts: Vec<String> = region.vertices.iter().map(|v| v.to_string()).collect();
    report.say(format!(
        "anchor {anchor}: {}",
        if pts.is_empty() {
            "empty region".to_string()
        } else {
            pts.join(", ")
        }
    ));
    report.verdicts.push(json!({
        "anchor": anchor,
        "vertices": region.vertices.iter().map(Rat2::strings).collect::<Vec<_>>(),
        "bounded": region.is_bounded(),
        "half_planes": region.half_planes,
    }));
    if let Some(path) = svg {
        report.input("svg", path);
        fs::write(path, render::region_svg(&region.vertices))
            .map_err(|e| input_err(format!("{path}: {e}")))?;
    }
    Ok(EXIT_PASS)
}

fn cmd_classify(io: &mut Io, report: &mut RunReport, polygon: &str) -> Result<i32, Failure> {
    let text = io.read(polygon)?;
    report.input("polygon_path", polygon);
    report.input("polygon", text.clone());
    let p = parse_polygon_text(&text)?;
    let start = Instant::now();
    let c = classify(&p).map_err(|e| Failure {
        code: EXIT_FAIL,
        message: e.to_string(),
    })?;
    report.time("classify", start);
    report.say(c.message.clone());
    if let Some(cited) = &c.cited {
        report.say(format!("  rests on {cited}"));
    }
    report.verdicts.push(json!(c));
    Ok(EXIT_PASS)
}
