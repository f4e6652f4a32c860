//! Command-line front end: parse a group spec, run the requested pipeline
//! stage, and emit a deterministic JSON report (machine output) plus a short
//! human summary.  JSON goes to standard output or `--out`; the summary goes
//! to standard error, or to standard output under `--format summary`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid spec or request,
//! 3 group order above the cap.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use qgring::alg::qdimension;
use qgring::group::{nilpotency, parse_spec, rational_class_count, GroupTable};
use qgring::primidem::{matrix_units, primitive_idempotents, MatrixUnitSystem};
use qgring::report;
use qgring::shoda::{strong_shoda_pairs, SspRecord, SspSummary};
use qgring::wedderburn::{describe_component, roquette_check, ComponentDescriptor, DivisionPart};
use qgring::zunits::{generator_suite, nilpotency_certificate};
use qgring::{Error, RunConfig};

#[derive(Parser)]
#[command(
    name = "qgring",
    version,
    about = "Exact Wedderburn data, primitive idempotents, and integral unit generators \
             for finite groups given by multiplication tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest group order the spec parser accepts.
    #[arg(long, global = true, default_value_t = 256)]
    cap: usize,
    /// Height ceiling for the case-2.ii sum-of-squares search.
    #[arg(long = "xy-height", global = true, default_value_t = 6)]
    xy_height: u32,
    /// Worker threads for per-component work (0 = one per core).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `json` prints the report on stdout and the summary on stderr;
    /// `summary` prints only the summary, on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Summary,
}

#[derive(Subcommand)]
enum Command {
    /// List the strong Shoda pairs and their Wedderburn component descriptors.
    Decompose { spec: String },
    /// Complete sets of orthogonal primitive idempotents, one per component
    /// (nilpotent groups).
    Idempotents { spec: String },
    /// Full matrix-unit grids over every component (nilpotent groups).
    MatrixUnits { spec: String },
    /// Certified generators of a large subgroup of the integral group ring
    /// units (nilpotent groups).
    Units { spec: String },
    /// Run the whole invariant suite and report pass/fail per property.
    Verify { spec: String },
}

/// What a command hands back: the machine report, the human summary, and
/// whether a verification property failed (JSON is still emitted then).
struct Outcome {
    json: Value,
    summary: String,
    verified: bool,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::SpecParse(_)
        | Error::BadTable(_)
        | Error::InvalidPresentation(_)
        | Error::NotASubgroup(_)
        | Error::NotNormal
        | Error::MixedGroups
        | Error::NotNilpotent(_)
        | Error::BadUnitParams(_)
        | Error::Io(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start {} worker threads: {e}", cli.jobs);
            return ExitCode::from(2);
        }
    };
    let outcome = pool.install(|| dispatch(&cli));
    match outcome {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn emit(cli: &Cli, out: &Outcome) -> std::io::Result<()> {
    let text = report::canonical_string(&out.json);
    if let Some(path) = &cli.out {
        std::fs::write(path, &text)?;
    } else if cli.format == Format::Json {
        std::io::stdout().write_all(text.as_bytes())?;
    }
    match cli.format {
        Format::Json => eprint!("{}", out.summary),
        Format::Summary => print!("{}", out.summary),
    }
    Ok(())
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig { order_cap: cli.cap, xy_height_cap: cli.xy_height, jobs: cli.jobs.max(1) }
}

fn dispatch(cli: &Cli) -> qgring::Result<Outcome> {
    let cfg = config(cli);
    match &cli.command {
        Command::Decompose { spec } => decompose(spec, &cfg),
        Command::Idempotents { spec } => systems(spec, &cfg, false),
        Command::MatrixUnits { spec } => systems(spec, &cfg, true),
        Command::Units { spec } => units(spec, &cfg),
        Command::Verify { spec } => verify(spec, &cfg),
    }
}

fn group_json(spec: &str, g: &Arc<GroupTable>) -> Value {
    json!({
        "spec": spec,
        "name": g.name(),
        "order": g.order(),
        "nilpotent": nilpotency(g).nilpotent,
    })
}

/// One human line for a component descriptor.
fn component_line(d: &ComponentDescriptor) -> String {
    let center = match d.center_spec.degree() {
        1 => "Q".to_string(),
        n => format!("a degree-{n} field"),
    };
    let division = match d.division_part {
        DivisionPart::Field => center,
        DivisionPart::TotallyDefiniteQuaternion(_) => format!("quaternions over {center}"),
    };
    let mut line = format!("{}x{} matrices over {division}", d.matrix_degree, d.matrix_degree);
    if d.exceptional {
        line.push_str(" [exceptional]");
    }
    line
}

fn pair_line(rec: &SspRecord) -> String {
    format!("(|H| = {}, |K| = {})", rec.h.order(), rec.k.order())
}

fn decompose(spec: &str, cfg: &RunConfig) -> qgring::Result<Outcome> {
    let g = parse_spec(spec, cfg.order_cap)?;
    let s = strong_shoda_pairs(&g)?;
    let described: Vec<qgring::Result<ComponentDescriptor>> =
        s.records.par_iter().map(describe_component).collect();
    let mut components = Vec::with_capacity(s.records.len());
    let mut summary = format!(
        "{spec}: order {}, {} strong Shoda pair(s), {}\n",
        g.order(),
        s.records.len(),
        if s.complete { "exhausting the group algebra" } else { "NOT exhausting the group algebra" },
    );
    for (i, (rec, des)) in s.records.iter().zip(&described).enumerate() {
        let mut obj = Map::new();
        obj.insert("pair".into(), report::record_json(rec));
        match des {
            Ok(d) => {
                obj.insert("descriptor".into(), report::component_json(d));
                summary.push_str(&format!("  #{i}: {} -> {}\n", pair_line(rec), component_line(d)));
            }
            Err(e) => {
                obj.insert("descriptor".into(), Value::Null);
                obj.insert("descriptor_error".into(), json!(e.to_string()));
                summary.push_str(&format!("  #{i}: {} -> unresolved: {e}\n", pair_line(rec)));
            }
        }
        components.push(Value::Object(obj));
    }
    let json = json!({
        "group": group_json(spec, &g),
        "command": "decompose",
        "complete": s.complete,
        "rational_classes": rational_class_count(&g),
        "components": components,
    });
    Ok(Outcome { json, summary, verified: true })
}

/// Shared body of `idempotents` and `matrix-units`.
fn systems(spec: &str, cfg: &RunConfig, with_units: bool) -> qgring::Result<Outcome> {
    let g = parse_spec(spec, cfg.order_cap)?;
    if !nilpotency(&g).nilpotent {
        return Err(Error::NotNilpotent(
            "primitive idempotents and matrix units are computed for nilpotent groups".into(),
        ));
    }
    let s = strong_shoda_pairs(&g)?;
    let solved: Vec<(MatrixUnitSystem, Option<Vec<Vec<qgring::alg::AlgElement>>>)> = s
        .records
        .par_iter()
        .map(|rec| {
            let sys = primitive_idempotents(rec, cfg)?;
            let grid = if with_units { Some(matrix_units(&sys)?) } else { None };
            Ok((sys, grid))
        })
        .collect::<qgring::Result<_>>()?;
    let command = if with_units { "matrix-units" } else { "idempotents" };
    let mut summary = format!(
        "{spec}: order {}, {} component(s), all idempotent systems verified\n",
        g.order(),
        solved.len()
    );
    let mut components = Vec::with_capacity(solved.len());
    for (i, (rec, (sys, grid))) in s.records.iter().zip(&solved).enumerate() {
        summary.push_str(&format!(
            "  #{i}: {} case {} with {} idempotent(s)\n",
            pair_line(rec),
            report::case_name(sys.case.tag),
            sys.t_e.len()
        ));
        components.push(json!({
            "pair": report::record_json(rec),
            "system": report::system_json(sys, grid.as_deref()),
        }));
    }
    let json = json!({
        "group": group_json(spec, &g),
        "command": command,
        "components": components,
    });
    Ok(Outcome { json, summary, verified: true })
}

fn units(spec: &str, cfg: &RunConfig) -> qgring::Result<Outcome> {
    let g = parse_spec(spec, cfg.order_cap)?;
    let suite = generator_suite(&g, cfg)?;
    let descriptors: Vec<ComponentDescriptor> =
        suite.records.par_iter().map(describe_component).collect::<qgring::Result<_>>()?;
    let exceptional: Vec<usize> =
        descriptors.iter().enumerate().filter(|(_, d)| d.exceptional).map(|(i, _)| i).collect();
    let mut summary = format!(
        "{spec}: order {}, {} central unit(s), {} V+/{} V- component families, {} free pair(s)\n",
        g.order(),
        suite.central.len(),
        suite.vplus.iter().filter(|v| !v.is_empty()).count(),
        suite.vminus.iter().filter(|v| !v.is_empty()).count(),
        suite.free_pairs.len()
    );
    for &i in &exceptional {
        summary.push_str(&format!(
            "warning: component #{i} is exceptional ({}); its generators are emitted \
             but the finite-index guarantee does not cover them\n",
            component_line(&descriptors[i])
        ));
    }
    let json = json!({
        "group": group_json(spec, &g),
        "command": "units",
        "components": descriptors.iter().map(report::component_json).collect::<Vec<_>>(),
        "exceptional_components": exceptional,
        "suite": report::suite_json(&suite),
    });
    Ok(Outcome { json, summary, verified: true })
}

/// One verification property: its name, whether it holds, and a short
/// human-readable account of what was checked.
struct Check {
    name: &'static str,
    status: &'static str, // "pass" | "fail" | "skip"
    detail: String,
}

fn pass(name: &'static str, detail: String) -> Check {
    Check { name, status: "pass", detail }
}
fn fail(name: &'static str, detail: String) -> Check {
    Check { name, status: "fail", detail }
}
fn skip(name: &'static str, detail: String) -> Check {
    Check { name, status: "skip", detail }
}

fn verify(spec: &str, cfg: &RunConfig) -> qgring::Result<Outcome> {
    let g = parse_spec(spec, cfg.order_cap)?;
    let nilpotent = nilpotency(&g).nilpotent;
    let mut checks: Vec<Check> = Vec::new();

    let s = match strong_shoda_pairs(&g) {
        Ok(s) => {
            checks.push(pass("scan", format!("{} strong Shoda pair(s)", s.records.len())));
            Some(s)
        }
        Err(e) => {
            checks.push(fail("scan", e.to_string()));
            None
        }
    };

    if let Some(s) = &s {
        checks.push(check_central_idempotents(s));
        checks.push(check_orthogonality(s));
        checks.push(check_completeness(s, nilpotent));
        checks.push(check_class_count(&g, s));
        if nilpotent {
            checks.push(check_descriptors(&g, s));
            checks.push(check_roquette(&g));
            checks.push(check_matrix_units(s, cfg));
            checks.push(check_units(&g, s, cfg));
        } else {
            let why = "defined for nilpotent groups only".to_string();
            checks.push(skip("descriptors", why.clone()));
            checks.push(skip("roquette", why.clone()));
            checks.push(skip("matrix_units", why.clone()));
            checks.push(skip("units", why));
        }
    }

    let verified = checks.iter().all(|c| c.status != "fail");
    let mut summary = format!("{spec}: order {}\n", g.order());
    for c in &checks {
        summary.push_str(&format!("  check {:<20} {}  ({})\n", c.name, c.status, c.detail));
    }
    summary.push_str(if verified { "all checks passed\n" } else { "SOME CHECKS FAILED\n" });
    let json = json!({
        "group": group_json(spec, &g),
        "command": "verify",
        "checks": checks
            .iter()
            .map(|c| json!({"name": c.name, "status": c.status, "detail": c.detail}))
            .collect::<Vec<_>>(),
        "pass": verified,
    });
    Ok(Outcome { json, summary, verified })
}

fn check_central_idempotents(s: &SspSummary) -> Check {
    for (i, rec) in s.records.iter().enumerate() {
        let ok = match (rec.e.is_idempotent(), rec.e.is_central()) {
            (Ok(idem), central) => idem && central,
            _ => false,
        };
        if !ok {
            return fail("central_idempotents", format!("record #{i} is not a central idempotent"));
        }
    }
    pass("central_idempotents", format!("{} central idempotent(s)", s.records.len()))
}

fn check_orthogonality(s: &SspSummary) -> Check {
    for i in 0..s.records.len() {
        for j in i + 1..s.records.len() {
            match qgring::alg::are_orthogonal(&s.records[i].e, &s.records[j].e) {
                Ok(true) => {}
                _ => {
                    return fail("orthogonality", format!("records #{i} and #{j} overlap"));
                }
            }
        }
    }
    pass("orthogonality", "pairwise products vanish".into())
}

fn check_completeness(s: &SspSummary, nilpotent: bool) -> Check {
    let sums_to_one = s.sum.is_one();
    if sums_to_one != s.complete {
        return fail("completeness", "the completeness flag disagrees with the actual sum".into());
    }
    if nilpotent && !s.complete {
        return fail("completeness", "a nilpotent group must be strongly monomial".into());
    }
    if s.complete {
        pass("completeness", "the idempotents sum to 1".into())
    } else {
        pass("completeness", "proper partial sum, as the group is not covered by strong pairs".into())
    }
}

fn check_class_count(g: &Arc<GroupTable>, s: &SspSummary) -> Check {
    let classes = rational_class_count(g);
    if s.complete {
        if s.records.len() == classes {
            pass("class_count", format!("{classes} components = rational classes"))
        } else {
            fail(
                "class_count",
                format!("{} components against {classes} rational classes", s.records.len()),
            )
        }
    } else if s.records.len() < classes {
        pass("class_count", format!("{} of {classes} components reached", s.records.len()))
    } else {
        fail(
            "class_count",
            format!("an incomplete scan found {} >= {classes} components", s.records.len()),
        )
    }
}

fn check_descriptors(g: &Arc<GroupTable>, s: &SspSummary) -> Check {
    let described: Vec<qgring::Result<ComponentDescriptor>> =
        s.records.par_iter().map(describe_component).collect();
    let mut total = 0u64;
    for (i, d) in described.iter().enumerate() {
        match d {
            Ok(d) => total += d.dimension(),
            Err(e) => return fail("descriptors", format!("component #{i}: {e}")),
        }
    }
    if total == g.order() as u64 {
        pass("descriptors", format!("component dimensions sum to {total}"))
    } else {
        fail("descriptors", format!("dimensions sum to {total}, group order is {}", g.order()))
    }
}

fn check_roquette(g: &Arc<GroupTable>) -> Check {
    match roquette_check(g) {
        Ok(rep) if rep.violations.is_empty() => pass(
            "roquette",
            format!("{} quaternion component(s), Schur indices at most 2", rep.quaternion_components),
        ),
        Ok(rep) => fail("roquette", rep.violations.join("; ")),
        Err(e) => fail("roquette", e.to_string()),
    }
}

fn check_matrix_units(s: &SspSummary, cfg: &RunConfig) -> Check {
    let solved: Vec<qgring::Result<usize>> = s
        .records
        .par_iter()
        .map(|rec| {
            let sys = primitive_idempotents(rec, cfg)?;
            let grid = matrix_units(&sys)?;
            // the trace of the grid resolves e with the right multiplicity
            let mut diag = qgring::alg::AlgElement::zero(rec.e.group());
            for (i, row) in grid.iter().enumerate() {
                diag = diag.add(&row[i])?;
            }
            if !diag.sub(&rec.e)?.is_zero() {
                return Err(Error::Defect("diagonal matrix units do not sum to e".into()));
            }
            // |T_e|^2 * dim(division part) accounts for the whole component
            let dsq = qdimension(&rec.e)?;
            if dsq % (grid.len() * grid.len()) != 0 {
                return Err(Error::Defect("matrix size does not divide the component".into()));
            }
            Ok(grid.len())
        })
        .collect();
    let mut sizes = Vec::with_capacity(solved.len());
    for (i, r) in solved.iter().enumerate() {
        match r {
            Ok(n) => sizes.push(n.to_string()),
            Err(e) => return fail("matrix_units", format!("component #{i}: {e}")),
        }
    }
    pass("matrix_units", format!("grid sizes [{}] all certified", sizes.join(", ")))
}

fn check_units(g: &Arc<GroupTable>, s: &SspSummary, cfg: &RunConfig) -> Check {
    let suite = match generator_suite(g, cfg) {
        Ok(su) => su,
        Err(e) => return fail("units", e.to_string()),
    };
    for (i, rec) in suite.records.iter().enumerate() {
        let has_v = !suite.vplus[i].is_empty() || !suite.vminus[i].is_empty();
        if !has_v {
            continue;
        }
        let sys = match primitive_idempotents(rec, cfg) {
            Ok(sys) => sys,
            Err(e) => return fail("units", format!("component #{i}: {e}")),
        };
        for gens in [&suite.vplus[i], &suite.vminus[i]] {
            match nilpotency_certificate(gens, &sys) {
                Ok(true) => {}
                Ok(false) => {
                    return fail("units", format!("component #{i}: triangularity fails"));
                }
                Err(e) => return fail("units", format!("component #{i}: {e}")),
            }
        }
    }
    if suite.records.len() != s.records.len() {
        return fail("units", "the suite components disagree with the scan".into());
    }
    let vcount: usize = suite.vplus.iter().chain(&suite.vminus).map(Vec::len).sum();
    pass(
        "units",
        format!(
            "{} central, {} triangular, {} free pair(s), every inverse exact",
            suite.central.len(),
            vcount,
            suite.free_pairs.len()
        ),
    )
}
