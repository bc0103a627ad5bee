use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use blockforge_core::construct::{construct_ball_power, construct_cherry, construct_neighborhood, lower_bound};
use blockforge_core::expander::{blowup, check_mixing, lps_graph, power_graph, second_eigenvalue};
use blockforge_core::io::{
    blocking_set_from_parts, format_graph, format_matrix, parse_graph, parse_matrix, sidecar_path, supply_from_parts,
    supply_sidecar, to_json_pretty,
};
use blockforge_core::mincode::{blocking_to_code, code_to_blocking, is_s_minimal};
use blockforge_core::supply::{supply_mds, supply_random_verified, verify_general_position};
use blockforge_core::verify::{is_affine_blocking, is_strong_blocking, is_strong_blocking_sampled, minimum_size_search, to_affine_blocking};
use blockforge_core::{BlockingSet, Error, FieldSpec, Graph, LinearCode, PointSupply, Result, VerifyOptions};

use crate::report::Report;
use crate::{
    BenchArgs, ConstructArgs, ConvertArgs, Context, FieldArgs, GraphCommand, MincheckArgs, OracleArgs, Recipe, SpectraArgs,
    SupplyArgs, SupplyMode, VerifyArgs,
};

pub enum Status {
    Success,
    Failed,
}

impl Status {
    fn from_passed(passed: bool) -> Self {
        if passed {
            Status::Success
        } else {
            Status::Failed
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn is_stdin(path: Option<&Path>) -> bool {
    path.is_none_or(|p| p == Path::new("-"))
}

/// File contents, or all of stdin for `-` / no path.
fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    if is_stdin(path) {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        let path = path.unwrap();
        std::fs::read(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
    }
}

fn utf8(bytes: Vec<u8>) -> Result<String> {
    String::from_utf8(bytes).map_err(|_| invalid("input is not UTF-8"))
}

fn read_sidecar(path: Option<&Path>) -> Option<String> {
    if is_stdin(path) {
        None
    } else {
        std::fs::read_to_string(sidecar_path(path.unwrap())).ok()
    }
}

fn load_graph(report: &mut Report, name: &str, path: Option<&Path>) -> Result<Graph> {
    let bytes = read_input(path)?;
    report.input(name, path, &bytes);
    parse_graph(&utf8(bytes)?)
}

fn load_supply(report: &mut Report, path: &Path) -> Result<PointSupply> {
    let bytes = read_input(Some(path))?;
    report.input("supply", Some(path), &bytes);
    supply_from_parts(&utf8(bytes)?, read_sidecar(Some(path)).as_deref())
}

fn load_set(report: &mut Report, path: Option<&Path>) -> Result<BlockingSet> {
    let bytes = read_input(path)?;
    report.input("set", path, &bytes);
    blocking_set_from_parts(&utf8(bytes)?, read_sidecar(path).as_deref())
}

fn load_code(report: &mut Report, path: Option<&Path>) -> Result<LinearCode> {
    let bytes = read_input(path)?;
    report.input("code", path, &bytes);
    LinearCode::new(parse_matrix(&utf8(bytes)?)?)
}

fn parse_field(a: &FieldArgs) -> Result<FieldSpec> {
    let parts: Vec<&str> = a.field.split(',').map(str::trim).collect();
    let num = |s: &str| s.parse::<u32>().map_err(|_| invalid(format!("bad field `{}`", a.field)));
    let (p, m) = match parts.as_slice() {
        [p] => (num(p)?, 1),
        [p, m] => (num(p)?, num(m)?),
        _ => return Err(invalid(format!("field must be `p` or `p,m`, got `{}`", a.field))),
    };
    FieldSpec::new(p, m, a.modulus.as_deref())
}

fn print(stream: &mut dyn Write, text: &str) -> Result<()> {
    stream.write_all(text.as_bytes())?;
    stream.flush()?;
    Ok(())
}

/// Data goes to `out` (plus sidecar) with the report on stdout, or to stdout with the
/// report on stderr so that pipelines carry only data.
fn emit(out: Option<&Path>, data: &str, sidecar: Option<String>, report: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, data)?;
            if let Some(s) = sidecar {
                std::fs::write(sidecar_path(path), s)?;
            }
            print(&mut std::io::stdout(), report)
        }
        None => {
            print(&mut std::io::stdout(), data)?;
            print(&mut std::io::stderr(), report)
        }
    }
}

fn path_param(p: &Option<PathBuf>) -> Value {
    p.as_ref().map_or(Value::Null, |p| json!(p.display().to_string()))
}

pub fn supply(ctx: &Context, a: SupplyArgs) -> Result<Status> {
    let field = parse_field(&a.field)?;
    let mut report = Report::new("supply");
    report.param("field", field.descriptor());
    report.param("k", a.k);
    report.param("n", a.n);
    report.param("mode", if a.mode == SupplyMode::Mds { "mds" } else { "random" });
    report.param("s", a.s);
    report.param("t", a.t);
    let w = match a.mode {
        SupplyMode::Mds => {
            let w = supply_mds(&field, a.k, a.n)?;
            let r = verify_general_position(&w, a.s, a.t, &ctx.budgets);
            w.with_report(r)
        }
        SupplyMode::Random => {
            let s = a.s.ok_or_else(|| invalid("--mode random needs --s"))?;
            let t = a.t.ok_or_else(|| invalid("--mode random needs --t"))?;
            report.param("max_tries", a.max_tries);
            supply_random_verified(&field, a.k, a.n, s, t, ctx.seed, a.max_tries, &ctx.budgets)?
        }
    };
    let gp = w.report().cloned().expect("supply carries a report");
    let passed = gp.meets_request;
    let sidecar = to_json_pretty(&supply_sidecar(&w))? + "\n";
    let text = report.render(ctx, passed, json!({ "k": w.k(), "n": w.n(), "provenance": w.provenance(), "general_position": gp }));
    emit(a.out.as_deref(), &format_matrix(w.points()), Some(sidecar), &text)?;
    Ok(Status::from_passed(passed))
}

pub fn graph(ctx: &Context, cmd: GraphCommand) -> Result<Status> {
    let mut report = Report::new("graph");
    let (g, out) = match cmd {
        GraphCommand::Lps { p, q, out } => {
            report.param("kind", "lps");
            report.param("p", p);
            report.param("q", q);
            (lps_graph(p, q)?, out)
        }
        GraphCommand::Complete { n, out } => {
            report.param("kind", "complete");
            report.param("n", n);
            (Graph::complete(n), out)
        }
        GraphCommand::FromFile { file, out } => {
            report.param("kind", "from-file");
            (load_graph(&mut report, "graph", Some(&file))?, out)
        }
        GraphCommand::Power { graph, u, out } => {
            report.param("kind", "power");
            report.param("u", u);
            let g = load_graph(&mut report, "graph", Some(&graph))?;
            (power_graph(&g, u)?, out)
        }
        GraphCommand::Blowup { graph, d, out } => {
            report.param("kind", "blowup");
            report.param("d", d);
            let g = load_graph(&mut report, "graph", Some(&graph))?;
            (blowup(&g, d)?, out)
        }
    };
    let result = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "regular_degree": g.regular_degree(),
        "connected": g.is_connected(),
        "bipartite": g.bipartition().is_some(),
    });
    let text = report.render(ctx, true, result);
    emit(out.as_deref(), &format_graph(&g), None, &text)?;
    Ok(Status::Success)
}

pub fn construct(ctx: &Context, a: ConstructArgs) -> Result<Status> {
    if is_stdin(Some(&a.graph)) && is_stdin(Some(&a.supply)) {
        return Err(invalid("only one of --graph and --supply may read stdin"));
    }
    let mut report = Report::new("construct");
    let g = load_graph(&mut report, "graph", Some(&a.graph))?;
    let w = load_supply(&mut report, &a.supply)?;
    report.param("s", a.s);
    let b = match a.recipe {
        Recipe::Cherry => {
            report.param("recipe", "cherry");
            construct_cherry(&g, &w, &ctx.budgets)?
        }
        Recipe::Ballpower => {
            report.param("recipe", "ballpower");
            report.param("ball_mode", blockforge_core::BallMode::from(a.ball_mode));
            construct_ball_power(&g, &w, a.s, a.ball_mode.into(), &ctx.budgets)?
        }
        Recipe::Neighborhood => {
            report.param("recipe", "neighborhood");
            construct_neighborhood(&g, &w, a.s, &ctx.budgets)?
        }
    };
    let bound = lower_bound(b.field().q() as u64, b.k() as u64, a.s as u64).ok();
    let result = json!({
        "field": b.field().descriptor(),
        "k": b.k(),
        "size": b.len(),
        "lower_bound": bound.map(|x| x.to_string()),
        "provenance": b.provenance(),
    });
    let text = report.render(ctx, true, result);
    let sidecar = to_json_pretty(b.provenance())? + "\n";
    emit(a.out.as_deref(), &format_matrix(&b.to_matrix()), Some(sidecar), &text)?;
    Ok(Status::Success)
}

pub fn verify(ctx: &Context, a: VerifyArgs) -> Result<Status> {
    let mut report = Report::new("verify");
    let b = load_set(&mut report, a.set.as_deref())?;
    report.param("s", a.s);
    report.param("sampled", a.sampled);
    report.param("exhaust_all", a.exhaust_all);
    report.param("affine", a.affine);
    let r = match a.sampled {
        Some(trials) => is_strong_blocking_sampled(&b, a.s, trials, ctx.seed)?,
        None => {
            let opts = VerifyOptions { jobs: ctx.jobs, exhaust_all: a.exhaust_all };
            is_strong_blocking(&b, a.s, opts, &ctx.budgets)?
        }
    };
    let mut passed = r.passed();
    let mut result = serde_json::to_value(&r)?;
    if a.affine {
        let aff = is_affine_blocking(&to_affine_blocking(&b)?, a.s + 1, &ctx.budgets)?;
        passed &= aff.result == blockforge_core::verify::Outcome::Pass;
        result["affine"] = serde_json::to_value(&aff)?;
    }
    print(&mut std::io::stdout(), &report.render(ctx, passed, result))?;
    Ok(Status::from_passed(passed))
}

pub fn mincheck(ctx: &Context, a: MincheckArgs) -> Result<Status> {
    let mut report = Report::new("mincheck");
    let c = load_code(&mut report, a.code.as_deref())?;
    report.param("s", a.s);
    let r = is_s_minimal(&c, a.s, &ctx.budgets)?;
    let passed = r.passed();
    let mut result = serde_json::to_value(&r)?;
    result["n"] = json!(c.n());
    result["k"] = json!(c.k());
    result["field"] = serde_json::to_value(c.field().descriptor())?;
    print(&mut std::io::stdout(), &report.render(ctx, passed, result))?;
    Ok(Status::from_passed(passed))
}

pub fn convert(ctx: &Context, a: ConvertArgs) -> Result<Status> {
    let mut report = Report::new("convert");
    let (data, sidecar, result) = if a.code.is_some() {
        report.param("direction", "code-to-set");
        let c = load_code(&mut report, a.code.as_deref())?;
        let b = code_to_blocking(&c)?;
        let sidecar = to_json_pretty(b.provenance())? + "\n";
        (format_matrix(&b.to_matrix()), Some(sidecar), json!({ "points": b.len(), "k": b.k() }))
    } else {
        report.param("direction", "set-to-code");
        let b = load_set(&mut report, a.set.as_deref())?;
        let c = blocking_to_code(&b)?;
        (format_matrix(c.generator()), None, json!({ "n": c.n(), "k": c.k() }))
    };
    report.param("out", path_param(&a.out));
    let text = report.render(ctx, true, result);
    emit(a.out.as_deref(), &data, sidecar, &text)?;
    Ok(Status::Success)
}

pub fn spectra(ctx: &Context, a: SpectraArgs) -> Result<Status> {
    let mut report = Report::new("spectra");
    let g = load_graph(&mut report, "graph", a.graph.as_deref())?;
    report.param("tol", a.tol);
    report.param("mixing", a.mixing);
    let r = second_eigenvalue(&g, a.tol)?;
    let ramanujan = 2.0 * ((r.d as f64) - 1.0).max(0.0).sqrt();
    let mut result = serde_json::to_value(&r)?;
    result["ramanujan_bound"] = json!(ramanujan);
    result["is_ramanujan"] = json!(r.lambda_bound <= ramanujan + a.tol);
    let mut passed = true;
    if let Some(trials) = a.mixing {
        let m = check_mixing(&g, r.lambda_bound, trials, ctx.seed)?;
        passed = m.passed();
        result["mixing"] = serde_json::to_value(&m)?;
    }
    print(&mut std::io::stdout(), &report.render(ctx, passed, result))?;
    Ok(Status::from_passed(passed))
}

pub fn oracle(ctx: &Context, a: OracleArgs) -> Result<Status> {
    let field = parse_field(&a.field)?;
    let mut report = Report::new("oracle");
    report.param("field", field.descriptor());
    report.param("k", a.k);
    report.param("s", a.s);
    let r = minimum_size_search(&field, a.k, a.s, &ctx.budgets)?;
    let result = json!({
        "size": r.size,
        "exact": r.exact,
        "nodes": r.nodes,
        "lower_bound": r.lower_bound.to_string(),
        "points": r.set.points(),
    });
    let text = report.render(ctx, true, result);
    match a.out {
        Some(path) => {
            let sidecar = to_json_pretty(r.set.provenance())? + "\n";
            emit(Some(&path), &format_matrix(&r.set.to_matrix()), Some(sidecar), &text)?;
        }
        None => print(&mut std::io::stdout(), &text)?,
    }
    Ok(Status::Success)
}

pub fn bench(ctx: &Context, a: BenchArgs) -> Result<Status> {
    let field = parse_field(&a.field)?;
    let mut report = Report::new("bench");
    report.param("field", field.descriptor());
    report.param("k", a.k);
    report.param("n", &a.n);
    report.param("s", a.s);
    report.param("repeat", a.repeat);
    let mut rows = Vec::new();
    let mut passed = true;
    for &n in &a.n {
        let g = Graph::complete(n);
        let w = supply_mds(&field, a.k, n)?;
        let mut construct_ms = 0.0;
        let mut verify_ms = 0.0;
        let mut last = None;
        for _ in 0..a.repeat.max(1) {
            let t0 = Instant::now();
            let b = construct_cherry(&g, &w, &ctx.budgets)?;
            construct_ms += t0.elapsed().as_secs_f64() * 1e3;
            let t1 = Instant::now();
            let opts = VerifyOptions { jobs: ctx.jobs, exhaust_all: false };
            let r = is_strong_blocking(&b, a.s, opts, &ctx.budgets)?;
            verify_ms += t1.elapsed().as_secs_f64() * 1e3;
            last = Some((b.len(), r));
        }
        let (size, r) = last.expect("at least one repetition");
        passed &= r.passed();
        let reps = a.repeat.max(1) as f64;
        rows.push(json!({
            "graph": format!("K{n}"),
            "size": size,
            "subspaces_checked": r.subspaces_checked,
            "passed": r.passed(),
            "construct_ms": construct_ms / reps,
            "verify_ms": verify_ms / reps,
        }));
    }
    report.param("jobs", ctx.jobs);
    print(&mut std::io::stdout(), &report.render(ctx, passed, json!({ "runs": rows })))?;
    Ok(Status::from_passed(passed))
}
