use std::fs;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use fuzzymetric::compactness::{kx_tb_audit, tb_audit, AuditReport, DiagonalSchedule, ExtractionOutcome};
use fuzzymetric::convergence::{gamma_oscillation_probe, GammaWitness};
use fuzzymetric::harness::generators::{
    gen_convergent, gen_escaping, gen_example_empu, gen_example_rnce, gen_nested_intervals, gen_oscillating, gen_random_family, CutShape,
    RandomFamilySpec,
};
use fuzzymetric::harness::{emit, parse, to_line, Instance, InstanceRecord, Metadata};
use fuzzymetric::{
    diagonal_extract, endograph_dist, gamma_limit_check, hausdorff, ExtDist, FuzzySeqWindow, GroundSet, GroundSpace, LiftedPoint, Point,
    ProductMetric, StepFuzzySet,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Command, DistArgs, ExtractArgs, GammaArgs, GenArgs, Generator, Io, Metric, Shape, TbArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Library(#[from] fuzzymetric::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Library(fuzzymetric::Error::Budget { .. }) => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cmd: Command) -> CliResult<ExitCode> {
    match cmd {
        Command::Dist(a) => dist(a),
        Command::GammaCheck(a) => gamma_check(a),
        Command::TbAudit(a) => tb(a),
        Command::Extract(a) => extract(a),
        Command::Gen(a) => generate(a),
        Command::Classify(io) => classify(io),
    }
}

fn read_records(input: &Path) -> CliResult<Vec<InstanceRecord>> {
    let text = if input == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input)?
    };
    Ok(parse(&text)?)
}

fn write_out(output: Option<&Path>, lines: &[String]) -> CliResult<()> {
    let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
    match output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

fn exit(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn ext(d: ExtDist) -> Value {
    num(d.value())
}

fn point(p: &Point) -> Value {
    match p {
        Point::Id(i) => json!(i),
        Point::Coords(c) => Value::Array(c.iter().map(|&x| num(x)).collect()),
    }
}

fn lifted(p: &LiftedPoint) -> Value {
    json!({ "x": point(&p.x), "t": num(p.t) })
}

/// Every fuzzy set in the input, labelled by record and position.
fn fuzzy_items(records: &[InstanceRecord]) -> Vec<(String, StepFuzzySet)> {
    let mut out = Vec::new();
    for (i, r) in records.iter().enumerate() {
        let rec = i + 1;
        match &r.instance {
            Instance::Fuzzy(u) => out.push((format!("record {rec}"), u.clone())),
            Instance::Family(f) => {
                out.extend(f.members().iter().enumerate().map(|(k, u)| (format!("record {rec} member {}", k + 1), u.clone())))
            }
            Instance::Sequence { window, limit } => {
                out.extend(window.members().iter().enumerate().map(|(k, u)| (format!("record {rec} member {}", k + 1), u.clone())));
                if let Some(l) = limit {
                    out.push((format!("record {rec} limit"), l.clone()));
                }
            }
            Instance::Set(_) => {}
        }
    }
    out
}

type SetItems = (Arc<GroundSpace>, Vec<(String, GroundSet)>);

fn set_items(records: &[InstanceRecord]) -> CliResult<Option<SetItems>> {
    let mut space: Option<Arc<GroundSpace>> = None;
    let mut sets = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if let Instance::Set(s) = &r.instance {
            match &space {
                Some(sp) if **sp != *r.space => return Err(usage(format!("record {} lives in a different space", i + 1))),
                Some(_) => {}
                None => space = Some(r.space.clone()),
            }
            sets.push((format!("record {}", i + 1), s.clone()));
        }
    }
    Ok(space.map(|s| (s, sets)))
}

fn first_sequence(records: &[InstanceRecord], tail: Option<usize>) -> CliResult<(FuzzySeqWindow, Option<StepFuzzySet>)> {
    let (window, limit) = records
        .iter()
        .find_map(|r| match &r.instance {
            Instance::Sequence { window, limit } => Some((window.clone(), limit.clone())),
            _ => None,
        })
        .ok_or_else(|| usage("input holds no sequence record"))?;
    let window = match tail {
        Some(t) => FuzzySeqWindow::new(window.members().to_vec(), t)?,
        None => window,
    };
    Ok((window, limit))
}

fn matrix<T>(items: &[T], d: impl Fn(&T, &T) -> CliResult<f64>) -> CliResult<Vec<Vec<f64>>> {
    items.iter().map(|a| items.iter().map(|b| d(a, b)).collect()).collect()
}

fn matrix_json(m: &[Vec<f64>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(|&x| num(x)).collect())).collect())
}

fn dist(a: DistArgs) -> CliResult<ExitCode> {
    let records = read_records(&a.io.input)?;
    let (labels, primary, alt) = if a.metric == Metric::Hausdorff {
        let (space, sets) = set_items(&records)?.ok_or_else(|| usage("hausdorff needs set records"))?;
        let m = matrix(&sets, |x, y| Ok(hausdorff(&space, &x.1, &y.1)?.value()))?;
        (sets.into_iter().map(|s| s.0).collect::<Vec<_>>(), m, None)
    } else {
        let items = fuzzy_items(&records);
        if items.is_empty() {
            return Err(usage("input holds no fuzzy sets"));
        }
        let hend = |v: ProductMetric| matrix(&items, move |x, y| Ok(endograph_dist(v, &x.1, &y.1)?.value()));
        let (sum, max) = (hend(ProductMetric::Sum)?, hend(ProductMetric::Max)?);
        let (p, q) = if a.metric == Metric::Hend { (sum, max) } else { (max, sum) };
        (items.into_iter().map(|s| s.0).collect(), p, Some(q))
    };
    let name = match a.metric {
        Metric::Hend => "hend",
        Metric::HendMax => "hend-max",
        Metric::Hausdorff => "hausdorff",
    };
    let mut rec = json!({ "kind": "report", "report": "dist", "metric": name, "labels": labels, "matrix": matrix_json(&primary) });
    if let Some(q) = &alt {
        rec["alt_metric"] = json!(if a.metric == Metric::Hend { "hend-max" } else { "hend" });
        rec["alt_matrix"] = matrix_json(q);
    }
    write_out(a.io.output.as_deref(), &[to_line(&rec)])?;
    let largest = primary.iter().flatten().copied().fold(0.0, f64::max);
    eprintln!("dist: {} items under {name}, largest entry {largest}", labels.len());
    Ok(ExitCode::SUCCESS)
}

fn gamma_witness(w: &GammaWitness) -> Value {
    match w {
        GammaWitness::Liminf { index, excess } => json!({ "type": "liminf", "index": index, "excess": ext(*excess) }),
        GammaWitness::Limsup { index, point, distance } => {
            json!({ "type": "limsup", "index": index, "point": lifted(point), "distance": num(*distance) })
        }
    }
}

fn gamma_check(a: GammaArgs) -> CliResult<ExitCode> {
    let records = read_records(&a.io.input)?;
    let (w, limit) = first_sequence(&records, a.tail)?;
    let (passed, rec) = match &limit {
        Some(u) => {
            let v = gamma_limit_check(&w, u, a.eps)?;
            let tail = w.tail_distance(u)?;
            let rec = json!({
                "kind": "report", "report": "gamma-check", "verdict": verdict(v.passed), "eps": num(a.eps),
                "tail_start": w.tail_start(), "tail_distance": num(tail),
                "witness": v.witness.as_ref().map(gamma_witness),
            });
            eprintln!("gamma-check: {} at eps {} (tail H_end {tail})", verdict(v.passed), a.eps);
            (v.passed, rec)
        }
        None => {
            let o = gamma_oscillation_probe(&w, a.eps)?;
            let rec = json!({
                "kind": "report", "report": "gamma-oscillation", "verdict": verdict(o.plausible_limit), "eps": num(a.eps),
                "tail_start": w.tail_start(), "witnesses": o.witnesses.iter().map(lifted).collect::<Vec<_>>(),
            });
            eprintln!("gamma-check: no limit recorded; {} oscillation witnesses", o.witnesses.len());
            (o.plausible_limit, rec)
        }
    };
    write_out(a.io.output.as_deref(), &[to_line(&rec)])?;
    Ok(exit(passed))
}

fn audit_json(label: &str, r: &AuditReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "hypothesis_met": c.hypothesis_met, "conclusion_holds": c.conclusion_holds, "holds": c.holds(), "detail": c.detail }))
        .collect();
    json!({ "kind": "report", "report": r.audit, "input": label, "verdict": verdict(r.passed()), "checks": checks })
}

fn tb(a: TbArgs) -> CliResult<ExitCode> {
    let records = read_records(&a.io.input)?;
    let mut reports = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if let Instance::Family(f) = &r.instance {
            reports.push((format!("record {}", i + 1), tb_audit(f, a.eps, &a.alpha_grid, a.budget)?));
        }
    }
    if let Some((space, sets)) = set_items(&records)? {
        let sets: Vec<GroundSet> = sets.into_iter().map(|s| s.1).collect();
        reports.push(("set records".into(), kx_tb_audit(&space, &sets, a.eps, a.budget)?));
    }
    if reports.is_empty() {
        return Err(usage("input holds no family or set records"));
    }
    let lines: Vec<String> = reports.iter().map(|(l, r)| to_line(&audit_json(l, r))).collect();
    write_out(a.io.output.as_deref(), &lines)?;
    for (l, r) in &reports {
        eprintln!("{}: {l}: {}", r.audit, verdict(r.passed()));
    }
    Ok(exit(reports.iter().all(|(_, r)| r.passed())))
}

fn extract(a: ExtractArgs) -> CliResult<ExitCode> {
    let records = read_records(&a.io.input)?;
    let (w, _) = first_sequence(&records, a.tail)?;
    let xi = a.xi.unwrap_or_else(|| w.tail().map(|n| w.get(n).height()).fold(1.0, f64::min));
    let sched = DiagonalSchedule::dyadic(xi, a.stages, a.budget.unwrap_or(w.len()))?;
    let mut lines = Vec::new();
    let passed = match diagonal_extract(&w, &sched) {
        Ok(ExtractionOutcome::Extracted(r)) => {
            for (k, s) in r.stages.iter().enumerate() {
                lines.push(to_line(&json!({
                    "kind": "report", "report": "extract-stage", "stage": k + 1, "alpha": num(s.alpha), "eps": num(s.eps),
                    "pool_size": s.pool_size, "net_size": s.net_size, "center": s.center, "kept": s.cluster.len(),
                    "diagonal": r.subsequence[k], "stage_residual": num(r.stage_residuals[k]),
                    "final_residual": num(r.final_residuals[k]), "bound": num(s.alpha.max(3.0 * s.eps)),
                })));
            }
            let violations = r.bound_violations();
            lines.push(to_line(&json!({
                "kind": "report", "report": "extract", "verdict": verdict(violations.is_empty()),
                "subsequence": r.subsequence, "representative": r.representative, "bound_violations": violations,
            })));
            let limit = InstanceRecord {
                space: w.space().clone(),
                instance: Instance::Fuzzy(r.limit_fuzzy_set()),
                metadata: Metadata::new("extract-limit", None),
            };
            lines.push(emit(&[limit]).trim_end().to_string());
            eprintln!("extract: {} stages, final residual {}", r.stages.len(), r.final_residuals.last().copied().unwrap_or(0.0));
            violations.is_empty()
        }
        Ok(ExtractionOutcome::NetFailure { stage, uncovered }) => {
            lines.push(to_line(&json!({
                "kind": "report", "report": "extract", "verdict": "fail", "failure": "net", "stage": stage, "uncovered": uncovered,
            })));
            eprintln!("extract: stage {stage} net failed, member {uncovered} uncovered");
            false
        }
        Err(fuzzymetric::Error::Budget { stage, reason }) => {
            lines.push(to_line(&json!({
                "kind": "report", "report": "extract", "verdict": "fail", "failure": "budget", "stage": stage, "reason": reason,
            })));
            eprintln!("extract: stage {stage}: {reason}");
            false
        }
        Err(e) => return Err(e.into()),
    };
    write_out(a.io.output.as_deref(), &lines)?;
    Ok(exit(passed))
}

fn classify(io: Io) -> CliResult<ExitCode> {
    let records = read_records(&io.input)?;
    let lines: Vec<String> = fuzzy_items(&records)
        .iter()
        .map(|(label, u)| {
            let c = u.classify();
            to_line(&json!({
                "kind": "report", "report": "classify", "input": label, "height": num(u.height()),
                "usc": c.is_usc, "uscg": c.is_uscg, "uscb": c.is_uscb, "normal": c.is_normal,
                "height_attained": c.height_attained, "connected_cuts": c.is_connected_cuts,
            }))
        })
        .collect();
    write_out(io.output.as_deref(), &lines)?;
    eprintln!("classify: {} fuzzy sets", lines.len());
    Ok(ExitCode::SUCCESS)
}

fn generate(a: GenArgs) -> CliResult<ExitCode> {
    let spec = RandomFamilySpec {
        members: a.members,
        dim: a.dim,
        shape: match a.shape {
            Shape::Points => CutShape::Points,
            Shape::Intervals => CutShape::Intervals,
        },
        coord_grain: a.coord_grain,
        level_grain: a.level_grain,
        ..RandomFamilySpec::default()
    };
    let line = Arc::new(GroundSpace::RealLine);
    let sequence = |window: FuzzySeqWindow, limit: Option<StepFuzzySet>| -> CliResult<Instance> {
        let window = FuzzySeqWindow::new(window.members().to_vec(), a.tail)?;
        Ok(Instance::Sequence { window, limit })
    };
    let (name, seed, space, instance) = match a.generator {
        Generator::RandomFamily => {
            let f = gen_random_family(&spec, a.seed)?;
            ("random-family", Some(a.seed), f.space().clone(), Instance::Family(f))
        }
        Generator::Convergent => {
            let (w, u) = gen_convergent(&spec, a.n, a.amplitude, a.seed)?;
            ("convergent", Some(a.seed), w.space().clone(), sequence(w, Some(u))?)
        }
        Generator::Escaping => ("escaping", None, line, sequence(gen_escaping(a.n, a.spacing)?, None)?),
        Generator::Oscillating => ("oscillating", None, line, sequence(gen_oscillating(a.n)?, None)?),
        Generator::Nested => {
            let w = gen_nested_intervals(a.n, a.tail)?;
            let limit = StepFuzzySet::chi(line.clone(), GroundSet::interval(0.0, 1.0)?)?;
            ("nested", None, w.space().clone(), sequence(w, Some(limit))?)
        }
        Generator::Empu => {
            let u = gen_example_empu(a.r, a.mesh)?;
            ("empu", None, u.space().clone(), Instance::Fuzzy(u))
        }
        Generator::Rnce => {
            let (w, u) = gen_example_rnce(a.r, a.n, a.mesh)?;
            ("rnce", None, w.space().clone(), sequence(w, Some(u))?)
        }
    };
    let record = InstanceRecord { space, instance, metadata: Metadata::new(name, seed) };
    let text = emit(&[record]);
    match &a.output {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
