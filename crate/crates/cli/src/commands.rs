use std::fs;

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use sftclass::format::{format_matrix, parse_function, parse_matrix};
use sftclass::linalg::to_bigints;
use sftclass::sft::periodic_orbit_words;
use sftclass::{
    count_period_points, decide_coe, decide_flow, full_group_abelianization, invariant_triple,
    is_positive_class, k_groups, realize, validate, Decision, FgAbelianGroup, InvariantTriple,
    LocallyConstantFn, MarkovInvariant, RealizeOptions, ZeroOneMatrix,
};

use crate::report::{element_json, group_json, value, CliError, Input, Report, Status};

type CmdResult = Result<(), CliError>;

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{path}: {e}")))
}

fn with_path(path: &str) -> impl Fn(sftclass::Error) -> CliError + '_ {
    move |e| {
        let mut err = CliError::from(e);
        err.message = format!("{path}: {}", err.message);
        err
    }
}

/// Parses a matrix file and echoes it into the report.
fn load_rows(report: &mut Report, role: &'static str, path: &str) -> Result<Vec<Vec<u64>>, CliError> {
    let parsed = read(path).and_then(|text| parse_matrix(&text).map_err(with_path(path)));
    report.inputs.push(Input {
        role,
        path: path.to_string(),
        content: parsed.as_ref().map_or(Value::Null, |rows| json!(rows)),
    });
    parsed
}

fn load_zero_one(report: &mut Report, role: &'static str, path: &str) -> Result<ZeroOneMatrix, CliError> {
    let rows = load_rows(report, role, path)?;
    ZeroOneMatrix::new(rows).map_err(with_path(path))
}

fn invariant_json(inv: &MarkovInvariant) -> Value {
    json!({
        "group": group_json(&inv.group),
        "point": element_json(&inv.point),
        "sign": inv.sign,
        "det": value(inv)["det"],
        "k1_rank": inv.k1_rank,
    })
}

pub fn validate_cmd(report: &mut Report, path: &str) -> CmdResult {
    let rows = load_rows(report, "matrix", path)?;
    let diagnostics = validate(&rows);
    let violations: Vec<Value> = diagnostics
        .violations
        .iter()
        .map(|v| {
            let mut entry = value(v);
            entry["message"] = json!(v.to_string());
            entry
        })
        .collect();
    if diagnostics.is_classifiable() {
        report.line("classifiable");
    } else {
        report.line("not classifiable:");
        for v in &diagnostics.violations {
            report.line(format!("  {v}"));
        }
    }
    let classifiable = diagnostics.is_classifiable();
    report.finish(
        if classifiable { Status::Success } else { Status::Negative },
        if classifiable { "classifiable" } else { "not_classifiable" },
        json!({ "classifiable": classifiable, "violations": violations }),
    );
    Ok(())
}

pub fn invariant_cmd(report: &mut Report, path: &str) -> CmdResult {
    let a = load_zero_one(report, "matrix", path)?;
    let inv = invariant_triple(&a)?;
    let k = k_groups(&a)?;
    let ab = full_group_abelianization(&a)?;
    let k1 = FgAbelianGroup::from_factors(k.k1_rank, &[])?;
    report.line(format!("F = BF(A^t) = {}", inv.group));
    report.line(format!("u_A = {}", inv.point));
    report.line(format!("s = {}", inv.sign));
    report.line(format!("det(id-A) = {}", inv.det));
    report.line(format!("K0 = {} with unit {}", k.k0.group, k.k0.point));
    report.line(format!("K1 = {k1}"));
    report.line(format!("full group abelianization = {ab}"));
    report.finish(
        Status::Success,
        "ok",
        json!({
            "invariant": invariant_json(&inv),
            "k0": { "group": group_json(&k.k0.group), "unit": element_json(&k.k0.point) },
            "k1": group_json(&k1),
            "full_group_abelianization": group_json(&ab),
        }),
    );
    Ok(())
}

fn decision_report(report: &mut Report, d: &Decision) {
    let verdict = if d.equivalent { "equivalent" } else { "not equivalent" };
    report.line(verdict);
    report.line(format!("A: {}", d.invariant_a));
    report.line(format!("B: {}", d.invariant_b));
    for c in &d.clauses {
        let mark = if c.holds { "holds" } else { "fails" };
        report.line(format!("  {} {mark}: {} vs {}", c.name, c.left, c.right));
    }
    report.finish(
        if d.equivalent { Status::Success } else { Status::Negative },
        if d.equivalent { "equivalent" } else { "not_equivalent" },
        json!({
            "relation": value(&d.relation),
            "equivalent": d.equivalent,
            "invariant_a": invariant_json(&d.invariant_a),
            "invariant_b": invariant_json(&d.invariant_b),
            "certificate": value(&d.clauses),
            "reason": d.reason,
        }),
    );
}

pub fn coe_cmd(report: &mut Report, a: &str, b: &str, bound: u64) -> CmdResult {
    let ma = load_zero_one(report, "a", a)?;
    let mb = load_zero_one(report, "b", b)?;
    let d = decide_coe(&ma, &mb, bound)?;
    decision_report(report, &d);
    Ok(())
}

pub fn flow_cmd(report: &mut Report, a: &str, b: &str) -> CmdResult {
    let ma = load_zero_one(report, "a", a)?;
    let mb = load_zero_one(report, "b", b)?;
    let d = decide_flow(&ma, &mb)?;
    decision_report(report, &d);
    Ok(())
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::invalid(format!("{flag}: {t:?} is not an integer")))
        })
        .collect()
}

pub struct RealizeArgs<'a> {
    pub free_rank: usize,
    pub torsion: &'a str,
    pub point: Option<&'a str>,
    pub sign: i8,
    pub output: Option<&'a str>,
    pub edge_shift: bool,
    pub bound: u64,
}

pub fn realize_cmd(report: &mut Report, args: &RealizeArgs) -> CmdResult {
    let torsion = parse_list("--torsion", args.torsion)?
        .into_iter()
        .map(|m| u64::try_from(m).map_err(|_| CliError::invalid(format!("--torsion: {m} is negative"))))
        .collect::<Result<Vec<u64>, _>>()?;
    let group = FgAbelianGroup::from_factors(args.free_rank, &torsion)?;
    let point = match args.point {
        Some(p) => group.element_from_coords(&to_bigints(&parse_list("--point", p)?))?,
        None => group.zero(),
    };
    report.inputs.push(Input {
        role: "triple",
        path: String::new(),
        content: json!({
            "group": group_json(&group),
            "point": element_json(&point),
            "sign": args.sign,
        }),
    });
    let target = InvariantTriple::new(group, point, args.sign)?;
    let options = RealizeOptions {
        edge_shift: args.edge_shift,
        pointed_bound: args.bound,
    };
    let plan = realize(&target, &options)?;
    let rows = plan.matrix().map_or_else(|| plan.extended.rows(), |m| m.rows());
    let text = format_matrix(&rows);
    if let Some(path) = args.output {
        fs::write(path, &text).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
    }

    report.line(format!(
        "target: ({}, {}, {})",
        target.group, target.point, target.sign
    ));
    report.line(format!("d = {:?}", plan.d_list));
    report.line(format!("c = {:?}", plan.c_vector));
    report.line(format!(
        "base {0}x{0}, extended {1}x{1}, final {2}x{2}",
        plan.base.size(),
        plan.extended.size(),
        rows.len()
    ));
    report.line(format!("achieved: {}", plan.achieved));
    report.line("verification: ok");
    match args.output {
        Some(path) => report.line(format!("matrix written to {path}")),
        None => report.line(text.trim_end()),
    }
    report.finish(
        Status::Success,
        "ok",
        json!({
            "d_list": plan.d_list,
            "c_vector": plan.c_vector,
            "base": value(&plan.base),
            "extended_size": plan.extended.size(),
            "edge_shift": args.edge_shift,
            "matrix": rows,
            "achieved": invariant_json(&plan.achieved),
            "verification": "ok",
            "output": args.output,
        }),
    );
    Ok(())
}

pub fn positivity_cmd(report: &mut Report, matrix: &str, function: &str) -> CmdResult {
    let a = load_zero_one(report, "matrix", matrix)?;
    let file = parse_function(&read(function)?, a.size()).map_err(with_path(function))?;
    report.inputs.push(Input {
        role: "function",
        path: function.to_string(),
        content: json!({ "window": file.window, "values": value(&file.values) }),
    });
    let xi = LocallyConstantFn::from_file(&a, file).map_err(with_path(function))?;
    let verdict = is_positive_class(&a, &xi)?;
    if verdict.positive {
        report.line("positive");
    } else {
        report.line("not positive");
        if let (Some(w), Some(s)) = (&verdict.witness, verdict.witness_sum) {
            report.line(format!("witness cycle {w} with orbit sum {s}"));
        }
    }
    report.finish(
        if verdict.positive { Status::Success } else { Status::Negative },
        if verdict.positive { "positive" } else { "not_positive" },
        value(&verdict),
    );
    Ok(())
}

pub fn periodic_cmd(report: &mut Report, matrix: &str, p: usize) -> CmdResult {
    let a = load_zero_one(report, "matrix", matrix)?;
    if p == 0 {
        return Err(CliError::invalid("period bound must be at least 1"));
    }
    let p32 = u32::try_from(p).map_err(|_| CliError::invalid("period bound too large"))?;
    let primitive = periodic_orbit_words(&a, p);
    let mut periods = Vec::new();
    let mut consistent = true;
    for q in 1..=p32 {
        let orbits: Vec<_> = primitive.iter().filter(|w| (q as usize).is_multiple_of(w.len())).collect();
        let points: usize = orbits.iter().map(|w| w.len()).sum();
        let trace = count_period_points(&a, q);
        let agrees = trace == points.into();
        consistent &= agrees;
        let names: Vec<String> = orbits.iter().map(ToString::to_string).collect();
        report.line(format!(
            "q={q}: {} orbit(s) {{{}}}; {points} point(s), trace(A^{q}) = {trace}{}",
            orbits.len(),
            names.join(", "),
            if agrees { "" } else { " MISMATCH" }
        ));
        periods.push(json!({
            "q": q,
            "orbits": names,
            "points": points,
            "trace": trace.to_u64().map_or_else(|| json!(trace.to_string()), |t| json!(t)),
            "agrees": agrees,
        }));
    }
    if !consistent {
        return Err(CliError {
            status: Status::Invalid,
            message: "orbit count disagrees with trace(A^q)".into(),
        });
    }
    report.finish(Status::Success, "ok", json!({ "max_period": p, "periods": periods }));
    Ok(())
}
