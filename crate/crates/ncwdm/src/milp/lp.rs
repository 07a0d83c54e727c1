//! LP-format export and solution re-import.
//!
//! Export is deterministic: objective terms, constraints, and variable
//! declarations are sorted by name, and numbers use Rust's shortest
//! round-trip formatting, so re-exporting the same model is byte-identical.
//!
//! The solution reader is line based and tolerant: it accepts `name value`,
//! `name = value`, skips anything it cannot parse, and picks the reported
//! objective from a `# objective <value>` header or any comment line
//! containing the word "objective".

use std::path::Path;

use super::{ConstraintSense, ModelIR, VarKind};
use crate::{Error, Result};

const TOL_ABS: f64 = 1e-6;
const TOL_REL: f64 = 1e-6;
const MAX_LINE: usize = 200;

fn push_term(line: &mut String, out: &mut String, coef: f64, name: &str) {
    let piece = if coef >= 0.0 {
        format!(" + {} {}", fmt(coef), name)
    } else {
        format!(" - {} {}", fmt(-coef), name)
    };
    if line.len() + piece.len() > MAX_LINE {
        out.push_str(line);
        out.push('\n');
        line.clear();
        line.push(' ');
    }
    line.push_str(&piece);
}

fn fmt(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// Renders the model as LP-format text.
pub fn export_model_string(ir: &ModelIR) -> String {
    let mut out = String::new();
    out.push_str(&format!("\\ {}\n", ir.name));
    out.push_str("Minimize\n");
    let mut obj: Vec<(&str, f64)> = ir
        .objective
        .iter()
        .map(|&(i, coef)| (ir.variables[i].name.as_str(), coef))
        .collect();
    obj.sort_by(|a, b| a.0.cmp(b.0));
    let mut line = String::from(" obj:");
    for (name, coef) in obj {
        push_term(&mut line, &mut out, coef, name);
    }
    if ir.objective_constant != 0.0 {
        push_term(&mut line, &mut out, ir.objective_constant, "");
        // trailing space left by the empty name
        while line.ends_with(' ') {
            line.pop();
        }
    }
    out.push_str(&line);
    out.push('\n');

    out.push_str("Subject To\n");
    let mut order: Vec<usize> = (0..ir.constraints.len()).collect();
    order.sort_by(|&a, &b| ir.constraints[a].name.cmp(&ir.constraints[b].name));
    for idx in order {
        let c = &ir.constraints[idx];
        let mut terms: Vec<(&str, f64)> = c
            .terms
            .iter()
            .map(|&(i, coef)| (ir.variables[i].name.as_str(), coef))
            .collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        let mut line = format!(" {}:", c.name);
        for (name, coef) in terms {
            push_term(&mut line, &mut out, coef, name);
        }
        let sense = match c.sense {
            ConstraintSense::Le => "<=",
            ConstraintSense::Eq => "=",
            ConstraintSense::Ge => ">=",
        };
        line.push_str(&format!(" {} {}", sense, fmt(c.rhs)));
        out.push_str(&line);
        out.push('\n');
    }

    let mut vars: Vec<&super::Variable> = ir.variables.iter().collect();
    vars.sort_by(|a, b| a.name.cmp(&b.name));

    out.push_str("Bounds\n");
    for v in &vars {
        match (v.kind, v.lower, v.upper) {
            (VarKind::Binary, _, _) => {}
            (_, None, None) => out.push_str(&format!(" {} free\n", v.name)),
            (_, Some(lo), None) => {
                if lo != 0.0 {
                    out.push_str(&format!(" {} >= {}\n", v.name, fmt(lo)));
                }
            }
            (_, Some(lo), Some(hi)) => {
                out.push_str(&format!(" {} <= {} <= {}\n", fmt(lo), v.name, fmt(hi)));
            }
            (_, None, Some(hi)) => {
                out.push_str(&format!(" -inf <= {} <= {}\n", v.name, fmt(hi)));
            }
        }
    }

    let binaries: Vec<&str> = vars
        .iter()
        .filter(|v| v.kind == VarKind::Binary)
        .map(|v| v.name.as_str())
        .collect();
    if !binaries.is_empty() {
        out.push_str("Binaries\n");
        let mut line = String::new();
        for name in binaries {
            if line.len() + name.len() + 1 > MAX_LINE {
                out.push_str(&line);
                out.push('\n');
                line.clear();
            }
            line.push(' ');
            line.push_str(name);
        }
        out.push_str(&line);
        out.push('\n');
    }
    let generals: Vec<&str> = vars
        .iter()
        .filter(|v| v.kind == VarKind::Integer)
        .map(|v| v.name.as_str())
        .collect();
    if !generals.is_empty() {
        out.push_str("Generals\n");
        let mut line = String::new();
        for name in generals {
            if line.len() + name.len() + 1 > MAX_LINE {
                out.push_str(&line);
                out.push('\n');
                line.clear();
            }
            line.push(' ');
            line.push_str(name);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("End\n");
    out
}

/// Writes the LP file.
pub fn export_model(ir: &ModelIR, path: &Path) -> Result<()> {
    std::fs::write(path, export_model_string(ir))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A verified variable assignment.
#[derive(Debug, Clone)]
pub struct SolutionReport {
    /// values aligned with `ModelIR::variables`
    pub values: Vec<f64>,
    /// objective value stated in the file, when present
    pub reported_objective: Option<f64>,
    /// objective recomputed from the assignment
    pub recomputed_objective: f64,
}

/// Parses solution text into (name, value) pairs plus an optional reported
/// objective. Unparseable lines and unknown names are skipped.
pub fn parse_solution_text(text: &str) -> (Vec<(String, f64)>, Option<f64>) {
    let mut pairs = Vec::new();
    let mut objective = None;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('\\') || line.starts_with("//") {
            continue;
        }
        if line.starts_with('#') || line.to_ascii_lowercase().contains("objective") {
            if line.to_ascii_lowercase().contains("objective") {
                if let Some(v) = line
                    .split(|c: char| c.is_whitespace() || c == '=' || c == ':')
                    .rev()
                    .find_map(|tok| tok.parse::<f64>().ok())
                {
                    objective = Some(v);
                }
            }
            continue;
        }
        let cleaned = line.replace('=', " ");
        let mut toks = cleaned.split_whitespace();
        let Some(name) = toks.next() else { continue };
        let Some(value) = toks.last().and_then(|v| v.parse::<f64>().ok()) else {
            continue;
        };
        pairs.push((name.to_string(), value));
    }
    (pairs, objective)
}

/// Reads a solution file and verifies it against the model: every variable
/// present, integrality and bounds respected, every constraint satisfied
/// within 1e-6 absolute, and the reported objective within 1e-6 relative of
/// the recomputed one.
pub fn import_solution(ir: &ModelIR, path: &Path) -> Result<SolutionReport> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    import_solution_str(ir, &text)
}

/// Same as [`import_solution`] for in-memory text.
pub fn import_solution_str(ir: &ModelIR, text: &str) -> Result<SolutionReport> {
    let (pairs, reported) = parse_solution_text(text);
    let mut values = vec![f64::NAN; ir.variables.len()];
    for (name, value) in pairs {
        if let Some(i) = ir.index_of(&name) {
            values[i] = value;
        }
    }
    if let Some(i) = values.iter().position(|v| v.is_nan()) {
        return Err(Error::Solution(format!(
            "missing variable {} in solution file",
            ir.variables[i].name
        )));
    }
    for (v, &x) in ir.variables.iter().zip(&values) {
        if matches!(v.kind, VarKind::Binary | VarKind::Integer) && (x - x.round()).abs() > TOL_ABS {
            return Err(Error::Solution(format!(
                "integrality violation: {} = {x}",
                v.name
            )));
        }
        if let Some(lo) = v.lower {
            if x < lo - TOL_ABS {
                return Err(Error::Solution(format!("{} = {x} below bound {lo}", v.name)));
            }
        }
        if let Some(hi) = v.upper {
            if x > hi + TOL_ABS {
                return Err(Error::Solution(format!("{} = {x} above bound {hi}", v.name)));
            }
        }
    }
    let mut worst: Option<(&str, f64)> = None;
    let mut violated = 0usize;
    for c in &ir.constraints {
        let gap = ir.violation(c, &values);
        if gap > TOL_ABS {
            violated += 1;
            if worst.map_or(true, |(_, w)| gap > w) {
                worst = Some((&c.name, gap));
            }
        }
    }
    if let Some((name, gap)) = worst {
        return Err(Error::Solution(format!(
            "{violated} constraint(s) violated, worst {name} by {gap:.3e}"
        )));
    }
    let recomputed = ir.recompute_objective(&values);
    if let Some(rep) = reported {
        let scale = recomputed.abs().max(1.0);
        if (rep - recomputed).abs() > TOL_REL * scale {
            return Err(Error::Solution(format!(
                "objective mismatch: reported {rep}, recomputed {recomputed}"
            )));
        }
    }
    Ok(SolutionReport { values, reported_objective: reported, recomputed_objective: recomputed })
}

/// Renders an assignment as solution text with an objective header.
pub fn solution_text(ir: &ModelIR, values: &[f64]) -> String {
    let mut out = format!("# objective {}\n", ir.recompute_objective(values));
    for (v, &x) in ir.variables.iter().zip(values) {
        out.push_str(&format!("{} {}\n", v.name, fmt_value(x)));
    }
    out
}

fn fmt_value(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_model, plan_to_assignment, ModelMode};
    use super::*;
    use crate::net_model::{build_regular, RegularKind};
    use crate::power::{DeviceParams, Layer};
    use crate::routing::route_all;
    use crate::traffic::DemandMatrix;
    use std::collections::BTreeMap;

    fn tiny() -> (crate::net_model::Topology, DemandMatrix) {
        let t = build_regular(RegularKind::Line, 3, 80.0, None).unwrap();
        let mut entries = BTreeMap::new();
        for (s, d) in t.ordered_pairs() {
            entries.insert((s, d), 0.0);
        }
        entries.insert((1, 3), 40.0);
        entries.insert((3, 1), 40.0);
        (t, DemandMatrix::from_entries(3, &entries).unwrap())
    }

    #[test]
    fn export_is_deterministic() {
        let (t, dm) = tiny();
        let p = DeviceParams::table4();
        let ir = build_model(&t, &dm, &p, ModelMode::NcZeroPad, Layer::NonBypass).unwrap();
        let a = export_model_string(&ir);
        let b = export_model_string(&ir);
        assert_eq!(a, b);
        let rebuilt = build_model(&t, &dm, &p, ModelMode::NcZeroPad, Layer::NonBypass).unwrap();
        assert_eq!(a, export_model_string(&rebuilt));
        assert!(a.starts_with("\\ ncwdm_nc_zero_pad_3nodes\nMinimize\n"));
        assert!(a.ends_with("End\n"));
    }

    #[test]
    fn heuristic_assignment_verifies() {
        let (t, dm) = tiny();
        let p = DeviceParams::table4();
        let plan = route_all(&t, &dm).unwrap();
        for mode in [ModelMode::Conventional, ModelMode::NcZeroPad, ModelMode::NcPartition] {
            let ir = build_model(&t, &dm, &p, mode, Layer::NonBypass).unwrap();
            let values = plan_to_assignment(&ir, &t, &dm, &plan, &p, mode);
            let text = solution_text(&ir, &values);
            let report = import_solution_str(&ir, &text).unwrap();
            assert!(report.reported_objective.is_some());
        }
    }

    #[test]
    fn corrupt_binary_is_reported() {
        let (t, dm) = tiny();
        let p = DeviceParams::table4();
        let plan = route_all(&t, &dm).unwrap();
        let ir = build_model(&t, &dm, &p, ModelMode::NcZeroPad, Layer::NonBypass).unwrap();
        let mut values = plan_to_assignment(&ir, &t, &dm, &plan, &p, ModelMode::NcZeroPad);
        let idx = ir.index_of("b_1_3_1_2").unwrap();
        values[idx] = 0.5;
        let text = solution_text(&ir, &values);
        let err = import_solution_str(&ir, &text).unwrap_err();
        assert!(err.to_string().contains("integrality"), "{err}");
    }

    #[test]
    fn objective_mismatch_is_reported() {
        let (t, dm) = tiny();
        let p = DeviceParams::table4();
        let plan = route_all(&t, &dm).unwrap();
        let ir = build_model(&t, &dm, &p, ModelMode::Conventional, Layer::NonBypass).unwrap();
        let values = plan_to_assignment(&ir, &t, &dm, &plan, &p, ModelMode::Conventional);
        let text = solution_text(&ir, &values);
        let body: String = text.lines().skip(1).collect::<Vec<_>>().join("\n");
        let corrupted = format!("# objective 12345\n{body}\n");
        let err = import_solution_str(&ir, &corrupted).unwrap_err();
        assert!(err.to_string().contains("objective mismatch"), "{err}");
    }

    #[test]
    fn missing_variable_is_reported() {
        let (t, dm) = tiny();
        let p = DeviceParams::table4();
        let ir = build_model(&t, &dm, &p, ModelMode::Conventional, Layer::NonBypass).unwrap();
        let err = import_solution_str(&ir, "wl_1_2 40\n").unwrap_err();
        assert!(err.to_string().contains("missing variable"), "{err}");
    }

    #[test]
    fn export_matches_golden_file() {
        let (t, dm) = tiny();
        let p = DeviceParams::table4();
        let ir = build_model(&t, &dm, &p, ModelMode::NcZeroPad, Layer::NonBypass).unwrap();
        let golden = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden/line3_nc_zero_pad.lp");
        let expect = std::fs::read_to_string(golden).unwrap();
        assert_eq!(export_model_string(&ir), expect);
    }

    #[test]
    fn zero_demands_leave_constant_objective() {
        let t = build_regular(RegularKind::Line, 3, 80.0, None).unwrap();
        let dm = crate::traffic::equal_matrix(3, 0.0);
        let p = DeviceParams::table4();
        let ir = build_model(&t, &dm, &p, ModelMode::NcZeroPad, Layer::NonBypass).unwrap();
        let plan = route_all(&t, &dm).unwrap();
        let values = plan_to_assignment(&ir, &t, &dm, &plan, &p, ModelMode::NcZeroPad);
        let objective = ir.recompute_objective(&values);
        let constant = 3.0 * (p.switch_w + p.mux_w);
        assert!((objective - constant).abs() < 1e-9);
    }

    #[test]
    fn parser_tolerates_solver_noise() {
        let text = "Problem status: optimal\n# Objective value = 42.5\nx_1 = 3\n\n junk line\nwl_1_2\t7.25\n";
        let (pairs, obj) = parse_solution_text(text);
        assert_eq!(obj, Some(42.5));
        assert!(pairs.contains(&("x_1".to_string(), 3.0)));
        assert!(pairs.contains(&("wl_1_2".to_string(), 7.25)));
    }
}
