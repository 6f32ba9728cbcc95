//! The built-in claim-verification suite behind `verify-paper`.
//!
//! A fixed list of checks, each with a stable identifier, a one-line claim,
//! a boolean outcome, and structured evidence. Runs are deterministic for a
//! given seed, and the JSON rendering contains no timing data so that two
//! identical runs produce byte-identical reports.

use crate::bridge::{verify_theorem2, Theorem2Outcome};
use crate::ef::{
    count_inequalities, is_degenerate_ef, is_ef_exists, is_ef_linear_map, lift_feasible,
    CountConvention, RowCount,
};
use crate::error::Result;
use crate::fixtures;
use crate::fm::fourier_motzkin;
use crate::gen::{random_bridge_instance, rng_from_seed};
use crate::poly::{polyhedra_equal, HPolyhedron, LinRow, Polyhedron, Rel};
use crate::rat::{ivec, Rat};
use crate::tsp;
use serde_json::{json, Value};
use std::time::{Duration, Instant};

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub check_id: String,
    pub claim: String,
    pub holds: bool,
    pub details: Value,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub n_max: usize,
    pub only: Option<Vec<String>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            n_max: 6,
            only: None,
        }
    }
}

/// Identifiers of all checks for the given options, in report order.
pub fn check_ids(opts: &VerifyOptions) -> Vec<String> {
    let mut ids: Vec<String> = vec![
        "DEGEN".into(),
        "REF1a".into(),
        "REF1b".into(),
        "REF1c".into(),
        "REF2".into(),
        "REF3".into(),
    ];
    for n in 3..=opts.n_max {
        ids.push(format!("THM1-n{n}"));
    }
    ids.push("THM2-random".into());
    ids.sort();
    ids
}

/// Ceiling on a single check before it is abandoned and reported as failed.
const CHECK_TIMEOUT: Duration = Duration::from_secs(600);

/// Run the suite (or the `only` subset), ordered by check id. Each check
/// runs under a watchdog: exceeding the time budget is reported as a failed
/// check, never as a hang.
pub fn run_verify(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let ids = check_ids(opts);
    let selected: Vec<String> = match &opts.only {
        Some(list) => ids.iter().filter(|id| list.contains(id)).cloned().collect(),
        None => ids,
    };
    let mut results = Vec::with_capacity(selected.len());
    for id in selected {
        let start = Instant::now();
        let (tx, rx) = std::sync::mpsc::channel();
        let thread_id = id.clone();
        let thread_opts = opts.clone();
        std::thread::spawn(move || {
            let _ = tx.send(run_one(&thread_id, &thread_opts));
        });
        let (holds, details) = match rx.recv_timeout(CHECK_TIMEOUT) {
            Ok(outcome) => outcome?,
            Err(_) => (
                false,
                json!({
                    "error":
                        format!("check exceeded the {}s time budget", CHECK_TIMEOUT.as_secs()),
                }),
            ),
        };
        results.push(CheckResult {
            claim: claim_for(&id),
            check_id: id,
            holds,
            details,
            elapsed: start.elapsed(),
        });
    }
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(results)
}

pub fn all_hold(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.holds)
}

/// The one-line claim each check verifies.
fn claim_for(id: &str) -> String {
    if let Some(n) = id.strip_prefix("THM1-n") {
        let n: usize = n.parse().expect("ids are generated");
        return format!(
            "the visit-time assignment polytope for {n} cities has exactly {}! = {} vertices, \
             all 0/1 tour matrices, with exact round trips",
            n - 1,
            (1..n).product::<usize>()
        );
    }
    match id {
        "THM2-random" => {
            "two-step optimization through the derived affine bridge matches direct \
             optimization exactly, on the segment instance and on 50 random instances"
        }
        "REF1a" => {
            "a point can lift into the interval system without lying in the segment, so \
             lift-existence does not characterize segment membership"
        }
        "REF1b" => {
            "the image of the interval system under the fixed linear map equals the segment \
             exactly"
        }
        "REF1c" => {
            "the image-based and lift-based extension definitions disagree on the \
             interval/segment pair"
        }
        "REF2" => {
            "projecting the interval system onto the x-block yields the whole space, not the \
             segment, so the claimed membership equivalence is false"
        }
        "REF3" => {
            "the lifted system is an image-definition extension of the segment, yet its \
             minimal description has fewer inequalities under both counting conventions"
        }
        "DEGEN" => {
            "the minimal description of the lifted system never mentions the x-block, while \
             control systems with load-bearing x-rows are not degenerate"
        }
        other => unreachable!("unknown check id {other}"),
    }
    .to_string()
}

fn run_one(id: &str, opts: &VerifyOptions) -> Result<(bool, Value)> {
    if let Some(n) = id.strip_prefix("THM1-n") {
        let n: usize = n.parse().expect("ids are generated");
        return check_bijection(n);
    }
    match id {
        "THM2-random" => check_two_step(opts.seed),
        "REF1a" => check_biconditional_fails(),
        "REF1b" => check_image_equals_target(),
        "REF1c" => check_definitions_contradict(),
        "REF2" => check_projection_is_whole_space(),
        "REF3" => check_inequality_counts(),
        "DEGEN" => check_degenerate_detector(),
        other => unreachable!("unknown check id {other}"),
    }
}

fn check_bijection(n: usize) -> Result<(bool, Value)> {
    let report = tsp::verify_bijection(n)?;
    let holds = report.holds();
    Ok((holds, serde_json::to_value(&report).expect("report serializes")))
}

fn check_two_step(seed: u64) -> Result<(bool, Value)> {
    let mut failures: Vec<Value> = Vec::new();
    let mut verified = 0usize;

    let outcome = verify_theorem2(
        &fixtures::segment_p_hrep(),
        &fixtures::interval_y_hrep(),
        &fixtures::segment_graph(),
        &ivec(&[1, 0, 0]),
    )?;
    let segment_value = match &outcome {
        Theorem2Outcome::Verified { value, .. } => {
            verified += 1;
            Some(value.clone())
        }
        other => {
            failures.push(json!({ "instance": "segment", "outcome": format!("{other:?}") }));
            None
        }
    };
    let segment_ok = segment_value.as_ref() == Some(&Rat::from_int(8));

    let mut rng = rng_from_seed(seed);
    for k in 0..50 {
        let inst = random_bridge_instance(&mut rng, 5);
        let outcome = verify_theorem2(&inst.x_set, &inst.y_set, &inst.relation, &inst.objective)?;
        if outcome.verified() {
            verified += 1;
        } else {
            failures.push(json!({ "instance": k, "outcome": format!("{outcome:?}") }));
        }
    }
    let holds = verified == 51 && segment_ok;
    let details = json!({
        "instances": 51,
        "verified": verified,
        "segment_minimum_first_coordinate": segment_value,
        "failures": failures,
    });
    Ok((holds, details))
}

fn check_biconditional_fails() -> Result<(bool, Value)> {
    let q = fixtures::lifted_q_hrep();
    let p_h = fixtures::segment_p_hrep();
    let p = Polyhedron::V(fixtures::segment_p_vrep());
    let coords = fixtures::x_block();

    let verdict = is_ef_exists(&q, &p, &coords)?;
    let computed_witness = verdict.witness_point().map(|w| w.to_vec());
    let witness_separates = match &computed_witness {
        Some(w) => lift_feasible(&q, &coords, w)? != p.contains(w)?,
        None => false,
    };

    let pinned = fixtures::outside_witness();
    let pinned_lifts = lift_feasible(&q, &coords, &pinned)?;
    let equality_row = p_h
        .rows
        .iter()
        .find(|r| r.rel == Rel::Eq)
        .expect("the segment description carries its equality row");
    let pinned_violates_equality = !equality_row.satisfied_by(&pinned);
    let pinned_outside = !p_h.contains(&pinned)?;

    let holds = !verdict.holds
        && witness_separates
        && pinned_lifts
        && pinned_violates_equality
        && pinned_outside;
    let details = json!({
        "lift_definition_holds": verdict.holds,
        "computed_witness": computed_witness,
        "pinned_witness": pinned,
        "pinned_witness_lifts": pinned_lifts,
        "pinned_witness_violates_equality_row": pinned_violates_equality,
        "pinned_witness_in_segment": !pinned_outside,
    });
    Ok((holds, details))
}

fn check_image_equals_target() -> Result<(bool, Value)> {
    let q = Polyhedron::H(fixtures::lifted_q_hrep());
    let p = Polyhedron::V(fixtures::segment_p_vrep());
    let verdict = is_ef_linear_map(&q, &p, &fixtures::projection_map())?;
    let image = match q.generators() {
        crate::poly::Generators::NonEmpty(v) => {
            crate::ef::image_under_map(&fixtures::projection_map(), &v)?
        }
        crate::poly::Generators::Empty { .. } => unreachable!("the interval system is nonempty"),
    };
    let details = json!({
        "image_definition_holds": verdict.holds,
        "image_vertices": image.vertices,
    });
    Ok((verdict.holds, details))
}

fn check_definitions_contradict() -> Result<(bool, Value)> {
    let q_h = fixtures::lifted_q_hrep();
    let p = Polyhedron::V(fixtures::segment_p_vrep());
    let coords = fixtures::x_block();
    let exists = is_ef_exists(&q_h, &p, &coords)?;
    let map = is_ef_linear_map(&Polyhedron::H(q_h.clone()), &p, &fixtures::projection_map())?;
    let holds = map.holds && !exists.holds;
    let details = json!({
        "image_definition_holds": map.holds,
        "lift_definition_holds": exists.holds,
    });
    Ok((holds, details))
}

fn check_projection_is_whole_space() -> Result<(bool, Value)> {
    let q = fixtures::lifted_q_hrep();
    let proj = fourier_motzkin(&q, &fixtures::x_block())?;
    let is_space = polyhedra_equal(
        &Polyhedron::H(proj.clone()),
        &Polyhedron::H(HPolyhedron::space(3)),
    )?;
    let equals_segment = polyhedra_equal(
        &Polyhedron::H(proj.clone()),
        &Polyhedron::V(fixtures::segment_p_vrep()),
    )?;
    let holds = is_space && !equals_segment;
    let details = json!({
        "projection_rows": proj.rows.len(),
        "projection_is_whole_space": is_space,
        "projection_equals_segment": equals_segment,
    });
    Ok((holds, details))
}

fn counts_json(h: &HPolyhedron) -> Value {
    let total = match count_inequalities(h, CountConvention::EqAsTwo) {
        RowCount::Total(t) => t,
        RowCount::Split { .. } => unreachable!("convention fixes the variant"),
    };
    let (ineq, eq) = match count_inequalities(h, CountConvention::EqSeparate) {
        RowCount::Split {
            inequalities,
            equalities,
        } => (inequalities, equalities),
        RowCount::Total(_) => unreachable!("convention fixes the variant"),
    };
    json!({ "inequalities": ineq, "equalities": eq, "eq_as_two": total })
}

fn check_inequality_counts() -> Result<(bool, Value)> {
    let q_min = crate::poly::remove_redundancy(&fixtures::lifted_q_hrep())?;
    let p_paper = fixtures::segment_p_hrep();
    let p_min = crate::poly::remove_redundancy(&p_paper)?;
    let map_verdict = is_ef_linear_map(
        &Polyhedron::H(fixtures::lifted_q_hrep()),
        &Polyhedron::V(fixtures::segment_p_vrep()),
        &fixtures::projection_map(),
    )?;

    let q_ineq = q_min.rows.iter().filter(|r| r.rel == Rel::Le).count();
    let q_total = q_ineq + 2 * q_min.rows.iter().filter(|r| r.rel == Rel::Eq).count();
    let p_ineq = p_paper.rows.iter().filter(|r| r.rel == Rel::Le).count();
    let p_total = p_ineq + 2 * p_paper.rows.iter().filter(|r| r.rel == Rel::Eq).count();

    let holds = map_verdict.holds
        && q_total == 2
        && p_ineq == 8
        && p_total == 10
        && q_ineq < p_ineq
        && q_total < p_total;
    let details = json!({
        "image_definition_holds": map_verdict.holds,
        "minimal_lifted_system": counts_json(&q_min),
        "segment_nine_row_description": counts_json(&p_paper),
        "minimal_segment_description": counts_json(&p_min),
        "separate_comparison": format!("{q_ineq} < {p_ineq}"),
        "eq_as_two_comparison": format!("{q_total} < {p_total}"),
    });
    Ok((holds, details))
}

fn check_degenerate_detector() -> Result<(bool, Value)> {
    let q = fixtures::lifted_q_hrep();
    let q_degenerate = is_degenerate_ef(&q, &fixtures::x_block())?;

    let graph = HPolyhedron::new(
        2,
        vec![
            LinRow::eq(ivec(&[1, -1]), Rat::zero()),
            LinRow::le(ivec(&[0, -1]), Rat::zero()),
            LinRow::le(ivec(&[0, 1]), Rat::one()),
        ],
    )?;
    let graph_degenerate = is_degenerate_ef(&graph, &[0])?;

    let mixed = HPolyhedron::new(
        2,
        vec![
            LinRow::le(ivec(&[1, 0]), Rat::from_int(5)),
            LinRow::le(ivec(&[1, 0]), Rat::from_int(7)),
            LinRow::le(ivec(&[0, -1]), Rat::from_int(-2)),
            LinRow::le(ivec(&[0, 1]), Rat::from_int(3)),
        ],
    )?;
    let mixed_degenerate = is_degenerate_ef(&mixed, &[0])?;

    let holds = q_degenerate && !graph_degenerate && !mixed_degenerate;
    let details = json!({
        "interval_lift_degenerate": q_degenerate,
        "graph_control_degenerate": graph_degenerate,
        "surviving_x_row_control_degenerate": mixed_degenerate,
    });
    Ok((holds, details))
}

/// Check whether the standard and lift-based definitions agree on a pair;
/// used by the property suites.
pub fn definitions_agree(q: &HPolyhedron, p: &Polyhedron, x_coords: &[usize]) -> Result<bool> {
    let standard = crate::ef::is_ef_standard(q, p, x_coords)?;
    let exists = is_ef_exists(q, p, x_coords)?;
    Ok(standard.holds == exists.holds)
}

/// Human-readable report: one line per check plus a summary.
pub fn render_text(results: &[CheckResult]) -> String {
    let mut out = String::new();
    let id_width = results
        .iter()
        .map(|r| r.check_id.len())
        .max()
        .unwrap_or(0)
        .max(5);
    for r in results {
        out.push_str(&format!(
            "{} {:id_width$}  {}  ({:.1?})\n",
            if r.holds { "PASS" } else { "FAIL" },
            r.check_id,
            r.claim,
            r.elapsed,
        ));
    }
    let passed = results.iter().filter(|r| r.holds).count();
    out.push_str(&format!("result: {passed}/{} checks hold\n", results.len()));
    out
}

/// Machine-readable report. Deterministic for fixed options: no timing data,
/// sorted keys, checks ordered by id.
pub fn render_json(results: &[CheckResult], opts: &VerifyOptions) -> String {
    let checks: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "check_id": r.check_id,
                "claim": r.claim,
                "holds": r.holds,
                "details": r.details,
            })
        })
        .collect();
    let doc = json!({
        "command": "verify-paper",
        "seed": opts.seed,
        "n_max": opts.n_max,
        "all_hold": all_hold(results),
        "checks": checks,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}
