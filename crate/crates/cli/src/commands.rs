use linkgate_core::alexander::{fox_matrix, h1_rank, symmetry_holds, torsion_alexander};
use linkgate_core::budget::Budget;
use linkgate_core::covers::{admissible_homs, cover_h1, CoversError};
use linkgate_core::laurent::LaurentPoly;
use linkgate_core::linalg::IntMatrix;
use linkgate_core::link::LinkDiagram;
use linkgate_core::linkforms::{metabolizers, FiniteLinkingForm, LinkformError, Subgroup};
use linkgate_core::obstruction::{
    hopf_test, hopf_test_poly, pair_test, HopfReport, NormVerdict, ObstructionError, PairVerdict,
};
use linkgate_core::presentation::{abelianize, describe_invariants, glue_ml, wirtinger, PresentationError};
use linkgate_core::twisted::random_suite;
use serde_json::{json, Value};

use crate::input::{Resolved, Source};
use crate::CliError;

/// Command output: human-readable lines plus the JSON `results` object.
pub struct Outcome {
    pub lines: Vec<String>,
    pub results: Value,
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Budget(b) => CliError::Budget(b.0),
            ObstructionError::Precondition(s) => CliError::Precondition(s),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<LinkformError> for CliError {
    fn from(e: LinkformError) -> Self {
        match e {
            LinkformError::Budget(b) => CliError::Budget(b.0),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<CoversError> for CliError {
    fn from(e: CoversError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::Precondition(s) => CliError::Precondition(s),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

struct AbelianData {
    rank: usize,
    delta: LaurentPoly,
}

fn abelian(d: &LinkDiagram, budget: &Budget) -> Result<AbelianData, CliError> {
    let w = wirtinger(d);
    let j = fox_matrix(&w.presentation, &w.meridian_map);
    let delta = torsion_alexander(&j, budget).map_err(ObstructionError::from)?;
    Ok(AbelianData { rank: h1_rank(&j), delta })
}

pub fn alex(src: &Source, budget: &Budget) -> Result<Outcome, CliError> {
    let d = src.link()?;
    let a = abelian(&d, budget)?;
    let lk = d.linking_matrix();
    let sym = symmetry_holds(&a.delta);
    let lines = vec![
        format!("link: {}", src.label()),
        format!("components: {}", d.num_components()),
        format!("linking matrix: {lk}"),
        format!("h1_rank: {}", a.rank),
        format!("torsion_alexander: {}", a.delta),
        format!("symmetric: {sym}"),
    ];
    let results = json!({
        "components": d.num_components(),
        "linking_matrix": matrix_json(&lk),
        "h1_rank": a.rank,
        "torsion_alexander": a.delta.to_string(),
        "symmetric": sym,
    });
    Ok(Outcome { lines, results })
}

fn hopf_lines(label: &str, r: &HopfReport) -> Vec<String> {
    let n = &r.necessary;
    let rank = r.rank.map_or("n/a".to_string(), |k| k.to_string());
    let norm = match &r.norm {
        NormVerdict::Yes(f) => format!("{} (witness {f})", r.norm.status()),
        NormVerdict::No(why) | NormVerdict::Unknown(why) => format!("{}: {why}", r.norm.status()),
    };
    vec![
        format!("link: {label}"),
        format!("rank: {rank}"),
        format!("torsion_poly: {}", r.torsion_poly),
        format!("norm: {norm}"),
        format!(
            "checks: value at 1 = {} (unit: {}), value at -1 = {} (square: {}), symmetric: {}",
            n.value_at_ones, n.unit_at_ones, n.value_at_minus_ones, n.square_at_minus_ones, n.symmetric
        ),
        format!("verdict: {}", r.verdict),
    ]
}

pub fn hopf(src: &Source, budget: &Budget) -> Result<Outcome, CliError> {
    let report = match src.resolve()? {
        Resolved::Link(d) => hopf_test(&d, budget)?,
        Resolved::Poly(p) => hopf_test_poly(&p, None, budget)?,
    };
    let n = &report.necessary;
    let results = json!({
        "link": src.label(),
        "rank": report.rank,
        "torsion_poly": report.torsion_poly.to_string(),
        "norm_status": report.norm.status(),
        "witness": report.norm.witness().map(|f| f.to_string()),
        "norm_reason": match &report.norm {
            NormVerdict::No(why) | NormVerdict::Unknown(why) => Some(why.clone()),
            NormVerdict::Yes(_) => None,
        },
        "checks": {
            "value_at_ones": n.value_at_ones.to_string(),
            "unit_at_ones": n.unit_at_ones,
            "value_at_minus_ones": n.value_at_minus_ones.to_string(),
            "square_at_minus_ones": n.square_at_minus_ones,
            "symmetric": n.symmetric,
        },
        "verdict": report.verdict.to_string(),
    });
    Ok(Outcome { lines: hopf_lines(&src.label(), &report), results })
}

pub fn pair(a: &Source, b: &Source, budget: &Budget) -> Result<Outcome, CliError> {
    let side = |s: &Source| -> Result<(Option<usize>, LaurentPoly), CliError> {
        match s.resolve()? {
            Resolved::Link(d) => {
                let x = abelian(&d, budget)?;
                Ok((Some(x.rank), x.delta))
            }
            Resolved::Poly(p) => Ok((None, p)),
        }
    };
    let (r0, d0) = side(a)?;
    let (r1, d1) = side(b)?;
    let nv = d0.nvars().max(d1.nvars());
    let (d0, d1) = (d0.extend_vars(nv), d1.extend_vars(nv));
    let rank_ok = match (r0, r1) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    };
    let verdict = pair_test(&d0, &d1, budget)?;
    let norm = match &verdict {
        PairVerdict::Yes { f0, f1 } => format!("pass (f0 = {f0}, f1 = {f1})"),
        PairVerdict::No(r) => format!("fail: {r}"),
        PairVerdict::Unknown(r) => format!("unknown: {r}"),
    };
    let overall = if !rank_ok {
        "fail"
    } else {
        match verdict {
            PairVerdict::Yes { .. } => "pass",
            PairVerdict::No(_) => "fail",
            PairVerdict::Unknown(_) => "unknown",
        }
    };
    let show_rank = |r: Option<usize>| r.map_or("n/a".to_string(), |k| k.to_string());
    let lines = vec![
        format!("first: {} (rank {}, torsion_poly {d0})", a.label(), show_rank(r0)),
        format!("second: {} (rank {}, torsion_poly {d1})", b.label(), show_rank(r1)),
        if r0.is_none() || r1.is_none() {
            "rank check: skipped (polynomial input)".to_string()
        } else if rank_ok {
            "rank check: pass".to_string()
        } else {
            format!("rank check: fail ({} != {})", show_rank(r0), show_rank(r1))
        },
        format!("norm check: {norm}"),
        format!("verdict: {overall}"),
    ];
    let (f0, f1) = match &verdict {
        PairVerdict::Yes { f0, f1 } => (Some(f0.to_string()), Some(f1.to_string())),
        _ => (None, None),
    };
    let reason = match &verdict {
        PairVerdict::No(r) | PairVerdict::Unknown(r) => Some(r.clone()),
        PairVerdict::Yes { .. } => None,
    };
    let results = json!({
        "ranks": [r0, r1],
        "torsion_polys": [d0.to_string(), d1.to_string()],
        "rank_check": rank_ok,
        "norm_status": verdict.status(),
        "norm_reason": reason,
        "f0": f0,
        "f1": f1,
        "verdict": overall,
    });
    Ok(Outcome { lines, results })
}

pub fn covers(src: &Source, p: u64, i: u32, j: u32) -> Result<Outcome, CliError> {
    let d = src.link()?;
    if d.num_components() != 2 {
        return Err(CliError::Precondition(format!("needs a 2-component link, got {}", d.num_components())));
    }
    let ml = glue_ml(&wirtinger(&d), d.linking_number(0, 1))?;
    let h1 = abelianize(&ml.presentation).describe();
    let homs = admissible_homs(&ml.presentation, [&ml.meridians[0], &ml.meridians[1]], p, i, j)?;
    let dj = p.pow(j);
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for (k, c) in homs.iter().enumerate() {
        let (a, b) = (k as u64 / dj, k as u64 % dj);
        let h = describe_invariants(&cover_h1(c));
        lines.push(format!("cover {}/{} e3 -> ({a}, {b}): {h}", k + 1, homs.len()));
        rows.push(json!({ "e3_image": [a, b], "h1": h }));
    }
    let results = json!({ "p": p, "i": i, "j": j, "h1_ml": h1, "covers": rows });
    Ok(Outcome { lines, results })
}

fn element_text(x: &[u64]) -> String {
    if x.len() == 1 {
        x[0].to_string()
    } else {
        format!("({})", x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))
    }
}

fn subgroup_text(s: &Subgroup) -> String {
    format!("⟨{}⟩", s.generators().iter().map(|g| element_text(g)).collect::<Vec<_>>().join(", "))
}

pub fn metabolizers_cmd(form: &str, budget: &Budget) -> Result<Outcome, CliError> {
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(form).map_err(|e| CliError::Parse(format!("form must be a JSON integer matrix: {e}")))?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse("form matrix must be square".into()));
    }
    let f = FiniteLinkingForm::from_presentation(&IntMatrix::from_rows(n, &rows))?;
    let ms = metabolizers(&f, budget)?;
    let group: Vec<String> = f.group().iter().map(|d| format!("Z/{d}")).collect();
    let group = if group.is_empty() { "0".to_string() } else { group.join(" + ") };
    let gram: Vec<Vec<String>> = f.gram().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let mut lines = vec![format!("group: {group}"), format!("metabolizers: {}", ms.len())];
    lines.extend(ms.iter().map(subgroup_text));
    let results = json!({
        "group": f.group(),
        "gram": gram,
        "metabolizers": ms.iter().map(|s| s.generators().to_vec()).collect::<Vec<_>>(),
    });
    Ok(Outcome { lines, results })
}

pub fn check_thm23(count: usize, seed: u64) -> Outcome {
    let runs = random_suite(count, seed);
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut ok = 0;
    for (k, (inst, r)) in runs.iter().enumerate() {
        let a = inst.rep.alpha;
        ok += usize::from(r.holds);
        lines.push(format!(
            "#{} p={} q={} l={} cycles={}: {} <= {} {}",
            k + 1,
            inst.rep.index,
            inst.q,
            a.l,
            inst.cycles.len(),
            r.left,
            r.right,
            if r.holds { "holds" } else { "FAILS" }
        ));
        rows.push(json!({
            "p": inst.rep.index, "q": inst.q, "l": a.l, "exponent": a.exponent,
            "cycles": inst.cycles.len(), "left": r.left, "right": r.right, "holds": r.holds,
        }));
    }
    lines.push(format!("{ok}/{count} hold"));
    Outcome { lines, results: json!({ "seed": seed, "count": count, "holding": ok, "instances": rows }) }
}
