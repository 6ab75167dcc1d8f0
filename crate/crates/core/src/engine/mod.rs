//! Orchestration: reduction planning on tables, symbolic replay with
//! per-step cross-validation, script inversion, versal additions and
//! parameter limits, and the order-drop criterion for Euler transforms.

mod confluence;
mod order_drop;
mod script;

pub use confluence::{deconfluence, limit_at, versal_ad, versal_kernel, Deconfluence, FuchsianStep, VersalSpec};
pub use order_drop::{order_drop_iff, OrderDrop};
pub use script::{parse_script, render_script, ScriptFile};

use crate::datum::{
    rigidity_index, t_add, t_add_at, t_euler, t_euler_at, BlockOwner, FinalShape, LocalDatumTable,
};
use crate::error::{Error, Result};
use crate::expr::render_scalar;
use crate::lattice::{alpha_of, classify, render_dynkin, Classification};
use crate::local::local_datum;
use crate::scalar::{ParamRat, UPoly};
use crate::weyl::{equiv, rad_power, reduced_rep, twisted_euler, TwistSpec, WeylOperator};

/// One move of a reduction.
#[derive(Clone, PartialEq, Debug)]
pub enum StepKind {
    /// Addition `(x - point)^f` at the regular row `row` of the current table.
    Add { row: usize, point: ParamRat, f: ParamRat },
    /// Addition at a point given by value, possibly not yet singular.
    AddAt { point: ParamRat, f: ParamRat },
    /// Twisted Euler transform with parameter `nu - 1` at block `block` of
    /// leg `leg` in class `class`.
    Euler { class: usize, leg: usize, block: usize, alpha: ParamRat, beta: ParamRat, nu: ParamRat },
    /// Twisted Euler transform with parameter `nu - 1` at `e^{α/2 x² + βx}`,
    /// the block being located by value or treated as empty.
    EulerAt { alpha: ParamRat, beta: ParamRat, nu: ParamRat },
    /// Reordering of blocks; no effect on the operator.
    Permute { owner: BlockOwner, order: Vec<usize> },
    /// The final transform `E(α/2 x²; β, ν)` to `(∂ - αx - β)^n`.
    TerminalCollapse { alpha: ParamRat, beta: ParamRat, nu: ParamRat, n: usize },
}

#[derive(Clone, PartialEq, Debug)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// Table predicted by the combinatorial laws, when they apply.
    pub predicted_table: Option<LocalDatumTable>,
    pub predicted_order: usize,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ReductionScript {
    pub initial_table: LocalDatumTable,
    pub steps: Vec<ReductionStep>,
    /// `(α, β, n)` of the trivial form reached by the collapse.
    pub final_form: Option<(ParamRat, ParamRat, usize)>,
}

impl ReductionScript {
    pub fn euler_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.kind, StepKind::Euler { .. } | StepKind::EulerAt { .. })).count()
    }

    /// The last predicted table before the terminal collapse.
    pub fn final_table(&self) -> &LocalDatumTable {
        self.steps
            .iter()
            .rev()
            .filter(|s| !matches!(s.kind, StepKind::TerminalCollapse { .. }))
            .find_map(|s| s.predicted_table.as_ref())
            .unwrap_or(&self.initial_table)
    }
}

/// `(∂ - αx - β)^n`.
pub fn trivial_power(alpha: &ParamRat, beta: &ParamRat, n: usize) -> WeylOperator {
    let base = WeylOperator::new(vec![UPoly::new(vec![-beta, -alpha]), UPoly::one()]);
    let mut acc = WeylOperator::one();
    for _ in 0..n {
        acc = &acc * &base;
    }
    acc
}

/// Table of `(∂ - αx - β)^n`: one leg with the block `[1-n]_n`.
pub fn trivial_power_table(alpha: &ParamRat, beta: &ParamRat, n: usize) -> LocalDatumTable {
    let mut t = LocalDatumTable::trivial(alpha.clone(), beta.clone());
    t.order = n;
    let b = &mut t.classes[0].legs[0].exponents.blocks[0];
    b.mult = n;
    b.value = ParamRat::int(1 - n as i64);
    t
}

fn certificate(t: &LocalDatumTable) -> String {
    let (form, a) = alpha_of(t);
    let (reached, steps) = match classify(&form, &a) {
        Classification::ImaginaryRoot { certificate, steps } => (certificate, steps),
        Classification::NotRootLike { reached, steps } => (reached, steps),
        Classification::VMember { reached, steps } => (reached, steps),
        Classification::RealOrbit { steps, simple } => (crate::lattice::RootVector::basis(simple), steps),
    };
    let path: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
    format!(
        "alpha_P = {}; after reflections [{}]: {} with (a, v) <= 0 for every simple root v\n{}",
        a,
        path.join(", "),
        reached,
        render_dynkin(&form, &reached)
    )
}

/// Best twisted Euler move: maximal `n^{ij}_k + n^i_j - N_i`, ties broken
/// by the smallest `(class, leg, block)`.
fn best_euler(t: &LocalDatumTable) -> Option<(i64, usize, usize, usize)> {
    let mut best: Option<(i64, usize, usize, usize)> = None;
    for (i, c) in t.classes.iter().enumerate() {
        let n_cap = t.n_cap(i) as i64;
        for (j, l) in c.legs.iter().enumerate() {
            for (k, b) in l.exponents.blocks.iter().enumerate() {
                let gain = b.mult as i64 + l.mult() as i64 - n_cap;
                if gain > 0 && best.is_none_or(|(g, ..)| gain > g) {
                    best = Some((gain, i, j, k));
                }
            }
        }
    }
    best
}

/// Best addition: the row whose largest non-zero block most exceeds its
/// zero block.
fn best_add(t: &LocalDatumTable) -> Option<(i64, usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for (r, row) in t.rows.iter().enumerate() {
        let z = row.exponents.zero_mult() as i64;
        for (k, b) in row.exponents.nonzero_blocks().enumerate() {
            let gain = b.mult as i64 - z;
            if gain > 0 && best.is_none_or(|(g, ..)| gain > g) {
                best = Some((gain, r, k));
            }
        }
    }
    best
}

fn front_permutation(len: usize, k: usize) -> Vec<usize> {
    std::iter::once(k).chain((0..len).filter(|&i| i != k)).collect()
}

/// Plans a reduction of a table with positive rigidity index by greedy
/// height descent: the Euler move lowering the order most, otherwise the
/// addition making the largest block the zero block, until the table has
/// the collapsible shape.
pub fn plan_reduction(t: &LocalDatumTable) -> Result<ReductionScript> {
    let idx = rigidity_index(t);
    if idx <= 0 {
        return Err(Error::NotRigid { index: idx, certificate: certificate(t) });
    }
    let (_, alpha) = alpha_of(t);
    let bound = alpha.height() as usize + 1;
    let mut cur = t.clone();
    let mut steps = Vec::new();
    let mut eulers = 0;
    loop {
        if let Some(FinalShape { alpha, beta, nu, n }) = cur.is_final() {
            if cur.rows.is_empty() && n == 1 {
                // Already `∂ - αx - β`; an Euler transform would annihilate it.
                return Ok(ReductionScript { initial_table: t.clone(), steps, final_form: Some((alpha, beta, 1)) });
            }
            let table = trivial_power_table(&alpha, &beta, n);
            steps.push(ReductionStep {
                kind: StepKind::TerminalCollapse { alpha: alpha.clone(), beta: beta.clone(), nu, n },
                predicted_table: Some(table),
                predicted_order: n,
            });
            return Ok(ReductionScript { initial_table: t.clone(), steps, final_form: Some((alpha, beta, n)) });
        }
        if eulers > bound {
            return Err(Error::Precondition(format!("reduction exceeded {} Euler steps", bound)));
        }
        if let Some((_, i, j, k)) = best_euler(&cur) {
            if k != 0 {
                let len = cur.classes[i].legs[j].exponents.blocks.len();
                let owner = BlockOwner::Leg { class: i, leg: j };
                let order = front_permutation(len, k);
                cur = cur.permute(owner, &order)?;
                steps.push(ReductionStep {
                    kind: StepKind::Permute { owner, order },
                    predicted_table: Some(cur.clone()),
                    predicted_order: cur.order,
                });
            }
            let c = &cur.classes[i];
            let l = &c.legs[j];
            let kind = StepKind::Euler {
                class: i,
                leg: j,
                block: 0,
                alpha: c.alpha.clone(),
                beta: l.beta.clone(),
                nu: l.exponents.blocks[0].value.clone(),
            };
            let (next, order) = t_euler(&cur, i, j, 0)?;
            cur = next;
            eulers += 1;
            steps.push(ReductionStep { kind, predicted_table: Some(cur.clone()), predicted_order: order });
            continue;
        }
        if let Some((_, r, k)) = best_add(&cur) {
            if k != 0 {
                let len = cur.rows[r].exponents.nonzero_blocks().count();
                let owner = BlockOwner::Row(r);
                let order = front_permutation(len, k);
                cur = cur.permute(owner, &order)?;
                steps.push(ReductionStep {
                    kind: StepKind::Permute { owner, order },
                    predicted_table: Some(cur.clone()),
                    predicted_order: cur.order,
                });
            }
            let row = &cur.rows[r];
            let mu = row.exponents.nonzero_blocks().next().unwrap().value.clone();
            let kind = StepKind::Add { row: r, point: row.point.clone(), f: -&mu };
            cur = t_add(&cur, r, &-&mu)?;
            steps.push(ReductionStep { kind, predicted_table: Some(cur.clone()), predicted_order: cur.order });
            continue;
        }
        return Err(Error::Precondition(format!(
            "no reflection lowers the height of the table\n{}",
            certificate(&cur)
        )));
    }
}

/// Applies one step to an operator.
pub fn apply_step(p: &WeylOperator, kind: &StepKind) -> Result<WeylOperator> {
    match kind {
        StepKind::Add { point, f, .. } | StepKind::AddAt { point, f } => rad_power(point, f, p),
        StepKind::Euler { alpha, beta, nu, .. } | StepKind::EulerAt { alpha, beta, nu } => twisted_euler(
            &TwistSpec::new(alpha.clone(), ParamRat::zero()),
            &[(beta.clone(), nu - &ParamRat::one())],
            p,
        ),
        StepKind::Permute { .. } => reduced_rep(p),
        StepKind::TerminalCollapse { alpha, beta, nu, .. } => {
            twisted_euler(&TwistSpec::new(alpha.clone(), ParamRat::zero()), &[(beta.clone(), nu.clone())], p)
        }
    }
}

/// Table law of one step; `None` when no law applies.
pub fn predict_step(t: &LocalDatumTable, kind: &StepKind) -> Result<Option<(LocalDatumTable, usize)>> {
    Ok(Some(match kind {
        StepKind::Add { row, f, .. } => {
            let next = t_add(t, *row, f)?;
            let n = next.order;
            (next, n)
        }
        StepKind::AddAt { point, f } => {
            let next = t_add_at(t, point, f)?;
            let n = next.order;
            (next, n)
        }
        StepKind::Euler { class, leg, block, .. } => t_euler(t, *class, *leg, *block)?,
        StepKind::EulerAt { alpha, beta, nu } => match t_euler_at(t, alpha, beta, nu) {
            Ok(r) => r,
            Err(Error::Degenerate) | Err(Error::Precondition(_)) => return Ok(None),
            Err(e) => return Err(e),
        },
        StepKind::Permute { owner, order } => (t.permute(*owner, order)?, t.order),
        StepKind::TerminalCollapse { alpha, beta, n, .. } => (trivial_power_table(alpha, beta, *n), *n),
    }))
}

/// Result of a symbolic replay.
#[derive(Clone, PartialEq, Debug)]
pub struct Replay {
    /// The operator before each step, then the final operator.
    pub trace: Vec<WeylOperator>,
}

impl Replay {
    pub fn last(&self) -> &WeylOperator {
        self.trace.last().unwrap()
    }
}

fn describe(kind: &StepKind) -> String {
    match kind {
        StepKind::Add { row, f, .. } => format!("add {} {}", row + 1, render_scalar(f)),
        StepKind::AddAt { point, f } => format!("add-at {} {}", render_scalar(point), render_scalar(f)),
        StepKind::Euler { class, leg, block, nu, .. } => {
            format!("euler {} {} {} {}", class + 1, leg + 1, block + 1, render_scalar(nu))
        }
        StepKind::EulerAt { alpha, beta, nu } => {
            format!("euler-at {} {} {}", render_scalar(alpha), render_scalar(beta), render_scalar(nu))
        }
        StepKind::Permute { .. } => "permute".into(),
        StepKind::TerminalCollapse { .. } => "collapse".into(),
    }
}

/// Replays a script on `p`, comparing the table of every result with the
/// predicted table, and checking the collapse against `(∂ - αx - β)^n`.
pub fn replay(p: &WeylOperator, s: &ReductionScript) -> Result<Replay> {
    let mut cur = reduced_rep(p)?;
    let start = local_datum(&cur)?;
    if !start.same_datum(&s.initial_table) {
        return Err(Error::CrossValidationFailure { step: 0, detail: "initial table differs from the operator's table".into() });
    }
    let mut trace = vec![cur.clone()];
    for (idx, step) in s.steps.iter().enumerate() {
        let next = apply_step(&cur, &step.kind)?;
        let step_no = idx + 1;
        if step.predicted_table.is_some() && next.order() != step.predicted_order {
            return Err(Error::CrossValidationFailure {
                step: step_no,
                detail: format!("{}: order {} but {} predicted", describe(&step.kind), next.order(), step.predicted_order),
            });
        }
        match &step.kind {
            StepKind::TerminalCollapse { alpha, beta, n, .. } => {
                if !equiv(&next, &trivial_power(alpha, beta, *n))? {
                    return Err(Error::CrossValidationFailure {
                        step: step_no,
                        detail: "collapse did not reach the trivial form".into(),
                    });
                }
            }
            StepKind::Permute { .. } => {}
            _ => {
                if let Some(predicted) = &step.predicted_table {
                    let observed = local_datum(&next)?;
                    if !observed.same_datum(predicted) {
                        return Err(Error::CrossValidationFailure {
                            step: step_no,
                            detail: format!(
                                "{}: observed table\n{}predicted table\n{}",
                                describe(&step.kind),
                                crate::datum::render_table(&observed.canonical()),
                                crate::datum::render_table(&predicted.canonical())
                            ),
                        });
                    }
                }
            }
        }
        cur = next;
        trace.push(cur.clone());
    }
    Ok(Replay { trace })
}

/// Plans and replays the reduction of `p`.
pub fn reduce(p: &WeylOperator) -> Result<(ReductionScript, Replay)> {
    let r = reduced_rep(p)?;
    let table = local_datum(&r)?;
    let script = plan_reduction(&table)?;
    let run = replay(&r, &script)?;
    Ok((script, run))
}

/// Inverse script: steps reversed with inverse parameters, starting from the
/// table before the terminal collapse (the collapse loses the regular rows
/// and has no inverse).
pub fn invert_script(s: &ReductionScript) -> Result<ReductionScript> {
    let start = s.final_table().clone();
    let mut kinds = Vec::new();
    let mut tables = vec![s.initial_table.clone()];
    for step in &s.steps {
        if let Some(t) = &step.predicted_table {
            tables.push(t.clone());
        }
    }
    for step in s.steps.iter().rev() {
        let inv = match &step.kind {
            StepKind::TerminalCollapse { .. } => continue,
            StepKind::Add { point, f, .. } | StepKind::AddAt { point, f } => StepKind::AddAt { point: point.clone(), f: -f },
            StepKind::Euler { alpha, beta, nu, .. } | StepKind::EulerAt { alpha, beta, nu } => StepKind::EulerAt {
                alpha: alpha.clone(),
                beta: beta.clone(),
                nu: &ParamRat::int(2) - nu,
            },
            StepKind::Permute { owner, order } => {
                let mut inv = vec![0; order.len()];
                for (new, &old) in order.iter().enumerate() {
                    inv[old] = new;
                }
                StepKind::Permute { owner: *owner, order: inv }
            }
        };
        kinds.push(inv);
    }
    let mut cur = start.clone();
    let mut steps = Vec::new();
    for kind in kinds {
        let pred = predict_step(&cur, &kind).ok().flatten();
        let (table, order) = match pred {
            Some((t, o)) => (Some(t), o),
            None => return Err(Error::RoundTripFailure(format!("no table law for inverse step {}", describe(&kind)))),
        };
        cur = table.clone().unwrap();
        steps.push(ReductionStep { kind, predicted_table: table, predicted_order: order });
    }
    Ok(ReductionScript { initial_table: start, steps, final_form: None })
}

/// Replays the inverse of `s` from the operator before the collapse and
/// checks that the original operator is recovered.
pub fn round_trip(original: &WeylOperator, s: &ReductionScript, run: &Replay) -> Result<WeylOperator> {
    let inv = invert_script(s)?;
    let collapse = s.steps.iter().any(|st| matches!(st.kind, StepKind::TerminalCollapse { .. }));
    let pre = if collapse { &run.trace[run.trace.len() - 2] } else { run.last() };
    let back = replay(pre, &inv).map_err(|e| Error::RoundTripFailure(e.to_string()))?;
    let result = back.last().clone();
    if !equiv(&result, original)? {
        return Err(Error::RoundTripFailure("inverse replay does not return the original operator".into()));
    }
    Ok(result)
}
