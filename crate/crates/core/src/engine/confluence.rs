//! Versal additions, parameter limits and the deconfluence of a reduction.

use crate::error::{Error, Result};
use crate::expr::render_scalar;
use crate::scalar::{ParamRat, Symbol, UPoly};
use crate::weyl::{adei, ade, equiv, euler, rad_power, reduced_rep, reduced_rep_localized, TwistSpec, WeylOperator, XRat};

use super::{ReductionScript, Replay, StepKind};

/// Parameters of `AdV(a_1, …, a_n; λ_1, …, λ_n)` with `n ≤ 2`.
#[derive(Clone, PartialEq, Debug)]
pub struct VersalSpec {
    pub a_params: Vec<Symbol>,
    pub lambdas: Vec<ParamRat>,
}

impl VersalSpec {
    /// A spec with freshly minted `a` parameters.
    pub fn fresh(lambdas: Vec<ParamRat>) -> VersalSpec {
        VersalSpec { a_params: lambdas.iter().map(|_| Symbol::fresh("a")).collect(), lambdas }
    }

    /// Same `a` parameters, negated `λ`: the inverse addition.
    pub fn inverse(&self) -> VersalSpec {
        VersalSpec { a_params: self.a_params.clone(), lambdas: self.lambdas.iter().map(|l| -l).collect() }
    }

    /// The twist reached at `a = 0`: `Ade(-(λ_2/2) x² - λ_1 x)`.
    pub fn limit_twist(&self) -> TwistSpec {
        let l1 = self.lambdas.first().cloned().unwrap_or_else(ParamRat::zero);
        let l2 = self.lambdas.get(1).cloned().unwrap_or_else(ParamRat::zero);
        TwistSpec::new(-&l2, -&l1)
    }

    /// The spec whose limit is `Ade(α/2 x² + βx)`; `None` when that twist is trivial.
    pub fn for_twist(alpha: &ParamRat, beta: &ParamRat) -> Option<VersalSpec> {
        if alpha.is_zero() && beta.is_zero() {
            None
        } else if alpha.is_zero() {
            Some(VersalSpec::fresh(vec![-beta]))
        } else {
            Some(VersalSpec::fresh(vec![-beta, -alpha]))
        }
    }
}

/// The kernel `λ_1/(1 - a_1 x)` or
/// `λ_1/(1 - a_1 x) + λ_2 x/((1 - a_1 x)(1 - a_2 x))`.
pub fn versal_kernel(v: &VersalSpec) -> Result<XRat> {
    let n = v.lambdas.len();
    if n == 0 || n > 2 || v.a_params.len() != n {
        return Err(Error::Precondition(format!(
            "versal addition takes one or two (a, λ) pairs, got {} and {}",
            v.a_params.len(),
            n
        )));
    }
    let one_minus = |a: Symbol| UPoly::new(vec![ParamRat::one(), -ParamRat::symbol(a)]);
    let d1 = one_minus(v.a_params[0]);
    if n == 1 {
        return Ok(XRat { num: UPoly::constant(v.lambdas[0].clone()), den: d1 });
    }
    let d2 = one_minus(v.a_params[1]);
    let num = &d2.scale(&v.lambdas[0]) + &UPoly::monomial(v.lambdas[1].clone(), 1);
    Ok(XRat { num, den: &d1 * &d2 })
}

/// `R ∘ Adei(-kernel)`: `∂ ↦ ∂ + kernel`.
pub fn versal_ad(v: &VersalSpec, p: &WeylOperator) -> Result<WeylOperator> {
    let used = p.params();
    for a in &v.a_params {
        if used.contains(a) || v.lambdas.iter().any(|l| l.vars().contains(a)) {
            return Err(Error::ParameterClash(a.name()));
        }
    }
    let k = versal_kernel(v)?;
    reduced_rep_localized(&adei(&k.neg(), p))
}

/// Substitutes the given parameter values into the coefficients as
/// written, then reduces.
pub fn limit_at(p: &WeylOperator, at: &[(Symbol, ParamRat)]) -> Result<WeylOperator> {
    let mut cur = p.clone();
    for (s, v) in at {
        cur = cur.substitute(*s, v).ok_or_else(|| Error::PoleAtLimit(format!("{} = {}", s, render_scalar(v))))?;
        if cur.is_zero() {
            return Err(Error::PoleAtLimit(format!("operator vanishes at {} = {}", s, render_scalar(v))));
        }
    }
    reduced_rep(&cur)
}

/// One operator-level step of a deconfluent reconstruction.
#[derive(Clone, PartialEq, Debug)]
pub enum FuchsianStep {
    Versal(VersalSpec),
    Add { point: ParamRat, f: ParamRat },
    Euler { f: ParamRat },
}

/// A family `Q_a` rebuilt from a Fuchsian seed by additions, Euler
/// transforms and versal additions, whose `a → 0` limit is the operator.
#[derive(Clone, PartialEq, Debug)]
pub struct Deconfluence {
    pub seed: WeylOperator,
    pub steps: Vec<FuchsianStep>,
    pub family: WeylOperator,
    pub a_params: Vec<Symbol>,
}

impl Deconfluence {
    /// `Q_a` at `a = 0`.
    pub fn limit(&self) -> Result<WeylOperator> {
        let at: Vec<(Symbol, ParamRat)> = self.a_params.iter().map(|a| (*a, ParamRat::zero())).collect();
        limit_at(&self.family, &at)
    }
}

fn apply(p: &WeylOperator, step: &FuchsianStep) -> Result<WeylOperator> {
    match step {
        FuchsianStep::Versal(v) => versal_ad(v, p),
        FuchsianStep::Add { point, f } => rad_power(point, f, p),
        FuchsianStep::Euler { f } => euler(&ParamRat::zero(), f, p),
    }
}

/// Rebuilds the reduced operator from its pre-collapse final form, with
/// the exponential twist of that form replaced by a versal addition in
/// fresh parameters, so that the family is Fuchsian for generic `a`.
///
/// Every Euler step of the script must act at the untwisted leg
/// `(α, β) = (0, 0)`: replacing the twists around a twisted Euler step by
/// versal additions changes the order of the result, so the limit would
/// not return the operator.
pub fn deconfluence(s: &ReductionScript, run: &Replay) -> Result<Deconfluence> {
    let (alpha, beta, _) = s.final_form.clone().ok_or_else(|| Error::Precondition("script has no final form".into()))?;
    let collapsed = s.steps.iter().any(|st| matches!(st.kind, StepKind::TerminalCollapse { .. }));
    let pre = if collapsed { &run.trace[run.trace.len() - 2] } else { run.last() };
    let seed = reduced_rep(&ade(&TwistSpec::new(-&alpha, -&beta), pre))?;
    let mut steps = Vec::new();
    if let Some(v) = VersalSpec::for_twist(&alpha, &beta) {
        steps.push(FuchsianStep::Versal(v));
    }
    let inv = super::invert_script(s)?;
    for st in &inv.steps {
        match &st.kind {
            StepKind::Add { point, f, .. } | StepKind::AddAt { point, f } => {
                steps.push(FuchsianStep::Add { point: point.clone(), f: f.clone() })
            }
            StepKind::Euler { alpha, beta, nu, .. } | StepKind::EulerAt { alpha, beta, nu } => {
                if !alpha.is_zero() || !beta.is_zero() {
                    return Err(Error::Precondition(format!(
                        "Euler step at the twisted leg ({}, {}) has no Fuchsian counterpart by versal additions",
                        render_scalar(alpha),
                        render_scalar(beta)
                    )));
                }
                steps.push(FuchsianStep::Euler { f: nu - &ParamRat::one() });
            }
            StepKind::Permute { .. } | StepKind::TerminalCollapse { .. } => {}
        }
    }
    let mut family = seed.clone();
    let mut a_params = Vec::new();
    for st in &steps {
        family = apply(&family, st)?;
        if let FuchsianStep::Versal(v) = st {
            for a in &v.a_params {
                if !a_params.contains(a) {
                    a_params.push(*a);
                }
            }
        }
    }
    let out = Deconfluence { seed, steps, family, a_params };
    if !equiv(&out.limit()?, &run.trace[0])? {
        return Err(Error::RoundTripFailure("the a = 0 limit of the family is not the operator".into()));
    }
    Ok(out)
}
