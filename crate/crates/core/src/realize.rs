//! Realizing a complete `m`-primary ideal `J` as a multiplier ideal.
//!
//! Write `a` for the divisor of `J` on its cluster `X`, `b` for the
//! canonical divisor of `X`, and `e_ℓ` for the excess of `J` at each Rees
//! component `ℓ`. Fix `0 < ε < 1` with `ε·aᵢ - bᵢ < 1` at every point and
//! chain lengths `n_ℓ` with
//!
//! ```text
//! 1/ε + b_ℓ/ε - a_ℓ  >  n_ℓ  ≥  b_ℓ/ε - a_ℓ .
//! ```
//!
//! Attach `e_ℓ` chains of `n_ℓ` generic free points at each `ℓ` to get
//! `Y`, and let `I` be the ideal of `G = F + K_g`, where `F` is the
//! pullback of `a` and `K_g` the relative canonical divisor of `Y → X`.
//! Then `𝒥(I^{1+ε})` is the pullback of `J`. Every certificate produced
//! here carries a direct recomputation of that multiplier ideal.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cluster::{Cluster, PointId};
use crate::dictionary::CompleteIdeal;
use crate::error::{Error, Result};
use crate::lattice::{canonical_divisor, floor_mul, Divisor, Rational};
use crate::multiplier::{multiplier_ideal, Exponent};

/// Chains attached at one Rees component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub point: PointId,
    /// Number of chains, the excess `e_ℓ`.
    pub excess: u64,
    /// Points per chain, `n_ℓ`.
    pub length: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainPlan {
    pub chains: Vec<ChainSpec>,
}

impl ChainPlan {
    /// `N = Σ n_ℓ`.
    pub fn total(&self) -> u64 {
        self.chains.iter().map(|c| c.length).sum()
    }

    /// Number of new points in `Y`.
    pub fn new_points(&self) -> u64 {
        self.chains.iter().map(|c| c.length * c.excess).sum()
    }

    pub fn lengths(&self) -> Vec<u64> {
        self.chains.iter().map(|c| c.length).collect()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RealizationParameters {
    pub epsilon: Rational,
    pub c: Exponent,
}

/// The four constraint families on `(ε, n_ℓ)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WindowReport {
    /// `0 < ε < min(ε*, 1)`.
    pub epsilon_in_range: bool,
    /// `ε·aᵢ - bᵢ < 1` at every point of `X`.
    pub coefficients_below_one: bool,
    /// `n_ℓ ≥ b_ℓ/ε - a_ℓ` for every Rees component.
    pub lower_window: bool,
    /// `ε·(a_ℓ + n_ℓ) - b_ℓ < 1` for every Rees component.
    pub upper_window: bool,
}

impl WindowReport {
    pub fn all_ok(&self) -> bool {
        self.epsilon_in_range && self.coefficients_below_one && self.lower_window && self.upper_window
    }
}

/// Recomputed `𝒥(I^c)` on `Y` against the pullback of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub recomputed: CompleteIdeal,
    pub expected: CompleteIdeal,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationCertificate {
    pub target: CompleteIdeal,
    pub extended: Arc<Cluster>,
    pub companion: CompleteIdeal,
    pub parameters: RealizationParameters,
    pub plan: ChainPlan,
    /// `None` for the unit ideal.
    pub epsilon_bound: Option<Rational>,
    /// Last point of every appended chain, in construction order.
    pub chain_ends: Vec<PointId>,
    pub windows: WindowReport,
    pub transcript: Transcript,
}

impl RealizationCertificate {
    pub fn is_verified(&self) -> bool {
        self.transcript.verified
    }

    pub fn is_trivial(&self) -> bool {
        self.target.is_unit()
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum UnitPolicy {
    /// Return a certificate `𝒥(m^1) = R`.
    #[default]
    Trivial,
    Reject,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RealizeOptions {
    pub c: Option<Exponent>,
    /// Chain lengths, one per Rees component in point order.
    pub chains: Option<Vec<u64>>,
    pub unit_policy: UnitPolicy,
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `ε* = min (1 + bᵢ)/aᵢ` over points with `aᵢ > 0`, with the point
/// attaining it (the first one on ties).
pub fn epsilon_bound_at(j: &CompleteIdeal) -> Result<(Rational, PointId)> {
    if j.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let k = canonical_divisor(j.cluster());
    let mut best: Option<(Rational, PointId)> = None;
    for (i, (&a, &b)) in j.divisor().coeffs().iter().zip(k.coeffs()).enumerate() {
        if a <= 0 {
            continue;
        }
        let r = ratio(1 + b, a);
        if best.is_none_or(|(x, _)| r < x) {
            best = Some((r, PointId::from_index(i)));
        }
    }
    Ok(best.expect("nonzero antinef divisor has a positive coefficient"))
}

pub fn epsilon_bound(j: &CompleteIdeal) -> Result<Rational> {
    Ok(epsilon_bound_at(j)?.0)
}

fn base_plan(j: &CompleteIdeal, lengths: &[u64]) -> Result<ChainPlan> {
    let factors = j.factor_simple();
    if factors.len() != lengths.len() {
        return Err(Error::PlanMismatch(format!(
            "{} chain lengths given for {} Rees components",
            lengths.len(),
            factors.len()
        )));
    }
    let chains = factors
        .iter()
        .zip(lengths)
        .map(|(f, &length)| ChainSpec { point: f.point, excess: f.exponent, length })
        .collect();
    Ok(ChainPlan { chains })
}

/// Smallest `ε` meeting every lower window: `max b_ℓ/(a_ℓ + n_ℓ)`.
fn least_epsilon(j: &CompleteIdeal, k: &Divisor, plan: &ChainPlan) -> Rational {
    plan.chains
        .iter()
        .map(|ch| ratio(k.coeff(ch.point), j.divisor().coeff(ch.point) + ch.length as i64))
        .max()
        .expect("nonempty plan")
}

/// Evaluates the constraints for a given `ε` and plan.
pub fn check_windows(j: &CompleteIdeal, plan: &ChainPlan, epsilon: Rational) -> Result<WindowReport> {
    let bound = epsilon_bound(j)?;
    let cap = bound.min(Rational::one());
    let k = canonical_divisor(j.cluster());
    let a = j.divisor();
    let one = Rational::one();
    let coefficients_below_one =
        a.coeffs().iter().zip(k.coeffs()).all(|(&ai, &bi)| epsilon * ai - Rational::from(bi) < one);
    let (mut lower_window, mut upper_window) = (true, true);
    for ch in &plan.chains {
        let (al, bl, n) = (a.coeff(ch.point), k.coeff(ch.point), ch.length as i64);
        // n ≥ b/ε - a  ⇔  ε·(a + n) ≥ b
        lower_window &= epsilon * (al + n) >= Rational::from(bl);
        upper_window &= epsilon * (al + n) - Rational::from(bl) < one;
    }
    Ok(WindowReport {
        epsilon_in_range: epsilon > Rational::zero() && epsilon < cap,
        coefficients_below_one,
        lower_window,
        upper_window,
    })
}

/// Deterministic choice of chain lengths and `ε`: the least `n_ℓ`
/// admissible for some `ε < min(ε*, 1)`, then the least `ε` they allow.
pub fn plan_chains(j: &CompleteIdeal) -> Result<(ChainPlan, RealizationParameters)> {
    let cap = epsilon_bound(j)?.min(Rational::one());
    let k = canonical_divisor(j.cluster());
    let lengths: Vec<u64> = j
        .factor_simple()
        .iter()
        .map(|f| {
            let (a, b) = (j.divisor().coeff(f.point), k.coeff(f.point));
            // ⌊b/cap - a⌋ + 1, clamped at 0
            let t = floor_mul(cap.recip(), b) - a + 1;
            t.max(0) as u64
        })
        .collect();
    let mut plan = base_plan(j, &lengths)?;
    for _ in 0..10_000 {
        let epsilon = least_epsilon(j, &k, &plan);
        if check_windows(j, &plan, epsilon)?.all_ok() {
            let c = Exponent::new(epsilon + Rational::one())?;
            return Ok((plan, RealizationParameters { epsilon, c }));
        }
        // Lengthen the chain that pins ε.
        let idx = plan
            .chains
            .iter()
            .position(|ch| ratio(k.coeff(ch.point), j.divisor().coeff(ch.point) + ch.length as i64) == epsilon)
            .expect("ε is attained");
        plan.chains[idx].length += 1;
    }
    Err(Error::PlanMismatch("no admissible chain lengths found".into()))
}

/// The extended cluster `Y` and the companion ideal `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Companion {
    pub cluster: Arc<Cluster>,
    pub ideal: CompleteIdeal,
    pub chain_ends: Vec<PointId>,
}

pub fn build_companion(j: &CompleteIdeal, plan: &ChainPlan) -> Result<Companion> {
    let expected = base_plan(j, &plan.lengths())?;
    if expected.chains.iter().zip(&plan.chains).any(|(e, p)| e.point != p.point || e.excess != p.excess) {
        return Err(Error::PlanMismatch("chain points or excesses differ from the Rees data".into()));
    }
    let mut cluster = j.cluster().as_ref().clone();
    let mut chain_ends: Vec<PointId> = Vec::new();
    for ch in &plan.chains {
        for _ in 0..ch.excess {
            let (next, new) = cluster.extend_with_chain(ch.point, ch.length as usize)?;
            cluster = next;
            chain_ends.extend(new.last());
        }
    }
    let y = Arc::new(cluster);
    let f = j.divisor().pullback(&y)?;
    let relative_k = canonical_divisor(&y).try_sub(&canonical_divisor(j.cluster()).pullback(&y)?)?;
    let g = f.try_add(&relative_k)?;

    // G has excess 1 at each chain end, e_ℓ at Rees points without chains,
    // and 0 everywhere else.
    let mut want = vec![0i64; y.len()];
    for p in &chain_ends {
        want[p.index()] += 1;
    }
    for ch in plan.chains.iter().filter(|ch| ch.length == 0) {
        want[ch.point.index()] += ch.excess as i64;
    }
    assert_eq!(g.excesses(), want, "companion divisor has unexpected excesses");
    let ideal = CompleteIdeal::from_antinef(g)?;
    Ok(Companion { cluster: y, ideal, chain_ends })
}

pub fn realize(j: &CompleteIdeal) -> Result<RealizationCertificate> {
    realize_with(j, &RealizeOptions::default())
}

pub fn realize_with(j: &CompleteIdeal, options: &RealizeOptions) -> Result<RealizationCertificate> {
    if j.is_unit() {
        return match options.unit_policy {
            UnitPolicy::Reject => Err(Error::UnitIdeal),
            UnitPolicy::Trivial => Ok(trivial_certificate(j)),
        };
    }
    let bound = epsilon_bound(j)?;
    let k = canonical_divisor(j.cluster());
    let (plan, mut parameters) = match &options.chains {
        None => plan_chains(j)?,
        Some(lengths) => {
            let plan = base_plan(j, lengths)?;
            let epsilon = least_epsilon(j, &k, &plan);
            let c = Exponent::new(epsilon + Rational::one())?;
            (plan, RealizationParameters { epsilon, c })
        }
    };
    if let Some(c) = options.c {
        parameters = RealizationParameters { epsilon: c.value() - Rational::one(), c };
    }
    let windows = check_windows(j, &plan, parameters.epsilon)?;
    let companion = build_companion(j, &plan)?;
    let recomputed = multiplier_ideal(&companion.ideal, parameters.c);
    let expected = j.pullback(&companion.cluster)?;
    let verified = recomputed == expected;
    Ok(RealizationCertificate {
        target: j.clone(),
        extended: companion.cluster,
        companion: companion.ideal,
        parameters,
        plan,
        epsilon_bound: Some(bound),
        chain_ends: companion.chain_ends,
        windows,
        transcript: Transcript { recomputed, expected, verified },
    })
}

fn trivial_certificate(j: &CompleteIdeal) -> RealizationCertificate {
    let c = Exponent::one();
    let companion = CompleteIdeal::maximal(j.cluster().clone());
    let recomputed = multiplier_ideal(&companion, c);
    let verified = recomputed == *j;
    RealizationCertificate {
        target: j.clone(),
        extended: j.cluster().clone(),
        companion,
        parameters: RealizationParameters { epsilon: Rational::zero(), c },
        plan: ChainPlan::default(),
        epsilon_bound: None,
        chain_ends: Vec::new(),
        windows: WindowReport {
            epsilon_in_range: true,
            coefficients_below_one: true,
            lower_window: true,
            upper_window: true,
        },
        transcript: Transcript { recomputed, expected: j.clone(), verified },
    }
}

/// Re-runs the multiplier-ideal computation of a certificate.
pub fn reverify(cert: &RealizationCertificate) -> Result<bool> {
    let recomputed = multiplier_ideal(&cert.companion, cert.parameters.c);
    let expected = cert.target.pullback(&cert.extended)?;
    Ok(recomputed == expected)
}

/// `A = c·G - K_Y - F` on `Y`, with its floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorReport {
    pub a: Vec<Rational>,
    pub floor_a: Vec<i64>,
    /// `⌊A⌋ ≤ 0` everywhere.
    pub floor_nonpositive: bool,
    /// `⌊A⌋ = 0` at every chain end.
    pub zero_at_chain_ends: bool,
}

impl FloorReport {
    pub fn holds(&self) -> bool {
        self.floor_nonpositive && self.zero_at_chain_ends
    }
}

pub fn floor_report(cert: &RealizationCertificate) -> Result<FloorReport> {
    let y = &cert.extended;
    let g = cert.companion.divisor();
    let ky = canonical_divisor(y);
    let f = cert.target.divisor().pullback(y)?;
    let c = cert.parameters.c.value();
    let a: Vec<Rational> = g
        .coeffs()
        .iter()
        .zip(ky.coeffs())
        .zip(f.coeffs())
        .map(|((&gi, &ki), &fi)| c * gi - Rational::from(ki + fi))
        .collect();
    let floor_a: Vec<i64> = a.iter().map(|x| x.floor().to_integer()).collect();
    Ok(FloorReport {
        floor_nonpositive: floor_a.iter().all(|&x| x <= 0),
        zero_at_chain_ends: cert.chain_ends.iter().all(|p| floor_a[p.index()] == 0),
        a,
        floor_a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointClassification {
    /// `J = 𝒥(I)` for some `I`, i.e. `J` has order one.
    pub adjoint: bool,
    /// `𝒥(J²)` at exponent 1.
    pub adjoint_of_square: CompleteIdeal,
    /// `𝒥(J²) = J`; for order-one ideals this is the witness.
    pub witness_holds: bool,
}

/// Decides whether a simple ideal is an adjoint ideal `𝒥(I)`: exactly
/// when its order is one, with `𝒥(J²) = J` as witness.
pub fn classify_adjoint(j: &CompleteIdeal) -> Result<AdjointClassification> {
    if j.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if !j.is_simple() {
        return Err(Error::NotSimple);
    }
    let square = j.product(j)?;
    let adjoint_of_square = multiplier_ideal(&square, Exponent::one());
    let witness_holds = adjoint_of_square == *j;
    Ok(AdjointClassification { adjoint: j.order() == 1, adjoint_of_square, witness_holds })
}
