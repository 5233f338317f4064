//! Maximum joint success probability: quartic stationary points, one-state
//! boundary faces, and the critical overlap separating the two.
//!
//! On the symmetric slice `t = √s`, `q1c = q1b = q` the joint success
//! probability becomes the single-parameter objective
//!
//! ```text
//! P(q) = η₁(1−q)² + η₂(1−s/q)²,    q ∈ [s, 1],
//! ```
//!
//! whose stationarity condition clears to the quartic
//! `r·q⁴ − r·q³ + s·q − s² = 0` with `r = η₁/η₂`. The competing boundary
//! candidate identifies only the more likely state and reaches
//! `η_max·(1−s)²`. The interior stationary maximum wins below a critical
//! overlap [`critical_overlap`] and the boundary above it; at equal priors
//! the crossing sits exactly at `3 − 2√2 ≈ 0.1716`.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{DiscriminationProblem, Method, OptimizationResult, Regime, SequentialStrategy};
use crate::tol;

use super::joint_failure;

/// Nature of a stationary point of the single-parameter success objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootClass {
    /// Real root in `[s, 1]` with non-positive second derivative. A exactly
    /// vanishing second derivative (a merged maximum/minimum pair) is
    /// reported here so the point stays an optimum candidate.
    #[serde(rename = "LOCAL_MAX")]
    LocalMax,
    /// Real root in `[s, 1]` with positive second derivative.
    #[serde(rename = "LOCAL_MIN")]
    LocalMin,
    /// Complex root, or real root outside `[s, 1]`.
    #[serde(rename = "NON_PHYSICAL")]
    NonPhysical,
}

impl RootClass {
    /// Stable machine-readable name (same spelling as the serde form).
    pub fn as_str(&self) -> &'static str {
        match self {
            RootClass::LocalMax => "LOCAL_MAX",
            RootClass::LocalMin => "LOCAL_MIN",
            RootClass::NonPhysical => "NON_PHYSICAL",
        }
    }
}

impl std::fmt::Display for RootClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A physical stationary point with its success value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalRoot {
    /// Failure probability `q1b = q1c` at the stationary point.
    pub q: f64,
    /// Joint success probability there.
    pub p_ss: f64,
    /// Local classification (never [`RootClass::NonPhysical`]).
    pub class: RootClass,
}

/// All four quartic roots plus the physical subset.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticRootReport {
    /// The four roots sorted by (re, im). Members of a near-degenerate
    /// cluster (within [`tol::ROOT_CLUSTER`] of each other) are replaced by
    /// the cluster mean, so a multiple root appears as repeated entries.
    pub all_roots: [Complex64; 4],
    /// Classification of each entry of `all_roots`.
    pub classes: [RootClass; 4],
    /// Real roots inside `[s, 1]` in ascending order, with multiplicity.
    pub physical: Vec<PhysicalRoot>,
}

/// Joint success probability on the symmetric slice `t = √s`, `q1c = q1b`.
///
/// This is the single-parameter objective whose stationary points are the
/// quartic roots; `q` must be positive (physically, within `[s, 1]`).
pub fn symmetric_joint_success(problem: &DiscriminationProblem, q: f64) -> f64 {
    let s = problem.s();
    problem.eta1() * (1.0 - q) * (1.0 - q) + problem.eta2() * (1.0 - s / q) * (1.0 - s / q)
}

/// Second derivative of the single-parameter success objective.
fn curvature(s: f64, eta1: f64, q: f64) -> f64 {
    2.0 * eta1 + 2.0 * (1.0 - eta1) * s * (3.0 * s - 2.0 * q) / q.powi(4)
}

/// Replaces clusters of eigenvalues within [`tol::ROOT_CLUSTER`] of each
/// other by the cluster mean. The scatter of a defective multiple root is
/// symmetric around the true value, so the mean cancels its leading term.
fn merge_close_roots(roots: &mut [Complex64; 4]) {
    let mut id = [0usize, 1, 2, 3];
    loop {
        let mut changed = false;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if id[i] != id[j] && (roots[i] - roots[j]).norm() < tol::ROOT_CLUSTER {
                    let (keep, drop) = (id[i].min(id[j]), id[i].max(id[j]));
                    for entry in &mut id {
                        if *entry == drop {
                            *entry = keep;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for cluster in 0..4 {
        let members: Vec<usize> = (0..4).filter(|&k| id[k] == cluster).collect();
        if members.len() >= 2 {
            let mean = members.iter().map(|&k| roots[k]).sum::<Complex64>() / members.len() as f64;
            for &k in &members {
                roots[k] = mean;
            }
        }
    }
}

/// Solves the stationarity quartic `r·q⁴ − r·q³ + s·q − s² = 0`
/// (`r = η₁/η₂`) via companion-matrix eigenvalues and classifies each root.
///
/// Requires `s > 0`. Roots with `|imag| <` [`tol::ROOT_IMAG`] count as real;
/// real roots within that distance of `[s, 1]` are clamped onto it. Fails
/// with [`Error::NumericalDegeneracy`] if a reported root does not satisfy
/// the quartic to within [`tol::QUARTIC_RESIDUAL`] (scaled by the leading
/// coefficient when `r > 1`).
pub fn quartic_physical_roots(problem: &DiscriminationProblem) -> Result<QuarticRootReport> {
    let s = problem.s();
    if s <= 0.0 {
        return Err(Error::ConstraintViolation(
            "the stationarity quartic needs s > 0; orthogonal preparations \
             have no interior tradeoff"
                .into(),
        ));
    }
    let eta1 = problem.eta1();
    let r = eta1 / problem.eta2();

    // Companion matrix of the monic form q⁴ − q³ + (s/r)·q − s²/r.
    let companion = Matrix4::new(
        0.0,
        0.0,
        0.0,
        s * s / r, //
        1.0,
        0.0,
        0.0,
        -s / r, //
        0.0,
        1.0,
        0.0,
        0.0, //
        0.0,
        0.0,
        1.0,
        1.0,
    );
    let eig = companion.complex_eigenvalues();
    let mut all_roots = [eig[0], eig[1], eig[2], eig[3]];
    merge_close_roots(&mut all_roots);
    all_roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let residual_cap = tol::QUARTIC_RESIDUAL * r.max(1.0);
    for z in &all_roots {
        let residual = (r * z.powu(4) - r * z.powu(3) + s * z - s * s).norm();
        if residual > residual_cap {
            return Err(Error::NumericalDegeneracy(format!(
                "quartic root {z} has residual {residual:.3e} (cap {residual_cap:.3e})"
            )));
        }
    }

    let mut classes = [RootClass::NonPhysical; 4];
    let mut physical = Vec::new();
    for (i, z) in all_roots.iter().enumerate() {
        if z.im.abs() >= tol::ROOT_IMAG {
            continue;
        }
        let q = z.re;
        if !(s - tol::ROOT_IMAG..=1.0 + tol::ROOT_IMAG).contains(&q) {
            continue;
        }
        let q = q.clamp(s, 1.0);
        let class = if curvature(s, eta1, q) <= 0.0 {
            RootClass::LocalMax
        } else {
            RootClass::LocalMin
        };
        classes[i] = class;
        physical.push(PhysicalRoot {
            q,
            p_ss: symmetric_joint_success(problem, q),
            class,
        });
    }

    Ok(QuarticRootReport {
        all_roots,
        classes,
        physical,
    })
}

/// Maximum joint success probability with no constraint on the failure rate.
///
/// Evaluates the objective at every physical quartic root and compares with
/// the boundary candidate `η_max·(1−s)²`, which identifies only the more
/// likely state (state 1 on ties). A tie between interior and boundary is
/// resolved toward the interior point, which still carries information
/// about both states. Requires `s > 0`.
pub fn optimize_success_only(problem: &DiscriminationProblem) -> Result<OptimizationResult> {
    let report = quartic_physical_roots(problem)?;
    let s = problem.s();
    let t = s.sqrt();

    let interior = report
        .physical
        .iter()
        .max_by(|a, b| a.p_ss.total_cmp(&b.p_ss));

    let state1_favored = problem.eta1() >= problem.eta2();
    let (eta_max, boundary_regime, q_face) = if state1_favored {
        (problem.eta1(), Regime::BoundaryState1, s)
    } else {
        (problem.eta2(), Regime::BoundaryState2, 1.0)
    };
    let p_boundary = eta_max * (1.0 - s) * (1.0 - s);

    match interior {
        Some(root) if root.p_ss >= p_boundary => {
            let strategy = SequentialStrategy::new(problem, t, root.q, root.q)?;
            Ok(OptimizationResult {
                strategy,
                p_ss: root.p_ss,
                p_ff: joint_failure(problem, &strategy),
                regime: Regime::Interior,
                method: Method::RootSolve,
            })
        }
        _ => {
            let strategy = SequentialStrategy::new(problem, t, q_face, q_face)?;
            Ok(OptimizationResult {
                strategy,
                p_ss: p_boundary,
                p_ff: joint_failure(problem, &strategy),
                regime: boundary_regime,
                method: Method::ClosedForm,
            })
        }
    }
}

/// Overlap at which the interior stationary maximum stops beating the
/// boundary value `η_max·(1−s)²`.
///
/// Bisects the sign of (interior − boundary) over `s ∈ (1e−6, 0.25]` to an
/// interval of [`tol::BISECT`]. Fails with [`Error::NoCrossing`] when the
/// interior never exceeds the boundary even at the small-overlap end, which
/// happens for extreme priors.
pub fn critical_overlap(eta1: f64) -> Result<f64> {
    if !(eta1 > 0.0 && eta1 < 1.0) {
        return Err(Error::OutOfRange {
            what: "eta1",
            value: eta1,
            min: 0.0,
            max: 1.0,
        });
    }
    let eta_max = eta1.max(1.0 - eta1);
    let gap = |s: f64| -> Result<f64> {
        let problem = DiscriminationProblem::new(s, eta1).expect("s within (0, 0.25]");
        let report = quartic_physical_roots(&problem)?;
        let interior = report
            .physical
            .iter()
            .map(|root| root.p_ss)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(interior - eta_max * (1.0 - s) * (1.0 - s))
    };

    let (mut lo, mut hi) = (1e-6, 0.25);
    if gap(lo)? <= 0.0 {
        return Err(Error::NoCrossing { eta1 });
    }
    if gap(hi)? > 0.0 {
        return Err(Error::NumericalDegeneracy(format!(
            "interior optimum still dominates the boundary at s = {hi}"
        )));
    }
    while hi - lo > tol::BISECT {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
