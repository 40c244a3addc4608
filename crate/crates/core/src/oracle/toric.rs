//! Clusters of base points of monomial ideals.
//!
//! Every base point of a monomial ideal is a torus-fixed point, so the
//! cluster lives inside the toric tower: a fixed point is the corner of a
//! smooth cone spanned by two rays, each an axis `(1,0)`/`(0,1)` or the
//! ray of an earlier exceptional curve. Blowing the corner up adds the ray
//! `r₁ + r₂` (the Farey mediant), whose weight `(α, β)` is the monomial
//! valuation `x^a y^b ↦ α·a + β·b` of the new curve.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cluster::{Cluster, PointId, PointRecord};
use crate::dictionary::CompleteIdeal;
use crate::error::{Error, Result};
use crate::multiplier::{multiplier_ideal, Exponent};
use crate::oracle::newton::{howald_multiplier, NewtonPolygon};

pub type Weight = (u64, u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricCluster {
    pub cluster: Arc<Cluster>,
    /// Weight of each point's exceptional curve.
    pub weights: Vec<Weight>,
    /// Multiplicity of the ideal's transform at each point.
    pub multiplicities: Vec<i64>,
    pub ideal: CompleteIdeal,
}

impl ToricCluster {
    /// Every point's divisor coefficient equals the monomial valuation of
    /// its weight.
    pub fn weights_consistent(&self, polygon: &NewtonPolygon) -> bool {
        self.weights.iter().zip(self.ideal.divisor().coeffs()).all(|(&w, &v)| polygon.weight_min(w) as i64 == v)
    }
}

struct Corner {
    rays: [Weight; 2],
    /// Point whose curve is the ray, if the ray is exceptional.
    owners: [Option<usize>; 2],
}

/// Runs the base-point recursion on the polygon's vertices.
pub fn monomial_to_cluster(polygon: &NewtonPolygon) -> Result<ToricCluster> {
    if polygon.is_unit() {
        return Err(Error::NotMPrimary);
    }
    let verts = polygon.vertices();
    let dot = |w: Weight, (a, b): (u64, u64)| w.0 * a + w.1 * b;
    let mut records: Vec<PointRecord> = Vec::new();
    let mut weights = Vec::new();
    let mut mults = Vec::new();
    let mut stack = vec![Corner { rays: [(1, 0), (0, 1)], owners: [None, None] }];
    while let Some(corner) = stack.pop() {
        // exceptional factors divided out of the total transform
        let shift: Vec<u64> =
            (0..2).map(|k| if corner.owners[k].is_some() { polygon.weight_min(corner.rays[k]) } else { 0 }).collect();
        let order = verts
            .iter()
            .map(|&e| dot(corner.rays[0], e) - shift[0] + dot(corner.rays[1], e) - shift[1])
            .min()
            .expect("nonempty");
        if order == 0 {
            continue;
        }
        let idx = records.len();
        let owned: Vec<usize> = corner.owners.iter().flatten().copied().collect();
        let rec = match owned[..] {
            [] => PointRecord::ROOT,
            [p] => PointRecord::free(PointId::from_index(p)),
            [p, q] => {
                let (parent, sat) = if p > q { (p, q) } else { (q, p) };
                PointRecord::satellite(PointId::from_index(parent), PointId::from_index(sat))
            }
            _ => unreachable!(),
        };
        records.push(rec);
        let [r1, r2] = corner.rays;
        let new = (r1.0 + r2.0, r1.1 + r2.1);
        weights.push(new);
        mults.push(order as i64);
        stack.push(Corner { rays: [new, r2], owners: [Some(idx), corner.owners[1]] });
        stack.push(Corner { rays: [r1, new], owners: [corner.owners[0], Some(idx)] });
    }
    let cluster = Arc::new(Cluster::new(records)?);
    let ideal = CompleteIdeal::from_point_basis(cluster.clone(), &mults)?;
    Ok(ToricCluster { cluster, weights, multiplicities: mults, ideal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub howald: NewtonPolygon,
    /// Weight contract on the polygon's own cluster.
    pub weights_consistent: bool,
    /// Weight contract on the Howald ideal's cluster (vacuous for the unit ideal).
    pub howald_weights_consistent: bool,
    /// Divisorial multiplier ideal, pulled back to the common cluster.
    pub divisorial: Vec<i64>,
    /// Howald ideal's values on the common cluster.
    pub monomial: Vec<i64>,
    pub agree: bool,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.agree && self.weights_consistent && self.howald_weights_consistent
    }
}

/// Computes `𝒥(a^c)` for a monomial ideal twice, once by unloading on the
/// toric cluster and once by the interior-point formula, and compares the
/// results on a toric cluster resolving both.
pub fn cross_check_report(polygon: &NewtonPolygon, c: Exponent) -> Result<CrossCheckReport> {
    let toric = monomial_to_cluster(polygon)?;
    let weights_consistent = toric.weights_consistent(polygon);
    let divisorial = multiplier_ideal(&toric.ideal, c);
    let howald = howald_multiplier(polygon, c.value())?;

    let (common, common_weights, howald_weights_consistent) = if howald.is_unit() {
        (toric.cluster.clone(), toric.weights.clone(), true)
    } else {
        let other = monomial_to_cluster(&howald)?;
        let ok = other.weights_consistent(&howald);
        let (cluster, weights) = union_cluster(&toric, &other)?;
        (cluster, weights, ok)
    };
    let divisorial = divisorial.pullback(&common)?.divisor().coeffs().to_vec();
    let monomial: Vec<i64> = if howald.is_unit() {
        vec![0; common.len()]
    } else {
        common_weights.iter().map(|&w| howald.weight_min(w) as i64).collect()
    };
    let agree = divisorial == monomial;
    Ok(CrossCheckReport { howald, weights_consistent, howald_weights_consistent, divisorial, monomial, agree })
}

pub fn cross_check(polygon: &NewtonPolygon, c: Exponent) -> Result<bool> {
    Ok(cross_check_report(polygon, c)?.passed())
}

/// Union of two toric clusters with `base` as a prefix; points are matched
/// by weight.
fn union_cluster(base: &ToricCluster, other: &ToricCluster) -> Result<(Arc<Cluster>, Vec<Weight>)> {
    let mut records = base.cluster.records().to_vec();
    let mut weights = base.weights.clone();
    let mut by_weight: HashMap<Weight, usize> = weights.iter().enumerate().map(|(i, &w)| (w, i + 1)).collect();
    for (rec, &w) in other.cluster.records().iter().zip(&other.weights) {
        if by_weight.contains_key(&w) {
            continue;
        }
        let remap = |p: Option<PointId>| p.map(|p| PointId(by_weight[&other.weights[p.index()]]));
        records.push(PointRecord { parent: remap(rec.parent), satellite: remap(rec.satellite) });
        weights.push(w);
        by_weight.insert(w, records.len());
    }
    Ok((Arc::new(Cluster::new(records)?), weights))
}
