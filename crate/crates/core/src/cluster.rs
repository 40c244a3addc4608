//! Clusters of infinitely near points.
//!
//! A cluster is the combinatorial shadow of a composition of point blowups
//! over the closed point of a regular surface germ. Points are indexed
//! `1..=n` in creation order. Every non-root point lies on the exceptional
//! curve of its parent; a *satellite* point additionally lies on the strict
//! transform of one earlier exceptional curve. Points sharing a parent are
//! always in distinct generic positions.

use std::fmt;

use crate::error::{Error, Result};

/// Position of a point in a cluster, 1-based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 - 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        PointId(index + 1)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

/// Raw description of one point. The root has no parent.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointRecord {
    pub parent: Option<PointId>,
    pub satellite: Option<PointId>,
}

impl PointRecord {
    pub const ROOT: PointRecord = PointRecord { parent: None, satellite: None };

    pub fn free(parent: PointId) -> Self {
        PointRecord { parent: Some(parent), satellite: None }
    }

    pub fn satellite(parent: PointId, target: PointId) -> Self {
        PointRecord { parent: Some(parent), satellite: Some(target) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Empty,
    RootHasParent,
    MissingParent,
    ParentNotEarlier,
    SatelliteOnParent,
    SatelliteWithoutParent,
    /// The parent is not proximate to the satellite target, so the two
    /// exceptional curves do not meet at a point of the parent's curve.
    SatelliteNotProximateCompatible,
    /// Two points claim the same intersection of two exceptional curves.
    DuplicateIntersection {
        other: PointId,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub point: PointId,
    pub rule: Rule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.point;
        match &self.rule {
            Rule::Empty => write!(f, "cluster has no points"),
            Rule::RootHasParent => write!(f, "{p}: root point has a parent"),
            Rule::MissingParent => write!(f, "{p}: non-root point has no parent"),
            Rule::ParentNotEarlier => write!(f, "{p}: parent does not precede the point"),
            Rule::SatelliteOnParent => write!(f, "{p}: satellite target equals the parent"),
            Rule::SatelliteWithoutParent => write!(f, "{p}: satellite target without a parent"),
            Rule::SatelliteNotProximateCompatible => {
                write!(f, "{p}: satellite target not proximate-compatible")
            }
            Rule::DuplicateIntersection { other } => {
                write!(f, "{p}: same proximity targets as {other}")
            }
        }
    }
}

/// Result of [`validate`]. Violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the admissibility rules on a raw point list.
///
/// 1. point 1 is the only root and every parent precedes its child;
/// 2. a satellite target `r` of `q` differs from `parent(q)` and
///    `parent(q)` is itself proximate to `r`;
/// 3. no two points have the same two-element proximity-target set.
pub fn validate(records: &[PointRecord]) -> ValidationReport {
    let mut violations = Vec::new();
    if records.is_empty() {
        violations.push(Violation { point: PointId(0), rule: Rule::Empty });
        return ValidationReport { violations };
    }
    let mut seen_pairs: Vec<((usize, usize), PointId)> = Vec::new();
    for (idx, rec) in records.iter().enumerate() {
        let point = PointId::from_index(idx);
        let mut flag = |rule| violations.push(Violation { point, rule });
        if idx == 0 {
            if rec.parent.is_some() || rec.satellite.is_some() {
                flag(Rule::RootHasParent);
            }
            continue;
        }
        let Some(parent) = rec.parent else {
            flag(if rec.satellite.is_some() { Rule::SatelliteWithoutParent } else { Rule::MissingParent });
            continue;
        };
        if parent.0 == 0 || parent.0 > idx {
            flag(Rule::ParentNotEarlier);
            continue;
        }
        let Some(target) = rec.satellite else { continue };
        if target == parent {
            flag(Rule::SatelliteOnParent);
            continue;
        }
        let parent_rec = &records[parent.index()];
        let compatible = parent_rec.parent == Some(target) || parent_rec.satellite == Some(target);
        if !compatible {
            flag(Rule::SatelliteNotProximateCompatible);
            continue;
        }
        let key = (parent.0.min(target.0), parent.0.max(target.0));
        if let Some(&(_, other)) = seen_pairs.iter().find(|(k, _)| *k == key) {
            flag(Rule::DuplicateIntersection { other });
        } else {
            seen_pairs.push((key, point));
        }
    }
    ValidationReport { violations }
}

/// A validated cluster.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cluster {
    records: Vec<PointRecord>,
    // proximate[i] = points proximate to point i (0-based indices)
    proximate: Vec<Vec<usize>>,
}

impl Cluster {
    pub fn new(records: Vec<PointRecord>) -> Result<Self> {
        let report = validate(&records);
        if let Some(v) = report.violations.into_iter().next() {
            return Err(Error::InvalidCluster(v.to_string()));
        }
        let mut proximate = vec![Vec::new(); records.len()];
        for (idx, rec) in records.iter().enumerate() {
            for t in targets_of(rec) {
                proximate[t.index()].push(idx);
            }
        }
        Ok(Cluster { records, proximate })
    }

    /// The one-point cluster: a single blowup of the closed point.
    pub fn root() -> Self {
        Cluster { records: vec![PointRecord::ROOT], proximate: vec![Vec::new()] }
    }

    /// A chain of `len` free points, each on the previous one.
    pub fn free_chain(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidCluster("cluster has no points".into()));
        }
        Ok(Cluster::root().extend_with_chain(PointId(1), len - 1)?.0)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[PointRecord] {
        &self.records
    }

    pub fn record(&self, p: PointId) -> &PointRecord {
        &self.records[p.index()]
    }

    pub fn points(&self) -> impl DoubleEndedIterator<Item = PointId> + ExactSizeIterator + '_ {
        (0..self.len()).map(PointId::from_index)
    }

    pub fn contains_point(&self, p: PointId) -> bool {
        p.0 >= 1 && p.0 <= self.len()
    }

    /// Points that `p` is proximate to: its parent and, for a satellite,
    /// the satellite target.
    pub fn targets(&self, p: PointId) -> impl Iterator<Item = PointId> {
        targets_of(&self.records[p.index()])
    }

    /// Points proximate to `p`.
    pub fn proximate_to(&self, p: PointId) -> impl Iterator<Item = PointId> + '_ {
        self.proximate[p.index()].iter().map(|&i| PointId::from_index(i))
    }

    pub fn is_satellite(&self, p: PointId) -> bool {
        self.records[p.index()].satellite.is_some()
    }

    /// True if `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Cluster) -> bool {
        self.len() <= other.len() && other.records[..self.len()] == self.records[..]
    }

    /// Appends one point, returning the new cluster and the point's id.
    pub fn with_point(&self, rec: PointRecord) -> Result<(Cluster, PointId)> {
        let mut records = self.records.clone();
        records.push(rec);
        let id = PointId(records.len());
        Ok((Cluster::new(records)?, id))
    }

    /// Appends a chain of `length` free points rooted at `attach_at`: the
    /// first new point is a generic point of the exceptional curve of
    /// `attach_at`, each later one a generic point of the previous curve.
    pub fn extend_with_chain(&self, attach_at: PointId, length: usize) -> Result<(Cluster, Vec<PointId>)> {
        if !self.contains_point(attach_at) {
            return Err(Error::UnknownPoint(attach_at));
        }
        let mut records = self.records.clone();
        let mut new = Vec::with_capacity(length);
        let mut parent = attach_at;
        for _ in 0..length {
            records.push(PointRecord::free(parent));
            parent = PointId(records.len());
            new.push(parent);
        }
        Ok((Cluster::new(records)?, new))
    }

    /// The proximity matrix: unit diagonal, `-1` at `(i, j)` when point `i`
    /// is proximate to point `j`.
    pub fn proximity_matrix(&self) -> ProximityMatrix {
        let n = self.len();
        let mut entries = vec![vec![0i64; n]; n];
        for p in self.points() {
            entries[p.index()][p.index()] = 1;
            for t in self.targets(p) {
                entries[p.index()][t.index()] = -1;
            }
        }
        ProximityMatrix { entries }
    }

    /// Builds the unibranch cluster of a simple ideal from its multiplicity
    /// sequence. Point `k+1` lies on the curve of point `k`; it is also
    /// proximate to an earlier point `j` whenever the proximity equality at
    /// `j` still needs more multiplicity.
    pub fn from_multiplicity_sequence(mults: &[u64]) -> Result<Self> {
        let bad = |msg: String| Err(Error::BadMultiplicities(msg));
        if mults.is_empty() {
            return bad("empty sequence".into());
        }
        if mults.contains(&0) {
            return bad("multiplicities must be positive".into());
        }
        let n = mults.len();
        // remaining[j]: multiplicity still owed to point j by points proximate to it
        let mut remaining: Vec<i64> = mults.iter().map(|&m| m as i64).collect();
        let mut records = vec![PointRecord::ROOT];
        for (k, &m) in mults.iter().enumerate().skip(1) {
            let parent = k - 1;
            let m = m as i64;
            // Besides its parent, the new point can be proximate only to a
            // target of the parent; pick the one still owed multiplicity.
            let parent_rec = records[parent];
            let candidates: Vec<usize> = targets_of(&parent_rec).map(|t| t.index()).collect();
            let open: Vec<usize> = candidates.into_iter().filter(|&j| remaining[j] > 0).collect();
            let satellite = match open.as_slice() {
                [] => None,
                [j] => Some(*j),
                _ => return bad(format!("point {} has two open proximity targets", k + 1)),
            };
            remaining[parent] -= m;
            if remaining[parent] < 0 {
                return bad(format!("multiplicity at point {} exceeds its parent's", k + 1));
            }
            let rec = match satellite {
                Some(j) => {
                    remaining[j] -= m;
                    if remaining[j] < 0 {
                        return bad(format!("proximity inequality fails at point {}", j + 1));
                    }
                    PointRecord::satellite(PointId::from_index(parent), PointId::from_index(j))
                }
                None => PointRecord::free(PointId::from_index(parent)),
            };
            records.push(rec);
        }
        // Every point but the last must be fully discharged.
        if let Some(j) = (0..n - 1).find(|&j| remaining[j] != 0) {
            return bad(format!("proximity equality fails at point {}", j + 1));
        }
        Cluster::new(records)
    }
}

fn targets_of(rec: &PointRecord) -> impl Iterator<Item = PointId> {
    rec.parent.into_iter().chain(rec.satellite)
}

/// Lower unitriangular integer matrix encoding proximities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl ProximityMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.entries.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}
