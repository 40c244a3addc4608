//! Enumeration and random sampling of clusters and ideals, for test suites
//! and batch runs.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cluster::{Cluster, PointId, PointRecord};
use crate::dictionary::CompleteIdeal;
use crate::lattice::{simple_generator, Divisor};

/// Every record that can be appended to `cluster` while keeping it valid.
pub fn admissible_extensions(cluster: &Cluster) -> Vec<PointRecord> {
    let mut out = Vec::new();
    let used: Vec<(usize, usize)> = cluster
        .records()
        .iter()
        .filter_map(|r| Some((r.parent?.0, r.satellite?.0)))
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    for p in cluster.points() {
        out.push(PointRecord::free(p));
        for t in cluster.targets(p) {
            if !used.contains(&(t.0.min(p.0), t.0.max(p.0))) {
                out.push(PointRecord::satellite(p, t));
            }
        }
    }
    out
}

/// All admissible clusters with `1..=max_points` points, as ordered point
/// lists (different admissible orders of one diagram are listed separately).
pub fn all_clusters(max_points: usize) -> Vec<Cluster> {
    let mut out = Vec::new();
    if max_points == 0 {
        return out;
    }
    let mut layer = vec![Cluster::root()];
    for _ in 1..max_points {
        let mut next = Vec::new();
        for c in &layer {
            for rec in admissible_extensions(c) {
                next.push(c.with_point(rec).expect("admissible").0);
            }
        }
        out.append(&mut layer);
        layer = next;
    }
    out.append(&mut layer);
    out
}

/// Random cluster with exactly `points` points; each new point is a
/// satellite with probability one half when a satellite slot exists.
pub fn random_cluster<R: Rng + ?Sized>(rng: &mut R, points: usize) -> Cluster {
    let mut c = Cluster::root();
    while c.len() < points.max(1) {
        let options = admissible_extensions(&c);
        let (sats, frees): (Vec<_>, Vec<_>) = options.into_iter().partition(|r| r.satellite.is_some());
        let pool = if !sats.is_empty() && rng.gen_bool(0.5) { sats } else { frees };
        let rec = *pool.choose(rng).expect("free extensions always exist");
        c = c.with_point(rec).expect("admissible").0;
    }
    c
}

/// Random nonunit complete ideal with excesses in `0..=max_excess`.
pub fn random_ideal<R: Rng + ?Sized>(rng: &mut R, cluster: &Arc<Cluster>, max_excess: u64) -> CompleteIdeal {
    loop {
        let mut d = Divisor::zero(cluster.clone());
        for p in cluster.points() {
            let e = rng.gen_range(0..=max_excess) as i64;
            if e > 0 {
                d = d.try_add(&simple_generator(cluster, p).expect("point").scaled(e)).expect("same cluster");
            }
        }
        if !d.is_zero() {
            return CompleteIdeal::from_antinef(d).expect("sum of generators is antinef");
        }
    }
}

/// Appends `count` free points at random existing points.
pub fn random_free_extension<R: Rng + ?Sized>(rng: &mut R, cluster: &Cluster, count: usize) -> Cluster {
    let mut c = cluster.clone();
    for _ in 0..count {
        let at = PointId(rng.gen_range(1..=c.len()));
        c = c.with_point(PointRecord::free(at)).expect("free point").0;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::validate;

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_clusters(1).len(), 1);
        // root + {free on p1}
        assert_eq!(all_clusters(2).len(), 2);
        // three-point clusters: free on p1 or p2, or the satellite at E1 ∩ E2
        assert_eq!(all_clusters(3).len() - 2, 3);
        assert!(all_clusters(5).iter().all(|c| validate(c.records()).is_ok()));
    }
}
