//! Brute-force least antinef majorant.
//!
//! The intersection matrix is rebuilt here by simulating the blowups one by
//! one, independently of the proximity-matrix formula used by the lattice
//! module.

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::lattice::Divisor;

pub const MAX_POINTS: usize = 6;
pub const MAX_COEFF: i64 = 4;

/// Intersection matrix by direct simulation: blowing up a point lowers the
/// self-intersection of every curve through it by one, separates two
/// curves meeting there, and adds a `(-1)`-curve meeting each of them once.
pub fn simulated_intersection_matrix(cluster: &Cluster) -> Vec<Vec<i64>> {
    let n = cluster.len();
    let mut m = vec![vec![0i64; n]; n];
    for (idx, rec) in cluster.records().iter().enumerate() {
        let through: Vec<usize> = rec.parent.iter().chain(rec.satellite.iter()).map(|p| p.0 - 1).collect();
        for &s in &through {
            m[s][s] -= 1;
            m[s][idx] = 1;
            m[idx][s] = 1;
        }
        if let [s, t] = through[..] {
            m[s][t] -= 1;
            m[t][s] -= 1;
        }
        m[idx][idx] = -1;
    }
    m
}

fn pairing(matrix: &[Vec<i64>], x: &[i64], row: usize) -> i64 {
    matrix[row].iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Values of the maximal ideal: 1 at the root, and each later point gets
/// the sum of the values of the curves through it.
fn maximal_ideal_values(cluster: &Cluster) -> Vec<i64> {
    let mut v: Vec<i64> = Vec::with_capacity(cluster.len());
    for rec in cluster.records() {
        let through = rec.parent.iter().chain(rec.satellite.iter());
        let val = match rec.parent {
            None => 1,
            Some(_) => through.map(|p| v[p.0 - 1]).sum(),
        };
        v.push(val);
    }
    v
}

/// Enumerates every integer divisor between `max(D, 0)` and a multiple of
/// the maximal ideal's divisor, keeps the antinef ones, and returns their
/// componentwise minimum after checking it is itself antinef.
pub fn exhaustive_antinef_closure(d: &Divisor) -> Result<Divisor> {
    let cluster = d.cluster();
    let n = cluster.len();
    if n > MAX_POINTS {
        return Err(Error::OracleBound(format!("{n} points > {MAX_POINTS}")));
    }
    if d.coeffs().iter().any(|c| c.abs() > MAX_COEFF) {
        return Err(Error::OracleBound(format!("coefficient beyond ±{MAX_COEFF}")));
    }
    let matrix = simulated_intersection_matrix(cluster);
    let mv = maximal_ideal_values(cluster);
    let lo: Vec<i64> = d.coeffs().iter().map(|&c| c.max(0)).collect();
    let s = lo.iter().zip(&mv).map(|(&l, &m)| (l + m - 1) / m).max().unwrap_or(0);
    let hi: Vec<i64> = mv.iter().map(|&m| s * m).collect();

    let mut search = Search { matrix: &matrix, lo: &lo, hi: &hi, current: lo.clone(), meet: None, found: 0 };
    search.run(0);
    let meet = search.meet.ok_or_else(|| Error::OracleBound("no antinef divisor in the search box".into()))?;
    if !(0..n).all(|r| pairing(&matrix, &meet, r) <= 0) {
        return Err(Error::OracleBound("antinef majorants have no least element".into()));
    }
    Divisor::new(cluster.clone(), meet)
}

struct Search<'a> {
    matrix: &'a [Vec<i64>],
    lo: &'a [i64],
    hi: &'a [i64],
    current: Vec<i64>,
    meet: Option<Vec<i64>>,
    found: usize,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        let n = self.lo.len();
        if depth == n {
            if (0..n).all(|r| pairing(self.matrix, &self.current, r) <= 0) {
                self.found += 1;
                match &mut self.meet {
                    None => self.meet = Some(self.current.clone()),
                    Some(m) => m.iter_mut().zip(&self.current).for_each(|(a, &b)| *a = (*a).min(b)),
                }
            }
            return;
        }
        for x in self.lo[depth]..=self.hi[depth] {
            self.current[depth] = x;
            if !self.hopeless(depth) {
                self.run(depth + 1);
            }
        }
        self.current[depth] = self.lo[depth];
    }

    /// True if some row's pairing is positive for every completion of the
    /// first `depth + 1` coordinates. Off-diagonal entries are nonnegative
    /// and diagonal entries negative, so the smallest possible pairing puts
    /// free off-diagonal coordinates at their lower bound and a free
    /// diagonal coordinate at its upper bound.
    fn hopeless(&self, depth: usize) -> bool {
        let n = self.lo.len();
        (0..n).any(|r| {
            let least: i64 = (0..n)
                .map(|j| {
                    let a = self.matrix[r][j];
                    let x = if j <= depth {
                        self.current[j]
                    } else if a < 0 {
                        self.hi[j]
                    } else {
                        self.lo[j]
                    };
                    a * x
                })
                .sum();
            least > 0
        })
    }
}
