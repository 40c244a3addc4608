//! The divisor lattice of a cluster.
//!
//! Divisors are written in the basis of prime exceptional components, so
//! the coefficient at `Eⁱ` is the value of the divisorial valuation of point
//! `i`. With `P` the proximity matrix, the intersection form is `N = -PᵀP`,
//! the point basis (multiplicities) of `D` is `P·D`, and `-D·Eⁱ` equals the
//! excess `(Pᵀ·P·D)ᵢ`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;

use crate::cluster::{Cluster, PointId};
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Symmetric intersection matrix of the exceptional prime components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    pub entries: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i64 {
        bareiss_determinant(&self.entries)
    }

    /// Sylvester's criterion on `-N`.
    pub fn is_negative_definite(&self) -> bool {
        let n = self.size();
        (1..=n).all(|k| {
            let minor: Vec<Vec<i64>> =
                self.entries[..k].iter().map(|row| row[..k].iter().map(|x| -x).collect()).collect();
            bareiss_determinant(&minor) > 0
        })
    }

    pub fn quadratic(&self, x: &[i64]) -> i64 {
        let mut total = 0;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                total += a * x[i] * x[j];
            }
        }
        total
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.entries.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

fn bareiss_determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// `N = -PᵀP` for the cluster's proximity matrix `P`.
pub fn intersection_matrix(cluster: &Cluster) -> IntersectionForm {
    let p = cluster.proximity_matrix().entries;
    let n = p.len();
    let mut entries = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = -(0..n).map(|k| p[k][i] * p[k][j]).sum::<i64>();
        }
    }
    IntersectionForm { entries }
}

/// An integral exceptional divisor on a cluster.
#[derive(Clone, Debug)]
pub struct Divisor {
    cluster: Arc<Cluster>,
    coeffs: Vec<i64>,
}

impl PartialEq for Divisor {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_cluster(&self.cluster, &other.cluster)
    }
}

impl Eq for Divisor {}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.coeffs)
    }
}

pub(crate) fn write_vector<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn same_cluster(a: &Arc<Cluster>, b: &Arc<Cluster>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Divisor {
    pub fn new(cluster: Arc<Cluster>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != cluster.len() {
            return Err(Error::LengthMismatch { expected: cluster.len(), got: coeffs.len() });
        }
        Ok(Divisor { cluster, coeffs })
    }

    pub fn zero(cluster: Arc<Cluster>) -> Self {
        let n = cluster.len();
        Divisor { cluster, coeffs: vec![0; n] }
    }

    /// The prime exceptional component `Eⁱ`.
    pub fn prime(cluster: Arc<Cluster>, i: PointId) -> Result<Self> {
        if !cluster.contains_point(i) {
            return Err(Error::UnknownPoint(i));
        }
        let mut d = Divisor::zero(cluster);
        d.coeffs[i.index()] = 1;
        Ok(d)
    }

    /// The divisor whose point basis is `mults`, i.e. `P⁻¹·mults`.
    pub fn from_multiplicities(cluster: Arc<Cluster>, mults: &[i64]) -> Result<Self> {
        if mults.len() != cluster.len() {
            return Err(Error::LengthMismatch { expected: cluster.len(), got: mults.len() });
        }
        let mut coeffs = vec![0i64; mults.len()];
        for p in cluster.points() {
            coeffs[p.index()] = mults[p.index()] + cluster.targets(p).map(|t| coeffs[t.index()]).sum::<i64>();
        }
        Ok(Divisor { cluster, coeffs })
    }

    pub fn cluster(&self) -> &Arc<Cluster> {
        &self.cluster
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: PointId) -> i64 {
        self.coeffs[i.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `P·D`, the multiplicities at each point.
    pub fn multiplicities(&self) -> Vec<i64> {
        self.cluster
            .points()
            .map(|p| self.coeffs[p.index()] - self.cluster.targets(p).map(|t| self.coeffs[t.index()]).sum::<i64>())
            .collect()
    }

    /// `-D·Eⁱ` for every `i`.
    pub fn excesses(&self) -> Vec<i64> {
        let m = self.multiplicities();
        self.cluster
            .points()
            .map(|p| m[p.index()] - self.cluster.proximate_to(p).map(|q| m[q.index()]).sum::<i64>())
            .collect()
    }

    /// `D·Eⁱ` for every `i`.
    pub fn pairings(&self) -> Vec<i64> {
        self.excesses().into_iter().map(|e| -e).collect()
    }

    /// `D·Eⁱ`.
    pub fn pair(&self, i: PointId) -> Result<i64> {
        if !self.cluster.contains_point(i) {
            return Err(Error::UnknownPoint(i));
        }
        Ok(self.pairings()[i.index()])
    }

    /// Intersection number of two divisors on the same cluster.
    pub fn dot(&self, other: &Divisor) -> Result<i64> {
        self.check_same(other)?;
        Ok(self.pairings().iter().zip(&other.coeffs).map(|(a, b)| a * b).sum())
    }

    pub fn is_antinef(&self) -> bool {
        self.excesses().iter().all(|&e| e >= 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &Divisor) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b))
    }

    pub fn try_add(&self, other: &Divisor) -> Result<Divisor> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Divisor { cluster: self.cluster.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Divisor) -> Result<Divisor> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Divisor { cluster: self.cluster.clone(), coeffs })
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor { cluster: self.cluster.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    fn check_same(&self, other: &Divisor) -> Result<()> {
        if same_cluster(&self.cluster, &other.cluster) {
            Ok(())
        } else {
            Err(Error::ClusterMismatch)
        }
    }

    /// Pullback to a cluster that has this divisor's cluster as a prefix.
    /// A new point receives the sum of the values at its proximity targets.
    pub fn pullback(&self, extended: &Arc<Cluster>) -> Result<Divisor> {
        if !self.cluster.is_prefix_of(extended) {
            return Err(Error::NotAnExtension);
        }
        let mut coeffs = self.coeffs.clone();
        for p in extended.points().skip(self.coeffs.len()) {
            let v = extended.targets(p).map(|t| coeffs[t.index()]).sum();
            coeffs.push(v);
        }
        Ok(Divisor { cluster: extended.clone(), coeffs })
    }

    /// Restriction to the first `len` points.
    pub fn truncated(&self, prefix: &Arc<Cluster>) -> Result<Divisor> {
        if !prefix.is_prefix_of(&self.cluster) {
            return Err(Error::NotAnExtension);
        }
        Ok(Divisor { cluster: prefix.clone(), coeffs: self.coeffs[..prefix.len()].to_vec() })
    }

    /// Least antinef divisor `≥ self`.
    ///
    /// While some `Eⁱ` pairs positively, every antinef majorant also
    /// dominates `D + Eⁱ`; each pass discharges the lowest such index by
    /// the smallest multiple of `Eⁱ` that makes its pairing non-positive.
    pub fn unload(&self) -> Divisor {
        let mut d = self.clone();
        loop {
            let pairings = d.pairings();
            let Some(i) = pairings.iter().position(|&x| x > 0) else {
                return d;
            };
            let self_int = d.cluster.proximate_to(PointId::from_index(i)).count() as i64 + 1;
            let steps = Integer::div_ceil(&pairings[i], &self_int);
            d.coeffs[i] += steps;
        }
    }

    /// `⌊c·D⌋` componentwise.
    pub fn floor_scale(&self, c: Rational) -> Divisor {
        let coeffs = self.coeffs.iter().map(|&d| floor_mul(c, d)).collect();
        Divisor { cluster: self.cluster.clone(), coeffs }
    }

    /// Largest integer strictly below `c·dᵢ`, componentwise. This is the
    /// left limit of `⌊c'·D⌋` as `c'` increases to `c`.
    pub fn strict_floor_scale(&self, c: Rational) -> Divisor {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&d| {
                let (num, den) = mul_parts(c, d);
                Integer::div_ceil(&num, &den) as i64 - 1
            })
            .collect();
        Divisor { cluster: self.cluster.clone(), coeffs }
    }
}

fn mul_parts(c: Rational, d: i64) -> (i128, i128) {
    (*c.numer() as i128 * d as i128, *c.denom() as i128)
}

pub(crate) fn floor_mul(c: Rational, d: i64) -> i64 {
    let (num, den) = mul_parts(c, d);
    Integer::div_floor(&num, &den) as i64
}

/// The canonical divisor `K` of the cluster, `K·Eⁱ = -Eⁱ·Eⁱ - 2`.
/// Its coefficients satisfy `kᵢ = 1 + Σ k_t` over the proximity targets.
pub fn canonical_divisor(cluster: &Arc<Cluster>) -> Divisor {
    let ones = vec![1; cluster.len()];
    Divisor::from_multiplicities(cluster.clone(), &ones).expect("length matches")
}

/// The divisor `Gᵢ` with `Gᵢ·Eʲ = -δᵢⱼ`.
pub fn simple_generator(cluster: &Arc<Cluster>, i: PointId) -> Result<Divisor> {
    if !cluster.contains_point(i) {
        return Err(Error::UnknownPoint(i));
    }
    // Solve Pᵀ·m = eᵢ by back substitution, then D = P⁻¹·m.
    let n = cluster.len();
    let mut m = vec![0i64; n];
    for p in cluster.points().rev() {
        let delta = i64::from(p == i);
        m[p.index()] = delta + cluster.proximate_to(p).map(|q| m[q.index()]).sum::<i64>();
    }
    Divisor::from_multiplicities(cluster.clone(), &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::PointRecord;

    fn arc(c: Cluster) -> Arc<Cluster> {
        Arc::new(c)
    }

    fn chain(n: usize) -> Arc<Cluster> {
        arc(Cluster::free_chain(n).unwrap())
    }

    fn satellite3() -> Arc<Cluster> {
        arc(Cluster::new(vec![
            PointRecord::ROOT,
            PointRecord::free(PointId(1)),
            PointRecord::satellite(PointId(2), PointId(1)),
        ])
        .unwrap())
    }

    fn order16() -> Arc<Cluster> {
        arc(Cluster::from_multiplicity_sequence(&[16, 8, 8, 4, 4, 2, 2, 1, 1]).unwrap())
    }

    fn div(c: &Arc<Cluster>, v: &[i64]) -> Divisor {
        Divisor::new(c.clone(), v.to_vec()).unwrap()
    }

    #[test]
    fn intersection_matrices() {
        assert_eq!(intersection_matrix(&Cluster::root()).entries, vec![vec![-1]]);
        assert_eq!(intersection_matrix(&chain(2)).entries, vec![vec![-2, 1], vec![1, -1]]);
        let n = intersection_matrix(&satellite3());
        assert_eq!(n.entries, vec![vec![-3, 0, 1], vec![0, -2, 1], vec![1, 1, -1]]);
        assert_eq!(n.determinant().abs(), 1);
        assert!(n.is_negative_definite());
    }

    #[test]
    fn determinant_of_small_matrices() {
        assert_eq!(bareiss_determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(bareiss_determinant(&[vec![2, 3], vec![4, 5]]), -2);
        assert_eq!(bareiss_determinant(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn pairings() {
        let e1 = Divisor::prime(arc(Cluster::root()), PointId(1)).unwrap();
        assert_eq!(e1.pair(PointId(1)).unwrap(), -1);
        let c = chain(2);
        let d = div(&c, &[1, 1]);
        assert_eq!((d.pair(PointId(1)).unwrap(), d.pair(PointId(2)).unwrap()), (-1, 0));
        let g = div(&c, &[1, 2]);
        assert_eq!(g.pairings(), vec![0, -1]);
        assert!(d.pair(PointId(3)).is_err());
        // pairings agree with the matrix product
        let n = intersection_matrix(&c);
        assert_eq!(n.apply(g.coeffs()), g.pairings());
    }

    #[test]
    fn canonical_divisors() {
        assert_eq!(canonical_divisor(&arc(Cluster::root())).coeffs(), &[1]);
        assert_eq!(canonical_divisor(&chain(2)).coeffs(), &[1, 2]);
        let k = canonical_divisor(&order16());
        assert_eq!(k.coeffs(), &[1, 2, 4, 5, 10, 11, 22, 23, 46]);
        // K·Eⁱ = -Eⁱ·Eⁱ - 2
        let c = order16();
        let n = intersection_matrix(&c);
        for (i, p) in k.pairings().iter().enumerate() {
            assert_eq!(*p, -n.entries[i][i] - 2);
        }
    }

    #[test]
    fn pullbacks() {
        let root = arc(Cluster::root());
        let c2 = chain(2);
        let d = div(&root, &[1]);
        assert_eq!(d.pullback(&c2).unwrap().coeffs(), &[1, 1]);

        let (c3, _) = c2.extend_with_chain(PointId(2), 1).unwrap();
        let c3 = arc(c3);
        assert_eq!(div(&c2, &[1, 2]).pullback(&c3).unwrap().coeffs(), &[1, 2, 2]);

        let k_pulled = canonical_divisor(&root).pullback(&c2).unwrap();
        assert_eq!(k_pulled.coeffs(), &[1, 1]);
        assert_eq!(canonical_divisor(&c2).try_sub(&k_pulled).unwrap().coeffs(), &[0, 1]);

        assert!(div(&c2, &[1, 2]).pullback(&satellite3()).is_ok());
        assert_eq!(div(&c2, &[1, 2]).pullback(&root), Err(Error::NotAnExtension));
    }

    #[test]
    fn antinef_tests() {
        let c = chain(2);
        assert!(div(&c, &[1, 1]).is_antinef());
        assert!(!div(&c, &[0, 1]).is_antinef());
        assert!(Divisor::zero(c).is_antinef());
    }

    #[test]
    fn unloading() {
        let c = chain(2);
        assert_eq!(div(&c, &[1, 1]).unload().coeffs(), &[1, 1]);
        assert_eq!(div(&c, &[0, 1]).unload().coeffs(), &[1, 1]);
        assert_eq!(div(&c, &[-3, -1]).unload().coeffs(), &[0, 0]);
        assert_eq!(div(&satellite3(), &[0, 0, 5]).unload().coeffs(), &[2, 3, 5]);
    }

    #[test]
    fn simple_generators() {
        assert_eq!(simple_generator(&arc(Cluster::root()), PointId(1)).unwrap().coeffs(), &[1]);
        assert_eq!(simple_generator(&chain(2), PointId(2)).unwrap().coeffs(), &[1, 2]);
        let g = simple_generator(&satellite3(), PointId(3)).unwrap();
        assert_eq!(g.coeffs(), &[2, 3, 6]);
        assert_eq!(g.multiplicities(), vec![2, 1, 1]);
        assert_eq!(g.pairings(), vec![0, 0, -1]);
        assert!(simple_generator(&chain(2), PointId(3)).is_err());
    }

    #[test]
    fn floor_scaling() {
        let c = chain(2);
        let d = div(&c, &[1, 2]);
        assert_eq!(d.floor_scale(Rational::from_integer(1)), d);
        assert_eq!(d.floor_scale(Rational::new(3, 2)).coeffs(), &[1, 3]);
        assert_eq!(d.strict_floor_scale(Rational::new(3, 2)).coeffs(), &[1, 2]);
        assert_eq!(floor_mul(Rational::new(53, 48), 426), 470);
        assert_eq!(floor_mul(Rational::new(1, 2), -3), -2);
    }

    #[test]
    fn point_basis_round_trip() {
        let c = order16();
        let d = Divisor::from_multiplicities(c.clone(), &[16, 8, 8, 4, 4, 2, 2, 1, 1]).unwrap();
        assert_eq!(d.coeffs(), &[16, 24, 48, 52, 104, 106, 212, 213, 426]);
        assert_eq!(d.multiplicities(), vec![16, 8, 8, 4, 4, 2, 2, 1, 1]);
    }
}
