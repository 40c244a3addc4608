//! Complete `m`-primary ideals as antinef divisors.
//!
//! An antinef divisor `D` on a cluster stands for the complete ideal of
//! functions whose values along every `Eⁱ` are at least `dᵢ`. Products of
//! ideals are sums of divisors, containment is reverse componentwise order,
//! and the Zariski factorization into simple ideals is read off the
//! excesses `-D·Eⁱ`.

use std::fmt;
use std::sync::Arc;

use crate::cluster::{Cluster, PointId};
use crate::error::{Error, Result};
use crate::lattice::{simple_generator, Divisor};

/// A complete ideal: an antinef divisor, equal to its own unloading.
/// The zero divisor is the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIdeal {
    divisor: Divisor,
}

/// Multiplicities of an ideal's transforms at each cluster point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointBasis(pub Vec<i64>);

impl fmt::Display for PointBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::lattice::write_vector(f, &self.0)
    }
}

/// One factor `P_i^e` of a Zariski factorization.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimpleFactor {
    pub point: PointId,
    pub exponent: u64,
}

impl CompleteIdeal {
    /// Wraps a divisor that is already antinef.
    pub fn from_antinef(divisor: Divisor) -> Result<Self> {
        if !divisor.is_antinef() {
            return Err(Error::NotCanonical("divisor is not antinef".into()));
        }
        Ok(CompleteIdeal { divisor })
    }

    /// The complete ideal of an arbitrary divisor, via unloading.
    pub fn from_divisor(divisor: &Divisor) -> Self {
        CompleteIdeal { divisor: divisor.unload() }
    }

    /// Ideal with the given point basis. The multiplicities must be
    /// nonnegative and satisfy the proximity inequalities.
    pub fn from_point_basis(cluster: Arc<Cluster>, mults: &[i64]) -> Result<Self> {
        if let Some(i) = mults.iter().position(|&m| m < 0) {
            return Err(Error::NotCanonical(format!("negative multiplicity at {}", PointId::from_index(i))));
        }
        let divisor = Divisor::from_multiplicities(cluster, mults)?;
        if let Some(i) = divisor.excesses().iter().position(|&e| e < 0) {
            return Err(Error::NotCanonical(format!("proximity inequality fails at {}", PointId::from_index(i))));
        }
        Ok(CompleteIdeal { divisor })
    }

    pub fn unit(cluster: Arc<Cluster>) -> Self {
        CompleteIdeal { divisor: Divisor::zero(cluster) }
    }

    /// The maximal ideal `m` on the given cluster.
    pub fn maximal(cluster: Arc<Cluster>) -> Self {
        let mut m = vec![0; cluster.len()];
        m[0] = 1;
        CompleteIdeal { divisor: Divisor::from_multiplicities(cluster, &m).expect("length matches") }
    }

    /// The simple ideal attached to point `i`.
    pub fn simple(cluster: &Arc<Cluster>, i: PointId) -> Result<Self> {
        Ok(CompleteIdeal { divisor: simple_generator(cluster, i)? })
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn cluster(&self) -> &Arc<Cluster> {
        self.divisor.cluster()
    }

    pub fn is_unit(&self) -> bool {
        self.divisor.is_zero()
    }

    pub fn point_basis(&self) -> PointBasis {
        PointBasis(self.divisor.multiplicities())
    }

    /// Multiplicity at the root.
    pub fn order(&self) -> u64 {
        self.divisor.coeffs()[0] as u64
    }

    /// Codimension in `R`, `Σ mᵢ(mᵢ+1)/2` over the point basis.
    pub fn colength(&self) -> u64 {
        self.point_basis().0.iter().map(|&m| (m * (m + 1) / 2) as u64).sum()
    }

    /// Pulls the ideal back to an extension of its cluster.
    pub fn pullback(&self, extended: &Arc<Cluster>) -> Result<Self> {
        Ok(CompleteIdeal { divisor: self.divisor.pullback(extended)? })
    }

    /// Drops trailing points that are not base points of the ideal.
    pub fn trimmed(&self) -> Self {
        let m = self.divisor.multiplicities();
        let keep = m.iter().rposition(|&x| x != 0).map_or(1, |i| i + 1);
        let cluster = self.cluster();
        if keep == cluster.len() {
            return self.clone();
        }
        let prefix = Arc::new(Cluster::new(cluster.records()[..keep].to_vec()).expect("prefix of a valid cluster"));
        CompleteIdeal { divisor: self.divisor.truncated(&prefix).expect("prefix") }
    }

    pub fn product(&self, other: &CompleteIdeal) -> Result<CompleteIdeal> {
        let (a, b) = common_extension(self, other)?;
        Ok(CompleteIdeal { divisor: a.divisor.try_add(&b.divisor)? })
    }

    /// Zariski factorization: exponent `eᵢ = -D·Eⁱ` for each point with a
    /// nonzero excess, in point order.
    pub fn factor_simple(&self) -> Vec<SimpleFactor> {
        self.divisor
            .excesses()
            .into_iter()
            .enumerate()
            .filter(|&(_, e)| e != 0)
            .map(|(i, e)| SimpleFactor { point: PointId::from_index(i), exponent: e as u64 })
            .collect()
    }

    /// `Σ eᵢ·Gᵢ` over the factorization.
    pub fn reconstruct(factors: &[SimpleFactor], cluster: &Arc<Cluster>) -> Result<Divisor> {
        let mut total = Divisor::zero(cluster.clone());
        for f in factors {
            total = total.try_add(&simple_generator(cluster, f.point)?.scaled(f.exponent as i64))?;
        }
        Ok(total)
    }

    pub fn is_simple(&self) -> bool {
        matches!(self.factor_simple().as_slice(), [f] if f.exponent == 1)
    }

    pub fn rees_components(&self) -> Vec<PointId> {
        self.factor_simple().into_iter().map(|f| f.point).collect()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &CompleteIdeal) -> Result<bool> {
        let (a, b) = common_extension(self, other)?;
        b.divisor.dominates(&a.divisor)
    }

    /// Equality as ideals, after pulling back to a common cluster.
    pub fn same_ideal(&self, other: &CompleteIdeal) -> Result<bool> {
        let (a, b) = common_extension(self, other)?;
        Ok(a.divisor.coeffs() == b.divisor.coeffs())
    }
}

/// Pulls both ideals back to the longer of their clusters, which must
/// extend the other one.
fn common_extension(a: &CompleteIdeal, b: &CompleteIdeal) -> Result<(CompleteIdeal, CompleteIdeal)> {
    let (ca, cb) = (a.cluster(), b.cluster());
    if ca.is_prefix_of(cb) {
        Ok((a.pullback(cb)?, b.clone()))
    } else if cb.is_prefix_of(ca) {
        Ok((a.clone(), b.pullback(ca)?))
    } else {
        Err(Error::ClusterMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::PointRecord;

    fn chain(n: usize) -> Arc<Cluster> {
        Arc::new(Cluster::free_chain(n).unwrap())
    }

    fn order16() -> CompleteIdeal {
        let c = Arc::new(Cluster::from_multiplicity_sequence(&[16, 8, 8, 4, 4, 2, 2, 1, 1]).unwrap());
        CompleteIdeal::from_point_basis(c, &[16, 8, 8, 4, 4, 2, 2, 1, 1]).unwrap()
    }

    fn ideal(c: &Arc<Cluster>, v: &[i64]) -> CompleteIdeal {
        CompleteIdeal::from_antinef(Divisor::new(c.clone(), v.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn from_divisor_unloads() {
        let c = chain(2);
        let d = Divisor::new(c.clone(), vec![0, 1]).unwrap();
        let i = CompleteIdeal::from_divisor(&d);
        assert_eq!(i.divisor().coeffs(), &[1, 1]);
        assert_eq!(i, CompleteIdeal::maximal(c.clone()));
        assert!(CompleteIdeal::from_divisor(&Divisor::zero(c.clone())).is_unit());
        assert!(CompleteIdeal::from_antinef(d).is_err());
    }

    #[test]
    fn point_bases_orders_colengths() {
        let c = chain(2);
        assert_eq!(CompleteIdeal::maximal(c.clone()).point_basis().0, vec![1, 0]);
        assert_eq!(ideal(&c, &[1, 2]).point_basis().0, vec![1, 1]);
        let j = order16();
        assert_eq!(j.point_basis().0, vec![16, 8, 8, 4, 4, 2, 2, 1, 1]);
        assert_eq!(j.order(), 16);
        assert_eq!(j.colength(), 236);

        let root = Arc::new(Cluster::root());
        assert_eq!(CompleteIdeal::unit(root.clone()).order(), 0);
        assert_eq!(CompleteIdeal::unit(root.clone()).colength(), 0);
        assert_eq!(CompleteIdeal::maximal(root.clone()).order(), 1);
        assert_eq!(CompleteIdeal::maximal(root.clone()).colength(), 1);
        assert_eq!(ideal(&root, &[2]).colength(), 3);
    }

    #[test]
    fn invalid_point_bases() {
        let c = chain(2);
        assert!(CompleteIdeal::from_point_basis(c.clone(), &[1, -1]).is_err());
        assert!(CompleteIdeal::from_point_basis(c.clone(), &[1, 2]).is_err());
        assert!(CompleteIdeal::from_point_basis(c, &[1]).is_err());
    }

    #[test]
    fn products() {
        let root = Arc::new(Cluster::root());
        let m = CompleteIdeal::maximal(root.clone());
        assert_eq!(m.product(&CompleteIdeal::unit(root.clone())).unwrap(), m);
        assert_eq!(m.product(&m).unwrap().divisor().coeffs(), &[2]);
        // product across a prefix extension
        let c = chain(2);
        let g = ideal(&c, &[1, 2]);
        assert_eq!(m.product(&g).unwrap().divisor().coeffs(), &[2, 3]);
        let other = Arc::new(
            Cluster::new(vec![
                PointRecord::ROOT,
                PointRecord::free(PointId(1)),
                PointRecord::satellite(PointId(2), PointId(1)),
            ])
            .unwrap(),
        );
        let (c4, _) = c.extend_with_chain(PointId(1), 1).unwrap();
        let g4 = CompleteIdeal::simple(&Arc::new(c4), PointId(3)).unwrap();
        assert!(g4.product(&CompleteIdeal::unit(other)).is_err());
    }

    #[test]
    fn factorizations() {
        let c = chain(2);
        let f = ideal(&c, &[1, 2]).factor_simple();
        assert_eq!(f, vec![SimpleFactor { point: PointId(2), exponent: 1 }]);
        let f = ideal(&c, &[1, 1]).factor_simple();
        assert_eq!(f, vec![SimpleFactor { point: PointId(1), exponent: 1 }]);
        let j = order16();
        assert_eq!(j.factor_simple(), vec![SimpleFactor { point: PointId(9), exponent: 1 }]);
        assert!(j.is_simple());
        let rebuilt = CompleteIdeal::reconstruct(&j.factor_simple(), j.cluster()).unwrap();
        assert_eq!(&rebuilt, j.divisor());
    }

    #[test]
    fn simplicity_and_rees() {
        let root = Arc::new(Cluster::root());
        let m = CompleteIdeal::maximal(root.clone());
        assert!(m.is_simple());
        assert!(!m.product(&m).unwrap().is_simple());
        assert_eq!(m.rees_components(), vec![PointId(1)]);

        let (c, _) = chain(2).extend_with_chain(PointId(1), 1).unwrap();
        let c = Arc::new(c);
        let a = CompleteIdeal::simple(&c, PointId(2)).unwrap();
        let b = CompleteIdeal::simple(&c, PointId(3)).unwrap();
        let ab = a.product(&b).unwrap();
        assert!(!ab.is_simple());
        assert_eq!(ab.rees_components(), vec![PointId(2), PointId(3)]);
        assert_eq!(a.rees_components(), vec![PointId(2)]);
    }

    #[test]
    fn containment() {
        let c = chain(4);
        let unit = CompleteIdeal::unit(c.clone());
        let simples: Vec<_> = c.points().map(|p| CompleteIdeal::simple(&c, p).unwrap()).collect();
        for s in &simples {
            assert!(s.contains(s).unwrap());
            assert!(unit.contains(s).unwrap());
        }
        for w in simples.windows(2) {
            assert!(w[0].contains(&w[1]).unwrap());
            assert!(!w[1].contains(&w[0]).unwrap());
        }
    }

    #[test]
    fn trimming() {
        let c = chain(3);
        let m = CompleteIdeal::maximal(c);
        let t = m.trimmed();
        assert_eq!(t.cluster().len(), 1);
        assert!(t.same_ideal(&m).unwrap());
    }
}
