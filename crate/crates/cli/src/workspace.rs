//! Resolves a parsed document into library objects.

use std::collections::HashSet;
use std::sync::Arc;

use complete_ideals::oracle::{monomial_to_cluster, newton_from_monomials, NewtonPolygon};
use complete_ideals::{validate, Cluster, CompleteIdeal, Divisor, Exponent, PointId, PointRecord};

use crate::document::{Document, IdealData, Item, PointSpec};
use crate::error::CliError;

#[derive(Clone, Debug)]
pub enum Object {
    Cluster(Arc<Cluster>),
    Divisor(Divisor),
    Ideal(CompleteIdeal),
    Monomial(NewtonPolygon),
    Certificate { target: String, companion: String, c: Exponent },
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    objects: Vec<(String, Object)>,
}

fn records(points: &[PointSpec]) -> Vec<PointRecord> {
    points
        .iter()
        .map(|p| match *p {
            PointSpec::Root => PointRecord::ROOT,
            PointSpec::Parent { parent, satellite } => {
                PointRecord { parent: Some(PointId(parent)), satellite: satellite.map(PointId) }
            }
        })
        .collect()
}

/// Inverse of the `point` lines of a cluster block.
pub fn point_specs(cluster: &Cluster) -> Vec<PointSpec> {
    cluster
        .records()
        .iter()
        .map(|r| match r.parent {
            None => PointSpec::Root,
            Some(p) => PointSpec::Parent { parent: p.0, satellite: r.satellite.map(|s| s.0) },
        })
        .collect()
}

impl Workspace {
    /// Resolves every item; the first semantic error aborts.
    pub fn load(doc: &Document) -> Result<Self, CliError> {
        let (ws, errors) = Self::load_lenient(doc);
        match errors.into_iter().next() {
            Some(e) => Err(e),
            None => Ok(ws),
        }
    }

    /// Resolves what it can and returns one error per failing item.
    pub fn load_lenient(doc: &Document) -> (Self, Vec<CliError>) {
        let mut ws = Workspace::default();
        let mut errors = Vec::new();
        let mut seen = HashSet::new();
        for item in &doc.items {
            let name = item.name().to_string();
            let resolved =
                if !seen.insert(name.clone()) { Err(format!("duplicate name `{name}`")) } else { ws.resolve(item) };
            match resolved {
                Ok(obj) => ws.objects.push((name, obj)),
                Err(msg) => errors.push(CliError::Semantic { kind: item.kind(), name, message: msg }),
            }
        }
        (ws, errors)
    }

    fn resolve(&self, item: &Item) -> Result<Object, String> {
        Ok(match item {
            Item::Cluster { points, .. } => {
                let recs = records(points);
                let report = validate(&recs);
                if !report.is_ok() {
                    let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                    return Err(msgs.join("; "));
                }
                Object::Cluster(Arc::new(Cluster::new(recs).map_err(|e| e.to_string())?))
            }
            Item::Divisor { cluster, values, .. } => {
                Object::Divisor(Divisor::new(self.cluster(cluster)?, values.clone()).map_err(|e| e.to_string())?)
            }
            Item::Ideal { cluster, data, entries, .. } => {
                let c = self.cluster(cluster)?;
                let ideal = match data {
                    IdealData::Mults => CompleteIdeal::from_point_basis(c, entries),
                    IdealData::Values => Divisor::new(c, entries.clone()).and_then(CompleteIdeal::from_antinef),
                };
                Object::Ideal(ideal.map_err(|e| e.to_string())?)
            }
            Item::Monomial { gens, .. } => {
                let p = newton_from_monomials(gens).map_err(|e| e.to_string())?;
                if p.is_unit() {
                    return Err("not an m-primary monomial ideal".into());
                }
                Object::Monomial(p)
            }
            Item::Certificate { target, companion, c, .. } => {
                for n in [target, companion] {
                    self.ideal(n)?;
                }
                Object::Certificate { target: target.clone(), companion: companion.clone(), c: *c }
            }
        })
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, &Object)> {
        self.objects.iter().map(|(n, o)| (n.as_str(), o))
    }

    fn lookup(&self, name: &str) -> Result<&Object, String> {
        self.get(name).ok_or_else(|| format!("unknown name `{name}`"))
    }

    /// The cluster itself, or the cluster an object lives on.
    pub fn cluster(&self, name: &str) -> Result<Arc<Cluster>, String> {
        Ok(match self.lookup(name)? {
            Object::Cluster(c) => c.clone(),
            Object::Divisor(d) => d.cluster().clone(),
            Object::Ideal(i) => i.cluster().clone(),
            Object::Monomial(_) | Object::Certificate { .. } => self.ideal(name)?.cluster().clone(),
        })
    }

    /// Divisors are read as the ideal of their unloading; monomial ideals
    /// live on their toric cluster.
    pub fn ideal(&self, name: &str) -> Result<CompleteIdeal, String> {
        match self.lookup(name)? {
            Object::Ideal(i) => Ok(i.clone()),
            Object::Divisor(d) => Ok(CompleteIdeal::from_divisor(d)),
            Object::Monomial(p) => Ok(monomial_to_cluster(p).map_err(|e| e.to_string())?.ideal),
            Object::Cluster(_) => Err(format!("`{name}` is a cluster, not an ideal")),
            Object::Certificate { .. } => Err(format!("`{name}` is a certificate, not an ideal")),
        }
    }

    pub fn divisor(&self, name: &str) -> Result<Divisor, String> {
        match self.lookup(name)? {
            Object::Divisor(d) => Ok(d.clone()),
            _ => Ok(self.ideal(name)?.divisor().clone()),
        }
    }

    pub fn monomial(&self, name: &str) -> Result<NewtonPolygon, String> {
        match self.lookup(name)? {
            Object::Monomial(p) => Ok(p.clone()),
            _ => Err(format!("`{name}` is not a monomial ideal")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse;

    #[test]
    fn resolves_and_reports() {
        let doc =
            parse("cluster C\npoint 1 root\npoint 2 parent 1\nideal J on C mults 2 1\ndivisor D on C values 1 0\n")
                .unwrap();
        let ws = Workspace::load(&doc).unwrap();
        assert_eq!(ws.ideal("J").unwrap().point_basis().0, vec![2, 1]);
        assert_eq!(ws.ideal("D").unwrap().divisor().coeffs(), &[1, 1]);
        assert_eq!(point_specs(&ws.cluster("J").unwrap()).len(), 2);

        let bad =
            parse("cluster C\npoint 1 root\nideal J on C mults 1 1\nideal J on C mults 1\nideal K on X mults 1\n")
                .unwrap();
        let (_, errors) = Workspace::load_lenient(&bad);
        let msgs: Vec<String> = errors.iter().map(|e| e.to_string()).collect();
        assert_eq!(msgs.len(), 3);
        assert!(msgs[0].starts_with("ideal J: divisor has 2"), "{msgs:?}");
        assert_eq!(msgs[1], "ideal J: duplicate name `J`");
        assert_eq!(msgs[2], "ideal K: unknown name `X`");
    }
}
