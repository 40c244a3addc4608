//! Newton polygons of monomial ideals in `k[[x, y]]` and the monomial
//! multiplier-ideal formula: `x^p y^q ∈ 𝒥(a^c)` iff `(p+1, q+1)` lies in
//! the interior of `c·Newt(a)`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::Rational;

/// Vertices of `conv(exponents) + R²₊`, sorted by `a` ascending (and so
/// `b` descending). The unit ideal is the single vertex `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    vertices: Vec<(u64, u64)>,
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a},{b}")?;
        }
        Ok(())
    }
}

impl NewtonPolygon {
    pub fn unit() -> Self {
        NewtonPolygon { vertices: vec![(0, 0)] }
    }

    pub fn vertices(&self) -> &[(u64, u64)] {
        &self.vertices
    }

    pub fn is_unit(&self) -> bool {
        self.vertices == [(0, 0)]
    }

    /// `min (α·a + β·b)` over the vertices: the monomial valuation of
    /// weight `(α, β)` on the ideal.
    pub fn weight_min(&self, (alpha, beta): (u64, u64)) -> u64 {
        self.vertices.iter().map(|&(a, b)| alpha * a + beta * b).min().expect("nonempty")
    }

    /// Is `(x, y)` in the topological interior of `c·P`?
    pub fn interior_of_scaled(&self, c: Rational, (x, y): (u64, u64)) -> bool {
        // the two unbounded edges lie on the axes
        if x == 0 || y == 0 {
            return false;
        }
        let (num, den) = (*c.numer() as i128, *c.denom() as i128);
        self.vertices.windows(2).all(|w| {
            let ((a1, b1), (a2, b2)) = (w[0], w[1]);
            let (nx, ny) = ((b1 - b2) as i128, (a2 - a1) as i128);
            let h = nx * a1 as i128 + ny * b1 as i128;
            // nx·x + ny·y > c·h
            (nx * x as i128 + ny * y as i128) * den > num * h
        })
    }
}

/// Newton polygon of the ideal generated by the given monomials.
pub fn newton_from_monomials(exponents: &[(u64, u64)]) -> Result<NewtonPolygon> {
    if exponents.is_empty() {
        return Err(Error::NotMPrimary);
    }
    if exponents.contains(&(0, 0)) {
        return Ok(NewtonPolygon::unit());
    }
    let has_x = exponents.iter().any(|&(_, b)| b == 0);
    let has_y = exponents.iter().any(|&(a, _)| a == 0);
    if !has_x || !has_y {
        return Err(Error::NotMPrimary);
    }
    // staircase of minimal generators
    let mut pts = exponents.to_vec();
    pts.sort_unstable();
    let mut stair: Vec<(u64, u64)> = Vec::new();
    for p in pts {
        if stair.last().is_none_or(|&(_, b)| p.1 < b) {
            stair.push(p);
        }
    }
    // lower convex hull, strictly convex
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 as i128 - o.0 as i128) * (p.1 as i128 - o.1 as i128)
                - (a.1 as i128 - o.1 as i128) * (p.0 as i128 - o.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// Monomial multiplier ideal `𝒥(a^c)`, returned as its Newton polygon.
pub fn howald_multiplier(p: &NewtonPolygon, c: Rational) -> Result<NewtonPolygon> {
    if c <= Rational::from_integer(0) {
        return Err(Error::NonPositiveExponent);
    }
    if p.is_unit() {
        return Ok(NewtonPolygon::unit());
    }
    let (a_max, b_max) = (p.vertices.last().expect("nonempty").0, p.vertices[0].1);
    let scaled =
        |t: u64| -> u64 { Integer::div_ceil(&(*c.numer() as i128 * t as i128), &(*c.denom() as i128)) as u64 + 1 };
    let (p_bound, q_bound) = (scaled(a_max), scaled(b_max));
    let mut gens = Vec::new();
    for x in 0..=p_bound {
        if let Some(q) = (0..=q_bound).find(|&q| p.interior_of_scaled(c, (x + 1, q + 1))) {
            gens.push((x, q));
            if q == 0 {
                break;
            }
        }
    }
    newton_from_monomials(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(e: &[(u64, u64)]) -> NewtonPolygon {
        newton_from_monomials(e).unwrap()
    }

    #[test]
    fn polygons() {
        assert_eq!(poly(&[(1, 0), (0, 1)]).vertices(), &[(0, 1), (1, 0)]);
        assert_eq!(poly(&[(1, 0), (0, 2)]).vertices(), &[(0, 2), (1, 0)]);
        assert_eq!(poly(&[(3, 0), (1, 1), (0, 3)]).vertices(), &[(0, 3), (1, 1), (3, 0)]);
        // (1,1) on the segment, (2,2) above it
        assert_eq!(poly(&[(2, 0), (1, 1), (0, 2), (2, 2)]).vertices(), &[(0, 2), (2, 0)]);
        assert!(poly(&[(0, 0), (1, 0)]).is_unit());
        assert_eq!(newton_from_monomials(&[(1, 1), (2, 0)]), Err(Error::NotMPrimary));
        assert_eq!(newton_from_monomials(&[]), Err(Error::NotMPrimary));
    }

    #[test]
    fn howald_examples() {
        let m = poly(&[(1, 0), (0, 1)]);
        let r = |p, q| Rational::new(p, q);
        for c in [r(2, 1), r(5, 2), r(11, 4)] {
            assert_eq!(howald_multiplier(&m, c).unwrap(), m);
        }
        for c in [r(1, 2), r(1, 1), r(3, 2), r(19, 10)] {
            assert!(howald_multiplier(&m, c).unwrap().is_unit());
        }
        assert_eq!(howald_multiplier(&m, r(3, 1)).unwrap(), poly(&[(2, 0), (0, 2)]));

        let xy2 = poly(&[(1, 0), (0, 2)]);
        assert_eq!(howald_multiplier(&xy2, r(3, 2)).unwrap(), m);
        assert!(howald_multiplier(&xy2, r(7, 5)).unwrap().is_unit());
    }
}
