//! Multiplier ideals `𝒥(I^c)` of complete ideals.
//!
//! On a cluster where `I` corresponds to the antinef divisor `G`, the
//! multiplier ideal is the complete ideal of `⌊c·G⌋ - K`, with `K` the
//! canonical divisor. For an `m`-primary ideal any cluster carrying `G` is
//! already a log resolution, so no normal-crossing check is needed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cluster::Cluster;
use crate::dictionary::CompleteIdeal;
use crate::error::{Error, Result};
use crate::lattice::{canonical_divisor, Divisor, Rational};

/// A positive rational exponent, kept in lowest terms.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Rational);

impl Exponent {
    pub fn new(value: Rational) -> Result<Self> {
        if value <= Rational::zero() {
            return Err(Error::NonPositiveExponent);
        }
        Ok(Exponent(value))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::NonPositiveExponent);
        }
        Exponent::new(Rational::new(numer, denom))
    }

    pub fn integer(n: i64) -> Result<Self> {
        Exponent::new(Rational::from_integer(n))
    }

    pub fn one() -> Self {
        Exponent(Rational::one())
    }

    pub fn value(self) -> Rational {
        self.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let r = parse_rational(s)?;
        Exponent::new(r).map_err(|e| e.to_string())
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("invalid rational `{s}`");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => s.trim().parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// `⌊c·G⌋ - K` before unloading.
pub fn multiplier_divisor(ideal: &CompleteIdeal, c: Exponent) -> Divisor {
    let k = canonical_divisor(ideal.cluster());
    ideal.divisor().floor_scale(c.value()).try_sub(&k).expect("same cluster")
}

pub fn multiplier_ideal(ideal: &CompleteIdeal, c: Exponent) -> CompleteIdeal {
    CompleteIdeal::from_divisor(&multiplier_divisor(ideal, c))
}

/// `𝒥(I^{c'})` for `c' < c` close to `c`.
fn left_limit(ideal: &CompleteIdeal, c: Exponent) -> CompleteIdeal {
    let k = canonical_divisor(ideal.cluster());
    let d = ideal.divisor().strict_floor_scale(c.value()).try_sub(&k).expect("same cluster");
    CompleteIdeal::from_divisor(&d)
}

/// Jumping numbers of `I` in `(0, max]`, ascending.
///
/// Every jump lies among `(kᵢ + s)/gᵢ`, `s ≥ 1`, over points with `gᵢ > 0`;
/// a candidate is kept when the multiplier ideal differs from its left
/// limit.
pub fn jumping_numbers(ideal: &CompleteIdeal, max: Exponent) -> Result<Vec<Exponent>> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let k = canonical_divisor(ideal.cluster());
    let mut candidates = BTreeSet::new();
    for (&g, &kk) in ideal.divisor().coeffs().iter().zip(k.coeffs()) {
        if g <= 0 {
            continue;
        }
        let mut s = 1;
        loop {
            let c = Rational::new(kk + s, g);
            if c > max.value() {
                break;
            }
            candidates.insert(Exponent(c));
            s += 1;
        }
    }
    Ok(candidates
        .into_iter()
        .filter(|&c| multiplier_ideal(ideal, c).divisor() != left_limit(ideal, c).divisor())
        .collect())
}

/// Computes `𝒥(I^c)` on `extension` from the pulled-back divisor and the
/// extension's own canonical divisor, and compares with the pullback of
/// the multiplier ideal computed on `I`'s cluster.
pub fn resolution_independent(ideal: &CompleteIdeal, c: Exponent, extension: &Arc<Cluster>) -> Result<bool> {
    let on_extension = multiplier_ideal(&ideal.pullback(extension)?, c);
    let pulled = multiplier_ideal(ideal, c).pullback(extension)?;
    Ok(on_extension == pulled)
}
