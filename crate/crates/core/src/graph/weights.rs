use super::VertexSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a rational written as `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, WeightError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| WeightError::MalformedRational(s.to_string()))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| WeightError::MalformedRational(s.to_string()))?;
    if den.is_zero() {
        return Err(WeightError::MalformedRational(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adaptor serializing a rational as a `p/q` string.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("negative weight on vertex {0}")]
    NegativeWeight(usize),
    #[error("weights over the mask total {total}, expected 1")]
    TotalNotOne { total: String },
}

/// Exact nonnegative rational vertex weights whose total over the host mask
/// is exactly 1. Total and maximum are cached at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: Vec<Rational>,
    total: Rational,
    max: Rational,
}

// Serialized as a vector of `p/q` strings; never decimals.
impl Serialize for WeightAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.weights.iter().map(format_rational).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let strings: Vec<String> = Deserialize::deserialize(deserializer)?;
        let weights = strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        // caches rebuilt over the full support; weights outside the host
        // mask are zero in well-formed assignments
        let mut total = Rational::zero();
        let mut max = Rational::zero();
        for w in &weights {
            if *w < Rational::zero() {
                return Err(D::Error::custom("negative weight"));
            }
            total += w;
            if *w > max {
                max = w.clone();
            }
        }
        Ok(WeightAssignment {
            weights,
            total,
            max,
        })
    }
}

impl WeightAssignment {
    /// Uniform weight 1/|mask| on each mask vertex, zero elsewhere.
    pub fn uniform(n: usize, mask: &VertexSet) -> Self {
        let k = mask.len();
        assert!(k > 0, "uniform weights need a nonempty mask");
        let share = BigRational::new(BigInt::one(), BigInt::from(k));
        let mut weights = vec![Rational::zero(); n];
        for v in mask.iter() {
            weights[v] = share.clone();
        }
        WeightAssignment {
            weights,
            total: Rational::one(),
            max: BigRational::new(BigInt::one(), BigInt::from(k)),
        }
    }

    /// Weights given explicitly; validates nonnegativity and exact total 1
    /// over the mask.
    pub fn from_weights(weights: Vec<Rational>, mask: &VertexSet) -> Result<Self, WeightError> {
        let mut total = Rational::zero();
        let mut max = Rational::zero();
        for (v, w) in weights.iter().enumerate() {
            if *w < Rational::zero() {
                return Err(WeightError::NegativeWeight(v));
            }
            if mask.contains(v) {
                total += w;
                if *w > max {
                    max = w.clone();
                }
            }
        }
        if total != Rational::one() {
            return Err(WeightError::TotalNotOne {
                total: format_rational(&total),
            });
        }
        Ok(WeightAssignment {
            weights,
            total,
            max,
        })
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weight_of(&self, set: &VertexSet) -> Rational {
        let mut sum = Rational::zero();
        for v in set.iter() {
            sum += &self.weights[v];
        }
        sum
    }

    pub fn total(&self) -> &Rational {
        &self.total
    }

    /// Maximum vertex weight over the mask the assignment was built for.
    pub fn max_weight(&self) -> &Rational {
        &self.max
    }

    /// Raw weight vector, indexed by vertex.
    pub fn as_slice(&self) -> &[Rational] {
        &self.weights
    }

    /// Rebuild over a new mask with per-vertex increments (used by central-bag
    /// reweighting). Increments are added before revalidation.
    pub fn reweighted(
        &self,
        mask: &VertexSet,
        increments: &[(usize, Rational)],
    ) -> Result<Self, WeightError> {
        let mut weights: Vec<Rational> = self
            .weights
            .iter()
            .enumerate()
            .map(|(v, w)| {
                if mask.contains(v) {
                    w.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        for (v, inc) in increments {
            weights[*v] += inc;
        }
        Self::from_weights(weights, mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_totals_one_exactly() {
        let mask = VertexSet::full(7);
        let w = WeightAssignment::uniform(7, &mask);
        assert_eq!(*w.total(), Rational::one());
        assert_eq!(*w.max_weight(), rat(1, 7));
        assert_eq!(w.weight_of(&mask), Rational::one());
    }

    #[test]
    fn rejects_bad_totals() {
        let mask = VertexSet::full(2);
        let err = WeightAssignment::from_weights(vec![rat(1, 2), rat(1, 3)], &mask);
        assert!(matches!(err, Err(WeightError::TotalNotOne { .. })));
    }

    #[test]
    fn rational_round_trip() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(format_rational(&rat(3, 4)), "3/4");
        assert_eq!(format_rational(&rat(5, 1)), "5");
        assert!(parse_rational("1/0").is_err());
    }
}
