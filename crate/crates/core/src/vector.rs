//! Exact rational scalars and fixed-rank group elements.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rat = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rat {
    Ratio::new(n, d)
}

pub fn int(n: i128) -> Rat {
    Ratio::from_integer(n)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => s.parse::<i128>().ok().map(Ratio::from_integer),
    }
}

/// An element of a rank-`n` rational vector group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Rat>);

impl Vector {
    pub fn new(coords: Vec<Rat>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i128]) -> Self {
        Vector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Vector(vec![Rat::zero(); rank])
    }

    pub fn unit_vector(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Rat::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Ratio::is_integer)
    }

    pub fn scale(&self, k: &Rat) -> Vector {
        Vector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn times(&self, n: i128) -> Vector {
        self.scale(&int(n))
    }

    /// Coordinates `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> Vector {
        Vector(self.0[start..start + len].to_vec())
    }

    pub fn concat(&self, other: &Vector) -> Vector {
        let mut c = self.0.clone();
        c.extend(other.0.iter().cloned());
        Vector(c)
    }

    /// Picks the given coordinates, in order.
    pub fn select(&self, idx: &[usize]) -> Vector {
        Vector(idx.iter().map(|&i| self.0[i]).collect())
    }

    pub fn max_abs(&self) -> Rat {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl Index<usize> for Vector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in vector addition");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in vector subtraction");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", fmt_rat(&self.0[0]));
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_rat(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `1 0 -1/2` or `1,0,-1/2` or `(1,0,-1/2)`.
pub fn parse_vector(s: &str) -> Option<Vector> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = t
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return None;
    }
    parts
        .into_iter()
        .map(parse_rat)
        .collect::<Option<Vec<_>>>()
        .map(Vector)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_canonical() {
        let r = rat(4, -6);
        assert_eq!(*r.numer(), -2);
        assert_eq!(*r.denom(), 3);
        assert_eq!(fmt_rat(&r), "-2/3");
        assert_eq!(parse_rat(" 6/4 "), Some(rat(3, 2)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn vector_text_forms() {
        let v = parse_vector("(1, -5)").unwrap();
        assert_eq!(v, Vector::from_ints(&[1, -5]));
        assert_eq!(v.to_string(), "(1,-5)");
        assert_eq!(parse_vector("1/2 1/3").unwrap().to_string(), "(1/2,1/3)");
        assert_eq!(Vector::from_ints(&[4]).to_string(), "4");
    }
}
