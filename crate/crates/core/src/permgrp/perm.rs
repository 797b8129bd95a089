use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}` acting on the right: `i^g = images[i]`.
///
/// Products read left to right, so `g.mul(h)` applies `g` first. Input and
/// output formats use 1-based points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::MalformedPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::MalformedPermutation(format!(
                    "image list {:?} is not a bijection",
                    images.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds from 1-based images as they appear in group definition files.
    pub fn from_one_based(images: &[u64]) -> Result<Self> {
        let mut zero = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 {
                return Err(Error::MalformedPermutation(
                    "point 0 in 1-based image list".into(),
                ));
            }
            zero.push((x - 1) as usize);
        }
        Self::from_images(zero)
    }

    /// Builds from disjoint cycles over 1-based points, e.g. `[[1,2,3],[4,5]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (k, &pt) in cyc.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::MalformedPermutation(format!(
                        "point {pt} outside 1..{degree}"
                    )));
                }
                if touched[pt - 1] {
                    return Err(Error::MalformedPermutation(format!(
                        "point {pt} repeated in cycle notation"
                    )));
                }
                touched[pt - 1] = true;
                let next = cyc[(k + 1) % cyc.len()];
                if next == 0 || next > degree {
                    return Err(Error::MalformedPermutation(format!(
                        "point {next} outside 1..{degree}"
                    )));
                }
                images[pt - 1] = next - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::MalformedPermutation(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::MalformedPermutation(format!("unclosed cycle in {text:?}")))?;
            let body = open[..close].trim();
            if !body.is_empty() {
                let pts = body
                    .split(',')
                    .map(|s| {
                        s.trim().parse::<usize>().map_err(|_| {
                            Error::MalformedPermutation(format!("bad point {s:?} in {text:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(pts);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// 1-based image list.
    pub fn to_one_based(&self) -> Vec<u64> {
        self.images.iter().map(|&x| x as u64 + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv.into() }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// `y^-1 self y`.
    pub fn conjugate_by(&self, y: &Permutation) -> Permutation {
        let mut out = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[y.images[i] as usize] = y.images[x as usize];
        }
        Permutation { images: out.into() }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// First point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// Cycle notation over 1-based points.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(","));
            s.push(')');
        }
        s
    }

    /// Canonical element order: element order first, then image list.
    pub fn canonical_cmp(&self, other: &Permutation) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round() {
        let g = Permutation::parse_cycles(5, "(1,2,3)(4,5)").unwrap();
        assert_eq!(g.to_cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(g.order(), 6);
        assert_eq!(Permutation::parse_cycles(3, "()").unwrap(), Permutation::identity(3));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(matches!(
            Permutation::from_one_based(&[1, 1, 2]),
            Err(Error::MalformedPermutation(_))
        ));
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
    }

    #[test]
    fn right_action_products() {
        let a = Permutation::parse_cycles(3, "(1,2)").unwrap();
        let b = Permutation::parse_cycles(3, "(2,3)").unwrap();
        // 1 -> 2 -> 3 under a then b
        assert_eq!(a.mul(&b).apply(0), 2);
        assert!(a.mul(&a.inverse()).is_identity());
        let c = a.mul(&b);
        assert_eq!(c.pow(3), Permutation::identity(3));
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
    }
}
