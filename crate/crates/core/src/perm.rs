//! Permutations on `0..n` with 1-based cycle notation for text I/O.
//!
//! Products act on the right: `p.mul(&q)` sends `i` to `q(p(i))`, so
//! conjugation `x^g = g⁻¹xg` and commutators `[x,y] = x⁻¹y⁻¹xy` follow the
//! usual exponent conventions.

use std::fmt;

use crate::error::{FswError, Result};

/// A bijection on `{0, …, degree−1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree as u16).collect() }
    }

    /// Builds a permutation from an image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(FswError::Invalid(format!("degree {n} exceeds 65535")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(FswError::Invalid("image list is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Perm { images: images.into_iter().map(|i| i as u16).collect() })
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Perm {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn try_mul(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(FswError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            out[v as usize] = i as u16;
        }
        Perm { images: out }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
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

    /// `g⁻¹ · self · g`.
    pub fn conj(&self, g: &Perm) -> Perm {
        let mut out = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[v as usize];
        }
        Perm { images: out }
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn comm(&self, other: &Perm) -> Perm {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j);
                j = self.image(j);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &v)| v as usize != *i).map(|(i, _)| i)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) != i).collect()
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.degree() as u16..degree as u16);
        Perm { images }
    }

    /// Moves every point up by `offset` inside a permutation of `degree` points.
    pub fn shift(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &v) in self.images.iter().enumerate() {
            images[i + offset] = v + offset as u16;
        }
        Perm { images }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// Parses a product of disjoint cycles over 1-based points.
///
/// Whitespace is ignored anywhere. The empty string is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut images: Vec<u16> = (0..degree as u16).collect();
    let mut used = vec![false; degree];
    let mut i = 0;
    let err = |msg: String| FswError::Parse(format!("cycle notation: {msg}"));
    while i < chars.len() {
        if chars[i] != '(' {
            return Err(err(format!("expected '(' at offset {i}")));
        }
        i += 1;
        let mut cyc: Vec<usize> = Vec::new();
        loop {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(format!("expected a point at offset {start}")));
            }
            let s: String = chars[start..i].iter().collect();
            let p: usize = s.parse().map_err(|_| err(format!("bad integer {s}")))?;
            if p == 0 || p > degree {
                return Err(err(format!("point {p} out of range 1..={degree}")));
            }
            if used[p - 1] {
                return Err(err(format!("point {p} repeated")));
            }
            used[p - 1] = true;
            cyc.push(p - 1);
            match chars.get(i) {
                Some(',') => i += 1,
                Some(')') => {
                    i += 1;
                    break;
                }
                _ => return Err(err(format!("expected ',' or ')' at offset {i}"))),
            }
        }
        if cyc.len() < 2 {
            return Err(err("a cycle needs at least two points".into()));
        }
        for k in 0..cyc.len() {
            images[cyc[k]] = cyc[(k + 1) % cyc.len()] as u16;
        }
    }
    Ok(Perm { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = parse_cycles("(1,2)(3,4)", 4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert!(parse_cycles("", 5).unwrap().is_identity());
        let c = parse_cycles(" ( 1 , 2 ,3 ) ", 3).unwrap();
        assert!(c.mul(&c).mul(&c).is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_cycles("(1,2", 3).is_err());
        assert!(parse_cycles("(1,2)(2,3)", 3).is_err());
        assert!(parse_cycles("(1,4)", 3).is_err());
        assert!(parse_cycles("(1)", 3).is_err());
        assert!(parse_cycles("1,2", 3).is_err());
    }

    #[test]
    fn algebra() {
        let a = parse_cycles("(1,2)", 3).unwrap();
        let b = parse_cycles("(2,3)", 3).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.mul(&b), parse_cycles("(1,3,2)", 3).unwrap());
        let c4 = parse_cycles("(1,2,3,4)", 4).unwrap();
        assert!(c4.pow(4).is_identity());
        assert_eq!(c4.pow(-1), c4.inv());
        assert_eq!(c4.order(), 4);
        let g = parse_cycles("(1,3)", 4).unwrap();
        assert_eq!(c4.conj(&g), g.inv().mul(&c4).mul(&g));
        assert_eq!(format!("{}", a.mul(&b)), "(1,3,2)");
        assert_eq!(format!("{}", Perm::identity(3)), "()");
    }
}
