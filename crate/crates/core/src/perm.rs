//! Permutations of `{1..n}` and the disjoint-cycle text format.
//!
//! Points are 1-based in all text and 0-based in memory. Composition acts
//! left to right: `a.compose(&b)` (or `&a * &b`) sends `i` to `b(a(i))`,
//! i.e. first `a`, then `b`. Every algorithm in this crate uses that
//! convention, including conjugation: `p.conjugate(&x) = x⁻¹ · p · x`.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Errors from cycle-notation parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("point {point} appears more than once")]
    DuplicatePoint { point: usize },
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point 0 is not allowed, points are 1-based")]
    ZeroPoint,
    #[error("malformed cycle expression near `{token}` (offset {offset})")]
    Malformed { token: String, offset: usize },
    #[error("unexpected token `{token}` (offset {offset})")]
    InvalidToken { token: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image table is not a bijection on 1..{degree}")]
    NotBijection { degree: usize },
}

/// A bijection on `n` points stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in &images {
            if x >= degree || seen[x] {
                return Err(PermError::NotBijection { degree });
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Self { images }
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || seen[p] {
                    return Err(PermError::NotBijection { degree });
                }
                seen[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub(crate) fn into_images(self) -> Vec<u32> {
        self.images
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `i ↦ other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self * other)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x⁻¹ · self · x`: relabels the points of `self` by `x`.
    pub fn conjugate(&self, x: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(x)?;
        Ok(self.conjugate_unchecked(x))
    }

    pub(crate) fn conjugate_unchecked(&self, x: &Permutation) -> Permutation {
        // (x⁻¹ p x)(x(i)) = x(p(i))
        let mut images = vec![0u32; self.degree()];
        for (i, &pi) in self.images.iter().enumerate() {
            images[x.images[i] as usize] = x.images[pi as usize];
        }
        Permutation { images }
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// Disjoint cycles of length ≥ 2 (0-based), least point first, sorted by least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted multiset of cycle lengths, fixed points included as 1-cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable();
        lens
    }

    pub fn moves(&self, point: usize) -> bool {
        self.apply(point) != point
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.moves(i))
    }

    /// Renders 1-based disjoint-cycle notation with fixed points omitted.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                s.push_str(&(p + 1).to_string());
            }
            s.push(')');
        }
        s
    }

    /// Parses 1-based disjoint-cycle notation such as `"(1 2 3)(4,5)"`.
    ///
    /// The empty string and `"()"` denote the identity; unmentioned points are fixed.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, ParseError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut current: Option<Vec<usize>> = None;
        let mut open_at = 0;

        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b' ' | b'\t' | b',' | b'\r' | b'\n' => {
                    if c == b',' && current.as_ref().map_or(true, Vec::is_empty) {
                        return Err(ParseError::Malformed {
                            token: ",".into(),
                            offset: i,
                        });
                    }
                    i += 1;
                }
                b'(' => {
                    if current.is_some() {
                        return Err(ParseError::Malformed {
                            token: "(".into(),
                            offset: i,
                        });
                    }
                    current = Some(Vec::new());
                    open_at = i;
                    i += 1;
                }
                b')' => {
                    let Some(cycle) = current.take() else {
                        return Err(ParseError::Malformed {
                            token: ")".into(),
                            offset: i,
                        });
                    };
                    for (k, &p) in cycle.iter().enumerate() {
                        images[p] = cycle[(k + 1) % cycle.len()] as u32;
                    }
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let token = &text[start..i];
                    let Some(cycle) = current.as_mut() else {
                        return Err(ParseError::Malformed {
                            token: token.into(),
                            offset: start,
                        });
                    };
                    let point: usize = token.parse().map_err(|_| ParseError::InvalidToken {
                        token: token.into(),
                        offset: start,
                    })?;
                    if point == 0 {
                        return Err(ParseError::ZeroPoint);
                    }
                    if point > degree {
                        return Err(ParseError::PointOutOfRange { point, degree });
                    }
                    if seen[point - 1] {
                        return Err(ParseError::DuplicatePoint { point });
                    }
                    seen[point - 1] = true;
                    cycle.push(point - 1);
                }
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(ParseError::InvalidToken {
                        token: ch.to_string(),
                        offset: i,
                    });
                }
            }
        }
        if current.is_some() {
            return Err(ParseError::Malformed {
                token: "(".into(),
                offset: open_at,
            });
        }
        Ok(Permutation { images })
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product. Panics on degree mismatch; use [`Permutation::compose`] to check.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&x| rhs.images[x as usize]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.format_cycles(), self.degree())
    }
}

/// A subset of `{1..n}`, stored as sorted 0-based members.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    degree: usize,
    members: Vec<usize>,
}

impl PointSet {
    pub fn new(degree: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        assert!(members.last().map_or(true, |&m| m < degree));
        Self { degree, members }
    }

    pub fn empty(degree: usize) -> Self {
        Self {
            degree,
            members: Vec::new(),
        }
    }

    pub fn full(degree: usize) -> Self {
        Self {
            degree,
            members: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// 0-based members in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// 1-based members in increasing order.
    pub fn labels(&self) -> Vec<usize> {
        self.members.iter().map(|m| m + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.members.binary_search(&point).is_ok()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", m + 1)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn parse_simple() {
        let x = p("(1 2 3)(4 5)", 5);
        assert_eq!(x.images(), &[1, 2, 0, 4, 3]);
        assert!(p("()", 4).is_identity());
        assert!(p("", 4).is_identity());
        assert!(p("  ", 4).is_identity());
        assert_eq!(p("(1,2, 3)", 3), p("(1 2 3)", 3));
        assert_eq!(p("(3)", 3), Permutation::identity(3));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::parse_cycles("(1 2)(2 3)", 4),
            Err(ParseError::DuplicatePoint { point: 2 })
        );
        assert_eq!(
            Permutation::parse_cycles("(1 4)", 3),
            Err(ParseError::PointOutOfRange { point: 4, degree: 3 })
        );
        assert!(matches!(
            Permutation::parse_cycles("(1 2", 3),
            Err(ParseError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("1 2)", 3),
            Err(ParseError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("((1 2))", 3),
            Err(ParseError::Malformed { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1 x)", 3),
            Err(ParseError::InvalidToken { .. })
        ));
        assert_eq!(Permutation::parse_cycles("(0 1)", 3), Err(ParseError::ZeroPoint));
    }

    #[test]
    fn compose_is_left_to_right() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1 3 2)", 3));
        assert_eq!(&a * &Permutation::identity(3), a);
        assert!((&a * &a.inverse()).is_identity());
        assert_eq!(
            a.compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn inverse_and_conjugate() {
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        assert_eq!(p("(1 2)", 3).conjugate(&p("(1 3)", 3)).unwrap(), p("(2 3)", 3));
        let x = p("(1 4 2)(3 5)", 5);
        assert_eq!(x.conjugate(&Permutation::identity(5)).unwrap(), x);
    }

    #[test]
    fn format_is_canonical() {
        let x = p("(5 4)(3 1 2)", 6);
        assert_eq!(x.format_cycles(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..12).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n), perm_strategy(n)))
    }

    proptest! {
        #[test]
        fn round_trip((a, _, _) in triple()) {
            let n = a.degree();
            prop_assert_eq!(Permutation::parse_cycles(&a.format_cycles(), n).unwrap(), a);
        }

        #[test]
        fn group_laws((a, b, c) in triple()) {
            let n = a.degree();
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert!((&a.inverse() * &a).is_identity());
            prop_assert_eq!(&a * &Permutation::identity(n), a.clone());
            // (a b)(i) = b(a(i))
            for i in 0..n {
                prop_assert_eq!((&a * &b).apply(i), b.apply(a.apply(i)));
            }
        }

        #[test]
        fn conjugation_laws((p, x, y) in triple()) {
            let c = p.conjugate(&x).unwrap();
            prop_assert_eq!(c.cycle_type(), p.cycle_type());
            prop_assert_eq!(c.clone(), &(&x.inverse() * &p) * &x);
            prop_assert_eq!(p.conjugate(&(&x * &y)).unwrap(), c.conjugate(&y).unwrap());
        }
    }
}
