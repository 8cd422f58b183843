//! Partitions, half-partitions and multi-indices.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qseries::{poch, Extent, QSeries};

/// A weakly decreasing sequence of positive parts, stored doubled so that
/// half-partitions share the representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    doubled: Vec<i64>,
    half: bool,
}

impl Partition {
    /// Integer partition; zero parts are dropped.
    pub fn new(parts: &[i64]) -> Self {
        let mut doubled: Vec<i64> = parts.iter().filter(|&&p| p != 0).map(|p| 2 * p).collect();
        assert!(parts.iter().all(|&p| p >= 0), "negative part in {:?}", parts);
        assert!(doubled.windows(2).all(|w| w[0] >= w[1]), "parts not weakly decreasing: {:?}", parts);
        doubled.shrink_to_fit();
        Partition { doubled, half: false }
    }

    pub fn empty() -> Self {
        Partition { doubled: vec![], half: false }
    }

    pub fn from_doubled(doubled: Vec<i64>) -> Result<Self> {
        if doubled.iter().any(|&p| p <= 0) || doubled.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("not a partition: {:?}", doubled)));
        }
        let half = doubled.first().is_some_and(|p| p % 2 != 0);
        if doubled.iter().any(|p| (p % 2 != 0) != half) {
            return Err(Error::Invalid("mixed integer and half-integer parts".into()));
        }
        Ok(Partition { doubled, half })
    }

    pub fn is_half(&self) -> bool {
        self.half
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    /// Parts of an integer partition.
    pub fn parts(&self) -> Vec<i64> {
        assert!(!self.half, "parts() on a half-partition");
        self.doubled.iter().map(|p| p / 2).collect()
    }

    /// `λ_i` (1-based), zero past the length.
    pub fn part(&self, i: usize) -> i64 {
        assert!(!self.half);
        if i == 0 || i > self.doubled.len() {
            0
        } else {
            self.doubled[i - 1] / 2
        }
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    /// `|λ|` for an integer partition.
    pub fn weight(&self) -> i64 {
        assert!(!self.half);
        self.doubled.iter().sum::<i64>() / 2
    }

    pub fn first(&self) -> i64 {
        self.part(1)
    }

    pub fn conjugate(&self) -> Result<Partition> {
        if self.half {
            return Err(Error::Unsupported("conjugate of a half-partition".into()));
        }
        let first = self.first();
        let parts: Vec<i64> = (1..=first)
            .map(|j| self.doubled.iter().filter(|&&p| p / 2 >= j).count() as i64)
            .collect();
        Ok(Partition::new(&parts))
    }

    /// `m_i(λ)` for `i >= 1`.
    pub fn multiplicity(&self, i: i64) -> i64 {
        assert!(!self.half);
        self.doubled.iter().filter(|&&p| p == 2 * i).count() as i64
    }

    /// Nonzero multiplicities as `(part, m)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = vec![];
        for p in self.parts() {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `b_λ(q) = prod_i (q)_{m_i}`.
    pub fn b_lambda(&self) -> QSeries {
        let q = QSeries::q_pow(1);
        self.multiplicities()
            .iter()
            .fold(QSeries::one(), |acc, (_, m)| &acc * &poch(&q, Extent::Finite(*m), 0).unwrap())
    }

    pub fn lambda_odd(&self) -> Partition {
        let parts: Vec<i64> = self.parts().into_iter().filter(|p| p % 2 != 0).collect();
        Partition::new(&parts)
    }

    /// `n(λ) = sum (i-1) λ_i`.
    pub fn n_stat(&self) -> i64 {
        self.parts().iter().enumerate().map(|(i, p)| i as i64 * p).sum()
    }

    pub fn is_even(&self) -> bool {
        self.parts().iter().all(|p| p % 2 == 0)
    }

    /// Dominance order `self >= other` for partitions of equal weight.
    pub fn dominates(&self, other: &Partition) -> bool {
        let (a, b) = (self.parts(), other.parts());
        let mut sa = 0;
        let mut sb = 0;
        for i in 0..a.len().max(b.len()) {
            sa += a.get(i).copied().unwrap_or(0);
            sb += b.get(i).copied().unwrap_or(0);
            if sa < sb {
                return false;
            }
        }
        true
    }

    /// All partitions of `n`, in the lexicographic enumeration order.
    pub fn all_of(n: i64) -> Vec<Partition> {
        PartitionIter::new(n, n).filter(|p| p.weight() == n).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .doubled
            .iter()
            .map(|p| if p % 2 == 0 { (p / 2).to_string() } else { format!("{}/2", p) })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(4,4,2)`, `[4,4,2]`, `4,4,2`, `()` and halves such as `(3/2,1/2)`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let mut doubled = vec![];
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let d = match tok.split_once('/') {
                Some((a, "2")) => a.trim().parse::<i64>().map_err(|_| Error::Parse(tok.into()))?,
                Some(_) => return Err(Error::Parse(format!("only halves allowed: {}", tok))),
                None => 2 * tok.parse::<i64>().map_err(|_| Error::Parse(tok.into()))?,
            };
            if d != 0 {
                doubled.push(d);
            }
        }
        Partition::from_doubled(doubled).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Partition filters used by the summations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartFilter {
    All,
    Even,
    /// `λ'_{2l-1} = M_l` for `l = 1..len(M)`.
    OddColumns(Vec<i64>),
}

/// Depth-first stream of partitions with `λ_1 <= max_part`, `|λ| <= max_weight`,
/// in lexicographic order of the part sequence.
pub struct PartitionIter {
    max_part: i64,
    max_weight: i64,
    max_len: usize,
    stack: Vec<i64>,
    weight: i64,
    started: bool,
}

impl PartitionIter {
    pub fn new(max_part: i64, max_weight: i64) -> Self {
        PartitionIter { max_part, max_weight, max_len: usize::MAX, stack: vec![], weight: 0, started: false }
    }

    pub fn max_len(mut self, l: usize) -> Self {
        self.max_len = l;
        self
    }

    fn cap(&self) -> i64 {
        let last = self.stack.last().copied().unwrap_or(self.max_part);
        last.min(self.max_weight - self.weight)
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if !self.started {
            self.started = true;
            return Some(Partition::empty());
        }
        // Descend if possible, otherwise backtrack to the next sibling.
        if self.stack.len() < self.max_len && self.cap() >= 1 {
            self.stack.push(1);
            self.weight += 1;
            return Some(Partition::new(&self.stack));
        }
        while let Some(top) = self.stack.pop() {
            self.weight -= top;
            let bound = self.cap();
            if top < bound {
                self.stack.push(top + 1);
                self.weight += top + 1;
                return Some(Partition::new(&self.stack));
            }
        }
        None
    }
}

/// Filtered partition stream.
pub fn enum_partitions(max_part: i64, max_weight: i64, filter: PartFilter) -> impl Iterator<Item = Partition> {
    PartitionIter::new(max_part.max(0), max_weight.max(0)).filter(move |p| match &filter {
        PartFilter::All => true,
        PartFilter::Even => p.is_even(),
        PartFilter::OddColumns(m) => {
            let c = p.conjugate().unwrap();
            m.iter().enumerate().all(|(l, &ml)| c.part(2 * l + 1) == ml)
        }
    })
}

/// A vector in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Every vector with `lo <= v <= hi` componentwise, lexicographically.
    pub fn boxed(lo: &[i64], hi: &[i64]) -> Vec<MultiIndex> {
        let mut out = vec![];
        let mut cur = lo.to_vec();
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return out;
        }
        loop {
            out.push(MultiIndex(cur.clone()));
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..].copy_from_slice(&lo[i + 1..]);
                    break;
                }
            }
        }
    }

    /// Vectors in `[0, hi]` with coordinate sum exactly `total`, lexicographically.
    pub fn with_sum(hi: &[i64], total: i64) -> Vec<MultiIndex> {
        // room[i] = how much the coordinates after i can still absorb
        let mut room = vec![0; hi.len() + 1];
        for i in (0..hi.len()).rev() {
            room[i] = room[i + 1] + hi[i].max(0);
        }
        let mut out = vec![];
        let mut cur = vec![0; hi.len()];
        fill_sum(hi, &room, 0, total, &mut cur, &mut out);
        out
    }
}

fn fill_sum(hi: &[i64], room: &[i64], i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
    if i == hi.len() {
        if left == 0 {
            out.push(MultiIndex(cur.clone()));
        }
        return;
    }
    let lo = (left - room[i + 1]).max(0);
    for v in lo..=hi[i].min(left) {
        cur[i] = v;
        fill_sum(hi, room, i + 1, left - v, cur, out);
    }
    cur[i] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        body.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(t.into())))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order_is_lexicographic() {
        let got: Vec<String> = PartitionIter::new(2, 3).map(|p| p.to_string()).collect();
        assert_eq!(got, ["()", "(1)", "(1,1)", "(1,1,1)", "(2)", "(2,1)"]);
    }

    #[test]
    fn half_roundtrip() {
        let p: Partition = "(3/2,1/2)".parse().unwrap();
        assert!(p.is_half());
        assert_eq!(p.to_string(), "(3/2,1/2)");
        assert!("(3/2,1)".parse::<Partition>().is_err());
    }
}
