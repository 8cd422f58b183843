//! Semistandard tableaux, charge and Kostka-Foulkes polynomials.

use crate::error::{Error, Result};
use crate::partitions::{MultiIndex, Partition};
use crate::qseries::{qi, QSeries};

/// A semistandard Young tableau in English notation; letters start at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn shape(&self) -> Partition {
        Partition::new(&self.rows.iter().map(|r| r.len() as i64).collect::<Vec<_>>())
    }

    pub fn weight(&self) -> MultiIndex {
        let k = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut w = vec![0; k];
        for &a in self.rows.iter().flatten() {
            w[a - 1] += 1;
        }
        MultiIndex(w)
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|p| p[1].iter().zip(&p[0]).all(|(lo, hi)| hi < lo));
        let shape_ok = self.rows.windows(2).all(|p| p[0].len() >= p[1].len());
        rows_ok && cols_ok && shape_ok
    }

    /// Rows read bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }
}

/// All semistandard tableaux of the given shape and weight, built as a chain
/// of horizontal strips.
pub fn enum_ssyt(shape: &Partition, weight: &MultiIndex) -> Vec<Tableau> {
    let target = shape.parts();
    if target.iter().sum::<i64>() != weight.sum() {
        return vec![];
    }
    let mut out = vec![];
    let mut rows: Vec<Vec<usize>> = vec![vec![]; target.len()];
    strips(&target, &weight.0, 0, &mut rows, &mut out);
    out
}

fn strips(target: &[i64], weight: &[i64], letter: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
    if letter == weight.len() {
        if rows.iter().zip(target).all(|(r, &t)| r.len() as i64 == t) {
            out.push(Tableau { rows: rows.clone() });
        }
        return;
    }
    // Distribute weight[letter] boxes over rows; row i may grow up to the
    // previous length of row i-1 (horizontal strip) and its target.
    let before: Vec<i64> = rows.iter().map(|r| r.len() as i64).collect();
    let mut add = vec![0i64; target.len()];
    place(target, &before, weight[letter], 0, &mut add, &mut |add| {
        for (i, &a) in add.iter().enumerate() {
            rows[i].extend(std::iter::repeat_n(letter + 1, a as usize));
        }
        strips(target, weight, letter + 1, rows, out);
        for (i, &a) in add.iter().enumerate() {
            let l = rows[i].len() - a as usize;
            rows[i].truncate(l);
        }
    });
}

fn place(target: &[i64], before: &[i64], left: i64, i: usize, add: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if i == target.len() {
        if left == 0 {
            f(add);
        }
        return;
    }
    let mut cap = target[i] - before[i];
    if i > 0 {
        cap = cap.min(before[i - 1] - before[i]);
    }
    for a in 0..=cap.min(left) {
        add[i] = a;
        place(target, before, left - a, i + 1, add, f);
    }
    add[i] = 0;
}

/// Charge of a word with partition content, via cyclic extraction of
/// standard subwords.
pub fn charge_word(word: &[usize]) -> Result<i64> {
    let k = word.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0i64; k + 1];
    for &a in word {
        counts[a] += 1;
    }
    if counts[1..].windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Unsupported("charge needs a partition weight".into()));
    }
    let mut used = vec![false; word.len()];
    let mut total = 0;
    let mut remaining = word.len();
    while remaining > 0 {
        // Letters 1..=top are present in the remaining word.
        let top = (1..=k).take_while(|&a| word.iter().zip(&used).any(|(&w, &u)| !u && w == a)).count();
        let mut pos = word.len();
        let mut index = 0;
        for letter in 1..=top {
            // Scan leftwards from pos, wrapping once.
            let mut found = None;
            for p in (0..pos).rev() {
                if !used[p] && word[p] == letter {
                    found = Some(p);
                    break;
                }
            }
            if found.is_none() {
                for p in (pos..word.len()).rev() {
                    if !used[p] && word[p] == letter {
                        found = Some(p);
                        break;
                    }
                }
                if letter > 1 {
                    index += 1;
                }
            }
            let p = found.expect("letter present");
            used[p] = true;
            remaining -= 1;
            total += index;
            pos = p;
        }
    }
    Ok(total)
}

pub fn charge(t: &Tableau) -> Result<i64> {
    charge_word(&t.reading_word())
}

/// `K_{λμ}(q) = sum_T q^charge(T)` over tableaux of shape λ, weight μ.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> QSeries {
    let w = MultiIndex(mu.parts());
    let terms: Vec<(i64, _)> = enum_ssyt(lambda, &w)
        .iter()
        .map(|t| (2 * charge(t).expect("partition weight"), qi(1)))
        .collect();
    QSeries::from_terms(&terms, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charge_of_standard_words() {
        assert_eq!(charge_word(&[1, 2]).unwrap(), 1);
        assert_eq!(charge_word(&[2, 1]).unwrap(), 0);
        assert_eq!(charge_word(&[3, 1, 2]).unwrap(), 2);
        assert_eq!(charge_word(&[2, 1, 3]).unwrap(), 1);
    }

    #[test]
    fn non_partition_weight_rejected() {
        assert!(charge_word(&[2, 2, 1]).is_err());
    }
}
