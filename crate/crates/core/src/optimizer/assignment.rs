//! Per-pair separation disjuncts.
//!
//! For every unordered pair `i < j` exactly one of four linear constraints
//! is chosen; any full choice turns the non-overlap condition into a linear
//! system, making the inner problem an LP.

use rand::Rng;

/// The four ways to separate a pair `(i, j)` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separation {
    /// `x_i + s_i ≤ x_j`
    ILeftJ,
    /// `x_j + s_j ≤ x_i`
    JLeftI,
    /// `y_i + s_i ≤ y_j`
    IBelowJ,
    /// `y_j + s_j ≤ y_i`
    JBelowI,
}

impl Separation {
    pub const ALL: [Separation; 4] = [
        Separation::ILeftJ,
        Separation::JLeftI,
        Separation::IBelowJ,
        Separation::JBelowI,
    ];
}

/// One disjunct per unordered pair, in canonical pair order
/// `(0,1), (0,2), …, (0,n−1), (1,2), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationAssignment {
    n: usize,
    choices: Vec<Separation>,
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl SeparationAssignment {
    pub fn uniform(n: usize, sep: Separation) -> Self {
        SeparationAssignment {
            n,
            choices: vec![sep; pair_count(n)],
        }
    }

    pub fn from_choices(n: usize, choices: Vec<Separation>) -> Self {
        assert_eq!(choices.len(), pair_count(n));
        SeparationAssignment { n, choices }
    }

    /// Uniformly random disjunct per pair.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let choices = (0..pair_count(n))
            .map(|_| Separation::ALL[rng.gen_range(0..4)])
            .collect();
        SeparationAssignment { n, choices }
    }

    /// Assignment induced by a set of center points: each pair separates
    /// along its dominant axis. Geometrically consistent by construction
    /// (it is the topology of the point set), which is what makes it a
    /// useful random initializer — uniformly random disjuncts almost
    /// always encode a contradictory layout that the LP collapses to
    /// near-zero sides.
    pub fn from_points(points: &[(f64, f64)]) -> Self {
        let n = points.len();
        let mut choices = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in (i + 1)..n {
                let dx = points[j].0 - points[i].0;
                let dy = points[j].1 - points[i].1;
                let sep = if dx.abs() >= dy.abs() {
                    if dx >= 0.0 {
                        Separation::ILeftJ
                    } else {
                        Separation::JLeftI
                    }
                } else if dy >= 0.0 {
                    Separation::IBelowJ
                } else {
                    Separation::JBelowI
                };
                choices.push(sep);
            }
        }
        SeparationAssignment { n, choices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Separation {
        self.choices[pair_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, sep: Separation) {
        let idx = pair_index(self.n, i, j);
        self.choices[idx] = sep;
    }

    pub fn get_by_index(&self, idx: usize) -> Separation {
        self.choices[idx]
    }

    pub fn set_by_index(&mut self, idx: usize, sep: Separation) {
        self.choices[idx] = sep;
    }

    /// Iterate `((i, j), separation)` in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), Separation)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
            .zip(self.choices.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing_is_canonical() {
        let n = 5;
        let mut seen = vec![false; pair_count(n)];
        for i in 0..n {
            for j in (i + 1)..n {
                let idx = pair_index(n, i, j);
                assert!(!seen[idx], "duplicate index for ({i},{j})");
                seen[idx] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
        assert_eq!(pair_index(4, 0, 1), 0);
        assert_eq!(pair_index(4, 2, 3), 5);
    }

    #[test]
    fn pairs_iterator_matches_getters() {
        let n = 4;
        let mut a = SeparationAssignment::uniform(n, Separation::ILeftJ);
        a.set(1, 3, Separation::JBelowI);
        for ((i, j), sep) in a.pairs() {
            assert_eq!(sep, a.get(i, j));
        }
        assert_eq!(a.get(1, 3), Separation::JBelowI);
    }

    #[test]
    fn from_points_dominant_axis() {
        // j is far right of i -> ILeftJ; far above -> IBelowJ
        let a = SeparationAssignment::from_points(&[(0.1, 0.1), (0.9, 0.2), (0.15, 0.9)]);
        assert_eq!(a.get(0, 1), Separation::ILeftJ);
        assert_eq!(a.get(0, 2), Separation::IBelowJ);
        assert_eq!(a.get(1, 2), Separation::JLeftI);
    }
}
