//! Permutations on `0..n`, the finite-bijection model.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// A permutation stored as its image table: `image[k]` is where `k` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Permutation, ModelError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(ModelError::NotABijection { size: n, entry: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.image[k]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `self` first, `other` second.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "composing permutations of different sizes");
        Permutation {
            image: self.image.iter().map(|&k| other.image[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.size()];
        for (k, &v) in self.image.iter().enumerate() {
            image[v] = k;
        }
        Permutation { image }
    }

    /// Disjoint union: `self` on the first block, `other` shifted past it.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.size();
        let image = self
            .image
            .iter()
            .copied()
            .chain(other.image.iter().map(|&v| v + n))
            .collect();
        Permutation { image }
    }

    /// Lexicographic product on pair indices `i·|other| + j`.
    pub fn tensor(&self, other: &Permutation) -> Permutation {
        let m = other.size();
        let mut image = Vec::with_capacity(self.size() * m);
        for &a in &self.image {
            for &b in &other.image {
                image.push(a * m + b);
            }
        }
        Permutation { image }
    }

    /// The transposition of adjacent points `i` and `i+1`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Permutation {
        assert!(i + 1 < n);
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(i, i + 1);
        Permutation { image }
    }

    /// Decompose into adjacent transpositions by bubble sort: the result
    /// `[i1, i2, …, im]` satisfies `t(i1) ; t(i2) ; … ; t(im) = self`
    /// (left factor applied first).
    pub fn adjacent_transpositions(&self) -> Vec<usize> {
        let mut work = self.image.clone();
        let mut swaps = Vec::new();
        // sorting `work` by adjacent swaps multiplies `self` on the right
        // by each transposition; when sorted, self ∘ t(i1) ∘ … ∘ t(im) = id
        let n = work.len();
        loop {
            let mut done = true;
            for i in 0..n.saturating_sub(1) {
                if work[i] > work[i + 1] {
                    work.swap(i, i + 1);
                    swaps.push(i);
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        // self = t(im) ∘ … ∘ t(i1) as functions, i.e. t(i1) applied first
        swaps
    }

    /// All permutations of `0..n` in lexicographic order of their image
    /// tables. Only sensible for small `n`.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut items: Vec<usize> = (0..n).collect();
        permute(&mut items, 0, &mut out);
        out
    }

    pub fn random<R: rand::Rng>(n: usize, rng: &mut R) -> Permutation {
        let mut image: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            image.swap(i, j);
        }
        Permutation { image }
    }
}

fn permute(items: &mut Vec<usize>, start: usize, out: &mut Vec<Permutation>) {
    if start == items.len() {
        out.push(Permutation { image: items.clone() });
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, out);
        items.swap(start, i);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
