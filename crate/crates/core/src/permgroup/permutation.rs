use std::fmt;

use serde::{Serialize, Serializer};

use super::partition::Partition;
use super::CycleType;
use crate::error::{Error, Result};

/// A permutation of `{1, …, n}`.
///
/// Products are read left to right: `p.then(&q)` applies `p` first, so the
/// string `(1,2)(2,3)` means "swap 1,2, then swap 2,3".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[i] is the image of i, both zero based
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its one-based image list: `images[i-1] = p(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::arg(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// A single cycle `(c_1, c_2, …, c_k)` on `{1..n}`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for (k, &a) in cycle.iter().enumerate() {
            if a == 0 || a > n || seen[a - 1] {
                return Err(Error::arg(format!("bad cycle {cycle:?} in S({n})")));
            }
            seen[a - 1] = true;
            let b = cycle[(k + 1) % cycle.len()];
            images[a - 1] = b - 1;
        }
        Ok(Permutation { images })
    }

    /// The adjacent transposition `(i, i+1)`, one based.
    pub fn adjacent(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::arg(format!(
                "no generator ({i},{}) in S({n})",
                i + 1
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// Parses a product of cycles such as `(1,2)(2,3)(4,5)`, read left to right.
    ///
    /// `e` or an empty string gives the identity.
    pub fn parse_product(n: usize, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut result = Permutation::identity(n);
        if s.is_empty() || s == "e" {
            return Ok(result);
        }
        let bad = || Error::arg(format!("cannot parse cycle product {s:?}"));
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..body_end];
            let entries: Vec<usize> = body
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            result = result.then(&Permutation::cycle(n, &entries)?);
            rest = &rest[body_end + 1..];
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// One-based image of one-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// One-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: u32) -> Permutation {
        (0..k).fold(Permutation::identity(self.degree()), |acc, _| {
            acc.then(self)
        })
    }

    /// Disjoint cycles (one based), including fixed points, each starting at its smallest entry.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let lengths = self.cycles().iter().map(|c| c.len() as u32).collect();
        let shape = Partition::from_unsorted(lengths).expect("cycle lengths are positive");
        CycleType::new(shape)
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// A word `[i_1, …, i_m]` of adjacent transpositions `(i, i+1)` whose left-to-right
    /// product is `self`. Produced by bubble sort, so its length is the inversion count.
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let mut arr = self.images.clone();
        let mut word = Vec::new();
        let n = arr.len();
        loop {
            let mut swapped = false;
            for k in 0..n.saturating_sub(1) {
                if arr[k] > arr[k + 1] {
                    // precomposing with (k+1,k+2) swaps positions k and k+1
                    arr.swap(k, k + 1);
                    word.push(k + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        word
    }

    /// Left-to-right product of a word of adjacent transpositions.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(Permutation::identity(n), |acc, &i| {
            Ok(acc.then(&Permutation::adjacent(n, i)?))
        })
    }

    /// The Coxeter element `(1,2)(2,3)…(n-1,n)`.
    pub fn coxeter(n: usize) -> Permutation {
        let word: Vec<usize> = (1..n).collect();
        Permutation::from_word(n, &word).expect("valid generators")
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation without fixed points; `e` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
