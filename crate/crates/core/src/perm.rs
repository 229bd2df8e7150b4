use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// A permutation of `1..=n`, stored 0-based: `images[i] = σ(i)`.
///
/// The permutation identity of σ is `x1 … xn ≈ x_{1σ} … x_{nσ}`, so the
/// right-hand side lists the variables in the order `σ(1), …, σ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermutationError {
    #[error("not a permutation of 1..={0}")]
    NotBijective(usize),
    #[error("cannot parse permutation: {0}")]
    Syntax(String),
}

impl Permutation {
    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || core::mem::replace(&mut seen[i], true) {
                return Err(PermutationError::NotBijective(n));
            }
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation `[σ(1), …, σ(n)]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self, PermutationError> {
        if images.contains(&0) {
            return Err(PermutationError::NotBijective(images.len()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// From 1-based disjoint or overlapping cycles, composed left to right.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermutationError> {
        let mut p = Self::identity(n);
        for cycle in cycles {
            if cycle.iter().any(|&i| i == 0 || i > n) {
                return Err(PermutationError::NotBijective(n));
            }
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &i) in cycle.iter().enumerate() {
                images[i - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            p = p.then(&Self::from_images(images)?);
        }
        Ok(p)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of 0-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    /// All powers of `self`, starting with the identity.
    pub fn cyclic_subgroup(&self) -> Vec<Permutation> {
        let mut out = alloc::vec![Self::identity(self.degree())];
        let mut p = self.clone();
        while !p.is_identity() {
            out.push(p.clone());
            p = p.then(self);
        }
        out
    }

    /// Every permutation of `0..n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    /// Disjoint cycle notation, 1-based, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    /// One-line `[2,1,3]`; cycles `(1 2)(3 4)` need a degree, see
    /// [`Permutation::parse_with_degree`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with_degree(s, None)
    }
}

impl Permutation {
    /// Parses one-line (`[2,1,3]`) or cycle (`(1 2)`) notation. Cycle
    /// notation takes its degree from `degree`, or the largest point named.
    pub fn parse_with_degree(s: &str, degree: Option<usize>) -> Result<Self, PermutationError> {
        let s = s.trim();
        let bad = || PermutationError::Syntax(String::from(s));
        let numbers = |body: &str| -> Result<Vec<usize>, PermutationError> {
            body.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        if let Some(body) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let p = Self::from_one_line(&numbers(body)?)?;
            if degree.is_some_and(|d| d != p.degree()) {
                return Err(PermutationError::NotBijective(degree.unwrap()));
            }
            return Ok(p);
        }
        if s.starts_with('(') {
            let mut cycles = Vec::new();
            for part in s.split(')') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let body = part.strip_prefix('(').ok_or_else(bad)?;
                cycles.push(numbers(body)?);
            }
            let max = cycles.iter().flatten().copied().max().unwrap_or(0);
            let n = degree.unwrap_or(max);
            return Self::from_cycles(n, &cycles);
        }
        Err(bad())
    }
}
