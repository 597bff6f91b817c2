use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0..d-1}`, stored by its mapping: `map[i]` is the image of `i`.
///
/// The derived `Ord` is lexicographic on the mapping, which is what every
/// "canonical order" in this crate means for permutations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            map: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its mapping, rejecting non-bijections.
    pub fn from_mapping(map: Vec<usize>) -> Result<Self> {
        let degree = map.len();
        let mut seen = vec![false; degree];
        for &image in &map {
            if image >= degree || seen[image] {
                return Err(Error::InvalidPermutation { degree, mapping: map });
            }
            seen[image] = true;
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of `{0..degree-1}` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (pos, &point) in cycle.iter().enumerate() {
                if point >= degree || moved[point] {
                    return Err(Error::InvalidPermutation {
                        degree,
                        mapping: cycle.clone(),
                    });
                }
                moved[point] = true;
                map[point] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { map })
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidPermutation {
                degree,
                mapping: vec![a, b],
            });
        }
        Self::from_cycles(degree, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Composition `(p ∘ q)(i) = p(q(i))`: `q` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.degree()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Permutation { map }
    }

    /// Disjoint cycles (including fixed points), each starting at its least
    /// point, ordered by that least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !seen[point] {
                seen[point] = true;
                cycle.push(point);
                point = self.map[point];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Multiset of cycle lengths, sorted descending. Lengths sum to the degree.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Sign of the permutation: -1 exactly when the number of even-length cycles is odd.
    pub fn sign(&self) -> i32 {
        let even_cycles = self
            .cycles()
            .iter()
            .filter(|c| c.len() % 2 == 0)
            .count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(|c| c.len()).fold(1, lcm)
    }

    /// True when the permutation moves exactly two points.
    pub fn is_transposition(&self) -> bool {
        self.map.iter().enumerate().filter(|&(i, &j)| i != j).count() == 2
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(map: Vec<usize>) -> Result<Self> {
        Permutation::from_mapping(map)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.map
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (pos, point) in cycle.iter().enumerate() {
                if pos > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{point}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
