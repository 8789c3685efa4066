//! Partial injections between finite sets, the model of reversible
//! partial computation. The dagger is the relational converse; it
//! satisfies `f ∘ f† ∘ f = f` but not in general `f† ∘ f = id`.

use std::fmt;

use crate::error::ModelError;

/// A partial injective map `0..dom ⇀ 0..cod`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    dom: usize,
    cod: usize,
    map: Vec<Option<usize>>,
}

impl PartialInjection {
    pub fn new(dom: usize, cod: usize, map: Vec<Option<usize>>) -> Result<Self, ModelError> {
        if map.len() != dom {
            return Err(ModelError::SizeMismatch { expected: dom, got: map.len() });
        }
        let mut seen = vec![usize::MAX; cod];
        for (i, entry) in map.iter().enumerate() {
            if let Some(v) = *entry {
                if v >= cod {
                    return Err(ModelError::NotAFunction { entry: v, cod });
                }
                if seen[v] != usize::MAX {
                    return Err(ModelError::NotInjective { i: seen[v], j: i, image: v });
                }
                seen[v] = i;
            }
        }
        Ok(PartialInjection { dom, cod, map })
    }

    pub fn identity(n: usize) -> Self {
        PartialInjection { dom: n, cod: n, map: (0..n).map(Some).collect() }
    }

    /// The nowhere-defined map.
    pub fn empty(dom: usize, cod: usize) -> Self {
        PartialInjection { dom, cod, map: vec![None; dom] }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn apply(&self, k: usize) -> Option<usize> {
        self.map[k]
    }

    /// Relational composition, `self` first.
    pub fn then(&self, other: &PartialInjection) -> Result<Self, ModelError> {
        if self.cod != other.dom {
            return Err(ModelError::SizeMismatch { expected: self.cod, got: other.dom });
        }
        let map = self.map.iter().map(|e| e.and_then(|v| other.map[v])).collect();
        Ok(PartialInjection { dom: self.dom, cod: other.cod, map })
    }

    /// Relational converse.
    pub fn dagger(&self) -> Self {
        let mut map = vec![None; self.cod];
        for (i, e) in self.map.iter().enumerate() {
            if let Some(v) = *e {
                map[v] = Some(i);
            }
        }
        PartialInjection { dom: self.cod, cod: self.dom, map }
    }

    /// Index-shifted disjoint union.
    pub fn oplus(&self, other: &PartialInjection) -> Self {
        let map = self
            .map
            .iter()
            .copied()
            .chain(other.map.iter().map(|e| e.map(|v| v + self.cod)))
            .collect();
        PartialInjection { dom: self.dom + other.dom, cod: self.cod + other.cod, map }
    }

    /// Pairwise product, defined on pairs where both components are.
    pub fn otimes(&self, other: &PartialInjection) -> Self {
        let mut map = Vec::with_capacity(self.dom * other.dom);
        for a in &self.map {
            for b in &other.map {
                map.push(match (a, b) {
                    (Some(x), Some(y)) => Some(x * other.cod + y),
                    _ => None,
                });
            }
        }
        PartialInjection { dom: self.dom * other.dom, cod: self.cod * other.cod, map }
    }

    pub fn random<R: rand::Rng>(dom: usize, cod: usize, rng: &mut R) -> Self {
        let mut targets: Vec<usize> = (0..cod).collect();
        for i in (1..cod).rev() {
            let j = rng.random_range(0..=i);
            targets.swap(i, j);
        }
        let mut taken = 0;
        let map = (0..dom)
            .map(|_| {
                if taken < cod && rng.random_bool(0.7) {
                    taken += 1;
                    Some(targets[taken - 1])
                } else {
                    None
                }
            })
            .collect();
        PartialInjection { dom, cod, map }
    }
}

impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (i, e) in self.map.iter().enumerate() {
            if let Some(v) = e {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{i}↦{v}")?;
                first = false;
            }
        }
        write!(f, "}}: {}⇀{}", self.dom, self.cod)
    }
}
