//! Total functions between finite sets: the irreversible model that the
//! effect layers target.

use std::fmt;

use crate::error::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFun {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl FinFun {
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<FinFun, ModelError> {
        if table.len() != dom {
            return Err(ModelError::SizeMismatch { expected: dom, got: table.len() });
        }
        if dom > 0 && cod == 0 {
            return Err(ModelError::EmptyCodomain);
        }
        for &v in &table {
            if v >= cod {
                return Err(ModelError::NotAFunction { entry: v, cod });
            }
        }
        Ok(FinFun { dom, cod, table })
    }

    pub fn identity(n: usize) -> FinFun {
        FinFun { dom: n, cod: n, table: (0..n).collect() }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<FinFun, ModelError> {
        FinFun::new(dom, cod, vec![value; dom])
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn apply(&self, k: usize) -> usize {
        self.table[k]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn then(&self, other: &FinFun) -> Result<FinFun, ModelError> {
        if self.cod != other.dom {
            return Err(ModelError::SizeMismatch { expected: self.cod, got: other.dom });
        }
        Ok(FinFun {
            dom: self.dom,
            cod: other.cod,
            table: self.table.iter().map(|&v| other.table[v]).collect(),
        })
    }

    /// Every function from `0..dom` to `0..cod`, in lexicographic table
    /// order. Only sensible when `cod^dom` is small.
    pub fn all(dom: usize, cod: usize) -> Vec<FinFun> {
        let mut out = Vec::new();
        let mut table = vec![0usize; dom];
        loop {
            out.push(FinFun { dom, cod, table: table.clone() });
            let mut i = dom;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                table[i] += 1;
                if table[i] < cod {
                    break;
                }
                table[i] = 0;
            }
        }
    }

    pub fn random<R: rand::Rng>(dom: usize, cod: usize, rng: &mut R) -> FinFun {
        assert!(cod > 0 || dom == 0);
        let table = (0..dom).map(|_| rng.random_range(0..cod)).collect();
        FinFun { dom, cod, table }
    }
}

impl fmt::Display for FinFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}↦{v}")?;
        }
        write!(f, "}}: {}→{}", self.dom, self.cod)
    }
}
