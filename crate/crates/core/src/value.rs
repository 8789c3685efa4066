//! Canonical inhabitants of value types, and the enumeration fixing the
//! order in which the finite model counts them.
//!
//! The enumeration is left-biased lexicographic: `idx(inl a) = idx(a)`,
//! `idx(inr c) = |left| + idx(c)`, `idx((a, c)) = idx(a)·|right| + idx(c)`.
//! It is a bijection between the inhabitants of `b` and `0..size(b)`.

use std::fmt;

use crate::error::ValueError;
use crate::types::ValueType;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Unit,
    InL(Box<Value>),
    InR(Box<Value>),
    Pair(Box<Value>, Box<Value>),
}

impl Value {
    pub fn inl(v: Value) -> Value {
        Value::InL(Box::new(v))
    }

    pub fn inr(v: Value) -> Value {
        Value::InR(Box::new(v))
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    pub fn has_type(&self, ty: &ValueType) -> bool {
        match (self, ty) {
            (Value::Unit, ValueType::One) => true,
            (Value::InL(v), ValueType::Sum(a, _)) => v.has_type(a),
            (Value::InR(v), ValueType::Sum(_, b)) => v.has_type(b),
            (Value::Pair(a, b), ValueType::Prod(ta, tb)) => a.has_type(ta) && b.has_type(tb),
            _ => false,
        }
    }

    /// Position of this value in the enumeration of `ty`.
    pub fn index(&self, ty: &ValueType) -> Result<usize, ValueError> {
        match (self, ty) {
            (Value::Unit, ValueType::One) => Ok(0),
            (Value::InL(v), ValueType::Sum(a, _)) => v.index(a),
            (Value::InR(v), ValueType::Sum(a, b)) => Ok(a.size() + v.index(b)?),
            (Value::Pair(a, b), ValueType::Prod(ta, tb)) => {
                Ok(a.index(ta)? * tb.size() + b.index(tb)?)
            }
            _ => Err(ValueError::TypeMismatch {
                value: self.to_string(),
                ty: ty.to_string(),
            }),
        }
    }

    /// Inverse of [`Value::index`]: the `k`-th inhabitant of `ty`.
    pub fn from_index(ty: &ValueType, k: usize) -> Result<Value, ValueError> {
        let n = ty.size();
        if k >= n {
            return Err(ValueError::IndexOutOfRange { index: k, size: n });
        }
        Ok(match ty {
            ValueType::Zero => unreachable!("0 has no inhabitants"),
            ValueType::One => Value::Unit,
            ValueType::Sum(a, b) => {
                let la = a.size();
                if k < la {
                    Value::inl(Value::from_index(a, k)?)
                } else {
                    Value::inr(Value::from_index(b, k - la)?)
                }
            }
            ValueType::Prod(a, b) => {
                let lb = b.size();
                Value::pair(Value::from_index(a, k / lb)?, Value::from_index(b, k % lb)?)
            }
        })
    }

    /// All inhabitants of `ty` in enumeration order.
    pub fn enumerate(ty: &ValueType) -> Vec<Value> {
        (0..ty.size())
            .map(|k| Value::from_index(ty, k).expect("index in range"))
            .collect()
    }

    fn is_atom(&self) -> bool {
        matches!(self, Value::Unit | Value::Pair(_, _))
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>, parenthesize: bool) -> fmt::Result {
        match self {
            Value::Unit => write!(f, "()"),
            Value::Pair(a, b) => {
                write!(f, "(")?;
                a.fmt_inner(f, false)?;
                write!(f, ", ")?;
                b.fmt_inner(f, false)?;
                write!(f, ")")
            }
            Value::InL(v) | Value::InR(v) => {
                if parenthesize {
                    write!(f, "(")?;
                }
                write!(f, "{}", if matches!(self, Value::InL(_)) { "inl " } else { "inr " })?;
                v.fmt_inner(f, !v.is_atom())?;
                if parenthesize {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f, false)
    }
}
