//! The value type grammar: finite types built from `0`, `1`, sums and
//! products. Types are compared structurally everywhere; `1 * b` and `b`
//! are distinct types connected only by a combinator.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValueType {
    Zero,
    One,
    Sum(Box<ValueType>, Box<ValueType>),
    Prod(Box<ValueType>, Box<ValueType>),
}

impl ValueType {
    pub fn sum(left: ValueType, right: ValueType) -> ValueType {
        ValueType::Sum(Box::new(left), Box::new(right))
    }

    pub fn prod(left: ValueType, right: ValueType) -> ValueType {
        ValueType::Prod(Box::new(left), Box::new(right))
    }

    /// Number of inhabitants: |0| = 0, |1| = 1, |a+b| = |a|+|b|, |a*b| = |a|·|b|.
    pub fn size(&self) -> usize {
        match self {
            ValueType::Zero => 0,
            ValueType::One => 1,
            ValueType::Sum(a, b) => a.size() + b.size(),
            ValueType::Prod(a, b) => a.size() * b.size(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// The canonical type of size `n`: right-nested `1+(1+(…+0))`.
    pub fn canonical(n: usize) -> ValueType {
        let mut t = ValueType::Zero;
        for _ in 0..n {
            t = ValueType::sum(ValueType::One, t);
        }
        t
    }

    /// The two-point type `1+1`, used as a boolean all over the tests.
    pub fn bool_type() -> ValueType {
        ValueType::sum(ValueType::One, ValueType::One)
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        // binding strength: sum = 1, prod = 2, atom = 3; both operators
        // print right-associated.
        match self {
            ValueType::Zero => write!(f, "0"),
            ValueType::One => write!(f, "1"),
            ValueType::Sum(a, b) => {
                if min > 1 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 2)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1)?;
                if min > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            ValueType::Prod(a, b) => {
                if min > 2 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 3)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 2)?;
                if min > 2 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(ValueType::Zero.size(), 0);
        assert_eq!(ValueType::bool_type().size(), 2);
        // (1+1) * (1+(1+1)) has 2 * 3 = 6 inhabitants
        let t = ValueType::prod(
            ValueType::bool_type(),
            ValueType::sum(ValueType::One, ValueType::bool_type()),
        );
        assert_eq!(t.size(), 6);
    }

    #[test]
    fn canonical_sizes() {
        for n in 0..10 {
            assert_eq!(ValueType::canonical(n).size(), n);
        }
    }

    #[test]
    fn display_right_assoc() {
        let t = ValueType::sum(ValueType::One, ValueType::sum(ValueType::One, ValueType::Zero));
        assert_eq!(t.to_string(), "1 + 1 + 0");
        let u = ValueType::sum(ValueType::sum(ValueType::One, ValueType::One), ValueType::Zero);
        assert_eq!(u.to_string(), "(1 + 1) + 0");
        let v = ValueType::prod(ValueType::bool_type(), ValueType::One);
        assert_eq!(v.to_string(), "(1 + 1) * 1");
        let w = ValueType::sum(ValueType::prod(ValueType::One, ValueType::One), ValueType::Zero);
        assert_eq!(w.to_string(), "1 * 1 + 0");
    }
}
