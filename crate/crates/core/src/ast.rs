//! Combinator abstract syntax.
//!
//! `Term<P>` is the combinator grammar over a primitive set `P`; the
//! classical language uses [`Prim`], the quantum extension adds three
//! gates in [`QPrim`]. Terms are immutable trees; all semantic functions
//! are pure.

use std::fmt;
use std::hash::Hash;

use crate::typecheck::MetaType;
use crate::types::ValueType;

/// The primitive isomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prim {
    Id,
    SwapAdd,
    AssocRAdd,
    AssocLAdd,
    UniteAddL,
    UnitiAddL,
    SwapMul,
    AssocRMul,
    AssocLMul,
    UniteMulL,
    UnitiMulL,
    Dist,
    Factor,
    AbsorbL,
    FactorZR,
}

/// A primitive set usable in [`Term`]: has a concrete keyword, a type
/// schema, and (for the self-inverse fragment) a dual primitive.
pub trait Primitive: Copy + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn keyword(&self) -> &'static str;

    /// The primitive realizing the inverse, if the inverse is itself a
    /// primitive. `None` makes [`crate::eval::invert`] fall back to an
    /// explicit `inv` node.
    fn dual(&self) -> Option<Self>;

    /// Type schema as a pair of metatypes over variables 0..3.
    fn schema(&self) -> (MetaType, MetaType);
}

impl Prim {
    pub const ALL: [Prim; 15] = [
        Prim::Id,
        Prim::SwapAdd,
        Prim::AssocRAdd,
        Prim::AssocLAdd,
        Prim::UniteAddL,
        Prim::UnitiAddL,
        Prim::SwapMul,
        Prim::AssocRMul,
        Prim::AssocLMul,
        Prim::UniteMulL,
        Prim::UnitiMulL,
        Prim::Dist,
        Prim::Factor,
        Prim::AbsorbL,
        Prim::FactorZR,
    ];
}

impl Primitive for Prim {
    fn keyword(&self) -> &'static str {
        match self {
            Prim::Id => "id",
            Prim::SwapAdd => "swap+",
            Prim::AssocRAdd => "assocr+",
            Prim::AssocLAdd => "assocl+",
            Prim::UniteAddL => "unite+l",
            Prim::UnitiAddL => "uniti+l",
            Prim::SwapMul => "swapx",
            Prim::AssocRMul => "assocrx",
            Prim::AssocLMul => "assoclx",
            Prim::UniteMulL => "unitexl",
            Prim::UnitiMulL => "unitixl",
            Prim::Dist => "dist",
            Prim::Factor => "factor",
            Prim::AbsorbL => "absorbl",
            Prim::FactorZR => "factorzr",
        }
    }

    fn dual(&self) -> Option<Prim> {
        Some(match self {
            Prim::Id => Prim::Id,
            Prim::SwapAdd => Prim::SwapAdd,
            Prim::AssocRAdd => Prim::AssocLAdd,
            Prim::AssocLAdd => Prim::AssocRAdd,
            Prim::UniteAddL => Prim::UnitiAddL,
            Prim::UnitiAddL => Prim::UniteAddL,
            Prim::SwapMul => Prim::SwapMul,
            Prim::AssocRMul => Prim::AssocLMul,
            Prim::AssocLMul => Prim::AssocRMul,
            Prim::UniteMulL => Prim::UnitiMulL,
            Prim::UnitiMulL => Prim::UniteMulL,
            Prim::Dist => Prim::Factor,
            Prim::Factor => Prim::Dist,
            Prim::AbsorbL => Prim::FactorZR,
            Prim::FactorZR => Prim::AbsorbL,
        })
    }

    fn schema(&self) -> (MetaType, MetaType) {
        use MetaType as M;
        let v = |i: u32| M::Var(i);
        let sum = M::sum;
        let prod = M::prod;
        match self {
            Prim::Id => (v(0), v(0)),
            Prim::SwapAdd => (sum(v(0), v(1)), sum(v(1), v(0))),
            Prim::AssocRAdd => (sum(sum(v(0), v(1)), v(2)), sum(v(0), sum(v(1), v(2)))),
            Prim::AssocLAdd => (sum(v(0), sum(v(1), v(2))), sum(sum(v(0), v(1)), v(2))),
            Prim::UniteAddL => (sum(M::Zero, v(0)), v(0)),
            Prim::UnitiAddL => (v(0), sum(M::Zero, v(0))),
            Prim::SwapMul => (prod(v(0), v(1)), prod(v(1), v(0))),
            Prim::AssocRMul => (prod(prod(v(0), v(1)), v(2)), prod(v(0), prod(v(1), v(2)))),
            Prim::AssocLMul => (prod(v(0), prod(v(1), v(2))), prod(prod(v(0), v(1)), v(2))),
            Prim::UniteMulL => (prod(M::One, v(0)), v(0)),
            Prim::UnitiMulL => (v(0), prod(M::One, v(0))),
            Prim::Dist => (
                prod(sum(v(0), v(1)), v(2)),
                sum(prod(v(0), v(2)), prod(v(1), v(2))),
            ),
            Prim::Factor => (
                sum(prod(v(0), v(2)), prod(v(1), v(2))),
                prod(sum(v(0), v(1)), v(2)),
            ),
            Prim::AbsorbL => (prod(v(0), M::Zero), M::Zero),
            Prim::FactorZR => (M::Zero, prod(v(0), M::Zero)),
        }
    }
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Primitive set of the quantum extension: the classical primitives plus
/// the Hadamard and the two phase gates, all at type `1+1 <-> 1+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QPrim {
    Base(Prim),
    Hadamard,
    PhaseS,
    PhaseT,
}

impl Primitive for QPrim {
    fn keyword(&self) -> &'static str {
        match self {
            QPrim::Base(p) => p.keyword(),
            QPrim::Hadamard => "H",
            QPrim::PhaseS => "S",
            QPrim::PhaseT => "T",
        }
    }

    fn dual(&self) -> Option<QPrim> {
        match self {
            QPrim::Base(p) => p.dual().map(QPrim::Base),
            // H is self-inverse; the phase gates have no primitive inverse,
            // their inversion stays an explicit `inv` node.
            QPrim::Hadamard => Some(QPrim::Hadamard),
            QPrim::PhaseS | QPrim::PhaseT => None,
        }
    }

    fn schema(&self) -> (MetaType, MetaType) {
        match self {
            QPrim::Base(p) => p.schema(),
            _ => {
                let two = MetaType::sum(MetaType::One, MetaType::One);
                (two.clone(), two)
            }
        }
    }
}

impl fmt::Display for QPrim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Combinator terms over a primitive set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term<P> {
    Prim(P),
    /// Sequential composition, left first.
    Seq(Box<Term<P>>, Box<Term<P>>),
    /// Choice composition on sums.
    Sum(Box<Term<P>>, Box<Term<P>>),
    /// Parallel composition on products.
    Prod(Box<Term<P>>, Box<Term<P>>),
    Inv(Box<Term<P>>),
    /// Type ascription `c : b1 <-> b2`.
    Ascribe(Box<Term<P>>, ValueType, ValueType),
}

pub type Comb = Term<Prim>;
pub type QComb = Term<QPrim>;

impl<P> Term<P> {
    pub fn seq(a: Term<P>, b: Term<P>) -> Term<P> {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Term<P>, b: Term<P>) -> Term<P> {
        Term::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Term<P>, b: Term<P>) -> Term<P> {
        Term::Prod(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term<P>) -> Term<P> {
        Term::Inv(Box::new(a))
    }

    pub fn ascribe(a: Term<P>, dom: ValueType, cod: ValueType) -> Term<P> {
        Term::Ascribe(Box::new(a), dom, cod)
    }

    /// Chain a sequence of terms with `;`, right-nested. Panics on empty input.
    pub fn seq_all<I: IntoIterator<Item = Term<P>>>(terms: I) -> Term<P>
    where
        I::IntoIter: DoubleEndedIterator,
    {
        let mut it = terms.into_iter().rev();
        let last = it.next().expect("seq_all of no terms");
        it.fold(last, |acc, t| Term::seq(t, acc))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Prim(_) => 1,
            Term::Seq(a, b) | Term::Sum(a, b) | Term::Prod(a, b) => 1 + a.node_count() + b.node_count(),
            Term::Inv(a) | Term::Ascribe(a, _, _) => 1 + a.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Prim(_) => 1,
            Term::Seq(a, b) | Term::Sum(a, b) | Term::Prod(a, b) => 1 + a.depth().max(b.depth()),
            Term::Inv(a) | Term::Ascribe(a, _, _) => 1 + a.depth(),
        }
    }
}

impl Comb {
    /// Embed a classical term into the quantum grammar.
    pub fn to_quantum(&self) -> QComb {
        match self {
            Term::Prim(p) => Term::Prim(QPrim::Base(*p)),
            Term::Seq(a, b) => Term::seq(a.to_quantum(), b.to_quantum()),
            Term::Sum(a, b) => Term::sum(a.to_quantum(), b.to_quantum()),
            Term::Prod(a, b) => Term::prod(a.to_quantum(), b.to_quantum()),
            Term::Inv(a) => Term::inv(a.to_quantum()),
            Term::Ascribe(a, d, c) => Term::ascribe(a.to_quantum(), d.clone(), c.clone()),
        }
    }
}

impl QComb {
    /// The classical fragment, if no gate primitive occurs.
    pub fn to_classical(&self) -> Option<Comb> {
        Some(match self {
            Term::Prim(QPrim::Base(p)) => Term::Prim(*p),
            Term::Prim(_) => return None,
            Term::Seq(a, b) => Term::seq(a.to_classical()?, b.to_classical()?),
            Term::Sum(a, b) => Term::sum(a.to_classical()?, b.to_classical()?),
            Term::Prod(a, b) => Term::prod(a.to_classical()?, b.to_classical()?),
            Term::Inv(a) => Term::inv(a.to_classical()?),
            Term::Ascribe(a, d, c) => Term::ascribe(a.to_classical()?, d.clone(), c.clone()),
        })
    }
}

impl<P: Primitive> Term<P> {
    // binding strength: ascribe = 0, `;` = 1, `+` = 2, `*` = 3, inv/atom = 4
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, needed: bool, inner: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
            if needed {
                write!(f, "(")?;
                inner(f)?;
                write!(f, ")")
            } else {
                inner(f)
            }
        };
        match self {
            Term::Prim(p) => f.write_str(p.keyword()),
            Term::Seq(a, b) => paren(f, min > 1, &|f| {
                a.fmt_prec(f, 2)?;
                write!(f, " ; ")?;
                b.fmt_prec(f, 1)
            }),
            Term::Sum(a, b) => paren(f, min > 2, &|f| {
                a.fmt_prec(f, 3)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)
            }),
            Term::Prod(a, b) => paren(f, min > 3, &|f| {
                a.fmt_prec(f, 4)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 3)
            }),
            Term::Inv(a) => {
                write!(f, "inv ")?;
                a.fmt_prec(f, 4)
            }
            Term::Ascribe(a, dom, cod) => paren(f, min > 0, &|f| {
                a.fmt_prec(f, 1)?;
                write!(f, " : {dom} <-> {cod}")
            }),
        }
    }
}

impl<P: Primitive> fmt::Display for Term<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
