//! Forward and backward operational semantics, and recursive-descent
//! program inversion.
//!
//! Evaluation is structural over the term; the primitive actions are the
//! unique natural isomorphisms of the primitive types. Actions on values
//! of empty types (`absorbl`, `factorzr`) can never fire: no such value
//! is constructible.

use crate::ast::{Comb, Prim, Primitive, Term};
use crate::error::EvalError;
use crate::value::Value;

fn ill_typed(prim: Prim, v: &Value) -> EvalError {
    EvalError::IllTyped {
        prim: prim.keyword().to_string(),
        value: v.to_string(),
    }
}

fn prim_apply(p: Prim, v: Value) -> Result<Value, EvalError> {
    match (p, v) {
        (Prim::Id, v) => Ok(v),
        (Prim::SwapAdd, Value::InL(a)) => Ok(Value::InR(a)),
        (Prim::SwapAdd, Value::InR(a)) => Ok(Value::InL(a)),
        (Prim::AssocRAdd, Value::InL(v)) => match *v {
            Value::InL(a) => Ok(Value::InL(a)),
            Value::InR(b) => Ok(Value::inr(Value::InL(b))),
            v => Err(ill_typed(p, &v)),
        },
        (Prim::AssocRAdd, Value::InR(c)) => Ok(Value::inr(Value::InR(c))),
        (Prim::AssocLAdd, Value::InL(a)) => Ok(Value::inl(Value::InL(a))),
        (Prim::AssocLAdd, Value::InR(v)) => match *v {
            Value::InL(b) => Ok(Value::inl(Value::InR(b))),
            Value::InR(c) => Ok(Value::InR(c)),
            v => Err(ill_typed(p, &v)),
        },
        (Prim::UniteAddL, Value::InR(v)) => Ok(*v),
        (Prim::UnitiAddL, v) => Ok(Value::inr(v)),
        (Prim::SwapMul, Value::Pair(a, b)) => Ok(Value::Pair(b, a)),
        (Prim::AssocRMul, Value::Pair(ab, c)) => match *ab {
            Value::Pair(a, b) => Ok(Value::pair(*a, Value::Pair(b, c))),
            v => Err(ill_typed(p, &v)),
        },
        (Prim::AssocLMul, Value::Pair(a, bc)) => match *bc {
            Value::Pair(b, c) => Ok(Value::pair(Value::Pair(a, b), *c)),
            v => Err(ill_typed(p, &v)),
        },
        (Prim::UniteMulL, Value::Pair(u, v)) if *u == Value::Unit => Ok(*v),
        (Prim::UnitiMulL, v) => Ok(Value::pair(Value::Unit, v)),
        (Prim::Dist, Value::Pair(s, c)) => match *s {
            Value::InL(a) => Ok(Value::inl(Value::pair(*a, *c))),
            Value::InR(b) => Ok(Value::inr(Value::pair(*b, *c))),
            v => Err(ill_typed(p, &v)),
        },
        (Prim::Factor, Value::InL(v)) => match *v {
            Value::Pair(a, c) => Ok(Value::pair(Value::InL(a), *c)),
            v => Err(ill_typed(p, &v)),
        },
        (Prim::Factor, Value::InR(v)) => match *v {
            Value::Pair(b, c) => Ok(Value::pair(Value::InR(b), *c)),
            v => Err(ill_typed(p, &v)),
        },
        // b*0 and 0 are empty: no argument can reach these
        (Prim::AbsorbL | Prim::FactorZR, v) => Err(ill_typed(p, &v)),
        (p, v) => Err(ill_typed(p, &v)),
    }
}

/// Run a combinator forward. Total on well-typed inputs.
pub fn eval(c: &Comb, v: Value) -> Result<Value, EvalError> {
    match c {
        Term::Prim(p) => prim_apply(*p, v),
        Term::Seq(a, b) => eval(b, eval(a, v)?),
        Term::Sum(a, b) => match v {
            Value::InL(x) => Ok(Value::inl(eval(a, *x)?)),
            Value::InR(x) => Ok(Value::inr(eval(b, *x)?)),
            v => Err(EvalError::IllTyped {
                prim: "sum composition".to_string(),
                value: v.to_string(),
            }),
        },
        Term::Prod(a, b) => match v {
            Value::Pair(x, y) => Ok(Value::pair(eval(a, *x)?, eval(b, *y)?)),
            v => Err(EvalError::IllTyped {
                prim: "product composition".to_string(),
                value: v.to_string(),
            }),
        },
        Term::Inv(a) => eval(&invert(a), v),
        Term::Ascribe(a, _, _) => eval(a, v),
    }
}

/// Syntactic inversion by recursive descent: primitives go to their
/// duals, sequencing reverses, sums and products invert componentwise,
/// `inv` cancels.
pub fn invert<P: Primitive>(c: &Term<P>) -> Term<P> {
    match c {
        Term::Prim(p) => match p.dual() {
            Some(d) => Term::Prim(d),
            None => Term::inv(Term::Prim(*p)),
        },
        Term::Seq(a, b) => Term::seq(invert(b), invert(a)),
        Term::Sum(a, b) => Term::sum(invert(a), invert(b)),
        Term::Prod(a, b) => Term::prod(invert(a), invert(b)),
        Term::Inv(a) => (**a).clone(),
        Term::Ascribe(a, dom, cod) => Term::ascribe(invert(a), cod.clone(), dom.clone()),
    }
}

/// Run a combinator backward: `reval(c, w) = eval(invert(c), w)`.
pub fn reval(c: &Comb, w: Value) -> Result<Value, EvalError> {
    eval(&invert(c), w)
}

/// Rewrite `inv` nodes away by pushing them to the leaves. Total for the
/// classical primitive set, where every primitive has a dual.
pub fn push_inv(c: &Comb) -> Comb {
    match c {
        Term::Prim(p) => Term::Prim(*p),
        Term::Seq(a, b) => Term::seq(push_inv(a), push_inv(b)),
        Term::Sum(a, b) => Term::sum(push_inv(a), push_inv(b)),
        Term::Prod(a, b) => Term::prod(push_inv(a), push_inv(b)),
        Term::Inv(a) => push_inv(&invert(a)),
        Term::Ascribe(a, dom, cod) => Term::ascribe(push_inv(a), dom.clone(), cod.clone()),
    }
}

/// The controlled-not on `(1+1)*(1+1)`, first component controlling.
/// A workhorse example throughout the tests.
pub fn cnot() -> Comb {
    use Prim::*;
    Comb::seq(
        Term::Prim(Dist),
        Comb::seq(
            Comb::sum(Term::Prim(Id), Comb::prod(Term::Prim(Id), Term::Prim(SwapAdd))),
            Term::Prim(Factor),
        ),
    )
}

/// Three-bit controlled-controlled-not, first two components controlling.
pub fn toffoli() -> Comb {
    use Prim::*;
    Comb::seq(
        Term::Prim(Dist),
        Comb::seq(
            Comb::sum(Term::Prim(Id), Comb::prod(Term::Prim(Id), cnot())),
            Term::Prim(Factor),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::ValueType as T;
    use crate::value::Value as V;

    fn bit(b: bool) -> V {
        if b {
            V::inr(V::Unit)
        } else {
            V::inl(V::Unit)
        }
    }

    #[test]
    fn swap_add_flips() {
        assert_eq!(eval(&Term::Prim(Prim::SwapAdd), bit(false)).unwrap(), bit(true));
    }

    #[test]
    fn dist_action() {
        let v = V::pair(V::inr(V::Unit), V::inl(V::Unit));
        assert_eq!(
            eval(&Term::Prim(Prim::Dist), v).unwrap(),
            V::inr(V::pair(V::Unit, V::inl(V::Unit)))
        );
    }

    #[test]
    fn cnot_truth_table() {
        // brute-force oracle: cnot flips the second bit iff the first is set
        let expected = |a: bool, b: bool| (a, a != b);
        for a in [false, true] {
            for b in [false, true] {
                let got = eval(&cnot(), V::pair(bit(a), bit(b))).unwrap();
                let (ea, eb) = expected(a, b);
                assert_eq!(got, V::pair(bit(ea), bit(eb)));
            }
        }
        // the concrete case quoted everywhere
        assert_eq!(
            eval(&cnot(), V::pair(bit(true), bit(false))).unwrap(),
            V::pair(bit(true), bit(true))
        );
    }

    #[test]
    fn reval_undoes_cnot() {
        assert_eq!(
            reval(&cnot(), V::pair(bit(true), bit(true))).unwrap(),
            V::pair(bit(true), bit(false))
        );
    }

    #[test]
    fn reval_of_uniti() {
        // uniti+l : b <-> 0+b, backward strips the injection
        assert_eq!(reval(&Term::Prim(Prim::UnitiAddL), V::inr(bit(true))).unwrap(), bit(true));
    }

    #[test]
    fn invert_structure() {
        use Prim::*;
        let c = Comb::seq(Term::Prim(SwapAdd), Term::Prim(Dist));
        assert_eq!(
            invert(&c),
            Comb::seq(Term::Prim(Factor), Term::Prim(SwapAdd))
        );
        assert_eq!(invert(&Comb::inv(Term::Prim(AssocRMul))), Term::Prim(AssocRMul));
        assert_eq!(invert(&Term::Prim(Id)), Term::Prim(Id));
    }

    #[test]
    fn double_inversion_collapses() {
        let c = Comb::seq(
            Comb::inv(Term::Prim(Prim::Dist)),
            Comb::sum(Term::Prim(Prim::SwapAdd), cnot()),
        );
        assert_eq!(push_inv(&invert(&invert(&c))), push_inv(&c));
    }

    #[test]
    fn seq_reval_contravariant() {
        let c1 = cnot();
        let c2 = Comb::prod(Term::Prim(Prim::SwapAdd), Term::Prim(Prim::Id));
        let c = Comb::seq(c1.clone(), c2.clone());
        let two = T::bool_type();
        let four = T::prod(two.clone(), two);
        for k in 0..4 {
            let w = V::from_index(&four, k).unwrap();
            assert_eq!(
                reval(&c, w.clone()).unwrap(),
                reval(&c1, reval(&c2, w).unwrap()).unwrap()
            );
        }
    }
}
