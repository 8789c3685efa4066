//! Denotational semantics into finite permutations, the decision
//! procedure for program equivalence, and synthesis of a combinator
//! realizing any given permutation.
//!
//! `denote` is not compositional: it tabulates the evaluator over every
//! inhabitant of the domain. Functoriality (`denote(c1 ; c2) =
//! denote(c2) ∘ denote(c1)` and friends) is then a theorem the test
//! suite checks against the compositional permutation algebra, not
//! something baked into the definition.

use crate::ast::{Comb, Prim, Term};
use crate::error::ModelError;
use crate::eval::{eval, invert};
use crate::par;
use crate::perm::Permutation;
use crate::typecheck::check;
use crate::types::ValueType;
use crate::value::Value;

/// Tabulate a checked combinator as the permutation it induces on the
/// enumeration of its (ground) type.
pub fn denote(c: &Comb, dom: &ValueType, cod: &ValueType) -> Result<Permutation, ModelError> {
    denote_impl(c, dom, cod, true)
}

/// Sequential variant of [`denote`], kept callable alongside the
/// parallel one for the benchmark suite.
pub fn denote_seq(c: &Comb, dom: &ValueType, cod: &ValueType) -> Result<Permutation, ModelError> {
    denote_impl(c, dom, cod, false)
}

fn denote_impl(
    c: &Comb,
    dom: &ValueType,
    cod: &ValueType,
    parallel: bool,
) -> Result<Permutation, ModelError> {
    check(c, dom, cod)?;
    let n = dom.size();
    let kernel = |k: usize| -> Result<usize, ModelError> {
        let v = Value::from_index(dom, k)?;
        let w = eval(c, v)?;
        Ok(w.index(cod)?)
    };
    let entries = if parallel {
        par::map_indices(n, kernel)
    } else {
        par::map_indices_seq(n, kernel)
    };
    let image = entries.into_iter().collect::<Result<Vec<_>, _>>()?;
    Permutation::from_image(image)
}

/// Decide extensional equivalence of two combinators at a common type.
pub fn equiv(c1: &Comb, c2: &Comb, dom: &ValueType, cod: &ValueType) -> Result<bool, ModelError> {
    Ok(denote(c1, dom, cod)? == denote(c2, dom, cod)?)
}

/// A combinator `b <-> canonical(|b|)` whose denotation is the identity
/// permutation. The enumeration is arranged so that reassociating into
/// the right-nested canonical shape never moves an index.
pub fn canonical_iso(b: &ValueType) -> Comb {
    use Prim::*;
    match b {
        ValueType::Zero => Term::Prim(Id),
        // 1 <-> 0+1 <-> 1+0
        ValueType::One => Comb::seq(Term::Prim(UnitiAddL), Term::Prim(SwapAdd)),
        ValueType::Sum(l, r) => {
            let step = Comb::sum(canonical_iso(l), canonical_iso(r));
            Comb::seq(step, append_iso(l.size()))
        }
        ValueType::Prod(l, r) => {
            let step = Comb::prod(canonical_iso(l), canonical_iso(r));
            Comb::seq(step, merge_iso(l.size(), r.size()))
        }
    }
}

/// `canonical(m) + b <-> canonical(m + |b|)` whenever `b` is a canonical
/// type; index-preserving. The term shape depends only on the left size.
fn append_iso(m: usize) -> Comb {
    use Prim::*;
    if m == 0 {
        return Term::Prim(UniteAddL);
    }
    // (1 + N(m-1)) + N(n)  ->  1 + (N(m-1) + N(n))  ->  1 + N(m-1+n)
    Comb::seq(
        Term::Prim(AssocRAdd),
        Comb::sum(Term::Prim(Id), append_iso(m - 1)),
    )
}

/// `canonical(m) * canonical(n) <-> canonical(m·n)`, index-preserving.
fn merge_iso(m: usize, n: usize) -> Comb {
    use Prim::*;
    if m == 0 {
        // 0 * N(n) -> N(n) * 0 -> 0
        return Comb::seq(Term::Prim(SwapMul), Term::Prim(AbsorbL));
    }
    // (1 + N(m-1)) * N(n) -> 1*N(n) + N(m-1)*N(n) -> N(n) + N((m-1)·n) -> N(m·n)
    Comb::seq(
        Term::Prim(Dist),
        Comb::seq(
            Comb::sum(Term::Prim(UniteMulL), merge_iso(m - 1, n)),
            append_iso(n),
        ),
    )
}

/// The transposition of adjacent indices `i, i+1` at `canonical(n)`.
fn transposition_iso(n: usize, i: usize) -> Comb {
    use Prim::*;
    assert!(i + 1 < n);
    if i == 0 {
        // 1+(1+N(n-2)) -> (1+1)+N(n-2) -> swap the two units -> back
        Comb::seq(
            Term::Prim(AssocLAdd),
            Comb::seq(
                Comb::sum(Term::Prim(SwapAdd), Term::Prim(Id)),
                Term::Prim(AssocRAdd),
            ),
        )
    } else {
        Comb::sum(Term::Prim(Id), transposition_iso(n - 1, i - 1))
    }
}

/// A combinator `canonical(n) <-> canonical(n)` denoting `p`, built as a
/// product of adjacent transpositions.
pub fn synth_perm_canonical(p: &Permutation) -> Comb {
    let n = p.size();
    let swaps = p.adjacent_transpositions();
    if swaps.is_empty() {
        return Term::Prim(Prim::Id);
    }
    Comb::seq_all(swaps.into_iter().map(|i| transposition_iso(n, i)))
}

/// A combinator `from <-> to` denoting the bijection `p` between the two
/// enumerations. Requires `|from| = |to| = p.size()`.
pub fn synth_bij(p: &Permutation, from: &ValueType, to: &ValueType) -> Result<Comb, ModelError> {
    if from.size() != p.size() {
        return Err(ModelError::SizeMismatch { expected: from.size(), got: p.size() });
    }
    if to.size() != p.size() {
        return Err(ModelError::SizeMismatch { expected: to.size(), got: p.size() });
    }
    Ok(Comb::seq(
        canonical_iso(from),
        Comb::seq(synth_perm_canonical(p), invert(&canonical_iso(to))),
    ))
}

/// A combinator `b <-> b` denoting the permutation `p`.
pub fn synth_perm(p: &Permutation, b: &ValueType) -> Result<Comb, ModelError> {
    synth_bij(p, b, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::cnot;
    use crate::types::ValueType as T;

    #[test]
    fn identity_primitives_denote_identity() {
        let b = T::bool_type();
        assert!(denote(&Term::Prim(Prim::Id), &b, &b).unwrap().is_identity());
        // assocr+ at ((1+1)+1) <-> (1+(1+1)) is the identity on 3 points
        // thanks to the left-biased enumeration
        let dom = T::sum(T::bool_type(), T::One);
        let cod = T::sum(T::One, T::bool_type());
        assert!(denote(&Term::Prim(Prim::AssocRAdd), &dom, &cod).unwrap().is_identity());
    }

    #[test]
    fn swap_mul_denotation() {
        let four = T::prod(T::bool_type(), T::bool_type());
        let p = denote(&Term::Prim(Prim::SwapMul), &four, &four).unwrap();
        assert_eq!(p.image(), &[0, 2, 1, 3]);
    }

    #[test]
    fn cnot_denotation() {
        let four = T::prod(T::bool_type(), T::bool_type());
        let p = denote(&cnot(), &four, &four).unwrap();
        assert_eq!(p.image(), &[0, 1, 3, 2]);
    }

    #[test]
    fn known_equivalences() {
        let two = T::bool_type();
        let double_swap = Comb::seq(Term::Prim(Prim::SwapAdd), Term::Prim(Prim::SwapAdd));
        assert!(equiv(&double_swap, &Term::Prim(Prim::Id), &two, &two).unwrap());
        assert!(!equiv(&Term::Prim(Prim::SwapAdd), &Term::Prim(Prim::Id), &two, &two).unwrap());
    }

    #[test]
    fn canonical_iso_denotes_identity() {
        let cases = [
            T::Zero,
            T::One,
            T::bool_type(),
            T::prod(T::bool_type(), T::bool_type()),
            T::sum(T::prod(T::bool_type(), T::One), T::bool_type()),
            T::prod(T::sum(T::Zero, T::bool_type()), T::sum(T::One, T::bool_type())),
            // empty types and empty subcomponents
            T::prod(T::bool_type(), T::Zero),
            T::sum(T::Zero, T::Zero),
            T::sum(T::prod(T::One, T::Zero), T::One),
        ];
        for b in cases {
            let c = canonical_iso(&b);
            let n = b.size();
            let p = denote(&c, &b, &T::canonical(n)).unwrap();
            assert!(p.is_identity(), "canonical iso at {b} should preserve indices, got {p}");
        }
    }

    #[test]
    fn synth_small_permutations() {
        let two = T::bool_type();
        let swap = Permutation::from_image(vec![1, 0]).unwrap();
        let c = synth_perm(&swap, &two).unwrap();
        assert_eq!(denote(&c, &two, &two).unwrap(), swap);
        assert!(equiv(&c, &Term::Prim(Prim::SwapAdd), &two, &two).unwrap());

        let id = Permutation::identity(2);
        let c = synth_perm(&id, &two).unwrap();
        assert!(equiv(&c, &Term::Prim(Prim::Id), &two, &two).unwrap());
    }

    #[test]
    fn synth_all_of_s4_at_two_by_two() {
        let b = T::prod(T::bool_type(), T::bool_type());
        for p in Permutation::all(4) {
            let c = synth_perm(&p, &b).unwrap();
            assert_eq!(denote(&c, &b, &b).unwrap(), p);
        }
    }

    #[test]
    fn denote_seq_matches_parallel() {
        let b = T::prod(T::bool_type(), T::prod(T::bool_type(), T::bool_type()));
        let c = crate::eval::toffoli();
        assert_eq!(denote(&c, &b, &b).unwrap(), denote_seq(&c, &b, &b).unwrap());
    }

    #[test]
    fn equiv_is_a_congruence() {
        let two = T::bool_type();
        let a = Comb::seq(Term::Prim(Prim::SwapAdd), Term::Prim(Prim::SwapAdd));
        let b = Term::Prim(Prim::Id);
        assert!(equiv(&a, &b, &two, &two).unwrap());
        // plugging equivalent pieces into each context preserves equivalence
        let ctx_seq = |x: &Comb| Comb::seq(x.clone(), Term::Prim(Prim::SwapAdd));
        assert!(equiv(&ctx_seq(&a), &ctx_seq(&b), &two, &two).unwrap());
        let four_dom = T::sum(two.clone(), T::One);
        let ctx_sum = |x: &Comb| Comb::sum(x.clone(), Term::Prim(Prim::Id));
        assert!(equiv(&ctx_sum(&a), &ctx_sum(&b), &four_dom, &four_dom).unwrap());
        let prod_dom = T::prod(two.clone(), two.clone());
        let ctx_prod = |x: &Comb| Comb::prod(x.clone(), Term::Prim(Prim::Id));
        assert!(equiv(&ctx_prod(&a), &ctx_prod(&b), &prod_dom, &prod_dom).unwrap());
        assert!(equiv(&Comb::inv(a.clone()), &Comb::inv(b.clone()), &two, &two).unwrap());
        // and inequivalent pieces stay apart in context
        let c = Term::Prim(Prim::SwapAdd);
        assert!(!equiv(&ctx_seq(&c), &ctx_seq(&b), &two, &two).unwrap());
    }
}
