//! Random generation of ground types and well-typed terms.
//!
//! Terms are grown top-down from a starting domain type: at every step we
//! pick a primitive applicable at the current type or recurse into a
//! composite. All generated terms are well-typed by construction, which
//! the property suites re-verify. Generation is deterministic given the
//! RNG, so test corpora are reproducible from a seed.

use rand::Rng;

use crate::ast::{Comb, Prim, Term};
use crate::eval::invert;
use crate::types::ValueType;

/// A random ground type with size bounded by `max_size` (and at least 1
/// inhabitant unless `allow_empty`).
pub fn random_type<R: Rng>(rng: &mut R, depth: usize, max_size: usize, allow_empty: bool) -> ValueType {
    if depth == 0 {
        return if allow_empty && rng.random_bool(0.15) {
            ValueType::Zero
        } else {
            ValueType::One
        };
    }
    match rng.random_range(0..10) {
        0 if allow_empty => ValueType::Zero,
        0 | 1 => ValueType::One,
        2..=5 => {
            let l = random_type(rng, depth - 1, max_size, allow_empty);
            let budget = max_size.saturating_sub(l.size()).max(1);
            let r = random_type(rng, depth - 1, budget, allow_empty);
            if l.size() + r.size() > max_size {
                l
            } else {
                ValueType::sum(l, r)
            }
        }
        _ => {
            let l = random_type(rng, depth - 1, max_size, allow_empty);
            let budget = if l.size() == 0 { max_size } else { (max_size / l.size()).max(1) };
            let r = random_type(rng, depth - 1, budget, allow_empty);
            if l.size() * r.size() > max_size {
                l
            } else {
                ValueType::prod(l, r)
            }
        }
    }
}

/// The primitive steps applicable at a domain type, paired with their
/// codomain there. `absorbl` and `factorzr` come ascribed: their schema
/// variable is not determined by the surrounding term.
fn applicable(dom: &ValueType) -> Vec<(Comb, ValueType)> {
    use Prim::*;
    use ValueType as T;
    let p = |x: Prim| Term::Prim(x);
    let mut out = vec![(p(Id), dom.clone())];
    out.push((p(UnitiAddL), T::sum(T::Zero, dom.clone())));
    out.push((p(UnitiMulL), T::prod(T::One, dom.clone())));
    match dom {
        T::Sum(l, r) => {
            out.push((p(SwapAdd), T::sum((**r).clone(), (**l).clone())));
            if let T::Sum(a, b) = &**l {
                out.push((p(AssocRAdd), T::sum((**a).clone(), T::sum((**b).clone(), (**r).clone()))));
            }
            if let T::Sum(b, c) = &**r {
                out.push((p(AssocLAdd), T::sum(T::sum((**l).clone(), (**b).clone()), (**c).clone())));
            }
            if **l == T::Zero {
                out.push((p(UniteAddL), (**r).clone()));
            }
            if let (T::Prod(a, c1), T::Prod(b, c2)) = (&**l, &**r) {
                if c1 == c2 {
                    out.push((p(Factor), T::prod(T::sum((**a).clone(), (**b).clone()), (**c1).clone())));
                }
            }
        }
        T::Prod(l, r) => {
            out.push((p(SwapMul), T::prod((**r).clone(), (**l).clone())));
            if let T::Prod(a, b) = &**l {
                out.push((p(AssocRMul), T::prod((**a).clone(), T::prod((**b).clone(), (**r).clone()))));
            }
            if let T::Prod(b, c) = &**r {
                out.push((p(AssocLMul), T::prod(T::prod((**l).clone(), (**b).clone()), (**c).clone())));
            }
            if **l == T::One {
                out.push((p(UniteMulL), (**r).clone()));
            }
            if let T::Sum(a, b) = &**l {
                out.push((
                    p(Dist),
                    T::sum(
                        T::prod((**a).clone(), (**r).clone()),
                        T::prod((**b).clone(), (**r).clone()),
                    ),
                ));
            }
            if **r == T::Zero {
                out.push((
                    Comb::ascribe(p(AbsorbL), dom.clone(), T::Zero),
                    T::Zero,
                ));
            }
        }
        T::Zero => {
            let cod = T::prod(T::One, T::Zero);
            out.push((Comb::ascribe(p(FactorZR), T::Zero, cod.clone()), cod));
        }
        T::One => {}
    }
    out
}

/// A random well-typed term from `dom`, together with its codomain.
/// `depth` bounds the syntax tree height.
pub fn random_term<R: Rng>(rng: &mut R, dom: &ValueType, depth: usize) -> (Comb, ValueType) {
    if depth == 0 {
        let options = applicable(dom);
        let (c, cod) = &options[rng.random_range(0..options.len())];
        return (c.clone(), cod.clone());
    }
    match rng.random_range(0..10) {
        // sequential composition
        0..=3 => {
            let (c1, mid) = random_term(rng, dom, depth - 1);
            let (c2, cod) = random_term(rng, &mid, depth - 1);
            (Comb::seq(c1, c2), cod)
        }
        // structural composition when the type allows it
        4 | 5 => match dom {
            ValueType::Sum(l, r) => {
                let (c1, k1) = random_term(rng, l, depth - 1);
                let (c2, k2) = random_term(rng, r, depth - 1);
                (Comb::sum(c1, c2), ValueType::sum(k1, k2))
            }
            ValueType::Prod(l, r) => {
                let (c1, k1) = random_term(rng, l, depth - 1);
                let (c2, k2) = random_term(rng, r, depth - 1);
                (Comb::prod(c1, c2), ValueType::prod(k1, k2))
            }
            _ => random_term(rng, dom, 0),
        },
        // an explicit inv node over a generated subterm
        6 => {
            let (c, cod) = random_term(rng, dom, depth - 1);
            (Comb::inv(invert(&c)), cod)
        }
        _ => random_term(rng, dom, 0),
    }
}

/// A reproducible corpus of `count` well-typed terms with their ground
/// types, every domain inhabited and sized at most `max_size`. Every
/// third entry insists on a domain of at least a quarter of the budget,
/// so the sweep exercises wide types, not just tiny ones.
pub fn corpus(seed: u64, count: usize, max_size: usize, depth: usize) -> Vec<(Comb, ValueType, ValueType)> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    // leaves count as 1 and the generator may add an ascription, so the
    // structural budget leaves room below the requested depth
    let term_depth = depth.min(8).saturating_sub(2);
    (0..count)
        .map(|i| {
            let floor = if i % 3 == 0 { (max_size / 4).max(1) } else { 1 };
            let mut tries = 0;
            let dom = loop {
                let t = random_type(&mut rng, 5, max_size, false);
                tries += 1;
                if t.size() >= floor || (tries > 200 && t.size() > 0) {
                    break t;
                }
            };
            let (c, cod) = random_term(&mut rng, &dom, term_depth);
            (c, dom, cod)
        })
        .collect()
}
