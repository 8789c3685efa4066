//! The two classical effect layers over the reversible core, and the
//! factorization of arbitrary functions through a bijection.
//!
//! An [`AllocTerm`] `b1 >-> b2` is a reversible body on `b1 + b3` with the
//! right summand hidden: a heap the computation may allocate from. A
//! [`HideTerm`] `b1 ~> b2` additionally hides a garbage factor of the
//! output. Stacking the two recovers ordinary irreversible functions,
//! which [`factorize`] conversely splits into
//! injection ; bijection ; projection.
//!
//! Terms are identified extensionally: two layer terms are equal when
//! they induce the same table, regardless of their hidden types.

use crate::ast::{Comb, Prim, Term};
use crate::denote::synth_bij;
use crate::error::{EffectError, ModelError};
use crate::eval::{eval, invert};
use crate::finfun::FinFun;
use crate::perm::Permutation;
use crate::typecheck::{check, check_inferred};
use crate::types::ValueType;
use crate::value::Value;

fn prim(p: Prim) -> Comb {
    Term::Prim(p)
}

/// `b <-> b*1`, derived from the left unitor via swap.
fn uniti_mul_r() -> Comb {
    Comb::seq(prim(Prim::UnitiMulL), prim(Prim::SwapMul))
}

/// `b*1 <-> b`.
fn unite_mul_r() -> Comb {
    Comb::seq(prim(Prim::SwapMul), prim(Prim::UniteMulL))
}

/// A term of the allocation layer: `dom >-> cod` with hidden heap type
/// `hidden` and reversible body `dom + hidden <-> cod`.
#[derive(Debug, Clone)]
pub struct AllocTerm {
    dom: ValueType,
    cod: ValueType,
    hidden: ValueType,
    body: Comb,
    inj: Vec<usize>,
}

impl AllocTerm {
    /// Lift a reversible body, hiding the right summand of its domain.
    pub fn new(
        dom: ValueType,
        hidden: ValueType,
        cod: ValueType,
        body: Comb,
    ) -> Result<AllocTerm, EffectError> {
        let body_dom = ValueType::sum(dom.clone(), hidden.clone());
        check(&body, &body_dom, &cod).map_err(|e| EffectError::BodyType {
            expected: format!("{body_dom} <-> {cod}"),
            got: e.to_string(),
        })?;
        let mut inj = Vec::with_capacity(dom.size());
        for v in Value::enumerate(&dom) {
            let w = eval(&body, Value::inl(v)).map_err(ModelError::from)?;
            inj.push(w.index(&cod).map_err(ModelError::from)?);
        }
        // the body is a bijection, so distinct left inputs stay distinct
        let mut seen = vec![false; cod.size()];
        for &v in &inj {
            if seen[v] {
                return Err(EffectError::NotInjective);
            }
            seen[v] = true;
        }
        Ok(AllocTerm { dom, cod, hidden, body, inj })
    }

    /// Embed a pure term: nothing hidden.
    pub fn arr(c: Comb, dom: ValueType, cod: ValueType) -> Result<AllocTerm, EffectError> {
        // body : dom + 0 <-> cod
        let body = Comb::seq(prim(Prim::SwapAdd), Comb::seq(prim(Prim::UniteAddL), c));
        AllocTerm::new(dom, ValueType::Zero, cod, body)
    }

    pub fn identity(b: ValueType) -> AllocTerm {
        AllocTerm::arr(prim(Prim::Id), b.clone(), b).expect("id lifts")
    }

    /// `0 >-> b`: allocate a constant from the heap.
    pub fn alloc(b: ValueType) -> AllocTerm {
        AllocTerm::new(ValueType::Zero, b.clone(), b, prim(Prim::UniteAddL)).expect("alloc lifts")
    }

    /// `b1 >-> b1 + b2`, the left coproduct injection.
    pub fn inl(b1: ValueType, b2: ValueType) -> AllocTerm {
        let cod = ValueType::sum(b1.clone(), b2.clone());
        AllocTerm::new(b1, b2, cod, prim(Prim::Id)).expect("inl lifts")
    }

    /// `b2 >-> b1 + b2`, the right coproduct injection.
    pub fn inr(b1: ValueType, b2: ValueType) -> AllocTerm {
        let cod = ValueType::sum(b1.clone(), b2.clone());
        AllocTerm::new(b2, b1, cod, prim(Prim::SwapAdd)).expect("inr lifts")
    }

    /// `b >-> b*b`, classical cloning. The body is synthesized: the heap
    /// is the canonical type of size `|b|²-|b|` and the bijection sends
    /// the `k`-th value to the pair index of `(k, k)`.
    pub fn clone_term(b: &ValueType) -> Result<AllocTerm, EffectError> {
        let n = b.size();
        let total = n * n;
        let hidden = ValueType::canonical(total - n);
        let cod = ValueType::prod(b.clone(), b.clone());
        let dom_full = ValueType::sum(b.clone(), hidden.clone());
        let mut image = vec![usize::MAX; total];
        let mut used = vec![false; total];
        for k in 0..n {
            image[k] = k * n + k;
            used[k * n + k] = true;
        }
        let mut free = (0..total).filter(|i| !used[*i]);
        for slot in image.iter_mut().skip(n) {
            *slot = free.next().expect("heap covers the rest");
        }
        let p = Permutation::from_image(image)?;
        let body = synth_bij(&p, &dom_full, &cod)?;
        AllocTerm::new(b.clone(), hidden, cod, body)
    }

    pub fn dom(&self) -> &ValueType {
        &self.dom
    }

    pub fn cod(&self) -> &ValueType {
        &self.cod
    }

    pub fn hidden(&self) -> &ValueType {
        &self.hidden
    }

    pub fn body(&self) -> &Comb {
        &self.body
    }

    /// The injection `0..|dom| -> 0..|cod|` this term induces.
    pub fn inj(&self) -> &[usize] {
        &self.inj
    }

    /// Sequential composition: hide both heaps, reassociate, run the
    /// bodies in order.
    pub fn seq(&self, other: &AllocTerm) -> Result<AllocTerm, EffectError> {
        if self.cod != other.dom {
            return Err(EffectError::Compose {
                left: format!("{} >-> {}", self.dom, self.cod),
                right: format!("{} >-> {}", other.dom, other.cod),
            });
        }
        let hidden = ValueType::sum(self.hidden.clone(), other.hidden.clone());
        let body = Comb::seq(
            prim(Prim::AssocLAdd),
            Comb::seq(
                Comb::sum(self.body.clone(), prim(Prim::Id)),
                other.body.clone(),
            ),
        );
        AllocTerm::new(self.dom.clone(), hidden, other.cod.clone(), body)
    }

    /// Parallel composition on products.
    pub fn par(&self, other: &AllocTerm) -> Result<AllocTerm, EffectError> {
        // distl : a*(b+c) <-> a*b + a*c
        let distl = Comb::seq(
            prim(Prim::SwapMul),
            Comb::seq(prim(Prim::Dist), Comb::sum(prim(Prim::SwapMul), prim(Prim::SwapMul))),
        );
        // forward: (b1+h1)*(b1'+h2) <-> b1*b1' + (h1*b1' + (b1*h2 + h1*h2))
        let split = Comb::seq(
            distl,
            Comb::seq(Comb::sum(prim(Prim::Dist), prim(Prim::Dist)), prim(Prim::AssocRAdd)),
        );
        let dom = ValueType::prod(self.dom.clone(), other.dom.clone());
        let cod = ValueType::prod(self.cod.clone(), other.cod.clone());
        let hidden = ValueType::sum(
            ValueType::prod(self.hidden.clone(), other.dom.clone()),
            ValueType::sum(
                ValueType::prod(self.dom.clone(), other.hidden.clone()),
                ValueType::prod(self.hidden.clone(), other.hidden.clone()),
            ),
        );
        let body = Comb::seq(invert(&split), Comb::prod(self.body.clone(), other.body.clone()));
        AllocTerm::new(dom, hidden, cod, body)
    }

    /// Extensional equality: same end types, same injection table. Terms
    /// with different hidden types compare equal when they behave alike
    /// on real inputs.
    pub fn ext_eq(&self, other: &AllocTerm) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.inj == other.inj
    }
}

/// A term of the hiding layer: `dom ~> cod` with garbage type `garbage`
/// and allocation-layer body `dom >-> cod * garbage`.
#[derive(Debug, Clone)]
pub struct HideTerm {
    dom: ValueType,
    cod: ValueType,
    garbage: ValueType,
    body: AllocTerm,
    fun: FinFun,
}

impl HideTerm {
    /// Lift an allocation-layer term, hiding the right factor of its
    /// codomain.
    pub fn new(cod: ValueType, garbage: ValueType, body: AllocTerm) -> Result<HideTerm, EffectError> {
        let expected = ValueType::prod(cod.clone(), garbage.clone());
        if body.cod != expected {
            return Err(EffectError::BodyType {
                expected: format!("_ >-> {expected}"),
                got: format!("{} >-> {}", body.dom, body.cod),
            });
        }
        let g = garbage.size();
        let table: Vec<usize> = body.inj.iter().map(|&v| v / g.max(1)).collect();
        let fun = FinFun::new(body.dom.size(), cod.size(), table)?;
        Ok(HideTerm { dom: body.dom.clone(), cod, garbage, body, fun })
    }

    /// Embed an allocation-layer term with trivial garbage `1`.
    pub fn arr(t: &AllocTerm) -> Result<HideTerm, EffectError> {
        let pad = AllocTerm::arr(
            uniti_mul_r(),
            t.cod.clone(),
            ValueType::prod(t.cod.clone(), ValueType::One),
        )?;
        HideTerm::new(t.cod.clone(), ValueType::One, t.seq(&pad)?)
    }

    pub fn identity(b: ValueType) -> HideTerm {
        HideTerm::arr(&AllocTerm::identity(b)).expect("id lifts")
    }

    /// `b ~> 1`: discard a value into the garbage.
    pub fn discard(b: ValueType) -> HideTerm {
        let body = AllocTerm::arr(
            prim(Prim::UnitiMulL),
            b.clone(),
            ValueType::prod(ValueType::One, b.clone()),
        )
        .expect("unitor lifts");
        HideTerm::new(ValueType::One, b, body).expect("discard lifts")
    }

    /// `b1 * b2 ~> b1`.
    pub fn fst(b1: ValueType, b2: ValueType) -> Result<HideTerm, EffectError> {
        let keep = HideTerm::identity(b1.clone());
        let drop = HideTerm::discard(b2.clone());
        let both = keep.par(&drop)?;
        let unpad = HideTerm::arr(&AllocTerm::arr(
            unite_mul_r(),
            ValueType::prod(b1.clone(), ValueType::One),
            b1,
        )?)?;
        both.seq(&unpad)
    }

    /// `b1 * b2 ~> b2`.
    pub fn snd(b1: ValueType, b2: ValueType) -> Result<HideTerm, EffectError> {
        let drop = HideTerm::discard(b1.clone());
        let keep = HideTerm::identity(b2.clone());
        let both = drop.par(&keep)?;
        let unpad = HideTerm::arr(&AllocTerm::arr(
            prim(Prim::UniteMulL),
            ValueType::prod(ValueType::One, b2.clone()),
            b2,
        )?)?;
        both.seq(&unpad)
    }

    pub fn dom(&self) -> &ValueType {
        &self.dom
    }

    pub fn cod(&self) -> &ValueType {
        &self.cod
    }

    pub fn garbage(&self) -> &ValueType {
        &self.garbage
    }

    pub fn body(&self) -> &AllocTerm {
        &self.body
    }

    /// The total function this term denotes.
    pub fn fun(&self) -> &FinFun {
        &self.fun
    }

    pub fn seq(&self, other: &HideTerm) -> Result<HideTerm, EffectError> {
        if self.cod != other.dom {
            return Err(EffectError::Compose {
                left: format!("{} ~> {}", self.dom, self.cod),
                right: format!("{} ~> {}", other.dom, other.cod),
            });
        }
        // dom >-> (cod' * g') * g >-> cod' * (g' * g)
        let id_g = AllocTerm::identity(self.garbage.clone());
        let step = self.body.seq(&other.body.par(&id_g)?)?;
        let shuffle = AllocTerm::arr(
            prim(Prim::AssocRMul),
            step.cod.clone(),
            ValueType::prod(
                other.cod.clone(),
                ValueType::prod(other.garbage.clone(), self.garbage.clone()),
            ),
        )?;
        HideTerm::new(
            other.cod.clone(),
            ValueType::prod(other.garbage.clone(), self.garbage.clone()),
            step.seq(&shuffle)?,
        )
    }

    pub fn par(&self, other: &HideTerm) -> Result<HideTerm, EffectError> {
        // (a*g1) * (b*g2) <-> (a*b) * (g1*g2)
        let interchange = Comb::seq(
            prim(Prim::AssocRMul),
            Comb::seq(
                Comb::prod(
                    prim(Prim::Id),
                    Comb::seq(
                        prim(Prim::AssocLMul),
                        Comb::seq(Comb::prod(prim(Prim::SwapMul), prim(Prim::Id)), prim(Prim::AssocRMul)),
                    ),
                ),
                prim(Prim::AssocLMul),
            ),
        );
        let raw = self.body.par(&other.body)?;
        let cod = ValueType::prod(self.cod.clone(), other.cod.clone());
        let garbage = ValueType::prod(self.garbage.clone(), other.garbage.clone());
        let fix = AllocTerm::arr(interchange, raw.cod.clone(), ValueType::prod(cod.clone(), garbage.clone()))?;
        HideTerm::new(cod, garbage, raw.seq(&fix)?)
    }

    pub fn ext_eq(&self, other: &HideTerm) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.fun == other.fun
    }
}

/// Surface syntax of allocation-layer terms, built by the parser.
#[derive(Debug, Clone, PartialEq)]
pub enum ArrowExpr {
    Lift(ValueType, Comb),
    Arr(Comb),
    Alloc(ValueType),
    Clone(ValueType),
    Inl(ValueType, ValueType),
    Inr(ValueType, ValueType),
    Seq(Box<ArrowExpr>, Box<ArrowExpr>),
    Par(Box<ArrowExpr>, Box<ArrowExpr>),
}

impl ArrowExpr {
    pub fn seq(a: ArrowExpr, b: ArrowExpr) -> ArrowExpr {
        ArrowExpr::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: ArrowExpr, b: ArrowExpr) -> ArrowExpr {
        ArrowExpr::Par(Box::new(a), Box::new(b))
    }

    pub fn build(&self) -> Result<AllocTerm, EffectError> {
        match self {
            ArrowExpr::Lift(hidden, body) => {
                let tt = check_inferred(body)?;
                match &tt.dom {
                    ValueType::Sum(l, r) if **r == *hidden => {
                        AllocTerm::new((**l).clone(), hidden.clone(), tt.cod.clone(), body.clone())
                    }
                    other => Err(EffectError::BodyType {
                        expected: format!("_ + {hidden} <-> _"),
                        got: format!("{other} <-> {}", tt.cod),
                    }),
                }
            }
            ArrowExpr::Arr(c) => {
                let tt = check_inferred(c)?;
                AllocTerm::arr(c.clone(), tt.dom, tt.cod)
            }
            ArrowExpr::Alloc(b) => Ok(AllocTerm::alloc(b.clone())),
            ArrowExpr::Clone(b) => AllocTerm::clone_term(b),
            ArrowExpr::Inl(b1, b2) => Ok(AllocTerm::inl(b1.clone(), b2.clone())),
            ArrowExpr::Inr(b1, b2) => Ok(AllocTerm::inr(b1.clone(), b2.clone())),
            ArrowExpr::Seq(a, b) => a.build()?.seq(&b.build()?),
            ArrowExpr::Par(a, b) => a.build()?.par(&b.build()?),
        }
    }
}

/// Surface syntax of hiding-layer terms.
#[derive(Debug, Clone, PartialEq)]
pub enum HideExpr {
    Lift(ValueType, ArrowExpr),
    Arr(ArrowExpr),
    Discard(ValueType),
    Fst(ValueType, ValueType),
    Snd(ValueType, ValueType),
    Seq(Box<HideExpr>, Box<HideExpr>),
    Par(Box<HideExpr>, Box<HideExpr>),
}

impl HideExpr {
    pub fn seq(a: HideExpr, b: HideExpr) -> HideExpr {
        HideExpr::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: HideExpr, b: HideExpr) -> HideExpr {
        HideExpr::Par(Box::new(a), Box::new(b))
    }

    pub fn build(&self) -> Result<HideTerm, EffectError> {
        match self {
            HideExpr::Lift(garbage, body) => {
                let t = body.build()?;
                match t.cod() {
                    ValueType::Prod(l, r) if **r == *garbage => {
                        HideTerm::new((**l).clone(), garbage.clone(), t.clone())
                    }
                    other => Err(EffectError::BodyType {
                        expected: format!("_ >-> _ * {garbage}"),
                        got: format!("{} >-> {other}", t.dom()),
                    }),
                }
            }
            HideExpr::Arr(e) => HideTerm::arr(&e.build()?),
            HideExpr::Discard(b) => Ok(HideTerm::discard(b.clone())),
            HideExpr::Fst(b1, b2) => HideTerm::fst(b1.clone(), b2.clone()),
            HideExpr::Snd(b1, b2) => HideTerm::snd(b1.clone(), b2.clone()),
            HideExpr::Seq(a, b) => a.build()?.seq(&b.build()?),
            HideExpr::Par(a, b) => a.build()?.par(&b.build()?),
        }
    }
}

/// A function split as injection ; bijection ; projection. `bij` permutes
/// `|A| + heap = |B| · garbage` points; the injection is the identity on
/// indices and the projection keeps the first pair component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub heap: usize,
    pub garbage: usize,
    pub bij: Permutation,
}

impl Factorization {
    /// `π ∘ bij ∘ i`, as a function `dom → cod`.
    pub fn recompose(&self, dom: usize, cod: usize) -> Result<FinFun, ModelError> {
        let table = (0..dom)
            .map(|k| self.bij.apply(k) / self.garbage.max(1))
            .collect();
        FinFun::new(dom, cod, table)
    }
}

/// Split an arbitrary function through a bijection, taking the garbage
/// to be the domain itself: injected `a` goes to the pair `(f(a), a)`,
/// heap points fill the remaining pair indices in order.
pub fn factorize(f: &FinFun) -> Result<Factorization, ModelError> {
    let a = f.dom();
    let b = f.cod();
    if a == 0 {
        return Ok(Factorization { heap: 0, garbage: 0, bij: Permutation::identity(0) });
    }
    if b == 0 {
        return Err(ModelError::EmptyCodomain);
    }
    let garbage = a;
    let total = a * b;
    let mut image = vec![usize::MAX; total];
    let mut used = vec![false; total];
    for (k, slot) in image.iter_mut().enumerate().take(a) {
        let v = f.apply(k) * garbage + k;
        *slot = v;
        used[v] = true;
    }
    let mut free = (0..total).filter(|i| !used[*i]);
    for slot in image.iter_mut().skip(a) {
        *slot = free.next().expect("counting: heap matches leftover indices");
    }
    Ok(Factorization { heap: total - a, garbage, bij: Permutation::from_image(image)? })
}
