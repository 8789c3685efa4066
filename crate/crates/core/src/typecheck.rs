//! Type checking and inference for combinator terms.
//!
//! Primitives carry polymorphic schemas; inference instantiates each
//! occurrence with fresh metavariables and unifies across the term
//! structure. `check` additionally demands that every subterm gets a
//! ground type, and returns the fully annotated derivation.

use std::collections::HashMap;
use std::fmt;

use crate::ast::{Primitive, Term};
use crate::error::TypeError;
use crate::types::ValueType;

/// A value type extended with metavariables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MetaType {
    Zero,
    One,
    Var(u32),
    Sum(Box<MetaType>, Box<MetaType>),
    Prod(Box<MetaType>, Box<MetaType>),
}

impl MetaType {
    pub fn sum(a: MetaType, b: MetaType) -> MetaType {
        MetaType::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: MetaType, b: MetaType) -> MetaType {
        MetaType::Prod(Box::new(a), Box::new(b))
    }

    pub fn from_ground(t: &ValueType) -> MetaType {
        match t {
            ValueType::Zero => MetaType::Zero,
            ValueType::One => MetaType::One,
            ValueType::Sum(a, b) => MetaType::sum(Self::from_ground(a), Self::from_ground(b)),
            ValueType::Prod(a, b) => MetaType::prod(Self::from_ground(a), Self::from_ground(b)),
        }
    }

    /// Ground view of this type, if no metavariables remain.
    pub fn to_ground(&self) -> Option<ValueType> {
        Some(match self {
            MetaType::Zero => ValueType::Zero,
            MetaType::One => ValueType::One,
            MetaType::Var(_) => return None,
            MetaType::Sum(a, b) => ValueType::sum(a.to_ground()?, b.to_ground()?),
            MetaType::Prod(a, b) => ValueType::prod(a.to_ground()?, b.to_ground()?),
        })
    }

    pub fn is_ground(&self) -> bool {
        match self {
            MetaType::Zero | MetaType::One => true,
            MetaType::Var(_) => false,
            MetaType::Sum(a, b) | MetaType::Prod(a, b) => a.is_ground() && b.is_ground(),
        }
    }

    fn shift(&self, offset: u32) -> MetaType {
        match self {
            MetaType::Zero => MetaType::Zero,
            MetaType::One => MetaType::One,
            MetaType::Var(i) => MetaType::Var(i + offset),
            MetaType::Sum(a, b) => MetaType::sum(a.shift(offset), b.shift(offset)),
            MetaType::Prod(a, b) => MetaType::prod(a.shift(offset), b.shift(offset)),
        }
    }

    fn vars(&self, out: &mut Vec<u32>) {
        match self {
            MetaType::Zero | MetaType::One => {}
            MetaType::Var(i) => {
                if !out.contains(i) {
                    out.push(*i);
                }
            }
            MetaType::Sum(a, b) | MetaType::Prod(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8, names: &dyn Fn(u32) -> String) -> fmt::Result {
        match self {
            MetaType::Zero => write!(f, "0"),
            MetaType::One => write!(f, "1"),
            MetaType::Var(i) => write!(f, "{}", names(*i)),
            MetaType::Sum(a, b) => {
                if min > 1 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 2, names)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1, names)?;
                if min > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            MetaType::Prod(a, b) => {
                if min > 2 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 3, names)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 2, names)?;
                if min > 2 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for MetaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, &var_name)
    }
}

fn var_name(i: u32) -> String {
    const NAMES: [&str; 4] = ["X", "Y", "Z", "W"];
    if (i as usize) < NAMES.len() {
        NAMES[i as usize].to_string()
    } else {
        format!("X{}", i as usize - NAMES.len() + 1)
    }
}

/// A combinator type `dom <-> cod`, possibly containing metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombType {
    pub dom: MetaType,
    pub cod: MetaType,
}

impl CombType {
    pub fn is_ground(&self) -> bool {
        self.dom.is_ground() && self.cod.is_ground()
    }

    /// Rename metavariables to X, Y, Z, … in order of first appearance.
    pub fn canonicalize(&self) -> CombType {
        let mut order = Vec::new();
        self.dom.vars(&mut order);
        self.cod.vars(&mut order);
        let map: HashMap<u32, u32> = order.iter().enumerate().map(|(k, v)| (*v, k as u32)).collect();
        fn rename(t: &MetaType, map: &HashMap<u32, u32>) -> MetaType {
            match t {
                MetaType::Zero => MetaType::Zero,
                MetaType::One => MetaType::One,
                MetaType::Var(i) => MetaType::Var(map[i]),
                MetaType::Sum(a, b) => MetaType::sum(rename(a, map), rename(b, map)),
                MetaType::Prod(a, b) => MetaType::prod(rename(a, map), rename(b, map)),
            }
        }
        CombType {
            dom: rename(&self.dom, &map),
            cod: rename(&self.cod, &map),
        }
    }
}

impl fmt::Display for CombType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonicalize();
        write!(f, "{} <-> {}", c.dom, c.cod)
    }
}

/// A term annotated with a ground type at every node; ascriptions are
/// dissolved into the annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedTerm<P> {
    pub dom: ValueType,
    pub cod: ValueType,
    pub node: TypedNode<P>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypedNode<P> {
    Prim(P),
    Seq(Box<TypedTerm<P>>, Box<TypedTerm<P>>),
    Sum(Box<TypedTerm<P>>, Box<TypedTerm<P>>),
    Prod(Box<TypedTerm<P>>, Box<TypedTerm<P>>),
    Inv(Box<TypedTerm<P>>),
}

struct Unifier {
    next: u32,
    subst: HashMap<u32, MetaType>,
}

impl Unifier {
    fn new() -> Self {
        Unifier { next: 0, subst: HashMap::new() }
    }

    fn fresh_instance(&mut self, schema: (MetaType, MetaType)) -> (MetaType, MetaType) {
        let offset = self.next;
        let (d, c) = (schema.0.shift(offset), schema.1.shift(offset));
        let mut vs = Vec::new();
        d.vars(&mut vs);
        c.vars(&mut vs);
        self.next = vs.iter().copied().max().map_or(self.next, |m| m + 1);
        (d, c)
    }

    /// Walk the substitution at the root only.
    fn prune(&self, t: &MetaType) -> MetaType {
        let mut t = t.clone();
        while let MetaType::Var(i) = t {
            match self.subst.get(&i) {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }

    /// Fully apply the substitution.
    fn resolve(&self, t: &MetaType) -> MetaType {
        let t = self.prune(t);
        match t {
            MetaType::Zero | MetaType::One | MetaType::Var(_) => t,
            MetaType::Sum(a, b) => MetaType::sum(self.resolve(&a), self.resolve(&b)),
            MetaType::Prod(a, b) => MetaType::prod(self.resolve(&a), self.resolve(&b)),
        }
    }

    fn occurs(&self, v: u32, t: &MetaType) -> bool {
        match self.prune(t) {
            MetaType::Var(i) => i == v,
            MetaType::Sum(a, b) | MetaType::Prod(a, b) => self.occurs(v, &a) || self.occurs(v, &b),
            _ => false,
        }
    }

    fn unify(&mut self, a: &MetaType, b: &MetaType) -> Result<(), TypeError> {
        let (a, b) = (self.prune(a), self.prune(b));
        match (&a, &b) {
            (MetaType::Var(i), MetaType::Var(j)) if i == j => Ok(()),
            (MetaType::Var(i), _) => {
                if self.occurs(*i, &b) {
                    return Err(TypeError::Occurs {
                        var: var_name(*i),
                        ty: self.resolve(&b).to_string(),
                    });
                }
                self.subst.insert(*i, b);
                Ok(())
            }
            (_, MetaType::Var(_)) => self.unify(&b, &a),
            (MetaType::Zero, MetaType::Zero) | (MetaType::One, MetaType::One) => Ok(()),
            (MetaType::Sum(a1, a2), MetaType::Sum(b1, b2))
            | (MetaType::Prod(a1, a2), MetaType::Prod(b1, b2)) => {
                self.unify(a1, b1)?;
                self.unify(a2, b2)
            }
            _ => Err(TypeError::Mismatch {
                left: self.resolve(&a).to_string(),
                right: self.resolve(&b).to_string(),
            }),
        }
    }
}

/// Inference tree: every node remembered with its metatype pair so that
/// `check` can ground it afterwards.
struct Raw<'t, P> {
    dom: MetaType,
    cod: MetaType,
    term: &'t Term<P>,
    children: Vec<Raw<'t, P>>,
}

fn infer_raw<'t, P: Primitive>(u: &mut Unifier, term: &'t Term<P>) -> Result<Raw<'t, P>, TypeError> {
    match term {
        Term::Prim(p) => {
            let (dom, cod) = u.fresh_instance(p.schema());
            Ok(Raw { dom, cod, term, children: vec![] })
        }
        Term::Seq(a, b) => {
            let ra = infer_raw(u, a)?;
            let rb = infer_raw(u, b)?;
            u.unify(&ra.cod, &rb.dom)?;
            Ok(Raw { dom: ra.dom.clone(), cod: rb.cod.clone(), term, children: vec![ra, rb] })
        }
        Term::Sum(a, b) => {
            let ra = infer_raw(u, a)?;
            let rb = infer_raw(u, b)?;
            let dom = MetaType::sum(ra.dom.clone(), rb.dom.clone());
            let cod = MetaType::sum(ra.cod.clone(), rb.cod.clone());
            Ok(Raw { dom, cod, term, children: vec![ra, rb] })
        }
        Term::Prod(a, b) => {
            let ra = infer_raw(u, a)?;
            let rb = infer_raw(u, b)?;
            let dom = MetaType::prod(ra.dom.clone(), rb.dom.clone());
            let cod = MetaType::prod(ra.cod.clone(), rb.cod.clone());
            Ok(Raw { dom, cod, term, children: vec![ra, rb] })
        }
        Term::Inv(a) => {
            let ra = infer_raw(u, a)?;
            Ok(Raw { dom: ra.cod.clone(), cod: ra.dom.clone(), term, children: vec![ra] })
        }
        Term::Ascribe(a, dom, cod) => {
            let ra = infer_raw(u, a)?;
            u.unify(&ra.dom, &MetaType::from_ground(dom))?;
            u.unify(&ra.cod, &MetaType::from_ground(cod))?;
            Ok(Raw { dom: ra.dom.clone(), cod: ra.cod.clone(), term, children: vec![ra] })
        }
    }
}

/// Principal type of a term, possibly with metavariables.
pub fn infer<P: Primitive>(term: &Term<P>) -> Result<CombType, TypeError> {
    let mut u = Unifier::new();
    let raw = infer_raw(&mut u, term)?;
    Ok(CombType {
        dom: u.resolve(&raw.dom),
        cod: u.resolve(&raw.cod),
    }
    .canonicalize())
}

fn solidify<P: Primitive>(u: &Unifier, raw: &Raw<'_, P>) -> Result<TypedTerm<P>, TypeError> {
    let dom = u.resolve(&raw.dom);
    let cod = u.resolve(&raw.cod);
    let (Some(dom), Some(cod)) = (dom.to_ground(), cod.to_ground()) else {
        return Err(TypeError::Ambiguous {
            subterm: term_text(raw.term),
        });
    };
    let node = match raw.term {
        Term::Prim(p) => TypedNode::Prim(*p),
        Term::Seq(_, _) => TypedNode::Seq(
            Box::new(solidify(u, &raw.children[0])?),
            Box::new(solidify(u, &raw.children[1])?),
        ),
        Term::Sum(_, _) => TypedNode::Sum(
            Box::new(solidify(u, &raw.children[0])?),
            Box::new(solidify(u, &raw.children[1])?),
        ),
        Term::Prod(_, _) => TypedNode::Prod(
            Box::new(solidify(u, &raw.children[0])?),
            Box::new(solidify(u, &raw.children[1])?),
        ),
        Term::Inv(_) => TypedNode::Inv(Box::new(solidify(u, &raw.children[0])?)),
        // ascriptions dissolve into the annotation of their body
        Term::Ascribe(_, _, _) => solidify(u, &raw.children[0])?.node,
    };
    debug_assert_eq!(dom.size(), cod.size(), "well-typed terms preserve cardinality");
    Ok(TypedTerm { dom, cod, node })
}

fn term_text<P: Primitive>(t: &Term<P>) -> String {
    let s = t.to_string();
    if s.chars().count() > 60 {
        let cut: String = s.chars().take(59).collect();
        format!("{cut}…")
    } else {
        s
    }
}

/// Check a term against a ground type and return the fully annotated
/// derivation. Fails if the term cannot take the type, or if some
/// subterm's type is not determined by it.
pub fn check<P: Primitive>(
    term: &Term<P>,
    dom: &ValueType,
    cod: &ValueType,
) -> Result<TypedTerm<P>, TypeError> {
    let mut u = Unifier::new();
    let raw = infer_raw(&mut u, term)?;
    u.unify(&raw.dom, &MetaType::from_ground(dom))?;
    u.unify(&raw.cod, &MetaType::from_ground(cod))?;
    solidify(&u, &raw)
}

/// Like [`check`] but with the type taken from inference; the principal
/// type must be ground.
pub fn check_inferred<P: Primitive>(term: &Term<P>) -> Result<TypedTerm<P>, TypeError> {
    let mut u = Unifier::new();
    let raw = infer_raw(&mut u, term)?;
    let ty = CombType { dom: u.resolve(&raw.dom), cod: u.resolve(&raw.cod) };
    if !ty.is_ground() {
        return Err(TypeError::NotGround { ty: ty.to_string() });
    }
    solidify(&u, &raw)
}

/// Check against a partially known shape: unifies the inferred type with
/// the given metatype pair, then demands groundness. Used by `pi run` to
/// pin types from the shape of the input value.
pub fn check_against<P: Primitive>(
    term: &Term<P>,
    dom: &MetaType,
    cod: &MetaType,
) -> Result<TypedTerm<P>, TypeError> {
    let mut u = Unifier::new();
    let raw = infer_raw(&mut u, term)?;
    let offset = u.next;
    u.unify(&raw.dom, &dom.shift(offset))?;
    u.unify(&raw.cod, &cod.shift(offset))?;
    let ty = CombType { dom: u.resolve(&raw.dom), cod: u.resolve(&raw.cod) };
    if !ty.is_ground() {
        return Err(TypeError::NotGround { ty: ty.to_string() });
    }
    solidify(&u, &raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Comb, Prim, Term};
    use crate::types::ValueType as T;

    fn p(x: Prim) -> Comb {
        Term::Prim(x)
    }

    #[test]
    fn principal_type_of_unite() {
        let t = infer(&p(Prim::UniteAddL)).unwrap();
        assert_eq!(t.to_string(), "0 + X <-> X");
    }

    #[test]
    fn principal_type_of_double_swap() {
        let t = infer(&Comb::seq(p(Prim::SwapAdd), p(Prim::SwapAdd))).unwrap();
        assert_eq!(t.to_string(), "X + Y <-> X + Y");
    }

    #[test]
    fn dist_then_unite_fails() {
        let err = infer(&Comb::seq(p(Prim::Dist), p(Prim::UniteMulL))).unwrap_err();
        assert!(matches!(err, TypeError::Mismatch { .. }), "{err}");
    }

    #[test]
    fn check_swap_instance() {
        // swap+ : (1+0)+(1*1) <-> (1*1)+(1+0)
        let dom = T::sum(T::sum(T::One, T::Zero), T::prod(T::One, T::One));
        let cod = T::sum(T::prod(T::One, T::One), T::sum(T::One, T::Zero));
        check(&p(Prim::SwapAdd), &dom, &cod).unwrap();
    }

    #[test]
    fn check_id_needs_equal_types() {
        let err = check(&p(Prim::Id), &T::bool_type(), &T::prod(T::One, T::One)).unwrap_err();
        assert!(matches!(err, TypeError::Mismatch { .. }));
    }

    #[test]
    fn check_inv_dist() {
        // inv dist : (1*1)+(1*1) <-> (1+1)*1
        let dom = T::sum(T::prod(T::One, T::One), T::prod(T::One, T::One));
        let cod = T::prod(T::bool_type(), T::One);
        check(&Comb::inv(p(Prim::Dist)), &dom, &cod).unwrap();
    }

    #[test]
    fn inv_swaps_checkability() {
        let dom = T::prod(T::sum(T::One, T::Zero), T::bool_type());
        let cod = T::sum(T::prod(T::One, T::bool_type()), T::prod(T::Zero, T::bool_type()));
        assert!(check(&p(Prim::Dist), &dom, &cod).is_ok());
        assert!(check(&Comb::inv(p(Prim::Dist)), &cod, &dom).is_ok());
        assert!(check(&Comb::inv(p(Prim::Dist)), &dom, &cod).is_err());
    }

    #[test]
    fn ambiguous_middle_type() {
        // factorzr ; absorbl : 0 <-> 0 with a middle b*0 whose b is free
        let c = Comb::seq(p(Prim::FactorZR), p(Prim::AbsorbL));
        let err = check(&c, &T::Zero, &T::Zero).unwrap_err();
        assert!(matches!(err, TypeError::Ambiguous { .. }), "{err}");
        // an inner ascription resolves it
        let c = Comb::seq(
            Comb::ascribe(p(Prim::FactorZR), T::Zero, T::prod(T::One, T::Zero)),
            p(Prim::AbsorbL),
        );
        check(&c, &T::Zero, &T::Zero).unwrap();
    }

    #[test]
    fn infer_idempotent_under_own_ascription() {
        let c = Comb::seq(p(Prim::Dist), Comb::sum(p(Prim::UniteMulL), p(Prim::UniteMulL)));
        let c = Comb::ascribe(
            c,
            T::prod(T::bool_type(), T::One),
            T::bool_type(),
        );
        let t1 = infer(&c).unwrap();
        let Term::Ascribe(inner, d, k) = &c else { unreachable!() };
        let again = Comb::ascribe(
            Comb::ascribe((**inner).clone(), d.clone(), k.clone()),
            t1.dom.to_ground().unwrap(),
            t1.cod.to_ground().unwrap(),
        );
        assert_eq!(infer(&again).unwrap(), t1);
    }

    #[test]
    fn sizes_preserved() {
        let dom = T::prod(T::sum(T::One, T::One), T::sum(T::One, T::bool_type()));
        let tt = check(&p(Prim::Dist), &dom, &T::sum(T::prod(T::One, T::sum(T::One, T::bool_type())), T::prod(T::One, T::sum(T::One, T::bool_type())))).unwrap();
        assert_eq!(tt.dom.size(), tt.cod.size());
    }
}
