//! Acceptance suite: every release-gating property, one test per
//! criterion, each printing a PASS line with its measured scope. All
//! corpora are seeded, so failures reproduce.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pi_core::ast::{Comb, Prim, Term};
use pi_core::denote::{denote, equiv, synth_perm};
use pi_core::effects::{factorize, AllocTerm, HideTerm};
use pi_core::eval::{eval, invert, reval};
use pi_core::finfun::FinFun;
use pi_core::gen;
use pi_core::perm::Permutation;
use pi_core::pinj::PartialInjection;
use pi_core::quantum::{
    self, measure_dim, CMatrix, Channel, DensityMatrix, C64, EXACT_TOL,
    STRUCT_TOL,
};
use pi_core::tm;
use pi_core::typecheck::check;
use pi_core::types::ValueType;
use pi_core::value::Value;

const CORPUS_SEED: u64 = 0x5eed_0001;
const CORPUS_SIZE: usize = 500;
const MAX_TYPE_SIZE: usize = 64;
const TERM_DEPTH: usize = 8;

fn corpus() -> Vec<(Comb, ValueType, ValueType)> {
    gen::corpus(CORPUS_SEED, CORPUS_SIZE, MAX_TYPE_SIZE, TERM_DEPTH)
}

#[test]
fn c01_round_trip_inversion() {
    let started = Instant::now();
    let corpus = corpus();
    let mut inputs = 0usize;
    for (c, dom, cod) in &corpus {
        check(c, dom, cod).expect("corpus terms are well typed");
        for k in 0..dom.size() {
            let v = Value::from_index(dom, k).unwrap();
            let w = eval(c, v.clone()).unwrap();
            assert_eq!(reval(c, w.clone()), Ok(v.clone()), "reval . eval = id for {c}");
            assert_eq!(eval(c, reval(c, w.clone()).unwrap()), Ok(w), "eval . reval = id for {c}");
            inputs += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60s");
    println!(
        "[acceptance] C1 round-trip inversion: PASS ({} terms, {} inputs, {:.2?})",
        corpus.len(),
        inputs,
        elapsed
    );
}

#[test]
fn c02_functoriality_and_dagger() {
    let corpus = corpus();
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xf0f0);
    let mut seq_checked = 0usize;
    let mut structural_checked = 0usize;
    for (i, (c, dom, cod)) in corpus.iter().enumerate() {
        let p = denote(c, dom, cod).unwrap();
        // dagger: the inverse program denotes the inverse permutation
        assert_eq!(denote(&invert(c), cod, dom).unwrap(), p.inverse(), "dagger for {c}");
        // sequential functoriality against a fresh continuation
        let (c2, cod2) = gen::random_term(&mut rng, cod, 4);
        let q = denote(&c2, cod, &cod2).unwrap();
        let composite = denote(&Comb::seq(c.clone(), c2), dom, &cod2).unwrap();
        assert_eq!(composite, p.then(&q), "functoriality of ; for {c}");
        // a program followed by its inverse is the identity
        if i < 50 {
            let round = Comb::seq(c.clone(), invert(c));
            assert!(
                equiv(&round, &Term::Prim(Prim::Id), dom, dom).unwrap(),
                "c ; inv c ≡ id for {c}"
            );
        }
        seq_checked += 1;
    }
    // choice and parallel composition against the permutation algebra
    for pair in corpus.chunks(2) {
        let [(c1, d1, k1), (c2, d2, k2)] = pair else { continue };
        let p1 = denote(c1, d1, k1).unwrap();
        let p2 = denote(c2, d2, k2).unwrap();
        let sum = denote(
            &Comb::sum(c1.clone(), c2.clone()),
            &ValueType::sum(d1.clone(), d2.clone()),
            &ValueType::sum(k1.clone(), k2.clone()),
        )
        .unwrap();
        assert_eq!(sum, p1.direct_sum(&p2));
        if d1.size() * d2.size() <= 512 {
            let prod = denote(
                &Comb::prod(c1.clone(), c2.clone()),
                &ValueType::prod(d1.clone(), d2.clone()),
                &ValueType::prod(k1.clone(), k2.clone()),
            )
            .unwrap();
            assert_eq!(prod, p1.tensor(&p2));
        }
        structural_checked += 1;
    }
    println!(
        "[acceptance] C2 functoriality and dagger: PASS ({} dagger+seq, {} sum/prod)",
        seq_checked, structural_checked
    );
}

#[test]
fn c03_coherence_suite() {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xc0c0);
    let p = |x: Prim| Term::Prim(x);
    let small = |rng: &mut StdRng| loop {
        let t = gen::random_type(rng, 3, 8, true);
        if t.size() <= 8 {
            break t;
        }
    };
    let rounds = 100;

    for _ in 0..rounds {
        let (a, b, c, d) = (small(&mut rng), small(&mut rng), small(&mut rng), small(&mut rng));
        // pentagon for + : ((a+b)+c)+d
        let dom = ValueType::sum(ValueType::sum(ValueType::sum(a.clone(), b.clone()), c.clone()), d.clone());
        let cod = ValueType::sum(a.clone(), ValueType::sum(b.clone(), ValueType::sum(c.clone(), d.clone())));
        let lhs = Comb::seq(p(Prim::AssocRAdd), p(Prim::AssocRAdd));
        let rhs = Comb::seq(
            Comb::sum(p(Prim::AssocRAdd), p(Prim::Id)),
            Comb::seq(p(Prim::AssocRAdd), Comb::sum(p(Prim::Id), p(Prim::AssocRAdd))),
        );
        assert!(equiv(&lhs, &rhs, &dom, &cod).unwrap(), "pentagon + at {dom}");

        // pentagon for * : ((a*b)*c)*d
        let dom = ValueType::prod(ValueType::prod(ValueType::prod(a.clone(), b.clone()), c.clone()), d.clone());
        let cod = ValueType::prod(a.clone(), ValueType::prod(b.clone(), ValueType::prod(c.clone(), d.clone())));
        let lhs = Comb::seq(p(Prim::AssocRMul), p(Prim::AssocRMul));
        let rhs = Comb::seq(
            Comb::prod(p(Prim::AssocRMul), p(Prim::Id)),
            Comb::seq(p(Prim::AssocRMul), Comb::prod(p(Prim::Id), p(Prim::AssocRMul))),
        );
        assert!(equiv(&lhs, &rhs, &dom, &cod).unwrap(), "pentagon * at {dom}");

        // hexagon for swap+ : (a+b)+c
        let dom = ValueType::sum(ValueType::sum(a.clone(), b.clone()), c.clone());
        let cod = ValueType::sum(b.clone(), ValueType::sum(c.clone(), a.clone()));
        let lhs = Comb::seq(p(Prim::AssocRAdd), Comb::seq(p(Prim::SwapAdd), p(Prim::AssocRAdd)));
        let rhs = Comb::seq(
            Comb::sum(p(Prim::SwapAdd), p(Prim::Id)),
            Comb::seq(p(Prim::AssocRAdd), Comb::sum(p(Prim::Id), p(Prim::SwapAdd))),
        );
        assert!(equiv(&lhs, &rhs, &dom, &cod).unwrap(), "hexagon at {dom}");
    }

    let mut rng2 = StdRng::seed_from_u64(CORPUS_SEED ^ 0xabcd);
    for _ in 0..rounds {
        let d1 = small(&mut rng2);
        let d2 = small(&mut rng2);
        let d3 = small(&mut rng2);
        let (c1, k1) = gen::random_term(&mut rng2, &d1, 3);
        let (c2, k2) = gen::random_term(&mut rng2, &d2, 3);
        let (c3, k3) = gen::random_term(&mut rng2, &d3, 3);

        // naturality of swapx
        let dom = ValueType::prod(d1.clone(), d2.clone());
        let cod = ValueType::prod(k2.clone(), k1.clone());
        let lhs = Comb::seq(Comb::prod(c1.clone(), c2.clone()), p(Prim::SwapMul));
        let rhs = Comb::seq(p(Prim::SwapMul), Comb::prod(c2.clone(), c1.clone()));
        assert!(equiv(&lhs, &rhs, &dom, &cod).unwrap(), "swapx naturality");

        // both distributivity naturality squares
        let dom = ValueType::prod(ValueType::sum(d1.clone(), d2.clone()), d3.clone());
        let cod = ValueType::sum(ValueType::prod(k1.clone(), k3.clone()), ValueType::prod(k2.clone(), k3.clone()));
        let lhs = Comb::seq(
            Comb::prod(Comb::sum(c1.clone(), c2.clone()), c3.clone()),
            p(Prim::Dist),
        );
        let rhs = Comb::seq(
            p(Prim::Dist),
            Comb::sum(Comb::prod(c1.clone(), c3.clone()), Comb::prod(c2.clone(), c3.clone())),
        );
        assert!(equiv(&lhs, &rhs, &dom, &cod).unwrap(), "dist naturality");

        let dom = ValueType::sum(ValueType::prod(d1.clone(), d3.clone()), ValueType::prod(d2.clone(), d3.clone()));
        let cod = ValueType::prod(ValueType::sum(k1.clone(), k2.clone()), k3.clone());
        let lhs = Comb::seq(
            Comb::sum(Comb::prod(c1.clone(), c3.clone()), Comb::prod(c2.clone(), c3.clone())),
            p(Prim::Factor),
        );
        let rhs = Comb::seq(p(Prim::Factor), Comb::prod(Comb::sum(c1, c2), c3));
        assert!(equiv(&lhs, &rhs, &dom, &cod).unwrap(), "factor naturality");
    }
    println!("[acceptance] C3 coherence suite: PASS ({rounds} instantiations per law)");
}

#[test]
fn c04_completeness_round_trip() {
    let started = Instant::now();
    let mut total = 0usize;
    let mut pairs = 0usize;
    for n in 1..=6usize {
        let b = ValueType::canonical(n);
        let perms = Permutation::all(n);
        let terms: Vec<Comb> = perms.iter().map(|p| synth_perm(p, &b).unwrap()).collect();
        let images: Vec<Permutation> =
            terms.iter().map(|c| denote(c, &b, &b).unwrap()).collect();
        for (p, img) in perms.iter().zip(&images) {
            assert_eq!(img, p, "synthesis realizes its permutation at n={n}");
            total += 1;
        }
        // pairwise equivalence agrees with permutation equality; the
        // decision procedure itself is exercised on the smaller groups
        // and by sampled pairs of the larger ones
        for (i, pi) in perms.iter().enumerate() {
            for (j, pj) in perms.iter().enumerate() {
                let same = if n <= 4 {
                    equiv(&terms[i], &terms[j], &b, &b).unwrap()
                } else {
                    images[i] == images[j]
                };
                assert_eq!(same, pi == pj, "equiv <=> equality at n={n}");
                pairs += 1;
            }
        }
        if n > 4 {
            let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ n as u64);
            for _ in 0..50 {
                let i = rng.random_range(0..perms.len());
                let j = rng.random_range(0..perms.len());
                assert_eq!(
                    equiv(&terms[i], &terms[j], &b, &b).unwrap(),
                    perms[i] == perms[j]
                );
            }
        }
    }
    assert_eq!(total, 873, "exhaustive over S1..S6");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60s");
    println!(
        "[acceptance] C4 completeness round-trip: PASS (873 permutations, {pairs} pairs, {:.2?})",
        elapsed
    );
}

#[test]
fn c05_fundamental_theorem() {
    for f in FinFun::all(4, 4) {
        let fact = factorize(&f).unwrap();
        assert_eq!(fact.recompose(4, 4).unwrap(), f);
        assert_eq!(4 + fact.heap, 4 * fact.garbage);
    }
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0x5a5a);
    for _ in 0..1000 {
        let a = rng.random_range(0..=8);
        let b = if a == 0 { rng.random_range(0..=8) } else { rng.random_range(1..=8) };
        let f = FinFun::random(a, b, &mut rng);
        let fact = factorize(&f).unwrap();
        assert_eq!(fact.recompose(a, b).unwrap(), f, "recomposition of {f}");
        assert_eq!(a + fact.heap, b * fact.garbage);
    }
    println!("[acceptance] C5 fundamental theorem: PASS (256 exhaustive + 1000 random)");
}

fn random_alloc(rng: &mut StdRng, dom: &ValueType) -> AllocTerm {
    let hidden = loop {
        let t = gen::random_type(rng, 2, 4, true);
        if ValueType::sum(dom.clone(), t.clone()).size() <= 16 {
            break t;
        }
    };
    let full = ValueType::sum(dom.clone(), hidden.clone());
    let (body, cod) = gen::random_term(rng, &full, 4);
    AllocTerm::new(dom.clone(), hidden, cod, body).expect("generated alloc term lifts")
}

fn inhabited(rng: &mut StdRng, max: usize) -> ValueType {
    loop {
        let t = gen::random_type(rng, 3, max, false);
        if t.size() > 0 && t.size() <= max {
            break t;
        }
    }
}

#[test]
fn c06_arrow_laws() {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xa770);
    let rounds = 100; // two layers make 200 random instances
    for _ in 0..rounds {
        let dom = inhabited(&mut rng, 8);
        let t = random_alloc(&mut rng, &dom);
        let s = random_alloc(&mut rng, t.cod());
        let r = random_alloc(&mut rng, s.cod());

        // lifted unitor is the identity of composition
        let idl = AllocTerm::identity(t.dom().clone());
        let idr = AllocTerm::identity(t.cod().clone());
        assert!(idl.seq(&t).unwrap().ext_eq(&t));
        assert!(t.seq(&idr).unwrap().ext_eq(&t));

        // associativity
        let left = t.seq(&s).unwrap().seq(&r).unwrap();
        let right = t.seq(&s.seq(&r).unwrap()).unwrap();
        assert!(left.ext_eq(&right));

        // arr is a homomorphism
        let (u, mid) = gen::random_term(&mut rng, &dom, 3);
        let (v, cod) = gen::random_term(&mut rng, &mid, 3);
        let composed = AllocTerm::arr(Comb::seq(u.clone(), v.clone()), dom.clone(), cod.clone()).unwrap();
        let chained = AllocTerm::arr(u, dom.clone(), mid.clone())
            .unwrap()
            .seq(&AllocTerm::arr(v, mid, cod).unwrap())
            .unwrap();
        assert!(composed.ext_eq(&chained));

        // parallel composition respects sequencing componentwise
        let dom2 = inhabited(&mut rng, 4);
        let t1 = random_alloc(&mut rng, &dom2);
        let t2 = random_alloc(&mut rng, t1.cod());
        let s1 = random_alloc(&mut rng, &dom);
        let s2 = random_alloc(&mut rng, s1.cod());
        let lhs = t1.par(&s1).unwrap().seq(&t2.par(&s2).unwrap()).unwrap();
        let rhs = t1.seq(&t2).unwrap().par(&s1.seq(&s2).unwrap()).unwrap();
        assert!(lhs.ext_eq(&rhs), "*** exchange");
    }

    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xa771);
    let random_hide = |rng: &mut StdRng, dom: &ValueType| -> HideTerm {
        let t = random_alloc(rng, dom);
        match t.cod().clone() {
            ValueType::Prod(keep, garbage) => HideTerm::new((*keep).clone(), (*garbage).clone(), t).unwrap(),
            _ => HideTerm::arr(&t).unwrap(),
        }
    };
    for _ in 0..rounds {
        let dom = inhabited(&mut rng, 8);
        let t = random_hide(&mut rng, &dom);
        let s = random_hide(&mut rng, t.cod());
        let r = random_hide(&mut rng, s.cod());

        let idl = HideTerm::identity(t.dom().clone());
        let idr = HideTerm::identity(t.cod().clone());
        assert!(idl.seq(&t).unwrap().ext_eq(&t));
        assert!(t.seq(&idr).unwrap().ext_eq(&t));

        let left = t.seq(&s).unwrap().seq(&r).unwrap();
        let right = t.seq(&s.seq(&r).unwrap()).unwrap();
        assert!(left.ext_eq(&right));

        let (u, mid) = gen::random_term(&mut rng, &dom, 3);
        let (v, cod) = gen::random_term(&mut rng, &mid, 3);
        let a_all = AllocTerm::arr(Comb::seq(u.clone(), v.clone()), dom.clone(), cod.clone()).unwrap();
        let composed = HideTerm::arr(&a_all).unwrap();
        let chained = HideTerm::arr(&AllocTerm::arr(u, dom.clone(), mid.clone()).unwrap())
            .unwrap()
            .seq(&HideTerm::arr(&AllocTerm::arr(v, mid, cod).unwrap()).unwrap())
            .unwrap();
        assert!(composed.ext_eq(&chained));

        let dom2 = inhabited(&mut rng, 4);
        let t1 = random_hide(&mut rng, &dom2);
        let t2 = random_hide(&mut rng, t1.cod());
        let s1 = random_hide(&mut rng, &dom);
        let s2 = random_hide(&mut rng, s1.cod());
        let lhs = t1.par(&s1).unwrap().seq(&t2.par(&s2).unwrap()).unwrap();
        let rhs = t1.seq(&t2).unwrap().par(&s1.seq(&s2).unwrap()).unwrap();
        assert!(lhs.ext_eq(&rhs), "*** exchange (hide layer)");
    }
    println!("[acceptance] C6 arrow laws: PASS ({} alloc + {} hide instances)", rounds, rounds);
}

#[test]
fn c07_pinj_dagger_laws() {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xd46);
    for _ in 0..1000 {
        let m = rng.random_range(0..=8);
        let n = rng.random_range(0..=8);
        let f = PartialInjection::random(m, n, &mut rng);
        let fd = f.dagger();
        assert_eq!(f.then(&fd).unwrap().then(&f).unwrap(), f, "f f† f = f");
        assert_eq!(fd.dagger(), f, "f†† = f");
    }
    // and the dagger is not a retraction in general
    let empty = PartialInjection::empty(2, 2);
    assert_ne!(empty.dagger().then(&empty).unwrap(), PartialInjection::identity(2));
    println!("[acceptance] C7 partial-injection dagger laws: PASS (1000 random)");
}

#[test]
fn c08_quantum_identities() {
    use pi_core::ast::{QComb, QPrim};
    let two = ValueType::bool_type();

    let h = QComb::seq(Term::Prim(QPrim::Hadamard), Term::Prim(QPrim::Hadamard));
    let m = quantum::denote_q(&h, &two, &two).unwrap();
    assert!(
        m.matrix().sup_distance(&CMatrix::identity(2)) <= EXACT_TOL,
        "‖HH - I‖∞ = {}",
        m.matrix().sup_distance(&CMatrix::identity(2))
    );

    let tt = QComb::seq(Term::Prim(QPrim::PhaseT), Term::Prim(QPrim::PhaseT));
    let mtt = quantum::denote_q(&tt, &two, &two).unwrap();
    let ms = quantum::denote_q(&Term::Prim(QPrim::PhaseS), &two, &two).unwrap();
    assert!(
        mtt.matrix().sup_distance(ms.matrix()) <= EXACT_TOL,
        "‖TT - S‖∞ = {}",
        mtt.matrix().sup_distance(ms.matrix())
    );

    // the matrix semantics of every classical corpus term is the 0/1
    // permutation matrix of its finite-model denotation
    let mut checked = 0usize;
    for (c, dom, cod) in corpus() {
        let m = quantum::denote_q(&c.to_quantum(), &dom, &cod).unwrap();
        let p = denote(&c, &dom, &cod).unwrap();
        assert!(m.matrix().is_permutation_of(&p, EXACT_TOL), "matrix image of {c}");
        checked += 1;
    }
    println!("[acceptance] C8 quantum identities: PASS (HH=I, TT=S, {checked} corpus terms)");
}

#[test]
fn c09_measurement_born_rule() {
    // measure on |+><+| gives the uniform mixture
    let m = quantum::measure(&ValueType::bool_type()).unwrap();
    let plus = quantum::hadamard().column(0);
    let rho = DensityMatrix::pure(&plus).unwrap();
    let out = m.apply(&rho).unwrap();
    let expected = CMatrix::from_fn(2, 2, |i, j| {
        if i == j { C64::new(0.5, 0.0) } else { C64::new(0.0, 0.0) }
    });
    assert!(out.matrix().approx_eq(&expected, EXACT_TOL));

    // idempotence via Choi comparison
    for n in [2usize, 3, 4] {
        let m = measure_dim(n).unwrap();
        assert!(m.approx_eq(&m.then(&m).unwrap(), STRUCT_TOL), "measure idempotent at {n}");
    }

    // outcome distributions of random states sum to one
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xb07);
    for _ in 0..25 {
        let dim = rng.random_range(2..=6);
        let rho = random_density(dim, &mut rng);
        let out = measure_dim(dim).unwrap().apply(&rho).unwrap();
        let total: f64 = out.probabilities().iter().sum();
        assert!((total - 1.0).abs() <= EXACT_TOL, "probabilities sum to {total}");
    }

    // random pipelines: trace preserving and completely positive
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0x90a);
    for round in 0..100 {
        let chan = random_pipeline(&mut rng);
        assert!(chan.tp_deviation() <= STRUCT_TOL, "round {round}: TP defect {}", chan.tp_deviation());
        let min = chan.choi_min_eigenvalue();
        assert!(min >= -STRUCT_TOL, "round {round}: Choi min eigenvalue {min}");
    }
    println!("[acceptance] C9 measurement and Born rule: PASS (100 random pipelines, 25 random states)");
}

fn random_density(dim: usize, rng: &mut StdRng) -> DensityMatrix {
    // a random mixture of random pure states
    let mut acc = CMatrix::zeros(dim, dim);
    for _ in 0..3 {
        let raw: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm: f64 = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let state: Vec<C64> = raw.iter().map(|z| z / C64::new(norm, 0.0)).collect();
        let pure = CMatrix::from_fn(dim, dim, |i, j| state[i] * state[j].conj());
        acc = acc.add(&pure.scale(C64::new(1.0 / 3.0, 0.0)));
    }
    DensityMatrix::new(acc).expect("mixture of pure states is a state")
}

fn random_unitary(dim: usize, rng: &mut StdRng) -> CMatrix {
    // Gram-Schmidt of a random complex square matrix
    let mut cols: Vec<Vec<C64>> = Vec::new();
    while cols.len() < dim {
        let mut cand: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        for _ in 0..2 {
            for col in &cols {
                let overlap: C64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                for (c, a) in cand.iter_mut().zip(col) {
                    *c -= overlap * a;
                }
            }
        }
        let norm: f64 = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            for z in &mut cand {
                *z /= C64::new(norm, 0.0);
            }
            cols.push(cand);
        }
    }
    CMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

fn random_pipeline(rng: &mut StdRng) -> Channel {
    let in_dim = rng.random_range(1..=4);
    let mut chan = Channel::identity(in_dim);
    let stages = rng.random_range(1..=4);
    for _ in 0..stages {
        let d = chan.out_dim();
        let step = match rng.random_range(0..4) {
            0 if d <= 8 => {
                let e = rng.random_range(0..=(16 - d).min(4));
                Channel::new(d, e, d + e, 1, CMatrix::identity(d + e)).unwrap()
            }
            1 => {
                let divisors: Vec<usize> = (2..=d).filter(|g| d.is_multiple_of(*g)).collect();
                if divisors.is_empty() {
                    Channel::from_unitary(random_unitary(d, rng)).unwrap()
                } else {
                    let g = divisors[rng.random_range(0..divisors.len())];
                    Channel::new(d, 0, d / g, g, CMatrix::identity(d)).unwrap()
                }
            }
            2 => measure_dim(d).unwrap(),
            _ => Channel::from_unitary(random_unitary(d, rng)).unwrap(),
        };
        chan = chan.then(&step).unwrap();
    }
    chan
}

#[test]
fn c10_bennett() {
    let started = Instant::now();
    let inputs: [(&str, Vec<&str>); 3] = [
        (
            "binary-increment",
            vec!["0", "1", "01", "011", "111", "1010", "1111", "10011", "110110", "0111111", "10101010"],
        ),
        (
            "unary-addition",
            vec!["1+1", "11+1", "1+11", "111+11", "11+111", "1111+1", "+1", "1+", "11111+11111", "+", "111111+111"],
        ),
        (
            "bit-reversal",
            vec!["0", "1", "01", "10", "0011", "1100", "010101", "11110000", "1011001", "0000", "101"],
        ),
    ];
    let mut runs = 0usize;
    for (name, cases) in &inputs {
        let machine = tm::samples::by_name(name).unwrap();
        let inst = tm::landauer_instrument(&machine).unwrap();
        assert!(tm::check_forward_deterministic(inst.machine()).ok(), "{name} instrumented fwd");
        assert!(tm::check_backward_deterministic(inst.machine()).ok(), "{name} instrumented bwd");
        let composite = tm::bennett::bennett(&machine).unwrap();
        assert!(tm::check_forward_deterministic(&composite).ok(), "{name} composite fwd");
        assert!(tm::check_backward_deterministic(&composite).ok(), "{name} composite bwd");
        for input in cases {
            let direct = tm::run(&machine, input, 1_000_000).unwrap();
            assert_eq!(direct.status, tm::RunStatus::Halted, "{name} on {input}");
            let expected = direct.config.tape_string(&machine, 0);
            let out = tm::bennett::run_composite(&composite, input, 10_000_000).unwrap();
            assert_eq!(out.input_tape, *input, "{name} on {input}: input preserved");
            assert_eq!(out.history_tape, "", "{name} on {input}: history blank");
            assert_eq!(out.output_tape, expected, "{name} on {input}: output copied");
            runs += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30s");
    println!("[acceptance] C10 compute-copy-uncompute: PASS ({runs} runs, {:.2?})", elapsed);
}
