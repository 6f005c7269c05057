mod common;

use std::sync::Arc;

use common::*;
use hochdef::deform::{
    check_deformation, conjugate, extend_once, integrate, invert, normalize, ApproximateDeformation,
    Extension, FormalAutomorphism, Integration,
};
use hochdef::hochschild::{Cochain, HochschildComplex};
use hochdef::io::{parse, ProblemDocument};
use hochdef::linalg::Field;
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::Rational, Field::prime(3).unwrap(), Field::prime(101).unwrap()])
}

fn dims(complex: &HochschildComplex) -> Vec<usize> {
    (0..=2).map(|n| complex.cohomology(n).unwrap().dim_cohomology).collect()
}

fn random_automorphism(seed: u64, module: &Arc<hochdef::algebra::Module>, order: usize) -> FormalAutomorphism {
    let mut r = rng(seed);
    let terms = (0..order)
        .map(|_| random_matrix(&mut r, module.field(), module.dim(), module.dim(), 2))
        .collect();
    FormalAutomorphism::new(module.clone(), terms).unwrap()
}

/// Some valid deformation of order at most `order`, from a random cocycle.
fn random_deformation(seed: u64, complex: &HochschildComplex, order: usize) -> ApproximateDeformation {
    let mut r = rng(seed);
    let sigma = random_cocycle(&mut r, complex, 1);
    match integrate(complex, &sigma, order).unwrap() {
        Integration::Integrated(d) => d,
        Integration::Obstructed { reached, .. } => reached,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differential_squares_to_zero(seed: u64, field in fields(), degree in 0usize..=2) {
        let mut r = rng(seed);
        let module = random_module(&mut r, field);
        let complex = HochschildComplex::new(module.clone()).unwrap();
        let f = random_cochain(&mut r, &module, degree);
        let df = complex.differential(&f).unwrap();
        prop_assert!(complex.differential(&df).unwrap().is_zero());
        prop_assert_eq!(df.flatten(), complex.differential_matrix(degree).unwrap().mul_vec(&f.flatten()));
    }

    #[test]
    fn cohomology_is_basis_independent(seed: u64) {
        let mut r = rng(seed);
        let module = random_module(&mut r, Field::Rational);
        let base = dims(&HochschildComplex::new(module.clone()).unwrap());
        let p = random_unimodular(&mut r, Field::Rational, module.algebra().dim());
        let s = random_unimodular(&mut r, Field::Rational, module.dim());
        let moved = Arc::new(module.change_algebra_basis(&p).unwrap().change_basis(&s).unwrap());
        prop_assert_eq!(dims(&HochschildComplex::new(moved).unwrap()), base);
    }

    #[test]
    fn cohomology_counts_are_consistent(seed: u64, field in fields()) {
        let mut r = rng(seed);
        let module = random_module(&mut r, field);
        let complex = HochschildComplex::new(module).unwrap();
        for n in 0..=2 {
            let h = complex.cohomology(n).unwrap();
            prop_assert_eq!(h.dim_cohomology, h.dim_cocycles - h.dim_coboundaries);
            prop_assert_eq!(h.representatives.len(), h.dim_cohomology);
            for rep in &h.representatives {
                prop_assert!(complex.is_cocycle(rep).unwrap());
                if n > 0 {
                    prop_assert!(complex.coboundary_witness(rep).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn coboundaries_have_witnesses(seed: u64, field in fields(), degree in 0usize..=1) {
        let mut r = rng(seed);
        let module = random_module(&mut r, field);
        let complex = HochschildComplex::new(module.clone()).unwrap();
        let g = random_cochain(&mut r, &module, degree);
        let f = complex.differential(&g).unwrap();
        let pre = complex.preimage(&f).unwrap();
        let w = pre.witness.unwrap();
        prop_assert_eq!(complex.differential(&w).unwrap(), f);
        for k in &pre.kernel {
            prop_assert!(complex.is_cocycle(k).unwrap());
        }
    }

    #[test]
    fn extensions_satisfy_the_relations(seed: u64, field in fields()) {
        let mut r = rng(seed);
        let module = random_module(&mut r, field);
        let complex = HochschildComplex::new(module).unwrap();
        let d = random_deformation(seed, &complex, 3);
        prop_assert!(check_deformation(&d).is_valid());
        match extend_once(&complex, &d).unwrap() {
            Extension::Extended { deformation, outcome } => {
                prop_assert!(check_deformation(&deformation).is_valid());
                let top = deformation.terms().last().unwrap();
                prop_assert_eq!(complex.differential(top).unwrap(), outcome.obstruction.neg());
            }
            Extension::Obstructed(outcome) => {
                prop_assert!(complex.is_cocycle(&outcome.obstruction).unwrap());
                prop_assert!(complex.coboundary_witness(&outcome.obstruction).unwrap().is_none());
            }
        }
    }

    #[test]
    fn conjugation_preserves_deformations(seed: u64, field in fields()) {
        let mut r = rng(seed);
        let module = random_module(&mut r, field);
        let complex = HochschildComplex::new(module.clone()).unwrap();
        let d = random_deformation(seed ^ 1, &complex, 3);
        let phi = random_automorphism(seed ^ 2, &module, d.order());
        let c = conjugate(&phi, &d).unwrap();
        prop_assert!(check_deformation(&c).is_valid());
        prop_assert_eq!(conjugate(&invert(&phi), &c).unwrap(), d.clone());

        let psi = random_automorphism(seed ^ 3, &module, d.order());
        let stepwise = conjugate(&psi, &c).unwrap();
        prop_assert_eq!(conjugate(&phi.compose(&psi).unwrap(), &d).unwrap(), stepwise);
    }

    #[test]
    fn normalization_is_a_conjugation(seed: u64) {
        let mut r = rng(seed);
        let module = random_module(&mut r, Field::Rational);
        let complex = HochschildComplex::new(module.clone()).unwrap();
        // Conjugates of the trivial deformation normalize to zero.
        let phi = random_automorphism(seed ^ 5, &module, 3);
        let d = conjugate(&phi, &ApproximateDeformation::trivial(module.clone(), 3)).unwrap();
        let n = normalize(&complex, &d).unwrap();
        prop_assert_eq!(n.leading, None);
        prop_assert!(n.deformation.is_trivial());
        prop_assert_eq!(conjugate(&n.automorphism, &d).unwrap(), n.deformation);
    }

    #[test]
    fn documents_round_trip(seed: u64, field in fields()) {
        let mut r = rng(seed);
        let module = random_module(&mut r, field);
        let complex = HochschildComplex::new(module.clone()).unwrap();
        let mut doc = ProblemDocument::from_module(&module);
        doc.cochain = Some(random_cochain(&mut r, &module, 2));
        doc.deformation = Some(random_deformation(seed, &complex, 2).terms().to_vec());
        doc.automorphism = Some(random_automorphism(seed, &module, 2).terms().to_vec());
        doc.options.order = Some(4);
        let text = doc.to_text();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_text(), text);
    }
}

#[test]
fn prime_field_can_change_cohomology() {
    // The trivial module of C_2 has H¹ = Hom(C_2, k).
    let f2 = Field::prime(2).unwrap();
    let q = Field::Rational;
    let module = |field: Field| {
        let a = Arc::new(hochdef::algebra::Algebra::cyclic_group(field, 2));
        let one = hochdef::linalg::Matrix::identity(field, 1);
        Arc::new(hochdef::algebra::Module::new(a, 1, vec![one.clone(), one]).unwrap())
    };
    let h1 = |field| {
        let c = HochschildComplex::new(module(field)).unwrap();
        c.cohomology(1).unwrap().dim_cohomology
    };
    assert_eq!(h1(q), 0);
    assert_eq!(h1(f2), 1);
}

#[test]
fn zero_cochain_round_trips() {
    let module = hochdef::fixtures::fixture_b(Field::Rational);
    let mut doc = ProblemDocument::from_module(&module);
    doc.cochain = Some(Cochain::zero(&module, 3));
    assert_eq!(parse(&doc.to_text()).unwrap(), doc);
}
