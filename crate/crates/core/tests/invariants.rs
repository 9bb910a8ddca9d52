use num_traits::Signed;

use clusterq::laurent::LaurentPoly;
use clusterq::qchar::{label_monomial, prime_family, trunc_qchar, HeightFunction, PrimeLabel};
use clusterq::simplicity::{decompose_tensor, labels_monomial};

fn character(hf: &HeightFunction, labels: &[PrimeLabel]) -> LaurentPoly {
    labels.iter().fold(LaurentPoly::one(), |acc, &l| &acc * &trunc_qchar(hf, l).unwrap().value)
}

/// Multiplicities are positive, the weighted simple characters add up to the
/// product character, and the top monomial appears once.
fn tensor_consumes_character(hf: &HeightFunction) {
    let primes = prime_family(hf);
    for (a, &p) in primes.iter().enumerate() {
        for &q in &primes[a..] {
            let m1 = label_monomial(hf, p).unwrap();
            let m2 = label_monomial(hf, q).unwrap();
            let factors = decompose_tensor(hf, &m1, &m2).unwrap();
            let mut total = LaurentPoly::zero();
            for (labels, mult) in &factors {
                assert!(mult.is_positive(), "{p} {q}: {labels:?} has multiplicity {mult}");
                total += &(&character(hf, labels) * &LaurentPoly::constant(mult.clone()));
            }
            assert_eq!(total, character(hf, &[p, q]), "{p} {q}");
            let top = m1.mul(&m2);
            let hits = factors.keys().filter(|l| labels_monomial(hf, l).unwrap() == top).count();
            assert_eq!(hits, 1, "{p} {q}");
        }
    }
}

#[test]
fn tensor_decompositions_a3() {
    tensor_consumes_character(&HeightFunction::type_a(3));
}

#[test]
fn tensor_decompositions_d4() {
    tensor_consumes_character(&HeightFunction::type_d(4));
}
