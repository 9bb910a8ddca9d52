//! Simplicity of tensor products: pair verdicts, factorization into primes
//! and composition factors.

use clusterq::qchar::{label_monomial, HeightFunction, PrimeLabel};
use clusterq::simplicity::{decompose_tensor, factorize_simple, simple_pair};

fn names(labels: &[PrimeLabel]) -> String {
    let v: Vec<String> = labels.iter().map(PrimeLabel::to_string).collect();
    if v.is_empty() {
        "1".into()
    } else {
        v.join(" ")
    }
}

fn main() {
    let d4 = HeightFunction::type_d(4);
    let p: PrimeLabel = "L(0,1)+".parse().unwrap();
    let q: PrimeLabel = "L(0,2)+".parse().unwrap();
    let v = simple_pair(&d4, p, q);
    println!("{p} {q}: simple {} case {}", v.simple, v.case);

    let a2 = HeightFunction::type_a(2);
    let m = "Y[1,1]*Y[2,2]*Y[2,4]".parse().unwrap();
    println!("{m} = {}", names(&factorize_simple(&a2, &m, true).unwrap()));

    let m1 = label_monomial(&a2, PrimeLabel::Plain(0, 1)).unwrap();
    let m2 = label_monomial(&a2, PrimeLabel::Plain(1, 2)).unwrap();
    println!("L(0,1) (x) L(1,2):");
    for (factors, mult) in decompose_tensor(&a2, &m1, &m2).unwrap() {
        println!("  {mult} x {}", names(&factors));
    }
}
