//! Mutating the initial seed of the type A3 polygon model.

use clusterq::model_a::initial_seed_a;

fn main() {
    let s0 = initial_seed_a(3);
    println!("initial matrix: {:?}", s0.matrix().rows());
    let s1 = s0.mutate(0).unwrap();
    println!("after mu_1: {:?}", s1.matrix().rows());
    for (i, x) in s1.cluster().iter().enumerate() {
        println!("  x{} = {x}", i + 1);
    }
    // Mutation is an involution.
    assert_eq!(s1.mutate(0).unwrap(), s0);
    println!("{}", serde_json::to_string(&s1.to_json()).unwrap());
}
