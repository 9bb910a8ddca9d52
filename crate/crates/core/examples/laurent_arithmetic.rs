//! Exact Laurent polynomial arithmetic and the Laurent phenomenon in rank 2.

use clusterq::laurent::LaurentPoly;

fn main() {
    let x1: LaurentPoly = "x[1]".parse().unwrap();
    let x2: LaurentPoly = "x[2]".parse().unwrap();
    let one = LaurentPoly::one();

    // x[k+1] x[k-1] = x[k] + 1 in type A2 returns to x[1] after five steps.
    let mut seq = vec![x1.clone(), x2.clone()];
    for k in 1..6 {
        let num = &seq[k] + &one;
        let next = num.checked_div(&seq[k - 1]).expect("Laurent phenomenon");
        seq.push(next);
    }
    for (i, x) in seq.iter().enumerate() {
        println!("x{i} = {x}");
    }
    assert_eq!(seq[5], x1);
    assert_eq!(seq[6], x2);

    let p: LaurentPoly = "x[1]^-1*x[2] + 2*x[1]".parse().unwrap();
    let sq = &p * &p;
    println!("({p})^2 = {sq}");
    println!("json: {}", sq.to_json());
}
