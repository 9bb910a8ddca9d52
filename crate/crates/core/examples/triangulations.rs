//! Polygon models: Ptolemy flips in type A and centrally symmetric
//! triangulations in type D.

use clusterq::model_a::{emit_ptolemy, segment_to_prime_a, triangulations_a};
use clusterq::model_d::{all_orbits_d, catalog_name_d, orbit_to_prime_d, sym_triangulations_d};

fn main() {
    println!("A3 hexagon: {} triangulations", triangulations_a(3).len());
    let p = emit_ptolemy(3, 0, 1, 3, 4).unwrap();
    let name = |s| format!("{s} [{}]", segment_to_prime_a(3, s));
    println!(
        "{} * {} = {} * {} + {} * {}",
        name(p.lhs[0]),
        name(p.lhs[1]),
        name(p.rhs[0][0]),
        name(p.rhs[0][1]),
        name(p.rhs[1][0]),
        name(p.rhs[1][1])
    );

    println!("D4 octagon: {} symmetric triangulations", sym_triangulations_d(4).len());
    for o in all_orbits_d(4) {
        println!("  {:<6} {}", catalog_name_d(&o), orbit_to_prime_d(&o));
    }
}
