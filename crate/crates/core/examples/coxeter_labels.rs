//! Almost positive roots and Coxeter weights attached to the D4 orbits.

use clusterq::model_d::{all_orbits_d, catalog_name_d, coxeter_h, orbit_to_root, orbit_to_weight};

fn main() {
    let h: Vec<u32> = (1..=4).map(|i| coxeter_h(4, i)).collect();
    println!("h(i, c) = {h:?}");
    for o in all_orbits_d(4) {
        let (i, m) = orbit_to_weight(&o).unwrap();
        println!("{:<6} {:?}  c^{m} w_{i}", catalog_name_d(&o), orbit_to_root(&o));
    }
}
