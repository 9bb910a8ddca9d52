//! Truncated q-characters of every prime label of D4.

use clusterq::qchar::{renormalize_and_tsub, Catalog, HeightFunction};

fn main() {
    let catalog = Catalog::new(&HeightFunction::type_d(4));
    for e in &catalog.entries {
        let t = renormalize_and_tsub(&catalog.hf, &e.qchar.value).unwrap();
        println!("{:<8} {:<22} {t}", e.label.to_string(), e.monomial.to_string());
    }
}
