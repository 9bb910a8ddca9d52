//! F-polynomials with principal coefficients next to the characters of the
//! matching prime labels, for D4.

use clusterq::cluster::{exchange_graph, f_polynomial, rename_coefficients, Seed};
use clusterq::laurent::Var;
use clusterq::model_d::{catalog_name_d, label_graph_d, orbit_to_prime_d};
use clusterq::qchar::{renormalized_t, HeightFunction};

fn main() {
    let hf = HeightFunction::type_d(4);
    let seed = Seed::principal(&hf.quiver_matrix()).unwrap();
    let graph = exchange_graph(&seed, 1000).unwrap();
    let orbits = label_graph_d(4, &graph).unwrap();
    for (var, o) in graph.variables.iter().zip(&orbits) {
        let f = rename_coefficients(&f_polynomial(&var.value).unwrap(), Var::T);
        let label = orbit_to_prime_d(o);
        let chi = renormalized_t(&hf, label).unwrap();
        println!("{:<6} {:<8} {f}", catalog_name_d(o), label.to_string());
        assert_eq!(f, chi);
    }
}
