use clusterq::cluster::{exchange_graph, f_polynomial, rename_coefficients, Seed};
use clusterq::laurent::Var;
use clusterq::model_a::{initial_seed_a, label_graph_a, segment_to_prime_a};
use clusterq::model_d::{initial_seed_d, label_graph_d, orbit_to_prime_d};
use clusterq::qchar::{renormalized_t, HeightFunction};

fn negated(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    b.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

#[test]
fn height_quivers_match_initial_seeds_up_to_sign() {
    for n in 1..=6 {
        let q = HeightFunction::type_a(n).quiver_matrix();
        assert_eq!(q, initial_seed_a(n).matrix().principal_part());
    }
    for n in 4..=6 {
        let q = HeightFunction::type_d(n).quiver_matrix();
        assert_eq!(q, negated(&initial_seed_d(n).matrix().principal_part()));
    }
}

#[test]
fn type_a_f_polynomials_are_characters() {
    for n in 1..=6u32 {
        let hf = HeightFunction::type_a(n);
        let graph = exchange_graph(&Seed::principal(&hf.quiver_matrix()).unwrap(), 10_000).unwrap();
        let labels = label_graph_a(n, &graph).unwrap();
        for (var, seg) in graph.variables.iter().zip(&labels) {
            let f = rename_coefficients(&f_polynomial(&var.value).unwrap(), Var::T);
            let chi = renormalized_t(&hf, segment_to_prime_a(n, *seg)).unwrap();
            assert_eq!(f, chi, "A{n} {seg}");
        }
    }
}

#[test]
fn type_d_f_polynomials_are_characters() {
    for n in [4u32, 5] {
        let hf = HeightFunction::type_d(n);
        let graph = exchange_graph(&Seed::principal(&hf.quiver_matrix()).unwrap(), 10_000).unwrap();
        let labels = label_graph_d(n, &graph).unwrap();
        for (var, o) in graph.variables.iter().zip(&labels) {
            let f = rename_coefficients(&f_polynomial(&var.value).unwrap(), Var::T);
            let chi = renormalized_t(&hf, orbit_to_prime_d(o)).unwrap();
            assert_eq!(f, chi, "D{n} {o}");
        }
    }
}
