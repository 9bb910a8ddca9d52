//! Exchange graphs of the finite types A1..A6, D4 and D5.

use clusterq::cluster::{exchange_graph, DEFAULT_MAX_SEEDS};
use clusterq::model_a::initial_seed_a;
use clusterq::model_d::initial_seed_d;

fn main() {
    for n in 1..=6 {
        let g = exchange_graph(&initial_seed_a(n), DEFAULT_MAX_SEEDS).unwrap();
        println!("A{n}: {} variables, {} clusters", g.num_variables(), g.num_clusters());
    }
    for n in [4, 5] {
        let g = exchange_graph(&initial_seed_d(n), DEFAULT_MAX_SEEDS).unwrap();
        println!("D{n}: {} variables, {} clusters", g.num_variables(), g.num_clusters());
    }
}
