//! Samples random knot diagrams of a given size and prints those whose
//! Alexander polynomial matches one of the fixture knots.
//!
//! Usage: `seed_search <n> <count>`

mod common;

use rand::SeedableRng;
use rayon::prelude::*;
use rectlink::GridDiagram;

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(9);
    let count: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(100_000);
    // 7_4, 9_48, 10_136
    let targets: Vec<Vec<i128>> = vec![vec![4, -7, 4], vec![1, -7, 11, -7, 1], vec![1, -4, 5, -4, 1]];
    (0..count).into_par_iter().for_each(|s| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s);
        let d = GridDiagram::random_knot(n, &mut rng);
        let p = common::alexander_of(&d);
        if targets.contains(&p) {
            println!("{p:?} {:?} {:?}", d.black(), d.white());
        }
    });
}
