//! Tabulates how each small stabilization changes the classical invariants,
//! over random diagrams, and prints the resulting type table.
//!
//! A stabilization is type II when it keeps `(tb-, rot-)` and type I when it
//! keeps `(tb+, rot+)`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rectlink::invariants::all_invariants;
use rectlink::moves::{apply, stabilization_at, Corner};
use rectlink::{Color, GridDiagram};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seen: BTreeMap<(Color, Corner), BTreeMap<[i64; 4], usize>> = BTreeMap::new();
    for _ in 0..400 {
        let n = 2 + (rand::Rng::random_range(&mut rng, 0..6));
        let d = GridDiagram::random(n, &mut rng);
        let before = all_invariants(&d);
        for v in d.vertices() {
            for corner in Corner::ALL {
                let after = all_invariants(&apply(&d, &stabilization_at(v, corner)).unwrap());
                let delta = [0, 1, 2, 3].map(|i| after[i] - before[i]);
                *seen.entry((v.color, corner)).or_default().entry(delta).or_default() += 1;
            }
        }
    }
    println!("pivot  corner  deltas (tb+, rot+, tb-, rot-)            type");
    for ((color, corner), deltas) in &seen {
        let keeps_minus = deltas.keys().all(|d| d[2] == 0 && d[3] == 0);
        let keeps_plus = deltas.keys().all(|d| d[0] == 0 && d[1] == 0);
        let ty = match (keeps_plus, keeps_minus) {
            (true, false) => "I",
            (false, true) => "II",
            _ => "?",
        };
        let list: Vec<String> = deltas.keys().map(|d| format!("{d:?}")).collect();
        println!("{:<6} {:<7} {:<40} {}", color.to_string(), corner.to_string(), list.join(" "), ty);
    }
}
