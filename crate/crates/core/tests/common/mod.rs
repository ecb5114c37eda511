#![allow(dead_code)]

use rand::Rng as _;
use repute_core::seed::rng_from_seed;
use repute_core::{RatingDataset, RatingScale};

/// Random five-star dataset where every user rates at least one object.
pub fn random_dataset(seed: u64, max_users: usize, max_objects: usize, density: f64) -> RatingDataset {
    let mut rng = rng_from_seed(seed);
    let m = rng.random_range(2..=max_users);
    let n = rng.random_range(2..=max_objects);
    let mut triples = Vec::new();
    for u in 0..m {
        let mut rated = false;
        for o in 0..n {
            if rng.random_bool(density) {
                triples.push((format!("u{u}"), format!("o{o}"), rng.random_range(1..=5) as f64));
                rated = true;
            }
        }
        if !rated {
            let o = rng.random_range(0..n);
            triples.push((format!("u{u}"), format!("o{o}"), rng.random_range(1..=5) as f64));
        }
    }
    RatingDataset::from_triples(triples, RatingScale::five_star()).unwrap()
}

/// Dense `users × objects` matrix of rating values, `None` where unrated.
pub fn dense(d: &RatingDataset) -> Vec<Vec<Option<f64>>> {
    let mut a = vec![vec![None; d.object_count()]; d.user_count()];
    for (u, o, v) in d.triples() {
        a[d.user_index(u).unwrap()][d.object_index(o).unwrap()] = Some(v);
    }
    a
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}
