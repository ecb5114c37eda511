//! Artificial spammers planted into a real dataset.
//!
//! A spammer keeps the objects it rated; only the rating values are
//! replaced, so the attacked dataset has exactly the source topology.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng as _;

use crate::dataset::RatingDataset;
use crate::error::{Error, Result};
use crate::id::Id;
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpamKind {
    /// Every rating becomes the scale minimum or maximum with probability 1/2.
    Malicious,
    /// Every rating becomes a uniform draw from the scale.
    Random,
}

impl SpamKind {
    pub fn name(self) -> &'static str {
        match self {
            SpamKind::Malicious => "malicious",
            SpamKind::Random => "random",
        }
    }
}

impl fmt::Display for SpamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpamKind {
    type Err = &'static str;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "malicious" => Ok(SpamKind::Malicious),
            "random" => Ok(SpamKind::Random),
            _ => Err("attack must be `malicious` or `random`"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpamSpec {
    pub kind: SpamKind,
    /// Fraction of users turned into spammers, in (0, 1).
    pub ratio: f64,
    pub seed: u64,
}

impl SpamSpec {
    pub fn new(kind: SpamKind, ratio: f64, seed: u64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidRatio(ratio));
        }
        Ok(SpamSpec { kind, ratio, seed })
    }

    /// `floor(p m)`.
    pub fn spammer_count(&self, users: usize) -> usize {
        libm::floor(self.ratio * users as f64) as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpamExperiment {
    pub attacked: RatingDataset,
    /// Dense indices of the spammers, ascending.
    pub spammers: Vec<usize>,
    pub spec: SpamSpec,
}

impl SpamExperiment {
    pub fn spammer_count(&self) -> usize {
        self.spammers.len()
    }

    pub fn spammer_ids(&self) -> impl Iterator<Item = &Id> + '_ {
        self.spammers.iter().map(|&i| &self.attacked.users()[i])
    }

    /// `true` at the index of every spammer.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = alloc::vec![false; self.attacked.user_count()];
        for &i in &self.spammers {
            mask[i] = true;
        }
        mask
    }
}

pub fn inject(dataset: &RatingDataset, spec: SpamSpec) -> Result<SpamExperiment> {
    let mut rng = seed::rng_from_seed(spec.seed);
    inject_with(dataset, spec, &mut rng)
}

/// Injection drawing from a caller-supplied generator. Draw order: the
/// spammer set first, then each spammer's ratings in (user, object) order.
pub fn inject_with(dataset: &RatingDataset, spec: SpamSpec, rng: &mut seed::Rng) -> Result<SpamExperiment> {
    SpamSpec::new(spec.kind, spec.ratio, spec.seed)?;
    let m = dataset.user_count();
    let d = spec.spammer_count(m);
    if d == 0 {
        return Err(Error::RatioTooSmall { p: spec.ratio, users: m });
    }
    let mut spammers = rand::seq::index::sample(rng, m, d).into_vec();
    spammers.sort_unstable();

    let scale = dataset.scale();
    let (low, high) = (scale.lowest_level(), scale.highest_level());
    let z = scale.len() as u16;
    let mut levels = dataset.edge_levels().to_vec();
    for &user in &spammers {
        for e in dataset.user_edges(user) {
            levels[e] = match spec.kind {
                SpamKind::Malicious => {
                    if rng.random_bool(0.5) {
                        high
                    } else {
                        low
                    }
                }
                SpamKind::Random => rng.random_range(0..z),
            };
        }
    }
    Ok(SpamExperiment { attacked: dataset.with_levels(levels), spammers, spec })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::RatingScale;
    use alloc::format;

    fn grid(users: usize, objects: usize) -> RatingDataset {
        let mut t = Vec::new();
        for u in 0..users {
            for o in 0..objects {
                if (u + o) % 3 != 0 {
                    t.push((format!("{u}"), format!("{o}"), ((u * 7 + o) % 5 + 1) as f64));
                }
            }
        }
        RatingDataset::from_triples(t, RatingScale::five_star()).unwrap()
    }

    #[test]
    fn spammer_count_floors() {
        let s = SpamSpec::new(SpamKind::Random, 0.1, 0).unwrap();
        assert_eq!(s.spammer_count(943), 94);
        assert!(SpamSpec::new(SpamKind::Random, 0.0, 0).is_err());
        assert!(SpamSpec::new(SpamKind::Random, 1.0, 0).is_err());
    }

    #[test]
    fn malicious_ratings_are_extreme() {
        let d = grid(40, 12);
        let x = inject(&d, SpamSpec::new(SpamKind::Malicious, 0.25, 3).unwrap()).unwrap();
        assert_eq!(x.spammer_count(), 10);
        for &u in &x.spammers {
            assert_eq!(x.attacked.user_degree_at(u), d.user_degree_at(u));
            for r in x.attacked.user_ratings(u) {
                let v = x.attacked.scale().value(r.level);
                assert!(v == 1.0 || v == 5.0);
            }
        }
    }

    #[test]
    fn tiny_ratio_is_rejected() {
        let d = grid(20, 5);
        let err = inject(&d, SpamSpec::new(SpamKind::Random, 0.01, 0).unwrap()).unwrap_err();
        assert_eq!(err, Error::RatioTooSmall { p: 0.01, users: 20 });
    }

    #[test]
    fn same_seed_same_experiment() {
        let d = grid(30, 10);
        let spec = SpamSpec::new(SpamKind::Random, 0.3, 99).unwrap();
        assert_eq!(inject(&d, spec).unwrap(), inject(&d, spec).unwrap());
    }
}
