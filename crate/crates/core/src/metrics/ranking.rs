use alloc::vec::Vec;

use crate::dataset::RatingDataset;
use crate::error::{Error, Result};

fn check(scores: &[f64], spammers: &[bool]) -> Result<()> {
    if scores.len() != spammers.len() {
        return Err(Error::LengthMismatch { expected: scores.len(), found: spammers.len() });
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Fraction of spammers among the `list_len` lowest-scored users. Ties are
/// broken by user index (the dataset's id order).
pub fn recall_at(scores: &[f64], spammers: &[bool], list_len: usize) -> Result<f64> {
    check(scores, spammers)?;
    let d = spammers.iter().filter(|&&s| s).count();
    if d == 0 {
        return Err(Error::EmptyClass);
    }
    if list_len == 0 || list_len > scores.len() {
        return Err(Error::InvalidListLength { length: list_len, users: scores.len() });
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    let hits = order[..list_len].iter().filter(|&&i| spammers[i]).count();
    Ok(hits as f64 / d as f64)
}

/// Exact AUC over all spammer/normal pairs: the share of pairs where the
/// spammer scores strictly lower, ties counting one half. Runs in
/// `O(m log m)` by sweeping groups of tied scores.
pub fn auc(scores: &[f64], spammers: &[bool]) -> Result<f64> {
    check(scores, spammers)?;
    let d = spammers.iter().filter(|&&s| s).count() as u64;
    let normals = scores.len() as u64 - d;
    if d == 0 || normals == 0 {
        return Err(Error::EmptyClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    let (mut lower, mut tied) = (0u64, 0u64);
    let mut normals_seen = 0u64;
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        let (mut s_here, mut n_here) = (0u64, 0u64);
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            if spammers[order[end]] {
                s_here += 1;
            } else {
                n_here += 1;
            }
            end += 1;
        }
        lower += s_here * (normals - normals_seen - n_here);
        tied += s_here * n_here;
        normals_seen += n_here;
        start = end;
    }
    Ok((2 * lower + tied) as f64 / (2 * d * normals) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankingEvaluation {
    pub recall: f64,
    pub auc: f64,
    pub list_len: usize,
    pub spammers: usize,
}

/// Recall at `L = d` together with the exact AUC.
pub fn evaluate(scores: &[f64], spammers: &[bool]) -> Result<RankingEvaluation> {
    let d = spammers.iter().filter(|&&s| s).count();
    Ok(RankingEvaluation {
        recall: recall_at(scores, spammers, d.max(1))?,
        auc: auc(scores, spammers)?,
        list_len: d,
        spammers: d,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    Low,
    Mid,
    High,
    All,
}

impl Subgroup {
    pub const ALL: [Subgroup; 4] = [Subgroup::Low, Subgroup::Mid, Subgroup::High, Subgroup::All];

    pub fn name(self) -> &'static str {
        match self {
            Subgroup::Low => "low",
            Subgroup::Mid => "mid",
            Subgroup::High => "high",
            Subgroup::All => "all",
        }
    }
}

/// Users split by degree into `[k_min, c1)`, `[c1, c2)` and `[c2, k_max]`
/// with `c1 = k_min + 0.1 (k_max - k_min)` and `c2 = k_min + 0.3 (k_max - k_min)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeSubgroups {
    pub low: Vec<usize>,
    pub mid: Vec<usize>,
    pub high: Vec<usize>,
    pub cuts: (f64, f64),
}

impl DegreeSubgroups {
    pub fn members(&self, group: Subgroup) -> Option<&[usize]> {
        match group {
            Subgroup::Low => Some(&self.low),
            Subgroup::Mid => Some(&self.mid),
            Subgroup::High => Some(&self.high),
            Subgroup::All => None,
        }
    }
}

pub fn degree_subgroups(dataset: &RatingDataset) -> Result<DegreeSubgroups> {
    let degrees = dataset.user_degrees();
    let k_min = *degrees.iter().min().ok_or(Error::EmptyDataset)?;
    let k_max = *degrees.iter().max().ok_or(Error::EmptyDataset)?;
    if k_min == k_max {
        return Err(Error::EqualDegrees);
    }
    let span = (k_max - k_min) as u64;
    let mut groups = DegreeSubgroups {
        low: Vec::new(),
        mid: Vec::new(),
        high: Vec::new(),
        cuts: (
            (10 * k_min as u64 + span) as f64 / 10.0,
            (10 * k_min as u64 + 3 * span) as f64 / 10.0,
        ),
    };
    // Compare 10 (k - k_min) against span and 3 span in integers so the cut
    // points are exact.
    for (i, &k) in degrees.iter().enumerate() {
        let scaled = 10 * (k - k_min) as u64;
        if scaled < span {
            groups.low.push(i);
        } else if scaled < 3 * span {
            groups.mid.push(i);
        } else {
            groups.high.push(i);
        }
    }
    Ok(groups)
}

/// AUC within each degree subgroup; `None` when a subgroup lacks spammers or
/// normal users.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubgroupAuc {
    pub low: Option<f64>,
    pub mid: Option<f64>,
    pub high: Option<f64>,
    pub all: Option<f64>,
}

impl SubgroupAuc {
    pub fn get(&self, group: Subgroup) -> Option<f64> {
        match group {
            Subgroup::Low => self.low,
            Subgroup::Mid => self.mid,
            Subgroup::High => self.high,
            Subgroup::All => self.all,
        }
    }
}

pub fn subgroup_auc(scores: &[f64], spammers: &[bool], groups: &DegreeSubgroups) -> Result<SubgroupAuc> {
    check(scores, spammers)?;
    let within = |members: &[usize]| -> Result<Option<f64>> {
        let s: Vec<f64> = members.iter().map(|&i| scores[i]).collect();
        let l: Vec<bool> = members.iter().map(|&i| spammers[i]).collect();
        match auc(&s, &l) {
            Ok(v) => Ok(Some(v)),
            Err(Error::EmptyClass) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let all = match auc(scores, spammers) {
        Ok(v) => Some(v),
        Err(Error::EmptyClass) => None,
        Err(e) => return Err(e),
    };
    Ok(SubgroupAuc {
        low: within(&groups.low)?,
        mid: within(&groups.mid)?,
        high: within(&groups.high)?,
        all,
    })
}
