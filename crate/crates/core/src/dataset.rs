use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::id::Id;
use crate::scale::RatingScale;

/// Immutable bipartite rating network.
///
/// Ratings are stored once, as edges sorted by (user, object); users and
/// objects are held in [`Id`] order, so two datasets holding the same triples
/// compare equal regardless of input order. Each object keeps the list of its
/// incident edges, sorted by user.
#[derive(Clone, Debug, PartialEq)]
pub struct RatingDataset {
    scale: RatingScale,
    users: Vec<Id>,
    objects: Vec<Id>,
    user_offsets: Vec<usize>,
    edge_user: Vec<u32>,
    edge_object: Vec<u32>,
    edge_level: Vec<u16>,
    object_offsets: Vec<usize>,
    object_edges: Vec<u32>,
    dropped_objects: usize,
}

/// One rating as seen from a user or an object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rating {
    pub edge: usize,
    pub user: usize,
    pub object: usize,
    pub level: u16,
}

/// Accumulates triples and validates them into a [`RatingDataset`].
#[derive(Debug)]
pub struct DatasetBuilder {
    scale: RatingScale,
    triples: Vec<(Id, Id, u16)>,
}

impl DatasetBuilder {
    pub fn new(scale: RatingScale) -> Self {
        DatasetBuilder { scale, triples: Vec::new() }
    }

    pub fn push(&mut self, user: impl Into<Id>, object: impl Into<Id>, value: f64) -> Result<()> {
        let level = self
            .scale
            .level_of(value)
            .ok_or(Error::RatingOutOfScale { value })?;
        self.triples.push((user.into(), object.into(), level));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn build(self) -> Result<RatingDataset> {
        let DatasetBuilder { scale, triples } = self;
        if triples.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut users: Vec<Id> = triples.iter().map(|t| t.0.clone()).collect();
        users.sort_unstable();
        users.dedup();
        let mut objects: Vec<Id> = triples.iter().map(|t| t.1.clone()).collect();
        objects.sort_unstable();
        objects.dedup();

        let mut edges: Vec<(u32, u32, u16)> = triples
            .iter()
            .map(|(u, o, level)| {
                let ui = users.binary_search(u).expect("user interned");
                let oi = objects.binary_search(o).expect("object interned");
                (ui as u32, oi as u32, *level)
            })
            .collect();
        edges.sort_unstable_by_key(|e| (e.0, e.1));
        if let Some(w) = edges.windows(2).find(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1) {
            return Err(Error::DuplicatePair {
                user: users[w[0].0 as usize].clone(),
                object: objects[w[0].1 as usize].clone(),
            });
        }
        Ok(RatingDataset::from_sorted_edges(scale, users, objects, &edges, 0))
    }
}

impl RatingDataset {
    /// Builds a dataset from `(user, object, rating)` triples.
    pub fn from_triples<U, O, I>(triples: I, scale: RatingScale) -> Result<Self>
    where
        U: Into<Id>,
        O: Into<Id>,
        I: IntoIterator<Item = (U, O, f64)>,
    {
        let mut builder = DatasetBuilder::new(scale);
        for (u, o, v) in triples {
            builder.push(u, o, v)?;
        }
        builder.build()
    }

    fn from_sorted_edges(
        scale: RatingScale,
        users: Vec<Id>,
        objects: Vec<Id>,
        edges: &[(u32, u32, u16)],
        dropped_objects: usize,
    ) -> Self {
        let m = users.len();
        let n = objects.len();
        let mut user_offsets = alloc::vec![0usize; m + 1];
        let mut object_offsets = alloc::vec![0usize; n + 1];
        for &(u, o, _) in edges {
            user_offsets[u as usize + 1] += 1;
            object_offsets[o as usize + 1] += 1;
        }
        for i in 0..m {
            user_offsets[i + 1] += user_offsets[i];
        }
        for a in 0..n {
            object_offsets[a + 1] += object_offsets[a];
        }
        let mut cursor = object_offsets.clone();
        let mut object_edges = alloc::vec![0u32; edges.len()];
        // Edges are user-major, so each object's edge list comes out sorted by user.
        for (e, &(_, o, _)) in edges.iter().enumerate() {
            let slot = &mut cursor[o as usize];
            object_edges[*slot] = e as u32;
            *slot += 1;
        }
        RatingDataset {
            scale,
            users,
            objects,
            user_offsets,
            edge_user: edges.iter().map(|e| e.0).collect(),
            edge_object: edges.iter().map(|e| e.1).collect(),
            edge_level: edges.iter().map(|e| e.2).collect(),
            object_offsets,
            object_edges,
            dropped_objects,
        }
    }

    pub fn scale(&self) -> &RatingScale {
        &self.scale
    }

    /// Number of users, `m`.
    pub fn user_count(&self) -> usize {
        self.users.len()
    }

    /// Number of objects, `n`.
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    /// Number of ratings, `l`.
    pub fn rating_count(&self) -> usize {
        self.edge_level.len()
    }

    /// `l / (m n)`.
    pub fn sparsity(&self) -> f64 {
        self.rating_count() as f64 / (self.user_count() as f64 * self.object_count() as f64)
    }

    pub fn mean_user_degree(&self) -> f64 {
        self.rating_count() as f64 / self.user_count() as f64
    }

    pub fn mean_object_degree(&self) -> f64 {
        self.rating_count() as f64 / self.object_count() as f64
    }

    /// Objects discarded because no retained user rated them.
    pub fn dropped_objects(&self) -> usize {
        self.dropped_objects
    }

    pub fn users(&self) -> &[Id] {
        &self.users
    }

    pub fn objects(&self) -> &[Id] {
        &self.objects
    }

    pub fn user_index(&self, id: &Id) -> Option<usize> {
        self.users.binary_search(id).ok()
    }

    pub fn object_index(&self, id: &Id) -> Option<usize> {
        self.objects.binary_search(id).ok()
    }

    pub fn user_degree(&self, id: &Id) -> Result<usize> {
        self.user_index(id)
            .map(|i| self.user_degree_at(i))
            .ok_or_else(|| Error::UnknownUser(id.clone()))
    }

    pub fn object_degree(&self, id: &Id) -> Result<usize> {
        self.object_index(id)
            .map(|a| self.object_degree_at(a))
            .ok_or_else(|| Error::UnknownObject(id.clone()))
    }

    pub fn user_degree_at(&self, user: usize) -> usize {
        self.user_offsets[user + 1] - self.user_offsets[user]
    }

    pub fn object_degree_at(&self, object: usize) -> usize {
        self.object_offsets[object + 1] - self.object_offsets[object]
    }

    pub fn user_degrees(&self) -> Vec<usize> {
        (0..self.user_count()).map(|i| self.user_degree_at(i)).collect()
    }

    pub fn object_degrees(&self) -> Vec<usize> {
        (0..self.object_count()).map(|a| self.object_degree_at(a)).collect()
    }

    /// Edge index range of a user's ratings; edges are numbered user-major.
    pub fn user_edges(&self, user: usize) -> Range<usize> {
        self.user_offsets[user]..self.user_offsets[user + 1]
    }

    pub fn user_ratings(&self, user: usize) -> impl Iterator<Item = Rating> + '_ {
        self.user_edges(user).map(move |e| self.rating(e))
    }

    pub fn object_ratings(&self, object: usize) -> impl Iterator<Item = Rating> + '_ {
        self.object_edges[self.object_offsets[object]..self.object_offsets[object + 1]]
            .iter()
            .map(move |&e| self.rating(e as usize))
    }

    pub fn rating(&self, edge: usize) -> Rating {
        Rating {
            edge,
            user: self.edge_user[edge] as usize,
            object: self.edge_object[edge] as usize,
            level: self.edge_level[edge],
        }
    }

    pub fn edge_levels(&self) -> &[u16] {
        &self.edge_level
    }

    pub fn edge_objects(&self) -> &[u32] {
        &self.edge_object
    }

    pub fn edge_users(&self) -> &[u32] {
        &self.edge_user
    }

    pub fn value_of(&self, edge: usize) -> f64 {
        self.scale.value(self.edge_level[edge])
    }

    /// Rating value of `user` on `object`, if present.
    pub fn get(&self, user: &Id, object: &Id) -> Option<f64> {
        let u = self.user_index(user)?;
        let o = self.object_index(object)? as u32;
        let range = self.user_edges(u);
        let pos = self.edge_object[range.clone()].binary_search(&o).ok()?;
        Some(self.value_of(range.start + pos))
    }

    /// All ratings as `(user, object, value)` in (user, object) order.
    pub fn triples(&self) -> impl Iterator<Item = (&Id, &Id, f64)> + '_ {
        (0..self.rating_count()).map(move |e| {
            (
                &self.users[self.edge_user[e] as usize],
                &self.objects[self.edge_object[e] as usize],
                self.value_of(e),
            )
        })
    }

    /// Same topology with new rating levels, indexed by edge.
    pub(crate) fn with_levels(&self, levels: Vec<u16>) -> Self {
        debug_assert_eq!(levels.len(), self.edge_level.len());
        RatingDataset { edge_level: levels, ..self.clone() }
    }

    /// Keeps only the given users (dense indices, any order) with all their
    /// ratings, and the objects at least one of them rated.
    pub fn restrict_users(&self, keep: &[usize]) -> Result<Self> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut object_map = alloc::vec![u32::MAX; self.object_count()];
        for &u in &keep {
            for e in self.user_edges(u) {
                object_map[self.edge_object[e] as usize] = 0;
            }
        }
        let mut objects = Vec::new();
        for (a, slot) in object_map.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = objects.len() as u32;
                objects.push(self.objects[a].clone());
            }
        }
        let dropped = self.object_count() - objects.len();
        let mut edges = Vec::new();
        for (new_u, &u) in keep.iter().enumerate() {
            for e in self.user_edges(u) {
                let o = object_map[self.edge_object[e] as usize];
                edges.push((new_u as u32, o, self.edge_level[e]));
            }
        }
        let users = keep.iter().map(|&u| self.users[u].clone()).collect();
        Ok(RatingDataset::from_sorted_edges(
            self.scale.clone(),
            users,
            objects,
            &edges,
            dropped,
        ))
    }
}
