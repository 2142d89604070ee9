// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The triangulated torus `H_p`: zero-sum triples over `Z_p`, with an edge
//! along each of three unit directions.

use crate::error::{Error, Result};

/// The two triangle families that partition `H_p` on their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriKind {
    T,
    F,
}

impl TriKind {
    pub fn other(self) -> TriKind {
        match self {
            TriKind::T => TriKind::F,
            TriKind::F => TriKind::T,
        }
    }

    /// Direction following `dir` inside a triangle of this kind.
    fn next(self, dir: usize) -> usize {
        match self {
            TriKind::T => (dir + 1) % 3,
            TriKind::F => (dir + 2) % 3,
        }
    }
}

/// Unit directions `d1 = (0, 1, -1)`, `d2 = (-1, 0, 1)`, `d3 = (1, -1, 0)`.
pub const DIRECTIONS: [[i64; 3]; 3] = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]];

/// Smallest patch separation, and separation from the origin, that
/// [`select_patches`] enforces by default.
pub const PATCH_RADIUS: usize = 10;

/// Geometry of one copy of `H_p`. Vertex `(a1, a2, a3)` has index
/// `a1 * p + a2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hp {
    p: usize,
}

/// A triangle together with the three triangles of the other kind that
/// share one of its edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Patch {
    pub kind: TriKind,
    /// Center vertices `m0 -> m1 -> m2 -> m0`; `m0` is the anchor.
    pub center: [usize; 3],
    /// `corners[i]` closes the neighbor on center edge `m_i -> m_{i+1}`.
    pub corners: [usize; 3],
}

impl Patch {
    pub fn anchor(&self) -> usize {
        self.center[0]
    }

    pub fn vertices(&self) -> [usize; 6] {
        let [m0, m1, m2] = self.center;
        let [c0, c1, c2] = self.corners;
        [m0, m1, m2, c0, c1, c2]
    }

    pub fn center_edges(&self) -> [(usize, usize); 3] {
        let m = self.center;
        [(m[0], m[1]), (m[1], m[2]), (m[2], m[0])]
    }

    /// `m_{i+1} -> c_i` and `c_i -> m_i` for each `i`.
    pub fn exterior_edges(&self) -> [(usize, usize); 6] {
        let (m, c) = (self.center, self.corners);
        [
            (m[1], c[0]),
            (c[0], m[0]),
            (m[2], c[1]),
            (c[1], m[1]),
            (m[0], c[2]),
            (c[2], m[2]),
        ]
    }

    /// The three neighbor triangles, each as `[m_i, m_{i+1}, c_i]`.
    pub fn corner_triangles(&self) -> [[usize; 3]; 3] {
        let (m, c) = (self.center, self.corners);
        [[m[0], m[1], c[0]], [m[1], m[2], c[1]], [m[2], m[0], c[2]]]
    }
}

impl Hp {
    pub fn new(p: usize) -> Result<Self> {
        if p < 3 {
            return Err(Error::Precondition(format!("H_p needs p >= 3, got {p}")));
        }
        if p.checked_mul(p).is_none_or(|n| n > u32::MAX as usize) {
            return Err(Error::TooLarge(format!("p = {p}")));
        }
        Ok(Hp { p })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn vertex_count(&self) -> usize {
        self.p * self.p
    }

    pub fn vertex(&self, a1: usize, a2: usize) -> usize {
        (a1 % self.p) * self.p + a2 % self.p
    }

    pub fn coords(&self, v: usize) -> [usize; 3] {
        let (a1, a2) = (v / self.p, v % self.p);
        [a1, a2, (2 * self.p - a1 - a2) % self.p]
    }

    /// Neighbor of `v` along direction `dir` (0, 1, 2 for d1, d2, d3).
    pub fn step(&self, v: usize, dir: usize) -> usize {
        let p = self.p as i64;
        let (a1, a2) = ((v / self.p) as i64, (v % self.p) as i64);
        let d = DIRECTIONS[dir];
        self.vertex((a1 + d[0]).rem_euclid(p) as usize, (a2 + d[1]).rem_euclid(p) as usize)
    }

    /// All `3 p^2` edges, by tail then direction.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|v| (0..3).map(move |d| (v, d)))
            .map(|(v, d)| (v, self.step(v, d)))
            .collect()
    }

    /// The triangle of `kind` whose first edge leaves `v` along d3.
    pub fn triangle(&self, v: usize, kind: TriKind) -> [usize; 3] {
        let first = self.step(v, 2);
        [v, first, self.step(first, kind.next(2))]
    }

    /// The `p^2` triangles of one kind, by anchor.
    pub fn triangles(&self, kind: TriKind) -> Vec<[usize; 3]> {
        (0..self.vertex_count()).map(|v| self.triangle(v, kind)).collect()
    }

    pub fn patch(&self, anchor: usize, kind: TriKind) -> Patch {
        let mut dirs = [2usize; 3];
        dirs[1] = kind.next(dirs[0]);
        dirs[2] = kind.next(dirs[1]);
        let center = self.triangle(anchor, kind);
        let mut corners = [0; 3];
        for i in 0..3 {
            corners[i] = self.step(center[(i + 1) % 3], kind.other().next(dirs[i]));
        }
        Patch { kind, center, corners }
    }

    /// Undirected path distance on the torus.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        let p = self.p as i64;
        let dx = ((v / self.p) as i64 - (u / self.p) as i64).rem_euclid(p);
        let dy = ((v % self.p) as i64 - (u % self.p) as i64).rem_euclid(p);
        let mut best = i64::MAX;
        for x in [dx, dx - p] {
            for y in [dy, dy - p] {
                best = best.min(x.abs().max(y.abs()).max((x + y).abs()));
            }
        }
        best as usize
    }

    fn patch_distance(&self, a: &Patch, b: &Patch) -> usize {
        a.vertices()
            .iter()
            .flat_map(|&u| b.vertices().map(|v| self.distance(u, v)))
            .min()
            .unwrap_or(usize::MAX)
    }
}

/// Greedy deterministic choice of pairwise non-interfering patches: anchors
/// are scanned in index order and each is tried as a T-patch (while more are
/// needed), then as an F-patch. T-patches come first in the result.
pub fn select_patches(hp: &Hp, need_t: usize, need_f: usize) -> Result<Vec<Patch>> {
    select_patches_with_radius(hp, need_t, need_f, PATCH_RADIUS)
}

pub fn select_patches_with_radius(hp: &Hp, need_t: usize, need_f: usize, radius: usize) -> Result<Vec<Patch>> {
    let mut chosen: Vec<Patch> = Vec::with_capacity(need_t + need_f);
    let (mut t, mut f) = (0, 0);
    let fits = |patch: &Patch, chosen: &[Patch]| {
        patch.vertices().iter().all(|&v| hp.distance(0, v) >= radius)
            && chosen.iter().all(|c| hp.patch_distance(c, patch) >= radius)
    };
    for anchor in 0..hp.vertex_count() {
        if t == need_t && f == need_f {
            break;
        }
        if t < need_t {
            let patch = hp.patch(anchor, TriKind::T);
            if fits(&patch, &chosen) {
                chosen.push(patch);
                t += 1;
                continue;
            }
        }
        if f < need_f {
            let patch = hp.patch(anchor, TriKind::F);
            if fits(&patch, &chosen) {
                chosen.push(patch);
                f += 1;
            }
        }
    }
    if t < need_t || f < need_f {
        return Err(Error::Placement(format!(
            "found {t} of {need_t} T-patches and {f} of {need_f} F-patches on H_{}",
            hp.p()
        )));
    }
    chosen.sort_by_key(|patch| patch.kind == TriKind::F);
    Ok(chosen)
}
