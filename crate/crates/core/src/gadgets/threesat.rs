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

//! Glues copies of `H_p` into a digraph that has a triangle partition
//! exactly when a 3-CNF formula is satisfiable.
//!
//! Each variable and each literal occurrence gets its own copy. A copy
//! partitioned into T-triangles reads as "true" for a variable; a literal
//! copy partitioned into F-triangles is the one that satisfies its clause.
//! Joins identify patches across copies so that only consistent choices can
//! be completed.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use super::dtp::{has_short_cycles, validate_triangle_partition, TriangleCheck};
use super::hp::{select_patches, Hp, Patch, TriKind};
use crate::error::{Error, Result};

/// A variable (0-based) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn eval(&self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

/// A conjunction of clauses with exactly three literals each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf3Formula {
    pub q: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Cnf3Formula {
    /// Clauses as `(variable, negated)` lists; every clause needs three
    /// literals over variables `0..q`.
    pub fn new(q: usize, clauses: &[Vec<(usize, bool)>]) -> Result<Self> {
        if q == 0 {
            return Err(Error::MalformedFormula("a formula needs at least one variable".into()));
        }
        let mut out = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.iter().enumerate() {
            if clause.len() != 3 {
                return Err(Error::MalformedFormula(format!(
                    "clause {} has {} literals",
                    j + 1,
                    clause.len()
                )));
            }
            let mut lits = [Literal { var: 0, negated: false }; 3];
            for (k, &(var, negated)) in clause.iter().enumerate() {
                if var >= q {
                    return Err(Error::MalformedFormula(format!(
                        "clause {} mentions variable {} of {q}",
                        j + 1,
                        var + 1
                    )));
                }
                lits[k] = Literal { var, negated };
            }
            out.push(lits);
        }
        Ok(Cnf3Formula { q, clauses: out })
    }

    pub fn r(&self) -> usize {
        self.clauses.len()
    }

    /// Index of the first clause `assignment` leaves false.
    pub fn first_unsatisfied(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.eval(assignment)))
    }
}

/// What a copy of `H_p` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyRole {
    Variable(usize),
    /// Clause `j`, position `k` (both 0-based).
    Literal(usize, usize),
}

impl CopyRole {
    /// `Y1`, `L2_3`, ... with 1-based numbers.
    pub fn name(&self) -> String {
        match *self {
            CopyRole::Variable(i) => format!("Y{}", i + 1),
            CopyRole::Literal(j, k) => format!("L{}_{}", j + 1, k + 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinKind {
    /// Three literal copies share one exterior; the center is dropped.
    Fff,
    /// A literal copy and a variable copy share a whole F-patch.
    Ff,
    /// A literal F-patch and a variable T-patch are identified.
    Ft,
}

impl JoinKind {
    pub fn label(&self) -> &'static str {
        match self {
            JoinKind::Fff => "F-F-F",
            JoinKind::Ff => "F-F",
            JoinKind::Ft => "F-T",
        }
    }
}

/// One join: participating copies with the patch each gave up, in local
/// coordinates of that copy. The first participant's vertices survive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinRecord {
    pub kind: JoinKind,
    pub parts: Vec<(usize, Patch)>,
}

/// Copies of `H_p` glued by joins.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub hp: Hp,
    pub formula: Cnf3Formula,
    pub copies: Vec<CopyRole>,
    /// `local_to_global[c][v]` is the global id of vertex `v` of copy `c`.
    pub local_to_global: Vec<Vec<usize>>,
    /// Provenance of each global vertex: the copy it was created in and its
    /// local index there.
    pub vertex_origin: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
    pub joins: Vec<JoinRecord>,
}

/// Outcome of [`partition_from_assignment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionOutcome {
    /// A validated partition, each part a directed triangle of global ids.
    Partition(Vec<Vec<usize>>),
    /// The assignment falsifies this clause (0-based).
    Unsatisfied { clause: usize },
}

impl GadgetGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_origin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn copy_index(&self, role: CopyRole) -> Option<usize> {
        self.copies.iter().position(|&c| c == role)
    }

    /// `copy (a1,a2,a3)` label of a global vertex.
    pub fn vertex_label(&self, v: usize) -> String {
        let (copy, local) = self.vertex_origin[v];
        let [a1, a2, a3] = self.hp.coords(local);
        format!("{} ({a1},{a2},{a3})", self.copies[copy].name())
    }

    pub fn has_short_cycles(&self) -> bool {
        has_short_cycles(&self.edges)
    }

    /// Vertices whose indegree differs from their outdegree or from 3 when
    /// the vertex lies in no join, in increasing order.
    pub fn degree_defects(&self) -> Vec<usize> {
        let mut indeg = vec![0usize; self.vertex_count()];
        let mut outdeg = vec![0usize; self.vertex_count()];
        for &(u, v) in &self.edges {
            outdeg[u] += 1;
            indeg[v] += 1;
        }
        let mut joined = vec![false; self.vertex_count()];
        for join in &self.joins {
            for &(copy, patch) in &join.parts {
                for v in patch.vertices() {
                    joined[self.local_to_global[copy][v]] = true;
                }
            }
        }
        (0..self.vertex_count())
            .filter(|&v| indeg[v] != outdeg[v] || (!joined[v] && outdeg[v] != 3))
            .collect()
    }

    /// Plain-text edge list: header `p q r`, one `copy (a1,a2,a3) -> copy
    /// (b1,b2,b3)` line per edge, then one `#join` comment per join.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.hp.p(), self.formula.q, self.formula.r());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{} -> {}", self.vertex_label(u), self.vertex_label(v));
        }
        for join in &self.joins {
            let _ = write!(s, "#join {}", join.kind.label());
            for &(copy, patch) in &join.parts {
                let [a1, a2, a3] = self.hp.coords(patch.anchor());
                let kind = if patch.kind == TriKind::T { 'T' } else { 'F' };
                let _ = write!(s, " {}:{kind}@({a1},{a2},{a3})", self.copies[copy].name());
            }
            s.push('\n');
        }
        s
    }

    pub fn validate(&self, parts: &[Vec<usize>]) -> TriangleCheck {
        validate_triangle_partition(&self.edges, parts)
    }
}

/// Joined copies of `H_p` for formula `f`. `p` defaults to `100 r` (and to
/// 100 when there are no clauses).
pub fn gen_threesat_dtp(f: &Cnf3Formula, p: Option<usize>) -> Result<GadgetGraph> {
    let r = f.r();
    let hp = Hp::new(p.unwrap_or(100 * r.max(1)))?;
    let mut copies: Vec<CopyRole> = (0..f.q).map(CopyRole::Variable).collect();
    for j in 0..r {
        for k in 0..3 {
            copies.push(CopyRole::Literal(j, k));
        }
    }
    let literal_copy = |j: usize, k: usize| f.q + 3 * j + k;

    let mut joins = Vec::new();
    if r > 0 {
        let patches = select_patches(&hp, 3 * r, 3 * r)?;
        let t_patches: Vec<Patch> = patches.iter().copied().filter(|p| p.kind == TriKind::T).collect();
        let f_patches: Vec<Patch> = patches.iter().copied().filter(|p| p.kind == TriKind::F).collect();
        let mut used_t = vec![0usize; f.q];
        let mut used_f = vec![0usize; f.q];
        for (j, clause) in f.clauses.iter().enumerate() {
            joins.push(JoinRecord {
                kind: JoinKind::Fff,
                parts: (0..3).map(|k| (literal_copy(j, k), f_patches[0])).collect(),
            });
            for (k, lit) in clause.iter().enumerate() {
                let y = lit.var;
                let (kind, var_patch) = if lit.negated {
                    used_t[y] += 1;
                    (JoinKind::Ft, t_patches[used_t[y] - 1])
                } else {
                    // F-patch 0 of a literal copy is spent on its clause join.
                    used_f[y] += 1;
                    (JoinKind::Ff, f_patches[used_f[y] - 1])
                };
                joins.push(JoinRecord {
                    kind,
                    parts: vec![(literal_copy(j, k), f_patches[1]), (y, var_patch)],
                });
            }
        }
    }

    // Merged patch vertices point at the first participant's vertices.
    let n_local = hp.vertex_count();
    let mut alias: FxHashMap<(usize, usize), (usize, usize)> = FxHashMap::default();
    for join in &joins {
        let (c0, p0) = join.parts[0];
        for &(c, patch) in &join.parts[1..] {
            for (a, b) in patch.vertices().into_iter().zip(p0.vertices()) {
                alias.insert((c, a), (c0, b));
            }
        }
    }
    let mut local_to_global = vec![vec![usize::MAX; n_local]; copies.len()];
    let mut vertex_origin = Vec::new();
    for (c, map) in local_to_global.iter_mut().enumerate() {
        for (v, slot) in map.iter_mut().enumerate() {
            if !alias.contains_key(&(c, v)) {
                *slot = vertex_origin.len();
                vertex_origin.push((c, v));
            }
        }
    }
    for (&(c, v), &(c0, v0)) in &alias {
        local_to_global[c][v] = local_to_global[c0][v0];
    }

    let mut dropped: rustc_hash::FxHashSet<(usize, usize)> = Default::default();
    for join in joins.iter().filter(|j| j.kind == JoinKind::Fff) {
        let (c0, p0) = join.parts[0];
        for (u, v) in p0.center_edges() {
            dropped.insert((local_to_global[c0][u], local_to_global[c0][v]));
        }
    }
    let local_edges = hp.edges();
    let mut seen: rustc_hash::FxHashSet<(usize, usize)> = Default::default();
    let mut edges = Vec::with_capacity(copies.len() * local_edges.len());
    for map in &local_to_global {
        for &(u, v) in &local_edges {
            let e = (map[u], map[v]);
            if !dropped.contains(&e) && seen.insert(e) {
                edges.push(e);
            }
        }
    }
    Ok(GadgetGraph {
        hp,
        formula: f.clone(),
        copies,
        local_to_global,
        vertex_origin,
        edges,
        joins,
    })
}

/// A lone copy of `H_p`, as the gadget graph of a one-variable formula with
/// no clauses.
pub fn build_hp(p: usize) -> Result<GadgetGraph> {
    let f = Cnf3Formula::new(1, &[])?;
    gen_threesat_dtp(&f, Some(p))
}

/// T- and F-triangles of a graph made of a single unjoined copy, in global
/// vertex ids.
pub fn enumerate_tf_triangles(g: &GadgetGraph) -> Result<(Vec<[usize; 3]>, Vec<[usize; 3]>)> {
    if g.copies.len() != 1 || !g.joins.is_empty() {
        return Err(Error::Precondition("expected a single unjoined copy".into()));
    }
    let map = &g.local_to_global[0];
    let lift = |tris: Vec<[usize; 3]>| tris.into_iter().map(|t| t.map(|v| map[v])).collect();
    Ok((lift(g.hp.triangles(TriKind::T)), lift(g.hp.triangles(TriKind::F))))
}

/// Builds the triangle partition that a satisfying assignment induces:
/// variable copies take T-triangles when true, the first true literal of
/// each clause takes F-triangles and the other literal copies T-triangles;
/// shared patches are completed with their center or corner triangles.
pub fn partition_from_assignment(g: &GadgetGraph, assignment: &[bool]) -> Result<PartitionOutcome> {
    let f = &g.formula;
    if assignment.len() != f.q {
        return Err(Error::Precondition(format!(
            "assignment has {} values for {} variables",
            assignment.len(),
            f.q
        )));
    }
    if let Some(clause) = f.first_unsatisfied(assignment) {
        return Ok(PartitionOutcome::Unsatisfied { clause });
    }
    let kind_of = |role: CopyRole| match role {
        CopyRole::Variable(i) => {
            if assignment[i] {
                TriKind::T
            } else {
                TriKind::F
            }
        }
        CopyRole::Literal(j, k) => {
            let chosen = f.clauses[j].iter().position(|l| l.eval(assignment));
            if chosen == Some(k) {
                TriKind::F
            } else {
                TriKind::T
            }
        }
    };
    let kinds: Vec<TriKind> = g.copies.iter().map(|&r| kind_of(r)).collect();

    let mut patch_edges: Vec<rustc_hash::FxHashSet<(usize, usize)>> = vec![Default::default(); g.copies.len()];
    for join in &g.joins {
        for &(c, patch) in &join.parts {
            patch_edges[c].extend(patch.center_edges());
            patch_edges[c].extend(patch.exterior_edges());
        }
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for (c, map) in g.local_to_global.iter().enumerate() {
        for tri in g.hp.triangles(kinds[c]) {
            let inside = (0..3)
                .filter(|&t| patch_edges[c].contains(&(tri[t], tri[(t + 1) % 3])))
                .count();
            if inside < 3 {
                parts.push(tri.iter().map(|&v| map[v]).collect());
            }
        }
    }
    for join in &g.joins {
        if join.kind == JoinKind::Fff {
            continue;
        }
        let (c0, p0) = join.parts[0];
        let map = &g.local_to_global[c0];
        let using_exterior = join
            .parts
            .iter()
            .filter(|&&(c, patch)| kinds[c] == patch.kind)
            .count();
        match using_exterior {
            1 => parts.push(p0.center.iter().map(|&v| map[v]).collect()),
            0 => {
                for tri in p0.corner_triangles() {
                    parts.push(tri.iter().map(|&v| map[v]).collect());
                }
            }
            _ => {}
        }
    }
    let check = g.validate(&parts);
    if !check.valid {
        return Err(Error::TheoremViolation(format!(
            "assignment partition failed validation: {}",
            check.defect.unwrap_or_default()
        )));
    }
    Ok(PartitionOutcome::Partition(parts))
}

/// Copies of each type in a partition built by [`partition_from_assignment`]
/// for `assignment`, for checking the join constraints.
pub fn copy_kinds(g: &GadgetGraph, assignment: &[bool]) -> Vec<TriKind> {
    let f = &g.formula;
    g.copies
        .iter()
        .map(|&role| match role {
            CopyRole::Variable(i) => {
                if assignment[i] {
                    TriKind::T
                } else {
                    TriKind::F
                }
            }
            CopyRole::Literal(j, k) => {
                if f.clauses[j].iter().position(|l| l.eval(assignment)) == Some(k) {
                    TriKind::F
                } else {
                    TriKind::T
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_clause() -> Cnf3Formula {
        Cnf3Formula::new(3, &[vec![(0, false), (1, true), (2, false)]]).unwrap()
    }

    #[test]
    fn lone_copy_counts() {
        for p in [3, 5] {
            let g = build_hp(p).unwrap();
            assert_eq!(g.vertex_count(), p * p);
            assert_eq!(g.edge_count(), 3 * p * p);
            assert!(g.degree_defects().is_empty());
            assert!(!g.has_short_cycles());
        }
    }

    #[test]
    fn tf_triangles_cover_edges_once() {
        let g = build_hp(5).unwrap();
        let (t, f) = enumerate_tf_triangles(&g).unwrap();
        assert_eq!((t.len(), f.len()), (25, 25));
        for tris in [t, f] {
            let parts: Vec<Vec<usize>> = tris.iter().map(|t| t.to_vec()).collect();
            assert!(g.validate(&parts).valid);
        }
    }

    #[test]
    fn one_clause_gadget_counts() {
        let p = 40;
        let g = gen_threesat_dtp(&one_clause(), Some(p)).unwrap();
        assert_eq!(g.copies.len(), 6);
        assert_eq!(g.joins.len(), 4);
        assert_eq!(g.vertex_count(), 6 * p * p - 30);
        assert_eq!(g.edge_count(), 18 * p * p - 48);
        assert!(g.degree_defects().is_empty());
        assert!(!g.has_short_cycles());
    }

    #[test]
    fn satisfying_assignments_partition() {
        let g = gen_threesat_dtp(&one_clause(), Some(40)).unwrap();
        for bits in 0..8u32 {
            let a: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
            let out = partition_from_assignment(&g, &a).unwrap();
            if g.formula.first_unsatisfied(&a).is_some() {
                assert_eq!(out, PartitionOutcome::Unsatisfied { clause: 0 });
            } else {
                assert!(matches!(out, PartitionOutcome::Partition(_)));
            }
        }
    }

    #[test]
    fn unsatisfiable_formula_always_fails() {
        let f = Cnf3Formula::new(1, &[vec![(0, false); 3], vec![(0, true); 3]]).unwrap();
        let g = gen_threesat_dtp(&f, Some(60)).unwrap();
        for a in [[false], [true]] {
            assert!(matches!(
                partition_from_assignment(&g, &a).unwrap(),
                PartitionOutcome::Unsatisfied { .. }
            ));
        }
    }

    #[test]
    fn malformed_formulas() {
        assert!(matches!(
            Cnf3Formula::new(2, &[vec![(0, false), (1, false)]]),
            Err(Error::MalformedFormula(_))
        ));
        assert!(Cnf3Formula::new(2, &[vec![(0, false), (1, false), (2, false)]]).is_err());
    }

    #[test]
    fn no_clauses_gives_disjoint_copies() {
        let f = Cnf3Formula::new(2, &[]).unwrap();
        let g = gen_threesat_dtp(&f, Some(5)).unwrap();
        assert_eq!(g.vertex_count(), 50);
        assert_eq!(g.edge_count(), 150);
        for a in [[true, false], [false, false]] {
            assert!(matches!(partition_from_assignment(&g, &a).unwrap(), PartitionOutcome::Partition(_)));
        }
    }

    #[test]
    fn text_format() {
        let g = gen_threesat_dtp(&one_clause(), Some(40)).unwrap();
        let text = g.to_text();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("40 3 1"));
        assert_eq!(lines.next(), Some("Y1 (0,0,0) -> Y1 (0,1,39)"));
        assert_eq!(text.lines().filter(|l| l.starts_with("#join")).count(), 4);
        assert_eq!(text.lines().count(), 1 + g.edge_count() + 4);
    }
}
