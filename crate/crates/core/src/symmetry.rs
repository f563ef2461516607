//! Symmetry groups of Gram matrices: `G(Φ) = {σ : P_σ 𝒢 = 𝒢 P_σ}`.
//!
//! Entries of the Gram matrix are turned into colors, and the automorphism
//! group of the resulting colored complete digraph is found by backtracking
//! over individualized vertices with color refinement at every node.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{Exactness, GramMatrix};
use crate::permgroup::{is_transitive, orbit_of, GroupAction, Permutation, PermutationGroup};

/// Default search budget for [`gram_symmetry_group`].
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;
/// Largest Gram matrix accepted.
pub const MAX_POINTS: usize = 64;

/// Complete digraph with a color on every ordered pair, loops included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredDigraph {
    pub n: usize,
    pub color: Vec<Vec<u32>>,
}

impl ColoredDigraph {
    pub fn new(color: Vec<Vec<u32>>) -> Result<Self> {
        let n = color.len();
        if color.iter().any(|r| r.len() != n) {
            return Err(Error::input("color matrix is not square"));
        }
        Ok(ColoredDigraph { n, color })
    }

    /// Colors Gram entries by value. Entries of exact Gram matrices are compared
    /// for equality; floating entries are clustered at `tol`.
    pub fn from_gram(gram: &GramMatrix, tol: f64) -> Result<Self> {
        let n = gram.n();
        let g = gram.entries();
        let color = if gram.exactness() != Exactness::Float {
            let mut ids: HashMap<(u64, u64), u32> = HashMap::new();
            // adding 0.0 folds −0.0 onto 0.0
            let key = |x: f64| (x + 0.0).to_bits();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let z = g[(i, j)];
                            let next = ids.len() as u32;
                            *ids.entry((key(z.re), key(z.im))).or_insert(next)
                        })
                        .collect()
                })
                .collect()
        } else {
            cluster_entries(&[gram], tol)?.remove(0)
        };
        Ok(ColoredDigraph { n, color })
    }

    /// Colors two Gram matrices with a shared palette, so that color equality
    /// across them means value equality.
    pub fn pair_from_grams(a: &GramMatrix, b: &GramMatrix, tol: f64) -> Result<(Self, Self)> {
        let mut colors = cluster_entries(&[a, b], tol)?;
        let cb = colors.pop().unwrap();
        let ca = colors.pop().unwrap();
        Ok((
            ColoredDigraph {
                n: a.n(),
                color: ca,
            },
            ColoredDigraph {
                n: b.n(),
                color: cb,
            },
        ))
    }

    /// Whether `p` maps `self` onto `other`: `other[p i][p j] = self[i][j]`.
    fn maps_onto(&self, other: &ColoredDigraph, p: &[usize]) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| other.color[p[i]][p[j]] == self.color[i][j]))
    }
}

fn cluster_entries(grams: &[&GramMatrix], tol: f64) -> Result<Vec<Vec<Vec<u32>>>> {
    let cell = 10.0 * tol;
    let key = |re: f64, im: f64| ((re / cell).floor() as i64, (im / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    let mut reps: Vec<num_complex::Complex64> = Vec::new();
    let mut out = Vec::with_capacity(grams.len());
    for gram in grams {
        let n = gram.n();
        let g = gram.entries();
        let mut color = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                let z = g[(i, j)];
                let (kx, ky) = key(z.re, z.im);
                let mut near = Vec::new();
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        if let Some(ids) = grid.get(&(kx + dx, ky + dy)) {
                            near.extend(
                                ids.iter()
                                    .copied()
                                    .filter(|&c| (reps[c as usize] - z).norm() < cell),
                            );
                        }
                    }
                }
                let within: Vec<u32> = near
                    .iter()
                    .copied()
                    .filter(|&c| (reps[c as usize] - z).norm() <= tol)
                    .collect();
                if near.len() > within.len() || within.len() > 1 {
                    return Err(Error::numeric(format!(
                    "Gram entry {z} at ({i}, {j}) cannot be clustered unambiguously at tolerance {tol:e}"
                )));
                }
                color[i][j] = match within.first() {
                    Some(&c) => c,
                    None => {
                        let c = reps.len() as u32;
                        reps.push(z);
                        grid.entry((kx, ky)).or_default().push(c);
                        c
                    }
                };
            }
        }
        out.push(color);
    }
    Ok(out)
}

/// Ordered partition of the vertices.
#[derive(Clone, Debug)]
struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition {
            cells: vec![(0..n).collect()],
        }
    }

    fn cell_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![0; n];
        for (c, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                idx[v] = c;
            }
        }
        idx
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    fn first_nontrivial(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() > 1)
    }

    fn individualize(&self, v: usize) -> Partition {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for cell in &self.cells {
            if cell.contains(&v) && cell.len() > 1 {
                cells.push(vec![v]);
                cells.push(cell.iter().copied().filter(|&w| w != v).collect());
            } else {
                cells.push(cell.clone());
            }
        }
        Partition { cells }
    }
}

type Signature = Vec<(u32, u32, usize, usize)>;

/// Equitable refinement. The trace records, per round, the signature and size
/// of every cell in order; two partitions related by an isomorphism produce
/// identical traces.
fn refine(graph: &ColoredDigraph, mut p: Partition) -> (Partition, Trace) {
    let n = graph.n;
    let mut trace = Vec::new();
    loop {
        let idx = p.cell_index(n);
        let before = p.cells.len();
        let mut cells = Vec::with_capacity(before);
        for (c, cell) in p.cells.iter().enumerate() {
            if cell.len() == 1 {
                cells.push(cell.clone());
                continue;
            }
            let mut groups: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
            for &v in cell {
                let mut counts: BTreeMap<(u32, u32, usize), usize> = BTreeMap::new();
                for (w, &cw) in idx.iter().enumerate() {
                    *counts
                        .entry((graph.color[v][w], graph.color[w][v], cw))
                        .or_default() += 1;
                }
                let sig: Signature = counts
                    .into_iter()
                    .map(|((a, b, k), m)| (a, b, k, m))
                    .collect();
                groups.entry(sig).or_default().push(v);
            }
            for (sig, members) in groups {
                trace.push((c, sig, members.len()));
                cells.push(members);
            }
        }
        p = Partition { cells };
        if p.cells.len() == before {
            return (p, trace);
        }
    }
}

struct Search<'a> {
    left: &'a ColoredDigraph,
    right: &'a ColoredDigraph,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::resource(format!(
                "symmetry search exceeded {} nodes",
                self.cap
            )));
        }
        Ok(())
    }

    /// Finds an automorphism mapping the left partition onto the right one,
    /// following the fixed left path below `depth`.
    fn extend(
        &mut self,
        path: &[(Partition, Trace)],
        depth: usize,
        right: Partition,
    ) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        let (right, rtrace) = refine(self.right, right);
        let (left, ltrace) = &path[depth];
        if *ltrace != rtrace || left.cells.len() != right.cells.len() {
            return Ok(None);
        }
        if left.is_discrete() {
            let mut p = vec![0; self.left.n];
            for (l, r) in left.cells.iter().zip(&right.cells) {
                p[l[0]] = r[0];
            }
            return Ok(self.left.maps_onto(self.right, &p).then_some(p));
        }
        let c = left.first_nontrivial().expect("not discrete");
        for &w in &right.cells[c] {
            if let Some(p) = self.extend(path, depth + 1, right.individualize(w))? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

/// Generators of the automorphism group of a colored digraph, with the group order.
type Trace = Vec<(usize, Signature, usize)>;
type Path = Vec<(Partition, Trace)>;

/// Refined partitions along the path that individualizes the first vertex of
/// the first nontrivial cell, with the individualized vertices.
fn left_path(graph: &ColoredDigraph) -> (Path, Vec<usize>) {
    let n = graph.n;
    let mut path = Vec::new();
    let mut base = Vec::new();
    let mut current = Partition::unit(n);
    loop {
        let (p, t) = refine(graph, current);
        let next = p.first_nontrivial().map(|c| p.cells[c][0]);
        path.push((p.clone(), t));
        match next {
            Some(v) => {
                base.push(v);
                current = p.individualize(v);
            }
            None => break,
        }
    }
    (path, base)
}

/// Generators of the automorphism group of a colored digraph, with the group order.
pub fn digraph_automorphisms(
    graph: &ColoredDigraph,
    node_cap: u64,
) -> Result<(Vec<Permutation>, BigUint)> {
    let n = graph.n;
    let (path, base) = left_path(graph);
    let mut search = Search {
        left: graph,
        right: graph,
        nodes: 0,
        cap: node_cap,
    };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order = BigUint::from(1u32);
    for level in (0..base.len()).rev() {
        let (parent, _) = &path[level];
        let b = base[level];
        let cell = parent
            .cells
            .iter()
            .find(|c| c.contains(&b))
            .unwrap()
            .clone();
        let mut orb = orbit_of(&gens, n, b);
        for &c in &cell {
            if orb.contains(&c) {
                continue;
            }
            if let Some(p) = search.extend(&path, level + 1, parent.individualize(c))? {
                gens.push(Permutation::new(p.iter().map(|&x| x as u32).collect())?);
                orb = orbit_of(&gens, n, b);
            }
        }
        order *= BigUint::from(orb.len());
    }
    Ok((gens, order))
}

/// A permutation `p` with `b[p i][p j] = a[i][j]`, if one exists.
pub fn digraph_isomorphism(
    a: &ColoredDigraph,
    b: &ColoredDigraph,
    node_cap: u64,
) -> Result<Option<Vec<usize>>> {
    if a.n != b.n {
        return Ok(None);
    }
    let (path, _) = left_path(a);
    let mut search = Search {
        left: a,
        right: b,
        nodes: 0,
        cap: node_cap,
    };
    search.extend(&path, 0, Partition::unit(a.n))
}

/// Whether two Gram matrices agree up to a simultaneous permutation of rows
/// and columns; returns the permutation `p` with `b[p i][p j] ≈ a[i][j]`.
pub fn gram_isomorphism(
    a: &GramMatrix,
    b: &GramMatrix,
    tol: f64,
    node_cap: u64,
) -> Result<Option<Vec<usize>>> {
    let (ca, cb) = ColoredDigraph::pair_from_grams(a, b, tol)?;
    digraph_isomorphism(&ca, &cb, node_cap)
}

/// The symmetry group `G(Φ)` of a Gram matrix.
pub fn gram_symmetry_group(gram: &GramMatrix, tol: f64, node_cap: u64) -> Result<PermutationGroup> {
    if gram.n() > MAX_POINTS {
        return Err(Error::input(format!(
            "symmetry search supports at most {MAX_POINTS} points, got {}",
            gram.n()
        )));
    }
    let graph = ColoredDigraph::from_gram(gram, tol)?;
    symmetry_group_of_colors(&graph, node_cap)
}

/// The automorphism group of a supplied color matrix.
pub fn symmetry_group_of_colors(graph: &ColoredDigraph, node_cap: u64) -> Result<PermutationGroup> {
    let (gens, _) = digraph_automorphisms(graph, node_cap)?;
    PermutationGroup::new(graph.n, gens)
}

/// Whether `G(Φ)` is transitive, i.e. the frame is homogeneous.
pub fn is_homogeneous(gram: &GramMatrix, tol: f64) -> Result<bool> {
    let g = gram_symmetry_group(gram, tol, DEFAULT_NODE_CAP)?;
    Ok(is_transitive(&GroupAction::natural(g)))
}

/// Whether the subgroup generated by `generators` acts regularly on the points of `action`.
pub fn regular_subgroup_check(action: &GroupAction, generators: &[Permutation]) -> Result<bool> {
    let n = action.point_count;
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::input(format!(
            "generator has degree {} but the action has {n} points",
            g.degree()
        )));
    }
    let k = PermutationGroup::new(n, generators.to_vec())?;
    if orbit_of(k.generators(), n, 0).len() != n {
        return Ok(false);
    }
    Ok(k.order() == BigUint::from(n))
}
