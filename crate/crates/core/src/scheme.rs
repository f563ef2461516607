//! Orbital (Schurian) association schemes of transitive actions.

use std::collections::HashMap;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{
    self, enumerate_elements, is_transitive, point_stabilizer, GroupAction, Permutation,
    PermutationGroup,
};

/// Absolute tolerance used when checking floating matrices for G-stability.
pub const STABLE_TOL: f64 = 1e-9;

/// The orbital partition of `X × X` for a transitive action.
///
/// Orbital 0 is always the diagonal. The remaining orbitals are ordered by
/// valency, then by their least column in row 0.
#[derive(Clone, Debug)]
pub struct SchurianScheme {
    n: usize,
    orbital_of: Vec<u32>,
    valencies: Vec<usize>,
    transpose: Vec<usize>,
    row0_rep: Vec<usize>,
    intersection: OnceLock<Vec<u64>>,
}

impl SchurianScheme {
    /// Canonicalizes a full `n × n` labelling of orbitals by arbitrary ids.
    fn assemble(n: usize, raw: Vec<u32>) -> Self {
        let classes = raw.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); classes];
        for y in 0..n {
            members[raw[y] as usize].push(y);
        }
        let diag = raw[0] as usize;
        let mut order: Vec<usize> = (0..classes)
            .filter(|&c| c != diag && !members[c].is_empty())
            .collect();
        order.sort_by_key(|&c| (members[c].len(), members[c][0]));
        order.insert(0, diag);
        let mut relabel = vec![u32::MAX; classes];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new as u32;
        }
        let orbital_of: Vec<u32> = raw.iter().map(|&c| relabel[c as usize]).collect();
        debug_assert!(orbital_of.iter().all(|&c| c != u32::MAX));
        let valencies: Vec<usize> = order.iter().map(|&c| members[c].len()).collect();
        let row0_rep: Vec<usize> = order.iter().map(|&c| members[c][0]).collect();
        let transpose = row0_rep
            .iter()
            .map(|&y| orbital_of[y * n] as usize)
            .collect();
        SchurianScheme {
            n,
            orbital_of,
            valencies,
            transpose,
            row0_rep,
            intersection: OnceLock::new(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    /// Number of orbitals, `c + 1`.
    pub fn num_orbitals(&self) -> usize {
        self.valencies.len()
    }

    pub fn diagonal_index(&self) -> usize {
        0
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    /// `i ↦ i*` with `A_{i*} = A_iᵀ`.
    pub fn transpose_pairing(&self) -> &[usize] {
        &self.transpose
    }

    #[inline]
    pub fn orbital(&self, x: usize, y: usize) -> usize {
        self.orbital_of[x * self.n + y] as usize
    }

    /// Least column `y` with `(0, y)` in orbital `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.row0_rep[i]
    }

    /// Sparse rows of `A_i`: for each row, the sorted columns holding a one.
    pub fn orbital_rows(&self, i: usize) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).filter(|&y| self.orbital(x, y) == i).collect())
            .collect()
    }

    pub fn adjacency_dense(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |x, y| {
            if self.orbital(x, y) == i {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Intersection numbers `p[i][j][k]` with `A_i A_j = Σ_k p[i][j][k] A_k`,
    /// counted exactly from row 0.
    pub fn intersection_number(&self, i: usize, j: usize, k: usize) -> u64 {
        let r = self.num_orbitals();
        self.intersection_table()[(i * r + j) * r + k]
    }

    fn intersection_table(&self) -> &[u64] {
        self.intersection.get_or_init(|| {
            let r = self.num_orbitals();
            let n = self.n;
            let mut p = vec![0u64; r * r * r];
            for (k, &y) in self.row0_rep.iter().enumerate() {
                for z in 0..n {
                    let i = self.orbital(0, z);
                    let j = self.orbital(z, y);
                    p[(i * r + j) * r + k] += 1;
                }
            }
            p
        })
    }

    /// Linear combination `Σ_i coeffs[i] A_i` as a dense complex matrix.
    pub fn combination(&self, coeffs: &[Complex64]) -> DMatrix<Complex64> {
        assert_eq!(coeffs.len(), self.num_orbitals());
        DMatrix::from_fn(self.n, self.n, |x, y| coeffs[self.orbital(x, y)])
    }

    pub fn to_export(&self) -> SchemeExport {
        let orbitals = (0..self.num_orbitals())
            .map(|i| {
                self.orbital_rows(i)
                    .into_iter()
                    .enumerate()
                    .collect::<Vec<(usize, Vec<usize>)>>()
            })
            .collect();
        SchemeExport {
            n: self.n,
            orbitals,
            valencies: self.valencies.clone(),
        }
    }
}

/// Scheme export format: `{"n": .., "orbitals": [[[row, [cols..]], ..], ..], "valencies": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemeExport {
    pub n: usize,
    pub orbitals: Vec<Vec<(usize, Vec<usize>)>>,
    pub valencies: Vec<usize>,
}

/// Orbitals of a transitive action: the orbits of the point stabilizer of 0
/// label row 0, and coset representatives carry that labelling to every row.
pub fn scheme_from_action(action: &GroupAction) -> Result<SchurianScheme> {
    if !is_transitive(action) {
        return Err(Error::input(
            "scheme_from_action requires a transitive action",
        ));
    }
    let n = action.point_count;
    let stab = point_stabilizer(&action.group, 0)?;
    let mut row0 = vec![usize::MAX; n];
    for (c, orb) in permgroup::orbits(stab.generators(), n).iter().enumerate() {
        for &y in orb {
            row0[y] = c;
        }
    }
    let transport = transversal_from_zero(action.group.generators(), n);
    let mut raw = vec![0u32; n * n];
    for (x, t) in transport.iter().enumerate() {
        for (y0, &c) in row0.iter().enumerate() {
            raw[x * n + t.apply(y0)] = c as u32;
        }
    }
    Ok(SchurianScheme::assemble(n, raw))
}

/// For each point `x`, a group element mapping 0 to `x`.
pub(crate) fn transversal_from_zero(gens: &[Permutation], n: usize) -> Vec<Permutation> {
    let mut t: Vec<Option<Permutation>> = vec![None; n];
    t[0] = Some(Permutation::identity(n));
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        for s in gens {
            let y = s.apply(x);
            if t[y].is_none() {
                t[y] = Some(s.compose(t[x].as_ref().unwrap()));
                queue.push(y);
            }
        }
        k += 1;
    }
    t.into_iter()
        .map(|p| p.expect("transitive action"))
        .collect()
}

/// `true` iff all orbital matrices commute, checked on exact intersection numbers.
pub fn is_commutative(scheme: &SchurianScheme) -> bool {
    let r = scheme.num_orbitals();
    (0..r).all(|i| {
        (i + 1..r).all(|j| {
            (0..r)
                .all(|k| scheme.intersection_number(i, j, k) == scheme.intersection_number(j, i, k))
        })
    })
}

/// Scheme of `K × K` acting on `K` by `(g, h)·k = g k h⁻¹`; orbitals are the
/// class sums of left translations.
pub fn conjugacy_class_scheme(
    group: &PermutationGroup,
    element_limit: usize,
) -> Result<SchurianScheme> {
    let elements = enumerate_elements(group, element_limit)?;
    let n = elements.len();
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let gens = group.generators();
    let gens_inv: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
    let mut class = vec![usize::MAX; n];
    let mut classes = 0;
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = classes;
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            for (g, gi) in gens.iter().zip(&gens_inv) {
                let c = index[&g.compose(&elements[e]).compose(gi)];
                if class[c] == usize::MAX {
                    class[c] = classes;
                    stack.push(c);
                }
            }
        }
        classes += 1;
    }
    let inverses: Vec<Permutation> = elements.iter().map(|e| e.inverse()).collect();
    // (x, y) lies in the orbital of the class of e_x e_y⁻¹.
    let mut raw = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            raw[x * n + y] = class[index[&elements[x].compose(&inverses[y])]] as u32;
        }
    }
    Ok(SchurianScheme::assemble(n, raw))
}

/// `true` iff `m` is constant on every orbital, within [`STABLE_TOL`].
pub fn stable_matrix_check(scheme: &SchurianScheme, m: &DMatrix<Complex64>) -> Result<bool> {
    let n = scheme.point_count();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::input(format!(
            "matrix is {}x{} but the scheme has {n} points",
            m.nrows(),
            m.ncols()
        )));
    }
    let reference: Vec<Complex64> = (0..scheme.num_orbitals())
        .map(|i| m[(0, scheme.representative(i))])
        .collect();
    for x in 0..n {
        for y in 0..n {
            if (m[(x, y)] - reference[scheme.orbital(x, y)]).norm() > STABLE_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact variant of [`stable_matrix_check`] for matrices over any type with equality.
pub fn stable_matrix_check_exact<T: PartialEq>(
    scheme: &SchurianScheme,
    m: &[Vec<T>],
) -> Result<bool> {
    let n = scheme.point_count();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::input("matrix dimension does not match the scheme"));
    }
    for x in 0..n {
        for y in 0..n {
            let i = scheme.orbital(x, y);
            if m[x][y] != m[0][scheme.representative(i)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
