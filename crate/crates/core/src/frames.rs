//! Frames, Gram matrices, coherence bounds and the reductions that turn
//! projections in the adjacency algebra into line packings.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::{ActionLabel, GroupAction, Permutation, PermutationGroup};

/// Default tolerance for ETF certification.
pub const DEFAULT_ETF_TOL: f64 = 1e-8;
/// Default tolerance for column proportionality in projective reduction.
pub const DEFAULT_REDUCE_TOL: f64 = 1e-7;
/// Gap used when grouping off-diagonal moduli.
pub const MODULUS_GAP: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Float,
    Rational,
    RootOfUnity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Real,
    Complex,
}

/// A Hermitian matrix of inner products `⟨φ_j, φ_i⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<Complex64>,
    exactness: Exactness,
}

#[derive(Serialize, Deserialize)]
struct GramJson {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exactness: Option<Exactness>,
}

#[derive(Deserialize)]
struct RationalGramJson {
    n: usize,
    den: i64,
    entries: Vec<Vec<[i64; 2]>>,
}

impl GramMatrix {
    /// Wraps a square matrix, forcing exact Hermitian symmetry.
    ///
    /// # Panics
    /// If `entries` is not square.
    pub fn new(entries: DMatrix<Complex64>) -> Self {
        Self::with_exactness(entries, Exactness::Float)
    }

    pub fn with_exactness(entries: DMatrix<Complex64>, exactness: Exactness) -> Self {
        assert!(entries.is_square(), "Gram matrix must be square");
        let entries = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        GramMatrix { entries, exactness }
    }

    /// Checks that `entries` is Hermitian before wrapping it.
    pub fn try_new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::input(format!(
                "Gram matrix is {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let scale = entries.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        let skew = (&entries - entries.adjoint())
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if skew > 1e-12 * scale {
            return Err(Error::input(format!(
                "Gram matrix is not Hermitian (defect {skew:.3e})"
            )));
        }
        Ok(Self::new(entries))
    }

    /// Gram matrix `Φ*Φ` of the columns of `synthesis`.
    pub fn from_vectors(synthesis: &DMatrix<Complex64>) -> Self {
        Self::new(synthesis.adjoint() * synthesis)
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.entries.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn to_json(&self) -> Result<String> {
        let g = GramJson {
            n: self.n(),
            entries: self
                .entries
                .row_iter()
                .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            exactness: Some(self.exactness),
        };
        Ok(serde_json::to_string(&g)?)
    }

    /// Reads `{"n": .., "entries": [[[re, im], ..], ..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let g: GramJson = serde_json::from_str(text)?;
        let entries = dense_from_rows(g.n, &g.entries, |&[re, im]| Complex64::new(re, im))?;
        let mut out = Self::try_new(entries)?;
        out.exactness = g.exactness.unwrap_or(Exactness::Float);
        Ok(out)
    }

    /// Reads `{"n": .., "den": q, "entries": [[[re, im], ..], ..]}` with integer
    /// numerators, each entry being `(re + i·im) / q`.
    pub fn from_rational_json(text: &str) -> Result<Self> {
        let g: RationalGramJson = serde_json::from_str(text)?;
        if g.den == 0 {
            return Err(Error::input("zero denominator"));
        }
        let q = g.den as f64;
        let entries = dense_from_rows(g.n, &g.entries, |&[re, im]| {
            Complex64::new(re as f64 / q, im as f64 / q)
        })?;
        let mut out = Self::try_new(entries)?;
        out.exactness = Exactness::Rational;
        Ok(out)
    }
}

fn dense_from_rows<T>(
    n: usize,
    rows: &[Vec<T>],
    f: impl Fn(&T) -> Complex64,
) -> Result<DMatrix<Complex64>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::input(format!(
            "entries do not form a {n}x{n} matrix"
        )));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| f(&rows[i][j])))
}

/// Columns of `synthesis` are the frame vectors.
#[derive(Clone, Debug)]
pub struct FrameVectors {
    pub d: usize,
    pub n: usize,
    pub synthesis: DMatrix<Complex64>,
}

impl FrameVectors {
    pub fn gram(&self) -> GramMatrix {
        GramMatrix::from_vectors(&self.synthesis)
    }
}

fn spectral_radius(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Recovers frame vectors from a positive semidefinite Gram matrix.
///
/// Real Gram matrices yield real synthesis matrices.
pub fn vectors_from_gram(gram: &GramMatrix, tol: f64) -> Result<FrameVectors> {
    let n = gram.n();
    let (values, vectors): (Vec<f64>, DMatrix<Complex64>) = if gram.is_real(0.0) {
        let real = gram.entries.map(|z| z.re);
        let eig = SymmetricEigen::new(real);
        (
            eig.eigenvalues.iter().copied().collect(),
            eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
        )
    } else {
        let eig = SymmetricEigen::new(gram.entries.clone());
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let radius = spectral_radius(values.iter().copied());
    let cutoff = tol * radius.max(f64::MIN_POSITIVE);
    if let Some(neg) = values
        .iter()
        .copied()
        .filter(|&v| v < -cutoff)
        .reduce(f64::min)
    {
        return Err(Error::input(format!(
            "Gram matrix is not positive semidefinite (eigenvalue {neg:.3e})"
        )));
    }
    let mut keep: Vec<usize> = (0..n).filter(|&k| values[k] > cutoff).collect();
    keep.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let d = keep.len();
    let synthesis = DMatrix::from_fn(d, n, |row, col| {
        let k = keep[row];
        vectors[(col, k)].conj() * values[k].sqrt()
    });
    Ok(FrameVectors { d, n, synthesis })
}

/// Largest normalized off-diagonal modulus `|G_ij| / sqrt(G_ii G_jj)`.
pub fn coherence(gram: &GramMatrix) -> Result<f64> {
    let g = &gram.entries;
    let diag: Vec<f64> = (0..gram.n()).map(|i| g[(i, i)].re).collect();
    if let Some(i) = diag.iter().position(|&x| x <= 0.0) {
        return Err(Error::input(format!("diagonal entry {i} is not positive")));
    }
    let mut mu = 0.0f64;
    for i in 0..gram.n() {
        for j in 0..i {
            mu = mu.max(g[(i, j)].norm() / (diag[i] * diag[j]).sqrt());
        }
    }
    Ok(mu)
}

/// `sqrt((n - d) / (d (n - 1)))`.
pub fn welch_bound(n: usize, d: usize) -> Result<f64> {
    if n < 2 || d == 0 || d > n {
        return Err(Error::input(format!(
            "Welch bound needs 1 <= d <= n and n >= 2, got n={n}, d={d}"
        )));
    }
    let (n, d) = (n as f64, d as f64);
    Ok(((n - d) / (d * (n - 1.0))).sqrt())
}

/// Orthoplex and Levenstein bounds, each present only in its regime of validity.
pub fn secondary_bounds(n: usize, d: usize, field: Field) -> (Option<f64>, Option<f64>) {
    let applicable = match field {
        Field::Complex => n > d * d,
        Field::Real => n > d * (d + 1) / 2,
    };
    if !applicable || d == 0 {
        return (None, None);
    }
    let (nf, df) = (n as f64, d as f64);
    let orthoplex = 1.0 / df.sqrt();
    let lev = match field {
        Field::Complex => (2.0 * nf - df * df - df) / ((nf - df) * (df + 1.0)),
        Field::Real => (3.0 * nf - df * df - 2.0 * df) / ((nf - df) * (df + 2.0)),
    };
    (Some(orthoplex), (lev >= 0.0).then(|| lev.sqrt()))
}

/// `trace(G²) / trace(G)`, the scalar `c` with `G² = cG` when `G` is a multiple of a projection.
fn projection_scalar(g: &DMatrix<Complex64>) -> Option<f64> {
    let tr = g.trace().re;
    if tr.abs() < f64::MIN_POSITIVE {
        return None;
    }
    let tr2: f64 = g.iter().map(|z| z.norm_sqr()).sum();
    Some(tr2 / tr)
}

/// Whether the Gram matrix is a scalar multiple of a projection, within `tol`.
pub fn is_tight(gram: &GramMatrix, tol: f64) -> bool {
    let g = &gram.entries;
    let Some(c) = projection_scalar(g) else {
        return false;
    };
    let scale = c * g.camax().max(f64::MIN_POSITIVE);
    (g * g - g * Complex64::new(c, 0.0)).camax() <= tol * scale.max(1.0)
}

/// Equiangular tight frame test: multiple of a projection, constant diagonal,
/// constant off-diagonal modulus.
pub fn is_etf(gram: &GramMatrix, tol: f64) -> bool {
    let g = &gram.entries;
    let n = gram.n();
    if n == 0 {
        return false;
    }
    let d0 = g[(0, 0)].re;
    if d0 <= 0.0 || (0..n).any(|i| (g[(i, i)].re - d0).abs() > tol * d0) {
        return false;
    }
    if !is_tight(gram, tol) {
        return false;
    }
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        for j in 0..i {
            let m = g[(i, j)].norm();
            lo = lo.min(m);
            hi = hi.max(m);
        }
    }
    n == 1 || hi - lo <= tol * d0
}

/// Groups values whose consecutive gaps are at most `gap`, returning one
/// representative (the group mean) per cluster, sorted.
pub fn cluster_values(mut values: Vec<f64>, gap: f64) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some(c) if v - c.last().unwrap() <= gap => c.push(v),
            _ => out.push(vec![v]),
        }
    }
    out.iter()
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect()
}

/// Distinct normalized off-diagonal moduli, clustered with [`MODULUS_GAP`].
pub fn distinct_offdiag_moduli(gram: &GramMatrix) -> Result<Vec<f64>> {
    coherence(gram)?;
    let g = &gram.entries;
    let n = gram.n();
    let mut vals = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in 0..i {
            vals.push(g[(i, j)].norm() / (g[(i, i)].re * g[(j, j)].re).sqrt());
        }
    }
    Ok(cluster_values(vals, MODULUS_GAP))
}

/// Summary of a packing against the Welch, orthoplex and Levenstein bounds.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PackingReport {
    pub n: usize,
    pub d: usize,
    pub field: Field,
    pub coherence: f64,
    pub welch: f64,
    pub welch_met: bool,
    pub orthoplex: Option<f64>,
    pub orthoplex_applicable: bool,
    pub orthoplex_met: bool,
    pub levenstein: Option<f64>,
    pub levenstein_applicable: bool,
    pub levenstein_met: bool,
    pub is_etf: bool,
    pub is_tight: bool,
    pub distinct_offdiag_moduli: Vec<f64>,
}

/// Builds a [`PackingReport`]; the dimension is the numerical rank of the Gram matrix.
pub fn packing_report(gram: &GramMatrix, tol: f64) -> Result<PackingReport> {
    let n = gram.n();
    let coh = coherence(gram)?;
    let d = vectors_from_gram(gram, 1e-9)?.d;
    let field = if gram.is_real(1e-12) {
        Field::Real
    } else {
        Field::Complex
    };
    let welch = if n >= 2 { welch_bound(n, d)? } else { 0.0 };
    let (orthoplex, levenstein) = secondary_bounds(n, d, field);
    let met = |b: Option<f64>| b.is_some_and(|b| (coh - b).abs() <= tol);
    Ok(PackingReport {
        n,
        d,
        field,
        coherence: coh,
        welch,
        welch_met: (coh - welch).abs() <= tol,
        orthoplex,
        orthoplex_applicable: orthoplex.is_some(),
        orthoplex_met: met(orthoplex),
        levenstein,
        levenstein_applicable: levenstein.is_some(),
        levenstein_met: met(levenstein),
        is_etf: is_etf(gram, tol),
        is_tight: is_tight(gram, tol),
        distinct_offdiag_moduli: distinct_offdiag_moduli(gram)?,
    })
}

/// Result of identifying unimodularly proportional columns.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub gram: GramMatrix,
    /// For every original column, the index of its class representative.
    pub class_map: Vec<usize>,
    /// Representatives in increasing order; row/column `k` of `gram` is `representatives[k]`.
    pub representatives: Vec<usize>,
    /// Set when the classes do not all have the same size.
    pub unequal_classes: bool,
}

fn proportional(g: &DMatrix<Complex64>, i: usize, j: usize, tol: f64) -> bool {
    let scale = g[(i, i)].re;
    // column j = α column i forces G_ij = α G_ii
    if (g[(i, j)].norm() - scale).abs() > tol * scale {
        return false;
    }
    let alpha = g[(i, j)] / g[(i, i)];
    (0..g.nrows()).all(|k| (g[(k, j)] - alpha * g[(k, i)]).norm() <= tol * scale)
}

/// Identifies columns that are unimodular multiples of each other and keeps
/// the lowest-index column of every class.
pub fn projective_reduce(gram: &GramMatrix, tol: f64) -> Result<Reduction> {
    let g = &gram.entries;
    let n = gram.n();
    if n == 0 {
        return Err(Error::input("empty Gram matrix"));
    }
    let d0 = g[(0, 0)].re;
    if d0 <= 0.0 || (0..n).any(|i| (g[(i, i)].re - d0).abs() > tol * d0) {
        return Err(Error::input(
            "projective reduction needs a constant positive diagonal",
        ));
    }
    let mut class_map = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for (j, class) in class_map.iter_mut().enumerate() {
        if let Some(&r) = reps.iter().find(|&&r| proportional(g, r, j, tol)) {
            *class = r;
        } else {
            *class = j;
            reps.push(j);
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for &c in &class_map {
        *sizes.entry(c).or_default() += 1;
    }
    let first = sizes[&reps[0]];
    let unequal_classes = sizes.values().any(|&s| s != first);
    let reduced = DMatrix::from_fn(reps.len(), reps.len(), |a, b| g[(reps[a], reps[b])]);
    Ok(Reduction {
        gram: GramMatrix::with_exactness(reduced, gram.exactness),
        class_map,
        representatives: reps,
        unequal_classes,
    })
}

/// Off-diagonal moduli of `gram` between distinct classes, clustered.
pub fn between_class_moduli(gram: &GramMatrix, class_map: &[usize]) -> Vec<f64> {
    let g = &gram.entries;
    let n = gram.n();
    let mut vals = Vec::new();
    for i in 0..n {
        for j in 0..i {
            if class_map[i] != class_map[j] {
                vals.push(g[(i, j)].norm() / (g[(i, i)].re * g[(j, j)].re).sqrt());
            }
        }
    }
    cluster_values(vals, MODULUS_GAP)
}

/// `I − G` for a projection `G`.
pub fn naimark_complement(gram: &GramMatrix) -> Result<GramMatrix> {
    let g = &gram.entries;
    let defect = (g * g - g).camax();
    if defect > 1e-8 {
        return Err(Error::input(format!(
            "not a projection (defect {defect:.3e})"
        )));
    }
    let n = gram.n();
    Ok(GramMatrix::with_exactness(
        DMatrix::identity(n, n) - g,
        gram.exactness,
    ))
}

/// Elements of `Z_{m_1} × ⋯ × Z_{m_k}` in lexicographic order.
pub fn abelian_elements(moduli: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &m in moduli {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..m).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn check_moduli(moduli: &[u32]) -> Result<()> {
    if moduli.contains(&0) {
        return Err(Error::input("moduli must be positive"));
    }
    let order: u64 = moduli.iter().map(|&m| m as u64).product();
    if order > 1 << 14 {
        return Err(Error::resource(format!(
            "group of order {order} is too large"
        )));
    }
    Ok(())
}

fn check_subset(moduli: &[u32], subset: &[Vec<u32>]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::input("subset must be nonempty"));
    }
    for a in subset {
        if a.len() != moduli.len() || a.iter().zip(moduli).any(|(x, m)| x >= m) {
            return Err(Error::input(format!(
                "{a:?} is not an element of Z{moduli:?}"
            )));
        }
    }
    Ok(())
}

/// Character `α(g) = exp(2πi Σ α_k g_k / m_k)`.
pub fn character(moduli: &[u32], alpha: &[u32], g: &[u32]) -> Complex64 {
    let phase: f64 = moduli
        .iter()
        .zip(alpha.iter().zip(g))
        .map(|(&m, (&a, &x))| ((a as u64 * x as u64) % m as u64) as f64 / m as f64)
        .sum();
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
}

/// Harmonic frame projection `(𝒢_D)_{g,h} = (1/|G|) Σ_{α∈D} α(h) conj(α(g))`.
pub fn harmonic_gram(moduli: &[u32], subset: &[Vec<u32>]) -> Result<GramMatrix> {
    check_moduli(moduli)?;
    check_subset(moduli, subset)?;
    let elems = abelian_elements(moduli);
    let n = elems.len();
    let table: Vec<Vec<Complex64>> = subset
        .iter()
        .map(|a| elems.iter().map(|g| character(moduli, a, g)).collect())
        .collect();
    let entries = DMatrix::from_fn(n, n, |g, h| {
        table
            .iter()
            .map(|row| row[h] * row[g].conj())
            .sum::<Complex64>()
            / n as f64
    });
    Ok(GramMatrix::with_exactness(entries, Exactness::RootOfUnity))
}

/// Whether every nonzero element has the same number `λ` of representations
/// `a − b` with `a, b ∈ D`.
pub fn difference_set_check(moduli: &[u32], subset: &[Vec<u32>]) -> Result<(bool, Option<u64>)> {
    check_moduli(moduli)?;
    check_subset(moduli, subset)?;
    let elems = abelian_elements(moduli);
    let index = |g: &[u32]| {
        g.iter()
            .zip(moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    };
    let mut counts = vec![0u64; elems.len()];
    for a in subset {
        for b in subset {
            let diff: Vec<u32> = a
                .iter()
                .zip(b)
                .zip(moduli)
                .map(|((&x, &y), &m)| (x + m - y) % m)
                .collect();
            counts[index(&diff)] += 1;
        }
    }
    let mut nonzero = counts.iter().skip(1);
    let Some(&lambda) = nonzero.next() else {
        return Ok((true, None));
    };
    let ok = nonzero.all(|&c| c == lambda);
    Ok((ok, ok.then_some(lambda)))
}

fn rounded_key(values: impl Iterator<Item = Complex64>) -> Vec<(i64, i64)> {
    // -0.0 and 0.0 round to the same key
    let q = |x: f64| (x * 1e6).round() as i64;
    values.map(|z| (q(z.re), q(z.im))).collect()
}

fn check_unitary(m: &DMatrix<Complex64>, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::input("generator is not square"));
    }
    let defect = (m.adjoint() * m - DMatrix::identity(m.nrows(), m.nrows())).camax();
    if defect > tol {
        return Err(Error::input(format!(
            "generator is not unitary (defect {defect:.3e})"
        )));
    }
    Ok(())
}

/// All elements of the matrix group generated by `generators`, in breadth-first order.
pub fn matrix_group_closure(
    generators: &[DMatrix<Complex64>],
    order_cap: usize,
    tol: f64,
) -> Result<Vec<DMatrix<Complex64>>> {
    let Some(first) = generators.first() else {
        return Err(Error::input("no generators"));
    };
    let dim = first.nrows();
    for g in generators {
        if g.nrows() != dim {
            return Err(Error::input("generators have different sizes"));
        }
        check_unitary(g, tol)?;
    }
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let mut seen: HashMap<Vec<(i64, i64)>, usize> = HashMap::new();
    seen.insert(rounded_key(id.iter().copied()), 0);
    let mut elems = vec![id];
    let mut head = 0;
    while head < elems.len() {
        for g in generators {
            let p = g * &elems[head];
            let key = rounded_key(p.iter().copied());
            if let Some(&k) = seen.get(&key) {
                if (&elems[k] - &p).camax() > tol {
                    return Err(Error::numeric(
                        "matrix entries too close to the rounding grid",
                    ));
                }
                continue;
            }
            if elems.len() >= order_cap {
                return Err(Error::resource(format!(
                    "matrix group exceeds {order_cap} elements"
                )));
            }
            check_unitary(&p, tol.max(1e-9))?;
            seen.insert(key, elems.len());
            elems.push(p);
        }
        head += 1;
    }
    Ok(elems)
}

/// Distinct orbit vectors `gv` ordered by discovery.
pub fn matrix_group_orbit(
    generators: &[DMatrix<Complex64>],
    v: &DVector<Complex64>,
    order_cap: usize,
    tol: f64,
) -> Result<Vec<DVector<Complex64>>> {
    let group = matrix_group_closure(generators, order_cap, tol)?;
    if v.len() != group[0].nrows() {
        return Err(Error::input("vector length does not match the generators"));
    }
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for g in &group {
        let w = g * v;
        if seen
            .insert(rounded_key(w.iter().copied()), out.len())
            .is_none()
        {
            out.push(w);
        }
    }
    Ok(out)
}

/// Gram matrix of the orbit of `v` under the generated matrix group.
pub fn matrix_group_orbit_gram(
    generators: &[DMatrix<Complex64>],
    v: &DVector<Complex64>,
    order_cap: usize,
    tol: f64,
) -> Result<GramMatrix> {
    let orbit = matrix_group_orbit(generators, v, order_cap, tol)?;
    let synthesis = DMatrix::from_columns(&orbit);
    Ok(GramMatrix::from_vectors(&synthesis))
}

/// Permutation action of matrices on a finite set of vectors they preserve.
pub fn permutation_action_on_vectors(
    matrices: &[DMatrix<Complex64>],
    vectors: &[DVector<Complex64>],
    tol: f64,
) -> Result<GroupAction> {
    let index: HashMap<Vec<(i64, i64)>, usize> = vectors
        .iter()
        .enumerate()
        .map(|(k, w)| (rounded_key(w.iter().copied()), k))
        .collect();
    if index.len() != vectors.len() {
        return Err(Error::input("vectors are not distinct"));
    }
    let mut gens = Vec::with_capacity(matrices.len());
    for m in matrices {
        let mut images = Vec::with_capacity(vectors.len());
        for w in vectors {
            let image = m * w;
            let k = *index
                .get(&rounded_key(image.iter().copied()))
                .ok_or_else(|| Error::input("matrix does not permute the vectors"))?;
            if (&vectors[k] - &image).camax() > tol {
                return Err(Error::numeric(
                    "vector entries too close to the rounding grid",
                ));
            }
            images.push(k as u32);
        }
        gens.push(Permutation::new(images)?);
    }
    Ok(GroupAction::new(
        PermutationGroup::new(vectors.len(), gens)?,
        ActionLabel::Explicit,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> GramMatrix {
        let n = rows.len();
        GramMatrix::new(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(rows[i][j], 0.0)
        }))
    }

    fn simplex(n: usize) -> GramMatrix {
        GramMatrix::new(DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64, 0.0)
        }))
    }

    #[test]
    fn welch_values() {
        assert!((welch_bound(28, 7).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((welch_bound(64, 8).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(welch_bound(5, 5).unwrap(), 0.0);
        assert!(welch_bound(1, 1).is_err());
    }

    #[test]
    fn secondary_bound_regimes() {
        let (o, l) = secondary_bounds(12, 4, Field::Real);
        assert!((o.unwrap() - 0.5).abs() < 1e-15 && (l.unwrap() - 0.5).abs() < 1e-15);
        let (o, l) = secondary_bounds(6, 2, Field::Complex);
        let s = 0.5f64.sqrt();
        assert!((o.unwrap() - s).abs() < 1e-15 && (l.unwrap() - s).abs() < 1e-15);
        assert_eq!(secondary_bounds(28, 7, Field::Real), (None, None));
    }

    #[test]
    fn trivial_frames() {
        let j3 = real(&[&[1.0 / 3.0; 3], &[1.0 / 3.0; 3], &[1.0 / 3.0; 3]]);
        let f = vectors_from_gram(&j3, 1e-9).unwrap();
        assert_eq!(f.d, 1);
        assert!(f
            .synthesis
            .iter()
            .all(|z| (z.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-12));
        let id = GramMatrix::new(DMatrix::identity(4, 4));
        assert_eq!(vectors_from_gram(&id, 1e-9).unwrap().d, 4);
        assert!(is_etf(&id, 1e-9));
        assert!(is_etf(&simplex(5), 1e-9));
        assert!(vectors_from_gram(&real(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-9).is_err());
    }

    #[test]
    fn reduction_of_antipodal_pair() {
        let g = real(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        let r = projective_reduce(&g, DEFAULT_REDUCE_TOL).unwrap();
        assert_eq!(r.gram.n(), 1);
        assert_eq!(r.class_map, vec![0, 0]);
        let id = GramMatrix::new(DMatrix::identity(3, 3));
        assert_eq!(projective_reduce(&id, DEFAULT_REDUCE_TOL).unwrap().gram, id);
    }

    #[test]
    fn naimark_pairs() {
        let n = 4;
        let j = GramMatrix::new(DMatrix::from_element(n, n, Complex64::new(0.25, 0.0)));
        let c = naimark_complement(&j).unwrap();
        assert!((c.entries() - simplex(4).entries()).camax() < 1e-15);
        let zero = naimark_complement(&GramMatrix::new(DMatrix::identity(3, 3))).unwrap();
        assert_eq!(zero.entries().camax(), 0.0);
        assert!(naimark_complement(&real(&[&[2.0]])).is_err());
    }

    #[test]
    fn harmonic_examples() {
        let g = harmonic_gram(&[3], &[vec![0]]).unwrap();
        assert!(g
            .entries()
            .iter()
            .all(|z| (z - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-12));
        let g = harmonic_gram(&[3], &[vec![0], vec![1]]).unwrap();
        assert!(is_etf(&g, 1e-9));
        assert!((coherence(&g).unwrap() - 0.5).abs() < 1e-12);
        let qr = [vec![1], vec![2], vec![4]];
        let g = harmonic_gram(&[7], &qr).unwrap();
        assert!(is_etf(&g, 1e-9));
        assert!((coherence(&g).unwrap() - 2f64.sqrt() / 3.0).abs() < 1e-12);
        assert!(harmonic_gram(&[7], &[vec![7]]).is_err());
    }

    #[test]
    fn difference_sets() {
        assert_eq!(
            difference_set_check(&[7], &[vec![1], vec![2], vec![4]]).unwrap(),
            (true, Some(1))
        );
        assert_eq!(
            difference_set_check(&[4], &[vec![0], vec![1]]).unwrap(),
            (false, None)
        );
        let all: Vec<Vec<u32>> = abelian_elements(&[2, 3]);
        assert_eq!(
            difference_set_check(&[2, 3], &all).unwrap(),
            (true, Some(6))
        );
    }

    #[test]
    fn orbit_grams() {
        let v = DVector::from_vec(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
        let id = DMatrix::<Complex64>::identity(2, 2);
        let g = matrix_group_orbit_gram(std::slice::from_ref(&id), &v, 10, 1e-9).unwrap();
        assert_eq!(g.n(), 1);
        assert!((g.entries()[(0, 0)].re - 1.0).abs() < 1e-12);
        let g = matrix_group_orbit_gram(&[-id.clone()], &v, 10, 1e-9).unwrap();
        assert_eq!(g.n(), 2);
        assert!((g.entries()[(0, 1)].re + 1.0).abs() < 1e-12);
        let bad = id * Complex64::new(2.0, 0.0);
        assert!(matches!(
            matrix_group_orbit_gram(&[bad], &v, 10, 1e-9),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = simplex(3);
        let back = GramMatrix::from_json(&g.to_json().unwrap()).unwrap();
        assert!((back.entries() - g.entries()).camax() < 1e-15);
    }
}
