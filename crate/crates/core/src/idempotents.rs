//! Primitive central idempotents of the adjacency algebra of a Schurian scheme.
//!
//! All spectral work happens inside the `r`-dimensional algebra spanned by the
//! orbital matrices `A_i`, using its left-regular representation built from
//! the intersection numbers. In the orthonormal basis `A_i / sqrt(n·v_i)` the
//! adjoint of the algebra matches the conjugate transpose, so self-adjoint
//! central elements act by Hermitian matrices. Dense `n × n` projections are
//! only assembled on request.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational_nullspace;
use crate::frames::GramMatrix;
use crate::scheme::{is_commutative, SchurianScheme};

/// Default relative gap used to separate eigenvalue clusters.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Largest number of orbitals handled; the intersection table has `r³` entries.
pub const MAX_ORBITALS: usize = 512;

const RESEEDS: u64 = 3;

/// Decomposition `I = E_0 + ⋯ + E_r` into primitive central idempotents,
/// with `E_j = Σ_i c[j][i] A_i`.
#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    scheme: SchurianScheme,
    pub ranks: Vec<usize>,
    pub coefficients: Vec<Vec<Complex64>>,
    /// Degree of the irreducible constituent, `None` when it could not be pinned
    /// to an integer.
    pub degrees: Vec<Option<usize>>,
    /// Multiplicity of the constituent in the permutation representation.
    pub multiplicities: Vec<usize>,
    pub trivial_index: usize,
}

/// JSON export of a decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionExport {
    pub ranks: Vec<usize>,
    pub m: Vec<Option<usize>>,
    pub n: Vec<usize>,
    pub coefficients: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projections: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

impl IsotypicDecomposition {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn scheme(&self) -> &SchurianScheme {
        &self.scheme
    }

    /// Dense matrix of `E_j`.
    pub fn projection(&self, j: usize) -> DMatrix<Complex64> {
        self.scheme.combination(&self.coefficients[j])
    }

    pub fn projections(&self) -> Vec<DMatrix<Complex64>> {
        (0..self.len()).map(|j| self.projection(j)).collect()
    }

    pub fn to_export(&self, with_projections: bool) -> DecompositionExport {
        let pair = |z: &Complex64| [z.re, z.im];
        DecompositionExport {
            ranks: self.ranks.clone(),
            m: self.degrees.clone(),
            n: self.multiplicities.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|row| row.iter().map(pair).collect())
                .collect(),
            projections: with_projections.then(|| {
                self.projections()
                    .iter()
                    .map(|m| m.row_iter().map(|r| r.iter().map(pair).collect()).collect())
                    .collect()
            }),
        }
    }
}

/// Structure-constant representation of the adjacency algebra.
struct Algebra<'a> {
    scheme: &'a SchurianScheme,
    r: usize,
    scale: Vec<f64>,
}

impl<'a> Algebra<'a> {
    fn new(scheme: &'a SchurianScheme) -> Self {
        let n = scheme.point_count() as f64;
        let scale = scheme
            .valencies()
            .iter()
            .map(|&v| (n * v as f64).sqrt())
            .collect();
        Algebra {
            scheme,
            r: scheme.num_orbitals(),
            scale,
        }
    }

    /// Left multiplication by `Σ z_i A_i` in the orthonormal basis.
    fn left_regular(&self, z: &[Complex64]) -> DMatrix<Complex64> {
        let r = self.r;
        let mut m = DMatrix::zeros(r, r);
        for (i, zi) in z.iter().enumerate() {
            if zi.norm() == 0.0 {
                continue;
            }
            for j in 0..r {
                for k in 0..r {
                    let p = self.scheme.intersection_number(i, j, k);
                    if p != 0 {
                        m[(k, j)] += zi * (p as f64) * self.scale[k] / self.scale[j];
                    }
                }
            }
        }
        (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
    }

    fn multiply(&self, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let r = self.r;
        let mut out = vec![Complex64::zero(); r];
        for (i, ai) in a.iter().enumerate() {
            if ai.norm() == 0.0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.norm() == 0.0 {
                    continue;
                }
                let ab = ai * bj;
                for (k, o) in out.iter_mut().enumerate() {
                    let p = self.scheme.intersection_number(i, j, k);
                    if p != 0 {
                        *o += ab * p as f64;
                    }
                }
            }
        }
        out
    }

    /// Self-adjoint spanning set of the center, from an exact rational basis.
    fn hermitian_center_basis(&self) -> Vec<Vec<Complex64>> {
        let r = self.r;
        let rational: Vec<Vec<BigRational>> = if is_commutative(self.scheme) {
            (0..r)
                .map(|i| {
                    let mut v = vec![BigRational::zero(); r];
                    v[i] = BigRational::from_integer(BigInt::from(1));
                    v
                })
                .collect()
        } else {
            let rows = (0..r).flat_map(|j| {
                (0..r).map(move |k| {
                    (0..r)
                        .map(|i| {
                            let d = self.scheme.intersection_number(i, j, k) as i64
                                - self.scheme.intersection_number(j, i, k) as i64;
                            BigRational::from_integer(BigInt::from(d))
                        })
                        .collect::<Vec<_>>()
                })
            });
            rational_nullspace(rows, r)
        };
        let t = self.scheme.transpose_pairing();
        let mut out = Vec::new();
        for b in rational {
            let b: Vec<f64> = b.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
            let sym: Vec<Complex64> = (0..r)
                .map(|k| Complex64::new(b[k] + b[t[k]], 0.0))
                .collect();
            let anti: Vec<Complex64> = (0..r)
                .map(|k| Complex64::new(0.0, b[k] - b[t[k]]))
                .collect();
            for h in [sym, anti] {
                if h.iter().any(|z| z.norm() > 0.0) {
                    out.push(h);
                }
            }
        }
        out
    }
}

/// Upper bound on the spectral radius: the largest absolute row sum.
fn norm_bound(h: &DMatrix<Complex64>) -> f64 {
    h.row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Splits the columns of an orthonormal frame `v` into eigenspaces of `V* H V`.
/// Eigenvalues closer than `tol·‖H‖` are kept together.
fn split(v: &DMatrix<Complex64>, h: &DMatrix<Complex64>, tol: f64) -> Vec<DMatrix<Complex64>> {
    if v.ncols() <= 1 {
        return vec![v.clone()];
    }
    let small = v.adjoint() * h * v;
    let small = (&small + small.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(small);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let gap = tol * norm_bound(h).max(f64::MIN_POSITIVE);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (pos, &idx) in order.iter().enumerate() {
        let new_group = pos == 0 || eig.eigenvalues[idx] - eig.eigenvalues[order[pos - 1]] > gap;
        if new_group {
            groups.push(Vec::new());
        }
        groups.last_mut().unwrap().push(idx);
    }
    groups
        .into_iter()
        .map(|g| {
            let local = DMatrix::from_fn(eig.eigenvectors.nrows(), g.len(), |row, c| {
                eig.eigenvectors[(row, g[c])]
            });
            v * local
        })
        .collect()
}

fn attempt(
    alg: &Algebra,
    basis: &[Vec<Complex64>],
    seed: u64,
    tol: f64,
) -> Result<Vec<(usize, Vec<Complex64>)>> {
    let r = alg.r;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = vec![Complex64::zero(); r];
    for b in basis {
        let w: f64 = rng.gen_range(-1.0..1.0);
        for (zi, bi) in z.iter_mut().zip(b) {
            *zi += bi * w;
        }
    }
    let identity = DMatrix::<Complex64>::identity(r, r);
    let mut clusters = split(&identity, &alg.left_regular(&z), tol);
    for b in basis {
        let h = alg.left_regular(b);
        clusters = clusters.iter().flat_map(|v| split(v, &h, tol)).collect();
    }
    let mut e0 = DVector::<Complex64>::zeros(r);
    e0[0] = Complex64::new(alg.scale[0], 0.0);
    let mut out = Vec::with_capacity(clusters.len());
    for v in &clusters {
        let proj = v * (v.adjoint() * &e0);
        let coeffs: Vec<Complex64> = (0..r).map(|k| proj[k] / alg.scale[k]).collect();
        out.push((v.ncols(), coeffs));
    }
    // each cluster must be an idempotent of the algebra
    let mut worst = 0.0f64;
    let mut total = vec![Complex64::zero(); r];
    for (_, c) in &out {
        let sq = alg.multiply(c, c);
        worst = worst.max(
            sq.iter()
                .zip(c)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        );
        for (t, x) in total.iter_mut().zip(c) {
            *t += x;
        }
    }
    total[0] -= 1.0;
    worst = worst.max(total.iter().map(|x| x.norm()).fold(0.0, f64::max));
    let limit = 1e-6_f64.max(tol);
    if worst > limit {
        return Err(Error::numeric(format!(
            "spectral clusters are not idempotent (residual {worst:.3e} with {} clusters)",
            out.len()
        )));
    }
    Ok(out)
}

fn fingerprint(c: &[Complex64]) -> Vec<(i64, i64)> {
    let q = |x: f64| (x * 1e6).round() as i64;
    c.iter().map(|z| (q(z.re), q(z.im))).collect()
}

/// Primitive central idempotents of the adjacency algebra of `scheme`.
///
/// The result does not depend on `seed` beyond floating-point noise; the seed
/// only drives the random central element used to separate the spectrum.
pub fn central_primitive_idempotents(
    scheme: &SchurianScheme,
    seed: u64,
    tol: f64,
) -> Result<IsotypicDecomposition> {
    if scheme.num_orbitals() > MAX_ORBITALS {
        return Err(Error::resource(format!(
            "{} orbitals exceeds the limit of {MAX_ORBITALS}",
            scheme.num_orbitals()
        )));
    }
    let alg = Algebra::new(scheme);
    let basis = alg.hermitian_center_basis();
    let mut last_err = None;
    let mut found = None;
    for k in 0..RESEEDS {
        match attempt(&alg, &basis, seed.wrapping_add(k), tol) {
            Ok(v) => {
                found = Some(v);
                break;
            }
            Err(e) => last_err = Some(e),
        }
    }
    let Some(clusters) = found else {
        return Err(last_err.unwrap_or_else(|| Error::numeric("decomposition failed")));
    };

    let n = scheme.point_count() as f64;
    let mut parts = Vec::with_capacity(clusters.len());
    for (dim, coeffs) in clusters {
        let trace = n * coeffs[0].re;
        let rank = trace.round();
        if (trace - rank).abs() > 1e-6 || rank < 1.0 {
            return Err(Error::numeric(format!(
                "idempotent trace {trace} is not a positive integer"
            )));
        }
        let rank = rank as usize;
        let root = (dim as f64).sqrt().round() as usize;
        let multiplicity = if root * root == dim { root } else { 0 };
        let degree =
            (multiplicity > 0 && rank.is_multiple_of(multiplicity)).then(|| rank / multiplicity);
        parts.push((
            rank,
            fingerprint(&coeffs),
            coeffs,
            degree,
            multiplicity.max(1),
        ));
    }
    parts.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let target = 1.0 / n;
    let trivial_index = parts
        .iter()
        .position(|p| p.2.iter().all(|c| (c - target).norm() < 1e-6))
        .ok_or_else(|| Error::numeric("no trivial idempotent found"))?;
    Ok(IsotypicDecomposition {
        scheme: scheme.clone(),
        ranks: parts.iter().map(|p| p.0).collect(),
        degrees: parts.iter().map(|p| p.3).collect(),
        multiplicities: parts.iter().map(|p| p.4).collect(),
        coefficients: parts.into_iter().map(|p| p.2).collect(),
        trivial_index,
    })
}

/// Values `ω_j(a_i) = c[j][i] / c[j][0]` of the spherical function attached to `E_j`.
pub fn spherical_function_values(dec: &IsotypicDecomposition, j: usize) -> Vec<Complex64> {
    let c = &dec.coefficients[j];
    c.iter().map(|x| x / c[0]).collect()
}

/// Coefficients of `𝒢_D = Σ_{j ∈ D} E_j` over the orbital basis.
pub fn subset_coefficients(
    dec: &IsotypicDecomposition,
    subset: &[usize],
) -> Result<Vec<Complex64>> {
    let r = dec.scheme.num_orbitals();
    let mut out = vec![Complex64::zero(); r];
    for &j in subset {
        let c = dec.coefficients.get(j).ok_or_else(|| {
            Error::input(format!(
                "constituent index {j} out of range (have {})",
                dec.len()
            ))
        })?;
        for (o, x) in out.iter_mut().zip(c) {
            *o += x;
        }
    }
    Ok(out)
}

/// The orthogonal projection `𝒢_D = Σ_{j ∈ D} E_j`.
pub fn projection_from_subset(dec: &IsotypicDecomposition, subset: &[usize]) -> Result<GramMatrix> {
    let coeffs = subset_coefficients(dec, subset)?;
    Ok(GramMatrix::new(dec.scheme.combination(&coeffs)))
}

/// True when every constituent occurs once, i.e. the pair is a Gelfand pair.
pub fn multiplicity_free(dec: &IsotypicDecomposition) -> bool {
    dec.multiplicities.iter().all(|&n| n == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{regular_action, GroupAction, PermutationGroup};
    use crate::scheme::scheme_from_action;

    fn natural_s3() -> SchurianScheme {
        let g = PermutationGroup::from_cycle_strings(3, &["(0 1 2)", "(0 1)"]).unwrap();
        scheme_from_action(&GroupAction::natural(g)).unwrap()
    }

    #[test]
    fn natural_s3_splits_into_trivial_and_standard() {
        let dec = central_primitive_idempotents(&natural_s3(), 1, DEFAULT_TOL).unwrap();
        assert_eq!(dec.ranks, vec![1, 2]);
        assert_eq!(dec.trivial_index, 0);
        let e0 = dec.projection(0);
        assert!(e0
            .iter()
            .all(|z| (z - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-12));
        assert!(multiplicity_free(&dec));
        assert!(spherical_function_values(&dec, 0)
            .iter()
            .all(|z| (z - 1.0).norm() < 1e-12));
    }

    #[test]
    fn z3_regular_is_the_fourier_basis() {
        let g = PermutationGroup::from_cycle_strings(3, &["(0 1 2)"]).unwrap();
        let reg = regular_action(&g, 100).unwrap();
        let s = scheme_from_action(&reg).unwrap();
        let dec = central_primitive_idempotents(&s, 7, DEFAULT_TOL).unwrap();
        assert_eq!(dec.ranks, vec![1, 1, 1]);
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let order = cyclic_positions(&reg);
        let chi = |k: usize, x: usize| w.powu((k * order[x]) as u32);
        for j in 0..3 {
            let e = dec.projection(j);
            let found = (0..3).any(|k| {
                (0..3).all(|x| {
                    (0..3).all(|y| (e[(x, y)] - chi(k, x) * chi(k, y).conj() / 3.0).norm() < 1e-9)
                })
            });
            assert!(found, "projection {j} is not a Fourier projection");
        }
        // nontrivial spherical values are conjugate characters
        for j in (0..3).filter(|&j| j != dec.trivial_index) {
            let vals = spherical_function_values(&dec, j);
            let s = dec.scheme();
            let ok = (1..3).any(|k| {
                (0..3).all(|i| {
                    let y = s.representative(i);
                    (vals[i] - chi(k, y).conj() * chi(k, 0)).norm() < 1e-9
                })
            });
            assert!(ok);
        }
    }

    fn cyclic_positions(reg: &GroupAction) -> Vec<usize> {
        // exponent of the generator giving each regular point
        let gen = &reg.group.generators()[0];
        let mut pos = vec![0; reg.point_count];
        let mut x = 0;
        for k in 0..reg.point_count {
            pos[x] = k;
            x = gen.apply(x);
        }
        pos
    }

    #[test]
    fn s3_regular_is_not_multiplicity_free() {
        let g = PermutationGroup::from_cycle_strings(3, &["(0 1 2)", "(0 1)"]).unwrap();
        let s = scheme_from_action(&regular_action(&g, 100).unwrap()).unwrap();
        let dec = central_primitive_idempotents(&s, 3, DEFAULT_TOL).unwrap();
        assert_eq!(dec.ranks, vec![1, 1, 4]);
        assert_eq!(dec.multiplicities, vec![1, 1, 2]);
        assert_eq!(dec.degrees, vec![Some(1), Some(1), Some(2)]);
        assert!(!multiplicity_free(&dec));
    }

    #[test]
    fn subset_out_of_range_is_input_error() {
        let dec = central_primitive_idempotents(&natural_s3(), 1, DEFAULT_TOL).unwrap();
        assert!(matches!(
            projection_from_subset(&dec, &[5]),
            Err(Error::Input(_))
        ));
        let all = projection_from_subset(&dec, &[0, 1]).unwrap();
        assert!((all.entries() - DMatrix::<Complex64>::identity(3, 3)).camax() < 1e-12);
    }
}
