//! Concrete groups and matrices used by the examples, tests and CLI.
//!
//! Groups are built from explicit generators; the published Gram matrices
//! are shipped as JSON under `fixtures/` and embedded at compile time.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::Result;
use crate::frames::{matrix_group_orbit, permutation_action_on_vectors, GramMatrix};
use crate::permgroup::{pair_index, ActionLabel, GroupAction, Permutation, PermutationGroup};

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::new((0..n).map(|x| f(x) as u32).collect()).expect("fixture map is a bijection")
}

/// `AGL(3, 2)` acting on the 28 affine lines of `F₂³`.
///
/// A line over `F₂` is a two-point set `{a, b}`; lines are indexed by the
/// lexicographic order of `(a, b)` with `a < b`.
pub fn agl_lines() -> GroupAction {
    let lines: Vec<(usize, usize)> = (0..8)
        .flat_map(|a| (a + 1..8).map(move |b| (a, b)))
        .collect();
    let index = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        lines.iter().position(|&l| l == (a, b)).unwrap()
    };
    // translation by e0, cyclic coordinate shift, transvection x1 += x0
    let point_maps: [fn(usize) -> usize; 3] = [
        |x| x ^ 1,
        |x| ((x << 1) & 0b110) | (x >> 2),
        |x| x ^ ((x & 1) << 1),
    ];
    let gens = point_maps
        .iter()
        .map(|f| {
            perm_from_fn(28, |k| {
                let (a, b) = lines[k];
                index(f(a), f(b))
            })
        })
        .collect();
    let names = lines
        .iter()
        .map(|(a, b)| format!("{{{a:03b},{b:03b}}}"))
        .collect();
    GroupAction::new(
        PermutationGroup::new(28, gens).unwrap(),
        ActionLabel::Explicit,
    )
    .with_names(names)
}

/// Multiplication in `F₈ = F₂[t]/(t³ + t + 1)`, elements as 3-bit integers.
pub fn f8_mul(a: u8, b: u8) -> u8 {
    let mut r: u16 = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= (a as u16) << i;
        }
    }
    for deg in (3..5).rev() {
        if r >> deg & 1 == 1 {
            r ^= 0b1011 << (deg - 3);
        }
    }
    r as u8
}

pub fn f8_inv(a: u8) -> u8 {
    assert!(a != 0);
    (1..8).find(|&b| f8_mul(a, b) == 1).unwrap()
}

/// `SL(2, 8)` acting on the 9 points of the projective line over `F₈`.
/// Point `t < 8` is `[t : 1]`, point 8 is `[1 : 0]`.
pub fn sl2_f8_projective_line() -> GroupAction {
    const INF: usize = 8;
    // Möbius map of [[a, b], [c, d]]
    let mobius = |m: [u8; 4]| {
        move |x: usize| -> usize {
            let [a, b, c, d] = m;
            let (num, den) = if x == INF {
                (a, c)
            } else {
                let t = x as u8;
                (f8_mul(a, t) ^ b, f8_mul(c, t) ^ d)
            };
            if den == 0 {
                INF
            } else {
                f8_mul(num, f8_inv(den)) as usize
            }
        }
    };
    let gens = vec![
        perm_from_fn(9, mobius([1, 1, 0, 1])),
        perm_from_fn(9, mobius([0, 1, 1, 0])),
        perm_from_fn(9, mobius([2, 0, 0, f8_inv(2)])),
    ];
    let names = (0..9)
        .map(|x| {
            if x == INF {
                "inf".to_string()
            } else {
                x.to_string()
            }
        })
        .collect();
    GroupAction::natural(PermutationGroup::new(9, gens).unwrap()).with_names(names)
}

/// `M₁₁` acting 3-transitively on 12 points, as the automorphism group of the
/// Hadamard 3-(12, 6, 2) design built from the quadratic residues mod 11.
/// Points `0..11` are `Z₁₁`, point 11 is the point at infinity.
pub fn mathieu_m11_on_12() -> GroupAction {
    let gens = vec![
        perm_from_fn(12, |x| if x == 11 { 11 } else { (x + 1) % 11 }),
        perm_from_fn(12, |x| if x == 11 { 11 } else { (3 * x) % 11 }),
        Permutation::new(vec![1, 2, 4, 3, 10, 9, 7, 8, 6, 5, 11, 0]).unwrap(),
    ];
    GroupAction::natural(PermutationGroup::new(12, gens).unwrap())
}

/// Blocks of the Hadamard 3-(12, 6, 2) design preserved by [`mathieu_m11_on_12`].
pub fn hadamard_design_blocks() -> Vec<Vec<usize>> {
    const QR: [usize; 5] = [1, 3, 4, 5, 9];
    let mut blocks = Vec::new();
    for t in 0..11 {
        let mut with_inf: Vec<usize> = QR.iter().map(|q| (t + q) % 11).collect();
        let mut rest: Vec<usize> = (0..11).filter(|x| !with_inf.contains(x)).collect();
        with_inf.push(11);
        with_inf.sort();
        rest.sort();
        blocks.push(with_inf);
        blocks.push(rest);
    }
    blocks.sort();
    blocks
}

/// Coordinate-wise action on ordered pairs, as used for the SL(2, 8) and M₁₁ examples.
pub fn pairs_of(action: &GroupAction) -> GroupAction {
    crate::permgroup::induced_pair_action(action).expect("at least two points")
}

pub const AGL_7X28_JSON: &str = include_str!("../fixtures/agl_7x28.json");
pub const MUB_4X12_JSON: &str = include_str!("../fixtures/mub_4x12.json");
pub const MUB_2X6_JSON: &str = include_str!("../fixtures/mub_2x6.json");

/// Primitive idempotent of AGL(3, 2) on lines: a 7 × 28 real ETF Gram matrix.
pub fn agl_7x28() -> GramMatrix {
    GramMatrix::from_rational_json(AGL_7X28_JSON).expect("embedded fixture")
}

/// Three mutually unbiased bases in R⁴: a 12 × 12 Gram matrix.
pub fn mub_4x12() -> GramMatrix {
    GramMatrix::from_rational_json(MUB_4X12_JSON).expect("embedded fixture")
}

/// Three mutually unbiased bases in C²: a 6 × 6 Gram matrix.
pub fn mub_2x6() -> GramMatrix {
    GramMatrix::from_rational_json(MUB_2X6_JSON).expect("embedded fixture")
}

/// Unordered-pair index helper shared with the pair fixtures.
pub fn ordered_pair(n: usize, i: usize, j: usize) -> usize {
    pair_index(n, i, j)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn small(rows: &[[Complex64; 2]; 2]) -> DMatrix<Complex64> {
    DMatrix::from_fn(2, 2, |i, j| rows[i][j])
}

/// The Pauli-type matrices `T` (shift) and `M` (sign).
pub fn pauli_t() -> DMatrix<Complex64> {
    small(&[[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
}

pub fn pauli_m() -> DMatrix<Complex64> {
    small(&[[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
}

/// Threefold Kronecker product `a ⊗ b ⊗ c`.
pub fn tensor3(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    c: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    a.kronecker(b).kronecker(c)
}

/// Generators of the three-qubit group `K` of order 256: `iI₈` and the
/// tensor products with a single `T` or `M` factor.
pub fn three_qubit_generators() -> Vec<DMatrix<Complex64>> {
    let id = DMatrix::<Complex64>::identity(2, 2);
    let mut gens = vec![DMatrix::<Complex64>::identity(8, 8) * c(0.0, 1.0)];
    for slot in 0..3 {
        for p in [pauli_t(), pauli_m()] {
            let mut f = [id.clone(), id.clone(), id.clone()];
            f[slot] = p;
            gens.push(tensor3(&f[0], &f[1], &f[2]));
        }
    }
    gens
}

/// The fiducial vector `(1/√6)(1+i, 0, −1, 1, −i, −1, 0, 0)`.
pub fn zauner_vector() -> DVector<Complex64> {
    let s = 1.0 / 6f64.sqrt();
    DVector::from_vec(vec![
        c(1.0, 1.0),
        c(0.0, 0.0),
        c(-1.0, 0.0),
        c(1.0, 0.0),
        c(0.0, -1.0),
        c(-1.0, 0.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
    ]) * c(s, 0.0)
}

fn scaled_unitary(rows: [[(i8, i8); 8]; 8]) -> DMatrix<Complex64> {
    let w = Complex64::from_polar(1.0, std::f64::consts::PI / 4.0) / 2f64.sqrt();
    DMatrix::from_fn(8, 8, |i, j| c(rows[i][j].0 as f64, rows[i][j].1 as f64) * w)
}

/// Two unitaries fixing [`zauner_vector`] that generate a copy of `PSU(3, 3)`
/// normalizing the three-qubit group.
pub fn zauner_stabilizer_generators() -> [DMatrix<Complex64>; 2] {
    const O: (i8, i8) = (0, 0);
    const P: (i8, i8) = (1, 0);
    const N: (i8, i8) = (-1, 0);
    const I: (i8, i8) = (0, 1);
    const J: (i8, i8) = (0, -1);
    let u = scaled_unitary([
        [O, O, N, O, I, O, O, O],
        [O, O, J, O, P, O, O, O],
        [O, O, O, I, O, P, O, O],
        [O, O, O, P, O, I, O, O],
        [N, O, O, O, O, O, I, O],
        [I, O, O, O, O, O, N, O],
        [O, I, O, O, O, O, O, P],
        [O, N, O, O, O, O, O, J],
    ]);
    let v = scaled_unitary([
        [O, O, O, O, I, N, O, O],
        [O, O, O, O, J, N, O, O],
        [I, P, O, O, O, O, O, O],
        [J, P, O, O, O, O, O, O],
        [O, O, I, N, O, O, O, O],
        [O, O, J, N, O, O, O, O],
        [O, O, O, O, O, O, I, P],
        [O, O, O, O, O, O, J, P],
    ]);
    [u, v]
}

/// The 256 vectors `{gv : g ∈ K}` together with the permutation action of
/// `K ⋊ ⟨U, V⟩` on them (order 1,548,288). Point 0 is the fiducial vector.
pub fn hoggar_action() -> Result<(crate::permgroup::GroupAction, Vec<DVector<Complex64>>)> {
    let k = three_qubit_generators();
    let vectors = matrix_group_orbit(&k, &zauner_vector(), 1024, 1e-9)?;
    let mut all = k;
    all.extend(zauner_stabilizer_generators());
    let action = permutation_action_on_vectors(&all, &vectors, 1e-9)?;
    Ok((action, vectors))
}

/// Matrices labelling the columns of the spherical-function table for the
/// Hoggar example: `I, M⊗I⊗I, T⊗I⊗I, TM⊗I⊗I, I⊗TM⊗I, −I, iI, −iI`.
pub fn hoggar_table_columns() -> Vec<DMatrix<Complex64>> {
    let id = DMatrix::<Complex64>::identity(2, 2);
    let tm = pauli_t() * pauli_m();
    let i8 = DMatrix::<Complex64>::identity(8, 8);
    vec![
        i8.clone(),
        tensor3(&pauli_m(), &id, &id),
        tensor3(&pauli_t(), &id, &id),
        tensor3(&tm, &id, &id),
        tensor3(&id, &tm, &id),
        -i8.clone(),
        i8.clone() * c(0.0, 1.0),
        i8 * c(0.0, -1.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::is_transitive;
    use num_bigint::BigUint;

    #[test]
    fn f8_field_axioms() {
        for a in 1..8u8 {
            assert_eq!(f8_mul(a, f8_inv(a)), 1);
            for b in 0..8u8 {
                for c in 0..8u8 {
                    assert_eq!(f8_mul(a, b ^ c), f8_mul(a, b) ^ f8_mul(a, c));
                    assert_eq!(f8_mul(f8_mul(a, b), c), f8_mul(a, f8_mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn agl_fixture() {
        let a = agl_lines();
        assert!(is_transitive(&a));
        assert_eq!(a.group.order(), BigUint::from(1344u32));
    }

    #[test]
    fn sl2_f8_fixture() {
        let a = sl2_f8_projective_line();
        assert_eq!(a.group.order(), BigUint::from(504u32));
        let p = pairs_of(&a);
        assert_eq!(p.point_count, 72);
        assert!(is_transitive(&p));
    }

    #[test]
    fn m11_fixture() {
        let a = mathieu_m11_on_12();
        assert_eq!(a.group.order(), BigUint::from(7920u32));
        let blocks = hadamard_design_blocks();
        assert_eq!(blocks.len(), 22);
        for g in a.group.generators() {
            let mut image: Vec<Vec<usize>> = blocks
                .iter()
                .map(|b| {
                    let mut v: Vec<usize> = b.iter().map(|&x| g.apply(x)).collect();
                    v.sort();
                    v
                })
                .collect();
            image.sort();
            assert_eq!(image, blocks);
        }
        // three-transitive: transitive on ordered triples
        let p = pairs_of(&a);
        assert!(is_transitive(&p));
        let stab = crate::permgroup::point_stabilizer(&p.group, 0).unwrap();
        assert_eq!(stab.order(), BigUint::from(60u32));
        let orbits = crate::permgroup::orbits(stab.generators(), 132);
        // the stabilizer of (0, 1) is transitive on the ten remaining points
        let third: Vec<usize> = (2..12).map(|k| ordered_pair(12, 0, k)).collect();
        assert!(orbits.iter().any(|o| third.iter().all(|t| o.contains(t))));
    }

    #[test]
    fn hoggar_fixture() {
        let [u, v] = zauner_stabilizer_generators();
        let z = zauner_vector();
        for g in [&u, &v] {
            assert!((g.adjoint() * g - DMatrix::<Complex64>::identity(8, 8)).camax() < 1e-12);
            assert!((g * &z - &z).camax() < 1e-12);
        }
        let (action, vectors) = hoggar_action().unwrap();
        assert_eq!(vectors.len(), 256);
        assert!(is_transitive(&action));
        assert_eq!(action.group.order(), BigUint::from(1_548_288u32));
    }

    #[test]
    fn embedded_grams_have_expected_shape() {
        assert_eq!(agl_7x28().n(), 28);
        assert_eq!(mub_4x12().n(), 12);
        assert_eq!(mub_2x6().n(), 6);
        assert_eq!(agl_7x28().entries()[(0, 0)].re, 0.25);
    }
}
