//! Finite Heisenberg groups over abelian groups of odd order, their
//! Schrödinger representations, and the equiangular tight frames obtained by
//! restricting to even and odd functions.
//!
//! Everything here is exact: roots of unity are stored as exponents mod `N`,
//! matrices as monomial (permutation times phase) data, and traces as elements
//! of `Q(ζ_N)`.

use std::fmt;
use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{Exactness, GramMatrix};
use crate::permgroup::{ActionLabel, GroupAction, Permutation, PermutationGroup};

/// Largest `|A|` accepted by [`heis_etf_gram_direct`].
pub const DIRECT_MAX_ORDER: usize = 49;

/// `A = Z_{m_1} × ⋯ × Z_{m_k}` with every `m_i` odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupSpec {
    moduli: Vec<u32>,
    exponent: u32,
    half: u32,
}

impl AbelianGroupSpec {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::input("at least one modulus is required"));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 3 || m % 2 == 0) {
            return Err(Error::input(format!(
                "modulus {m} is not an odd integer >= 3"
            )));
        }
        let order: u64 = moduli.iter().map(|&m| m as u64).product();
        if order > 1 << 12 {
            return Err(Error::resource(format!("|A| = {order} is too large")));
        }
        let exponent = moduli.iter().fold(1u32, |l, &m| l.lcm(&m));
        Ok(AbelianGroupSpec {
            moduli,
            exponent,
            half: exponent.div_ceil(2),
        })
    }

    /// Parses a comma-separated list of moduli such as `"3"` or `"3,9"`.
    pub fn parse(text: &str) -> Result<Self> {
        let moduli = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::input(format!("bad modulus {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moduli)
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    /// The exponent `N = lcm(m_i)`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The inverse of 2 modulo `N`.
    pub fn half(&self) -> u32 {
        self.half
    }

    /// Elements of `A` in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        crate::frames::abelian_elements(&self.moduli)
    }

    /// Position of `a` in [`Self::elements`].
    pub fn index(&self, a: &[u32]) -> usize {
        a.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    fn check(&self, a: &[u32]) -> Result<()> {
        if a.len() != self.moduli.len() || a.iter().zip(&self.moduli).any(|(x, m)| x >= m) {
            return Err(Error::input(format!(
                "{a:?} is not an element of Z{:?}",
                self.moduli
            )));
        }
        Ok(())
    }

    fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect()
    }

    fn scale(&self, k: u32, a: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((k as u64 * x as u64) % m as u64) as u32)
            .collect()
    }

    /// Exponent of `⟨a, α⟩ = exp(2πi Σ a_i α_i / m_i)` as a multiple of `1/N`.
    pub fn pairing(&self, a: &[u32], alpha: &[u32]) -> RootOfUnity {
        let n = self.exponent as u64;
        let k = a
            .iter()
            .zip(alpha)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x as u64 * y as u64 % m as u64) * (n / m as u64))
            .sum::<u64>()
            % n;
        RootOfUnity::new(k as u32, self.exponent)
    }
}

/// `exp(2πi k / N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub k: u32,
    pub n: u32,
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self::new(self.k + other.k, self.n)
    }
}

impl RootOfUnity {
    pub fn new(k: u32, n: u32) -> Self {
        RootOfUnity { k: k % n, n }
    }

    pub fn one(n: u32) -> Self {
        RootOfUnity { k: 0, n }
    }

    pub fn inv(self) -> Self {
        Self::new(self.n - self.k, self.n)
    }

    pub fn pow(self, e: u32) -> Self {
        Self::new(((self.k as u64 * e as u64) % self.n as u64) as u32, self.n)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI * self.k as f64 / self.n as f64,
        )
    }
}

/// An element `(a, α, z)` of the Heisenberg group `K × C_N` with `K = A × Â`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub a: Vec<u32>,
    pub alpha: Vec<u32>,
    pub z: RootOfUnity,
}

impl HeisenbergElement {
    pub fn new(spec: &AbelianGroupSpec, a: Vec<u32>, alpha: Vec<u32>, z: u32) -> Result<Self> {
        spec.check(&a)?;
        spec.check(&alpha)?;
        Ok(HeisenbergElement {
            a,
            alpha,
            z: RootOfUnity::new(z, spec.exponent),
        })
    }

    pub fn identity(spec: &AbelianGroupSpec) -> Self {
        let zero = vec![0; spec.moduli.len()];
        HeisenbergElement {
            a: zero.clone(),
            alpha: zero,
            z: RootOfUnity::one(spec.exponent),
        }
    }

    /// The element `(u, 1)` for `u = (a, α)`.
    pub fn from_k(spec: &AbelianGroupSpec, u: &(Vec<u32>, Vec<u32>)) -> Self {
        HeisenbergElement {
            a: u.0.clone(),
            alpha: u.1.clone(),
            z: RootOfUnity::one(spec.exponent),
        }
    }

    fn k(&self) -> (&[u32], &[u32]) {
        (&self.a, &self.alpha)
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, ζ^{})", self.a, self.alpha, self.z.k)
    }
}

/// The twist `γ(z) = z^g`, an automorphism of `C_N` when `gcd(g, N) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaTwist {
    pub g: u32,
}

impl GammaTwist {
    pub fn new(spec: &AbelianGroupSpec, g: u32) -> Result<Self> {
        if g.gcd(&spec.exponent) != 1 {
            return Err(Error::input(format!(
                "gamma exponent {g} is not a unit mod {}",
                spec.exponent
            )));
        }
        Ok(GammaTwist {
            g: g % spec.exponent,
        })
    }

    pub fn identity() -> Self {
        GammaTwist { g: 1 }
    }

    pub fn apply(self, z: RootOfUnity) -> RootOfUnity {
        z.pow(self.g)
    }
}

/// `[(a₁,α₁),(a₂,α₂)] = ⟨a₂,α₁⟩ ⟨a₁,α₂⟩⁻¹`.
pub fn symplectic_form(
    spec: &AbelianGroupSpec,
    u: (&[u32], &[u32]),
    v: (&[u32], &[u32]),
) -> RootOfUnity {
    spec.pairing(v.0, u.1) * spec.pairing(u.0, v.1).inv()
}

/// `(u₁, z₁)(u₂, z₂) = (u₁ + u₂, z₁ z₂ [u₁, u₂]^{1/2})`.
pub fn heisenberg_multiply(
    spec: &AbelianGroupSpec,
    x: &HeisenbergElement,
    y: &HeisenbergElement,
) -> HeisenbergElement {
    let twist = symplectic_form(spec, x.k(), y.k()).pow(spec.half);
    HeisenbergElement {
        a: spec.add(&x.a, &y.a),
        alpha: spec.add(&x.alpha, &y.alpha),
        z: x.z * y.z * twist,
    }
}

pub fn heisenberg_inverse(spec: &AbelianGroupSpec, x: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement {
        a: spec.neg(&x.a),
        alpha: spec.neg(&x.alpha),
        z: x.z.inv(),
    }
}

/// A matrix with exactly one nonzero entry per row: `M[b][col[b]] = ζ^{phase[b]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub cols: Vec<usize>,
    pub phases: Vec<RootOfUnity>,
}

impl Mul<&MonomialMatrix> for &MonomialMatrix {
    type Output = MonomialMatrix;

    fn mul(self, other: &MonomialMatrix) -> MonomialMatrix {
        let cols = self.cols.iter().map(|&c| other.cols[c]).collect();
        let phases = self
            .cols
            .iter()
            .zip(&self.phases)
            .map(|(&c, &p)| p * other.phases[c])
            .collect();
        MonomialMatrix { cols, phases }
    }
}

impl MonomialMatrix {
    pub fn size(&self) -> usize {
        self.cols.len()
    }

    /// Exact trace as an element of `Q(ζ_N)`.
    pub fn trace(&self) -> Cyclotomic {
        let n = self.phases.first().map_or(1, |p| p.n);
        let mut t = Cyclotomic::zero(n);
        for (b, (&c, &p)) in self.cols.iter().zip(&self.phases).enumerate() {
            if b == c {
                t.add_term(Rational64::one(), p.k);
            }
        }
        t
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.size();
        let mut m = DMatrix::zeros(n, n);
        for (b, (&c, &p)) in self.cols.iter().zip(&self.phases).enumerate() {
            m[(b, c)] = p.to_complex();
        }
        m
    }
}

/// `[π_γ(a,α,z) f](b) = γ(z ⟨b − ½a, α⟩) f(b − a)` as a monomial matrix on `L²(A)`.
pub fn schrodinger_matrix(
    spec: &AbelianGroupSpec,
    gamma: GammaTwist,
    h: &HeisenbergElement,
) -> MonomialMatrix {
    let elems = spec.elements();
    let half_a = spec.scale(spec.half, &h.a);
    let mut cols = Vec::with_capacity(elems.len());
    let mut phases = Vec::with_capacity(elems.len());
    for b in &elems {
        cols.push(spec.index(&spec.add(b, &spec.neg(&h.a))));
        let shifted = spec.add(b, &spec.neg(&half_a));
        phases.push(gamma.apply(h.z * spec.pairing(&shifted, &h.alpha)));
    }
    MonomialMatrix { cols, phases }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Hash)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// Projections onto even and odd functions on `A`.
pub fn parity_projectors(spec: &AbelianGroupSpec) -> (DMatrix<Rational64>, DMatrix<Rational64>) {
    let elems = spec.elements();
    let n = elems.len();
    let half = Rational64::new(1, 2);
    let mut pe = DMatrix::from_element(n, n, Rational64::zero());
    let mut po = pe.clone();
    for (x, a) in elems.iter().enumerate() {
        let y = spec.index(&spec.neg(a));
        pe[(x, x)] += half;
        po[(x, x)] += half;
        pe[(x, y)] += half;
        po[(x, y)] -= half;
    }
    (pe, po)
}

/// Elements `u = (a, α)` of `K = A × Â` in lexicographic order.
pub fn k_elements(spec: &AbelianGroupSpec) -> Vec<(Vec<u32>, Vec<u32>)> {
    let elems = spec.elements();
    elems
        .iter()
        .flat_map(|a| elems.iter().map(move |alpha| (a.clone(), alpha.clone())))
        .collect()
}

/// Gram entry `c · ζ^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactEntry {
    pub coeff: Rational64,
    pub zeta: RootOfUnity,
}

#[derive(Serialize, Deserialize)]
struct ExactEntryJson {
    coeff_num: i64,
    coeff_den: i64,
    zeta_num: u32,
    zeta_den: u32,
}

/// Gram matrix whose entries are rational multiples of roots of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactGram {
    pub n: usize,
    pub entries: Vec<ExactEntry>,
}

impl ExactGram {
    pub fn get(&self, i: usize, j: usize) -> ExactEntry {
        self.entries[i * self.n + j]
    }

    pub fn to_gram(&self) -> GramMatrix {
        let m = DMatrix::from_fn(self.n, self.n, |i, j| {
            let e = self.get(i, j);
            e.zeta.to_complex() * (*e.coeff.numer() as f64 / *e.coeff.denom() as f64)
        });
        GramMatrix::with_exactness(m, Exactness::RootOfUnity)
    }

    /// `{"n": .., "entries": [[{"coeff_num", "coeff_den", "zeta_num", "zeta_den"}, ..], ..]}`.
    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<Vec<ExactEntryJson>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let e = self.get(i, j);
                        ExactEntryJson {
                            coeff_num: *e.coeff.numer(),
                            coeff_den: *e.coeff.denom(),
                            zeta_num: e.zeta.k,
                            zeta_den: e.zeta.n,
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(serde_json::to_string(
            &serde_json::json!({ "n": self.n, "entries": rows }),
        )?)
    }
}

/// Closed-form Gram of `{ρ_γ(u,1) P}_{u∈K}`: diagonal `(|A| ± 1)/2`, off-diagonal
/// `± ½ γ([u,v]^{1/2})`, with `+` for even and `−` for odd functions.
pub fn heis_etf_gram(spec: &AbelianGroupSpec, gamma: GammaTwist, parity: Parity) -> ExactGram {
    let ks = k_elements(spec);
    let n = ks.len();
    let order = spec.order() as i64;
    let s = parity.sign();
    let mut entries = Vec::with_capacity(n * n);
    for u in &ks {
        for v in &ks {
            let entry = if u == v {
                ExactEntry {
                    coeff: Rational64::new(order + s, 2),
                    zeta: RootOfUnity::one(spec.exponent),
                }
            } else {
                let form = symplectic_form(spec, (&u.0, &u.1), (&v.0, &v.1));
                ExactEntry {
                    coeff: Rational64::new(s, 2),
                    zeta: gamma.apply(form.pow(spec.half)),
                }
            };
            entries.push(entry);
        }
    }
    ExactGram { n, entries }
}

/// Gram entries `tr(π_γ(u,1) P P* π_γ(v,1)*)` computed directly in `Q(ζ_N)`.
pub fn heis_etf_gram_direct(
    spec: &AbelianGroupSpec,
    gamma: GammaTwist,
    parity: Parity,
) -> Result<Vec<Vec<Cyclotomic>>> {
    if spec.order() > DIRECT_MAX_ORDER {
        return Err(Error::resource(format!(
            "direct Gram needs |A| <= {DIRECT_MAX_ORDER}, got {}",
            spec.order()
        )));
    }
    let ks = k_elements(spec);
    let mats: Vec<MonomialMatrix> = ks
        .iter()
        .map(|u| schrodinger_matrix(spec, gamma, &HeisenbergElement::from_k(spec, u)))
        .collect();
    let elems = spec.elements();
    let negation: Vec<usize> = elems.iter().map(|a| spec.index(&spec.neg(a))).collect();
    let s = parity.sign();
    let half = Rational64::new(1, 2);
    let n_exp = spec.exponent;
    // P P* = P, with P[x][y] = (δ(x,y) ± δ(x,−y)) / 2
    let p_entry = |x: usize, y: usize| -> Rational64 {
        let mut c = Rational64::zero();
        if x == y {
            c += half;
        }
        if negation[x] == y {
            c += half * Rational64::from_integer(s);
        }
        c
    };
    Ok(mats
        .iter()
        .map(|mu| {
            mats.iter()
                .map(|mv| {
                    let mut t = Cyclotomic::zero(n_exp);
                    for b in 0..elems.len() {
                        let c = p_entry(mu.cols[b], mv.cols[b]);
                        if !c.is_zero() {
                            t.add_term(c, (mu.phases[b] * mv.phases[b].inv()).k);
                        }
                    }
                    t
                })
                .collect()
        })
        .collect())
}

/// Whether the direct computation agrees with the closed form in `Q(ζ_N)`.
pub fn closed_form_matches_direct(closed: &ExactGram, direct: &[Vec<Cyclotomic>]) -> bool {
    direct.len() == closed.n
        && direct.iter().enumerate().all(|(i, row)| {
            row.len() == closed.n
                && row.iter().enumerate().all(|(j, d)| {
                    let e = closed.get(i, j);
                    let mut diff = d.clone();
                    diff.add_term(-e.coeff, e.zeta.k);
                    diff.is_zero()
                })
        })
}

/// An element `Σ_k c_k ζ^k` of `Q(ζ_N)`, stored in the group ring `Q[x]/(x^N − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    coeffs: Vec<Rational64>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Cyclotomic {
            coeffs: vec![Rational64::zero(); n as usize],
        }
    }

    pub fn add_term(&mut self, c: Rational64, k: u32) {
        let n = self.coeffs.len();
        self.coeffs[k as usize % n] += c;
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.coeffs.len() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                RootOfUnity::new(k as u32, n).to_complex() * (*c.numer() as f64 / *c.denom() as f64)
            })
            .sum()
    }

    /// Exact zero test: reduction modulo the cyclotomic polynomial `Φ_N`.
    pub fn is_zero(&self) -> bool {
        let phi = cyclotomic_polynomial(self.coeffs.len());
        let mut r = self.coeffs.clone();
        let deg = phi.len() - 1;
        for top in (deg..r.len()).rev() {
            let c = r[top];
            if c.is_zero() {
                continue;
            }
            // phi is monic
            for (i, &p) in phi.iter().enumerate() {
                r[top - deg + i] -= c * Rational64::from_integer(p);
            }
        }
        r.iter().all(|c| c.is_zero())
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    // x^n − 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for top in (dd..num.len()).rev() {
        let c = r[top];
        q[top - dd] = c;
        for (i, &p) in den.iter().enumerate() {
            r[top - dd + i] -= c * p;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Permutation action of `H ⋊ SL(2, p)` on the `p³` elements of the
/// Heisenberg group over `Z_p`; point `(a, α, z)` has index `(a·p + α)·p + z`.
pub fn heisenberg_permutation_action(p: u32) -> Result<GroupAction> {
    if ![3, 5, 7].contains(&p) {
        return Err(Error::input(format!(
            "p = {p} is not supported (expected 3, 5 or 7)"
        )));
    }
    let spec = AbelianGroupSpec::new(vec![p])?;
    let n = (p * p * p) as usize;
    let decode = |x: usize| {
        let x = x as u32;
        HeisenbergElement {
            a: vec![x / (p * p)],
            alpha: vec![(x / p) % p],
            z: RootOfUnity::new(x % p, p),
        }
    };
    let encode = |h: &HeisenbergElement| (h.a[0] * p + h.alpha[0]) * p + h.z.k;
    let mut gens = Vec::new();
    for t in [(1, 0), (0, 1)] {
        let h = HeisenbergElement::new(&spec, vec![t.0], vec![t.1], 0)?;
        gens.push(Permutation::new(
            (0..n)
                .map(|x| encode(&heisenberg_multiply(&spec, &h, &decode(x))))
                .collect(),
        )?);
    }
    for m in [[1, 1, 0, 1], [1, 0, 1, 1]] {
        gens.push(Permutation::new(
            (0..n)
                .map(|x| {
                    let h = decode(x);
                    let (a, alpha) = (h.a[0], h.alpha[0]);
                    let image = HeisenbergElement {
                        a: vec![(m[0] * a + m[1] * alpha) % p],
                        alpha: vec![(m[2] * a + m[3] * alpha) % p],
                        z: h.z,
                    };
                    encode(&image)
                })
                .collect(),
        )?);
    }
    let names = (0..n).map(|x| decode(x).to_string()).collect();
    Ok(GroupAction::new(PermutationGroup::new(n, gens)?, ActionLabel::Explicit).with_names(names))
}

/// Whether `m` (row-major, entries mod `p`) preserves the symplectic form on `Z_p²`.
pub fn sp_membership(p: u32, m: [[u32; 2]; 2]) -> Result<bool> {
    let det =
        (m[0][0] as i64 * m[1][1] as i64 - m[0][1] as i64 * m[1][0] as i64).rem_euclid(p as i64);
    if det == 0 {
        return Err(Error::input("matrix is singular mod p"));
    }
    let spec = AbelianGroupSpec::new(vec![p])?;
    let apply = |v: [u32; 2]| -> (Vec<u32>, Vec<u32>) {
        (
            vec![(m[0][0] * v[0] + m[0][1] * v[1]) % p],
            vec![(m[1][0] * v[0] + m[1][1] * v[1]) % p],
        )
    };
    let (u, v) = (apply([1, 0]), apply([0, 1]));
    let before = symplectic_form(&spec, (&[1], &[0]), (&[0], &[1]));
    let after = symplectic_form(&spec, (&u.0, &u.1), (&v.0, &v.1));
    Ok(before == after)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> AbelianGroupSpec {
        AbelianGroupSpec::new(vec![3]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(AbelianGroupSpec::parse("3,9").is_ok());
        assert!(AbelianGroupSpec::parse("4").is_err());
        assert!(AbelianGroupSpec::parse("1").is_err());
        let s = AbelianGroupSpec::parse("3, 9").unwrap();
        assert_eq!((s.exponent(), s.half(), s.order()), (9, 5, 27));
    }

    #[test]
    fn form_examples() {
        let s = z3();
        assert_eq!(symplectic_form(&s, (&[1], &[0]), (&[0], &[1])).k, 2);
        for u in k_elements(&s) {
            assert_eq!(symplectic_form(&s, (&u.0, &u.1), (&u.0, &u.1)).k, 0);
        }
    }

    #[test]
    fn multiply_examples() {
        let s = z3();
        let x = HeisenbergElement::new(&s, vec![1], vec![0], 0).unwrap();
        let y = HeisenbergElement::new(&s, vec![0], vec![1], 0).unwrap();
        let xy = heisenberg_multiply(&s, &x, &y);
        assert_eq!((xy.a[0], xy.alpha[0], xy.z.k), (1, 1, 1));
        let id = heisenberg_multiply(&s, &x, &heisenberg_inverse(&s, &x));
        assert_eq!(id, HeisenbergElement::identity(&s));
    }

    #[test]
    fn schrodinger_examples() {
        let s = z3();
        let g = GammaTwist::identity();
        let id = schrodinger_matrix(&s, g, &HeisenbergElement::identity(&s));
        assert_eq!(id.cols, vec![0, 1, 2]);
        assert!(id.phases.iter().all(|p| p.k == 0));
        let shift = schrodinger_matrix(
            &s,
            g,
            &HeisenbergElement::new(&s, vec![1], vec![0], 0).unwrap(),
        );
        assert_eq!(shift.cols, vec![2, 0, 1]);
        assert!(shift.phases.iter().all(|p| p.k == 0));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(
            cyclotomic_polynomial(15),
            vec![1, -1, 0, 1, -1, 1, 0, -1, 1]
        );
        let mut z = Cyclotomic::zero(3);
        for k in 0..3 {
            z.add_term(Rational64::one(), k);
        }
        assert!(z.is_zero());
    }

    #[test]
    fn parity_ranks() {
        let (pe, po) = parity_projectors(&z3());
        let tr = |m: &DMatrix<Rational64>| (0..3).map(|i| m[(i, i)]).sum::<Rational64>();
        assert_eq!(tr(&pe), Rational64::from_integer(2));
        assert_eq!(tr(&po), Rational64::from_integer(1));
        assert!((&pe * &po).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn sp_examples() {
        assert!(sp_membership(3, [[1, 0], [0, 1]]).unwrap());
        assert!(sp_membership(3, [[1, 1], [0, 1]]).unwrap());
        assert!(!sp_membership(3, [[2, 0], [0, 1]]).unwrap());
        assert!(sp_membership(3, [[1, 1], [1, 1]]).is_err());
    }
}
