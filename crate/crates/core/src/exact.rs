//! Small exact linear-algebra helpers over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Basis of the right nullspace `{x : M x = 0}` of a rational matrix given by rows.
///
/// Rows are eliminated incrementally, so the routine is cheap when many rows
/// are dependent.
pub fn rational_nullspace(
    rows: impl IntoIterator<Item = Vec<BigRational>>,
    ncols: usize,
) -> Vec<Vec<BigRational>> {
    // reduced echelon rows, each with pivot column and pivot entry 1
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for mut row in rows {
        assert_eq!(row.len(), ncols);
        for (p, e) in &echelon {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(e) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, e) in echelon.iter_mut() {
            if !e[p].is_zero() {
                let f = e[p].clone();
                for (x, y) in e.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        echelon.push((p, row));
        if echelon.len() == ncols {
            break;
        }
    }
    let pivots: Vec<usize> = echelon.iter().map(|(p, _)| *p).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); ncols];
            v[free] = BigRational::one();
            for (p, e) in &echelon {
                v[*p] = -e[free].clone();
            }
            v
        })
        .collect()
}
