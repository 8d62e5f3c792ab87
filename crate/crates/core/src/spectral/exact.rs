//! Exact support membership for integer eigenvalues.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SpectralError;
use crate::graph::Graph;

/// Rank of a dense rational matrix, destroying it.
fn rank(mut m: Vec<Vec<BigRational>>, cols: usize) -> usize {
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            let (top, bottom) = m.split_at_mut(i);
            for (x, p) in bottom[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `true` iff `E_r s = 0` for the integer eigenvalue `r` of `A`.
///
/// The eigenprojector of a symmetric matrix annihilates exactly the range of
/// `A - rI`, so the test is `rank [A - rI | s] = rank (A - rI)` over the
/// rationals. `r` need not be an eigenvalue; then the projection is zero.
pub fn exact_projection_vanishes(g: &Graph, r: &BigInt, s: &[BigInt]) -> Result<bool, SpectralError> {
    let n = g.n();
    if s.len() != n {
        return Err(SpectralError::SizeMismatch { expected: n, found: s.len() });
    }
    let a = g.integer_adjacency().ok_or(SpectralError::NotIntegerWeighted)?;
    let build = |with_s: bool| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|j| {
                        let mut x = BigInt::from(a[i * n + j]);
                        if i == j {
                            x -= r;
                        }
                        BigRational::from_integer(x)
                    })
                    .collect();
                if with_s {
                    row.push(BigRational::from_integer(s[i].clone()));
                }
                row
            })
            .collect()
    };
    Ok(rank(build(false), n) == rank(build(true), n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn c4_antipodal_difference_lives_in_zero_eigenspace() {
        let c4 = build_family(&FamilySpec::Cycle(4)).unwrap();
        let s = v(&[1, 0, -1, 0]);
        assert!(exact_projection_vanishes(&c4, &BigInt::from(2), &s).unwrap());
        assert!(exact_projection_vanishes(&c4, &BigInt::from(-2), &s).unwrap());
        assert!(!exact_projection_vanishes(&c4, &BigInt::from(0), &s).unwrap());
    }

    #[test]
    fn p3_middle_zero_eigenvalue() {
        // the 0-eigenvector of P3 is (1, 0, -1)
        let p3 = build_family(&FamilySpec::Path(3)).unwrap();
        assert!(!exact_projection_vanishes(&p3, &BigInt::from(0), &v(&[1, -1, 0])).unwrap());
        assert!(exact_projection_vanishes(&p3, &BigInt::from(0), &v(&[1, 0, 1])).unwrap());
        assert!(exact_projection_vanishes(&p3, &BigInt::from(5), &v(&[1, 0, 0])).unwrap());
    }
}
