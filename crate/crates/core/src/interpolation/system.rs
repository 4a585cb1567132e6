use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Count;

use super::combinatorics::f;

/// Columns `(ℓ, s)` with `0 ≤ ℓ < s ≤ d`, ordered by `s` then `ℓ`.
pub fn column_pairs(d: usize) -> Vec<(usize, usize)> {
    (1..=d)
        .flat_map(|s| (0..s).map(move |ell| (ell, s)))
        .collect()
}

/// Square full-rank matrix `F[i][(ℓ,s)] = f_{ℓ,s}(k_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterpolationSystem {
    pub domain_size: usize,
    pub k_values: Vec<usize>,
    pub columns: Vec<(usize, usize)>,
    #[serde(serialize_with = "serialize_rows")]
    pub rows: Vec<Vec<Count>>,
    /// `det F` from fraction-free elimination; nonzero certifies full rank.
    #[serde(serialize_with = "serialize_big")]
    pub determinant: BigInt,
    /// k values tried and dropped because they did not raise the rank.
    pub skipped: Vec<usize>,
}

fn serialize_rows<S: serde::Serializer>(
    rows: &[Vec<Count>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&r.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

fn serialize_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl InterpolationSystem {
    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    pub fn column_of(&self, ell: usize, s: usize) -> Option<usize> {
        self.columns.iter().position(|&c| c == (ell, s))
    }

    /// `F · t`.
    pub fn apply(&self, t: &[Count]) -> Vec<Count> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(t).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Rank of the first `rows` rows.
    pub fn rank_of_rows(&self, keep: &[usize]) -> usize {
        let m: Vec<Vec<BigInt>> = keep.iter().map(|&i| to_signed(&self.rows[i])).collect();
        bareiss(m).0
    }
}

fn to_signed(row: &[Count]) -> Vec<BigInt> {
    row.iter()
        .map(|c| BigInt::from_biguint(Sign::Plus, c.clone()))
        .collect()
}

fn f_row(columns: &[(usize, usize)], k: usize) -> Vec<Count> {
    columns
        .iter()
        .map(|&(l, s)| f(l, s, k).expect("l < s"))
        .collect()
}

/// Fraction-free Gaussian elimination. Returns the rank and, when the
/// matrix is square and nonsingular, its determinant (otherwise zero).
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = a.len();
    if rows == 0 {
        return (0, BigInt::one());
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    let det = if rank == rows && rows == cols {
        sign * prev
    } else {
        BigInt::zero()
    };
    (rank, det)
}

/// Picks `k = d+1, d+2, …`, keeping each value that raises the exact rank,
/// until `F` is square and nonsingular.
pub fn build_interpolation_system(domain_size: usize) -> Result<InterpolationSystem> {
    if !(1..=crate::matrix::MAX_SIZE).contains(&domain_size) {
        return Err(Error::Domain(format!(
            "domain size {domain_size} out of range"
        )));
    }
    let columns = column_pairs(domain_size);
    let n = columns.len();
    let mut rows: Vec<Vec<Count>> = Vec::new();
    let mut k_values = Vec::new();
    let mut skipped = Vec::new();
    let mut k = domain_size + 1;
    while rows.len() < n {
        let row = f_row(&columns, k);
        rows.push(row);
        let signed: Vec<Vec<BigInt>> = rows.iter().map(|r| to_signed(r)).collect();
        if bareiss(signed).0 == rows.len() {
            k_values.push(k);
        } else {
            rows.pop();
            skipped.push(k);
        }
        k += 1;
    }
    let (_, determinant) = bareiss(rows.iter().map(|r| to_signed(r)).collect());
    Ok(InterpolationSystem {
        domain_size,
        k_values,
        columns,
        rows,
        determinant,
        skipped,
    })
}

/// Exact solution of `F · t = z`.
pub fn solve_t(system: &InterpolationSystem, z: &[Count]) -> Result<Vec<BigRational>> {
    let n = system.dimension();
    if z.len() != n {
        return Err(Error::Domain(format!(
            "expected {n} values, got {}",
            z.len()
        )));
    }
    let q = |c: &Count| BigRational::from_integer(BigInt::from_biguint(Sign::Plus, c.clone()));
    let mut a: Vec<Vec<BigRational>> = system
        .rows
        .iter()
        .zip(z)
        .map(|(r, zi)| r.iter().map(q).chain(std::iter::once(q(zi))).collect())
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| Error::Inconsistent("singular interpolation matrix".into()))?;
        a.swap(p, c);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                for j in c..=n {
                    let v = &factor * &a[c][j];
                    a[r][j] -= v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n].clone()).collect())
}

/// [`solve_t`] with every entry required to be a non-negative integer.
pub fn solve_t_integral(system: &InterpolationSystem, z: &[Count]) -> Result<Vec<Count>> {
    solve_t(system, z)?
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            if !x.is_integer() || x.is_negative() {
                let (l, s) = system.columns[i];
                return Err(Error::Inconsistent(format!(
                    "T[{l},{s}] = {x} is not a non-negative integer"
                )));
            }
            Ok(x.to_integer().to_biguint().expect("non-negative"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sizes_and_columns() {
        assert_eq!(column_pairs(2), vec![(0, 1), (0, 2), (1, 2)]);
        let s = build_interpolation_system(4).unwrap();
        assert_eq!(s.dimension(), 10);
        assert_eq!(s.k_values.len(), 10);
        assert!(s.k_values.iter().all(|&k| k >= 5));
        assert!(s.k_values.windows(2).all(|w| w[0] < w[1]));
        assert!(!s.determinant.is_zero());
    }

    #[test]
    fn removing_any_row_drops_rank() {
        let s = build_interpolation_system(4).unwrap();
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(s.rank_of_rows(&all), 10);
        for skip in 0..10 {
            let keep: Vec<usize> = all.iter().copied().filter(|&i| i != skip).collect();
            assert_eq!(s.rank_of_rows(&keep), 9);
        }
    }

    #[test]
    fn zero_rhs() {
        let s = build_interpolation_system(3).unwrap();
        let t = solve_t_integral(&s, &vec![Count::zero(); s.dimension()]).unwrap();
        assert!(t.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn determinant_matches_rational_elimination() {
        let s = build_interpolation_system(3).unwrap();
        let mut a: Vec<Vec<BigRational>> = s
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| BigRational::from_integer(BigInt::from(c.clone())))
                    .collect()
            })
            .collect();
        let n = a.len();
        let mut det = BigRational::one();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).unwrap();
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= a[c][c].clone();
            for r in c + 1..n {
                let factor = &a[r][c] / &a[c][c];
                for j in c..n {
                    let v = &factor * &a[c][j];
                    a[r][j] -= v;
                }
            }
        }
        assert_eq!(det, BigRational::from_integer(s.determinant.clone()));
    }

    #[test]
    fn non_integral_rhs_rejected() {
        let s = build_interpolation_system(2).unwrap();
        let mut z = s.apply(&[Count::one(), Count::zero(), Count::zero()]);
        z[0] += Count::one();
        assert!(matches!(
            solve_t_integral(&s, &z),
            Err(Error::Inconsistent(_))
        ));
    }

    proptest! {
        #[test]
        fn roundtrip(d in 1usize..=5, seed in proptest::collection::vec(0u64..1000, 15)) {
            let s = build_interpolation_system(d).unwrap();
            let t: Vec<Count> = seed[..s.dimension()].iter().map(|&x| Count::from(x)).collect();
            let z = s.apply(&t);
            prop_assert_eq!(solve_t_integral(&s, &z).unwrap(), t);
        }
    }
}
