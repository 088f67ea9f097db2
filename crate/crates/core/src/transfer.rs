//! Transfer matrices over the letters of admissible compositions.
//!
//! Rows and columns are indexed `0P, 0N, 1P, 1N, ..., (a-2)P, (a-2)N`. Entry
//! `(iR, jS)` of `E`, `T` or `U` is 1 when `R_ii S_jj` may follow each other
//! directly, with a `T` in between, or with a `U` in between. The number of
//! letter skeletons with `r` factors of type `P`/`N` starting with `P_00` is
//! `a_r = e_1^T (E + T + U)^(r-1) 1`, which equals `(a-1)^(r-1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heap::PieceLength;

pub type Matrix = Vec<Vec<BigInt>>;
pub type RVector = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferMatrices {
    pub a: u32,
    pub b: usize,
    #[serde(serialize_with = "ser_matrix")]
    pub e: Matrix,
    #[serde(serialize_with = "ser_matrix")]
    pub t: Matrix,
    #[serde(serialize_with = "ser_matrix")]
    pub u: Matrix,
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let r: Vec<i64> = row.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

fn zeros(n: usize) -> Matrix {
    vec![vec![BigInt::zero(); n]; n]
}

fn kron(x: &[[i64; 2]; 2], pick: impl Fn(usize, usize) -> bool, b: usize) -> Matrix {
    let mut m = zeros(2 * b);
    for i in 0..b {
        for j in 0..b {
            if !pick(i, j) {
                continue;
            }
            for (r, row) in x.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    m[2 * i + r][2 * j + c] = v.into();
                }
            }
        }
    }
    m
}

impl TransferMatrices {
    /// `A = E + T + U`.
    pub fn sum(&self) -> Matrix {
        let n = 2 * self.b;
        (0..n)
            .map(|i| (0..n).map(|j| &self.e[i][j] + &self.t[i][j] + &self.u[i][j]).collect())
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.b).flat_map(|i| [format!("{i}P"), format!("{i}N")]).collect()
    }
}

/// Needs `a >= 3`: for `a = 2` there is a single index and no `T`/`U`.
pub fn build_matrices(a: PieceLength) -> Result<TransferMatrices> {
    if a.get() < 3 {
        return Err(Error::UnsupportedPieceLength {
            got: a.get(),
            reason: "transfer matrices need at least two indices (a >= 3)",
        });
    }
    let b = a.get() as usize - 1;
    Ok(TransferMatrices {
        a: a.get(),
        b,
        e: kron(&[[0, 1], [1, 0]], |i, j| i == j, b),
        t: kron(&[[1, 1], [1, 1]], |i, j| j < i, b),
        u: kron(&[[0, 1], [0, 0]], |i, j| j > i, b),
    })
}

pub fn mat_vec(m: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn mat_vec_q(m: &Matrix, v: &[BigRational]) -> RVector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(x, y)| y * BigRational::from_integer(x.clone()))
                .fold(BigRational::zero(), |s, t| s + t)
        })
        .collect()
}

/// `A^(r-1) 1` for `r = 1..=r_max`.
pub fn iterate_ones(a: PieceLength, r_max: usize) -> Result<Vec<Vec<BigInt>>> {
    let tm = build_matrices(a)?;
    let m = tm.sum();
    let mut v = vec![BigInt::one(); 2 * tm.b];
    let mut out = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        if r > 1 {
            v = mat_vec(&m, &v);
        }
        out.push(v.clone());
    }
    Ok(out)
}

pub fn compute_a_r(a: PieceLength, r: usize) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    Ok(iterate_ones(a, r)?.pop().unwrap().swap_remove(0))
}

/// Fraction-free Gaussian elimination.
pub fn determinant(m: &Matrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Coefficients (constant term first) of `det(x I - m)`, by evaluating at
/// `x = 0..=n` and interpolating exactly.
pub fn char_poly(m: &Matrix) -> Vec<BigInt> {
    let n = m.len();
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|&x| {
            let mut shifted = m.iter().map(|r| r.iter().map(|v| -v).collect()).collect::<Matrix>();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] += x;
            }
            determinant(&shifted)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, &xi) in xs.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xj.into());
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = BigRational::new(ys[i].clone(), denom);
        for (k, c) in basis.into_iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated characteristic polynomial is not integral");
            c.to_integer()
        })
        .collect()
}

fn poly_mul(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
    for (i, p) in x.iter().enumerate() {
        for (j, q) in y.iter().enumerate() {
            out[i + j] += p * q;
        }
    }
    out
}

/// `x^(b-1) (x - b) (x + 1)^b`, constant term first.
pub fn expected_char_poly(b: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); b - 1];
    p.push(BigInt::one());
    p = poly_mul(&p, &[-BigInt::from(b), BigInt::one()]);
    for _ in 0..b {
        p = poly_mul(&p, &[BigInt::one(), BigInt::one()]);
    }
    p
}

pub fn verify_char_poly(a: PieceLength) -> Result<bool> {
    let tm = build_matrices(a)?;
    Ok(char_poly(&tm.sum()) == expected_char_poly(tm.b))
}

/// Eigenvector for the eigenvalue `b` and the Jordan chain of 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralWitness {
    pub b: usize,
    pub zeta: BigRational,
    pub e: RVector,
    /// `f[0]` is `f_1`.
    pub f: Vec<RVector>,
}

pub fn spectral_witness(a: PieceLength) -> Result<SpectralWitness> {
    let b = build_matrices(a)?.b;
    let q = |n: i64| BigRational::from_integer(n.into());
    let zeta = BigRational::new((b as i64 + 1).into(), (b as i64).into());
    let mut e = Vec::with_capacity(2 * b);
    let mut z = BigRational::one();
    for i in 0..b {
        e.push(q(b as i64) * &z);
        e.push(q(i as i64 + 1) * &z);
        z *= &zeta;
    }
    let f = (1..b)
        .map(|i| {
            let pos = 2 * (b - i) - 1;
            (0..2 * b)
                .map(|k| match k.cmp(&pos) {
                    std::cmp::Ordering::Less => BigRational::zero(),
                    std::cmp::Ordering::Equal => q(-(i as i64)),
                    std::cmp::Ordering::Greater => BigRational::one(),
                })
                .collect()
        })
        .collect();
    Ok(SpectralWitness { b, zeta, e, f })
}

/// Which of the spectral identities hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralCheck {
    pub eigenvector: bool,
    pub kernel_chain: bool,
    pub ones_decomposition: bool,
    pub nilpotent_on_chain: bool,
}

impl SpectralCheck {
    pub fn all(&self) -> bool {
        self.eigenvector && self.kernel_chain && self.ones_decomposition && self.nilpotent_on_chain
    }
}

pub fn verify_spectral_witness(a: PieceLength) -> Result<SpectralCheck> {
    let tm = build_matrices(a)?;
    let m = tm.sum();
    let w = spectral_witness(a)?;
    let n = 2 * w.b;
    let bq = BigRational::from_integer(w.b.into());
    let zero: RVector = vec![BigRational::zero(); n];
    let add = |x: &RVector, y: &RVector| -> RVector { x.iter().zip(y).map(|(p, q)| p + q).collect() };

    let eigenvector = mat_vec_q(&m, &w.e) == w.e.iter().map(|x| x * &bq).collect::<RVector>();

    let mut kernel_chain = true;
    let mut partial = zero.clone();
    for fi in &w.f {
        kernel_chain &= mat_vec_q(&m, fi) == partial;
        partial = add(&partial, fi);
    }

    // 1 = b^(-1) (e - sum_i zeta^(b-1-i) f_i)
    let mut rhs = w.e.clone();
    for (idx, fi) in w.f.iter().enumerate() {
        let i = idx + 1;
        let coef = num_traits::pow(w.zeta.clone(), w.b - 1 - i);
        rhs = rhs.iter().zip(fi).map(|(r, f)| r - f * &coef).collect();
    }
    let ones_decomposition = rhs.iter().all(|x| x / &bq == BigRational::one());

    let nilpotent_on_chain = w.f.iter().all(|fi| {
        let mut v = fi.clone();
        for _ in 0..w.b - 1 {
            v = mat_vec_q(&m, &v);
        }
        v == zero
    });

    Ok(SpectralCheck {
        eigenvector,
        kernel_chain,
        ones_decomposition,
        nilpotent_on_chain,
    })
}

/// Checks, for `a = 3` and `r = 1..=r_max`, the relations satisfied by
/// `v_r = (a_r, a'_r, b_r, b'_r) = A^(r-1) 1`.
pub fn a3_recursion_check(r_max: usize) -> bool {
    let three = PieceLength::new(3).expect("3 is a valid length");
    let vs = iterate_ones(three, r_max + 1).expect("a = 3 has transfer matrices");
    let two = |k: usize| BigInt::from(2).pow(k as u32);
    let mut ok = true;
    for r in 1..=r_max {
        let [a, a1, b, b1] = <[BigInt; 4]>::try_from(vs[r - 1].clone()).unwrap();
        let [na, na1, nb, nb1] = <[BigInt; 4]>::try_from(vs[r].clone()).unwrap();
        ok &= &nb - &na == a;
        ok &= &nb1 - &na1 == &a1 + &b;
        ok &= &nb1 - &nb == &b - &b1;
        ok &= na1 == a;
        ok &= b == b1;
        if r >= 2 {
            ok &= b == &a + &a1;
            ok &= b == BigInt::from(3) * two(r - 2);
        }
        ok &= &na + &a == BigInt::from(3) * two(r - 1);
        ok &= a == two(r - 1);
    }
    ok
}

/// Matrices, characteristic polynomial and witness vectors for audit
/// output. Big numbers are written as strings.
#[derive(Clone, Debug, Serialize)]
pub struct TransferAudit {
    pub labels: Vec<String>,
    pub matrices: TransferMatrices,
    #[serde(serialize_with = "ser_matrix")]
    pub sum: Matrix,
    /// constant term first
    pub char_poly: Vec<String>,
    pub zeta: String,
    pub e: Vec<String>,
    pub f: Vec<Vec<String>>,
    pub checks: SpectralCheck,
}

pub fn audit(a: PieceLength) -> Result<TransferAudit> {
    let tm = build_matrices(a)?;
    let sum = tm.sum();
    let w = spectral_witness(a)?;
    let s = |v: &RVector| v.iter().map(|x| x.to_string()).collect();
    Ok(TransferAudit {
        labels: tm.labels(),
        char_poly: char_poly(&sum).iter().map(|c| c.to_string()).collect(),
        sum,
        matrices: tm,
        zeta: w.zeta.to_string(),
        e: s(&w.e),
        f: w.f.iter().map(s).collect(),
        checks: verify_spectral_witness(a)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn a(n: u32) -> PieceLength {
        PieceLength::new(n).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()
    }

    #[test]
    fn a3_matrices_as_printed() {
        let tm = build_matrices(a(3)).unwrap();
        assert_eq!(
            tm.sum(),
            ints(&[&[0, 1, 0, 1], &[1, 0, 0, 0], &[1, 1, 0, 1], &[1, 1, 1, 0]])
        );
        assert_eq!(
            tm.e,
            ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
        );
        assert_eq!(
            tm.t,
            ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 1, 0, 0], &[1, 1, 0, 0]])
        );
        assert_eq!(
            tm.u,
            ints(&[&[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]])
        );
        assert_eq!(tm.labels(), vec!["0P", "0N", "1P", "1N"]);
    }

    #[test]
    fn e_rows_sum_to_one() {
        for n in 3..9 {
            let tm = build_matrices(a(n)).unwrap();
            assert!(tm.e.iter().all(|r| r.iter().sum::<BigInt>() == BigInt::one()));
            assert!(tm.sum().iter().flatten().all(|x| !x.is_negative()));
        }
    }

    #[test]
    fn a2_rejected() {
        assert!(build_matrices(a(2)).is_err());
    }

    #[test]
    fn a_r_values() {
        let v: Vec<BigInt> = (1..=4).map(|r| compute_a_r(a(3), r).unwrap()).collect();
        assert_eq!(v, vec![1.into(), 2.into(), 4.into(), 8.into()]);
        assert_eq!(compute_a_r(a(5), 6).unwrap(), BigInt::from(1024));
        assert_eq!(compute_a_r(a(7), 1).unwrap(), BigInt::one());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&ints(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(determinant(&ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn char_poly_a3() {
        let tm = build_matrices(a(3)).unwrap();
        // x (x - 2) (x + 1)^2 = x^4 - 3x^2 - 2x
        let want: Vec<BigInt> = [0, -2, -3, 0, 1].iter().map(|&x| x.into()).collect();
        assert_eq!(char_poly(&tm.sum()), want);
        assert_eq!(expected_char_poly(2), want);
    }

    #[test]
    fn char_poly_a8() {
        assert!(verify_char_poly(a(8)).unwrap());
    }

    #[test]
    fn witness_a3() {
        let w = spectral_witness(a(3)).unwrap();
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(w.e, vec![q(2), q(1), q(3), q(3)]);
        assert_eq!(w.f, vec![vec![q(0), q(-1), q(1), q(1)]]);
        assert!(verify_spectral_witness(a(3)).unwrap().all());
    }

    #[test]
    fn a3_recursion() {
        assert!(a3_recursion_check(10));
        let v = iterate_ones(a(3), 2).unwrap();
        assert_eq!(v[1][2], BigInt::from(3));
    }
}
