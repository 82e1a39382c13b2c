//! Exact characteristic polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::hamiltonian::IntMatrix;

/// `det(xI - M)` with exact coefficients, stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Coefficients `c_0, ..., c_n`; `c_n` is 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in floating point.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Whether `x^2 - s x + p` divides the polynomial over the integers.
    pub fn divisible_by_quadratic(&self, s: &BigInt, p: &BigInt) -> bool {
        let mut rem = self.coeffs.clone();
        for i in (2..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[i]);
            if lead.is_zero() {
                continue;
            }
            rem[i - 1] += s * &lead;
            rem[i - 2] -= p * &lead;
        }
        rem.iter().take(2).all(Zero::is_zero)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Characteristic polynomial by the Faddeev–LeVerrier recurrence,
/// carried out over exact integers.
///
/// `N_0 = 0`, `N_k = M N_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(M N_k) / k`.
/// The division is exact at every step. Products with `M` use its sparse
/// rows, so graph matrices cost `O(nnz * n)` per step.
pub fn char_poly(m: &IntMatrix) -> CharPoly {
    let n = m.dim();
    let sparse: Vec<Vec<(usize, &BigInt)>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .collect();

    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut prev = IntMatrix::zeros(n);
    for k in 1..=n {
        let mut next = IntMatrix::zeros(n);
        for (i, row) in sparse.iter().enumerate() {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for &(l, a) in row {
                    let x = prev.get(l, j);
                    if !x.is_zero() {
                        acc += a * x;
                    }
                }
                next.set(i, j, acc);
            }
            let d = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, d);
        }
        let mut trace = BigInt::zero();
        for (i, row) in sparse.iter().enumerate() {
            for &(l, a) in row {
                trace += a * next.get(l, i);
            }
        }
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev–LeVerrier trace not divisible by {k}");
        coeffs[n - k] = -q;
        prev = next;
    }
    CharPoly { coeffs }
}

/// True iff `candidate` is exactly a root.
pub fn certify_integer_eigenvalue(cp: &CharPoly, candidate: &BigInt) -> bool {
    cp.eval(candidate).is_zero()
}

/// True iff `x^2 - s x + p` has irrational real roots and divides `cp`.
///
/// Returns false when `s^2 - 4p` is not a positive non-square, since the
/// roots are then rational (and handled as integers) or non-real.
pub fn certify_quadratic_factor(cp: &CharPoly, s: &BigInt, p: &BigInt) -> bool {
    let disc: BigInt = s * s - p * 4;
    if !disc.is_positive() || is_perfect_square(&disc) {
        return false;
    }
    cp.divisible_by_quadratic(s, p)
}

pub(crate) fn is_perfect_square(x: &BigInt) -> bool {
    if x.is_negative() {
        return false;
    }
    let r = x.sqrt();
    &(&r * &r) == x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> CharPoly {
        CharPoly {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&rows).unwrap()
    }

    /// Cofactor-expansion determinant of `xI - M` evaluated at integer `x`.
    fn det_oracle(m: &[Vec<i64>], x: i64) -> i64 {
        fn det(a: &[Vec<i64>]) -> i64 {
            if a.is_empty() {
                return 1;
            }
            let n = a.len();
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = a[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &v)| v)
                                .collect()
                        })
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * a[0][j] * det(&minor)
                })
                .sum()
        }
        let n = m.len();
        let shifted: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { x - m[i][j] } else { -m[i][j] })
                    .collect()
            })
            .collect();
        det(&shifted)
    }

    #[test]
    fn path_fixtures() {
        assert_eq!(char_poly(&mat(&[&[0, 1], &[1, 0]])), poly(&[-1, 0, 1]));
        assert_eq!(
            char_poly(&mat(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]])),
            poly(&[0, -2, 0, 1])
        );
        assert_eq!(char_poly(&mat(&[&[1, -1], &[-1, 1]])), poly(&[0, -2, 1]));
        assert_eq!(char_poly(&mat(&[&[0]])), poly(&[0, 1]));
    }

    #[test]
    fn agrees_with_cofactor_oracle() {
        let rows = vec![
            vec![2, -1, 0, 3],
            vec![-1, 0, 5, 0],
            vec![0, 5, -4, 1],
            vec![3, 0, 1, 7],
        ];
        let cp = char_poly(&IntMatrix::from_rows(&rows).unwrap());
        for x in -6..=6 {
            assert_eq!(cp.eval(&BigInt::from(x)), BigInt::from(det_oracle(&rows, x)));
        }
    }

    #[test]
    fn integer_certification() {
        let cp = poly(&[0, -2, 0, 1]);
        assert!(certify_integer_eigenvalue(&cp, &BigInt::from(0)));
        assert!(!certify_integer_eigenvalue(&cp, &BigInt::from(1)));
        assert!(certify_integer_eigenvalue(&poly(&[0, -2, 1]), &BigInt::from(2)));
    }

    #[test]
    fn quadratic_certification() {
        let zero = BigInt::from(0);
        let two = BigInt::from(-2);
        assert!(certify_quadratic_factor(&poly(&[0, -2, 0, 1]), &zero, &two));
        assert!(!certify_quadratic_factor(&poly(&[-1, 0, 1]), &zero, &two));
        // P4: x^4 - 3x^2 + 1 = (x^2 - x - 1)(x^2 + x - 1)
        let p4 = char_poly(&mat(&[
            &[0, 1, 0, 0],
            &[1, 0, 1, 0],
            &[0, 1, 0, 1],
            &[0, 0, 1, 0],
        ]));
        assert_eq!(p4, poly(&[1, 0, -3, 0, 1]));
        assert!(certify_quadratic_factor(&p4, &BigInt::from(1), &BigInt::from(-1)));
        assert!(certify_quadratic_factor(&p4, &BigInt::from(-1), &BigInt::from(-1)));
        // rational roots are refused: x^2 - 1
        assert!(!certify_quadratic_factor(&poly(&[-1, 0, 1]), &zero, &BigInt::from(-1)));
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, -2, 0, 1]).to_string(), "x^3 - 2x");
        assert_eq!(poly(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(poly(&[1]).to_string(), "1");
    }
}
