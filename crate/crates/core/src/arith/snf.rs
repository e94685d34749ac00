//! Smith normal form over the integers, with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct SnfOptions {
    /// Fail with [`Error::PrecisionOverflow`] once any working entry needs more
    /// than this many bits. `None` means unbounded.
    pub bit_cap: Option<u64>,
}

/// `left * A * right` is diagonal with entries `diag`; each non-zero entry
/// divides the next and zeros come last. `right_inverse` is `right^-1`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Non-zero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diag[..self.rank()]
    }

    /// Columns of `right` spanning the integer kernel of `A`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.right.ncols())
            .map(|j| self.right.column(j))
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    smith_normal_form_with(a, &SnfOptions::default()).expect("unbounded SNF cannot overflow")
}

/// Smallest-absolute-value pivoting with row-major tie-break, so the output is
/// a deterministic function of the input.
pub fn smith_normal_form_with(a: &IntMatrix, opts: &SnfOptions) -> Result<SnfResult> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut w = Work {
        a: a.clone(),
        left: IntMatrix::identity(m),
        right: IntMatrix::identity(n),
        rinv: IntMatrix::identity(n),
        cap: opts.bit_cap,
    };
    w.check_cap()?;
    let steps = m.min(n);
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = w.smallest_in_block(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                w.add_row(i, t, &-q);
                dirty |= !w.a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                w.add_col(j, t, &-q);
                dirty |= !w.a[(t, j)].is_zero();
            }
            w.check_cap()?;
            if dirty {
                w.move_smallest_cross_to_pivot(t);
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[(i, j)].is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.a.negate_row(t);
            w.left.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..steps).map(|i| w.a[(i, i)].clone()).collect();
    Ok(SnfResult {
        diag,
        left: w.left,
        right: w.right,
        right_inverse: w.rinv,
    })
}

struct Work {
    a: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
    rinv: IntMatrix,
    cap: Option<u64>,
}

impl Work {
    fn check_cap(&self) -> Result<()> {
        match self.cap {
            Some(cap) if self.a.max_bits() > cap => Err(Error::PrecisionOverflow { cap }),
            _ => Ok(()),
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.nrows() {
            for j in t..self.a.ncols() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn move_smallest_cross_to_pivot(&mut self, t: usize) {
        let mut best = ((t, t), self.a[(t, t)].abs());
        for i in t + 1..self.a.nrows() {
            let v = self.a[(i, t)].abs();
            if !v.is_zero() && v < best.1 {
                best = ((i, t), v);
            }
        }
        for j in t + 1..self.a.ncols() {
            let v = self.a[(t, j)].abs();
            if !v.is_zero() && v < best.1 {
                best = ((t, j), v);
            }
        }
        let (i, j) = best.0;
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.left.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.rinv.swap_rows(a, b);
    }

    /// `row[dst] += f * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.left.add_row_multiple(dst, src, f);
    }

    /// `col[dst] += f * col[src]`; the inverse picks up `row[src] -= f * row[dst]`.
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.right.add_col_multiple(dst, src, f);
        self.rinv.add_row_multiple(src, dst, &-f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix, r: &SnfResult) {
        let d = &(&r.left * a) * &r.right;
        assert!(d.is_diagonal(), "not diagonal: {d:?}");
        for (i, v) in r.diag.iter().enumerate() {
            assert_eq!(&d[(i, i)], v);
            assert!(!v.is_negative());
        }
        let nz = r.rank();
        assert!(r.diag[nz..].iter().all(|v| v.is_zero()));
        for w in r.diag[..nz].windows(2) {
            assert!(
                w[1].is_multiple_of(&w[0]),
                "divisibility chain broken: {:?}",
                r.diag
            );
        }
        assert!(r.left.is_unimodular());
        assert!(r.right.is_unimodular());
        assert_eq!(&r.right * &r.right_inverse, IntMatrix::identity(a.ncols()));
    }

    #[test]
    fn small_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let r = smith_normal_form(&a);
        check(&a, &r);
        assert_eq!(r.diag, vec![BigInt::from(1), BigInt::from(6)]);

        let a = IntMatrix::from_rows(&[vec![0]]);
        assert_eq!(smith_normal_form(&a).diag, vec![BigInt::zero()]);

        let a = IntMatrix::identity(3);
        let r = smith_normal_form(&a);
        check(&a, &r);
        assert!(r.diag.iter().all(|d| *d == BigInt::from(1)));
    }

    #[test]
    fn rectangular_and_empty() {
        let a = IntMatrix::from_rows(&[vec![3, 9, 6]]);
        let r = smith_normal_form(&a);
        check(&a, &r);
        assert_eq!(r.diag, vec![BigInt::from(3)]);
        assert_eq!(r.kernel_basis().len(), 2);

        let a = IntMatrix::zeros(0, 2);
        let r = smith_normal_form(&a);
        assert!(r.diag.is_empty());
        assert_eq!(r.kernel_basis().len(), 2);
    }

    #[test]
    fn bit_cap_reports_overflow() {
        let a = IntMatrix::from_rows(&[vec![1i64 << 40, 3], vec![5, 7]]);
        let err = smith_normal_form_with(&a, &SnfOptions { bit_cap: Some(16) }).unwrap_err();
        assert_eq!(err, Error::PrecisionOverflow { cap: 16 });
    }

    fn matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), m)
                .prop_map(|rows| IntMatrix::from_rows(&rows))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn transforms_diagonalise(a in matrix()) {
            let r = smith_normal_form(&a);
            check(&a, &r);
            // |det| is preserved on square inputs
            if a.nrows() == a.ncols() {
                let prod = r.diag.iter().fold(BigInt::from(1), |acc, d| acc * d);
                prop_assert_eq!(a.determinant().abs(), prod);
            }
        }
    }
}
