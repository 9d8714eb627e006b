//! Dense integer matrices and Smith normal form.
//!
//! Matrices are small in this crate (curve-system pairing matrices and
//! linking matrices, at most a dozen rows), so a plain `Vec<i64>` store with
//! exact integer arithmetic is the right tool.  Determinants are computed
//! fraction-free in `i128`; Smith reduction tracks the unimodular factors so
//! that `u * m * v == d` is an enforced postcondition, not a convention.

use serde::Serialize;

use crate::error::{Error, Result};

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidArgument(format!(
                    "ragged rows: expected {c} entries, got {}",
                    row.len()
                )));
            }
        }
        Ok(IntMat {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.symmetry_defect().is_none()
    }

    /// First index pair witnessing asymmetry, if any.
    pub fn symmetry_defect(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for t in 0..self.cols {
                    acc += self.at(i, t) as i128 * other.at(t, j) as i128;
                }
                out.set(i, j, i64::try_from(acc).expect("product entry exceeds i64"));
            }
        }
        out
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i)).collect()
    }

    /// Exact determinant via fraction-free (Bareiss) elimination in `i128`.
    pub fn det(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j) as i128).collect())
            .collect();
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        let overflow = || Error::InvalidArgument("determinant overflows i128".into());
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return Ok(0);
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lead = a[i][j].checked_mul(a[k][k]).ok_or_else(overflow)?;
                    let trail = a[i][k].checked_mul(a[k][j]).ok_or_else(overflow)?;
                    a[i][j] = lead.checked_sub(trail).ok_or_else(overflow)? / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        Ok(sign * a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(1) | Ok(-1))
    }

}

impl std::fmt::Display for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of Smith reduction: unimodular `u`, `v` with `u * m * v = d`,
/// `d` diagonal with non-negative entries and `d[0] | d[1] | ...`.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.d.diagonal().into_iter().filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

// The reduction runs on widened working matrices: transform entries can pass
// through magnitudes far beyond the input entries before settling, so all
// intermediate arithmetic is checked i128 and the factors are narrowed to
// i64 only at the very end.
type Wide = Vec<Vec<i128>>;

fn wide_from(m: &IntMat) -> Wide {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j) as i128).collect())
        .collect()
}

fn wide_identity(n: usize) -> Wide {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect()
}

fn fma(acc: i128, x: i128, y: i128) -> i128 {
    x.checked_mul(y)
        .and_then(|p| acc.checked_add(p))
        .expect("Smith reduction exceeds i128")
}

/// row[dst] += c * row[src]
fn add_wide_row(m: &mut Wide, dst: usize, src: usize, c: i128) {
    for j in 0..m[dst].len() {
        m[dst][j] = fma(m[dst][j], c, m[src][j]);
    }
}

/// col[dst] += c * col[src]
fn add_wide_col(m: &mut Wide, dst: usize, src: usize, c: i128) {
    for row in m.iter_mut() {
        row[dst] = fma(row[dst], c, row[src]);
    }
}

/// Quotient rounded to nearest, so |b - q*a| <= |a|/2.  Keeping remainders
/// half-sized (least-remainder Euclid) is what keeps the transform entries
/// from blowing up during the reduction.
fn nearest_quotient(b: i128, a: i128) -> i128 {
    let rem = |c: i128| {
        c.checked_mul(a)
            .and_then(|p| b.checked_sub(p))
            .expect("Smith reduction exceeds i128")
            .abs()
    };
    let q = b / a;
    *[q - 1, q, q + 1].iter().min_by_key(|&&c| rem(c)).unwrap()
}

fn swap_wide_cols(m: &mut Wide, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn narrow(w: &Wide, rows: usize, cols: usize) -> IntMat {
    let mut out = IntMat::zeros(rows, cols);
    for (i, row) in w.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out.set(i, j, i64::try_from(x).expect("Smith factor entry exceeds i64"));
        }
    }
    out
}

fn wide_product_matches(u: &Wide, m: &IntMat, v: &Wide, d: &Wide) -> bool {
    let dot = |acc: i128, x: i128, y: i128| {
        x.checked_mul(y)
            .and_then(|p| acc.checked_add(p))
            .expect("Smith verification exceeds i128")
    };
    // um = u * m, then compare (um * v) with d entrywise.
    let um: Wide = (0..u.len())
        .map(|i| {
            (0..m.cols())
                .map(|j| (0..m.rows()).fold(0, |acc, t| dot(acc, u[i][t], m.at(t, j) as i128)))
                .collect()
        })
        .collect();
    (0..u.len()).all(|i| {
        (0..v.len()).all(|j| {
            let x = (0..v.len()).fold(0, |acc, t| dot(acc, um[i][t], v[t][j]));
            x == d[i][j]
        })
    })
}

/// Shared reduction core.  Pivoting always selects a smallest-magnitude
/// nonzero entry of the working submatrix; off-pivot entries are then reduced
/// by nearest-quotient shears, which leave remainders of at most half the
/// pivot.  Any surviving remainder becomes the next (strictly smaller) pivot,
/// so each position converges like least-remainder Euclid; the half-sized
/// multipliers are also what keeps the transform entries tame.  After a pivot
/// cleans up, a divisibility sweep folds any non-divisible remaining entry
/// back into the pivot row, establishing the divisor chain.
///
/// With `transforms` false the returned `u`, `v` are empty and none of the
/// transform bookkeeping runs; the transform entries can be enormously larger
/// than the invariant factors (for a continued-fraction chain matrix they
/// carry the convergents), so diagonal-only callers must not pay for — or be
/// killed by — witnesses they never look at.
fn smith_reduce(m: &IntMat, transforms: bool) -> (Wide, Wide, Wide) {
    let mut d = wide_from(m);
    let mut u = if transforms { wide_identity(m.rows()) } else { Wide::new() };
    let mut v = if transforms { wide_identity(m.cols()) } else { Wide::new() };
    let (rows, cols) = (m.rows(), m.cols());
    let steps = rows.min(cols);

    for t in 0..steps {
        'pivot: loop {
            // Smallest-magnitude nonzero entry in the trailing submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d[i][j];
                    if x != 0 && pivot.is_none_or(|(pi, pj)| x.abs() < d[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'pivot; // trailing submatrix is zero: done
            };
            d.swap(t, pi);
            swap_wide_cols(&mut d, t, pj);
            if transforms {
                u.swap(t, pi);
                swap_wide_cols(&mut v, t, pj);
            }

            let a = d[t][t];
            for i in t + 1..rows {
                let c = nearest_quotient(d[i][t], a);
                if c != 0 {
                    add_wide_row(&mut d, i, t, -c);
                    if transforms {
                        add_wide_row(&mut u, i, t, -c);
                    }
                }
            }
            for j in t + 1..cols {
                let c = nearest_quotient(d[t][j], a);
                if c != 0 {
                    add_wide_col(&mut d, j, t, -c);
                    if transforms {
                        add_wide_col(&mut v, j, t, -c);
                    }
                }
            }
            // Remainders (at most half the pivot) become the next pivot.
            if (t + 1..rows).any(|i| d[i][t] != 0) || (t + 1..cols).any(|j| d[t][j] != 0) {
                continue 'pivot;
            }
            // Divisor chain: fold a non-divisible entry into row t and redo.
            let p = d[t][t];
            for i in t + 1..rows {
                if (t + 1..cols).any(|j| d[i][j] % p != 0) {
                    add_wide_row(&mut d, t, i, 1);
                    if transforms {
                        add_wide_row(&mut u, t, i, 1);
                    }
                    continue 'pivot;
                }
            }
            break 'pivot;
        }
    }
    for t in 0..steps {
        if d[t][t] < 0 {
            for x in &mut d[t] {
                *x = -*x;
            }
            if transforms {
                for x in &mut u[t] {
                    *x = -*x;
                }
            }
        }
    }

    if transforms {
        debug_assert!(wide_product_matches(&u, m, &v, &d), "u*m*v == d must hold");
    }
    (u, d, v)
}

/// Smith normal form over the integers, with unimodular transform witnesses.
///
/// `u` and `v` are unimodular by construction: every reduction step is a
/// row/column swap, a shear, or a negation.  The witnesses can be much larger
/// than the invariant factors; they are computed exactly in wide arithmetic
/// and narrowed at the end, so a matrix whose witnesses do not fit `i64`
/// panics rather than wrapping.  Callers that only need the invariant factors
/// should use [`smith_diagonal`], which never narrows the witnesses.
pub fn smith_normal_form(m: &IntMat) -> SmithNormalForm {
    let (rows, cols) = (m.rows(), m.cols());
    let (u, d, v) = smith_reduce(m, true);
    let d = narrow(&d, rows, cols);
    debug_assert!(chain_ok(&d.diagonal()), "diagonal must form a divisor chain");
    SmithNormalForm { u: narrow(&u, rows, rows), d, v: narrow(&v, cols, cols) }
}

/// The diagonal of the Smith form alone: invariant factors padded with zeros,
/// in chain order.  Skips the transform witnesses entirely — they can be far
/// larger than the factors on dense inputs — so this only panics when an
/// invariant factor itself cannot be represented.
pub fn smith_diagonal(m: &IntMat) -> Vec<i64> {
    let (_, d, _) = smith_reduce(m, false);
    let diag: Vec<i64> = (0..m.rows().min(m.cols()))
        .map(|t| i64::try_from(d[t][t]).expect("invariant factor exceeds i64"))
        .collect();
    debug_assert!(chain_ok(&diag), "diagonal must form a divisor chain");
    diag
}

fn chain_ok(diag: &[i64]) -> bool {
    // Non-negative, nonzero entries first, and each divides the next.
    let mut seen_zero = false;
    for w in diag.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a < 0 || b < 0 {
            return false;
        }
        if a == 0 {
            seen_zero = true;
        }
        if seen_zero && b != 0 {
            return false;
        }
        if a != 0 && b % a != 0 {
            return false;
        }
    }
    diag.first().is_none_or(|&a| a >= 0)
}
