//! Checked 128-bit integer helpers.
//!
//! Every arithmetic path in this crate that could conceivably grow goes
//! through these helpers: overflow aborts with a clear message instead of
//! wrapping.  With fillings and table parameters bounded by a few thousand,
//! i128 leaves enormous headroom, so an overflow here always indicates a bug
//! rather than a legitimately large value.

/// The exact integer type used throughout the crate.
pub type Int = i128;

/// Checked addition; panics on overflow.
#[inline]
pub fn add(a: Int, b: Int) -> Int {
    a.checked_add(b).expect("exact integer overflow in add")
}

/// Checked subtraction; panics on overflow.
#[inline]
pub fn sub(a: Int, b: Int) -> Int {
    a.checked_sub(b).expect("exact integer overflow in sub")
}

/// Checked multiplication; panics on overflow.
#[inline]
pub fn mul(a: Int, b: Int) -> Int {
    a.checked_mul(b).expect("exact integer overflow in mul")
}

/// Checked negation; panics on overflow (i.e. negating `Int::MIN`).
#[inline]
pub fn neg(a: Int) -> Int {
    a.checked_neg().expect("exact integer overflow in neg")
}

/// Greatest common divisor, always non-negative; `gcd(0, 0) == 0`.
pub fn gcd(a: Int, b: Int) -> Int {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    Int::try_from(a).expect("gcd overflow")
}

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and
/// `a*x + b*y == g`.
pub fn extended_gcd(a: Int, b: Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1, 0);
    let (mut y0, mut y1) = (0, 1);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, sub(r0, mul(q, r1)));
        (x0, x1) = (x1, sub(x0, mul(q, x1)));
        (y0, y1) = (y1, sub(y0, mul(q, y1)));
    }
    if r0 < 0 {
        (neg(r0), neg(x0), neg(y0))
    } else {
        (r0, x0, y0)
    }
}

/// Non-negative remainder of `a` modulo `m > 0`.
#[inline]
pub fn rem_euclid(a: Int, m: Int) -> Int {
    debug_assert!(m > 0);
    a.rem_euclid(m)
}

/// Exact determinant of a square integer matrix.
///
/// Uses fraction-free Gaussian elimination (Bareiss), so every intermediate
/// value is itself a minor of the input matrix and all divisions are exact.
/// Panics if `rows` is not square or if an intermediate minor overflows.
pub fn matrix_determinant(mut rows: Vec<Vec<Int>>) -> Int {
    let n = rows.len();
    for row in &rows {
        assert_eq!(row.len(), n, "matrix_determinant needs a square matrix");
    }
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev_pivot = 1;
    for k in 0..n - 1 {
        if rows[k][k] == 0 {
            match (k + 1..n).find(|&r| rows[r][k] != 0) {
                Some(r) => {
                    rows.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(mul(rows[i][j], rows[k][k]), mul(rows[i][k], rows[k][j]));
                debug_assert_eq!(num % prev_pivot, 0, "Bareiss division must be exact");
                rows[i][j] = num / prev_pivot;
            }
            rows[i][k] = 0;
        }
        prev_pivot = rows[k][k];
    }
    mul(sign, rows[n - 1][n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(-4, 6), 2);
        assert_eq!(gcd(13, 5), 1);
    }

    #[test]
    fn extended_gcd_bezout() {
        for a in -20..=20 {
            for b in -20..=20 {
                let (g, x, y) = extended_gcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(a * x + b * y, g, "bezout failed for {a},{b}");
            }
        }
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn mul_overflow_is_hard_failure() {
        let _ = mul(Int::MAX, 2);
    }

    /// Reference determinant by cofactor expansion along the first row.
    fn cofactor_determinant(rows: &[Vec<Int>]) -> Int {
        let n = rows.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return rows[0][0];
        }
        let mut total = 0;
        for (j, &entry) in rows[0].iter().enumerate() {
            if entry == 0 {
                continue;
            }
            let minor: Vec<Vec<Int>> = rows[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = mul(entry, cofactor_determinant(&minor));
            total = if j % 2 == 0 {
                add(total, term)
            } else {
                sub(total, term)
            };
        }
        total
    }

    #[test]
    fn determinant_known_values() {
        assert_eq!(matrix_determinant(vec![]), 1);
        assert_eq!(matrix_determinant(vec![vec![-7]]), -7);
        assert_eq!(matrix_determinant(vec![vec![1, 2], vec![3, 4]]), -2);
        // Singular matrix, including one that needs a row swap first.
        assert_eq!(
            matrix_determinant(vec![vec![1, 2], vec![2, 4]]),
            0
        );
        assert_eq!(
            matrix_determinant(vec![
                vec![0, 0, 1],
                vec![0, 2, 5],
                vec![3, 1, 1],
            ]),
            -6
        );
        // Vandermonde on (1, 2, 3, 4): product of differences = 12.
        let vandermonde: Vec<Vec<Int>> = (1..=4)
            .map(|x: Int| (0..4).map(|k| x.pow(k)).collect())
            .collect();
        assert_eq!(matrix_determinant(vandermonde), 12);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        // Small deterministic pseudo-random matrices, sizes 1 through 6.
        let mut state: Int = 9_7531;
        let mut next = move || {
            state = (state * 6_364_136_223_846_793_005 + 1_442_695_040_888_963_407)
                % 1_000_003;
            state % 19 - 9
        };
        for n in 1..=6 {
            for _ in 0..8 {
                let rows: Vec<Vec<Int>> =
                    (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                assert_eq!(
                    matrix_determinant(rows.clone()),
                    cofactor_determinant(&rows),
                    "mismatch on {rows:?}"
                );
            }
        }
    }
}
