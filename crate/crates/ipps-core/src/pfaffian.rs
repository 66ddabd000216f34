//! Pfaffians of real antisymmetric matrices.
//!
//! The workhorse is [`pfaffian`], an antisymmetric tridiagonalization with
//! partial pivoting (Parlett–Reid). It runs in O(n³), needs no complex
//! arithmetic, and is stable for the well-conditioned kernels this crate
//! produces. Near-singular input is not an error: the value (possibly 0) is
//! returned together with a pivot-ratio condition estimate in
//! [`pfaffian_with_condition`], since point-process intensities legitimately
//! approach zero.
//!
//! Sign convention, pinned by every test here: pf [[0, a], [-a, 0]] = a.
//!
//! Two structured companions:
//! * [`pfaffian_quotient`] — closed form for matrices with entries a_i / a_j
//!   above the diagonal,
//! * [`pfaffian_minor_expand`] — Laplace-style expansion along a row, used as
//!   a brute-force cross-check at small orders.

use crate::error::PfaffianError;

/// Maximum order accepted by [`pfaffian_minor_expand`].
pub const MINOR_EXPAND_MAX_ORDER: usize = 12;

/// Dense real antisymmetric matrix of even order.
///
/// Constructors take the strict upper triangle; the lower triangle is filled
/// by antisymmetry and the diagonal is zero. Entries must be finite.
#[derive(Debug, Clone)]
pub struct AntisymmetricMatrix {
    order: usize,
    data: Vec<f64>,
}

impl AntisymmetricMatrix {
    /// Build from a callback giving the entry at `(i, j)` for `i < j`.
    pub fn from_fn(
        order: usize,
        mut upper: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, PfaffianError> {
        if order == 0 || order % 2 != 0 {
            return Err(PfaffianError::OddOrder(order));
        }
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            for j in (i + 1)..order {
                let v = upper(i, j);
                if !v.is_finite() {
                    return Err(PfaffianError::NonFiniteEntry { row: i, col: j });
                }
                data[i * order + j] = v;
                data[j * order + i] = -v;
            }
        }
        Ok(Self { order, data })
    }

    /// Build from the strict upper triangle in row-major order:
    /// `[a01, a02, ..., a0(n-1), a12, ...]`.
    pub fn from_upper_rows(order: usize, upper: &[f64]) -> Result<Self, PfaffianError> {
        if order == 0 || order % 2 != 0 {
            return Err(PfaffianError::OddOrder(order));
        }
        assert_eq!(
            upper.len(),
            order * (order - 1) / 2,
            "upper triangle of an order-{order} matrix has {} entries",
            order * (order - 1) / 2
        );
        let mut it = upper.iter().copied();
        Self::from_fn(order, |_, _| it.next().unwrap())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Congruence transform B·A·Bᵀ for a full matrix B (used by tests and by
    /// kernel conjugation checks). The result is antisymmetric again.
    pub fn congruence(&self, b: &[f64]) -> AntisymmetricMatrix {
        let n = self.order;
        assert_eq!(b.len(), n * n);
        // tmp = B * A
        let mut tmp = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let bik = b[i * n + k];
                if bik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    tmp[i * n + j] += bik * self.data[k * n + j];
                }
            }
        }
        // out = tmp * Bᵀ, re-antisymmetrized to kill roundoff drift
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += tmp[i * n + k] * b[j * n + k];
                }
                out[i * n + j] = s;
                out[j * n + i] = -s;
            }
        }
        AntisymmetricMatrix { order: n, data: out }
    }
}

/// Pfaffian value plus a crude conditioning signal.
#[derive(Debug, Clone, Copy)]
pub struct PfaffianValue {
    pub value: f64,
    /// Ratio of the largest to smallest pivot magnitude seen during the
    /// reduction; infinite when a pivot column vanished (value is exactly 0).
    pub condition: f64,
}

/// Pfaffian of `a` by Parlett–Reid reduction with partial pivoting.
pub fn pfaffian(a: &AntisymmetricMatrix) -> f64 {
    pfaffian_with_condition(a).value
}

/// Same reduction as [`pfaffian`], also reporting the pivot-ratio estimate.
pub fn pfaffian_with_condition(a: &AntisymmetricMatrix) -> PfaffianValue {
    let n = a.order;
    let mut m = a.data.clone();
    let mut sign = 1.0;
    let mut max_piv = 0.0f64;
    let mut min_piv = f64::INFINITY;
    let mut value = 1.0;

    for k in (0..n).step_by(2) {
        // Largest entry in column k below the diagonal becomes the pivot.
        let mut piv_row = k + 1;
        let mut best = m[(k + 1) * n + k].abs();
        for i in (k + 2)..n {
            let v = m[i * n + k].abs();
            if v > best {
                best = v;
                piv_row = i;
            }
        }
        if best == 0.0 {
            return PfaffianValue {
                value: 0.0,
                condition: f64::INFINITY,
            };
        }
        if piv_row != k + 1 {
            swap_row_col(&mut m, n, piv_row, k + 1);
            sign = -sign;
        }
        let pivot = m[k * n + k + 1];
        value *= pivot;
        max_piv = max_piv.max(best);
        min_piv = min_piv.min(best);

        // Zero column k below row k+1 (and row k right of k+1, by symmetry)
        // with a unit-determinant congruence built on row/column k+1.
        for j in (k + 2)..n {
            let mu = m[j * n + k] / m[(k + 1) * n + k];
            if mu != 0.0 {
                for l in 0..n {
                    m[j * n + l] -= mu * m[(k + 1) * n + l];
                }
                for l in 0..n {
                    m[l * n + j] -= mu * m[l * n + k + 1];
                }
            }
        }
    }

    PfaffianValue {
        value: sign * value,
        condition: max_piv / min_piv,
    }
}

fn swap_row_col(m: &mut [f64], n: usize, r1: usize, r2: usize) {
    for l in 0..n {
        m.swap(r1 * n + l, r2 * n + l);
    }
    for l in 0..n {
        m.swap(l * n + r1, l * n + r2);
    }
}

/// Pfaffian of the quotient matrix A[i][j] = a_i / a_j for i < j:
/// (a₂ a₄ ⋯ a₂ₙ) / (a₁ a₃ ⋯ a₂ₙ₋₁).
pub fn pfaffian_quotient(a: &[f64]) -> Result<f64, PfaffianError> {
    if a.is_empty() || a.len() % 2 != 0 {
        return Err(PfaffianError::OddOrder(a.len()));
    }
    for (i, &v) in a.iter().enumerate() {
        if !v.is_finite() {
            return Err(PfaffianError::NonFiniteEntry { row: i, col: i });
        }
        if v == 0.0 {
            return Err(PfaffianError::ZeroEntry(i));
        }
    }
    let mut num = 1.0;
    let mut den = 1.0;
    for (i, &v) in a.iter().enumerate() {
        // 1-indexed: even positions in the numerator.
        if i % 2 == 1 {
            num *= v;
        } else {
            den *= v;
        }
    }
    Ok(num / den)
}

/// Laplace-style expansion of the Pfaffian along `row`.
///
/// Returns one `(sign, sub_pfaffian)` pair per column `j != row`, in
/// ascending `j`, such that Σⱼ sign·A[row][j]·sub_pfaffian = pf(A). The
/// sub-Pfaffians are computed by the same recursive expansion, so the whole
/// thing is independent of the Parlett–Reid path and serves as its oracle.
pub fn pfaffian_minor_expand(
    a: &AntisymmetricMatrix,
    row: usize,
) -> Result<Vec<(f64, f64)>, PfaffianError> {
    let n = a.order;
    if n > MINOR_EXPAND_MAX_ORDER {
        return Err(PfaffianError::OrderTooLarge {
            order: n,
            max: MINOR_EXPAND_MAX_ORDER,
        });
    }
    assert!(row < n, "row {row} out of range for order {n}");
    let mut out = Vec::with_capacity(n - 1);
    for j in 0..n {
        if j == row {
            continue;
        }
        let minor = drop_two(a, row, j);
        out.push((expand_sign(row, j), pfaffian_recursive(&minor)));
    }
    Ok(out)
}

/// Sign in front of a_{ij}·pf(A_{îĵ}): (−1)^{i+j+1} for j > i, (−1)^{i+j} otherwise.
fn expand_sign(i: usize, j: usize) -> f64 {
    let parity = if j > i { i + j + 1 } else { i + j };
    if parity % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn drop_two(a: &AntisymmetricMatrix, r: usize, s: usize) -> Vec<Vec<f64>> {
    let n = a.order;
    let keep: Vec<usize> = (0..n).filter(|&k| k != r && k != s).collect();
    keep.iter()
        .map(|&i| keep.iter().map(|&j| a.get(i, j)).collect())
        .collect()
}

fn pfaffian_recursive(m: &Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    let mut total = 0.0;
    for j in 1..n {
        let entry = m[0][j];
        if entry == 0.0 {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let minor: Vec<Vec<f64>> = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| m[a][b]).collect())
            .collect();
        total += expand_sign(0, j) * entry * pfaffian_recursive(&minor);
    }
    total
}
