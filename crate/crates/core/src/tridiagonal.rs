//! The tridiagonal coefficient matrix whose inverse columns are the
//! multipliers that combine the single-square inequalities into a bound.
//!
//! Rows and columns are indexed by `m in [k, r-1]`. Column `m` holds the
//! coefficients of `f_{m-1}, f_m, f_{m+1}` in the inequality for `m`:
//!
//! * `d_{m-1,m} = -x_{m,r}`
//! * `d_{m,m}   = 2 - (k-1) / (m x_{m,r})`
//! * `d_{m+1,m} = -(1 - (k-1)/m) / x_{m,r}`

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{int, serde_rational, x_ratio, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TridiagonalSystem {
    k: u32,
    r: u32,
    /// `d_{m,m}` for `m = k..r-1`.
    diag: Vec<Rational>,
    /// `d_{m,m+1}` for `m = k..r-2`.
    upper: Vec<Rational>,
    /// `d_{m+1,m}` for `m = k..r-2`.
    lower: Vec<Rational>,
}

/// Largest perturbation for which every inverse entry stays positive:
/// `(k-1) / ((r-1)(r-k))`.
pub fn positivity_threshold(k: u32, r: u32) -> Rational {
    Rational::new(
        BigInt::from(k - 1),
        BigInt::from(r - 1) * BigInt::from(r - k),
    )
}

fn above_coefficient(k: u32, m: u32, r: u32) -> Result<Rational> {
    // d_{m+1,m}: coefficient of f_{m+1} in row m.
    let x = x_ratio(k, m, r)?;
    let shrink = Rational::one() - Rational::new(BigInt::from(k - 1), BigInt::from(m));
    Ok(-(shrink / x))
}

impl TridiagonalSystem {
    pub fn new(k: u32, r: u32) -> Result<Self> {
        if k < 2 || r <= k {
            return Err(Error::InvalidParameters(format!(
                "the tridiagonal system needs 2 <= k < r, got k = {k}, r = {r}"
            )));
        }
        let mut diag = Vec::new();
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for m in k..r {
            let x = x_ratio(k, m, r)?;
            let d = int(2) - Rational::new(BigInt::from(k - 1), BigInt::from(m)) / &x;
            diag.push(d);
            if m + 1 < r {
                upper.push(-x_ratio(k, m + 1, r)?);
                lower.push(above_coefficient(k, m, r)?);
            }
        }
        Ok(TridiagonalSystem {
            k,
            r,
            diag,
            upper,
            lower,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Dimension `r - k`.
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diagonal(&self) -> &[Rational] {
        &self.diag
    }

    /// Super-diagonal entries `d_{m,m+1}`, `m = k..r-2`.
    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    /// Sub-diagonal entries `d_{m+1,m}`, `m = k..r-2`.
    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    /// Entry `d_{l,m}` with both indices in `[k, r-1]`.
    pub fn entry(&self, l: u32, m: u32) -> Rational {
        let (k, r) = (self.k, self.r);
        assert!((k..r).contains(&l) && (k..r).contains(&m), "index out of range");
        let (li, mi) = ((l - k) as usize, (m - k) as usize);
        if li == mi {
            self.diag[mi].clone()
        } else if li + 1 == mi {
            self.upper[li].clone()
        } else if mi + 1 == li {
            self.lower[mi].clone()
        } else {
            Rational::zero()
        }
    }

    /// Coefficient magnitude of `f_{k-1}` in the first row: `x_{k,r}`.
    pub fn low_boundary(&self) -> Rational {
        x_ratio(self.k, self.k, self.r).expect("validated in new")
    }

    /// Coefficient magnitude of `f_r` in the last row:
    /// `(1 - (k-1)/(r-1)) / x_{r-1,r}`.
    pub fn high_boundary(&self) -> Rational {
        -above_coefficient(self.k, self.r - 1, self.r).expect("validated in new")
    }

    /// Dense copy of `D - eps I`.
    pub fn dense(&self, eps: &Rational) -> Vec<Vec<Rational>> {
        let dim = self.dim();
        let mut rows = vec![vec![Rational::zero(); dim]; dim];
        for i in 0..dim {
            rows[i][i] = &self.diag[i] - eps;
            if i + 1 < dim {
                rows[i][i + 1] = self.upper[i].clone();
                rows[i + 1][i] = self.lower[i].clone();
            }
        }
        rows
    }

    pub fn recurrences(&self, eps: &Rational) -> RecurrenceTables {
        RecurrenceTables::compute(self, eps)
    }

    /// Inverse entry `delta_{m,g}(eps)` from the determinant recursions.
    pub fn inverse_entry(&self, eps: &Rational, m: u32, g: u32) -> Result<Rational> {
        self.recurrences(eps).inverse_entry(self, m, g)
    }

    /// Full inverse `(D - eps I)^{-1}` from the determinant recursions;
    /// row/column `i` corresponds to index `k + i`.
    pub fn inverse_matrix(&self, eps: &Rational) -> Result<Vec<Vec<Rational>>> {
        let tables = self.recurrences(eps);
        (self.k..self.r)
            .map(|m| {
                (self.k..self.r)
                    .map(|g| tables.inverse_entry(self, m, g))
                    .collect()
            })
            .collect()
    }

    /// Solves `(D - eps I) delta = e_g` by exact Gaussian elimination,
    /// independently of the recursion formulas.
    pub fn solve_column(&self, eps: &Rational, g: u32) -> Result<Vec<Rational>> {
        if !(self.k..self.r).contains(&g) {
            return Err(Error::InvalidParameters(format!(
                "column g = {g} outside [{}, {}]",
                self.k,
                self.r - 1
            )));
        }
        let dim = self.dim();
        let mut a = self.dense(eps);
        let mut rhs = vec![Rational::zero(); dim];
        rhs[(g - self.k) as usize] = Rational::one();
        for col in 0..dim {
            let pivot = (col..dim)
                .find(|&row| !a[row][col].is_zero())
                .ok_or_else(|| self.singular(eps))?;
            a.swap(col, pivot);
            rhs.swap(col, pivot);
            for row in col + 1..dim {
                if a[row][col].is_zero() {
                    continue;
                }
                let factor = &a[row][col] / &a[col][col];
                for c in col..dim {
                    let delta = &factor * &a[col][c];
                    a[row][c] -= delta;
                }
                let delta = &factor * &rhs[col];
                rhs[row] -= delta;
            }
        }
        let mut x = vec![Rational::zero(); dim];
        for row in (0..dim).rev() {
            let mut acc = rhs[row].clone();
            for c in row + 1..dim {
                acc -= &a[row][c] * &x[c];
            }
            x[row] = acc / &a[row][row];
        }
        Ok(x)
    }

    fn singular(&self, eps: &Rational) -> Error {
        Error::Singular {
            k: self.k,
            r: self.r,
            eps: eps.to_string(),
        }
    }
}

/// Leading (`theta`) and trailing (`phi`) principal minors of `D - eps I`,
/// their increments `zeta_m = phi_{m+1} - phi_m`, and the determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceTables {
    pub k: u32,
    pub r: u32,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    /// `theta_{k-1}, ..., theta_{r-1}`.
    #[serde(with = "serde_rational::vec")]
    pub theta: Vec<Rational>,
    /// `phi_k, ..., phi_r`.
    #[serde(with = "serde_rational::vec")]
    pub phi: Vec<Rational>,
    /// `zeta_k, ..., zeta_{r-1}`.
    #[serde(with = "serde_rational::vec")]
    pub zeta: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub determinant: Rational,
}

impl RecurrenceTables {
    fn compute(sys: &TridiagonalSystem, eps: &Rational) -> Self {
        let (k, r) = (sys.k, sys.r);
        let dim = sys.dim();
        let shifted: Vec<Rational> = sys.diag.iter().map(|d| d - eps).collect();
        let coupling: Vec<Rational> = sys
            .upper
            .iter()
            .zip(&sys.lower)
            .map(|(u, l)| u * l)
            .collect();

        // theta[i] = theta_{k-1+i}
        let mut theta = vec![Rational::one()];
        for i in 0..dim {
            let mut next = &shifted[i] * &theta[i];
            if i >= 1 {
                next -= &coupling[i - 1] * &theta[i - 1];
            }
            theta.push(next);
        }

        // phi[i] = phi_{k+i}, filled from phi_r = 1 downwards.
        let mut phi = vec![Rational::zero(); dim + 1];
        phi[dim] = Rational::one();
        for i in (0..dim).rev() {
            let mut next = &shifted[i] * &phi[i + 1];
            if i + 2 <= dim {
                next -= &coupling[i] * &phi[i + 2];
            }
            phi[i] = next;
        }

        let determinant = theta[dim].clone();
        assert_eq!(
            determinant, phi[0],
            "leading and trailing minor recursions disagree on det(D - eps I)"
        );
        let zeta = (0..dim).map(|i| &phi[i + 1] - &phi[i]).collect();
        RecurrenceTables {
            k,
            r,
            epsilon: eps.clone(),
            theta,
            phi,
            zeta,
            determinant,
        }
    }

    /// `theta_m`, with `theta_{k-2} = 0`.
    pub fn theta(&self, m: u32) -> Rational {
        if m + 2 == self.k {
            return Rational::zero();
        }
        self.theta[(m + 1 - self.k) as usize].clone()
    }

    /// `phi_m`, with `phi_{r+1} = 0`.
    pub fn phi(&self, m: u32) -> Rational {
        if m == self.r + 1 {
            return Rational::zero();
        }
        self.phi[(m - self.k) as usize].clone()
    }

    pub fn zeta(&self, m: u32) -> Rational {
        self.zeta[(m - self.k) as usize].clone()
    }

    /// `true` when every minor is strictly positive (the regime where all
    /// inverse entries are positive).
    pub fn all_minors_positive(&self) -> bool {
        self.theta.iter().chain(&self.phi).all(|v| v.is_positive())
    }

    /// `delta_{m,g}` via the product formula
    /// `(-1)^{m+g} theta_{min-1} phi_{max+1} prod(off-diagonal) / det`.
    pub fn inverse_entry(&self, sys: &TridiagonalSystem, m: u32, g: u32) -> Result<Rational> {
        let (k, r) = (self.k, self.r);
        if !(k..r).contains(&m) || !(k..r).contains(&g) {
            return Err(Error::InvalidParameters(format!(
                "inverse entry ({m}, {g}) outside [{k}, {}]",
                r - 1
            )));
        }
        if self.determinant.is_zero() {
            return Err(sys.singular(&self.epsilon));
        }
        let (lo, hi) = (m.min(g), m.max(g));
        let mut value = self.theta(lo - 1) * self.phi(hi + 1);
        for i in lo..hi {
            let idx = (i - k) as usize;
            value *= if m <= g { &sys.upper[idx] } else { &sys.lower[idx] };
        }
        if (m + g) % 2 == 1 {
            value = -value;
        }
        Ok(value / &self.determinant)
    }
}

/// The multipliers `delta_k..delta_{r-1}` for target clique size `g`:
/// column `g` of `(D - eps I)^{-1}`, obtained by a direct solve.
pub fn solve_delta(k: u32, g: u32, r: u32, eps: &Rational) -> Result<Vec<Rational>> {
    if g < k || g >= r {
        return Err(Error::InvalidParameters(format!(
            "solve_delta needs k <= g <= r-1, got k = {k}, g = {g}, r = {r}"
        )));
    }
    TridiagonalSystem::new(k, r)?.solve_column(eps, g)
}
