//! Eigencomponent decomposition of a Frobenius series.
//!
//! A series `c_e` with components `a_0..a_u` satisfies
//! `c_e = Σ_i a_i λ_i^e` for the nodes `λ_i = p^(t-i)`. Given `c_0..c_u` the
//! components are recovered with the Lagrange basis of the nodes: if
//! `L_i(z) = Π_{j≠i} (z - λ_j)/(λ_i - λ_j) = Σ_e ℓ_{i,e} z^e` then
//! `a_i = Σ_e ℓ_{i,e} c_e`. All arithmetic is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};

/// `c_e = χ(F^e X, Y)` for `e = 0..=e_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiTable {
    pub p: u64,
    /// `codim X`.
    pub t: i64,
    pub values: Vec<i64>,
}

impl ChiTable {
    pub fn e_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn rational_values(&self) -> Vec<BigRational> {
        self.values.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }
}

/// Components `a_0..a_u` of a series; `a_0` is the Dutta multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenComponents {
    pub p: u64,
    pub t: i64,
    pub u: usize,
    pub components: Vec<BigRational>,
}

/// `p^k` for any integer `k`.
pub fn rational_power(p: u64, k: i64) -> BigRational {
    let k = i32::try_from(k).expect("exponent fits in i32");
    BigRational::from_integer(BigInt::from(p)).pow(k)
}

fn node(p: u64, t: i64, i: usize) -> BigRational {
    rational_power(p, t - i as i64)
}

impl EigenComponents {
    /// Solves `Σ_i p^(e(t-i)) a_i = c_e` for `e = 0..=u`, using the first
    /// `u + 1` entries of `values`.
    pub fn solve(p: u64, t: i64, values: &[BigRational], u: usize) -> Result<Self> {
        if values.len() < u + 1 {
            return Err(AlgebraError::InsufficientTable {
                have: values.len(),
                need: u + 1,
            });
        }
        let nodes: Vec<BigRational> = (0..=u).map(|i| node(p, t, i)).collect();
        let mut components = Vec::with_capacity(u + 1);
        for i in 0..=u {
            // Coefficients of L_i, lowest degree first.
            let mut poly = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, lj) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * lj;
                }
                poly = next;
                denom *= &nodes[i] - lj;
            }
            let a: BigRational = poly.iter().zip(values).map(|(l, c)| l * c).sum();
            components.push(a / denom);
        }
        Ok(EigenComponents { p, t, u, components })
    }

    /// `a_0`.
    pub fn leading(&self) -> &BigRational {
        &self.components[0]
    }

    /// `Σ_i a_i p^(e(t-i))`.
    pub fn predict(&self, e: usize) -> BigRational {
        self.components
            .iter()
            .enumerate()
            .map(|(i, a)| a * rational_power(self.p, (self.t - i as i64) * e as i64))
            .sum()
    }

    /// First `e` at which the prediction differs from `values[e]`.
    pub fn first_mismatch(&self, values: &[BigRational]) -> Option<usize> {
        values.iter().enumerate().find(|(e, c)| self.predict(*e) != **c).map(|(e, _)| e)
    }

    /// Fails with the first tabulated `e` that is not reproduced.
    pub fn check_reconstruction(&self, values: &[BigRational]) -> Result<()> {
        match self.first_mismatch(values) {
            None => Ok(()),
            Some(e) => Err(AlgebraError::ReconstructionMismatch { u: self.u, e }),
        }
    }
}

/// Decomposes a table with `u + 1` components.
pub fn vandermonde_solve(table: &ChiTable, u: usize) -> Result<EigenComponents> {
    EigenComponents::solve(table.p, table.t, &table.rational_values(), u)
}

/// Smallest `u` whose decomposition reproduces every entry of `values`.
/// Always at most `values.len() - 1`; `None` only for an empty table.
pub fn recurrence_order(p: u64, t: i64, values: &[BigRational]) -> Option<(usize, EigenComponents)> {
    (0..values.len()).find_map(|u| {
        let comps = EigenComponents::solve(p, t, values, u).ok()?;
        comps.first_mismatch(values).is_none().then_some((u, comps))
    })
}
