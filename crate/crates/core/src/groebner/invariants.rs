use std::collections::HashSet;
use std::fmt;

use super::GroebnerBasis;
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;

/// Cap on the number of standard monomials a length computation may visit.
pub const MAX_STANDARD_MONOMIALS: u64 = 20_000_000;

/// Length of a graded module: finite, or infinite when the support is
/// positive dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

/// Largest set of variables independent modulo the monomial ideal spanned by
/// `leads`, i.e. `dim S/(leads)`; `-1` for the unit ideal.
fn monomial_ideal_dim(nvars: usize, leads: &[&Monomial]) -> i64 {
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (v, _)| acc | 1 << v)
        })
        .collect();
    fn search(v: usize, n: usize, chosen: u64, size: usize, best: &mut usize, supports: &[u64]) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | 1 << v;
        if !supports.iter().any(|&s| s & !with == 0) {
            search(v + 1, n, with, size + 1, best, supports);
        }
        search(v + 1, n, chosen, size, best, supports);
    }
    let mut best = 0;
    search(0, nvars, 0, 0, &mut best, &supports);
    best as i64
}

/// Krull dimension of `F^n / M` for the submodule `M` with basis `gb`: the
/// maximum over positions of the dimension of the leading monomial ideal at
/// that position. Returns `-1` for the zero quotient.
pub fn krull_dim(gb: &GroebnerBasis) -> i64 {
    let n = gb.module().ring().nvars();
    assert!(n <= 64, "at most 64 variables are supported");
    (0..gb.module().rank())
        .map(|pos| {
            let leads: Vec<&Monomial> = gb.leading_monomials(pos).collect();
            monomial_ideal_dim(n, &leads)
        })
        .max()
        .unwrap_or(-1)
}

/// Number of standard monomials of `F^n / M`, which is the length of the
/// quotient when its support is the irrelevant ideal.
pub fn module_length(gb: &GroebnerBasis) -> Result<Length> {
    if krull_dim(gb) > 0 {
        return Ok(Length::Infinite);
    }
    let n = gb.module().ring().nvars();
    let mut total: u64 = 0;
    for pos in 0..gb.module().rank() {
        let leads: Vec<&Monomial> = gb.leading_monomials(pos).collect();
        if leads.iter().any(|m| m.is_one()) {
            continue;
        }
        let standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
        let mut layer = vec![Monomial::one(n)];
        while !layer.is_empty() {
            total += layer.len() as u64;
            if total > MAX_STANDARD_MONOMIALS {
                return Err(AlgebraError::Capacity(format!(
                    "more than {MAX_STANDARD_MONOMIALS} standard monomials"
                )));
            }
            let mut next = HashSet::new();
            for m in &layer {
                for v in 0..n {
                    let mv = m.mul(&Monomial::var(n, v));
                    if standard(&mv) {
                        next.insert(mv);
                    }
                }
            }
            layer = next.into_iter().collect();
        }
    }
    Ok(Length::Finite(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, FreeModule};
    use crate::poly::{PolyRing, Polynomial};

    fn ideal_gb(p: u64, vars: &[&str], gens: &[&str]) -> GroebnerBasis {
        let r = PolyRing::degrevlex(p, vars).unwrap();
        let m = FreeModule::new(&r, vec![0]);
        let gens: Vec<_> = gens
            .iter()
            .map(|s| m.embed(&Polynomial::parse(&r, s).unwrap(), 0))
            .collect();
        buchberger(&m, &gens).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(krull_dim(&ideal_gb(2, &["x", "y", "u", "v"], &["x*y - u*v"])), 3);
        assert_eq!(krull_dim(&ideal_gb(3, &["x", "y"], &["x", "y"])), 0);
        assert_eq!(krull_dim(&ideal_gb(3, &["x", "y"], &["1"])), -1);
        assert_eq!(krull_dim(&ideal_gb(3, &["x", "y"], &[])), 2);
        assert_eq!(krull_dim(&ideal_gb(3, &["x", "y", "z"], &["x*y", "x*z"])), 2);
        assert_eq!(krull_dim(&ideal_gb(3, &["x", "y", "z"], &["x*y", "y*z", "x*z"])), 1);
    }

    #[test]
    fn length_examples() {
        let gb = ideal_gb(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(module_length(&gb), Ok(Length::Finite(3)));
        let gb = ideal_gb(2, &["x", "y"], &["x^2", "y^2"]);
        assert_eq!(module_length(&gb), Ok(Length::Finite(4)));
        let gb = ideal_gb(2, &["x", "y"], &["x^2"]);
        assert_eq!(module_length(&gb), Ok(Length::Infinite));
        let gb = ideal_gb(2, &["x", "y"], &["1"]);
        assert_eq!(module_length(&gb), Ok(Length::Finite(0)));
    }

    #[test]
    fn length_of_frobenius_powers() {
        for q in [2u32, 4, 8, 16] {
            let x = format!("x^{q}");
            let y = format!("y^{q}");
            let gb = ideal_gb(2, &["x", "y"], &[&x, &y]);
            assert_eq!(module_length(&gb), Ok(Length::Finite((q * q) as u64)));
        }
    }
}
