use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};

/// Largest exponent a Frobenius twist may produce. Products formed later in
/// Gröbner computations stay far below `u32::MAX` under this cap.
pub const MAX_EXPONENT: u32 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().sum(),
        }
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Every exponent multiplied by `factor`, failing above [`MAX_EXPONENT`].
    pub fn scale_exponents(&self, factor: u64) -> Result<Self> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        let mut degree: u64 = 0;
        for &a in &self.exps {
            let scaled = (a as u64)
                .checked_mul(factor)
                .filter(|&s| s <= MAX_EXPONENT as u64)
                .ok_or_else(|| {
                    AlgebraError::ExponentOverflow(format!(
                        "exponent {a} times {factor} exceeds {MAX_EXPONENT}"
                    ))
                })?;
            degree += scaled;
            exps.push(scaled as u32);
        }
        let degree = u32::try_from(degree)
            .map_err(|_| AlgebraError::ExponentOverflow("total degree overflow".into()))?;
        Ok(Monomial { exps, degree })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    DegRevLex,
    DegLex,
}

/// Graded monomial order with an explicit variable precedence:
/// `precedence[0]` is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= precedence.len() || seen[v] {
                return Err(AlgebraError::Structural(format!(
                    "variable precedence {precedence:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn deglex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    /// Compares two monomials over the same variable set.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree.cmp(&b.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.kind {
            OrderKind::DegLex => {
                for &v in &self.precedence {
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                for &v in self.precedence.iter().rev() {
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Checked comparison that rejects monomials over different variable sets.
pub fn mono_cmp(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() || a.nvars() != ord.nvars() {
        return Err(AlgebraError::Structural(format!(
            "comparing monomials in {} and {} variables under an order on {}",
            a.nvars(),
            b.nvars(),
            ord.nvars()
        )));
    }
    Ok(ord.cmp(a, b))
}
