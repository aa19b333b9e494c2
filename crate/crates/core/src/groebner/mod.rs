//! Gröbner bases of homogeneous submodules of graded free modules over
//! `F_p[x_1, ..., x_n]`.
//!
//! Vectors are kept as sparse term lists under a position-over-term order:
//! a smaller position index is larger, ties are broken by the ring's
//! monomial order. Quotient rings are handled by callers adjoining `I * e_j`
//! for every basis vector `e_j` to the generators.

mod buchberger;
mod invariants;
mod syzygy;

use std::cmp::Ordering;
use std::sync::Arc;

pub use buchberger::{buchberger, GroebnerBasis};
pub use invariants::{krull_dim, module_length, Length};
pub use syzygy::{syzygies, Elimination};

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: u64,
}

/// A vector of a free module as a sorted sparse term list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeModuleVector {
    terms: Vec<ModTerm>,
}

impl FreeModuleVector {
    pub fn zero() -> Self {
        FreeModuleVector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub(crate) fn from_sorted(terms: Vec<ModTerm>) -> Self {
        FreeModuleVector { terms }
    }

    /// Moves every component by `offset` positions; order is preserved.
    pub(crate) fn translated(&self, offset: isize) -> Self {
        FreeModuleVector {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: (t.pos as isize + offset) as usize,
                    mono: t.mono.clone(),
                    coeff: t.coeff,
                })
                .collect(),
        }
    }
}

/// A graded free module `⊕ S(-shift_j)`: `shifts[j]` is the degree of the
/// `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    ring: Arc<PolyRing>,
    shifts: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: &Arc<PolyRing>, shifts: Vec<i64>) -> Self {
        FreeModule {
            ring: ring.clone(),
            shifts,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    #[inline]
    pub fn cmp_terms(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        b.pos
            .cmp(&a.pos)
            .then_with(|| self.ring.order().cmp(&a.mono, &b.mono))
    }

    #[inline]
    pub fn term_degree(&self, t: &ModTerm) -> i64 {
        t.mono.degree() as i64 + self.shifts[t.pos]
    }

    pub fn basis_vector(&self, j: usize) -> FreeModuleVector {
        FreeModuleVector {
            terms: vec![ModTerm {
                pos: j,
                mono: Monomial::one(self.ring.nvars()),
                coeff: 1,
            }],
        }
    }

    pub fn from_entries(&self, entries: &[Polynomial]) -> Result<FreeModuleVector> {
        if entries.len() != self.rank() {
            return Err(AlgebraError::Structural(format!(
                "vector with {} entries in a free module of rank {}",
                entries.len(),
                self.rank()
            )));
        }
        let mut terms = Vec::new();
        for (pos, e) in entries.iter().enumerate() {
            if !Arc::ptr_eq(e.ring(), &self.ring) && **e.ring() != *self.ring {
                return Err(AlgebraError::Structural("entry from a different ring".into()));
            }
            terms.extend(e.terms().iter().map(|(m, c)| ModTerm {
                pos,
                mono: m.clone(),
                coeff: *c,
            }));
        }
        // Entries are already sorted; positions ascend so the list is in
        // module order.
        Ok(FreeModuleVector { terms })
    }

    pub fn entries(&self, v: &FreeModuleVector) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); self.rank()];
        for t in &v.terms {
            buckets[t.pos].push((t.mono.clone(), t.coeff));
        }
        buckets
            .into_iter()
            .map(|ts| Polynomial::from_sorted_terms(&self.ring, ts))
            .collect()
    }

    /// Vector `f * e_pos`.
    pub fn embed(&self, f: &Polynomial, pos: usize) -> FreeModuleVector {
        FreeModuleVector {
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| ModTerm {
                    pos,
                    mono: m.clone(),
                    coeff: *c,
                })
                .collect(),
        }
    }

    /// Homogeneous degree of `v`: `Ok(None)` for zero, error if mixed.
    pub fn degree(&self, v: &FreeModuleVector) -> Result<Option<i64>> {
        let mut deg = None;
        for t in &v.terms {
            if t.pos >= self.rank() {
                return Err(AlgebraError::Structural(format!(
                    "component {} in a free module of rank {}",
                    t.pos,
                    self.rank()
                )));
            }
            let d = self.term_degree(t);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "vector with terms of degrees {d0} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self, v: &FreeModuleVector) -> bool {
        self.degree(v).is_ok()
    }

    /// Canonicalizes arbitrary terms.
    pub fn vector(&self, mut terms: Vec<ModTerm>) -> FreeModuleVector {
        let f = self.ring.field();
        terms.sort_by(|a, b| self.cmp_terms(b, a));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for mut t in terms {
            t.coeff %= f.characteristic();
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mono == t.mono => {
                    last.coeff = f.add(last.coeff, t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        FreeModuleVector { terms: out }
    }

    /// `a - c * m * b`, merged in module order.
    pub(crate) fn sub_scaled(
        &self,
        a: &[ModTerm],
        c: u64,
        m: &Monomial,
        b: &[ModTerm],
    ) -> Vec<ModTerm> {
        let f = self.ring.field();
        let negc = f.neg(c);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &ModTerm| ModTerm {
            pos: t.pos,
            mono: t.mono.mul(m),
            coeff: f.mul(t.coeff, negc),
        };
        let mut pending = b.first().map(shifted);
        while i < a.len() {
            let Some(bt) = pending.as_ref() else { break };
            match self.cmp_terms(&a[i], bt) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = b.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let s = f.add(a[i].coeff, bt.coeff);
                    if s != 0 {
                        out.push(ModTerm {
                            pos: a[i].pos,
                            mono: a[i].mono.clone(),
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(shifted);
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(t) = pending {
            out.push(t);
            out.extend(b[j + 1..].iter().map(shifted));
        }
        out
    }

    pub fn add(&self, a: &FreeModuleVector, b: &FreeModuleVector) -> FreeModuleVector {
        let one = Monomial::one(self.ring.nvars());
        let minus_one = self.ring.field().neg(1);
        FreeModuleVector {
            terms: self.sub_scaled(&a.terms, minus_one, &one, &b.terms),
        }
    }

    pub fn scale_monomial(&self, v: &FreeModuleVector, c: u64, m: &Monomial) -> FreeModuleVector {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return FreeModuleVector::zero();
        }
        FreeModuleVector {
            terms: v
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: t.pos,
                    mono: t.mono.mul(m),
                    coeff: f.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    /// `f * v` for a polynomial `f`.
    pub fn scale_poly(&self, v: &FreeModuleVector, f: &Polynomial) -> FreeModuleVector {
        let mut acc = FreeModuleVector::zero();
        for (m, c) in f.terms() {
            acc = self.add(&acc, &self.scale_monomial(v, *c, m));
        }
        acc
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self, v: &FreeModuleVector) -> FreeModuleVector {
        match v.leading() {
            None => v.clone(),
            Some(t) if t.coeff == 1 => v.clone(),
            Some(t) => {
                let inv = self.ring.field().inv(t.coeff).expect("nonzero");
                self.scale_monomial(v, inv, &Monomial::one(self.ring.nvars()))
            }
        }
    }

    /// Columns of `m` as vectors of this module (the target of `m`).
    pub fn columns(&self, m: &Matrix) -> Result<Vec<FreeModuleVector>> {
        if m.rows() != self.rank() {
            return Err(AlgebraError::Structural(format!(
                "matrix with {} rows against a free module of rank {}",
                m.rows(),
                self.rank()
            )));
        }
        (0..m.cols()).map(|c| self.from_entries(&m.column(c))).collect()
    }

    /// Matrix whose columns are `vs`.
    pub fn matrix(&self, vs: &[FreeModuleVector]) -> Matrix {
        let cols: Vec<Vec<Polynomial>> = vs.iter().map(|v| self.entries(v)).collect();
        Matrix::from_columns(&self.ring, self.rank(), cols)
    }
}
