//! Bounded complexes of graded free modules over a quotient ring.
//!
//! `X_i = ⊕_c R(-a_{i,c})` is stored by its generator degrees `a_{i,c}`, and
//! `d_i: X_i -> X_{i-1}` as a matrix whose entry `(r, c)` is homogeneous of
//! degree `a_{i,c} - a_{i-1,r}`. Entries are kept in normal form modulo the
//! defining ideal, so equality of complexes is structural.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::groebner::{Elimination, FreeModule, FreeModuleVector, GroebnerBasis, Length};
use crate::matrix::Matrix;
use crate::poly::{entry_twist, frobenius_power, Polynomial};
use crate::ring::{PresentedModule, QuotientRing};

#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Arc<QuotientRing>,
    lo: i64,
    /// Generator degrees of `X_{lo + k}`.
    modules: Vec<Vec<i64>>,
    /// `diffs[k] = d_{lo + k + 1}`.
    diffs: Vec<Matrix>,
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.lo == other.lo
            && self.modules == other.modules
            && self.diffs == other.diffs
    }
}

/// First failure found by [`FreeComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Entry `(row, col)` of `d_degree` has the wrong degree.
    Inhomogeneous { degree: i64, row: usize, col: usize },
    /// Entry `(row, col)` of `d_{degree-1} ∘ d_degree` is nonzero.
    NonzeroComposite { degree: i64, row: usize, col: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Inhomogeneous { degree, row, col } => {
                write!(f, "d_{degree} entry ({row}, {col}) is not homogeneous of the required degree")
            }
            Violation::NonzeroComposite { degree, row, col } => write!(
                f,
                "d_{} * d_{degree} is nonzero at ({row}, {col})",
                degree - 1
            ),
        }
    }
}

impl From<Violation> for AlgebraError {
    fn from(v: Violation) -> Self {
        match v {
            Violation::Inhomogeneous { degree, row, col } => AlgebraError::Inhomogeneous(format!(
                "entry ({row}, {col}) of d_{degree}"
            )),
            Violation::NonzeroComposite { degree, row, col } => AlgebraError::NotAComplex {
                degree,
                degree_below: degree - 1,
                row,
                col,
            },
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl FreeComplex {
    /// Builds and validates a complex; entries are reduced modulo the ideal.
    pub fn new(ring: &Arc<QuotientRing>, lo: i64, modules: Vec<Vec<i64>>, diffs: Vec<Matrix>) -> Result<Self> {
        let x = Self::new_unchecked(ring, lo, modules, diffs)?;
        x.validate()?;
        Ok(x)
    }

    /// Checks shapes only; see [`FreeComplex::validate`] for the rest.
    pub fn new_unchecked(
        ring: &Arc<QuotientRing>,
        lo: i64,
        modules: Vec<Vec<i64>>,
        diffs: Vec<Matrix>,
    ) -> Result<Self> {
        if diffs.len() != modules.len().saturating_sub(1) {
            return Err(AlgebraError::Structural(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                diffs.len()
            )));
        }
        let mut reduced = Vec::with_capacity(diffs.len());
        for (k, d) in diffs.into_iter().enumerate() {
            if d.rows() != modules[k].len() || d.cols() != modules[k + 1].len() {
                return Err(AlgebraError::Structural(format!(
                    "d_{} is {}x{} but X_{} and X_{} have ranks {} and {}",
                    lo + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    lo + k as i64 + 1,
                    lo + k as i64,
                    modules[k + 1].len(),
                    modules[k].len()
                )));
            }
            if !Arc::ptr_eq(d.ring(), ring.poly_ring()) && **d.ring() != **ring.poly_ring() {
                return Err(AlgebraError::Structural("differential over a different ring".into()));
            }
            reduced.push(d.map(|e| ring.reduce(e))?);
        }
        Ok(FreeComplex {
            ring: ring.clone(),
            lo,
            modules,
            diffs: reduced,
        })
    }

    /// The zero complex.
    pub fn zero(ring: &Arc<QuotientRing>) -> Self {
        FreeComplex {
            ring: ring.clone(),
            lo: 0,
            modules: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `R` in homological degree 0.
    pub fn unit(ring: &Arc<QuotientRing>) -> Self {
        FreeComplex {
            ring: ring.clone(),
            lo: 0,
            modules: vec![vec![0]],
            diffs: Vec::new(),
        }
    }

    /// Koszul complex of `f_1..f_d`: `X_k = Λ^k R^d` with basis the
    /// `k`-subsets in lexicographic order, and
    /// `d(e_S) = Σ_t (-1)^t f_{s_t} e_{S \ s_t}` for `S = {s_0 < s_1 < ...}`.
    pub fn koszul(ring: &Arc<QuotientRing>, elements: &[Polynomial]) -> Result<Self> {
        let poly = ring.poly_ring();
        let mut degrees = Vec::with_capacity(elements.len());
        for f in elements {
            if !f.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous(format!("Koszul element {f}")));
            }
            // Zero has no degree; any value keeps the zero entries homogeneous.
            degrees.push(f.degree().unwrap_or(0) as i64);
        }
        let d = elements.len();
        let subsets: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| combinations(d, k)).collect();
        let modules: Vec<Vec<i64>> = subsets
            .iter()
            .map(|level| level.iter().map(|s| s.iter().map(|&i| degrees[i]).sum()).collect())
            .collect();
        let mut diffs = Vec::with_capacity(d);
        for k in 1..=d {
            let (src, tgt) = (&subsets[k], &subsets[k - 1]);
            let mut m = Matrix::zero(poly, tgt.len(), src.len());
            for (c, s) in src.iter().enumerate() {
                for (t, &idx) in s.iter().enumerate() {
                    let face: Vec<usize> = s.iter().copied().filter(|&i| i != idx).collect();
                    let r = tgt.binary_search(&face).expect("faces are (k-1)-subsets");
                    let f = &elements[idx];
                    m.set(r, c, if t % 2 == 0 { f.clone() } else { f.neg() });
                }
            }
            diffs.push(m);
        }
        Self::new(ring, 0, modules, diffs)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn is_empty(&self) -> bool {
        self.modules.iter().all(Vec::is_empty)
    }

    /// Lowest homological degree stored.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest homological degree stored (`lo - 1` when nothing is stored).
    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    fn index(&self, i: i64) -> Option<usize> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some((i - self.lo) as usize)
        }
    }

    pub fn rank(&self, i: i64) -> usize {
        self.index(i).map_or(0, |k| self.modules[k].len())
    }

    /// Generator degrees of `X_i` (empty outside the stored range).
    pub fn shifts(&self, i: i64) -> &[i64] {
        self.index(i).map_or(&[], |k| &self.modules[k])
    }

    /// `d_i: X_i -> X_{i-1}`, when both ends are stored.
    pub fn differential(&self, i: i64) -> Option<&Matrix> {
        match (self.index(i), self.index(i - 1)) {
            (Some(k), Some(_)) => Some(&self.diffs[k - 1]),
            _ => None,
        }
    }

    /// Ranks `(i, rank X_i)` over the stored range.
    pub fn ranks(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|i| (i, self.rank(i))).collect()
    }

    /// Confirms homogeneity of every differential and `d_{i-1} d_i = 0`
    /// modulo the ideal, reporting the first failing entry.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for i in self.degrees() {
            let Some(d) = self.differential(i) else { continue };
            let (tgt, src) = (self.shifts(i - 1), self.shifts(i));
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let e = d.get(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    if !e.is_homogeneous() || e.degree().map(i64::from) != Some(src[c] - tgt[r]) {
                        return Err(Violation::Inhomogeneous { degree: i, row: r, col: c });
                    }
                }
            }
        }
        for i in self.degrees() {
            let (Some(d), Some(below)) = (self.differential(i), self.differential(i - 1)) else {
                continue;
            };
            let prod = below.mul(d).expect("shapes were checked");
            for r in 0..prod.rows() {
                for c in 0..prod.cols() {
                    if !self.ring.reduce(prod.get(r, c)).expect("same ring").is_zero() {
                        return Err(Violation::NonzeroComposite { degree: i, row: r, col: c });
                    }
                }
            }
        }
        Ok(())
    }

    /// `(Σ^n X)_i = X_{i-n}` with every differential multiplied by `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        let diffs = if n % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs
                .iter()
                .map(|d| d.map(|e| Ok(e.neg())).expect("negation is total"))
                .collect()
        };
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo + n,
            modules: self.modules.clone(),
            diffs,
        }
    }

    /// Direct sum, blocks ordered `X` then `Y` in every degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.modules.is_empty() {
            return Ok(other.clone());
        }
        if other.modules.is_empty() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let poly = self.ring.poly_ring();
        let modules: Vec<Vec<i64>> = (lo..=hi)
            .map(|i| [self.shifts(i), other.shifts(i)].concat())
            .collect();
        let diffs = (lo + 1..=hi)
            .map(|i| {
                let a = self
                    .differential(i)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zero(poly, self.rank(i - 1), self.rank(i)));
                let b = other
                    .differential(i)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zero(poly, other.rank(i - 1), other.rank(i)));
                a.direct_sum(&b)
            })
            .collect();
        Ok(FreeComplex {
            ring: self.ring.clone(),
            lo,
            modules,
            diffs,
        })
    }

    /// `(X ⊗ Y)_n = ⊕_{i+j=n} X_i ⊗ Y_j`, summands in increasing `i`, basis
    /// `x_a ⊗ y_b` in lexicographic `(a, b)` order, and
    /// `d(x ⊗ y) = dx ⊗ y + (-1)^i x ⊗ dy`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.modules.is_empty() || other.modules.is_empty() {
            return Ok(Self::zero(&self.ring));
        }
        let poly = self.ring.poly_ring();
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // For each total degree: (i, j, offset) of every summand.
        let layout = |n: i64| -> (Vec<(i64, i64, usize)>, Vec<i64>) {
            let mut blocks = Vec::new();
            let mut shifts = Vec::new();
            for i in self.degrees() {
                let j = n - i;
                if j < other.lo || j > other.hi() {
                    continue;
                }
                blocks.push((i, j, shifts.len()));
                for &a in self.shifts(i) {
                    for &b in other.shifts(j) {
                        shifts.push(a + b);
                    }
                }
            }
            (blocks, shifts)
        };
        let layouts: Vec<_> = (lo..=hi).map(layout).collect();
        let modules: Vec<Vec<i64>> = layouts.iter().map(|(_, s)| s.clone()).collect();
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            let (src_blocks, src_shifts) = &layouts[(n - lo) as usize];
            let (tgt_blocks, tgt_shifts) = &layouts[(n - 1 - lo) as usize];
            let offset_of = |i: i64, j: i64| {
                tgt_blocks
                    .iter()
                    .find(|(bi, bj, _)| *bi == i && *bj == j)
                    .map(|b| b.2)
            };
            let mut m = Matrix::zero(poly, tgt_shifts.len(), src_shifts.len());
            for &(i, j, off) in src_blocks {
                let (rx, ry) = (self.rank(i), other.rank(j));
                if let (Some(dx), Some(toff)) = (self.differential(i), offset_of(i - 1, j)) {
                    for a in 0..rx {
                        for a2 in 0..dx.rows() {
                            let e = dx.get(a2, a);
                            if e.is_zero() {
                                continue;
                            }
                            for b in 0..ry {
                                m.set(toff + a2 * ry + b, off + a * ry + b, e.clone());
                            }
                        }
                    }
                }
                if let (Some(dy), Some(toff)) = (other.differential(j), offset_of(i, j - 1)) {
                    let ry2 = dy.rows();
                    for b in 0..ry {
                        for b2 in 0..ry2 {
                            let e = dy.get(b2, b);
                            if e.is_zero() {
                                continue;
                            }
                            let e = if i.rem_euclid(2) == 0 { e.clone() } else { e.neg() };
                            for a in 0..rx {
                                m.set(toff + a * ry2 + b2, off + a * ry + b, e.clone());
                            }
                        }
                    }
                }
            }
            diffs.push(m);
        }
        Ok(FreeComplex {
            ring: self.ring.clone(),
            lo,
            modules,
            diffs,
        })
    }

    /// The Frobenius functor `F^e`: every entry `f` becomes `f^(p^e)`
    /// (reduced modulo the ideal) and every generator degree is multiplied
    /// by `p^e`.
    pub fn frobenius(&self, e: u32) -> Result<Self> {
        if e == 0 {
            return Ok(self.clone());
        }
        let q = frobenius_power(self.ring.characteristic(), e)?;
        let q = i64::try_from(q).map_err(|_| AlgebraError::ExponentOverflow(format!("p^{e}")))?;
        let modules = self
            .modules
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&a| {
                        a.checked_mul(q)
                            .ok_or_else(|| AlgebraError::ExponentOverflow(format!("shift {a} times {q}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.map(|f| self.ring.reduce(&entry_twist(f, e)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            modules,
            diffs,
        })
    }

    /// Base change to a quotient `R/J` of the same polynomial ring.
    pub fn change_ring(&self, target: &Arc<QuotientRing>) -> Result<Self> {
        if **target.poly_ring() != **self.ring.poly_ring() {
            return Err(AlgebraError::Structural("base change to a different polynomial ring".into()));
        }
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.map(|f| target.reduce(f)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeComplex {
            ring: target.clone(),
            lo: self.lo,
            modules: self.modules.clone(),
            diffs,
        })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::Structural("complexes over different rings".into()))
        }
    }

    /// `H_i(X)`.
    pub fn homology(&self, i: i64) -> Result<PresentedModule> {
        self.homology_with(i, &PresentedModule::free(&self.ring, vec![0])?)
    }

    /// `H_i(X ⊗ M)` for a presented module `M`.
    ///
    /// With `C_i = X_i ⊗ M` presented inside the free module `F_i` by the
    /// relations `Rel_i` (the presentation of `M` in every block, plus
    /// `I * e`), the cycles `K = {v : (d_i ⊗ 1) v ∈ Rel_{i-1}}` come from an
    /// elimination, and `H_i = K / (im(d_{i+1} ⊗ 1) + Rel_i)` is presented on
    /// the generators of `K` by their relations modulo `Rel_i` together with
    /// the lifts of the columns of `d_{i+1} ⊗ 1`.
    pub fn homology_with(&self, i: i64, coeff: &PresentedModule) -> Result<PresentedModule> {
        if !Arc::ptr_eq(coeff.ring(), &self.ring) && **coeff.ring() != *self.ring {
            return Err(AlgebraError::Structural("coefficient module over a different ring".into()));
        }
        let ring = &self.ring;
        let poly = ring.poly_ring();
        let n = coeff.rank();
        let free_at = |k: i64| {
            let shifts: Vec<i64> = self
                .shifts(k)
                .iter()
                .flat_map(|&a| coeff.shifts().iter().map(move |&g| a + g))
                .collect();
            FreeModule::new(poly, shifts)
        };
        let relations_at = |f: &FreeModule, rank: usize| -> Vec<FreeModuleVector> {
            let mut rels = Vec::new();
            for c in 0..rank {
                for rel in coeff.relations() {
                    rels.push(rel.translated((c * n) as isize));
                }
            }
            rels.extend(ring.ideal_relations(f));
            rels
        };

        let here = free_at(i);
        if here.rank() == 0 {
            return PresentedModule::free(ring, Vec::new());
        }
        let rel_here = relations_at(&here, self.rank(i));

        // Cycles.
        let mut cycles: Vec<FreeModuleVector> = match self.differential(i) {
            Some(d) => {
                let below = free_at(i - 1);
                let cols = below.columns(&d.kron_identity(n))?;
                let rel_below = relations_at(&below, self.rank(i - 1));
                Elimination::new(&below, &cols, here.shifts(), &rel_below)?.kernel()
            }
            None => (0..here.rank()).map(|j| here.basis_vector(j)).collect(),
        };
        let rel_basis = GroebnerBasis::compute(&here, &rel_here)?;
        cycles.retain(|v| !rel_basis.reduce(v).is_zero());
        if cycles.is_empty() {
            return PresentedModule::free(ring, Vec::new());
        }
        let cycle_degrees = cycles
            .iter()
            .map(|v| Ok(here.degree(v)?.expect("nonzero cycle")))
            .collect::<Result<Vec<i64>>>()?;

        // Boundaries, expressed on the cycle generators.
        let elim = Elimination::new(&here, &cycles, &cycle_degrees, &rel_here)?;
        let mut relations = elim.kernel();
        if let Some(d) = self.differential(i + 1) {
            for (c, col) in here.columns(&d.kron_identity(n))?.iter().enumerate() {
                match elim.lift(col)? {
                    Some(l) => relations.push(l),
                    None => {
                        return Err(AlgebraError::Invariant(format!(
                            "boundary column {c} of d_{} is not a cycle",
                            i + 1
                        )))
                    }
                }
            }
        }
        PresentedModule::new(ring, cycle_degrees, relations)
    }

    /// `χ(X) = Σ (-1)^i ℓ(H_i(X))`.
    pub fn euler_char(&self) -> Result<i64> {
        self.euler_char_with(&PresentedModule::free(&self.ring, vec![0])?)
    }

    /// `χ(X ⊗ M)`; fails when some homology module has infinite length.
    pub fn euler_char_with(&self, coeff: &PresentedModule) -> Result<i64> {
        let mut chi: i64 = 0;
        for i in self.degrees() {
            let h = self.homology_with(i, coeff)?;
            match h.length()? {
                Length::Finite(l) => {
                    let l = l as i64;
                    chi += if i.rem_euclid(2) == 0 { l } else { -l };
                }
                Length::Infinite => return Err(AlgebraError::InfiniteLength { degree: i }),
            }
        }
        Ok(chi)
    }

    /// `dim Supp X = max_i dim H_i(X)`, `-1` when `X` is exact.
    pub fn support_dim(&self) -> Result<i64> {
        self.support_dim_with(&PresentedModule::free(&self.ring, vec![0])?)
    }

    pub fn support_dim_with(&self, coeff: &PresentedModule) -> Result<i64> {
        let mut dim = -1;
        for i in self.degrees() {
            dim = dim.max(self.homology_with(i, coeff)?.dim());
        }
        Ok(dim)
    }

    /// `codim X = dim R - dim Supp X`.
    pub fn codim(&self) -> Result<i64> {
        Ok(self.ring.dim() - self.support_dim()?)
    }
}

/// `H_i(X)`.
pub fn homology(x: &FreeComplex, i: i64) -> Result<PresentedModule> {
    x.homology(i)
}

/// `χ(X)`.
pub fn euler_char(x: &FreeComplex) -> Result<i64> {
    x.euler_char()
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.degrees().rev() {
            writeln!(f, "X_{i}: rank {} shifts {:?}", self.rank(i), self.shifts(i))?;
            if let Some(d) = self.differential(i) {
                write!(f, "d_{i} =\n{d}")?;
            }
        }
        Ok(())
    }
}
