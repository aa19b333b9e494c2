//! Graded quotient rings `R = F_p[x_1..x_n]/I` and finitely presented graded
//! `R`-modules.
//!
//! Every homogeneous computation over `R` is done over the polynomial ring
//! with `I * e_j` adjoined for each basis vector `e_j`. Graded lengths and
//! dimensions coincide with the local invariants at the irrelevant ideal.

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::groebner::{krull_dim, module_length, FreeModule, FreeModuleVector, GroebnerBasis, Length};
use crate::matrix::Matrix;
use crate::poly::{PolyRing, Polynomial};

/// Upper bound on the number of maximal minors expanded by
/// [`PresentedModule::fitting_ideal`].
pub const DEFAULT_MINOR_LIMIT: usize = 5_000;
const MAX_MINOR_SIZE: usize = 8;

#[derive(Debug, PartialEq)]
pub struct QuotientRing {
    poly: Arc<PolyRing>,
    ideal: GroebnerBasis,
    dim: i64,
}

impl QuotientRing {
    pub fn new(poly: &Arc<PolyRing>, generators: &[Polynomial]) -> Result<Arc<Self>> {
        let module = FreeModule::new(poly, vec![0]);
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous(format!("ideal generator {g}")));
            }
            gens.push(module.from_entries(std::slice::from_ref(g))?);
        }
        let ideal = GroebnerBasis::compute(&module, &gens)?;
        if ideal.generators().iter().any(|g| g.terms()[0].mono.is_one()) {
            return Err(AlgebraError::UnitIdeal);
        }
        let dim = krull_dim(&ideal);
        Ok(Arc::new(QuotientRing {
            poly: poly.clone(),
            ideal,
            dim,
        }))
    }

    /// The polynomial ring itself, `I = 0`.
    pub fn polynomial(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        Self::new(&PolyRing::degrevlex(p, vars)?, &[])
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.poly
    }

    pub fn characteristic(&self) -> u64 {
        self.poly.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn ideal_basis(&self) -> &GroebnerBasis {
        &self.ideal
    }

    /// The reduced Gröbner basis of `I` as polynomials.
    pub fn ideal_generators(&self) -> Vec<Polynomial> {
        let m = self.ideal.module();
        self.ideal
            .generators()
            .iter()
            .map(|g| m.entries(g).remove(0))
            .collect()
    }

    /// Canonical representative of `f` modulo `I`.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let m = self.ideal.module();
        let v = m.from_entries(std::slice::from_ref(f))?;
        Ok(m.entries(&self.ideal.reduce(&v)).remove(0))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(&self.poly, text)
    }

    /// `R/J` as a ring in its own right.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<Arc<QuotientRing>> {
        let mut gens = self.ideal_generators();
        gens.extend_from_slice(extra);
        QuotientRing::new(&self.poly, &gens)
    }

    /// `I * e_j` for every basis vector of `module`.
    pub(crate) fn ideal_relations(&self, module: &FreeModule) -> Vec<FreeModuleVector> {
        let gens = self.ideal_generators();
        (0..module.rank())
            .flat_map(|j| gens.iter().map(move |g| module.embed(g, j)))
            .collect()
    }

    /// Componentwise normal form modulo `I`.
    pub(crate) fn reduce_vector(&self, module: &FreeModule, v: &FreeModuleVector) -> Result<FreeModuleVector> {
        let entries = module
            .entries(v)
            .iter()
            .map(|e| self.reduce(e))
            .collect::<Result<Vec<_>>>()?;
        module.from_entries(&entries)
    }
}

/// `R` from textual data: prime, variable names and ideal generators.
pub fn make_ring(p: u64, vars: &[&str], ideal: &[&str]) -> Result<Arc<QuotientRing>> {
    let poly = PolyRing::degrevlex(p, vars)?;
    let gens = ideal
        .iter()
        .map(|s| Polynomial::parse(&poly, s))
        .collect::<Result<Vec<_>>>()?;
    QuotientRing::new(&poly, &gens)
}

/// The cokernel of a homogeneous matrix `R^m -> ⊕ R(-shift_j)`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Arc<QuotientRing>,
    ambient: FreeModule,
    relations: Vec<FreeModuleVector>,
    basis: GroebnerBasis,
}

impl PresentedModule {
    /// Relations are reduced modulo `I`, zeros and repeats dropped.
    pub fn new(ring: &Arc<QuotientRing>, shifts: Vec<i64>, relations: Vec<FreeModuleVector>) -> Result<Self> {
        let ambient = FreeModule::new(ring.poly_ring(), shifts);
        let mut canonical: Vec<FreeModuleVector> = Vec::with_capacity(relations.len());
        for rel in &relations {
            ambient.degree(rel)?;
            let r = ring.reduce_vector(&ambient, rel)?;
            if !r.is_zero() && !canonical.contains(&r) {
                canonical.push(r);
            }
        }
        let mut gens = canonical.clone();
        gens.extend(ring.ideal_relations(&ambient));
        let basis = GroebnerBasis::compute(&ambient, &gens)?;
        Ok(PresentedModule {
            ring: ring.clone(),
            ambient,
            relations: canonical,
            basis,
        })
    }

    pub fn from_matrix(ring: &Arc<QuotientRing>, shifts: Vec<i64>, m: &Matrix) -> Result<Self> {
        let ambient = FreeModule::new(ring.poly_ring(), shifts.clone());
        let cols = ambient.columns(m)?;
        Self::new(ring, shifts, cols)
    }

    pub fn free(ring: &Arc<QuotientRing>, shifts: Vec<i64>) -> Result<Self> {
        Self::new(ring, shifts, Vec::new())
    }

    /// `R/J`, presented by the one-row matrix of the generators of `J`.
    pub fn cyclic(ring: &Arc<QuotientRing>, generators: &[Polynomial]) -> Result<Self> {
        let ambient = FreeModule::new(ring.poly_ring(), vec![0]);
        let mut rels = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous(format!("ideal generator {g}")));
            }
            rels.push(ambient.from_entries(std::slice::from_ref(g))?);
        }
        Self::new(ring, vec![0], rels)
    }

    /// The residue field `R/(x_1, ..., x_n)`.
    pub fn residue_field(ring: &Arc<QuotientRing>) -> Result<Self> {
        let vars: Vec<Polynomial> = (0..ring.nvars())
            .map(|i| Polynomial::var(ring.poly_ring(), i))
            .collect();
        Self::cyclic(ring, &vars)
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn shifts(&self) -> &[i64] {
        self.ambient.shifts()
    }

    pub fn relations(&self) -> &[FreeModuleVector] {
        &self.relations
    }

    pub fn relation_matrix(&self) -> Matrix {
        self.ambient.matrix(&self.relations)
    }

    /// Gröbner basis of the relations together with `I * e_j`.
    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// `dim Supp M`, `-1` for the zero module.
    pub fn dim(&self) -> i64 {
        krull_dim(&self.basis)
    }

    pub fn length(&self) -> Result<Length> {
        let len = module_length(&self.basis)?;
        debug_assert_eq!(len.is_finite(), self.dim() <= 0);
        Ok(len)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() < 0
    }

    /// Generators of `I + Fitt_0(M)` (maximal minors of the presentation).
    pub fn fitting_ideal(&self, minor_limit: usize) -> Result<Vec<Polynomial>> {
        let poly = self.ring.poly_ring();
        let n = self.rank();
        let m = self.relations.len();
        let mut gens = self.ring.ideal_generators();
        if n == 0 {
            gens.push(Polynomial::one(poly));
            return Ok(gens);
        }
        if m < n {
            return Ok(gens);
        }
        if n > MAX_MINOR_SIZE || binomial(m, n).is_none_or(|c| c > minor_limit as u128) {
            return Err(AlgebraError::Capacity(format!(
                "{n}x{n} minors of a {n}x{m} presentation exceed the limit of {minor_limit}"
            )));
        }
        let mat = self.relation_matrix();
        let mut cols: Vec<usize> = (0..n).collect();
        loop {
            let minor = Matrix::from_columns(poly, n, cols.iter().map(|&c| mat.column(c)).collect());
            let d = determinant(&minor)?;
            if !d.is_zero() {
                gens.push(d);
            }
            if !next_combination(&mut cols, m) {
                break;
            }
        }
        Ok(gens)
    }

    /// `dim Supp M` computed as `dim R/(I + Fitt_0 M)`.
    pub fn dim_via_fitting(&self, minor_limit: usize) -> Result<i64> {
        let gens = self.fitting_ideal(minor_limit)?;
        let module = FreeModule::new(self.ring.poly_ring(), vec![0]);
        let vs = gens
            .iter()
            .map(|g| module.from_entries(std::slice::from_ref(g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(krull_dim(&GroebnerBasis::compute(&module, &vs)?))
    }
}

/// `length(M)`.
pub fn length(m: &PresentedModule) -> Result<Length> {
    m.length()
}

/// `dim Supp M`.
pub fn module_dim(m: &PresentedModule) -> i64 {
    m.dim()
}

/// `R/J`.
pub fn cyclic_module(ring: &Arc<QuotientRing>, generators: &[Polynomial]) -> Result<PresentedModule> {
    PresentedModule::cyclic(ring, generators)
}

fn binomial(n: usize, k: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Laplace expansion along the first row.
pub fn determinant(m: &Matrix) -> Result<Polynomial> {
    if m.rows() != m.cols() {
        return Err(AlgebraError::Structural("determinant of a non-square matrix".into()));
    }
    if m.rows() > MAX_MINOR_SIZE {
        return Err(AlgebraError::Capacity(format!(
            "determinant of size {} exceeds {MAX_MINOR_SIZE}",
            m.rows()
        )));
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    laplace(m, &rows, &cols)
}

fn laplace(m: &Matrix, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    let ring = m.ring();
    match rows.len() {
        0 => return Ok(Polynomial::one(ring)),
        1 => return Ok(m.get(rows[0], cols[0]).clone()),
        _ => {}
    }
    let mut acc = Polynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(rows[0], c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = laplace(m, &rows[1..], &rest)?;
        let term = e.mul(&sub)?;
        acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}
