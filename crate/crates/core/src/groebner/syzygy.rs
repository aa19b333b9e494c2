use super::{FreeModule, FreeModuleVector, GroebnerBasis, ModTerm};
use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::monomial::Monomial;

/// Gröbner basis of the graph module `{(c_j, e_j)} ∪ {(rel, 0)}` inside
/// `target ⊕ source`, with every target position ranked above every source
/// position.
///
/// Under that position-over-term order the basis elements with no target
/// component generate the module of relations `a` with `Σ a_j c_j` in the
/// span of `rel`, and reducing `(v, 0)` expresses `v` in terms of the
/// columns.
#[derive(Clone, Debug)]
pub struct Elimination {
    target_rank: usize,
    source: FreeModule,
    combined: FreeModule,
    gb: GroebnerBasis,
}

impl Elimination {
    pub fn new(
        target: &FreeModule,
        columns: &[FreeModuleVector],
        source_shifts: &[i64],
        relations: &[FreeModuleVector],
    ) -> Result<Self> {
        if columns.len() != source_shifts.len() {
            return Err(AlgebraError::Structural(format!(
                "{} columns with {} source degrees",
                columns.len(),
                source_shifts.len()
            )));
        }
        let r = target.rank();
        let ring = target.ring();
        let mut shifts = target.shifts().to_vec();
        shifts.extend_from_slice(source_shifts);
        let combined = FreeModule::new(ring, shifts);
        let mut gens = Vec::with_capacity(columns.len() + relations.len());
        for (c, col) in columns.iter().enumerate() {
            if let Some(d) = target.degree(col)? {
                if d != source_shifts[c] {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "column {c} has degree {d} but its source degree is {}",
                        source_shifts[c]
                    )));
                }
            }
            let mut terms = col.terms().to_vec();
            terms.push(ModTerm {
                pos: r + c,
                mono: Monomial::one(ring.nvars()),
                coeff: 1,
            });
            gens.push(FreeModuleVector::from_sorted(terms));
        }
        for rel in relations {
            target.degree(rel)?;
            gens.push(rel.clone());
        }
        let gb = GroebnerBasis::compute(&combined, &gens)?;
        Ok(Elimination {
            target_rank: r,
            source: FreeModule::new(ring, source_shifts.to_vec()),
            combined,
            gb,
        })
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Generators of the relation module, as vectors of the source module.
    pub fn kernel(&self) -> Vec<FreeModuleVector> {
        let offset = -(self.target_rank as isize);
        self.gb
            .generators()
            .iter()
            .filter(|g| g.terms()[0].pos >= self.target_rank)
            .map(|g| g.translated(offset))
            .collect()
    }

    /// Coefficients `a` with `Σ a_j c_j ≡ v` modulo the relations, or `None`
    /// when `v` is outside the span.
    pub fn lift(&self, v: &FreeModuleVector) -> Result<Option<FreeModuleVector>> {
        if let Some(t) = v.terms().iter().find(|t| t.pos >= self.target_rank) {
            return Err(AlgebraError::Structural(format!(
                "component {} outside the target of rank {}",
                t.pos, self.target_rank
            )));
        }
        let rem = self.gb.reduce(v);
        if rem.terms().iter().any(|t| t.pos < self.target_rank) {
            return Ok(None);
        }
        let f = self.combined.ring().field();
        let minus_one = f.neg(1);
        let neg = self
            .combined
            .scale_monomial(&rem, minus_one, &Monomial::one(self.combined.ring().nvars()));
        Ok(Some(neg.translated(-(self.target_rank as isize))))
    }
}

/// Generators of the kernel of a homogeneous matrix, as the columns of a
/// matrix over the source module.
pub fn syzygies(m: &Matrix, target_shifts: &[i64], source_shifts: &[i64]) -> Result<Matrix> {
    m.check_homogeneous(target_shifts, source_shifts)?;
    let target = FreeModule::new(m.ring(), target_shifts.to_vec());
    let cols = target.columns(m)?;
    let elim = Elimination::new(&target, &cols, source_shifts, &[])?;
    Ok(elim.source().matrix(&elim.kernel()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PolyRing, Polynomial};

    #[test]
    fn koszul_syzygy() {
        let r = PolyRing::degrevlex(5, &["x", "y"]).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let m = Matrix::from_rows(&r, vec![vec![p("x"), p("y")]]).unwrap();
        let k = syzygies(&m, &[0], &[1, 1]).unwrap();
        assert_eq!(k.cols(), 1);
        // Generator of degree 2 in the source grading: ±(y, -x).
        let col = k.column(0);
        assert!(col == vec![p("y"), p("-x")] || col == vec![p("-y"), p("x")]);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let r = PolyRing::degrevlex(2, &["x", "y"]).unwrap();
        let k = syzygies(&Matrix::identity(&r, 3), &[0, 0, 0], &[0, 0, 0]).unwrap();
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn equal_columns() {
        let r = PolyRing::degrevlex(3, &["x", "y"]).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let m = Matrix::from_rows(&r, vec![vec![p("x"), p("x")]]).unwrap();
        let k = syzygies(&m, &[0], &[1, 1]).unwrap();
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert!(col == vec![p("1"), p("-1")] || col == vec![p("-1"), p("1")]);
    }

    #[test]
    fn syzygies_of_syzygies_compose_to_zero() {
        let r = PolyRing::degrevlex(3, &["x", "y", "z"]).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let m = Matrix::from_rows(&r, vec![vec![p("x^2"), p("x*y"), p("y*z"), p("z^2")]]).unwrap();
        let src = [2, 2, 2, 2];
        let k = syzygies(&m, &[0], &src).unwrap();
        assert!(m.mul(&k).unwrap().is_zero());
        let target = FreeModule::new(&r, src.to_vec());
        let kdeg: Vec<i64> = target
            .columns(&k)
            .unwrap()
            .iter()
            .map(|v| target.degree(v).unwrap().unwrap())
            .collect();
        let k2 = syzygies(&k, &src, &kdeg).unwrap();
        assert!(k.mul(&k2).unwrap().is_zero());
        assert!(k2.cols() > 0);
    }

    #[test]
    fn lift_recovers_coefficients() {
        let r = PolyRing::degrevlex(7, &["x", "y"]).unwrap();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let t = FreeModule::new(&r, vec![0]);
        let cols = vec![t.embed(&p("x"), 0), t.embed(&p("y"), 0)];
        let e = Elimination::new(&t, &cols, &[1, 1], &[]).unwrap();
        let v = t.embed(&p("3*x^2 + x*y - y^2"), 0);
        let a = e.lift(&v).unwrap().unwrap();
        let a = e.source().entries(&a);
        let back = p("x").mul(&a[0]).unwrap().add(&p("y").mul(&a[1]).unwrap()).unwrap();
        assert_eq!(back, p("3*x^2 + x*y - y^2"));
        assert!(e.lift(&t.embed(&p("1"), 0)).unwrap().is_none());
    }
}
