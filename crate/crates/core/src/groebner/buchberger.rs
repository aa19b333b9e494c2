use std::collections::{BTreeSet, HashSet};

use super::{FreeModule, FreeModuleVector, ModTerm};
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;

/// Reduced Gröbner basis of a homogeneous submodule, sorted by leading term
/// (largest first), every generator monic.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    module: FreeModule,
    gens: Vec<FreeModuleVector>,
    by_pos: Vec<Vec<usize>>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.gens == other.gens
    }
}

fn index_by_position(rank: usize, gens: &[FreeModuleVector]) -> Vec<Vec<usize>> {
    let mut by_pos = vec![Vec::new(); rank];
    for (k, g) in gens.iter().enumerate() {
        by_pos[g.terms[0].pos].push(k);
    }
    by_pos
}

/// Full reduction of `r` by `basis`; `skip` excludes one reducer.
fn reduce_full(
    module: &FreeModule,
    basis: &[FreeModuleVector],
    by_pos: &[Vec<usize>],
    mut r: Vec<ModTerm>,
    skip: Option<usize>,
) -> Vec<ModTerm> {
    let mut i = 0;
    while i < r.len() {
        let t = &r[i];
        let reducer = by_pos[t.pos]
            .iter()
            .copied()
            .find(|&k| Some(k) != skip && basis[k].terms[0].mono.divides(&t.mono));
        match reducer {
            Some(k) => {
                let g = &basis[k].terms;
                let m = g[0].mono.quotient_of(&t.mono);
                let c = t.coeff;
                let tail = module.sub_scaled(&r[i..], c, &m, g);
                r.truncate(i);
                r.extend(tail);
            }
            None => i += 1,
        }
    }
    r
}

fn s_vector(module: &FreeModule, f: &FreeModuleVector, g: &FreeModuleVector) -> Vec<ModTerm> {
    let (lf, lg) = (&f.terms[0], &g.terms[0]);
    debug_assert_eq!(lf.pos, lg.pos);
    let lcm = lf.mono.lcm(&lg.mono);
    let mf = lf.mono.quotient_of(&lcm);
    let mg = lg.mono.quotient_of(&lcm);
    // Both inputs are monic.
    let left = module.scale_monomial(f, 1, &mf);
    module.sub_scaled(&left.terms, 1, &mg, &g.terms)
}

impl GroebnerBasis {
    /// Buchberger's algorithm with the normal selection strategy (smallest
    /// degree first, ties by pair index) and the chain criterion.
    pub fn compute(module: &FreeModule, gens: &[FreeModuleVector]) -> Result<Self> {
        let rank = module.rank();
        // (degree, 0 = input generator / 1 = pair, i, j)
        let mut queue: BTreeSet<(i64, u8, usize, usize)> = BTreeSet::new();
        for (k, g) in gens.iter().enumerate() {
            if let Some(d) = module.degree(g)? {
                queue.insert((d, 0, k, 0));
            }
        }
        let mut basis: Vec<FreeModuleVector> = Vec::new();
        let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); rank];
        let mut pending: HashSet<(usize, usize)> = HashSet::new();

        while let Some((_, kind, i, j)) = queue.pop_first() {
            let h = if kind == 0 {
                gens[i].terms.clone()
            } else {
                pending.remove(&(i, j));
                let pos = basis[i].terms[0].pos;
                let lcm = basis[i].terms[0].mono.lcm(&basis[j].terms[0].mono);
                let chain = by_pos[pos].iter().any(|&k| {
                    k != i
                        && k != j
                        && basis[k].terms[0].mono.divides(&lcm)
                        && !pending.contains(&(i.min(k), i.max(k)))
                        && !pending.contains(&(j.min(k), j.max(k)))
                });
                if chain {
                    continue;
                }
                s_vector(module, &basis[i], &basis[j])
            };
            let r = reduce_full(module, &basis, &by_pos, h, None);
            if r.is_empty() {
                continue;
            }
            let r = module.monic(&FreeModuleVector::from_sorted(r));
            let new = basis.len();
            let lead = &r.terms[0];
            for &k in &by_pos[lead.pos] {
                let lcm = basis[k].terms[0].mono.lcm(&lead.mono);
                let deg = lcm.degree() as i64 + module.shifts()[lead.pos];
                queue.insert((deg, 1, k, new));
                pending.insert((k, new));
            }
            by_pos[lead.pos].push(new);
            basis.push(r);
        }

        // Minimalize: drop generators whose leading term is a multiple of
        // another's (equal leads: keep the earliest).
        let n = basis.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&a| {
                let la = &basis[a].terms[0];
                !by_pos[la.pos].iter().any(|&b| {
                    let lb = &basis[b].terms[0];
                    b != a && lb.mono.divides(&la.mono) && (lb.mono != la.mono || b < a)
                })
            })
            .collect();
        let minimal: Vec<FreeModuleVector> = keep.iter().map(|&k| basis[k].clone()).collect();
        let min_by_pos = index_by_position(rank, &minimal);
        let mut reduced: Vec<FreeModuleVector> = (0..minimal.len())
            .map(|k| {
                FreeModuleVector::from_sorted(reduce_full(
                    module,
                    &minimal,
                    &min_by_pos,
                    minimal[k].terms.clone(),
                    Some(k),
                ))
            })
            .collect();
        reduced.sort_by(|a, b| module.cmp_terms(&b.terms[0], &a.terms[0]));
        let by_pos = index_by_position(rank, &reduced);
        Ok(GroebnerBasis {
            module: module.clone(),
            gens: reduced,
            by_pos,
        })
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn generators(&self) -> &[FreeModuleVector] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Leading monomials of the generators whose leading term sits at `pos`.
    pub fn leading_monomials(&self, pos: usize) -> impl Iterator<Item = &Monomial> {
        self.by_pos[pos].iter().map(move |&k| &self.gens[k].terms[0].mono)
    }

    fn check_vector(&self, v: &FreeModuleVector) -> Result<()> {
        match v.terms.iter().find(|t| t.pos >= self.module.rank()) {
            Some(t) => Err(AlgebraError::Structural(format!(
                "component {} outside a free module of rank {}",
                t.pos,
                self.module.rank()
            ))),
            None => Ok(()),
        }
    }

    /// Fully reduced remainder; zero exactly for members of the submodule.
    pub fn normal_form(&self, v: &FreeModuleVector) -> Result<FreeModuleVector> {
        self.check_vector(v)?;
        Ok(self.reduce(v))
    }

    pub(crate) fn reduce(&self, v: &FreeModuleVector) -> FreeModuleVector {
        FreeModuleVector::from_sorted(reduce_full(
            &self.module,
            &self.gens,
            &self.by_pos,
            v.terms.clone(),
            None,
        ))
    }

    pub fn contains(&self, v: &FreeModuleVector) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Buchberger's criterion: every S-vector reduces to zero.
    pub fn is_certified(&self) -> bool {
        for pos in 0..self.module.rank() {
            let idx = &self.by_pos[pos];
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    let s = s_vector(&self.module, &self.gens[i], &self.gens[j]);
                    if !self.reduce(&FreeModuleVector::from_sorted(s)).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No term of any generator is divisible by another generator's leading
    /// term.
    pub fn is_auto_reduced(&self) -> bool {
        self.gens.iter().enumerate().all(|(a, g)| {
            g.terms.iter().all(|t| {
                !self.by_pos[t.pos]
                    .iter()
                    .any(|&b| b != a && self.gens[b].terms[0].mono.divides(&t.mono))
            })
        })
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`; rejects
/// inhomogeneous generators.
pub fn buchberger(module: &FreeModule, gens: &[FreeModuleVector]) -> Result<GroebnerBasis> {
    GroebnerBasis::compute(module, gens)
}
