//! Degree-by-degree linear algebra over `F_p`, independent of the Gröbner
//! engine: every graded piece is a finite dimensional vector space, maps are
//! dense matrices and dimensions come from Gaussian elimination.

use std::cell::RefCell;
use std::collections::HashMap;

use frobchi::{FreeComplex, Polynomial, PresentedModule};

/// A polynomial as (exponents, coefficient) pairs.
pub type Terms = Vec<(Vec<u32>, u64)>;

pub fn terms_of(f: &Polynomial) -> Terms {
    f.terms().iter().map(|(m, c)| (m.exponents().to_vec(), *c)).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot columns.
fn echelon(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = pow_mod(rows[r][c], p - 2, p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    echelon(&mut rows, p).len()
}

/// `R_d = S_d / I_d` with a basis of non-pivot monomials.
struct Piece {
    index: HashMap<Vec<u32>, usize>,
    ideal_rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    basis: Vec<usize>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector of `S_d` in the basis of `R_d`.
    fn coordinates(&self, mut v: Vec<u64>, p: u64) -> Vec<u64> {
        for (row, &c) in self.ideal_rows.iter().zip(&self.pivots) {
            if v[c] != 0 {
                let f = v[c];
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        self.basis.iter().map(|&c| v[c]).collect()
    }
}

/// Graded pieces of `S/I` for `S = F_p[x_1..x_n]`.
pub struct Oracle {
    p: u64,
    n: usize,
    ideal: Vec<Terms>,
    pieces: RefCell<HashMap<i64, std::rc::Rc<Piece>>>,
}

fn degree_of(t: &Terms) -> Option<u32> {
    t.first().map(|(m, _)| m.iter().sum())
}

impl Oracle {
    pub fn new(p: u64, n: usize, ideal: Vec<Terms>) -> Self {
        Oracle {
            p,
            n,
            ideal: ideal.into_iter().filter(|t| !t.is_empty()).collect(),
            pieces: RefCell::new(HashMap::new()),
        }
    }

    pub fn for_ring(ring: &frobchi::QuotientRing, extra: &[Polynomial]) -> Self {
        let mut ideal: Vec<Terms> = ring.ideal_generators().iter().map(terms_of).collect();
        ideal.extend(extra.iter().map(terms_of));
        Oracle::new(ring.characteristic(), ring.nvars(), ideal)
    }

    fn piece(&self, d: i64) -> std::rc::Rc<Piece> {
        if let Some(p) = self.pieces.borrow().get(&d) {
            return p.clone();
        }
        let monos = if d < 0 { Vec::new() } else { monomials_of_degree(self.n, d as u32) };
        let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in &self.ideal {
            let dg = degree_of(g).unwrap() as i64;
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(self.n, (d - dg) as u32) {
                let mut row = vec![0u64; monos.len()];
                for (e, c) in g {
                    let prod: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    let k = index[&prod];
                    row[k] = (row[k] + c) % self.p;
                }
                rows.push(row);
            }
        }
        let pivots = echelon(&mut rows, self.p);
        let basis = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
        let piece = std::rc::Rc::new(Piece {
            index,
            ideal_rows: rows,
            pivots,
            basis,
        });
        self.pieces.borrow_mut().insert(d, piece.clone());
        piece
    }

    /// `dim R_d`.
    pub fn hilbert(&self, d: i64) -> usize {
        self.piece(d).dim()
    }

    /// `dim (⊕_j R(-a_j))_d`.
    pub fn free_dim(&self, shifts: &[i64], d: i64) -> usize {
        shifts.iter().map(|a| self.hilbert(d - a)).sum()
    }

    /// Matrix, one row per source basis vector, of the degree `d` part of a
    /// map `⊕ R(-src_c) -> ⊕ R(-tgt_r)` whose column `c` is `columns[c]`.
    fn map_rows(&self, tgt: &[i64], src: &[i64], columns: &[Vec<Terms>], d: i64) -> Vec<Vec<u64>> {
        let p = self.p;
        let tgt_pieces: Vec<_> = tgt.iter().map(|a| self.piece(d - a)).collect();
        let offsets: Vec<usize> = tgt_pieces
            .iter()
            .scan(0, |acc, pc| {
                let o = *acc;
                *acc += pc.dim();
                Some(o)
            })
            .collect();
        let width: usize = tgt_pieces.iter().map(|pc| pc.dim()).sum();
        let mut out = Vec::new();
        for (c, col) in columns.iter().enumerate() {
            let src_piece = self.piece(d - src[c]);
            let src_monos = monomials_of_degree(self.n, (d - src[c]).max(0) as u32);
            for &b in &src_piece.basis {
                let m = &src_monos[b];
                let mut row = vec![0u64; width];
                for (r, entry) in col.iter().enumerate() {
                    if entry.is_empty() || tgt_pieces[r].index.is_empty() {
                        continue;
                    }
                    let pc = &tgt_pieces[r];
                    let mut v = vec![0u64; pc.index.len()];
                    for (e, coef) in entry {
                        let prod: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                        let k = *pc.index.get(&prod).expect("entry of the declared degree");
                        v[k] = (v[k] + coef) % p;
                    }
                    for (k, x) in pc.coordinates(v, p).into_iter().enumerate() {
                        row[offsets[r] + k] = x;
                    }
                }
                out.push(row);
            }
        }
        out
    }

    fn map_rank(&self, tgt: &[i64], src: &[i64], columns: &[Vec<Terms>], d: i64) -> usize {
        rank(self.map_rows(tgt, src, columns, d), self.p)
    }

    /// `ℓ(coker)` of a presentation with generator degrees `shifts`;
    /// `None` if the Hilbert function has not vanished by `cap`.
    pub fn cokernel_length(&self, shifts: &[i64], relations: &[Vec<Terms>], cap: i64) -> Option<u64> {
        let src: Vec<i64> = relations
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .find_map(|(j, t)| degree_of(t).map(|d| d as i64 + shifts[j]))
                    .unwrap_or(0)
            })
            .collect();
        let rels: Vec<Vec<Terms>> = relations.to_vec();
        let top = shifts.iter().copied().max().unwrap_or(0);
        let mut d = shifts.iter().copied().min().unwrap_or(0);
        let mut total = 0u64;
        loop {
            let dim = self.free_dim(shifts, d) - self.map_rank(shifts, &src, &rels, d);
            total += dim as u64;
            // Generated in degrees <= top, so one zero piece above it ends it.
            if dim == 0 && d >= top {
                return Some(total);
            }
            d += 1;
            if d > cap {
                return None;
            }
        }
    }

    /// `dim H_i(X)_d` for every stored `i` and `d` up to `bound`.
    pub fn homology_dims(&self, x: &FreeComplex, bound: i64) -> Vec<(i64, Vec<usize>)> {
        let lowest = x
            .degrees()
            .flat_map(|i| x.shifts(i).to_vec())
            .min()
            .unwrap_or(0);
        let columns = |i: i64| -> Vec<Vec<Terms>> {
            let d = x.differential(i).unwrap();
            (0..d.cols()).map(|c| d.column(c).iter().map(terms_of).collect()).collect()
        };
        x.degrees()
            .map(|i| {
                let dims = (lowest..=bound)
                    .map(|d| {
                        let here = self.free_dim(x.shifts(i), d);
                        let out = if x.differential(i).is_some() {
                            self.map_rank(x.shifts(i - 1), x.shifts(i), &columns(i), d)
                        } else {
                            0
                        };
                        let inc = if x.differential(i + 1).is_some() {
                            self.map_rank(x.shifts(i), x.shifts(i + 1), &columns(i + 1), d)
                        } else {
                            0
                        };
                        here - out - inc
                    })
                    .collect();
                (i, dims)
            })
            .collect()
    }

    /// `ℓ(H_i(X))` for every `i`, summed degreewise up to `bound`.
    ///
    /// Panics unless the two top degrees of every homology module vanish,
    /// which catches a bound that is too small.
    pub fn homology_lengths(&self, x: &FreeComplex, bound: i64) -> Vec<(i64, u64)> {
        self.homology_dims(x, bound)
            .into_iter()
            .map(|(i, dims)| {
                let k = dims.len();
                assert!(
                    k < 2 || (dims[k - 1] == 0 && dims[k - 2] == 0),
                    "H_{i} does not vanish near degree {bound}: {dims:?}"
                );
                (i, dims.iter().map(|&v| v as u64).sum())
            })
            .collect()
    }

    /// `χ(X)`, with every entry read modulo this oracle's ideal.
    pub fn chi(&self, x: &FreeComplex, bound: i64) -> i64 {
        self.homology_lengths(x, bound)
            .into_iter()
            .map(|(i, l)| if i.rem_euclid(2) == 0 { l as i64 } else { -(l as i64) })
            .sum()
    }
}

/// Oracle length of a presented module; `None` past the degree cap.
pub fn module_length(m: &PresentedModule, cap: i64) -> Option<u64> {
    let oracle = Oracle::for_ring(m.ring(), &[]);
    let rels: Vec<Vec<Terms>> = m
        .relations()
        .iter()
        .map(|v| m.ambient().entries(v).iter().map(terms_of).collect())
        .collect();
    oracle.cokernel_length(m.shifts(), &rels, cap)
}

/// Generous degree bound for the homology of `X` over `R/J`: the top
/// generator degree plus the regularity bound `n * (max entry degree)`.
pub fn degree_bound(x: &FreeComplex) -> i64 {
    let top = x.degrees().flat_map(|i| x.shifts(i).to_vec()).max().unwrap_or(0);
    let mut entry = 1i64;
    for i in x.degrees() {
        if let Some(d) = x.differential(i) {
            for f in d.entries() {
                entry = entry.max(f.degree().unwrap_or(0) as i64);
            }
        }
    }
    top + x.ring().nvars() as i64 * entry + 2
}
