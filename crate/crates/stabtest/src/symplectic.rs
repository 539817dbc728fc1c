//! Symplectic maps on Pauli coordinates and symplectic Gram-Schmidt.
//!
//! A map is stored as the rows of a `2n x 2n` bit matrix acting on packed
//! Pauli indices. Gram-Schmidt splits any subspace into hyperbolic pairs
//! plus a commuting residual, and produces the map carrying the subspace
//! onto the span of the leading coordinate operators.

use crate::error::{Error, Result};
use crate::pauli::{form_keys, mask, swap_halves, PauliIndex};
use crate::subspace::{nullspace_basis, pivot, F2Subspace};

/// An invertible, form-preserving linear map on `F_2^{2n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMap {
    n: usize,
    rows: Vec<u64>,
}

impl SymplecticMap {
    /// The identity map on `n` qubits.
    pub fn identity(n: usize) -> Result<Self> {
        crate::pauli::check_qubits(n)?;
        Ok(SymplecticMap {
            n,
            rows: (0..2 * n).map(|i| 1u64 << i).collect(),
        })
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), 2 * n);
        SymplecticMap { n, rows }
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn apply_key(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &r)| {
                acc | ((((r & v).count_ones() as u64) & 1) << i)
            })
    }

    /// Applies the map to a Pauli index.
    pub fn apply(&self, x: &PauliIndex) -> Result<PauliIndex> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        Ok(PauliIndex::from_key(self.n, self.apply_key(x.key())))
    }

    /// The image of a subspace, in canonical form.
    pub fn apply_subspace(&self, s: &F2Subspace) -> Result<F2Subspace> {
        if s.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: s.n(),
            });
        }
        let keys: Vec<u64> = s.row_keys().iter().map(|&r| self.apply_key(r)).collect();
        Ok(F2Subspace::from_keys(self.n, &keys))
    }

    /// The columns of the matrix: images of the coordinate basis vectors.
    pub(crate) fn columns(&self) -> Vec<u64> {
        (0..2 * self.n).map(|j| self.apply_key(1u64 << j)).collect()
    }

    /// The inverse map.
    pub fn inverse(&self) -> SymplecticMap {
        let rows = invert_bit_matrix(2 * self.n, &self.rows)
            .expect("symplectic maps are invertible");
        SymplecticMap { n: self.n, rows }
    }

    /// Checks form preservation on all pairs of coordinate basis vectors,
    /// the matrix identity `M^T J M = J` over `F_2`.
    pub fn is_symplectic(&self) -> bool {
        let two_n = 2 * self.n;
        let cols = self.columns();
        (0..two_n).all(|a| {
            (0..two_n).all(|b| {
                form_keys(self.n, cols[a], cols[b]) == form_keys(self.n, 1 << a, 1 << b)
            })
        })
    }
}

/// Gauss-Jordan inverse of a bit matrix given by rows; `None` if singular.
pub(crate) fn invert_bit_matrix(dim: usize, rows: &[u64]) -> Option<Vec<u64>> {
    debug_assert!(dim <= 62 && rows.len() == dim);
    let mut aug: Vec<u128> = rows
        .iter()
        .enumerate()
        .map(|(i, &r)| (r as u128) | (1u128 << (dim + i)))
        .collect();
    for col in 0..dim {
        let row = (col..dim).find(|&r| (aug[r] >> col) & 1 == 1)?;
        aug.swap(col, row);
        let lead = aug[col];
        for (r, other) in aug.iter_mut().enumerate() {
            if r != col && (*other >> col) & 1 == 1 {
                *other ^= lead;
            }
        }
    }
    Some(aug.iter().map(|&r| (r >> dim) as u64).collect())
}

/// Smallest solution of the affine system `parity(mask & v) = t` over
/// `v < 2^width`; `None` if inconsistent.
fn min_key_solution(width: usize, constraints: &[(u64, u8)]) -> Option<u64> {
    let mut rows: Vec<(u64, u8)> = Vec::new();
    for &(mask0, t0) in constraints {
        let (mut m, mut t) = (mask0 & mask(width), t0 & 1);
        for &(om, ot) in &rows {
            if (m >> pivot(om)) & 1 == 1 {
                m ^= om;
                t ^= ot;
            }
        }
        if m == 0 {
            if t == 1 {
                return None;
            }
            continue;
        }
        let p = pivot(m);
        for (om, ot) in rows.iter_mut() {
            if (*om >> p) & 1 == 1 {
                *om ^= m;
                *ot ^= t;
            }
        }
        let pos = rows.partition_point(|&(om, _)| pivot(om) > p);
        rows.insert(pos, (m, t));
    }
    let mut v: u64 = rows.iter().map(|&(m, t)| (t as u64) << pivot(m)).sum();
    let masks: Vec<u64> = rows.iter().map(|&(m, _)| m).collect();
    for r in nullspace_basis(width, &masks) {
        if (v >> pivot(r)) & 1 == 1 {
            v ^= r;
        }
    }
    Some(v)
}

/// The output of [`symplectic_gram_schmidt`].
#[derive(Debug, Clone)]
pub struct GramSchmidt {
    /// Hyperbolic pairs `(e_i, f_i)` with `form(e_i, f_i) = 1` and all
    /// other pairings zero.
    pub pairs: Vec<(PauliIndex, PauliIndex)>,
    /// Vectors commuting with each other and with every pair.
    pub residual: Vec<PauliIndex>,
    /// A map sending pair `i` to `(Z_i, X_i)` and residual `j` to
    /// `Z_{k+j}`, so the image of the input is the span of the leading
    /// coordinate operators.
    pub u: SymplecticMap,
}

impl GramSchmidt {
    /// Number of hyperbolic pairs.
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// Number of residual vectors.
    pub fn m(&self) -> usize {
        self.residual.len()
    }
}

/// Splits `v` into `k` hyperbolic pairs and `m` commuting residual
/// vectors with `2k + m = dim`, and builds the symplectic map taking them
/// to `(Z_1, X_1), ..., (Z_k, X_k), Z_{k+1}, ..., Z_{k+m}`.
///
/// The split and the map are deterministic: pairing scans the canonical
/// basis in order, and every free choice takes the smallest admissible
/// packed index.
pub fn symplectic_gram_schmidt(v: &F2Subspace) -> GramSchmidt {
    let n = v.n();
    let mut work: Vec<u64> = v.row_keys().to_vec();
    let mut pair_keys: Vec<(u64, u64)> = Vec::new();
    let mut residual_keys: Vec<u64> = Vec::new();
    while !work.is_empty() {
        let e = work.remove(0);
        match work.iter().position(|&w| form_keys(n, e, w) == 1) {
            None => residual_keys.push(e),
            Some(idx) => {
                let f = work.remove(idx);
                for w in work.iter_mut() {
                    let toward_e = form_keys(n, *w, f) == 1;
                    let toward_f = form_keys(n, *w, e) == 1;
                    if toward_e {
                        *w ^= e;
                    }
                    if toward_f {
                        *w ^= f;
                    }
                }
                pair_keys.push((e, f));
            }
        }
    }

    let u = basis_change(n, &pair_keys, &residual_keys);
    GramSchmidt {
        pairs: pair_keys
            .iter()
            .map(|&(e, f)| (PauliIndex::from_key(n, e), PauliIndex::from_key(n, f)))
            .collect(),
        residual: residual_keys
            .iter()
            .map(|&r| PauliIndex::from_key(n, r))
            .collect(),
        u,
    }
}

/// Completes pairs and residual to a full symplectic basis
/// `(v_{Z_1}, v_{X_1}, ..., v_{Z_n}, v_{X_n})` and returns the map
/// sending `v_{Z_i}` to `Z_i` and `v_{X_i}` to `X_i`.
fn basis_change(n: usize, pair_keys: &[(u64, u64)], residual_keys: &[u64]) -> SymplecticMap {
    let two_n = 2 * n;
    let mut partners: Vec<u64> = Vec::new();
    for (j, _) in residual_keys.iter().enumerate() {
        let mut cons: Vec<(u64, u8)> = Vec::new();
        for &(e, f) in pair_keys {
            cons.push((swap_halves(n, e), 0));
            cons.push((swap_halves(n, f), 0));
        }
        for (l, &r) in residual_keys.iter().enumerate() {
            cons.push((swap_halves(n, r), u8::from(l == j)));
        }
        for &s in &partners {
            cons.push((swap_halves(n, s), 0));
        }
        let s = min_key_solution(two_n, &cons).expect("residual admits a symplectic partner");
        partners.push(s);
    }

    let mut cols: Vec<u64> = Vec::new();
    for &(e, f) in pair_keys {
        cols.push(e);
        cols.push(f);
    }
    for (j, &r) in residual_keys.iter().enumerate() {
        cols.push(r);
        cols.push(partners[j]);
    }
    while cols.len() < two_n {
        let masks: Vec<u64> = cols.iter().map(|&c| swap_halves(n, c)).collect();
        let complement = nullspace_basis(two_n, &masks);
        let g = *complement
            .last()
            .expect("symplectic complement of a proper subspace is nonzero");
        let mut cons: Vec<(u64, u8)> = masks.iter().map(|&m| (m, 0)).collect();
        cons.push((swap_halves(n, g), 1));
        let h = min_key_solution(two_n, &cons).expect("radical vector admits a partner");
        cols.push(g);
        cols.push(h);
    }

    let b_rows: Vec<u64> = (0..two_n)
        .map(|i| {
            cols.iter()
                .enumerate()
                .fold(0u64, |m, (j, &c)| m | (((c >> i) & 1) << j))
        })
        .collect();
    let b_inv = invert_bit_matrix(two_n, &b_rows).expect("a symplectic basis is invertible");
    let rows: Vec<u64> = (0..two_n)
        .map(|i| {
            if i < n {
                b_inv[2 * i]
            } else {
                b_inv[2 * (i - n) + 1]
            }
        })
        .collect();
    SymplecticMap::from_rows(n, rows)
}
