//! Subspaces of the binary symplectic space in canonical form.
//!
//! A basis is kept in two-sided reduced row echelon form with rows ordered
//! by strictly decreasing pivot, where a row's pivot is its highest set
//! bit. The form is unique, so equal subspaces compare bit-identical, and
//! enumerating a subspace by coefficient order walks its elements in
//! strictly increasing packed-index order.

use crate::caps::{guard, Caps};
use crate::error::{Error, Result};
use crate::pauli::{check_qubits, form_keys, mask, swap_halves, PauliIndex};

pub(crate) fn pivot(row: u64) -> u32 {
    debug_assert!(row != 0);
    63 - row.leading_zeros()
}

/// Reduces `rows` to two-sided RREF with strictly decreasing pivots.
pub(crate) fn rref_rows(rows: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &o in &out {
            if (r >> pivot(o)) & 1 == 1 {
                r ^= o;
            }
        }
        if r == 0 {
            continue;
        }
        let p = pivot(r);
        for o in out.iter_mut() {
            if (*o >> p) & 1 == 1 {
                *o ^= r;
            }
        }
        let pos = out.partition_point(|&o| pivot(o) > p);
        out.insert(pos, r);
    }
    out
}

/// RREF basis of `{v < 2^width : parity(c & v) = 0 for all c}`.
pub(crate) fn nullspace_basis(width: usize, constraints: &[u64]) -> Vec<u64> {
    debug_assert!(width <= 62);
    if width == 0 {
        return Vec::new();
    }
    let masked: Vec<u64> = constraints.iter().map(|&c| c & mask(width)).collect();
    let reduced = rref_rows(&masked);
    let pivot_mask: u64 = reduced.iter().map(|&r| 1u64 << pivot(r)).sum();
    let mut basis = Vec::with_capacity(width - reduced.len());
    for f in (0..width).rev() {
        if (pivot_mask >> f) & 1 == 1 {
            continue;
        }
        let mut v = 1u64 << f;
        for &r in &reduced {
            if (r >> f) & 1 == 1 {
                v |= 1u64 << pivot(r);
            }
        }
        basis.push(v);
    }
    rref_rows(&basis)
}

/// All `2^d` elements spanned by RREF `rows`, in increasing order.
pub(crate) fn element_keys_of(rows: &[u64]) -> Vec<u64> {
    let d = rows.len();
    let mut out = vec![0u64; 1 << d];
    for c in 1..1usize << d {
        let low = c.trailing_zeros() as usize;
        out[c] = out[c & (c - 1)] ^ rows[d - 1 - low];
    }
    out
}

/// A subspace of `F_2^{2n}`, the index space of the Pauli group on `n`
/// qubits.
///
/// The derived ordering compares canonical bases lexicographically and is
/// the tie-breaking order used by the maximizing searches.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Subspace {
    n: usize,
    rows: Vec<u64>,
}

impl F2Subspace {
    /// The zero subspace of `F_2^{2n}`.
    pub fn zero(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(F2Subspace { n, rows: Vec::new() })
    }

    /// The span of the given Pauli indices, in canonical form.
    ///
    /// Dependent or duplicate generators collapse; the empty list yields
    /// the zero subspace.
    pub fn span(n: usize, generators: &[PauliIndex]) -> Result<Self> {
        check_qubits(n)?;
        let mut keys = Vec::with_capacity(generators.len());
        for g in generators {
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: g.n(),
                });
            }
            keys.push(g.key());
        }
        Ok(Self::from_keys(n, &keys))
    }

    pub(crate) fn from_keys(n: usize, keys: &[u64]) -> Self {
        F2Subspace {
            n,
            rows: rref_rows(keys),
        }
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the basis; the subspace has `2^dim` elements.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The canonical basis as Pauli indices, highest pivot first.
    pub fn generators(&self) -> Vec<PauliIndex> {
        self.rows
            .iter()
            .map(|&r| PauliIndex::from_key(self.n, r))
            .collect()
    }

    /// The canonical basis in letter form.
    pub fn to_pauli_strings(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.to_letters()).collect()
    }

    pub(crate) fn row_keys(&self) -> &[u64] {
        &self.rows
    }

    fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if (v >> pivot(r)) & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub(crate) fn contains_key(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Whether `x` lies in the subspace.
    pub fn contains(&self, x: &PauliIndex) -> Result<bool> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        Ok(self.contains_key(x.key()))
    }

    pub(crate) fn element_keys(&self) -> Vec<u64> {
        element_keys_of(&self.rows)
    }

    /// All `2^dim` elements in increasing packed-index order, starting
    /// with the identity.
    pub fn elements(&self) -> Vec<PauliIndex> {
        self.element_keys()
            .into_iter()
            .map(|k| PauliIndex::from_key(self.n, k))
            .collect()
    }

    /// Whether the symplectic form vanishes on the subspace.
    pub fn is_isotropic(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| {
            self.rows[i + 1..]
                .iter()
                .all(|&s| form_keys(self.n, r, s) == 0)
        })
    }

    /// Whether the subspace is isotropic of the maximal dimension `n`.
    pub fn is_lagrangian(&self) -> bool {
        self.dim() == self.n && self.is_isotropic()
    }

    pub(crate) fn insert_key(&mut self, v: u64) {
        let mut rows = self.rows.clone();
        rows.push(v);
        self.rows = rref_rows(&rows);
    }

    /// Extends an isotropic subspace to a Lagrangian one by repeatedly
    /// adjoining the smallest commuting index outside the current span.
    ///
    /// The extension is deterministic; a subspace that is already
    /// Lagrangian comes back unchanged.
    pub fn complete_to_lagrangian(&self) -> Result<Self> {
        if !self.is_isotropic() {
            return Err(Error::NotIsotropic);
        }
        let mut out = self.clone();
        while out.dim() < out.n {
            let v = out.min_commutant_extension();
            out.insert_key(v);
        }
        Ok(out)
    }

    /// The smallest element of the commutant not already in the span.
    ///
    /// In coefficient coordinates over the commutant's RREF basis the
    /// span pulls back to a subspace whose smallest non-member is the
    /// power of two at the first free coefficient, so the answer is a
    /// single commutant basis row.
    fn min_commutant_extension(&self) -> u64 {
        let constraints: Vec<u64> = self
            .rows
            .iter()
            .map(|&r| swap_halves(self.n, r))
            .collect();
        let commutant = nullspace_basis(2 * self.n, &constraints);
        let r = commutant.len();
        let coeffs: Vec<u64> = self
            .rows
            .iter()
            .map(|&s| {
                let mut c = 0u64;
                for (i, &row) in commutant.iter().enumerate() {
                    c |= ((s >> pivot(row)) & 1) << (r - 1 - i);
                }
                c
            })
            .collect();
        let taken: u64 = rref_rows(&coeffs).iter().map(|&c| 1u64 << pivot(c)).sum();
        let q = (0..r)
            .find(|&q| (taken >> q) & 1 == 0)
            .expect("commutant is strictly larger than an isotropic span");
        commutant[r - 1 - q]
    }
}

/// Streams every Lagrangian subspace of `F_2^{2n}` exactly once.
///
/// The order is deterministic: depth-first over canonical bases, trying
/// candidate rows in increasing packed-index order. The total count is
/// the product of `2^k + 1` for `k = 1..=n`.
pub fn enumerate_lagrangians(n: usize, caps: &Caps) -> Result<LagrangianIter> {
    check_qubits(n)?;
    guard("lagrangian enumeration", n, caps.enumeration)?;
    let root = Frame {
        rows: Vec::new(),
        cands: candidate_rows(n, &[]),
        next: 0,
    };
    Ok(LagrangianIter {
        n,
        stack: vec![root],
    })
}

/// Iterator over all Lagrangian subspaces at a fixed `n`.
#[derive(Debug)]
pub struct LagrangianIter {
    n: usize,
    stack: Vec<Frame>,
}

#[derive(Debug)]
struct Frame {
    rows: Vec<u64>,
    cands: Vec<u64>,
    next: usize,
}

/// Valid next rows for a partial canonical chain: commuting with every
/// current row, pivot strictly below the last pivot, and pivot absent
/// from the current rows so the chain stays two-sided reduced.
fn candidate_rows(n: usize, rows: &[u64]) -> Vec<u64> {
    let width = match rows.last() {
        None => 2 * n,
        Some(&last) => pivot(last) as usize,
    };
    if width == 0 {
        return Vec::new();
    }
    let constraints: Vec<u64> = rows.iter().map(|&r| swap_halves(n, r)).collect();
    let basis = nullspace_basis(width, &constraints);
    let union: u64 = rows.iter().fold(0, |m, &r| m | r);
    element_keys_of(&basis)
        .into_iter()
        .filter(|&v| v != 0 && (union >> pivot(v)) & 1 == 0)
        .collect()
}

impl Iterator for LagrangianIter {
    type Item = F2Subspace;

    fn next(&mut self) -> Option<F2Subspace> {
        while let Some(frame) = self.stack.last_mut() {
            if frame.next >= frame.cands.len() {
                self.stack.pop();
                continue;
            }
            let v = frame.cands[frame.next];
            frame.next += 1;
            let mut rows = frame.rows.clone();
            rows.push(v);
            if rows.len() == self.n {
                return Some(F2Subspace { n: self.n, rows });
            }
            let cands = candidate_rows(self.n, &rows);
            self.stack.push(Frame {
                rows,
                cands,
                next: 0,
            });
        }
        None
    }
}

/// The number of Lagrangian subspaces at `n`: the product of `2^k + 1`.
pub fn lagrangian_count(n: usize) -> u64 {
    (1..=n as u32).map(|k| (1u64 << k) + 1).product()
}
