//! The constructive side of the inverse theorem: canonical forms of
//! subgroups under symplectic maps, the explicit `4^k` stabilizer-group
//! cover, purity bounds, heavy-coefficient sets, and the greedy subgroup
//! extractor.

use std::collections::HashSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::caps::{guard, Caps};
use crate::error::{Error, Result};
use crate::pauli::PauliIndex;
use crate::spectra::WeylSpectrum;
use crate::subspace::F2Subspace;
use crate::symplectic::{symplectic_gram_schmidt, SymplecticMap};

const PURITY_TOL: f64 = 1e-9;
const COVER_SPOT_CHECKS: usize = 10_000;
const DOUBLING_SET_LIMIT: usize = 1 << 16;

/// A subgroup brought to canonical position: `k` hyperbolic pairs and
/// `m` residual generators under the symplectic map `u`.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// Number of hyperbolic pairs.
    pub k: usize,
    /// Number of residual generators.
    pub m: usize,
    /// The verified symplectic map carrying the subgroup to the span of
    /// `Z_1..Z_k, X_1..X_k, Z_{k+1}..Z_{k+m}`.
    pub u: SymplecticMap,
}

/// The span of `Z_1..Z_k, X_1..X_k, Z_{k+1}..Z_{k+m}`.
pub(crate) fn canonical_span(n: usize, k: usize, m: usize) -> F2Subspace {
    let mut keys = Vec::with_capacity(2 * k + m);
    for i in 0..k {
        keys.push(1u64 << i);
        keys.push(1u64 << (n + i));
    }
    for j in 0..m {
        keys.push(1u64 << (k + j));
    }
    F2Subspace::from_keys(n, &keys)
}

/// Computes and verifies the canonical form of a subgroup: the returned
/// map is checked to be symplectic and to carry the subgroup exactly
/// onto the canonical span.
pub fn canonical_form(v: &F2Subspace) -> Result<CanonicalForm> {
    let gs = symplectic_gram_schmidt(v);
    let (k, m) = (gs.k(), gs.m());
    let n = v.n();
    if 2 * k + m != v.dim() || k + m > n {
        return Err(Error::Internal(format!(
            "canonical form miscounted: dim {} gave k = {k}, m = {m}",
            v.dim()
        )));
    }
    if !gs.u.is_symplectic() {
        return Err(Error::Internal(
            "canonical basis change does not preserve the form".into(),
        ));
    }
    if gs.u.apply_subspace(v)? != canonical_span(n, k, m) {
        return Err(Error::Internal(
            "canonical basis change misses the canonical span".into(),
        ));
    }
    Ok(CanonicalForm { k, m, u: gs.u })
}

/// An explicit family of `4^k` Lagrangian subspaces whose union contains
/// a given subgroup. Duplicate members are retained so the count is
/// always exactly `4^k`.
#[derive(Debug, Clone)]
pub struct StabilizerCover {
    n: usize,
    form: CanonicalForm,
    groups: Vec<F2Subspace>,
}

impl StabilizerCover {
    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical form the cover was built from.
    pub fn form(&self) -> &CanonicalForm {
        &self.form
    }

    /// The covering Lagrangians, indexed by hyperbolic label.
    pub fn groups(&self) -> &[F2Subspace] {
        &self.groups
    }

    /// Renders the cover as JSON: the counts, the basis-change images of
    /// `Z_1..Z_n, X_1..X_n` as `(a|b)` strings, and every group as a
    /// list of Pauli strings.
    pub fn to_json(&self) -> Result<String> {
        let n = self.n;
        let mut u_rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            let z = PauliIndex::from_key(n, 1u64 << i);
            u_rows.push(self.form.u.apply(&z)?.to_ab_string());
        }
        for i in 0..n {
            let x = PauliIndex::from_key(n, 1u64 << (n + i));
            u_rows.push(self.form.u.apply(&x)?.to_ab_string());
        }
        let groups: Vec<Vec<String>> =
            self.groups.iter().map(|g| g.to_pauli_strings()).collect();
        let value = json!({
            "n": n,
            "k": self.form.k,
            "m": self.form.m,
            "count": self.groups.len(),
            "u": u_rows,
            "groups": groups,
        });
        Ok(serde_json::to_string_pretty(&value)?)
    }
}

/// Builds the `4^k` cover of a subgroup and verifies the covering
/// property before returning it: exhaustively when the subgroup is
/// small enough, otherwise on all generators plus seeded random
/// elements.
pub fn stabilizer_cover(v: &F2Subspace, caps: &Caps) -> Result<StabilizerCover> {
    let n = v.n();
    let form = canonical_form(v)?;
    let (k, m) = (form.k, form.m);
    guard("hyperbolic pair count", k, caps.cover_pairs)?;
    let u_inv = form.u.inverse();
    let mask_k = (1u64 << k) - 1;
    let mut groups = Vec::with_capacity(1 << (2 * k));
    for a in 0..1u64 << (2 * k) {
        let tau = ((a >> k) << n) | (a & mask_k);
        let mut keys = vec![tau];
        for j in 0..m {
            keys.push(1u64 << (k + j));
        }
        let tilted = F2Subspace::from_keys(n, &keys).complete_to_lagrangian()?;
        let group = u_inv.apply_subspace(&tilted)?;
        if !group.is_lagrangian() {
            return Err(Error::Internal("cover member is not Lagrangian".into()));
        }
        groups.push(group);
    }
    let cover = StabilizerCover { n, form, groups };
    if v.dim() <= caps.cover_verify {
        for key in cover_check_failures(&cover, v.element_keys().iter().copied()) {
            return Err(Error::Internal(format!(
                "cover misses subgroup element {key:#x}"
            )));
        }
    } else {
        let rows = v.row_keys().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let spot = (0..COVER_SPOT_CHECKS).map(|_| {
            let coeff: u64 = rng.random();
            rows.iter()
                .enumerate()
                .filter(|(i, _)| coeff >> i & 1 == 1)
                .fold(0u64, |acc, (_, r)| acc ^ r)
        });
        let elems = rows.iter().copied().chain(spot);
        for key in cover_check_failures(&cover, elems) {
            return Err(Error::Internal(format!(
                "cover misses subgroup element {key:#x}"
            )));
        }
    }
    Ok(cover)
}

/// Yields subgroup elements the cover fails to contain; the hyperbolic
/// label of each element selects the group that must hold it.
fn cover_check_failures(
    cover: &StabilizerCover,
    elems: impl Iterator<Item = u64>,
) -> Vec<u64> {
    let n = cover.n;
    let k = cover.form.k;
    let mask_k = (1u64 << k) - 1;
    let mut missed = Vec::new();
    for key in elems {
        let image = cover.form.u.apply_key(key);
        let label = (((image >> n) & mask_k) << k) | (image & mask_k);
        if !cover.groups[label as usize].contains_key(key) {
            missed.push(key);
        }
    }
    missed
}

/// The two sides of the purity bound `sum_{x in V} alpha(x)^2 <=
/// 2^{k+m}` for a subgroup in canonical form.
#[derive(Debug, Clone, Copy)]
pub struct PurityBound {
    /// The spectral mass on the subgroup.
    pub lhs: f64,
    /// The structural budget `2^{k+m}`.
    pub rhs: f64,
    /// Whether the bound holds within tolerance.
    pub ok: bool,
}

/// Evaluates the purity bound of a spectrum on a subgroup.
pub fn purity_bound_check(spec: &WeylSpectrum, v: &F2Subspace) -> Result<PurityBound> {
    if spec.n() != v.n() {
        return Err(Error::DimensionMismatch {
            left: spec.n(),
            right: v.n(),
        });
    }
    let form = canonical_form(v)?;
    let alpha = spec.alpha();
    let lhs: f64 = v
        .element_keys()
        .iter()
        .map(|&key| {
            let a = alpha[key as usize];
            a * a
        })
        .sum();
    let rhs = (1u64 << (form.k + form.m)) as f64;
    Ok(PurityBound {
        lhs,
        rhs,
        ok: lhs <= rhs + PURITY_TOL,
    })
}

/// All indices whose squared expectation reaches `gamma / 4`, in
/// ascending key order.
pub fn heavy_set(spec: &WeylSpectrum, gamma: f64) -> Result<Vec<PauliIndex>> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Config(format!(
            "heavy set threshold must lie in (0, 1], got {gamma}"
        )));
    }
    let cut = 0.25 * gamma;
    Ok(spec
        .alpha()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a * a >= cut)
        .map(|(key, _)| PauliIndex::from_key(spec.n(), key as u64))
        .collect())
}

/// Greedy subgroup extraction with the default retention factor `1/2`.
pub fn greedy_subgroup(spec: &WeylSpectrum, gamma: f64) -> Result<F2Subspace> {
    greedy_subgroup_with(spec, gamma, 0.5)
}

/// Grows a subgroup from the heavy set: candidates are tried in order
/// of decreasing squared expectation, a step is kept when the closure
/// retains at least `retention` of the current mean squared
/// expectation, and the accepted closure with the best mean wins (later
/// ties preferred). Returns the zero subgroup when no step is accepted.
pub fn greedy_subgroup_with(
    spec: &WeylSpectrum,
    gamma: f64,
    retention: f64,
) -> Result<F2Subspace> {
    if !(retention > 0.0 && retention <= 1.0) {
        return Err(Error::Config(format!(
            "retention factor must lie in (0, 1], got {retention}"
        )));
    }
    let n = spec.n();
    let alpha = spec.alpha();
    let mut candidates = heavy_set(spec, gamma)?;
    candidates.sort_by(|x, y| {
        let (ax, ay) = (alpha[x.key() as usize], alpha[y.key() as usize]);
        (ay * ay)
            .partial_cmp(&(ax * ax))
            .expect("expectations are finite")
            .then(x.key().cmp(&y.key()))
    });
    let mean_of = |v: &F2Subspace| -> f64 {
        let keys = v.element_keys();
        let total: f64 = keys
            .iter()
            .map(|&key| {
                let a = alpha[key as usize];
                a * a
            })
            .sum();
        total / keys.len() as f64
    };
    let mut current = F2Subspace::zero(n)?;
    let mut current_mean = 1.0;
    let mut best: Option<(f64, F2Subspace)> = None;
    for x in &candidates {
        if current.contains_key(x.key()) {
            continue;
        }
        let mut closure = current.clone();
        closure.insert_key(x.key());
        let mean = mean_of(&closure);
        if mean >= retention * current_mean {
            let better = best.as_ref().map_or(true, |(bm, _)| mean >= *bm);
            if better {
                best = Some((mean, closure.clone()));
            }
            current = closure;
            current_mean = mean;
        }
    }
    match best {
        Some((_, v)) => Ok(v),
        None => F2Subspace::zero(n),
    }
}

/// The best fidelity lower bound obtainable from one subgroup: the
/// maximal characteristic mass over the groups of its cover, with the
/// witnessing group.
pub fn fidelity_from_subgroup(
    spec: &WeylSpectrum,
    v: &F2Subspace,
    caps: &Caps,
) -> Result<(f64, F2Subspace)> {
    if spec.n() != v.n() {
        return Err(Error::DimensionMismatch {
            left: spec.n(),
            right: v.n(),
        });
    }
    let cover = stabilizer_cover(v, caps)?;
    let p = spec.p();
    let mut best: Option<(f64, F2Subspace)> = None;
    for group in cover.groups() {
        let mass: f64 = group
            .element_keys()
            .iter()
            .map(|&key| p[key as usize])
            .sum();
        let better = match &best {
            None => true,
            Some((bv, bg)) => mass > *bv || (mass == *bv && group < bg),
        };
        if better {
            best = Some((mass, group.clone()));
        }
    }
    Ok(best.expect("cover is nonempty"))
}

/// The doubling ratio `|S + S| / |S|` of a set of indices, a diagnostic
/// for how far the set is from a subgroup.
pub fn doubling_ratio(set: &[PauliIndex]) -> Result<f64> {
    let first = set
        .first()
        .ok_or_else(|| Error::Config("doubling ratio needs a nonempty set".into()))?;
    let n = first.n();
    guard("doubling ratio set", set.len(), DOUBLING_SET_LIMIT)?;
    let mut keys = HashSet::with_capacity(set.len());
    for x in set {
        if x.n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: x.n(),
            });
        }
        keys.insert(x.key());
    }
    let mut sums = HashSet::with_capacity(keys.len() * 2);
    for &a in &keys {
        for &b in &keys {
            sums.insert(a ^ b);
        }
    }
    Ok(sums.len() as f64 / keys.len() as f64)
}
