//! Spatial lattice modulation (SLM) input set and its rotation orbits.
//!
//! A channel input is a nonzero vector in `{-1,0,+1}^{2M}`, stacked as
//! `[Re; Im]`. Multiplying the complex form by `j` is the 90° rotation
//! `R = [[0, -I], [I, 0]]`, and every nonzero vector has an orbit of exactly
//! four distinct members under `R`. Orbits are identified by `(u, k)`: `u` is
//! the power level (number of nonzero entries) and `k` is the 1-based rank of
//! the orbit's representative within that level.
//!
//! The representative of an orbit is its lexicographically smallest member,
//! comparing entries left to right with `-1 < 0 < +1`. The `k` ordering
//! follows the same comparison, which makes subset indices (and therefore the
//! feedback codebook) deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Range;

use num_complex::Complex64;

use crate::{Error, Result};

pub const MIN_ANTENNAS: usize = 1;
/// Largest antenna count the materialized constellation supports.
pub const MAX_ANTENNAS: usize = 8;

pub(crate) fn check_antennas(m: usize) -> Result<()> {
    if (MIN_ANTENNAS..=MAX_ANTENNAS).contains(&m) {
        Ok(())
    } else {
        Err(Error::AntennaCount { m, min: MIN_ANTENNAS, max: MAX_ANTENNAS })
    }
}

/// A channel input `x ∈ {-1,0,+1}^{2M} \ {0}` in real-stacked form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignalVector(Vec<i8>);

impl SignalVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return Err(Error::InvalidSignal("length must be a positive even number 2M"));
        }
        if entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return Err(Error::InvalidSignal("entries must be -1, 0 or +1"));
        }
        if entries.iter().all(|&e| e == 0) {
            return Err(Error::InvalidSignal("the all-zero vector is not a channel input"));
        }
        Ok(Self(entries))
    }

    pub(crate) fn from_slice_unchecked(entries: &[i8]) -> Self {
        Self(entries.to_vec())
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn antennas(&self) -> usize {
        self.0.len() / 2
    }

    pub fn power_level(&self) -> usize {
        nonzeros(&self.0)
    }

    /// `R^times x`.
    pub fn rotated(&self, times: usize) -> Self {
        let mut out = self.0.clone();
        for _ in 0..times % 4 {
            let prev = out.clone();
            rotate_into(&prev, &mut out);
        }
        Self(out)
    }
}

impl fmt::Display for SignalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// `(u, k)` label of a rotational subset; both are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetId {
    pub u: usize,
    pub k: usize,
}

impl SubsetId {
    pub const fn new(u: usize, k: usize) -> Self {
        Self { u, k }
    }
}

impl fmt::Display for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_({},{})", self.u, self.k)
    }
}

/// One orbit `{R^0 x, R^1 x, R^2 x, R^3 x}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationalSubset {
    pub id: SubsetId,
    pub representative: SignalVector,
}

impl RotationalSubset {
    pub fn power_level(&self) -> usize {
        self.id.u
    }

    /// Members in rotation order, starting at the representative.
    pub fn members(&self) -> [SignalVector; 4] {
        let r0 = self.representative.clone();
        let r1 = r0.rotated(1);
        let r2 = r1.rotated(1);
        let r3 = r2.rotated(1);
        [r0, r1, r2, r3]
    }

    pub fn contains(&self, x: &SignalVector) -> bool {
        canonical(x.as_slice()) == self.representative.as_slice()
    }
}

/// Fully materialized SLM constellation for `M` antennas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constellation {
    m: usize,
    // Representatives back to back, 2M entries each, ordered by (u, k).
    reps: Vec<i8>,
    // level_start[u]..level_start[u + 1] are the global indices of level u.
    level_start: Vec<usize>,
}

impl Constellation {
    pub fn antennas(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    /// Number of rotational subsets, `(9^M - 1) / 4`.
    pub fn len(&self) -> usize {
        self.reps.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Number of channel inputs, `3^{2M} - 1`.
    pub fn vector_count(&self) -> usize {
        4 * self.len()
    }

    /// `K_u`, the number of subsets at power level `u`.
    pub fn level_count(&self, u: usize) -> usize {
        self.level_range(u).len()
    }

    /// Global indices of the subsets at power level `u` (empty if out of range).
    pub fn level_range(&self, u: usize) -> Range<usize> {
        if u == 0 || u > self.dim() {
            return 0..0;
        }
        self.level_start[u]..self.level_start[u + 1]
    }

    /// Representative of the subset at global position `index`.
    pub fn representative(&self, index: usize) -> &[i8] {
        let d = self.dim();
        &self.reps[index * d..(index + 1) * d]
    }

    pub fn id_at(&self, index: usize) -> SubsetId {
        let u = self.level_start.partition_point(|&s| s <= index) - 1;
        SubsetId::new(u, index - self.level_start[u] + 1)
    }

    pub fn index_of(&self, id: SubsetId) -> Result<usize> {
        let range = self.level_range(id.u);
        if id.k == 0 || id.k > range.len() {
            return Err(Error::UnknownSubset { u: id.u, k: id.k });
        }
        Ok(range.start + id.k - 1)
    }

    pub fn subset(&self, id: SubsetId) -> Result<RotationalSubset> {
        let index = self.index_of(id)?;
        Ok(self.subset_at(index))
    }

    pub fn subset_at(&self, index: usize) -> RotationalSubset {
        RotationalSubset {
            id: self.id_at(index),
            representative: SignalVector::from_slice_unchecked(self.representative(index)),
        }
    }

    /// `(index, id, representative)` for every subset in `(u, k)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, SubsetId, &[i8])> + '_ {
        (1..=self.dim()).flat_map(move |u| {
            self.level_range(u)
                .enumerate()
                .map(move |(k0, idx)| (idx, SubsetId::new(u, k0 + 1), self.representative(idx)))
        })
    }

    /// Global index of the orbit containing `x`.
    pub fn locate(&self, x: &SignalVector) -> Result<usize> {
        if x.as_slice().len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.as_slice().len() });
        }
        let rep = canonical(x.as_slice());
        let range = self.level_range(nonzeros(&rep));
        let d = self.dim();
        let level = &self.reps[range.start * d..range.end * d];
        let pos =
            binary_search_chunks(level, d, &rep).expect("every nonzero lattice vector belongs to an enumerated orbit");
        Ok(range.start + pos)
    }

    pub fn orbit_of(&self, x: &SignalVector) -> Result<RotationalSubset> {
        self.locate(x).map(|idx| self.subset_at(idx))
    }
}

fn binary_search_chunks(flat: &[i8], d: usize, needle: &[i8]) -> Option<usize> {
    let (mut lo, mut hi) = (0, flat.len() / d);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match flat[mid * d..(mid + 1) * d].cmp(needle) {
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid,
            Ordering::Equal => return Some(mid),
        }
    }
    None
}

#[inline]
fn nonzeros(x: &[i8]) -> usize {
    x.iter().filter(|&&e| e != 0).count()
}

/// `out = R x` for `x = [a; b]`, i.e. `out = [-b; a]`.
#[inline]
pub(crate) fn rotate_into(x: &[i8], out: &mut [i8]) {
    let m = x.len() / 2;
    for i in 0..m {
        out[i] = -x[m + i];
        out[m + i] = x[i];
    }
}

/// Lexicographically smallest member of the orbit of `x`.
pub(crate) fn canonical(x: &[i8]) -> Vec<i8> {
    let mut best = x.to_vec();
    let mut cur = x.to_vec();
    let mut next = vec![0i8; x.len()];
    for _ in 0..3 {
        rotate_into(&cur, &mut next);
        core::mem::swap(&mut cur, &mut next);
        if cur < best {
            best.copy_from_slice(&cur);
        }
    }
    best
}

/// The `2M × 2M` rotation `[[0, -I], [I, 0]]`, row-major.
pub fn rotation_matrix(m: usize) -> Result<Vec<Vec<i8>>> {
    if m < MIN_ANTENNAS {
        return Err(Error::AntennaCount { m, min: MIN_ANTENNAS, max: usize::MAX });
    }
    let mut r = vec![vec![0i8; 2 * m]; 2 * m];
    for i in 0..m {
        r[i][m + i] = -1;
        r[m + i][i] = 1;
    }
    Ok(r)
}

/// Enumerates every rotational subset of `{-1,0,+1}^{2M} \ {0}`.
pub fn enumerate_constellation(m: usize) -> Result<Constellation> {
    check_antennas(m)?;
    let d = 2 * m;
    let mut levels: Vec<Vec<i8>> = vec![Vec::new(); d + 1];

    // Odometer over {-1,0,1}^d in ascending lexicographic order, so each
    // level's representatives come out already sorted.
    let mut x = vec![-1i8; d];
    let mut rot = vec![0i8; d];
    let mut rot2 = vec![0i8; d];
    loop {
        let u = nonzeros(&x);
        if u > 0 {
            rotate_into(&x, &mut rot);
            if x < rot {
                rotate_into(&rot, &mut rot2);
                if x < rot2 {
                    rotate_into(&rot2, &mut rot);
                    if x < rot {
                        levels[u].extend_from_slice(&x);
                    }
                }
            }
        }
        let mut pos = d;
        loop {
            if pos == 0 {
                let mut reps = Vec::with_capacity(levels.iter().map(Vec::len).sum());
                let mut level_start = vec![0usize; d + 2];
                for u in 1..=d {
                    level_start[u] = reps.len() / d;
                    reps.extend_from_slice(&levels[u]);
                }
                level_start[d + 1] = reps.len() / d;
                return Ok(Constellation { m, reps, level_start });
            }
            pos -= 1;
            if x[pos] < 1 {
                x[pos] += 1;
                break;
            }
            x[pos] = -1;
        }
    }
}

/// Instantaneous power `‖x‖²`, the number of nonzero entries.
pub fn power_level(x: &SignalVector) -> usize {
    x.power_level()
}

/// The rotational subset of `cons` that contains `x`.
pub fn orbit_of(cons: &Constellation, x: &SignalVector) -> Result<RotationalSubset> {
    cons.orbit_of(x)
}

/// Complex form: entry `m` is `x_m + j x_{M+m}`.
pub fn complexify(x: &SignalVector) -> Vec<Complex64> {
    let m = x.antennas();
    let e = x.as_slice();
    (0..m).map(|i| Complex64::new(e[i] as f64, e[m + i] as f64)).collect()
}
