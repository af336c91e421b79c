//! Hermitian matrices over `Q(ζ_N)` with exact inertia.
//!
//! The inertia is computed by symmetric elimination. A nonzero diagonal entry
//! is used as a 1×1 pivot and contributes its certified sign. When the active
//! diagonal vanishes identically but some off-diagonal entry `a = h_ij` does
//! not, the pair `(i, j)` spans a hyperbolic plane: the block
//! `[[0, a], [ā, 0]]` has one positive and one negative eigenvalue, and the
//! Schur complement is taken with respect to it. A remaining zero block adds
//! to the nullity.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Result, SigError};

#[derive(Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    level: u64,
    size: usize,
    /// Row-major, all at `level`.
    entries: Vec<CyclotomicNumber>,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

impl HermitianMatrix {
    /// Builds a matrix from rows, lifting all entries to a common level and
    /// checking the Hermitian condition exactly.
    pub fn new(rows: Vec<Vec<CyclotomicNumber>>) -> Result<HermitianMatrix> {
        let size = rows.len();
        for row in &rows {
            crate::error::check_len(size, row.len())?;
        }
        let level = rows.iter().flatten().fold(1u64, |l, c| l.lcm(&c.level()));
        let entries: Vec<CyclotomicNumber> = rows.into_iter().flatten().map(|c| c.lift(level)).collect();
        let m = HermitianMatrix { level, size, entries };
        for i in 0..size {
            for j in i..size {
                if m.get(i, j) != &m.get(j, i).conj() {
                    return Err(SigError::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<HermitianMatrix> {
        HermitianMatrix::new(
            rows.iter().map(|r| r.iter().map(|&x| CyclotomicNumber::from_int(1, x)).collect()).collect(),
        )
    }

    pub fn empty() -> HermitianMatrix {
        HermitianMatrix { level: 1, size: 0, entries: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<CyclotomicNumber>> {
        self.entries.chunks(self.size.max(1)).take(self.size).map(<[_]>::to_vec).collect()
    }

    /// `Uᵀ H U` for an integer matrix `U` (rows of `U` indexed like `H`).
    pub fn congruent(&self, u: &[Vec<i64>]) -> Result<HermitianMatrix> {
        crate::error::check_len(self.size, u.len())?;
        let k = u.first().map_or(0, Vec::len);
        for r in u {
            crate::error::check_len(k, r.len())?;
        }
        let zero = CyclotomicNumber::zero(self.level);
        // HU
        let mut hu = vec![vec![zero.clone(); k]; self.size];
        for (i, row) in hu.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                for (j, urow) in u.iter().enumerate() {
                    if urow[c] != 0 {
                        *cell = cell.add(&self.get(i, j).mul_int(urow[c]));
                    }
                }
            }
        }
        let mut out = vec![vec![zero; k]; k];
        for (r, orow) in out.iter_mut().enumerate() {
            for (c, cell) in orow.iter_mut().enumerate() {
                for (i, urow) in u.iter().enumerate() {
                    if urow[r] != 0 {
                        *cell = cell.add(&hu[i][c].mul_int(urow[r]));
                    }
                }
            }
        }
        HermitianMatrix::new(out)
    }

    pub fn inertia(&self) -> Inertia {
        let mut work: Vec<Vec<CyclotomicNumber>> = self.rows();
        let mut active: Vec<usize> = (0..self.size).collect();
        let mut inertia = Inertia::default();
        while !active.is_empty() {
            let diag = active.iter().copied().filter(|&k| !work[k][k].is_zero()).min_by_key(|&k| work[k][k].cost());
            if let Some(k) = diag {
                let pivot = work[k][k].clone();
                match pivot.sign_real().expect("diagonal of a Hermitian matrix is real") {
                    Ordering::Greater => inertia.positive += 1,
                    Ordering::Less => inertia.negative += 1,
                    Ordering::Equal => unreachable!(),
                }
                active.retain(|&x| x != k);
                let inv = pivot.inverse().expect("nonzero pivot");
                let col: Vec<CyclotomicNumber> = active.iter().map(|&r| work[r][k].mul(&inv)).collect();
                for (a, &r) in active.iter().enumerate() {
                    if col[a].is_zero() {
                        continue;
                    }
                    for &c in &active[a..] {
                        if !work[k][c].is_zero() {
                            work[r][c] = work[r][c].sub(&col[a].mul(&work[k][c]));
                        }
                    }
                }
                mirror(&mut work, &active);
                continue;
            }
            let pair = active
                .iter()
                .enumerate()
                .flat_map(|(a, &i)| active[a + 1..].iter().map(move |&j| (i, j)))
                .filter(|&(i, j)| !work[i][j].is_zero())
                .min_by_key(|&(i, j)| work[i][j].cost());
            let Some((i, j)) = pair else {
                inertia.nullity += active.len();
                break;
            };
            inertia.positive += 1;
            inertia.negative += 1;
            active.retain(|&x| x != i && x != j);
            // With P = [[0, a], [b, 0]], P⁻¹ = [[0, 1/b], [1/a, 0]] and the
            // update is h_rc −= h_rj h_ic / a + h_ri h_jc / b.
            let inv_a = work[i][j].inverse().expect("nonzero entry");
            let inv_b = work[j][i].inverse().expect("nonzero entry");
            let left_j: Vec<CyclotomicNumber> = active.iter().map(|&r| work[r][j].mul(&inv_a)).collect();
            let left_i: Vec<CyclotomicNumber> = active.iter().map(|&r| work[r][i].mul(&inv_b)).collect();
            for (a, &r) in active.iter().enumerate() {
                for &c in &active[a..] {
                    let mut delta = CyclotomicNumber::zero(self.level);
                    if !left_j[a].is_zero() && !work[i][c].is_zero() {
                        delta = delta.add(&left_j[a].mul(&work[i][c]));
                    }
                    if !left_i[a].is_zero() && !work[j][c].is_zero() {
                        delta = delta.add(&left_i[a].mul(&work[j][c]));
                    }
                    if !delta.is_zero() {
                        work[r][c] = work[r][c].sub(&delta);
                    }
                }
            }
            mirror(&mut work, &active);
        }
        inertia
    }

    /// `(signature, nullity)`.
    pub fn signature_nullity(&self) -> (i64, usize) {
        let i = self.inertia();
        (i.signature(), i.nullity)
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.size, self.size, |i, j| self.get(i, j).to_complex())
    }

    /// Floating-point eigenvalues, ascending.
    pub fn eigenvalues_numeric(&self) -> Vec<f64> {
        if self.size == 0 {
            return Vec::new();
        }
        let mut ev: Vec<f64> = self.to_complex().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Copies the upper triangle of the active block onto the lower one.
fn mirror(work: &mut [Vec<CyclotomicNumber>], active: &[usize]) {
    for (a, &r) in active.iter().enumerate() {
        for &c in &active[a + 1..] {
            work[c][r] = work[r][c].conj();
        }
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HermitianMatrix {}×{} over ζ_{}", self.size, self.size, self.level)?;
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
