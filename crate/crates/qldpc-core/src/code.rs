//! Stabilizer codes given by a quaternary check matrix.
//!
//! A [`StabilizerCode`] owns the (possibly overcomplete) m x n check matrix,
//! its Tanner adjacency, an independent generator basis extracted by GF(2)
//! elimination, and a precomputed row-echelon basis used as the coset
//! membership oracle. Redundant rows are never removed; the overcomplete
//! representation is exactly what the decoders are meant to run on.

use crate::gf2::{BitMatrix, BitVec, RowEchelon};
use crate::pauli::{Pauli, PauliVector, Syndrome};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Construction/validation failure for a stabilizer code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// No rows supplied.
    Empty,
    /// Row `row` has a different length than the first row.
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    /// Rows `row_a` and `row_b` anticommute; not a valid stabilizer set.
    NonCommutingRows { row_a: usize, row_b: usize },
    /// Invalid generalized bicycle spec.
    BadGbSpec(String),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::Empty => write!(f, "code has no check rows"),
            CodeError::RaggedRow { row, len, expected } => {
                write!(f, "row {row} has length {len}, expected {expected}")
            }
            CodeError::NonCommutingRows { row_a, row_b } => write!(
                f,
                "rows {row_a} and {row_b} anticommute (trace inner product 1)"
            ),
            CodeError::BadGbSpec(msg) => write!(f, "invalid GB spec: {msg}"),
        }
    }
}

/// Classification of a check row by its binary projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowType {
    /// Only I/X symbols, at least one X.
    XType,
    /// Only I/Z symbols, at least one Z.
    ZType,
    /// Anything else (contains Y, mixes X and Z, or is all identity).
    Mixed,
}

/// The two binary projections of the check matrix.
///
/// `hz[i][j] = 1` iff `H[i][j]` is X or Y, `hx[i][j] = 1` iff it is Z or Y.
/// A row is x-type iff its `hx` projection vanishes while `hz` does not,
/// z-type symmetrically.
#[derive(Debug, Clone)]
pub struct BinaryProjections {
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub row_types: Vec<RowType>,
}

/// Exponent sets of the two circulant polynomials of a generalized bicycle
/// code with circulant size `ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbCodeSpec {
    pub ell: usize,
    pub a_exponents: Vec<usize>,
    pub b_exponents: Vec<usize>,
}

impl GbCodeSpec {
    pub fn new(
        ell: usize,
        a_exponents: Vec<usize>,
        b_exponents: Vec<usize>,
    ) -> Result<Self, CodeError> {
        if ell == 0 {
            return Err(CodeError::BadGbSpec(
                "circulant size must be positive".into(),
            ));
        }
        for (name, exps) in [("a", &a_exponents), ("b", &b_exponents)] {
            if exps.is_empty() {
                return Err(CodeError::BadGbSpec(alloc::format!(
                    "polynomial {name} has no exponents"
                )));
            }
            if let Some(&e) = exps.iter().find(|&&e| e >= ell) {
                return Err(CodeError::BadGbSpec(alloc::format!(
                    "exponent {e} of polynomial {name} is outside [0, {ell})"
                )));
            }
        }
        Ok(Self {
            ell,
            a_exponents,
            b_exponents,
        })
    }
}

/// An [[n, k]] stabilizer code with an m-row (possibly overcomplete)
/// quaternary check matrix.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    rows: Vec<PauliVector>,
    n: usize,
    k: usize,
    generator_basis: Vec<PauliVector>,
    membership: RowEchelon,
    /// For check i, the variables it touches (nonzero entries of row i).
    check_supports: Vec<Vec<usize>>,
    /// For variable j, the checks that touch it.
    var_supports: Vec<Vec<usize>>,
}

impl StabilizerCode {
    /// Validate a set of check rows and build the derived structures.
    ///
    /// Rejects ragged input and any anticommuting row pair (reporting the
    /// first offending pair). The logical count k is always computed as
    /// n minus the GF(2) rank of the symplectic row image.
    pub fn new(rows: Vec<PauliVector>) -> Result<Self, CodeError> {
        let first = rows.first().ok_or(CodeError::Empty)?;
        let n = first.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CodeError::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        for a in 0..rows.len() {
            for b in (a + 1)..rows.len() {
                if rows[a].trace_inner_product(&rows[b]).unwrap() == 1 {
                    return Err(CodeError::NonCommutingRows { row_a: a, row_b: b });
                }
            }
        }

        // The echelon basis doubles as the membership oracle; one query is a
        // single reduction sweep, O((n - k) * n / 64) word ops.
        let membership = RowEchelon::from_matrix(&BitMatrix::from_rows(
            rows.iter().map(PauliVector::to_symplectic).collect(),
        ));
        let rank = membership.rank();
        debug_assert!(rank <= n);
        let k = n - rank;
        let generator_basis = membership
            .basis()
            .iter()
            .map(PauliVector::from_symplectic)
            .collect();

        let mut check_supports = Vec::with_capacity(rows.len());
        let mut var_supports: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        for (i, row) in rows.iter().enumerate() {
            let mut support = Vec::new();
            for (j, var_checks) in var_supports.iter_mut().enumerate() {
                if row.get(j) != Pauli::I {
                    support.push(j);
                    var_checks.push(i);
                }
            }
            check_supports.push(support);
        }

        Ok(Self {
            rows,
            n,
            k,
            generator_basis,
            membership,
            check_supports,
            var_supports,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Rank of the symplectic image, i.e. the number of independent checks.
    #[inline]
    pub fn rank(&self) -> usize {
        self.n - self.k
    }

    /// Number of redundant rows, m - (n - k); positive for overcomplete
    /// representations.
    pub fn overcompleteness_margin(&self) -> usize {
        self.m() - self.rank()
    }

    pub fn rows(&self) -> &[PauliVector] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> &PauliVector {
        &self.rows[i]
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Pauli {
        self.rows[i].get(j)
    }

    /// Independent stabilizer generators (n - k of them) spanning the same
    /// GF(2) rowspace as the check matrix.
    pub fn generator_basis(&self) -> &[PauliVector] {
        &self.generator_basis
    }

    /// Variables adjacent to check i.
    #[inline]
    pub fn check_support(&self, i: usize) -> &[usize] {
        &self.check_supports[i]
    }

    /// Checks adjacent to variable j.
    #[inline]
    pub fn var_support(&self, j: usize) -> &[usize] {
        &self.var_supports[j]
    }

    /// Syndrome of an error pattern: bit i is the trace inner product of row
    /// i with `error`.
    pub fn syndrome(
        &self,
        error: &PauliVector,
    ) -> Result<Syndrome, crate::pauli::DimensionMismatch> {
        let mut s = Syndrome::zeros(self.m());
        for (i, row) in self.rows.iter().enumerate() {
            if row.trace_inner_product(error)? == 1 {
                s.set(i, true);
            }
        }
        Ok(s)
    }

    /// Coset membership oracle: true iff `op` is a product of stabilizer
    /// generators (its symplectic image lies in the GF(2) rowspan of the
    /// check matrix).
    pub fn is_stabilizer_element(&self, op: &PauliVector) -> bool {
        if op.len() != self.n {
            return false;
        }
        self.membership.contains(&op.to_symplectic())
    }

    /// Binary projections and per-row type tags.
    pub fn binary_projections(&self) -> BinaryProjections {
        let mut hx_rows = Vec::with_capacity(self.m());
        let mut hz_rows = Vec::with_capacity(self.m());
        let mut row_types = Vec::with_capacity(self.m());
        for row in &self.rows {
            let mut hx = BitVec::zeros(self.n);
            let mut hz = BitVec::zeros(self.n);
            for j in 0..self.n {
                match row.get(j) {
                    Pauli::I => {}
                    Pauli::X => hz.set(j, true),
                    Pauli::Z => hx.set(j, true),
                    Pauli::Y => {
                        hx.set(j, true);
                        hz.set(j, true);
                    }
                }
            }
            let tag = match (hx.is_zero(), hz.is_zero()) {
                (true, false) => RowType::XType,
                (false, true) => RowType::ZType,
                _ => RowType::Mixed,
            };
            hx_rows.push(hx);
            hz_rows.push(hz);
            row_types.push(tag);
        }
        BinaryProjections {
            hx: BitMatrix::from_rows(hx_rows),
            hz: BitMatrix::from_rows(hz_rows),
            row_types,
        }
    }
}

/// Build the overcomplete generalized bicycle code of a circulant spec.
///
/// With A and B the ell x ell circulants of the two polynomials, the x-type
/// half places X symbols on the pattern [A | B] and the z-type half places Z
/// symbols on [B^T | A^T], giving n = m = 2*ell. Circulants commute, so
/// symplectic orthogonality holds by construction; it is still verified and
/// a violation reported as a construction bug.
pub fn build_gb_code(spec: &GbCodeSpec) -> Result<StabilizerCode, CodeError> {
    let ell = spec.ell;
    let n = 2 * ell;
    let mut rows = Vec::with_capacity(2 * ell);
    // Row i of the circulant of polynomial p has ones at columns (i + e) mod ell.
    for i in 0..ell {
        let mut row = PauliVector::identity(n);
        for &e in &spec.a_exponents {
            row.set((i + e) % ell, Pauli::X);
        }
        for &e in &spec.b_exponents {
            row.set(ell + (i + e) % ell, Pauli::X);
        }
        rows.push(row);
    }
    // Transposed circulant: row i has ones at columns (i - e) mod ell.
    for i in 0..ell {
        let mut row = PauliVector::identity(n);
        for &e in &spec.b_exponents {
            row.set((i + ell - e) % ell, Pauli::Z);
        }
        for &e in &spec.a_exponents {
            row.set(ell + (i + ell - e) % ell, Pauli::Z);
        }
        rows.push(row);
    }
    StabilizerCode::new(rows)
}
