//! Pauli-frame algebra on bit-packed vectors.
//!
//! A Pauli operator on one qubit is stored as an (x, z) bit pair:
//! I = (0,0), X = (1,0), Z = (0,1), Y = (1,1). Composition modulo global
//! phase is then a plain XOR of the pairs, and the trace inner product (0 for
//! commuting operators, 1 for anticommuting ones) reduces to the symplectic
//! form over the bit planes, evaluated word-parallel on packed `u64`s.
//! Global phases are dropped everywhere.

use crate::gf2::BitVec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Single-qubit Pauli operator, phase-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// (x, z) bit pair of the symplectic representation.
    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// 1 if the two operators anticommute, 0 if they commute.
    #[inline]
    pub fn trace_inner_product(self, other: Pauli) -> u8 {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        ((ax & bz) ^ (az & bx)) as u8
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Phase-free product, i.e. addition of the (x, z) pairs.
impl core::ops::Add for Pauli {
    type Output = Pauli;

    #[inline]
    fn add(self, other: Pauli) -> Pauli {
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        Pauli::from_bits(ax ^ bx, az ^ bz)
    }
}

/// Error raised when two Pauli vectors of different lengths are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dimension mismatch: {} vs {} qubits",
            self.left, self.right
        )
    }
}

/// Parse failure for the textual `IXYZ...` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PauliParseError {
    Empty,
    BadSymbol { position: usize, found: char },
}

impl fmt::Display for PauliParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PauliParseError::Empty => write!(f, "empty Pauli string"),
            PauliParseError::BadSymbol { position, found } => {
                write!(
                    f,
                    "invalid Pauli symbol '{found}' at position {position} (expected I, X, Y or Z)"
                )
            }
        }
    }
}

/// An n-qubit Pauli operator stored as two packed bit planes.
///
/// `x_bits[j]` and `z_bits[j]` hold the (x, z) pair of qubit j. The planes
/// are the two halves of the length-2n symplectic image (x block first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    x_bits: BitVec,
    z_bits: BitVec,
}

impl PauliVector {
    /// The identity operator on `n` qubits.
    pub fn identity(n: usize) -> Self {
        Self {
            x_bits: BitVec::zeros(n),
            z_bits: BitVec::zeros(n),
        }
    }

    pub fn from_symbols(symbols: &[Pauli]) -> Self {
        let mut v = Self::identity(symbols.len());
        for (j, &p) in symbols.iter().enumerate() {
            v.set(j, p);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.x_bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, j: usize) -> Pauli {
        Pauli::from_bits(self.x_bits.get(j), self.z_bits.get(j))
    }

    #[inline]
    pub fn set(&mut self, j: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x_bits.set(j, x);
        self.z_bits.set(j, z);
    }

    pub fn iter(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.len()).map(move |j| self.get(j))
    }

    pub fn is_identity(&self) -> bool {
        self.x_bits.is_zero() && self.z_bits.is_zero()
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        self.x_bits
            .words()
            .iter()
            .zip(self.z_bits.words())
            .map(|(&x, &z)| (x | z).count_ones() as usize)
            .sum()
    }

    fn check_len(&self, other: &Self) -> Result<(), DimensionMismatch> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(DimensionMismatch {
                left: self.len(),
                right: other.len(),
            })
        }
    }

    /// Componentwise phase-free Pauli composition (GF(4) addition).
    pub fn add(&self, other: &Self) -> Result<Self, DimensionMismatch> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.x_bits.xor_assign(&other.x_bits);
        out.z_bits.xor_assign(&other.z_bits);
        Ok(out)
    }

    /// Symplectic form of the pair: 0 iff the operators commute.
    pub fn trace_inner_product(&self, other: &Self) -> Result<u8, DimensionMismatch> {
        self.check_len(other)?;
        let mut fold = 0u64;
        for (((&ax, &az), &bx), &bz) in self
            .x_bits
            .words()
            .iter()
            .zip(self.z_bits.words())
            .zip(other.x_bits.words())
            .zip(other.z_bits.words())
        {
            fold ^= (ax & bz) ^ (az & bx);
        }
        Ok((fold.count_ones() & 1) as u8)
    }

    /// Length-2n binary image, all n x-bits first, then all n z-bits.
    pub fn to_symplectic(&self) -> BitVec {
        let n = self.len();
        let mut v = BitVec::zeros(2 * n);
        for j in 0..n {
            if self.x_bits.get(j) {
                v.set(j, true);
            }
            if self.z_bits.get(j) {
                v.set(n + j, true);
            }
        }
        v
    }

    /// Inverse of [`to_symplectic`](Self::to_symplectic); `bits` must have
    /// even length.
    pub fn from_symplectic(bits: &BitVec) -> Self {
        assert!(
            bits.len().is_multiple_of(2),
            "symplectic image must have even length"
        );
        let n = bits.len() / 2;
        let mut v = Self::identity(n);
        for j in 0..n {
            v.set(j, Pauli::from_bits(bits.get(j), bits.get(n + j)));
        }
        v
    }

    /// Direct access to the packed x plane.
    pub fn x_plane(&self) -> &BitVec {
        &self.x_bits
    }

    /// Direct access to the packed z plane.
    pub fn z_plane(&self) -> &BitVec {
        &self.z_bits
    }
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.iter() {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliVector {
    type Err = PauliParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(PauliParseError::Empty);
        }
        let mut symbols = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            let p = match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                found => return Err(PauliParseError::BadSymbol { position, found }),
            };
            symbols.push(p);
        }
        Ok(Self::from_symbols(&symbols))
    }
}

/// A length-m binary syndrome, one bit per check row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    bits: BitVec,
}

impl Syndrome {
    pub fn zeros(m: usize) -> Self {
        Self {
            bits: BitVec::zeros(m),
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self {
            bits: BitVec::from_bits(bits),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        self.bits.set(i, value);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.bits
            .words()
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Enumerate all 4^n Pauli vectors on n qubits, for exhaustive checks on
/// small codes.
pub fn all_pauli_vectors(n: usize) -> impl Iterator<Item = PauliVector> {
    assert!(n <= 16, "enumeration is exponential");
    (0u64..(1 << (2 * n))).map(move |code| {
        let mut v = PauliVector::identity(n);
        for j in 0..n {
            let x = (code >> (2 * j)) & 1 == 1;
            let z = (code >> (2 * j + 1)) & 1 == 1;
            v.set(j, Pauli::from_bits(x, z));
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    #[test]
    fn addition_table() {
        use Pauli::*;
        for p in ALL {
            assert_eq!(p + p, I, "{p} must be self-inverse");
            assert_eq!(p + I, p);
            assert_eq!(I + p, p);
        }
        assert_eq!(X + Z, Y);
        assert_eq!(X + Y, Z);
        assert_eq!(Y + Z, X);
        // Commutativity over all pairs.
        for a in ALL {
            for b in ALL {
                assert_eq!(a + b, b + a);
            }
        }
    }

    #[test]
    fn vector_addition_componentwise() {
        use Pauli::*;
        let a = PauliVector::from_symbols(&[X, Y, I]);
        let b = PauliVector::from_symbols(&[Y, Y, Z]);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, PauliVector::from_symbols(&[Z, I, Z]));

        let short = PauliVector::identity(2);
        assert_eq!(a.add(&short), Err(DimensionMismatch { left: 3, right: 2 }));
    }

    // Independent oracle: complex 2x2 Pauli matrices. Two Paulis anticommute
    // exactly when AB + BA = 0.
    fn matrix(p: Pauli) -> [[(f64, f64); 2]; 2] {
        let z = (0.0, 0.0);
        match p {
            Pauli::I => [[(1.0, 0.0), z], [z, (1.0, 0.0)]],
            Pauli::X => [[z, (1.0, 0.0)], [(1.0, 0.0), z]],
            Pauli::Y => [[z, (0.0, -1.0)], [(0.0, 1.0), z]],
            Pauli::Z => [[(1.0, 0.0), z], [z, (-1.0, 0.0)]],
        }
    }

    fn mat_mul(a: [[(f64, f64); 2]; 2], b: [[(f64, f64); 2]; 2]) -> [[(f64, f64); 2]; 2] {
        let mut out = [[(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = (0.0, 0.0);
                for k in 0..2 {
                    let (ar, ai) = a[r][k];
                    let (br, bi) = b[k][c];
                    acc.0 += ar * br - ai * bi;
                    acc.1 += ar * bi + ai * br;
                }
                out[r][c] = acc;
            }
        }
        out
    }

    fn anticommutes(p: Pauli, q: Pauli) -> bool {
        let ab = mat_mul(matrix(p), matrix(q));
        let ba = mat_mul(matrix(q), matrix(p));
        // AB + BA == 0 ?
        (0..2).all(|r| {
            (0..2).all(|c| {
                let re = ab[r][c].0 + ba[r][c].0;
                let im = ab[r][c].1 + ba[r][c].1;
                re.abs() < 1e-12 && im.abs() < 1e-12
            })
        })
    }

    #[test]
    fn commutation_table_matches_matrix_oracle() {
        let mut anti_pairs = 0;
        for a in ALL {
            for b in ALL {
                let tip = PauliVector::from_symbols(&[a])
                    .trace_inner_product(&PauliVector::from_symbols(&[b]))
                    .unwrap();
                assert_eq!(tip == 1, anticommutes(a, b), "disagreement on ({a}, {b})");
                if tip == 1 {
                    anti_pairs += 1;
                }
            }
        }
        assert_eq!(anti_pairs, 6);
    }

    #[test]
    fn trace_inner_product_examples() {
        use Pauli::*;
        let id3 = PauliVector::identity(3);
        for v in ["XYZ", "III", "YYY"] {
            let v: PauliVector = v.parse().unwrap();
            assert_eq!(id3.trace_inner_product(&v).unwrap(), 0);
        }
        let a = PauliVector::from_symbols(&[X, Y]);
        let b = PauliVector::from_symbols(&[Y, X]);
        assert_eq!(a.trace_inner_product(&b).unwrap(), 0);
        assert_eq!(
            PauliVector::from_symbols(&[X])
                .trace_inner_product(&PauliVector::from_symbols(&[Z]))
                .unwrap(),
            1
        );
        assert!(a.trace_inner_product(&id3).is_err());
    }

    #[test]
    fn trace_inner_product_bilinear_and_symmetric() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in [1usize, 3, 64, 70] {
            for _ in 0..20 {
                let rand_vec = |next: &mut dyn FnMut() -> u64| {
                    let mut v = PauliVector::identity(n);
                    for j in 0..n {
                        let r = next();
                        v.set(j, Pauli::from_bits(r & 1 == 1, r & 2 == 2));
                    }
                    v
                };
                let a = rand_vec(&mut next);
                let b = rand_vec(&mut next);
                let c = rand_vec(&mut next);
                let ab = a.add(&b).unwrap();
                assert_eq!(
                    ab.trace_inner_product(&c).unwrap(),
                    a.trace_inner_product(&c).unwrap() ^ b.trace_inner_product(&c).unwrap()
                );
                assert_eq!(
                    a.trace_inner_product(&b).unwrap(),
                    b.trace_inner_product(&a).unwrap()
                );
            }
        }
    }

    #[test]
    fn symplectic_layout_and_round_trip() {
        use Pauli::*;
        let v = PauliVector::from_symbols(&[I, I]);
        assert!(v.to_symplectic().is_zero());
        assert_eq!(v.to_symplectic().len(), 4);

        let y = PauliVector::from_symbols(&[Y]);
        let sy = y.to_symplectic();
        assert!(sy.get(0) && sy.get(1));

        // (X, Z, Y) -> x block (1,0,1), z block (0,1,1).
        let v = PauliVector::from_symbols(&[X, Z, Y]);
        let s = v.to_symplectic();
        let expected = [true, false, true, false, true, true];
        for (j, &e) in expected.iter().enumerate() {
            assert_eq!(s.get(j), e, "bit {j}");
        }

        for n in 1..=5 {
            for v in all_pauli_vectors(n) {
                assert_eq!(PauliVector::from_symplectic(&v.to_symplectic()), v);
            }
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let s = "IXYZZYXI";
        let v: PauliVector = s.parse().unwrap();
        assert_eq!(alloc::format!("{v}"), s);
        assert_eq!(v.weight(), 6);

        assert_eq!("".parse::<PauliVector>(), Err(PauliParseError::Empty));
        assert_eq!(
            "IXQ".parse::<PauliVector>(),
            Err(PauliParseError::BadSymbol {
                position: 2,
                found: 'Q'
            })
        );
    }

    #[test]
    fn syndrome_basics() {
        let mut s = Syndrome::zeros(5);
        assert!(s.is_zero());
        s.set(3, true);
        assert!(!s.is_zero());
        assert_eq!(s.weight(), 1);
        assert_eq!(alloc::format!("{s}"), "00010");
    }
}
