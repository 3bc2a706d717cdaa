//! Arithmetic and linear algebra over the prime field GF(p).
//!
//! Everything here is exact. Matrices are dense; the intended moduli are
//! small odd primes (3, 5, 7, ...), capped at [`MAX_PRIME`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sanity cap on the modulus. All intended uses stay far below this.
pub const MAX_PRIME: u32 = 97;

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is an odd prime in the supported range.
pub fn check_modulus(p: u32) -> Result<()> {
    if p < 3 || p > MAX_PRIME || !is_prime(p) {
        return Err(Error::BadModulus(p));
    }
    Ok(())
}

/// A residue in GF(p), stored together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Result<Fp> {
        check_modulus(p)?;
        Ok(Fp::reduced(value, p))
    }

    /// Same as [`Fp::new`] but the modulus is assumed already validated.
    pub fn reduced(value: i64, p: u32) -> Fp {
        let m = p as i64;
        Fp {
            value: (((value % m) + m) % m) as u32,
            modulus: p,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &Fp) -> Fp {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::reduced(self.value as i64 + other.value as i64, self.modulus)
    }

    pub fn sub(&self, other: &Fp) -> Fp {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::reduced(self.value as i64 - other.value as i64, self.modulus)
    }

    pub fn mul(&self, other: &Fp) -> Fp {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp::reduced(self.value as i64 * other.value as i64, self.modulus)
    }

    pub fn neg(&self) -> Fp {
        Fp::reduced(-(self.value as i64), self.modulus)
    }

    /// Multiplicative inverse; the modulus is prime so every nonzero
    /// residue is invertible.
    pub fn inv(&self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        let mut acc = Fp::reduced(1, self.modulus);
        let mut base = *self;
        let mut e = self.modulus - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Some(acc)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A vector over GF(p) with a shared modulus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FpVector {
    modulus: u32,
    entries: Vec<u32>,
}

impl FpVector {
    pub fn new(entries: Vec<i64>, p: u32) -> Result<FpVector> {
        check_modulus(p)?;
        if entries.is_empty() {
            return Err(Error::Parameter("vector must have length >= 1".into()));
        }
        Ok(FpVector {
            modulus: p,
            entries: entries
                .into_iter()
                .map(|e| Fp::reduced(e, p).value())
                .collect(),
        })
    }

    pub fn zeros(len: usize, p: u32) -> FpVector {
        FpVector {
            modulus: p,
            entries: vec![0; len],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Fp {
        Fp::reduced(self.entries[i] as i64, self.modulus)
    }

    pub fn set(&mut self, i: usize, v: Fp) {
        self.entries[i] = v.value();
    }

    pub fn values(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        debug_assert_eq!(self.len(), other.len());
        FpVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&x, &y)| (x + y) % self.modulus)
                .collect(),
        }
    }

    pub fn scale(&self, k: Fp) -> FpVector {
        FpVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .map(|&x| (x * k.value()) % self.modulus)
                .collect(),
        }
    }

    /// Sum of the entries mod p.
    pub fn coordinate_sum(&self) -> Fp {
        let s: u64 = self.entries.iter().map(|&e| e as u64).sum();
        Fp::reduced(s as i64, self.modulus)
    }
}

/// The p x p circulant matrix with entry (i, j) = alpha_{(i - j) mod p},
/// where alpha_0 = 0 and alpha_1..alpha_{p-1} come from an accompanying
/// vector. Row i is the i-step cyclic shift of row 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CirculantMatrix {
    modulus: u32,
    first_row: FpVector,
}

impl CirculantMatrix {
    /// Builds A_alpha from the coefficients (alpha_1, ..., alpha_{p-1}).
    /// The first row is (0, alpha_{p-1}, alpha_{p-2}, ..., alpha_1).
    pub fn from_alpha(alpha: &[u32], p: u32) -> Result<CirculantMatrix> {
        check_modulus(p)?;
        if alpha.len() != (p - 1) as usize {
            return Err(Error::Parameter(format!(
                "accompanying vector must have length {} for p = {}, got {}",
                p - 1,
                p,
                alpha.len()
            )));
        }
        let mut row = vec![0i64; p as usize];
        for j in 1..p as usize {
            row[j] = alpha[p as usize - 1 - j] as i64;
        }
        Ok(CirculantMatrix {
            modulus: p,
            first_row: FpVector::new(row, p)?,
        })
    }

    pub fn order(&self) -> usize {
        self.modulus as usize
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entry(&self, i: usize, j: usize) -> Fp {
        let p = self.modulus as usize;
        // Row i is the i-step cyclic right shift of row 0.
        self.first_row.get((j + p - i % p) % p)
    }

    pub fn row(&self, i: usize) -> FpVector {
        let p = self.order();
        let mut v = FpVector::zeros(p, self.modulus);
        for j in 0..p {
            v.set(j, self.entry(i, j));
        }
        v
    }

    pub fn apply(&self, v: &FpVector) -> FpVector {
        let p = self.order();
        debug_assert_eq!(v.len(), p);
        let mut out = FpVector::zeros(p, self.modulus);
        for i in 0..p {
            let mut acc = Fp::reduced(0, self.modulus);
            for j in 0..p {
                acc = acc.add(&self.entry(i, j).mul(&v.get(j)));
            }
            out.set(i, acc);
        }
        out
    }

    /// Basis of the null space, in reduced echelon form (canonical).
    pub fn kernel_basis(&self) -> Vec<FpVector> {
        let p = self.order();
        let rows: Vec<FpVector> = (0..p).map(|i| self.row(i)).collect();
        null_space(&rows, self.modulus)
    }
}

/// Gauss-Jordan reduction; returns (reduced rows, pivot columns).
pub fn row_reduce(rows: &[FpVector], p: u32) -> (Vec<FpVector>, Vec<usize>) {
    let mut mat: Vec<FpVector> = rows.to_vec();
    let ncols = if mat.is_empty() { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        // First nonzero pivot in column `col` at or below row r.
        let Some(pr) = (r..mat.len()).find(|&i| !mat[i].get(col).is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r].get(col).inv().expect("nonzero pivot");
        mat[r] = mat[r].scale(inv);
        for i in 0..mat.len() {
            if i != r && !mat[i].get(col).is_zero() {
                let factor = mat[i].get(col).neg();
                mat[i] = mat[i].add(&mat[r].scale(factor));
            }
        }
        pivots.push(col);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    mat.truncate(r);
    let _ = p;
    (mat, pivots)
}

/// Null space basis of the matrix given by `rows`, via row reduction.
/// Basis vectors correspond to free columns, with the free coordinate set
/// to 1; output order follows the free columns, giving a canonical basis.
pub fn null_space(rows: &[FpVector], p: u32) -> Vec<FpVector> {
    let ncols = if rows.is_empty() { 0 } else { rows[0].len() };
    let (red, pivots) = row_reduce(rows, p);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = FpVector::zeros(ncols, p);
        v.set(free, Fp::reduced(1, p));
        for (r, &pc) in pivots.iter().enumerate() {
            v.set(pc, red[r].get(free).neg());
        }
        basis.push(v);
    }
    basis
}

/// Matrix rank over GF(p), via row reduction.
pub fn rank(rows: &[FpVector], p: u32) -> usize {
    row_reduce(rows, p).1.len()
}
