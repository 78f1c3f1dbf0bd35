//! Dense complex linear algebra over qubit registers.
//!
//! Registers are big-endian: in a product `a ⊗ b` the factor `a` supplies the
//! most significant index bits, so the first circuit line of a number ket
//! `|k⟩_t` is the most significant bit of `k`.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::MAX_QUBITS;

pub type Complex = num_complex::Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

/// `e^{2πi·x}` with `x` reduced to `[0, 1)` first.
#[inline]
pub fn turn(x: f64) -> Complex {
    cis(std::f64::consts::TAU * x.rem_euclid(1.0))
}

pub(crate) fn check_qubits(qubits: u32) -> Result<()> {
    if qubits > MAX_QUBITS {
        Err(Error::Resource {
            qubits,
            cap: MAX_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// A state (not necessarily normalized) of a `dim`-dimensional register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Vec<Complex>,
}

impl StateVector {
    /// Wraps `amplitudes`, rejecting empty or non-finite input.
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::domain("state vector must have dimension >= 1"));
        }
        if let Some(i) = amplitudes
            .iter()
            .position(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::domain(format!("non-finite amplitude at index {i}")));
        }
        Ok(StateVector { amplitudes })
    }

    pub(crate) fn from_vec_unchecked(amplitudes: Vec<Complex>) -> Self {
        debug_assert!(!amplitudes.is_empty());
        StateVector { amplitudes }
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex::new(v, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_vec_unchecked(vec![ZERO; dim.max(1)])
    }

    /// The computational basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::domain(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut v = Self::zeros(dim);
        v.amplitudes[index] = ONE;
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex> {
        self.amplitudes
    }

    pub fn get(&self, index: usize) -> Option<Complex> {
        self.amplitudes.get(index).copied()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() < tol
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self::from_vec_unchecked(self.amplitudes.iter().map(|a| a * factor).collect())
    }

    /// Elementwise sum; dimensions must agree.
    pub fn add(&self, other: &StateVector) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self::from_vec_unchecked(
            self.amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Largest elementwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `|k⟩_t`, the `t`-qubit basis state whose bit string is the binary
/// expansion of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumberKet {
    value: u64,
    width: u32,
}

impl NumberKet {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        if width == 0 {
            return Err(Error::domain("number ket width must be positive"));
        }
        check_qubits(width)?;
        if value >= 1u64 << width {
            return Err(Error::domain(format!(
                "number ket value {value} does not fit in {width} qubits"
            )));
        }
        Ok(NumberKet { value, width })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn to_state(&self) -> StateVector {
        let mut v = StateVector::zeros(1usize << self.width);
        v.amplitudes[self.value as usize] = ONE;
        v
    }
}

/// `|k⟩_t` as a state vector.
pub fn number_ket(k: u64, t: u32) -> Result<StateVector> {
    Ok(NumberKet::new(k, t)?.to_state())
}

/// Kronecker product `a ⊗ b`; `out[i·dim(b) + j] = a[i]·b[j]`.
pub fn tensor_vec(a: &StateVector, b: &StateVector) -> StateVector {
    let mut out = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.amplitudes {
        out.extend(b.amplitudes.iter().map(|y| x * y));
    }
    StateVector::from_vec_unchecked(out)
}

/// `Σ_j conj(a_j)·b_j`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex> {
    same_dim(a.dim(), b.dim())?;
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Square dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl Matrix {
    pub fn new(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("matrix dimension must be positive"));
        }
        same_dim(dim * dim, entries.len())?;
        if entries
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::domain("non-finite matrix entry"));
        }
        Ok(Matrix { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Matrix { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    pub fn diagonal(diag: &[Complex]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = *d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        same_dim(self.dim, other.dim)?;
        Ok(Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `self · other`. Zero entries of `self` are skipped, which makes
    /// products with identity-padded gates cost `nnz(self)·dim`.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        same_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            let out_row = &mut out[r * n..(r + 1) * n];
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == ZERO {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(Matrix { dim: n, entries: out })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        same_dim(self.dim, v.dim())?;
        let out = (0..self.dim)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(StateVector::from_vec_unchecked(out))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut entries = vec![ZERO; dim * dim];
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self.get(r1, c1);
                if a == ZERO {
                    continue;
                }
                for r2 in 0..m {
                    let row = (r1 * m + r2) * dim + c1 * m;
                    for (c2, b) in other.row(r2).iter().enumerate() {
                        entries[row + c2] = a * b;
                    }
                }
            }
        }
        Matrix { dim, entries }
    }

    /// `‖self − other‖_max`.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        same_dim(self.dim, other.dim)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `‖M†M − I‖_max`, computed column pair by column pair.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for r in 0..n {
                    acc += self.entries[r * n + i].conj() * self.entries[r * n + j];
                }
                if i == j {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// `self^(2^j)` by `j` successive squarings.
    pub fn pow2(&self, j: u32) -> Matrix {
        let mut m = self.clone();
        for _ in 0..j {
            m = m.matmul(&m).expect("square matrix times itself");
        }
        m
    }
}

/// True iff `‖M†M − I‖_max ≤ tol`.
pub fn check_unitary(m: &Matrix, tol: f64) -> bool {
    m.unitarity_defect() <= tol
}

/// A [`Matrix`] that passed [`check_unitary`] when it was constructed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitaryMatrix(Matrix);

impl UnitaryMatrix {
    pub fn new(m: Matrix, tol: f64) -> Result<Self> {
        let defect = m.unitarity_defect();
        if defect <= tol {
            Ok(UnitaryMatrix(m))
        } else {
            Err(Error::domain(format!(
                "matrix is not unitary: ‖M†M − I‖_max = {defect:e} > {tol:e}"
            )))
        }
    }

    /// For matrices that are unitary by construction (products and
    /// Kronecker products of unitaries, closed-form transforms).
    pub(crate) fn from_matrix_unchecked(m: Matrix) -> Self {
        UnitaryMatrix(m)
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix(Matrix::identity(dim))
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        UnitaryMatrix(Matrix {
            dim: 2,
            entries: vec![
                Complex::new(h, 0.0),
                Complex::new(h, 0.0),
                Complex::new(h, 0.0),
                Complex::new(-h, 0.0),
            ],
        })
    }

    pub fn pauli_x() -> Self {
        UnitaryMatrix(Matrix {
            dim: 2,
            entries: vec![ZERO, ONE, ONE, ZERO],
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix(self.0.adjoint())
    }

    pub fn compose(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        Ok(UnitaryMatrix(self.0.matmul(&other.0)?))
    }
}

impl Deref for UnitaryMatrix {
    type Target = Matrix;

    fn deref(&self) -> &Matrix {
        &self.0
    }
}

/// Kronecker product of two unitaries.
pub fn tensor_mat(a: &UnitaryMatrix, b: &UnitaryMatrix) -> UnitaryMatrix {
    UnitaryMatrix(a.0.kron(&b.0))
}

/// `U·v`.
pub fn apply(u: &Matrix, v: &StateVector) -> Result<StateVector> {
    u.apply(v)
}
