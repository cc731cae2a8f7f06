//! Minimal CSR sparse matrices for P1 assembly.
//!
//! Assembly accumulates (row, col, value) triplets and collapses them with a
//! sort so the summation order is independent of the element loop, which
//! keeps `K = Kᵀ` exact and makes repeated runs bitwise reproducible.

use crate::{Error, Result};
use std::io::Write;

/// Compressed sparse row matrix. Symmetric matrices store both triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

/// Triplet accumulator feeding [`CsrMatrix::from_triplets`].
#[derive(Debug, Clone, Default)]
pub struct TripletBuffer {
    entries: Vec<(usize, usize, f64)>,
}

impl TripletBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: usize, col: usize, value: f64) {
        self.entries.push((row, col, value));
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl CsrMatrix {
    /// Zero matrix with no stored entries.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            row_ptr: vec![0; nrows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Collapse triplets into CSR. Duplicates are summed in (row, col) sorted
    /// order regardless of insertion order; exact zeros produced by
    /// cancellation are kept so the sparsity pattern is predictable.
    pub fn from_triplets(nrows: usize, ncols: usize, buf: TripletBuffer) -> Self {
        let mut entries = buf.entries;
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_ptr = vec![0usize; nrows + 1];
        let mut col_idx = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        let mut it = entries.into_iter().peekable();
        while let Some((r, c, mut v)) = it.next() {
            debug_assert!(r < nrows && c < ncols);
            while let Some(&(r2, c2, v2)) = it.peek() {
                if r2 == r && c2 == c {
                    v += v2;
                    it.next();
                } else {
                    break;
                }
            }
            row_ptr[r + 1] += 1;
            col_idx.push(c);
            values.push(v);
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Sorted (col, value) slice pair of one row.
    pub fn row(&self, r: usize) -> (&[usize], &[f64]) {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (cols, vals) = self.row(r);
        match cols.binary_search(&c) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// y = A·x
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols);
        let mut y = vec![0.0; self.nrows];
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            let mut acc = 0.0;
            for (&c, &v) in cols.iter().zip(vals) {
                acc += v * x[c];
            }
            y[r] = acc;
        }
        y
    }

    /// xᵀ·A·y
    pub fn quadratic_form(&self, x: &[f64], y: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nrows);
        let mut acc = 0.0;
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            let mut rowdot = 0.0;
            for (&c, &v) in cols.iter().zip(vals) {
                rowdot += v * y[c];
            }
            acc += x[r] * rowdot;
        }
        acc
    }

    /// Sum of all entries (= 1ᵀA1).
    pub fn entry_sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Max absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    /// Exact structural + value symmetry test.
    pub fn is_symmetric(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                if self.get(c, r) != v {
                    return false;
                }
            }
        }
        true
    }

    /// Extract the submatrix with the given rows and columns. Index slices
    /// must be sorted; the result keeps their relative order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> CsrMatrix {
        let mut col_pos = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k;
        }
        let mut buf = TripletBuffer::new();
        for (ri, &r) in rows.iter().enumerate() {
            let (rcols, rvals) = self.row(r);
            for (&c, &v) in rcols.iter().zip(rvals) {
                if col_pos[c] != usize::MAX {
                    buf.push(ri, col_pos[c], v);
                }
            }
        }
        CsrMatrix::from_triplets(rows.len(), cols.len(), buf)
    }

    /// Dense copy, for small blocks fed to the dense eigensolver.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Debugging dump: one `row col value` line per stored entry, sorted by
    /// (row, col), with round-trippable float formatting.
    pub fn dump_triplets<W: Write>(&self, mut w: W) -> Result<()> {
        for r in 0..self.nrows {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                writeln!(w, "{} {} {}", r, c, format_f64(v)).map_err(Error::Io)?;
            }
        }
        Ok(())
    }
}

/// Shortest round-trippable decimal form of `v`.
pub fn format_f64(v: f64) -> String {
    let mut s = format!("{v}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("NaN") {
        s.push_str(".0");
    }
    s
}
