//! Exact rational scalars and the linear-algebra substrate: dense row
//! reduction, kernels, a transposed-Vandermonde solver, and a sparse
//! echelon filter with combination tracking.
//!
//! Everything here is exact; there is no floating point anywhere in the
//! crate.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::{BigRational, One, Zero};

use crate::error::{Error, Result};

/// Ground field element: an arbitrary-precision rational, always reduced,
/// denominator positive.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Renders as `p/q`, or just `p` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("bad rational: {s:?}")))
    };
    match s.split_once('/') {
        None => Ok(Scalar::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator: {s:?}")));
            }
            Ok(Scalar::new(parse_int(n)?, den))
        }
    }
}

/// Dense matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix { rows: nr, cols: nc, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row-echelon form with rank and pivot columns.
    pub fn row_reduce(&self) -> (ExactMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = m.get(lead, col).recip();
            for c in col..m.cols {
                let v = m.get(lead, c).clone() * &inv;
                *m.get_mut(lead, c) = v;
            }
            for r in 0..m.rows {
                if r != lead && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c).clone() - m.get(lead, c).clone() * &f;
                        *m.get_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == m.rows {
                break;
            }
        }
        (m, pivots.len(), pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rref, _, pivots) = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(pr, f).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Solves for components `x_1..x_n` with `sum_i node_i^k x_i = rhs_k`,
/// `k = 0..n-1`. The right-hand sides (and the solutions) are coordinate
/// vectors of a common length.
pub fn solve_vandermonde(nodes: &[Scalar], rhs: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = nodes.len();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: rhs.len() });
    }
    for i in 0..n {
        for j in i + 1..n {
            if nodes[i] == nodes[j] {
                return Err(Error::DuplicateNodes(format_scalar(&nodes[i])));
            }
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let width = rhs[0].len();
    if rhs.iter().any(|v| v.len() != width) {
        return Err(Error::ShapeMismatch("rhs vectors of unequal length".into()));
    }
    // Augmented system [V | rhs] with V[k][i] = node_i^k.
    let mut aug = ExactMatrix::zero(n, n + width);
    for i in 0..n {
        let mut p = Scalar::one();
        for k in 0..n {
            *aug.get_mut(k, i) = p.clone();
            p *= &nodes[i];
        }
    }
    for k in 0..n {
        for c in 0..width {
            *aug.get_mut(k, n + c) = rhs[k][c].clone();
        }
    }
    let (rref, rank, _) = aug.row_reduce();
    debug_assert_eq!(rank, n, "Vandermonde matrix with distinct nodes is invertible");
    Ok((0..n).map(|i| rref.row(i)[n..].to_vec()).collect())
}

/// Incremental sparse Gaussian elimination over an ordered key space, with
/// combination tracking: every accepted row remembers its expression in the
/// originally inserted vectors.
///
/// Used both to select deterministic independent subsets of spanning sets and
/// to express bracket results in a chosen basis.
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, EchelonRow<K>>,
    inserted: usize,
}

struct EchelonRow<K> {
    terms: BTreeMap<K, Scalar>,
    combo: Vec<(usize, Scalar)>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon { rows: BTreeMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduce `v` against the stored rows. Returns the remainder together
    /// with the combination of stored originals that was subtracted.
    ///
    /// Eliminating a pivot key only introduces keys strictly above it, so a
    /// single increasing sweep over the keys of `v` suffices.
    fn reduce(&self, mut v: BTreeMap<K, Scalar>) -> (BTreeMap<K, Scalar>, Vec<(usize, Scalar)>) {
        use std::ops::Bound::{Excluded, Unbounded};
        let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v.range((Excluded(c.clone()), Unbounded)).next().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let coeff = v.remove(&k).expect("cursor key present");
                for (tk, tv) in &row.terms {
                    let entry = v.entry(tk.clone()).or_insert_with(Scalar::zero);
                    *entry -= coeff.clone() * tv;
                    if entry.is_zero() {
                        v.remove(tk);
                    }
                }
                for (ci, cv) in &row.combo {
                    let e = combo.entry(*ci).or_insert_with(Scalar::zero);
                    *e += coeff.clone() * cv;
                }
            }
            cursor = Some(k);
        }
        (v, combo.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: BTreeMap<K, Scalar>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, sub) = self.reduce(v);
        let Some((lead, lc)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lc.recip();
        let mut terms: BTreeMap<K, Scalar> = BTreeMap::new();
        for (k, c) in rem {
            if k != lead {
                terms.insert(k, c * &inv);
            }
        }
        // combo: (e_idx - sub) / lc
        let mut combo: Vec<(usize, Scalar)> = vec![(idx, inv.clone())];
        for (ci, cv) in sub {
            combo.push((ci, -cv * &inv));
        }
        self.rows.insert(lead, EchelonRow { terms, combo });
        true
    }

    /// Express `v` in the inserted originals; `None` if `v` is outside the span.
    pub fn express(&self, v: BTreeMap<K, Scalar>) -> Option<Vec<(usize, Scalar)>> {
        let (rem, combo) = self.reduce(v);
        if rem.is_empty() {
            Some(combo)
        } else {
            None
        }
    }

    pub fn contains(&self, v: BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rref_identity() {
        let m = mat(&[&[1, 0], &[0, 1]]);
        let (rref, rank, pivots) = m.row_reduce();
        assert_eq!(rref, m);
        assert_eq!(rank, 2);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let (rref, rank, _) = m.row_reduce();
        assert_eq!(rref, mat(&[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
    }

    /// Rank of every k-by-k minor, by cofactor expansion. Independent of
    /// row_reduce.
    fn minor_rank_oracle(m: &ExactMatrix) -> usize {
        fn det(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Scalar {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = Scalar::zero();
            let sub_rows = &rows[1..];
            for (j, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let term = m.get(rows[0], c).clone() * det(m, sub_rows, &sub_cols);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..=n.saturating_sub(k) {
                for mut rest in combos(n - first - 1, k - 1) {
                    for x in rest.iter_mut() {
                        *x += first + 1;
                    }
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for k in (1..=m.rows.min(m.cols)).rev() {
            for rows in combos(m.rows, k) {
                for cols in combos(m.cols, k) {
                    if !det(m, &rows, &cols).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rref_rank_matches_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let m = ExactMatrix::from_rows(
                (0..5)
                    .map(|_| (0..5).map(|_| frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect())
                    .collect(),
            )
            .unwrap();
            let (_, rank, _) = m.row_reduce();
            assert_eq!(rank, minor_rank_oracle(&m));
        }
    }

    #[test]
    fn rref_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let m = ExactMatrix::from_rows(
                (0..4)
                    .map(|_| (0..6).map(|_| int(rng.gen_range(-5..=5))).collect())
                    .collect(),
            )
            .unwrap();
            let (rref, _, _) = m.row_reduce();
            let (again, _, _) = rref.row_reduce();
            assert_eq!(rref, again);
        }
    }

    #[test]
    fn vandermonde_single_node() {
        let v = vec![int(1), int(7), int(-2)];
        let out = solve_vandermonde(&[int(5)], &[v.clone()]).unwrap();
        assert_eq!(out, vec![v]);
    }

    #[test]
    fn vandermonde_symmetric_pair() {
        // nodes [1,-1], rhs [a+b, a-b] -> [a, b]
        let a = vec![int(2), int(0)];
        let b = vec![int(1), int(3)];
        let sum = vec![int(3), int(3)];
        let diff = vec![int(1), int(-3)];
        let out = solve_vandermonde(&[int(1), int(-1)], &[sum, diff]).unwrap();
        assert_eq!(out, vec![a, b]);
    }

    #[test]
    fn vandermonde_duplicate_nodes_rejected() {
        let e = solve_vandermonde(&[int(2), int(2)], &[vec![int(1)], vec![int(1)]]);
        assert!(matches!(e, Err(Error::DuplicateNodes(_))));
    }

    #[test]
    fn vandermonde_resummation_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4usize {
            let nodes: Vec<Scalar> = (0..n).map(|i| int(i as i64 * 3 - 4)).collect();
            let xs: Vec<Vec<Scalar>> =
                (0..n).map(|_| (0..3).map(|_| int(rng.gen_range(-4..=4))).collect()).collect();
            let rhs: Vec<Vec<Scalar>> = (0..n)
                .map(|k| {
                    let mut acc = vec![Scalar::zero(); 3];
                    for (i, x) in xs.iter().enumerate() {
                        let p = num::pow::pow(nodes[i].clone(), k);
                        for c in 0..3 {
                            acc[c] += p.clone() * &x[c];
                        }
                    }
                    acc
                })
                .collect();
            assert_eq!(solve_vandermonde(&nodes, &rhs).unwrap(), xs);
        }
    }

    #[test]
    fn sparse_echelon_express() {
        let mut ech: SparseEchelon<usize> = SparseEchelon::new();
        let v = |pairs: &[(usize, i64)]| -> BTreeMap<usize, Scalar> {
            pairs.iter().map(|&(k, c)| (k, int(c))).collect()
        };
        assert!(ech.insert(v(&[(0, 1), (2, 2)])));
        assert!(ech.insert(v(&[(1, 3)])));
        assert!(!ech.insert(v(&[(0, 2), (1, 3), (2, 4)])));
        let expr = ech.express(v(&[(0, 2), (1, -3), (2, 4)])).unwrap();
        // 2*(e0 + 2 e2) - 1*(3 e1)
        assert_eq!(expr, vec![(0, int(2)), (1, int(-1))]);
        assert!(ech.express(v(&[(3, 1)])).is_none());
    }

    #[test]
    fn scalar_format_parse() {
        assert_eq!(format_scalar(&frac(-10, 4)), "-5/2");
        assert_eq!(format_scalar(&int(7)), "7");
        assert_eq!(parse_scalar("-5/2").unwrap(), frac(-5, 2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
