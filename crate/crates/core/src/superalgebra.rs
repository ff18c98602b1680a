//! Structure-constant core: the coordinate bracket, subalgebra closure,
//! module closures and components, and structural validation. Everything
//! downstream (root tables, generator certificates) is checked against the
//! operations in this module.

use std::collections::BTreeMap;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::Scalar;

pub const JACOBI_EXHAUSTIVE_LIMIT: usize = 60;
pub const JACOBI_SAMPLES: usize = 10_000;
pub const JACOBI_SEED: u64 = 0x00C0_FFEE;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flag(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_flag(f: u8) -> Result<Self> {
        match f {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::InvalidInput(format!("bad parity flag {f}"))),
        }
    }
}

/// Value tuple of a linear functional on the stored Cartan basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Scalar::zero(); rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a.clone()).collect())
    }

    /// Value on the Cartan element with coefficient vector `coeffs`.
    pub fn eval(&self, coeffs: &[Scalar]) -> Scalar {
        self.0.iter().zip(coeffs).map(|(a, c)| a.clone() * c).sum()
    }
}

pub type SuperVector = Vec<Scalar>;

/// A finite-dimensional superalgebra given by parity-tagged basis, sparse
/// structure constants, a distinguished Cartan index set and per-index
/// weights. Cartan-type models additionally carry Z-degrees; families whose
/// odd part splits carry component tags.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<Parity>,
    pub labels: Vec<String>,
    pub cartan: Vec<usize>,
    pub weights: Vec<Weight>,
    pub degree: Option<Vec<i64>>,
    pub component: Option<Vec<Option<u8>>>,
    /// structure[i][j] = list of (k, c) with [b_i, b_j] = sum c b_k.
    pub structure: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// Family tag when built by a model constructor; not serialized.
    pub family: Option<crate::models::AnyFamily>,
}

impl SuperAlgebra {
    pub fn unit(&self, i: usize) -> SuperVector {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::from_integer(1.into());
        v
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Coordinate vector from (label, coefficient) pairs.
    pub fn element(&self, terms: &[(&str, Scalar)]) -> Result<SuperVector> {
        let mut v = vec![Scalar::zero(); self.dim];
        for (label, c) in terms {
            let i = self
                .index_of_label(label)
                .ok_or_else(|| Error::InvalidInput(format!("no basis element {label:?}")))?;
            v[i] += c.clone();
        }
        Ok(v)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.parity[i] == Parity::Even).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.parity[i] == Parity::Odd).collect()
    }

    pub fn degree_indices(&self, k: i64) -> Vec<usize> {
        match &self.degree {
            Some(d) => (0..self.dim).filter(|&i| d[i] == k).collect(),
            None => Vec::new(),
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<SuperVector> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: y.len() });
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &self.structure[i][j] {
                    out[*k] += xi.clone() * yj * c;
                }
            }
        }
        Ok(out)
    }

    fn bracket_sparse(
        &self,
        x: &BTreeMap<usize, Scalar>,
        y: &BTreeMap<usize, Scalar>,
    ) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for (&i, xi) in x {
            for (&j, yj) in y {
                for (k, c) in &self.structure[i][j] {
                    let e = out.entry(*k).or_insert_with(Scalar::zero);
                    *e += xi.clone() * yj * c;
                    if e.is_zero() {
                        out.remove(k);
                    }
                }
            }
        }
        out
    }

    /// Least subspace containing `gens` and closed under the bracket.
    /// Returns the subspace with the dimension trace per closure round.
    pub fn closure(&self, gens: &[SuperVector]) -> Result<(Subspace, Vec<usize>)> {
        let mut span = Subspace::new(self.dim);
        let mut frontier: Vec<SuperVector> = Vec::new();
        let mut all: Vec<SuperVector> = Vec::new();
        for g in gens {
            if g.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: g.len() });
            }
            if span.insert(g.clone()) {
                frontier.push(g.clone());
                all.push(g.clone());
            }
        }
        let mut trace = vec![span.dim()];
        while !frontier.is_empty() && span.dim() < self.dim {
            let mut next = Vec::new();
            'outer: for f in &frontier {
                for a in &all {
                    for (x, y) in [(a, f), (f, a)] {
                        let b = self.bracket(x, y)?;
                        if span.insert(b.clone()) {
                            next.push(b);
                            if span.dim() == self.dim {
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            trace.push(span.dim());
            all.extend(next.iter().cloned());
            frontier = next;
        }
        Ok((span, trace))
    }

    /// Least subspace containing `seed` and stable under bracketing with
    /// `acting` (which must itself be bracket-closed).
    pub fn module_closure(&self, acting: &Subspace, seed: &[Scalar]) -> Result<Subspace> {
        let mut span = Subspace::new(self.dim);
        let mut frontier = Vec::new();
        if span.insert(seed.to_vec()) {
            frontier.push(seed.to_vec());
        }
        while !frontier.is_empty() && span.dim() < self.dim {
            let mut next = Vec::new();
            for f in &frontier {
                for a in acting.rows() {
                    let b = self.bracket(a, f)?;
                    if span.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        Ok(span)
    }

    /// Partition of an `acting`-stable subspace into irreducible submodules,
    /// each found as a module closure from an uncovered weight vector.
    pub fn module_components(
        &self,
        subspace: &Subspace,
        acting: &Subspace,
    ) -> Result<Vec<Subspace>> {
        // Split every row into weight components; an H-stable subspace
        // contains each of them.
        let mut by_weight: BTreeMap<Weight, Vec<SuperVector>> = BTreeMap::new();
        for row in subspace.rows() {
            let mut parts: BTreeMap<Weight, SuperVector> = BTreeMap::new();
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let w = self.weights[i].clone();
                let v = parts.entry(w).or_insert_with(|| vec![Scalar::zero(); self.dim]);
                v[i] = c.clone();
            }
            for (w, v) in parts {
                if !subspace.contains(&v) {
                    return Err(Error::NotAModule);
                }
                by_weight.entry(w).or_default().push(v);
            }
        }
        // A one-dimensional weight space of the subspace lies entirely inside
        // a single irreducible component, so such seeds are tried first;
        // seeds from fatter weight spaces may mix components.
        let mut seeds: Vec<SuperVector> = Vec::new();
        for multi in [false, true] {
            for vs in by_weight.values() {
                if (vs.len() > 1) == multi {
                    seeds.extend(vs.iter().cloned());
                }
            }
        }
        let mut covered = Subspace::new(self.dim);
        let mut components: Vec<Subspace> = Vec::new();
        for seed in seeds {
            if covered.contains(&seed) {
                continue;
            }
            let comp = self.module_closure(acting, &seed)?;
            for r in comp.rows() {
                if !subspace.contains(r) {
                    return Err(Error::NotAModule);
                }
            }
            if comp.intersection_dim(&covered) != 0 {
                return Err(Error::NotAModule);
            }
            for r in comp.rows() {
                covered.insert(r.clone());
            }
            components.push(comp);
        }
        if covered.dim() != subspace.dim() {
            return Err(Error::NotAModule);
        }
        Ok(components)
    }

    /// Kernel of the adjoint action restricted to the span of `indices`:
    /// elements of that span commuting with every listed basis vector.
    pub fn centralizer(&self, indices: &[usize]) -> Vec<SuperVector> {
        // Constraint rows keyed by (acted-on index, target index).
        let mut rows: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (col, &i) in indices.iter().enumerate() {
            for &j in indices {
                for (k, c) in &self.structure[i][j] {
                    let row = rows
                        .entry((j, *k))
                        .or_insert_with(|| vec![Scalar::zero(); indices.len()]);
                    row[col] += c.clone();
                }
            }
        }
        let mat = crate::exactlin::ExactMatrix::from_rows(rows.into_values().collect())
            .expect("uniform constraint rows");
        let mat = if mat.rows == 0 {
            crate::exactlin::ExactMatrix::zero(1, indices.len())
        } else {
            mat
        };
        mat.kernel()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![Scalar::zero(); self.dim];
                for (col, &i) in indices.iter().enumerate() {
                    v[i] = coeffs[col].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the center of the even part.
    pub fn even_center(&self) -> Vec<SuperVector> {
        self.centralizer(&self.even_indices())
    }

    pub fn subspace_from_indices(&self, indices: &[usize]) -> Subspace {
        let mut s = Subspace::new(self.dim);
        for &i in indices {
            s.insert(self.unit(i));
        }
        s
    }

    pub fn full_subspace(&self) -> Subspace {
        self.subspace_from_indices(&(0..self.dim).collect::<Vec<_>>())
    }

    /// Verifies super skew-symmetry, super Jacobi, parity additivity and the
    /// Cartan-eigenvector invariant. Jacobi is exhaustive up to
    /// `JACOBI_EXHAUSTIVE_LIMIT` and seeded-random above it.
    pub fn check_structure(&self) -> StructureReport {
        let mut report = StructureReport {
            name: self.name.clone(),
            dim: self.dim,
            skew_ok: true,
            jacobi_ok: true,
            jacobi_sampled: self.dim > JACOBI_EXHAUSTIVE_LIMIT,
            parity_ok: true,
            cartan_ok: true,
            z_graded: None,
            first_failure: None,
        };
        let sparse = |terms: &Vec<(usize, Scalar)>| -> BTreeMap<usize, Scalar> {
            terms.iter().map(|(k, c)| (*k, c.clone())).collect()
        };
        // skew + parity + degree additivity over all pairs
        let mut graded_ok = self.degree.is_some().then_some(true);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let both_odd = self.parity[i] == Parity::Odd && self.parity[j] == Parity::Odd;
                let mut acc = sparse(&self.structure[i][j]);
                for (k, c) in &self.structure[j][i] {
                    let e = acc.entry(*k).or_insert_with(Scalar::zero);
                    if both_odd {
                        *e -= c.clone();
                    } else {
                        *e += c.clone();
                    }
                    if e.is_zero() {
                        acc.remove(k);
                    }
                }
                if !acc.is_empty() && report.skew_ok {
                    report.skew_ok = false;
                    report.note(format!("super skew-symmetry fails at pair ({i},{j})"));
                }
                let want = (self.parity[i].flag() + self.parity[j].flag()) % 2;
                for (k, _) in &self.structure[i][j] {
                    if self.parity[*k].flag() != want && report.parity_ok {
                        report.parity_ok = false;
                        report.note(format!("parity additivity fails at pair ({i},{j})"));
                    }
                    if let (Some(deg), Some(true)) = (&self.degree, graded_ok) {
                        if deg[*k] != deg[i] + deg[j] {
                            graded_ok = Some(false);
                        }
                    }
                }
            }
        }
        report.z_graded = graded_ok;
        // Cartan-eigenvector invariant
        for (pos, &c) in self.cartan.iter().enumerate() {
            if self.parity[c] != Parity::Even && report.cartan_ok {
                report.cartan_ok = false;
                report.note(format!("Cartan index {c} is odd"));
            }
            for i in 0..self.dim {
                let terms = &self.structure[c][i];
                let ok = match terms.len() {
                    0 => self.weights[i].0[pos].is_zero(),
                    1 => terms[0].0 == i && terms[0].1 == self.weights[i].0[pos],
                    _ => false,
                };
                if !ok && report.cartan_ok {
                    report.cartan_ok = false;
                    report.note(format!("basis {i} is not an eigenvector of Cartan {c}"));
                }
            }
        }
        // super Jacobi
        let check_triple = |i: usize, j: usize, k: usize| -> bool {
            let bi = sparse(&self.structure[i][j]);
            let ei: BTreeMap<usize, Scalar> =
                [(i, Scalar::from_integer(1.into()))].into_iter().collect();
            let ej: BTreeMap<usize, Scalar> =
                [(j, Scalar::from_integer(1.into()))].into_iter().collect();
            let ek: BTreeMap<usize, Scalar> =
                [(k, Scalar::from_integer(1.into()))].into_iter().collect();
            let jk = sparse(&self.structure[j][k]);
            let lhs = self.bracket_sparse(&ei, &jk);
            let mut rhs = self.bracket_sparse(&bi, &ek);
            let t = self.bracket_sparse(&ej, &self.bracket_sparse(&ei, &ek));
            let sgn_neg =
                self.parity[i] == Parity::Odd && self.parity[j] == Parity::Odd;
            for (m, c) in t {
                let e = rhs.entry(m).or_insert_with(Scalar::zero);
                if sgn_neg {
                    *e -= c;
                } else {
                    *e += c;
                }
                if e.is_zero() {
                    rhs.remove(&m);
                }
            }
            lhs == rhs
        };
        if self.dim <= JACOBI_EXHAUSTIVE_LIMIT {
            'jac: for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        if !check_triple(i, j, k) {
                            report.jacobi_ok = false;
                            report.note(format!("super Jacobi fails at triple ({i},{j},{k})"));
                            break 'jac;
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(JACOBI_SEED);
            for _ in 0..JACOBI_SAMPLES {
                let i = rng.gen_range(0..self.dim);
                let j = rng.gen_range(0..self.dim);
                let k = rng.gen_range(0..self.dim);
                if !check_triple(i, j, k) {
                    report.jacobi_ok = false;
                    report.note(format!("super Jacobi fails at triple ({i},{j},{k})"));
                    break;
                }
            }
        }
        report
    }
}

/// Derive per-index weights from the structure constants of the Cartan rows;
/// fails with NotDiagonal if some basis vector is not a simultaneous
/// eigenvector.
pub fn derive_weights(
    structure: &[Vec<Vec<(usize, Scalar)>>],
    cartan: &[usize],
    dim: usize,
) -> Result<Vec<Weight>> {
    let mut weights = vec![Weight::zero(cartan.len()); dim];
    for (pos, &c) in cartan.iter().enumerate() {
        for i in 0..dim {
            let terms = &structure[c][i];
            match terms.len() {
                0 => {}
                1 if terms[0].0 == i => weights[i].0[pos] = terms[0].1.clone(),
                _ => return Err(Error::NotDiagonal(i)),
            }
        }
    }
    Ok(weights)
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub name: String,
    pub dim: usize,
    pub skew_ok: bool,
    pub jacobi_ok: bool,
    pub jacobi_sampled: bool,
    pub parity_ok: bool,
    pub cartan_ok: bool,
    /// Some(flag) when the algebra carries Z-degrees.
    pub z_graded: Option<bool>,
    pub first_failure: Option<String>,
}

impl StructureReport {
    fn note(&mut self, msg: String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }

    pub fn pass(&self) -> bool {
        self.skew_ok && self.jacobi_ok && self.parity_ok && self.cartan_ok
    }
}

/// Row-reduced subspace of coordinate vectors; rows stay in reduced echelon
/// form, sorted by pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SuperVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(ambient: usize, rows: &[SuperVector]) -> Self {
        let mut s = Self::new(ambient);
        for r in rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SuperVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce_vec(&self, mut v: SuperVector) -> SuperVector {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for c in 0..self.ambient {
                    let t = row[c].clone() * &f;
                    v[c] -= t;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce_vec(v.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Insert a vector, maintaining reduced echelon form. Returns true if the
    /// span grew.
    pub fn insert(&mut self, v: SuperVector) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut v = self.reduce_vec(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for c in 0..self.ambient {
            let t = v[c].clone() * &inv;
            v[c] = t;
        }
        // eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for c in 0..self.ambient {
                    let t = v[c].clone() * &f;
                    row[c] -= t;
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let mut union = self.clone();
        for r in other.rows() {
            union.insert(r.clone());
        }
        self.dim() + other.dim() - union.dim()
    }
}
