//! Matrix realizations of gl(m|n) and the classical families A, B, C, D, P,
//! Q, compiled into structure-constant tables.
//!
//! The orthosymplectic families use antidiagonal bilinear forms (symmetric
//! part: antidiagonal ones; symplectic part: antidiagonal with a sign split)
//! so the standard Cartan subalgebra is diagonal and every chosen basis
//! element is a Cartan eigenvector by construction.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{format_scalar, int, Scalar, SparseEchelon};
use crate::models::{AnyFamily, ClassicalFamily, FamilySpec};
use crate::superalgebra::{derive_weights, Parity, SuperAlgebra, SuperVector};

/// Dense (p+q) x (p+q) matrix with the even/odd block split at p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSuperElement {
    pub p: usize,
    pub q: usize,
    pub e: Vec<Vec<Scalar>>,
}

impl MatrixSuperElement {
    pub fn zero(p: usize, q: usize) -> Self {
        let n = p + q;
        MatrixSuperElement { p, q, e: vec![vec![Scalar::zero(); n]; n] }
    }

    /// Matrix unit e_{ij} in global 0-based coordinates.
    pub fn unit(p: usize, q: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(p, q);
        m.e[i][j] = Scalar::one();
        m
    }

    pub fn size(&self) -> usize {
        self.p + self.q
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn add_scaled(&mut self, other: &MatrixSuperElement, c: &Scalar) {
        for i in 0..self.size() {
            for j in 0..self.size() {
                let t = other.e[i][j].clone() * c;
                self.e[i][j] += t;
            }
        }
    }

    pub fn mul(&self, other: &MatrixSuperElement) -> MatrixSuperElement {
        let n = self.size();
        let mut out = MatrixSuperElement::zero(self.p, self.q);
        for i in 0..n {
            for k in 0..n {
                if self.e[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other.e[k][j].is_zero() {
                        continue;
                    }
                    let t = self.e[i][k].clone() * &other.e[k][j];
                    out.e[i][j] += t;
                }
            }
        }
        out
    }

    /// Super bracket with explicit parities: xy - (-1)^{|x||y|} yx.
    pub fn bracket(&self, px: Parity, other: &MatrixSuperElement, py: Parity) -> MatrixSuperElement {
        let mut out = self.mul(other);
        let sign = if px == Parity::Odd && py == Parity::Odd { int(1) } else { int(-1) };
        out.add_scaled(&other.mul(self), &sign);
        out
    }

    fn entry_map(&self) -> BTreeMap<(usize, usize), Scalar> {
        let mut m = BTreeMap::new();
        for i in 0..self.size() {
            for j in 0..self.size() {
                if !self.e[i][j].is_zero() {
                    m.insert((i, j), self.e[i][j].clone());
                }
            }
        }
        m
    }

    /// Renders as a signed combination of matrix units, 1-based: "e(1,2)-e(6,5)".
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.size() {
            for j in 0..self.size() {
                let c = &self.e[i][j];
                if c.is_zero() {
                    continue;
                }
                let mag = c.abs();
                let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
                out.push_str(sign);
                if !mag.is_one() {
                    out.push_str(&format_scalar(&mag));
                    out.push(' ');
                }
                out.push_str(&format!("e({},{})", i + 1, j + 1));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// tr(A) - tr(D).
pub fn supertrace(x: &MatrixSuperElement) -> Scalar {
    let mut t = Scalar::zero();
    for i in 0..x.size() {
        if i < x.p {
            t += x.e[i][i].clone();
        } else {
            t -= x.e[i][i].clone();
        }
    }
    t
}

/// A family instance as an explicit list of basis matrices, with the center
/// to quotient by (A(n,n), Q(n)), and the Cartan indices.
pub struct MatrixModel {
    pub spec: FamilySpec,
    pub p: usize,
    pub q: usize,
    pub basis: Vec<(MatrixSuperElement, Parity, Option<u8>)>,
    pub cartan: Vec<usize>,
    pub center: Option<MatrixSuperElement>,
}

impl MatrixModel {
    fn echelon(&self) -> Result<SparseEchelon<(usize, usize)>> {
        let mut ech = SparseEchelon::new();
        if let Some(z) = &self.center {
            if !ech.insert(z.entry_map()) {
                return Err(Error::ConstructionFailed("zero center matrix".into()));
            }
        }
        for (m, _, _) in &self.basis {
            if !ech.insert(m.entry_map()) {
                return Err(Error::ConstructionFailed(format!(
                    "dependent basis candidate {} in {}",
                    m.render(),
                    self.spec
                )));
            }
        }
        Ok(ech)
    }

    /// Combination indices from the echelon, with the center coordinate
    /// dropped (the quotient map).
    fn to_coords(&self, combo: Vec<(usize, Scalar)>) -> SuperVector {
        let offset = usize::from(self.center.is_some());
        let mut v = vec![Scalar::zero(); self.basis.len()];
        for (i, c) in combo {
            if i >= offset {
                v[i - offset] = c;
            }
        }
        v
    }

    /// Coordinates of a matrix in the model basis, modulo the center.
    pub fn coordinates(&self, x: &MatrixSuperElement) -> Result<SuperVector> {
        let ech = self.echelon()?;
        let combo = ech
            .express(x.entry_map())
            .ok_or_else(|| Error::InvalidInput(format!("{} is not in {}", x.render(), self.spec)))?;
        Ok(self.to_coords(combo))
    }

    pub fn to_superalgebra(&self) -> Result<SuperAlgebra> {
        let ech = self.echelon()?;
        let dim = self.basis.len();
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let (mi, pi, _) = &self.basis[i];
                let (mj, pj, _) = &self.basis[j];
                let b = mi.bracket(*pi, mj, *pj);
                let combo = ech.express(b.entry_map()).ok_or_else(|| {
                    Error::ConstructionFailed(format!("bracket escapes the span in {}", self.spec))
                })?;
                let v = self.to_coords(combo);
                structure[i][j] =
                    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        let weights = derive_weights(&structure, &self.cartan, dim)?;
        let has_tags = self.basis.iter().any(|(_, _, t)| t.is_some());
        Ok(SuperAlgebra {
            name: self.spec.to_string(),
            dim,
            parity: self.basis.iter().map(|(_, p, _)| *p).collect(),
            labels: self.basis.iter().map(|(m, _, _)| m.render()).collect(),
            cartan: self.cartan.clone(),
            weights,
            degree: None,
            component: has_tags.then(|| self.basis.iter().map(|(_, _, t)| *t).collect()),
            structure,
            family: Some(AnyFamily::Classical(self.spec)),
        })
    }
}

pub fn build_classical(spec: FamilySpec) -> Result<SuperAlgebra> {
    build_classical_model(spec)?.to_superalgebra()
}

pub fn build_classical_model(spec: FamilySpec) -> Result<MatrixModel> {
    spec.validate()?;
    Ok(match spec.family {
        ClassicalFamily::Gl => build_gl(spec),
        ClassicalFamily::A => build_a(spec),
        ClassicalFamily::B => build_osp(spec, 2 * spec.m + 1, 2 * spec.n),
        ClassicalFamily::C => build_osp(spec, 2, 2 * spec.n - 2),
        ClassicalFamily::D => build_osp(spec, 2 * spec.m, 2 * spec.n),
        ClassicalFamily::P => build_p(spec),
        ClassicalFamily::Q => build_q(spec),
    })
}

fn diag(p: usize, q: usize, entries: &[(usize, i64)]) -> MatrixSuperElement {
    let mut m = MatrixSuperElement::zero(p, q);
    for &(i, c) in entries {
        m.e[i][i] = int(c);
    }
    m
}

fn push_odd_blocks(p: usize, q: usize, basis: &mut Vec<(MatrixSuperElement, Parity, Option<u8>)>) {
    for i in 0..p {
        for j in p..p + q {
            basis.push((MatrixSuperElement::unit(p, q, i, j), Parity::Odd, Some(1)));
        }
    }
    for i in p..p + q {
        for j in 0..p {
            basis.push((MatrixSuperElement::unit(p, q, i, j), Parity::Odd, Some(2)));
        }
    }
}

fn build_gl(spec: FamilySpec) -> MatrixModel {
    let (p, q) = (spec.m, spec.n);
    let mut basis = Vec::new();
    let mut cartan = Vec::new();
    for block in [(0, p), (p, p + q)] {
        for i in block.0..block.1 {
            for j in block.0..block.1 {
                if i == j {
                    cartan.push(basis.len());
                }
                basis.push((MatrixSuperElement::unit(p, q, i, j), Parity::Even, None));
            }
        }
    }
    push_odd_blocks(p, q, &mut basis);
    MatrixModel { spec, p, q, basis, cartan, center: None }
}

fn build_a(spec: FamilySpec) -> MatrixModel {
    let (p, q) = (spec.m + 1, spec.n + 1);
    let quotient = spec.m == spec.n;
    let mut basis = Vec::new();
    // Cartan: supertraceless diagonal differences; the cross term
    // e_pp + e_{p+1,p+1} only when not taking the psl quotient.
    for k in 0..p + q - 1 {
        if k == p - 1 {
            if !quotient {
                basis.push((diag(p, q, &[(p - 1, 1), (p, 1)]), Parity::Even, None));
            }
        } else {
            basis.push((diag(p, q, &[(k, 1), (k + 1, -1)]), Parity::Even, None));
        }
    }
    let cartan: Vec<usize> = (0..basis.len()).collect();
    for block in [(0, p), (p, p + q)] {
        for i in block.0..block.1 {
            for j in block.0..block.1 {
                if i != j {
                    basis.push((MatrixSuperElement::unit(p, q, i, j), Parity::Even, None));
                }
            }
        }
    }
    push_odd_blocks(p, q, &mut basis);
    let center = quotient.then(|| {
        let mut z = MatrixSuperElement::zero(p, q);
        for i in 0..p + q {
            z.e[i][i] = Scalar::one();
        }
        z
    });
    MatrixModel { spec, p, q, basis, cartan, center }
}

/// osp(r|q) for the antidiagonal symmetric form G on the even r-block and
/// the antidiagonal symplectic form J (J[i][q-1-i] = +1 for i < q/2, else -1)
/// on the odd q-block.
fn build_osp(spec: FamilySpec, r: usize, q: usize) -> MatrixModel {
    let s = q / 2;
    let sigma = |k: usize| -> i64 {
        if k < s {
            1
        } else {
            -1
        }
    };
    let mut basis = Vec::new();
    // so-part candidate for global pair (i, j) inside the r-block.
    let so_elt = |i: usize, j: usize| {
        let mut m = MatrixSuperElement::unit(r, q, i, j);
        m.e[r - 1 - j][r - 1 - i] -= Scalar::one();
        m
    };
    // sp-part candidate for pair (k, l) inside the q-block.
    let sp_elt = |k: usize, l: usize| {
        let mut m = MatrixSuperElement::unit(r, q, r + k, r + l);
        m.e[r + q - 1 - l][r + q - 1 - k] += int(sigma(k) * sigma(q - 1 - l));
        m
    };
    for i in 0..r / 2 {
        basis.push((so_elt(i, i), Parity::Even, None));
    }
    for i in 0..s {
        basis.push((sp_elt(i, i), Parity::Even, None));
    }
    let cartan: Vec<usize> = (0..basis.len()).collect();
    for i in 0..r {
        for j in 0..r {
            if i != j && i + j != r - 1 && (i, j) < (r - 1 - j, r - 1 - i) {
                basis.push((so_elt(i, j), Parity::Even, None));
            }
        }
    }
    for k in 0..q {
        for l in 0..q {
            if k != l && (k, l) <= (q - 1 - l, q - 1 - k) {
                basis.push((sp_elt(k, l), Parity::Even, None));
            }
        }
    }
    // Odd X(k,l): C-block unit e_{kl} plus the matching B-block entry
    // -sigma_k e_{l', k'} forced by the form invariance.
    let tagged = spec.family == ClassicalFamily::C;
    for k in 0..q {
        for l in 0..r {
            let mut m = MatrixSuperElement::unit(r, q, r + k, l);
            m.e[r - 1 - l][r + q - 1 - k] -= int(sigma(k));
            let tag = tagged.then_some(if l == 0 { 1 } else { 2 });
            basis.push((m, Parity::Odd, tag));
        }
    }
    MatrixModel { spec, p: r, q, basis, cartan, center: None }
}

/// P(n): {[[A,B],[C,-A^T]] : tr A = 0, B symmetric, C antisymmetric}.
fn build_p(spec: FamilySpec) -> MatrixModel {
    let p = spec.n + 1;
    let mut basis = Vec::new();
    for k in 0..p - 1 {
        basis.push((diag(p, p, &[(k, 1), (k + 1, -1), (p + k, -1), (p + k + 1, 1)]), Parity::Even, None));
    }
    let cartan: Vec<usize> = (0..basis.len()).collect();
    for i in 0..p {
        for j in 0..p {
            if i != j {
                let mut m = MatrixSuperElement::unit(p, p, i, j);
                m.e[p + j][p + i] -= Scalar::one();
                basis.push((m, Parity::Even, None));
            }
        }
    }
    for k in 0..p {
        for l in k..p {
            let mut m = MatrixSuperElement::unit(p, p, k, p + l);
            if l > k {
                m.e[l][p + k] += Scalar::one();
            }
            basis.push((m, Parity::Odd, Some(1)));
        }
    }
    for k in 0..p {
        for l in k + 1..p {
            let mut m = MatrixSuperElement::unit(p, p, p + k, l);
            m.e[p + l][k] -= Scalar::one();
            basis.push((m, Parity::Odd, Some(2)));
        }
    }
    MatrixModel { spec, p, q: p, basis, cartan, center: None }
}

/// Q(n): {[[A,B],[B,A]] : tr B = 0} modulo the identity.
fn build_q(spec: FamilySpec) -> MatrixModel {
    let p = spec.n + 1;
    let even = |i: usize, j: usize| {
        let mut m = MatrixSuperElement::unit(p, p, i, j);
        m.e[p + i][p + j] += Scalar::one();
        m
    };
    let odd = |i: usize, j: usize| {
        let mut m = MatrixSuperElement::unit(p, p, i, p + j);
        m.e[p + i][j] += Scalar::one();
        m
    };
    let mut basis = Vec::new();
    for k in 0..p - 1 {
        let mut m = even(k, k);
        m.add_scaled(&even(k + 1, k + 1), &int(-1));
        basis.push((m, Parity::Even, None));
    }
    let cartan: Vec<usize> = (0..basis.len()).collect();
    for i in 0..p {
        for j in 0..p {
            if i != j {
                basis.push((even(i, j), Parity::Even, None));
            }
        }
    }
    for k in 0..p - 1 {
        let mut m = odd(k, k);
        m.add_scaled(&odd(k + 1, k + 1), &int(-1));
        basis.push((m, Parity::Odd, None));
    }
    for i in 0..p {
        for j in 0..p {
            if i != j {
                basis.push((odd(i, j), Parity::Odd, None));
            }
        }
    }
    let mut center = MatrixSuperElement::zero(p, p);
    for i in 0..2 * p {
        center.e[i][i] = Scalar::one();
    }
    MatrixModel { spec, p, q: p, basis, cartan, center: Some(center) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ExactMatrix;
    use crate::superalgebra::Subspace;

    fn gl21_elt(entries: &[(usize, usize, i64)]) -> MatrixSuperElement {
        let mut m = MatrixSuperElement::zero(2, 1);
        for &(i, j, c) in entries {
            m.e[i][j] = int(c);
        }
        m
    }

    #[test]
    fn supertrace_examples() {
        assert_eq!(supertrace(&gl21_elt(&[(0, 0, 1)])), int(1));
        assert_eq!(supertrace(&gl21_elt(&[(2, 2, 1)])), int(-1));
        assert_eq!(supertrace(&gl21_elt(&[(0, 0, 1), (1, 1, 1), (2, 2, 2)])), int(0));
    }

    #[test]
    fn family_dimensions() {
        let cases = [
            (FamilySpec::a(1, 0), 8),
            (FamilySpec::gl(1, 1), 4),
            (FamilySpec::a(1, 1), 14),
            (FamilySpec::b(0, 1), 5),
            (FamilySpec::b(1, 1), 12),
            (FamilySpec::c(2), 8),
            (FamilySpec::d(2, 1), 17),
            (FamilySpec::p(2), 17),
            (FamilySpec::q(2), 16),
        ];
        for (spec, dim) in cases {
            let l = build_classical(spec).unwrap();
            assert_eq!(l.dim, dim, "{spec}");
        }
        let a10 = build_classical(FamilySpec::a(1, 0)).unwrap();
        assert_eq!(a10.even_indices().len(), 4);
        assert_eq!(a10.odd_indices().len(), 4);
    }

    #[test]
    fn bad_parameters_rejected() {
        for spec in [
            FamilySpec::a(0, 0),
            FamilySpec::b(2, 0),
            FamilySpec::c(1),
            FamilySpec::d(1, 1),
            FamilySpec::d(2, 0),
            FamilySpec::p(1),
            FamilySpec::q(1),
            FamilySpec::gl(0, 0),
        ] {
            assert!(matches!(build_classical(spec), Err(Error::BadParameters(_))), "{spec}");
        }
    }

    /// Independent count of osp basis solutions: kernel of the linear
    /// form-invariance conditions x^{st} F + F x = 0 on all of gl(r|q).
    fn osp_form_kernel_dim(r: usize, q: usize) -> usize {
        let s = q / 2;
        let n = r + q;
        // F = diag(G, J) with G antidiagonal ones and J split-sign antidiagonal.
        let mut f = vec![vec![int(0); n]; n];
        for i in 0..r {
            f[i][r - 1 - i] = int(1);
        }
        for k in 0..q {
            f[r + k][r + q - 1 - k] = int(if k < s { 1 } else { -1 });
        }
        // st(x)[a][k] = x[k][a], negated exactly when a >= r and k < r.
        let st_sign = |a: usize, k: usize| if a >= r && k < r { int(-1) } else { int(1) };
        let col = |i: usize, j: usize| i * n + j;
        let mut rows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![int(0); n * n];
                for k in 0..n {
                    // (st(x) F)[a][b]
                    row[col(k, a)] += st_sign(a, k) * &f[k][b];
                    // (F x)[a][b]
                    row[col(k, b)] += f[a][k].clone();
                }
                rows.push(row);
            }
        }
        let m = ExactMatrix::from_rows(rows).unwrap();
        let (_, rank, _) = m.row_reduce();
        n * n - rank
    }

    #[test]
    fn osp_dims_match_form_invariance_oracle() {
        for (spec, r, q) in [
            (FamilySpec::b(0, 1), 1, 2),
            (FamilySpec::b(1, 1), 3, 2),
            (FamilySpec::c(2), 2, 2),
            (FamilySpec::d(2, 1), 4, 2),
        ] {
            let l = build_classical(spec).unwrap();
            assert_eq!(l.dim, osp_form_kernel_dim(r, q), "{spec}");
        }
    }

    #[test]
    fn structure_checks_pass() {
        for spec in [
            FamilySpec::gl(1, 1),
            FamilySpec::a(1, 0),
            FamilySpec::a(1, 1),
            FamilySpec::b(1, 1),
            FamilySpec::c(2),
            FamilySpec::p(2),
            FamilySpec::q(2),
        ] {
            let l = build_classical(spec).unwrap();
            let r = l.check_structure();
            assert!(r.pass(), "{spec}: {:?}", r.first_failure);
        }
    }

    #[test]
    fn even_center_dimensions() {
        let cases = [
            (FamilySpec::a(1, 0), 1),
            (FamilySpec::a(2, 1), 1),
            (FamilySpec::c(2), 1),
            (FamilySpec::b(1, 1), 0),
            (FamilySpec::d(2, 1), 0),
            (FamilySpec::p(2), 0),
            (FamilySpec::q(2), 0),
        ];
        for (spec, dim) in cases {
            let l = build_classical(spec).unwrap();
            assert_eq!(l.even_center().len(), dim, "{spec}");
        }
        // A(1,0): the center is spanned by e11 + e22 + 2 e33.
        let model = build_classical_model(FamilySpec::a(1, 0)).unwrap();
        let l = model.to_superalgebra().unwrap();
        let z = model.coordinates(&gl21_elt(&[(0, 0, 1), (1, 1, 1), (2, 2, 2)])).unwrap();
        let center = Subspace::from_rows(l.dim, &l.even_center());
        assert_eq!(center.dim(), 1);
        assert!(center.contains(&z));
    }

    #[test]
    fn center_eigenvalues_align_with_component_tags() {
        for spec in [FamilySpec::a(1, 0), FamilySpec::a(2, 1), FamilySpec::c(2), FamilySpec::c(3)] {
            let l = build_classical(spec).unwrap();
            let z = &l.even_center()[0];
            let tags = l.component.as_ref().unwrap();
            let mut by_tag: BTreeMap<u8, Vec<Scalar>> = BTreeMap::new();
            for i in l.odd_indices() {
                let b = l.bracket(z, &l.unit(i)).unwrap();
                // eigenvector check: [z, b_i] = lambda b_i
                let lambda = b[i].clone();
                let mut expect = vec![Scalar::zero(); l.dim];
                expect[i] = lambda.clone();
                assert_eq!(b, expect, "{spec}: odd basis {i} not a z-eigenvector");
                by_tag.entry(tags[i].unwrap()).or_default().push(lambda);
            }
            assert_eq!(by_tag.len(), 2, "{spec}");
            let v1 = &by_tag[&1];
            let v2 = &by_tag[&2];
            assert!(v1.iter().all(|x| x == &v1[0]), "{spec}");
            assert!(v2.iter().all(|x| x == &v2[0]), "{spec}");
            assert_ne!(v1[0], v2[0], "{spec}");
        }
    }

    #[test]
    fn simplicity_smoke() {
        for spec in [
            FamilySpec::a(1, 0),
            FamilySpec::a(1, 1),
            FamilySpec::b(1, 1),
            FamilySpec::c(2),
            FamilySpec::d(2, 1),
            FamilySpec::p(2),
            FamilySpec::q(2),
        ] {
            let l = build_classical(spec).unwrap();
            let full = l.full_subspace();
            for i in 0..l.dim {
                let ideal = l.module_closure(&full, &l.unit(i)).unwrap();
                assert_eq!(ideal.dim(), l.dim, "{spec}: ideal from basis {i} is proper");
            }
        }
    }

    #[test]
    fn a10_labels() {
        let l = build_classical(FamilySpec::a(1, 0)).unwrap();
        for lbl in ["e(1,1)-e(2,2)", "e(2,2)+e(3,3)", "e(1,2)", "e(2,1)", "e(1,3)", "e(3,1)"] {
            assert!(l.index_of_label(lbl).is_some(), "missing {lbl}: {:?}", l.labels);
        }
    }
}
