//! The Cartan families W(n), S(n), S~(2m), H(n), built inside the
//! superderivations of the Grassmann algebra and compiled into
//! structure-constant tables with their Z-grading.


use num::integer::lcm;
use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseEchelon};
use crate::grassmann::{d_h, d_ij, involution, GrassmannElement, Mask, Superderivation};
use crate::models::{AnyFamily, CartanFamily, CartanSpec};
use crate::superalgebra::{derive_weights, Parity, SuperAlgebra};

struct BasisElt {
    d: Superderivation,
    degree: i64,
    tag: Option<u8>,
}

/// Masks of a fixed arity ordered by (popcount, value).
fn masks_by_size(n: usize, size: u32) -> impl Iterator<Item = Mask> {
    (0..(1u32 << n)).filter(move |m| m.count_ones() == size)
}

/// The standard Cartan basis as superderivations: xi_i d_i for W;
/// xi_1 d_1 - xi_j d_j for S and S~; the involution-paired differences
/// xi_i d_i - xi_{i'} d_{i'} for H.
pub fn cartan_superderivations(spec: CartanSpec) -> Result<Vec<Superderivation>> {
    spec.validate()?;
    let n = spec.n;
    let diag = |i: usize| Superderivation::monomial(n, 1 << i, i).expect("index in range");
    let diff = |i: usize, j: usize| {
        let mut d = diag(i);
        d.add_scaled(&diag(j), &-Scalar::one());
        d
    };
    Ok(match spec.family {
        CartanFamily::W => (0..n).map(diag).collect(),
        CartanFamily::S | CartanFamily::Stilde => (1..n).map(|j| diff(0, j)).collect(),
        CartanFamily::H => (0..n / 2).map(|i| diff(i, involution(n, i))).collect(),
    })
}

/// Coordinate vectors of the Table 2.1 Cartan basis inside the built algebra.
pub fn cartan_basis(spec: CartanSpec) -> Result<Vec<crate::superalgebra::SuperVector>> {
    let l = build_cartan(spec)?;
    Ok(l.cartan.iter().map(|&i| l.unit(i)).collect())
}

fn expected_dim(spec: CartanSpec) -> usize {
    let n = spec.n;
    match spec.family {
        CartanFamily::W => n << n,
        CartanFamily::S | CartanFamily::Stilde => ((n - 1) << n) + 1,
        CartanFamily::H => (1 << n) - 2,
    }
}

pub fn build_cartan(spec: CartanSpec) -> Result<SuperAlgebra> {
    spec.validate()?;
    let n = spec.n;
    let mut elts: Vec<BasisElt> = Vec::new();
    let mut ech: SparseEchelon<(Mask, usize)> = SparseEchelon::new();
    let push = |ech: &mut SparseEchelon<(Mask, usize)>, elts: &mut Vec<BasisElt>, d: Superderivation, degree: i64| {
        if !d.is_zero() && ech.insert(d.terms.clone()) {
            elts.push(BasisElt { d, degree, tag: None });
        }
    };
    match spec.family {
        CartanFamily::W => {
            for size in 0..=n as u32 {
                for u in masks_by_size(n, size) {
                    for i in 0..n {
                        let d = Superderivation::monomial(n, u, i)?;
                        push(&mut ech, &mut elts, d, size as i64 - 1);
                    }
                }
            }
        }
        CartanFamily::S | CartanFamily::Stilde => {
            for h in cartan_superderivations(spec)? {
                push(&mut ech, &mut elts, h, 0);
            }
            let min_size = if spec.family == CartanFamily::Stilde {
                // Deformed degree -1 vectors (1 + xi_1 ... xi_2m) d_j replace
                // the plain d_j of S(2m).
                let full: Mask = (1 << n) - 1;
                for j in 0..n {
                    let mut d = Superderivation::monomial(n, 0, j)?;
                    d.add_term((full, j), Scalar::one());
                    push(&mut ech, &mut elts, d, -1);
                }
                2
            } else {
                1
            };
            for size in min_size..=n as u32 {
                for u in masks_by_size(n, size) {
                    let f = GrassmannElement::monomial(n, u);
                    for i in 0..n {
                        for j in i..n {
                            push(&mut ech, &mut elts, d_ij(i, j, &f)?, size as i64 - 2);
                        }
                    }
                }
            }
        }
        CartanFamily::H => {
            for h in cartan_superderivations(spec)? {
                push(&mut ech, &mut elts, h, 0);
            }
            for size in 1..n as u32 {
                for u in masks_by_size(n, size) {
                    push(&mut ech, &mut elts, d_h(n, u)?, size as i64 - 2);
                }
            }
        }
    }
    if elts.len() != expected_dim(spec) {
        return Err(Error::ConstructionFailed(format!(
            "{spec}: spanning-set rank {} does not match the expected dimension {}",
            elts.len(),
            expected_dim(spec)
        )));
    }
    let cartan_count = match spec.family {
        CartanFamily::W => n,
        CartanFamily::S | CartanFamily::Stilde => n - 1,
        CartanFamily::H => n / 2,
    };
    let cartan: Vec<usize> = match spec.family {
        // W keeps the plain monomial ordering; locate xi_i d_i in it.
        CartanFamily::W => cartan_superderivations(spec)?
            .iter()
            .map(|h| {
                elts.iter()
                    .position(|e| &e.d == h)
                    .expect("xi_i d_i is a monomial basis vector")
            })
            .collect(),
        _ => (0..cartan_count).collect(),
    };
    let mut l = finalize(spec, &elts, &cartan)?;
    if spec.family == CartanFamily::H && n == 6 {
        l = tag_h6_components(spec, elts, &cartan, l)?;
    }
    Ok(l)
}

fn finalize(spec: CartanSpec, elts: &[BasisElt], cartan: &[usize]) -> Result<SuperAlgebra> {
    let dim = elts.len();
    let mut ech: SparseEchelon<(Mask, usize)> = SparseEchelon::new();
    for e in elts {
        if !ech.insert(e.d.terms.clone()) {
            return Err(Error::ConstructionFailed(format!("{spec}: dependent basis")));
        }
    }
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let b = crate::grassmann::sd_bracket(&elts[i].d, &elts[j].d)?;
            let combo = ech.express(b.terms).ok_or_else(|| {
                Error::ConstructionFailed(format!("{spec}: bracket escapes the span"))
            })?;
            structure[i][j] = combo;
        }
    }
    let parity = elts
        .iter()
        .map(|e| {
            e.d.parity()
                .map(|p| if p == 0 { Parity::Even } else { Parity::Odd })
                .ok_or_else(|| Error::ConstructionFailed(format!("{spec}: mixed-parity basis")))
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = derive_weights(&structure, cartan, dim)?;
    let has_tags = elts.iter().any(|e| e.tag.is_some());
    Ok(SuperAlgebra {
        name: spec.to_string(),
        dim,
        parity,
        labels: elts.iter().map(|e| e.d.render()).collect(),
        cartan: cartan.to_vec(),
        weights,
        degree: Some(elts.iter().map(|e| e.degree).collect()),
        component: has_tags.then(|| elts.iter().map(|e| e.tag).collect()),
        structure,
        family: Some(AnyFamily::Cartan(spec)),
    })
}

/// H(6) only: its degree-1 part splits into two irreducible L_0-submodules
/// that are not spanned by single D_H monomials. Replace the degree-1 block
/// of the basis by component-adapted vectors and tag them.
fn tag_h6_components(
    spec: CartanSpec,
    elts: Vec<BasisElt>,
    cartan: &[usize],
    l: SuperAlgebra,
) -> Result<SuperAlgebra> {
    let acting = l.subspace_from_indices(&l.degree_indices(0));
    let deg1 = l.degree_indices(1);
    let sub = l.subspace_from_indices(&deg1);
    let comps = l.module_components(&sub, &acting)?;
    if comps.len() != 2 {
        return Err(Error::ConstructionFailed(format!(
            "{spec}: expected 2 degree-1 components, found {}",
            comps.len()
        )));
    }
    let first = *deg1.first().expect("degree-1 part nonempty");
    let mut new_elts: Vec<BasisElt> = Vec::new();
    for (idx, e) in elts.iter().enumerate() {
        if idx == first {
            for (ci, comp) in comps.iter().enumerate() {
                for row in comp.rows() {
                    // integer-scale the row for readable labels
                    let scale = row
                        .iter()
                        .fold(BigInt::one(), |acc, c| lcm(acc, c.denom().clone()));
                    let scale = Scalar::from_integer(scale);
                    let mut d = Superderivation::zero(spec.n);
                    for (k, c) in row.iter().enumerate() {
                        if !c.is_zero() {
                            d.add_scaled(&elts[k].d, &(c.clone() * &scale));
                        }
                    }
                    new_elts.push(BasisElt { d, degree: 1, tag: Some(ci as u8 + 1) });
                }
            }
        }
        if e.degree != 1 {
            new_elts.push(BasisElt { d: e.d.clone(), degree: e.degree, tag: None });
        }
    }
    finalize(spec, &new_elts, cartan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::superalgebra::Subspace;
    use std::collections::BTreeMap;

    #[test]
    fn bad_parameters_rejected() {
        for spec in [
            CartanSpec::w(2),
            CartanSpec::s(3),
            CartanSpec::stilde(2),
            CartanSpec::stilde(5),
            CartanSpec::h(4),
        ] {
            assert!(matches!(build_cartan(spec), Err(Error::BadParameters(_))), "{spec}");
        }
    }

    #[test]
    fn dimensions() {
        for (spec, dim) in [
            (CartanSpec::w(3), 24),
            (CartanSpec::s(4), 49),
            (CartanSpec::stilde(4), 49),
            (CartanSpec::h(5), 30),
        ] {
            let l = build_cartan(spec).unwrap();
            assert_eq!(l.dim, dim, "{spec}");
        }
    }

    #[test]
    fn cartan_vectors_match_table() {
        let w3 = cartan_superderivations(CartanSpec::w(3)).unwrap();
        assert_eq!(w3.len(), 3);
        for (i, h) in w3.iter().enumerate() {
            assert_eq!(h, &Superderivation::monomial(3, 1 << i, i).unwrap());
        }
        let s4 = cartan_superderivations(CartanSpec::s(4)).unwrap();
        assert_eq!(s4.len(), 3);
        for (j, h) in s4.iter().enumerate() {
            let mut want = Superderivation::monomial(4, 1, 0).unwrap();
            want.add_scaled(&Superderivation::monomial(4, 1 << (j + 1), j + 1).unwrap(), &int(-1));
            assert_eq!(h, &want);
        }
        // H Cartan vectors are +- D_H images of xi_i xi_{i'}.
        for n in [5usize, 6] {
            let hs = cartan_superderivations(CartanSpec::h(n)).unwrap();
            assert_eq!(hs.len(), n / 2);
            for (i, h) in hs.iter().enumerate() {
                let mask = (1 << i) | (1 << involution(n, i));
                let dh = d_h(n, mask).unwrap();
                let mut neg = Superderivation::zero(n);
                neg.add_scaled(&dh, &int(-1));
                assert!(h == &dh || h == &neg, "H({n}) Cartan {i}");
            }
        }
    }

    #[test]
    fn structure_checks() {
        for spec in [CartanSpec::w(3), CartanSpec::s(4), CartanSpec::h(5)] {
            let l = build_cartan(spec).unwrap();
            let r = l.check_structure();
            assert!(r.pass(), "{spec}: {:?}", r.first_failure);
            assert_eq!(r.z_graded, Some(true), "{spec}");
        }
        let st = build_cartan(CartanSpec::stilde(4)).unwrap();
        let r = st.check_structure();
        assert!(r.pass(), "{:?}", r.first_failure);
        assert_eq!(r.z_graded, Some(false));
    }

    #[test]
    fn stilde_degree_minus_one_brackets_land_in_top_degree() {
        let l = build_cartan(CartanSpec::stilde(4)).unwrap();
        let deg = l.degree.as_ref().unwrap();
        let lows = l.degree_indices(-1);
        assert_eq!(lows.len(), 4);
        let mut saw_top = false;
        for &i in &lows {
            for &j in &lows {
                for (k, _) in &l.structure[i][j] {
                    assert_eq!(deg[*k], 2, "[-1,-1] bracket must land in degree 2m-2");
                    saw_top = true;
                }
            }
        }
        assert!(saw_top);
    }

    #[test]
    fn null_parts() {
        // dim L_0 and its center: gl(n), sl(n), sl(2m), so(n).
        let cases = [
            (CartanSpec::w(3), 9, 1),
            (CartanSpec::s(4), 15, 0),
            (CartanSpec::stilde(4), 15, 0),
            (CartanSpec::h(5), 10, 0),
        ];
        for (spec, dim0, zdim) in cases {
            let l = build_cartan(spec).unwrap();
            let null = l.degree_indices(0);
            assert_eq!(null.len(), dim0, "{spec}");
            assert_eq!(l.centralizer(&null).len(), zdim, "{spec}");
        }
        // W(3): the gl(3) center is spanned by the Euler element sum xi_i d_i.
        let w3 = build_cartan(CartanSpec::w(3)).unwrap();
        let z = w3.centralizer(&w3.degree_indices(0));
        let mut euler = vec![int(0); w3.dim];
        for &c in &w3.cartan {
            euler[c] = int(1);
        }
        assert!(Subspace::from_rows(w3.dim, &z).contains(&euler));
        // ... and the even center of all of W(3) is zero.
        assert!(w3.even_center().is_empty());
    }

    #[test]
    fn h6_degree_one_split_is_tagged() {
        let l = build_cartan(CartanSpec::h(6)).unwrap();
        assert_eq!(l.dim, 62);
        let tags = l.component.as_ref().unwrap();
        let deg1 = l.degree_indices(1);
        assert_eq!(deg1.len(), 20);
        let mut counts = BTreeMap::new();
        for &i in &deg1 {
            *counts.entry(tags[i].unwrap()).or_insert(0usize) += 1;
        }
        assert_eq!(counts, BTreeMap::from([(1u8, 10usize), (2, 10)]));
        for i in 0..l.dim {
            assert_eq!(tags[i].is_some(), l.degree.as_ref().unwrap()[i] == 1);
        }
        let r = l.check_structure();
        assert!(r.pass(), "{:?}", r.first_failure);
        assert_eq!(r.z_graded, Some(true));
    }
}
