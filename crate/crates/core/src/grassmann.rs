//! The Grassmann superalgebra Λ(n) on anticommuting generators ξ_1..ξ_n and
//! its superderivations, the substrate of the Cartan-type models.
//!
//! Monomials are bitsets: bit i set means the generator ξ_{i+1} occurs.
//! Indices are 0-based in code and rendered 1-based (`x1*x3 d3`).

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{format_scalar, Scalar};

pub type Mask = u32;

/// Number of transpositions needed to merge the generators of `b` into `a`;
/// the product sign is (-1) to this count.
fn merge_sign(a: Mask, b: Mask) -> i32 {
    let mut count = 0u32;
    let mut bb = b;
    while bb != 0 {
        let bit = bb.trailing_zeros();
        // generators of `a` strictly above `bit` must be crossed
        count += (a >> (bit + 1)).count_ones();
        bb &= bb - 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Element of Λ(n): a finite sum of monomials with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannElement {
    pub arity: usize,
    pub terms: BTreeMap<Mask, Scalar>,
}

impl GrassmannElement {
    pub fn zero(arity: usize) -> Self {
        GrassmannElement { arity, terms: BTreeMap::new() }
    }

    pub fn monomial(arity: usize, mask: Mask) -> Self {
        let mut e = Self::zero(arity);
        e.terms.insert(mask, Scalar::one());
        e
    }

    /// The generator ξ_i (0-based).
    pub fn generator(arity: usize, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::IndexOutOfRange { index: i, arity });
        }
        Ok(Self::monomial(arity, 1 << i))
    }

    pub fn add_term(&mut self, mask: Mask, c: Scalar) {
        let e = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Z2-parity if homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for mask in self.terms.keys() {
            let tp = (mask.count_ones() % 2) as u8;
            match p {
                None => p = Some(tp),
                Some(q) if q != tp => return None,
                _ => {}
            }
        }
        p
    }
}

pub fn render_monomial(mask: Mask) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        parts.push(format!("x{}", i + 1));
        m &= m - 1;
    }
    parts.join("*")
}

/// Associative product of Λ(n), ξ_iξ_j = -ξ_jξ_i, ξ_i² = 0.
pub fn g_mul(a: &GrassmannElement, b: &GrassmannElement) -> Result<GrassmannElement> {
    if a.arity != b.arity {
        return Err(Error::MixedArity(a.arity, b.arity));
    }
    let mut out = GrassmannElement::zero(a.arity);
    for (&ma, ca) in &a.terms {
        for (&mb, cb) in &b.terms {
            if ma & mb != 0 {
                continue;
            }
            let sign = merge_sign(ma, mb);
            let c = if sign > 0 { ca.clone() * cb } else { -(ca.clone() * cb) };
            out.add_term(ma | mb, c);
        }
    }
    Ok(out)
}

/// Left partial derivative with ∂ξ_j/∂ξ_i = δ_ij, extended by the graded
/// Leibniz rule: the sign is the parity of the generators preceding ξ_i.
pub fn partial(i: usize, f: &GrassmannElement) -> Result<GrassmannElement> {
    if i >= f.arity {
        return Err(Error::IndexOutOfRange { index: i, arity: f.arity });
    }
    let bit = 1 << i;
    let mut out = GrassmannElement::zero(f.arity);
    for (&mask, c) in &f.terms {
        if mask & bit == 0 {
            continue;
        }
        let below = (mask & (bit - 1)).count_ones();
        let v = if below % 2 == 0 { c.clone() } else { -c.clone() };
        out.add_term(mask & !bit, v);
    }
    Ok(out)
}

/// Superderivation of Λ(n): a sum of terms c · x^u ∂/∂ξ_i, keyed by (u, i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superderivation {
    pub arity: usize,
    pub terms: BTreeMap<(Mask, usize), Scalar>,
}

impl Superderivation {
    pub fn zero(arity: usize) -> Self {
        Superderivation { arity, terms: BTreeMap::new() }
    }

    /// x^u ∂/∂ξ_i (0-based target).
    pub fn monomial(arity: usize, mask: Mask, i: usize) -> Result<Self> {
        if i >= arity {
            return Err(Error::IndexOutOfRange { index: i, arity });
        }
        let mut d = Self::zero(arity);
        d.terms.insert((mask, i), Scalar::one());
        Ok(d)
    }

    pub fn add_term(&mut self, key: (Mask, usize), c: Scalar) {
        let e = self.terms.entry(key).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Superderivation, c: &Scalar) {
        for (&k, v) in &other.terms {
            self.add_term(k, v.clone() * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Z2-parity of a term x^u ∂_i is |u|+1 mod 2.
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for (mask, _) in self.terms.keys() {
            let tp = ((mask.count_ones() + 1) % 2) as u8;
            match p {
                None => p = Some(tp),
                Some(q) if q != tp => return None,
                _ => {}
            }
        }
        p
    }

    /// Z-degree of a term x^u ∂_i is |u|-1; `None` if not homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut d = None;
        for (mask, _) in self.terms.keys() {
            let td = mask.count_ones() as i64 - 1;
            match d {
                None => d = Some(td),
                Some(e) if e != td => return None,
                _ => {}
            }
        }
        d
    }

    fn parity_split(&self) -> (Superderivation, Superderivation) {
        let mut even = Superderivation::zero(self.arity);
        let mut odd = Superderivation::zero(self.arity);
        for (&(mask, i), c) in &self.terms {
            if (mask.count_ones() + 1) % 2 == 0 {
                even.terms.insert((mask, i), c.clone());
            } else {
                odd.terms.insert((mask, i), c.clone());
            }
        }
        (even, odd)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (&(mask, i), c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_scalar(&mag));
                out.push(' ');
            }
            if mask != 0 {
                out.push_str(&render_monomial(mask));
                out.push(' ');
            }
            out.push_str(&format!("d{}", i + 1));
        }
        out
    }
}

/// Apply a superderivation to an element: (c x^u ∂_i)(f) = c · x^u ∧ ∂_i f.
pub fn apply(d: &Superderivation, f: &GrassmannElement) -> Result<GrassmannElement> {
    if d.arity != f.arity {
        return Err(Error::MixedArity(d.arity, f.arity));
    }
    let mut out = GrassmannElement::zero(f.arity);
    for (&(mask, i), c) in &d.terms {
        let df = partial(i, f)?;
        let prod = g_mul(&GrassmannElement::monomial(f.arity, mask), &df)?;
        for (&m, v) in &prod.terms {
            out.add_term(m, v.clone() * c);
        }
    }
    Ok(out)
}

/// Superbracket [D1,D2] = D1∘D2 - (-1)^{|D1||D2|} D2∘D1 on homogeneous
/// parts, extended bilinearly. The result is itself a superderivation, so it
/// is reconstructed from its values on the generators.
pub fn sd_bracket(d1: &Superderivation, d2: &Superderivation) -> Result<Superderivation> {
    if d1.arity != d2.arity {
        return Err(Error::MixedArity(d1.arity, d2.arity));
    }
    let n = d1.arity;
    let (e1, o1) = d1.parity_split();
    let (e2, o2) = d2.parity_split();
    let mut out = Superderivation::zero(n);
    for (a, pa) in [(&e1, 0u8), (&o1, 1u8)] {
        if a.is_zero() {
            continue;
        }
        for (b, pb) in [(&e2, 0u8), (&o2, 1u8)] {
            if b.is_zero() {
                continue;
            }
            let anti = pa == 1 && pb == 1;
            for k in 0..n {
                let xi = GrassmannElement::generator(n, k)?;
                let ab = apply(a, &apply(b, &xi)?)?;
                let ba = apply(b, &apply(a, &xi)?)?;
                for (&m, c) in &ab.terms {
                    out.add_term((m, k), c.clone());
                }
                for (&m, c) in &ba.terms {
                    let v = if anti { c.clone() } else { -c.clone() };
                    out.add_term((m, k), v);
                }
            }
        }
    }
    Ok(out)
}

/// D_ij(f) = ∂f/∂ξ_i ∂/∂ξ_j + ∂f/∂ξ_j ∂/∂ξ_i (0-based i, j).
pub fn d_ij(i: usize, j: usize, f: &GrassmannElement) -> Result<Superderivation> {
    if i >= f.arity {
        return Err(Error::IndexOutOfRange { index: i, arity: f.arity });
    }
    if j >= f.arity {
        return Err(Error::IndexOutOfRange { index: j, arity: f.arity });
    }
    let mut out = Superderivation::zero(f.arity);
    for (&m, c) in &partial(i, f)?.terms {
        out.add_term((m, j), c.clone());
    }
    for (&m, c) in &partial(j, f)?.terms {
        out.add_term((m, i), c.clone());
    }
    Ok(out)
}

/// The index involution behind D_H: i' = i+m for i <= m, i' = i-m for
/// m < i <= 2m, and the last index is fixed when n = 2m+1 (all 0-based here).
pub fn involution(n: usize, i: usize) -> usize {
    let m = n / 2;
    if n % 2 == 1 && i == n - 1 {
        i
    } else if i < m {
        i + m
    } else {
        i - m
    }
}

/// D_H(x^u) = (-1)^{|u|} Σ_i ∂(x^u)/∂ξ_i ∂/∂ξ_{i'}.
pub fn d_h(n: usize, mask: Mask) -> Result<Superderivation> {
    if n > 0 && (mask >> n) != 0 {
        return Err(Error::IndexOutOfRange { index: 32 - mask.leading_zeros() as usize - 1, arity: n });
    }
    let f = GrassmannElement::monomial(n, mask);
    let sign_neg = mask.count_ones() % 2 == 1;
    let mut out = Superderivation::zero(n);
    for i in 0..n {
        for (&m, c) in &partial(i, &f)?.terms {
            let v = if sign_neg { -c.clone() } else { c.clone() };
            out.add_term((m, involution(n, i)), v);
        }
    }
    Ok(out)
}
