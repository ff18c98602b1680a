//! Generator-pair recipes and certified verification: every branch builds a
//! candidate pair (x, y), runs the bracket closure, and packages a
//! certificate with the dimension trace.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::models::{AnyFamily, CartanFamily, ClassicalFamily};
use crate::rootsys::{
    balanced_from_table, check_separating, find_root_index, find_separating, weight_table,
    BalancedMode, RootTable,
};
use crate::superalgebra::{Parity, SuperAlgebra, SuperVector, Weight};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecipeTag {
    EvenPart,
    ClassicalCase1,
    Classical21,
    Classical21Q,
    Classical22,
    Homogeneous,
    CartanGeneric,
    CartanH6,
    CartanHodd,
    GlVariant,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Generated,
    NotGenerated,
}

/// A machine-checkable record that a candidate pair generates (or fails to
/// generate) the algebra.
#[derive(Clone, Debug)]
pub struct GeneratorCertificate {
    pub family: String,
    pub dim: usize,
    pub recipe: Option<RecipeTag>,
    pub x: SuperVector,
    pub y: SuperVector,
    pub chosen_weights: Vec<Weight>,
    pub separator_values: Vec<(Weight, Scalar)>,
    pub trace: Vec<usize>,
    pub closure_dim: usize,
    pub verdict: Verdict,
}

impl GeneratorCertificate {
    pub fn generated(&self) -> bool {
        self.verdict == Verdict::Generated
    }
}

fn certify(
    l: &SuperAlgebra,
    recipe: Option<RecipeTag>,
    chosen_weights: Vec<Weight>,
    separator_values: Vec<(Weight, Scalar)>,
    x: SuperVector,
    y: SuperVector,
) -> Result<GeneratorCertificate> {
    let (span, trace) = l.closure(&[x.clone(), y.clone()])?;
    let closure_dim = span.dim();
    Ok(GeneratorCertificate {
        family: l.name.clone(),
        dim: l.dim,
        recipe,
        x,
        y,
        chosen_weights,
        separator_values,
        trace,
        closure_dim,
        verdict: if closure_dim == l.dim { Verdict::Generated } else { Verdict::NotGenerated },
    })
}

/// Verify an externally supplied pair.
pub fn verify_pair(l: &SuperAlgebra, x: &[Scalar], y: &[Scalar]) -> Result<GeneratorCertificate> {
    certify(l, None, Vec::new(), Vec::new(), x.to_vec(), y.to_vec())
}

fn add_assign(x: &mut SuperVector, y: &[Scalar]) {
    for (a, b) in x.iter_mut().zip(y) {
        *a += b.clone();
    }
}

fn classical_family(l: &SuperAlgebra) -> Result<ClassicalFamily> {
    match &l.family {
        Some(AnyFamily::Classical(spec)) => Ok(spec.family),
        _ => Err(Error::InvalidInput(format!("{} is not a classical model", l.name))),
    }
}

/// Lexicographically smallest weight in `candidates` that is nonzero and
/// avoids both the even roots and the already chosen weights.
fn smallest_eligible(
    candidates: &[Weight],
    excluded: &[Weight],
    chosen: &[Weight],
) -> Result<Weight> {
    candidates
        .iter()
        .find(|w| !w.is_zero() && !excluded.contains(w) && !chosen.contains(w))
        .cloned()
        .ok_or(Error::ConstructionFailed("no eligible weight".into()))
}

/// Generators of the even part: a full-balanced x in the semisimple part and
/// y = h + z with h separating the even roots and z spanning the center.
/// For a Z-graded algebra the same construction runs inside the null part
/// (the gl(n) variant for W, with z the Euler element).
pub fn even_part_pair(l: &SuperAlgebra) -> Result<(SuperVector, SuperVector)> {
    let table = weight_table(l)?;
    let (roots, indices): (Vec<Weight>, Vec<usize>) = if l.degree.is_some() {
        let idx = l.degree_indices(0);
        let roots = table
            .degree_weights
            .get(&0)
            .map(|ws| ws.iter().filter(|w| !w.is_zero()).cloned().collect())
            .unwrap_or_default();
        (roots, idx)
    } else {
        (table.even_roots.clone(), l.even_indices())
    };
    let mut x = vec![Scalar::zero(); l.dim];
    for w in &roots {
        let i = find_root_index(l, &table, w, |i| indices.contains(&i))
            .ok_or(Error::ConstructionFailed("missing root vector".into()))?;
        x[i] = crate::exactlin::int(1);
    }
    let sep = find_separating(l, &roots)?;
    let mut y = sep.h;
    let center = l.centralizer(&indices);
    if center.len() > 1 {
        return Err(Error::InvalidInput(
            "even-part center has dimension > 1; the pair construction does not apply".into(),
        ));
    }
    if let Some(z) = center.first() {
        add_assign(&mut y, z);
    }
    Ok((x, y))
}

/// First stored odd vector of weight `w`, optionally within component `tag`.
fn odd_vector(
    l: &SuperAlgebra,
    table: &RootTable,
    w: &Weight,
    tag: Option<u8>,
) -> Result<usize> {
    find_root_index(l, table, w, |i| {
        l.parity[i] == Parity::Odd
            && match (tag, &l.component) {
                (Some(t), Some(tags)) => tags[i] == Some(t),
                (None, _) => true,
                (Some(_), None) => false,
            }
    })
    .ok_or(Error::ConstructionFailed("missing odd weight vector".into()))
}

/// The theorem's case analysis for classical families.
pub fn classical_pair(l: &SuperAlgebra) -> Result<GeneratorCertificate> {
    let family = classical_family(l)?;
    if family == ClassicalFamily::Gl {
        return Err(Error::InvalidInput(
            "gl is not simple; use even_part_pair for the gl variant".into(),
        ));
    }
    let table = weight_table(l)?;
    let delta0 = &table.even_roots;
    let mut x = balanced_from_table(l, &table, BalancedMode::Full)?;
    let mut chosen: Vec<Weight> = Vec::new();
    let recipe;
    match family {
        // Case 1 (one-dimensional even center) and Subcase 2.2 (no center):
        // one odd weight per irreducible component.
        ClassicalFamily::A | ClassicalFamily::C | ClassicalFamily::P => {
            for tag in [1u8, 2u8] {
                let cands = table
                    .component_weights
                    .get(&tag)
                    .ok_or(Error::ConstructionFailed("missing odd component".into()))?;
                let alpha = smallest_eligible(cands, delta0, &chosen)?;
                let i = odd_vector(l, &table, &alpha, Some(tag))?;
                x[i] = crate::exactlin::int(1);
                chosen.push(alpha);
            }
            let center = l.even_center();
            match center.first() {
                Some(z) => {
                    add_assign(&mut x, z);
                    recipe = RecipeTag::ClassicalCase1;
                }
                None => recipe = RecipeTag::Classical22,
            }
        }
        // Subcase 2.1, irreducible odd part.
        ClassicalFamily::B | ClassicalFamily::D => {
            let cands: Vec<Weight> = table.odd_weights.clone();
            let alpha = smallest_eligible(&cands, delta0, &[])?;
            let i = odd_vector(l, &table, &alpha, None)?;
            x[i] = crate::exactlin::int(1);
            chosen.push(alpha);
            recipe = RecipeTag::Classical21;
        }
        // Subcase 2.1 for Q: the chosen odd weight is a sum of two simple
        // roots, so it already lies in the even root set and the separator
        // runs over the even roots alone.
        ClassicalFamily::Q => {
            let pi = &table.simple;
            let alpha = (0..pi.len())
                .flat_map(|i| ((i + 1)..pi.len()).map(move |j| (i, j)))
                .map(|(i, j)| pi[i].add(&pi[j]))
                .find(|w| delta0.contains(w))
                .ok_or(Error::ConstructionFailed("no simple-root pair sums to a root".into()))?;
            let i = odd_vector(l, &table, &alpha, None)?;
            x[i] = crate::exactlin::int(1);
            chosen.push(alpha);
            recipe = RecipeTag::Classical21Q;
        }
        ClassicalFamily::Gl => unreachable!(),
    }
    let mut phi = delta0.clone();
    if recipe != RecipeTag::Classical21Q {
        phi.extend(chosen.iter().cloned());
    }
    let sep = find_separating(l, &phi)?;
    let cert = certify(l, Some(recipe), chosen, sep.values, x, sep.h)?;
    if !cert.generated() {
        return Err(Error::ConstructionFailed(format!(
            "{}: closure stopped at dim {} of {}",
            l.name, cert.closure_dim, l.dim
        )));
    }
    Ok(cert)
}

/// Two homogeneous generators: an odd-balanced x and an even separator over
/// the odd weights. Requires the odd weights to separate the odd part, which
/// fails for the families with fat odd weight spaces.
pub fn homogeneous_pair(l: &SuperAlgebra) -> Result<GeneratorCertificate> {
    let table = weight_table(l)?;
    let x = balanced_from_table(l, &table, BalancedMode::Odd)?;
    let sep = find_separating(l, &table.odd_weights)?;
    certify(
        l,
        Some(RecipeTag::Homogeneous),
        table.odd_weights.clone(),
        sep.values,
        x,
        sep.h,
    )
}

fn cartan_family(l: &SuperAlgebra) -> Result<(CartanFamily, usize)> {
    match &l.family {
        Some(AnyFamily::Cartan(spec)) => Ok((spec.family, spec.n)),
        _ => Err(Error::InvalidInput(format!("{} is not a Cartan model", l.name))),
    }
}

/// The theorem's case analysis for Cartan families: x collects the local
/// part and one top piece, y separates the simple roots and the chosen
/// weights.
pub fn cartan_pair(l: &SuperAlgebra) -> Result<GeneratorCertificate> {
    let (family, n) = cartan_family(l)?;
    let table = weight_table(l)?;
    let pi = table.simple.clone();
    let mut x = balanced_from_table(l, &table, BalancedMode::Simple)?;
    let mut chosen: Vec<Weight> = Vec::new();
    let recipe;
    let one = crate::exactlin::int(1);
    let minus_one = table.degree_weights.get(&-1).cloned().unwrap_or_default();
    if family == CartanFamily::H && n % 2 == 1 {
        // alpha_{-1} = 0 is forced: the zero weight occurs in degree -1.
        let i = find_root_index(l, &table, &Weight::zero(table.rank), |i| {
            l.degree.as_ref().unwrap()[i] == -1
        })
        .ok_or(Error::ConstructionFailed("missing zero-weight vector".into()))?;
        x[i] = one.clone();
        let ones = table.degree_weights.get(&1).cloned().unwrap_or_default();
        let alpha1 = smallest_eligible(&ones, &pi, &[])?;
        let j = find_root_index(l, &table, &alpha1, |i| l.degree.as_ref().unwrap()[i] == 1)
            .ok_or(Error::ConstructionFailed("missing degree-1 vector".into()))?;
        x[j] = one.clone();
        chosen.push(alpha1);
        recipe = RecipeTag::CartanHodd;
    } else if family == CartanFamily::H {
        // Degree 1 splits into two components; take one weight from each.
        let alpha_m1 = smallest_eligible(&minus_one, &pi, &[])?;
        let i = find_root_index(l, &table, &alpha_m1, |i| l.degree.as_ref().unwrap()[i] == -1)
            .ok_or(Error::ConstructionFailed("missing degree -1 vector".into()))?;
        x[i] = one.clone();
        chosen.push(alpha_m1);
        for tag in [1u8, 2u8] {
            let cands = table
                .component_weights
                .get(&tag)
                .ok_or(Error::ConstructionFailed("missing degree-1 component".into()))?;
            let alpha = smallest_eligible(cands, &pi, &chosen)?;
            let j = find_root_index(l, &table, &alpha, |i| {
                l.degree.as_ref().unwrap()[i] == 1
                    && l.component.as_ref().and_then(|t| t[i]) == Some(tag)
            })
            .ok_or(Error::ConstructionFailed("missing component vector".into()))?;
            x[j] = one.clone();
            chosen.push(alpha);
        }
        recipe = RecipeTag::CartanH6;
    } else {
        // Generic branch: t is the top degree for W and S, and 1 for S~.
        let t = match family {
            CartanFamily::W | CartanFamily::S => {
                *table.degree_weights.keys().max().expect("graded")
            }
            _ => 1,
        };
        let alpha_m1 = smallest_eligible(&minus_one, &pi, &[])?;
        let i = find_root_index(l, &table, &alpha_m1, |i| l.degree.as_ref().unwrap()[i] == -1)
            .ok_or(Error::ConstructionFailed("missing degree -1 vector".into()))?;
        x[i] = one.clone();
        chosen.push(alpha_m1);
        let tops = table.degree_weights.get(&t).cloned().unwrap_or_default();
        let alpha_t = smallest_eligible(&tops, &pi, &chosen)?;
        let j = find_root_index(l, &table, &alpha_t, |i| l.degree.as_ref().unwrap()[i] == t)
            .ok_or(Error::ConstructionFailed("missing top-degree vector".into()))?;
        x[j] = one.clone();
        chosen.push(alpha_t);
        if family == CartanFamily::W {
            // Euler element: the center of the null part.
            let center = l.centralizer(&l.degree_indices(0));
            let z = center.first().ok_or(Error::ConstructionFailed("missing Euler element".into()))?;
            add_assign(&mut x, z);
        }
        recipe = RecipeTag::CartanGeneric;
    }
    let mut phi = pi;
    phi.extend(chosen.iter().cloned().filter(|w| !w.is_zero()));
    let sep = find_separating(l, &phi)?;
    let cert = certify(l, Some(recipe), chosen, sep.values, x, sep.h)?;
    if !cert.generated() {
        return Err(Error::ConstructionFailed(format!(
            "{}: closure stopped at dim {} of {}",
            l.name, cert.closure_dim, l.dim
        )));
    }
    Ok(cert)
}

/// Dispatch on the stored family.
pub fn theorem_pair(l: &SuperAlgebra) -> Result<GeneratorCertificate> {
    match &l.family {
        Some(AnyFamily::Classical(_)) => classical_pair(l),
        Some(AnyFamily::Cartan(_)) => cartan_pair(l),
        None => Err(Error::InvalidInput(format!("{} carries no family tag", l.name))),
    }
}

/// Check a separator candidate supplied by hand against the chosen set.
pub fn check_candidate_separator(
    l: &SuperAlgebra,
    phi: &[Weight],
    h: &[Scalar],
) -> Result<Vec<(Weight, Scalar)>> {
    check_separating(l, phi, h)
}
