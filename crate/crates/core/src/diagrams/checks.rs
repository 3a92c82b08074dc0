use std::collections::HashMap;

use serde::Serialize;

use super::coloured::PartitionAlgebra;
use super::planar::{build_tl, Bubble, Matching, TemperleyLieb};
use super::set_partition::{all_set_partitions, compose_set_partitions, SetPartition};
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::split::LocalizedAlgebra;

#[derive(Clone, Debug, Serialize)]
pub struct TensorIsoReport {
    pub local_dim: usize,
    pub tensor_dim: usize,
    pub factor_dims: Vec<usize>,
    pub bijective: bool,
    pub multiplicative: bool,
    pub failures: usize,
}

impl TensorIsoReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.multiplicative
    }
}

/// Checks that `phi` (basis of `local` → tuple of factor basis indices) is a
/// bijection onto the product basis carrying products to tensor products.
pub fn check_tensor_iso(local: &Algebra, phi: impl Fn(usize) -> Vec<usize>, factors: &[&Algebra]) -> TensorIsoReport {
    let factor_dims: Vec<usize> = factors.iter().map(|a| a.dim()).collect();
    let tensor_dim = factor_dims.iter().product();
    let flat = |tuple: &[usize]| tuple.iter().zip(&factor_dims).fold(0, |acc, (x, d)| acc * d + x);
    let images: Vec<Vec<usize>> = (0..local.dim()).map(&phi).collect();
    let in_range = images.iter().all(|t| t.len() == factors.len() && t.iter().zip(&factor_dims).all(|(x, d)| x < d));
    let flat_images: Vec<usize> = if in_range { images.iter().map(|t| flat(t)).collect() } else { Vec::new() };
    let mut hit = vec![false; tensor_dim];
    let mut bijective = in_range && local.dim() == tensor_dim;
    for &x in &flat_images {
        if hit[x] {
            bijective = false;
            break;
        }
        hit[x] = true;
    }
    if !bijective {
        return TensorIsoReport { local_dim: local.dim(), tensor_dim, factor_dims, bijective, multiplicative: false, failures: 0 };
    }
    let field = local.field();
    let mut failures = 0;
    for a in 0..local.dim() {
        for b in 0..local.dim() {
            let lhs = Element::from_terms(local.basis_product(a, b).iter().map(|(k, c)| (flat_images[*k as usize], c.clone())));
            // tensor product of the factor products
            let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), field.one())];
            for (f, alg) in factors.iter().enumerate() {
                let prod = alg.basis_product(images[a][f], images[b][f]);
                acc = acc
                    .into_iter()
                    .flat_map(|(t, c)| {
                        prod.iter().map(move |(k, v)| {
                            let mut t2 = t.clone();
                            t2.push(*k as usize);
                            (t2, &c * v)
                        })
                    })
                    .collect();
            }
            let rhs = Element::from_terms(acc.into_iter().map(|(t, c)| (flat(&t), c)));
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    TensorIsoReport { local_dim: local.dim(), tensor_dim, factor_dims, bijective, multiplicative: failures == 0, failures }
}

/// The corner algebra spanned by `basis` (a set of parent basis indices
/// closed under multiplication), with unit `unit`.
pub fn corner_algebra(parent: &Algebra, basis: &[usize], unit: &Element) -> Result<Algebra> {
    let mut to_local = HashMap::new();
    for (l, &p) in basis.iter().enumerate() {
        to_local.insert(p, l);
    }
    let pull = |x: &Element| -> Result<Element> {
        x.terms()
            .iter()
            .map(|(p, c)| {
                to_local
                    .get(p)
                    .map(|l| (*l, c.clone()))
                    .ok_or_else(|| Error::Assumption("product leaves the corner algebra".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Element::from_terms)
    };
    let local_unit = pull(unit)?;
    let mut failure = None;
    let alg = Algebra::from_products(parent.field(), basis.len(), local_unit, |a, b| {
        pull(&parent.basis_product_element(basis[a], basis[b])).unwrap_or_else(|e| {
            failure.get_or_insert(e);
            Element::zero()
        })
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(alg),
    }
}

/// The partition algebra `P_k(δ)` on its diagram basis.
pub struct PlainPartitionAlgebra {
    pub diagrams: Vec<SetPartition>,
    pub index: HashMap<SetPartition, usize>,
    pub algebra: Algebra,
}

pub fn build_partition_algebra(k: usize, delta: &Scalar) -> PlainPartitionAlgebra {
    let field = delta.field();
    let diagrams = all_set_partitions(k);
    let index: HashMap<SetPartition, usize> = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let unit = Element::basis(field, index[&SetPartition::identity(k)]);
    let algebra = Algebra::from_products(field, diagrams.len(), unit, |i, j| {
        let (d, r) = compose_set_partitions(&diagrams[i], &diagrams[j]).expect("same size");
        Element::from_terms([(index[&d], delta.pow(r as u32))])
    });
    PlainPartitionAlgebra { diagrams, index, algebra }
}

/// `1_{(A)} P_{n,m} 1_{(A)} ≅ ⊗_i P_{|A_i|}(δ_i)` for the colouring with index `which`.
pub fn check_localization_iso(pa: &PartitionAlgebra, which: usize) -> Result<TensorIsoReport> {
    let colouring = pa
        .idempotent_colourings
        .get(which)
        .ok_or_else(|| Error::input(format!("colouring index {which} out of range")))?;
    let basis: Vec<usize> = (0..pa.dim())
        .filter(|&k| pa.diagrams[k].top() == *colouring && pa.diagrams[k].bot() == *colouring)
        .collect();
    let local = corner_algebra(&pa.algebra, &basis, &pa.idempotents.elements[which])?;
    let sizes: Vec<usize> = (0..pa.m).map(|c| colouring.iter().filter(|&&x| x == c).count()).collect();
    let factors: Vec<PlainPartitionAlgebra> =
        sizes.iter().zip(&pa.deltas).map(|(&k, d)| build_partition_algebra(k, d)).collect();
    let factor_algs: Vec<&Algebra> = factors.iter().map(|f| &f.algebra).collect();
    let phi = |l: usize| {
        let d = &pa.diagrams[basis[l]];
        (0..pa.m).map(|c| factors[c].index[&d.component(c)]).collect()
    };
    Ok(check_tensor_iso(&local, phi, &factor_algs))
}

/// Restriction of a pairing to the points of one colour, as a partition diagram.
fn matching_component(mt: &Matching, c: usize) -> SetPartition {
    let n = mt.n();
    let mut relabel = vec![usize::MAX; 2 * n];
    let (mut t, mut b) = (0, 0);
    for x in 0..2 * n {
        if mt.colour[x] == c {
            if x < n {
                relabel[x] = t;
                t += 1;
            } else {
                relabel[x] = b;
                b += 1;
            }
        }
    }
    let blocks = (0..2 * n)
        .filter(|&x| mt.colour[x] == c && mt.partner[x] > x)
        .map(|x| {
            let y = mt.partner[x];
            let g = |z: usize| if z < n { relabel[z] } else { t + relabel[z] };
            vec![g(x), g(y)]
        })
        .collect();
    SetPartition::new(t, b, blocks).expect("restriction of a pairing")
}

/// The corner algebra of `T_{n,m}` at a colouring is `⊗_c TL_{k_c}(δ_c)`,
/// checked on the localized datum's basis.
pub fn check_bubble_localization(bubble: &Bubble, local: &LocalizedAlgebra) -> Result<TensorIsoReport> {
    let colouring = &bubble.idempotent_colourings[local.colour];
    let sizes: Vec<usize> = (0..bubble.m).map(|c| colouring.iter().filter(|&&x| x == c).count()).collect();
    let factors: Vec<TemperleyLieb> =
        sizes.iter().zip(&bubble.deltas).map(|(&k, d)| build_tl(k, d)).collect::<Result<_>>()?;
    let factor_algs: Vec<&Algebra> = factors.iter().map(|f| f.datum.algebra()).collect();
    let phi = |l: usize| {
        let mt = &bubble.diagrams[local.embedding[l]];
        (0..bubble.m).map(|c| factors[c].index[&matching_component(mt, c)]).collect()
    };
    Ok(check_tensor_iso(local.datum.algebra(), phi, &factor_algs))
}

/// `T_{n,1}(δ)` against `TL_n(δ)` under the identity on diagrams.
pub fn check_single_colour_bubble(bubble: &Bubble, tl: &TemperleyLieb) -> TensorIsoReport {
    let phi = |i: usize| vec![tl.index.get(&bubble.diagrams[i].to_set_partition()).copied().unwrap_or(usize::MAX)];
    check_tensor_iso(bubble.datum.algebra(), phi, &[tl.datum.algebra()])
}

/// `Σ_k S(2n, k) m^k`, the number of `m`-coloured partition diagrams.
pub fn partition_algebra_dim(n: usize, m: usize) -> u128 {
    let size = 2 * n;
    // Stirling numbers of the second kind, row by row
    let mut row = vec![1u128];
    for r in 1..=size {
        let mut next = vec![0u128; r + 1];
        for k in 1..=r {
            let from_same = if k < row.len() { (k as u128) * row[k] } else { 0 };
            next[k] = row[k - 1] + from_same;
        }
        row = next;
    }
    row.iter().enumerate().map(|(k, s)| s * (m as u128).pow(k as u32)).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionOracle {
    pub dim: usize,
    pub radical_dim: usize,
    pub semisimple: bool,
    /// No `δ_i` is an integer in `[0, 2n-1]`.
    pub parameters_generic: bool,
    /// Generic parameters gave a semisimple algebra.
    pub consistent: bool,
}

pub const DEFAULT_ORACLE_CAP: usize = 200;

/// Semisimplicity of `P_{n,m}` from its trace-form radical.
pub fn oracle_semisimple_partition(n: usize, m: usize, field: Field, deltas: &[Scalar], cap: usize) -> Result<PartitionOracle> {
    if field.characteristic() != 0 {
        return Err(Error::unsupported("the trace-form oracle needs characteristic 0"));
    }
    let dim = partition_algebra_dim(n, m);
    if dim > cap as u128 {
        return Err(Error::Resource(format!("P_{{{n},{m}}} has dimension {dim}, above the cap {cap}")));
    }
    let pa = super::coloured::build_multicolour_partition(n, m, field, deltas)?;
    let radical_dim = pa.algebra.jacobson_radical()?.dim();
    let parameters_generic = deltas.iter().all(|d| {
        let r = d.as_rational().expect("characteristic 0");
        !(r.is_integer() && r.signum() >= 0 && r < &crate::linalg::Rational::from_int(2 * n as i64))
    });
    let semisimple = radical_dim == 0;
    Ok(PartitionOracle { dim: pa.dim(), radical_dim, semisimple, parameters_generic, consistent: !parameters_generic || semisimple })
}
