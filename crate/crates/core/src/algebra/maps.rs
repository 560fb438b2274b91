//! Homomorphisms out of indecomposable projectives.
//!
//! A map `P_s -> M` is determined by the image of the top of `P_s`, which
//! can be any vector of `M` at point `s`; the images of the other basis
//! vectors follow by applying arrows.

use super::linalg::{Matrix, Rat};
use super::module::{Module, ModuleMap};
use super::{AlgebraError, BasisTag, TreeAlgebra};

/// The homomorphism `P_s -> target` sending the top to `g`.
pub fn hom_from_projective(alg: &TreeAlgebra, s: usize, target: &Module, g: &[Rat]) -> ModuleMap {
    let p = alg.projective(s);
    assert_eq!(
        g.len(),
        target.dims()[s],
        "generator lives at the wrong point"
    );
    let mut images: Vec<Vec<Rat>> = Vec::with_capacity(p.dim());
    images.push(g.to_vec());
    for b in 1..p.dim() {
        let (a, from) = p.parent[b].expect("non-top vectors have a parent");
        images.push(target.maps()[a].mul_vec(&images[from]));
    }
    let src_dims = p.module.dims();
    let mut blocks: Vec<Matrix> = (0..alg.num_points())
        .map(|q| Matrix::zeros(target.dims()[q], src_dims[q]))
        .collect();
    for (b, img) in images.iter().enumerate() {
        let q = p.points[b];
        for (i, x) in img.iter().enumerate() {
            blocks[q].set(i, p.local[b], x.clone());
        }
    }
    ModuleMap { blocks }
}

/// Which generator of a hom space between indecomposable projectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjMap {
    /// For distinct adjacent edges: the generator of least radical depth.
    Canonical,
    /// Top to socle; endomorphism of `P_s`.
    Socle,
    Identity,
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Image of the top of `P_s` under the chosen map `P_s -> P_t`, as a vector
/// of `P_t` at point `s`.
pub fn canonical_generator(
    alg: &TreeAlgebra,
    kind: ProjMap,
    s: usize,
    t: usize,
) -> Result<Vec<Rat>, AlgebraError> {
    let tree = alg.tree();
    let pt = alg.projective(t);
    let n = pt.module.dims()[s];
    let label = |e: usize| tree.edge(e).label.clone();
    let tag = match kind {
        ProjMap::Identity | ProjMap::Socle if s != t => {
            return Err(AlgebraError::NoCanonicalMap(format!(
                "{kind:?} needs equal edges, got `{}` and `{}`",
                label(s),
                label(t)
            )))
        }
        ProjMap::Identity => BasisTag::Top,
        ProjMap::Socle => BasisTag::Socle,
        ProjMap::Canonical => {
            if s == t {
                return Err(AlgebraError::NoCanonicalMap(format!(
                    "`{}` to itself",
                    label(s)
                )));
            }
            let v = tree.shared_vertex(s, t).ok_or_else(|| {
                AlgebraError::NoCanonicalMap(format!(
                    "`{}` and `{}` are not adjacent",
                    label(s),
                    label(t)
                ))
            })?;
            let step = pt
                .tags
                .iter()
                .zip(&pt.points)
                .filter_map(|(tag, &pnt)| match *tag {
                    BasisTag::Chain { vertex, step } if vertex == v && pnt == s => Some(step),
                    _ => None,
                })
                .min()
                .expect("adjacent edges meet on the walk");
            BasisTag::Chain { vertex: v, step }
        }
    };
    let idx = pt.index_of(tag).expect("tag present");
    Ok(unit(n, pt.local[idx]))
}

/// The canonical map `P_s -> P_t` for distinct edges sharing a vertex `v`:
/// its image is the uniserial submodule of `P_t` generated by the first
/// composition factor `s` on the walk around `v`.
pub fn canonical_map(alg: &TreeAlgebra, s: usize, t: usize) -> Result<ModuleMap, AlgebraError> {
    let g = canonical_generator(alg, ProjMap::Canonical, s, t)?;
    Ok(hom_from_projective(alg, s, &alg.projective(t).module, &g))
}
