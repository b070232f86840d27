//! Convex geometry of the weights of a parabolic highest weight module.
//!
//! The convex hull of the weights of `M(lambda, J)` is a polyhedron with a
//! finite description: the convex hull of the `W_J`-orbit of `lambda`
//! together with the cone spanned by the `W_J`-images of the simple roots
//! outside `J`, negated. In offset coordinates (`m` such that the weight is
//! `lambda - sum m_i alpha_i`) both generator families are componentwise
//! non-negative, and the weights are exactly the integral band points of the
//! hull — the polyhedron has no holes. Membership therefore reduces to an
//! exact linear feasibility problem.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::cartan::{all_indices, Gcm, SubdiagramClass};
use crate::error::{Error, Result};
use crate::lp;
use crate::rational::{height, q, Q};
use crate::weights::{offsets_on, ModuleSpec, WeightSet};
use crate::weyl::{group_elements_bounded, EnumerationMode};

/// A vertex-and-ray presentation of the hull, in offset coordinates.
///
/// The hull is `conv(vertices) + cone(rays)`. When `truncated` is set the
/// orbit was only enumerated up to the height cutoff, so both lists may be
/// incomplete: membership answers stay sound (listed generators are genuine)
/// but a failed membership test proves nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullPresentation {
    /// Pairings of the highest weight against the simple coroots.
    pub basepoint: Vec<Q>,
    /// The integrability directions the hull was generated from.
    pub j_set: Vec<usize>,
    /// Offsets `lambda - w(lambda)` of the orbit points, (height, lex)-sorted.
    pub vertices: Vec<Vec<i64>>,
    /// Cone generators `w(alpha_i)`, `i` outside `j_set`, (height, lex)-sorted.
    pub rays: Vec<Vec<i64>>,
    /// True when the generator lists stop at the enumeration cutoff.
    pub truncated: bool,
}

impl HullPresentation {
    pub fn rank(&self) -> usize {
        self.basepoint.len()
    }
}

fn sorted_by_height(set: BTreeSet<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = set.into_iter().collect();
    v.sort_by_key(|k| (height(k), k.clone()));
    v
}

/// Generators of the hull of `wt M(lambda, J)`.
///
/// For a finite-type `J` the whole group `W_J` is enumerated and the
/// presentation is exact. Otherwise the orbit is walked out to the height
/// cutoff and the presentation is marked truncated; this path needs the
/// isotropy group of the basepoint inside `W_J` to be finite.
pub fn ray_decomposition(gcm: &Gcm, spec: &ModuleSpec, cutoff: i64) -> Result<HullPresentation> {
    let n = gcm.rank();
    let truncated = gcm.classify_subdiagram(spec.j_set())? != SubdiagramClass::Finite;
    let mode = if truncated {
        EnumerationMode::HeightPruned { cutoff }
    } else {
        EnumerationMode::LengthBounded {
            max_len: usize::MAX,
        }
    };
    let elements = group_elements_bounded(gcm, spec.pairings(), spec.j_set(), mode)?;

    let outside = crate::cartan::complement(n, spec.j_set());
    let mut vertices = BTreeSet::new();
    let mut rays = BTreeSet::new();
    for e in &elements {
        vertices.insert(e.offset.clone());
        for &i in &outside {
            let image = e.root_images[i].clone();
            // W_J permutes the positive roots outside its own subsystem, so
            // every generator stays componentwise non-negative.
            debug_assert!(image.iter().all(|&x| x >= 0));
            rays.insert(image);
        }
    }
    Ok(HullPresentation {
        basepoint: spec.pairings().to_vec(),
        j_set: spec.j_set().to_vec(),
        vertices: sorted_by_height(vertices),
        rays: sorted_by_height(rays),
        truncated,
    })
}

/// Whether `lambda - sum offset_i alpha_i` lies in the hull.
///
/// Solves `sum t_v v + sum s_r r = offset, sum t_v = 1, t, s >= 0` exactly.
/// A feasible certificate is conclusive even for a truncated presentation;
/// an infeasible one is conclusive only when the presentation is complete,
/// and otherwise reports the truncation.
pub fn hull_contains(hull: &HullPresentation, offset: &[i64]) -> Result<bool> {
    if offset.len() != hull.rank() {
        return Err(Error::BadInput(format!(
            "expected {} offset coordinates, got {}",
            hull.rank(),
            offset.len()
        )));
    }
    let n = hull.rank();
    let cols: Vec<&Vec<i64>> = hull.vertices.iter().chain(hull.rays.iter()).collect();
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        a.push(cols.iter().map(|c| q(c[i])).collect());
    }
    // Convex-combination row: the vertex weights sum to one.
    a.push(
        (0..cols.len())
            .map(|j| {
                if j < hull.vertices.len() {
                    Q::one()
                } else {
                    Q::zero()
                }
            })
            .collect(),
    );
    let mut b: Vec<Q> = offset.iter().map(|&x| q(x)).collect();
    b.push(Q::one());

    if lp::feasible(&a, &b) {
        Ok(true)
    } else if hull.truncated {
        Err(Error::TruncationUncertain)
    } else {
        Ok(false)
    }
}

/// The weights of `M(lambda, J)` in the band, computed as the integral
/// points of the hull.
///
/// Only usable as a complete route when `J` is of finite type; with a
/// truncated presentation any band point that fails the membership test
/// aborts the computation with the truncation error.
pub fn wt_via_hull(gcm: &Gcm, spec: &ModuleSpec, cutoff: i64) -> Result<WeightSet> {
    let hull = ray_decomposition(gcm, spec, cutoff)?;
    let mut out = WeightSet::new(spec.pairings().to_vec(), cutoff);
    for m in offsets_on(&all_indices(gcm.rank()), gcm.rank(), cutoff) {
        if hull_contains(&hull, &m)? {
            out.insert(m);
        }
    }
    Ok(out)
}

/// The simple reflections that preserve the hull: `s_i` must permute the
/// vertex set (acting on actual weights, so affinely on offsets) and the
/// ray set (acting linearly).
pub fn hull_stabilizer(gcm: &Gcm, hull: &HullPresentation) -> Vec<usize> {
    assert_eq!(gcm.rank(), hull.rank());
    let n = hull.rank();
    let vertex_set: BTreeSet<Vec<Q>> = hull
        .vertices
        .iter()
        .map(|v| v.iter().map(|&x| q(x)).collect())
        .collect();
    let ray_set: BTreeSet<Vec<i64>> = hull.rays.iter().cloned().collect();

    (0..n)
        .filter(|&i| {
            let vertices_fixed = hull.vertices.iter().all(|v| {
                // Pairing of the weight lambda - v against the i-th coroot.
                let mut p = hull.basepoint[i].clone();
                for (k, &vk) in v.iter().enumerate() {
                    p -= q(gcm.entry(i, k) * vk);
                }
                let mut image: Vec<Q> = v.iter().map(|&x| q(x)).collect();
                image[i] += p;
                vertex_set.contains(&image)
            });
            let rays_fixed = hull.rays.iter().all(|r| {
                let p: i64 = r
                    .iter()
                    .enumerate()
                    .map(|(k, &rk)| gcm.entry(i, k) * rk)
                    .sum();
                let mut image = r.clone();
                image[i] -= p;
                ray_set.contains(&image)
            });
            vertices_fixed && rays_fixed
        })
        .collect()
}
