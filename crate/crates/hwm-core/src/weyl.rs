//! Weights in coroot-pairing coordinates and the Weyl group acting on them.
//!
//! A weight is stored relative to a basepoint `lambda`: the vector `c` of
//! pairings `<alpha_check_i, lambda>` plus an offset `m`, denoting
//! `lambda - sum_i m_i alpha_i`. The pairing of such a weight with
//! `alpha_check_j` is `c_j - sum_i a_ji m_i`, so a simple reflection is just
//! `m -> m + p e_j` with `p` that pairing. No realization of the Cartan
//! subalgebra is ever chosen.
//!
//! Group elements are enumerated by breadth-first search along the weak
//! order. The canonical key of an element is the offset of its image of an
//! auxiliary weight with pairing 1 at every index of the active subset `J`:
//! that weight is `J`-regular dominant, so keys are unique and the search
//! sees `l(s_j w) > l(w)` exactly when the key's pairing at `j` is positive.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::cartan::{check_subset, Gcm, SubdiagramClass};
use crate::error::{Error, Result};
use crate::rational::{height, height_q, is_integral, q, to_integer, Q};

/// Step budget used when an operation has to raise a weight to dominance
/// internally. Exceeding it yields [`Error::NotInTitsCone`], the bounded
/// verdict for "outside the Tits cone as far as this budget can see".
pub const DEFAULT_MAX_RAISE_STEPS: usize = 10_000;

/// A weight `lambda - sum_i m_i alpha_i` in basepoint-plus-offset form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    /// Pairings `<alpha_check_i, lambda>` of the basepoint.
    pub pairings: Vec<Q>,
    /// Coordinates `m` of the offset `lambda - weight` in the simple roots.
    pub offset: Vec<Q>,
}

impl Weight {
    /// The basepoint itself (zero offset).
    pub fn new(pairings: Vec<Q>) -> Self {
        let n = pairings.len();
        Weight {
            pairings,
            offset: vec![Q::zero(); n],
        }
    }

    pub fn with_offset(pairings: Vec<Q>, offset: Vec<Q>) -> Self {
        assert_eq!(pairings.len(), offset.len());
        Weight { pairings, offset }
    }

    pub fn from_int_offset(pairings: Vec<Q>, offset: &[i64]) -> Self {
        let offset = offset.iter().map(|&x| q(x)).collect();
        Weight::with_offset(pairings, offset)
    }

    pub fn rank(&self) -> usize {
        self.pairings.len()
    }

    /// `<alpha_check_j, self>`.
    pub fn pairing(&self, gcm: &Gcm, j: usize) -> Q {
        let mut p = self.pairings[j].clone();
        for (i, m) in self.offset.iter().enumerate() {
            if !m.is_zero() {
                p -= q(gcm.entry(j, i)) * m.clone();
            }
        }
        p
    }

    /// `s_j` applied to this weight.
    pub fn reflect(&self, gcm: &Gcm, j: usize) -> Weight {
        let p = self.pairing(gcm, j);
        let mut offset = self.offset.clone();
        offset[j] += p;
        Weight {
            pairings: self.pairings.clone(),
            offset,
        }
    }

    /// True if every pairing over `j_set` is non-negative.
    pub fn is_dominant(&self, gcm: &Gcm, j_set: &[usize]) -> bool {
        j_set.iter().all(|&j| !self.pairing(gcm, j).is_negative())
    }

    /// The offset as integers, if it is integral.
    pub fn offset_int(&self) -> Option<Vec<i64>> {
        self.offset.iter().map(to_integer).collect()
    }
}

/// A word in the simple reflections: `letters = [a_0, ..., a_k]` denotes
/// `s_{a_0} s_{a_1} ... s_{a_k}`, applied to weights rightmost-first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// `(-1)^{l(w)}`.
    pub fn sign(&self) -> i64 {
        if self.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Applies a word to a weight (rightmost letter first).
pub fn apply_word(gcm: &Gcm, word: &WeylWord, w: &Weight) -> Weight {
    let mut cur = w.clone();
    for &j in word.letters().iter().rev() {
        cur = cur.reflect(gcm, j);
    }
    cur
}

/// Raises `w` into the `J`-dominant chamber by reflecting at the smallest
/// index with negative pairing, up to `max_steps` steps. Returns the dominant
/// representative together with a word sending the input to the output.
pub fn to_dominant(
    gcm: &Gcm,
    w: &Weight,
    j_set: &[usize],
    max_steps: usize,
) -> Result<(Weight, WeylWord)> {
    let j_set = check_subset(gcm.rank(), j_set)?;
    let mut cur = w.clone();
    let mut applied: Vec<usize> = Vec::new();
    loop {
        match j_set.iter().find(|&&j| cur.pairing(gcm, j).is_negative()) {
            None => {
                applied.reverse();
                return Ok((cur, WeylWord(applied)));
            }
            Some(&j) => {
                if applied.len() == max_steps {
                    return Err(Error::NotInTitsCone { max_steps });
                }
                cur = cur.reflect(gcm, j);
                applied.push(j);
            }
        }
    }
}

/// Truncated orbit of a weight under the parabolic subgroup `W_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSlice {
    pub basepoint: Vec<Q>,
    pub j_set: Vec<usize>,
    pub cutoff: i64,
    pub offsets: BTreeSet<Vec<Q>>,
}

/// All offsets of `W_J`-orbit points of `w` with height at most `cutoff`.
///
/// The input is first raised to its `J`-dominant representative (within
/// [`DEFAULT_MAX_RAISE_STEPS`]); from there heights never decrease along the
/// weak order, so pruning at the cutoff loses nothing and the search
/// terminates even for infinite orbits.
pub fn orbit(gcm: &Gcm, w: &Weight, j_set: &[usize], cutoff: i64) -> Result<OrbitSlice> {
    let j_set = check_subset(gcm.rank(), j_set)?;
    for &j in &j_set {
        if !is_integral(&w.pairing(gcm, j)) {
            return Err(Error::NonIntegralPairing(j));
        }
    }
    let (dom, _) = to_dominant(gcm, w, &j_set, DEFAULT_MAX_RAISE_STEPS)?;
    let mut offsets = BTreeSet::new();
    let mut queue = VecDeque::new();
    let bound = q(cutoff);
    if height_q(&dom.offset) <= bound {
        offsets.insert(dom.offset.clone());
        queue.push_back(dom.clone());
    }
    while let Some(cur) = queue.pop_front() {
        for &j in &j_set {
            let next = cur.reflect(gcm, j);
            if height_q(&next.offset) <= bound && !offsets.contains(&next.offset) {
                offsets.insert(next.offset.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(OrbitSlice {
        basepoint: w.pairings.clone(),
        j_set,
        cutoff,
        offsets,
    })
}

/// Simple indices of `J` whose reflections fix the (J-dominant) weight.
pub fn stabilizer_simple_generators(gcm: &Gcm, w: &Weight, j_set: &[usize]) -> Result<Vec<usize>> {
    let j_set = check_subset(gcm.rank(), j_set)?;
    let mut gens = Vec::new();
    for &j in &j_set {
        let p = w.pairing(gcm, j);
        if p.is_negative() {
            return Err(Error::NotDominant(j));
        }
        if p.is_zero() {
            gens.push(j);
        }
    }
    Ok(gens)
}

/// True iff the stabilizer of the (J-dominant) weight inside `W_J` is finite,
/// i.e. the subdiagram on its simple generators is of finite type.
pub fn isotropy_is_finite(gcm: &Gcm, w: &Weight, j_set: &[usize]) -> Result<bool> {
    let gens = stabilizer_simple_generators(gcm, w, j_set)?;
    Ok(gcm.classify_subdiagram(&gens)? == SubdiagramClass::Finite)
}

/// How [`group_elements_bounded`] bounds its breadth-first search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// All `w` with `height(lambda - w lambda) <= cutoff`. Requires a
    /// `J`-dominant basepoint with finite isotropy.
    HeightPruned { cutoff: i64 },
    /// All `w` with `l(w) <= max_len`.
    LengthBounded { max_len: usize },
}

/// One enumerated Weyl-group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub word: WeylWord,
    /// Offset of `w(lambda)` from the basepoint `lambda`.
    pub offset: Vec<i64>,
    /// `root_images[i]` = coordinates of `w(alpha_i)` in the simple roots.
    pub root_images: Vec<Vec<i64>>,
}

impl GroupElement {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// True for the identity element (the empty word).
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn sign(&self) -> i64 {
        self.word.sign()
    }
}

/// Enumerates distinct elements of `W_J` together with their action data,
/// deduplicated by the image of the auxiliary all-ones weight and sorted by
/// (length, word).
///
/// `pairings` describes the basepoint `lambda`; its entries over `J` must be
/// integral (and, in height-pruned mode, non-negative with finite isotropy).
pub fn group_elements_bounded(
    gcm: &Gcm,
    pairings: &[Q],
    j_set: &[usize],
    mode: EnumerationMode,
) -> Result<Vec<GroupElement>> {
    let n = gcm.rank();
    let j_set = check_subset(n, j_set)?;
    if pairings.len() != n {
        return Err(Error::BadInput(format!(
            "expected {n} pairings, got {}",
            pairings.len()
        )));
    }
    for &j in &j_set {
        if !is_integral(&pairings[j]) {
            return Err(Error::NonIntegralPairing(j));
        }
    }
    if let EnumerationMode::HeightPruned { .. } = mode {
        for &j in &j_set {
            if pairings[j].is_negative() {
                return Err(Error::NotDominant(j));
            }
        }
        let stab: Vec<usize> = j_set
            .iter()
            .copied()
            .filter(|&j| pairings[j].is_zero())
            .collect();
        if gcm.classify_subdiagram(&stab)? != SubdiagramClass::Finite {
            return Err(Error::InfiniteStabilizer);
        }
    }
    // c over J as integers; indices off J never enter a pairing here because
    // offsets stay supported on J.
    let c_int: Vec<i64> = (0..n)
        .map(|i| {
            if j_set.contains(&i) {
                to_integer(&pairings[i]).unwrap()
            } else {
                0
            }
        })
        .collect();
    let aux_c: Vec<i64> = (0..n).map(|i| i64::from(j_set.contains(&i))).collect();

    struct Node {
        aux: Vec<i64>,
        lambda: Vec<i64>,
        images: Vec<Vec<i64>>,
        word: Vec<usize>,
    }
    let identity = Node {
        aux: vec![0; n],
        lambda: vec![0; n],
        images: (0..n)
            .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
            .collect(),
        word: Vec::new(),
    };
    let int_pairing = |c: &[i64], m: &[i64], j: usize| -> i64 {
        c[j] - (0..n).map(|k| gcm.entry(j, k) * m[k]).sum::<i64>()
    };

    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([identity.aux.clone()]);
    let mut out: Vec<GroupElement> = Vec::new();
    let mut queue = VecDeque::from([identity]);
    while let Some(node) = queue.pop_front() {
        out.push(GroupElement {
            word: WeylWord(node.word.clone()),
            offset: node.lambda.clone(),
            root_images: node.images.clone(),
        });
        if let EnumerationMode::LengthBounded { max_len } = mode {
            if node.word.len() >= max_len {
                continue;
            }
        }
        for &j in &j_set {
            // Ascent in the weak order iff the auxiliary image has positive
            // pairing at j (it is never zero: the auxiliary weight is regular).
            let p_aux = int_pairing(&aux_c, &node.aux, j);
            if p_aux <= 0 {
                continue;
            }
            let p_lambda = int_pairing(&c_int, &node.lambda, j);
            let mut lambda = node.lambda.clone();
            lambda[j] += p_lambda;
            if let EnumerationMode::HeightPruned { cutoff } = mode {
                if height(&lambda) > cutoff {
                    continue;
                }
            }
            let mut aux = node.aux.clone();
            aux[j] += p_aux;
            if seen.contains(&aux) {
                continue;
            }
            seen.insert(aux.clone());
            let images = node
                .images
                .iter()
                .map(|v| {
                    let p: i64 = (0..n).map(|k| gcm.entry(j, k) * v[k]).sum();
                    let mut image = v.clone();
                    image[j] -= p;
                    image
                })
                .collect();
            let mut word = Vec::with_capacity(node.word.len() + 1);
            word.push(j);
            word.extend_from_slice(&node.word);
            queue.push_back(Node {
                aux,
                lambda,
                images,
                word,
            });
        }
    }
    out.sort_by(|a, b| (a.len(), &a.word).cmp(&(b.len(), &b.word)));
    Ok(out)
}

/// Minimal-length representatives of the cosets `W_{J'} w` inside `W_J`,
/// sorted by (length, word). With `max_len = None` the whole group is
/// enumerated, which requires `J` of finite type; otherwise only
/// representatives of length at most `max_len` are returned.
pub fn minimal_coset_reps(
    gcm: &Gcm,
    j_prime: &[usize],
    j_set: &[usize],
    max_len: Option<usize>,
) -> Result<Vec<WeylWord>> {
    let j_set = check_subset(gcm.rank(), j_set)?;
    let j_prime = check_subset(gcm.rank(), j_prime)?;
    if !j_prime.iter().all(|j| j_set.contains(j)) {
        return Err(Error::BadInput("J' must be contained in J".into()));
    }
    let mode = match max_len {
        Some(max_len) => EnumerationMode::LengthBounded { max_len },
        None => {
            if gcm.classify_subdiagram(&j_set)? != SubdiagramClass::Finite {
                return Err(Error::RequiresFiniteType);
            }
            EnumerationMode::LengthBounded {
                max_len: usize::MAX,
            }
        }
    };
    let aux_c: Vec<Q> = (0..gcm.rank())
        .map(|i| if j_set.contains(&i) { q(1) } else { Q::zero() })
        .collect();
    let elems = group_elements_bounded(gcm, &aux_c, &j_set, mode)?;
    // w is minimal in W_{J'} w iff l(s_{j'} w) > l(w) for every j' in J',
    // i.e. iff its auxiliary image is strictly J'-dominant.
    Ok(elems
        .into_iter()
        .filter(|e| {
            j_prime.iter().all(|&jp| {
                let pairing: i64 = 1
                    - (0..gcm.rank())
                        .map(|k| gcm.entry(jp, k) * e.offset[k])
                        .sum::<i64>();
                pairing > 0
            })
        })
        .map(|e| e.word)
        .collect())
}

/// The dot action `w . mu = w(mu + rho) - rho`, computed by shifting the
/// basepoint pairings by one, acting, and shifting back. Every reflection
/// used must see an integral pairing.
pub fn dot_action(gcm: &Gcm, word: &WeylWord, w: &Weight) -> Result<Weight> {
    let shifted_pairings: Vec<Q> = w.pairings.iter().map(|c| c.clone() + q(1)).collect();
    let mut cur = Weight::with_offset(shifted_pairings, w.offset.clone());
    for &j in word.letters().iter().rev() {
        if j >= gcm.rank() {
            return Err(Error::IndexOutOfRange(j, gcm.rank()));
        }
        if !is_integral(&cur.pairing(gcm, j)) {
            return Err(Error::NonIntegralPairing(j));
        }
        cur = cur.reflect(gcm, j);
    }
    Ok(Weight {
        pairings: w.pairings.clone(),
        offset: cur.offset,
    })
}
