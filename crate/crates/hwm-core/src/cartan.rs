//! Generalized Cartan matrices and their root systems.
//!
//! A generalized Cartan matrix (GCM) `A = (a_ij)` has `a_ii = 2`, integer
//! `a_ij <= 0` off the diagonal, and `a_ij = 0` iff `a_ji = 0`. Everything in
//! this crate is driven by such a matrix: the Weyl group through its rows, the
//! invariant bilinear form through a symmetrizer, and the root multiplicities
//! through the Peterson recurrence.
//!
//! Positive roots are represented by their coordinate vectors in the simple
//! roots: `beta = sum_i k_i alpha_i` is stored as `[k_0, ..., k_{n-1}]` with
//! height `sum_i k_i`. Root enumeration is always explicit about its height
//! cutoff; nothing pretends to hold beyond the band it was computed for.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{height, q, Q};

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gcm {
    a: Vec<Vec<i64>>,
}

impl Gcm {
    /// Validates and wraps a square integer matrix.
    #[allow(clippy::needless_range_loop)] // paired (i, j) access reads best indexed
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::BadInput("matrix must have rank at least 1".into()));
        }
        if a.iter().any(|row| row.len() != n) {
            return Err(Error::BadInput("matrix must be square".into()));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::DiagonalNotTwo(i));
            }
            for j in 0..n {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(Error::PositiveOffDiagonal(i, j));
                    }
                    if (a[i][j] == 0) != (a[j][i] == 0) {
                        return Err(Error::AsymmetricZero(i.min(j), i.max(j)));
                    }
                }
            }
        }
        Ok(Gcm { a })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Entry `a_ij`, i.e. `<alpha_check_i, alpha_j>`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Nodes `i != j` joined by an edge of the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.a[i][j] != 0
    }

    /// Connected components of the subdiagram induced on `support`,
    /// each returned sorted, in order of their smallest node.
    pub fn components(&self, support: &[usize]) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in support {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(i) = queue.pop_front() {
                for &j in support {
                    if !seen.contains(&j) && self.adjacent(i, j) {
                        seen.insert(j);
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A positive diagonal `d` with `d_i a_ij = d_j a_ji`, normalized so the
    /// minimum of `d` on each connected component is 1.
    pub fn symmetrize(&self) -> Result<Symmetrizer> {
        let n = self.rank();
        let mut d: Vec<Option<Q>> = vec![None; n];
        for comp in self.components(&all_indices(n)) {
            // Propagate d along a spanning tree; cross-edges must agree.
            d[comp[0]] = Some(Q::one());
            let mut queue = VecDeque::from([comp[0]]);
            while let Some(i) = queue.pop_front() {
                for &j in &comp {
                    if !self.adjacent(i, j) {
                        continue;
                    }
                    // d_j = d_i a_ij / a_ji; both entries are nonzero here.
                    let dj = d[i].clone().unwrap() * q(self.a[i][j]) / q(self.a[j][i]);
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            queue.push_back(j);
                        }
                        Some(existing) => {
                            if *existing != dj {
                                return Err(Error::NotSymmetrizable);
                            }
                        }
                    }
                }
            }
            let min = comp
                .iter()
                .map(|&i| d[i].clone().unwrap())
                .min()
                .expect("component is nonempty");
            for &i in &comp {
                let scaled = d[i].clone().unwrap() / min.clone();
                debug_assert!(scaled.is_positive());
                d[i] = Some(scaled);
            }
        }
        Ok(Symmetrizer {
            d: d.into_iter().map(|x| x.unwrap()).collect(),
        })
    }

    /// Classifies the subdiagram on `j_set`: `Finite` iff the symmetrized
    /// principal submatrix is positive definite, `Affine` iff it is positive
    /// semidefinite with corank exactly 1 on every connected component, and
    /// `Indefinite` otherwise (in particular for non-symmetrizable submatrices).
    pub fn classify_subdiagram(&self, j_set: &[usize]) -> Result<SubdiagramClass> {
        let j_set = check_subset(self.rank(), j_set)?;
        if j_set.is_empty() {
            return Ok(SubdiagramClass::Finite);
        }
        let sub = self.submatrix(&j_set);
        let sym = match sub.symmetrize() {
            Ok(s) => s,
            Err(_) => return Ok(SubdiagramClass::Indefinite),
        };
        let b = sym.gram(&sub);
        let mut all_finite = true;
        let mut all_affine = true;
        for comp in sub.components(&all_indices(sub.rank())) {
            let bc: Vec<Vec<Q>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| b[i][j].clone()).collect())
                .collect();
            if positive_definite(&bc) {
                all_affine = false;
            } else if positive_semidefinite(&bc) && comp.len() - rank_q(&bc) == 1 {
                all_finite = false;
            } else {
                return Ok(SubdiagramClass::Indefinite);
            }
        }
        Ok(match (all_finite, all_affine) {
            (true, _) => SubdiagramClass::Finite,
            (_, true) => SubdiagramClass::Affine,
            _ => SubdiagramClass::Indefinite,
        })
    }

    fn submatrix(&self, j_set: &[usize]) -> Gcm {
        Gcm {
            a: j_set
                .iter()
                .map(|&i| j_set.iter().map(|&j| self.a[i][j]).collect())
                .collect(),
        }
    }
}

/// Positive diagonal symmetrizer of a GCM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrizer {
    d: Vec<Q>,
}

impl Symmetrizer {
    pub fn d(&self) -> &[Q] {
        &self.d
    }

    /// The symmetric Gram matrix `(alpha_i, alpha_j) = d_i a_ij`.
    pub fn gram(&self, gcm: &Gcm) -> Vec<Vec<Q>> {
        (0..gcm.rank())
            .map(|i| {
                (0..gcm.rank())
                    .map(|j| self.d[i].clone() * q(gcm.entry(i, j)))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubdiagramClass {
    Finite,
    Affine,
    Indefinite,
}

/// The invariant bilinear form on the root lattice, plus the pairings
/// `(rho, alpha_i) = d_i` needed by the Peterson and Freudenthal recurrences.
#[derive(Debug, Clone)]
pub struct InvariantForm {
    b: Vec<Vec<Q>>,
    d: Vec<Q>,
}

impl InvariantForm {
    pub fn new(gcm: &Gcm) -> Result<Self> {
        let sym = gcm.symmetrize().map_err(|_| Error::RequiresSymmetrizable)?;
        Ok(InvariantForm {
            b: sym.gram(gcm),
            d: sym.d().to_vec(),
        })
    }

    pub fn d(&self) -> &[Q] {
        &self.d
    }

    /// `(sum x_i alpha_i, sum y_j alpha_j)`.
    pub fn form(&self, x: &[i64], y: &[i64]) -> Q {
        let mut acc = Q::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    acc += self.b[i][j].clone() * q(xi * yj);
                }
            }
        }
        acc
    }

    /// `(rho, sum x_i alpha_i) = sum x_i d_i`.
    pub fn rho_form(&self, x: &[i64]) -> Q {
        x.iter()
            .zip(&self.d)
            .fold(Q::zero(), |acc, (&xi, di)| acc + q(xi) * di.clone())
    }
}

/// One positive root in a [`RootDatum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootInfo {
    pub mult: i64,
    pub real: bool,
}

/// Positive roots of height at most `cutoff`, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    cutoff: i64,
    roots: BTreeMap<Vec<i64>, RootInfo>,
}

impl RootDatum {
    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn get(&self, beta: &[i64]) -> Option<RootInfo> {
        self.roots.get(beta).copied()
    }

    pub fn mult(&self, beta: &[i64]) -> i64 {
        self.roots.get(beta).map_or(0, |r| r.mult)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Roots sorted by (height, lexicographic coordinates).
    pub fn iter_sorted(&self) -> Vec<(&Vec<i64>, RootInfo)> {
        let mut v: Vec<_> = self.roots.iter().map(|(k, &info)| (k, info)).collect();
        v.sort_by_key(|(k, _)| (height(k), (*k).clone()));
        v
    }

    /// Roots whose support lies inside `j_set`, sorted as in `iter_sorted`.
    pub fn supported_on(&self, j_set: &[usize]) -> Vec<(&Vec<i64>, RootInfo)> {
        self.iter_sorted()
            .into_iter()
            .filter(|(k, _)| {
                k.iter()
                    .enumerate()
                    .all(|(i, &ki)| ki == 0 || j_set.contains(&i))
            })
            .collect()
    }
}

/// Positive roots with multiplicities up to `cutoff`, by the Peterson
/// recurrence. Requires a symmetrizable matrix.
///
/// Writing `c_beta = sum_{n | beta} mult(beta/n)/n`, the recurrence reads
///
/// ```text
/// (beta, beta - 2 rho) c_beta = sum_{beta' + beta'' = beta} (beta', beta'') c_beta' c_beta''
/// ```
///
/// over ordered pairs of nonzero `beta', beta'' >= 0`, anchored at
/// `c_{alpha_i} = 1`. Any root of height >= 2 has `(beta, beta - 2 rho) < 0`
/// (real roots because `2 (rho, beta) = (beta, beta) ht(beta_check)` with
/// `ht(beta_check) >= 2`, imaginary roots because `(beta, beta) <= 0`), so a
/// vanishing coefficient forces `mult(beta) = 0` and `c_beta` reduces to its
/// proper-divisor part. That case does occur: `beta = 2 alpha_1 + 2 alpha_2`
/// in type A2 has `c_beta = 1/2` and is not a root.
pub fn positive_roots(gcm: &Gcm, cutoff: i64) -> Result<RootDatum> {
    let form = InvariantForm::new(gcm)?;
    let n = gcm.rank();
    let mut c_table: BTreeMap<Vec<i64>, Q> = BTreeMap::new();
    let mut mults: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut roots = BTreeMap::new();

    for h in 1..=cutoff.max(0) {
        for beta in compositions(n, h) {
            let (c_beta, mult) = if h == 1 {
                (Q::one(), 1)
            } else {
                let mut rhs = Q::zero();
                for beta1 in proper_subvectors(&beta) {
                    let Some(c1) = c_table.get(&beta1) else {
                        continue;
                    };
                    if c1.is_zero() {
                        continue;
                    }
                    let beta2: Vec<i64> = beta.iter().zip(&beta1).map(|(&b, &b1)| b - b1).collect();
                    let c2 = match c_table.get(&beta2) {
                        Some(c2) if !c2.is_zero() => c2,
                        _ => continue,
                    };
                    rhs += form.form(&beta1, &beta2) * c1 * c2;
                }
                let divisor_part = divisor_sum(&beta, &mults);
                let denom = form.form(&beta, &beta) - q(2) * form.rho_form(&beta);
                if denom.is_zero() {
                    // Not a root (see above); only proper divisors contribute.
                    debug_assert!(
                        rhs.is_zero(),
                        "Peterson recurrence inconsistent at {beta:?}"
                    );
                    (divisor_part, 0)
                } else {
                    let c_beta = rhs / denom;
                    let mult = c_beta.clone() - divisor_part;
                    let mult = crate::rational::to_integer(&mult)
                        .expect("Peterson recurrence produced a non-integer multiplicity");
                    assert!(
                        mult >= 0,
                        "Peterson recurrence produced a negative multiplicity"
                    );
                    (c_beta, mult)
                }
            };
            if mult > 0 {
                mults.insert(beta.clone(), mult);
                let real = form.form(&beta, &beta).is_positive();
                roots.insert(beta.clone(), RootInfo { mult, real });
            }
            c_table.insert(beta, c_beta);
        }
    }
    Ok(RootDatum { cutoff, roots })
}

/// Positive real roots of height at most `cutoff`, found by reflecting the
/// simple roots and keeping every image that stays positive. Works for any
/// GCM (no symmetrizer needed); serves as the independent cross-check of the
/// `real` flags in [`positive_roots`].
pub fn real_roots_bfs(gcm: &Gcm, cutoff: i64) -> BTreeSet<Vec<i64>> {
    let n = gcm.rank();
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        if height(&e) <= cutoff {
            found.insert(e.clone());
            queue.push_back(e);
        }
    }
    while let Some(beta) = queue.pop_front() {
        for j in 0..n {
            let pairing: i64 = (0..n).map(|k| gcm.entry(j, k) * beta[k]).sum();
            let mut image = beta.clone();
            image[j] -= pairing;
            if image[j] >= 0 && height(&image) <= cutoff && !found.contains(&image) {
                found.insert(image.clone());
                queue.push_back(image);
            }
        }
    }
    found
}

/// Every positive root of a finite-type GCM (all real), by reflection closure.
pub fn all_positive_roots(gcm: &Gcm) -> Result<BTreeSet<Vec<i64>>> {
    if gcm.classify_subdiagram(&all_indices(gcm.rank()))? != SubdiagramClass::Finite {
        return Err(Error::RequiresFiniteType);
    }
    // Heights in finite type are bounded by the height of the highest root;
    // doubling the cutoff until the set stops growing reaches closure.
    let mut cutoff = 2 * gcm.rank() as i64;
    let mut roots = real_roots_bfs(gcm, cutoff);
    loop {
        cutoff *= 2;
        let next = real_roots_bfs(gcm, cutoff);
        if next == roots {
            return Ok(roots);
        }
        roots = next;
    }
}

/// `0, 1, ..., n-1`.
pub fn all_indices(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Sorted, deduplicated, bounds-checked copy of an index subset.
pub fn check_subset(rank: usize, j_set: &[usize]) -> Result<Vec<usize>> {
    let mut v = j_set.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&i| i >= rank) {
        return Err(Error::IndexOutOfRange(bad, rank));
    }
    Ok(v)
}

/// `I \ j_set`, sorted.
pub fn complement(rank: usize, j_set: &[usize]) -> Vec<usize> {
    (0..rank).filter(|i| !j_set.contains(i)).collect()
}

/// All vectors in `Z_{>=0}^n` with coordinate sum `total`, lexicographic.
/// For `n = 0` there is one empty vector when `total = 0` and none otherwise.
pub fn compositions(n: usize, total: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=total {
            prefix.push(k);
            rec(n - 1, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if total >= 0 {
        rec(n, total, &mut Vec::new(), &mut out);
    }
    out
}

/// All vectors strictly between 0 and `beta` componentwise-bounded
/// (excluding 0 and `beta` themselves).
fn proper_subvectors(beta: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in beta {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for prefix in &out {
            for k in 0..=b {
                let mut v = prefix.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().any(|&x| x > 0) && v.iter().zip(beta).any(|(&x, &b)| x < b));
    out
}

/// `sum_{n >= 2, n | beta} mult(beta/n) / n`.
fn divisor_sum(beta: &[i64], mults: &BTreeMap<Vec<i64>, i64>) -> Q {
    let g = beta.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    let mut acc = Q::zero();
    for d in 2..=g {
        if g % d == 0 {
            let reduced: Vec<i64> = beta.iter().map(|&x| x / d).collect();
            let m = mults.get(&reduced).copied().unwrap_or(0);
            if m != 0 {
                acc += q(m) / q(d);
            }
        }
    }
    acc
}

// --- exact linear algebra on symmetric rational matrices ---

#[allow(clippy::needless_range_loop)] // row elimination touches two rows at once
fn det_q(mat: &[Vec<Q>]) -> Q {
    let n = mat.len();
    let mut m: Vec<Vec<Q>> = mat.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let sub = factor.clone() * m[col][c].clone();
                m[r][c] -= sub;
            }
        }
    }
    det
}

#[allow(clippy::needless_range_loop)] // row elimination touches two rows at once
fn rank_q(mat: &[Vec<Q>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut m: Vec<Vec<Q>> = mat.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, rank);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot.clone();
            for c in col..cols {
                let sub = factor.clone() * m[rank][c].clone();
                m[r][c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Sylvester: all leading principal minors positive.
fn positive_definite(mat: &[Vec<Q>]) -> bool {
    (1..=mat.len()).all(|k| {
        let lead: Vec<Vec<Q>> = mat[..k].iter().map(|row| row[..k].to_vec()).collect();
        det_q(&lead).is_positive()
    })
}

/// All principal minors non-negative (the matrices here are tiny).
fn positive_semidefinite(mat: &[Vec<Q>]) -> bool {
    let n = mat.len();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Q>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| mat[i][j].clone()).collect())
            .collect();
        if det_q(&sub).is_negative() {
            return false;
        }
    }
    true
}
