//! Truncated formal characters and exact character identities.
//!
//! Characters are [`FormalSeries`] over a basepoint `lambda`: the coefficient
//! at offset `m` is the dimension of the weight space `lambda - m`, computed
//! band-exactly up to the height cutoff. Parabolic Verma characters are
//! available by three independent routes —
//!
//! 1. **induction**: the Freudenthal character of the integrable simple
//!    module over the Levi subalgebra, times a geometric factor for every
//!    positive root outside the Levi;
//! 2. **alternating**: a signed sum of dot-orbit exponentials times the
//!    inverse of the full Verma denominator;
//! 3. **fixed-point**: one summand per Weyl element, each a plain-orbit
//!    exponential times factors transported along that element (negative
//!    factors re-expanded towards positive offsets).
//!
//! The routes share no nontrivial code path, so their band-exact agreement —
//! enforced by the test suite and the CLI `check` subcommand — is a genuine
//! differential test. The module also evaluates the Euler characteristic of
//! the relative parabolic resolution and the finite-type denominator
//! identity as exact Laurent-polynomial checks.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::cartan::{all_positive_roots, check_subset, positive_roots, Gcm, InvariantForm};
use crate::error::{Error, Result};
use crate::rational::{height, q, to_integer, Q};
use crate::series::{FormalSeries, LaurentPoly};
use crate::weights::ModuleSpec;
use crate::weyl::{group_elements_bounded, EnumerationMode, WeylWord};

/// Truncated character of the integrable simple module over the Levi
/// subalgebra on `j_set` with highest weight `pairings` (dominant integral
/// over `j_set`), by the Freudenthal recurrence
///
/// ```text
/// (2 (lambda + rho, m) - (m, m)) mult(m)
///     = 2 sum_{alpha > 0 in Levi} dim g_alpha
///         sum_{k >= 1} mult(m - k alpha) (lambda - m + k alpha, alpha)
/// ```
///
/// processed in height order. A vanishing left-hand coefficient can only
/// happen at non-weights (the norm of `mu + rho` is strictly maximal at
/// `mu = lambda`), so it forces `mult(m) = 0`; a nonzero right-hand side
/// there would be a genuine inconsistency and is reported as
/// [`Error::ZeroDenominator`].
pub fn freudenthal_levi_character(
    gcm: &Gcm,
    pairings: &[Q],
    j_set: &[usize],
    cutoff: i64,
) -> Result<FormalSeries> {
    let n = gcm.rank();
    if pairings.len() != n {
        return Err(Error::BadInput(format!(
            "expected {n} pairings, got {}",
            pairings.len()
        )));
    }
    let j_set = check_subset(n, j_set)?;
    for &j in &j_set {
        match to_integer(&pairings[j]) {
            Some(v) if v >= 0 => {}
            _ => return Err(Error::NotDominantIntegral(j)),
        }
    }
    let form = InvariantForm::new(gcm)?;
    let levi_roots: Vec<(Vec<i64>, i64)> = positive_roots(gcm, cutoff)?
        .supported_on(&j_set)
        .into_iter()
        .map(|(beta, info)| (beta.clone(), info.mult))
        .collect();

    // (lambda, sum x_i alpha_i) and (lambda + rho, sum x_i alpha_i).
    let lambda_form = |x: &[i64]| -> Q {
        x.iter()
            .enumerate()
            .filter(|(_, &xi)| xi != 0)
            .fold(Q::zero(), |acc, (i, &xi)| {
                acc + q(xi) * form.d()[i].clone() * pairings[i].clone()
            })
    };

    let mut ch = FormalSeries::monomial(pairings.to_vec(), cutoff, vec![0; n], 1);
    for h in 1..=cutoff.max(0) {
        for m in offsets_on_sorted(&j_set, n, h) {
            let mut num = Q::zero();
            for (alpha, alpha_mult) in &levi_roots {
                for k in 1.. {
                    let prev: Vec<i64> = m.iter().zip(alpha).map(|(mi, ai)| mi - k * ai).collect();
                    if prev.iter().any(|&x| x < 0) {
                        break;
                    }
                    let prev_mult = ch.coeff(&prev);
                    if prev_mult != 0 {
                        let val = lambda_form(alpha) - form.form(&m, alpha)
                            + q(k) * form.form(alpha, alpha);
                        num += q(2 * alpha_mult * prev_mult) * val;
                    }
                }
            }
            let denom = q(2) * (lambda_form(&m) + form.rho_form(&m)) - form.form(&m, &m);
            if denom.is_zero() {
                if !num.is_zero() {
                    return Err(Error::ZeroDenominator(m));
                }
                continue;
            }
            let mult = num / denom;
            let mult =
                to_integer(&mult).unwrap_or_else(|| panic!("non-integral multiplicity at {m:?}"));
            assert!(mult >= 0, "negative multiplicity at {m:?}");
            ch.add_term(m, mult);
        }
    }
    Ok(ch)
}

/// Multiplicity of `lambda - offset` in the integrable simple Levi module.
pub fn freudenthal_mult(gcm: &Gcm, pairings: &[Q], j_set: &[usize], offset: &[i64]) -> Result<i64> {
    let ch = freudenthal_levi_character(gcm, pairings, j_set, height(offset))?;
    Ok(ch.coeff(offset))
}

fn offsets_on_sorted(support: &[usize], rank: usize, exact_ht: i64) -> Vec<Vec<i64>> {
    crate::cartan::compositions(support.len(), exact_ht)
        .into_iter()
        .map(|small| {
            let mut v = vec![0i64; rank];
            for (slot, &i) in support.iter().enumerate() {
                v[i] = small[slot];
            }
            v
        })
        .collect()
}

/// Truncated character of the parabolic Verma module `M(lambda, J)` by
/// induction: the Freudenthal character of the Levi head times
/// `prod_{alpha > 0 outside the Levi} (1 - e^{-alpha})^{-mult alpha}`.
pub fn ch_parabolic_verma_induction(
    gcm: &Gcm,
    spec: &ModuleSpec,
    cutoff: i64,
) -> Result<FormalSeries> {
    let mut ch = freudenthal_levi_character(gcm, spec.pairings(), spec.j_set(), cutoff)?;
    for (beta, info) in positive_roots(gcm, cutoff)?.iter_sorted() {
        if beta
            .iter()
            .enumerate()
            .all(|(i, &bi)| bi == 0 || spec.j_set().contains(&i))
        {
            continue;
        }
        let geo = FormalSeries::geometric(spec.pairings().to_vec(), cutoff, beta);
        for _ in 0..info.mult {
            ch = ch.mul(&geo)?;
        }
    }
    Ok(ch)
}

/// Weyl elements whose dot-offset `(lambda + rho) - w(lambda + rho)` fits in
/// the band, enumerated over `W_J`. The shifted weight is strictly dominant
/// over `J`, so the stabilizer is trivial and the enumeration always
/// terminates.
fn dot_elements(
    gcm: &Gcm,
    spec: &ModuleSpec,
    cutoff: i64,
) -> Result<Vec<crate::weyl::GroupElement>> {
    let shifted: Vec<Q> = spec.pairings().iter().map(|c| c.clone() + q(1)).collect();
    group_elements_bounded(
        gcm,
        &shifted,
        spec.j_set(),
        EnumerationMode::HeightPruned { cutoff },
    )
}

/// Truncated character of `M(lambda, J)` as the signed dot-orbit sum
/// `sum_w (-1)^{l(w)} e^{w . lambda}` times the inverse of the full Verma
/// denominator. Every summand dropped by the height pruning is zero on the
/// band, because its lowest term sits at the dot-offset height.
pub fn ch_parabolic_verma_alternating(
    gcm: &Gcm,
    spec: &ModuleSpec,
    cutoff: i64,
) -> Result<FormalSeries> {
    let mut numerator = FormalSeries::zero(spec.pairings().to_vec(), cutoff);
    for e in dot_elements(gcm, spec, cutoff)? {
        numerator.add_term(e.offset.clone(), e.sign());
    }
    let mut ch = numerator;
    for (beta, info) in positive_roots(gcm, cutoff)?.iter_sorted() {
        let geo = FormalSeries::geometric(spec.pairings().to_vec(), cutoff, beta);
        for _ in 0..info.mult {
            ch = ch.mul(&geo)?;
        }
    }
    Ok(ch)
}

/// The inversion set of `w^{-1}` read off a reduced word
/// `w = s_{a_0} s_{a_1} ... s_{a_t}`: the positive real roots
/// `s_{a_0} ... s_{a_{k-1}} (alpha_{a_k})` for `k = 0..=t`.
fn inversions_of_inverse(gcm: &Gcm, word: &WeylWord) -> Vec<Vec<i64>> {
    let n = gcm.rank();
    let letters = word.letters();
    let mut out = Vec::with_capacity(letters.len());
    for k in 0..letters.len() {
        let mut v = vec![0i64; n];
        v[letters[k]] = 1;
        for &j in letters[..k].iter().rev() {
            let p: i64 = (0..n).map(|i| gcm.entry(j, i) * v[i]).sum();
            v[j] -= p;
        }
        debug_assert!(
            v.iter().all(|&x| x >= 0),
            "inversion roots of a reduced word are positive"
        );
        out.push(v);
    }
    out
}

/// Truncated character of `M(lambda, J)` as a fixed-point sum: for each `w`
/// the summand is `e^{w lambda}` times one factor per positive root `gamma`,
/// transported by `w`. Roots sent negative contribute
/// `-e^{-beta} (1 - e^{-beta})^{-1}` for `beta = -w gamma` (all real, so
/// multiplicity one); the rest contribute the usual geometric factor.
pub fn ch_parabolic_verma_fixed_point(
    gcm: &Gcm,
    spec: &ModuleSpec,
    cutoff: i64,
) -> Result<FormalSeries> {
    let basepoint = spec.pairings().to_vec();
    let roots = positive_roots(gcm, cutoff)?;
    let mut total = FormalSeries::zero(basepoint.clone(), cutoff);
    for e in dot_elements(gcm, spec, cutoff)? {
        let inversions = inversions_of_inverse(gcm, &e.word);
        // Plain offset lambda - w lambda = dot offset - (rho - w rho).
        let mut plain = e.offset.clone();
        for beta in &inversions {
            for (pi, bi) in plain.iter_mut().zip(beta) {
                *pi -= bi;
            }
        }
        debug_assert!(plain.iter().all(|&x| x >= 0));
        let mut summand = FormalSeries::monomial(basepoint.clone(), cutoff, plain, 1);
        let inverted: BTreeSet<&Vec<i64>> = inversions.iter().collect();
        for beta in &inversions {
            let tail = FormalSeries::geometric(basepoint.clone(), cutoff, beta).mul(
                &FormalSeries::monomial(basepoint.clone(), cutoff, beta.clone(), -1),
            )?;
            summand = summand.mul(&tail)?;
        }
        for (beta, info) in roots.iter_sorted() {
            if inverted.contains(beta) {
                continue;
            }
            let geo = FormalSeries::geometric(basepoint.clone(), cutoff, beta);
            for _ in 0..info.mult {
                summand = summand.mul(&geo)?;
            }
        }
        total = total.add(&summand)?;
    }
    Ok(total)
}

/// Truncated Euler characteristic of the relative resolution of
/// `M(lambda, J)` by modules `M(w . lambda, J')` over minimal-length
/// representatives `w` of the cosets `W_{J'} w` in `W_J`:
///
/// ```text
/// sum_w (-1)^{l(w)} ch M(w . lambda, J')
/// ```
///
/// Each term is evaluated by the induction route at the reduced cutoff and
/// shifted into the basepoint of `lambda`. The result must equal
/// `ch M(lambda, J)` band-exactly.
pub fn bggl_euler_character(
    gcm: &Gcm,
    spec: &ModuleSpec,
    j_prime: &[usize],
    cutoff: i64,
) -> Result<FormalSeries> {
    let n = gcm.rank();
    let j_prime = check_subset(n, j_prime)?;
    if !j_prime.iter().all(|j| spec.j_set().contains(j)) {
        return Err(Error::BadInput(
            "J' must be contained in the integrability set J".into(),
        ));
    }
    let mut total = FormalSeries::zero(spec.pairings().to_vec(), cutoff);
    for e in dot_elements(gcm, spec, cutoff)? {
        // Minimal in W_{J'} w iff w^{-1} alpha_j' > 0 for all j' in J', i.e.
        // the shifted image pairing at j' is (strictly) positive.
        let minimal = j_prime.iter().all(|&jp| {
            let shifted = spec.pairings()[jp].clone() + q(1);
            let p =
                shifted - (0..n).fold(Q::zero(), |acc, k| acc + q(gcm.entry(jp, k) * e.offset[k]));
            p.is_positive()
        });
        if !minimal {
            continue;
        }
        let o = &e.offset;
        let sub_pairings: Vec<Q> = (0..n)
            .map(|k| {
                spec.pairings()[k].clone()
                    - (0..n).fold(Q::zero(), |acc, i| acc + q(gcm.entry(k, i) * o[i]))
            })
            .collect();
        let sub_spec = ModuleSpec::new(gcm, sub_pairings, &j_prime)?;
        let sub_ch = ch_parabolic_verma_induction(gcm, &sub_spec, cutoff - height(o))?;
        for (key, coeff) in sub_ch.iter_sorted() {
            let shifted_key: Vec<i64> = key.iter().zip(o).map(|(a, b)| a + b).collect();
            total.add_term(shifted_key, e.sign() * coeff);
        }
    }
    Ok(total)
}

/// Outcome of the finite-type denominator comparison: the product
/// `prod_{alpha in Delta} (1 - e^alpha)` over all roots against the sum
/// `sum_{w in W} prod_{beta in Delta, beta not in w(pi)} (1 - e^beta)`,
/// both as exact Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorReport {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub group_order: usize,
    pub matches: bool,
}

/// Evaluates the denominator comparison for a finite-type matrix.
pub fn denominator_identity(gcm: &Gcm) -> Result<DenominatorReport> {
    let n = gcm.rank();
    let positive: Vec<Vec<i64>> = all_positive_roots(gcm)?.into_iter().collect();
    let all_roots: Vec<Vec<i64>> = positive
        .iter()
        .cloned()
        .chain(positive.iter().map(|b| b.iter().map(|&x| -x).collect()))
        .collect();

    let mut lhs = LaurentPoly::one(n);
    for alpha in &all_roots {
        lhs = lhs.mul(&LaurentPoly::one_minus(n, alpha.clone()));
    }

    let zeros = vec![Q::zero(); n];
    let elems = group_elements_bounded(
        gcm,
        &zeros,
        &crate::cartan::all_indices(n),
        EnumerationMode::LengthBounded {
            max_len: usize::MAX,
        },
    )?;
    let mut rhs = LaurentPoly::zero(n);
    for e in &elems {
        let w_pi: BTreeSet<&Vec<i64>> = e.root_images.iter().collect();
        let mut term = LaurentPoly::one(n);
        for alpha in &all_roots {
            if !w_pi.contains(alpha) {
                term = term.mul(&LaurentPoly::one_minus(n, alpha.clone()));
            }
        }
        rhs = rhs.add(&term);
    }

    let matches = lhs == rhs;
    Ok(DenominatorReport {
        lhs,
        rhs,
        group_order: elems.len(),
        matches,
    })
}
