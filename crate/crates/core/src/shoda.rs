//! Strong Shoda pairs and the primitive central idempotents they generate.
//!
//! For a pair of subgroups `K <= H <= G` with `K` normal in `H` and `H/K`
//! cyclic, `eps(H, K)` is the idempotent of QH cutting out the faithful part
//! of the `H/K`-grading: `K-hat` times the product of `(K-hat - M-hat)` over
//! the minimal normal subgroups `M/K` of `H/K`.  Summing the distinct
//! G-conjugates of `eps` yields a central element `e(G, H, K)`; for a strong
//! Shoda pair those conjugates are orthogonal and the sum is a primitive
//! central idempotent of QG.  Every property claimed here is re-checked with
//! exact arithmetic while the records are built.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::alg::{are_orthogonal, AlgElement, Rational};
use crate::group::{
    centralizer, generated, is_normal, is_normal_in, minimal_normal_subgroups, normalizer,
    quotient, quotient_in, right_transversal, subgroup_table, subgroups, GroupTable, Mask,
    Subgroup,
};
use crate::{Error, Result};

/// One verified strong Shoda pair together with everything derived from it.
#[derive(Clone)]
pub struct SspRecord {
    pub h: Subgroup,
    pub k: Subgroup,
    /// `N = N_G(K)`; verified to equal the stabilizer of `eps` under
    /// conjugation.
    pub normalizer: Subgroup,
    /// Right-coset representatives of `normalizer`, ascending; conjugating
    /// `eps` by these enumerates its distinct conjugates exactly once.
    pub transversal: Vec<u8>,
    pub eps: AlgElement,
    /// The primitive central idempotent: sum of the conjugates of `eps`.
    pub e: AlgElement,
}

/// Output of the full strong-Shoda-pair scan.
pub struct SspSummary {
    pub records: Vec<SspRecord>,
    /// Sum of all record idempotents.
    pub sum: AlgElement,
    /// True when the records account for the whole of QG (their sum is 1);
    /// this is exactly the strongly monomial case.
    pub complete: bool,
}

fn check_same_group(group: &Arc<GroupTable>, subs: &[&Subgroup]) -> Result<()> {
    if subs.iter().all(|s| Arc::ptr_eq(s.group(), group)) {
        Ok(())
    } else {
        Err(Error::MixedGroups)
    }
}

/// Smallest positive `i` with `x^i` in `K`: the order of `xK` in `H/K`.
fn coset_order(t: &GroupTable, x: u8, k: &Subgroup) -> usize {
    let mut p = x;
    let mut i = 1;
    while !k.contains(p) {
        p = t.mul(p, x);
        i += 1;
    }
    i
}

fn quotient_is_cyclic(t: &GroupTable, h: &Subgroup, k: &Subgroup) -> bool {
    let idx = h.order() / k.order();
    h.members().iter().any(|&x| coset_order(t, x, k) == idx)
}

/// `eps(H, K)`: requires `K` normal in `H`.  For `H = K` this is `K-hat`;
/// otherwise the product of `(K-hat - M-hat)` over the minimal normal
/// subgroups `M/K` of `H/K`, computed in QG via preimages.
pub fn epsilon(group: &Arc<GroupTable>, h: &Subgroup, k: &Subgroup) -> Result<AlgElement> {
    check_same_group(group, &[h, k])?;
    if !k.is_subgroup_of(h) {
        return Err(Error::NotASubgroup("K must be contained in H".into()));
    }
    if !is_normal_in(k, h) {
        return Err(Error::NotNormal);
    }
    let khat = AlgElement::hat(k);
    if h.order() == k.order() {
        return Ok(khat);
    }
    let (ht, embed) = subgroup_table(group, h)?;
    let mut back = vec![u8::MAX; group.order()];
    for (i, &m) in embed.iter().enumerate() {
        back[m as usize] = i as u8;
    }
    let k_members: Vec<u8> = k.members().iter().map(|&x| back[x as usize]).collect();
    let k_ht = Subgroup::from_members(&ht, &k_members)?;
    let qm = quotient(&ht, &k_ht)?;
    let mut eps = khat.clone();
    for mbar in minimal_normal_subgroups(&qm.group) {
        let m_in_ht = qm.preimage(&mbar);
        let m_members: Vec<u8> = m_in_ht.members().iter().map(|&x| embed[x as usize]).collect();
        let m_sub = Subgroup::from_members(group, &m_members)?;
        eps = eps.mul(&khat.sub(&AlgElement::hat(&m_sub))?)?;
    }
    Ok(eps)
}

/// `e(G, H, K)`: the sum of the *distinct* conjugates of `eps(H, K)`,
/// deduplicated explicitly so the result is correct for any admissible pair,
/// strong or not.
pub fn e_sum(group: &Arc<GroupTable>, h: &Subgroup, k: &Subgroup) -> Result<AlgElement> {
    let eps = epsilon(group, h, k)?;
    let mut seen: BTreeSet<BTreeMap<u8, Rational>> = BTreeSet::new();
    let mut acc = AlgElement::zero(group);
    for g in group.elements() {
        let c = eps.conj(g);
        if seen.insert(c.coeffs().clone()) {
            acc = acc.add(&c)?;
        }
    }
    Ok(acc)
}

/// The elementwise Shoda criterion for irreducibility of the induced
/// character: `K` normal in `H` with `H/K` cyclic, and every `g` outside `H`
/// moves some `h` by a commutator that lands in `H` but outside `K`.
pub fn is_shoda_pair(group: &Arc<GroupTable>, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    check_same_group(group, &[h, k])?;
    let t: &GroupTable = group;
    if !k.is_subgroup_of(h) || !is_normal_in(k, h) || !quotient_is_cyclic(t, h, k) {
        return Ok(false);
    }
    for g in group.elements() {
        if h.contains(g) {
            continue;
        }
        let witness = h.members().iter().any(|&hh| {
            let c = t.commutator(hh, g);
            h.contains(c) && !k.contains(c)
        });
        if !witness {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full strong-Shoda-pair check.  On success returns the verified record;
/// structural failures yield `None`.
pub fn strong_pair_record(
    group: &Arc<GroupTable>,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<Option<SspRecord>> {
    check_same_group(group, &[h, k])?;
    let t: &GroupTable = group;
    if !k.is_subgroup_of(h) {
        return Ok(None);
    }
    let n = normalizer(group, k);
    if !h.is_subgroup_of(&n) || !is_normal_in(h, &n) {
        return Ok(None);
    }
    // K is normal in N by construction, hence normal in H.
    if !quotient_is_cyclic(t, h, k) {
        return Ok(None);
    }
    // H/K must be maximal abelian in N/K: nobody outside H centralizes H mod K.
    for &x in n.members() {
        if h.contains(x) {
            continue;
        }
        if h.members().iter().all(|&hh| k.contains(t.commutator(x, hh))) {
            return Ok(None);
        }
    }
    let eps = epsilon(group, h, k)?;
    if eps.is_zero() {
        return Err(Error::Defect("eps(H, K) must be a nonzero idempotent".into()));
    }
    let transversal = right_transversal(group, &n);
    let conjugates: Vec<AlgElement> = transversal.iter().map(|&g| eps.conj(g)).collect();
    for (i, c) in conjugates.iter().enumerate() {
        if i > 0 && !are_orthogonal(&conjugates[0], c)? {
            return Ok(None);
        }
    }
    // The stabilizer of eps must be exactly N (orthogonality already rules
    // out anything larger; N-invariance is structural, so its failure would
    // be a bug, not a property of the pair).
    for &x in n.members() {
        if eps.conj(x) != eps {
            return Err(Error::Defect("eps(H, K) must be invariant under N_G(K)".into()));
        }
    }
    let mut e = AlgElement::zero(group);
    for c in &conjugates {
        e = e.add(c)?;
    }
    if !e.is_idempotent()? || !e.is_central() {
        return Err(Error::Defect("sum of orthogonal conjugates must be a central idempotent".into()));
    }
    Ok(Some(SspRecord { h: h.clone(), k: k.clone(), normalizer: n, transversal, eps, e }))
}

pub fn is_strong_shoda_pair(
    group: &Arc<GroupTable>,
    h: &Subgroup,
    k: &Subgroup,
) -> Result<bool> {
    Ok(strong_pair_record(group, h, k)?.is_some())
}

/// Representative-selection key: largest `H` first, then lexicographic.
fn record_key(r: &SspRecord) -> (usize, Vec<u8>, Vec<u8>) {
    (
        usize::MAX - r.h.order(),
        r.h.members().to_vec(),
        r.k.members().to_vec(),
    )
}

/// Scan the subgroup lattice for all strong Shoda pairs, deduplicate pairs
/// producing the same central idempotent, and verify global orthogonality.
///
/// The scan runs K-outer: for each subgroup `K`, candidate `H` are exactly
/// the preimages of cyclic, normal, self-centralizing subgroups of
/// `N_G(K)/K`, which prunes the quadratic pair scan to a handful of full
/// checks per `K`.
pub fn strong_shoda_pairs(group: &Arc<GroupTable>) -> Result<SspSummary> {
    let subs = subgroups(group);
    let mut raw: Vec<SspRecord> = Vec::new();
    for k in &subs {
        let n = normalizer(group, k);
        // Work in Q = N/K.
        let (embed, qm) = quotient_in(group, &n, k)?;
        let q = &qm.group;
        let mut seen_h: BTreeSet<Mask> = BTreeSet::new();
        for qgen in q.elements() {
            let hbar = generated(q, &[qgen]);
            if !seen_h.insert(hbar.mask()) {
                continue;
            }
            if centralizer(q, &[qgen]).order() != hbar.order() {
                continue;
            }
            if !is_normal(&hbar) {
                continue;
            }
            let h_parent = qm.preimage(&hbar);
            let h_members: Vec<u8> =
                h_parent.members().iter().map(|&x| embed[x as usize]).collect();
            let h_sub = Subgroup::from_members(group, &h_members)?;
            if let Some(rec) = strong_pair_record(group, &h_sub, k)? {
                raw.push(rec);
            }
        }
    }

    // Group by idempotent, keep the canonical representative of each.
    let mut buckets: BTreeMap<BTreeMap<u8, Rational>, Vec<SspRecord>> = BTreeMap::new();
    for rec in raw {
        buckets.entry(rec.e.coeffs().clone()).or_default().push(rec);
    }
    let mut records: Vec<SspRecord> = buckets
        .into_values()
        .map(|mut v| {
            v.sort_by_key(record_key);
            v.into_iter().next().expect("bucket is nonempty")
        })
        .collect();
    records.sort_by_key(record_key);

    let mut sum = AlgElement::zero(group);
    for r in &records {
        sum = sum.add(&r.e)?;
    }
    for i in 0..records.len() {
        for j in i + 1..records.len() {
            if !are_orthogonal(&records[i].e, &records[j].e)? {
                return Err(Error::Defect(
                    "distinct primitive central idempotents must be orthogonal".into(),
                ));
            }
        }
    }
    let complete = sum.is_one();
    Ok(SspSummary { records, sum, complete })
}

/// Evaluate a rational combination `sum c_i * e(G, H_i, K_i)` and report
/// whether it is a central idempotent.
pub fn verify_central_idempotent_combination(
    group: &Arc<GroupTable>,
    terms: &[(Rational, Subgroup, Subgroup)],
) -> Result<(AlgElement, bool)> {
    let mut acc = AlgElement::zero(group);
    for (c, h, k) in terms {
        acc = acc.add(&e_sum(group, h, k)?.scale(c))?;
    }
    let ok = acc.is_idempotent()? && acc.is_central();
    Ok((acc, ok))
}
