//! Symbolic descriptors of the simple components cut out by strong Shoda
//! pairs.
//!
//! The component of `QG` attached to a strong Shoda pair `(H, K)` is an
//! `r x r` matrix algebra (`r = [G:N]`, `N = N_G(K)`) over a crossed product
//! of `N/H` with the cyclotomic field `Q(zeta_m)`, `m = [H:K]`: each coset
//! `nH` acts by `zeta_m -> zeta_m^i` where `n^-1 h n = h^i mod K`, and the
//! twisting records the commutator exponents `[n, n'] = h^j mod K`.  All of
//! that is computed here exactly and stored symbolically: fields appear only
//! as a conductor together with the subgroup of `(Z/m)*` fixing them, never
//! as element arithmetic.
//!
//! On top of the generic crossed-product data, for nilpotent groups the
//! four-case classification of [`crate::primidem`] resolves the division
//! part completely: the component is a full matrix algebra over its center
//! except in the non-split quaternion case, where the division part is the
//! ordinary quaternion algebra `(-1, -1)` over the center and the Schur
//! index is 2.  A component is flagged *exceptional* when its unit-group
//! structure falls outside the reach of the generic generator constructions:
//! a non-commutative division algebra other than a totally definite
//! quaternion algebra, or a 2x2 matrix algebra over the rationals, over an
//! imaginary quadratic field, or over a non-commutative division algebra.

use std::collections::BTreeSet;
use std::sync::Arc;

use num::integer::gcd;

use crate::alg::rat_int;
use crate::arith::{euler_phi, multiplicative_order};
use crate::group::{nilpotency, quotient_in, right_transversal, GroupTable, Subgroup};
use crate::primidem::{classify_shape, dlog, CaseTag};
use crate::shoda::{strong_shoda_pairs, SspRecord};
use crate::{Error, Result};

/// A subfield of a cyclotomic field, given symbolically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterSpec {
    /// Conductor of the ambient cyclotomic field `Q(zeta_m)`.
    pub conductor: u64,
    /// Sorted exponents of the automorphisms `zeta -> zeta^i` fixing the
    /// field pointwise: a subgroup of `(Z/m)*` of order `phi(m) / [F:Q]`.
    /// For conductor 1 this is `[0]`, the lone residue.
    pub fixed_under: Vec<u64>,
}

impl CenterSpec {
    /// Degree of the field over the rationals.
    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor) / self.fixed_under.len() as u64
    }

    /// Whether the field is totally real, i.e. fixed by complex conjugation.
    pub fn totally_real(&self) -> bool {
        self.conductor <= 2 || self.fixed_under.contains(&(self.conductor - 1))
    }
}

/// The division part of a simple component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisionPart {
    /// The component is a full matrix algebra over its center.
    Field,
    /// The division part is the quaternion algebra `(-1, -1)` over the given
    /// center; Schur index 2.  The name is the classical one — the algebra
    /// is literally totally definite exactly when the center is totally
    /// real, which holds for 2-groups but not always (the center can be
    /// `Q(zeta_7)`); [`is_exceptional`] is where that distinction matters.
    TotallyDefiniteQuaternion(CenterSpec),
}

/// Everything the library knows about one simple component, symbolically.
#[derive(Debug, Clone)]
pub struct ComponentDescriptor {
    /// `[H:K]`: the conductor of the cyclotomic field `QH eps = Q(zeta_m)`.
    pub m: u64,
    /// `[G:N]`: the component is an `r x r` matrix algebra over `QN eps`.
    pub r: u64,
    /// Representatives in `G` of the cosets of `H` in `N`, ascending; the
    /// axes of `action_exponents` and `twisting_data` follow this order, and
    /// the first entry always represents `H` itself.
    pub coset_reps: Vec<u8>,
    /// For each coset representative `n`: the exponent `i` with
    /// `n^-1 h n = h^i mod K` — a faithful image of `N/H` in `(Z/m)*`.
    pub action_exponents: Vec<u64>,
    /// `twisting_data[x][y] = j` where `[n_x, n_y] = h^j mod K`.
    pub twisting_data: Vec<Vec<u64>>,
    /// The center of the component: the subfield of `Q(zeta_m)` fixed by the
    /// action exponents.
    pub center_spec: CenterSpec,
    /// Full matrix degree over the division part.
    pub matrix_degree: u64,
    pub division_part: DivisionPart,
    /// See [`is_exceptional`].
    pub exceptional: bool,
    /// 1 for matrix algebras over fields, 2 in the quaternion case.
    pub schur_index: u8,
}

impl ComponentDescriptor {
    /// Rational dimension of the division part.
    pub fn division_dimension(&self) -> u64 {
        let field = euler_phi(self.m) / self.action_exponents.len() as u64;
        match self.division_part {
            DivisionPart::Field => field,
            DivisionPart::TotallyDefiniteQuaternion(_) => 4 * field,
        }
    }

    /// Rational dimension of the whole component.
    pub fn dimension(&self) -> u64 {
        self.matrix_degree * self.matrix_degree * self.division_dimension()
    }
}

/// Compute the symbolic descriptor of the component of a strong Shoda pair.
///
/// The crossed-product data (`m`, `r`, action, twisting, center) is computed
/// for any group.  When `N = H` the crossed product is the field itself and
/// the descriptor is complete as-is; otherwise resolving the division part
/// uses the nilpotent case classification, so a non-nilpotent group with a
/// proper crossed product is refused with [`Error::NotNilpotent`].  Every
/// numeric claim in the result is re-verified against the idempotent:
/// inconsistencies surface as [`Error::Defect`].
pub fn describe_component(rec: &SspRecord) -> Result<ComponentDescriptor> {
    let group = rec.h.group().clone();
    let (embed, qm) = quotient_in(&group, &rec.normalizer, &rec.k)?;
    let q = qm.group.clone();
    let qt: &GroupTable = &q;
    let mut back = vec![u8::MAX; group.order()];
    for (i, &g) in embed.iter().enumerate() {
        back[g as usize] = i as u8;
    }
    let hbar_members: BTreeSet<u8> =
        rec.h.members().iter().map(|&g| qm.project(back[g as usize])).collect();
    let hbar_members: Vec<u8> = hbar_members.into_iter().collect();
    let hbar = Subgroup::from_members(&q, &hbar_members)?;
    let m = hbar.order() as u64;
    if m as usize * rec.k.order() != rec.h.order() {
        return Err(Error::Defect("conductor must equal [H:K]".into()));
    }
    let hgen = hbar
        .cyclic_generator()
        .ok_or_else(|| Error::Defect("H/K of a strong pair must be cyclic".into()))?;

    // Galois action of N/H on <hK>, one exponent per coset.
    let reps = right_transversal(&q, &hbar);
    let mut action = Vec::with_capacity(reps.len());
    for &x in &reps {
        let i = dlog(qt, hgen, qt.conj(hgen, x))
            .ok_or_else(|| Error::Defect("conjugation must stabilize H/K".into()))?;
        action.push(i);
    }
    // H/K is maximal abelian in N/K, so the action must be faithful and its
    // image a subgroup of (Z/m)*.
    let fixed: BTreeSet<u64> = action.iter().copied().collect();
    if fixed.len() != reps.len() {
        return Err(Error::Defect("the action of N/H on H/K must be faithful".into()));
    }
    for &i in &fixed {
        if m > 1 && gcd(i, m) != 1 {
            return Err(Error::Defect("action exponents must be units mod m".into()));
        }
        for &j in &fixed {
            if !fixed.contains(&(i * j % m)) {
                return Err(Error::Defect("action exponents must be closed under products".into()));
            }
        }
    }

    // Twisting: commutators of coset representatives, which land in H/K
    // because N/H embeds in the abelian (Z/m)*.
    let nh = reps.len();
    let mut twisting = vec![vec![0u64; nh]; nh];
    for (x, &rx) in reps.iter().enumerate() {
        for (y, &ry) in reps.iter().enumerate() {
            let c = qt.commutator(rx, ry);
            if !hbar.contains(c) {
                return Err(Error::Defect("coset commutators must land in H/K".into()));
            }
            twisting[x][y] = dlog(qt, hgen, c)
                .ok_or_else(|| Error::Defect("commutators must be powers of the generator".into()))?;
        }
    }

    let r = rec.transversal.len() as u64;
    if r as usize * rec.normalizer.order() != group.order() {
        return Err(Error::Defect("r must equal [G:N]".into()));
    }
    if euler_phi(m) % nh as u64 != 0 {
        return Err(Error::Defect("|action| must divide phi(m)".into()));
    }

    let center_spec = CenterSpec { conductor: m, fixed_under: fixed.into_iter().collect() };

    let (matrix_degree, division_part, schur_index) = if nh == 1 {
        // The crossed product collapses to Q(zeta_m) itself; no nilpotency
        // needed.
        (r, DivisionPart::Field, 1u8)
    } else {
        if !nilpotency(&group).nilpotent {
            return Err(Error::NotNilpotent(
                "resolving the division part of a proper crossed product".into(),
            ));
        }
        let gh = (group.order() / rec.h.order()) as u64;
        match classify_shape(rec)?.tag {
            CaseTag::C2i => {
                if gh % 2 != 0 {
                    return Err(Error::Defect("[G:H] must be even in the quaternion case".into()));
                }
                (gh / 2, DivisionPart::TotallyDefiniteQuaternion(center_spec.clone()), 2u8)
            }
            _ => (gh, DivisionPart::Field, 1u8),
        }
    };

    let mut desc = ComponentDescriptor {
        m,
        r,
        coset_reps: reps.iter().map(|&x| embed[qm.lift(x) as usize]).collect(),
        action_exponents: action,
        twisting_data: twisting,
        center_spec,
        matrix_degree,
        division_part,
        exceptional: false,
        schur_index,
    };

    // The descriptor must account for the component exactly: |G| times the
    // identity coefficient of a central idempotent is the component's
    // rational dimension.
    let claimed = rat_int(desc.dimension() as i64);
    if rat_int(group.order() as i64) * rec.e.coeff(0) != claimed {
        return Err(Error::Defect("descriptor dimension disagrees with the idempotent".into()));
    }

    desc.exceptional = is_exceptional(&desc);
    Ok(desc)
}

/// Whether a resolved component is *exceptional*: a non-commutative division
/// algebra other than a totally definite quaternion algebra, or a 2x2 matrix
/// algebra over the rationals, over an imaginary quadratic field, or over a
/// non-commutative division algebra.  Unit groups of orders in these
/// components are the ones the generic generator constructions cannot reach.
pub fn is_exceptional(desc: &ComponentDescriptor) -> bool {
    match &desc.division_part {
        DivisionPart::Field => {
            // Commutative division part: only the 2x2 cases can bite, over Q
            // itself or over an imaginary quadratic field (real quadratic is
            // fine).
            desc.matrix_degree == 2
                && (desc.center_spec.degree() == 1
                    || (desc.center_spec.degree() == 2 && !desc.center_spec.totally_real()))
        }
        DivisionPart::TotallyDefiniteQuaternion(center) => match desc.matrix_degree {
            // A quaternion division algebra is totally definite exactly when
            // its center is totally real; anything else is an exceptional
            // division algebra.
            1 => !center.totally_real(),
            // 2x2 over a non-commutative division algebra.
            2 => true,
            _ => false,
        },
    }
}

/// Outcome of checking the Schur-index bound on every component of a
/// nilpotent group.
#[derive(Debug)]
pub struct RoquetteReport {
    pub components: Vec<ComponentDescriptor>,
    /// How many components have a quaternion division part.
    pub quaternion_components: usize,
    /// Violations of the bound or of the internal cross-checks.  The bound
    /// is a theorem, so this must come back empty; it is data rather than a
    /// panic so a regression shows up as a legible test failure.
    pub violations: Vec<String>,
}

/// Describe every component of a nilpotent group and check that each Schur
/// index is at most 2, that index 2 happens exactly on quaternion division
/// parts, and that the case classification agrees with the independent
/// sum-of-two-squares criterion (the quaternion part of a component with odd
/// part `m` splits exactly when `m > 1` and the order of 2 mod `m` is even
/// or the 2-part is at least 8).
pub fn roquette_check(group: &Arc<GroupTable>) -> Result<RoquetteReport> {
    if !nilpotency(group).nilpotent {
        return Err(Error::NotNilpotent("the Schur-index bound is for nilpotent groups".into()));
    }
    let summary = strong_shoda_pairs(group)?;
    if !summary.complete {
        return Err(Error::Defect("a nilpotent group must be strongly monomial".into()));
    }
    let mut components = Vec::new();
    let mut quaternion_components = 0usize;
    let mut violations = Vec::new();
    for rec in &summary.records {
        let desc = describe_component(rec)?;
        let quat = matches!(desc.division_part, DivisionPart::TotallyDefiniteQuaternion(_));
        if desc.schur_index > 2 {
            violations.push(format!(
                "component m={} r={}: Schur index {} exceeds 2",
                desc.m, desc.r, desc.schur_index
            ));
        }
        if (desc.schur_index == 2) != quat {
            violations.push(format!(
                "component m={} r={}: Schur index {} disagrees with the division part",
                desc.m, desc.r, desc.schur_index
            ));
        }
        let case = classify_shape(rec)?;
        if (case.tag == CaseTag::C2i) != quat {
            violations.push(format!(
                "component m={} r={}: case tag disagrees with the division part",
                desc.m, desc.r
            ));
        }
        if case.tag == CaseTag::C2i || case.tag == CaseTag::C2ii {
            let s = case.n - case.k;
            let splits = case.m > 1
                && (s >= 3 || multiplicative_order(2, case.m) % 2 == 0);
            if splits != (case.tag == CaseTag::C2ii) {
                violations.push(format!(
                    "component m={} r={}: sum-of-squares criterion disagrees with the case split",
                    desc.m, desc.r
                ));
            }
        }
        if quat {
            quaternion_components += 1;
        }
        components.push(desc);
    }
    Ok(RoquetteReport { components, quaternion_components, violations })
}
