//! Explicit units of the integral group ring `ZG`, each shipped with its
//! exact two-sided inverse.
//!
//! Four constructions are implemented: Bass cyclic units and their central
//! iterates up the upper central series, bicyclic units, the triangular
//! generator families `V+` / `V-` attached to a verified matrix-unit system,
//! and Sanov free pairs inside non-division components.  A certificate never
//! leaves this module unverified: `u * u_inv = u_inv * u = 1` holds exactly
//! and both sides have integer coefficients.

use std::sync::Arc;

use num::integer::gcd;
use num::BigInt;

use crate::alg::{inverse_in_zg, rat_int, AlgElement, Rational};
use crate::arith::euler_phi;
use crate::group::{nilpotency, GroupTable};
use crate::primidem::{matrix_units, primitive_idempotents, MatrixUnitSystem};
use crate::shoda::{strong_shoda_pairs, SspRecord};
use crate::{Error, Result, RunConfig};

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitKind {
    Bass,
    BassCentral,
    Bicyclic,
    VPlus,
    VMinus,
    FreePairMember,
}

/// The parameters a certificate was built from, kept so a suite can be
/// reproduced and audited.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    /// Group element the construction is based on.
    pub g: Option<u8>,
    /// Bass exponent.
    pub k: Option<u64>,
    /// Second element of a bicyclic unit.
    pub h: Option<u8>,
    /// Index of the strong-pair component inside a suite.
    pub component: Option<usize>,
    /// Positions in the component's transversal order.
    pub t: Option<usize>,
    pub t_prime: Option<usize>,
    /// Exponent of the cyclic generator inserted between the matrix units.
    pub j: Option<u64>,
}

/// A unit of `ZG` together with its verified exact inverse.
#[derive(Clone)]
pub struct UnitCertificate {
    pub u: AlgElement,
    pub u_inv: AlgElement,
    pub kind: UnitKind,
    pub provenance: Provenance,
}

impl UnitCertificate {
    /// Whether the construction collapsed to the identity.
    pub fn is_trivial(&self) -> bool {
        self.u.is_one()
    }
}

/// Certification gate: integrality of both sides plus the two-sided product
/// check, with the inverse found by exact linear algebra.
fn certify(u: AlgElement, kind: UnitKind, provenance: Provenance) -> Result<UnitCertificate> {
    let u_inv = inverse_in_zg(&u)?;
    Ok(UnitCertificate { u, u_inv, kind, provenance })
}

/// As `certify`, but with a closed-form inverse candidate that only needs
/// the product checks (used where the coefficients are too large for the
/// linear solve to be a sensible route).
fn certify_with_inverse(
    u: AlgElement,
    u_inv: AlgElement,
    kind: UnitKind,
    provenance: Provenance,
) -> Result<UnitCertificate> {
    if !u.is_integral() || !u_inv.is_integral() {
        return Err(Error::NotAUnitNonIntegral);
    }
    if !u.mul(&u_inv)?.is_one() || !u_inv.mul(&u)?.is_one() {
        return Err(Error::Defect("closed-form inverse failed the two-sided product check".into()));
    }
    Ok(UnitCertificate { u, u_inv, kind, provenance })
}

/// The Bass cyclic unit `b(g, k) = (1 + g + ... + g^(k-1))^phi(n) +
/// (1 - k^phi(n)) ghat` for `n = ord(g)`, with `ghat` the averaged sum over
/// `<g>` (so the correction term is integral by Euler's theorem).
pub fn bass_unit(group: &Arc<GroupTable>, g: u8, k: u64) -> Result<UnitCertificate> {
    let t: &GroupTable = group;
    let n = t.order_of(g) as u64;
    if k <= 1 || k >= n {
        return Err(Error::BadUnitParams(format!("need 1 < k < ord(g) = {}, got k = {}", n, k)));
    }
    if gcd(k, n) != 1 {
        return Err(Error::BadUnitParams(format!("k = {} is not coprime to ord(g) = {}", k, n)));
    }
    let phi = euler_phi(n);
    let mut partial = AlgElement::zero(group);
    for j in 0..k {
        partial = partial.add(&AlgElement::from_element(group, t.power(g, j as i64)))?;
    }
    let correction = Rational::from_integer(BigInt::from(1) - BigInt::from(k).pow(phi as u32));
    let u = partial.pow(phi)?.add(&AlgElement::cyclic_hat(group, g).scale(&correction))?;
    certify(u, UnitKind::Bass, Provenance { g: Some(g), k: Some(k), ..Default::default() })
}

/// Push a Bass unit into the center: starting from `b(g, k)`, repeatedly
/// take the product of all conjugates over the next term of the upper
/// central series.  For a group of class `c` the result after `c - 1` rounds
/// is central, which is re-verified here by a full conjugation scan.
///
/// The inverse is accumulated as the reversed product of the conjugated
/// inverses — the coefficients of the iterated product grow far beyond what
/// the linear-algebra route handles gracefully — and then put through the
/// same exact two-sided check as every other certificate.
pub fn central_bass_unit(group: &Arc<GroupTable>, g: u8, k: u64) -> Result<UnitCertificate> {
    let nil = nilpotency(group);
    if !nil.nilpotent {
        return Err(Error::NotNilpotent("central Bass units iterate the upper central series".into()));
    }
    let base = bass_unit(group, g, k)?;
    let mut u = base.u;
    let mut u_inv = base.u_inv;
    for zv in nil.upper_central.iter().skip(1) {
        let mut prod = AlgElement::one(group);
        let mut prod_inv = AlgElement::one(group);
        for &x in zv.members() {
            prod = prod.mul(&u.conj(x))?;
            prod_inv = u_inv.conj(x).mul(&prod_inv)?;
        }
        u = prod;
        u_inv = prod_inv;
    }
    for x in group.elements() {
        if u.conj(x) != u {
            return Err(Error::Defect("iterated Bass unit failed the centrality scan".into()));
        }
    }
    certify_with_inverse(
        u,
        u_inv,
        UnitKind::BassCentral,
        Provenance { g: Some(g), k: Some(k), ..Default::default() },
    )
}

/// The bicyclic unit `u_(g,h) = 1 + (1 - g) h ghat |<g>|`.  Its offset is
/// annihilated on the right by the averaging, so it squares to zero and the
/// unit is trivial exactly when `h` normalizes `<g>`.
pub fn bicyclic_unit(group: &Arc<GroupTable>, g: u8, h: u8) -> Result<UnitCertificate> {
    let t: &GroupTable = group;
    let n = t.order_of(g) as i64;
    let gsum = AlgElement::cyclic_hat(group, g).scale(&rat_int(n));
    let offset = AlgElement::one(group)
        .sub(&AlgElement::from_element(group, g))?
        .mul(&AlgElement::from_element(group, h))?
        .mul(&gsum)?;
    if !offset.mul(&offset)?.is_zero() {
        return Err(Error::Defect("bicyclic offset must square to zero".into()));
    }
    let u = AlgElement::one(group).add(&offset)?;
    certify(u, UnitKind::Bicyclic, Provenance { g: Some(g), h: Some(h), ..Default::default() })
}

/// Upper (`Plus`) or lower (`Minus`) triangular family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The generator of `H/K` the `V` families insert powers of: the product of
/// the lifted 2-part and odd-part generators.
fn hk_generator(sys: &MatrixUnitSystem) -> (u8, u64) {
    let t: &GroupTable = sys.beta_e.group();
    (t.mul(sys.case.a2, sys.case.a2p), sys.case.m << sys.case.n)
}

/// Least `l >= 1` with `a^l eps` central in `QN eps`, found by direct scan.
fn least_central_power(sys: &MatrixUnitSystem, a: u8, hk_order: u64) -> Result<u64> {
    let group = sys.beta_e.group().clone();
    let t: &GroupTable = &group;
    let eps = &sys.ssp.eps;
    for l in 1..=hk_order {
        let z = AlgElement::from_element(&group, t.power(a, l as i64));
        let mut central = true;
        for &x in sys.ssp.normalizer.members() {
            let xe = AlgElement::from_element(&group, x);
            if z.mul(&xe)?.mul(eps)? != xe.mul(&z)?.mul(eps)? {
                central = false;
                break;
            }
        }
        if central {
            return Ok(l);
        }
    }
    Err(Error::Defect("some power of the H/K generator must be central".into()))
}

/// The triangular generator family of one component: all units
/// `1 + |G| t^-1 beta_e a^j t'` with `a^j` ranging over the subgroup of
/// central powers and `(t, t')` over transversal positions with `t' > t`
/// (`Plus`) or `t' < t` (`Minus`), in lexicographic `(t, t', j)` order.
/// Empty when the component is a division algebra.
pub fn v_generators(sys: &MatrixUnitSystem, sign: Sign) -> Result<Vec<UnitCertificate>> {
    let d = sys.t_e.len();
    if d == 1 {
        return Ok(Vec::new());
    }
    let group = sys.beta_e.group().clone();
    let t: &GroupTable = &group;
    let (a, hk_order) = hk_generator(sys);
    if !sys.ssp.k.contains(t.power(a, hk_order as i64)) {
        return Err(Error::Defect("the H/K generator must have order [H:K] mod K".into()));
    }
    let l = least_central_power(sys, a, hk_order)?;
    if hk_order % l != 0 {
        return Err(Error::Defect("central powers must form a subgroup of H/K".into()));
    }
    let kind = match sign {
        Sign::Plus => UnitKind::VPlus,
        Sign::Minus => UnitKind::VMinus,
    };
    let gscale = rat_int(group.order() as i64);
    let one = AlgElement::one(&group);
    let mut out = Vec::new();
    for ti in 0..d {
        for tj in 0..d {
            let keep = match sign {
                Sign::Plus => tj > ti,
                Sign::Minus => tj < ti,
            };
            if !keep {
                continue;
            }
            for s in 0..hk_order / l {
                let j = l * s;
                let left = AlgElement::from_element(&group, t.inv(sys.t_e[ti]));
                let right = AlgElement::from_element(
                    &group,
                    t.mul(t.power(a, j as i64), sys.t_e[tj]),
                );
                let offset = left.mul(&sys.beta_e)?.mul(&right)?.scale(&gscale);
                out.push(certify(
                    one.add(&offset)?,
                    kind,
                    Provenance {
                        g: Some(a),
                        t: Some(ti),
                        t_prime: Some(tj),
                        j: Some(j),
                        ..Default::default()
                    },
                )?);
            }
        }
    }
    Ok(out)
}

/// A Sanov pair in a non-division component: `1 + |G| E_(t t')` and
/// `1 + |G| E_(t' t)`.  Certification extracts the four matrix-unit
/// coordinates of each unit over the `{t, t'}` corner and demands exactly
/// the integral matrices `[[1, |G|], [0, 1]]` and `[[1, 0], [|G|, 1]]`.
pub fn free_pair(
    sys: &MatrixUnitSystem,
    t_idx: usize,
    tp_idx: usize,
) -> Result<(UnitCertificate, UnitCertificate)> {
    let d = sys.t_e.len();
    if d < 2 {
        return Err(Error::BadUnitParams("a division component has no free pairs".into()));
    }
    if t_idx == tp_idx || t_idx >= d || tp_idx >= d {
        return Err(Error::BadUnitParams(
            "a free pair needs two distinct transversal positions".into(),
        ));
    }
    let units = matrix_units(sys)?;
    let group = sys.beta_e.group().clone();
    let gscale = rat_int(group.order() as i64);
    let one = AlgElement::one(&group);
    let zero = AlgElement::zero(&group);
    let e_tt = &units[t_idx][t_idx];
    let e_pp = &units[tp_idx][tp_idx];
    let e_tp = &units[t_idx][tp_idx];
    let e_pt = &units[tp_idx][t_idx];
    let u1 = one.add(&e_tp.scale(&gscale))?;
    let u2 = one.add(&e_pt.scale(&gscale))?;
    let coords = [
        (e_tt.mul(&u1)?.mul(e_tt)?, e_tt.clone()),
        (e_pp.mul(&u1)?.mul(e_pp)?, e_pp.clone()),
        (e_tt.mul(&u1)?.mul(e_pp)?, e_tp.scale(&gscale)),
        (e_pp.mul(&u1)?.mul(e_tt)?, zero.clone()),
        (e_tt.mul(&u2)?.mul(e_tt)?, e_tt.clone()),
        (e_pp.mul(&u2)?.mul(e_pp)?, e_pp.clone()),
        (e_pp.mul(&u2)?.mul(e_tt)?, e_pt.scale(&gscale)),
        (e_tt.mul(&u2)?.mul(e_pp)?, zero),
    ];
    for (got, want) in &coords {
        if got != want {
            return Err(Error::Defect("free pair failed the Sanov coordinate check".into()));
        }
    }
    Ok((
        certify(
            u1,
            UnitKind::FreePairMember,
            Provenance { t: Some(t_idx), t_prime: Some(tp_idx), ..Default::default() },
        )?,
        certify(
            u2,
            UnitKind::FreePairMember,
            Provenance { t: Some(tp_idx), t_prime: Some(t_idx), ..Default::default() },
        )?,
    ))
}

/// Witness that one triangular family generates a nilpotent group: every
/// product of `|T_e|` offsets `(u - 1)`, over all index sequences with
/// repetition, must vanish.  The offsets are re-derived from each
/// certificate's provenance against `sys`, so certificates from another
/// component — or from the other sign — are rejected rather than silently
/// checked against the wrong system.
pub fn nilpotency_certificate(gens: &[UnitCertificate], sys: &MatrixUnitSystem) -> Result<bool> {
    if gens.is_empty() {
        return Ok(true);
    }
    let kind = gens[0].kind;
    if kind != UnitKind::VPlus && kind != UnitKind::VMinus {
        return Err(Error::MixedCertificates);
    }
    let group = sys.beta_e.group().clone();
    let t: &GroupTable = &group;
    let (a, _) = hk_generator(sys);
    let gscale = rat_int(group.order() as i64);
    let one = AlgElement::one(&group);
    let d = sys.t_e.len();
    let mut offsets = Vec::with_capacity(gens.len());
    for cert in gens {
        if cert.kind != kind {
            return Err(Error::MixedCertificates);
        }
        let (ti, tj, j) = match (cert.provenance.t, cert.provenance.t_prime, cert.provenance.j) {
            (Some(ti), Some(tj), Some(j)) if ti < d && tj < d => (ti, tj, j),
            _ => return Err(Error::MixedCertificates),
        };
        let ordered = match kind {
            UnitKind::VPlus => tj > ti,
            _ => tj < ti,
        };
        if !ordered {
            return Err(Error::MixedCertificates);
        }
        let left = AlgElement::from_element(&group, t.inv(sys.t_e[ti]));
        let right = AlgElement::from_element(&group, t.mul(t.power(a, j as i64), sys.t_e[tj]));
        let expected = left.mul(&sys.beta_e)?.mul(&right)?.scale(&gscale);
        if cert.u.sub(&one)? != expected {
            return Err(Error::MixedCertificates);
        }
        offsets.push(expected);
    }
    fn extensions_vanish(
        offsets: &[AlgElement],
        prefix: &AlgElement,
        remaining: usize,
    ) -> Result<bool> {
        if prefix.is_zero() {
            return Ok(true);
        }
        if remaining == 0 {
            return Ok(false);
        }
        for o in offsets {
            if !extensions_vanish(offsets, &prefix.mul(o)?, remaining - 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    for o in &offsets {
        if !extensions_vanish(&offsets, o, d - 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The §-style generator batch for one nilpotent group: all central Bass
/// units, the `V+` / `V-` families of every component, and one Sanov pair
/// per non-division component.
pub struct GeneratorSuite {
    pub central: Vec<UnitCertificate>,
    /// The component records the per-component lists are aligned with.
    pub records: Vec<SspRecord>,
    pub vplus: Vec<Vec<UnitCertificate>>,
    pub vminus: Vec<Vec<UnitCertificate>>,
    pub free_pairs: Vec<(UnitCertificate, UnitCertificate)>,
}

/// Assemble and certify the whole suite for a nilpotent group.
pub fn generator_suite(group: &Arc<GroupTable>, cfg: &RunConfig) -> Result<GeneratorSuite> {
    if !nilpotency(group).nilpotent {
        return Err(Error::NotNilpotent("the generator suite is the nilpotent construction".into()));
    }
    let t: &GroupTable = group;
    let mut central = Vec::new();
    for g in group.elements().filter(|&g| g != 0) {
        let n = t.order_of(g) as u64;
        for k in 2..n {
            if gcd(k, n) == 1 {
                central.push(central_bass_unit(group, g, k)?);
            }
        }
    }
    let summary = strong_shoda_pairs(group)?;
    if !summary.complete {
        return Err(Error::Defect("a nilpotent group must be strongly monomial".into()));
    }
    let mut vplus = Vec::new();
    let mut vminus = Vec::new();
    let mut free_pairs = Vec::new();
    for (idx, rec) in summary.records.iter().enumerate() {
        let sys = primitive_idempotents(rec, cfg)?;
        let mut vp = v_generators(&sys, Sign::Plus)?;
        let mut vm = v_generators(&sys, Sign::Minus)?;
        for cert in vp.iter_mut().chain(vm.iter_mut()) {
            cert.provenance.component = Some(idx);
        }
        if sys.t_e.len() >= 2 {
            let (mut f1, mut f2) = free_pair(&sys, 0, 1)?;
            f1.provenance.component = Some(idx);
            f2.provenance.component = Some(idx);
            free_pairs.push((f1, f2));
        }
        vplus.push(vp);
        vminus.push(vm);
    }
    Ok(GeneratorSuite { central, records: summary.records, vplus, vminus, free_pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, product, quaternion, sl23};
    use crate::RunConfig;

    fn arc(t: GroupTable) -> Arc<GroupTable> {
        Arc::new(t)
    }

    /// The scan record whose component has the given rational dimension.
    fn record_of_dimension(g: &Arc<GroupTable>, dim: i64) -> SspRecord {
        let summary = strong_shoda_pairs(g).unwrap();
        summary
            .records
            .into_iter()
            .find(|r| rat_int(g.order() as i64) * r.e.coeff(0) == rat_int(dim))
            .expect("no component of that dimension")
    }

    fn element_of_order(g: &Arc<GroupTable>, n: usize) -> u8 {
        let t: &GroupTable = g;
        g.elements().find(|&x| t.order_of(x) == n).expect("no element of that order")
    }

    #[test]
    fn bass_units_match_their_closed_forms() {
        let c5 = arc(cyclic(5).unwrap());
        let cert = bass_unit(&c5, 1, 2).unwrap();
        let expected =
            AlgElement::from_integer_coeffs(&c5, &[(0, -2), (1, 1), (2, 3), (3, 1), (4, -2)])
                .unwrap();
        assert_eq!(cert.u, expected);
        assert_eq!(cert.u.augmentation(), rat_int(1));
        assert!(cert.u.mul(&cert.u_inv).unwrap().is_one());

        // Order 4 with k = 3 collapses to the trivial unit g^2.
        let c4 = arc(cyclic(4).unwrap());
        let cert = bass_unit(&c4, 1, 3).unwrap();
        assert_eq!(cert.u, AlgElement::from_element(&c4, 2));
        assert_eq!(cert.u.augmentation(), rat_int(1));
    }

    #[test]
    fn bass_unit_guards_reject_bad_parameters() {
        let c6 = arc(cyclic(6).unwrap());
        assert!(matches!(bass_unit(&c6, 1, 1), Err(Error::BadUnitParams(_))));
        assert!(matches!(bass_unit(&c6, 1, 6), Err(Error::BadUnitParams(_))));
        assert!(matches!(bass_unit(&c6, 1, 2), Err(Error::BadUnitParams(_))));
        assert!(bass_unit(&c6, 1, 5).is_ok());
    }

    #[test]
    fn central_bass_units_really_are_central() {
        // Q8 has class 2; the only admissible k for its order-4 elements is
        // 3, whose Bass unit is the central g^2, so the iterated product
        // collapses to 1 — still a valid (trivial) certificate.
        let q8 = arc(quaternion(8).unwrap());
        let g = element_of_order(&q8, 4);
        let cert = central_bass_unit(&q8, g, 3).unwrap();
        assert!(cert.u.is_central());
        assert!(cert.is_trivial());

        // In an abelian group the first level is already central and the
        // unit stays genuinely nontrivial.
        let c5 = arc(cyclic(5).unwrap());
        let cert = central_bass_unit(&c5, 1, 2).unwrap();
        assert!(!cert.is_trivial());
        assert_eq!(cert.kind, UnitKind::BassCentral);
        assert!(cert.u.is_central());

        assert!(matches!(
            central_bass_unit(&arc(sl23().unwrap()), 1, 2),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn bicyclic_units_detect_normalizing_elements() {
        let d8 = arc(dihedral(8).unwrap());
        let t: &GroupTable = &d8;
        let r = 1u8; // rotation of order 4
        let s = 4u8; // reflection
        assert_eq!(t.order_of(r), 4);
        assert_eq!(t.order_of(s), 2);

        // <r> is normal, so the reflection normalizes it: trivial unit.
        assert!(bicyclic_unit(&d8, r, s).unwrap().is_trivial());
        // The rotation does not normalize <s>.
        let cert = bicyclic_unit(&d8, s, r).unwrap();
        assert!(!cert.is_trivial());
        // Square-zero offset means u_inv = 2 - u.
        let two = AlgElement::one(&d8).scale(&rat_int(2));
        assert_eq!(cert.u_inv, two.sub(&cert.u).unwrap());
        // Identity base gives the trivial unit.
        assert!(bicyclic_unit(&d8, 0, s).unwrap().is_trivial());
    }

    #[test]
    fn v_families_are_triangular() {
        let d8 = arc(dihedral(8).unwrap());
        let cfg = RunConfig::default();
        let rec = record_of_dimension(&d8, 4);
        let sys = primitive_idempotents(&rec, &cfg).unwrap();
        assert_eq!(sys.t_e.len(), 2);

        // a has order 4 and a^2 eps is the first central power, so each
        // ordered transversal pair contributes two generators.
        let vp = v_generators(&sys, Sign::Plus).unwrap();
        let vm = v_generators(&sys, Sign::Minus).unwrap();
        assert_eq!(vp.len(), 2);
        assert_eq!(vm.len(), 2);
        let one = AlgElement::one(&d8);
        for cert in vp.iter().chain(vm.iter()) {
            let offset = cert.u.sub(&one).unwrap();
            assert!(offset.mul(&offset).unwrap().is_zero());
            assert!(cert.u.is_integral() && cert.u_inv.is_integral());
        }
        assert!(nilpotency_certificate(&vp, &sys).unwrap());
        assert!(nilpotency_certificate(&vm, &sys).unwrap());
        assert!(nilpotency_certificate(&[], &sys).unwrap());

        // Mixing signs is a guard error, not a verdict.
        let mixed = vec![vp[0].clone(), vm[0].clone()];
        assert!(matches!(
            nilpotency_certificate(&mixed, &sys),
            Err(Error::MixedCertificates)
        ));
    }

    #[test]
    fn division_components_have_no_v_generators() {
        let q8 = arc(quaternion(8).unwrap());
        let cfg = RunConfig::default();
        let rec = record_of_dimension(&q8, 4);
        let sys = primitive_idempotents(&rec, &cfg).unwrap();
        assert_eq!(sys.t_e.len(), 1);
        assert!(v_generators(&sys, Sign::Plus).unwrap().is_empty());
        assert!(v_generators(&sys, Sign::Minus).unwrap().is_empty());
        assert!(matches!(free_pair(&sys, 0, 1), Err(Error::BadUnitParams(_))));
    }

    #[test]
    fn free_pairs_have_sanov_images() {
        let d8 = arc(dihedral(8).unwrap());
        let cfg = RunConfig::default();
        let rec = record_of_dimension(&d8, 4);
        let sys = primitive_idempotents(&rec, &cfg).unwrap();
        let units = matrix_units(&sys).unwrap();
        let (f1, f2) = free_pair(&sys, 0, 1).unwrap();
        let one = AlgElement::one(&d8);
        assert_eq!(f1.u, one.add(&units[0][1].scale(&rat_int(8))).unwrap());
        assert_eq!(f2.u, one.add(&units[1][0].scale(&rat_int(8))).unwrap());
        assert!(matches!(free_pair(&sys, 1, 1), Err(Error::BadUnitParams(_))));
    }

    #[test]
    fn the_split_quaternion_component_carries_a_free_pair() {
        // Q8 x C5: the faithful component splits as 2x2 matrices (the order
        // of 2 mod 5 is even), and its Sanov pair uses |G| = 40.
        let g = arc(product(vec![quaternion(8).unwrap(), cyclic(5).unwrap()]).unwrap());
        let cfg = RunConfig::default();
        let rec = record_of_dimension(&g, 16);
        let sys = primitive_idempotents(&rec, &cfg).unwrap();
        assert_eq!(sys.t_e.len(), 2);
        let (f1, f2) = free_pair(&sys, 0, 1).unwrap();
        let one = AlgElement::one(&g);
        let offset = f1.u.sub(&one).unwrap();
        assert!(offset.mul(&offset).unwrap().is_zero());
        assert!(f1.u.is_integral() && f2.u.is_integral());

        let vp = v_generators(&sys, Sign::Plus).unwrap();
        assert!(!vp.is_empty());
        assert!(nilpotency_certificate(&vp, &sys).unwrap());
    }

    #[test]
    fn the_generator_suite_assembles_for_d8() {
        let d8 = arc(dihedral(8).unwrap());
        let suite = generator_suite(&d8, &RunConfig::default()).unwrap();
        // Two order-4 elements, each with the single admissible k = 3.
        assert_eq!(suite.central.len(), 2);
        assert_eq!(suite.records.len(), 5);
        assert_eq!(suite.vplus.len(), 5);
        assert_eq!(suite.vminus.len(), 5);
        // Only the faithful 2x2 component contributes.
        let nonempty: Vec<usize> =
            (0..5).filter(|&i| !suite.vplus[i].is_empty()).collect();
        assert_eq!(nonempty.len(), 1);
        assert_eq!(suite.free_pairs.len(), 1);
        let idx = nonempty[0];
        assert!(suite.vplus[idx].iter().all(|c| c.provenance.component == Some(idx)));
        assert_eq!(suite.free_pairs[0].0.provenance.component, Some(idx));
    }

    #[test]
    fn abelian_suites_are_all_central() {
        let c12 = arc(cyclic(12).unwrap());
        let suite = generator_suite(&c12, &RunConfig::default()).unwrap();
        assert!(!suite.central.is_empty());
        assert!(suite.central.iter().all(|c| c.u.is_central()));
        assert!(suite.vplus.iter().all(|v| v.is_empty()));
        assert!(suite.vminus.iter().all(|v| v.is_empty()));
        assert!(suite.free_pairs.is_empty());

        assert!(matches!(
            generator_suite(&arc(sl23().unwrap()), &RunConfig::default()),
            Err(Error::NotNilpotent(_))
        ));
    }
}
