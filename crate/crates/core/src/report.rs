//! Deterministic JSON views of every pipeline product.
//!
//! All maps are key-sorted (`serde_json`'s default `BTreeMap` backing), all
//! numbers are either machine integers or exact `"p/q"` strings, and nothing
//! here reads clocks, hostnames, or other ambient state — so one input value
//! always renders to one byte sequence.  Rationals keep an explicit
//! denominator even when it is 1; group-algebra elements become coefficient
//! maps keyed by the decimal element index.

use serde_json::{json, Map, Value};

use crate::alg::{rational_string, AlgElement, Rational};
use crate::group::Subgroup;
use crate::primidem::{CaseTag, MatrixUnitSystem};
use crate::shoda::SspRecord;
use crate::wedderburn::{ComponentDescriptor, DivisionPart};
use crate::zunits::{GeneratorSuite, Provenance, UnitCertificate, UnitKind};

/// `"p/q"` with the denominator always present (`3` renders as `"3/1"`).
pub fn rational_json(r: &Rational) -> Value {
    Value::String(rational_string(r))
}

/// Coefficient map `{"<element index>": "p/q", …}`; zero coefficients are
/// never stored, so the map is exactly the support.
pub fn element_json(a: &AlgElement) -> Value {
    let mut m = Map::new();
    for (g, c) in a.coeffs() {
        m.insert(g.to_string(), rational_json(c));
    }
    Value::Object(m)
}

/// Ascending member-index array.
pub fn subgroup_json(s: &Subgroup) -> Value {
    Value::Array(s.members().iter().map(|&g| json!(g)).collect())
}

/// One strong-pair record: the pair, its normalizer and transversal, and the
/// two idempotents.
pub fn record_json(rec: &SspRecord) -> Value {
    json!({
        "h": subgroup_json(&rec.h),
        "k": subgroup_json(&rec.k),
        "normalizer": subgroup_json(&rec.normalizer),
        "transversal": rec.transversal,
        "eps": element_json(&rec.eps),
        "e": element_json(&rec.e),
    })
}

/// The conventional dotted name of a classification case.
pub fn case_name(tag: CaseTag) -> &'static str {
    match tag {
        CaseTag::C1i => "1.i",
        CaseTag::C1ii => "1.ii",
        CaseTag::C2i => "2.i",
        CaseTag::C2ii => "2.ii",
    }
}

/// Wedderburn component descriptor.
pub fn component_json(desc: &ComponentDescriptor) -> Value {
    json!({
        "m": desc.m,
        "r": desc.r,
        "degree": desc.matrix_degree,
        "division": match desc.division_part {
            DivisionPart::Field => "field",
            DivisionPart::TotallyDefiniteQuaternion(_) => "quaternion",
        },
        "center": {
            "conductor": desc.center_spec.conductor,
            "fixed_exponents": desc.center_spec.fixed_under,
        },
        "exceptional": desc.exceptional,
        "schur_index": desc.schur_index,
    })
}

/// A resolved component: the case tag, the conjugating set, the base
/// idempotent with its conjugates, and (when supplied) the full matrix-unit
/// grid keyed `"i,j"`.  `xy` appears only when case 2.ii solved a
/// sum-of-squares relation.
pub fn system_json(sys: &MatrixUnitSystem, units: Option<&[Vec<AlgElement>]>) -> Value {
    let mut obj = Map::new();
    obj.insert("case".into(), json!(case_name(sys.case.tag)));
    obj.insert("T_e".into(), json!(sys.t_e));
    obj.insert("beta_e".into(), element_json(&sys.beta_e));
    obj.insert(
        "idempotents".into(),
        Value::Array(sys.idempotents.iter().map(element_json).collect()),
    );
    if let Some(grid) = units {
        let mut mu = Map::new();
        for (i, row) in grid.iter().enumerate() {
            for (j, u) in row.iter().enumerate() {
                mu.insert(format!("{i},{j}"), element_json(u));
            }
        }
        obj.insert("matrix_units".into(), Value::Object(mu));
    }
    if let Some((x, y)) = &sys.case.xy {
        obj.insert("xy".into(), json!([element_json(x), element_json(y)]));
    }
    Value::Object(obj)
}

/// Stable name of a unit construction.
pub fn unit_kind_name(kind: UnitKind) -> &'static str {
    match kind {
        UnitKind::Bass => "bass",
        UnitKind::BassCentral => "bass-central",
        UnitKind::Bicyclic => "bicyclic",
        UnitKind::VPlus => "vplus",
        UnitKind::VMinus => "vminus",
        UnitKind::FreePairMember => "free-pair",
    }
}

/// Provenance record with only the fields the construction used.
pub fn provenance_json(p: &Provenance) -> Value {
    let mut m = Map::new();
    if let Some(g) = p.g {
        m.insert("g".into(), json!(g));
    }
    if let Some(k) = p.k {
        m.insert("k".into(), json!(k));
    }
    if let Some(h) = p.h {
        m.insert("h".into(), json!(h));
    }
    if let Some(c) = p.component {
        m.insert("component".into(), json!(c));
    }
    if let Some(t) = p.t {
        m.insert("t".into(), json!(t));
    }
    if let Some(tp) = p.t_prime {
        m.insert("t_prime".into(), json!(tp));
    }
    if let Some(j) = p.j {
        m.insert("j".into(), json!(j));
    }
    Value::Object(m)
}

/// A certified unit: the element, its verified inverse, and where it came
/// from.
pub fn certificate_json(c: &UnitCertificate) -> Value {
    json!({
        "u": element_json(&c.u),
        "inverse": element_json(&c.u_inv),
        "kind": unit_kind_name(c.kind),
        "provenance": provenance_json(&c.provenance),
    })
}

/// The whole generator suite.  `vplus`/`vminus` map the component index (as
/// a decimal string) to that component's generator list; components with no
/// generators are omitted.
pub fn suite_json(suite: &GeneratorSuite) -> Value {
    let family = |lists: &[Vec<UnitCertificate>]| {
        let mut m = Map::new();
        for (i, gens) in lists.iter().enumerate() {
            if !gens.is_empty() {
                m.insert(i.to_string(), Value::Array(gens.iter().map(certificate_json).collect()));
            }
        }
        Value::Object(m)
    };
    json!({
        "central": suite.central.iter().map(certificate_json).collect::<Vec<_>>(),
        "vplus": family(&suite.vplus),
        "vminus": family(&suite.vminus),
        "free_pairs": suite
            .free_pairs
            .iter()
            .map(|(a, b)| json!([certificate_json(a), certificate_json(b)]))
            .collect::<Vec<_>>(),
    })
}

/// The canonical byte form: pretty-printed, key-sorted, trailing newline.
pub fn canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("finite exact data always serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::rat;
    use crate::group::{parse_spec, Subgroup};
    use crate::primidem::primitive_idempotents;
    use crate::shoda::{strong_pair_record, strong_shoda_pairs};
    use crate::wedderburn::describe_component;
    use crate::zunits::generator_suite;
    use crate::RunConfig;

    #[test]
    fn elements_render_as_support_maps_with_explicit_denominators() {
        let g = parse_spec("cyclic:4", 16).unwrap();
        let a = AlgElement::from_coeffs(&g, [(0u8, rat(1, 2)), (2u8, rat(-3, 4))]).unwrap();
        assert_eq!(element_json(&a), json!({"0": "1/2", "2": "-3/4"}));
        assert_eq!(rational_json(&rat(5, 1)), json!("5/1"));
    }

    #[test]
    fn the_quaternion_component_renders_with_its_division_flag() {
        let g = parse_spec("quaternion:8", 16).unwrap();
        // take the faithful record from the scan instead of guessing indices
        let s = strong_shoda_pairs(&g).unwrap();
        let rec = s
            .records
            .iter()
            .find(|r| r.h.order() == 4 && r.k.order() == 1)
            .unwrap();
        let d = describe_component(rec).unwrap();
        let v = component_json(&d);
        assert_eq!(v["division"], json!("quaternion"));
        assert_eq!(v["degree"], json!(1));
        assert_eq!(v["schur_index"], json!(2));
        assert_eq!(v["center"]["conductor"], json!(4));
        assert_eq!(v["exceptional"], json!(false));
        let rv = record_json(rec);
        assert_eq!(rv["k"], json!([0]));
        assert_eq!(rv["e"]["0"], json!("1/2"));
    }

    #[test]
    fn matrix_unit_grids_key_by_row_and_column() {
        let g = parse_spec("dihedral:8", 16).unwrap();
        let s = strong_shoda_pairs(&g).unwrap();
        let rec = s.records.iter().find(|r| r.h.order() == 4 && r.k.order() == 1).unwrap();
        let sys = primitive_idempotents(rec, &RunConfig::default()).unwrap();
        let grid = crate::primidem::matrix_units(&sys).unwrap();
        let v = system_json(&sys, Some(&grid));
        assert_eq!(v["case"], json!("1.ii"));
        assert_eq!(v["T_e"].as_array().unwrap().len(), 2);
        assert!(v["matrix_units"].get("0,1").is_some());
        assert!(v.get("xy").is_none());
        // the diagonal entries are the listed idempotents
        assert_eq!(v["matrix_units"]["1,1"], v["idempotents"][1]);
    }

    #[test]
    fn suite_dumps_are_byte_stable() {
        let g = parse_spec("dihedral:8", 16).unwrap();
        let a = generator_suite(&g, &RunConfig::default()).unwrap();
        let b = generator_suite(&g, &RunConfig::default()).unwrap();
        let sa = canonical_string(&suite_json(&a));
        let sb = canonical_string(&suite_json(&b));
        assert_eq!(sa, sb);
        assert!(sa.ends_with('\n'));
        let v: Value = serde_json::from_str(&sa).unwrap();
        assert!(v["vplus"].as_object().unwrap().len() == 1);
        for c in v["central"].as_array().unwrap() {
            assert_eq!(c["kind"], json!("bass-central"));
            assert!(c["provenance"].get("g").is_some());
        }
    }

    #[test]
    fn strong_pairs_round_trip_through_json() {
        let g = parse_spec("cyclic:6", 16).unwrap();
        let h = Subgroup::whole(&g);
        let k = Subgroup::trivial(&g);
        let rec = strong_pair_record(&g, &h, &k).unwrap().unwrap();
        let v = record_json(&rec);
        assert_eq!(v["h"].as_array().unwrap().len(), 6);
        assert_eq!(v["transversal"], json!([0]));
        // every eps coefficient survives the trip exactly
        let back = v["eps"].as_object().unwrap();
        assert_eq!(back.len(), rec.eps.coeffs().len());
        for (gidx, c) in rec.eps.coeffs() {
            assert_eq!(back[&gidx.to_string()], json!(rational_string(c)));
        }
    }
}
