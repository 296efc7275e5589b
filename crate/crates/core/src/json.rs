//! JSON documents for representations, groups, characters and reports.

use serde_json::{json, Value};

use crate::dsl::{print_irred, print_rep};
use crate::exact::ExactNumber;
use crate::f2::SignCharacter;
use crate::packets::{central_sign, ComponentGroup, EnhancedParam};
use crate::thetaggp::{BesselRecipe, FjRecipe, SeesawReport, ThetaLift};
use crate::wdalg::{GroupKind, TwistedChar, WdRep};

pub fn char_json(chr: &TwistedChar) -> Value {
    let mut v = json!({
        "d": chr.finite.quad.label(),
        "exp": chr.exp.to_string(),
    });
    if !chr.finite.opaque.is_empty() {
        v["opaque"] = json!(chr.finite.opaque);
    }
    v
}

pub fn rep_json(rep: &WdRep) -> Value {
    let constituents: Vec<Value> = rep
        .iter()
        .map(|(x, m)| json!({"char": char_json(&x.chr), "n": x.n, "mult": m}))
        .collect();
    json!({
        "constituents": constituents,
        "dim": rep.dim(),
        "det": char_json(&rep.det()),
        "sign": rep.sign_of().to_string(),
        "dsl": print_rep(rep),
    })
}

pub fn exact_json(x: &ExactNumber) -> Value {
    match x {
        ExactNumber::Zero => json!({"value": "0"}),
        ExactNumber::Value {
            zeta,
            p,
            half_power,
        } => json!({
            "value": x.to_string(),
            "zeta8": zeta,
            "p": p,
            "half_power": half_power.to_string(),
        }),
    }
}

pub fn kind_json(kind: &GroupKind) -> Value {
    json!(kind.name())
}

pub fn group_json(g: &ComponentGroup) -> Value {
    let basis: Vec<Value> = g
        .basis()
        .iter()
        .enumerate()
        .map(|(i, (x, m))| {
            json!({"name": format!("a{}", i + 1), "constituent": print_irred(x), "multiplicity": m})
        })
        .collect();
    let plus: Vec<String> = g
        .plus()
        .basis()
        .iter()
        .map(|&v| g.element_name(v))
        .collect();
    json!({
        "kind": g.kind.name(),
        "basis": basis,
        "order": 1u64 << g.rank(),
        "plus_generators": plus,
        "plus_order": g.plus().order(),
    })
}

/// Element-by-element table of a character.
pub fn character_json(g: &ComponentGroup, chi: &SignCharacter) -> Value {
    let mut rows = chi.table();
    rows.sort_by_key(|&(e, _)| e);
    let table: Vec<Value> = rows
        .into_iter()
        .map(|(e, s)| json!({"element": g.element_name(e), "value": s.as_i32()}))
        .collect();
    json!(table)
}

pub fn enhanced_json(e: &EnhancedParam) -> Value {
    let mut v = json!({
        "kind": e.kind.name(),
        "phi": rep_json(&e.phi),
        "label": e.label.label(),
        "group": group_json(&e.group),
        "eta": character_json(&e.group, &e.eta),
    });
    if let Ok(s) = central_sign(e) {
        v["central_sign"] = json!(s.as_i32());
    }
    v
}

pub fn bessel_json(r: &BesselRecipe) -> Value {
    json!({
        "group_m": group_json(&r.group_m),
        "group_n": group_json(&r.group_n),
        "chi_n_on_a_m": character_json(&r.group_m, &r.pair.chi_on_m),
        "chi_m_on_a_n_plus": character_json(&r.group_n, &r.pair.chi_on_n),
    })
}

pub fn fj_json(r: &FjRecipe) -> Value {
    json!({
        "group_m": group_json(&r.group_m),
        "group_n": group_json(&r.group_n),
        "n1": rep_json(&r.n1),
        "group_n1": group_json(&r.group_n1),
        "chi_n1_on_a_m": character_json(&r.group_m, &r.pair.chi_on_m),
        "chi_m_on_a_n1_plus": character_json(&r.group_n1, &r.chi_m_on_n1),
        "chi_m_on_a_n_plus": character_json(&r.group_n, &r.pair.chi_on_n),
    })
}

pub fn theta_json(l: &ThetaLift) -> Value {
    let ext: Vec<Value> = l
        .partial
        .extensions
        .iter()
        .map(|chi| {
            let mut v = json!({"eta": character_json(&l.partial.ambient, chi)});
            if let Ok(e) = EnhancedParam::new(l.kind, l.phi.clone(), chi.clone(), l.label) {
                if let Ok(s) = central_sign(&e) {
                    v["central_sign"] = json!(s.as_i32());
                }
            }
            v
        })
        .collect();
    json!({
        "kind": l.kind.name(),
        "phi": rep_json(&l.phi),
        "group": group_json(&l.partial.ambient),
        "extension_count": l.partial.extensions.len(),
        "extensions": ext,
    })
}

pub fn seesaw_json(r: &SeesawReport) -> Value {
    let table: Vec<Value> = r
        .table
        .iter()
        .map(|e| {
            json!({
                "a": r.group_m.element_name(e.a),
                "b": r.group_n.element_name(e.b),
                "direct": e.direct.as_i32(),
                "transported": e.transported.as_i32(),
            })
        })
        .collect();
    json!({
        "pass": r.pass,
        "d": r.d.label(),
        "table": table,
        "witness": r.witness.as_ref().map(|e| format!(
            "a={} b={} direct={} transported={}",
            r.group_m.element_name(e.a), r.group_n.element_name(e.b), e.direct, e.transported
        )),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_rep;
    use crate::localfield::PAdicField;

    #[test]
    fn rep_document_fields() {
        let r = parse_rep("chi(5)*sp(2)+t(1/2)+t(-1/2)", PAdicField::new(5).unwrap()).unwrap();
        let v = rep_json(&r);
        assert_eq!(v["dim"], 4);
        assert_eq!(v["sign"], "symplectic");
        assert_eq!(v["constituents"].as_array().unwrap().len(), 3);
        assert_eq!(v["det"]["d"], 1);
    }
}
