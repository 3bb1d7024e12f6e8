//! JSON encodings of library results.
//!
//! Objects are `serde_json::Map`s, which keep keys sorted, so the printed
//! form is byte-stable for a given input.

use alexkit_core::jumploci::{AlmostPrincipal, BettiReport, MonodromyReport, RootReport};
use alexkit_core::laurent::{FactoredPoly, LaurentPoly};
use alexkit_core::obstruct::{PositionReport, QpReport};
use alexkit_core::seifert::DivisorComponent;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn to_text(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("JSON values always serialize");
    s.push('\n');
    s
}

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
pub fn bigint(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn poly(p: &LaurentPoly, names: &[String]) -> Value {
    json!(p.render(names))
}

pub fn factored(f: &FactoredPoly, names: &[String]) -> Value {
    let factors: Vec<Value> = f
        .factors
        .iter()
        .map(|x| {
            json!({
                "poly": poly(&x.poly, names),
                "multiplicity": x.multiplicity,
                "irreducible": x.irreducible,
                "direction": x.direction,
            })
        })
        .collect();
    json!({
        "constant": bigint(&f.constant),
        "factors": factors,
        "remainder": f.remainder.as_ref().map(|r| r.render(names)),
        "render": f.render(names),
    })
}

pub fn almost_principal(a: &AlmostPrincipal) -> Value {
    match a {
        AlmostPrincipal::Yes(reason) => json!(format!("Yes({})", reason)),
        AlmostPrincipal::Unknown => json!("Unknown"),
    }
}

pub fn qp(q: &QpReport, pos: Option<&PositionReport>) -> Value {
    let certificate = q.certificate.as_ref().map(|c| {
        json!({
            "c": bigint(&c.c),
            "p": c.p.render(&["u".to_string()]),
            "e": c.e,
            "orders": c.orders.iter().map(|(m, k)| json!({"m": m, "multiplicity": k})).collect::<Vec<_>>(),
        })
    });
    let pairs: Vec<Value> = pos
        .map(|p| {
            p.pairs
                .iter()
                .map(|(i, j, c)| json!({"i": i, "j": j, "class": c.as_str()}))
                .collect()
        })
        .unwrap_or_default();
    json!({
        "verdict": q.verdict.as_str(),
        "reason": q.reason,
        "certificate": certificate,
        "pairs": pairs,
        "position_verdict": pos.map(|p| p.verdict.as_str()),
        "isotropy": "not checked: needs cup-product data",
    })
}

pub fn betti(r: &BettiReport) -> Value {
    json!({
        "b1": r.b1,
        "bound_generic": r.bound_generic,
        "bound_pointwise": r.bound_pointwise,
        "lower_confidence": r.lower_confidence,
        "almost_principal": almost_principal(&r.almost_principal),
        "orders": r.orders,
        "remainder_order": r.remainder_order,
        "generic_attained": r.generic_attained,
        "pointwise_attained": r.pointwise_attained,
    })
}

pub fn root(r: &RootReport) -> Value {
    let e: serde_json::Map<String, Value> =
        r.e_counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({
        "root": r.root.to_string(),
        "min_poly": r.min_poly.render(&["t".to_string()]),
        "mu": r.mu,
        "b1": r.b1,
        "e_counts": e,
        "equality": r.equality,
        "all_higher_zero": r.all_higher_zero,
    })
}

pub fn monodromy(r: &MonodromyReport, delta_factored: &FactoredPoly) -> Value {
    let t = ["t".to_string()];
    let roots: Vec<Value> = r
        .roots
        .roots
        .iter()
        .zip(&r.predicted)
        .map(|(x, (_, pred))| {
            let mut v = root(x);
            v["predicted_equality"] = json!(pred);
            v
        })
        .collect();
    json!({
        "delta": r.delta.render(&t),
        "delta_factored": delta_factored.render(&t),
        "minimal_poly": r.minimal_poly.render(&t),
        "semisimple": r.semisimple,
        "roots": roots,
        "skipped": r.roots.skipped.iter().map(|p| p.render(&t)).collect::<Vec<_>>(),
    })
}

pub fn divisor(cs: &[DivisorComponent]) -> Value {
    json!(cs
        .iter()
        .map(|c| json!({"root_order": c.root_order, "index": c.index, "multiplicity": c.multiplicity}))
        .collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sorted_and_numbers() {
        let v = json!({"b": 1, "a": bigint(&BigInt::from(4)), "c": bigint(&(BigInt::from(1) << 70))});
        assert_eq!(to_text(&v, false), "{\"a\":4,\"b\":1,\"c\":\"1180591620717411303424\"}\n");
    }
}
