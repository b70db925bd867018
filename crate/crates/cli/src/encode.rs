//! JSON and LaTeX renderings of exact values.
//!
//! Elements are lists of `{coefficient: [num, den], monomial: {...}}`; monomials of
//! H(1) use the keys `d1, d2, …, X, Y`, polynomials in the ρ-variables use `x1, x2, …`.

use hopfcyc::algebra_kernel::{CommPoly, Rational};
use hopfcyc::hopf_h1::{HElement, HTensor, PbwMonomial};
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "hopfcyc/1";

fn big(n: &num_bigint::BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn rational(q: &Rational) -> Value {
    json!([big(q.numer()), big(q.denom())])
}

pub fn pbw_monomial(m: &PbwMonomial) -> Value {
    let mut map = Map::new();
    for (i, &a) in m.delta.exponents().iter().enumerate() {
        if a > 0 {
            map.insert(format!("d{}", i + 1), json!(a));
        }
    }
    if m.x > 0 {
        map.insert("X".into(), json!(m.x));
    }
    if m.y > 0 {
        map.insert("Y".into(), json!(m.y));
    }
    Value::Object(map)
}

pub fn h_element(h: &HElement) -> Value {
    Value::Array(h.iter().map(|(m, c)| json!({"coefficient": rational(c), "monomial": pbw_monomial(m)})).collect())
}

pub fn h_tensor(t: &HTensor) -> Value {
    Value::Array(
        t.iter()
            .map(|(k, c)| json!({"coefficient": rational(c), "monomial": k.iter().map(pbw_monomial).collect::<Vec<_>>()}))
            .collect(),
    )
}

/// Terms in display order (decreasing weight), variables named `x<j>`.
pub fn poly(p: &CommPoly) -> Value {
    Value::Array(
        p.terms_for_display(|v| v)
            .into_iter()
            .map(|(e, c)| {
                let mono: Map<String, Value> = e.iter().map(|(v, k)| (format!("x{v}"), json!(k))).collect();
                json!({"coefficient": rational(c), "monomial": mono})
            })
            .collect(),
    )
}

pub fn document(command: &str, target: &str, status: &str, body: Value) -> Value {
    json!({"schema": SCHEMA, "command": command, "target": target, "status": status, "result": body})
}

pub fn latex_rational(q: &Rational) -> String {
    let a = q.abs();
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

/// Joins `(coefficient, monomial)` pairs; an empty monomial stands for 1.
fn latex_sum<'a>(terms: impl IntoIterator<Item = (&'a Rational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&latex_rational(c));
        } else {
            if !c.abs().is_one() {
                out.push_str(&latex_rational(c));
                if mono.starts_with(|ch: char| ch.is_ascii_digit()) {
                    out.push_str(" \\cdot ");
                }
            }
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn power(base: String, e: u32) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{{{e}}}")
    }
}

pub fn latex_pbw(m: &PbwMonomial) -> String {
    let mut s = String::new();
    for (i, &a) in m.delta.exponents().iter().enumerate() {
        if a > 0 {
            s.push_str(&power(format!("\\delta_{{{}}}", i + 1), a));
        }
    }
    if m.x > 0 {
        s.push_str(&power("X".into(), m.x));
    }
    if m.y > 0 {
        s.push_str(&power("Y".into(), m.y));
    }
    s
}

pub fn latex_h(h: &HElement) -> String {
    latex_sum(h.iter().map(|(m, c)| (c, latex_pbw(m))))
}

pub fn latex_tensor(t: &HTensor) -> String {
    latex_sum(t.iter().map(|(k, c)| {
        let legs: Vec<String> = k.iter().map(|m| if m.is_one() { "1".into() } else { latex_pbw(m) }).collect();
        (c, legs.join(" \\otimes "))
    }))
}

pub fn latex_poly(p: &CommPoly) -> String {
    latex_sum(p.terms_for_display(|v| v).into_iter().map(|(e, c)| {
        let vars: Vec<(u32, u32)> = e.iter().collect();
        let mono: String = vars.into_iter().rev().map(|(v, k)| power(format!("x_{{{v}}}"), k)).collect();
        (c, mono)
    }))
}
