//! WebAssembly bindings for the browser demo in `www/`. Every entry point
//! returns a JSON string; [`api`] holds the same operations as plain Rust.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};

    use terncode::code::{
        code_cosets, code_dimension, codeword, cyclotomic_coset, enumerate_distribution,
        predicted_coset_size, weight_direct, weight_from_class, EnumerateOptions, Method,
    };
    use terncode::expsum::{classify, direct_sum};
    use terncode::gf::{field_context, FieldContext, FieldElement, MAX_DEGREE};
    use terncode::identities::theorem_table;
    use terncode::quadform::{build_form, classify_via_legendre};

    /// Largest m accepted by the closed-form histogram.
    pub const MAX_CLOSED_M: u32 = 40;
    /// Largest m enumerated in the browser.
    pub const MAX_ENUMERATED_M: u32 = 4;

    fn ctx(m: u32) -> Result<FieldContext, String> {
        if m == 0 || m > MAX_DEGREE {
            return Err(format!("m must be in 1..={MAX_DEGREE}, got {m}"));
        }
        field_context(3, m).map_err(|e| e.to_string())
    }

    /// Parses base-3 coefficients, constant term first: "102" is 1 + 2x^2.
    pub fn parse_element(m: u32, text: &str) -> Result<FieldElement, String> {
        let t: String = text.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        if t.len() > m as usize {
            return Err(format!("{text:?} has more than m = {m} coefficients"));
        }
        let digits = t
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(format!("{text:?}: coefficients must be 0, 1 or 2")),
            })
            .collect::<Result<Vec<u8>, String>>()?;
        Ok(FieldElement::from_coeffs(&digits))
    }

    /// Weight distribution over all coefficient triples: enumerated for
    /// m <= 4, closed form for even m >= 6.
    pub fn histogram(m: u32) -> Result<Value, String> {
        if m % 2 != 0 || m < 2 {
            return Err(format!("the histogram needs even m >= 2, got {m}"));
        }
        let (d, method) = if m <= MAX_ENUMERATED_M {
            let c = ctx(m)?;
            let d = enumerate_distribution(&c, Method::Rank, &EnumerateOptions::default())
                .map_err(|e| e.to_string())?;
            (d, "enumeration")
        } else if m <= MAX_CLOSED_M {
            (theorem_table(3, m).map_err(|e| e.to_string())?, "closed form")
        } else {
            return Err(format!("m = {m} exceeds {MAX_CLOSED_M}"));
        };
        let counts: serde_json::Map<String, Value> = d
            .counts
            .iter()
            .map(|(w, n)| (w.to_string(), Value::String(n.to_string())))
            .collect();
        Ok(json!({
            "m": m,
            "l": d.l,
            "method": method,
            "counts": counts,
            "total": d.total().to_string(),
        }))
    }

    /// Class of S(alpha, beta, gamma) by the quadratic-form rank and by
    /// direct summation, with the codeword weight both ways.
    pub fn classify_triple(m: u32, alpha: &str, beta: &str, gamma: &str) -> Result<Value, String> {
        if m % 2 != 0 {
            return Err(format!("classification needs even m, got {m}"));
        }
        let c = ctx(m)?;
        let [a, b, g] = [alpha, beta, gamma].map(|s| parse_element(m, s));
        let (a, b, g) = (a?, b?, g?);
        let zero = a.is_zero() && b.is_zero() && g.is_zero();
        let by_form = classify_via_legendre(&build_form(&c, a, b, g), m, zero).map_err(|e| e.to_string())?;
        let sum = direct_sum(&c, a, b, g);
        let by_sum = classify(&sum, m, zero).map_err(|e| e.to_string())?;
        let weight = if zero { 0 } else { weight_from_class(&c, &by_form).map_err(|e| e.to_string())? };
        let counted = weight_direct(&codeword(&c, a, b, g));
        Ok(json!({
            "m": m,
            "class": by_form,
            "class_from_sum": by_sum,
            "agree": by_form == by_sum,
            "sum": sum.to_string(),
            "weight": weight,
            "weight_counted": counted,
        }))
    }

    /// Cosets of the three exponents and of 1 + 3^i for 0 <= i <= m/2.
    pub fn cosets(m: u32) -> Result<Value, String> {
        if m == 0 || m > MAX_DEGREE {
            return Err(format!("m must be in 1..={MAX_DEGREE}, got {m}"));
        }
        let code: Vec<Value> = code_cosets(3, m)
            .iter()
            .map(|c| json!({"s": c.s, "size": c.size, "elements": c.elements}))
            .collect();
        let rows: Vec<Value> = (0..=m / 2)
            .map(|i| {
                let s = 1 + 3u64.pow(i);
                let size = cyclotomic_coset(s, 3, m).size;
                let predicted = predicted_coset_size(m, i).expect("i <= m/2");
                json!({"i": i, "s": s, "size": size, "predicted": predicted})
            })
            .collect();
        Ok(json!({"m": m, "cosets": code, "dimension": code_dimension(3, m), "one_plus_p_i": rows}))
    }
}

fn js(r: Result<serde_json::Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weight_histogram(m: u32) -> Result<String, JsError> {
    js(api::histogram(m))
}

#[wasm_bindgen]
pub fn classify_triple(m: u32, alpha: &str, beta: &str, gamma: &str) -> Result<String, JsError> {
    js(api::classify_triple(m, alpha, beta, gamma))
}

#[wasm_bindgen]
pub fn cosets(m: u32) -> Result<String, JsError> {
    js(api::cosets(m))
}
