//! Browser bindings for the walk-inequality explorer page in `www/`.
//!
//! Three operations are exposed, each taking and returning JSON strings so
//! the page needs no generated TypeScript glue:
//!
//! * [`analyze_graph`] — parse a graph (graph6, edge list, or family
//!   spec), returning exact walk counts plus the spectral data behind
//!   `w_k = Σ λ_j^k μ_j²`.
//! * [`certify`] — build one of the certificate constructions and return
//!   it with its compiled walk inequality.
//! * [`family_scan`] — evaluate an inequality along a parametric graph
//!   family, returning the exact value curve and any violations.
//!
//! The logic lives in plain functions (`*_impl`) so the crate tests run on
//! the native target; the `#[wasm_bindgen]` wrappers only adapt errors.

use serde_json::{json, Value};
use walkcert::certificate::{
    agm_sos, sandwich_certificate, shift_certificate, square_certificate,
    two_factor_characterize, univariate_certificate, Certificate, TwoFactorOutcome,
};
use walkcert::graph::{Graph, GraphFormat};
use walkcert::inequality::FamilySpec;
use walkcert::poly::Permutation;
use walkcert::ratio::{parse_rational, rational_to_f64, rational_to_string};
use walkcert::spectral::spectral_decompose;
use walkcert::{Error, WalkInequality};
use wasm_bindgen::prelude::*;

fn graph_from_text(input: &str) -> Result<Graph, Error> {
    let trimmed = input.trim();
    if trimmed.starts_with("n ") || trimmed.starts_with("n\t") {
        return Ok(walkcert::graph::load_graph(trimmed, GraphFormat::EdgeList)?.0);
    }
    if trimmed.contains(':') {
        let family = FamilySpec::parse(trimmed)?;
        if family.parameter().is_some() {
            return Err(Error::InvalidArgument(
                "family parameters are only valid in scans; give fixed sizes here".into(),
            ));
        }
        return family.instantiate(0);
    }
    Graph::from_graph6(trimmed)
}

pub fn analyze_graph_impl(input: &str, max_len: usize) -> Result<String, Error> {
    let g = graph_from_text(input)?;
    if g.node_count() > 64 {
        return Err(Error::InvalidArgument(format!(
            "demo caps graphs at 64 nodes, got {}",
            g.node_count()
        )));
    }
    let max_len = max_len.min(64);
    let table = g.walk_counts(max_len);
    let spectral = spectral_decompose(&g)?;
    let walks: Vec<String> = table.counts().iter().map(|c| c.to_string()).collect();
    let walks_float: Vec<f64> = table
        .counts()
        .iter()
        .map(|c| c.to_string().parse::<f64>().unwrap_or(f64::INFINITY))
        .collect();
    let payload = json!({
        "n": g.node_count(),
        "m": g.edge_count(),
        "graph6": g.to_graph6().ok(),
        "degrees": g.degrees(),
        "regular_degree": g.regular_degree(),
        "edges": g.edges(),
        "w": walks,
        "w_float": walks_float,
        "eigenvalues": spectral.eigenvalues(),
        "weights": spectral.weights(),
        "spectral_walks": spectral.walk_counts_spectral(max_len),
    });
    Ok(payload.to_string())
}

fn certificate_payload(cert: &Certificate, extra: Value) -> Result<String, Error> {
    let compiled = cert.compiled();
    let mut payload = json!({
        "certificate": serde_json::to_value(cert)?,
        "inequality": serde_json::to_value(&compiled)?,
        "display": format!("{compiled:?}"),
    });
    if let Some(extra) = extra.as_object() {
        for (k, v) in extra {
            payload[k] = v.clone();
        }
    }
    Ok(payload.to_string())
}

/// `kind` is one of `square`, `sandwich`, `agm`, `two_factor`,
/// `univariate`; `params_json` carries the construction parameters, e.g.
/// `{"alpha":[1,2],"sigma":[2,1]}` (sigma 1-indexed) or
/// `{"a":1,"b":0,"c":1,"shift":0}`.
pub fn certify_impl(kind: &str, params_json: &str) -> Result<String, Error> {
    let params: Value = serde_json::from_str(params_json)?;
    let u32_list = |key: &str| -> Result<Vec<u32>, Error> {
        params
            .get(key)
            .and_then(|v| v.as_array())
            .map(|a| {
                a.iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|v| v as u32)
                            .ok_or_else(|| Error::InvalidArgument(format!("bad entry in {key:?}")))
                    })
                    .collect()
            })
            .ok_or_else(|| Error::InvalidArgument(format!("missing list {key:?}")))?
    };
    let u32_field = |key: &str| -> Result<u32, Error> {
        params
            .get(key)
            .and_then(|v| v.as_u64())
            .map(|v| v as u32)
            .ok_or_else(|| Error::InvalidArgument(format!("missing number {key:?}")))
    };
    let shift = params.get("shift").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
    let apply_shift = |cert: Certificate| {
        if shift > 0 {
            shift_certificate(&cert, shift)
        } else {
            cert
        }
    };
    match kind {
        "square" => {
            let alpha = u32_list("alpha")?;
            let sigma: Vec<usize> = u32_list("sigma")?.into_iter().map(|v| v as usize).collect();
            let cert = apply_shift(square_certificate(&alpha, &Permutation::from_one_indexed(&sigma)?)?);
            certificate_payload(&cert, json!({}))
        }
        "sandwich" => {
            let cert = apply_shift(sandwich_certificate(
                u32_field("a")?,
                u32_field("b")?,
                u32_field("c")?,
            )?);
            certificate_payload(&cert, json!({}))
        }
        "agm" => {
            let cert = apply_shift(agm_sos(&u32_list("alpha")?)?);
            certificate_payload(&cert, json!({}))
        }
        "two_factor" => {
            let alpha = u32_list("alpha")?;
            let beta = u32_list("beta")?;
            let ([a1, a2], [b1, b2]) = (&alpha[..], &beta[..]) else {
                return Err(Error::InvalidArgument("alpha and beta need two entries".into()));
            };
            match two_factor_characterize((*a1, *a2), (*b1, *b2))? {
                TwoFactorOutcome::Params { a, b, c, certificate } => certificate_payload(
                    &certificate,
                    json!({"params": {"a": a, "b": b, "c": c}}),
                ),
                TwoFactorOutcome::Refuted(obstruction) => {
                    Ok(json!({ "refuted": obstruction }).to_string())
                }
            }
        }
        "univariate" => {
            let coeffs = params
                .get("coeffs")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::InvalidArgument("missing list \"coeffs\"".into()))?
                .iter()
                .map(|v| match v {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(Error::InvalidArgument("bad coefficient".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let tol = parse_rational(
                params.get("tol").and_then(|v| v.as_str()).unwrap_or("1e-6"),
            )?;
            let report = univariate_certificate(u32_field("k")?, &coeffs, &tol)?;
            certificate_payload(
                &report.certificate,
                json!({
                    "bound": rational_to_string(&report.min_bound),
                    "root_bracket": [
                        rational_to_string(&report.root_bracket.0),
                        rational_to_string(&report.root_bracket.1),
                    ],
                }),
            )
        }
        other => Err(Error::InvalidArgument(format!("unknown certificate kind {other:?}"))),
    }
}

/// Evaluate `inequality_json` on `family` (e.g. `union(complete:3,star:m)`)
/// for every parameter in `lo..=hi`, returning the exact value curve.
pub fn family_scan_impl(
    inequality_json: &str,
    family: &str,
    lo: usize,
    hi: usize,
) -> Result<String, Error> {
    let ineq = WalkInequality::from_json(inequality_json)?;
    let spec = FamilySpec::parse(family)?;
    if lo > hi || hi - lo > 400 {
        return Err(Error::InvalidArgument("range must be ascending and at most 400 wide".into()));
    }
    let mut points = Vec::new();
    let mut violations = Vec::new();
    for m in lo..=hi {
        let g = spec.instantiate(m)?;
        if g.node_count() > 200 {
            return Err(Error::InvalidArgument(format!(
                "family member at m={m} has {} nodes; demo caps at 200",
                g.node_count()
            )));
        }
        let value = ineq.evaluate_on_graph(&g);
        let rendered = rational_to_string(&value);
        if rendered.starts_with('-') {
            violations.push(json!({
                "param": m,
                "value": rendered.clone(),
                "graph6": g.to_graph6().ok(),
                "n": g.node_count(),
            }));
        }
        points.push(json!({
            "param": m,
            "n": g.node_count(),
            "value": rendered,
            "value_float": rational_to_f64(&value),
        }));
    }
    Ok(json!({
        "inequality": serde_json::from_str::<Value>(&ineq.to_json())?,
        "display": format!("{ineq:?}"),
        "family": spec.source(),
        "points": points,
        "violations": violations,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn analyze_graph(input: &str, max_len: usize) -> Result<String, JsValue> {
    analyze_graph_impl(input, max_len).map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn certify(kind: &str, params_json: &str) -> Result<String, JsValue> {
    certify_impl(kind, params_json).map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn family_scan(
    inequality_json: &str,
    family: &str,
    lo: usize,
    hi: usize,
) -> Result<String, JsValue> {
    family_scan_impl(inequality_json, family, lo, hi)
        .map_err(|e| JsValue::from_str(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_family_input() {
        let out: Value =
            serde_json::from_str(&analyze_graph_impl("path:3", 4).unwrap()).unwrap();
        assert_eq!(out["w"], json!(["3", "4", "6", "8", "12"]));
        assert_eq!(out["n"], 3);
        assert_eq!(out["regular_degree"], Value::Null);
        let eigen = out["eigenvalues"].as_array().unwrap();
        assert!((eigen[0].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn analyze_graph6_and_edge_list() {
        let via_g6: Value =
            serde_json::from_str(&analyze_graph_impl("DQc", 3).unwrap()).unwrap();
        assert_eq!(via_g6["n"], 5);
        let via_edges: Value =
            serde_json::from_str(&analyze_graph_impl("n 3\n0 1\n1 2", 3).unwrap()).unwrap();
        assert_eq!(via_edges["m"], 2);
        assert!(analyze_graph_impl("star:m", 3).is_err());
    }

    #[test]
    fn certify_square_and_two_factor() {
        let out: Value = serde_json::from_str(
            &certify_impl("square", r#"{"alpha":[1,2],"sigma":[2,1]}"#).unwrap(),
        )
        .unwrap();
        assert_eq!(out["certificate"]["verified"], true);
        assert!(out["display"].as_str().unwrap().contains(">= 0"));

        let out: Value = serde_json::from_str(
            &certify_impl("two_factor", r#"{"alpha":[3,5],"beta":[2,6]}"#).unwrap(),
        )
        .unwrap();
        assert_eq!(out["params"], json!({"a": 1, "b": 1, "c": 1}));

        let refuted: Value = serde_json::from_str(
            &certify_impl("two_factor", r#"{"alpha":[1,2],"beta":[0,3]}"#).unwrap(),
        )
        .unwrap();
        assert_eq!(refuted["refuted"]["kind"], "odd_vertex");
    }

    #[test]
    fn scan_reproduces_counterexample_curve() {
        let lagarias = r#"{"terms":[{"coef":"1","indices":[0,3]},{"coef":"-1","indices":[1,2]}]}"#;
        let out: Value = serde_json::from_str(
            &family_scan_impl(lagarias, "union(complete:3,star:m)", 1, 10).unwrap(),
        )
        .unwrap();
        let points = out["points"].as_array().unwrap();
        assert_eq!(points.len(), 10);
        // value curve is 6(4 - m)
        assert_eq!(points[0]["value"], "18");
        assert_eq!(points[4]["value"], "-6");
        let violations = out["violations"].as_array().unwrap();
        assert_eq!(violations.len(), 6);
        assert_eq!(violations[0]["param"], 5);
    }

    #[test]
    fn scan_rejects_oversized_requests() {
        let dg = r#"{"terms":[{"coef":"1","indices":[0,2]},{"coef":"-1","indices":[1,1]}]}"#;
        assert!(family_scan_impl(dg, "star:m", 5, 2).is_err());
        assert!(family_scan_impl(dg, "star:m", 0, 1000).is_err());
        assert!(family_scan_impl(dg, "complete:m", 300, 300).is_err());
    }
}
