//! JSON documents for graphs, graph vectors, operad elements, polynomials,
//! tensors, component sets, the `(Θ₃, ϑ₃)` pair and run reports.
//!
//! Keys are written in a fixed order and rationals as `"p/q"` strings, so equal
//! values serialize to identical bytes.

use crate::error::{Error, Result};
use crate::graph::{Edge, MultiDigraph, Signature};
use crate::rational::{format_q, parse_q};
use crate::superalgebra::poly::XExp;
use crate::superalgebra::{BialgebroidComponents, Chart, Monomial, SuperPolynomial, Tensor, XPoly, MAX_DIM};
use crate::theta::{counts, ThetaPair};
use crate::vector::{GraphVector, OperadElement};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

fn perr(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

/// Parses text, reporting syntax errors with line and column.
pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| perr(format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Pretty output with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Hex SHA-256 of the compact serialization.
pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_string(v).expect("values always serialize").as_bytes()))
}

fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("{ctx}: missing field {key:?}")))
}

fn as_usize(v: &Value, ctx: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| perr(format!("{ctx}: expected a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{ctx}: expected an array")))
}

fn as_str<'a>(v: &'a Value, ctx: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(format!("{ctx}: expected a string")))
}

pub fn graph_to_json(g: &MultiDigraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            let c: Vec<i64> = (0..g.colors()).map(|j| e.color_sign(j) as i64).collect();
            json!({"t": e.tail as usize + 1, "h": e.head as usize + 1, "c": c})
        })
        .collect();
    json!({"n": g.num_vertices(), "edges": edges})
}

/// `colors` fixes the color arity; otherwise it is read from the edges
/// (an edgeless graph then has none).
pub fn graph_from_json(v: &Value, colors: Option<usize>) -> Result<MultiDigraph> {
    let n = as_usize(field(v, "n", "graph")?, "graph.n")?;
    let mut arity = colors;
    let mut edges = Vec::new();
    for (i, e) in as_array(field(v, "edges", "graph")?, "graph.edges")?.iter().enumerate() {
        let ctx = format!("graph.edges[{i}]");
        let t = as_usize(field(e, "t", &ctx)?, &ctx)?;
        let h = as_usize(field(e, "h", &ctx)?, &ctx)?;
        if t == 0 || h == 0 || t > n || h > n {
            return Err(perr(format!("{ctx}: endpoints must lie in 1..={n}")));
        }
        let c = match e.get("c") {
            Some(c) => as_array(c, &ctx)?.clone(),
            None => Vec::new(),
        };
        match arity {
            None => arity = Some(c.len()),
            Some(k) if k != c.len() => return Err(perr(format!("{ctx}: {} color signs, expected {k}", c.len()))),
            _ => {}
        }
        if c.len() > 7 {
            return Err(perr(format!("{ctx}: too many colors")));
        }
        let mut signs = 0u8;
        for (j, s) in c.iter().enumerate() {
            match s.as_i64() {
                Some(1) => {}
                Some(-1) => signs |= 1 << j,
                _ => return Err(perr(format!("{ctx}.c[{j}]: expected 1 or -1"))),
            }
        }
        edges.push(Edge::new(t - 1, h - 1, signs));
    }
    MultiDigraph::new(n, arity.unwrap_or(0), edges)
}

pub fn signature_to_json(sig: &Signature) -> Value {
    json!({"d": sig.d, "colors": sig.colors(), "oriented": sig.oriented_names(), "connected": sig.connected})
}

pub fn signature_from_json(v: &Value) -> Result<Signature> {
    let d = as_usize(field(v, "d", "sig")?, "sig.d")?;
    let colors = as_usize(field(v, "colors", "sig")?, "sig.colors")?;
    let names: Vec<&str> = as_array(field(v, "oriented", "sig")?, "sig.oriented")?
        .iter()
        .map(|x| as_str(x, "sig.oriented"))
        .collect::<Result<_>>()?;
    let connected = field(v, "connected", "sig")?.as_bool().ok_or_else(|| perr("sig.connected: expected a boolean"))?;
    if d > u32::MAX as usize || colors > 7 {
        return Err(perr("sig: d or colors out of range"));
    }
    Signature::new(d as u32, colors, Signature::parse_oriented(&names, colors)?, connected)
}

fn terms_to_json<'a>(terms: impl Iterator<Item = (&'a MultiDigraph, &'a crate::rational::Q)>) -> Vec<Value> {
    terms.map(|(g, x)| json!({"q": format_q(x), "g": graph_to_json(g)})).collect()
}

fn terms_from_json(v: &Value, sig: &Signature) -> Result<Vec<(crate::rational::Q, MultiDigraph)>> {
    as_array(field(v, "terms", "vector")?, "vector.terms")?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let ctx = format!("vector.terms[{i}]");
            let x = parse_q(as_str(field(t, "q", &ctx)?, &ctx)?)?;
            let g = graph_from_json(field(t, "g", &ctx)?, Some(sig.colors()))?;
            Ok((x, g))
        })
        .collect()
}

pub fn vector_to_json(v: &GraphVector) -> Value {
    json!({"sig": signature_to_json(&v.signature()), "terms": terms_to_json(v.terms())})
}

/// Every term is checked against the signature; terms are canonicalized and merged.
pub fn vector_from_json(v: &Value) -> Result<GraphVector> {
    let sig = signature_from_json(field(v, "sig", "vector")?)?;
    GraphVector::from_terms(sig, terms_from_json(v, &sig)?)
}

pub fn operad_to_json(e: &OperadElement) -> Value {
    json!({"sig": signature_to_json(&e.signature()), "arity": e.arity(), "terms": terms_to_json(e.terms())})
}

pub fn operad_from_json(v: &Value) -> Result<OperadElement> {
    let sig = signature_from_json(field(v, "sig", "operad element")?)?;
    let arity = as_usize(field(v, "arity", "operad element")?, "arity")?;
    OperadElement::from_terms(sig, arity, terms_from_json(v, &sig)?)
}

fn exponent_key(e: &XExp, m: usize) -> String {
    e[..m].iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

pub fn xpoly_to_json(p: &XPoly, m: usize) -> Value {
    let mut coeffs = Map::new();
    for (e, c) in p.terms() {
        coeffs.insert(exponent_key(e, m), Value::String(format_q(c)));
    }
    json!({"coeffs": coeffs})
}

pub fn xpoly_from_json(v: &Value, m: usize) -> Result<XPoly> {
    let coeffs = field(v, "coeffs", "polynomial")?.as_object().ok_or_else(|| perr("polynomial.coeffs: expected an object"))?;
    let mut out = XPoly::zero();
    for (key, c) in coeffs {
        let mut e: XExp = [0; MAX_DIM];
        let parts: Vec<&str> = if key.is_empty() { Vec::new() } else { key.split(',').collect() };
        if parts.len() != m {
            return Err(perr(format!("polynomial key {key:?}: expected {m} exponents")));
        }
        for (i, s) in parts.iter().enumerate() {
            e[i] = s.trim().parse().map_err(|_| perr(format!("polynomial key {key:?}: bad exponent")))?;
        }
        let c = parse_q(as_str(c, "polynomial coefficient")?)?;
        out = &out + &XPoly::monomial(e, c);
    }
    Ok(out)
}

fn nest(t: &Tensor, m: usize, prefix: &mut Vec<usize>) -> Value {
    if prefix.len() == t.rank() {
        return xpoly_to_json(t.get(prefix), m);
    }
    let dim = t.dims()[prefix.len()];
    let mut items = Vec::with_capacity(dim);
    for i in 0..dim {
        prefix.push(i);
        items.push(nest(t, m, prefix));
        prefix.pop();
    }
    Value::Array(items)
}

/// Dense nested arrays in index order; a rank-0 tensor is a bare polynomial.
pub fn tensor_to_json(t: &Tensor, m: usize) -> Value {
    nest(t, m, &mut Vec::new())
}

pub fn tensor_from_json(v: &Value, dims: &[usize], m: usize) -> Result<Tensor> {
    let mut t = Tensor::zeros(dims);
    fn fill(v: &Value, dims: &[usize], m: usize, prefix: &mut Vec<usize>, t: &mut Tensor) -> Result<()> {
        if prefix.len() == dims.len() {
            t.set(prefix, xpoly_from_json(v, m)?);
            return Ok(());
        }
        let items = as_array(v, "tensor")?;
        let want = dims[prefix.len()];
        if items.len() != want {
            return Err(perr(format!("tensor at {prefix:?}: {} entries, expected {want}", items.len())));
        }
        for (i, item) in items.iter().enumerate() {
            prefix.push(i);
            fill(item, dims, m, prefix, t)?;
            prefix.pop();
        }
        Ok(())
    }
    fill(v, dims, m, &mut Vec::new(), &mut t)?;
    Ok(t)
}

pub fn components_to_json(c: &BialgebroidComponents) -> Value {
    let m = c.chart().m;
    json!({
        "m": m,
        "n": c.chart().n,
        "rho": tensor_to_json(&c.rho, m),
        "f": tensor_to_json(&c.f, m),
        "R": tensor_to_json(&c.r, m),
        "C": tensor_to_json(&c.c, m),
        "phi": tensor_to_json(&c.phi, m),
        "psi": tensor_to_json(&c.psi, m),
    })
}

/// Missing tensors default to zero; symmetry violations are rejected.
pub fn components_from_json(v: &Value) -> Result<BialgebroidComponents> {
    let m = as_usize(field(v, "m", "components")?, "components.m")?;
    let n = as_usize(field(v, "n", "components")?, "components.n")?;
    let chart = Chart::new(m, n)?;
    let get = |key: &str, dims: &[usize]| match v.get(key) {
        Some(x) => tensor_from_json(x, dims, m).map_err(|e| perr(format!("components.{key}: {e}"))),
        None => Ok(Tensor::zeros(dims)),
    };
    BialgebroidComponents::new(
        chart,
        get("rho", &[n, m])?,
        get("f", &[n, n, n])?,
        get("R", &[n, m])?,
        get("C", &[n, n, n])?,
        get("phi", &[n, n, n])?,
        get("psi", &[n, n, n])?,
    )
}

fn bits(mask: u16) -> Vec<usize> {
    (0..16).filter(|a| mask >> a & 1 == 1).map(|a| a + 1).collect()
}

fn mask_from(v: &Value, n: usize, ctx: &str) -> Result<u16> {
    let mut mask = 0u16;
    for x in as_array(v, ctx)? {
        let a = as_usize(x, ctx)?;
        if a == 0 || a > n || mask >> (a - 1) & 1 == 1 {
            return Err(perr(format!("{ctx}: index {a} repeated or outside 1..={n}")));
        }
        mask |= 1 << (a - 1);
    }
    Ok(mask)
}

fn exps_from(v: &Value, m: usize, ctx: &str) -> Result<XExp> {
    let items = as_array(v, ctx)?;
    if items.len() != m {
        return Err(perr(format!("{ctx}: expected {m} exponents")));
    }
    let mut e: XExp = [0; MAX_DIM];
    for (i, x) in items.iter().enumerate() {
        e[i] = u8::try_from(as_usize(x, ctx)?).map_err(|_| perr(format!("{ctx}: exponent too large")))?;
    }
    Ok(e)
}

/// Terms list the exponents of `x` and `p`, the 1-based indices of the odd
/// generators present in increasing order (`ξ` before `ζ`), and the coefficient.
pub fn superpoly_to_json(f: &SuperPolynomial) -> Value {
    let ch = f.chart();
    let terms: Vec<Value> = f
        .terms()
        .map(|(mono, c)| {
            json!({
                "x": &mono.x[..ch.m],
                "p": &mono.p[..ch.m],
                "xi": bits(mono.xi),
                "zeta": bits(mono.zeta),
                "q": format_q(c),
            })
        })
        .collect();
    json!({"m": ch.m, "n": ch.n, "terms": terms})
}

pub fn superpoly_from_json(v: &Value) -> Result<SuperPolynomial> {
    let m = as_usize(field(v, "m", "function")?, "function.m")?;
    let n = as_usize(field(v, "n", "function")?, "function.n")?;
    let chart = Chart::new(m, n)?;
    let mut terms = Vec::new();
    for (i, t) in as_array(field(v, "terms", "function")?, "function.terms")?.iter().enumerate() {
        let ctx = format!("function.terms[{i}]");
        let mono = Monomial {
            x: exps_from(field(t, "x", &ctx)?, m, &ctx)?,
            p: exps_from(field(t, "p", &ctx)?, m, &ctx)?,
            xi: mask_from(field(t, "xi", &ctx)?, n, &ctx)?,
            zeta: mask_from(field(t, "zeta", &ctx)?, n, &ctx)?,
        };
        terms.push((mono, parse_q(as_str(field(t, "q", &ctx)?, &ctx)?)?));
    }
    SuperPolynomial::from_terms(chart, terms)
}

/// Both vectors plus counts, the normalization graph and content hashes.
pub fn theta_pair_to_json(pair: &ThetaPair, normalized_on: &MultiDigraph) -> Value {
    let (v, t) = (vector_to_json(&pair.vartheta3), vector_to_json(&pair.theta3));
    let c = counts(pair);
    json!({
        "vartheta3": v,
        "theta3": t,
        "metadata": {
            "counts": {
                "vartheta3": c.vartheta3,
                "shape_a": c.shape_a,
                "shape_b": c.shape_b,
                "theta3": c.theta3,
                "theta3_shape_c": c.theta3_shape_c,
                "theta3_bioriented": c.theta3_bioriented,
            },
            "normalization": {"graph": graph_to_json(normalized_on), "coefficient": "1/1"},
            "certificate_hashes": {"vartheta3": digest(&v), "theta3": digest(&t)},
        }
    })
}

pub fn theta_pair_from_json(v: &Value) -> Result<ThetaPair> {
    Ok(ThetaPair {
        vartheta3: vector_from_json(field(v, "vartheta3", "pair")?)?,
        theta3: vector_from_json(field(v, "theta3", "pair")?)?,
    })
}

/// A self-describing run record.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub outputs: Value,
    pub timing_ms: u128,
    pub certificates: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "outputs": self.outputs,
            "timing_ms": self.timing_ms as u64,
            "certificates": self.certificates,
        })
    }

    pub fn from_json(v: &Value) -> Result<RunReport> {
        let version = as_usize(field(v, "schema_version", "report")?, "schema_version")?;
        if version != SCHEMA_VERSION as usize {
            return Err(perr(format!("unsupported schema version {version}")));
        }
        Ok(RunReport {
            command: as_str(field(v, "command", "report")?, "command")?.to_string(),
            inputs_digest: as_str(field(v, "inputs_digest", "report")?, "inputs_digest")?.to_string(),
            outputs: field(v, "outputs", "report")?.clone(),
            timing_ms: as_usize(field(v, "timing_ms", "report")?, "timing_ms")? as u128,
            certificates: as_array(field(v, "certificates", "report")?, "certificates")?
                .iter()
                .map(|x| as_str(x, "certificates").map(str::to_string))
                .collect::<Result<_>>()?,
        })
    }
}
