//! Line-oriented instance files.
//!
//! ```text
//! # comments and blank lines are ignored
//! matroid uniform <n> <k>
//! element <id> <weight> [label]        (exactly n lines)
//!
//! matroid graphic <V> <E>
//! edge <id> <u> <v> <weight> [label]   (exactly E lines, 0 <= u, v < V)
//! ```
//!
//! Ids must cover `0..n` (or `0..E`) exactly once, in any order. Weights are
//! decimal strings (`3`, `0.25`) or `numer/denom`, strictly positive and
//! pairwise distinct. Labels default to `u<id>`.

use std::fmt::Write as _;

use super::{BaseMatroid, ElementId, MatroidError, Weight, WeightedGroundSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub base: BaseMatroid,
    pub weights: WeightedGroundSet,
}

fn parse_err(line: usize, message: impl Into<String>) -> MatroidError {
    MatroidError::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, MatroidError> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

enum Header {
    Uniform { n: usize, k: usize },
    Graphic { vertices: usize },
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, MatroidError> {
    let mut header: Option<Header> = None;
    let mut weights: Vec<Option<(Weight, Option<String>)>> = Vec::new();
    let mut endpoints: Vec<(usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or("");
        match (keyword, &header) {
            ("matroid", None) => {
                let kind: String = field(line, tokens.next(), "matroid kind")?;
                let first: usize = field(line, tokens.next(), "size")?;
                let second: usize = field(line, tokens.next(), "size")?;
                let (h, count) = match kind.as_str() {
                    "uniform" => (Header::Uniform { n: first, k: second }, first),
                    "graphic" => (Header::Graphic { vertices: first }, second),
                    other => return Err(parse_err(line, format!("unknown matroid kind `{other}`"))),
                };
                weights = vec![None; count];
                endpoints = vec![(0, 0); count];
                header = Some(h);
            }
            ("matroid", Some(_)) => return Err(parse_err(line, "duplicate header")),
            (_, None) => return Err(parse_err(line, "expected `matroid` header")),
            ("element", Some(Header::Uniform { .. })) | ("edge", Some(Header::Graphic { .. })) => {
                let id: usize = field(line, tokens.next(), "id")?;
                if id >= weights.len() {
                    return Err(parse_err(line, format!("id {id} out of range")));
                }
                if weights[id].is_some() {
                    return Err(parse_err(line, format!("id {id} given twice")));
                }
                if let Some(Header::Graphic { vertices, .. }) = header {
                    let a: usize = field(line, tokens.next(), "vertex")?;
                    let b: usize = field(line, tokens.next(), "vertex")?;
                    if a >= vertices || b >= vertices {
                        return Err(parse_err(line, "vertex out of range"));
                    }
                    endpoints[id] = (a, b);
                }
                let weight: Weight = field(line, tokens.next(), "weight")?;
                let label = tokens.next().map(str::to_owned);
                if tokens.next().is_some() {
                    return Err(parse_err(line, "trailing tokens"));
                }
                weights[id] = Some((weight, label));
            }
            (other, Some(_)) => return Err(parse_err(line, format!("unexpected `{other}`"))),
        }
    }

    let header = header.ok_or_else(|| parse_err(0, "empty instance"))?;
    if let Some(missing) = weights.iter().position(Option::is_none) {
        return Err(parse_err(0, format!("no line for id {missing}")));
    }
    let (values, labels): (Vec<Weight>, Vec<String>) = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            let (w, label) = w.expect("checked above");
            (w, label.unwrap_or_else(|| format!("u{i}")))
        })
        .unzip();
    let weights = WeightedGroundSet::new(values, Some(labels))?;
    let base = match header {
        Header::Uniform { n, k } => BaseMatroid::uniform(n, k)?,
        Header::Graphic { vertices, .. } => BaseMatroid::graphic(vertices, endpoints)?,
    };
    Ok(InstanceFile { base, weights })
}

pub fn write_instance(base: &BaseMatroid, weights: &WeightedGroundSet) -> Result<String, MatroidError> {
    if base.len() != weights.len() {
        return Err(MatroidError::GroundSizeMismatch {
            matroid: base.len(),
            weights: weights.len(),
        });
    }
    let mut out = String::new();
    match base {
        BaseMatroid::Uniform { n, k } => {
            writeln!(out, "matroid uniform {n} {k}").unwrap();
            for id in weights.ids() {
                writeln!(out, "element {id} {} {}", weights.weight(id), weights.label(id)).unwrap();
            }
        }
        BaseMatroid::Graphic {
            vertex_count,
            endpoints,
        } => {
            writeln!(out, "matroid graphic {vertex_count} {}", endpoints.len()).unwrap();
            for (i, (a, b)) in endpoints.iter().enumerate() {
                let id = ElementId(i);
                writeln!(
                    out,
                    "edge {id} {a} {b} {} {}",
                    weights.weight(id),
                    weights.label(id)
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}
