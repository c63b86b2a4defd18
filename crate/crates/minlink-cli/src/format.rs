//! Instance and result documents: JSON with exact rational coordinates.
//!
//! A coordinate is a JSON integer or a string `"p/q"` (or `"p"`). Floats are
//! rejected: the solver is exact and a float would smuggle in rounding.
//!
//! Instance schema:
//! ```json
//! {
//!   "orientations": [[1, 0], [0, -1], [-1, 0], [0, 1]],
//!   "s": [0, 0],
//!   "t": [4, 0],
//!   "segments": [[[2, 1], [2, 3]]]
//! }
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Map, Value};

use minlink_core::engine::Ledger;
use minlink_core::geom::{Point, Rational, SegmentGeom};
use minlink_core::instance::{Instance, OrientationSet};
use minlink_core::recovery::Tour;

#[derive(Debug)]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        path: path.to_string(),
        message: message.into(),
    })
}

/// Parse an exact coordinate: JSON integer or string `"p/q"`.
pub fn parse_coord(v: &Value, path: &str) -> Result<Rational, FormatError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else {
                err(path, "coordinates must be integers or \"p/q\" strings")
            }
        }
        Value::String(s) => match s.parse::<Rational>() {
            Ok(r) => Ok(r),
            Err(_) => err(path, format!("cannot parse rational from {s:?}")),
        },
        _ => err(path, "expected an integer or a \"p/q\" string"),
    }
}

/// Exact rational to JSON: plain integer when the denominator is one (and it
/// fits), string `"p/q"` otherwise.
pub fn coord_to_json(r: &Rational) -> Value {
    if r.denom().is_one() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return json!(i);
        }
        return json!(r.numer().to_string());
    }
    json!(format!("{}/{}", r.numer(), r.denom()))
}

fn parse_point(v: &Value, path: &str) -> Result<Point, FormatError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| FormatError {
            path: path.to_string(),
            message: "expected a [x, y] pair".to_string(),
        })?;
    Ok(Point::new(
        parse_coord(&arr[0], &format!("{path}[0]"))?,
        parse_coord(&arr[1], &format!("{path}[1]"))?,
    ))
}

fn point_to_json(p: &Point) -> Value {
    json!([coord_to_json(&p.x), coord_to_json(&p.y)])
}

/// Parse and validate an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| FormatError {
            path: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
    let obj = root
        .as_object()
        .ok_or_else(|| FormatError {
            path: "$".to_string(),
            message: "expected a JSON object".to_string(),
        })?;

    let raw_orients = obj
        .get("orientations")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError {
            path: "orientations".to_string(),
            message: "missing or not an array".to_string(),
        })?;
    let mut orients = Vec::with_capacity(raw_orients.len());
    for (i, v) in raw_orients.iter().enumerate() {
        let path = format!("orientations[{i}]");
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| FormatError {
                path: path.clone(),
                message: "expected an [dx, dy] integer pair".to_string(),
            })?;
        let dx = pair[0]
            .as_i64()
            .ok_or_else(|| FormatError {
                path: format!("{path}[0]"),
                message: "orientation components must be integers".to_string(),
            })?;
        let dy = pair[1]
            .as_i64()
            .ok_or_else(|| FormatError {
                path: format!("{path}[1]"),
                message: "orientation components must be integers".to_string(),
            })?;
        orients.push((dx, dy));
    }
    let oset = OrientationSet::build(&orients).map_err(|e| FormatError {
        path: "orientations".to_string(),
        message: e.to_string(),
    })?;

    let s = parse_point(
        obj.get("s").ok_or_else(|| FormatError {
            path: "s".to_string(),
            message: "missing".to_string(),
        })?,
        "s",
    )?;
    let t = parse_point(
        obj.get("t").ok_or_else(|| FormatError {
            path: "t".to_string(),
            message: "missing".to_string(),
        })?,
        "t",
    )?;

    let raw_segments = obj
        .get("segments")
        .and_then(Value::as_array)
        .ok_or_else(|| FormatError {
            path: "segments".to_string(),
            message: "missing or not an array".to_string(),
        })?;
    let mut geoms = Vec::with_capacity(raw_segments.len());
    for (i, v) in raw_segments.iter().enumerate() {
        let path = format!("segments[{i}]");
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| FormatError {
                path: path.clone(),
                message: "expected a [[x,y], [x,y]] pair".to_string(),
            })?;
        geoms.push(SegmentGeom::new(
            parse_point(&pair[0], &format!("{path}[0]"))?,
            parse_point(&pair[1], &format!("{path}[1]"))?,
        ));
    }

    Instance::new(oset, s, t, geoms).map_err(|e| FormatError {
        path: "$".to_string(),
        message: e.to_string(),
    })
}

/// Serialize an instance to the document format, deterministically.
pub fn instance_to_json(inst: &Instance) -> String {
    let orientations: Vec<Value> = inst
        .oset
        .dirs()
        .iter()
        .map(|d| json!([d.dx(), d.dy()]))
        .collect();
    let segments: Vec<Value> = inst
        .segments
        .iter()
        .map(|s| json!([point_to_json(&s.geom.p), point_to_json(&s.geom.q)]))
        .collect();
    let doc = json!({
        "orientations": orientations,
        "s": point_to_json(&inst.s),
        "t": point_to_json(&inst.t),
        "segments": segments,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("valid json");
    out.push('\n');
    out
}

/// Solving result: link count, per-layer link counts, the tour, the visit
/// points, timing, and optionally the full interval families.
pub fn result_to_json(
    ledger: &Ledger,
    tour: &Tour,
    wall_ms: f64,
    include_families: bool,
) -> String {
    let l_values: Vec<Value> = ledger.layers.iter().map(|l| json!(l.links)).collect();
    let vertices: Vec<Value> = tour.vertices.iter().map(point_to_json).collect();
    let visits: Vec<Value> = tour
        .visit_points
        .iter()
        .map(|(i, p)| json!([i, point_to_json(p)]))
        .collect();
    let mut doc = Map::new();
    doc.insert("links".to_string(), json!(tour.link_count));
    doc.insert("l_values".to_string(), Value::Array(l_values));
    doc.insert("tour".to_string(), Value::Array(vertices));
    doc.insert("visit_points".to_string(), Value::Array(visits));
    doc.insert("wall_ms".to_string(), json!(wall_ms));
    if include_families {
        let layers: Vec<Value> = ledger
            .layers
            .iter()
            .map(|rec| {
                let fam = |fams: &minlink_core::engine::Families| -> Value {
                    let per_dir: Vec<Value> = (0..fams.dirs())
                        .map(|j| {
                            let ivs: Vec<Value> = fams
                                .family(j)
                                .iter()
                                .map(|iv| {
                                    json!({
                                        "lo": coord_to_json(&iv.range.lo),
                                        "hi": coord_to_json(&iv.range.hi),
                                        "links": iv.links,
                                    })
                                })
                                .collect();
                            Value::Array(ivs)
                        })
                        .collect();
                    Value::Array(per_dir)
                };
                json!({
                    "layer": rec.layer,
                    "links": rec.links,
                    "base": fam(&rec.base),
                    "plus": fam(&rec.plus),
                })
            })
            .collect();
        doc.insert("families".to_string(), Value::Array(layers));
    }
    let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("valid json");
    out.push('\n');
    out
}
