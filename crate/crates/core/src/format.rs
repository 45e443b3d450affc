//! Text formats for arrangements and graphs.
//!
//! Arrangements are JSON objects:
//!
//! ```text
//! {
//!   "dimension": 2,
//!   "boxes": [
//!     [[1, 4], [0, 5]],
//!     [["1/2", "7/4"], [0, 3]]
//!   ]
//! }
//! ```
//!
//! Coordinates are JSON integers or `"p/q"` strings. Graphs are plain text:
//! a header `n <count>` followed by one `u v` edge per line, 1-based, with
//! `#` starting a comment.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, AxisBox, Rational, RationalInterval};
use crate::graph::Graph;

pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = num.parse().map_err(|_| format!("invalid rational `{s}`"))?;
    let q: i64 = den.parse().map_err(|_| format!("invalid rational `{s}`"))?;
    if q == 0 {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(p, q))
}

/// Integers print bare, everything else as a quoted `"p/q"`.
fn json_rational(x: Rational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("\"{}/{}\"", x.numer(), x.denom())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementFile {
    dimension: usize,
    boxes: Vec<Vec<[Coord; 2]>>,
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let file: ArrangementFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let coord = |c: &Coord| -> Result<Rational> {
        match c {
            Coord::Int(i) => Ok(Rational::from_integer(*i)),
            Coord::Text(s) => parse_rational(s).map_err(Error::Format),
        }
    };
    let mut boxes = Vec::with_capacity(file.boxes.len());
    for (i, sides) in file.boxes.iter().enumerate() {
        if sides.len() != file.dimension {
            return Err(Error::Format(format!(
                "box {} has {} sides but the dimension is {}",
                i + 1,
                sides.len(),
                file.dimension
            )));
        }
        let sides = sides
            .iter()
            .map(|[lo, hi]| RationalInterval::new(coord(lo)?, coord(hi)?))
            .collect::<Result<Vec<_>>>()?;
        boxes.push(AxisBox::new(sides)?);
    }
    Arrangement::new(file.dimension, boxes)
}

pub fn write_arrangement(arr: &Arrangement) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{{\n  \"dimension\": {},\n  \"boxes\": [",
        arr.dimension()
    );
    for (i, b) in arr.boxes().iter().enumerate() {
        let sides: Vec<String> = b
            .sides()
            .iter()
            .map(|s| format!("[{}, {}]", json_rational(s.lo()), json_rational(s.hi())))
            .collect();
        let sep = if i + 1 < arr.len() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{}", sides.join(", "), sep);
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                let n = match fields.as_slice() {
                    ["n", count] => count
                        .parse::<usize>()
                        .map_err(|_| err(format!("invalid vertex count `{count}`")))?,
                    _ => return Err(err("expected header `n <count>`".into())),
                };
                graph = Some(Graph::empty(n).map_err(|e| err(e.to_string()))?);
            }
            Some(g) => {
                let [u, v] = fields.as_slice() else {
                    return Err(err("expected an edge `u v`".into()));
                };
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(format!("invalid vertex `{s}`")))
                };
                let (u, v) = (parse(u)?, parse(v)?);
                if !(1 <= u && u < v && v <= g.n()) {
                    return Err(err(format!(
                        "edge ({u}, {v}) must satisfy 1 <= u < v <= {}",
                        g.n()
                    )));
                }
                if g.has_edge(u, v) {
                    return Err(err(format!("duplicate edge ({u}, {v})")));
                }
                g.add_edge(u, v).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing header `n <count>`".into(),
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// An input file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Arrangement(Arrangement),
    Graph(Graph),
}

/// JSON objects are arrangements, anything else is a graph file.
pub fn parse_document(text: &str) -> Result<Document> {
    if text.trim_start().starts_with('{') {
        parse_arrangement(text).map(Document::Arrangement)
    } else {
        parse_graph(text).map(Document::Graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), Rational::from_integer(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn arrangement_text_with_mixed_coordinates() {
        let text = r#"{"dimension": 2, "boxes": [[[0, "1/2"], [1, 2]], [["-3/4", 5], [0, 0]]]}"#;
        let arr = parse_arrangement(text).unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr.boxes()[0].side(0).hi(), Rational::new(1, 2));
        assert_eq!(parse_arrangement(&write_arrangement(&arr)).unwrap(), arr);
    }

    #[test]
    fn arrangement_errors() {
        let wrong_dim = r#"{"dimension": 2, "boxes": [[[0, 1]]]}"#;
        assert!(matches!(
            parse_arrangement(wrong_dim),
            Err(Error::Format(_))
        ));
        let inverted = r#"{"dimension": 1, "boxes": [[[2, 1]]]}"#;
        assert!(matches!(
            parse_arrangement(inverted),
            Err(Error::EmptyInterval { .. })
        ));
        let broken = "{\n\"dimension\": 1,\n\"boxes\": [[[0, 1]]\n";
        assert!(matches!(
            parse_arrangement(broken),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let dup = "n 3\n1 2\n# comment\n2 1\n";
        assert!(matches!(
            parse_graph(dup),
            Err(Error::Parse { line: 4, .. })
        ));
        let dup = "n 3\n1 2\n1 2\n";
        assert!(matches!(
            parse_graph(dup),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("n 3\n1 4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn documents_are_sniffed() {
        assert!(matches!(
            parse_document("n 2\n1 2\n"),
            Ok(Document::Graph(_))
        ));
        assert!(matches!(
            parse_document(r#" {"dimension": 1, "boxes": [[[0, 1]]]}"#),
            Ok(Document::Arrangement(_))
        ));
    }

    fn arb_arrangement() -> impl Strategy<Value = Arrangement> {
        (1usize..4).prop_flat_map(|d| {
            prop::collection::vec(
                prop::collection::vec((-20i64..20, 0i64..20, 1i64..5), d),
                1..8,
            )
            .prop_map(move |boxes| {
                let boxes = boxes
                    .into_iter()
                    .map(|sides| {
                        AxisBox::new(
                            sides
                                .into_iter()
                                .map(|(lo, len, q)| {
                                    RationalInterval::new(
                                        Rational::new(lo, q),
                                        Rational::new(lo + len, q),
                                    )
                                    .unwrap()
                                })
                                .collect(),
                        )
                        .unwrap()
                    })
                    .collect();
                Arrangement::new(d, boxes).unwrap()
            })
        })
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if mask[k] {
                            g.add_edge0(u, v);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn arrangement_round_trip(arr in arb_arrangement()) {
            prop_assert_eq!(parse_arrangement(&write_arrangement(&arr)).unwrap(), arr);
        }

        #[test]
        fn graph_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }
}
